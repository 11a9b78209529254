//! Fully triangular van Kampen diagrams built by the stacking procedure.
//!
//! A diagram for the edge `(u, x)` has boundary `u · x · nf(ux)⁻¹`. Tree
//! edges give degenerate diagrams; any other edge has an isolated cell
//! `φ(u, x) · x⁻¹` and one subdiagram per letter of `φ(u, x)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::rewriting::{canonical_relator, RewriteError, StackingStructure};
use crate::words::{free_reduce, Letter, Word};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),
    #[error("malformed diagram JSON: {0}")]
    Malformed(String),
}

/// The triangle `lower · x · upper⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub lower: Word,
    pub x: Letter,
    pub upper: Word,
}

impl Boundary {
    pub fn word(&self) -> Word {
        self.lower.concat(&[self.x]).concat(&self.upper.invert())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramKind {
    Degenerate { path: Word },
    Minimal { cell_boundary: Word, lower: Word, upper: Word },
    Composite { isolated_cell_boundary: Word, subdiagrams: Vec<Diagram> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub kind: DiagramKind,
    pub boundary: Boundary,
}

impl Diagram {
    pub fn area(&self) -> usize {
        match &self.kind {
            DiagramKind::Degenerate { .. } => 0,
            DiagramKind::Minimal { .. } => 1,
            DiagramKind::Composite { subdiagrams, .. } => 1 + subdiagrams.iter().map(Diagram::area).sum::<usize>(),
        }
    }

    /// The 2-cell boundaries, isolated cell first, depth first.
    pub fn cells(&self) -> Vec<&Word> {
        let mut out = Vec::new();
        self.collect_cells(&mut out);
        out
    }

    fn collect_cells<'a>(&'a self, out: &mut Vec<&'a Word>) {
        match &self.kind {
            DiagramKind::Degenerate { .. } => {}
            DiagramKind::Minimal { cell_boundary, .. } => out.push(cell_boundary),
            DiagramKind::Composite { isolated_cell_boundary, subdiagrams } => {
                out.push(isolated_cell_boundary);
                for d in subdiagrams {
                    d.collect_cells(out);
                }
            }
        }
    }
}

/// Runs the stacking procedure on the edge `(u, z)`; `u` must be a normal
/// form. At most `s.step_budget()` edges are expanded.
pub fn build_diagram(s: &StackingStructure, u: &[Letter], z: Letter) -> Result<Diagram, DiagramError> {
    let u = s.certify(Word::from(u.to_vec()))?.into_word();
    let mut steps = 0u64;
    build(s, u, z, &mut steps)
}

fn build(s: &StackingStructure, u: Word, z: Letter, steps: &mut u64) -> Result<Diagram, DiagramError> {
    *steps += 1;
    if *steps > s.step_budget() {
        return Err(RewriteError::StepBudgetExceeded(s.step_budget()).into());
    }
    if u.last() == Some(&z.inverse()) {
        let upper = Word::from(u[..u.len() - 1].to_vec());
        return Ok(Diagram { kind: DiagramKind::Degenerate { path: u.clone() }, boundary: Boundary { lower: u, x: z, upper } });
    }
    if s.is_normal(&u.push(z)) {
        let upper = u.push(z);
        return Ok(Diagram { kind: DiagramKind::Degenerate { path: upper.clone() }, boundary: Boundary { lower: u, x: z, upper } });
    }
    let v = s.phi(&u, z);
    let cell = v.concat(&[z.inverse()]);
    let mut prefix = u.clone();
    let mut subdiagrams = Vec::with_capacity(v.len());
    for &y in v.iter() {
        let d = build(s, prefix, y, steps)?;
        prefix = d.boundary.upper.clone();
        subdiagrams.push(d);
    }
    let boundary = Boundary { lower: u, x: z, upper: prefix };
    let kind = if subdiagrams.iter().all(|d| d.area() == 0) {
        DiagramKind::Minimal { cell_boundary: cell, lower: boundary.lower.clone(), upper: boundary.upper.clone() }
    } else {
        DiagramKind::Composite { isolated_cell_boundary: cell, subdiagrams }
    };
    Ok(Diagram { kind, boundary })
}

/// Sum of the areas of the edge diagrams along the path read by `w`.
pub fn loop_area(s: &StackingStructure, w: &[Letter]) -> Result<usize, DiagramError> {
    let mut u = Word::empty();
    let mut total = 0;
    for &z in w {
        let d = build_diagram(s, &u, z)?;
        total += d.area();
        u = d.boundary.upper;
    }
    Ok(total)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramCheck {
    pub reasons: Vec<String>,
}

impl DiagramCheck {
    pub fn ok(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Validates the triangular shape, the gluing of subdiagrams and the
/// normal-form labels. With `relators`, every cell must also be one of
/// them up to cyclic permutation and inversion.
pub fn check_diagram(d: &Diagram, s: &StackingStructure, relators: Option<&BTreeSet<Word>>) -> DiagramCheck {
    let mut check = DiagramCheck::default();
    check_rec(d, s, relators, "", &mut check.reasons);
    check
}

fn check_rec(d: &Diagram, s: &StackingStructure, relators: Option<&BTreeSet<Word>>, at: &str, out: &mut Vec<String>) {
    let b = &d.boundary;
    for (name, w) in [("lower", &b.lower), ("upper", &b.upper)] {
        if !s.is_normal(w) {
            out.push(format!("{at}: {name} side {w} is not a normal form"));
        }
    }
    let cell = match &d.kind {
        DiagramKind::Degenerate { path } => {
            let extends = b.lower.push(b.x) == b.upper && path == &b.upper;
            let retracts = b.upper.push(b.x.inverse()) == b.lower && path == &b.lower;
            if !extends && !retracts {
                out.push(format!("{at}: degenerate path {path} does not fit {}", b.word()));
            }
            return;
        }
        DiagramKind::Minimal { cell_boundary, lower, upper } => {
            if lower != &b.lower || upper != &b.upper {
                out.push(format!("{at}: minimal cell sides disagree with the boundary"));
            }
            cell_boundary
        }
        DiagramKind::Composite { isolated_cell_boundary, .. } => isolated_cell_boundary,
    };
    if cell.last() != Some(&b.x.inverse()) {
        out.push(format!("{at}: cell {cell} does not contain the edge {}", b.x));
        return;
    }
    if let Some(rels) = relators {
        match canonical_relator(cell) {
            Some(c) if rels.contains(&c) => {}
            _ => out.push(format!("{at}: cell {cell} is not a relator")),
        }
    }
    let v = &cell[..cell.len() - 1];
    match &d.kind {
        DiagramKind::Minimal { .. } => {
            // every edge of the cell's far side lies in the tree
            let mut prefix = b.lower.clone();
            for &y in v {
                if prefix.last() == Some(&y.inverse()) {
                    prefix = Word::from(prefix[..prefix.len() - 1].to_vec());
                } else {
                    prefix = prefix.push(y);
                    if !s.is_normal(&prefix) {
                        out.push(format!("{at}: edge {y} of minimal cell leaves the tree"));
                        return;
                    }
                }
            }
            if prefix != b.upper {
                out.push(format!("{at}: minimal cell ends at {prefix}, not {}", b.upper));
            }
        }
        DiagramKind::Composite { subdiagrams, .. } => {
            if subdiagrams.len() != v.len() {
                out.push(format!("{at}: {} subdiagrams for a cell side of length {}", subdiagrams.len(), v.len()));
                return;
            }
            let mut prefix = &b.lower;
            for (i, (sub, &y)) in subdiagrams.iter().zip(v).enumerate() {
                let here = format!("{at}/{i}");
                if sub.boundary.x != y {
                    out.push(format!("{here}: isolated edge {} where the cell reads {y}", sub.boundary.x));
                }
                if &sub.boundary.lower != prefix {
                    out.push(format!("{here}: glued at {} instead of {prefix}", sub.boundary.lower));
                }
                check_rec(sub, s, relators, &here, out);
                prefix = &sub.boundary.upper;
            }
            if prefix != &b.upper {
                out.push(format!("{at}: subdiagrams end at {prefix}, not {}", b.upper));
            }
        }
        DiagramKind::Degenerate { .. } => unreachable!(),
    }
}

/// `free_reduce(u · z · nf(uz)⁻¹)`, the boundary every diagram for `(u, z)`
/// must reduce to.
pub fn expected_boundary(s: &StackingStructure, u: &[Letter], z: Letter) -> Result<Word, RewriteError> {
    let nf = s.normalize(&Word::from(u.to_vec()).push(z))?.into_word();
    Ok(free_reduce(&Word::from(u.to_vec()).push(z).concat(&nf.invert())))
}

pub fn to_json(d: &Diagram) -> Value {
    let b = &d.boundary;
    let mut m = Map::new();
    let kind = match &d.kind {
        DiagramKind::Degenerate { path } => {
            m.insert("path".into(), json!(path.to_string()));
            "degenerate"
        }
        DiagramKind::Minimal { cell_boundary, .. } => {
            m.insert("cell".into(), json!(cell_boundary.to_string()));
            "minimal"
        }
        DiagramKind::Composite { isolated_cell_boundary, subdiagrams } => {
            m.insert("cell".into(), json!(isolated_cell_boundary.to_string()));
            m.insert("children".into(), Value::Array(subdiagrams.iter().map(to_json).collect()));
            "composite"
        }
    };
    m.insert("kind".into(), json!(kind));
    m.insert(
        "boundary".into(),
        json!({"lower": b.lower.to_string(), "x": b.x.as_char().to_string(), "upper": b.upper.to_string()}),
    );
    m.insert("area".into(), json!(d.area()));
    Value::Object(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a str, DiagramError> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| DiagramError::Malformed(format!("missing string field {key:?}")))
}

fn word_field(v: &Value, key: &str) -> Result<Word, DiagramError> {
    let text = field(v, key)?;
    if text.chars().any(|c| Letter::new(c).is_none()) {
        return Err(DiagramError::Malformed(format!("bad word {text:?}")));
    }
    Ok(Word::ascii(text))
}

/// Inverse of [`to_json`].
pub fn from_json(v: &Value) -> Result<Diagram, DiagramError> {
    let b = v.get("boundary").ok_or_else(|| DiagramError::Malformed("missing boundary".into()))?;
    let x = field(b, "x")?;
    let mut chars = x.chars();
    let x = match (chars.next().and_then(Letter::new), chars.next()) {
        (Some(l), None) => l,
        _ => return Err(DiagramError::Malformed(format!("bad letter {x:?}"))),
    };
    let boundary = Boundary { lower: word_field(b, "lower")?, x, upper: word_field(b, "upper")? };
    let kind = match field(v, "kind")? {
        "degenerate" => DiagramKind::Degenerate { path: word_field(v, "path")? },
        "minimal" => DiagramKind::Minimal {
            cell_boundary: word_field(v, "cell")?,
            lower: boundary.lower.clone(),
            upper: boundary.upper.clone(),
        },
        "composite" => {
            let children = v.get("children").and_then(Value::as_array).ok_or_else(|| DiagramError::Malformed("missing children".into()))?;
            DiagramKind::Composite {
                isolated_cell_boundary: word_field(v, "cell")?,
                subdiagrams: children.iter().map(from_json).collect::<Result<_, _>>()?,
            }
        }
        other => return Err(DiagramError::Malformed(format!("unknown kind {other:?}"))),
    };
    Ok(Diagram { kind, boundary })
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

/// The cell-adjacency tree: one node per cell or degenerate piece, edges
/// from each cell to the subdiagrams glued onto it.
pub fn to_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph diagram {\n  node [shape=box];\n");
    let mut next = 0usize;
    dot_rec(d, &mut out, &mut next);
    out.push_str("}\n");
    out
}

fn dot_rec(d: &Diagram, out: &mut String, next: &mut usize) -> usize {
    let id = *next;
    *next += 1;
    let b = &d.boundary;
    let sides = format!("{} | {} | {}", show(&b.lower), b.x, show(&b.upper));
    match &d.kind {
        DiagramKind::Degenerate { path } => {
            let _ = writeln!(out, "  n{id} [shape=plaintext, label=\"{}\"];", show(path));
        }
        DiagramKind::Minimal { cell_boundary, .. } => {
            let _ = writeln!(out, "  n{id} [label=\"{cell_boundary}\\n{sides}\"];");
        }
        DiagramKind::Composite { isolated_cell_boundary, subdiagrams } => {
            let _ = writeln!(out, "  n{id} [label=\"{isolated_cell_boundary}\\n{sides}\"];");
            for sub in subdiagrams {
                let child = dot_rec(sub, out, next);
                let _ = writeln!(out, "  n{id} -> n{child} [label=\"{}\"];", sub.boundary.x);
            }
        }
    }
    id
}

pub fn export_diagram(d: &Diagram, format: &str) -> Result<String, DiagramError> {
    match format {
        "json" => Ok(serde_json::to_string_pretty(&to_json(d)).expect("serializable")),
        "dot" => Ok(to_dot(d)),
        other => Err(DiagramError::UnsupportedFormat(other.to_string())),
    }
}

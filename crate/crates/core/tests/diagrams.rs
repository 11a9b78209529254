use stacker::diagrams::*;
use stacker::groups::{bg_structure, bs12_structure, gp_structure, oracle_bs12, oracle_gp};
use stacker::laurent::Modulus;
use stacker::rewriting::StackingStructure;
use stacker::words::{free_reduce, Letter, Word};

fn w(s: &str) -> Word {
    Word::ascii(s)
}

fn l(c: char) -> Letter {
    Letter::new(c).unwrap()
}

fn sweep(s: &StackingStructure, radius: usize, trivial: impl Fn(&Word) -> bool) {
    let relators = s.stacking_presentation(radius + 4).unwrap().relators;
    for u in s.normal_forms_up_to(radius) {
        for z in s.alphabet().letters() {
            let d = build_diagram(s, &u, z).unwrap();
            let c = check_diagram(&d, s, None);
            assert!(c.ok(), "{u} {z}: {:?}", c.reasons);
            assert_eq!(free_reduce(&d.boundary.word()), expected_boundary(s, &u, z).unwrap());
            let trace = s.normalize_traced(&u.push(z)).unwrap();
            assert_eq!(d.area(), trace.rewrites(), "{u} {z}");
            for cell in d.cells() {
                assert!(trivial(cell), "{cell}");
            }
            if u.len() + 1 < radius {
                assert!(check_diagram(&d, s, Some(&relators)).ok(), "{u} {z}");
            }
        }
    }
}

#[test]
fn bs12_diagrams_are_sound() {
    let id = oracle_bs12(&w(""));
    sweep(&bs12_structure(), 4, |c| oracle_bs12(c) == id);
}

#[test]
fn g2_diagrams_are_sound() {
    let p = Modulus::Finite(2);
    let id = oracle_gp(p, &w(""));
    sweep(&gp_structure(p).unwrap(), 4, |c| oracle_gp(p, c) == id);
}

#[test]
fn examples() {
    let s = bs12_structure();
    let d = build_diagram(&s, &w(""), l('a')).unwrap();
    assert_eq!(d.kind, DiagramKind::Degenerate { path: w("a") });
    assert_eq!(d.area(), 0);
    let d = build_diagram(&s, &w("aa"), l('t')).unwrap();
    assert!(d.area() >= 1);
    assert!(!matches!(d.kind, DiagramKind::Degenerate { .. }));
    assert_eq!(free_reduce(d.cells()[0]), w("AAtaT"));
    // backtracking along the tree
    let d = build_diagram(&s, &w("a"), l('A')).unwrap();
    assert_eq!(d.kind, DiagramKind::Degenerate { path: w("a") });
    assert!(check_diagram(&d, &s, None).ok());

    let g2 = gp_structure(Modulus::Finite(2)).unwrap();
    let d = build_diagram(&g2, &w("aT"), l('a')).unwrap();
    assert_eq!(d.cells()[0], &w("tATataTA"));
    assert!(check_diagram(&d, &g2, None).ok());
    let d = build_diagram(&g2, &w(""), l('a')).unwrap();
    assert_eq!(d.area(), 0);
    assert!(build_diagram(&g2, &w("aa"), l('t')).is_err());
}

#[test]
fn area_adds_up() {
    let s = bs12_structure();
    let d = build_diagram(&s, &w("aaa"), l('t')).unwrap();
    match &d.kind {
        DiagramKind::Composite { subdiagrams, .. } => {
            assert_eq!(d.area(), 1 + subdiagrams.iter().map(Diagram::area).sum::<usize>());
        }
        DiagramKind::Minimal { .. } => assert_eq!(d.area(), 1),
        DiagramKind::Degenerate { .. } => panic!("aaa·t is not a tree edge"),
    }
}

#[test]
fn mutants_are_rejected() {
    let s = bs12_structure();
    let d = s
        .normal_forms_up_to(4)
        .iter()
        .flat_map(|u| s.alphabet().letters().into_iter().map(move |z| (u.clone(), z)))
        .map(|(u, z)| build_diagram(&s, &u, z).unwrap())
        .find(|d| matches!(d.kind, DiagramKind::Composite { .. }))
        .unwrap();
    let DiagramKind::Composite { isolated_cell_boundary, subdiagrams } = &d.kind else { unreachable!() };
    let mut flipped = isolated_cell_boundary.to_vec();
    flipped[0] = flipped[0].inverse();
    let bad = Diagram {
        kind: DiagramKind::Composite { isolated_cell_boundary: Word::from(flipped), subdiagrams: subdiagrams.clone() },
        boundary: d.boundary.clone(),
    };
    assert!(!check_diagram(&bad, &s, None).ok());
    let bad = Diagram { kind: DiagramKind::Degenerate { path: w("at") }, boundary: d.boundary.clone() };
    assert!(!check_diagram(&bad, &s, None).ok());
    let not_normal = Diagram {
        kind: DiagramKind::Degenerate { path: w("aat") },
        boundary: Boundary { lower: w("aa"), x: l('t'), upper: w("aat") },
    };
    assert!(!check_diagram(&not_normal, &s, None).ok());
}

#[test]
fn json_and_dot() {
    let s = bs12_structure();
    let d = build_diagram(&s, &w(""), l('a')).unwrap();
    let v = to_json(&d);
    assert_eq!(v["kind"], "degenerate");
    assert_eq!(v["path"], "a");
    for u in s.normal_forms_up_to(3) {
        for z in s.alphabet().letters() {
            let d = build_diagram(&s, &u, z).unwrap();
            let text = export_diagram(&d, "json").unwrap();
            let back = from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, d);
        }
    }
    let d = build_diagram(&s, &w("a"), l('T')).unwrap();
    let dot = export_diagram(&d, "dot").unwrap();
    assert!(dot.starts_with("digraph"));
    if let DiagramKind::Minimal { cell_boundary, .. } = &d.kind {
        assert_eq!(dot.matches("label=\"").count(), 1);
        assert!(dot.contains(&cell_boundary.to_string()));
    }
    assert!(matches!(export_diagram(&d, "svg"), Err(DiagramError::UnsupportedFormat(_))));
    assert!(from_json(&serde_json::json!({"kind": "odd"})).is_err());
}

#[test]
fn bg_dehn_probe_grows() {
    let g = bg_structure().unwrap();
    let areas: Vec<usize> = (1..=3)
        .map(|n| {
            let an = "a".repeat(n);
            let loop_word = w(&format!("s{an}Sas{}SA", "A".repeat(n)));
            loop_area(&g, &loop_word).unwrap()
        })
        .collect();
    assert!(areas.windows(2).all(|p| p[0] < p[1]), "{areas:?}");
}

use rayon::prelude::*;
use serde::Serialize;

use super::{RewriteError, StackingStructure};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    F1,
    F2d,
    F2r,
    #[serde(rename = "bound")]
    Bound,
    #[serde(rename = "generator")]
    Generator,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub input: String,
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub structure: String,
    pub radius: usize,
    pub edges_checked: usize,
    pub max_phi_len: usize,
    pub max_steps: u64,
    pub declared_bound: usize,
    pub failures: Vec<Failure>,
    pub note: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, axiom: Axiom) -> usize {
        self.failures.iter().filter(|f| f.axiom == axiom).count()
    }

    fn empty(s: &StackingStructure, radius: usize) -> VerificationReport {
        VerificationReport {
            structure: s.id.clone(),
            radius,
            edges_checked: 0,
            max_phi_len: 0,
            max_steps: 0,
            declared_bound: s.bound,
            failures: Vec::new(),
            note: "termination is certified only for the swept ball".into(),
        }
    }

    fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.edges_checked += other.edges_checked;
        self.max_phi_len = self.max_phi_len.max(other.max_phi_len);
        self.max_steps = self.max_steps.max(other.max_steps);
        self.failures.extend(other.failures);
        self
    }
}

/// Decides equality of the elements two words represent.
pub type EqualityOracle<'a> = &'a (dyn Fn(&[Letter], &[Letter]) -> bool + Sync);

impl StackingStructure {
    /// Checks the flow axioms on every edge leaving a normal form of length
    /// at most `radius`. Without an oracle, equality falls back on
    /// comparing normal forms.
    pub fn verify_flow(&self, radius: usize, oracle: Option<EqualityOracle<'_>>) -> VerificationReport {
        let equal = |x: &[Letter], y: &[Letter]| -> Result<bool, RewriteError> {
            match oracle {
                Some(o) => Ok(o(x, y)),
                None => self.word_problem(x, y),
            }
        };
        let letters = self.alphabet.letters();
        let mut report = VerificationReport::empty(self, radius);
        for &z in &letters {
            match equal(&[z], &[]) {
                Ok(false) => {}
                Ok(true) => report.failures.push(Failure {
                    input: z.to_string(),
                    axiom: Axiom::Generator,
                    detail: "generator represents the identity".into(),
                }),
                Err(e) => report.failures.push(Failure {
                    input: z.to_string(),
                    axiom: Axiom::F2r,
                    detail: e.to_string(),
                }),
            }
        }
        let ball = self.normal_forms_up_to(radius);
        let swept = ball
            .par_iter()
            .map(|u| {
                let mut r = VerificationReport::empty(self, radius);
                for &z in &letters {
                    self.check_edge(u, z, &equal, &mut r);
                }
                r
            })
            .reduce(|| VerificationReport::empty(self, radius), VerificationReport::merge);
        let mut report = report.merge(swept);
        report.failures.sort();
        report
    }

    fn check_edge<E>(&self, u: &Word, z: Letter, equal: &E, r: &mut VerificationReport)
    where
        E: Fn(&[Letter], &[Letter]) -> Result<bool, RewriteError>,
    {
        let input = format!("u={u} z={z}");
        let fail = |r: &mut VerificationReport, axiom, detail: String| {
            r.failures.push(Failure { input: input.clone(), axiom, detail })
        };
        r.edges_checked += 1;
        let v = self.phi(u, z);
        r.max_phi_len = r.max_phi_len.max(v.len());
        let tree = self.is_tree_edge(u, z);
        if tree && v[..] != [z] {
            fail(r, Axiom::F2d, format!("tree edge mapped to {v:?}"));
        }
        if !tree && v[..] == [z] {
            fail(r, Axiom::F2r, "non-tree edge is fixed by the stacking map".into());
        }
        if v.len() > self.bound {
            fail(r, Axiom::Bound, format!("|φ| = {} exceeds {}", v.len(), self.bound));
        }
        if let Some(bad) = v.iter().find(|l| !self.alphabet.contains(**l)) {
            fail(r, Axiom::F1, format!("φ uses foreign letter {bad}"));
            return;
        }
        match equal(&v, &[z]) {
            Ok(true) => {}
            Ok(false) => fail(r, Axiom::F1, format!("φ = {v:?} and z differ in the group")),
            Err(e) => fail(r, Axiom::F2r, e.to_string()),
        }
        match self.normalize_counting(&u.push(z)) {
            Ok((_, steps)) => r.max_steps = r.max_steps.max(steps),
            Err(e) => fail(r, Axiom::F2r, e.to_string()),
        }
    }
}

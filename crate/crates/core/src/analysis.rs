//! One-shot report combining the individual analyses.

use serde::{Deserialize, Serialize};

use crate::decomposition::{decompose, DecompositionSummary};
use crate::monotonicity::{
    forbidden_binary_sections, local_monotonicity_degree, ForbiddenSection, LocalMonotonicityReport,
};
use crate::permutability::{max_permutability_degree, PermutabilityReport, FAST_PATH_MAX_P};
use crate::polyform::MultilinearPolynomial;
use crate::symmetric::{detect_symmetric, SymmetricSequence};
use crate::table::FunctionTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub source: String,
    pub arity: usize,
    pub table: FunctionTable,
    pub polynomial: String,
    pub boolean: bool,
    pub essential_variables: Vec<usize>,
    pub local_monotonicity: LocalMonotonicityReport,
    pub forbidden_sections: Vec<ForbiddenSection>,
    /// Absent above the arity the permutability check accepts.
    pub permutability: Option<PermutabilityReport>,
    pub symmetric: Option<SymmetricSequence>,
    pub monotone: bool,
    pub decomposition: Option<DecompositionSummary>,
}

pub fn analyze(source: impl Into<String>, f: &FunctionTable) -> AnalysisReport {
    let local = local_monotonicity_degree(f);
    let permutability = if f.arity() <= FAST_PATH_MAX_P {
        Some(max_permutability_degree(f).expect("arity within the fast-path cap"))
    } else {
        None
    };
    AnalysisReport {
        source: source.into(),
        arity: f.arity(),
        table: f.clone(),
        polynomial: MultilinearPolynomial::from_table(f).to_string(),
        boolean: f.is_boolean(),
        essential_variables: f.essential_variables().indices(),
        monotone: local.monotone,
        local_monotonicity: local,
        forbidden_sections: forbidden_binary_sections(f),
        permutability,
        symmetric: detect_symmetric(f),
        decomposition: decompose(f).map(|d| d.summary()),
    }
}

impl AnalysisReport {
    /// Re-checks the embedded witnesses against the table.
    pub fn verify_witnesses(&self) -> bool {
        let local_ok = match &self.local_monotonicity.witness {
            Some(w) => w.verify(&self.table, self.local_monotonicity.degree + 1),
            None => self.local_monotonicity.monotone,
        };
        let perm_ok = match &self.permutability {
            Some(PermutabilityReport {
                counterexample: Some(c),
                max_p,
            }) => c.verify(&self.table) && c.subset.len() == max_p + 1,
            Some(PermutabilityReport { max_p, .. }) => *max_p == self.arity,
            None => true,
        };
        local_ok && perm_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyform::parse_expression;

    #[test]
    fn example_reports() {
        let f = parse_expression("x1 - x1*x2 + x2*x3").unwrap().to_table();
        let r = analyze("x1 - x1*x2 + x2*x3", &f);
        assert_eq!(r.local_monotonicity.degree, 2);
        assert!(!r.monotone);
        assert!(r.permutability.as_ref().unwrap().max_p >= 2);
        assert!(r.decomposition.is_none());
        assert!(r.verify_witnesses());

        let g = FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap();
        let r = analyze("pair", &g);
        assert_eq!(r.local_monotonicity.degree, 1);
        assert_eq!(r.permutability.as_ref().unwrap().max_p, 2);
        assert_eq!(r.forbidden_sections.len(), 1);
        assert!(r.verify_witnesses());

        let json = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn constant_zero() {
        let f = parse_expression("0").unwrap().to_table();
        let r = analyze("0", &f);
        assert_eq!(r.arity, 0);
        assert!(r.monotone);
        assert_eq!(r.local_monotonicity.degree, 0);
        assert!(r.decomposition.is_some());
    }
}

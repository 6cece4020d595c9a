//! Recovering a function from all of its meet and join derivatives.
//!
//! The profile gives, for every edge of the cube, the unordered pair of
//! values at its endpoints. One known vertex value fixes the rest by
//! propagation along edges. An anchor comes from an edge whose pair is a
//! singleton, or from a vertex whose incident edges carry different pairs.
//! When every edge carries the same pair `{u, v}` the profile belongs to both
//! parity-type functions and nothing more can be said.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::calculus::{join_derivative, meet_derivative};
use crate::error::{Error, Result};
use crate::families::parity_valued;
use crate::point::{check_arity, Point};
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct DerivativeProfile {
    arity: usize,
    meet: Vec<FunctionTable>,
    join: Vec<FunctionTable>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    arity: usize,
    meet: Vec<Vec<Rational>>,
    join: Vec<Vec<Rational>>,
}

impl TryFrom<ProfileRepr> for DerivativeProfile {
    type Error = Error;
    fn try_from(r: ProfileRepr) -> Result<Self> {
        let tables = |v: Vec<Vec<Rational>>| {
            v.into_iter()
                .map(|values| FunctionTable::new(r.arity, values))
                .collect::<Result<Vec<_>>>()
        };
        DerivativeProfile::new(r.arity, tables(r.meet)?, tables(r.join)?)
    }
}

impl From<DerivativeProfile> for ProfileRepr {
    fn from(p: DerivativeProfile) -> Self {
        ProfileRepr {
            arity: p.arity,
            meet: p.meet.into_iter().map(FunctionTable::into_values).collect(),
            join: p.join.into_iter().map(FunctionTable::into_values).collect(),
        }
    }
}

impl DerivativeProfile {
    /// Checks only shapes: `n` meet and `n` join tables of arity `n`, `n >= 1`.
    pub fn new(arity: usize, meet: Vec<FunctionTable>, join: Vec<FunctionTable>) -> Result<Self> {
        check_arity(arity)?;
        if arity == 0 {
            return Err(Error::InvalidArgument(
                "a derivative profile needs arity at least 1".into(),
            ));
        }
        for tables in [&meet, &join] {
            if tables.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "expected {arity} derivative tables, found {}",
                    tables.len()
                )));
            }
            if let Some(t) = tables.iter().find(|t| t.arity() != arity) {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: t.arity(),
                });
            }
        }
        Ok(DerivativeProfile { arity, meet, join })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `∧_k f`, 1-based.
    pub fn meet(&self, k: usize) -> &FunctionTable {
        &self.meet[k - 1]
    }

    /// `∨_k f`, 1-based.
    pub fn join(&self, k: usize) -> &FunctionTable {
        &self.join[k - 1]
    }

    pub fn into_parts(self) -> (usize, Vec<FunctionTable>, Vec<FunctionTable>) {
        (self.arity, self.meet, self.join)
    }

    #[cfg(test)]
    pub(crate) fn meet_mut(&mut self, k: usize) -> &mut FunctionTable {
        &mut self.meet[k - 1]
    }
}

pub fn profile_of(f: &FunctionTable) -> Result<DerivativeProfile> {
    let n = f.arity();
    let meet = (1..=n).map(|k| meet_derivative(f, k)).collect::<Result<Vec<_>>>()?;
    let join = (1..=n).map(|k| join_derivative(f, k)).collect::<Result<Vec<_>>>()?;
    DerivativeProfile::new(n, meet, join)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InconsistencyKind {
    /// `∧_k f(x) > ∨_k f(x)`.
    MeetAboveJoin,
    /// A derivative in direction `k` depends on `x_k`.
    DependsOnOwnVariable,
    /// Two edges at one vertex carry disjoint pairs.
    DisjointPairs,
    /// Propagation reached a vertex twice with different values.
    PropagationConflict,
    /// The reconstructed table does not reproduce this edge.
    VerificationFailure,
}

/// The first contradiction found, located at the `k`-edge through `point`
/// (`x_k = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconsistency {
    pub kind: InconsistencyKind,
    pub k: usize,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReconstructionResult {
    Unique {
        table: FunctionTable,
    },
    /// Both `u` on even-weight and `v` on odd-weight points, and the swap,
    /// fit the profile. `u < v`.
    ParityPair {
        arity: usize,
        u: Rational,
        v: Rational,
    },
    Inconsistent {
        witness: Inconsistency,
    },
}

impl ReconstructionResult {
    /// Every function compatible with the profile.
    pub fn candidates(&self) -> Vec<FunctionTable> {
        match self {
            ReconstructionResult::Unique { table } => vec![table.clone()],
            ReconstructionResult::ParityPair { arity, u, v } => {
                vec![parity_valued(*arity, u, v), parity_valued(*arity, v, u)]
            }
            ReconstructionResult::Inconsistent { .. } => Vec::new(),
        }
    }
}

fn inconsistent(kind: InconsistencyKind, n: usize, k: usize, x: u32) -> ReconstructionResult {
    ReconstructionResult::Inconsistent {
        witness: Inconsistency {
            kind,
            k,
            point: Point::new_unchecked(n, x & !(1 << (k - 1))),
        },
    }
}

/// Unordered endpoint values `(low, high)` of the `k`-edge through `x`.
fn pair(p: &DerivativeProfile, k: usize, x: u32) -> (&Rational, &Rational) {
    (p.meet(k).value(x), p.join(k).value(x))
}

pub fn reconstruct(p: &DerivativeProfile) -> ReconstructionResult {
    use InconsistencyKind::*;
    let n = p.arity;
    let size = 1u32 << n;

    for k in 1..=n {
        let bit = 1u32 << (k - 1);
        for x in (0..size).filter(|x| x & bit == 0) {
            let (lo, hi) = pair(p, k, x);
            if p.meet(k).value(x | bit) != lo || p.join(k).value(x | bit) != hi {
                return inconsistent(DependsOnOwnVariable, n, k, x);
            }
            if lo > hi {
                return inconsistent(MeetAboveJoin, n, k, x);
            }
        }
    }

    let anchor = find_anchor(p);
    let (start, value) = match anchor {
        Anchor::Vertex(x, v) => (x, v),
        Anchor::Conflict(k, x) => return inconsistent(DisjointPairs, n, k, x),
        Anchor::None => {
            let (u, v) = pair(p, 1, 0);
            return ReconstructionResult::ParityPair {
                arity: n,
                u: u.clone(),
                v: v.clone(),
            };
        }
    };

    let mut values: Vec<Option<Rational>> = vec![None; size as usize];
    values[start as usize] = Some(value);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let vx = values[x as usize].clone().expect("queued vertices carry values");
        for k in 1..=n {
            let y = x ^ (1 << (k - 1));
            let (lo, hi) = pair(p, k, x);
            let other = if &vx == lo {
                hi
            } else if &vx == hi {
                lo
            } else {
                return inconsistent(PropagationConflict, n, k, x);
            };
            match &values[y as usize] {
                Some(w) if w != other => return inconsistent(PropagationConflict, n, k, x),
                Some(_) => {}
                None => {
                    values[y as usize] = Some(other.clone());
                    queue.push_back(y);
                }
            }
        }
    }

    let table =
        FunctionTable::from_parts_unchecked(n, values.into_iter().map(|v| v.expect("cube is connected")).collect());
    if let Some((k, x)) = first_mismatch(&table, p) {
        return inconsistent(VerificationFailure, n, k, x);
    }
    ReconstructionResult::Unique { table }
}

enum Anchor {
    Vertex(u32, Rational),
    Conflict(usize, u32),
    None,
}

fn find_anchor(p: &DerivativeProfile) -> Anchor {
    let n = p.arity;
    let size = 1u32 << n;
    for k in 1..=n {
        let bit = 1u32 << (k - 1);
        for x in (0..size).filter(|x| x & bit == 0) {
            let (lo, hi) = pair(p, k, x);
            if lo == hi {
                return Anchor::Vertex(x, lo.clone());
            }
        }
    }
    // every pair has two distinct elements from here on
    for x in 0..size {
        let (a, b) = pair(p, 1, x);
        for k in 2..=n {
            let (c, d) = pair(p, k, x);
            if (a, b) == (c, d) {
                continue;
            }
            let common = [a, b].into_iter().find(|v| *v == c || *v == d);
            return match common {
                Some(v) => Anchor::Vertex(x, v.clone()),
                None => Anchor::Conflict(k, x),
            };
        }
    }
    Anchor::None
}

fn first_mismatch(f: &FunctionTable, p: &DerivativeProfile) -> Option<(usize, u32)> {
    let n = f.arity();
    for k in 1..=n {
        let bit = 1u32 << (k - 1);
        for x in 0..1u32 << n {
            let (a, b) = (f.value(x & !bit), f.value(x | bit));
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if (lo, hi) != pair(p, k, x) {
                return Some((k, x));
            }
        }
    }
    None
}

/// Whether `profile_of(f)` equals `p`. False on an arity mismatch.
pub fn verify_profile(f: &FunctionTable, p: &DerivativeProfile) -> bool {
    f.arity() == p.arity && first_mismatch(f, p).is_none()
}

/// `f` takes exactly two values and differs across every edge.
pub fn is_parity_type(f: &FunctionTable) -> bool {
    let n = f.arity();
    n >= 1
        && f.values().iter().all(|v| v == f.value(0) || v == f.value(1))
        && (0..1u32 << n).all(|x| (0..n).all(|i| f.value(x) != f.value(x ^ (1 << i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{boolean_from_code, parity};

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn parity_profile() {
        let p = profile_of(&parity(2)).unwrap();
        for k in 1..=2 {
            assert_eq!(p.meet(k), &FunctionTable::constant(2, r(0)).unwrap());
            assert_eq!(p.join(k), &FunctionTable::constant(2, r(1)).unwrap());
        }
        match reconstruct(&profile_of(&parity(3)).unwrap()) {
            ReconstructionResult::ParityPair { arity, u, v } => {
                assert_eq!((arity, u, v), (3, r(0), r(1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn both_parity_members_share_a_profile() {
        let (u, v) = (Rational::new(-1, 2).unwrap(), r(3));
        let f = parity_valued(3, &v, &u);
        let p = profile_of(&f).unwrap();
        let result = reconstruct(&p);
        let candidates = result.candidates();
        assert_eq!(candidates.len(), 2);
        assert!(candidates.contains(&f));
        for g in &candidates {
            assert!(verify_profile(g, &p));
        }
    }

    #[test]
    fn constant_and_example_are_unique() {
        let c = FunctionTable::constant(3, r(5)).unwrap();
        assert_eq!(
            reconstruct(&profile_of(&c).unwrap()),
            ReconstructionResult::Unique { table: c }
        );
        let f = FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap();
        let p = profile_of(&f).unwrap();
        assert_eq!(p.meet(1), &FunctionTable::from_integers(2, &[1, 1, 3, 3]).unwrap());
        assert_eq!(reconstruct(&p), ReconstructionResult::Unique { table: f });
    }

    #[test]
    fn arity_three_round_trip() {
        let mut pairs = 0;
        for code in 0..256 {
            let f = boolean_from_code(3, code);
            let result = reconstruct(&profile_of(&f).unwrap());
            match &result {
                ReconstructionResult::Unique { table } => assert_eq!(table, &f),
                ReconstructionResult::ParityPair { .. } => {
                    assert!(is_parity_type(&f));
                    assert!(result.candidates().contains(&f));
                    pairs += 1;
                }
                ReconstructionResult::Inconsistent { .. } => panic!("code {code}"),
            }
        }
        assert_eq!(pairs, 2);
    }

    #[test]
    fn broken_profiles() {
        let f = FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap();
        let mut p = profile_of(&f).unwrap();
        *p.meet_mut(1) = FunctionTable::constant(2, r(9)).unwrap();
        match reconstruct(&p) {
            ReconstructionResult::Inconsistent { witness } => {
                assert_eq!(witness.kind, InconsistencyKind::MeetAboveJoin);
                assert_eq!(witness.k, 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(!verify_profile(&f, &p));

        let mut q = profile_of(&f).unwrap();
        *q.meet_mut(2) = FunctionTable::from_integers(2, &[1, 1, 2, 2]).unwrap();
        assert!(matches!(
            reconstruct(&q),
            ReconstructionResult::Inconsistent { witness } if witness.kind == InconsistencyKind::DependsOnOwnVariable
        ));

        // edge pairs {0,1} and {2,3} meet at the origin
        let disjoint = DerivativeProfile::new(
            2,
            vec![
                FunctionTable::from_integers(2, &[0, 0, 2, 2]).unwrap(),
                FunctionTable::from_integers(2, &[2, 0, 2, 0]).unwrap(),
            ],
            vec![
                FunctionTable::from_integers(2, &[1, 1, 3, 3]).unwrap(),
                FunctionTable::from_integers(2, &[3, 1, 3, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(
            reconstruct(&disjoint),
            ReconstructionResult::Inconsistent { witness } if witness.kind == InconsistencyKind::DisjointPairs
        ));
    }

    #[test]
    fn json_shape() {
        let f = FunctionTable::from_integers(1, &[2, 5]).unwrap();
        let p = profile_of(&f).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"arity":1,"meet":[["2","2"]],"join":[["5","5"]]}"#);
        let back: DerivativeProfile = serde_json::from_str(r#"{"arity":1,"meet":[[2,2]],"join":[[5,5]]}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<DerivativeProfile>(r#"{"arity":0,"meet":[],"join":[]}"#).is_err());
        assert!(
            serde_json::from_str::<DerivativeProfile>(r#"{"arity":2,"meet":[[1,1,1,1]],"join":[[1,1,1,1]]}"#).is_err()
        );
    }
}

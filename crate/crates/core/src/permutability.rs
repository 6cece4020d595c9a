//! Permutability of lattice derivatives.
//!
//! `f` has p-permutable lattice derivatives when for every p-subset `K`,
//! every choice of meet/join per index of `K` and every ordering, the
//! composed derivative is the same function.
//!
//! For a fixed split of `K` into meet indices `M` and join indices `J`, every
//! ordering lies pointwise between the two extremal ones: meets applied
//! first (`∨_J ∧_M f`, the least) and joins applied first (`∧_M ∨_J f`, the
//! greatest). This follows from `∨_k ∧_j f <= ∧_j ∨_k f`, monotonicity of the
//! operators, and commutation of operators of the same kind. The fast check
//! therefore compares only the two extremes; [`has_p_permutable_derivatives_exhaustive`]
//! enumerates every ordering and is the reference it is tested against.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::calculus::{apply_sequence, lattice_pass, DerivativeOp, OpKind, OpSequence};
use crate::error::{Error, Result};
use crate::monotonicity::for_each_binary_section;
use crate::point::{deposit, full_mask, subsets_of_size, Point, SubsetMask};
use crate::polyform::BinaryCoefficients;
use crate::rational::Rational;
use crate::table::{FunctionTable, Ranks};

/// Largest `p` accepted by the extremal-ordering check.
pub const FAST_PATH_MAX_P: usize = 12;
/// Largest `p` accepted by the exhaustive enumeration (`p!` orderings).
pub const EXHAUSTIVE_MAX_P: usize = 7;

/// Two orderings of the same operators whose compositions differ at `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutabilityCounterexample {
    pub subset: SubsetMask,
    pub meets: SubsetMask,
    pub joins: SubsetMask,
    pub first: OpSequence,
    pub second: OpSequence,
    pub point: Point,
    pub first_value: Rational,
    pub second_value: Rational,
}

impl PermutabilityCounterexample {
    /// Recomputes both compositions with the table-level calculus.
    pub fn verify(&self, f: &FunctionTable) -> bool {
        let same_ops = {
            let mut a = self.first.ops().to_vec();
            let mut b = self.second.ops().to_vec();
            a.sort_by_key(|op| op.index);
            b.sort_by_key(|op| op.index);
            a == b
        };
        let eval = |s: &OpSequence| apply_sequence(f, s).and_then(|g| g.evaluate(&self.point));
        match (eval(&self.first), eval(&self.second)) {
            (Ok(a), Ok(b)) => same_ops && a != b && a == self.first_value && b == self.second_value,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutabilityCheck {
    pub p: usize,
    pub holds: bool,
    pub counterexample: Option<PermutabilityCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutabilityReport {
    pub max_p: usize,
    pub counterexample: Option<PermutabilityCounterexample>,
}

fn check_p(f: &FunctionTable, p: usize, cap: usize) -> Result<()> {
    if p == 0 || p > f.arity() {
        return Err(Error::ParameterOutOfRange {
            p,
            min: 1,
            max: f.arity(),
        });
    }
    if p > cap {
        return Err(Error::ParameterOutOfRange { p, min: 1, max: cap });
    }
    Ok(())
}

fn ops_for(mask: u32, kind: OpKind) -> impl Iterator<Item = DerivativeOp> {
    (0..32)
        .filter(move |i| mask & (1 << i) != 0)
        .map(move |i| DerivativeOp { kind, index: i + 1 })
}

fn holds(p: usize) -> PermutabilityCheck {
    PermutabilityCheck {
        p,
        holds: true,
        counterexample: None,
    }
}

/// Extremal-ordering check of p-permutability.
pub fn has_p_permutable_derivatives(f: &FunctionTable, p: usize) -> Result<PermutabilityCheck> {
    check_p(f, p, FAST_PATH_MAX_P)?;
    let ranks = f.ranks();
    Ok(extremal_scan(&ranks, p))
}

fn extremal_scan(ranks: &Ranks, p: usize) -> PermutabilityCheck {
    if p == 1 {
        return holds(p);
    }
    let n = ranks.arity;
    let r = &ranks.ranks;
    let local_full = (1u32 << p) - 1;
    let mut cube = vec![0u32; 1 << p];
    for k_set in subsets_of_size(n, p) {
        let rest = full_mask(n) & !k_set;
        for t in 0..1u32 << (n - p) {
            let base = deposit(t, rest);
            for (u, slot) in cube.iter_mut().enumerate() {
                *slot = r[(base | deposit(u as u32, k_set)) as usize];
            }
            // splits with both kinds present; single-kind splits commute
            for meet_local in 1..local_full {
                let join_local = local_full & !meet_local;
                let least = fold_nested(&cube, join_local, meet_local, u32::max, u32::min);
                let greatest = fold_nested(&cube, meet_local, join_local, u32::min, u32::max);
                if least != greatest {
                    let meets = deposit(meet_local, k_set);
                    let joins = deposit(join_local, k_set);
                    let first = OpSequence(
                        ops_for(joins, OpKind::Join)
                            .chain(ops_for(meets, OpKind::Meet))
                            .collect(),
                    );
                    let second = OpSequence(
                        ops_for(meets, OpKind::Meet)
                            .chain(ops_for(joins, OpKind::Join))
                            .collect(),
                    );
                    return PermutabilityCheck {
                        p,
                        holds: false,
                        counterexample: Some(PermutabilityCounterexample {
                            subset: SubsetMask::new_unchecked(n, k_set),
                            meets: SubsetMask::new_unchecked(n, meets),
                            joins: SubsetMask::new_unchecked(n, joins),
                            first,
                            second,
                            point: Point::new_unchecked(n, base),
                            first_value: ranks.level(least).clone(),
                            second_value: ranks.level(greatest).clone(),
                        }),
                    };
                }
            }
        }
    }
    holds(p)
}

/// `outer_{a ⊆ outer_axes} inner_{b ⊆ inner_axes} cube[a | b]`: the value of
/// the composition that applies the inner operators first.
fn fold_nested(
    cube: &[u32],
    outer_axes: u32,
    inner_axes: u32,
    outer: fn(u32, u32) -> u32,
    inner: fn(u32, u32) -> u32,
) -> u32 {
    let mut acc: Option<u32> = None;
    let mut a = outer_axes;
    loop {
        let mut b = inner_axes;
        let mut v = cube[(a | b) as usize];
        while b != 0 {
            b = (b - 1) & inner_axes;
            v = inner(v, cube[(a | b) as usize]);
        }
        acc = Some(acc.map_or(v, |x| outer(x, v)));
        if a == 0 {
            break;
        }
        a = (a - 1) & outer_axes;
    }
    acc.expect("at least one term")
}

/// p-permutability by enumerating every subset, operator choice and
/// ordering (`p!` orderings per choice).
pub fn has_p_permutable_derivatives_exhaustive(f: &FunctionTable, p: usize) -> Result<PermutabilityCheck> {
    check_p(f, p, EXHAUSTIVE_MAX_P)?;
    let ranks = f.ranks();
    let n = f.arity();
    for k_set in subsets_of_size(n, p) {
        let indices: Vec<usize> = (0..n).filter(|i| k_set & (1 << i) != 0).collect();
        for assignment in 0..1u32 << p {
            let ops: Vec<(usize, OpKind)> = indices
                .iter()
                .enumerate()
                .map(|(i, &bit)| {
                    let kind = if assignment & (1 << i) != 0 {
                        OpKind::Meet
                    } else {
                        OpKind::Join
                    };
                    (bit, kind)
                })
                .collect();
            let mut reference: Option<(Vec<usize>, Vec<u32>)> = None;
            for order in (0..p).permutations(p) {
                let mut values = ranks.ranks.clone();
                for &i in &order {
                    lattice_pass(&mut values, ops[i].0, ops[i].1);
                }
                match &reference {
                    None => reference = Some((order, values)),
                    Some((first_order, first_values)) => {
                        if let Some(x) = (0..values.len()).find(|&x| values[x] != first_values[x]) {
                            let to_seq = |order: &[usize]| {
                                OpSequence(
                                    order
                                        .iter()
                                        .rev()
                                        .map(|&i| DerivativeOp {
                                            kind: ops[i].1,
                                            index: ops[i].0 + 1,
                                        })
                                        .collect(),
                                )
                            };
                            let meets: u32 = ops.iter().filter(|o| o.1 == OpKind::Meet).map(|o| 1u32 << o.0).sum();
                            return Ok(PermutabilityCheck {
                                p,
                                holds: false,
                                counterexample: Some(PermutabilityCounterexample {
                                    subset: SubsetMask::new_unchecked(n, k_set),
                                    meets: SubsetMask::new_unchecked(n, meets),
                                    joins: SubsetMask::new_unchecked(n, k_set & !meets),
                                    first: to_seq(first_order),
                                    second: to_seq(&order),
                                    point: Point::new_unchecked(n, x as u32 & !k_set),
                                    first_value: ranks.level(first_values[x]).clone(),
                                    second_value: ranks.level(values[x]).clone(),
                                }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(holds(p))
}

/// Largest `p` with p-permutable lattice derivatives, scanning upward and
/// stopping at the first failure (the property is downward closed).
pub fn max_permutability_degree(f: &FunctionTable) -> Result<PermutabilityReport> {
    let n = f.arity();
    let ranks = f.ranks();
    for p in 2..=n {
        if p > FAST_PATH_MAX_P {
            return Err(Error::ParameterOutOfRange {
                p,
                min: 1,
                max: FAST_PATH_MAX_P,
            });
        }
        let check = extremal_scan(&ranks, p);
        if !check.holds {
            return Ok(PermutabilityReport {
                max_p: p - 1,
                counterexample: check.counterexample,
            });
        }
    }
    Ok(PermutabilityReport {
        max_p: n,
        counterexample: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinarySection {
    pub j: usize,
    pub k: usize,
    pub base: Point,
    pub coefficients: BinaryCoefficients,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryPermutabilityCheck {
    pub holds: bool,
    pub violations: Vec<BinarySection>,
}

/// Checks every binary section against
/// `a_1 a_12 >= 0 ∨ a_2 a_12 >= 0 ∨ |a_12| <= max(|a_1|, |a_2|)`.
pub fn binary_2permutability_condition(f: &FunctionTable) -> BinaryPermutabilityCheck {
    let mut violations = Vec::new();
    for_each_binary_section(f, |j, k, a, [g00, g10, g01, g11]| {
        let coefficients = BinaryCoefficients::from_values(g00, g10, g01, g11);
        if !coefficients.has_permutable_derivatives() {
            violations.push(BinarySection {
                j,
                k,
                base: Point::new_unchecked(f.arity(), a),
                coefficients,
            });
        }
    });
    BinaryPermutabilityCheck {
        holds: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{boolean_from_code, conjunction, parity, prefix_staircase};
    use crate::monotonicity::local_monotonicity_degree;

    fn pair_example() -> FunctionTable {
        FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap()
    }

    #[test]
    fn pair_example_is_two_permutable() {
        let c = has_p_permutable_derivatives(&pair_example(), 2).unwrap();
        assert!(c.holds);
        assert_eq!(max_permutability_degree(&pair_example()).unwrap().max_p, 2);
    }

    #[test]
    fn staircase_is_fully_permutable() {
        for n in 3..=8 {
            let f = prefix_staircase(n);
            assert!(has_p_permutable_derivatives(&f, n).unwrap().holds, "n={n}");
            assert_eq!(max_permutability_degree(&f).unwrap().max_p, n);
        }
    }

    #[test]
    fn xor_counterexample_values() {
        let c = has_p_permutable_derivatives(&parity(2), 2).unwrap();
        assert!(!c.holds);
        let ce = c.counterexample.unwrap();
        assert_eq!(ce.first_value, Rational::zero());
        assert_eq!(ce.second_value, Rational::one());
        assert!(ce.verify(&parity(2)));
        assert_eq!(max_permutability_degree(&parity(2)).unwrap().max_p, 1);
    }

    #[test]
    fn monotone_functions_are_fully_permutable() {
        assert_eq!(max_permutability_degree(&conjunction(5)).unwrap().max_p, 5);
        let c = FunctionTable::constant(4, Rational::from_integer(2)).unwrap();
        assert_eq!(max_permutability_degree(&c).unwrap().max_p, 4);
        assert_eq!(
            max_permutability_degree(&FunctionTable::from_integers(0, &[1]).unwrap())
                .unwrap()
                .max_p,
            0
        );
    }

    #[test]
    fn parameter_bounds() {
        let f = parity(3);
        assert!(has_p_permutable_derivatives(&f, 0).is_err());
        assert!(has_p_permutable_derivatives(&f, 4).is_err());
        assert!(has_p_permutable_derivatives(&f, 1).unwrap().holds);
        let big = parity(8);
        assert!(has_p_permutable_derivatives_exhaustive(&big, 8).is_err());
    }

    #[test]
    fn fast_path_matches_enumeration_on_boolean_arity_three() {
        for code in 0..256u64 {
            let f = boolean_from_code(3, code);
            for p in 1..=3 {
                let fast = has_p_permutable_derivatives(&f, p).unwrap();
                let slow = has_p_permutable_derivatives_exhaustive(&f, p).unwrap();
                assert_eq!(fast.holds, slow.holds, "code {code} p {p}");
                for ce in fast.counterexample.iter().chain(slow.counterexample.iter()) {
                    assert!(ce.verify(&f), "code {code} p {p}: {ce:?}");
                }
            }
        }
    }

    #[test]
    fn binary_condition_examples() {
        let c = binary_2permutability_condition(&pair_example());
        assert!(c.holds);
        let x = binary_2permutability_condition(&parity(2));
        assert!(!x.holds);
        let coeffs = &x.violations[0].coefficients;
        assert_eq!(
            (coeffs.a1.clone(), coeffs.a2.clone(), coeffs.a12.clone()),
            (1.into(), 1.into(), (-2).into())
        );
        let k = FunctionTable::constant(3, Rational::from_integer(1)).unwrap();
        assert!(binary_2permutability_condition(&k).holds);
    }

    #[test]
    fn permutable_but_not_locally_monotone() {
        assert_eq!(local_monotonicity_degree(&pair_example()).degree, 1);
        assert_eq!(local_monotonicity_degree(&prefix_staircase(6)).degree, 2);
        assert_eq!(max_permutability_degree(&prefix_staircase(6)).unwrap().max_p, 6);
    }
}

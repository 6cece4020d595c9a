//! Monotonicity and p-local monotonicity.
//!
//! `f` is p-locally monotone when, for every `k`, `Δ_k f(x) Δ_k f(y) >= 0`
//! whenever `x` and `y` differ in fewer than `p` coordinates other than `k`.
//! Equivalently, every p-ary section of `f` is monotone. Every function is
//! 1-locally monotone and `f` is n-locally monotone iff it is monotone.
//!
//! Sign tests only compare values of `f`, so the scans below run on the rank
//! encoding of the table.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::calculus::delta;
use crate::error::{Error, Result};
use crate::point::{check_index, deposit, full_mask, subsets_of_size, Point};
use crate::polyform::BinaryCoefficients;
use crate::rational::Rational;
use crate::table::{FunctionTable, Ranks};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableMonotonicity {
    Isotone,
    Antitone,
    /// Both isotone and antitone: the variable is inessential.
    Constant,
    Neither,
}

impl VariableMonotonicity {
    pub fn is_monotone(self) -> bool {
        self != VariableMonotonicity::Neither
    }
}

/// A pair of points (both with `x_k = 0`) on which `Δ_k f` takes strictly
/// opposite signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub k: usize,
    pub x: Point,
    pub y: Point,
    pub delta_x: Rational,
    pub delta_y: Rational,
}

impl LocalWitness {
    /// Hamming distance of `x` and `y` off coordinate `k`.
    pub fn distance(&self) -> u32 {
        self.x.distance_off(&self.y, self.k)
    }

    /// Re-checks the witness against `f`: opposite signs of `Δ_k f` and a
    /// distance below `p`.
    pub fn verify(&self, f: &FunctionTable, p: usize) -> bool {
        let Ok(d) = delta(f, self.k) else {
            return false;
        };
        let (Ok(dx), Ok(dy)) = (d.evaluate(&self.x), d.evaluate(&self.y)) else {
            return false;
        };
        dx == self.delta_x && dy == self.delta_y && (&dx * &dy).sign().is_lt() && (self.distance() as usize) < p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCheck {
    pub p: usize,
    pub holds: bool,
    pub witness: Option<LocalWitness>,
}

/// Degree of local monotonicity, with a witness against `degree + 1` when
/// the function is not monotone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMonotonicityReport {
    pub degree: usize,
    pub monotone: bool,
    pub witness: Option<LocalWitness>,
}

pub fn variable_monotonicity(f: &FunctionTable, k: usize) -> Result<VariableMonotonicity> {
    check_index(k, f.arity())?;
    let bit = 1usize << (k - 1);
    let v = f.values();
    let (mut up, mut down) = (false, false);
    for x in (0..v.len()).filter(|x| x & bit == 0) {
        match v[x | bit].cmp(&v[x]) {
            Ordering::Greater => up = true,
            Ordering::Less => down = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (up, down) {
        (false, false) => VariableMonotonicity::Constant,
        (true, false) => VariableMonotonicity::Isotone,
        (false, true) => VariableMonotonicity::Antitone,
        (true, true) => VariableMonotonicity::Neither,
    })
}

pub fn variable_monotonicities(f: &FunctionTable) -> Vec<VariableMonotonicity> {
    (1..=f.arity())
        .map(|k| variable_monotonicity(f, k).expect("index in range"))
        .collect()
}

/// No partial derivative changes sign.
pub fn is_monotone(f: &FunctionTable) -> bool {
    variable_monotonicities(f)
        .into_iter()
        .all(VariableMonotonicity::is_monotone)
}

fn check_p(f: &FunctionTable, p: usize) -> Result<()> {
    if p == 0 || p > f.arity() {
        return Err(Error::ParameterOutOfRange {
            p,
            min: 1,
            max: f.arity(),
        });
    }
    Ok(())
}

fn witness_from_ranks(f: &Ranks, k: usize, neg: u32, pos: u32) -> LocalWitness {
    let bit = 1u32 << (k - 1);
    let d = |x: u32| f.level(f.ranks[(x | bit) as usize]) - f.level(f.ranks[x as usize]);
    LocalWitness {
        k,
        x: Point::new_unchecked(f.arity, neg),
        y: Point::new_unchecked(f.arity, pos),
        delta_x: d(neg),
        delta_y: d(pos),
    }
}

/// Section scan: for each `k`, each `(p-1)`-subset `S` avoiding `k` and each
/// base point, `Δ_k f` must not take both signs on the `2^(p-1)` points of
/// the section. On failure the witness pairs the first negative point with
/// the first positive one of the offending section.
pub fn is_p_locally_monotone(f: &FunctionTable, p: usize) -> Result<LocalCheck> {
    check_p(f, p)?;
    if p == 1 {
        return Ok(LocalCheck {
            p,
            holds: true,
            witness: None,
        });
    }
    let n = f.arity();
    let ranks = f.ranks();
    let r = &ranks.ranks;
    for k in 1..=n {
        let bit = 1u32 << (k - 1);
        let others = full_mask(n) & !bit;
        for local in subsets_of_size(n - 1, p - 1) {
            let s = deposit(local, others);
            let rest = others & !s;
            for t in 0..1u32 << (n - p) {
                let base = deposit(t, rest);
                let mut neg = None;
                let mut pos = None;
                for u in 0..1u32 << (p - 1) {
                    let x = base | deposit(u, s);
                    match r[(x | bit) as usize].cmp(&r[x as usize]) {
                        Ordering::Less if neg.is_none() => neg = Some(x),
                        Ordering::Greater if pos.is_none() => pos = Some(x),
                        _ => {}
                    }
                    if let (Some(a), Some(b)) = (neg, pos) {
                        return Ok(LocalCheck {
                            p,
                            holds: false,
                            witness: Some(witness_from_ranks(&ranks, k, a, b)),
                        });
                    }
                }
            }
        }
    }
    Ok(LocalCheck {
        p,
        holds: true,
        witness: None,
    })
}

/// Direct transcription of the definition: every pair of points within
/// distance `< p` off coordinate `k` is compared. Quadratic in `2^n`; kept
/// as the reference the section scan is tested against.
pub fn is_p_locally_monotone_by_definition(f: &FunctionTable, p: usize) -> Result<LocalCheck> {
    check_p(f, p)?;
    let n = f.arity();
    for k in 1..=n {
        let d = delta(f, k)?;
        let bit = 1u32 << (k - 1);
        let points: Vec<u32> = (0..1u32 << n).filter(|x| x & bit == 0).collect();
        for &x in &points {
            for &y in &points {
                let dist = ((x ^ y) & !bit).count_ones() as usize;
                if dist >= p {
                    continue;
                }
                let (dx, dy) = (d.value(x), d.value(y));
                if (dx * dy).sign().is_lt() {
                    let (neg, pos) = if dx.sign().is_lt() { (x, y) } else { (y, x) };
                    return Ok(LocalCheck {
                        p,
                        holds: false,
                        witness: Some(LocalWitness {
                            k,
                            x: Point::new_unchecked(n, neg),
                            y: Point::new_unchecked(n, pos),
                            delta_x: d.value(neg).clone(),
                            delta_y: d.value(pos).clone(),
                        }),
                    });
                }
            }
        }
    }
    Ok(LocalCheck {
        p,
        holds: true,
        witness: None,
    })
}

/// Largest `p` for which `f` is p-locally monotone (`n` when `f` is
/// monotone; 0 for constants of arity 0).
///
/// For each `k`, a breadth-first search from every point where `Δ_k f < 0`
/// finds the nearest point where `Δ_k f > 0`; `f` fails to be p-locally
/// monotone exactly when some such distance is below `p`, so the degree is
/// the smallest distance found, capped at `n`.
pub fn local_monotonicity_degree(f: &FunctionTable) -> LocalMonotonicityReport {
    let n = f.arity();
    let ranks = f.ranks();
    let r = &ranks.ranks;
    let size = 1usize << n;
    let mut best: Option<(u32, usize, u32, u32)> = None;
    let mut dist = vec![u32::MAX; size];
    let mut source = vec![0u32; size];
    let mut queue = VecDeque::new();
    for k in 1..=n {
        let bit = 1u32 << (k - 1);
        let sign = |x: u32| r[(x | bit) as usize].cmp(&r[x as usize]);
        dist.fill(u32::MAX);
        queue.clear();
        for x in (0..size as u32).filter(|x| x & bit == 0) {
            if sign(x) == Ordering::Less {
                dist[x as usize] = 0;
                source[x as usize] = x;
                queue.push_back(x);
            }
        }
        let mut found = None;
        'bfs: while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            if let Some((limit, ..)) = best {
                if d + 1 >= limit {
                    break;
                }
            }
            for j in 0..n {
                let step = 1u32 << j;
                if step == bit {
                    continue;
                }
                let y = x ^ step;
                if dist[y as usize] != u32::MAX {
                    continue;
                }
                dist[y as usize] = d + 1;
                source[y as usize] = source[x as usize];
                if sign(y) == Ordering::Greater {
                    found = Some((d + 1, source[y as usize], y));
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        if let Some((d, neg, pos)) = found {
            if best.is_none_or(|(limit, ..)| d < limit) {
                best = Some((d, k, neg, pos));
            }
        }
    }
    match best {
        Some((d, k, neg, pos)) => LocalMonotonicityReport {
            degree: d as usize,
            monotone: false,
            witness: Some(witness_from_ranks(&ranks, k, neg, pos)),
        },
        None => LocalMonotonicityReport {
            degree: n,
            monotone: true,
            witness: None,
        },
    }
}

/// A pair breaking `|Δ_k f(x) - Δ_k f(y)| <= Σ_{i≠k} |x_i - y_i|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipschitzWitness {
    pub k: usize,
    pub x: Point,
    pub y: Point,
    pub delta_x: Rational,
    pub delta_y: Rational,
}

/// For Boolean functions, a violation of the 1-Lipschitz condition on
/// `Δ_k f`; `None` iff `f` is 2-locally monotone.
pub fn lipschitz_violation(f: &FunctionTable) -> Result<Option<LipschitzWitness>> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let n = f.arity();
    for k in 1..=n {
        let d = delta(f, k)?;
        let bit = 1u32 << (k - 1);
        for x in (0..1u32 << n).filter(|x| x & bit == 0) {
            // |Δx - Δy| <= 2, so only neighbours (distance 1) can violate
            for j in (0..n).filter(|&j| 1u32 << j != bit) {
                let y = x ^ (1 << j);
                if (d.value(x) - d.value(y)).abs() > Rational::one() {
                    return Ok(Some(LipschitzWitness {
                        k,
                        x: Point::new_unchecked(n, x),
                        y: Point::new_unchecked(n, y),
                        delta_x: d.value(x).clone(),
                        delta_y: d.value(y).clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenKind {
    /// The section is `x ⊕ y`.
    Xor,
    /// The section is `x ⊕ y ⊕ 1`.
    Xnor,
    /// `a_1 (a_1 + a_12) < 0` or `a_2 (a_2 + a_12) < 0`.
    CoefficientViolation,
}

/// A binary section `g(u, v) = f(a_{jk}^{uv})` that rules out 2-local
/// monotonicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenSection {
    pub j: usize,
    pub k: usize,
    /// Assignment of the other variables; bits `j` and `k` are zero.
    pub base: Point,
    pub kind: ForbiddenKind,
    pub coefficients: BinaryCoefficients,
}

/// Visits every binary section `(j < k, base)` in index order.
pub(crate) fn for_each_binary_section(f: &FunctionTable, mut visit: impl FnMut(usize, usize, u32, [&Rational; 4])) {
    let n = f.arity();
    for k in 2..=n {
        for j in 1..k {
            let (bj, bk) = (1u32 << (j - 1), 1u32 << (k - 1));
            let rest = full_mask(n) & !(bj | bk);
            for t in 0..1u32 << (n - 2) {
                let a = deposit(t, rest);
                visit(
                    j,
                    k,
                    a,
                    [f.value(a), f.value(a | bj), f.value(a | bk), f.value(a | bj | bk)],
                );
            }
        }
    }
}

/// Binary sections witnessing failure of 2-local monotonicity. Boolean
/// functions are matched against XOR/XNOR; other functions are checked
/// through the coefficients of each section. Empty iff `f` is 2-locally
/// monotone.
pub fn forbidden_binary_sections(f: &FunctionTable) -> Vec<ForbiddenSection> {
    let boolean = f.is_boolean();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut out = Vec::new();
    for_each_binary_section(f, |j, k, a, [g00, g10, g01, g11]| {
        let coefficients = BinaryCoefficients::from_values(g00, g10, g01, g11);
        let kind = if boolean {
            if (g00, g10, g01, g11) == (&zero, &one, &one, &zero) {
                Some(ForbiddenKind::Xor)
            } else if (g00, g10, g01, g11) == (&one, &zero, &zero, &one) {
                Some(ForbiddenKind::Xnor)
            } else {
                None
            }
        } else if !coefficients.is_monotone() {
            Some(ForbiddenKind::CoefficientViolation)
        } else {
            None
        };
        if let Some(kind) = kind {
            out.push(ForbiddenSection {
                j,
                k,
                base: Point::new_unchecked(f.arity(), a),
                kind,
                coefficients,
            });
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{boolean_from_code, conjunction, parity, prefix_staircase};
    use crate::point::SubsetMask;
    use crate::polyform::MultilinearPolynomial;

    fn example() -> FunctionTable {
        MultilinearPolynomial::parse("x1 - x1*x2 + x2*x3").unwrap().to_table()
    }

    fn pair_example() -> FunctionTable {
        FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap()
    }

    #[test]
    fn variable_classification() {
        use VariableMonotonicity::*;
        assert_eq!(variable_monotonicity(&example(), 2).unwrap(), Neither);
        assert_eq!(variable_monotonicity(&conjunction(2), 1).unwrap(), Isotone);
        assert_eq!(variable_monotonicity(&pair_example(), 1).unwrap(), Neither);
        let neg = FunctionTable::from_integers(1, &[1, 0]).unwrap();
        assert_eq!(variable_monotonicity(&neg, 1).unwrap(), Antitone);
        let c = FunctionTable::from_integers(2, &[3, 3, 3, 3]).unwrap();
        assert_eq!(variable_monotonicity(&c, 2).unwrap(), Constant);
        assert!(variable_monotonicity(&c, 3).is_err());
    }

    #[test]
    fn constant_iff_inessential() {
        for code in 0..256u64 {
            let f = boolean_from_code(3, code);
            let essential = f.essential_variables();
            for k in 1..=3 {
                let constant = variable_monotonicity(&f, k).unwrap() == VariableMonotonicity::Constant;
                assert_eq!(constant, !essential.contains(k));
            }
        }
    }

    #[test]
    fn monotone_examples() {
        assert!(!is_monotone(&parity(2)));
        assert!(is_monotone(
            &FunctionTable::constant(3, Rational::from_integer(4)).unwrap()
        ));
        assert!(!is_monotone(&prefix_staircase(3)));
        assert!(is_monotone(&FunctionTable::from_integers(0, &[7]).unwrap()));
    }

    #[test]
    fn local_monotonicity_examples() {
        assert!(!is_p_locally_monotone(&parity(2), 2).unwrap().holds);
        let f = example();
        assert!(is_p_locally_monotone(&f, 2).unwrap().holds);
        assert!(!is_p_locally_monotone(&f, 3).unwrap().holds);
        assert!(is_p_locally_monotone(&f, 1).unwrap().holds);
        assert!(is_p_locally_monotone(&f, 0).is_err());
        assert!(is_p_locally_monotone(&f, 4).is_err());
    }

    #[test]
    fn staircase_witness_matches_hand_computation() {
        for n in 3..=8 {
            let f = prefix_staircase(n);
            let check = is_p_locally_monotone(&f, 3).unwrap();
            assert!(!check.holds);
            let w = check.witness.unwrap();
            assert_eq!(w.k, 2);
            assert_eq!(w.x, Point::zero(n).unwrap());
            let mut y = vec![0u8; n];
            y[0] = 1;
            y[2] = 1;
            assert_eq!(w.y, Point::from_coordinates(&y).unwrap());
            assert_eq!(w.delta_x, Rational::from_integer(-1));
            assert_eq!(w.delta_y, Rational::from_integer(1));
            assert!(w.verify(&f, 3));
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(local_monotonicity_degree(&conjunction(4)).degree, 4);
        let r = local_monotonicity_degree(&example());
        assert_eq!(r.degree, 2);
        assert!(r.witness.unwrap().verify(&example(), 3));
        for n in 2..=7 {
            let report = local_monotonicity_degree(&parity(n));
            assert_eq!(report.degree, 1);
            assert!(report.witness.unwrap().verify(&parity(n), 2));
        }
        let zero_arity = local_monotonicity_degree(&FunctionTable::from_integers(0, &[1]).unwrap());
        assert_eq!((zero_arity.degree, zero_arity.monotone), (0, true));
    }

    #[test]
    fn degree_agrees_with_upward_scan_on_boolean_arity_four() {
        for code in (0..65536u64).step_by(7) {
            let f = boolean_from_code(4, code);
            let scan = (1..=4)
                .take_while(|&p| is_p_locally_monotone(&f, p).unwrap().holds)
                .last()
                .unwrap();
            let report = local_monotonicity_degree(&f);
            assert_eq!(report.degree, scan, "code {code}");
            assert_eq!(report.witness.is_some(), scan < 4);
            if let Some(w) = report.witness {
                assert!(w.verify(&f, scan + 1));
            }
        }
    }

    #[test]
    fn lipschitz_examples() {
        assert!(lipschitz_violation(&parity(2)).unwrap().is_some());
        assert!(lipschitz_violation(&conjunction(2)).unwrap().is_none());
        for n in 2..=7 {
            assert!(lipschitz_violation(&prefix_staircase(n)).unwrap().is_none());
        }
        assert_eq!(lipschitz_violation(&pair_example()), Err(Error::NotBoolean));
    }

    #[test]
    fn forbidden_sections_examples() {
        // x1 xor x2 with a dummy third variable
        let f = FunctionTable::from_fn(3, |b| Rational::from_integer(((b ^ (b >> 1)) & 1) as i64)).unwrap();
        let found = forbidden_binary_sections(&f);
        let at_zero: Vec<_> = found.iter().filter(|s| s.base.bits() == 0).collect();
        assert_eq!(at_zero.len(), 1);
        assert_eq!(
            (at_zero[0].j, at_zero[0].k, at_zero[0].kind),
            (1, 2, ForbiddenKind::Xor)
        );
        // base x3 = 1 gives the same XOR section
        assert_eq!(found.len(), 2);

        let g = forbidden_binary_sections(&pair_example());
        assert_eq!(g.len(), 1);
        let c = &g[0].coefficients;
        assert_eq!(g[0].kind, ForbiddenKind::CoefficientViolation);
        assert_eq!((&c.a1 * &(&c.a1 + &c.a12)), Rational::from_integer(-1));

        assert!(forbidden_binary_sections(&conjunction(3)).is_empty());
        let xnor = forbidden_binary_sections(&FunctionTable::from_integers(2, &[1, 0, 0, 1]).unwrap());
        assert_eq!(xnor[0].kind, ForbiddenKind::Xnor);
    }

    #[test]
    fn negating_flips_isotone_to_antitone() {
        let f = conjunction(3);
        let g = f.affine_transform(&Rational::from_integer(-1), &Rational::zero());
        assert!(variable_monotonicities(&g)
            .iter()
            .all(|m| *m == VariableMonotonicity::Antitone));
        let h = f.negate_variables(&SubsetMask::from_indices(3, &[2]).unwrap()).unwrap();
        assert_eq!(variable_monotonicity(&h, 2).unwrap(), VariableMonotonicity::Antitone);
    }
}

//! Symmetric functions as value sequences `α_0, …, α_n` with `f(x) = α_|x|`.
//!
//! Sequence derivatives drop the inessential variable: the meet sequence of
//! an arity-`n` function has `n` entries and describes an arity `n - 1`
//! function.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::MAX_ARITY;
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct SymmetricSequence {
    alpha: Vec<Rational>,
}

impl TryFrom<Vec<Rational>> for SymmetricSequence {
    type Error = Error;
    fn try_from(alpha: Vec<Rational>) -> Result<Self> {
        SymmetricSequence::new(alpha)
    }
}

impl From<SymmetricSequence> for Vec<Rational> {
    fn from(s: SymmetricSequence) -> Self {
        s.alpha
    }
}

impl SymmetricSequence {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidArgument("a sequence needs at least one value".into()));
        }
        if alpha.len() - 1 > MAX_ARITY {
            return Err(Error::ArityTooLarge(alpha.len() - 1));
        }
        Ok(SymmetricSequence { alpha })
    }

    /// Panics on an empty slice or one longer than `MAX_ARITY + 1`.
    pub fn from_integers(values: &[i64]) -> Self {
        SymmetricSequence::new(values.iter().map(|&v| Rational::from_integer(v)).collect())
            .expect("valid sequence length")
    }

    pub fn arity(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn to_function(&self) -> FunctionTable {
        let n = self.arity();
        FunctionTable::from_parts_unchecked(
            n,
            (0..1u32 << n)
                .map(|b| self.alpha[b.count_ones() as usize].clone())
                .collect(),
        )
    }

    fn adjacent(&self, pick: fn(&Rational, &Rational) -> bool) -> Result<SymmetricSequence> {
        if self.arity() == 0 {
            return Err(Error::InvalidArgument("derivative of a sequence of arity 0".into()));
        }
        let alpha = self
            .alpha
            .windows(2)
            .map(|w| if pick(&w[0], &w[1]) { w[0].clone() } else { w[1].clone() })
            .collect();
        Ok(SymmetricSequence { alpha })
    }

    /// `α_0 ∧ α_1, …, α_{n-1} ∧ α_n`.
    pub fn meet(&self) -> Result<SymmetricSequence> {
        self.adjacent(|a, b| a <= b)
    }

    /// `α_0 ∨ α_1, …, α_{n-1} ∨ α_n`.
    pub fn join(&self) -> Result<SymmetricSequence> {
        self.adjacent(|a, b| a >= b)
    }

    /// Largest `p` such that every window of `p + 1` consecutive entries is
    /// monotone, capped at `n`.
    ///
    /// A window fails exactly when it contains two nonzero consecutive
    /// differences of opposite sign, so the answer is the smallest gap
    /// between successive nonzero differences whose signs alternate.
    pub fn local_monotonicity_degree(&self) -> usize {
        let n = self.arity();
        let mut degree = n;
        let mut last: Option<(usize, std::cmp::Ordering)> = None;
        for (i, w) in self.alpha.windows(2).enumerate() {
            let s = (&w[1] - &w[0]).sign();
            if s.is_eq() {
                continue;
            }
            if let Some((j, t)) = last {
                if t != s {
                    degree = degree.min(i - j);
                }
            }
            last = Some((i, s));
        }
        degree
    }

    pub fn is_monotone(&self) -> bool {
        self.local_monotonicity_degree() == self.arity()
    }
}

impl fmt::Display for SymmetricSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for SymmetricSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricSequence({self})")
    }
}

/// Comma separated values, e.g. `0,0,1,1/2`.
impl FromStr for SymmetricSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut alpha = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            let v = Rational::parse_literal(trimmed).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(offset + lead, message),
                other => other,
            })?;
            alpha.push(v);
            offset += part.len() + 1;
        }
        SymmetricSequence::new(alpha)
    }
}

/// The sequence of `f` if `f(x)` depends only on `|x|`.
pub fn detect_symmetric(f: &FunctionTable) -> Option<SymmetricSequence> {
    let n = f.arity();
    let mut alpha: Vec<Option<&Rational>> = vec![None; n + 1];
    for (b, v) in f.values().iter().enumerate() {
        let slot = &mut alpha[b.count_ones() as usize];
        match slot {
            None => *slot = Some(v),
            Some(w) if *w != v => return None,
            _ => {}
        }
    }
    Some(SymmetricSequence {
        alpha: alpha
            .into_iter()
            .map(|v| v.expect("every weight occurs").clone())
            .collect(),
    })
}

/// `0, 0, 1^p, 0^p, 1, 1`: `2p + 4` entries, so arity `2p + 3`.
///
/// Exactly p-locally monotone, with meet sequence `0, 0, 1^(p-1), 0^(p+1), 1`
/// and join sequence `0, 1^(p+1), 0^(p-1), 1, 1`, both exactly
/// (p-1)-locally monotone.
pub fn staircase(p: usize) -> Result<SymmetricSequence> {
    let max = (MAX_ARITY - 3) / 2;
    if !(2..=max).contains(&p) {
        return Err(Error::ParameterOutOfRange { p, min: 2, max });
    }
    let mut values = vec![0, 0];
    values.extend(std::iter::repeat_n(1, p));
    values.extend(std::iter::repeat_n(0, p));
    values.extend([1, 1]);
    Ok(SymmetricSequence::from_integers(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{join_derivative, meet_derivative};
    use crate::families::parity;
    use crate::monotonicity::local_monotonicity_degree;
    use crate::polyform::MultilinearPolynomial;

    fn ones(k: usize, v: i64) -> Vec<i64> {
        vec![v; k]
    }

    #[test]
    fn detection() {
        assert_eq!(
            detect_symmetric(&parity(3)).unwrap(),
            SymmetricSequence::from_integers(&[0, 1, 0, 1])
        );
        let f = MultilinearPolynomial::parse("x1 - x1*x2 + x2*x3").unwrap().to_table();
        assert!(detect_symmetric(&f).is_none());
        let c = FunctionTable::constant(3, Rational::from_integer(7)).unwrap();
        let s = detect_symmetric(&c).unwrap();
        assert_eq!(s, SymmetricSequence::from_integers(&[7, 7, 7, 7]));
        assert_eq!(s.to_function(), c);
    }

    #[test]
    fn staircase_derivative_sequences() {
        for p in 2..=6 {
            let s = staircase(p).unwrap();
            assert_eq!(s.arity(), 2 * p + 3);
            assert_eq!(s.local_monotonicity_degree(), p);

            let mut meet = vec![0, 0];
            meet.extend(ones(p - 1, 1));
            meet.extend(ones(p + 1, 0));
            meet.push(1);
            assert_eq!(s.meet().unwrap(), SymmetricSequence::from_integers(&meet));

            let mut join = vec![0];
            join.extend(ones(p + 1, 1));
            join.extend(ones(p - 1, 0));
            join.extend([1, 1]);
            assert_eq!(s.join().unwrap(), SymmetricSequence::from_integers(&join));

            assert_eq!(s.meet().unwrap().local_monotonicity_degree(), p - 1);
            assert_eq!(s.join().unwrap().local_monotonicity_degree(), p - 1);
        }
        assert!(staircase(1).is_err());
        assert!(staircase(9).is_err());
    }

    #[test]
    fn padded_staircases_break_the_meet_sequence() {
        // the two length-(2p+5) readings of the staircase
        for p in 2..=5 {
            let mut lead = vec![0, 0, 0];
            lead.extend(ones(p, 1));
            lead.extend(ones(p, 0));
            lead.extend([1, 1]);
            let mut trail = vec![0, 0];
            trail.extend(ones(p, 1));
            trail.extend(ones(p, 0));
            trail.extend([1, 1, 1]);
            let mut meet = vec![0, 0];
            meet.extend(ones(p - 1, 1));
            meet.extend(ones(p + 1, 0));
            meet.push(1);
            let expected = SymmetricSequence::from_integers(&meet);
            for v in [lead, trail] {
                let s = SymmetricSequence::from_integers(&v);
                assert_ne!(s.meet().unwrap(), expected);
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(
            SymmetricSequence::from_integers(&[0, 1, 0]).local_monotonicity_degree(),
            1
        );
        assert_eq!(
            SymmetricSequence::from_integers(&[0, 1, 1, 3]).local_monotonicity_degree(),
            3
        );
        assert_eq!(SymmetricSequence::from_integers(&[5]).local_monotonicity_degree(), 0);
        let c = SymmetricSequence::from_integers(&[2, 2, 2]);
        assert_eq!(c.meet().unwrap(), SymmetricSequence::from_integers(&[2, 2]));
        assert!(SymmetricSequence::from_integers(&[1]).meet().is_err());
    }

    #[test]
    fn parsing() {
        let s: SymmetricSequence = "0, 1/2 ,1".parse().unwrap();
        assert_eq!(s.to_string(), "0,1/2,1");
        match "0,1,x".parse::<SymmetricSequence>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!("".parse::<SymmetricSequence>().is_err());
    }

    #[test]
    fn sequence_calculus_matches_tables() {
        let s = SymmetricSequence::from_integers(&[3, -1, 4, 1, 5]);
        let f = s.to_function();
        for k in 1..=4 {
            let m = meet_derivative(&f, k).unwrap().drop_variable(k).unwrap();
            let j = join_derivative(&f, k).unwrap().drop_variable(k).unwrap();
            assert_eq!(m, s.meet().unwrap().to_function());
            assert_eq!(j, s.join().unwrap().to_function());
        }
        assert_eq!(s.local_monotonicity_degree(), local_monotonicity_degree(&f).degree);
    }
}

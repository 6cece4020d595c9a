//! Writing a monotone function as a lattice polynomial composed with unary
//! maps `φ_i: {0,1} → {a,b}`.
//!
//! With `a = min f`, `b = max f` and each `φ_i` increasing or decreasing
//! according to the direction of `f` in `x_i`, the function
//! `p = f ∘ (φ_1^{-1}, …, φ_n^{-1})` on `{a,b}^n` is isotone. It is extended
//! by the join-of-meets form `p'(y) = max_S min(c_S, min_{i∈S} y_i)` with
//! `c_S = p(b on S, a elsewhere)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotonicity::{is_monotone, variable_monotonicities, VariableMonotonicity};
use crate::point::{Point, SubsetMask};
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `φ(0) = a`, `φ(1) = b`.
    Increasing,
    /// `φ(0) = b`, `φ(1) = a`.
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoPolynomialDecomposition {
    arity: usize,
    min: Rational,
    max: Rational,
    orientations: Vec<Orientation>,
    coefficients: Vec<Rational>,
}

impl PseudoPolynomialDecomposition {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn min(&self) -> &Rational {
        &self.min
    }

    pub fn max(&self) -> &Rational {
        &self.max
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    /// `c_S`, indexed by the bit mask of `S`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, s: &SubsetMask) -> &Rational {
        &self.coefficients[s.members() as usize]
    }

    /// `φ_i(bit)`, 1-based `i`.
    pub fn phi(&self, i: usize, bit: u8) -> &Rational {
        let high = match self.orientations[i - 1] {
            Orientation::Increasing => bit == 1,
            Orientation::Decreasing => bit == 0,
        };
        if high {
            &self.max
        } else {
            &self.min
        }
    }

    /// `p'(y)` for any `y`, not only corners of `[a,b]^n`.
    pub fn evaluate_lattice_polynomial(&self, y: &[Rational]) -> Result<Rational> {
        if y.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: y.len(),
            });
        }
        let best = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, c)| {
                (0..self.arity)
                    .filter(|i| s & (1 << i) != 0)
                    .map(|i| &y[i])
                    .fold(c, |acc, v| Rational::min_of(acc, v))
            })
            .max()
            .expect("at least the empty term");
        Ok(best.clone())
    }

    /// `p'(φ_1(x_1), …, φ_n(x_n))`.
    pub fn evaluate(&self, x: &Point) -> Result<Rational> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: x.arity(),
            });
        }
        let y: Vec<Rational> = x
            .coordinates()
            .iter()
            .enumerate()
            .map(|(i, &b)| self.phi(i + 1, b).clone())
            .collect();
        self.evaluate_lattice_polynomial(&y)
    }

    pub fn summary(&self) -> DecompositionSummary {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(s, c)| (SubsetMask::new_unchecked(self.arity, s as u32).to_string(), c.clone()))
            .collect();
        DecompositionSummary {
            min: self.min.clone(),
            max: self.max.clone(),
            orientations: self.orientations.clone(),
            coefficients,
        }
    }
}

/// Serializable view: coefficients keyed by the subset, e.g. `"{1,2}"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub min: Rational,
    pub max: Rational,
    pub orientations: Vec<Orientation>,
    pub coefficients: BTreeMap<String, Rational>,
}

/// Present exactly when `f` is monotone. The result is checked on every
/// corner before it is returned.
pub fn decompose(f: &FunctionTable) -> Option<PseudoPolynomialDecomposition> {
    if !is_monotone(f) {
        return None;
    }
    let n = f.arity();
    let orientations: Vec<Orientation> = variable_monotonicities(f)
        .into_iter()
        .map(|m| match m {
            VariableMonotonicity::Antitone => Orientation::Decreasing,
            _ => Orientation::Increasing,
        })
        .collect();
    let flip: u32 = orientations
        .iter()
        .enumerate()
        .filter(|(_, o)| **o == Orientation::Decreasing)
        .map(|(i, _)| 1u32 << i)
        .sum();
    // c_S = f at the point sent to (b on S, a elsewhere)
    let coefficients: Vec<Rational> = (0..1u32 << n).map(|s| f.value(s ^ flip).clone()).collect();
    let d = PseudoPolynomialDecomposition {
        arity: n,
        min: f.min_value().clone(),
        max: f.max_value().clone(),
        orientations,
        coefficients,
    };

    // On the corner (b on T, a elsewhere) the join-of-meets form equals
    // max_{S ⊆ T} c_S; it must give back c_T.
    let mut upper = d.coefficients.clone();
    for i in 0..n {
        let bit = 1usize << i;
        for t in 0..upper.len() {
            if t & bit != 0 && upper[t ^ bit] > upper[t] {
                upper[t] = upper[t ^ bit].clone();
            }
        }
    }
    if upper != d.coefficients {
        return None;
    }
    Some(d)
}

//! Discrete and lattice partial derivatives on truth tables.
//!
//! All derivatives keep the arity of their input; the differentiated
//! variable becomes inessential.
//!
//! Operator sequences compose right to left: `[v2, ^1]` means `v2(^1 f)`,
//! i.e. the last element is applied first. Permutability and game outcomes
//! depend on this direction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::check_index;
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    /// `Δ_k f(x) = f(x_k^1) - f(x_k^0)`
    Delta,
    /// `∧_k f(x) = min(f(x_k^0), f(x_k^1))`
    Meet,
    /// `∨_k f(x) = max(f(x_k^0), f(x_k^1))`
    Join,
}

/// One operator applied at a 1-based variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivativeOp {
    pub kind: OpKind,
    pub index: usize,
}

impl DerivativeOp {
    pub fn meet(index: usize) -> Self {
        DerivativeOp {
            kind: OpKind::Meet,
            index,
        }
    }

    pub fn join(index: usize) -> Self {
        DerivativeOp {
            kind: OpKind::Join,
            index,
        }
    }

    pub fn delta(index: usize) -> Self {
        DerivativeOp {
            kind: OpKind::Delta,
            index,
        }
    }

    pub fn apply(&self, f: &FunctionTable) -> Result<FunctionTable> {
        match self.kind {
            OpKind::Delta => delta(f, self.index),
            OpKind::Meet => meet_derivative(f, self.index),
            OpKind::Join => join_derivative(f, self.index),
        }
    }
}

impl fmt::Display for DerivativeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            OpKind::Delta => 'd',
            OpKind::Meet => '^',
            OpKind::Join => 'v',
        };
        write!(f, "{sym}{}", self.index)
    }
}

/// Operators written left to right, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSequence(pub Vec<DerivativeOp>);

impl OpSequence {
    pub fn ops(&self) -> &[DerivativeOp] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Parses tokens `^k` (meet), `vk` (join) and `dk` (delta), separated by
/// whitespace or commas: `"v2 ^1"`.
impl FromStr for OpSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ops = Vec::new();
        let mut offset = 0;
        for piece in s.split_inclusive(|c: char| c.is_whitespace() || c == ',') {
            let tok = piece.trim_end_matches(|c: char| c.is_whitespace() || c == ',');
            if !tok.is_empty() {
                let kind = match tok.chars().next() {
                    Some('^') => OpKind::Meet,
                    Some('v') | Some('V') => OpKind::Join,
                    Some('d') | Some('D') => OpKind::Delta,
                    _ => return Err(Error::parse(offset, format!("unknown operator {tok:?}"))),
                };
                let index = tok[1..]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(offset + 1, format!("bad index in {tok:?}")))?;
                ops.push(DerivativeOp { kind, index });
            }
            offset += piece.len();
        }
        Ok(OpSequence(ops))
    }
}

fn edge_map(f: &FunctionTable, k: usize, combine: impl Fn(&Rational, &Rational) -> Rational) -> Result<FunctionTable> {
    check_index(k, f.arity())?;
    let bit = 1usize << (k - 1);
    let v = f.values();
    let values = (0..v.len()).map(|x| combine(&v[x & !bit], &v[x | bit])).collect();
    Ok(FunctionTable::from_parts_unchecked(f.arity(), values))
}

/// `Δ_k f`.
pub fn delta(f: &FunctionTable, k: usize) -> Result<FunctionTable> {
    edge_map(f, k, |lo, hi| hi - lo)
}

/// `∧_k f`.
pub fn meet_derivative(f: &FunctionTable, k: usize) -> Result<FunctionTable> {
    edge_map(f, k, |lo, hi| std::cmp::min(lo, hi).clone())
}

/// `∨_k f`.
pub fn join_derivative(f: &FunctionTable, k: usize) -> Result<FunctionTable> {
    edge_map(f, k, |lo, hi| std::cmp::max(lo, hi).clone())
}

/// `Δ_jk f = Δ_j Δ_k f`, defined for `j != k`.
pub fn delta2(f: &FunctionTable, j: usize, k: usize) -> Result<FunctionTable> {
    check_index(j, f.arity())?;
    check_index(k, f.arity())?;
    if j == k {
        return Err(Error::InvalidArgument(format!(
            "second difference needs distinct indices, got {j} twice"
        )));
    }
    delta(&delta(f, k)?, j)
}

/// `O_1 ⋯ O_p f`, applying the last operator first.
pub fn apply_sequence(f: &FunctionTable, ops: &OpSequence) -> Result<FunctionTable> {
    for op in ops.ops() {
        check_index(op.index, f.arity())?;
    }
    let mut g = f.clone();
    for op in ops.ops().iter().rev() {
        g = op.apply(&g)?;
    }
    Ok(g)
}

/// In-place lattice derivative on a rank table: `bit` is the 0-based
/// variable position.
pub(crate) fn lattice_pass(values: &mut [u32], bit: usize, kind: OpKind) {
    let step = 1usize << bit;
    for x in 0..values.len() {
        if x & step == 0 {
            let (lo, hi) = (values[x], values[x | step]);
            let v = match kind {
                OpKind::Meet => lo.min(hi),
                OpKind::Join => lo.max(hi),
                OpKind::Delta => unreachable!("delta is not a lattice operation"),
            };
            values[x] = v;
            values[x | step] = v;
        }
    }
}

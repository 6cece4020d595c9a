//! Named function families used in examples, tests and the sweep.

use crate::rational::Rational;
use crate::table::FunctionTable;

fn bit(v: bool) -> Rational {
    if v {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// The Boolean function that is 1 exactly on the points `(1,…,1,0,…,0)`
/// (a block of ones followed by zeros), including all-zero and all-one.
///
/// It is exactly 2-locally monotone for `n >= 3`, yet its lattice
/// derivatives are fully permutable.
pub fn prefix_staircase(n: usize) -> FunctionTable {
    FunctionTable::from_fn(n, |b| bit(b & (b + 1) == 0)).expect("arity within range")
}

/// `x_1 ⊕ … ⊕ x_n`.
pub fn parity(n: usize) -> FunctionTable {
    FunctionTable::from_fn(n, |b| bit(b.count_ones() % 2 == 1)).expect("arity within range")
}

/// `u` on points of even weight, `v` on odd weight.
pub fn parity_valued(n: usize, u: &Rational, v: &Rational) -> FunctionTable {
    FunctionTable::from_fn(n, |b| if b.count_ones() % 2 == 0 { u.clone() } else { v.clone() })
        .expect("arity within range")
}

/// `x_1 ∧ … ∧ x_n`.
pub fn conjunction(n: usize) -> FunctionTable {
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    FunctionTable::from_fn(n, |b| bit(b == all)).expect("arity within range")
}

/// Boolean function of arity `n` whose truth table is the low `2^n` bits of
/// `code`.
pub fn boolean_from_code(n: usize, code: u64) -> FunctionTable {
    FunctionTable::from_fn(n, |b| bit((code >> b) & 1 == 1)).expect("arity within range")
}

//! Dense truth tables of pseudo-Boolean functions `f: B^n -> Q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{check_arity, check_index, deposit, full_mask, subsets_of_size, Point, SubsetMask};
use crate::rational::Rational;

/// Value table of a pseudo-Boolean function, indexed by [`Point::bits`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FunctionTable {
    arity: usize,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    arity: usize,
    values: Vec<Rational>,
}

impl TryFrom<TableRepr> for FunctionTable {
    type Error = Error;
    fn try_from(repr: TableRepr) -> Result<Self> {
        FunctionTable::new(repr.arity, repr.values)
    }
}

impl From<FunctionTable> for TableRepr {
    fn from(table: FunctionTable) -> Self {
        TableRepr {
            arity: table.arity,
            values: table.values,
        }
    }
}

/// One `S`-section produced by [`FunctionTable::sections_of_arity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub subset: SubsetMask,
    /// Assignment of the variables outside `subset`; bits inside it are zero.
    pub base: Point,
    pub table: FunctionTable,
}

impl FunctionTable {
    pub fn new(arity: usize, values: Vec<Rational>) -> Result<Self> {
        check_arity(arity)?;
        let expected = 1usize << arity;
        if values.len() != expected {
            return Err(Error::TableLength {
                arity,
                expected,
                found: values.len(),
            });
        }
        Ok(FunctionTable { arity, values })
    }

    /// Infers the arity from the number of values, which must be a power of two.
    pub fn from_values(values: Vec<Rational>) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "table length {len} is not a power of two"
            )));
        }
        FunctionTable::new(len.trailing_zeros() as usize, values)
    }

    pub fn from_integers(arity: usize, values: &[i64]) -> Result<Self> {
        FunctionTable::new(arity, values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn constant(arity: usize, value: Rational) -> Result<Self> {
        check_arity(arity)?;
        Ok(FunctionTable {
            arity,
            values: vec![value; 1 << arity],
        })
    }

    /// Tabulates `f(bits)` over every point.
    pub fn from_fn(arity: usize, mut f: impl FnMut(u32) -> Rational) -> Result<Self> {
        check_arity(arity)?;
        Ok(FunctionTable {
            arity,
            values: (0..1u32 << arity).map(&mut f).collect(),
        })
    }

    pub(crate) fn from_parts_unchecked(arity: usize, values: Vec<Rational>) -> Self {
        debug_assert_eq!(values.len(), 1 << arity);
        FunctionTable { arity, values }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// Value at the point whose bit mask is `bits`. Panics if out of range.
    pub fn value(&self, bits: u32) -> &Rational {
        &self.values[bits as usize]
    }

    pub fn evaluate(&self, x: &Point) -> Result<Rational> {
        if x.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: x.arity(),
            });
        }
        Ok(self.values[x.bits() as usize].clone())
    }

    fn check_subset(&self, s: &SubsetMask) -> Result<()> {
        if s.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: s.arity(),
            });
        }
        Ok(())
    }

    /// The `S`-section `g(x) = f(a_S^x)`. Variable `i` of `g` is the `i`-th
    /// smallest member of `S`; the coordinates of `a` inside `S` are ignored.
    pub fn section(&self, s: &SubsetMask, a: &Point) -> Result<FunctionTable> {
        self.check_subset(s)?;
        if a.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: a.arity(),
            });
        }
        let fixed = a.bits() & !s.members();
        let width = s.len();
        Ok(FunctionTable {
            arity: width,
            values: (0..1u32 << width)
                .map(|x| self.values[(fixed | deposit(x, s.members())) as usize].clone())
                .collect(),
        })
    }

    /// Every `p`-ary section: subsets in colexicographic order, then base
    /// points (assignments of the complement) in increasing mask order.
    pub fn sections_of_arity(&self, p: usize) -> Result<impl Iterator<Item = Section> + '_> {
        if p == 0 || p > self.arity {
            return Err(Error::ParameterOutOfRange {
                p,
                min: 1,
                max: self.arity,
            });
        }
        let n = self.arity;
        Ok(subsets_of_size(n, p).flat_map(move |members| {
            let subset = SubsetMask::new_unchecked(n, members);
            let rest = !members & full_mask(n);
            (0..1u32 << (n - p)).map(move |t| {
                let base = Point::new_unchecked(n, deposit(t, rest));
                let table = self.section(&subset, &base).expect("arities match");
                Section { subset, base, table }
            })
        }))
    }

    /// Drops variable `k`, fixing it to 0; meant for variables that are
    /// inessential, where the choice of constant does not matter.
    pub fn drop_variable(&self, k: usize) -> Result<FunctionTable> {
        check_index(k, self.arity)?;
        let keep = full_mask(self.arity) & !(1 << (k - 1));
        self.section(
            &SubsetMask::new_unchecked(self.arity, keep),
            &Point::new_unchecked(self.arity, 0),
        )
    }

    /// `g(x) = f(x xor 1_S)`.
    pub fn negate_variables(&self, s: &SubsetMask) -> Result<FunctionTable> {
        self.check_subset(s)?;
        let flip = s.members() as usize;
        Ok(FunctionTable {
            arity: self.arity,
            values: (0..self.values.len()).map(|x| self.values[x ^ flip].clone()).collect(),
        })
    }

    /// Pointwise `alpha * f + beta`.
    pub fn affine_transform(&self, alpha: &Rational, beta: &Rational) -> FunctionTable {
        FunctionTable {
            arity: self.arity,
            values: self.values.iter().map(|v| alpha * v + beta).collect(),
        }
    }

    /// Variables `k` with `f(a_k^0) != f(a_k^1)` for some `a`.
    pub fn essential_variables(&self) -> SubsetMask {
        let mut members = 0;
        for i in 0..self.arity {
            let bit = 1usize << i;
            let essential = (0..self.values.len())
                .filter(|x| x & bit == 0)
                .any(|x| self.values[x] != self.values[x | bit]);
            if essential {
                members |= bit as u32;
            }
        }
        SubsetMask::new_unchecked(self.arity, members)
    }

    pub fn is_boolean(&self) -> bool {
        let zero = Rational::zero();
        let one = Rational::one();
        self.values.iter().all(|v| *v == zero || *v == one)
    }

    /// Pointwise `self <= other`.
    pub fn le_pointwise(&self, other: &FunctionTable) -> bool {
        self.arity == other.arity && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn min_value(&self) -> &Rational {
        self.values.iter().min().expect("tables are non-empty")
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("tables are non-empty")
    }

    /// Order-preserving integer encoding of the values.
    pub(crate) fn ranks(&self) -> Ranks {
        let mut levels: Vec<Rational> = self.values.clone();
        levels.sort();
        levels.dedup();
        let ranks = self
            .values
            .iter()
            .map(|v| levels.binary_search(v).expect("value present") as u32)
            .collect();
        Ranks {
            arity: self.arity,
            ranks,
            levels,
        }
    }
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionTable(n={}, {})", self.arity, self)
    }
}

/// A table whose values are replaced by their rank among the distinct
/// values. Min, max and sign comparisons commute with this encoding, so the
/// lattice and monotonicity machinery works on `u32` instead of big rationals.
#[derive(Clone, Debug)]
pub(crate) struct Ranks {
    pub arity: usize,
    pub ranks: Vec<u32>,
    pub levels: Vec<Rational>,
}

impl Ranks {
    pub fn level(&self, rank: u32) -> &Rational {
        &self.levels[rank as usize]
    }

    #[cfg(test)]
    pub fn to_table(&self, ranks: &[u32]) -> FunctionTable {
        FunctionTable::from_parts_unchecked(self.arity, ranks.iter().map(|&r| self.level(r).clone()).collect())
    }
}

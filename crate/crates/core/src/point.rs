//! Points of the n-cube and subsets of `[n]`, both stored as bit masks.
//!
//! Variable `x_k` (1-based) lives at bit position `k - 1`, so `x_1` is the
//! least significant bit of a table index. Every table, file format and
//! report in this crate uses this convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported arity; a dense table then holds 2^20 values.
pub const MAX_ARITY: usize = 20;

pub(crate) fn check_arity(arity: usize) -> Result<()> {
    if arity > MAX_ARITY {
        Err(Error::ArityTooLarge(arity))
    } else {
        Ok(())
    }
}

pub(crate) fn check_index(index: usize, arity: usize) -> Result<()> {
    if index == 0 || index > arity {
        Err(Error::IndexOutOfRange { index, arity })
    } else {
        Ok(())
    }
}

fn check_mask(mask: u32, arity: usize) -> Result<()> {
    check_arity(arity)?;
    if (mask as u64) >> arity != 0 {
        Err(Error::MaskOutOfRange {
            mask: mask as u64,
            arity,
        })
    } else {
        Ok(())
    }
}

/// Mask with the low `arity` bits set.
pub(crate) fn full_mask(arity: usize) -> u32 {
    if arity >= 32 {
        u32::MAX
    } else {
        (1u32 << arity) - 1
    }
}

/// Scatters the low bits of `value` into the set positions of `mask`
/// (software `pdep`).
pub(crate) fn deposit(value: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    let mut bit = 1u32;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if value & bit != 0 {
            out |= low;
        }
        mask &= mask - 1;
        bit <<= 1;
    }
    out
}

/// Gathers the bits of `value` at the set positions of `mask` into the low
/// bits of the result (software `pext`).
#[cfg(test)]
pub(crate) fn extract(value: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    let mut bit = 1u32;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if value & low != 0 {
            out |= bit;
        }
        mask &= mask - 1;
        bit <<= 1;
    }
    out
}

/// All `size`-element subsets of the low `arity` bits in colexicographic
/// order (which coincides with increasing mask value).
pub(crate) fn subsets_of_size(arity: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << arity;
    let mut next: Option<u64> = if size > arity { None } else { Some((1u64 << size) - 1) };
    std::iter::from_fn(move || {
        let current = next?;
        if current >= limit {
            next = None;
            return None;
        }
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let c = current & current.wrapping_neg();
            let r = current + c;
            Some((((r ^ current) >> 2) / c) | r)
        };
        Some(current as u32)
    })
}

/// A point `x` of the cube `B^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    arity: usize,
    bits: u32,
}

impl Point {
    pub fn new(arity: usize, bits: u32) -> Result<Self> {
        check_mask(bits, arity)?;
        Ok(Point { arity, bits })
    }

    pub(crate) fn new_unchecked(arity: usize, bits: u32) -> Self {
        debug_assert!(check_mask(bits, arity).is_ok());
        Point { arity, bits }
    }

    /// Builds a point from its coordinates `(x_1, ..., x_n)`.
    pub fn from_coordinates(coordinates: &[u8]) -> Result<Self> {
        check_arity(coordinates.len())?;
        let mut bits = 0;
        for (i, &c) in coordinates.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(Error::InvalidArgument(format!("coordinate {other} is not a bit"))),
            }
        }
        Ok(Point {
            arity: coordinates.len(),
            bits,
        })
    }

    pub fn zero(arity: usize) -> Result<Self> {
        Point::new(arity, 0)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Coordinate `x_k`, 1-based.
    pub fn get(&self, k: usize) -> Result<u8> {
        check_index(k, self.arity)?;
        Ok(((self.bits >> (k - 1)) & 1) as u8)
    }

    pub fn coordinates(&self) -> Vec<u8> {
        (0..self.arity).map(|i| ((self.bits >> i) & 1) as u8).collect()
    }

    /// `|x|`, the number of ones.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// The point `x_k^a`: `x` with its `k`-th coordinate set to `a`.
    pub fn with_assignment(&self, k: usize, a: u8) -> Result<Point> {
        check_index(k, self.arity)?;
        let bit = 1u32 << (k - 1);
        let bits = match a {
            0 => self.bits & !bit,
            1 => self.bits | bit,
            other => return Err(Error::InvalidArgument(format!("assigned value {other} is not a bit"))),
        };
        Ok(Point {
            arity: self.arity,
            bits,
        })
    }

    /// Hamming distance ignoring coordinate `k` (pass 0 to count every
    /// coordinate).
    pub fn distance_off(&self, other: &Point, k: usize) -> u32 {
        let ignore = if k == 0 { 0 } else { 1u32 << (k - 1) };
        ((self.bits ^ other.bits) & !ignore).count_ones()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.arity {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset `S` of `[n]`; also used for coalitions of players.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetMask {
    arity: usize,
    members: u32,
}

impl SubsetMask {
    pub fn new(arity: usize, members: u32) -> Result<Self> {
        check_mask(members, arity)?;
        Ok(SubsetMask { arity, members })
    }

    pub(crate) fn new_unchecked(arity: usize, members: u32) -> Self {
        debug_assert!(check_mask(members, arity).is_ok());
        SubsetMask { arity, members }
    }

    /// Builds a subset from 1-based indices; repeats are ignored.
    pub fn from_indices(arity: usize, indices: &[usize]) -> Result<Self> {
        check_arity(arity)?;
        let mut members = 0;
        for &k in indices {
            check_index(k, arity)?;
            members |= 1 << (k - 1);
        }
        Ok(SubsetMask { arity, members })
    }

    pub fn empty(arity: usize) -> Result<Self> {
        SubsetMask::new(arity, 0)
    }

    pub fn full(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(SubsetMask {
            arity,
            members: full_mask(arity),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> u32 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && k <= self.arity && self.members & (1 << (k - 1)) != 0
    }

    /// Members as ascending 1-based indices.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|i| self.members & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }

    pub fn complement(&self) -> SubsetMask {
        SubsetMask {
            arity: self.arity,
            members: !self.members & full_mask(self.arity),
        }
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.members & !other.members == 0
    }

    /// The characteristic point `1_S`.
    pub fn characteristic_point(&self) -> Point {
        Point::new_unchecked(self.arity, self.members)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.indices().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

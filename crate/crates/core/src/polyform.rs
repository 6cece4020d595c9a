//! Multilinear polynomial form `f(x) = sum_S a_S prod_{i in S} x_i`.
//!
//! Coefficients are stored densely, indexed by the subset mask of `S`. The
//! conversion from a truth table is the Möbius transform over the subset
//! lattice; the inverse is the zeta transform.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::point::{check_arity, check_index, MAX_ARITY};
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPolynomial {
    arity: usize,
    coefficients: Vec<Rational>,
}

impl MultilinearPolynomial {
    pub fn new(arity: usize, coefficients: Vec<Rational>) -> Result<Self> {
        check_arity(arity)?;
        if coefficients.len() != 1 << arity {
            return Err(Error::TableLength {
                arity,
                expected: 1 << arity,
                found: coefficients.len(),
            });
        }
        Ok(MultilinearPolynomial { arity, coefficients })
    }

    pub fn zero(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(MultilinearPolynomial {
            arity,
            coefficients: vec![Rational::zero(); 1 << arity],
        })
    }

    /// Builds a polynomial from `(subset mask, coefficient)` terms; repeated
    /// masks are summed.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let mut p = MultilinearPolynomial::zero(arity)?;
        for (mask, c) in terms {
            if (mask as u64) >> arity != 0 {
                return Err(Error::MaskOutOfRange {
                    mask: mask as u64,
                    arity,
                });
            }
            let slot = &mut p.coefficients[mask as usize];
            *slot = &*slot + &c;
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `a_S` for the subset with mask `mask`.
    pub fn coefficient(&self, mask: u32) -> &Rational {
        &self.coefficients[mask as usize]
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as u32, c))
    }

    /// Largest `|S|` with `a_S != 0`; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms().map(|(m, _)| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Möbius inversion `a_S = sum_{T ⊆ S} (-1)^{|S \ T|} f(1_T)`.
    pub fn from_table(f: &FunctionTable) -> Self {
        let mut c = f.values().to_vec();
        for i in 0..f.arity() {
            let bit = 1usize << i;
            for m in 0..c.len() {
                if m & bit != 0 {
                    c[m] = &c[m] - &c[m ^ bit];
                }
            }
        }
        MultilinearPolynomial {
            arity: f.arity(),
            coefficients: c,
        }
    }

    /// Evaluates the polynomial on every point of `B^n`.
    pub fn to_table(&self) -> FunctionTable {
        let mut v = self.coefficients.clone();
        for i in 0..self.arity {
            let bit = 1usize << i;
            for m in 0..v.len() {
                if m & bit != 0 {
                    v[m] = &v[m] + &v[m ^ bit];
                }
            }
        }
        FunctionTable::from_parts_unchecked(self.arity, v)
    }

    /// Formal derivative in `x_k`: `b_T = a_{T ∪ {k}}` for `k ∉ T`, else 0.
    pub fn formal_derivative(&self, k: usize) -> Result<Self> {
        check_index(k, self.arity)?;
        let bit = 1usize << (k - 1);
        let coefficients = (0..self.coefficients.len())
            .map(|m| {
                if m & bit != 0 {
                    Rational::zero()
                } else {
                    self.coefficients[m | bit].clone()
                }
            })
            .collect();
        Ok(MultilinearPolynomial {
            arity: self.arity,
            coefficients,
        })
    }

    /// Parses an expression; the arity is the largest variable index used.
    pub fn parse(text: &str) -> Result<Self> {
        let terms = Parser::new(text)?.parse()?;
        let arity = terms.keys().map(|m| 32 - m.leading_zeros() as usize).max().unwrap_or(0);
        MultilinearPolynomial::from_terms(arity, terms)
    }

    /// Parses an expression over exactly `arity` variables.
    pub fn parse_with_arity(text: &str, arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let terms = Parser::new(text)?.parse()?;
        if let Some(m) = terms.keys().find(|m| (**m as u64) >> arity != 0) {
            let index = 32 - m.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, arity });
        }
        MultilinearPolynomial::from_terms(arity, terms)
    }
}

/// Coefficients `a_0 + a_1 x_1 + a_2 x_2 + a_12 x_1 x_2` of a binary function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct BinaryCoefficients {
    pub a0: Rational,
    pub a1: Rational,
    pub a2: Rational,
    pub a12: Rational,
}

impl BinaryCoefficients {
    /// From the values `g(0,0), g(1,0), g(0,1), g(1,1)`.
    pub fn from_values(g00: &Rational, g10: &Rational, g01: &Rational, g11: &Rational) -> Self {
        BinaryCoefficients {
            a0: g00.clone(),
            a1: g10 - g00,
            a2: g01 - g00,
            a12: &(g11 - g10) - &(g01 - g00),
        }
    }

    pub fn of(g: &FunctionTable) -> Result<Self> {
        if g.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: g.arity(),
            });
        }
        let v = g.values();
        Ok(BinaryCoefficients::from_values(&v[0], &v[1], &v[2], &v[3]))
    }

    /// `a_1 (a_1 + a_12) >= 0` and `a_2 (a_2 + a_12) >= 0`: the binary
    /// function is monotone.
    pub fn is_monotone(&self) -> bool {
        let ok = |a: &Rational| !(a * &(a + &self.a12)).sign().is_lt();
        ok(&self.a1) && ok(&self.a2)
    }

    /// `a_1 a_12 >= 0` or `a_2 a_12 >= 0` or `|a_12| <= max(|a_1|, |a_2|)`:
    /// meet and join derivatives of the binary function commute.
    pub fn has_permutable_derivatives(&self) -> bool {
        !(&self.a1 * &self.a12).sign().is_lt()
            || !(&self.a2 * &self.a12).sign().is_lt()
            || self.a12.abs() <= std::cmp::max(self.a1.abs(), self.a2.abs())
    }
}

pub fn parse_expression(text: &str) -> Result<MultilinearPolynomial> {
    MultilinearPolynomial::parse(text)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, mask: u32) -> fmt::Result {
    let mut first = true;
    for i in 0..32 {
        if mask & (1 << i) != 0 {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
    }
    Ok(())
}

/// Canonical form: terms by increasing subset mask, unit coefficients elided,
/// e.g. `x1 - x1*x2 + x2*x3`.
impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (mask, c) in self.terms() {
            let negative = c.sign().is_lt();
            match (any, negative) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            let magnitude = c.abs();
            if mask == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if magnitude != Rational::one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, mask)?;
            }
            any = true;
        }
        if !any {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPolynomial(n={}, {})", self.arity, self)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    End,
}

type Sparse = BTreeMap<u32, Rational>;

/// Recursive-descent parser over
/// `expr := term (("+"|"-") term)*`, `term := ["-"] factor ("*" factor)*`,
/// `factor := literal | variable | "(" expr ")"`.
struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn parse(mut self) -> Result<Sparse> {
        let e = self.expr()?;
        if *self.peek() != Token::End {
            return Err(Error::parse(self.offset(), format!("unexpected {:?}", self.peek())));
        }
        Ok(e.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Token::Plus => false,
                Token::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            for (m, c) in t {
                let c = if negate { -c } else { c };
                let slot = acc.entry(m).or_insert_with(Rational::zero);
                *slot = &*slot + &c;
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let negate = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = multiply(&acc, &rhs);
        }
        if negate {
            for c in acc.values_mut() {
                *c = -&*c;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let at = self.offset();
        match self.bump() {
            Token::Number(v) => Ok(BTreeMap::from([(0, v)])),
            Token::Var(i) => Ok(BTreeMap::from([(1u32 << (i - 1), Rational::one())])),
            Token::LParen => {
                let e = self.expr()?;
                let close = self.offset();
                if self.bump() != Token::RParen {
                    return Err(Error::parse(close, "expected ')'"));
                }
                Ok(e)
            }
            Token::End => Err(Error::parse(at, "unexpected end of input")),
            other => Err(Error::parse(at, format!("unexpected {other:?}"))),
        }
    }
}

// Monomials multiply by union of variable sets, since x*x = x on {0,1}.
fn multiply(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let slot = out.entry(ma | mb).or_insert_with(Rational::zero);
            *slot = &*slot + &(ca * cb);
        }
    }
    out
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'x' | b'X' => {
                let end = digits_end(i + 1);
                if end == i + 1 {
                    return Err(Error::parse(i + 1, "expected variable index after 'x'"));
                }
                let index: usize = text[i + 1..end]
                    .parse()
                    .map_err(|_| Error::parse(i + 1, "variable index too large"))?;
                if index == 0 || index > MAX_ARITY {
                    return Err(Error::parse(
                        i + 1,
                        format!("variable index {index} outside 1..={MAX_ARITY}"),
                    ));
                }
                out.push((start, Token::Var(index)));
                i = end;
                continue;
            }
            b'0'..=b'9' => {
                let mut end = digits_end(i);
                if end + 1 < bytes.len()
                    && (bytes[end] == b'.' || bytes[end] == b'/')
                    && bytes[end + 1].is_ascii_digit()
                {
                    end = digits_end(end + 1);
                }
                let value = Rational::parse_literal(&text[i..end]).map_err(|e| match e {
                    Error::DivisionByZero => Error::parse(start, "zero denominator"),
                    other => other,
                })?;
                out.push((start, Token::Number(value)));
                i = end;
                continue;
            }
            other => {
                return Err(Error::parse(i, format!("unexpected character {:?}", other as char)));
            }
        };
        out.push((start, token));
        i += 1;
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

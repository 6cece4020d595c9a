//! Reading a function as a cooperative game.
//!
//! `f(C)` is the worth of coalition `C` (its characteristic point). Players
//! outside a coalition are asked one by one whether to join: a benevolent
//! player acts to maximize the worth (join derivative), a malevolent one to
//! minimize it (meet derivative). The first player asked decides first, so
//! their operator is applied innermost.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::calculus::{apply_sequence, delta, lattice_pass, DerivativeOp, OpKind, OpSequence};
use crate::error::{Error, Result};
use crate::point::{check_index, SubsetMask};
use crate::rational::Rational;
use crate::table::FunctionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlayerRole {
    Benevolent,
    Malevolent,
}

impl PlayerRole {
    pub fn op(self, player: usize) -> DerivativeOp {
        match self {
            PlayerRole::Benevolent => DerivativeOp::join(player),
            PlayerRole::Malevolent => DerivativeOp::meet(player),
        }
    }

    fn kind(self) -> OpKind {
        match self {
            PlayerRole::Benevolent => OpKind::Join,
            PlayerRole::Malevolent => OpKind::Meet,
        }
    }
}

impl fmt::Display for PlayerRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlayerRole::Benevolent => "ben",
            PlayerRole::Malevolent => "mal",
        })
    }
}

impl FromStr for PlayerRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "b" | "ben" | "benevolent" => Ok(PlayerRole::Benevolent),
            "m" | "mal" | "malevolent" => Ok(PlayerRole::Malevolent),
            other => Err(Error::parse(0, format!("unknown role {other:?}, expected ben or mal"))),
        }
    }
}

/// Players in the order they are asked.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AskOrder(Vec<(usize, PlayerRole)>);

impl AskOrder {
    pub fn new(players: Vec<(usize, PlayerRole)>) -> Result<Self> {
        for (i, (p, _)) in players.iter().enumerate() {
            if *p == 0 {
                return Err(Error::InvalidArgument("players are numbered from 1".into()));
            }
            if players[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::InvalidArgument(format!("player {p} is asked twice")));
            }
        }
        Ok(AskOrder(players))
    }

    pub fn players(&self) -> &[(usize, PlayerRole)] {
        &self.0
    }

    /// The derivative sequence, outermost operator first.
    pub fn to_sequence(&self) -> OpSequence {
        OpSequence(self.0.iter().rev().map(|&(p, role)| role.op(p)).collect())
    }
}

impl fmt::Display for AskOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, r)| format!("{p}:{r}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// `1:mal,2:ben`; an empty string is the empty order.
impl FromStr for AskOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut players = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let here = offset;
            offset += part.len() + 1;
            if part.trim().is_empty() {
                if s.trim().is_empty() {
                    continue;
                }
                return Err(Error::parse(here, "empty entry"));
            }
            let (player, role) = part
                .split_once(':')
                .ok_or_else(|| Error::parse(here, format!("expected player:role, found {:?}", part.trim())))?;
            let player: usize = player
                .trim()
                .parse()
                .map_err(|_| Error::parse(here, format!("invalid player {:?}", player.trim())))?;
            let role: PlayerRole = role.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(here, message),
                other => other,
            })?;
            players.push((player, role));
        }
        AskOrder::new(players)
    }
}

/// Comma separated player indices, e.g. `1,3`; empty for the empty coalition.
pub fn parse_coalition(arity: usize, text: &str) -> Result<SubsetMask> {
    let mut indices = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let here = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(here, format!("invalid player {:?}", part.trim())))?;
        indices.push(i);
    }
    SubsetMask::from_indices(arity, &indices)
}

fn check_coalition(f: &FunctionTable, c: &SubsetMask) -> Result<()> {
    if c.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: c.arity(),
        });
    }
    Ok(())
}

pub fn worth(f: &FunctionTable, c: &SubsetMask) -> Result<Rational> {
    check_coalition(f, c)?;
    Ok(f.value(c.members()).clone())
}

/// `Δ_k f(1_C)`; the same whether or not `k ∈ C`.
pub fn marginal_contribution(f: &FunctionTable, k: usize, c: &SubsetMask) -> Result<Rational> {
    check_coalition(f, c)?;
    Ok(delta(f, k)?.value(c.members()).clone())
}

/// `(O_p ∘ … ∘ O_1 f)(1_C)` for the order `q_1, …, q_p`.
pub fn sequential_outcome(f: &FunctionTable, c: &SubsetMask, order: &AskOrder) -> Result<Rational> {
    check_coalition(f, c)?;
    Ok(apply_sequence(f, &order.to_sequence())?.value(c.members()).clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalOutcomes {
    /// Malevolent players asked first.
    pub least: Rational,
    /// Benevolent players asked first.
    pub greatest: Rational,
}

/// Roles are given as an order; only the assignment matters.
pub fn extremal_outcomes(f: &FunctionTable, roles: &AskOrder, c: &SubsetMask) -> Result<ExtremalOutcomes> {
    let by_role = |first: PlayerRole| {
        let (a, b): (Vec<_>, Vec<_>) = roles.players().iter().partition(|(_, r)| *r == first);
        AskOrder(a.into_iter().chain(b).collect())
    };
    Ok(ExtremalOutcomes {
        least: sequential_outcome(f, c, &by_role(PlayerRole::Malevolent))?,
        greatest: sequential_outcome(f, c, &by_role(PlayerRole::Benevolent))?,
    })
}

/// Largest player set accepted by [`order_irrelevant`].
pub const ORDER_AUDIT_MAX_PLAYERS: usize = 7;

/// Whether, for every role assignment on `P` and every coalition, the order
/// in which the players of `P` are asked never changes the outcome.
pub fn order_irrelevant(f: &FunctionTable, players: &SubsetMask) -> Result<bool> {
    check_coalition(f, players)?;
    let idx = players.indices();
    let p = idx.len();
    if p > ORDER_AUDIT_MAX_PLAYERS {
        return Err(Error::ParameterOutOfRange {
            p,
            min: 0,
            max: ORDER_AUDIT_MAX_PLAYERS,
        });
    }
    for &k in &idx {
        check_index(k, f.arity())?;
    }
    let base = f.ranks().ranks;
    for assignment in 0..1u32 << p {
        let roles: Vec<PlayerRole> = (0..p)
            .map(|i| {
                if assignment & (1 << i) != 0 {
                    PlayerRole::Malevolent
                } else {
                    PlayerRole::Benevolent
                }
            })
            .collect();
        let mut first: Option<Vec<u32>> = None;
        for order in (0..p).permutations(p) {
            let mut values = base.clone();
            for &i in &order {
                lattice_pass(&mut values, idx[i] - 1, roles[i].kind());
            }
            match &first {
                None => first = Some(values),
                Some(v) if *v != values => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{conjunction, parity};
    use crate::polyform::MultilinearPolynomial;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn pair_example() -> FunctionTable {
        FunctionTable::from_integers(2, &[1, 2, 4, 3]).unwrap()
    }

    fn coalition(n: usize, s: &str) -> SubsetMask {
        parse_coalition(n, s).unwrap()
    }

    #[test]
    fn worth_examples() {
        assert_eq!(worth(&pair_example(), &coalition(2, "2")).unwrap(), r(4));
        let c = FunctionTable::constant(3, r(6)).unwrap();
        assert_eq!(worth(&c, &coalition(3, "")).unwrap(), r(6));
        assert_eq!(worth(&conjunction(4), &coalition(4, "1,2,3,4")).unwrap(), r(1));
        assert!(worth(&c, &coalition(2, "")).is_err());
    }

    #[test]
    fn contributions() {
        let f = MultilinearPolynomial::parse("x1 - x1*x2 + x2*x3").unwrap().to_table();
        assert_eq!(marginal_contribution(&f, 2, &coalition(3, "3")).unwrap(), r(1));
        assert_eq!(marginal_contribution(&f, 2, &coalition(3, "")).unwrap(), r(0));
        assert_eq!(marginal_contribution(&f, 2, &coalition(3, "1")).unwrap(), r(-1));
        assert_eq!(marginal_contribution(&f, 2, &coalition(3, "1,2")).unwrap(), r(-1));
    }

    #[test]
    fn outcomes() {
        let order: AskOrder = "1:mal,2:ben".parse().unwrap();
        assert_eq!(order.to_sequence().to_string(), "v2 ^1");
        let empty = coalition(2, "");
        assert_eq!(sequential_outcome(&pair_example(), &empty, &order).unwrap(), r(3));
        assert_eq!(
            sequential_outcome(&pair_example(), &empty, &AskOrder::default()).unwrap(),
            r(1)
        );
        let ben: AskOrder = "1:ben".parse().unwrap();
        assert_eq!(
            sequential_outcome(&pair_example(), &coalition(2, "2"), &ben).unwrap(),
            r(4)
        );

        let ext = extremal_outcomes(&parity(2), &order, &empty).unwrap();
        assert_eq!((ext.least, ext.greatest), (r(0), r(1)));
        let ext = extremal_outcomes(&pair_example(), &order, &empty).unwrap();
        assert_eq!((ext.least, ext.greatest), (r(3), r(3)));
    }

    #[test]
    fn order_parsing() {
        assert!("1:mal,1:ben".parse::<AskOrder>().is_err());
        assert!("1:neutral".parse::<AskOrder>().is_err());
        assert!("0:ben".parse::<AskOrder>().is_err());
        match "1:ben,x:mal".parse::<AskOrder>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert_eq!("".parse::<AskOrder>().unwrap(), AskOrder::default());
        assert!(parse_coalition(2, "3").is_err());
    }

    #[test]
    fn order_audit() {
        let both = coalition(2, "1,2");
        assert!(!order_irrelevant(&parity(2), &both).unwrap());
        assert!(order_irrelevant(&pair_example(), &both).unwrap());
        assert!(order_irrelevant(&conjunction(3), &coalition(3, "1,2,3")).unwrap());
        assert!(order_irrelevant(&parity(3), &coalition(3, "2")).unwrap());
    }
}

//! Exhaustive and randomized verification of the structural theorems.
//!
//! Each claim is a predicate checked on every function of a population: all
//! Boolean functions of the requested arities, plus (for claims about
//! arbitrary real-valued functions) seeded random rational tables. Some
//! claims add a census over the whole population, such as the number of
//! parity-type functions.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{join_derivative, meet_derivative};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::families::boolean_from_code;
use crate::games::order_irrelevant;
use crate::monotonicity::{
    forbidden_binary_sections, is_monotone, is_p_locally_monotone, is_p_locally_monotone_by_definition,
    local_monotonicity_degree,
};
use crate::permutability::{
    binary_2permutability_condition, has_p_permutable_derivatives, has_p_permutable_derivatives_exhaustive,
    max_permutability_degree,
};
use crate::point::{subsets_of_size, Point, SubsetMask};
use crate::rational::Rational;
use crate::reconstruction::{is_parity_type, profile_of, reconstruct, verify_profile, ReconstructionResult};
use crate::symmetric::SymmetricSequence;
use crate::table::FunctionTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub min_arity: usize,
    pub max_arity: usize,
    /// Random tables per claim; 0 disables the random population.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            min_arity: 1,
            max_arity: 4,
            samples: 1000,
            seed: 0,
        }
    }
}

/// Largest arity accepted for exhaustive Boolean populations.
pub const MAX_EXHAUSTIVE_ARITY: usize = 4;
const RANDOM_MAX_ARITY: usize = 6;
const SYMMETRIC_MAX_ARITY: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCounterexample {
    pub table: FunctionTable,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub claim: String,
    pub population: String,
    pub checked: usize,
    pub passed: usize,
    pub counterexample: Option<SweepCounterexample>,
    pub elapsed_ms: u128,
    pub notes: Vec<String>,
}

impl SweepResult {
    pub fn ok(&self) -> bool {
        self.passed == self.checked && self.counterexample.is_none()
    }
}

type Check = fn(&FunctionTable) -> std::result::Result<&'static str, String>;
type Census = fn(usize, &BTreeMap<&'static str, usize>) -> std::result::Result<(), String>;

#[derive(Clone, Copy)]
enum Population {
    /// Boolean functions of the configured arities, plus random tables up to
    /// the given arity when it is nonzero.
    Tables { random_max_arity: usize },
    /// Boolean functions of arity 2 only.
    Binary,
    /// Symmetric functions: every 0/1 sequence and random rational sequences.
    Symmetric,
}

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    population: Population,
    check: Check,
    census: Option<Census>,
}

fn bool_label(b: bool, yes: &'static str, no: &'static str) -> &'static str {
    if b {
        yes
    } else {
        no
    }
}

fn local(f: &FunctionTable, p: usize) -> bool {
    is_p_locally_monotone(f, p).expect("p in range").holds
}

fn perm(f: &FunctionTable, p: usize) -> bool {
    has_p_permutable_derivatives(f, p).expect("p in range").holds
}

fn fail<T>(msg: String) -> std::result::Result<T, String> {
    Err(msg)
}

fn check_2local_iff_2perm(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    if f.arity() < 2 {
        return Ok("trivial");
    }
    let (l, q) = (local(f, 2), perm(f, 2));
    if l != q {
        return fail(format!("2-locally monotone: {l}, 2-permutable: {q}"));
    }
    Ok(bool_label(l, "2-local", "not-2-local"))
}

fn check_local_implies_perm(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    for p in 1..=f.arity() {
        if local(f, p) && !perm(f, p) {
            return fail(format!("{p}-locally monotone but not {p}-permutable"));
        }
    }
    Ok("ok")
}

fn check_perm_chain(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    for p in 1..f.arity() {
        if perm(f, p + 1) && !perm(f, p) {
            return fail(format!("{}-permutable but not {p}-permutable", p + 1));
        }
    }
    Ok("ok")
}

fn check_degree_drop(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let d = local_monotonicity_degree(f).degree;
    for j in 1..=f.arity() {
        for (name, g) in [("meet", meet_derivative(f, j)), ("join", join_derivative(f, j))] {
            let dg = local_monotonicity_degree(&g.expect("index in range")).degree;
            if dg + 1 < d {
                return fail(format!("degree {d} but the {name} derivative in x{j} has degree {dg}"));
            }
        }
    }
    Ok("ok")
}

fn check_reconstruction(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let profile = profile_of(f).expect("arity at least 1");
    let result = reconstruct(&profile);
    let label = match &result {
        ReconstructionResult::Unique { table } if table == f => "unique",
        ReconstructionResult::ParityPair { .. } if result.candidates().contains(f) => "parity-pair",
        other => return fail(format!("reconstructed {other:?}")),
    };
    if (label == "parity-pair") != is_parity_type(f) {
        return fail(format!("result {label} disagrees with the parity-type test"));
    }
    if !result.candidates().iter().all(|g| verify_profile(g, &profile)) {
        return fail("a candidate does not reproduce the profile".into());
    }
    Ok(label)
}

fn census_two_parity(arity: usize, counts: &BTreeMap<&'static str, usize>) -> std::result::Result<(), String> {
    let pairs = counts.get("parity-pair").copied().unwrap_or(0);
    if pairs == 2 {
        Ok(())
    } else {
        Err(format!(
            "expected 2 parity-type functions of arity {arity}, found {pairs}"
        ))
    }
}

fn check_binary_census(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let monotone = is_monotone(f);
    if monotone != local(f, 2) {
        return fail("monotone and 2-local monotonicity disagree at arity 2".into());
    }
    if !monotone && !is_parity_type(f) {
        return fail("non-monotone binary function other than XOR/XNOR".into());
    }
    Ok(bool_label(monotone, "monotone", "non-monotone"))
}

fn census_binary(_: usize, counts: &BTreeMap<&'static str, usize>) -> std::result::Result<(), String> {
    match counts.get("non-monotone").copied().unwrap_or(0) {
        2 => Ok(()),
        k => Err(format!("expected 2 non-monotone binary functions, found {k}")),
    }
}

fn check_scans(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    for p in 1..=f.arity() {
        let a = is_p_locally_monotone(f, p).expect("p in range");
        let b = is_p_locally_monotone_by_definition(f, p).expect("p in range");
        if a.holds != b.holds {
            return fail(format!("p = {p}: section scan {}, definition {}", a.holds, b.holds));
        }
        for w in a.witness.iter().chain(b.witness.iter()) {
            if !w.verify(f, p) {
                return fail(format!("p = {p}: witness {w:?} does not verify"));
            }
        }
    }
    Ok("ok")
}

const EXTREMAL_RANDOM_MAX_P: usize = 5;

fn check_extremal(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let max_p = if f.is_boolean() {
        f.arity()
    } else {
        f.arity().min(EXTREMAL_RANDOM_MAX_P)
    };
    for p in 1..=max_p {
        let a = has_p_permutable_derivatives(f, p).expect("p in range");
        let b = has_p_permutable_derivatives_exhaustive(f, p).expect("p in range");
        if a.holds != b.holds {
            return fail(format!("p = {p}: extremal check {}, enumeration {}", a.holds, b.holds));
        }
        for c in a.counterexample.iter().chain(b.counterexample.iter()) {
            if !c.verify(f) {
                return fail(format!("p = {p}: counterexample {c:?} does not verify"));
            }
        }
    }
    Ok("ok")
}

fn check_sections_local(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    for p in 1..=f.arity() {
        let all = f
            .sections_of_arity(p)
            .expect("p in range")
            .all(|s| is_monotone(&s.table));
        if all != local(f, p) {
            return fail(format!("p = {p}: sections monotone {all}, p-locally monotone {}", !all));
        }
    }
    Ok("ok")
}

fn check_sections_perm(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    for p in 1..=f.arity() {
        let all = f.sections_of_arity(p).expect("p in range").all(|s| perm(&s.table, p));
        if all != perm(f, p) {
            return fail(format!("p = {p}: sections permutable {all}, p-permutable {}", !all));
        }
    }
    Ok("ok")
}

fn check_forbidden(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    if f.arity() < 2 {
        return Ok("trivial");
    }
    let none = forbidden_binary_sections(f).is_empty();
    if none != local(f, 2) {
        return fail(format!("no forbidden sections: {none}, 2-locally monotone: {}", !none));
    }
    Ok("ok")
}

fn check_binary_criterion(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    if f.arity() < 2 {
        return Ok("trivial");
    }
    let c = binary_2permutability_condition(f).holds;
    if c != perm(f, 2) {
        return fail(format!("coefficient criterion {c}, 2-permutable {}", !c));
    }
    Ok("ok")
}

fn check_decomposition(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let monotone = is_monotone(f);
    match decompose(f) {
        None if monotone => fail("monotone function without a decomposition".into()),
        Some(_) if !monotone => fail("decomposition of a non-monotone function".into()),
        None => Ok("not-monotone"),
        Some(d) => {
            for b in 0..1u32 << f.arity() {
                let x = Point::new(f.arity(), b).expect("in range");
                let v = d.evaluate(&x).expect("arity matches");
                if &v != f.value(b) {
                    return fail(format!("decomposition gives {v} at {x}, table has {}", f.value(b)));
                }
            }
            Ok("monotone")
        }
    }
}

fn check_order_irrelevance(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let n = f.arity();
    for p in 1..=n {
        let all = subsets_of_size(n, p)
            .all(|m| order_irrelevant(f, &SubsetMask::new(n, m).expect("in range")).expect("player count in range"));
        if all != perm(f, p) {
            return fail(format!("p = {p}: order irrelevant {all}, p-permutable {}", !all));
        }
    }
    Ok("ok")
}

fn check_invariance(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let n = f.arity();
    let degree = local_monotonicity_degree(f).degree;
    let max_p = max_permutability_degree(f).expect("arity within cap").max_p;
    let mut variants = vec![
        (
            "-2f + 5/2",
            f.affine_transform(&Rational::from_integer(-2), &Rational::new(5, 2).expect("nonzero")),
        ),
        (
            "f/3",
            f.affine_transform(&Rational::new(1, 3).expect("nonzero"), &Rational::zero()),
        ),
    ];
    for s in [1u32, 0b101, (1u32 << n) - 1] {
        let s = s & ((1u32 << n) - 1);
        let mask = SubsetMask::new(n, s).expect("in range");
        variants.push(("negated variables", f.negate_variables(&mask).expect("arity matches")));
    }
    for (name, g) in variants {
        let (dg, pg) = (
            local_monotonicity_degree(&g).degree,
            max_permutability_degree(&g).expect("arity within cap").max_p,
        );
        if (dg, pg) != (degree, max_p) {
            return fail(format!("{name}: degrees ({dg}, {pg}) instead of ({degree}, {max_p})"));
        }
    }
    Ok("ok")
}

fn check_symmetric(f: &FunctionTable) -> std::result::Result<&'static str, String> {
    let s = crate::symmetric::detect_symmetric(f).ok_or("population member is not symmetric")?;
    let n = s.arity();
    let seq_degree = s.local_monotonicity_degree();
    let table_degree = local_monotonicity_degree(f).degree;
    let perm_degree = max_permutability_degree(f).expect("arity within cap").max_p;
    if seq_degree != table_degree || table_degree != perm_degree {
        return fail(format!(
            "sequence degree {seq_degree}, table degree {table_degree}, permutability degree {perm_degree}"
        ));
    }
    if n >= 1 {
        let (m, j) = (s.meet().expect("n >= 1"), s.join().expect("n >= 1"));
        for k in 1..=n {
            let tm = meet_derivative(f, k)
                .and_then(|g| g.drop_variable(k))
                .expect("index in range");
            let tj = join_derivative(f, k)
                .and_then(|g| g.drop_variable(k))
                .expect("index in range");
            if tm != m.to_function() || tj != j.to_function() {
                return fail(format!("sequence derivatives disagree with table derivatives in x{k}"));
            }
        }
    }
    Ok(bool_label(seq_degree == n, "monotone", "not-monotone"))
}

const TABLES: Population = Population::Tables {
    random_max_arity: RANDOM_MAX_ARITY,
};

static CLAIMS: &[Claim] = &[
    Claim {
        id: "boolean-2local-iff-2permutable",
        statement: "a Boolean function is 2-locally monotone iff it has 2-permutable lattice derivatives",
        population: Population::Tables { random_max_arity: 0 },
        check: check_2local_iff_2perm,
        census: None,
    },
    Claim {
        id: "local-implies-permutable",
        statement: "p-locally monotone implies p-permutable lattice derivatives",
        population: TABLES,
        check: check_local_implies_perm,
        census: None,
    },
    Claim {
        id: "permutability-chain",
        statement: "(p+1)-permutable implies p-permutable",
        population: TABLES,
        check: check_perm_chain,
        census: None,
    },
    Claim {
        id: "derivative-degree-drop",
        statement: "meet and join derivatives lose at most one degree of local monotonicity",
        population: TABLES,
        check: check_degree_drop,
        census: None,
    },
    Claim {
        id: "reconstruction-roundtrip",
        statement: "the derivative profile determines f, except for the two parity-type functions",
        population: TABLES,
        check: check_reconstruction,
        census: Some(census_two_parity),
    },
    Claim {
        id: "binary-nonmonotone-census",
        statement: "exactly two Boolean functions of arity 2 are not monotone (XOR and XNOR)",
        population: Population::Binary,
        check: check_binary_census,
        census: Some(census_binary),
    },
    Claim {
        id: "section-vs-definition-scan",
        statement: "the section scan and the pairwise definition agree on p-local monotonicity",
        population: TABLES,
        check: check_scans,
        census: None,
    },
    Claim {
        id: "extremal-vs-enumeration",
        statement: "comparing the two extremal orderings decides p-permutability",
        population: TABLES,
        check: check_extremal,
        census: None,
    },
    Claim {
        id: "sections-characterize-local-monotonicity",
        statement: "f is p-locally monotone iff every p-ary section is monotone",
        population: TABLES,
        check: check_sections_local,
        census: None,
    },
    Claim {
        id: "sections-characterize-permutability",
        statement: "f is p-permutable iff every p-ary section has permutable lattice derivatives",
        population: TABLES,
        check: check_sections_perm,
        census: None,
    },
    Claim {
        id: "forbidden-binary-sections",
        statement: "f is 2-locally monotone iff no binary section is forbidden",
        population: TABLES,
        check: check_forbidden,
        census: None,
    },
    Claim {
        id: "binary-2permutability-criterion",
        statement: "the coefficient criterion on binary sections decides 2-permutability",
        population: TABLES,
        check: check_binary_criterion,
        census: None,
    },
    Claim {
        id: "monotone-iff-pseudo-polynomial",
        statement: "f is monotone iff it is a pseudo-polynomial function",
        population: TABLES,
        check: check_decomposition,
        census: None,
    },
    Claim {
        id: "order-irrelevance-iff-permutable",
        statement: "ask order never matters for p players iff f is p-permutable",
        population: Population::Tables { random_max_arity: 5 },
        check: check_order_irrelevance,
        census: None,
    },
    Claim {
        id: "degree-invariance",
        statement: "both degrees are invariant under affine rescaling and variable negation",
        population: TABLES,
        check: check_invariance,
        census: None,
    },
    Claim {
        id: "symmetric-degree-equivalence",
        statement: "a symmetric function is p-locally monotone iff it is p-permutable",
        population: Population::Symmetric,
        check: check_symmetric,
        census: None,
    },
];

pub fn claims() -> &'static [Claim] {
    CLAIMS
}

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {id:?}")))
}

/// A random table mixing several shapes so that ties, monotone and
/// symmetric functions all occur.
pub fn random_table(rng: &mut impl Rng, arity: usize) -> FunctionTable {
    let size = 1usize << arity;
    let small = |rng: &mut dyn rand::RngCore| Rational::from_integer(rng.random_range(-2..=2));
    let values: Vec<Rational> = match rng.random_range(0..5) {
        0 => (0..size).map(|_| small(rng)).collect(),
        1 => (0..size)
            .map(|_| Rational::new(rng.random_range(-3..=3), rng.random_range(1..=3)).expect("nonzero"))
            .collect(),
        2 => {
            // isotone by construction, then some variables flipped
            let mut v: Vec<i64> = (0..size).map(|_| rng.random_range(0..=3)).collect();
            for i in 0..arity {
                for x in 0..size {
                    if x & (1 << i) != 0 {
                        v[x] = v[x].max(v[x ^ (1 << i)]);
                    }
                }
            }
            let flip = rng.random_range(0..size);
            (0..size).map(|x| Rational::from_integer(v[x ^ flip])).collect()
        }
        3 => {
            let alpha: Vec<Rational> = (0..=arity).map(|_| small(rng)).collect();
            (0..size).map(|x| alpha[x.count_ones() as usize].clone()).collect()
        }
        _ => (0..size)
            .map(|_| Rational::from_integer(rng.random_range(0..=1)))
            .collect(),
    };
    FunctionTable::new(arity, values).expect("length matches arity")
}

struct Member {
    arity: usize,
    random: bool,
    table: FunctionTable,
}

fn boolean_population(arities: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = Member> {
    arities.flat_map(|n| {
        (0..1u64 << (1u64 << n)).map(move |code| Member {
            arity: n,
            random: false,
            table: boolean_from_code(n, code),
        })
    })
}

fn random_population(samples: usize, seed: u64, max_arity: usize) -> Vec<Member> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let n = rng.random_range(1..=max_arity);
            Member {
                arity: n,
                random: true,
                table: random_table(&mut rng, n),
            }
        })
        .collect()
}

fn symmetric_population(samples: usize, seed: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for n in 1..=SYMMETRIC_MAX_ARITY {
        for code in 0..1u64 << (n + 1) {
            let alpha: Vec<i64> = (0..=n).map(|i| ((code >> i) & 1) as i64).collect();
            out.push(Member {
                arity: n,
                random: false,
                table: SymmetricSequence::from_integers(&alpha).to_function(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.random_range(1..=SYMMETRIC_MAX_ARITY);
        let alpha: Vec<Rational> = (0..=n)
            .map(|_| Rational::new(rng.random_range(-3..=3), rng.random_range(1..=2)).expect("nonzero"))
            .collect();
        out.push(Member {
            arity: n,
            random: true,
            table: SymmetricSequence::new(alpha).expect("length in range").to_function(),
        });
    }
    out
}

fn describe_boolean(lo: usize, hi: usize) -> String {
    let count: u64 = (lo..=hi).map(|n| 1u64 << (1u64 << n)).sum();
    if lo == hi {
        format!("all {count} Boolean functions of arity {lo}")
    } else {
        format!("all {count} Boolean functions of arity {lo} to {hi}")
    }
}

pub fn run_claim(claim: &Claim, config: &SweepConfig) -> Result<SweepResult> {
    if config.max_arity > MAX_EXHAUSTIVE_ARITY || config.min_arity > config.max_arity {
        return Err(Error::ParameterOutOfRange {
            p: config.max_arity,
            min: config.min_arity,
            max: MAX_EXHAUSTIVE_ARITY,
        });
    }
    let start = Instant::now();
    let mut parts = Vec::new();
    let members: Vec<Member> = match claim.population {
        Population::Binary => {
            parts.push(describe_boolean(2, 2));
            boolean_population(2..=2).collect()
        }
        Population::Tables { random_max_arity } => {
            parts.push(describe_boolean(config.min_arity, config.max_arity));
            let mut m: Vec<Member> = boolean_population(config.min_arity..=config.max_arity).collect();
            if random_max_arity > 0 && config.samples > 0 {
                parts.push(format!(
                    "{} random rational tables of arity 1 to {random_max_arity} (seed {})",
                    config.samples, config.seed
                ));
                m.extend(random_population(config.samples, config.seed, random_max_arity));
            }
            m
        }
        Population::Symmetric => {
            parts.push(format!("all 0/1 sequences of arity 1 to {SYMMETRIC_MAX_ARITY}"));
            if config.samples > 0 {
                parts.push(format!(
                    "{} random rational sequences of arity 1 to {SYMMETRIC_MAX_ARITY} (seed {})",
                    config.samples, config.seed
                ));
            }
            symmetric_population(config.samples, config.seed)
        }
    };

    let outcomes: Vec<std::result::Result<&'static str, String>> =
        members.par_iter().map(|m| (claim.check)(&m.table)).collect();

    let mut passed = 0;
    let mut counterexample = None;
    let mut counts: BTreeMap<(bool, usize), BTreeMap<&'static str, usize>> = BTreeMap::new();
    for (m, outcome) in members.iter().zip(&outcomes) {
        match outcome {
            Ok(label) => {
                passed += 1;
                *counts.entry((m.random, m.arity)).or_default().entry(label).or_default() += 1;
            }
            Err(message) if counterexample.is_none() => {
                counterexample = Some(SweepCounterexample {
                    table: m.table.clone(),
                    message: message.clone(),
                });
            }
            Err(_) => {}
        }
    }

    let mut notes = Vec::new();
    for ((random, arity), labels) in &counts {
        if labels.len() > 1 || !labels.contains_key("ok") {
            let body: Vec<String> = labels.iter().map(|(l, c)| format!("{c} {l}")).collect();
            let kind = if *random { "random" } else { "exhaustive" };
            notes.push(format!("{kind} arity {arity}: {}", body.join(", ")));
        }
        if let (Some(census), false) = (claim.census, *random) {
            if let Err(message) = census(*arity, labels) {
                if counterexample.is_none() {
                    counterexample = Some(SweepCounterexample {
                        table: FunctionTable::constant(0, Rational::zero()).expect("arity 0"),
                        message,
                    });
                }
            }
        }
    }

    Ok(SweepResult {
        claim: claim.id.to_string(),
        population: parts.join("; "),
        checked: members.len(),
        passed,
        counterexample,
        elapsed_ms: start.elapsed().as_millis(),
        notes,
    })
}

/// Runs the named claims (all of them when `ids` is empty), in registry
/// order.
pub fn run_sweep(ids: &[String], config: &SweepConfig) -> Result<Vec<SweepResult>> {
    for id in ids {
        find_claim(id)?;
    }
    CLAIMS
        .iter()
        .filter(|c| ids.is_empty() || ids.iter().any(|id| id == c.id))
        .map(|c| run_claim(c, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            min_arity: 1,
            max_arity: 3,
            samples: 40,
            seed: 7,
        }
    }

    #[test]
    fn every_claim_passes_on_small_populations() {
        for r in run_sweep(&[], &small()).unwrap() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn census_counts() {
        let c = find_claim("binary-nonmonotone-census").unwrap();
        let r = run_claim(c, &small()).unwrap();
        assert_eq!((r.checked, r.passed), (16, 16));
        assert_eq!(
            r.notes,
            vec!["exhaustive arity 2: 14 monotone, 2 non-monotone".to_string()]
        );

        let config = SweepConfig {
            min_arity: 3,
            max_arity: 3,
            samples: 0,
            seed: 0,
        };
        let r = run_claim(find_claim("reconstruction-roundtrip").unwrap(), &config).unwrap();
        assert_eq!(
            r.notes,
            vec!["exhaustive arity 3: 2 parity-pair, 254 unique".to_string()]
        );
    }

    #[test]
    fn config_errors() {
        assert!(find_claim("nope").is_err());
        let bad = SweepConfig {
            max_arity: 5,
            ..SweepConfig::default()
        };
        assert!(run_claim(&CLAIMS[0], &bad).is_err());
    }

    #[test]
    fn random_tables_are_reproducible() {
        let a = random_population(20, 3, 6);
        let b = random_population(20, 3, 6);
        assert!(a.iter().zip(&b).all(|(x, y)| x.table == y.table));
    }
}

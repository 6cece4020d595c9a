use itertools::Itertools;
use proptest::prelude::*;

use pbf_core::calculus::{apply_sequence, delta, join_derivative, meet_derivative, OpSequence};
use pbf_core::games::AskOrder;
use pbf_core::io::{parse_table_json, parse_table_text, to_table_text};
use pbf_core::monotonicity::{is_monotone, is_p_locally_monotone, local_monotonicity_degree};
use pbf_core::permutability::{
    has_p_permutable_derivatives, has_p_permutable_derivatives_exhaustive, max_permutability_degree,
};
use pbf_core::reconstruction::{profile_of, reconstruct, verify_profile, DerivativeProfile, ReconstructionResult};
use pbf_core::symmetric::{detect_symmetric, SymmetricSequence};
use pbf_core::{FunctionTable, MultilinearPolynomial, Point, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => (-3i64..=3).prop_map(Rational::from_integer),
        1 => (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap()),
    ]
}

fn table_of_arity(lo: usize, hi: usize) -> impl Strategy<Value = FunctionTable> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(rational(), 1 << n).prop_map(move |v| FunctionTable::new(n, v).unwrap())
    })
}

fn boolean_table(lo: usize, hi: usize) -> impl Strategy<Value = FunctionTable> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(0i64..=1, 1 << n).prop_map(move |v| FunctionTable::from_integers(n, &v).unwrap())
    })
}

fn d(f: &FunctionTable, k: usize, b: u32) -> Rational {
    let bit = 1 << (k - 1);
    f.value(b | bit) - f.value(b & !bit)
}

/// p-local monotonicity straight from the definition: every pair of points.
fn local_oracle(f: &FunctionTable, p: usize) -> bool {
    let n = f.arity();
    (1..=n).all(|k| {
        let ignore = 1u32 << (k - 1);
        (0..1u32 << n).all(|x| {
            (0..1u32 << n).all(|y| {
                ((x ^ y) & !ignore).count_ones() as usize >= p || &d(f, k, x) * &d(f, k, y) >= Rational::zero()
            })
        })
    })
}

/// p-permutability straight from the definition: every subset, operator
/// choice and ordering, using the library only for single derivatives.
fn permutable_oracle(f: &FunctionTable, p: usize) -> bool {
    let n = f.arity();
    (1..=n).combinations(p).all(|subset| {
        (0..1u32 << p).all(|choice| {
            let ops: Vec<(usize, bool)> = subset
                .iter()
                .enumerate()
                .map(|(i, &k)| (k, choice >> i & 1 == 1))
                .collect();
            let results: Vec<FunctionTable> = ops
                .iter()
                .permutations(p)
                .map(|order| {
                    order.into_iter().fold(f.clone(), |g, &(k, meet)| {
                        if meet {
                            meet_derivative(&g, k).unwrap()
                        } else {
                            join_derivative(&g, k).unwrap()
                        }
                    })
                })
                .collect();
            results.iter().all_equal()
        })
    })
}

fn oracle_degree(f: &FunctionTable) -> usize {
    (1..=f.arity()).take_while(|&p| local_oracle(f, p)).last().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn local_monotonicity_matches_definition(f in table_of_arity(1, 4)) {
        for p in 1..=f.arity() {
            prop_assert_eq!(is_p_locally_monotone(&f, p).unwrap().holds, local_oracle(&f, p), "p = {}", p);
        }
        let report = local_monotonicity_degree(&f);
        prop_assert_eq!(report.degree, oracle_degree(&f));
        prop_assert_eq!(report.monotone, local_oracle(&f, f.arity()));
        if let Some(w) = &report.witness {
            prop_assert!(w.verify(&f, report.degree + 1));
        }
    }

    #[test]
    fn permutability_matches_definition(f in table_of_arity(1, 4)) {
        for p in 1..=f.arity() {
            let expected = permutable_oracle(&f, p);
            let fast = has_p_permutable_derivatives(&f, p).unwrap();
            prop_assert_eq!(fast.holds, expected, "fast path, p = {}", p);
            prop_assert_eq!(has_p_permutable_derivatives_exhaustive(&f, p).unwrap().holds, expected);
            if let Some(c) = &fast.counterexample {
                prop_assert!(c.verify(&f));
            }
        }
    }

    #[test]
    fn local_implies_permutable_and_chain(f in table_of_arity(1, 5)) {
        let perm = max_permutability_degree(&f).unwrap().max_p;
        prop_assert!(local_monotonicity_degree(&f).degree <= perm);
        for p in 1..=f.arity() {
            prop_assert_eq!(has_p_permutable_derivatives(&f, p).unwrap().holds, p <= perm);
        }
    }

    #[test]
    fn boolean_local_iff_permutable(f in boolean_table(2, 5)) {
        prop_assert_eq!(
            is_p_locally_monotone(&f, 2).unwrap().holds,
            has_p_permutable_derivatives(&f, 2).unwrap().holds
        );
    }

    #[test]
    fn monotone_is_full_degree(f in table_of_arity(1, 5)) {
        prop_assert_eq!(is_monotone(&f), local_monotonicity_degree(&f).degree == f.arity());
    }

    #[test]
    fn derivatives_drop_the_variable(f in table_of_arity(1, 5), k in 1usize..=5) {
        prop_assume!(k <= f.arity());
        for g in [delta(&f, k).unwrap(), meet_derivative(&f, k).unwrap(), join_derivative(&f, k).unwrap()] {
            prop_assert!(!g.essential_variables().contains(k));
        }
        let poly = MultilinearPolynomial::from_table(&f);
        let dp = MultilinearPolynomial::from_table(&delta(&f, k).unwrap());
        prop_assert!(dp.degree() < poly.degree().max(1));
    }

    #[test]
    fn op_sequence_display_round_trip(f in table_of_arity(1, 4), raw in prop::collection::vec((any::<bool>(), 1usize..=4), 0..5)) {
        let text = raw
            .iter()
            .filter(|(_, k)| *k <= f.arity())
            .map(|(meet, k)| format!("{}{k}", if *meet { "^" } else { "v" }))
            .join(" ");
        let seq: OpSequence = text.parse().unwrap();
        let again: OpSequence = seq.to_string().parse().unwrap();
        prop_assert_eq!(apply_sequence(&f, &seq).unwrap(), apply_sequence(&f, &again).unwrap());
    }

    #[test]
    fn table_formats_round_trip(f in table_of_arity(0, 5)) {
        prop_assert_eq!(parse_table_text(&to_table_text(&f)).unwrap(), f.clone());
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(parse_table_json(&json).unwrap(), f.clone());
        for v in f.values() {
            prop_assert_eq!(&v.to_string().parse::<Rational>().unwrap(), v);
        }
    }

    #[test]
    fn reconstruction_recovers_the_function(f in table_of_arity(1, 4)) {
        let profile = profile_of(&f).unwrap();
        let result = reconstruct(&profile);
        prop_assert!(result.candidates().contains(&f));
        for c in result.candidates() {
            prop_assert!(verify_profile(&c, &profile));
        }
        let json = serde_json::to_string(&profile).unwrap();
        prop_assert_eq!(serde_json::from_str::<DerivativeProfile>(&json).unwrap(), profile);
    }

    #[test]
    fn tampered_profiles_are_caught(
        f in table_of_arity(1, 4),
        side in any::<bool>(),
        k in 1usize..=4,
        at in 0u32..16,
        bump in prop_oneof![Just(-1i64), Just(1), Just(2)],
    ) {
        prop_assume!(k <= f.arity());
        let at = at % (1 << f.arity());
        let (n, mut meet, mut join) = profile_of(&f).unwrap().into_parts();
        let target = if side { &mut meet[k - 1] } else { &mut join[k - 1] };
        let mut values = target.values().to_vec();
        values[at as usize] = &values[at as usize] + &Rational::from_integer(bump);
        *target = FunctionTable::new(n, values).unwrap();
        let tampered = DerivativeProfile::new(n, meet, join).unwrap();

        prop_assert!(!verify_profile(&f, &tampered));
        match reconstruct(&tampered) {
            ReconstructionResult::Inconsistent { .. } => {}
            other => {
                let candidates = other.candidates();
                prop_assert!(!candidates.is_empty());
                for c in candidates {
                    prop_assert!(verify_profile(&c, &tampered));
                }
            }
        }
    }

    #[test]
    fn symmetric_sequences(alpha in prop::collection::vec(rational(), 1..=8)) {
        let s = SymmetricSequence::new(alpha).unwrap();
        let f = s.to_function();
        prop_assert_eq!(detect_symmetric(&f), Some(s.clone()));
        prop_assert_eq!(&s.to_string().parse::<SymmetricSequence>().unwrap(), &s);
        if s.arity() >= 1 {
            prop_assert_eq!(s.local_monotonicity_degree(), local_monotonicity_degree(&f).degree);
            prop_assert_eq!(s.local_monotonicity_degree(), max_permutability_degree(&f).unwrap().max_p);
            prop_assert_eq!(s.is_monotone(), is_monotone(&f));
        }
    }

    #[test]
    fn ask_order_round_trip(n in 1usize..=6, roles in prop::collection::vec(any::<bool>(), 6)) {
        let text = (1..=n)
            .map(|i| format!("{i}:{}", if roles[i - 1] { "ben" } else { "mal" }))
            .join(",");
        let order: AskOrder = text.parse().unwrap();
        prop_assert_eq!(order.to_string().parse::<AskOrder>().unwrap(), order);
    }
}

#[test]
fn parity_type_needs_two_values() {
    use pbf_core::reconstruction::is_parity_type;
    let two = FunctionTable::from_integers(3, &[0, 1, 1, 0, 1, 0, 0, 1]).unwrap();
    assert!(is_parity_type(&two));
    let three = FunctionTable::from_integers(3, &[0, 1, 1, 2, 1, 2, 2, 0]).unwrap();
    assert!(!is_parity_type(&three));
    let flat = FunctionTable::from_integers(2, &[3, 3, 3, 3]).unwrap();
    assert!(!is_parity_type(&flat));
}

#[test]
fn points_address_the_table() {
    let f = FunctionTable::from_integers(3, &[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
    let x = Point::from_coordinates(&[1, 0, 1]).unwrap();
    assert_eq!(f.evaluate(&x).unwrap(), Rational::from_integer(5));
}

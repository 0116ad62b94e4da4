use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlb_core::analysis::*;
use nlb_core::error::Error;
use nlb_core::strategies::StrategyId;
use nlb_core::{Bits, Game, Limits};

fn limits() -> Limits {
    Limits::default()
}

fn build(id: &str) -> nlb_core::Strategy {
    id.parse::<StrategyId>().unwrap().build().unwrap()
}

fn outcome(bits: &[&str]) -> Vec<Bits> {
    bits.iter().map(|b| b.parse().unwrap()).collect()
}

#[test]
fn chsh_nlb_distribution_on_one_one() {
    let d = exact_distribution(&build("chsh-nlb"), &Game::Chsh, &limits()).unwrap();
    let row = d.row(&[1, 1]).unwrap();
    assert_eq!(row.counts.len(), 2);
    assert_eq!(d.prob(&[1, 1], &outcome(&["0", "1"])), Ratio::new(1, 2));
    assert_eq!(d.prob(&[1, 1], &outcome(&["1", "0"])), Ratio::new(1, 2));
}

#[test]
fn ms_nlb_fixed_quadruple_has_two_outcomes() {
    let d = exact_distribution(&build("ms-nlb"), &Game::MagicSquare, &limits()).unwrap();
    assert_eq!(d.denominator, 2);
    for row in &d.rows {
        assert!(row.counts.len() <= 2);
        assert!(row.counts.values().all(|&c| c == 1 || c == 2));
    }
    // Input (1,1) 1-based.
    let row = d.row(&[0, 0]).unwrap();
    assert_eq!(row.counts.len(), 2);
}

#[test]
fn mermin_nlb_sim_four_outcomes_each_input() {
    let d = exact_distribution(&build("mermin-nlb-sim"), &Game::Mermin, &limits()).unwrap();
    assert_eq!(d.denominator, 4);
    for row in &d.rows {
        assert_eq!(row.counts.len(), 4);
        assert!(row.counts.values().all(|&c| c == 1));
    }
}

#[test]
fn ms_nlb_sim_alice_marginal_uniform_over_even_rows() {
    let d = exact_distribution(&build("ms-nlb-sim"), &Game::MagicSquare, &limits()).unwrap();
    for row in &d.rows {
        let m = d.marginal(&row.input, 0);
        assert_eq!(m.len(), 4);
        for (y, c) in m {
            assert!(!y.parity());
            assert_eq!(Ratio::new(c, d.denominator), Ratio::new(1, 4));
        }
    }
}

#[test]
fn distributions_sum_to_one() {
    for id in [
        "chsh-nlb",
        "ms-nlb-sim",
        "ms-comm-sim",
        "mermin-comm",
        "dj-nlb:2",
        "bmaj-nlb:2",
    ] {
        let sid: StrategyId = id.parse().unwrap();
        let d = exact_distribution(&sid.build().unwrap(), &sid.native_game(), &limits()).unwrap();
        for row in &d.rows {
            let total = row
                .counts
                .values()
                .fold(Ratio::from_integer(0u64), |acc, &c| acc + Ratio::new(c, d.denominator));
            assert_eq!(total, Ratio::from_integer(1), "{id}");
        }
    }
}

#[test]
fn no_signaling_results() {
    assert_eq!(no_signaling_check(&build("chsh-nlb"), &Game::Chsh, &limits()), Ok(None));
    assert_eq!(
        no_signaling_check(&build("ms-nlb-sim"), &Game::MagicSquare, &limits()),
        Ok(None)
    );
    assert!(matches!(
        no_signaling_check(&build("mermin-comm"), &Game::Mermin, &limits()),
        Err(Error::CommunicationUsed(_))
    ));
}

#[test]
fn classical_values() {
    let v = classical_value(&Game::Mermin, &limits()).unwrap();
    assert_eq!(v.value, Ratio::new(3, 4));
    assert_eq!(v.strategies, 64);
    assert_eq!(table_value(&Game::Mermin, &v.best, &limits()).unwrap(), v.value);
    let v = classical_value(&Game::bmaj(3).unwrap(), &limits()).unwrap();
    assert_eq!(v.strategies, 64);
    assert!(v.value < Ratio::from_integer(1));
    let v = classical_value(&Game::MagicSquare, &limits()).unwrap();
    // The best profile re-executes at the claimed value.
    let s = table_strategy("best", &Game::MagicSquare, v.best.clone()).unwrap();
    let d = exact_distribution(&s, &Game::MagicSquare, &limits()).unwrap();
    assert_eq!(d.win_probability(), Ratio::new(8, 9));
}

#[test]
fn classical_value_respects_search_limit() {
    let tight = Limits {
        max_search: 100,
        ..Limits::default()
    };
    assert!(matches!(
        classical_value(&Game::MagicSquare, &tight),
        Err(Error::EnumerationLimit { .. })
    ));
    assert!(matches!(
        classical_value(&Game::DeutschJozsa(2), &limits()),
        Err(Error::EnumerationLimit { .. })
    ));
}

/// Mixtures of deterministic CHSH strategies never beat the best pure one.
#[test]
fn chsh_mixed_strategies_do_not_beat_three_quarters() {
    let pure: Vec<Vec<AnswerTable>> = (0..16u64)
        .map(|g| {
            (0..2)
                .map(|p| {
                    let f = g >> (2 * p) & 3;
                    (0..2).map(|x| (x, Bits::bit(f >> x & 1 == 1))).collect()
                })
                .collect()
        })
        .collect();
    let values: Vec<Ratio<u64>> = pure
        .iter()
        .map(|t| table_value(&Game::Chsh, t, &limits()).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..500 {
        let weights: Vec<u64> = (0..16).map(|_| rng.gen_range(0..10)).collect();
        let total: u64 = weights.iter().sum::<u64>().max(1);
        let mixed = weights
            .iter()
            .zip(&values)
            .fold(Ratio::from_integer(0u64), |acc, (&w, v)| acc + Ratio::new(w, total) * v);
        assert!(mixed <= Ratio::new(3, 4));
    }
}

#[test]
fn search_zero_budget_matches_classical() {
    let s = impossibility_search(&Game::Chsh, Budget::Zero, &limits()).unwrap();
    assert_eq!(s.best, Ratio::new(3, 4));
    assert!(!s.perfect);
    assert_eq!(s.space(), 16);
    let s = impossibility_search(&Game::Chsh, Budget::OneNlb, &limits()).unwrap();
    assert!(s.perfect);
}

#[test]
fn search_witness_reexecutes_at_claimed_fraction() {
    for (game, budget) in [
        (Game::Mermin, Budget::OneNlb),
        (Game::multi_mermin(4).unwrap(), Budget::OneNlb),
        (Game::bmaj(3).unwrap(), Budget::Zero),
        (Game::Chsh, Budget::Zero),
    ] {
        let s = impossibility_search(&game, budget, &limits()).unwrap();
        let strategy = s.best_strategy.to_strategy().unwrap();
        let d = exact_distribution(&strategy, &game, &limits()).unwrap();
        assert_eq!(d.win_probability(), s.best, "{game} {budget}");
        assert_eq!(s.witness().is_some(), s.perfect);
    }
}

#[test]
fn search_positive_control_at_three() {
    let s = impossibility_search(&Game::Mermin, Budget::OneNlb, &limits()).unwrap();
    assert!(s.perfect);
    assert_eq!(s.pairings, 3);
    assert_eq!(s.candidates_per_pairing, 16_384);
    let w = s.witness().unwrap().to_strategy().unwrap();
    let r = verify_winning(&w, &Game::Mermin, SeedPolicy::Exhaustive, &limits()).unwrap();
    assert!(r.pass);
}

#[test]
fn search_rejects_unsupported_games() {
    assert!(matches!(
        impossibility_search(&Game::MagicSquare, Budget::OneNlb, &limits()),
        Err(Error::SearchUnsupported(_))
    ));
    assert!(matches!(
        impossibility_search(&Game::multi_mermin(6).unwrap(), Budget::OneNlb, &limits()),
        Err(Error::SearchUnsupported(_))
    ));
}

#[test]
fn verify_reports_first_counterexample() {
    // Always answering 0 loses CHSH only on (1,1).
    let zeros = vec![vec![(0, Bits::bit(false)), (1, Bits::bit(false))]; 2];
    let s = table_strategy("zeros", &Game::Chsh, zeros).unwrap();
    let r = verify_winning(&s, &Game::Chsh, SeedPolicy::Exhaustive, &limits()).unwrap();
    assert!(!r.pass);
    assert_eq!((r.checked, r.won), (4, 3));
    let c = r.counterexample.unwrap();
    assert_eq!(c.input, vec![1, 1]);
    assert_eq!(c.transcript.outputs, c.outcome);
}

#[test]
fn verify_enumeration_limits() {
    let s = build("dj-nlb:3");
    assert!(matches!(
        verify_winning(&s, &Game::DeutschJozsa(3), SeedPolicy::Exhaustive, &limits()),
        Err(Error::EnumerationLimit { .. })
    ));
    let tight = Limits {
        max_seed_bits: 5,
        ..Limits::default()
    };
    assert!(matches!(
        verify_winning(
            &build("multi-mermin-nlb:4"),
            &Game::MultiMermin(4),
            SeedPolicy::Exhaustive,
            &tight
        ),
        Err(Error::EnumerationLimit { .. })
    ));
}

#[test]
fn verify_rejects_arity_mismatch() {
    assert!(matches!(
        verify_winning(&build("ms-nlb"), &Game::Chsh, SeedPolicy::Exhaustive, &limits()),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn sampled_verification_is_reproducible() {
    let s = build("bmaj-nlb:4");
    let game = Game::bmaj(4).unwrap();
    let policy = SeedPolicy::Sample { k: 64, rng_seed: 9 };
    let a = policy_grid(&s, &game, policy, &limits()).unwrap();
    let b = policy_grid(&s, &game, policy, &limits()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 16 * 64);
    let r = verify_winning(&s, &game, policy, &limits()).unwrap();
    assert!(r.pass);
}

#[test]
fn report_json_shapes() {
    let v = classical_value(&Game::MagicSquare, &limits()).unwrap();
    let json = serde_json::to_value(Report::value(&Game::MagicSquare, &v)).unwrap();
    assert_eq!(json["value"], serde_json::json!({"num": 8, "den": 9}));
    assert_eq!(json["mode"], "value");
    assert!(json.get("strategy").is_none());

    let s = build("ms-nlb");
    let r = verify_winning(&s, &Game::MagicSquare, SeedPolicy::Exhaustive, &limits()).unwrap();
    let report = Report::verify(&Game::MagicSquare, "ms-nlb", "exhaustive", &r);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["resources"], serde_json::json!({"nlb": 1, "comm": 0}));
    assert_eq!(json["pass"], true);
    let back: Report = serde_json::from_value(json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn min_nlbs_bound_values() {
    assert_eq!((2..=7).map(min_nlbs_bound).collect::<Vec<_>>(), vec![1, 1, 2, 2, 3, 3]);
}

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twperm::subsets::Colex;
use twperm::*;

#[test]
fn example_trace_matches_fixture_bytes() {
    let state = fixtures::decoder("asl3_2").unwrap();
    let w = Word::parse("[4,7,1,6,7,8,2,5|4,4,6,1,8,3,5,2]", 8).unwrap();
    let r = state.decode(&w).unwrap();
    assert_eq!(r.log(), fixtures::EXAMPLE5_TRACE);
    assert_eq!(r.decoded().unwrap().to_string(), "(1,4,6,8,5,3)(2,7)");
}

#[test]
fn end_to_end_identity_on_every_fixture() {
    for key in fixtures::code_keys() {
        let state = fixtures::decoder(key).unwrap();
        let r_tw = state.params().r_tw;
        for seed in 1..=5u64 {
            for e in [r_tw, seed as usize % (r_tw + 1)] {
                let spec = ChannelSpec {
                    errors: e,
                    seed,
                    trials: 1000,
                };
                let s = simulate(&state, spec, Mode::Guaranteed).unwrap().stats;
                assert_eq!(s.successes, 1000, "{key} seed {seed} e {e}");
                assert!(s.max_attempts <= state.max_attempts());
            }
        }
    }
}

#[test]
fn identical_seeds_give_identical_statistics() {
    let state = fixtures::decoder("a7").unwrap();
    let spec = ChannelSpec {
        errors: 11,
        seed: 42,
        trials: 2000,
    };
    let a = simulate(&state, spec, Mode::Guaranteed).unwrap().stats;
    let b = simulate(&state, spec, Mode::Guaranteed).unwrap().stats;
    assert_eq!(a.to_string(), b.to_string());
    let c = simulate(&state, ChannelSpec { seed: 43, ..spec }, Mode::Guaranteed)
        .unwrap()
        .stats;
    assert_eq!(c.successes, 2000);
}

/// Every error pattern of weight at most two on every codeword.
#[test]
fn asl_decodes_every_pattern_of_weight_two() {
    let state = fixtures::decoder("asl3_2").unwrap();
    let code = state.code().clone();
    let order = code.g1().order().unwrap();
    let len = code.length();
    let mut patterns: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for pos in 0..len {
        for s in 1..8 {
            patterns.push(vec![(pos, s)]);
        }
    }
    for pair in Colex::new(len, 2) {
        for s in 1..8 {
            for t in 1..8 {
                patterns.push(vec![(pair[0], s), (pair[1], t)]);
            }
        }
    }
    assert_eq!(patterns.len(), 1 + 16 * 7 + 120 * 49);
    let failures: usize = (0..order)
        .into_par_iter()
        .map(|g| {
            let g = ElementId::from_index(g);
            let sent = code.encode_element(g).unwrap().word.symbols();
            patterns
                .iter()
                .filter(|pattern| {
                    let mut w = sent.clone();
                    // shift by s so the new symbol always differs
                    for &(pos, s) in pattern.iter() {
                        w[pos] = (w[pos] - 1 + s) % 8 + 1;
                    }
                    let r = state.decode(&Word::new(&w, 8).unwrap()).unwrap();
                    !matches!(r.outcome, Outcome::Success { element, .. } if element == g)
                })
                .count()
        })
        .sum();
    assert_eq!(failures, 0);
}

#[test]
fn asl_decodes_sampled_patterns_up_to_capability() {
    let state = fixtures::decoder("asl3_2").unwrap();
    for e in 3..=5 {
        let spec = ChannelSpec {
            errors: e,
            seed: 100 + e as u64,
            trials: 20_000,
        };
        assert_eq!(
            simulate(&state, spec, Mode::Guaranteed).unwrap().stats.successes,
            20_000
        );
    }
}

#[test]
fn corrupting_every_base_fails_rather_than_miscorrects() {
    for key in ["asl3_2", "m12", "s6"] {
        let state = fixtures::decoder(key).unwrap();
        let code = state.code();
        let n = code.degree();
        // a constant component repeats a symbol on every base
        let w = Word::new(&vec![1; code.length()], n).unwrap();
        let r = state.decode(&w).unwrap();
        assert!(!r.is_success());
        assert_eq!(r.attempts.len(), state.max_attempts());
        assert!(r.attempts.iter().all(|a| a.action == Action::SkipRepeat));
    }
}

#[test]
fn accepted_words_are_always_within_capability() {
    let state = fixtures::decoder("s6").unwrap();
    let code = state.code().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3000 {
        let symbols: Vec<usize> = (0..code.length()).map(|_| rng.random_range(1..=6)).collect();
        let w = Word::new(&symbols, 6).unwrap();
        let r = state.decode(&w).unwrap();
        if let Outcome::Success { codeword, .. } = &r.outcome {
            assert!(hamming_distance(&codeword.word, &w).unwrap() <= state.params().r_tw);
        }
    }
}

#[test]
fn stress_mode_reports_failures_without_asserting() {
    let state = fixtures::decoder("s6").unwrap();
    let spec = ChannelSpec {
        errors: 4,
        seed: 3,
        trials: 1000,
    };
    assert!(simulate(&state, spec, Mode::Guaranteed).is_err());
    let s = simulate(&state, spec, Mode::Stress).unwrap().stats;
    assert!(s.success_rate() < 1.0);
    assert_eq!(s.successes + s.failures + s.miscorrections, 1000);
}

#[test]
fn weak_ubb_is_refused_and_breach_is_reported() {
    let code = Arc::new(fixtures::code("m12").unwrap());
    let weak = fixtures::ubb("m12").unwrap().truncated(4);
    assert!(matches!(
        DecoderState::new(code.clone(), weak.clone()),
        Err(Error::InsufficientStrength { required: 3 })
    ));
    let params = code.correction_params().unwrap();
    let state = DecoderState::unchecked(code, weak, params).unwrap();
    let spec = ChannelSpec {
        errors: params.r_tw,
        seed: 11,
        trials: 5000,
    };
    match simulate(&state, spec, Mode::Guaranteed) {
        Err(Error::GuaranteeBreach {
            trial,
            seed,
            transcript,
        }) => {
            assert_eq!(seed, 11);
            assert!(transcript.starts_with("g="));
            assert!(transcript.lines().count() > 1);
            assert!(trial < 5000);
        }
        other => panic!("expected a breach, got {other:?}"),
    }
}

//! Exact-count error channel and Monte-Carlo decoding runs.
//!
//! Randomness is ChaCha8 (`rand_chacha`): trial `t` of a run seeded with `s`
//! uses `ChaCha8Rng::seed_from_u64(s)` with stream `t`, so any trial can be
//! replayed alone and results do not depend on thread scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoder::DecoderState;
use crate::error::{Error, Result};
use crate::group::ElementId;
use crate::perm::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelSpec {
    /// Exact number of corrupted positions per word.
    pub errors: usize,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Requires `errors <= r_tw`; any failure or excess attempt is a breach.
    Guaranteed,
    /// Any error count; outcomes are only tallied.
    Stress,
}

/// The generator for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Replaces exactly `errors` distinct positions, each by a different symbol.
pub fn inject_errors<R: Rng + ?Sized>(word: &Word, errors: usize, rng: &mut R) -> Result<Word> {
    if errors > word.len() {
        return Err(Error::Invalid(format!(
            "cannot corrupt {errors} positions of a word of length {}",
            word.len()
        )));
    }
    let q = word.alphabet_size();
    if errors > 0 && q < 2 {
        return Err(Error::Invalid("a one-letter alphabet admits no errors".into()));
    }
    let mut symbols = word.symbols();
    for pos in rand::seq::index::sample(rng, word.len(), errors) {
        let old = symbols[pos];
        let s = rng.random_range(1..q);
        symbols[pos] = if s >= old { s + 1 } else { s };
    }
    Word::new(&symbols, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimStats {
    pub trials: u64,
    pub successes: u64,
    /// Decoding gave up.
    pub failures: u64,
    /// Decoding returned the wrong codeword.
    pub miscorrections: u64,
    pub attempts: BTreeMap<usize, u64>,
    pub max_attempts: usize,
    pub attempt_bound: usize,
}

impl SimStats {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

impl fmt::Display for SimStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials\t{}", self.trials)?;
        writeln!(f, "successes\t{}", self.successes)?;
        writeln!(f, "failures\t{}", self.failures)?;
        writeln!(f, "miscorrections\t{}", self.miscorrections)?;
        writeln!(f, "success_rate\t{:.6}", self.success_rate())?;
        writeln!(f, "max_attempts\t{}", self.max_attempts)?;
        writeln!(f, "attempt_bound\t{}", self.attempt_bound)?;
        for (a, c) in &self.attempts {
            writeln!(f, "attempts={a}\t{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SimReport {
    pub stats: SimStats,
    pub elapsed: Duration,
}

struct Trial {
    outcome: TrialOutcome,
    attempts: usize,
}

#[derive(PartialEq, Eq)]
enum TrialOutcome {
    Success,
    Failure,
    Miscorrection,
}

fn run_trial(state: &DecoderState, errors: usize, seed: u64, t: u64) -> Result<(Trial, String)> {
    let code = state.code();
    let order = code.g1().order()?;
    let mut rng = trial_rng(seed, t);
    let g = ElementId::from_index(rng.random_range(0..order));
    let sent = code.encode_element(g)?;
    let received = inject_errors(&sent.word, errors, &mut rng)?;
    let result = state.decode(&received)?;
    let outcome = match &result.outcome {
        crate::decoder::Outcome::Success { element, .. } if *element == g => TrialOutcome::Success,
        crate::decoder::Outcome::Success { .. } => TrialOutcome::Miscorrection,
        crate::decoder::Outcome::Failure => TrialOutcome::Failure,
    };
    let transcript = format!(
        "g={} sent={} received={}\n{}",
        code.g1().elements()?.permutation(g),
        sent.word.display_components(code.degree()),
        received.display_components(code.degree()),
        result.log()
    );
    Ok((
        Trial {
            outcome,
            attempts: result.attempts.len(),
        },
        transcript,
    ))
}

/// Transmit, corrupt and decode `spec.trials` random codewords.
pub fn simulate(state: &DecoderState, spec: ChannelSpec, mode: Mode) -> Result<SimReport> {
    let params = state.params();
    if mode == Mode::Guaranteed && spec.errors > params.r_tw {
        return Err(Error::Invalid(format!(
            "{} errors exceed r_tw = {}; use stress mode",
            spec.errors, params.r_tw
        )));
    }
    // build the index tables up front so trials only read
    state.code().g1().elements()?;
    let start = Instant::now();
    let bound = state.max_attempts();
    let trials = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(state, spec.errors, spec.seed, t).map(|(trial, _)| (t, trial)))
        .collect::<Result<Vec<_>>>()?;
    let elapsed = start.elapsed();
    let mut stats = SimStats {
        trials: spec.trials,
        successes: 0,
        failures: 0,
        miscorrections: 0,
        attempts: BTreeMap::new(),
        max_attempts: 0,
        attempt_bound: bound,
    };
    let mut first_breach = None;
    for (t, trial) in &trials {
        match trial.outcome {
            TrialOutcome::Success => stats.successes += 1,
            TrialOutcome::Failure => stats.failures += 1,
            TrialOutcome::Miscorrection => stats.miscorrections += 1,
        }
        *stats.attempts.entry(trial.attempts).or_default() += 1;
        stats.max_attempts = stats.max_attempts.max(trial.attempts);
        let breach = trial.outcome != TrialOutcome::Success || trial.attempts > bound;
        if breach && first_breach.is_none() {
            first_breach = Some(*t);
        }
    }
    if mode == Mode::Guaranteed {
        if let Some(t) = first_breach {
            let (_, transcript) = run_trial(state, spec.errors, spec.seed, t)?;
            return Err(Error::GuaranteeBreach {
                trial: t,
                seed: spec.seed,
                transcript,
            });
        }
    }
    Ok(SimReport { stats, elapsed })
}

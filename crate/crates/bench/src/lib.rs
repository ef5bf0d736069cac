//! Shared inputs for the benchmarks.

use twperm::channel::trial_rng;
use twperm::{inject_errors, DecoderState, ElementId, Result, Word};

/// `count` codewords of `state`'s code, each with exactly `errors` errors.
pub fn corrupted_words(state: &DecoderState, errors: usize, count: u64, seed: u64) -> Result<Vec<Word>> {
    let code = state.code();
    let order = code.g1().order()?;
    (0..count)
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let g = ElementId::from_index((t as usize * 7919) % order);
            inject_errors(&code.encode_element(g)?.word, errors, &mut rng)
        })
        .collect()
}

//! Uncovering-by-bases decoding of twisted permutation codes.
//!
//! For each base `B` of the UBB in order, and each component `i` in order,
//! the symbols of the received component at the positions `psi_i(B)` are
//! read. Distinct symbols identify at most one `h_i` in `G_i`; its preimage
//! in `G_1` is re-encoded and accepted when within `r_tw` of the received
//! word.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{Base, BaseIndex, ElementId};
use crate::perm::{Permutation, Word};
use crate::twisted::{Codeword, CorrectionParams, TwistedCode};
use crate::ubb::Ubb;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// A symbol repeats among the base positions.
    SkipRepeat,
    /// No group element sends the base to the symbols read.
    SkipNoMatch,
    Reject {
        distance: usize,
    },
    Accept {
        distance: usize,
    },
}

/// One attempt; `base` and `component` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub base: usize,
    pub component: usize,
    pub action: Action,
}

impl fmt::Display for Attempt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base={} comp={} action=", self.base, self.component)?;
        match self.action {
            Action::SkipRepeat => write!(f, "skip-repeat"),
            Action::SkipNoMatch => write!(f, "skip-nomatch"),
            Action::Reject { distance } => write!(f, "reject d={distance}"),
            Action::Accept { distance } => write!(f, "accept d={distance}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Success {
        element: ElementId,
        g: Permutation,
        codeword: Codeword,
    },
    /// Every attempt was skipped or rejected: more than `r_tw` errors.
    Failure,
}

#[derive(Clone, Debug)]
pub struct DecodeResult {
    pub outcome: Outcome,
    pub attempts: Vec<Attempt>,
}

impl DecodeResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success { .. })
    }

    pub fn decoded(&self) -> Option<&Permutation> {
        match &self.outcome {
            Outcome::Success { g, .. } => Some(g),
            Outcome::Failure => None,
        }
    }

    /// One line per attempt, newline-terminated.
    pub fn log(&self) -> String {
        self.attempts.iter().map(|a| format!("{a}\n")).collect()
    }
}

/// Everything the receiver knows: the code, the UBB for `G_1`, and the
/// correction capability.
pub struct DecoderState {
    code: Arc<TwistedCode>,
    ubb: Ubb,
    params: CorrectionParams,
    /// `bases[row][i]` is `psi_i(B_row)` as 0-based points.
    bases: Vec<Vec<Vec<usize>>>,
    indexes: Vec<Vec<OnceLock<Arc<BaseIndex>>>>,
}

impl fmt::Debug for DecoderState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecoderState")
            .field("code", &self.code.name())
            .field("ubb_rows", &self.ubb.len())
            .field("params", &self.params)
            .finish()
    }
}

impl DecoderState {
    /// Builds the state and refuses a UBB too weak for the guarantee.
    pub fn new(code: Arc<TwistedCode>, ubb: Ubb) -> Result<Self> {
        let params = code.correction_params()?;
        Self::with_params(code, ubb, params)
    }

    /// As [`DecoderState::new`] with precomputed parameters.
    pub fn with_params(code: Arc<TwistedCode>, ubb: Ubb, params: CorrectionParams) -> Result<Self> {
        let state = Self::unchecked(code, ubb, params)?;
        if !state.guarantee_check()? {
            return Err(Error::InsufficientStrength {
                required: params.r_prime,
            });
        }
        Ok(state)
    }

    /// Builds the state without the strength gate (stress testing). Every
    /// row must still be a base, and so must its image in each component.
    pub fn unchecked(code: Arc<TwistedCode>, ubb: Ubb, params: CorrectionParams) -> Result<Self> {
        ubb.check_bases(code.g1())?;
        let mut bases = Vec::with_capacity(ubb.len());
        for b in ubb.bases() {
            let mut row = Vec::with_capacity(code.lambda());
            for c in code.components() {
                let moved: Base = c.psi().apply_base(b);
                if !c.group().is_base(&moved)? {
                    return Err(Error::NotBase(moved.points().to_vec()));
                }
                row.push(moved.points().iter().map(|x| x - 1).collect());
            }
            bases.push(row);
        }
        let indexes = (0..ubb.len())
            .map(|_| (0..code.lambda()).map(|_| OnceLock::new()).collect())
            .collect();
        Ok(DecoderState {
            code,
            ubb,
            params,
            bases,
            indexes,
        })
    }

    pub fn code(&self) -> &Arc<TwistedCode> {
        &self.code
    }

    pub fn ubb(&self) -> &Ubb {
        &self.ubb
    }

    pub fn params(&self) -> CorrectionParams {
        self.params
    }

    /// Upper bound on attempts, `λ|U|`.
    pub fn max_attempts(&self) -> usize {
        self.code.lambda() * self.ubb.len()
    }

    /// Whether the UBB really has strength `r'`: then some component has at
    /// most `r'` errors and some base avoids them.
    pub fn guarantee_check(&self) -> Result<bool> {
        let r = self.params.r_prime;
        let n = self.code.degree();
        Ok(self.ubb.verify_strength_at(n, r, crate::ubb::STRENGTH_BUDGET)?.holds())
    }

    fn index(&self, row: usize, comp: usize) -> Result<&Arc<BaseIndex>> {
        if let Some(ix) = self.indexes[row][comp].get() {
            return Ok(ix);
        }
        let c = self.code.component(comp);
        let base = Base::new(self.bases[row][comp].iter().map(|x| x + 1).collect())?;
        let built = c.group().base_index(&base)?;
        Ok(self.indexes[row][comp].get_or_init(|| built))
    }

    pub fn decode(&self, w: &Word) -> Result<DecodeResult> {
        let n = self.code.degree();
        if w.len() != self.code.length() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.code.length(),
            });
        }
        if w.alphabet_size() != n {
            return Err(Error::Invalid(format!(
                "word is over {} symbols, the code over {n}",
                w.alphabet_size()
            )));
        }
        let raw = w.raw();
        let mut attempts = Vec::with_capacity(self.max_attempts());
        for (row, comps) in self.bases.iter().enumerate() {
            for (i, pts) in comps.iter().enumerate() {
                let part = &raw[i * n..(i + 1) * n];
                let mut seen = 0u64;
                let repeated = pts.iter().any(|&x| {
                    let bit = 1u64 << (part[x] - 1);
                    let hit = seen & bit != 0;
                    seen |= bit;
                    hit
                });
                let mut record = |action| {
                    attempts.push(Attempt {
                        base: row + 1,
                        component: i + 1,
                        action,
                    })
                };
                if repeated {
                    record(Action::SkipRepeat);
                    continue;
                }
                let Some(h) = self.index(row, i)?.lookup_raw(pts.iter().map(|&x| part[x] - 1)) else {
                    record(Action::SkipNoMatch);
                    continue;
                };
                let g = self.code.component(i).alpha().map_inverse(h);
                let distance = self.code.distance_to(g, w)?;
                if distance <= self.params.r_tw {
                    record(Action::Accept { distance });
                    let codeword = self.code.encode_element(g)?;
                    return Ok(DecodeResult {
                        outcome: Outcome::Success {
                            element: g,
                            g: self.code.g1().elements()?.permutation(g),
                            codeword,
                        },
                        attempts,
                    });
                }
                record(Action::Reject { distance });
            }
        }
        Ok(DecodeResult {
            outcome: Outcome::Failure,
            attempts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;
    use crate::twisted::ComponentSpec;

    fn asl32() -> Arc<TwistedCode> {
        let parse = |s: &str| Permutation::parse(s, 8).unwrap();
        let gens = [
            "(2,5)(4,7)",
            "(2,3,4)(5,6,8)",
            "(1,2)(3,4)(5,6)(7,8)",
            "(1,3)(2,4)(5,7)(6,8)",
            "(1,5)(2,6)(3,7)(4,8)",
        ]
        .map(parse)
        .to_vec();
        let g = Arc::new(PermutationGroup::new("ASL(3,2)", 8, gens).unwrap());
        let images = [
            "(1,3)(2,7)(4,5)(6,8)",
            "(2,3,4)(5,6,8)",
            "(1,2)(3,4)(5,6)(7,8)",
            "(1,3)(2,4)(5,7)(6,8)",
            "(1,5)(2,6)(3,7)(4,8)",
        ]
        .map(parse)
        .to_vec();
        let spec = ComponentSpec {
            group: g.clone(),
            generator_images: images,
            psi: None,
        };
        Arc::new(TwistedCode::new("ASL", g, vec![spec], false).unwrap())
    }

    fn asl_ubb() -> Ubb {
        let rows: [&[usize]; 6] = [
            &[1, 2, 3, 5],
            &[4, 5, 6, 7],
            &[1, 4, 6, 8],
            &[1, 5, 7, 8],
            &[2, 3, 4, 6],
            &[2, 3, 7, 8],
        ];
        Ubb::new(
            "ASL(3,2)",
            2,
            rows.iter().map(|r| Base::new(r.to_vec()).unwrap()).collect(),
        )
    }

    #[test]
    fn clean_word_decodes_on_first_attempt() {
        let code = asl32();
        let state = DecoderState::new(code.clone(), asl_ubb()).unwrap();
        let g = Permutation::parse("(1,4,6,8,5,3)(2,7)", 8).unwrap();
        let w = code.encode(&g).unwrap().word;
        let r = state.decode(&w).unwrap();
        assert_eq!(r.decoded(), Some(&g));
        assert_eq!(r.attempts.len(), 1);
        assert_eq!(r.log(), "base=1 comp=1 action=accept d=0\n");
    }

    #[test]
    fn example_trace() {
        let state = DecoderState::new(asl32(), asl_ubb()).unwrap();
        let w = Word::parse("[4,7,1,6,7,8,2,5|4,4,6,1,8,3,5,2]", 8).unwrap();
        let r = state.decode(&w).unwrap();
        assert_eq!(
            r.log(),
            "base=1 comp=1 action=skip-repeat\nbase=1 comp=2 action=skip-repeat\n\
             base=2 comp=1 action=reject d=11\nbase=2 comp=2 action=accept d=2\n"
        );
        assert_eq!(r.decoded().unwrap().to_string(), "(1,4,6,8,5,3)(2,7)");
    }

    #[test]
    fn malformed_words_are_errors() {
        let state = DecoderState::new(asl32(), asl_ubb()).unwrap();
        assert!(state.decode(&Word::new(&[1, 2, 3], 8).unwrap()).is_err());
        assert!(state.decode(&Word::new(&[1; 16], 9).unwrap()).is_err());
    }

    #[test]
    fn truncated_ubb_fails_the_gate() {
        let err = DecoderState::new(asl32(), asl_ubb().truncated(3)).unwrap_err();
        assert!(matches!(err, Error::InsufficientStrength { required: 2 }));
    }
}

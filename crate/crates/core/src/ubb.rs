//! Uncoverings-by-bases and the covering designs they come from.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Base, PermutationGroup};
use crate::subsets::{binomial, Colex};
use crate::twisted::PointBijection;

/// Default ceiling on the number of subsets an exhaustive check may visit.
pub const STRENGTH_BUDGET: u128 = 10_000_000;

/// Default sample count for the Monte-Carlo strength check.
pub const STRENGTH_SAMPLES: usize = 1_000_000;

/// An ordered list of bases with a claimed strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ubb {
    group_name: String,
    strength: usize,
    bases: Vec<Base>,
}

/// Outcome of an exhaustive strength check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strength {
    Certified,
    /// The first r-subset (1-based, colex order) meeting every base.
    Witness(Vec<usize>),
}

impl Strength {
    pub fn holds(&self) -> bool {
        matches!(self, Strength::Certified)
    }
}

/// Outcome of the sampled strength check. Never a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledStrength {
    pub samples: usize,
    pub witness: Option<Vec<usize>>,
}

impl std::fmt::Display for SampledStrength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.witness {
            None => write!(f, "no witness in {} samples (sampled, not certified)", self.samples),
            Some(w) => write!(f, "witness {w:?}"),
        }
    }
}

impl Ubb {
    pub fn new(group_name: impl Into<String>, strength: usize, bases: Vec<Base>) -> Self {
        Ubb {
            group_name: group_name.into(),
            strength,
            bases,
        }
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn with_strength(mut self, strength: usize) -> Self {
        self.strength = strength;
        self
    }

    pub fn truncated(&self, rows: usize) -> Ubb {
        Ubb {
            group_name: self.group_name.clone(),
            strength: self.strength,
            bases: self.bases[..rows.min(self.bases.len())].to_vec(),
        }
    }

    /// Checks every row against `group`; the first non-base is the error.
    pub fn check_bases(&self, group: &PermutationGroup) -> Result<()> {
        for b in &self.bases {
            if !group.is_base(b)? {
                return Err(Error::NotBase(b.points().to_vec()));
            }
        }
        Ok(())
    }

    /// Whether the rows are pairwise disjoint. `m` disjoint bases have
    /// strength `m - 1` by counting.
    pub fn is_pairwise_disjoint(&self) -> bool {
        let mut seen = 0u64;
        self.bases.iter().all(|b| {
            let m = b.mask();
            let ok = seen & m == 0;
            seen |= m;
            ok
        })
    }

    /// Exhaustive check of the claimed strength on `n` points.
    pub fn verify_strength(&self, n: usize) -> Result<Strength> {
        self.verify_strength_at(n, self.strength, STRENGTH_BUDGET)
    }

    /// Exhaustive check that every `r`-subset of `{1..n}` misses some row.
    /// Pairwise-disjoint rows certify every `r` below their count without
    /// enumeration; the witness of a failure is the first in colex order.
    pub fn verify_strength_at(&self, n: usize, r: usize, budget: u128) -> Result<Strength> {
        for b in &self.bases {
            b.check_within(n)?;
        }
        // r points meet at most r disjoint rows
        if r < self.bases.len() && self.is_pairwise_disjoint() {
            return Ok(Strength::Certified);
        }
        let subsets = binomial(n, r);
        if subsets > budget {
            return Err(Error::StrengthBudget { subsets, budget });
        }
        let masks = self.masks_by_max_point();
        let misses = |set: &[usize]| -> bool {
            let s = set.iter().fold(0u64, |m, &x| m | 1 << x);
            masks.iter().any(|&b| b & s == 0)
        };
        if r == 0 || r > n {
            // one empty subset, or none at all
            return Ok(if r > n || !masks.is_empty() {
                Strength::Certified
            } else {
                Strength::Witness(vec![])
            });
        }
        let witness = (r - 1..n)
            .into_par_iter()
            .find_map_first(|top| Colex::with_top(top, r).find(|s| !misses(s)));
        Ok(match witness {
            None => Strength::Certified,
            Some(s) => Strength::Witness(s.into_iter().map(|x| x + 1).collect()),
        })
    }

    /// Monte-Carlo variant for instances beyond the exhaustive budget.
    pub fn sample_strength(&self, n: usize, r: usize, samples: usize, seed: u64) -> Result<SampledStrength> {
        for b in &self.bases {
            b.check_within(n)?;
        }
        if r > n {
            return Ok(SampledStrength {
                samples: 0,
                witness: None,
            });
        }
        let masks = self.masks_by_max_point();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut pts = rand::seq::index::sample(&mut rng, n, r).into_vec();
            let s = pts.iter().fold(0u64, |m, &x| m | 1 << x);
            if !masks.iter().any(|&b| b & s == 0) {
                pts.sort_unstable();
                return Ok(SampledStrength {
                    samples,
                    witness: Some(pts.into_iter().map(|x| x + 1).collect()),
                });
            }
        }
        Ok(SampledStrength { samples, witness: None })
    }

    // Rows with small points first: early colex subsets hit them sooner.
    fn masks_by_max_point(&self) -> Vec<u64> {
        let mut rows: Vec<&Base> = self.bases.iter().collect();
        rows.sort_by_key(|b| b.points().iter().max().copied().unwrap_or(0));
        rows.iter().map(|b| b.mask()).collect()
    }

    /// The covering design formed by the complements of the rows.
    pub fn complement_cover(&self, n: usize) -> Result<CoveringDesign> {
        let k = self.bases.first().map_or(n, |b| n - b.len());
        let blocks = self.bases.iter().map(|b| complement(n, b.points())).collect();
        CoveringDesign::new(n, k, self.strength, blocks)
    }
}

fn complement(n: usize, points: &[usize]) -> Vec<usize> {
    (1..=n).filter(|x| !points.contains(x)).collect()
}

/// An `(n, k, r)` covering design: `k`-subsets of `{1..n}` such that every
/// `r`-subset lies in some block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringDesign {
    n: usize,
    k: usize,
    r: usize,
    blocks: Vec<Vec<usize>>,
}

impl CoveringDesign {
    /// Validates the block shapes; coverage itself is checked by [`CoveringDesign::verify`].
    pub fn new(n: usize, k: usize, r: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        crate::perm::check_degree(n)?;
        for b in &mut blocks {
            b.sort_unstable();
            if b.len() != k {
                return Err(Error::Invalid(format!("block {b:?} does not have size {k}")));
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("block {b:?} repeats a point")));
            }
            if let Some(&x) = b.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
        }
        Ok(CoveringDesign { n, k, r, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn strength(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Complements of the blocks as bases, without checking them.
    pub fn complements(&self) -> Vec<Base> {
        self.blocks
            .iter()
            .map(|b| Base::new(complement(self.n, b)).expect("complement of a valid block"))
            .collect()
    }

    /// Exhaustive coverage check; a witness is an uncovered `r`-subset.
    pub fn verify(&self) -> Result<Strength> {
        Ubb::new("", self.r, self.complements()).verify_strength(self.n)
    }

    /// The design with every point `x` renamed `sigma(x)`.
    pub fn relabelled(&self, sigma: &PointBijection) -> CoveringDesign {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut b: Vec<usize> = b.iter().map(|&x| sigma.apply(x)).collect();
                b.sort_unstable();
                b
            })
            .collect();
        CoveringDesign { blocks, ..self.clone() }
    }
}

/// Complements of the blocks, each checked to be a base of `group`.
pub fn ubb_from_cover(cover: &CoveringDesign, group: &PermutationGroup) -> Result<Ubb> {
    if cover.n != group.degree() {
        return Err(Error::DegreeMismatch {
            left: cover.n,
            right: group.degree(),
        });
    }
    let bases = cover.complements();
    for (block, base) in cover.blocks.iter().zip(&bases) {
        if !group.is_base(base)? {
            return Err(Error::CoverBlockNotBase { block: block.clone() });
        }
    }
    Ok(Ubb::new(group.name(), cover.r, bases))
}

/// Search for a relabelling `sigma` such that every complement of
/// `sigma(block)` is a base of `group`.
///
/// The identity is tried first at no cost; each of the `attempts`
/// randomised restarts then starts from a random bijection and repairs it
/// greedily by swapping a point of a failing complement with a point
/// outside it.
pub fn relabel_search(
    cover: &CoveringDesign,
    group: &PermutationGroup,
    attempts: usize,
    seed: u64,
) -> Result<Option<PointBijection>> {
    let n = cover.n;
    if n != group.degree() {
        return Err(Error::DegreeMismatch {
            left: n,
            right: group.degree(),
        });
    }
    // Work with the complements directly: sigma maps complement rows.
    let rows: Vec<Vec<usize>> = cover.blocks.iter().map(|b| complement(n, b)).collect();
    let failing = |sigma: &[usize]| -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let base = Base::new(row.iter().map(|&x| sigma[x - 1]).collect())?;
            if !group.is_base(&base)? {
                bad.push(i);
            }
        }
        Ok(bad)
    };
    let mut sigma: Vec<usize> = (1..=n).collect();
    if failing(&sigma)?.is_empty() {
        return Ok(Some(PointBijection::identity(n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 40 * n * rows.len().max(1);
    for _ in 0..attempts {
        sigma.shuffle(&mut rng);
        let mut bad = failing(&sigma)?;
        for _ in 0..steps {
            if bad.is_empty() {
                break;
            }
            let row = &rows[bad[rng.random_range(0..bad.len())]];
            let inside = row[rng.random_range(0..row.len())] - 1;
            let outside = rng.random_range(0..n);
            if row.contains(&(outside + 1)) {
                continue;
            }
            sigma.swap(inside, outside);
            let next = failing(&sigma)?;
            // accept sideways moves now and then to leave plateaus
            if next.len() < bad.len() || (next.len() == bad.len() && rng.random_bool(0.3)) {
                bad = next;
            } else {
                sigma.swap(inside, outside);
            }
        }
        if bad.is_empty() {
            return Ok(Some(PointBijection::from_list(&sigma)?));
        }
    }
    Ok(None)
}

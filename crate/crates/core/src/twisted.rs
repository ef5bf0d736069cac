//! Twisted permutation codes: the codewords are `[rho_1(g) | ... | rho_λ(g)]`
//! for `g` in an abstract group realised by a distinguished permutation
//! group `G_1` and isomorphisms `alpha_i: G_1 -> G_i`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{find_isomorphism_violation, Base, Distance, ElementId, PermutationGroup};
use crate::morphism::extend_homomorphism;
use crate::perm::{Permutation, Word};

/// A bijection of `{1..n}` relating the point sets of two components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointBijection(Permutation);

impl PointBijection {
    pub fn identity(n: usize) -> Self {
        PointBijection(Permutation::identity(n))
    }

    pub fn from_list(list: &[usize]) -> Result<Self> {
        Ok(PointBijection(Permutation::from_list(list)?))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        PointBijection(p)
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.image(x)
    }

    pub fn apply_base(&self, base: &Base) -> Base {
        Base::new(base.points().iter().map(|&x| self.apply(x)).collect()).expect("bijection keeps points distinct")
    }

    pub fn inverse(&self) -> Self {
        PointBijection(self.0.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn list_form(&self) -> Vec<usize> {
        self.0.list_form()
    }
}

impl fmt::Debug for PointBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A group isomorphism materialised as a total element table.
pub struct IsomorphismTable {
    source: Arc<PermutationGroup>,
    target: Arc<PermutationGroup>,
    generator_images: Vec<Permutation>,
    forward: Vec<ElementId>,
    backward: Vec<ElementId>,
}

impl IsomorphismTable {
    /// Extends generator images to the whole of `source`, checking that the
    /// result is a well-defined bijective homomorphism onto `target`.
    pub fn build(
        source: Arc<PermutationGroup>,
        target: Arc<PermutationGroup>,
        generator_images: Vec<Permutation>,
    ) -> Result<Self> {
        let forward = extend_homomorphism(&source, &target, &generator_images)?;
        let target_len = target.order()?;
        if forward.len() != target_len {
            return Err(Error::NotFaithful);
        }
        let mut backward = vec![ElementId::IDENTITY; target_len];
        let mut hit = vec![false; target_len];
        for (x, &y) in forward.iter().enumerate() {
            if std::mem::replace(&mut hit[y.index()], true) {
                return Err(Error::NotFaithful);
            }
            backward[y.index()] = ElementId::from_index(x);
        }
        Ok(IsomorphismTable {
            source,
            target,
            generator_images,
            forward,
            backward,
        })
    }

    pub fn identity(group: Arc<PermutationGroup>) -> Result<Self> {
        let gens = group.generators().to_vec();
        IsomorphismTable::build(group.clone(), group, gens)
    }

    pub fn source(&self) -> &Arc<PermutationGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermutationGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn map(&self, x: ElementId) -> ElementId {
        self.forward[x.index()]
    }

    pub fn map_inverse(&self, y: ElementId) -> ElementId {
        self.backward[y.index()]
    }

    pub fn is_identity(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) && self.forward.iter().enumerate().all(|(i, e)| e.index() == i)
    }
}

/// Defining data for one component beyond the first.
pub struct ComponentSpec {
    pub group: Arc<PermutationGroup>,
    /// Images in `group` of the distinguished group's generators.
    pub generator_images: Vec<Permutation>,
    /// Defaults to the identity.
    pub psi: Option<PointBijection>,
}

pub struct Component {
    alpha: IsomorphismTable,
    psi: PointBijection,
}

impl Component {
    pub fn group(&self) -> &Arc<PermutationGroup> {
        self.alpha.target()
    }

    pub fn alpha(&self) -> &IsomorphismTable {
        &self.alpha
    }

    pub fn psi(&self) -> &PointBijection {
        &self.psi
    }
}

/// A codeword and its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub components: Vec<Permutation>,
    pub word: Word,
}

impl Codeword {
    /// Each of the `n` symbols appears exactly `λ` times.
    pub fn is_frequency_balanced(&self) -> bool {
        let lambda = self.components.len();
        self.word.symbol_counts().iter().all(|&c| c == lambda)
    }
}

/// Correction capability of a twisted code and the per-component UBB
/// strength it requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrectionParams {
    pub r_tw: usize,
    pub r_prime: usize,
}

/// `r_tw = ⌊(δ - 1)/2⌋`, `r' = ⌊r_tw / λ⌋`.
pub fn correction_params(delta: usize, lambda: usize) -> CorrectionParams {
    let r_tw = delta.saturating_sub(1) / 2;
    CorrectionParams {
        r_tw,
        r_prime: r_tw / lambda,
    }
}

/// For a group of minimum distance `d` repeated `λ` times, returns the
/// group's own capability `r` and the UBB strength `r'` demanded by the
/// repetition code. The two always agree.
pub fn repetition_strength_check(d: usize, lambda: usize) -> (usize, usize) {
    let r = d.saturating_sub(1) / 2;
    (r, correction_params(lambda * d, lambda).r_prime)
}

pub struct TwistedCode {
    name: String,
    components: Vec<Component>,
}

impl fmt::Debug for TwistedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistedCode")
            .field("name", &self.name)
            .field("lambda", &self.lambda())
            .field("degree", &self.degree())
            .finish()
    }
}

impl TwistedCode {
    /// Builds `Tw(G, I)` with `g1` as the first component and the given
    /// components after it. With `verify_psi`, each `(psi_i, alpha_i)` must be
    /// a permutational isomorphism.
    pub fn new(
        name: impl Into<String>,
        g1: Arc<PermutationGroup>,
        others: Vec<ComponentSpec>,
        verify_psi: bool,
    ) -> Result<Self> {
        let n = g1.degree();
        let mut components = vec![Component {
            alpha: IsomorphismTable::identity(g1.clone())?,
            psi: PointBijection::identity(n),
        }];
        for spec in others {
            if spec.group.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: spec.group.degree(),
                    right: n,
                });
            }
            let psi = spec.psi.unwrap_or_else(|| PointBijection::identity(n));
            if psi.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: psi.degree(),
                    right: n,
                });
            }
            if verify_psi {
                if let Some(v) = find_isomorphism_violation(&g1, &spec.group, &spec.generator_images, &psi)? {
                    return Err(Error::Invalid(format!(
                        "psi is not equivariant: generator {} at point {}",
                        v.generator, v.point
                    )));
                }
            }
            let alpha = IsomorphismTable::build(g1.clone(), spec.group, spec.generator_images)?;
            components.push(Component { alpha, psi });
        }
        Ok(TwistedCode {
            name: name.into(),
            components,
        })
    }

    /// `Rep_λ(G)`: every component is `G` itself.
    pub fn repetition(g1: Arc<PermutationGroup>, lambda: usize) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::Invalid("λ must be at least 1".into()));
        }
        let others = (1..lambda)
            .map(|_| ComponentSpec {
                group: g1.clone(),
                generator_images: g1.generators().to_vec(),
                psi: None,
            })
            .collect();
        TwistedCode::new(format!("Rep{lambda}({})", g1.name()), g1, others, false)
    }

    /// All components share `g1`'s image; component `i` twists by the
    /// automorphism given by `generator_images[i]`.
    pub fn from_automorphisms(
        name: impl Into<String>,
        g1: Arc<PermutationGroup>,
        generator_images: Vec<Vec<Permutation>>,
    ) -> Result<Self> {
        let others = generator_images
            .into_iter()
            .map(|imgs| ComponentSpec {
                group: g1.clone(),
                generator_images: imgs,
                psi: None,
            })
            .collect();
        TwistedCode::new(name, g1, others, false)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.g1().degree()
    }

    pub fn length(&self) -> usize {
        self.lambda() * self.degree()
    }

    pub fn g1(&self) -> &Arc<PermutationGroup> {
        self.components[0].alpha.source()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    /// Number of codewords, `|G|`.
    pub fn size(&self) -> Result<usize> {
        self.g1().order()
    }

    pub fn encode(&self, g: &Permutation) -> Result<Codeword> {
        let id = self
            .g1()
            .elements()?
            .find(g)
            .filter(|_| g.degree() == self.degree())
            .ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        self.encode_element(id)
    }

    pub fn encode_element(&self, g: ElementId) -> Result<Codeword> {
        let mut components = Vec::with_capacity(self.lambda());
        for c in &self.components {
            components.push(c.group().elements()?.permutation(c.alpha.map(g)));
        }
        let parts: Vec<Word> = components.iter().map(|p| p.as_word()).collect();
        Ok(Codeword {
            word: Word::concat(&parts)?,
            components,
        })
    }

    /// Hamming distance from the codeword of `g` to `w`, without building it.
    pub fn distance_to(&self, g: ElementId, w: &Word) -> Result<usize> {
        if w.len() != self.length() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.length(),
            });
        }
        let n = self.degree();
        let raw = w.raw();
        let mut d = 0;
        for (i, c) in self.components.iter().enumerate() {
            let img = c.group().elements()?.images(c.alpha.map(g));
            d += img
                .iter()
                .zip(&raw[i * n..(i + 1) * n])
                .filter(|(&a, &b)| a + 1 != b)
                .count();
        }
        Ok(d)
    }

    /// Minimum distance of the code, by one scan over non-identity elements:
    /// `d(g, h) = Σ_i (n - fix(alpha_i(g h^-1)))`.
    pub fn delta_tw(&self) -> Result<Distance> {
        let n = self.degree();
        let t1 = self.g1().elements()?;
        let tables = self
            .components
            .iter()
            .map(|c| c.group().elements())
            .collect::<Result<Vec<_>>>()?;
        let best = (1..t1.len())
            .into_par_iter()
            .map(|x| {
                let x = ElementId::from_index(x);
                self.components
                    .iter()
                    .zip(&tables)
                    .map(|(c, t)| n - t.fix_count(c.alpha.map(x)))
                    .sum::<usize>()
            })
            .min();
        Ok(best.map_or(Distance::Infinite, Distance::Finite))
    }

    /// `λ` times the smallest minimum distance among the component images.
    pub fn delta_rep(&self) -> Result<Distance> {
        let mut best: Option<usize> = None;
        for c in &self.components {
            if let Distance::Finite(d) = c.group().min_distance()? {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        Ok(best.map_or(Distance::Infinite, |d| Distance::Finite(self.lambda() * d)))
    }

    pub fn correction_params(&self) -> Result<CorrectionParams> {
        match self.delta_tw()? {
            Distance::Finite(d) => Ok(correction_params(d, self.lambda())),
            Distance::Infinite => Err(Error::Invalid(
                "a code with one codeword has no finite correction capability".into(),
            )),
        }
    }
}

//! Finite permutation groups given by generators, enumerated in full.
//!
//! Every group here is small enough to list: the element table is a flat
//! breadth-first closure of the generators, and every query (minimum
//! distance, base checks, base indexes) is answered by scanning or hashing
//! that table.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::{check_degree, fix_count, order_of, Permutation};
use crate::subsets::Colex;
use crate::twisted::PointBijection;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_BUDGET: usize = 1 << 21;

/// Index of an element in its group's enumeration. Id 0 is the identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementId(pub(crate) u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        ElementId(i as u32)
    }
}

/// Minimum distance of a code; the trivial code has none.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Distance {
    Finite(usize),
    /// Only one codeword. Reported numerically as `length + 1`.
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// The value with `Infinite` mapped to `length + 1`.
    pub fn or_sentinel(self, length: usize) -> usize {
        self.finite().unwrap_or(length + 1)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// An ordered set of distinct points, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base {
    points: Vec<usize>,
}

impl Base {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        let mut seen = 0u128;
        for &x in &points {
            if x == 0 || x > 128 {
                return Err(Error::PointOutOfRange { point: x, degree: 128 });
            }
            if seen & (1 << (x - 1)) != 0 {
                return Err(Error::Invalid(format!("base repeats point {x}")));
            }
            seen |= 1 << (x - 1);
        }
        Ok(Base { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Zero-based bit mask of the points.
    pub fn mask(&self) -> u64 {
        self.points.iter().fold(0, |m, &x| m | 1 << (x - 1))
    }

    pub(crate) fn check_within(&self, degree: usize) -> Result<()> {
        match self.points.iter().find(|&&x| x > degree) {
            Some(&x) => Err(Error::PointOutOfRange { point: x, degree }),
            None => Ok(()),
        }
    }

    pub(crate) fn points0(&self) -> Vec<usize> {
        self.points.iter().map(|x| x - 1).collect()
    }
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.points)
    }
}

/// Full list of group elements with the breadth-first spanning tree and
/// right-multiplication-by-generator table used to extend homomorphisms.
pub struct ElementTable {
    degree: usize,
    ngens: usize,
    flat: Vec<u8>,
    index: FxHashMap<Box<[u8]>, u32>,
    // (parent, generator) with element = parent * generator; unused for the identity
    parent: Vec<(u32, u8)>,
    cayley: Vec<u32>,
    fix: Vec<u8>,
    orders: Vec<u64>,
    // non-identity elements fixing each (zero-based) point
    fixers: Vec<Vec<u32>>,
}

impl ElementTable {
    fn build(degree: usize, generators: &[Permutation], budget: usize) -> Result<Self> {
        let ngens = generators.len();
        let id: Box<[u8]> = (0..degree as u8).collect();
        let mut flat: Vec<u8> = id.to_vec();
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, u8::MAX)];
        let mut cayley: Vec<u32> = Vec::new();
        let gens: Vec<&[u8]> = generators.iter().map(|g| g.as_bytes()).collect();
        let mut layer_start = 0usize;
        let mut scratch = vec![0u8; degree];
        loop {
            let layer_end = parent.len();
            if layer_start == layer_end {
                break;
            }
            let mut fresh: FxHashMap<Box<[u8]>, (u32, u8)> = FxHashMap::default();
            for e in layer_start..layer_end {
                let src = &flat[e * degree..(e + 1) * degree];
                for (s, g) in gens.iter().enumerate() {
                    for (x, slot) in scratch.iter_mut().enumerate() {
                        *slot = g[src[x] as usize];
                    }
                    if !index.contains_key(&scratch[..]) && !fresh.contains_key(&scratch[..]) {
                        fresh.insert(scratch.clone().into(), (e as u32, s as u8));
                    }
                }
            }
            if index.len() + fresh.len() > budget {
                return Err(Error::EnumerationBudget { budget });
            }
            let mut fresh: Vec<_> = fresh.into_iter().collect();
            fresh.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            for (key, link) in fresh {
                let id = parent.len() as u32;
                flat.extend_from_slice(&key);
                index.insert(key, id);
                parent.push(link);
            }
            for e in layer_start..layer_end {
                for g in &gens {
                    let src = &flat[e * degree..(e + 1) * degree];
                    for (x, slot) in scratch.iter_mut().enumerate() {
                        *slot = g[src[x] as usize];
                    }
                    cayley.push(index[&scratch[..]]);
                }
            }
            layer_start = layer_end;
        }
        let len = parent.len();
        let fix: Vec<u8> = (0..len)
            .map(|e| fix_count(&flat[e * degree..(e + 1) * degree]) as u8)
            .collect();
        let orders: Vec<u64> = (0..len)
            .map(|e| order_of(&flat[e * degree..(e + 1) * degree]))
            .collect();
        let mut fixers = vec![Vec::new(); degree];
        for e in 1..len {
            for (x, &y) in flat[e * degree..(e + 1) * degree].iter().enumerate() {
                if x == y as usize {
                    fixers[x].push(e as u32);
                }
            }
        }
        Ok(ElementTable {
            degree,
            ngens,
            flat,
            index,
            parent,
            cayley,
            fix,
            orders,
            fixers,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = ElementId> + Clone {
        (0..self.len() as u32).map(ElementId)
    }

    /// Zero-based images of an element.
    pub fn images(&self, e: ElementId) -> &[u8] {
        let i = e.index() * self.degree;
        &self.flat[i..i + self.degree]
    }

    pub fn permutation(&self, e: ElementId) -> Permutation {
        Permutation::from_bytes_unchecked(self.images(e))
    }

    pub fn find_images(&self, images: &[u8]) -> Option<ElementId> {
        self.index.get(images).map(|&i| ElementId(i))
    }

    pub fn find(&self, g: &Permutation) -> Option<ElementId> {
        self.find_images(g.as_bytes())
    }

    pub fn fix_count(&self, e: ElementId) -> usize {
        self.fix[e.index()] as usize
    }

    pub fn element_order(&self, e: ElementId) -> u64 {
        self.orders[e.index()]
    }

    /// The element `e * generator[s]`.
    pub fn times_generator(&self, e: ElementId, s: usize) -> ElementId {
        ElementId(self.cayley[e.index() * self.ngens + s])
    }

    /// Spanning-tree link: `e = parent * generator`.
    pub fn parent(&self, e: ElementId) -> Option<(ElementId, usize)> {
        if e == ElementId::IDENTITY {
            None
        } else {
            let (p, s) = self.parent[e.index()];
            Some((ElementId(p), s as usize))
        }
    }

    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let (ia, ib) = (self.images(a), self.images(b));
        let prod: Vec<u8> = ia.iter().map(|&x| ib[x as usize]).collect();
        self.find_images(&prod).expect("group is closed")
    }

    pub fn inverse(&self, a: ElementId) -> ElementId {
        let mut inv = vec![0u8; self.degree];
        for (x, &y) in self.images(a).iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        self.find_images(&inv).expect("group is closed")
    }
}

/// Injective map from image tuples on a base to group elements.
pub struct BaseIndex {
    base: Base,
    table: FxHashMap<u128, ElementId>,
}

const KEY_BITS: usize = 6;
const MAX_KEY_POINTS: usize = 128 / KEY_BITS;

fn pack_key(images0: impl Iterator<Item = u8>) -> u128 {
    images0.fold(0u128, |k, y| (k << KEY_BITS) | y as u128)
}

impl BaseIndex {
    fn build(table: &ElementTable, base: &Base) -> Result<Self> {
        if base.len() > MAX_KEY_POINTS {
            return Err(Error::Invalid(format!(
                "bases longer than {MAX_KEY_POINTS} points cannot be indexed"
            )));
        }
        let pts = base.points0();
        let mut map = FxHashMap::default();
        map.reserve(table.len());
        for e in table.ids() {
            let img = table.images(e);
            let key = pack_key(pts.iter().map(|&x| img[x]));
            if map.insert(key, e).is_some() {
                let tuple = pts.iter().map(|&x| img[x] as usize + 1).collect();
                return Err(Error::DuplicateImageTuple(tuple));
            }
        }
        Ok(BaseIndex {
            base: base.clone(),
            table: map,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Element whose images of the base points are `images` (1-based).
    pub fn lookup(&self, images: &[usize]) -> Option<ElementId> {
        if images.len() != self.base.len() || images.iter().any(|&y| y == 0 || y > 64) {
            return None;
        }
        self.lookup_raw(images.iter().map(|&y| (y - 1) as u8))
    }

    pub(crate) fn lookup_raw(&self, images0: impl Iterator<Item = u8>) -> Option<ElementId> {
        self.table.get(&pack_key(images0)).copied()
    }
}

/// A generator for a permutational isomorphism failing at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based generator index.
    pub generator: usize,
    pub point: usize,
}

/// A permutation group on `{1..n}` given by generators.
pub struct PermutationGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    budget: usize,
    table: OnceLock<Arc<ElementTable>>,
    indexes: RwLock<FxHashMap<Vec<usize>, Arc<BaseIndex>>>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermutationGroup {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        check_degree(degree)?;
        if generators.is_empty() {
            return Err(Error::Invalid("generator list is empty".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: degree,
            });
        }
        Ok(PermutationGroup {
            name: name.into(),
            degree,
            generators,
            budget: DEFAULT_BUDGET,
            table: OnceLock::new(),
            indexes: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Enumerates on first use; later calls return the cached table.
    pub fn elements(&self) -> Result<&ElementTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let built = Arc::new(ElementTable::build(self.degree, &self.generators, self.budget)?);
        Ok(self.table.get_or_init(|| built))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        Ok(g.degree() == self.degree && self.elements()?.find(g).is_some())
    }

    /// Orbits of the generated group, each sorted, 1-based.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.as_bytes()[x] as usize;
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit.into_iter().map(|x| x + 1).collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Number of elements with each fixed-point count.
    pub fn fix_spectrum(&self) -> Result<BTreeMap<usize, usize>> {
        let t = self.elements()?;
        let mut spec = BTreeMap::new();
        for e in t.ids() {
            *spec.entry(t.fix_count(e)).or_insert(0) += 1;
        }
        Ok(spec)
    }

    /// `n - max fix(g)` over non-identity `g`.
    pub fn min_distance(&self) -> Result<Distance> {
        let t = self.elements()?;
        let max_fix = (1..t.len()).into_par_iter().map(|i| t.fix[i]).max();
        Ok(match max_fix {
            Some(f) => Distance::Finite(self.degree - f as usize),
            None => Distance::Infinite,
        })
    }

    /// A non-identity element fixing every point of `base`, if any.
    pub fn nontrivial_fixer(&self, base: &Base) -> Result<Option<ElementId>> {
        base.check_within(self.degree)?;
        let t = self.elements()?;
        Ok(fixer_among(t, &base.points0()))
    }

    pub fn is_base(&self, base: &Base) -> Result<bool> {
        Ok(self.nontrivial_fixer(base)?.is_none())
    }

    /// Minimum base size: random sampling to find a candidate size, then
    /// exhaustive descent until no smaller base exists.
    pub fn base_size(&self) -> Result<usize> {
        self.base_size_seeded(0xba5e, 200)
    }

    pub fn base_size_seeded(&self, seed: u64, samples: usize) -> Result<usize> {
        let t = self.elements()?;
        let n = self.degree;
        if t.len() == 1 {
            return Ok(0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut k = n;
        for size in 1..=n {
            let hit = (0..samples).any(|_| {
                let mut pts = sample(&mut rng, n, size).into_vec();
                pts.sort_unstable();
                fixer_among(t, &pts).is_none()
            });
            if hit {
                k = size;
                break;
            }
        }
        while k > 1 && self.find_base_of_size(k - 1)?.is_some() {
            k -= 1;
        }
        Ok(k)
    }

    /// First base of the given size in colex order, searched exhaustively.
    pub fn find_base_of_size(&self, k: usize) -> Result<Option<Base>> {
        let t = self.elements()?;
        let n = self.degree;
        if k == 0 {
            return Ok((t.len() == 1).then(|| Base { points: vec![] }));
        }
        if k > n {
            return Ok(None);
        }
        let found = (k - 1..n)
            .into_par_iter()
            .find_map_first(|top| Colex::with_top(top, k).find(|pts| fixer_among(t, pts).is_none()));
        Ok(found.map(|pts| Base {
            points: pts.into_iter().map(|x| x + 1).collect(),
        }))
    }

    /// Number of `k`-subsets that are bases; exhaustive.
    pub fn count_bases_of_size(&self, k: usize) -> Result<u128> {
        let t = self.elements()?;
        let n = self.degree;
        if k == 0 || k > n {
            return Ok(u128::from(k == 0 && t.len() == 1));
        }
        Ok((k - 1..n)
            .into_par_iter()
            .map(|top| {
                Colex::with_top(top, k)
                    .filter(|pts| fixer_among(t, pts).is_none())
                    .count() as u128
            })
            .sum())
    }

    /// Cached lookup table for `base`; built once per distinct base.
    pub fn base_index(&self, base: &Base) -> Result<Arc<BaseIndex>> {
        base.check_within(self.degree)?;
        if let Some(ix) = self.indexes.read().expect("index cache").get(base.points()) {
            return Ok(ix.clone());
        }
        let built = Arc::new(BaseIndex::build(self.elements()?, base)?);
        let mut cache = self.indexes.write().expect("index cache");
        Ok(cache.entry(base.points().to_vec()).or_insert(built).clone())
    }

    /// The group `psi^-1 g psi` acting on relabelled points, so that `psi`
    /// with conjugation is a permutational isomorphism onto it.
    pub fn relabel(&self, psi: &PointBijection, name: impl Into<String>) -> Result<PermutationGroup> {
        let p = psi.as_permutation();
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.degree,
            });
        }
        let inv = p.inverse();
        let gens = self.generators.iter().map(|g| inv.then(g).then(p)).collect();
        Ok(PermutationGroup::new(name, self.degree, gens)?.with_budget(self.budget))
    }
}

pub(crate) fn fixer_among(t: &ElementTable, pts0: &[usize]) -> Option<ElementId> {
    let Some(&pivot) = pts0.iter().min_by_key(|&&x| t.fixers[x].len()) else {
        return (t.len() > 1).then_some(ElementId(1));
    };
    t.fixers[pivot]
        .iter()
        .copied()
        .find(|&e| {
            let img = &t.flat[e as usize * t.degree..(e as usize + 1) * t.degree];
            pts0.iter().all(|&x| img[x] as usize == x)
        })
        .map(ElementId)
}

/// Checks `psi(x^g) = psi(x)^(g^phi)` for each generator `g` of `g1`,
/// where `phi` is given by the images of `g1`'s generators in `g2`.
/// Returns the first failing (generator, point) pair.
pub fn find_isomorphism_violation(
    g1: &PermutationGroup,
    g2: &PermutationGroup,
    phi_images: &[Permutation],
    psi: &PointBijection,
) -> Result<Option<Violation>> {
    if phi_images.len() != g1.generators().len() {
        return Err(Error::Invalid(format!(
            "{} generator images for {} generators",
            phi_images.len(),
            g1.generators().len()
        )));
    }
    if psi.degree() != g1.degree() || g2.degree() != g1.degree() {
        return Err(Error::DegreeMismatch {
            left: g1.degree(),
            right: g2.degree(),
        });
    }
    for img in phi_images {
        if !g2.contains(img)? {
            return Err(Error::NotInGroup(img.to_string()));
        }
    }
    for (s, (g, h)) in g1.generators().iter().zip(phi_images).enumerate() {
        for x in 1..=g1.degree() {
            if psi.apply(g.image(x)) != h.image(psi.apply(x)) {
                return Ok(Some(Violation {
                    generator: s + 1,
                    point: x,
                }));
            }
        }
    }
    Ok(None)
}

pub fn verify_permutational_isomorphism(
    g1: &PermutationGroup,
    g2: &PermutationGroup,
    phi_images: &[Permutation],
    psi: &PointBijection,
) -> Result<bool> {
    Ok(find_isomorphism_violation(g1, g2, phi_images, psi)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str, n: usize, gens: &[&str]) -> PermutationGroup {
        let gens = gens.iter().map(|g| Permutation::parse(g, n).unwrap()).collect();
        PermutationGroup::new(name, n, gens).unwrap()
    }

    fn pgl27() -> PermutationGroup {
        group(
            "PGL(2,7)",
            8,
            &["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)", "(1,8)(2,7)(3,4)(5,6)"],
        )
    }

    fn base(pts: &[usize]) -> Base {
        Base::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn transposition_group() {
        let g = group("S2", 2, &["(1,2)"]);
        assert_eq!(g.order().unwrap(), 2);
        assert_eq!(g.min_distance().unwrap(), Distance::Finite(2));
    }

    #[test]
    fn trivial_group_has_infinite_distance_and_empty_base() {
        let g = group("1", 3, &["()"]);
        assert_eq!(g.order().unwrap(), 1);
        assert_eq!(g.min_distance().unwrap(), Distance::Infinite);
        assert_eq!(Distance::Infinite.or_sentinel(3), 4);
        assert_eq!(g.base_size().unwrap(), 0);
        let ix = g.base_index(&base(&[])).unwrap();
        assert_eq!(ix.len(), 1);
        assert_eq!(ix.lookup(&[]), Some(ElementId::IDENTITY));
    }

    #[test]
    fn pgl27_parameters() {
        let g = pgl27();
        assert_eq!(g.order().unwrap(), 336);
        // sharply 3-transitive, so non-identity elements fix at most 2 points
        assert_eq!(g.min_distance().unwrap(), Distance::Finite(6));
        assert!(g.is_base(&base(&[1, 2, 3])).unwrap());
        // sharply 3-transitive: two points leave a stabilizer of order 6
        assert!(!g.is_base(&base(&[1, 2])).unwrap());
        let t = g.elements().unwrap();
        let stab = t.ids().filter(|&e| t.images(e)[0] == 0 && t.images(e)[1] == 1).count();
        assert_eq!(stab, 6);
        assert_eq!(g.base_size().unwrap(), 3);
        assert_eq!(g.count_bases_of_size(3).unwrap(), 56);
    }

    #[test]
    fn base_index_is_bijective_for_sharp_action() {
        let g = pgl27();
        let ix = g.base_index(&base(&[1, 2, 3])).unwrap();
        assert_eq!(ix.len(), 336);
        let again = g.base_index(&base(&[1, 2, 3])).unwrap();
        assert!(Arc::ptr_eq(&ix, &again));
        assert!(matches!(
            g.base_index(&base(&[1, 2])),
            Err(Error::DuplicateImageTuple(_))
        ));
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let g = pgl27().with_budget(100);
        assert!(matches!(g.order(), Err(Error::EnumerationBudget { budget: 100 })));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = pgl27();
        let b = pgl27();
        let (ta, tb) = (a.elements().unwrap(), b.elements().unwrap());
        assert!(ta.ids().all(|e| ta.images(e) == tb.images(e)));
        // layers are sorted lexicographically
        assert_eq!(ta.permutation(ElementId::IDENTITY), Permutation::identity(8));
    }

    #[test]
    fn cayley_and_parent_links_agree() {
        let g = pgl27();
        let t = g.elements().unwrap();
        for e in t.ids().skip(1) {
            let (p, s) = t.parent(e).unwrap();
            assert_eq!(t.times_generator(p, s), e);
            let direct = t.permutation(p).then(&g.generators()[s]);
            assert_eq!(t.permutation(e), direct);
        }
    }

    #[test]
    fn permutational_isomorphism_checks() {
        let g = pgl27();
        let psi = PointBijection::identity(8);
        assert!(verify_permutational_isomorphism(&g, &g, g.generators(), &psi).unwrap());
        let swap = PointBijection::from_list(&[2, 1, 3, 4, 5, 6, 7, 8]).unwrap();
        let v = find_isomorphism_violation(&g, &g, g.generators(), &swap)
            .unwrap()
            .expect("non-equivariant bijection");
        assert!(v.generator >= 1 && v.point >= 1);
        let outside = Permutation::parse("(1,2)", 8).unwrap();
        let bad = vec![outside.clone(), outside.clone(), outside];
        assert!(matches!(
            verify_permutational_isomorphism(&g, &g, &bad, &psi),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn relabelled_group_moves_bases() {
        let g = group("A4", 4, &["(1,2,3)", "(2,3,4)"]);
        let psi = PointBijection::from_list(&[3, 1, 4, 2]).unwrap();
        let h = g.relabel(&psi, "A4'").unwrap();
        let phi: Vec<_> = {
            let p = psi.as_permutation();
            g.generators().iter().map(|x| p.inverse().then(x).then(p)).collect()
        };
        assert!(verify_permutational_isomorphism(&g, &h, &phi, &psi).unwrap());
        for pts in [[1, 2], [1, 3], [2, 4]] {
            let b = base(&pts);
            assert_eq!(g.is_base(&b).unwrap(), h.is_base(&psi.apply_base(&b)).unwrap());
        }
    }

    #[test]
    fn orbits_and_transitivity() {
        let g = group("two", 5, &["(1,2)", "(3,4,5)"]);
        assert_eq!(g.orbits(), vec![vec![1, 2], vec![3, 4, 5]]);
        assert!(!g.is_transitive());
        assert!(pgl27().is_transitive());
    }
}

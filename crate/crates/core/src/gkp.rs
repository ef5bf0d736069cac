//! The affine groups `G_k(p) = V ⋊ <B_k>` acting on `p^k` points, their
//! two-point bases, Saxl graphs, matching UBBs and twisted codes.
//!
//! Points `(1, v)` are numbered 1..p^k by `v` in lexicographic order, first
//! coordinate most significant.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Base, ElementId, PermutationGroup};
use crate::morphism::{automorphisms, extend_homomorphism, AutomorphismSearch};
use crate::perm::{Permutation, MAX_DEGREE};
use crate::saxl::{matching_ubb, saxl_graph, SaxlGraph, SpanningTree};
use crate::twisted::{correction_params, TwistedCode};
use crate::ubb::Ubb;

/// Default cap on the number of points `p^k`.
pub const POINT_BUDGET: usize = 4096;

/// Default cap on backtracking nodes in the representation-tuple search.
pub const TUPLE_SEARCH_BUDGET: usize = 5_000_000;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Square matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixModP {
    p: u32,
    dim: usize,
    entries: Vec<u32>,
}

impl MatrixModP {
    pub fn identity(p: u32, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % p;
        }
        MatrixModP { p, dim, entries }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        Ok(MatrixModP {
            p,
            dim,
            entries: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    /// `B_k`: ones on the diagonal and the subdiagonal.
    pub fn bk(p: u32, k: usize) -> Self {
        let mut m = MatrixModP::identity(p, k);
        for r in 1..k {
            m.entries[r * k + r - 1] = 1 % p;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn mul(&self, other: &MatrixModP) -> MatrixModP {
        assert_eq!((self.p, self.dim), (other.p, other.dim));
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let s: u64 = (0..n)
                    .map(|j| u64::from(self.get(r, j)) * u64::from(other.get(j, c)))
                    .sum();
                entries[r * n + c] = (s % u64::from(self.p)) as u32;
            }
        }
        MatrixModP {
            p: self.p,
            dim: n,
            entries,
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        (0..self.dim)
            .map(|c| {
                let s: u64 = (0..self.dim).map(|j| u64::from(v[j]) * u64::from(self.get(j, c))).sum();
                (s % u64::from(self.p)) as u32
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixModP::identity(self.p, self.dim)
    }
}

impl std::fmt::Debug for MatrixModP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[u32]> = (0..self.dim).map(|r| self.row(r)).collect();
        write!(f, "{rows:?} mod {}", self.p)
    }
}

fn binomial_mod(n: u64, k: u64, p: u32) -> u32 {
    // Lucas: multiply the binomials of the base-p digits
    let p64 = u64::from(p);
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        let (mut num, mut den) = (1u64, 1u64);
        for j in 0..kd {
            num = num * (nd - j) % p64;
            den = den * (j + 1) % p64;
        }
        acc = acc * num % p64 * pow_mod(den, p64 - 2, p64) % p64;
        n /= p64;
        k /= p64;
    }
    (acc % p64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `B_k^i` from the closed form `(r, c) -> binom(i, r - c) mod p`, checked
/// against `i` repeated multiplications by `B_k`.
pub fn bk_power(p: u32, k: usize, i: u32) -> Result<MatrixModP> {
    check_prime(p)?;
    if i >= p {
        return Err(Error::Invalid(format!("exponent {i} must be below p = {p}")));
    }
    checked_power(p, k, i)
}

fn closed_power(p: u32, k: usize, i: u32) -> MatrixModP {
    let mut m = MatrixModP::identity(p, k);
    for r in 0..k {
        for c in 0..r {
            m.entries[r * k + c] = binomial_mod(u64::from(i), (r - c) as u64, p);
        }
    }
    m
}

fn checked_power(p: u32, k: usize, i: u32) -> Result<MatrixModP> {
    let closed = closed_power(p, k, i);
    let b = MatrixModP::bk(p, k);
    let iterated = (0..i).fold(MatrixModP::identity(p, k), |m, _| m.mul(&b));
    if closed != iterated {
        return Err(Error::Invalid(format!(
            "closed form of B_{k}^{i} mod {p} disagrees with iterated product"
        )));
    }
    Ok(closed)
}

/// Multiplicative order of `B_k` over `F_p`: the least power of `p` that is
/// at least `k`. This is `p` only when `k <= p`.
pub fn bk_order(p: u32, k: usize) -> Result<u32> {
    check_prime(p)?;
    let b = MatrixModP::bk(p, k);
    let mut m = b.clone();
    let mut order = 1;
    while !m.is_identity() {
        m = m.mul(&b);
        order += 1;
    }
    Ok(order)
}

/// `overline{G_k(p)}`: the matrices `A_{v,i}` and their action on points.
///
/// `i` ranges over the true order of `B_k`, so when `k > p` the group has
/// order `p^k * ord(B_k)`, larger than `p^(k+1)`.
#[derive(Debug)]
pub struct GkpGroup {
    p: u32,
    k: usize,
    powers: Vec<MatrixModP>,
    group: Arc<PermutationGroup>,
}

/// An element `A_{v,i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub v: Vec<u32>,
    pub i: u32,
}

pub fn build_gkp(p: u32, k: usize) -> Result<GkpGroup> {
    build_gkp_with_budget(p, k, POINT_BUDGET)
}

pub fn build_gkp_with_budget(p: u32, k: usize, budget: usize) -> Result<GkpGroup> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let n = (p as usize)
        .checked_pow(k as u32)
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::Invalid(format!("{p}^{k} points exceeds the budget of {budget}")))?;
    if n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    let order = bk_order(p, k)?;
    let powers = (0..order).map(|i| checked_power(p, k, i)).collect::<Result<Vec<_>>>()?;
    let gens: Vec<Permutation> = generators(p, k)
        .iter()
        .map(|a| permutation_of(p, k, &powers, a))
        .collect();
    let g = GkpGroup {
        p,
        k,
        powers,
        group: Arc::new(PermutationGroup::new(format!("G_{k}({p})"), n, gens)?),
    };
    g.verify_structure()?;
    Ok(g)
}

/// `A_{e_k,0}` and `A_{0,1}`.
fn generators(p: u32, k: usize) -> [Affine; 2] {
    let mut e_k = vec![0; k];
    e_k[k - 1] = 1;
    [
        Affine { v: e_k, i: 0 },
        Affine {
            v: vec![0; k],
            i: 1 % p,
        },
    ]
}

fn index_of(p: u32, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize) + 1
}

fn point_of(p: u32, k: usize, index: usize) -> Vec<u32> {
    let mut rest = index - 1;
    let mut v = vec![0; k];
    for slot in v.iter_mut().rev() {
        *slot = (rest % p as usize) as u32;
        rest /= p as usize;
    }
    v
}

fn permutation_of(p: u32, k: usize, powers: &[MatrixModP], a: &Affine) -> Permutation {
    let n = (p as usize).pow(k as u32);
    let list: Vec<usize> = (1..=n)
        .map(|x| {
            let ub = powers[a.i as usize].apply_row(&point_of(p, k, x));
            let w: Vec<u32> = ub.iter().zip(&a.v).map(|(x, y)| (x + y) % p).collect();
            index_of(p, &w)
        })
        .collect();
    Permutation::from_list(&list).expect("affine maps permute points")
}

impl GkpGroup {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        (self.p as usize).pow(self.k as u32)
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    /// Multiplicative order of `B_k`; `p` exactly when `k <= p`.
    pub fn bk_order(&self) -> u32 {
        self.powers.len() as u32
    }

    /// `p^(k+1)`, the order claimed for the family.
    pub fn nominal_order(&self) -> usize {
        self.degree() * self.p as usize
    }

    /// 1-based index of the point `(1, v)`.
    pub fn point_index(&self, v: &[u32]) -> usize {
        index_of(self.p, v)
    }

    pub fn point(&self, index: usize) -> Vec<u32> {
        point_of(self.p, self.k, index)
    }

    pub fn elements(&self) -> impl Iterator<Item = Affine> + '_ {
        let vs = self.degree();
        (0..self.bk_order()).flat_map(move |i| (1..=vs).map(move |x| Affine { v: self.point(x), i }))
    }

    /// The `(k+1) x (k+1)` block matrix `[[1, v], [0, B_k^i]]`.
    pub fn matrix(&self, a: &Affine) -> MatrixModP {
        let d = self.k + 1;
        let mut m = MatrixModP::identity(self.p, d);
        m.entries[1..d].copy_from_slice(&a.v);
        let b = &self.powers[a.i as usize];
        for r in 0..self.k {
            m.entries[(r + 1) * d + 1..(r + 2) * d].copy_from_slice(b.row(r));
        }
        m
    }

    fn affine_of(&self, m: &MatrixModP) -> Option<Affine> {
        let d = self.k + 1;
        if m.get(0, 0) != 1 || (1..d).any(|r| m.get(r, 0) != 0) {
            return None;
        }
        let i = self
            .powers
            .iter()
            .position(|b| (0..self.k).all(|r| &m.row(r + 1)[1..] == b.row(r)))?;
        Some(Affine {
            v: m.row(0)[1..].to_vec(),
            i: i as u32,
        })
    }

    /// `(1, u) A_{v,i} = (1, v + u B_k^i)`.
    pub fn act(&self, u: &[u32], a: &Affine) -> Vec<u32> {
        let ub = self.powers[a.i as usize].apply_row(u);
        ub.iter().zip(&a.v).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn permutation(&self, a: &Affine) -> Permutation {
        permutation_of(self.p, self.k, &self.powers, a)
    }

    // Matrix closure under the generators, agreement of matrix product and
    // action, and a faithful action of the right order.
    fn verify_structure(&self) -> Result<()> {
        let gens = generators(self.p, self.k);
        let mut perms = std::collections::HashSet::new();
        for a in self.elements() {
            let ma = self.matrix(&a);
            for s in &gens {
                let prod = ma.mul(&self.matrix(s));
                let c = self
                    .affine_of(&prod)
                    .ok_or_else(|| Error::Invalid(format!("{a:?} * {s:?} is not of the form A_(v,i)")))?;
                if self.permutation(&a).then(&self.permutation(s)) != self.permutation(&c) {
                    return Err(Error::Invalid("matrix product disagrees with the action".into()));
                }
            }
            perms.insert(self.permutation(&a));
        }
        let expected = self.degree() * self.powers.len();
        if perms.len() != expected || self.group.order()? != expected {
            return Err(Error::Invalid(format!(
                "G_{}({}) has order {} (distinct actions {}), expected {expected}",
                self.k,
                self.p,
                self.group.order()?,
                perms.len()
            )));
        }
        if !self.group.is_transitive() {
            return Err(Error::Invalid("action is not transitive".into()));
        }
        Ok(())
    }

    /// `{(1, 0), (1, e_j)}`, a base for `2 <= j <= k`.
    pub fn canonical_base(&self, j: usize) -> Result<Base> {
        if j < 2 || j > self.k {
            return Err(Error::Invalid(format!("j = {j} must lie in 2..={}", self.k)));
        }
        let mut e = vec![0; self.k];
        e[j - 1] = 1;
        Base::new(vec![self.point_index(&vec![0; self.k]), self.point_index(&e)])
    }
}

/// Connectivity certificate for the Saxl graph.
#[derive(Clone, Debug)]
pub struct SaxlCertificate {
    pub graph: SaxlGraph,
    pub tree: SpanningTree,
    /// The group is transitive and preserves the edge set.
    pub vertex_transitive: bool,
    /// Number of labelled edges `{(1,v), (1, v + b_j^i)}`, `j >= 2`,
    /// `i < p`, checked.
    pub labelled_edges_checked: usize,
    /// Labelled edges that are not bases. Empty whenever `k <= p`.
    pub labelled_edge_failures: Vec<(usize, usize)>,
}

/// Builds the Saxl graph, certifies connectivity with a BFS tree and tests
/// every labelled edge `{(1,v), (1, v + e_j B_k^i)}` for `j >= 2`, `i < p`.
pub fn gkp_saxl_connected(g: &GkpGroup) -> Result<SaxlCertificate> {
    let graph = saxl_graph(&g.group)?;
    let tree = graph.spanning_tree()?;
    let vertex_transitive = g.group.is_transitive() && graph.is_invariant_under(&g.group);
    let mut checked = 0;
    let mut failures = Vec::new();
    for x in 1..=g.degree() {
        let v = g.point(x);
        for j in 2..=g.k {
            for i in 0..g.p as usize {
                let b = g.powers[i].row(j - 1);
                let w: Vec<u32> = v.iter().zip(b).map(|(a, c)| (a + c) % g.p).collect();
                let y = g.point_index(&w);
                if !graph.has_edge(x, y) {
                    failures.push((x, y));
                }
                checked += 1;
            }
        }
    }
    Ok(SaxlCertificate {
        graph,
        tree,
        vertex_transitive,
        labelled_edges_checked: checked,
        labelled_edge_failures: failures,
    })
}

/// The matching UBB together with the two competing values for its size.
#[derive(Clone, Debug)]
pub struct GkpUbb {
    pub ubb: Ubb,
    /// From the definitions with `δ_tw = p^(k+1) - p`, `λ = p`.
    pub r_prime: usize,
    /// The closed form `⌊(p^k - 1)/2⌋` for `r' + 1`.
    pub closed_form_size: usize,
}

impl GkpUbb {
    pub fn closed_form_agrees(&self) -> bool {
        self.r_prime + 1 == self.closed_form_size
    }
}

pub fn gkp_ubb(g: &GkpGroup) -> Result<GkpUbb> {
    let n = g.degree();
    let p = g.p as usize;
    let params = correction_params(n * p - p, p);
    let cert = gkp_saxl_connected(g)?;
    let ubb = matching_ubb(&cert.graph, params.r_prime + 1)?;
    Ok(GkpUbb {
        ubb,
        r_prime: params.r_prime,
        closed_form_size: (n - 1) / 2,
    })
}

/// Searches for `p` automorphisms of `G_k(p)`, the identity first, whose
/// twisted code has minimum distance `p^(k+1) - p`, and certifies the
/// result by a full element scan.
pub fn gkp_twisted_code(g: &GkpGroup) -> Result<TwistedCode> {
    gkp_twisted_code_with_budget(g, TUPLE_SEARCH_BUDGET)
}

pub fn gkp_twisted_code_with_budget(g: &GkpGroup, budget: usize) -> Result<TwistedCode> {
    let lambda = g.p as usize;
    let n = g.degree();
    let target = lambda * n - lambda;
    let group = &g.group;
    let t = group.elements()?;
    // Only fixed-point counts matter, so keep one automorphism per profile.
    let autos = automorphisms(group, &AutomorphismSearch::default())?;
    let mut profiles: BTreeMap<Vec<u8>, Vec<Permutation>> = BTreeMap::new();
    for images in autos {
        let map = extend_homomorphism(group, group, &images)?;
        let fix: Vec<u8> = map.iter().map(|&y| t.fix_count(y) as u8).collect();
        profiles.entry(fix).or_insert(images);
    }
    let profiles: Vec<(Vec<u8>, Vec<Permutation>)> = profiles.into_iter().collect();
    // Each non-identity x needs sum_i fix(alpha_i(x)) <= λn - target = λ.
    let cap = (lambda * n - target) as u32;
    let base: Vec<u32> = t.ids().map(|x| t.fix_count(x) as u32).collect();
    let mut search = TupleSearch {
        profiles: &profiles,
        cap,
        nodes: 0,
        budget,
    };
    let chosen = search.run(base.clone(), lambda - 1);
    let Some(chosen) = chosen else {
        // Report the best reachable distance by relaxing the cap.
        let mut best = 0;
        for relaxed in cap + 1..=(lambda * n) as u32 {
            search.cap = relaxed;
            search.nodes = 0;
            if search.run(base.clone(), lambda - 1).is_some() {
                best = lambda * n - relaxed as usize;
                break;
            }
        }
        return Err(Error::TupleSearchExhausted { target, best });
    };
    let images = chosen.iter().map(|&c| profiles[c].1.clone()).collect();
    let code = TwistedCode::from_automorphisms(format!("Tw(G_{}({}))", g.k, g.p), group.clone(), images)?;
    let delta = code.delta_tw()?.finite().unwrap_or(0);
    if delta != target {
        return Err(Error::TupleSearchExhausted { target, best: delta });
    }
    Ok(code)
}

struct TupleSearch<'a> {
    profiles: &'a [(Vec<u8>, Vec<Permutation>)],
    cap: u32,
    nodes: usize,
    budget: usize,
}

impl TupleSearch<'_> {
    fn run(&mut self, totals: Vec<u32>, remaining: usize) -> Option<Vec<usize>> {
        let mut stack = Vec::new();
        self.go(&totals, remaining, 0, &mut stack).then_some(stack)
    }

    fn go(&mut self, totals: &[u32], remaining: usize, from: usize, stack: &mut Vec<usize>) -> bool {
        if remaining == 0 {
            return totals[ElementId::IDENTITY.index() + 1..].iter().all(|&s| s <= self.cap);
        }
        if self.nodes >= self.budget {
            return false;
        }
        // multisets: components may repeat, in non-decreasing profile order
        let candidates: Vec<(usize, Vec<u32>)> = (from..self.profiles.len())
            .into_par_iter()
            .filter_map(|c| {
                let fix = &self.profiles[c].0;
                let next: Vec<u32> = totals.iter().zip(fix).map(|(a, &b)| a + u32::from(b)).collect();
                next[1..].iter().all(|&s| s <= self.cap).then_some((c, next))
            })
            .collect();
        for (c, next) in candidates {
            self.nodes += 1;
            stack.push(c);
            if self.go(&next, remaining - 1, c, stack) {
                return true;
            }
            stack.pop();
            if self.nodes >= self.budget {
                return false;
            }
        }
        false
    }
}

//! Homomorphisms between enumerated groups, defined by generator images,
//! and a backtracking search for automorphisms.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::{ElementId, ElementTable, PermutationGroup};
use crate::perm::{order_of, Permutation};
use crate::twisted::PointBijection;

fn compose_into(a: &[u8], b: &[u8], out: &mut [u8]) {
    for (slot, &x) in out.iter_mut().zip(a) {
        *slot = b[x as usize];
    }
}

fn invert(a: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; a.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y as usize] = x as u8;
    }
    inv
}

/// Images of every source element under the map defined by sending
/// generator `s` to `images[s]`, or `None` if that map is not a
/// well-defined homomorphism. Images are returned as a flat array with
/// stride `degree`, indexed by source element id.
fn extend_flat(source: &ElementTable, degree: usize, images: &[&[u8]]) -> Option<Vec<u8>> {
    let len = source.len();
    let ngens = images.len();
    let mut flat = vec![0u8; len * degree];
    for (x, slot) in flat[..degree].iter_mut().enumerate() {
        *slot = x as u8;
    }
    for e in source.ids().skip(1) {
        let (p, s) = source.parent(e).expect("non-identity has a parent");
        let (head, tail) = flat.split_at_mut(e.index() * degree);
        let src = &head[p.index() * degree..(p.index() + 1) * degree];
        compose_into(src, images[s], &mut tail[..degree]);
    }
    let mut scratch = vec![0u8; degree];
    for e in source.ids() {
        let src = &flat[e.index() * degree..(e.index() + 1) * degree];
        for (s, img) in images.iter().enumerate().take(ngens) {
            compose_into(src, img, &mut scratch);
            let t = source.times_generator(e, s).index();
            if flat[t * degree..(t + 1) * degree] != scratch[..] {
                return None;
            }
        }
    }
    Some(flat)
}

/// Element table of `source` mapped into `target`: `map[x]` is the image of
/// source element `x`.
pub fn extend_homomorphism(
    source: &PermutationGroup,
    target: &PermutationGroup,
    generator_images: &[Permutation],
) -> Result<Vec<ElementId>> {
    if generator_images.len() != source.generators().len() {
        return Err(Error::Invalid(format!(
            "{} images for {} generators",
            generator_images.len(),
            source.generators().len()
        )));
    }
    let tt = target.elements()?;
    for img in generator_images {
        if img.degree() != target.degree() || tt.find(img).is_none() {
            return Err(Error::NotInGroup(img.to_string()));
        }
    }
    let ts = source.elements()?;
    let raw: Vec<&[u8]> = generator_images.iter().map(|g| g.as_bytes()).collect();
    let n = target.degree();
    let flat = extend_flat(ts, n, &raw).ok_or(Error::NotHomomorphism)?;
    Ok((0..ts.len())
        .map(|e| {
            tt.find_images(&flat[e * n..(e + 1) * n])
                .expect("closed under the images of generators")
        })
        .collect())
}

/// Options for [`automorphisms`].
#[derive(Clone, Debug, Default)]
pub struct AutomorphismSearch {
    /// Restrict the first generator's image to one representative per
    /// conjugacy class. Every automorphism is then found up to an inner one.
    pub class_representatives: bool,
    /// Drop inner automorphisms from the result.
    pub skip_inner: bool,
    pub limit: Option<usize>,
}

struct PairProfile {
    orders: [u64; 5],
}

fn pair_profile(a: &[u8], b: &[u8], buf: &mut [u8], buf2: &mut [u8]) -> PairProfile {
    let mut orders = [0u64; 5];
    compose_into(a, b, buf);
    orders[0] = order_of(buf);
    let binv = invert(b);
    compose_into(a, &binv, buf);
    orders[1] = order_of(buf);
    compose_into(a, a, buf2);
    compose_into(buf2, b, buf);
    orders[2] = order_of(buf);
    compose_into(b, b, buf2);
    compose_into(a, buf2, buf);
    orders[3] = order_of(buf);
    // commutator a^-1 b^-1 a b
    let ainv = invert(a);
    compose_into(&ainv, &binv, buf);
    compose_into(buf, a, buf2);
    compose_into(buf2, b, buf);
    orders[4] = order_of(buf);
    PairProfile { orders }
}

/// Automorphisms of `group`, each given by the images of its generators.
///
/// Generator images are searched by backtracking over elements of the
/// right order, pruned by the orders of short words in pairs of generators,
/// and each complete candidate is checked by extending it over the whole
/// element table.
pub fn automorphisms(group: &PermutationGroup, opts: &AutomorphismSearch) -> Result<Vec<Vec<Permutation>>> {
    let t = group.elements()?;
    let n = group.degree();
    let gens: Vec<&[u8]> = group.generators().iter().map(|g| g.as_bytes()).collect();
    let m = gens.len();

    let mut by_order: FxHashMap<u64, Vec<ElementId>> = FxHashMap::default();
    for e in t.ids() {
        by_order.entry(t.element_order(e)).or_default().push(e);
    }
    let mut candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|g| by_order.get(&order_of(g)).cloned().unwrap_or_default())
        .collect();
    if opts.class_representatives {
        candidates[0] = class_representatives(t, group, &candidates[0]);
    }

    let mut buf = vec![0u8; n];
    let mut buf2 = vec![0u8; n];
    let mut profiles = vec![Vec::new(); m];
    for b in 0..m {
        for a in 0..b {
            profiles[b].push(pair_profile(gens[a], gens[b], &mut buf, &mut buf2).orders);
        }
    }

    let mut found = Vec::new();
    let mut chosen: Vec<ElementId> = Vec::with_capacity(m);
    search(
        t,
        group,
        &candidates,
        &profiles,
        opts,
        &mut chosen,
        &mut found,
        &mut buf,
        &mut buf2,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    t: &ElementTable,
    group: &PermutationGroup,
    candidates: &[Vec<ElementId>],
    profiles: &[Vec<[u64; 5]>],
    opts: &AutomorphismSearch,
    chosen: &mut Vec<ElementId>,
    found: &mut Vec<Vec<Permutation>>,
    buf: &mut [u8],
    buf2: &mut [u8],
) -> Result<()> {
    if opts.limit.is_some_and(|l| found.len() >= l) {
        return Ok(());
    }
    let depth = chosen.len();
    if depth == candidates.len() {
        let images: Vec<&[u8]> = chosen.iter().map(|&e| t.images(e)).collect();
        let n = group.degree();
        if let Some(flat) = extend_flat(t, n, &images) {
            let identity: Vec<u8> = (0..n as u8).collect();
            let kernel = flat.chunks_exact(n).filter(|c| *c == &identity[..]).count();
            if kernel == 1 {
                let perms: Vec<Permutation> = chosen.iter().map(|&e| t.permutation(e)).collect();
                if !opts.skip_inner || !is_inner(group, &perms)? {
                    found.push(perms);
                }
            }
        }
        return Ok(());
    }
    for &cand in &candidates[depth] {
        let img = t.images(cand);
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(a, &prev)| pair_profile(t.images(prev), img, buf, buf2).orders == profiles[depth][a]);
        if !ok {
            continue;
        }
        chosen.push(cand);
        search(t, group, candidates, profiles, opts, chosen, found, buf, buf2)?;
        chosen.pop();
        if opts.limit.is_some_and(|l| found.len() >= l) {
            break;
        }
    }
    Ok(())
}

fn class_representatives(t: &ElementTable, group: &PermutationGroup, pool: &[ElementId]) -> Vec<ElementId> {
    let n = group.degree();
    let gens: Vec<(&[u8], Vec<u8>)> = group
        .generators()
        .iter()
        .map(|g| (g.as_bytes(), invert(g.as_bytes())))
        .collect();
    let mut seen = vec![false; t.len()];
    let mut reps = Vec::new();
    let mut buf = vec![0u8; n];
    let mut buf2 = vec![0u8; n];
    for &start in pool {
        if seen[start.index()] {
            continue;
        }
        reps.push(start);
        seen[start.index()] = true;
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for (g, ginv) in &gens {
                compose_into(ginv, t.images(x), &mut buf);
                compose_into(&buf, g, &mut buf2);
                let y = t.find_images(&buf2).expect("closed");
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push(y);
                }
            }
        }
    }
    reps
}

/// True when sending each generator `g_s` to `images[s]` is conjugation by
/// some element of the group.
pub fn is_inner(group: &PermutationGroup, images: &[Permutation]) -> Result<bool> {
    let t = group.elements()?;
    let n = group.degree();
    let gens = group.generators();
    let mut buf = vec![0u8; n];
    let mut buf2 = vec![0u8; n];
    for c in t.ids() {
        let ci = t.images(c);
        let cinv = invert(ci);
        let hit = gens.iter().zip(images).all(|(g, img)| {
            compose_into(&cinv, g.as_bytes(), &mut buf);
            compose_into(&buf, ci, &mut buf2);
            buf2[..] == *img.as_bytes()
        });
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A point bijection `psi` with `psi(x^g) = psi(x)^(phi(g))` for every
/// generator, where `phi` sends the generators of `source` to `images` in a
/// group of the same degree. Found orbit by orbit by trying each image for
/// the orbit's first point and propagating.
pub fn find_point_bijection(source: &PermutationGroup, images: &[Permutation]) -> Option<PointBijection> {
    let n = source.degree();
    let gens = source.generators();
    if images.len() != gens.len() || images.iter().any(|g| g.degree() != n) {
        return None;
    }
    let orbits = source.orbits();
    let mut psi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        orbits: &[Vec<usize>],
        k: usize,
        gens: &[Permutation],
        images: &[Permutation],
        psi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == orbits.len() {
            return true;
        }
        let start = orbits[k][0] - 1;
        let n = psi.len();
        for y in 0..n {
            if used[y] {
                continue;
            }
            let snapshot = (psi.clone(), used.clone());
            psi[start] = y;
            used[y] = true;
            let mut stack = vec![start];
            let mut ok = true;
            'prop: while let Some(x) = stack.pop() {
                for (g, h) in gens.iter().zip(images) {
                    let gx = g.as_bytes()[x] as usize;
                    let want = h.as_bytes()[psi[x]] as usize;
                    if psi[gx] == usize::MAX {
                        if used[want] {
                            ok = false;
                            break 'prop;
                        }
                        psi[gx] = want;
                        used[want] = true;
                        stack.push(gx);
                    } else if psi[gx] != want {
                        ok = false;
                        break 'prop;
                    }
                }
            }
            if ok && assign(orbits, k + 1, gens, images, psi, used) {
                return true;
            }
            (*psi, *used) = snapshot;
        }
        false
    }
    if assign(&orbits, 0, gens, images, &mut psi, &mut used) {
        let list: Vec<usize> = psi.iter().map(|&y| y + 1).collect();
        PointBijection::from_list(&list).ok()
    } else {
        None
    }
}

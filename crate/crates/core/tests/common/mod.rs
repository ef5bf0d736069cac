//! Oracle checks shared by the property tests and the acceptance run.
//! Each returns a short summary or a description of the first violation.

#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twperm::gkp::{bk_order, bk_power, MatrixModP};
use twperm::morphism::{automorphisms, AutomorphismSearch};
use twperm::subsets::Colex;
use twperm::twisted::{correction_params, repetition_strength_check};
use twperm::*;

pub type Check = std::result::Result<String, String>;

pub fn pgl27() -> PermutationGroup {
    let gens = ["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)", "(1,8)(2,7)(3,4)(5,6)"]
        .iter()
        .map(|s| Permutation::parse(s, 8).unwrap())
        .collect();
    PermutationGroup::new("PGL(2,7)", 8, gens).unwrap()
}

/// `d(g, h) = n - fix(g h^-1)` for every pair of PGL(2,7), with the Hamming
/// distance computed position by position.
pub fn distance_formula_pgl27() -> Check {
    let g = pgl27();
    let t = g.elements().map_err(|e| e.to_string())?;
    let perms: Vec<Permutation> = t.ids().map(|e| t.permutation(e)).collect();
    for a in &perms {
        let la = a.list_form();
        for b in &perms {
            let lb = b.list_form();
            let hamming = la.iter().zip(&lb).filter(|(x, y)| x != y).count();
            let fix = a.compose(&b.inverse()).unwrap().fix_count();
            if hamming != 8 - fix {
                return Err(format!("d({a}, {b}) = {hamming}, 8 - fix = {}", 8 - fix));
            }
            let lib = hamming_distance(&a.as_word(), &b.as_word()).unwrap();
            if lib != hamming {
                return Err(format!("hamming_distance({a}, {b}) = {lib}, expected {hamming}"));
            }
        }
    }
    Ok(format!("{} pairs", perms.len() * perms.len()))
}

/// `r' = r` for repetition codes over the grid `d ∈ 1..=20`, `λ ∈ 1..=6`.
pub fn repetition_grid() -> Check {
    let mut cells = 0;
    for d in 1..=20usize {
        for lambda in 1..=6usize {
            let (r, r_prime) = repetition_strength_check(d, lambda);
            let direct = (lambda * d - 1) / 2 / lambda;
            if r != (d - 1) / 2 || r_prime != direct || r_prime != r {
                return Err(format!("d={d} λ={lambda}: r={r} r'={r_prime} direct={direct}"));
            }
            if correction_params(lambda * d, lambda).r_prime != r {
                return Err(format!("d={d} λ={lambda}: correction_params disagrees"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

pub fn fixture_dominance() -> Check {
    let mut count = 0;
    for key in fixtures::code_keys() {
        let code = fixtures::code(key).map_err(|e| e.to_string())?;
        let tw = code.delta_tw().unwrap().finite().unwrap();
        let rep = code.delta_rep().unwrap().finite().unwrap();
        if tw < rep {
            return Err(format!("{key}: δ_tw {tw} < δ_rep {rep}"));
        }
        count += 1;
    }
    Ok(format!("{count} fixture codes"))
}

/// Component from an automorphism (generator images), conjugated by the
/// inner automorphism of `h` and relabelled by `sigma`.
fn conjugate_component(
    g: &Arc<PermutationGroup>,
    alpha: &[Permutation],
    h: &Permutation,
    sigma: &[usize],
) -> ComponentSpec {
    let sigma = PointBijection::from_list(sigma).unwrap();
    let s = sigma.as_permutation();
    let conj = |x: &Permutation, c: &Permutation| c.inverse().compose(x).unwrap().compose(c).unwrap();
    let images = alpha.iter().map(|x| conj(&conj(x, h), s)).collect();
    ComponentSpec {
        group: Arc::new(g.relabel(&sigma, g.name()).unwrap()),
        generator_images: images,
        psi: Some(sigma),
    }
}

/// `δ_tw ≥ δ_rep` on random tuples of conjugate representations, and
/// `δ_tw` is unchanged by relabelling the components.
pub fn random_conjugate_tuples(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups = Vec::new();
    for key in ["s6", "a6", "asl3_2", "pgl2_7"] {
        let g = Arc::new(fixtures::group(key).unwrap());
        let opts = AutomorphismSearch {
            class_representatives: true,
            ..Default::default()
        };
        let auts = automorphisms(&g, &opts).map_err(|e| e.to_string())?;
        groups.push((g, auts));
    }
    for trial in 0..count {
        let (g, auts) = &groups[trial % groups.len()];
        let t = g.elements().unwrap();
        let n = g.degree();
        let lambda = rng.random_range(2..=4);
        let identity: Vec<usize> = (1..=n).collect();
        let (mut plain, mut moved) = (Vec::new(), Vec::new());
        for _ in 1..lambda {
            let alpha = &auts[rng.random_range(0..auts.len())];
            let h = t.permutation(ElementId::from_index(rng.random_range(0..t.len())));
            let mut sigma = identity.clone();
            sigma.shuffle(&mut rng);
            plain.push(conjugate_component(g, alpha, &h, &identity));
            moved.push(conjugate_component(g, alpha, &h, &sigma));
        }
        let a = TwistedCode::new("plain", g.clone(), plain, false).map_err(|e| e.to_string())?;
        let b = TwistedCode::new("relabelled", g.clone(), moved, false).map_err(|e| e.to_string())?;
        let tw = b.delta_tw().unwrap();
        let rep = b.delta_rep().unwrap();
        if tw.finite().unwrap() < rep.finite().unwrap() {
            return Err(format!("trial {trial} on {}: δ_tw {tw} < δ_rep {rep}", g.name()));
        }
        if a.delta_tw().unwrap() != tw {
            return Err(format!("trial {trial} on {}: relabelling changed δ_tw", g.name()));
        }
    }
    Ok(format!("{count} random tuples"))
}

fn exact_binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, j| acc * u128::from(n - j) / u128::from(j + 1))
}

/// `bk_power` against repeated multiplication and exact binomials, for
/// every exponent below `p`.
pub fn bk_closed_forms(instances: &[(u32, usize)]) -> Check {
    let mut checked = 0;
    for &(p, k) in instances {
        let b = MatrixModP::bk(p, k);
        let mut iterated = MatrixModP::identity(p, k);
        for i in 0..p {
            let m = bk_power(p, k, i).map_err(|e| e.to_string())?;
            if m != iterated {
                return Err(format!("B_{k}^{i} mod {p}: closed form differs from product"));
            }
            for r in 0..k {
                for c in 0..k {
                    let want = if c > r {
                        0
                    } else {
                        (exact_binomial(i.into(), (r - c) as u64) % u128::from(p)) as u32
                    };
                    if m.get(r, c) != want {
                        return Err(format!("B_{k}^{i} mod {p} entry ({r},{c})"));
                    }
                }
            }
            iterated = iterated.mul(&b);
            checked += 1;
        }
        if iterated.is_identity() != (k <= p as usize) || (bk_order(p, k).unwrap() == p) != (k <= p as usize) {
            return Err(format!("order of B_{k} mod {p}"));
        }
    }
    Ok(format!("{checked} powers"))
}

/// Whether every `r`-subset misses some row, by brute force.
pub fn brute_strength(ubb: &Ubb, n: usize, r: usize) -> bool {
    Colex::new(n, r).all(|s| {
        ubb.bases()
            .iter()
            .any(|b| b.points().iter().all(|x| !s.contains(&(x - 1))))
    })
}

/// Matching UBBs of random graphs: rows are disjoint, and the strength
/// shortcut agrees with brute force at every `r`.
pub fn matching_strength(graphs: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ubbs = 0;
    for _ in 0..graphs {
        let n = rng.random_range(4..=11);
        let edges: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(0.35))
            .collect();
        let g = SaxlGraph::from_edges("random", n, &edges).unwrap();
        for size in 1..=n / 2 {
            let Ok(u) = matching_ubb(&g, size) else {
                break;
            };
            if !u.is_pairwise_disjoint() {
                return Err(format!("matching rows overlap: {:?}", u.bases()));
            }
            for r in 0..=size {
                let fast = u.verify_strength_at(n, r, ubb::STRENGTH_BUDGET).unwrap().holds();
                if fast != brute_strength(&u, n, r) || fast != (r < size) {
                    return Err(format!("n={n} size={size} r={r}: shortcut {fast}"));
                }
            }
            ubbs += 1;
        }
    }
    Ok(format!("{ubbs} matching UBBs"))
}

//! Saxl graphs of base-size-two groups and matching UBBs.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Base, PermutationGroup};
use crate::matching::maximum_matching;
use crate::ubb::Ubb;

/// Graph on `{1..n}` whose edges are the two-point bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaxlGraph {
    group_name: String,
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// BFS spanning tree: `parent[v]` for every vertex but the root, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
}

pub fn saxl_graph(group: &PermutationGroup) -> Result<SaxlGraph> {
    let b = group.base_size()?;
    if b != 2 {
        return Err(Error::BaseSizeNotTwo(b));
    }
    let n = group.degree();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let edges = pairs
        .into_par_iter()
        .map(|(u, v)| Ok(group.is_base(&Base::new(vec![u, v])?)?.then_some((u, v))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(SaxlGraph {
        group_name: group.name().to_string(),
        n,
        edges,
    })
}

impl SaxlGraph {
    /// A graph from explicit 1-based edges.
    pub fn from_edges(name: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SaxlGraph {
            group_name: name.into(),
            n,
            edges: set,
        })
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency()[1..].iter().map(Vec::len).collect()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS spanning tree rooted at vertex 1, or the component split.
    pub fn spanning_tree(&self) -> Result<SpanningTree> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(comps));
        }
        let adj = self.adjacency();
        let mut parent = vec![None; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[1] = true;
        let mut queue = VecDeque::from([1]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        Ok(SpanningTree {
            root: 1,
            parent: parent[1..].to_vec(),
        })
    }

    /// Whether every generator of `group` maps edges to edges. With a
    /// transitive group this witnesses vertex-transitivity.
    pub fn is_invariant_under(&self, group: &PermutationGroup) -> bool {
        group.degree() == self.n
            && group
                .generators()
                .iter()
                .all(|g| self.edges.iter().all(|&(u, v)| self.has_edge(g.image(u), g.image(v))))
    }
}

/// `required_size` pairwise-disjoint edges from a maximum matching, as a UBB
/// of strength `required_size - 1`.
pub fn matching_ubb(graph: &SaxlGraph, required_size: usize) -> Result<Ubb> {
    if required_size == 0 {
        return Err(Error::Invalid("a UBB needs at least one base".into()));
    }
    let edges: Vec<(usize, usize)> = graph.edges().map(|(u, v)| (u - 1, v - 1)).collect();
    let m = maximum_matching(graph.n, &edges);
    if m.len() < required_size {
        return Err(Error::MatchingTooSmall {
            found: m.len(),
            required: required_size,
        });
    }
    let bases = m[..required_size]
        .iter()
        .map(|&(u, v)| Base::new(vec![u + 1, v + 1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ubb::new(graph.group_name.clone(), required_size - 1, bases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn single_edge() {
        let g = SaxlGraph::from_edges("e", 2, &[(1, 2)]).unwrap();
        let u = matching_ubb(&g, 1).unwrap();
        assert_eq!(u.bases()[0].points(), &[1, 2]);
        assert_eq!(u.strength(), 0);
        assert!(matches!(
            matching_ubb(&g, 2),
            Err(Error::MatchingTooSmall { found: 1, required: 2 })
        ));
    }

    #[test]
    fn k6_perfect_matching() {
        let edges: Vec<_> = (1..=6).flat_map(|u| (u + 1..=6).map(move |v| (u, v))).collect();
        let g = SaxlGraph::from_edges("K6", 6, &edges).unwrap();
        let u = matching_ubb(&g, 3).unwrap();
        assert!(u.is_pairwise_disjoint());
        assert!(u.verify_strength(6).unwrap().holds());
    }

    #[test]
    fn base_size_precondition() {
        // regular action of C5: one point is already a base
        let g = PermutationGroup::new("C5", 5, vec![Permutation::parse("(1,2,3,4,5)", 5).unwrap()]).unwrap();
        assert!(matches!(saxl_graph(&g), Err(Error::BaseSizeNotTwo(1))));
    }

    #[test]
    fn dihedral_saxl_graph() {
        // D5 on 5 points: b = 2, any two points form a base
        let gens = vec![
            Permutation::parse("(1,2,3,4,5)", 5).unwrap(),
            Permutation::parse("(2,5)(3,4)", 5).unwrap(),
        ];
        let g = PermutationGroup::new("D10", 5, gens).unwrap();
        let s = saxl_graph(&g).unwrap();
        assert_eq!(s.edge_count(), 10);
        assert!(s.spanning_tree().is_ok());
        assert!(s.is_invariant_under(&g));
    }

    #[test]
    fn disconnection_reports_components() {
        let g = SaxlGraph::from_edges("x", 4, &[(1, 2), (3, 4)]).unwrap();
        match g.spanning_tree() {
            Err(Error::Disconnected(c)) => assert_eq!(c, vec![vec![1, 2], vec![3, 4]]),
            other => panic!("{other:?}"),
        }
    }
}

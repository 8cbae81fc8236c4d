//! Complete signed graphs stored by their positive edges.
//!
//! Negative edges are the complement of the positive set and are never
//! materialized. Every vertex has a positive self-loop; it is not stored in
//! the adjacency lists and is added back by the neighborhood queries.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    pos_adj: Vec<Vec<u32>>,
}

/// Positive degrees counting the self-loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosDegreeProfile {
    pub deg_plus: Vec<usize>,
    /// Largest `deg_plus`, i.e. it counts the self-loop as well.
    pub delta_max: usize,
}

impl SignedGraph {
    /// Builds a graph from unordered positive pairs. Self-pairs are dropped
    /// and duplicates (in either orientation) are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::Parameter(format!(
                "vertex count {n} exceeds u32 range"
            )));
        }
        let mut pos_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                continue;
            }
            pos_adj[u].push(v as u32);
            pos_adj[v].push(u as u32);
        }
        for row in &mut pos_adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { n, pos_adj })
    }

    /// Graph with no positive edges besides the self-loops.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            pos_adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted positive neighbors of `u`, without `u` itself.
    pub fn pos_adj(&self, u: usize) -> &[u32] {
        &self.pos_adj[u]
    }

    /// `|N⁺_u|`, counting the self-loop.
    pub fn deg_plus(&self, u: usize) -> usize {
        self.pos_adj[u].len() + 1
    }

    pub fn degree_profile(&self) -> PosDegreeProfile {
        let deg_plus: Vec<usize> = (0..self.n).map(|u| self.deg_plus(u)).collect();
        let delta_max = deg_plus.iter().copied().max().unwrap_or(0);
        PosDegreeProfile {
            deg_plus,
            delta_max,
        }
    }

    /// Number of positive edges, self-loops excluded.
    pub fn num_pos_edges(&self) -> usize {
        self.pos_adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// True when `(u, v)` is a positive edge; always true for `u == v`.
    pub fn is_positive(&self, u: usize, v: usize) -> bool {
        u == v || self.pos_adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// `N⁺_u` including `u`, sorted.
    pub fn positive_neighborhood_with_self(&self, u: usize) -> Result<Vec<u32>> {
        self.check(u)?;
        Ok(self.closed_neighborhood(u))
    }

    pub(crate) fn closed_neighborhood(&self, u: usize) -> Vec<u32> {
        let adj = &self.pos_adj[u];
        let mut out = Vec::with_capacity(adj.len() + 1);
        let at = adj.partition_point(|&x| (x as usize) < u);
        out.extend_from_slice(&adj[..at]);
        out.push(u as u32);
        out.extend_from_slice(&adj[at..]);
        out
    }

    /// All `v` with `N⁺_u ∩ N⁺_v ≠ ∅`, including `u`, sorted.
    pub fn two_hop_positive(&self, u: usize) -> Result<Vec<u32>> {
        self.check(u)?;
        let mut seen = vec![false; self.n];
        Ok(self.two_hop_into(u, &mut seen))
    }

    /// Same as [`two_hop_positive`](Self::two_hop_positive) with a caller
    /// supplied scratch marker, which is left all-false on return.
    pub(crate) fn two_hop_into(&self, u: usize, seen: &mut [bool]) -> Vec<u32> {
        let mut out = Vec::new();
        let mut visit = |x: u32, out: &mut Vec<u32>| {
            if !seen[x as usize] {
                seen[x as usize] = true;
                out.push(x);
            }
        };
        visit(u as u32, &mut out);
        for &w in &self.pos_adj[u] {
            visit(w, &mut out);
            for &x in &self.pos_adj[w as usize] {
                visit(x, &mut out);
            }
        }
        for &x in &out {
            seen[x as usize] = false;
        }
        out.sort_unstable();
        out
    }

    /// Positive edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_pos_edges());
        for (u, row) in self.pos_adj.iter().enumerate() {
            for &v in row.iter().filter(|&&v| (v as usize) > u) {
                out.push((u, v as usize));
            }
        }
        out
    }

    /// Graph with the sign of every listed pair toggled.
    pub fn with_toggled(&self, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set: BTreeSet<(usize, usize)> = self.edges().into_iter().collect();
        for &(u, v) in pairs {
            self.check(u)?;
            self.check(v)?;
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if !set.remove(&key) {
                set.insert(key);
            }
        }
        Self::from_edges(self.n, set)
    }

    fn check(&self, u: usize) -> Result<()> {
        if u >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

/// Size of the intersection of two sorted lists.
#[cfg(test)]
fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path() -> SignedGraph {
        SignedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(path().pos_adj, vec![vec![1], vec![0, 2], vec![1]]);

        let g = SignedGraph::from_edges(3, [(0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(g.pos_adj, vec![vec![1], vec![0], vec![]]);

        let err = SignedGraph::from_edges(2, [(0, 5)]).unwrap_err();
        assert!(err.to_string().contains("vertex out of range"), "{err}");
    }

    #[test]
    fn closed_neighborhoods() {
        let g = path();
        assert_eq!(g.positive_neighborhood_with_self(1).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.positive_neighborhood_with_self(0).unwrap(), vec![0, 1]);

        let iso = SignedGraph::empty(4);
        assert_eq!(iso.positive_neighborhood_with_self(2).unwrap(), vec![2]);

        let k3 = SignedGraph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            k3.positive_neighborhood_with_self(0).unwrap(),
            vec![0, 1, 2]
        );
        assert!(k3.positive_neighborhood_with_self(3).is_err());
    }

    #[test]
    fn two_hop_examples() {
        assert_eq!(path().two_hop_positive(0).unwrap(), vec![0, 1, 2]);
        assert_eq!(SignedGraph::empty(3).two_hop_positive(1).unwrap(), vec![1]);
        let g = SignedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.two_hop_positive(0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn fact_one_holds() {
        let g = path();
        let prof = g.degree_profile();
        assert_eq!(prof.deg_plus, vec![2, 3, 2]);
        assert_eq!(prof.delta_max, 3);
        for u in 0..3 {
            let neg = (0..3).filter(|&v| !g.is_positive(u, v)).count();
            assert_eq!(prof.deg_plus[u] + neg, g.n());
        }
    }

    #[test]
    fn toggling() {
        let g = path();
        let h = g.with_toggled(&[(0, 2), (1, 0)]).unwrap();
        assert_eq!(h.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(h.with_toggled(&[(0, 2), (1, 0)]).unwrap(), g);
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..14).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..40)))
    }

    proptest! {
        #[test]
        fn invariants_and_round_trip((n, raw) in arb_graph()) {
            let g = SignedGraph::from_edges(n, raw.iter().copied()).unwrap();
            let mut rev = raw.clone();
            rev.reverse();
            let g2 = SignedGraph::from_edges(n, rev.iter().map(|&(u, v)| (v, u))).unwrap();
            prop_assert_eq!(&g, &g2);

            let expected: BTreeSet<(usize, usize)> = raw
                .iter()
                .filter(|(u, v)| u != v)
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            prop_assert_eq!(g.edges(), expected.into_iter().collect::<Vec<_>>());

            let prof = g.degree_profile();
            for u in 0..n {
                let row = g.pos_adj(u);
                prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!row.contains(&(u as u32)));
                for &v in row {
                    prop_assert!(g.pos_adj(v as usize).contains(&(u as u32)));
                }
                let two = g.two_hop_positive(u).unwrap();
                prop_assert!(two.len() <= prof.deg_plus[u] * prof.delta_max);
                let nu = g.closed_neighborhood(u);
                for v in 0..n {
                    let nv = g.closed_neighborhood(v);
                    let meets = sorted_intersection_len(&nu, &nv) > 0;
                    prop_assert_eq!(meets, two.binary_search(&(v as u32)).is_ok());

                    // The four intersections of N+ / N- partition V.
                    let (mut pp, mut pn, mut np, mut nn) = (0, 0, 0, 0);
                    for w in 0..n {
                        match (g.is_positive(u, w), g.is_positive(v, w)) {
                            (true, true) => pp += 1,
                            (true, false) => pn += 1,
                            (false, true) => np += 1,
                            (false, false) => nn += 1,
                        }
                    }
                    prop_assert_eq!(pp + pn + np + nn, n);
                }
            }
        }
    }
}

//! The lattice of elementary subgraphs of a snake graph: spanning subgraphs
//! that are unions of perfect matchings, ordered by inclusion.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{matching_vector, Matching};
use crate::linalg::affine_dimension;
use crate::oracle::{naive_perfect_matchings, PointFace};
use crate::snake_graph::SnakeGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementarySubgraph {
    /// Edge bit set.
    pub edges: u64,
    /// Indices of the perfect matchings contained in it.
    pub matchings: BTreeSet<usize>,
    pub chordless_cycles: usize,
    /// `1 + chordless_cycles`; the bottom element has rank 0.
    pub rank: usize,
}

fn contained(matchings: &[Matching], mask: u64) -> BTreeSet<usize> {
    (0..matchings.len())
        .filter(|&i| matchings[i].0 & !mask == 0)
        .collect()
}

/// Union-closure of the perfect matchings: every elementary subgraph,
/// including the whole graph but not the empty bottom element.
pub fn elementary_subgraphs(g: &SnakeGraph, matchings: &[Matching]) -> Vec<ElementarySubgraph> {
    let atoms: Vec<u64> = matchings.iter().map(|m| m.0).collect();
    let mut seen: HashSet<u64> = atoms.iter().copied().collect();
    let mut frontier: Vec<u64> = atoms.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &a in &atoms {
                let y = x | a;
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut masks: Vec<u64> = seen.into_iter().collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
        .into_iter()
        .map(|edges| {
            let c = chordless_cycle_count(g, edges);
            ElementarySubgraph {
                edges,
                matchings: contained(matchings, edges),
                chordless_cycles: c,
                rank: c + 1,
            }
        })
        .collect()
}

/// Simple cycles of the subgraph with edge set `mask`, each as an edge bit
/// set.
pub fn simple_cycles(g: &SnakeGraph, mask: u64) -> Vec<u64> {
    let n = g.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[e.ends.0].push((e.ends.1, i));
            adj[e.ends.1].push((e.ends.0, i));
        }
    }
    let mut found: BTreeSet<u64> = BTreeSet::new();
    for s in 0..n {
        // cycles whose smallest vertex is s
        let mut on_path = vec![false; n];
        on_path[s] = true;
        fn dfs(
            adj: &[Vec<(usize, usize)>],
            s: usize,
            u: usize,
            used: u64,
            depth: usize,
            on_path: &mut [bool],
            found: &mut BTreeSet<u64>,
        ) {
            for &(w, e) in &adj[u] {
                if used >> e & 1 == 1 {
                    continue;
                }
                if w == s && depth >= 2 {
                    found.insert(used | 1 << e);
                } else if w > s && !on_path[w] {
                    on_path[w] = true;
                    dfs(adj, s, w, used | 1 << e, depth + 1, on_path, found);
                    on_path[w] = false;
                }
            }
        }
        dfs(&adj, s, s, 0, 0, &mut on_path, &mut found);
    }
    found.into_iter().collect()
}

/// Number of cycles in the subgraph `mask` that have no chord in it.
pub fn chordless_cycle_count(g: &SnakeGraph, mask: u64) -> usize {
    simple_cycles(g, mask)
        .into_iter()
        .filter(|&cycle| {
            let mut on_cycle = 0u64;
            for e in (0..g.edges.len()).filter(|e| cycle >> e & 1 == 1) {
                on_cycle |= 1 << g.edges[e].ends.0 | 1 << g.edges[e].ends.1;
            }
            !(0..g.edges.len()).any(|e| {
                let (a, b) = g.edges[e].ends;
                mask >> e & 1 == 1
                    && cycle >> e & 1 == 0
                    && on_cycle >> a & 1 == 1
                    && on_cycle >> b & 1 == 1
            })
        })
        .count()
}

/// `1 +` the affine dimension of the matching vectors inside an element.
pub fn rank_by_affine_dimension(
    g: &SnakeGraph,
    matchings: &[Matching],
    h: &ElementarySubgraph,
) -> usize {
    let vecs: Vec<Vec<i64>> = h
        .matchings
        .iter()
        .map(|&i| matching_vector(&matchings[i], g).0)
        .collect();
    let refs: Vec<&[i64]> = vecs.iter().map(|v| v.as_slice()).collect();
    affine_dimension(&refs).map_or(0, |k| k + 1)
}

/// Face counts by dimension `0..d-1`: elements with `0..d-1` chordless
/// cycles.
pub fn f_vector(g: &SnakeGraph, elements: &[ElementarySubgraph]) -> Vec<usize> {
    let mut counts = vec![0; g.d()];
    for h in elements.iter().filter(|h| h.rank > 0) {
        if h.chordless_cycles < g.d() {
            counts[h.chordless_cycles] += 1;
        }
    }
    counts
}

/// Edges of `mask` that lie on some cycle of it (the non-bridges).
pub fn cycle_part(g: &SnakeGraph, mask: u64) -> u64 {
    simple_cycles(g, mask).into_iter().fold(0, |acc, c| acc | c)
}

/// Number of perfect matchings of the graph formed by the edges in `mask`
/// and the vertices they touch.
pub fn matching_count_of_edges(g: &SnakeGraph, mask: u64) -> usize {
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let n = index.len();
            let a = *index.entry(e.ends.0).or_insert(n);
            let n = index.len();
            let b = *index.entry(e.ends.1).or_insert(n);
            edges.push((a, b));
        }
    }
    if index.is_empty() {
        return 1;
    }
    naive_perfect_matchings(index.len(), &edges).len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    /// Elements sorted by rank; index 0 is the empty bottom element.
    pub elements: Vec<ElementarySubgraph>,
    pub matching_count: usize,
}

impl FaceLattice {
    pub fn build(g: &SnakeGraph, matchings: &[Matching]) -> Self {
        let mut elements = vec![ElementarySubgraph {
            edges: 0,
            matchings: BTreeSet::new(),
            chordless_cycles: 0,
            rank: 0,
        }];
        elements.extend(elementary_subgraphs(g, matchings));
        elements.sort_by_key(|e| (e.rank, e.edges.count_ones(), e.edges));
        FaceLattice {
            elements,
            matching_count: matchings.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn top(&self) -> &ElementarySubgraph {
        self.elements.last().unwrap()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &ElementarySubgraph> {
        self.elements.iter().filter(|e| e.rank == 1)
    }

    fn below(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.elements[i].edges, self.elements[j].edges);
        i != j && a & !b == 0 && a != b
    }

    /// Covering pairs `(lower, upper)` of the inclusion order, computed
    /// without reference to ranks.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut covers = Vec::new();
        for j in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&i| self.below(i, j)).collect();
            for &i in &lower {
                if !lower.iter().any(|&k| self.below(i, k)) {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    /// Lengths of all maximal chains from the bottom to the top.
    pub fn maximal_chain_lengths(&self) -> BTreeSet<usize> {
        let n = self.elements.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, j) in self.hasse() {
            up[i].push(j);
        }
        // lengths of maximal chains starting at each element
        let mut memo: Vec<Option<BTreeSet<usize>>> = vec![None; n];
        fn walk(
            u: usize,
            up: &[Vec<usize>],
            memo: &mut [Option<BTreeSet<usize>>],
        ) -> BTreeSet<usize> {
            if let Some(s) = &memo[u] {
                return s.clone();
            }
            let s: BTreeSet<usize> = if up[u].is_empty() {
                BTreeSet::from([0])
            } else {
                up[u]
                    .iter()
                    .flat_map(|&w| {
                        walk(w, up, memo)
                            .into_iter()
                            .map(|l| l + 1)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            };
            memo[u] = Some(s.clone());
            s
        }
        walk(0, &up, &mut memo)
    }

    /// Whether every covering pair differs by exactly one in rank.
    pub fn is_graded_by_rank(&self) -> bool {
        self.hasse()
            .into_iter()
            .all(|(i, j)| self.elements[j].rank == self.elements[i].rank + 1)
    }

    /// The element obtained by superimposing the given matchings, if its
    /// contained matchings are exactly those.
    pub fn face_of_vertexset(
        &self,
        matchings: &[Matching],
        set: &BTreeSet<usize>,
    ) -> Option<usize> {
        let mask = set.iter().fold(0u64, |acc, &i| acc | matchings[i].0);
        self.elements
            .iter()
            .position(|e| e.edges == mask && &e.matchings == set)
    }

    /// Matchings contained in an edge set that must be a union of them.
    pub fn vertexset_of_face(&self, mask: u64) -> Result<&BTreeSet<usize>> {
        self.elements
            .iter()
            .find(|e| e.edges == mask)
            .map(|e| &e.matchings)
            .ok_or(Error::NotElementary)
    }
}

/// Result of matching the elementary-subgraph lattice with a face lattice
/// computed from points (point `i` being matching `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismCertificate {
    pub holds: bool,
    /// `(face index, element index)` pairs.
    pub mapping: Vec<(usize, usize)>,
    pub witness: Option<String>,
}

/// Maps each face (a set of matchings) to the superimposed elementary
/// subgraph and checks that this is a rank-preserving bijection. Both orders
/// are inclusion of matching sets, so a bijection that preserves those sets
/// is an order isomorphism.
pub fn certify_isomorphism(
    lattice: &FaceLattice,
    matchings: &[Matching],
    faces: &[PointFace],
) -> IsomorphismCertificate {
    let fail = |mapping, w: String| IsomorphismCertificate {
        holds: false,
        mapping,
        witness: Some(w),
    };
    let mut mapping = Vec::with_capacity(faces.len());
    let mut hit = vec![false; lattice.len()];
    for (fi, face) in faces.iter().enumerate() {
        let Some(ei) = (if face.points.is_empty() {
            Some(0)
        } else {
            lattice.face_of_vertexset(matchings, &face.points)
        }) else {
            return fail(
                mapping,
                format!("face {:?} is not an elementary subgraph", face.points),
            );
        };
        if lattice.elements[ei].rank != face.rank {
            return fail(
                mapping,
                format!(
                    "face {:?} has rank {} but element has rank {}",
                    face.points, face.rank, lattice.elements[ei].rank
                ),
            );
        }
        if hit[ei] {
            return fail(mapping, format!("element {ei} reached twice"));
        }
        hit[ei] = true;
        mapping.push((fi, ei));
    }
    if let Some(ei) = hit.iter().position(|h| !h) {
        return fail(
            mapping,
            format!(
                "element with matchings {:?} is not a face",
                lattice.elements[ei].matchings
            ),
        );
    }
    IsomorphismCertificate {
        holds: true,
        mapping,
        witness: None,
    }
}

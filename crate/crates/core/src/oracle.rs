//! Brute-force geometry used to check the closed-form descriptions.
//!
//! Nothing here knows about triangulations: hulls, facets and face lattices
//! are computed from point coordinates alone, by exact elimination and
//! subset enumeration. The facet search is capped at dimension
//! [`DESK_BOUND`].

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, int_nullspace, int_rank, rat, rref, Rational};
use crate::polytope::{
    AffineEquation, EquationOrigin, Form, HRep, InequalityOrigin, LinearInequality, Sense,
};
use crate::snake_graph::{Side, SnakeGraph};
use crate::triangulation::Label;

pub const DESK_BOUND: usize = 7;

/// A finite, deduplicated set of integer points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub ambient: usize,
    pub points: Vec<Vec<i64>>,
}

impl PointSet {
    pub fn new(ambient: usize, points: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut seen = HashSet::new();
        let points = points
            .into_iter()
            .filter(|p| {
                assert_eq!(p.len(), ambient);
                seen.insert(p.clone())
            })
            .collect();
        PointSet { ambient, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        let refs: Vec<&[i64]> = self.points.iter().map(|p| p.as_slice()).collect();
        affine_dimension(&refs)
    }

    fn differences(&self) -> Vec<Vec<i64>> {
        let p0 = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect()
    }
}

fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Independent equations cutting out the affine hull of the points.
pub fn affine_hull_of_points(p: &PointSet) -> Vec<AffineEquation> {
    if p.is_empty() {
        return Vec::new();
    }
    int_nullspace(&p.differences(), p.ambient)
        .into_iter()
        .map(|n| {
            let rhs = dot(&n, &p.points[0]);
            AffineEquation {
                coeffs: n,
                rhs,
                origin: EquationOrigin::Oracle,
            }
        })
        .collect()
}

/// A facet found by the search, with the indices of the points on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleFacet {
    pub inequality: LinearInequality,
    pub tight: BTreeSet<usize>,
}

/// Coordinates on which the projection of the points keeps full dimension.
fn chart(p: &PointSet) -> Vec<usize> {
    let mut rows: Vec<Vec<Rational>> = p
        .differences()
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    rref(&mut rows, p.ambient)
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All facets of the convex hull of the points. Every `d`-subset of points is
/// tried as a candidate hyperplane inside a `d`-coordinate chart; a
/// hyperplane is kept when all points lie weakly on one side.
pub fn facets_of_points(p: &PointSet) -> Result<Vec<OracleFacet>> {
    let Some(d) = p.dimension() else {
        return Ok(Vec::new());
    };
    if d > DESK_BOUND {
        return Err(Error::DeskBoundExceeded {
            dimension: d,
            bound: DESK_BOUND,
        });
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let cols = chart(p);
    let proj: Vec<Vec<i64>> = p
        .points
        .iter()
        .map(|x| cols.iter().map(|&c| x[c]).collect())
        .collect();
    let mut found: BTreeMap<(Vec<i64>, i64), BTreeSet<usize>> = BTreeMap::new();
    combinations(proj.len(), d, |subset| {
        if found
            .values()
            .any(|tight| subset.iter().all(|i| tight.contains(i)))
        {
            return;
        }
        let base = &proj[subset[0]];
        let diffs: Vec<Vec<i64>> = subset[1..]
            .iter()
            .map(|&i| proj[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = int_nullspace(&diffs, d);
        if ns.len() != 1 {
            return;
        }
        let n = &ns[0];
        let c = dot(n, base);
        let vals: Vec<i64> = proj.iter().map(|q| dot(n, q)).collect();
        let (lo, hi) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
        let key = if hi == c {
            (n.clone(), c)
        } else if lo == c {
            (n.iter().map(|x| -x).collect(), -c)
        } else {
            return;
        };
        let tight = (0..proj.len()).filter(|&i| vals[i] == c).collect();
        found.entry(key).or_insert(tight);
    });
    Ok(found
        .into_iter()
        .map(|((n, c), tight)| {
            let mut coeffs = vec![0; p.ambient];
            for (&col, &v) in cols.iter().zip(&n) {
                coeffs[col] = v;
            }
            OracleFacet {
                inequality: LinearInequality {
                    coeffs,
                    rhs: c,
                    sense: Sense::Le,
                    origin: InequalityOrigin::Oracle,
                },
                tight,
            }
        })
        .collect())
}

/// H-representation assembled from the oracle hull and facets.
pub fn oracle_hrep(p: &PointSet, facets: &[OracleFacet], form: Form) -> HRep {
    HRep::new(
        p.ambient,
        form,
        affine_hull_of_points(p),
        facets.iter().map(|f| f.inequality.clone()).collect(),
    )
}

/// A face as the set of point indices on it, with rank `dim + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PointFace {
    pub points: BTreeSet<usize>,
    pub rank: usize,
}

/// Faces of a polytope: intersections of facet point sets, plus the whole
/// polytope and the empty face.
pub fn face_lattice_of_points(p: &PointSet, facets: &[OracleFacet]) -> Vec<PointFace> {
    let all: BTreeSet<usize> = (0..p.len()).collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
    faces.insert(all.clone());
    queue.push_back(all);
    while let Some(f) = queue.pop_front() {
        for facet in facets {
            let g: BTreeSet<usize> = f.intersection(&facet.tight).copied().collect();
            if faces.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    faces.insert(BTreeSet::new());
    let mut out: Vec<PointFace> = faces
        .into_iter()
        .map(|points| {
            let refs: Vec<&[i64]> = points.iter().map(|&i| p.points[i].as_slice()).collect();
            let rank = affine_dimension(&refs).map_or(0, |k| k + 1);
            PointFace { points, rank }
        })
        .collect();
    out.sort_by(|a, b| (a.rank, &a.points).cmp(&(b.rank, &b.points)));
    out
}

/// f-vector from a point lattice: face counts by dimension `0..d-1`.
pub fn f_vector_of_faces(faces: &[PointFace], dimension: usize) -> Vec<usize> {
    (1..=dimension)
        .map(|r| faces.iter().filter(|f| f.rank == r).count())
        .collect()
}

/// Whether point `i` is a vertex: the facets through it meet only in it.
pub fn is_vertex(p: &PointSet, facets: &[OracleFacet], i: usize) -> bool {
    if p.dimension() == Some(0) {
        return p.len() == 1;
    }
    let mut meet: BTreeSet<usize> = (0..p.len()).collect();
    for f in facets.iter().filter(|f| f.tight.contains(&i)) {
        meet = meet.intersection(&f.tight).copied().collect();
    }
    meet.len() == 1
}

/// A graph whose edges all carry distinct coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueLabelGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Coordinate label of each edge, all distinct, in `1..=ambient`.
    pub labels: Vec<Label>,
    pub ambient: usize,
}

impl UniqueLabelGraph {
    /// Two-colouring of the vertices, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for s in 0..self.vertex_count {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn weight_vector(&self, matching: &[usize]) -> Vec<i64> {
        let mut v = vec![0; self.ambient];
        for &e in matching {
            v[self.labels[e] - 1] += 1;
        }
        v
    }
}

/// The projection summing each split coordinate back into its original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub from: usize,
    pub to: usize,
    /// `(split, original)` coordinate label pairs.
    pub pairs: Vec<(Label, Label)>,
}

impl Projection {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut y = x[..self.to].to_vec();
        for &(s, o) in &self.pairs {
            y[o - 1] += x[s - 1];
        }
        y
    }
}

/// Classical description of the perfect matching polytope of a bipartite
/// graph: nonnegative edge weights, each vertex covered with total weight 1.
/// Coordinates not used by any edge are pinned to zero.
pub fn pm_polytope_hrep(b: &UniqueLabelGraph) -> Result<HRep> {
    if b.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let used: BTreeSet<Label> = b.labels.iter().copied().collect();
    let mut equations: Vec<AffineEquation> = (1..=b.ambient)
        .filter(|l| !used.contains(l))
        .map(|l| AffineEquation::new(b.ambient, &[l], 0, EquationOrigin::AbsentEdge))
        .collect();
    for v in 0..b.vertex_count {
        let labels: Vec<Label> = b
            .edges
            .iter()
            .zip(&b.labels)
            .filter(|((x, y), _)| *x == v || *y == v)
            .map(|(_, &l)| l)
            .collect();
        equations.push(AffineEquation::new(
            b.ambient,
            &labels,
            1,
            EquationOrigin::Oracle,
        ));
    }
    let inequalities = b
        .labels
        .iter()
        .map(|&l| LinearInequality::new(b.ambient, &[l], Sense::Ge, 0, InequalityOrigin::Oracle))
        .collect();
    Ok(HRep::new(
        b.ambient,
        Form::Unshifted,
        equations,
        inequalities,
    ))
}

/// Splits every duplicated label `e` into `e` and `k + e`, `k` the number of
/// labels, and returns the projection that merges them again.
pub fn relabel_and_project(g: &SnakeGraph) -> (UniqueLabelGraph, Projection) {
    let k = g.label_count;
    let mut seen = BTreeSet::new();
    let mut labels = Vec::with_capacity(g.edges.len());
    let mut pairs = Vec::new();
    for e in &g.edges {
        if seen.insert(e.label) {
            labels.push(e.label);
        } else {
            labels.push(k + e.label);
            pairs.push((k + e.label, e.label));
        }
    }
    let ambient = if pairs.is_empty() { k } else { 2 * k };
    (
        UniqueLabelGraph {
            vertex_count: g.vertices.len(),
            edges: g.edges.iter().map(|e| e.ends).collect(),
            labels,
            ambient,
        },
        Projection {
            from: ambient,
            to: k,
            pairs,
        },
    )
}

/// Rank of the per-tile weightings together with the split-pair
/// differences; the projection keeps the dimension when this is `d + r`.
pub fn kernel_basis_rank(g: &SnakeGraph, b: &UniqueLabelGraph, pi: &Projection) -> usize {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for tile in &g.tiles {
        let mut q = vec![0; b.ambient];
        for side in Side::ALL {
            let e = tile.edge(side);
            q[b.labels[e] - 1] = if side.is_horizontal() { 1 } else { -1 };
        }
        rows.push(q);
    }
    for &(s, o) in &pi.pairs {
        let mut v = vec![0; b.ambient];
        v[o - 1] = 1;
        v[s - 1] = -1;
        rows.push(v);
    }
    int_rank(&rows, b.ambient)
}

/// Perfect matchings by plain backtracking: cover the lowest uncovered
/// vertex with each available edge in turn.
pub fn naive_perfect_matchings(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut out = Vec::new();
    let mut covered = vec![false; vertex_count];
    let mut chosen = Vec::new();
    fn rec(
        adj: &[Vec<(usize, usize)>],
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(v) = covered.iter().position(|c| !c) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        covered[v] = true;
        for &(w, e) in &adj[v] {
            if !covered[w] {
                covered[w] = true;
                chosen.push(e);
                rec(adj, covered, chosen, out);
                chosen.pop();
                covered[w] = false;
            }
        }
        covered[v] = false;
    }
    rec(&adj, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

//! Triangulated polygons, arcs and the combinatorics around them.
//!
//! Vertices of an `m`-gon are `0..m`, counterclockwise. Diagonals carry the
//! labels `1..=n` in input order and the boundary segments carry
//! `n+1..=2n+3`, counterclockwise starting from the segment `(0, 1)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge label, `1..=2n+3`.
pub type Label = usize;

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether two chords of a convex polygon cross in their interiors.
pub fn chords_cross(p: (usize, usize), q: (usize, usize)) -> bool {
    let (a, b) = ordered(p.0, p.1);
    let (c, d) = ordered(q.0, q.1);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Input record describing a triangulation and, optionally, an arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSpec {
    pub vertex_count: usize,
    pub diagonals: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[usize; 2]>,
    /// Maps canonical label `i` (at position `i - 1`) to a display label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_permutation: Option<Vec<Label>>,
}

impl TriangulationSpec {
    /// Validates the spec and returns the triangulation, the arc (if any) and
    /// the display relabeling.
    pub fn build(&self) -> Result<(Triangulation, Option<Arc>, LabelMap)> {
        let at = |field: &'static str| {
            move |e: Error| Error::InvalidField {
                field,
                reason: Box::new(e),
            }
        };
        if self.vertex_count < 3 {
            return Err(at("vertex_count")(Error::TooFewVertices(self.vertex_count)));
        }
        let t = Triangulation::from_spec(self).map_err(at("diagonals"))?;
        let gamma = match self.gamma {
            Some([s, e]) => Some(Arc::new(s, e, t.vertex_count()).map_err(at("gamma"))?),
            None => None,
        };
        let map = match &self.label_permutation {
            Some(p) => LabelMap::new(p.clone()).map_err(at("label_permutation"))?,
            None => LabelMap::identity(t.label_count()),
        };
        if map.len() != t.label_count() {
            return Err(at("label_permutation")(Error::BadPermutation(
                t.label_count(),
            )));
        }
        Ok((t, gamma, map))
    }
}

/// A renaming of the labels `1..=k` used only for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelMap(Vec<Label>);

impl LabelMap {
    pub fn identity(len: usize) -> Self {
        LabelMap((1..=len).collect())
    }

    /// `perm[i - 1]` is the new name of label `i`.
    pub fn new(perm: Vec<Label>) -> Result<Self> {
        let k = perm.len();
        let distinct: BTreeSet<Label> = perm.iter().copied().collect();
        if distinct.len() != k || distinct.iter().any(|&l| l == 0 || l > k) {
            return Err(Error::BadPermutation(k));
        }
        Ok(LabelMap(perm))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &l)| l == i + 1)
    }

    pub fn label(&self, l: Label) -> Label {
        self.0[l - 1]
    }

    /// Moves the entry for label `i` to position `label(i)`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.0[i] - 1] = x;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    vertex_count: usize,
    /// Endpoints of every label; index 0 is unused.
    edges: Vec<(usize, usize)>,
    labels: HashMap<(usize, usize), Label>,
    triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Builds and validates a triangulation from a vertex count and its
    /// diagonals (in label order).
    pub fn new(vertex_count: usize, diagonals: &[(usize, usize)]) -> Result<Self> {
        if vertex_count < 3 {
            return Err(Error::TooFewVertices(vertex_count));
        }
        let m = vertex_count;
        let mut seen = BTreeSet::new();
        for &(a, b) in diagonals {
            for v in [a, b] {
                if v >= m {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count: m,
                    });
                }
            }
            if a == b {
                return Err(Error::DegenerateEdge(a, b));
            }
            let (lo, hi) = ordered(a, b);
            if hi - lo == 1 || (lo == 0 && hi == m - 1) {
                return Err(Error::BoundaryAsDiagonal(a, b));
            }
            if !seen.insert((lo, hi)) {
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        for (i, &p) in diagonals.iter().enumerate() {
            for &q in &diagonals[i + 1..] {
                if chords_cross(p, q) {
                    return Err(Error::CrossingDiagonals(p.0, p.1, q.0, q.1));
                }
            }
        }
        if diagonals.len() != m - 3 {
            return Err(Error::NotMaximal {
                vertex_count: m,
                expected: m - 3,
                found: diagonals.len(),
            });
        }

        let mut edges = vec![(0, 0)];
        edges.extend(diagonals.iter().map(|&(a, b)| ordered(a, b)));
        edges.extend((0..m).map(|i| ordered(i, (i + 1) % m)));
        let labels: HashMap<_, _> = edges
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, &e)| (e, l))
            .collect();

        let mut triangles = BTreeSet::new();
        for &(a, b) in edges.iter().skip(1) {
            for c in 0..m {
                if c != a
                    && c != b
                    && labels.contains_key(&ordered(a, c))
                    && labels.contains_key(&ordered(b, c))
                {
                    let mut t = [a, b, c];
                    t.sort_unstable();
                    triangles.insert(t);
                }
            }
        }
        Ok(Triangulation {
            vertex_count,
            edges,
            labels,
            triangles: triangles.into_iter().collect(),
        })
    }

    pub fn from_spec(spec: &TriangulationSpec) -> Result<Self> {
        let diags: Vec<(usize, usize)> = spec.diagonals.iter().map(|d| (d[0], d[1])).collect();
        Self::new(spec.vertex_count, &diags)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of diagonals.
    pub fn n(&self) -> usize {
        self.vertex_count - 3
    }

    /// Number of edge labels, `2n + 3`.
    pub fn label_count(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn is_diagonal(&self, label: Label) -> bool {
        (1..=self.n()).contains(&label)
    }

    pub fn is_boundary(&self, label: Label) -> bool {
        label > self.n() && label <= self.label_count()
    }

    /// Endpoints of the edge with the given label, smaller vertex first.
    pub fn endpoints(&self, label: Label) -> (usize, usize) {
        self.edges[label]
    }

    pub fn label_of(&self, a: usize, b: usize) -> Option<Label> {
        self.labels.get(&ordered(a, b)).copied()
    }

    pub fn diagonals(&self) -> impl Iterator<Item = (Label, (usize, usize))> + '_ {
        (1..=self.n()).map(move |l| (l, self.edges[l]))
    }

    /// The `n + 1` triangles, each with sorted (hence counterclockwise) vertices.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    fn triangles_on(&self, a: usize, b: usize) -> Vec<[usize; 3]> {
        self.triangles
            .iter()
            .filter(|t| t.contains(&a) && t.contains(&b))
            .copied()
            .collect()
    }

    pub fn to_spec(&self) -> TriangulationSpec {
        TriangulationSpec {
            vertex_count: self.vertex_count,
            diagonals: self.diagonals().map(|(_, (a, b))| [a, b]).collect(),
            gamma: None,
            label_permutation: None,
        }
    }

    /// Every diagonal of the polygon that is not an edge of the triangulation.
    pub fn enumerate_arcs(&self) -> Vec<Arc> {
        let m = self.vertex_count;
        let mut arcs = Vec::new();
        for a in 0..m {
            for b in a + 2..m {
                if a == 0 && b == m - 1 {
                    continue;
                }
                if self.label_of(a, b).is_none() {
                    arcs.push(Arc {
                        source: a,
                        target: b,
                    });
                }
            }
        }
        arcs
    }

    /// Crossed diagonals of `gamma`, ordered from its source.
    pub fn crossed_diagonals(&self, gamma: &Arc) -> Vec<Label> {
        self.strip(gamma).map(|s| s.crossed).unwrap_or_default()
    }

    /// Walks the triangle strip from the source of `gamma` to its target.
    /// Returns `None` when `gamma` is an edge of the triangulation.
    pub fn strip(&self, gamma: &Arc) -> Option<Strip> {
        let (s, t) = (gamma.source, gamma.target);
        if self.label_of(s, t).is_some() {
            return None;
        }
        let g = (s, t);
        let first = self.triangles.iter().find(|tri| {
            tri.contains(&s) && {
                let opp: Vec<usize> = tri.iter().copied().filter(|&v| v != s).collect();
                chords_cross((opp[0], opp[1]), g)
            }
        })?;
        let mut triangles = vec![*first];
        let mut crossed = Vec::new();
        let opp: Vec<usize> = first.iter().copied().filter(|&v| v != s).collect();
        let mut edge = (opp[0], opp[1]);
        let mut current = *first;
        loop {
            crossed.push(self.label_of(edge.0, edge.1)?);
            let next = self
                .triangles_on(edge.0, edge.1)
                .into_iter()
                .find(|tri| *tri != current)?;
            triangles.push(next);
            let apex = next.iter().copied().find(|&v| v != edge.0 && v != edge.1)?;
            if apex == t {
                break;
            }
            edge = if chords_cross((edge.0, apex), g) {
                (edge.0, apex)
            } else {
                (edge.1, apex)
            };
            current = next;
        }
        Some(Strip {
            source: s,
            target: t,
            crossed,
            triangles,
        })
    }

    /// The quadrilateral formed by the two triangles on diagonal `label`.
    pub fn quadrilateral_of(&self, label: Label) -> Result<Quadrilateral> {
        if !self.is_diagonal(label) {
            return Err(Error::NotADiagonal(label));
        }
        let (p, q) = self.endpoints(label);
        let apexes: Vec<usize> = self
            .triangles_on(p, q)
            .iter()
            .map(|t| t.iter().copied().find(|&v| v != p && v != q).unwrap())
            .collect();
        debug_assert_eq!(apexes.len(), 2);
        let mut vertices = [p, q, apexes[0], apexes[1]];
        vertices.sort_unstable();
        let sides = [0, 1, 2, 3].map(|i| {
            self.label_of(vertices[i], vertices[(i + 1) % 4])
                .expect("quadrilateral side is an edge")
        });
        Ok(Quadrilateral {
            diagonal: label,
            vertices,
            sides,
        })
    }

    pub fn sub_triangulation(&self, gamma: &Arc) -> Result<SubTriangulation> {
        let strip = self.strip(gamma).ok_or(Error::DegenerateArc)?;
        Ok(SubTriangulation::from_strip(self, &strip))
    }

    pub fn is_balanced(&self, gamma: &Arc, a: Label) -> Result<bool> {
        let sub = self.sub_triangulation(gamma)?;
        if !sub.crossed.contains(&a) {
            return Err(Error::NotCrossed(a));
        }
        let quad = self.quadrilateral_of(a)?;
        Ok(quad
            .opposite_pairs()
            .iter()
            .any(|&(x, y)| sub.is_boundary(x) && sub.is_boundary(y)))
    }

    /// The quiver obtained by inscribing a clockwise 3-cycle in each triangle.
    pub fn build_quiver(&self) -> Quiver {
        let mut arrows = Vec::new();
        for &[a, b, c] in &self.triangles {
            // sides in counterclockwise order; arrows run clockwise
            let ab = self.label_of(a, b).unwrap();
            let bc = self.label_of(b, c).unwrap();
            let ca = self.label_of(c, a).unwrap();
            for (from, to) in [(ab, ca), (ca, bc), (bc, ab)] {
                arrows.push(Arrow {
                    from,
                    to,
                    frozen_frozen: self.is_boundary(from) && self.is_boundary(to),
                });
            }
        }
        Quiver {
            mutable_vertices: (1..=self.n()).collect(),
            frozen_vertices: (self.n() + 1..=self.label_count()).collect(),
            arrows,
        }
    }

    /// All triangulations of an `m`-gon (Catalan many), diagonals sorted.
    pub fn all(vertex_count: usize) -> Vec<Triangulation> {
        let mut memo = HashMap::new();
        let sets = triangulate_range(0, vertex_count - 1, &mut memo);
        sets.into_iter()
            .map(|mut diags| {
                diags.sort_unstable();
                Triangulation::new(vertex_count, &diags).expect("generated triangulation")
            })
            .collect()
    }

    /// A random triangulation by recursive ear splitting (not uniform).
    pub fn random<R: Rng>(vertex_count: usize, rng: &mut R) -> Triangulation {
        let mut diags = Vec::new();
        random_range(0, vertex_count - 1, rng, &mut diags);
        Triangulation::new(vertex_count, &diags).expect("generated triangulation")
    }
}

type DiagonalSets = Vec<Vec<(usize, usize)>>;

fn triangulate_range(
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), DiagonalSets>,
) -> DiagonalSets {
    if j <= i + 1 {
        return vec![vec![]];
    }
    if let Some(r) = memo.get(&(i, j)) {
        return r.clone();
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let left = triangulate_range(i, k, memo);
        let right = triangulate_range(k, j, memo);
        for l in &left {
            for r in &right {
                let mut d = l.clone();
                d.extend_from_slice(r);
                if k > i + 1 {
                    d.push((i, k));
                }
                if j > k + 1 {
                    d.push((k, j));
                }
                out.push(d);
            }
        }
    }
    memo.insert((i, j), out.clone());
    out
}

fn random_range<R: Rng>(i: usize, j: usize, rng: &mut R, out: &mut Vec<(usize, usize)>) {
    if j <= i + 1 {
        return;
    }
    let k = rng.gen_range(i + 1..j);
    if k > i + 1 {
        out.push((i, k));
    }
    if j > k + 1 {
        out.push((k, j));
    }
    random_range(i, k, rng, out);
    random_range(k, j, rng, out);
}

/// An oriented diagonal of the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
}

impl Arc {
    pub fn new(source: usize, target: usize, vertex_count: usize) -> Result<Self> {
        for v in [source, target] {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
        }
        if source == target {
            return Err(Error::DegenerateEdge(source, target));
        }
        Ok(Arc { source, target })
    }

    pub fn reversed(&self) -> Arc {
        Arc {
            source: self.target,
            target: self.source,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.source == v || self.target == v
    }

    pub fn is_degenerate(&self, t: &Triangulation) -> bool {
        t.label_of(self.source, self.target).is_some()
    }
}

/// Triangles `Δ_0..Δ_d` met by an arc and the diagonals it crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub source: usize,
    pub target: usize,
    pub crossed: Vec<Label>,
    pub triangles: Vec<[usize; 3]>,
}

impl Strip {
    pub fn d(&self) -> usize {
        self.crossed.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quadrilateral {
    pub diagonal: Label,
    /// Counterclockwise polygon vertices.
    pub vertices: [usize; 4],
    /// `sides[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub sides: [Label; 4],
}

impl Quadrilateral {
    pub fn opposite_pairs(&self) -> [(Label, Label); 2] {
        [
            (self.sides[0], self.sides[2]),
            (self.sides[1], self.sides[3]),
        ]
    }

    /// The pair opposite to the pair containing `side`.
    pub fn other_pair(&self, pair: (Label, Label)) -> (Label, Label) {
        let [p, q] = self.opposite_pairs();
        if p == pair || p == (pair.1, pair.0) {
            q
        } else {
            p
        }
    }
}

/// The part of the triangulation spanned by the arc and the diagonals it
/// crosses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubTriangulation {
    pub gamma: Arc,
    pub crossed: Vec<Label>,
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<Label>,
    /// Edges of the sub-triangulation that are not crossed diagonals.
    pub boundary: BTreeSet<Label>,
    /// Edges of the triangulation outside the sub-triangulation.
    pub complement: BTreeSet<Label>,
    pub incidence: BTreeMap<usize, BTreeSet<Label>>,
    /// `|diagonals(w)|`: number of edges of `γ ∪ D(γ)` at each vertex.
    pub diagonal_degree: BTreeMap<usize, usize>,
    #[serde(skip)]
    endpoints: BTreeMap<Label, (usize, usize)>,
}

impl SubTriangulation {
    fn from_strip(t: &Triangulation, strip: &Strip) -> Self {
        let gamma = Arc {
            source: strip.source,
            target: strip.target,
        };
        let vertices: BTreeSet<usize> = strip.triangles.iter().flatten().copied().collect();
        let mut edges = BTreeSet::new();
        let mut endpoints = BTreeMap::new();
        for l in 1..=t.label_count() {
            let (a, b) = t.endpoints(l);
            if vertices.contains(&a) && vertices.contains(&b) {
                edges.insert(l);
                endpoints.insert(l, (a, b));
            }
        }
        let crossed_set: BTreeSet<Label> = strip.crossed.iter().copied().collect();
        let boundary = edges.difference(&crossed_set).copied().collect();
        let complement = (1..=t.label_count())
            .filter(|l| !edges.contains(l))
            .collect();
        let mut incidence: BTreeMap<usize, BTreeSet<Label>> =
            vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for (&l, &(a, b)) in &endpoints {
            incidence.get_mut(&a).unwrap().insert(l);
            incidence.get_mut(&b).unwrap().insert(l);
        }
        let diagonal_degree = vertices
            .iter()
            .map(|&w| {
                let mut k = usize::from(gamma.contains(w));
                k += strip
                    .crossed
                    .iter()
                    .filter(|&&l| {
                        let (a, b) = t.endpoints(l);
                        a == w || b == w
                    })
                    .count();
                (w, k)
            })
            .collect();
        SubTriangulation {
            gamma,
            crossed: strip.crossed.clone(),
            vertices,
            edges,
            boundary,
            complement,
            incidence,
            diagonal_degree,
            endpoints,
        }
    }

    pub fn d(&self) -> usize {
        self.crossed.len()
    }

    pub fn is_boundary(&self, l: Label) -> bool {
        self.boundary.contains(&l)
    }

    pub fn endpoints(&self, l: Label) -> Option<(usize, usize)> {
        self.endpoints.get(&l).copied()
    }

    /// Whether edge `l` shares an endpoint with the arc.
    pub fn touches_gamma(&self, l: Label) -> bool {
        self.endpoints(l)
            .is_some_and(|(a, b)| self.gamma.contains(a) || self.gamma.contains(b))
    }

    /// The crossed diagonals other than the first and last.
    pub fn middle(&self) -> &[Label] {
        if self.crossed.len() <= 2 {
            &[]
        } else {
            &self.crossed[1..self.crossed.len() - 1]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: Label,
    pub to: Label,
    pub frozen_frozen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub mutable_vertices: Vec<Label>,
    pub frozen_vertices: Vec<Label>,
    pub arrows: Vec<Arrow>,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn nonagon() -> Triangulation {
        Triangulation::new(9, &[(0, 7), (0, 6), (0, 5), (0, 4), (1, 4), (1, 3)]).unwrap()
    }

    fn quad() -> Triangulation {
        Triangulation::new(4, &[(0, 2)]).unwrap()
    }

    #[test]
    fn quadrilateral_labels() {
        let t = quad();
        assert_eq!(t.n(), 1);
        assert_eq!(t.endpoints(2), (0, 1));
        assert_eq!(t.endpoints(5), (0, 3));
        assert_eq!(t.label_count(), 5);
    }

    #[test]
    fn nonagon_is_valid() {
        let t = nonagon();
        assert_eq!(t.n(), 6);
        assert_eq!(t.label_count(), 15);
        assert_eq!(t.triangles().len(), 7);
    }

    #[test]
    fn pentagon_with_crossing_pair_rejected() {
        // (0,3) and (1,4)? no: (0,2),(0,3),(1,3); the crossing pair is (0,2)/(1,3)
        let err = Triangulation::new(5, &[(0, 2), (0, 3), (1, 3)]).unwrap_err();
        assert_eq!(err, Error::CrossingDiagonals(0, 2, 1, 3));
    }

    #[test]
    fn non_maximal_and_duplicates_rejected() {
        assert!(matches!(
            Triangulation::new(6, &[(0, 2), (0, 3)]),
            Err(Error::NotMaximal { .. })
        ));
        assert!(matches!(
            Triangulation::new(5, &[(0, 2), (2, 0)]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            Triangulation::new(5, &[(0, 1), (0, 2)]),
            Err(Error::BoundaryAsDiagonal(..))
        ));
        assert!(matches!(
            Triangulation::new(5, &[(0, 7), (0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn crossing_predicate() {
        assert!(chords_cross((0, 2), (1, 3)));
        assert!(chords_cross((1, 3), (0, 2)));
        assert!(!chords_cross((0, 2), (0, 2)));
        assert!(!chords_cross((0, 3), (1, 3)));
    }

    #[test]
    fn nonagon_crossings() {
        let t = nonagon();
        let g = Arc::new(7, 2, 9).unwrap();
        assert_eq!(t.crossed_diagonals(&g), vec![2, 3, 4, 5, 6]);
        assert_eq!(t.crossed_diagonals(&g.reversed()), vec![6, 5, 4, 3, 2]);
    }

    #[test]
    fn degenerate_arc_has_no_crossings() {
        let t = nonagon();
        assert!(t.crossed_diagonals(&Arc::new(0, 4, 9).unwrap()).is_empty());
        assert!(t.crossed_diagonals(&Arc::new(3, 4, 9).unwrap()).is_empty());
        assert_eq!(
            t.sub_triangulation(&Arc::new(0, 4, 9).unwrap()),
            Err(Error::DegenerateArc)
        );
    }

    #[test]
    fn quadrilateral_crossings() {
        let t = quad();
        assert_eq!(t.crossed_diagonals(&Arc::new(1, 3, 4).unwrap()), vec![1]);
    }

    #[test]
    fn nonagon_sub_triangulation() {
        let t = nonagon();
        let sub = t.sub_triangulation(&Arc::new(7, 2, 9).unwrap()).unwrap();
        assert_eq!(sub.complement, BTreeSet::from([14, 15]));
        assert_eq!(sub.incidence[&0], BTreeSet::from([1, 2, 3, 4, 7]));
        assert_eq!(sub.diagonal_degree[&0], 3);
        assert_eq!(sub.vertices.len(), 8);
    }

    #[test]
    fn quadrilateral_sub_triangulation_is_everything() {
        let t = quad();
        let sub = t.sub_triangulation(&Arc::new(1, 3, 4).unwrap()).unwrap();
        assert!(sub.complement.is_empty());
        assert_eq!(sub.edges.len(), 5);
    }

    #[test]
    fn nonagon_quadrilaterals() {
        let t = nonagon();
        let q = t.quadrilateral_of(5).unwrap();
        let mut sides = q.sides;
        sides.sort_unstable();
        assert_eq!(sides, [4, 6, 7, 10]);
        let pairs: Vec<BTreeSet<Label>> = q
            .opposite_pairs()
            .iter()
            .map(|&(a, b)| BTreeSet::from([a, b]))
            .collect();
        assert!(pairs.contains(&BTreeSet::from([7, 10])));
        assert!(pairs.contains(&BTreeSet::from([4, 6])));
        assert_eq!(t.quadrilateral_of(12), Err(Error::NotADiagonal(12)));
    }

    #[test]
    fn nonagon_quadrilateral_three_from_adjacent_triangles() {
        let t = nonagon();
        let q = t.quadrilateral_of(3).unwrap();
        // triangles on diagonal 3 = (0,5): {0,5,6} and {0,4,5}
        assert_eq!(q.vertices, [0, 4, 5, 6]);
        let pairs = q.opposite_pairs();
        assert_eq!(
            pairs.map(|(a, b)| BTreeSet::from([a, b])),
            [BTreeSet::from([4, 12]), BTreeSet::from([11, 2])]
        );
    }

    #[test]
    fn balanced_diagonals() {
        let t = nonagon();
        let g = Arc::new(7, 2, 9).unwrap();
        assert!(t.is_balanced(&g, 5).unwrap());
        assert!(!t.is_balanced(&g, 3).unwrap());
        assert_eq!(t.is_balanced(&g, 1), Err(Error::NotCrossed(1)));
        let q = quad();
        assert!(q.is_balanced(&Arc::new(1, 3, 4).unwrap(), 1).unwrap());
    }

    #[test]
    fn quiver_arrow_counts() {
        let q = quad().build_quiver();
        assert_eq!(q.arrows.len(), 6);
        // each triangle has two boundary sides
        assert_eq!(q.arrows.iter().filter(|a| a.frozen_frozen).count(), 2);
        let qv = nonagon().build_quiver();
        assert_eq!(qv.arrows.len(), 21);
        assert_eq!(qv.mutable_vertices, (1..=6).collect::<Vec<_>>());
    }

    #[test]
    fn arc_enumeration_counts() {
        assert_eq!(quad().enumerate_arcs().len(), 1);
        let p = Triangulation::new(5, &[(0, 2), (0, 3)]).unwrap();
        assert_eq!(p.enumerate_arcs().len(), 3);
        assert_eq!(nonagon().enumerate_arcs().len(), 21);
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (3..=9).map(|m| Triangulation::all(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
    }
}

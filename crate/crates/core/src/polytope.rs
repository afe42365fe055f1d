//! Newton polytopes of cluster variables, in vertex and inequality form.
//!
//! Two coordinate conventions are used. The shifted form `N` has the
//! Laurent exponent vectors as vertices. The unshifted form `P` is the
//! perfect matching polytope of the snake graph, which is `N` translated by
//! the indicator vector of the crossed diagonals.
//!
//! Coefficients are stored as `i64`: every description produced here is
//! integral. Elimination and comparison go through exact rationals.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{laurent_expansion_of_graph, matching_vector, perfect_matchings};
use crate::linalg::{primitive_integer, rat, rref, Rational};
use crate::snake_graph::{Side, SnakeGraph};
use crate::triangulation::{Arc, Label, LabelMap, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// Exponent vectors of the Laurent expansion.
    Shifted,
    /// Matching vectors of the snake graph.
    Unshifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationOrigin {
    AbsentEdge,
    VertexClass,
    TVertex,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityOrigin {
    InteriorEdge,
    UniqueExteriorPair,
    NonUniquePair,
    BoundarySegment,
    BalancedTriple,
    BalancedBoundary,
    BalancedEnd,
    /// One of the two endpoints of a segment (single crossed diagonal).
    SegmentEndpoint,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineEquation {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub origin: EquationOrigin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearInequality {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub sense: Sense,
    pub origin: InequalityOrigin,
}

fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

fn sparse(len: usize, labels: &[Label]) -> Vec<i64> {
    let mut v = vec![0; len];
    for &l in labels {
        v[l - 1] += 1;
    }
    v
}

impl AffineEquation {
    pub fn new(len: usize, labels: &[Label], rhs: i64, origin: EquationOrigin) -> Self {
        AffineEquation {
            coeffs: sparse(len, labels),
            rhs,
            origin,
        }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        dot(&self.coeffs, x) == self.rhs
    }

    pub fn shifted(&self, s: &[i64]) -> Self {
        AffineEquation {
            rhs: self.rhs + dot(&self.coeffs, s),
            ..self.clone()
        }
    }
}

impl LinearInequality {
    pub fn new(
        len: usize,
        labels: &[Label],
        sense: Sense,
        rhs: i64,
        origin: InequalityOrigin,
    ) -> Self {
        LinearInequality {
            coeffs: sparse(len, labels),
            rhs,
            sense,
            origin,
        }
    }

    /// `a·x - b`, signed so that feasible points give a value `<= 0`.
    pub fn slack_sign(&self, x: &[i64]) -> i64 {
        let v = dot(&self.coeffs, x) - self.rhs;
        match self.sense {
            Sense::Le => v,
            Sense::Ge => -v,
        }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        self.slack_sign(x) <= 0
    }

    pub fn holds_strictly(&self, x: &[i64]) -> bool {
        self.slack_sign(x) < 0
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.slack_sign(x) == 0
    }

    pub fn shifted(&self, s: &[i64]) -> Self {
        LinearInequality {
            rhs: self.rhs + dot(&self.coeffs, s),
            ..self.clone()
        }
    }

    /// The same inequality in `<=` form.
    pub fn as_le(&self) -> (Vec<i64>, i64) {
        match self.sense {
            Sense::Le => (self.coeffs.clone(), self.rhs),
            Sense::Ge => (self.coeffs.iter().map(|c| -c).collect(), -self.rhs),
        }
    }
}

fn write_linear(f: &mut fmt::Formatter<'_>, coeffs: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if c.abs() != 1 {
            write!(f, "{}*", c.abs())?;
        }
        write!(f, "x{}", i + 1)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for AffineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.coeffs)?;
        write!(f, " = {}", self.rhs)
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.coeffs)?;
        let op = match self.sense {
            Sense::Ge => ">=",
            Sense::Le => "<=",
        };
        write!(f, " {op} {}", self.rhs)
    }
}

/// Inequality description: an affine hull cut down by facet inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HRep {
    pub ambient: usize,
    pub form: Form,
    pub equations: Vec<AffineEquation>,
    pub inequalities: Vec<LinearInequality>,
}

/// Canonical form of an inequality relative to an affine hull: the primitive
/// integer vector `(a, b)` of `a·x <= b` after eliminating the hull's pivot
/// coordinates.
pub type CanonicalInequality = (Vec<BigInt>, BigInt);

/// Keeps a maximal linearly independent prefix-greedy subset of equations.
pub fn independent_equations(eqs: &[AffineEquation]) -> Vec<AffineEquation> {
    let mut kept: Vec<AffineEquation> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in eqs {
        rows.push(e.coeffs.iter().map(|&c| rat(c)).collect());
        if rref(&mut rows.clone(), e.coeffs.len()).len() == rows.len() {
            kept.push(e.clone());
        } else {
            rows.pop();
        }
    }
    kept
}

impl HRep {
    /// Builds an H-representation, dropping dependent equations.
    pub fn new(
        ambient: usize,
        form: Form,
        equations: Vec<AffineEquation>,
        inequalities: Vec<LinearInequality>,
    ) -> Self {
        HRep {
            ambient,
            form,
            equations: independent_equations(&equations),
            inequalities,
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.holds(x)) && self.inequalities.iter().all(|i| i.holds(x))
    }

    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.holds(x))
            && self.inequalities.iter().all(|i| i.holds_strictly(x))
    }

    /// Dimension of the affine hull `{x : equations}`.
    pub fn hull_dimension(&self) -> usize {
        self.ambient - self.equations.len()
    }

    /// Translates every point of the polytope by `s`.
    pub fn shift(&self, s: &[i64], form: Form) -> HRep {
        HRep {
            ambient: self.ambient,
            form,
            equations: self.equations.iter().map(|e| e.shifted(s)).collect(),
            inequalities: self.inequalities.iter().map(|i| i.shifted(s)).collect(),
        }
    }

    /// Equations in reduced row echelon form (augmented with the rhs) and
    /// their pivot columns.
    pub fn reduced_equations(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut rows: Vec<Vec<Rational>> = self
            .equations
            .iter()
            .map(|e| {
                let mut r: Vec<Rational> = e.coeffs.iter().map(|&c| rat(c)).collect();
                r.push(rat(e.rhs));
                r
            })
            .collect();
        let pivots = rref(&mut rows, self.ambient);
        (rows, pivots)
    }

    pub fn canonical_inequalities(&self) -> BTreeSet<CanonicalInequality> {
        let (rows, pivots) = self.reduced_equations();
        self.inequalities
            .iter()
            .map(|ineq| canonicalize(ineq, &rows, &pivots, self.ambient))
            .collect()
    }

    /// Whether both systems describe the same hull with the same facets, up
    /// to adding multiples of the hull equations and positive scaling.
    pub fn equivalent(&self, other: &HRep) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let (a, _) = self.reduced_equations();
        let (b, _) = other.reduced_equations();
        a == b && self.canonical_inequalities() == other.canonical_inequalities()
    }

    pub fn relabeled(&self, map: &LabelMap) -> HRep {
        HRep {
            ambient: self.ambient,
            form: self.form,
            equations: self
                .equations
                .iter()
                .map(|e| AffineEquation {
                    coeffs: map.apply(&e.coeffs),
                    ..e.clone()
                })
                .collect(),
            inequalities: self
                .inequalities
                .iter()
                .map(|i| LinearInequality {
                    coeffs: map.apply(&i.coeffs),
                    ..i.clone()
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("equations:\n");
        for e in &self.equations {
            s.push_str(&format!("  {e}\n"));
        }
        s.push_str("inequalities:\n");
        for i in &self.inequalities {
            s.push_str(&format!("  {i}\n"));
        }
        s
    }
}

fn canonicalize(
    ineq: &LinearInequality,
    rows: &[Vec<Rational>],
    pivots: &[usize],
    ambient: usize,
) -> CanonicalInequality {
    let (a, b) = ineq.as_le();
    let mut v: Vec<Rational> = a.iter().map(|&c| rat(c)).collect();
    v.push(rat(b));
    for (row, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &f * y;
        }
    }
    let mut ints = primitive_integer(&v);
    let rhs = ints.pop().unwrap();
    debug_assert_eq!(ints.len(), ambient);
    (ints, rhs)
}

/// Vertex description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VRep {
    pub form: Form,
    pub vertices: Vec<Vec<i64>>,
}

impl VRep {
    pub fn shift(&self, s: &[i64], form: Form) -> VRep {
        VRep {
            form,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    pub fn relabeled(&self, map: &LabelMap) -> VRep {
        VRep {
            form: self.form,
            vertices: self.vertices.iter().map(|v| map.apply(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `±𝟙` on the crossed diagonals of the graph.
pub fn shift_vector(g: &SnakeGraph, sign: i64) -> Vec<i64> {
    let mut v = vec![0; g.label_count];
    for &l in &g.crossed {
        v[l - 1] = sign;
    }
    v
}

/// Exponent vectors of the Laurent expansion.
pub fn newton_vrep(t: &Triangulation, gamma: &Arc) -> Result<VRep> {
    let g = SnakeGraph::build(t, gamma)?;
    Ok(newton_vrep_of_graph(&g))
}

pub fn newton_vrep_of_graph(g: &SnakeGraph) -> VRep {
    VRep {
        form: Form::Shifted,
        vertices: laurent_expansion_of_graph(g)
            .terms()
            .map(|(e, _)| e.0.clone())
            .collect(),
    }
}

/// Characteristic vectors of the perfect matchings.
pub fn matching_vrep(g: &SnakeGraph) -> VRep {
    let mut vertices: Vec<Vec<i64>> = if let Some(k) = g.degenerate {
        let mut v = vec![0; g.label_count];
        v[k - 1] = 1;
        vec![v]
    } else {
        perfect_matchings(g)
            .iter()
            .map(|m| matching_vector(m, g).0)
            .collect()
    };
    vertices.sort();
    VRep {
        form: Form::Unshifted,
        vertices,
    }
}

/// Affine hull equations of the shifted polytope read off the triangulation.
pub fn affine_hull_from_t(t: &Triangulation, gamma: &Arc) -> Result<Vec<AffineEquation>> {
    let sub = t.sub_triangulation(gamma)?;
    let len = t.label_count();
    let mut eqs: Vec<AffineEquation> = sub
        .complement
        .iter()
        .map(|&l| AffineEquation::new(len, &[l], 0, EquationOrigin::AbsentEdge))
        .collect();
    for (&w, labels) in &sub.incidence {
        let labels: Vec<Label> = labels.iter().copied().collect();
        let rhs = i64::from(gamma.contains(w));
        eqs.push(AffineEquation::new(
            len,
            &labels,
            rhs,
            EquationOrigin::TVertex,
        ));
    }
    Ok(eqs)
}

/// Affine hull equations of the matching polytope read off the snake graph:
/// one per vertex class and one per label missing from the graph.
pub fn affine_hull_from_g(g: &SnakeGraph) -> Result<Vec<AffineEquation>> {
    if g.is_degenerate() {
        return Err(Error::DegenerateArc);
    }
    let len = g.label_count;
    let present = g.labels();
    let mut eqs: Vec<AffineEquation> = (1..=len)
        .filter(|l| !present.contains(l))
        .map(|l| AffineEquation::new(len, &[l], 0, EquationOrigin::AbsentEdge))
        .collect();
    for class in g.vertex_classes(None).classes {
        let labels: Vec<Label> = class.labels.iter().copied().collect();
        eqs.push(AffineEquation::new(
            len,
            &labels,
            class.members.len() as i64,
            EquationOrigin::VertexClass,
        ));
    }
    Ok(eqs)
}

/// The two endpoint inequalities `0 <= x_b <= 1` of a one-tile polytope,
/// with `b` the smallest side label.
fn segment_facets(g: &SnakeGraph) -> Vec<LinearInequality> {
    let b = *g.tiles[0].labels.iter().min().unwrap();
    let len = g.label_count;
    vec![
        LinearInequality::new(len, &[b], Sense::Ge, 0, InequalityOrigin::SegmentEndpoint),
        LinearInequality::new(len, &[b], Sense::Le, 1, InequalityOrigin::SegmentEndpoint),
    ]
}

/// Facet inequalities of the matching polytope read off the snake graph.
pub fn facets_from_g(g: &SnakeGraph) -> Result<Vec<LinearInequality>> {
    if g.is_degenerate() {
        return Err(Error::DegenerateArc);
    }
    let len = g.label_count;
    if g.d() == 1 {
        return Ok(segment_facets(g));
    }
    let mut out: Vec<LinearInequality> = g
        .edges
        .iter()
        .filter(|e| e.interior)
        .map(|e| {
            LinearInequality::new(
                len,
                &[e.label],
                Sense::Ge,
                0,
                InequalityOrigin::InteriorEdge,
            )
        })
        .collect();
    for k in 0..g.d() {
        let Some((s1, s2)) = g.opposite_exterior_pair(k) else {
            continue;
        };
        let tile = &g.tiles[k];
        let (e, f) = (tile.label(s1), tile.label(s2));
        let unique: Vec<Label> = [e, f]
            .into_iter()
            .filter(|&l| g.is_unique_label(l))
            .collect();
        if let Some(&l) = unique.iter().min() {
            out.push(LinearInequality::new(
                len,
                &[l],
                Sense::Ge,
                0,
                InequalityOrigin::UniqueExteriorPair,
            ));
        } else {
            let others: Vec<Label> = Side::ALL
                .into_iter()
                .filter(|&s| s != s1 && s != s2)
                .map(|s| tile.label(s))
                .collect();
            out.push(LinearInequality::new(
                len,
                &[tile.diagonal, others[0], others[1]],
                Sense::Le,
                2,
                InequalityOrigin::NonUniquePair,
            ));
        }
    }
    Ok(out)
}

/// Facet inequalities of the shifted polytope read off the triangulation.
pub fn facets_from_t(t: &Triangulation, gamma: &Arc) -> Result<Vec<LinearInequality>> {
    let sub = t.sub_triangulation(gamma)?;
    let len = t.label_count();
    if sub.d() == 1 {
        let g = SnakeGraph::build(t, gamma)?;
        return Ok(segment_facets(&g));
    }
    let mut out: Vec<LinearInequality> = sub
        .boundary
        .iter()
        .filter(|&&l| !sub.touches_gamma(l))
        .map(|&l| LinearInequality::new(len, &[l], Sense::Ge, 0, InequalityOrigin::BoundarySegment))
        .collect();
    let middle: BTreeSet<Label> = sub.middle().iter().copied().collect();
    let ends = [sub.crossed[0], sub.crossed[sub.d() - 1]];
    for &a in &sub.crossed {
        if !t.is_balanced(gamma, a)? {
            continue;
        }
        let quad = t.quadrilateral_of(a)?;
        for (b, c) in quad.opposite_pairs() {
            if !(sub.is_boundary(b) && sub.is_boundary(c)) {
                continue;
            }
            let (e, f) = quad.other_pair((b, c));
            if middle.contains(&e) && middle.contains(&f) {
                out.push(LinearInequality::new(
                    len,
                    &[a, b, c],
                    Sense::Le,
                    1,
                    InequalityOrigin::BalancedTriple,
                ));
            } else if let Some(l) = [e, f].into_iter().filter(|&l| sub.is_boundary(l)).min() {
                out.push(LinearInequality::new(
                    len,
                    &[l],
                    Sense::Ge,
                    0,
                    InequalityOrigin::BalancedBoundary,
                ));
            } else {
                let l = [e, f]
                    .into_iter()
                    .filter(|l| ends.contains(l))
                    .min()
                    .expect("remaining case involves an end diagonal");
                out.push(LinearInequality::new(
                    len,
                    &[l],
                    Sense::Ge,
                    -1,
                    InequalityOrigin::BalancedEnd,
                ));
            }
        }
    }
    Ok(out)
}

/// Shifted-form H-representation from the triangulation.
pub fn hrep_from_t(t: &Triangulation, gamma: &Arc) -> Result<HRep> {
    Ok(HRep::new(
        t.label_count(),
        Form::Shifted,
        affine_hull_from_t(t, gamma)?,
        facets_from_t(t, gamma)?,
    ))
}

/// Unshifted-form H-representation from the snake graph.
pub fn hrep_from_g(g: &SnakeGraph) -> Result<HRep> {
    Ok(HRep::new(
        g.label_count,
        Form::Unshifted,
        affine_hull_from_g(g)?,
        facets_from_g(g)?,
    ))
}

/// Dimension of the Newton polytope: the number of crossed diagonals.
pub fn dimension(t: &Triangulation, gamma: &Arc) -> usize {
    t.crossed_diagonals(gamma).len()
}

/// `2d - 1 - t` facets, `t` the number of corners; two for a segment and
/// none for a point.
pub fn facet_count(t: &Triangulation, gamma: &Arc) -> Result<usize> {
    let g = SnakeGraph::build(t, gamma)?;
    Ok(facet_count_of_graph(&g))
}

pub fn facet_count_of_graph(g: &SnakeGraph) -> usize {
    match g.d() {
        0 => 0,
        1 => 2,
        d => 2 * d - 1 - g.corners().1,
    }
}

/// Lattice points in the relative interior. Free coordinates of the hull
/// range over the bounding box of the vertices; the remaining coordinates
/// are solved for and must come out integral.
pub fn interior_lattice_points(h: &HRep, v: &VRep) -> Vec<Vec<i64>> {
    if v.vertices.is_empty() {
        return Vec::new();
    }
    let (rows, pivots) = h.reduced_equations();
    let free: Vec<usize> = (0..h.ambient).filter(|c| !pivots.contains(c)).collect();
    let lo: Vec<i64> = (0..h.ambient)
        .map(|c| v.vertices.iter().map(|p| p[c]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..h.ambient)
        .map(|c| v.vertices.iter().map(|p| p[c]).max().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; h.ambient];
    for &c in &free {
        x[c] = lo[c];
    }
    'outer: loop {
        // solve for pivot coordinates
        let mut ok = true;
        for (row, &p) in rows.iter().zip(&pivots) {
            let mut val = row[h.ambient].clone();
            for &c in &free {
                if !row[c].is_zero() {
                    val -= &row[c] * rat(x[c]);
                }
            }
            match crate::linalg::to_i64(&val) {
                Some(k) if k >= lo[p] && k <= hi[p] => x[p] = k,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && h.contains_in_relative_interior(&x) {
            out.push(x.clone());
        }
        for &c in &free {
            if x[c] < hi[c] {
                x[c] += 1;
                continue 'outer;
            }
            x[c] = lo[c];
        }
        break;
    }
    out
}

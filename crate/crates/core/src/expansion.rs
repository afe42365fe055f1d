//! Perfect matchings of snake graphs and the Laurent expansions they give.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::snake_graph::{SnakeGraph, Tile};
use crate::triangulation::{Arc, Label, LabelMap, Triangulation};

/// A perfect matching as a bit set over snake-graph edge indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matching(pub u64);

impl Matching {
    pub fn contains(&self, edge: usize) -> bool {
        self.0 >> edge & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&e| bits >> e & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Whether every vertex of `g` is covered exactly once.
    pub fn is_perfect(&self, g: &SnakeGraph) -> bool {
        let mut seen = vec![0u8; g.vertices.len()];
        for e in self.edges() {
            let Some(edge) = g.edges.get(e) else {
                return false;
            };
            seen[edge.ends.0] += 1;
            seen[edge.ends.1] += 1;
        }
        seen.iter().all(|&c| c == 1)
    }
}

/// Integer vector indexed by edge labels `1..=label_count` (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(label_count: usize) -> Self {
        ExponentVector(vec![0; label_count])
    }

    pub fn unit(label_count: usize, label: Label) -> Self {
        let mut v = Self::zero(label_count);
        v.0[label - 1] = 1;
        v
    }

    pub fn get(&self, label: Label) -> i64 {
        self.0[label - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Indicator vector of a label set.
    pub fn indicator(label_count: usize, labels: &[Label]) -> Self {
        let mut v = Self::zero(label_count);
        for &l in labels {
            v.0[l - 1] = 1;
        }
        v
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Characteristic label vector of a matching: entry `l` counts the matching
/// edges labeled `l`.
pub fn matching_vector(m: &Matching, g: &SnakeGraph) -> ExponentVector {
    let mut v = ExponentVector::zero(g.label_count);
    for e in m.edges() {
        v.0[g.edges[e].label - 1] += 1;
    }
    v
}

/// Vertex ids of a tile in SW, SE, NE, NW order.
fn tile_vertices(g: &SnakeGraph, tile: &Tile) -> [usize; 4] {
    let pts = tile.corner_points();
    let mut out = [0; 4];
    for (o, p) in out.iter_mut().zip(pts) {
        *o = g.vertices.iter().position(|&q| q == p).unwrap();
    }
    out
}

/// Per-tile data for the transfer recursion.
struct Step {
    /// Edges introduced at this tile.
    edges: Vec<usize>,
    /// Vertices that must be covered once this tile is processed.
    required: u64,
}

fn steps(g: &SnakeGraph) -> Vec<Step> {
    let d = g.d();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let tile = &g.tiles[k];
        let edges: Vec<usize> = tile
            .edges
            .iter()
            .copied()
            .filter(|&e| k == 0 || !g.edges[e].tiles.contains(&k))
            .collect();
        let mut required = 0u64;
        for v in tile_vertices(g, tile) {
            required |= 1 << v;
        }
        if k + 1 < d {
            let glue = tile
                .edges
                .iter()
                .copied()
                .find(|&e| g.edges[e].tiles.contains(&(k + 2)))
                .expect("consecutive tiles share an edge");
            let (a, b) = g.edges[glue].ends;
            required &= !(1u64 << a | 1u64 << b);
        }
        out.push(Step { edges, required });
    }
    out
}

/// Matchings of the edges in `edges` avoiding the vertices in `covered`,
/// returned as (edge mask, new vertex mask) pairs.
fn local_extensions(g: &SnakeGraph, edges: &[usize], covered: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    'subset: for sub in 0u32..1 << edges.len() {
        let mut emask = 0u64;
        let mut vmask = covered;
        for (i, &e) in edges.iter().enumerate() {
            if sub >> i & 1 == 1 {
                let (a, b) = g.edges[e].ends;
                let bits = 1u64 << a | 1u64 << b;
                if vmask & bits != 0 {
                    continue 'subset;
                }
                vmask |= bits;
                emask |= 1 << e;
            }
        }
        out.push((emask, vmask));
    }
    out
}

/// All perfect matchings of a non-degenerate snake graph, built tile by tile.
/// The state carried between tiles is which vertices are already covered;
/// only the endpoints of the next glue edge can still be open.
pub fn perfect_matchings(g: &SnakeGraph) -> Vec<Matching> {
    if g.d() == 0 {
        return Vec::new();
    }
    let steps = steps(g);
    let mut out = Vec::new();
    fn rec(
        g: &SnakeGraph,
        steps: &[Step],
        k: usize,
        emask: u64,
        vmask: u64,
        out: &mut Vec<Matching>,
    ) {
        if k == steps.len() {
            out.push(Matching(emask));
            return;
        }
        for (e, v) in local_extensions(g, &steps[k].edges, vmask) {
            if v & steps[k].required == steps[k].required {
                rec(g, steps, k + 1, emask | e, v, out);
            }
        }
    }
    rec(g, &steps, 0, 0, 0, &mut out);
    out.sort();
    out
}

/// Number of perfect matchings, by the same transfer recursion with states
/// collapsed to the coverage of the pending glue edge.
pub fn count_perfect_matchings(g: &SnakeGraph) -> u128 {
    if g.d() == 0 {
        return 0;
    }
    let steps = steps(g);
    let mut states: HashMap<u64, u128> = HashMap::from([(0u64, 1u128)]);
    for step in &steps {
        let mut next: HashMap<u64, u128> = HashMap::new();
        for (&vmask, &count) in &states {
            for (_, v) in local_extensions(g, &step.edges, vmask) {
                if v & step.required == step.required {
                    // forget vertices that can no longer be touched
                    *next.entry(v & !step.required).or_insert(0) += count;
                }
            }
        }
        states = next;
    }
    states.values().sum()
}

/// Number of perfect matchings from the continuant recurrence. With `m_k`
/// the count for the first `k` tiles and `a_k` the count of those using the
/// edge glued to tile `k + 1`: `m_{k+1} = m_k + a_k`, and `a_{k+1}` is `m_k`
/// when tile `k + 1` continues straight, `a_k` when it turns.
pub fn continuant_count(g: &SnakeGraph) -> u128 {
    let d = g.d();
    if d == 0 {
        return 0;
    }
    let (mut m, mut a) = (2u128, 1u128);
    for j in 1..d {
        let next_m = m + a;
        if j + 1 < d && g.tiles[j].step != g.tiles[j + 1].step {
            // turn: the next glue edge is adjacent to this one
        } else if j + 1 < d {
            a = m;
        }
        m = next_m;
    }
    m
}

fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// A Laurent polynomial in the edge variables `x_1..x_{label_count}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    label_count: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentTerm {
    pub exponents: Vec<i64>,
    #[serde(serialize_with = "ser_bigint")]
    pub coeff: BigInt,
}

/// Numerator terms over a common monomial denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentRecord {
    /// Labels of the denominator monomial, repeated by multiplicity.
    pub denominator: Vec<Label>,
    pub terms: Vec<LaurentTerm>,
    pub string: String,
}

impl LaurentPolynomial {
    pub fn new(label_count: usize) -> Self {
        LaurentPolynomial {
            label_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponents: ExponentVector) -> Self {
        let mut p = Self::new(exponents.len());
        p.add_term(exponents, BigInt::one());
        p
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn add_term(&mut self, exponents: ExponentVector, coeff: BigInt) {
        assert_eq!(exponents.len(), self.label_count);
        let entry = self
            .terms
            .entry(exponents.clone())
            .or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &ExponentVector) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Exponents of the smallest monomial clearing every negative exponent.
    pub fn denominator(&self) -> ExponentVector {
        let mut den = ExponentVector::zero(self.label_count);
        for e in self.terms.keys() {
            for (d, &x) in den.0.iter_mut().zip(&e.0) {
                *d = (*d).max(-x);
            }
        }
        den
    }

    pub fn to_record(&self) -> LaurentRecord {
        let den = self.denominator();
        let denominator = den
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k as usize))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| LaurentTerm {
                exponents: e.add(&den).0,
                coeff: c.clone(),
            })
            .collect();
        LaurentRecord {
            denominator,
            terms,
            string: self.to_string(),
        }
    }

    pub fn relabeled(&self, map: &LabelMap) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::new(self.label_count);
        for (e, c) in &self.terms {
            p.add_term(ExponentVector(map.apply(&e.0)), c.clone());
        }
        p
    }

    /// Evaluates at the given point (indexed by label - 1) over the rationals.
    pub fn evaluate(&self, point: &[i64]) -> num::BigRational {
        let mut total = num::BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = num::BigRational::from_integer(c.clone());
            for (&x, &k) in point.iter().zip(&e.0) {
                let base = num::BigRational::from_integer(BigInt::from(x));
                if k >= 0 {
                    t *= num::pow(base, k as usize);
                } else {
                    t /= num::pow(base, (-k) as usize);
                }
            }
            total += t;
        }
        total
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in exps.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, k)?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let den = self.denominator();
        let has_den = den.0.iter().any(|&k| k != 0);
        if has_den {
            write!(f, "(")?;
        }
        // print in descending order, which reads more naturally
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let num = e.add(&den);
            let is_const = num.0.iter().all(|&k| k == 0);
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            if !is_const {
                write_monomial(f, &num.0)?;
            }
        }
        if has_den {
            write!(f, ")/(")?;
            write_monomial(f, &den.0)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Expansion of the cluster variable of `gamma` as a sum over perfect
/// matchings of its snake graph.
pub fn laurent_expansion(t: &Triangulation, gamma: &Arc) -> Result<LaurentPolynomial> {
    let g = SnakeGraph::build(t, gamma)?;
    Ok(laurent_expansion_of_graph(&g))
}

pub fn laurent_expansion_of_graph(g: &SnakeGraph) -> LaurentPolynomial {
    if let Some(k) = g.degenerate {
        return LaurentPolynomial::monomial(ExponentVector::unit(g.label_count, k));
    }
    let shift = ExponentVector::indicator(g.label_count, &g.crossed);
    let mut p = LaurentPolynomial::new(g.label_count);
    for m in perfect_matchings(g) {
        p.add_term(matching_vector(&m, g).sub(&shift), BigInt::one());
    }
    p
}

/// Sets the boundary variables `x_{n+1}..x_{2n+3}` to 1 and collects terms.
pub fn specialize_boundary(p: &LaurentPolynomial, n: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::new(p.label_count);
    for (e, c) in p.terms() {
        let mut e = e.clone();
        for x in e.0.iter_mut().skip(n) {
            *x = 0;
        }
        out.add_term(e, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> (Triangulation, Arc) {
        (
            Triangulation::new(6, &[(1, 3), (0, 3), (0, 4)]).unwrap(),
            Arc::new(2, 5, 6).unwrap(),
        )
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn single_tile_has_two_matchings() {
        let t = Triangulation::new(4, &[(0, 2)]).unwrap();
        let g = SnakeGraph::build(&t, &Arc::new(1, 3, 4).unwrap()).unwrap();
        let ms = perfect_matchings(&g);
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().all(|m| m.is_perfect(&g)));
        assert_eq!(count_perfect_matchings(&g), 2);
    }

    #[test]
    fn hexagon_expansion() {
        let (t, g) = hexagon();
        let p = laurent_expansion(&t, &g).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(
            p.to_string(),
            "(x1*x3*x6*x9 + x2^2*x5*x8 + x2*x4*x6*x8 + x2*x5*x7*x9 + x4*x6*x7*x9)/(x1*x2*x3)"
        );
        let s = specialize_boundary(&p, 3);
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_string(), "(x1*x3 + x2^2 + 2*x2 + 1)/(x1*x2*x3)");
    }

    #[test]
    fn record_denominator_and_order() {
        let (t, g) = hexagon();
        let r = laurent_expansion(&t, &g).unwrap().to_record();
        assert_eq!(r.denominator, vec![1, 2, 3]);
        let exps: Vec<&Vec<i64>> = r.terms.iter().map(|t| &t.exponents).collect();
        let mut sorted = exps.clone();
        sorted.sort();
        assert_eq!(exps, sorted);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"coeff\":1"));
    }

    #[test]
    fn nonagon_matching_vector_in_list() {
        let t = Triangulation::new(9, &[(0, 7), (0, 6), (0, 5), (0, 4), (1, 4), (1, 3)]).unwrap();
        let g = SnakeGraph::build(&t, &Arc::new(7, 2, 9).unwrap()).unwrap();
        let vs: Vec<ExponentVector> = perfect_matchings(&g)
            .iter()
            .map(|m| matching_vector(m, &g))
            .collect();
        assert_eq!(vs.len(), 11);
        assert!(vs.contains(&ev(&[1, 1, 1, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0])));
        assert_eq!(count_perfect_matchings(&g), 11);
        assert_eq!(continuant_count(&g), 11);
    }

    #[test]
    fn degenerate_expansion_is_the_variable() {
        let (t, _) = hexagon();
        let p = laurent_expansion(&t, &Arc::new(0, 3, 6).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x2");
        assert_eq!(specialize_boundary(&p, 3), p);
    }

    #[test]
    fn collecting_cancels_zero_terms() {
        let mut p = LaurentPolynomial::new(2);
        p.add_term(ev(&[1, 0]), BigInt::from(3));
        p.add_term(ev(&[1, 0]), BigInt::from(-3));
        assert!(p.is_empty());
        assert_eq!(p.to_string(), "0");
    }
}

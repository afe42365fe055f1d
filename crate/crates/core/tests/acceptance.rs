//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any of them fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snake_polytope::expansion::{
    count_perfect_matchings, laurent_expansion, perfect_matchings, ExponentVector,
    LaurentPolynomial,
};
use snake_polytope::face_lattice::{f_vector, FaceLattice};
use snake_polytope::oracle::{
    affine_hull_of_points, f_vector_of_faces, face_lattice_of_points, facets_of_points, is_vertex,
    naive_perfect_matchings, PointSet,
};
use snake_polytope::polytope::{facet_count, hrep_from_t, newton_vrep, Form};
use snake_polytope::verify::{self, random_instances, sweep};
use snake_polytope::{specialize_boundary, Arc, SnakeGraph, Triangulation};

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: &str, what: &str, bound: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        self.record(id, what, bound, start.elapsed(), out);
    }

    fn record(&mut self, id: &str, what: &str, bound: Duration, took: Duration, out: Outcome) {
        let (ok, detail) = match out {
            Ok(d) if took <= bound => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} [{id}] {what} ({:.3}s, bound {}s){}{}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            bound.as_secs(),
            if detail.is_empty() { "" } else { ": " },
            detail
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonagon() -> (Triangulation, Arc) {
    (
        Triangulation::new(9, &[(0, 7), (0, 6), (0, 5), (0, 4), (1, 4), (1, 3)]).unwrap(),
        Arc::new(7, 2, 9).unwrap(),
    )
}

fn hexagon() -> (Triangulation, Arc) {
    (
        Triangulation::new(6, &[(1, 3), (0, 3), (0, 4)]).unwrap(),
        Arc::new(2, 5, 6).unwrap(),
    )
}

fn strings<T: ToString>(v: &[T]) -> BTreeSet<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn nonagon_hull_and_facets() -> Outcome {
    let (t, g) = nonagon();
    let p = laurent_expansion(&t, &g).map_err(|e| e.to_string())?;
    let h = hrep_from_t(&t, &g).map_err(|e| e.to_string())?;
    let expected_eqs = strings(&[
        "x14 = 0",
        "x15 = 0",
        "x1 + x2 + x3 + x4 + x7 = 0",
        "x5 + x6 + x7 + x8 = 0",
        "x8 + x9 = 1",
        "x6 + x9 + x10 = 0",
        "x4 + x5 + x10 + x11 = 0",
        "x3 + x11 + x12 = 0",
        "x2 + x12 + x13 = 0",
        "x1 + x13 = 1",
    ]);
    let expected_facets = strings(&[
        "x7 >= 0",
        "x10 >= 0",
        "x11 >= 0",
        "x12 >= 0",
        "x13 >= 0",
        "x9 >= 0",
        "x6 >= -1",
        "x4 + x7 + x11 <= 1",
    ]);
    ensure(strings(&h.equations) == expected_eqs, || {
        format!("equations {:?}", strings(&h.equations))
    })?;
    ensure(strings(&h.inequalities) == expected_facets, || {
        format!("facets {:?}", strings(&h.inequalities))
    })?;
    for (e, _) in p.terms() {
        ensure(h.contains(e.as_slice()), || {
            format!("monomial {:?} outside", e.as_slice())
        })?;
    }
    let dim = h.hull_dimension();
    let count = facet_count(&t, &g).map_err(|e| e.to_string())?;
    ensure(dim == 5, || format!("dimension {dim}"))?;
    let t_imbalanced = SnakeGraph::build(&t, &g)
        .map_err(|e| e.to_string())?
        .corners()
        .1;
    ensure(t_imbalanced == 1, || {
        format!("{t_imbalanced} imbalanced diagonals")
    })?;
    ensure(count == 8 && count == 2 * dim - 1 - t_imbalanced, || {
        format!("facet count {count}")
    })?;
    Ok("10 equations, 8 facets, dim 5".into())
}

fn nonagon_f_vector() -> Outcome {
    let (t, g) = nonagon();
    let sg = SnakeGraph::build(&t, &g).map_err(|e| e.to_string())?;
    let ms = perfect_matchings(&sg);
    let lattice = FaceLattice::build(&sg, &ms);
    let by_subgraphs = f_vector(&sg, &lattice.elements);

    let v = newton_vrep(&t, &g).map_err(|e| e.to_string())?;
    let pts = PointSet::new(t.label_count(), v.vertices.iter().cloned());
    let facets = facets_of_points(&pts).map_err(|e| e.to_string())?;
    let faces = face_lattice_of_points(&pts, &facets);
    let by_oracle = f_vector_of_faces(&faces, 5);

    let expected = vec![11, 31, 39, 25, 8];
    ensure(by_subgraphs == expected, || {
        format!("elementary subgraphs {by_subgraphs:?}")
    })?;
    ensure(by_oracle == expected, || format!("oracle {by_oracle:?}"))?;
    Ok(format!("{expected:?} both ways"))
}

fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector(v.to_vec())
}

/// Monomial over `x1 x2 x3` with the given numerator exponents.
fn hex_term(num: &[(usize, i64)]) -> ExponentVector {
    let mut v = vec![0i64; 9];
    for &(l, k) in num {
        v[l - 1] += k;
    }
    for l in 1..=3 {
        v[l - 1] -= 1;
    }
    ev(&v)
}

fn hexagon_specialization() -> Outcome {
    let (t, g) = hexagon();
    let p = laurent_expansion(&t, &g).map_err(|e| e.to_string())?;
    let mut expected = LaurentPolynomial::new(9);
    for num in [
        &[(2, 2), (5, 1), (8, 1)][..],
        &[(2, 1), (4, 1), (6, 1), (8, 1)],
        &[(1, 1), (3, 1), (6, 1), (9, 1)],
        &[(2, 1), (5, 1), (7, 1), (9, 1)],
        &[(4, 1), (6, 1), (7, 1), (9, 1)],
    ] {
        expected.add_term(hex_term(num), BigInt::from(1));
    }
    ensure(p == expected, || format!("expansion {p}"))?;

    let s = specialize_boundary(&p, t.n());
    let mut coeffs: Vec<BigInt> = s.terms().map(|(_, c)| c.clone()).collect();
    coeffs.sort();
    ensure(s.len() == 4, || format!("{} monomials", s.len()))?;
    ensure(coeffs == [1, 1, 1, 2].map(BigInt::from), || {
        format!("coefficients {coeffs:?}")
    })?;

    let pts: Vec<Vec<i64>> = s.terms().map(|(e, _)| e.as_slice()[..3].to_vec()).collect();
    let want: BTreeSet<Vec<i64>> = [[-1, 1, -1], [-1, 0, -1], [0, -1, 0], [-1, -1, -1]]
        .iter()
        .map(|p| p.to_vec())
        .collect();
    ensure(pts.iter().cloned().collect::<BTreeSet<_>>() == want, || {
        format!("points {pts:?}")
    })?;
    ensure(
        s.coefficient(&hex_term(&[(2, 1)])) == BigInt::from(2),
        || "x2 coefficient".into(),
    )?;

    let set = PointSet::new(3, pts);
    let rank = set.dimension();
    ensure(rank == Some(2), || format!("affine rank {rank:?}"))?;
    let mid = [-1, 0, -1];
    let hull = affine_hull_of_points(&set);
    ensure(hull.iter().all(|e| e.holds(&mid)), || {
        "midpoint off the hull".into()
    })?;
    let facets = facets_of_points(&set).map_err(|e| e.to_string())?;
    let i = set.points.iter().position(|p| p == &mid).unwrap();
    ensure(!is_vertex(&set, &facets, i), || {
        "midpoint is a vertex".into()
    })?;
    Ok("5 terms; 4 monomials {1,2,1,1}; rank 2; (-1,0,-1) not a vertex".into())
}

fn pentagon_triangle() -> Outcome {
    let t = Triangulation::new(5, &[(0, 2), (0, 3)]).unwrap();
    let g = Arc::new(1, 4, 5).unwrap();
    let v = newton_vrep(&t, &g).map_err(|e| e.to_string())?;
    let h = hrep_from_t(&t, &g).map_err(|e| e.to_string())?;
    ensure(v.len() == 3, || format!("{} vertices", v.len()))?;
    ensure(h.inequalities.len() == 3, || {
        format!("{} facets", h.inequalities.len())
    })?;
    ensure(h.hull_dimension() == 2, || {
        format!("dimension {}", h.hull_dimension())
    })?;
    ensure(h.form == Form::Shifted, || "form".into())?;
    let sg = SnakeGraph::build(&t, &g).map_err(|e| e.to_string())?;
    let lattice = FaceLattice::build(&sg, &perfect_matchings(&sg));
    let chains = lattice.maximal_chain_lengths();
    ensure(chains == BTreeSet::from([3]), || {
        format!("chain lengths {chains:?}")
    })?;
    Ok("triangle, chains of length 3".into())
}

const SWEEP_PARTS: [(&str, &str); 6] = [
    ("5a", verify::CHECK_FACETS_ORACLE),
    ("5b", verify::CHECK_HULL_ORACLE),
    ("5c", verify::CHECK_MONOMIALS_ARE_VERTICES),
    ("5d", verify::CHECK_FACET_FORMULA),
    ("5e", verify::CHECK_LATTICE_ISO),
    ("5f", verify::CHECK_STRUCTURE),
];

/// A triangulation in which the arc from vertex 0 crosses every diagonal:
/// each diagonal joins the two sides of the arc, and the next one advances
/// along a randomly chosen side.
fn zigzag(d: usize, rng: &mut ChaCha8Rng) -> (Triangulation, Arc) {
    let m = d + 3;
    let p = rng.gen_range(2..=m - 2);
    let (mut l, mut r) = (1, m - 1);
    let mut diags = vec![(l, r)];
    while diags.len() < d {
        let left = l + 1 < p && (r - 1 == p || rng.gen_bool(0.5));
        if left {
            l += 1;
        } else {
            r -= 1;
        }
        diags.push((l, r));
    }
    (
        Triangulation::new(m, &diags).unwrap(),
        Arc::new(0, p, m).unwrap(),
    )
}

fn matching_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut all = random_instances(100, 4, 13, 0x5eed);
    all.extend((0..100).map(|i| zigzag(1 + i % 10, &mut rng)));
    let mut max_d = 0;
    for (t, g) in &all {
        let sg = SnakeGraph::build(t, g).map_err(|e| e.to_string())?;
        let d = sg.d();
        ensure(d <= 10, || format!("d = {d}"))?;
        max_d = max_d.max(d);
        let edges: Vec<(usize, usize)> = sg.edges.iter().map(|e| e.ends).collect();
        let naive: BTreeSet<u64> = naive_perfect_matchings(sg.vertices.len(), &edges)
            .iter()
            .map(|m| m.iter().fold(0u64, |acc, &e| acc | 1 << e))
            .collect();
        let ours: BTreeSet<u64> = perfect_matchings(&sg).iter().map(|m| m.0).collect();
        let count = count_perfect_matchings(&sg);
        ensure(ours == naive && count == naive.len() as u128, || {
            format!(
                "{:?}: transfer {} / {count}, naive {}",
                t.to_spec(),
                ours.len(),
                naive.len()
            )
        })?;
    }
    ensure(max_d == 10, || format!("max d {max_d}"))?;
    Ok(format!("{} instances, max d {max_d}", all.len()))
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0 };
    let secs = Duration::from_secs;

    suite.run(
        "1",
        "9-gon affine hull and facets",
        secs(1),
        nonagon_hull_and_facets,
    );
    suite.run("2", "9-gon f-vector", secs(10), nonagon_f_vector);
    suite.run(
        "3",
        "hexagon specialization",
        secs(1),
        hexagon_specialization,
    );
    suite.run("4", "pentagon triangle", secs(1), pentagon_triangle);

    let start = Instant::now();
    let summary = sweep(4, 9, 0);
    let took = start.elapsed();
    let bound = secs(600);
    match summary {
        Ok(s) => {
            let total = s.total();
            let skipped = total.instances - total.oracle_checked;
            for (id, check) in SWEEP_PARTS {
                let bad: Vec<String> = s
                    .failures
                    .iter()
                    .filter(|r| r.check(check).is_some_and(|c| !c.passed))
                    .map(|r| format!("{:?}", r.spec))
                    .collect();
                let out = ensure(bad.is_empty(), || {
                    format!("{} failures, first {}", bad.len(), bad[0])
                })
                .and_then(|_| {
                    ensure(skipped == 0, || {
                        format!("{skipped} instances skipped the oracle")
                    })
                })
                .map(|_| format!("{} instances", total.instances));
                suite.record(id, &format!("sweep 4..9: {check}"), bound, took, out);
            }
            let out = ensure(s.passed(), || {
                format!("{} failing instances", s.failures.len())
            })
            .map(|_| format!("{} instances", total.instances));
            suite.record("5", "sweep 4..9: all checks", bound, took, out);
            let out = ensure(s.interior_point_instances.is_empty(), || {
                format!(
                    "{} instances with interior points",
                    s.interior_point_instances.len()
                )
            })
            .map(|_| format!("{} instances", total.instances));
            suite.record(
                "6",
                "no relative-interior lattice points (conjecture evidence, not a theorem check)",
                bound,
                took,
                out,
            );
        }
        Err(e) => suite.record("5", "sweep 4..9", bound, took, Err(e.to_string())),
    }

    suite.run(
        "7",
        "transfer vs naive matchings",
        secs(60),
        matching_cross_check,
    );

    if suite.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", suite.failed);
        ExitCode::FAILURE
    }
}

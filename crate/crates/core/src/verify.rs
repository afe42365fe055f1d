//! Per-instance certificates and sweeps over all small instances.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::expansion::{
    continuant_count, count_perfect_matchings, laurent_expansion_of_graph, matching_vector,
    perfect_matchings,
};
use crate::face_lattice::{certify_isomorphism, f_vector, rank_by_affine_dimension, FaceLattice};
use crate::oracle::{
    face_lattice_of_points, facets_of_points, is_vertex, kernel_basis_rank,
    naive_perfect_matchings, pm_polytope_hrep, relabel_and_project, PointSet, DESK_BOUND,
};
use crate::polytope::{
    facet_count_of_graph, hrep_from_g, hrep_from_t, interior_lattice_points, shift_vector, Form,
    HRep, VRep,
};
use crate::snake_graph::{structure_report, SnakeGraph};
use crate::triangulation::{Arc, Triangulation, TriangulationSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub spec: TriangulationSpec,
    pub d: usize,
    pub corners: usize,
    pub matchings: usize,
    pub checks: Vec<CheckOutcome>,
    /// Lattice points found in the relative interior of the Newton polytope.
    pub interior_points: Vec<Vec<i64>>,
    /// Oracle comparisons were skipped because the dimension is too large.
    pub oracle_skipped: bool,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Checks(Vec<CheckOutcome>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, witness: impl FnOnce() -> String) {
        self.0.push(CheckOutcome {
            name: name.to_string(),
            passed,
            witness: if passed { String::new() } else { witness() },
        });
    }
}

pub const CHECK_STRUCTURE: &str = "structure";
pub const CHECK_MATCHING_COUNT: &str = "matching-count";
pub const CHECK_DISTINCT_MONOMIALS: &str = "distinct-monomials";
pub const CHECK_HULL_RANK: &str = "hull-rank";
pub const CHECK_HULL_FROM_G: &str = "hull-from-g";
pub const CHECK_FACETS_FROM_G: &str = "facets-from-g";
pub const CHECK_VERTICES_FEASIBLE: &str = "vertices-feasible";
pub const CHECK_FACET_FORMULA: &str = "facet-formula";
pub const CHECK_PROJECTION: &str = "projection";
pub const CHECK_LATTICE_GRADING: &str = "lattice-grading";
pub const CHECK_HULL_ORACLE: &str = "hull-oracle";
pub const CHECK_FACETS_ORACLE: &str = "facets-oracle";
pub const CHECK_MONOMIALS_ARE_VERTICES: &str = "monomials-are-vertices";
pub const CHECK_LATTICE_ISO: &str = "lattice-isomorphism";

/// Runs every certificate on one instance.
pub fn verify_instance(t: &Triangulation, gamma: &Arc) -> Result<InstanceReport> {
    let mut spec = t.to_spec();
    spec.gamma = Some([gamma.source, gamma.target]);
    let g = SnakeGraph::build(t, gamma)?;
    let mut c = Checks(Vec::new());
    if g.is_degenerate() {
        let p = laurent_expansion_of_graph(&g);
        c.push(CHECK_DISTINCT_MONOMIALS, p.len() == 1, || p.to_string());
        return Ok(InstanceReport {
            spec,
            d: 0,
            corners: 0,
            matchings: 0,
            checks: c.0,
            interior_points: Vec::new(),
            oracle_skipped: false,
        });
    }
    let d = g.d();
    let sub = t.sub_triangulation(gamma)?;
    let len = t.label_count();

    let report = structure_report(&g, t, &sub);
    c.push(CHECK_STRUCTURE, report.passed(), || {
        report
            .failures()
            .map(|f| format!("{}: {}", f.name, f.witness))
            .collect::<Vec<_>>()
            .join("; ")
    });

    let ms = perfect_matchings(&g);
    let dp = count_perfect_matchings(&g);
    let cont = continuant_count(&g);
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| e.ends).collect();
    let naive = naive_perfect_matchings(g.vertices.len(), &edges);
    let naive_masks: BTreeSet<u64> = naive
        .iter()
        .map(|m| m.iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect();
    let ours: BTreeSet<u64> = ms.iter().map(|m| m.0).collect();
    c.push(
        CHECK_MATCHING_COUNT,
        ours == naive_masks && dp == ms.len() as u128 && cont == dp,
        || {
            format!(
                "transfer={}, dp={dp}, continuant={cont}, naive={}",
                ms.len(),
                naive.len()
            )
        },
    );

    let expansion = laurent_expansion_of_graph(&g);
    c.push(
        CHECK_DISTINCT_MONOMIALS,
        expansion.len() == ms.len(),
        || format!("{} monomials from {} matchings", expansion.len(), ms.len()),
    );

    // N-form points in matching order, so that point i is matching i
    let down = shift_vector(&g, -1);
    let points: Vec<Vec<i64>> = ms
        .iter()
        .map(|m| {
            matching_vector(m, &g)
                .0
                .iter()
                .zip(&down)
                .map(|(a, b)| a + b)
                .collect()
        })
        .collect();
    let vrep = VRep {
        form: Form::Shifted,
        vertices: points.clone(),
    };

    let h = hrep_from_t(t, gamma)?;
    let raw_rank = crate::polytope::affine_hull_from_t(t, gamma)?.len();
    c.push(
        CHECK_HULL_RANK,
        h.equations.len() == len - d && raw_rank == len - d,
        || {
            format!(
                "{} independent of {raw_rank}, expected {}",
                h.equations.len(),
                len - d
            )
        },
    );

    let hg = hrep_from_g(&g)?.shift(&down, Form::Shifted);
    let (a, _) = h.reduced_equations();
    let (b, _) = hg.reduced_equations();
    c.push(CHECK_HULL_FROM_G, a == b, String::new);
    c.push(CHECK_FACETS_FROM_G, hg.equivalent(&h), || {
        format!("from G:\n{}from T:\n{}", hg.to_text(), h.to_text())
    });

    let infeasible: Vec<&Vec<i64>> = points.iter().filter(|p| !h.contains(p)).collect();
    c.push(CHECK_VERTICES_FEASIBLE, infeasible.is_empty(), || {
        format!("{infeasible:?}")
    });

    let fc = facet_count_of_graph(&g);
    c.push(CHECK_FACET_FORMULA, h.inequalities.len() == fc, || {
        format!("{} listed, formula {fc}", h.inequalities.len())
    });

    let (ug, pi) = relabel_and_project(&g);
    let r = pi.pairs.len();
    let pm_dim = pm_polytope_hrep(&ug).map(|p| p.hull_dimension());
    let krank = kernel_basis_rank(&g, &ug, &pi);
    c.push(CHECK_PROJECTION, pm_dim == Ok(d) && krank == d + r, || {
        format!("PM dim {pm_dim:?}, basis rank {krank}, expected {}", d + r)
    });

    let lattice = FaceLattice::build(&g, &ms);
    let fv = f_vector(&g, &lattice.elements);
    let grading_ok = lattice
        .elements
        .iter()
        .skip(1)
        .all(|e| e.rank == rank_by_affine_dimension(&g, &ms, e))
        && fv.last() == Some(&fc)
        && lattice.top().rank == d + 1;
    c.push(CHECK_LATTICE_GRADING, grading_ok, || {
        format!("f-vector {fv:?}")
    });

    let mut oracle_skipped = false;
    if d <= DESK_BOUND {
        let ps = PointSet::new(len, points.clone());
        let facets = facets_of_points(&ps)?;
        let oracle = HRep::new(
            len,
            Form::Shifted,
            crate::oracle::affine_hull_of_points(&ps),
            facets.iter().map(|f| f.inequality.clone()).collect(),
        );
        let (o, _) = oracle.reduced_equations();
        c.push(CHECK_HULL_ORACLE, o == a, String::new);
        let ours_canon = h.canonical_inequalities();
        let oracle_on_ours = HRep {
            equations: h.equations.clone(),
            ..oracle.clone()
        };
        let theirs = oracle_on_ours.canonical_inequalities();
        c.push(
            CHECK_FACETS_ORACLE,
            ours_canon == theirs && h.inequalities.len() == facets.len(),
            || format!("ours:\n{}oracle:\n{}", h.to_text(), oracle.to_text()),
        );
        let non_vertices: Vec<usize> = (0..ps.len())
            .filter(|&i| !is_vertex(&ps, &facets, i))
            .collect();
        c.push(
            CHECK_MONOMIALS_ARE_VERTICES,
            non_vertices.is_empty() && ps.len() == ms.len(),
            || format!("non-vertices {non_vertices:?}"),
        );
        let faces = face_lattice_of_points(&ps, &facets);
        let cert = certify_isomorphism(&lattice, &ms, &faces);
        c.push(CHECK_LATTICE_ISO, cert.holds, || {
            cert.witness.clone().unwrap_or_default()
        });
    } else {
        oracle_skipped = true;
    }

    let interior_points = interior_lattice_points(&h, &vrep);
    Ok(InstanceReport {
        spec,
        d,
        corners: g.corners().1,
        matchings: ms.len(),
        checks: c.0,
        interior_points,
        oracle_skipped,
    })
}

/// Every `(T, γ)` with `γ` a diagonal not in `T`, for one polygon size.
pub fn instances(vertex_count: usize) -> Vec<(Triangulation, Arc)> {
    Triangulation::all(vertex_count)
        .into_iter()
        .flat_map(|t| {
            let arcs = t.enumerate_arcs();
            arcs.into_iter().map(move |a| (t.clone(), a))
        })
        .collect()
}

/// A random triangulation of a random polygon with `min..=max` vertices and
/// a random arc not in it.
pub fn random_instance<R: Rng>(rng: &mut R, min: usize, max: usize) -> (Triangulation, Arc) {
    let m = rng.gen_range(min.max(4)..=max);
    let t = Triangulation::random(m, rng);
    let arcs = t.enumerate_arcs();
    let a = arcs[rng.gen_range(0..arcs.len())];
    (t, a)
}

pub fn random_instances(
    count: usize,
    min: usize,
    max: usize,
    seed: u64,
) -> Vec<(Triangulation, Arc)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_instance(&mut rng, min, max))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub instances: usize,
    pub failures: usize,
    pub oracle_checked: usize,
    pub with_interior_points: usize,
    pub max_d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: BTreeMap<usize, SweepRow>,
    /// Reports of failing instances, in instance order.
    pub failures: Vec<InstanceReport>,
    /// Instances with interior lattice points, in instance order.
    pub interior_point_instances: Vec<InstanceReport>,
}

impl SweepSummary {
    pub fn total(&self) -> SweepRow {
        let mut t = SweepRow::default();
        for r in self.rows.values() {
            t.instances += r.instances;
            t.failures += r.failures;
            t.oracle_checked += r.oracle_checked;
            t.with_interior_points += r.with_interior_points;
            t.max_d = t.max_d.max(r.max_d);
        }
        t
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_table(&self) -> String {
        let mut s = String::from(" m  instances  failures  oracle  interior  max d\n");
        let mut line = |k: String, r: &SweepRow| {
            s.push_str(&format!(
                "{k:>2}  {:>9}  {:>8}  {:>6}  {:>8}  {:>5}\n",
                r.instances, r.failures, r.oracle_checked, r.with_interior_points, r.max_d
            ));
        };
        for (m, r) in &self.rows {
            line(m.to_string(), r);
        }
        line("*".into(), &self.total());
        s
    }
}

/// Verifies all instances with `min..=max` vertices on `jobs` threads
/// (`0` lets the pool decide). Results are merged in instance order.
pub fn sweep(min: usize, max: usize, jobs: usize) -> Result<SweepSummary> {
    let all: Vec<(Triangulation, Arc)> = (min.max(4)..=max).flat_map(instances).collect();
    run_all(&all, jobs)
}

pub fn run_all(all: &[(Triangulation, Arc)], jobs: usize) -> Result<SweepSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let reports: Vec<InstanceReport> = pool.install(|| {
        all.par_iter()
            .map(|(t, a)| verify_instance(t, a))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows: BTreeMap<usize, SweepRow> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut interior = Vec::new();
    for r in reports {
        let row = rows.entry(r.spec.vertex_count).or_default();
        row.instances += 1;
        row.max_d = row.max_d.max(r.d);
        if !r.oracle_skipped {
            row.oracle_checked += 1;
        }
        if !r.interior_points.is_empty() {
            row.with_interior_points += 1;
            interior.push(r.clone());
        }
        if !r.passed() {
            row.failures += 1;
            failures.push(r);
        }
    }
    Ok(SweepSummary {
        rows,
        failures,
        interior_point_instances: interior,
    })
}

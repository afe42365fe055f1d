use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use snake_polytope::expansion::{
    laurent_expansion_of_graph, perfect_matchings, specialize_boundary,
};
use snake_polytope::face_lattice::{f_vector, FaceLattice};
use snake_polytope::polytope::{
    facet_count_of_graph, hrep_from_g, hrep_from_t, matching_vrep, newton_vrep_of_graph,
};
use snake_polytope::snake_graph::structure_report;
use snake_polytope::verify::{random_instances, run_all, sweep, verify_instance, InstanceReport};
use snake_polytope::{Arc, LabelMap, SnakeGraph, Triangulation, TriangulationSpec};

/// Largest polygon a sweep may reach without `--unchecked`.
const SWEEP_CAP: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "snakepoly",
    version,
    about = "Snake graphs and Newton polytopes of type A cluster variables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args, Debug)]
struct IoArgs {
    /// JSON file with `vertex_count`, `diagonals`, `gamma` and an optional
    /// `label_permutation`.
    #[arg(long, global = true, conflicts_with = "spec")]
    input: Option<PathBuf>,

    /// The same record given inline.
    #[arg(long, global = true)]
    spec: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dot,
    Ascii,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Laurent expansion of the cluster variable.
    Expand {
        /// Set the boundary variables to 1 and collect terms.
        #[arg(long)]
        specialize: bool,
    },
    /// Snake graph and its structure report.
    Snake {
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Equations, facets and vertices of the Newton polytope.
    Polytope {
        /// Exponent vectors of the expansion (the default).
        #[arg(long, conflicts_with = "unshifted")]
        shifted: bool,
        /// Matching vectors of the snake graph.
        #[arg(long)]
        unshifted: bool,
    },
    /// Lattice of elementary subgraphs.
    Lattice,
    /// Face counts by dimension.
    Fvector,
    /// Run every certificate on one instance.
    Verify,
    /// Run every certificate on all instances up to a polygon size.
    Sweep {
        #[arg(long, default_value_t = 9)]
        max_polygon: usize,
        #[arg(long, default_value_t = 4)]
        min_polygon: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Check this many random instances instead of all of them.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow polygons above the default size cap.
        #[arg(long)]
        unchecked: bool,
        /// Where to write the discrepancy report when something fails.
        #[arg(long, default_value = "sweep-report.json")]
        report: PathBuf,
    },
}

struct Instance {
    t: Triangulation,
    gamma: Arc,
    map: LabelMap,
}

fn read_spec(io: &IoArgs) -> Result<TriangulationSpec> {
    let text = match (&io.input, &io.spec) {
        (Some(path), _) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => bail!("an instance is required: pass --input FILE or --spec JSON"),
    };
    serde_json::from_str(&text).context("malformed spec")
}

fn load(io: &IoArgs) -> Result<Instance> {
    let spec = read_spec(io)?;
    let (t, gamma, map) = spec.build().context("invalid spec")?;
    let gamma = gamma.context("spec field `gamma` is required")?;
    Ok(Instance { t, gamma, map })
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn expand(inst: &Instance, specialize: bool, format: Format) -> Result<()> {
    let g = SnakeGraph::build(&inst.t, &inst.gamma)?;
    let mut p = laurent_expansion_of_graph(&g);
    if specialize {
        p = specialize_boundary(&p, inst.t.n());
    }
    let p = p.relabeled(&inst.map);
    match format {
        Format::Json => print_json(&serde_json::to_value(p.to_record())?),
        _ => {
            println!("{p}");
            Ok(())
        }
    }
}

fn snake(inst: &Instance, emit: Option<Emit>, format: Format) -> Result<()> {
    let g = SnakeGraph::build(&inst.t, &inst.gamma)?;
    let emit = emit.or(match format {
        Format::Dot => Some(Emit::Dot),
        _ => None,
    });
    match emit {
        Some(Emit::Dot) => print!("{}", g.to_dot()),
        Some(Emit::Ascii) => print!("{}", g.to_ascii()),
        None if g.is_degenerate() => {
            if format == Format::Json {
                print_json(&json!({ "graph": g }))?;
            } else {
                print!("{}", g.to_ascii());
            }
        }
        None => {
            let sub = inst.t.sub_triangulation(&inst.gamma)?;
            let report = structure_report(&g, &inst.t, &sub);
            if format == Format::Json {
                print_json(&json!({
                    "graph": g,
                    "corners": g.corners().0,
                    "vertex_classes": g.vertex_classes(Some(&sub)),
                    "structure_report": report,
                }))?;
            } else {
                print!("{}", g.to_ascii());
                for c in &report.checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    println!("{mark} {}  {}", c.name, c.witness);
                }
            }
        }
    }
    Ok(())
}

fn polytope(inst: &Instance, unshifted: bool, format: Format) -> Result<()> {
    let g = SnakeGraph::build(&inst.t, &inst.gamma)?;
    let (vrep, hrep) = if unshifted {
        let h = if g.is_degenerate() {
            None
        } else {
            Some(hrep_from_g(&g)?)
        };
        (matching_vrep(&g), h)
    } else {
        let h = if g.is_degenerate() {
            None
        } else {
            Some(hrep_from_t(&inst.t, &inst.gamma)?)
        };
        (newton_vrep_of_graph(&g), h)
    };
    let vrep = vrep.relabeled(&inst.map);
    let hrep = hrep.map(|h| h.relabeled(&inst.map));
    let dimension = g.d();
    let facet_count = facet_count_of_graph(&g);
    match format {
        Format::Json => print_json(&json!({
            "form": vrep.form,
            "equations": hrep.as_ref().map(|h| h.equations.clone()).unwrap_or_default(),
            "inequalities": hrep.as_ref().map(|h| h.inequalities.clone()).unwrap_or_default(),
            "dimension": dimension,
            "facet_count": facet_count,
            "vertices": vrep.vertices,
        })),
        _ => {
            match &hrep {
                Some(h) => print!("{}", h.to_text()),
                None => println!("point polytope"),
            }
            println!("dimension: {dimension}");
            println!("facet count: {facet_count}");
            println!("vertices:");
            for v in &vrep.vertices {
                let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                println!("  ({})", row.join(","));
            }
            Ok(())
        }
    }
}

fn lattice(inst: &Instance, format: Format) -> Result<()> {
    let g = SnakeGraph::build(&inst.t, &inst.gamma)?;
    let ms = perfect_matchings(&g);
    let l = FaceLattice::build(&g, &ms);
    let covers = l.hasse();
    let labels_of = |mask: u64| -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.edges.len())
            .filter(|e| mask >> e & 1 == 1)
            .map(|e| inst.map.label(g.edges[e].label))
            .collect();
        v.sort_unstable();
        v
    };
    match format {
        Format::Json => {
            let elements: Vec<Value> = l
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "edges": (0..g.edges.len()).filter(|i| e.edges >> i & 1 == 1).collect::<Vec<_>>(),
                        "labels": labels_of(e.edges),
                        "matchings": e.matchings,
                        "rank": e.rank,
                    })
                })
                .collect();
            print_json(&json!({ "elements": elements, "covers": covers }))
        }
        Format::Dot => {
            println!("digraph lattice {{\n  rankdir=BT;");
            for (i, e) in l.elements.iter().enumerate() {
                let label: Vec<String> = labels_of(e.edges).iter().map(|x| x.to_string()).collect();
                println!(
                    "  n{i} [label=\"{{{}}}\", rank={}];",
                    label.join(","),
                    e.rank
                );
            }
            for (i, j) in covers {
                println!("  n{i} -> n{j};");
            }
            println!("}}");
            Ok(())
        }
        Format::Text => {
            for r in 0..=l.top().rank {
                let n = l.elements.iter().filter(|e| e.rank == r).count();
                println!("rank {r}: {n}");
            }
            println!("maximal chain lengths: {:?}", l.maximal_chain_lengths());
            Ok(())
        }
    }
}

fn fvector(inst: &Instance, format: Format) -> Result<()> {
    let g = SnakeGraph::build(&inst.t, &inst.gamma)?;
    let ms = perfect_matchings(&g);
    let fv = f_vector(&g, &FaceLattice::build(&g, &ms).elements);
    if format == Format::Json {
        print_json(&json!({ "f_vector": fv }))
    } else {
        let parts: Vec<String> = fv.iter().map(|x| x.to_string()).collect();
        println!("({})", parts.join(","));
        Ok(())
    }
}

fn print_report(r: &InstanceReport) {
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("{mark} {}", c.name);
        if !c.passed {
            for line in c.witness.lines() {
                println!("       {line}");
            }
        }
    }
    if r.oracle_skipped {
        println!("skip oracle comparisons (dimension {} above cap)", r.d);
    }
    println!(
        "interior lattice points (conjecture evidence): {}",
        r.interior_points.len()
    );
}

fn verify(inst: &Instance, format: Format) -> Result<bool> {
    let r = verify_instance(&inst.t, &inst.gamma)?;
    if format == Format::Json {
        print_json(&serde_json::to_value(&r)?)?;
    } else {
        print_report(&r);
    }
    Ok(r.passed())
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    min: usize,
    max: usize,
    jobs: usize,
    random: Option<usize>,
    seed: u64,
    unchecked: bool,
    report: &PathBuf,
    format: Format,
) -> Result<bool> {
    if max > SWEEP_CAP && !unchecked {
        bail!("--max-polygon {max} is above the cap of {SWEEP_CAP}; pass --unchecked to allow it");
    }
    let summary = match random {
        Some(count) => run_all(&random_instances(count, min, max, seed), jobs)?,
        None => sweep(min, max, jobs)?,
    };
    if format == Format::Json {
        print_json(&json!({
            "rows": summary.rows,
            "total": summary.total(),
            "failures": summary.failures.len(),
            "interior_point_instances": summary.interior_point_instances,
        }))?;
    } else {
        print!("{}", summary.to_table());
        println!(
            "interior lattice points are conjecture evidence, not a theorem check: {} instance(s) had any",
            summary.total().with_interior_points
        );
    }
    if !summary.passed() {
        let text = serde_json::to_string_pretty(&summary.failures)?;
        fs::write(report, text).with_context(|| format!("writing {}", report.display()))?;
        eprintln!(
            "{} instance(s) failed; details in {}",
            summary.failures.len(),
            report.display()
        );
    }
    Ok(summary.passed())
}

fn run(cli: Cli) -> Result<bool> {
    let format = cli.io.format;
    match cli.command {
        Command::Sweep {
            max_polygon,
            min_polygon,
            jobs,
            random,
            seed,
            unchecked,
            report,
        } => run_sweep(
            min_polygon,
            max_polygon,
            jobs,
            random,
            seed,
            unchecked,
            &report,
            format,
        ),
        command => {
            let inst = load(&cli.io)?;
            match command {
                Command::Expand { specialize } => expand(&inst, specialize, format)?,
                Command::Snake { emit } => snake(&inst, emit, format)?,
                Command::Polytope { unshifted, .. } => polytope(&inst, unshifted, format)?,
                Command::Lattice => lattice(&inst, format)?,
                Command::Fvector => fvector(&inst, format)?,
                Command::Verify => return verify(&inst, format),
                Command::Sweep { .. } => unreachable!(),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! The `dps` command line.
//!
//! Every subcommand writes one JSON document (or a short text rendering
//! with `--format text`). Exit status is 0 on success, including negative
//! answers, 1 on domain errors and 2 on usage or input errors.

use std::io::{Read, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::construct::{self, BaseChoice};
use crate::dps::{self, Checker, DpsVerdict};
use crate::error::{Error, Result};
use crate::json::{
    int_matrix_to_json, int_to_json, point_to_json, points_to_json, polynomial_from_json,
    polynomial_to_json, polytope_from_json, polytope_to_json, rational_matrix_to_json,
    rational_to_json,
};
use crate::lattice::{LatticePoint, LatticePolytope, PointClass};
use crate::linalg;
use crate::search::{self, SearchSpec};
use crate::sospoly::{self, GramStatus, SosVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Paper,
    Lift,
}

#[derive(Debug, Parser)]
#[command(name = "dps", version, about = "Distinct pair-sum lattice polytopes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the lattice points of a polytope.
    Enumerate {
        /// Polytope JSON: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Test whether the lattice points of a polytope are dps.
    Check {
        #[arg(long)]
        input: String,
        /// pairsum, geometric or direction.
        #[arg(long, default_value = "pairsum")]
        checker: Checker,
    },
    /// Construct a maximal dps polytope in the given dimension.
    Build {
        #[arg(long)]
        dim: usize,
        /// Use the fixed dimension-3 base (`paper`) or lift from dimension 2.
        #[arg(long, value_enum, default_value_t = Base::Paper)]
        base: Base,
    },
    /// Lift a maximal dps polytope one dimension up.
    Lift {
        #[arg(long)]
        input: String,
    },
    /// Shrink coordinates by a unimodular affine map.
    Reduce {
        #[arg(long)]
        input: String,
    },
    /// Exhaustive search for maximal dps polytopes of bounded size.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_size: u32,
        /// Collect every witness rather than the first.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Keep one witness per coordinate-permutation orbit.
        #[arg(long)]
        symmetry: bool,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Classify lattice points as vertex, boundary or interior.
    Classify {
        #[arg(long)]
        input: String,
    },
    /// The polynomial summing the squares of the monomials of a polytope.
    Hp {
        #[arg(long)]
        input: String,
    },
    /// Forced Gram matrix and sum-of-squares verdict for a polynomial.
    Gram {
        /// Polynomial JSON: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Print one of the built-in examples.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
    },
    /// Search a bounded box for a maximal dps superset.
    Extend {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 3)]
        region: u32,
    },
}

struct Output {
    json: Value,
    text: String,
}

fn tuple_list(points: &[LatticePoint]) -> String {
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn polytope_output(p: &LatticePolytope) -> Output {
    Output {
        json: polytope_to_json(p),
        text: format!("dim {}\n{}\n", p.dim(), tuple_list(p.lattice_points())),
    }
}

fn read_input(spec: &str, stdin: &mut dyn Read) -> Result<Value> {
    let raw = if spec == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        s
    } else if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("cannot read {spec}: {e}")))?
    };
    serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn verdict_json(v: &DpsVerdict) -> Value {
    match &v.witness {
        None => Value::Null,
        Some(w) => json!({
            "kind": w.kind(),
            "points": points_to_json(&w.points()),
            "description": w.to_string(),
        }),
    }
}

fn check(p: &LatticePolytope, checker: Checker) -> Output {
    let v = checker.check(p.lattice_points());
    let maximal = v.is_dps && dps::is_maximal_dps(p);
    let mut text = format!("dps: {}\nmaximal: {}\nchecker: {}\n", v.is_dps, maximal, checker.name());
    if let Some(w) = &v.witness {
        text.push_str(&format!("witness: {w}\n"));
    }
    Output {
        json: json!({
            "dps": v.is_dps,
            "maximal": maximal,
            "checker": checker.name(),
            "lattice_points": p.num_lattice_points(),
            "witness": verdict_json(&v),
        }),
        text,
    }
}

fn lift(p: &LatticePolytope) -> Result<Output> {
    let cert = construct::lift(p)?;
    let text = format!(
        "R = {}\nM = {}\nA = {}\nB = {}\n",
        cert.radius,
        cert.matrix,
        tuple_list(&cert.lower),
        tuple_list(&cert.upper)
    );
    Ok(Output {
        json: json!({
            "radius": int_to_json(&cert.radius),
            "matrix": int_matrix_to_json(&cert.matrix),
            "lower": points_to_json(&cert.lower),
            "upper": points_to_json(&cert.upper),
            "polytope": polytope_to_json(&cert.polytope),
        }),
        text,
    })
}

fn reduce(p: &LatticePolytope) -> Result<Output> {
    let r = construct::reduce_coordinates(p)?;
    let text = format!(
        "size {} -> {}\nmatrix {}\ntranslation {}\n{}\n",
        r.size_before,
        r.size_after,
        r.map.matrix(),
        LatticePoint::new(r.map.translation_vector().to_vec()),
        tuple_list(r.polytope.lattice_points())
    );
    Ok(Output {
        json: json!({
            "size_before": int_to_json(&r.size_before),
            "size_after": int_to_json(&r.size_after),
            "map": {
                "matrix": int_matrix_to_json(r.map.matrix()),
                "translation": r.map.translation_vector().iter().map(int_to_json).collect::<Vec<_>>(),
            },
            "polytope": polytope_to_json(&r.polytope),
        }),
        text,
    })
}

fn run_search(spec: &SearchSpec, timing: bool) -> Result<Output> {
    let start = Instant::now();
    let report = search::min_size_search(spec)?;
    let witnesses: Vec<Value> = report.witnesses.iter().map(polytope_to_json).collect();
    let mut json = json!({
        "dim": spec.dim,
        "max_size": spec.max_size,
        "witnesses": witnesses,
        "count": report.witnesses.len(),
        "nodes": report.nodes_explored,
        "pruned": {
            "pair_sum": report.pruned_by.pair_sum,
            "coordinate_min": report.pruned_by.coordinate_min,
            "symmetry": report.pruned_by.symmetry,
            "extra_lattice_point": report.pruned_by.extra_lattice_point,
        },
    });
    let mut text = format!(
        "dim {} size <= {}: {} witnesses, {} nodes\n",
        spec.dim,
        spec.max_size,
        report.witnesses.len(),
        report.nodes_explored
    );
    for w in &report.witnesses {
        text.push_str(&tuple_list(w.generators()));
        text.push('\n');
    }
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        json["elapsed_ms"] = json!(ms);
        text.push_str(&format!("elapsed {ms} ms\n"));
    }
    Ok(Output { json, text })
}

fn class_name(c: PointClass) -> &'static str {
    match c {
        PointClass::Vertex => "vertex",
        PointClass::BoundaryNonVertex => "boundary",
        PointClass::Interior => "interior",
    }
}

fn classify(p: &LatticePolytope) -> Result<Output> {
    let classes = p.classify_lattice_points();
    let t = search::combinatorial_type(p);
    let mut text = String::new();
    let points: Vec<Value> = classes
        .iter()
        .map(|(q, c)| {
            text.push_str(&format!("{q} {}\n", class_name(*c)));
            json!({ "point": point_to_json(q), "class": class_name(*c) })
        })
        .collect();
    let mut json = json!({
        "points": points,
        "vertices": t.vertices,
        "boundary_non_vertices": t.boundary_non_vertices,
        "interior": t.interior,
        "all_boundary": t.all_boundary(),
    });
    if p.dim() == 2 && dps::is_maximal_dps(p) {
        let r2 = search::classify_r2_witness(p)?;
        json["plane_witness"] = json!({
            "triangle": r2.is_triangle(),
            "twice_area": int_to_json(&r2.twice_area),
            "centroid_identity": r2.centroid_identity(),
        });
        text.push_str(&format!(
            "triangle {} twice_area {} centroid {}\n",
            r2.is_triangle(),
            r2.twice_area,
            r2.centroid_identity()
        ));
    }
    Ok(Output { json, text })
}

fn verdict_output(v: &SosVerdict) -> (Value, String) {
    match v {
        SosVerdict::SosWithCount { count, squares } => {
            let sq: Vec<Value> = squares
                .iter()
                .map(|s| json!({ "weight": rational_to_json(&s.weight), "base": polynomial_to_json(&s.base) }))
                .collect();
            (
                json!({ "kind": v.label(), "count": count, "squares": sq }),
                format!("verdict: sum of {count} squares\n"),
            )
        }
        SosVerdict::NotSos { reason } | SosVerdict::Undecided { reason } => (
            json!({ "kind": v.label(), "reason": reason }),
            format!("verdict: {} ({reason})\n", v.label()),
        ),
    }
}

fn gram(p: &sospoly::SparsePolynomial) -> Result<Output> {
    let g = sospoly::forced_gram(p)?;
    let verdict = sospoly::sos_verdict(p)?;
    let status = match g.status {
        GramStatus::Forced => "forced",
        GramStatus::Underdetermined => "underdetermined",
    };
    let psd = match &g.forced_matrix {
        Some(a) => {
            let r = sospoly::psd_check_exact(a)?;
            json!({ "psd": r.psd, "rank": if r.psd { json!(r.rank) } else { Value::Null } })
        }
        None => Value::Null,
    };
    let (vjson, vtext) = verdict_output(&verdict);
    let mut text = format!("support {}\nstatus {status}\n", tuple_list(&g.support));
    if let Some(a) = &g.forced_matrix {
        for row in a {
            text.push_str(&row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            text.push('\n');
        }
    }
    text.push_str(&vtext);
    Ok(Output {
        json: json!({
            "support": points_to_json(&g.support),
            "status": status,
            "matrix": g.forced_matrix.as_ref().map(|a| rational_matrix_to_json(a)),
            "unmatched": points_to_json(&g.unmatched),
            "psd": psd,
            "verdict": vjson,
        }),
        text,
    })
}

fn example4() -> Result<Output> {
    let p = catalog::example4_polynomial();
    let mut out = gram(&p)?;
    let radius = linalg::rat_i64(2);
    let m = sospoly::grid_min(&p, &radius, 8)?;
    out.json["polynomial"] = polynomial_to_json(&p);
    out.json["monomials"] = points_to_json(&catalog::example4_monomials());
    out.json["grid_min"] = json!({
        "radius": rational_to_json(&radius),
        "steps": 8,
        "value": rational_to_json(&m.value),
        "argmin": m.argmin.iter().map(rational_to_json).collect::<Vec<_>>(),
    });
    out.text = format!("p = {p}\n{}grid minimum on [-2,2]^3: {}\n", out.text, m.value);
    Ok(out)
}

fn extend(p: &LatticePolytope, region: u32) -> Result<Output> {
    let r = search::extend_to_maximal(p, region)?;
    let text = match &r.extension {
        Some(e) => format!("extension within region {region}: {}\n", tuple_list(e.lattice_points())),
        None => format!("no extension within region {region} (not a proof that none exists)\n"),
    };
    Ok(Output {
        json: json!({
            "region": region,
            "extension": r.extension.as_ref().map(polytope_to_json),
            "nodes": r.nodes_explored,
        }),
        text,
    })
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Output> {
    let polytope = |input: &str, stdin: &mut dyn Read| polytope_from_json(&read_input(input, stdin)?);
    match &cli.command {
        Command::Enumerate { input } => {
            let p = polytope(input, stdin)?;
            let mut out = polytope_output(&p);
            out.json["count"] = json!(p.num_lattice_points());
            Ok(out)
        }
        Command::Check { input, checker } => Ok(check(&polytope(input, stdin)?, *checker)),
        Command::Build { dim, base } => {
            let base = match base {
                Base::Paper => BaseChoice::Paper,
                Base::Lift => BaseChoice::Lift,
            };
            let (p, cert) = construct::maximal_dps_with(*dim, base)?;
            let mut out = polytope_output(&p);
            out.json["certificate"] = match &cert {
                Some(c) => json!({
                    "R": int_to_json(&c.radius),
                    "matrix": int_matrix_to_json(&c.matrix),
                    "source_dim": c.source_dim,
                    "verified": c.separation_checked && c.reverify(),
                }),
                None => Value::Null,
            };
            if let Some(c) = &cert {
                out.text.push_str(&format!("R {} M {}\n", c.radius, c.matrix));
            }
            Ok(out)
        }
        Command::Lift { input } => lift(&polytope(input, stdin)?),
        Command::Reduce { input } => reduce(&polytope(input, stdin)?),
        Command::Search {
            dim,
            max_size,
            all,
            threads,
            symmetry,
            timing,
        } => {
            let mut spec = SearchSpec::new(*dim, *max_size);
            spec.collect_all = *all;
            spec.thread_count = *threads;
            spec.symmetry_reduction = *symmetry;
            run_search(&spec, *timing)
        }
        Command::Classify { input } => classify(&polytope(input, stdin)?),
        Command::Hp { input } => {
            let h = sospoly::build_hp(&polytope(input, stdin)?)?;
            Ok(Output {
                text: format!("{h}\n"),
                json: polynomial_to_json(&h),
            })
        }
        Command::Gram { input } => gram(&polynomial_from_json(&read_input(input, stdin)?)?),
        Command::Example { number } => match number {
            1 => Ok(polytope_output(&catalog::example1())),
            2 => Ok(polytope_output(&catalog::example2())),
            3 => Ok(polytope_output(&catalog::example3())),
            _ => example4(),
        },
        Command::Extend { input, region } => extend(&polytope(input, stdin)?, *region),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", out.json),
                Format::Text => out.text,
            };
            match stdout.write_all(body.as_bytes()) {
                Ok(()) => 0,
                Err(_) => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

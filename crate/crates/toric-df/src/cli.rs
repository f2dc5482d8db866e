//! Command line driver: JSON in, JSON plus a human-readable summary out.
//!
//! Subcommands: `df` (three-route invariant report), `mirror` (potential
//! dump), `critical` (critical points, root bound, stationary phase
//! count), `residue` (boundary decomposition report), `theorem1`
//! (assembled identity with rank checks and Hamiltonian data),
//! `vanishing` (defect over a scale list), `polytope` (duality and volume
//! utilities) and `reproduce <id>` (run a named configuration end to end
//! and diff against its golden values).
//!
//! Exit codes: 0 success, 2 validation failure, 3 solver incomplete,
//! 4 hypothesis failure. Identical inputs and seeds give byte-identical
//! reports: all maps are ordered and numbers serialize as exact `p/q`
//! strings or decimal strings of declared precision.

use crate::boundary::{build_compactification, residue_decomposition, single_group, vanishing_check};
use crate::corpus;
use crate::critical::{check_stationary_phase, find_critical_points, SolverOptions};
use crate::duals::{assemble_theorem, auto_grouping, orbifold_duals};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::hp::HpCtx;
use crate::lattice::{unimodular_equivalent, LatticeVector};
use crate::lg::build_potential;
use crate::num::{Int, Rat};
use crate::polytope::{convex_hull, is_reflexive, lattice_points, normalized_volume, polar_dual};
use crate::report::{lattice_vec_i64, parse_rat, rat_str, scaled_str};
use crate::testconfig::{df_report, ToricTestConfiguration};
use crate::toric::ToricDivisor;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "toric-df", version, about = "Donaldson-Futaki invariants of toric test configurations and their mirror residue decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Working precision in bits for the numeric layer.
    #[arg(long, global = true, default_value_t = 256)]
    precision: usize,
    /// Seed for the deterministic multistart phases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Opt-in thread count; the engine is sequential and order
    /// independent, so this only bounds future parallel sections.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Donaldson-Futaki invariant by all three routes.
    Df {
        /// Named configuration or a JSON file with fan, lambda and
        /// polarisation.
        #[arg(long)]
        tc: String,
        /// Scale factor applied to the polarisation.
        #[arg(long, default_value = "1")]
        k: String,
    },
    /// Mirror potential dump.
    Mirror {
        #[arg(long)]
        tc: String,
        #[arg(long, default_value = "8")]
        k: String,
    },
    /// Critical points, root bound and the stationary phase count.
    Critical {
        #[arg(long)]
        tc: String,
        #[arg(long, default_value = "8")]
        k: String,
        /// Start budget for the multistart phase.
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
    /// Boundary residue decomposition over the torus fixed points.
    Residue {
        #[arg(long)]
        tc: String,
        #[arg(long, default_value = "8")]
        k: String,
        /// Grouping: "single", "auto", or a JSON list of cone index lists.
        #[arg(long, default_value = "auto")]
        grouping: String,
    },
    /// Assembled decomposition identity with rank checks and Hamiltonian
    /// prescriptions.
    Theorem1 {
        #[arg(long)]
        tc: String,
        #[arg(long, default_value = "16")]
        k: String,
        #[arg(long, default_value = "auto")]
        grouping: String,
        /// Chart vector a,b for the prescribed targets.
        #[arg(long, default_value = "1/3,1/3")]
        chart: String,
    },
    /// Defect of the boundary decomposition over a list of scales.
    Vanishing {
        #[arg(long)]
        tc: String,
        #[arg(long, default_value = "4,8,12,16")]
        k_list: String,
        #[arg(long, default_value = "1/1000")]
        tolerance: String,
    },
    /// Polytope utilities: polar duals, reflexivity, volumes, points.
    Polytope {
        /// JSON file with {"vertices": [[..], ..]} or a named polytope
        /// (p82, p82-prime, hexagon, p-polygon).
        #[arg(long)]
        input: String,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        reflexive: bool,
        #[arg(long)]
        volume: bool,
        #[arg(long)]
        points: bool,
    },
    /// Run a named configuration end to end and diff against golden
    /// values.
    Reproduce {
        /// normal-cone-p1 | hirzebruch-product | trivial-p1 |
        /// threefold-polytopes
        id: String,
    },
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            let payload = json!({ "error": format!("{e}") });
            eprintln!("{}", serde_json::to_string_pretty(&payload).unwrap());
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let report = match &cli.command {
        Command::Df { tc, k } => cmd_df(tc, k)?,
        Command::Mirror { tc, k } => cmd_mirror(tc, k)?,
        Command::Critical { tc, k, budget } => cmd_critical(tc, k, *budget, cli.precision, cli.seed)?,
        Command::Residue { tc, k, grouping } => cmd_residue(tc, k, grouping)?,
        Command::Theorem1 {
            tc,
            k,
            grouping,
            chart,
        } => cmd_theorem(tc, k, grouping, chart)?,
        Command::Vanishing {
            tc,
            k_list,
            tolerance,
        } => cmd_vanishing(tc, k_list, tolerance)?,
        Command::Polytope {
            input,
            dual,
            reflexive,
            volume,
            points,
        } => cmd_polytope(input, *dual, *reflexive, *volume, *points)?,
        Command::Reproduce { id } => {
            let (report, clean) = cmd_reproduce(id, cli.precision, cli.seed)?;
            if !clean {
                emit(&report, &cli.out)?;
                return Err(Error::HypothesisFailed("golden diff not empty".into()));
            }
            report
        }
    };
    emit(&report, &cli.out)
}

fn emit(report: &Value, out: &Option<std::path::PathBuf>) -> Result<()> {
    let pretty = serde_json::to_string_pretty(report)?;
    println!("{pretty}");
    if let Some(path) = out {
        std::fs::write(path, pretty)?;
    }
    Ok(())
}

/// Load a test configuration: a corpus name or a JSON description.
pub fn load_tc(name: &str) -> Result<ToricTestConfiguration> {
    match name {
        "normal-cone-p1" => corpus::normal_cone_p1(&Rat::new(1.into(), 2.into())),
        "hirzebruch-product" => corpus::hirzebruch_product(&Rat::new(1.into(), 3.into())),
        "trivial-p1" => corpus::trivial_p1(),
        "blowup-threefold" => corpus::blowup_plane_threefold(),
        path => {
            let text = std::fs::read_to_string(path)?;
            let v: Value = serde_json::from_str(&text)?;
            tc_from_json(&v)
        }
    }
}

pub fn tc_from_json(v: &Value) -> Result<ToricTestConfiguration> {
    let fan_v = v
        .get("fan")
        .ok_or_else(|| Error::InvalidInput("missing fan".into()))?;
    let rays = fan_v
        .get("rays")
        .and_then(|r| r.as_array())
        .ok_or_else(|| Error::InvalidInput("missing rays".into()))?
        .iter()
        .map(json_to_lattice_vector)
        .collect::<Result<Vec<_>>>()?;
    let cones = fan_v
        .get("max_cones")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::InvalidInput("missing max_cones".into()))?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| Error::InvalidInput("bad cone".into()))?
                .iter()
                .map(|i| {
                    i.as_u64()
                        .map(|i| i as usize)
                        .ok_or_else(|| Error::InvalidInput("bad cone index".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = rays.first().map(|r| r.dim()).unwrap_or(0);
    let fan = Fan::new(rays, cones, dim)?;
    let lambda = json_to_lattice_vector(
        v.get("lambda")
            .ok_or_else(|| Error::InvalidInput("missing lambda".into()))?,
    )?;
    let coeffs = v
        .get("polarisation")
        .and_then(|p| p.as_array())
        .ok_or_else(|| Error::InvalidInput("missing polarisation".into()))?
        .iter()
        .map(|c| match c {
            Value::String(s) => {
                parse_rat(s).ok_or_else(|| Error::InvalidInput("bad coefficient".into()))
            }
            Value::Number(n) => n
                .as_i64()
                .map(|i| Rat::from(Int::from(i)))
                .ok_or_else(|| Error::InvalidInput("bad coefficient".into())),
            _ => Err(Error::InvalidInput("bad coefficient".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    ToricTestConfiguration::new(fan, lambda, ToricDivisor::new(coeffs))
}

fn json_to_lattice_vector(v: &Value) -> Result<LatticeVector> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected array".into()))?;
    let coords = arr
        .iter()
        .map(|c| {
            c.as_i64()
                .map(Int::from)
                .or_else(|| c.as_str().and_then(|s| s.parse::<Int>().ok()))
                .ok_or_else(|| Error::InvalidInput("bad integer".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeVector(coords))
}

fn parse_k(k: &str) -> Result<Rat> {
    parse_rat(k).ok_or_else(|| Error::InvalidInput(format!("bad scale {k}")))
}

fn parse_grouping(
    name: &str,
    comp: &crate::boundary::Compactification,
) -> Result<Vec<Vec<usize>>> {
    match name {
        "single" => Ok(single_group(comp)),
        "auto" => auto_grouping(&comp.fan),
        s => {
            let v: Value = serde_json::from_str(s)?;
            v.as_array()
                .ok_or_else(|| Error::InvalidInput("grouping must be a list of lists".into()))?
                .iter()
                .map(|g| {
                    g.as_array()
                        .ok_or_else(|| Error::InvalidInput("bad group".into()))?
                        .iter()
                        .map(|i| {
                            i.as_u64()
                                .map(|i| i as usize)
                                .ok_or_else(|| Error::InvalidInput("bad index".into()))
                        })
                        .collect()
                })
                .collect()
        }
    }
}

fn fan_json(fan: &Fan) -> Value {
    json!({
        "rays": fan.rays.iter().map(lattice_vec_i64).collect::<Vec<_>>(),
        "max_cones": fan.max_cones,
    })
}

fn cmd_df(tc: &str, k: &str) -> Result<Value> {
    let tc = load_tc(tc)?.rescaled(&parse_k(k)?);
    let report = df_report(&tc)?;
    Ok(json!({
        "command": "df",
        "value_intersection": rat_str(&report.value_intersection),
        "value_localised": rat_str(&report.value_localised),
        "value_polytope": rat_str(&report.value_polytope),
        "slope": rat_str(&report.slope),
        "agree": report.value_intersection == report.value_localised
            && report.value_localised == report.value_polytope,
    }))
}

fn cmd_mirror(tc: &str, k: &str) -> Result<Value> {
    let tc = load_tc(tc)?;
    let k = parse_k(k)?;
    let w = build_potential(&tc, &k);
    Ok(json!({
        "command": "mirror",
        "k": rat_str(&k),
        "terms": w.terms.iter().map(|(m, c)| json!({
            "exp": lattice_vec_i64(m),
            "log_coeff": rat_str(&c.log),
            "mantissa": rat_str(&c.man),
        })).collect::<Vec<_>>(),
        "weak_fano_warning": w.weak_fano_warning,
    }))
}

fn cmd_critical(tc: &str, k: &str, budget: usize, precision: usize, seed: u64) -> Result<Value> {
    let tc = load_tc(tc)?;
    let k = parse_k(k)?;
    let w = build_potential(&tc, &k);
    let opts = SolverOptions {
        precision_bits: precision,
        start_budget: budget,
        seed,
        ..Default::default()
    };
    let solve = find_critical_points(&w, &opts)?;
    let sp = check_stationary_phase(&w, &solve, None)?;
    let ctx = HpCtx::new(precision);
    let digits = 30;
    Ok(json!({
        "command": "critical",
        "k": rat_str(&k),
        "bkk_bound": format!("{}", solve.bkk),
        "count": solve.points.len(),
        "complete": solve.complete,
        "stationary_phase": {
            "multiplicity_sum": sp.multiplicity_sum,
            "chi": format!("{}", sp.chi),
            "holds": sp.holds,
            "chi_source": sp.chi_source,
        },
        "points": solve.points.iter().map(|p| json!({
            "log_coords": p.log_coords.iter().map(|z| json!([
                ctx.to_decimal(&z.re, digits),
                ctx.to_decimal(&z.im, digits),
            ])).collect::<Vec<_>>(),
            "value": [ctx.to_decimal(&p.value.re, digits), ctx.to_decimal(&p.value.im, digits)],
            "hessian_det": [
                ctx.to_decimal(&p.hessian_det.re, digits),
                ctx.to_decimal(&p.hessian_det.im, digits),
            ],
            "multiplicity": p.multiplicity,
            "degenerate": p.degenerate,
        })).collect::<Vec<_>>(),
    }))
}

fn cmd_residue(tc: &str, k: &str, grouping: &str) -> Result<Value> {
    let tc = load_tc(tc)?;
    let k = parse_k(k)?;
    let w = build_potential(&tc, &k);
    let comp = build_compactification(&w)?;
    let grouping = parse_grouping(grouping, &comp)?;
    let report = residue_decomposition(&tc, &k, &comp, &grouping)?;
    Ok(residue_json(&report, &comp))
}

fn residue_json(report: &crate::boundary::ResidueReport, comp: &crate::boundary::Compactification) -> Value {
    json!({
        "command": "residue",
        "k": rat_str(&report.k),
        "container": comp.container.vertices.len(),
        "container_tag": report.container_tag,
        "subdivided_at": comp.subdivided_at.iter().map(|&v| comp.point_label_of_vertex(v)).collect::<Vec<_>>(),
        "fan": fan_json(&comp.fan),
        "rows": report.rows.iter().map(|r| json!({
            "cone": r.cone,
            "label": r.label,
            "group": r.group,
            "theta_tilde": scaled_str(&r.theta_tilde),
            "psi_tilde": scaled_str(&r.psi_tilde),
            "omega0_sign": format!("{}", r.omega0_sign),
            "connection_residues": r.connection_residues.iter().map(|c| format!("{c}")).collect::<Vec<_>>(),
            "f_factor": rat_str(&r.f_factor),
            "term": rat_str(&r.term),
        })).collect::<Vec<_>>(),
        "group_totals": report.group_totals.iter().map(rat_str).collect::<Vec<_>>(),
        "total": rat_str(&report.total),
        "df_intersection": rat_str(&report.df_intersection),
        "boundary_remainder": rat_str(&report.boundary_remainder),
        "nonpositive_integer_residues": report
            .nonpositive_integer_residues
            .iter()
            .map(|r| format!("{r}"))
            .collect::<Vec<_>>(),
    })
}

fn cmd_theorem(tc: &str, k: &str, grouping: &str, chart: &str) -> Result<Value> {
    let tc = load_tc(tc)?;
    let k = parse_k(k)?;
    let (a, b) = chart
        .split_once(',')
        .and_then(|(a, b)| Some((parse_rat(a)?, parse_rat(b)?)))
        .ok_or_else(|| Error::InvalidInput("chart must be a,b".into()))?;
    let w = build_potential(&tc, &k);
    let comp = build_compactification(&w)?;
    let grouping = parse_grouping(grouping, &comp)?;
    let report = assemble_theorem(&tc, &k, &comp, &grouping, (&a, &b))?;
    Ok(theorem_json(&report))
}

fn theorem_json(report: &crate::duals::TheoremReport) -> Value {
    json!({
        "command": "theorem1",
        "k": rat_str(&report.k),
        "groups": report.groups.iter().map(|g| json!({
            "dual": g.dual_index,
            "direction": lattice_vec_i64(&g.direction),
            "z_count": g.z_count,
            "central": g.central_labels,
            "df_value": rat_str(&g.df_value),
            "rank": {
                "h11": g.rank.h11,
                "dperp_bound": g.rank.dperp_bound,
                "lhs": g.rank.lhs,
                "rhs": g.rank.rhs,
                "display": g.rank.display,
                "holds": g.rank.holds,
            },
            "solve_residual": g.solve_residual.as_ref().map(rat_str),
        })).collect::<Vec<_>>(),
        "boundary_defect": rat_str(&report.boundary_defect),
        "total": rat_str(&report.total),
        "df_intersection": rat_str(&report.df_intersection),
    })
}

fn cmd_vanishing(tc: &str, k_list: &str, tolerance: &str) -> Result<Value> {
    let tc = load_tc(tc)?;
    let ks = k_list
        .split(',')
        .map(|s| parse_rat(s.trim()).ok_or_else(|| Error::InvalidInput("bad scale".into())))
        .collect::<Result<Vec<_>>>()?;
    let tol = parse_rat(tolerance).ok_or_else(|| Error::InvalidInput("bad tolerance".into()))?;
    let report = vanishing_check(&tc, &ks, &tol)?;
    Ok(json!({
        "command": "vanishing",
        "proportionality": rat_str(&report.proportionality),
        "rows": report.rows.iter().map(|r| json!({
            "k": rat_str(&r.k),
            "residual": rat_str(&r.residual),
        })).collect::<Vec<_>>(),
        "non_increasing": report.non_increasing,
        "final_within_tolerance": report.final_within_tolerance,
    }))
}

fn load_polytope(input: &str) -> Result<crate::polytope::LatticePolytope> {
    match input {
        "p82" => Ok(corpus::polytope_82()),
        "p82-prime" => Ok(corpus::polytope_82_prime()),
        "hexagon" => Ok(corpus::s6_hexagon()),
        "p-polygon" => Ok(corpus::reflexive_quadrilateral()),
        path => {
            let text = std::fs::read_to_string(path)?;
            let v: Value = serde_json::from_str(&text)?;
            let verts = v
                .get("vertices")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::InvalidInput("missing vertices".into()))?
                .iter()
                .map(json_to_lattice_vector)
                .collect::<Result<Vec<_>>>()?;
            convex_hull(&verts)
        }
    }
}

fn cmd_polytope(input: &str, dual: bool, reflexive: bool, volume: bool, points: bool) -> Result<Value> {
    let p = load_polytope(input)?;
    let mut out = serde_json::Map::new();
    out.insert("command".into(), json!("polytope"));
    out.insert(
        "vertices".into(),
        json!(p
            .lattice_vertices()
            .map(|vs| vs.iter().map(lattice_vec_i64).collect::<Vec<_>>())),
    );
    if dual {
        let d = polar_dual(&p)?;
        out.insert(
            "dual_vertices".into(),
            match d.lattice_vertices() {
                Some(vs) => json!(vs.iter().map(lattice_vec_i64).collect::<Vec<_>>()),
                None => json!(d
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(rat_str).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            },
        );
    }
    if reflexive {
        out.insert("reflexive".into(), json!(is_reflexive(&p)?));
    }
    if volume {
        out.insert(
            "normalized_volume".into(),
            json!(format!("{}", normalized_volume(&p))),
        );
    }
    if points {
        out.insert(
            "lattice_points".into(),
            json!(lattice_points(&p)
                .iter()
                .map(lattice_vec_i64)
                .collect::<Vec<_>>()),
        );
    }
    Ok(Value::Object(out))
}

/// A golden diff row: what was checked, what was expected, what came out.
fn diff_row(diffs: &mut Vec<Value>, name: &str, expected: &str, got: &str) {
    if expected != got {
        diffs.push(json!({ "check": name, "expected": expected, "got": got }));
    }
}

fn cmd_reproduce(id: &str, precision: usize, seed: u64) -> Result<(Value, bool)> {
    let mut diffs: Vec<Value> = Vec::new();
    let mut sections = serde_json::Map::new();
    match id {
        "normal-cone-p1" | "hirzebruch-product" => {
            let (tc, df_expect, count_expect, base_expect, theta_expect, group_expect) =
                if id == "normal-cone-p1" {
                    (
                        corpus::normal_cone_p1(&Rat::new(1.into(), 2.into()))?,
                        "1/4",
                        5usize,
                        vec!["p4"],
                        "1/2",
                        vec!["0", "1/4"],
                    )
                } else {
                    (
                        corpus::hirzebruch_product(&Rat::new(1.into(), 3.into()))?,
                        "0",
                        4usize,
                        vec!["p3", "p5"],
                        "1/3",
                        vec!["0", "0"],
                    )
                };
            let report = df_report(&tc)?;
            diff_row(&mut diffs, "df_intersection", df_expect, &rat_str(&report.value_intersection));
            diff_row(&mut diffs, "df_localised", df_expect, &rat_str(&report.value_localised));
            diff_row(&mut diffs, "df_polytope", df_expect, &rat_str(&report.value_polytope));
            sections.insert("df".into(), cmd_df(id, "1")?);

            let k = Rat::from(Int::from(8));
            let w = build_potential(&tc, &k);
            let opts = SolverOptions {
                precision_bits: precision,
                seed,
                ..Default::default()
            };
            let solve = find_critical_points(&w, &opts)?;
            diff_row(&mut diffs, "critical_count", &count_expect.to_string(), &solve.points.len().to_string());
            diff_row(&mut diffs, "bkk", &count_expect.to_string(), &format!("{}", solve.bkk));
            let sp = check_stationary_phase(&w, &solve, None)?;
            diff_row(&mut diffs, "chi", &count_expect.to_string(), &format!("{}", sp.chi));
            diff_row(&mut diffs, "stationary_phase", "true", &sp.holds.to_string());

            let comp = build_compactification(&w)?;
            let base: Vec<String> = comp
                .subdivided_at
                .iter()
                .map(|&v| comp.point_label_of_vertex(v))
                .collect();
            let mut base_sorted = base.clone();
            base_sorted.sort();
            diff_row(&mut diffs, "base_points", &base_expect.join(","), &base_sorted.join(","));

            let grouping = auto_grouping(&comp.fan)?;
            let res = residue_decomposition(&tc, &k, &comp, &grouping)?;
            for row in &res.rows {
                diff_row(
                    &mut diffs,
                    &format!("theta_tilde[{}]", row.label),
                    theta_expect,
                    &row.theta_tilde.as_exact().map(|r| rat_str(&r)).unwrap_or_default(),
                );
                diff_row(
                    &mut diffs,
                    &format!("omega0[{}]", row.label),
                    "-1",
                    &format!("{}", row.omega0_sign),
                );
            }
            diff_row(&mut diffs, "residue_total", df_expect, &rat_str(&res.total));
            let mut totals: Vec<String> = res.group_totals.iter().map(rat_str).collect();
            totals.sort();
            diff_row(&mut diffs, "group_totals", &group_expect.join(","), &totals.join(","));
            sections.insert("residue".into(), residue_json(&res, &comp));

            let theorem = assemble_theorem(
                &tc,
                &Rat::from(Int::from(16)),
                &comp,
                &grouping,
                (&Rat::new(1.into(), 3.into()), &Rat::new(1.into(), 3.into())),
            )?;
            diff_row(&mut diffs, "boundary_defect", "0", &rat_str(&theorem.boundary_defect));
            for g in &theorem.groups {
                diff_row(
                    &mut diffs,
                    &format!("rank_holds[{}]", g.dual_index),
                    "true",
                    &g.rank.holds.to_string(),
                );
            }
            sections.insert("theorem1".into(), theorem_json(&theorem));

            let ctx = HpCtx::new(precision);
            let mr = crate::critical::df_mirror_residue(&tc, &k, &opts)?;
            let df_f = report
                .value_intersection
                .numer()
                .to_string()
                .parse::<f64>()
                .unwrap_or(0.0)
                / report.value_intersection.denom().to_string().parse::<f64>().unwrap_or(1.0);
            let (re, _) = mr.value.approx(&ctx);
            let err = (re - df_f).abs();
            sections.insert(
                "mirror_residue".into(),
                json!({
                    "k": "8",
                    "value_re": ctx.to_decimal(&mr.value.re, 30),
                    "abs_error_vs_df": format!("{err:e}"),
                }),
            );
            if err > 1e-3 {
                diff_row(&mut diffs, "mirror_residue_error", "<=1e-3", &format!("{err:e}"));
            }
        }
        "trivial-p1" => {
            let report = df_report(&corpus::trivial_p1()?)?;
            diff_row(&mut diffs, "df_intersection", "0", &rat_str(&report.value_intersection));
            diff_row(&mut diffs, "df_localised", "0", &rat_str(&report.value_localised));
            diff_row(&mut diffs, "df_polytope", "0", &rat_str(&report.value_polytope));
            sections.insert("df".into(), cmd_df("trivial-p1", "1")?);
        }
        "threefold-polytopes" => {
            let p = corpus::polytope_82();
            let pp = corpus::polytope_82_prime();
            diff_row(&mut diffs, "p82_reflexive", "true", &is_reflexive(&p)?.to_string());
            diff_row(&mut diffs, "p82_vertices", "7", &p.vertices.len().to_string());
            let dual = polar_dual(&pp)?;
            let mut got = dual.lattice_vertices().unwrap_or_default();
            got.sort();
            let mut expect = corpus::polytope_82_prime_polar_vertices();
            expect.sort();
            diff_row(
                &mut diffs,
                "polar_dual_vertices",
                &format!("{expect:?}"),
                &format!("{got:?}"),
            );
            let equiv = unimodular_equivalent(
                &p.lattice_vertices().unwrap(),
                &pp.lattice_vertices().unwrap(),
            )?;
            diff_row(&mut diffs, "unimodular_equivalent", "true", &equiv.to_string());
            let tc = corpus::blowup_plane_threefold()?;
            let report = df_report(&tc)?;
            diff_row(&mut diffs, "threefold_df", "4/3", &rat_str(&report.value_intersection));
            diff_row(
                &mut diffs,
                "threefold_routes_agree",
                "true",
                &(report.value_intersection == report.value_localised
                    && report.value_localised == report.value_polytope)
                    .to_string(),
            );
            let orb = orbifold_duals()?;
            for r in &orb {
                diff_row(&mut diffs, &format!("{}_picard", r.name), "3", &r.picard_rank.to_string());
                diff_row(
                    &mut diffs,
                    &format!("{}_central_fixed_points", r.name),
                    "5",
                    &r.central_fixed_points.to_string(),
                );
            }
            sections.insert(
                "orbifold_duals".into(),
                json!(orb
                    .iter()
                    .map(|r| json!({
                        "name": r.name,
                        "vertices": r.vertices.iter().map(lattice_vec_i64).collect::<Vec<_>>(),
                        "facets": r.facets,
                        "picard_rank": r.picard_rank,
                        "central_fixed_points": r.central_fixed_points,
                    }))
                    .collect::<Vec<_>>()),
            );
        }
        other => {
            return Err(Error::InvalidInput(format!("unknown reproduction id {other}")));
        }
    }
    let clean = diffs.is_empty();
    let report = json!({
        "command": "reproduce",
        "id": id,
        "diffs": diffs,
        "clean": clean,
        "sections": Value::Object(sections),
    });
    Ok((report, clean))
}

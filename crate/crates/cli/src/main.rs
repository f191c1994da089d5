//! Command-line front end for the log-concavity verification toolkit.
//!
//! Exit codes: 0 = all checked properties hold, 2 = a genuine mathematical
//! violation was witnessed, 1 = usage or input error. The three are never
//! conflated. For a fixed seed and configuration the output bytes are
//! identical across runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use bproperty_core::counterexamples::{
    certify_quasiconcave_violation, certify_uniform_violation, confirm_uniform_violation,
    quasiconcave_witness_at, uniform_counterexample,
};
use bproperty_core::dihedral::{
    dihedral_identity_check, make_dn_shape, pair_full_area, sector_area, w_shape, RadialProfile,
};
use bproperty_core::dynamics::{
    boundary_flux, midpoint_logconcavity_check, property_b_check, sample_logf, DynamicsError,
    MidpointWitness, PropertyBReport,
};
use bproperty_core::geom::Symmetry;
use bproperty_core::oracle::{
    corner_case_check, e_polynomial, edge_case_params, edge_case_check, edge_case_shape,
    CornerCaseParams,
};
use bproperty_core::random::random_f_pair;
use bproperty_core::reduction::{check_class_f, perturb_to_f, reduce_pair, ExtendedPair};
use bproperty_core::scalar::{format_scalar, int, ratio, to_f64, Scalar};
use bproperty_core::ConvexPolygon;

#[derive(Parser)]
#[command(
    name = "bproperty",
    version,
    about = "Checks log-concavity of t ↦ |e^t K ∩ L| for planar convex polygons"
)]
struct Cli {
    /// Seed for every randomized step; the same seed reproduces the output
    /// byte for byte.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format. csv applies to plot-data and dihedral-verify.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker count. Accepted for compatibility; checks run sequentially in
    /// input order so the byte-determinism contract is trivially kept.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseKind {
    Edge,
    Corner,
}

#[derive(Subcommand)]
enum Command {
    /// Run the transversality, derivative-inequality, and midpoint checks on
    /// one polygon pair.
    CheckPair {
        /// Path to the JSON file for the scaled shape K.
        k: PathBuf,
        /// Path to the JSON file for the fixed shape L.
        l: PathBuf,
        /// If the pair is not transversal, rescale L slightly until it is.
        #[arg(long)]
        perturb: bool,
        /// Accept polygons that are not centrally symmetric (only the
        /// midpoint scan applies to them).
        #[arg(long)]
        allow_asymmetric: bool,
    },
    /// Generate random centrally symmetric transversal pairs and check each.
    ScanRandom {
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Support points sampled per shape before symmetrizing.
        #[arg(long, default_value_t = 6)]
        vertices: usize,
    },
    /// Decompose a transversal pair into bounded extended pairs and verify
    /// the flux additivity ledger.
    Reduce { k: PathBuf, l: PathBuf },
    /// Evaluate the closed-form parallelogram inequalities on a parameter
    /// grid.
    OracleGrid {
        #[arg(long, value_enum)]
        case: CaseKind,
        #[arg(long, default_value_t = 8)]
        grid_density: usize,
    },
    /// Check the sector and angle-multiplication identities for smooth
    /// n-fold symmetric shapes.
    DihedralVerify {
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Amplitude of the cosine perturbation of the unit circle.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 0.5)]
        t_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// Angular samples per fundamental sector.
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Produce and confirm the two known violation witnesses.
    Counterexamples {
        /// Monte Carlo samples for the independent area re-estimate.
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: usize,
    },
    /// Emit (t, log |e^t K ∩ L|) samples for plotting.
    PlotData {
        k: PathBuf,
        l: PathBuf,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
}

/// 0 = holds, 2 = violation witnessed. Input problems travel as Err.
struct Outcome {
    text: String,
    violation: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.violation { 2 } else { 0 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if cli.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    match &cli.command {
        Command::CheckPair {
            k,
            l,
            perturb,
            allow_asymmetric,
        } => cmd_check_pair(cli, k, l, *perturb, *allow_asymmetric),
        Command::ScanRandom { count, vertices } => cmd_scan_random(cli, *count, *vertices),
        Command::Reduce { k, l } => cmd_reduce(cli, k, l),
        Command::OracleGrid { case, grid_density } => cmd_oracle_grid(cli, *case, *grid_density),
        Command::DihedralVerify {
            n,
            eps,
            t_min,
            t_max,
            steps,
            samples,
        } => cmd_dihedral_verify(cli, *n, *eps, *t_min, *t_max, *steps, *samples),
        Command::Counterexamples { mc_samples } => cmd_counterexamples(cli, *mc_samples),
        Command::PlotData {
            k,
            l,
            t_min,
            t_max,
            steps,
        } => cmd_plot_data(cli, k, l, *t_min, *t_max, *steps),
    }
}

fn require_json(cli: &Cli) -> Result<(), String> {
    if cli.format == Format::Csv {
        return Err("this subcommand only produces JSON; drop --format csv".into());
    }
    Ok(())
}

fn load_polygon(path: &PathBuf) -> Result<ConvexPolygon, String> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&raw).map_err(|e| format!("invalid polygon in {}: {e}", path.display()))
}

fn is_symmetric(p: &ConvexPolygon) -> bool {
    !matches!(p.symmetry(), Symmetry::None)
}

fn scalar_value(s: &Scalar) -> Value {
    json!({ "exact": format_scalar(s), "decimal": to_f64(s) })
}

fn witness_value(w: &MidpointWitness) -> Value {
    let mut v = serde_json::to_value(w).expect("serializable witness");
    let holds = w.defect >= int(0);
    v.as_object_mut()
        .expect("witness serializes to an object")
        .insert("holds".into(), Value::Bool(holds));
    v
}

fn report_value(rep: &PropertyBReport) -> Value {
    json!({
        "area": { "exact": rep.area, "decimal": rep.area_f64 },
        "g1": { "exact": rep.g1, "decimal": rep.g1_f64 },
        "g1_prime": { "exact": rep.g1_prime, "decimal": rep.g1_prime_f64 },
        "lhs": { "exact": rep.lhs, "decimal": rep.lhs_f64 },
        "rhs": { "exact": rep.rhs, "decimal": rep.rhs_f64 },
        "holds": rep.holds,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

/// Scale triples used by the generic midpoint scan. The r values straddle 1
/// tightly so that known near-1 violations (the asymmetric rectangle vs
/// triangle pair) are caught.
fn midpoint_grid() -> Vec<(Scalar, Scalar)> {
    let qs = [ratio(3, 4), ratio(7, 8), int(1), ratio(9, 8), ratio(5, 4)];
    let rs = [ratio(63, 64), ratio(65, 64)];
    let mut grid = Vec::new();
    for q in &qs {
        for r in &rs {
            grid.push((q.clone(), r.clone()));
        }
    }
    grid
}

fn run_midpoint_scan(
    k: &ConvexPolygon,
    l: &ConvexPolygon,
    grid: &[(Scalar, Scalar)],
) -> Result<(Vec<Value>, usize, usize), String> {
    let mut rows = Vec::new();
    let mut violations = 0;
    let mut skipped = 0;
    for (q, r) in grid {
        match midpoint_logconcavity_check(k, l, q, r) {
            Ok(w) => {
                if w.defect < int(0) {
                    violations += 1;
                }
                rows.push(witness_value(&w));
            }
            Err(DynamicsError::ZeroArea(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok((rows, violations, skipped))
}

fn cmd_check_pair(
    cli: &Cli,
    k_path: &PathBuf,
    l_path: &PathBuf,
    perturb: bool,
    allow_asymmetric: bool,
) -> Result<Outcome, String> {
    require_json(cli)?;
    let k = load_polygon(k_path)?;
    let l = load_polygon(l_path)?;
    let symmetric = is_symmetric(&k) && is_symmetric(&l);
    if !symmetric && !allow_asymmetric {
        return Err(
            "polygons are not centrally symmetric; pass --allow-asymmetric to run the \
             midpoint scan anyway"
                .into(),
        );
    }

    let mut class_f = Value::Null;
    let mut property_b = Value::Null;
    let mut property_b_holds = true;
    let (k_used, l_used) = if symmetric {
        let diag = check_class_f(&k, &l);
        let mut perturbed = false;
        let (k1, l1) = if !diag.in_class() && perturb {
            let pair = perturb_to_f(&k, &l, &ratio(1, 1024)).map_err(|e| e.to_string())?;
            perturbed = true;
            pair
        } else {
            (k.clone(), l.clone())
        };
        let usable = diag.in_class() || perturbed;
        class_f = json!({
            "in_class": diag.in_class(),
            "perturbed": perturbed,
            "violations": diag
                .violations
                .iter()
                .map(|v| json!({
                    "kind": v.kind,
                    "location": [format_scalar(&v.location.x), format_scalar(&v.location.y)],
                }))
                .collect::<Vec<_>>(),
        });
        if usable {
            let rep = property_b_check(&k1, &l1).map_err(|e| e.to_string())?;
            property_b_holds = rep.holds;
            property_b = report_value(&rep);
        }
        (k1, l1)
    } else {
        (k.clone(), l.clone())
    };

    let (rows, violations, skipped) = run_midpoint_scan(&k_used, &l_used, &midpoint_grid())?;
    let violation = violations > 0 || !property_b_holds;
    let report = json!({
        "class_f": class_f,
        "property_b": property_b,
        "midpoint": { "triples": rows, "violations": violations, "skipped": skipped },
        "verdict": if violation { "violation" } else { "holds" },
    });
    Ok(Outcome {
        text: pretty(&report),
        violation,
    })
}

fn cmd_scan_random(cli: &Cli, count: usize, vertices: usize) -> Result<Outcome, String> {
    require_json(cli)?;
    if vertices < 2 {
        return Err("--vertices must be at least 2".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    // Geometric scale triples around 1; areas stay positive because both
    // shapes contain the origin.
    let grid: Vec<(Scalar, Scalar)> = vec![
        (ratio(1, 2), ratio(3, 2)),
        (int(1), ratio(3, 4)),
        (int(1), ratio(5, 4)),
        (ratio(3, 2), ratio(2, 3)),
    ];
    let mut pairs = Vec::new();
    let mut violations = 0usize;
    for index in 0..count {
        let (k, l) = random_f_pair(&mut rng, vertices).map_err(|e| e.to_string())?;
        let rep = property_b_check(&k, &l).map_err(|e| e.to_string())?;
        let (rows, mid_violations, skipped) = run_midpoint_scan(&k, &l, &grid)?;
        if !rep.holds || mid_violations > 0 {
            violations += 1;
        }
        pairs.push(json!({
            "index": index,
            "k_vertices": k.len(),
            "l_vertices": l.len(),
            "property_b": report_value(&rep),
            "midpoint": { "triples": rows, "violations": mid_violations, "skipped": skipped },
        }));
    }
    let report = json!({
        "count": count,
        "seed": cli.seed,
        "pairs": pairs,
        "violations": violations,
        "verdict": if violations > 0 { "violation" } else { "holds" },
    });
    Ok(Outcome {
        text: pretty(&report),
        violation: violations > 0,
    })
}

fn extended_pair_value(
    pair: &ExtendedPair,
    g: &Scalar,
    gp: &Scalar,
) -> Value {
    json!({
        "source_component": pair.source_component,
        "k_ext": pair.k_ext,
        "l_ext": pair.l_ext,
        "strip": pair.strip_used.as_ref().map(|s| json!({
            "normal": [
                format_scalar(&s.normal.as_point().x),
                format_scalar(&s.normal.as_point().y),
            ],
            "halfwidth": format_scalar(&s.halfwidth),
        })),
        "g1": scalar_value(g),
        "g1_prime": scalar_value(gp),
    })
}

fn cmd_reduce(cli: &Cli, k_path: &PathBuf, l_path: &PathBuf) -> Result<Outcome, String> {
    require_json(cli)?;
    let k = load_polygon(k_path)?;
    let l = load_polygon(l_path)?;
    if !is_symmetric(&k) || !is_symmetric(&l) {
        return Err("reduce needs centrally symmetric polygons".into());
    }
    let pairs = reduce_pair(&k, &l).map_err(|e| e.to_string())?;
    let total = boundary_flux(&k, &l).map_err(|e| e.to_string())?;
    let mut sum_g = int(0);
    let mut sum_gp = int(0);
    let mut entries = Vec::new();
    for pair in &pairs {
        let flux = boundary_flux(&pair.k_ext, &pair.l_ext).map_err(|e| e.to_string())?;
        sum_g += &flux.g1;
        sum_gp += &flux.g1_prime;
        entries.push(extended_pair_value(pair, &flux.g1, &flux.g1_prime));
    }
    let additive = sum_g == total.g1 && sum_gp == total.g1_prime;
    let report = json!({
        "pairs": entries,
        "ledger": {
            "g1_total": scalar_value(&total.g1),
            "g1_prime_total": scalar_value(&total.g1_prime),
            "g1_sum": scalar_value(&sum_g),
            "g1_prime_sum": scalar_value(&sum_gp),
            "additive": additive,
        },
    });
    // A broken ledger is an internal invariant failure, not a mathematical
    // violation witness; surface it as an error.
    if !additive {
        return Err("flux additivity ledger failed to balance".into());
    }
    Ok(Outcome {
        text: pretty(&report),
        violation: false,
    })
}

fn cmd_oracle_grid(cli: &Cli, case: CaseKind, density: usize) -> Result<Outcome, String> {
    require_json(cli)?;
    if density == 0 {
        return Err("--grid-density must be at least 1".into());
    }
    let n = density as i64;
    let mut points = Vec::new();
    let mut holds = 0usize;
    let mut total = 0usize;
    match case {
        CaseKind::Edge => {
            for i in 1..=n {
                for j in 1..=n {
                    // Slopes in (1/4, 1/2] keep the inner vertex strictly
                    // inside the square for every combination, so each grid
                    // point is a genuine two-edge configuration.
                    let cot_a = ratio(n + i, 4 * n);
                    let cot_b = ratio(-(n + j), 4 * n);
                    let c = ratio(3, 2);
                    let shape = edge_case_shape(&c, &int(0), &cot_a, &cot_b)
                        .map_err(|e| e.to_string())?;
                    let params = edge_case_params(&shape).map_err(|e| e.to_string())?;
                    let verdict = edge_case_check(&params).map_err(|e| e.to_string())?;
                    total += 1;
                    if verdict.holds {
                        holds += 1;
                    }
                    points.push(json!({
                        "cot_alpha": scalar_value(&params.cot_alpha),
                        "cot_beta": scalar_value(&params.cot_beta),
                        "c": scalar_value(&params.c),
                        "d": scalar_value(&params.d),
                        "lhs": scalar_value(&verdict.lhs),
                        "rhs": scalar_value(&verdict.rhs),
                        "holds": verdict.holds,
                    }));
                }
            }
        }
        CaseKind::Corner => {
            for i in 1..=n {
                for j in 1..=n {
                    let a = ratio(2 * i, n + 1);
                    let b = ratio(2 * j, n + 1);
                    let ab = &a * &b;
                    for m in 1..=n {
                        let s = (int(4) - &ab) + ratio(m, n + 1) * &ab;
                        let params = CornerCaseParams {
                            a: a.clone(),
                            b: b.clone(),
                            s: s.clone(),
                        };
                        let verdict = corner_case_check(&params).map_err(|e| e.to_string())?;
                        total += 1;
                        if verdict.holds {
                            holds += 1;
                        }
                        points.push(json!({
                            "a": scalar_value(&a),
                            "b": scalar_value(&b),
                            "S": scalar_value(&s),
                            "E": scalar_value(&e_polynomial(&a, &b, &s)),
                            "lhs": scalar_value(&verdict.lhs),
                            "rhs": scalar_value(&verdict.rhs),
                            "holds": verdict.holds,
                        }));
                    }
                }
            }
        }
    }
    let all_hold = holds == total;
    let report = json!({
        "case": match case { CaseKind::Edge => "edge", CaseKind::Corner => "corner" },
        "grid_density": density,
        "total": total,
        "holds": holds,
        "all_hold": all_hold,
        "points": points,
    });
    Ok(Outcome {
        text: pretty(&report),
        violation: !all_hold,
    })
}

fn cmd_dihedral_verify(
    cli: &Cli,
    n: u32,
    eps: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
    samples: usize,
) -> Result<Outcome, String> {
    if n < 2 {
        return Err("--n must be at least 2".into());
    }
    if !(t_min < t_max) || steps < 3 {
        return Err("need t_min < t_max and at least 3 steps".into());
    }
    let k = make_dn_shape(
        RadialProfile::Cosine {
            base: 1.0,
            eps,
            freq: n,
        },
        n,
        samples,
    )
    .map_err(|e| e.to_string())?;
    let l = make_dn_shape(
        RadialProfile::Cosine {
            base: 1.05,
            eps: eps / 2.0,
            freq: n,
        },
        n,
        samples,
    )
    .map_err(|e| e.to_string())?;

    let ts: Vec<f64> = (0..steps)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64)
        .collect();
    let min_intervals = 1024;
    let identity =
        dihedral_identity_check(&k, &l, &ts, min_intervals).map_err(|e| e.to_string())?;

    // Angle-multiplication Jacobian: |w(K) ∩ G_2| = (n/2) |K ∩ G_n|.
    let wk = w_shape(&k).map_err(|e| e.to_string())?;
    let full = sector_area(&k, 1.0, min_intervals) * 2.0 * n as f64;
    let jac_dev =
        (sector_area(&wk, 1.0, min_intervals) - 0.5 * n as f64 * sector_area(&k, 1.0, min_intervals))
            .abs();

    let fs: Vec<f64> = ts
        .iter()
        .map(|&t| pair_full_area(&k, &l, t, min_intervals))
        .collect();
    let logf: Vec<f64> = fs.iter().map(|&v| v.ln()).collect();
    let mut max_second_diff = f64::NEG_INFINITY;
    let mut second_diffs = vec![f64::NAN; steps];
    for i in 1..steps - 1 {
        let d2 = logf[i - 1] - 2.0 * logf[i] + logf[i + 1];
        second_diffs[i] = d2;
        max_second_diff = max_second_diff.max(d2);
    }

    let tol_identity = 1e-5;
    let tol_jacobian = 1e-6 * full;
    let tol_concavity = 1e-7 + 1e-9 * min_intervals as f64;
    let ok = identity.max_dev_sector < tol_identity
        && identity.max_dev_w < tol_identity
        && jac_dev < tol_jacobian
        && max_second_diff <= tol_concavity;

    if cli.format == Format::Csv {
        let mut out = String::from("t,f,logf,second_diff\n");
        for i in 0..steps {
            if second_diffs[i].is_nan() {
                out.push_str(&format!("{:.16e},{:.16e},{:.16e},\n", ts[i], fs[i], logf[i]));
            } else {
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    ts[i], fs[i], logf[i], second_diffs[i]
                ));
            }
        }
        return Ok(Outcome {
            text: out,
            violation: !ok,
        });
    }

    let report = json!({
        "n": n,
        "eps": eps,
        "samples": samples,
        "max_dev_sector": identity.max_dev_sector,
        "max_dev_w": identity.max_dev_w,
        "jacobian_deviation": jac_dev,
        "max_logf_second_difference": max_second_diff,
        "tolerances": {
            "identity": tol_identity,
            "jacobian": tol_jacobian,
            "concavity": tol_concavity,
        },
        "grid": ts.iter().zip(&logf).map(|(&t, &v)| json!([t, v])).collect::<Vec<_>>(),
        "all_within_tolerance": ok,
    });
    Ok(Outcome {
        text: pretty(&report),
        violation: !ok,
    })
}

fn cmd_counterexamples(cli: &Cli, mc_samples: usize) -> Result<Outcome, String> {
    require_json(cli)?;
    let witness = certify_uniform_violation().map_err(|e| e.to_string())?;
    let mc = confirm_uniform_violation(&witness, mc_samples, cli.seed).map_err(|e| e.to_string())?;
    let (k, l) = uniform_counterexample();

    let quasi = certify_quasiconcave_violation();
    let quasi_fine = quasiconcave_witness_at(1.0, 0.01);
    let scaling_ratio = quasi.defect / quasi_fine.defect;

    // The exact rational defect is the certificate; the Monte Carlo pass is
    // an independent confirmation whose strength grows with --mc-samples.
    let uniform_violated = witness
        .defect_exact
        .as_deref()
        .is_some_and(|d| d.starts_with('-'));
    let uniform_confirmed = uniform_violated && mc.sigmas_below_zero >= 3.0;
    let quasi_confirmed = quasi.defect < 0.0;
    let report = json!({
        "uniform": {
            "k": k,
            "l": l,
            "witness": witness,
            "monte_carlo": mc,
            "confirmed": uniform_confirmed,
        },
        "quasi_concave": {
            "witness": quasi,
            "fine_witness": quasi_fine,
            "defect_scaling_ratio": scaling_ratio,
            "confirmed": quasi_confirmed,
        },
    });
    if !uniform_violated || !quasi_confirmed {
        return Err("expected violation witnesses were not found".into());
    }
    Ok(Outcome {
        text: pretty(&report),
        violation: true,
    })
}

fn cmd_plot_data(
    cli: &Cli,
    k_path: &PathBuf,
    l_path: &PathBuf,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<Outcome, String> {
    let k = load_polygon(k_path)?;
    let l = load_polygon(l_path)?;
    let sampled = sample_logf(&k, &l, t_min, t_max, steps).map_err(|e| e.to_string())?;
    let text = match cli.format {
        Format::Csv => sampled.to_csv(),
        Format::Json => pretty(&json!({
            "entries": sampled.entries,
            "skipped": sampled.skipped,
        })),
    };
    Ok(Outcome {
        text,
        violation: false,
    })
}

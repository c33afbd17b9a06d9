use std::f64::consts::LN_2;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use entropy_toolkit::entropy::{
    distribution_from_json, distribution_to_json, entropy_function, exl_closed_form,
    exl_distribution, four_atom_distribution, four_atom_score, read_distribution, ExLParams,
    FourAtomParams, JointDistribution,
};
use entropy_toolkit::frame::{
    basis_generators, cross_section_point, ingleton_score, ingleton_value, pipeline,
    violated_instances, write_points_csv, CrossSectionPoint, IngletonFrame, GENERATOR_NAMES,
};
use entropy_toolkit::inequality::{dfz_bank, load_bank, CrossSectionHalfspace};
use entropy_toolkit::polymatroid::{check_axioms, is_modular, is_tight, tight_part};
use entropy_toolkit::search::{
    convex_hull_3d, generate_cloud, minimize_scalar, optimize_distribution, outer_region,
    sphere_directions, CloudOptions, SearchConfig,
};
use entropy_toolkit::{GroundSet, SetFunction};
use serde_json::{json, Value};

use crate::fmt::{num, nums};
use crate::{Cli, Command, ExlArgs, ExportKind};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let frame = |g: &GroundSet| -> Result<IngletonFrame> {
        Ok(match &cli.frame {
            Some(text) => IngletonFrame::parse(g, text)?,
            None => IngletonFrame::standard(g)?,
        })
    };
    match &cli.command {
        Command::Check { file, tol } => check(file, *tol),
        Command::Entropy { dist, bits, out } => entropy(dist, *bits, out.as_deref()),
        Command::Score { file } => {
            let h = read_function(file)?;
            score(&h, &frame(h.ground())?)
        }
        Command::Fouratom { p, minimize } => fouratom(*p, *minimize),
        Command::Exl(args) => exl(args, &frame(&GroundSet::ijkl())?),
        Command::Minimize { config, out } => {
            minimize(config, &frame(&GroundSet::ijkl())?, out.as_deref())
        }
        Command::Cloud {
            config,
            directions,
            seed,
            optima_only,
            out,
        } => cloud(
            config,
            *directions,
            *seed,
            *optima_only,
            &frame(&GroundSet::ijkl())?,
            out,
        ),
        Command::Hull { points, out } => hull(points, out.as_deref()),
        Command::Outer {
            dfz_max_s,
            ineq_file,
            out,
        } => outer(
            *dfz_max_s,
            ineq_file,
            &frame(&GroundSet::ijkl())?,
            out.as_deref(),
        ),
        Command::Export {
            kind,
            out,
            points,
            max_s,
        } => export(*kind, out, *points, *max_s, &frame(&GroundSet::ijkl())?),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// A set-function JSON, a distribution JSON or a distribution CSV.
fn read_function(path: &Path) -> Result<SetFunction> {
    if path.extension().is_some_and(|e| e == "json") {
        let text = fs::read_to_string(path)?;
        let v: Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if v.get("values").is_some() {
            return Ok(SetFunction::from_json(&text)?);
        }
        return Ok(entropy_function(&distribution_from_json(&text)?));
    }
    Ok(entropy_function(&read_distribution(path)?))
}

fn check(path: &Path, tol: f64) -> Result<ExitCode> {
    let f = SetFunction::read_json(path).with_context(|| format!("reading {}", path.display()))?;
    let report = check_axioms(&f, tol)?;
    let g = f.ground();
    println!("labels: {}", g.labels().join(","));
    println!("tolerance: {}", num(tol));
    println!("monotone: {}", report.is_monotone);
    println!("submodular: {}", report.is_submodular);
    println!("polymatroid: {}", report.is_polymatroid());
    println!(
        "worst_monotone_violation: {}",
        num(report.worst_monotone_violation)
    );
    println!(
        "worst_submodular_violation: {}",
        num(report.worst_submodular_violation)
    );
    if report.is_polymatroid() {
        println!("tight: {}", is_tight(&f, tol));
        println!("modular: {}", is_modular(&f, tol));
    }
    let show = |s| {
        let t = g.format_subset(s);
        if t.is_empty() {
            "{}".to_string()
        } else {
            t
        }
    };
    for w in report.monotone_witnesses.iter().take(5) {
        println!(
            "monotone_witness: {} {} {}",
            show(w.first),
            show(w.second),
            num(w.slack)
        );
    }
    for w in report.submodular_witnesses.iter().take(5) {
        println!(
            "submodular_witness: {} {} {}",
            show(w.first),
            show(w.second),
            num(w.slack)
        );
    }
    Ok(if report.is_polymatroid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn entropy(path: &Path, bits: bool, out: Option<&Path>) -> Result<ExitCode> {
    let d = read_distribution(path).with_context(|| format!("reading {}", path.display()))?;
    let mut h = entropy_function(&d);
    if bits {
        h = h.scale(1.0 / LN_2);
    }
    let text = h.to_json()? + "\n";
    match out {
        Some(p) => {
            write(p, &text)?;
            println!("atoms: {}", d.atom_count());
            println!("unit: {}", if bits { "bits" } else { "nats" });
            println!("h(N): {}", num(h.rank()));
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn score(h: &SetFunction, frame: &IngletonFrame) -> Result<ExitCode> {
    let g = h.ground();
    println!("frame: {}", frame.labels().join(","));
    println!("ingleton_value: {}", num(ingleton_value(h, frame)?));
    if h.rank() <= 0.0 {
        bail!("function vanishes at N; scores are undefined");
    }
    println!("score_raw: {}", num(ingleton_score(h, frame)?));
    println!(
        "score_tight: {}",
        num(ingleton_score(&tight_part(h), frame)?)
    );
    let reduced = pipeline(h, frame)?;
    if reduced.rank() > 0.0 {
        println!("score_pipeline: {}", num(ingleton_score(&reduced, frame)?));
    }
    let violated: Vec<String> = violated_instances(h, 1e-12)?
        .into_iter()
        .map(|(a, b)| format!("{}{}", g.label(a), g.label(b)))
        .collect();
    println!("violated_instances: [{}]", violated.join(", "));
    match cross_section_point(h, frame, 1e-12) {
        Ok(cs) => println!("weights: {}", nums(&cs.point.weights())),
        Err(_) => println!("weights: degenerate"),
    }
    Ok(ExitCode::SUCCESS)
}

fn four_atom_oracle(p: f64) -> Result<f64> {
    let h = entropy_function(&four_atom_distribution(FourAtomParams::new(p)?));
    Ok(ingleton_score(&h, &IngletonFrame::standard(h.ground())?)?)
}

/// `(p*, score)` of the four-atom family.
fn four_atom_minimum() -> Result<(f64, f64)> {
    Ok(minimize_scalar(
        |p| {
            four_atom_score(FourAtomParams::new(p).expect("inside [0, 1/2]"))
                .expect("positive entropy")
        },
        0.0,
        0.5,
        1e-10,
    )?)
}

fn fouratom(p: Option<f64>, minimize: bool) -> Result<ExitCode> {
    if minimize {
        let (p, v) = four_atom_minimum()?;
        println!("p_star: {}", num(p));
        println!("score: {}", num(v));
        println!("score_distribution: {}", num(four_atom_oracle(p)?));
        return Ok(ExitCode::SUCCESS);
    }
    let p = p.expect("clap enforces --p or --minimize");
    let params = FourAtomParams::new(p)?;
    let closed = four_atom_score(params)?;
    let oracle = four_atom_oracle(p)?;
    println!("p: {}", num(p));
    println!("score_closed_form: {}", num(closed));
    println!("score_distribution: {}", num(oracle));
    println!("difference: {}", num((closed - oracle).abs()));
    Ok(ExitCode::SUCCESS)
}

fn exl(args: &ExlArgs, frame: &IngletonFrame) -> Result<ExitCode> {
    let params = if args.default {
        ExLParams::published()
    } else {
        let v =
            [args.p, args.q, args.r, args.s, args.t].map(|x| x.expect("clap requires all five"));
        ExLParams::new(v[0], v[1], v[2], v[3], v[4])?
    };
    let f = exl_closed_form(params);
    let table = entropy_function(&exl_distribution(params));
    println!("params: {}", nums(&params.as_array()));
    println!("score_raw: {}", num(ingleton_score(&f, frame)?));
    println!(
        "score_tight: {}",
        num(ingleton_score(&tight_part(&f), frame)?)
    );
    let reduced = pipeline(&f, frame)?;
    let s = ingleton_score(&reduced, frame)?;
    println!("score_pipeline: {}", num(s));
    match cross_section_point(&f, frame, 1e-12) {
        Ok(cs) => println!("weights: {}", nums(&cs.point.weights())),
        Err(_) => println!("weights: degenerate"),
    }
    println!(
        "closed_form_max_deviation: {}",
        num(f.max_abs_diff(&table)?)
    );
    let (_, four_atom) = minimize_scalar(
        |p| {
            four_atom_score(FourAtomParams::new(p).expect("inside [0, 1/2]"))
                .expect("positive entropy")
        },
        0.0,
        0.5,
        1e-10,
    )?;
    println!("below_four_atom_minimum: {}", s < four_atom);
    Ok(ExitCode::SUCCESS)
}

fn distribution_value(d: &JointDistribution) -> Result<Value> {
    Ok(serde_json::from_str(&distribution_to_json(d)?)?)
}

fn minimize(config: &Path, frame: &IngletonFrame, out: Option<&Path>) -> Result<ExitCode> {
    let cfg =
        SearchConfig::read_json(config).with_context(|| format!("reading {}", config.display()))?;
    let r = optimize_distribution(&cfg, frame)?;
    println!("restarts: {}", cfg.restarts);
    println!("evaluations: {}", r.eval_count);
    println!("budget_exhausted: {}", r.budget_exhausted);
    println!("best_restart: {}", r.best_restart);
    println!("best_value: {}", num(r.best_value));
    match &r.best_point {
        Some(p) => println!("best_weights: {}", nums(&p.weights())),
        None => println!("best_weights: degenerate"),
    }
    if let Some(path) = out {
        let v = json!({
            "config": serde_json::from_str::<Value>(&cfg.to_json()?)?,
            "best_value": r.best_value,
            "best_restart": r.best_restart,
            "eval_count": r.eval_count,
            "budget_exhausted": r.budget_exhausted,
            "seed_trace": r.seed_trace,
            "restart_values": r.restart_values,
            "best_point": r.best_point,
            "best_distribution": distribution_value(&r.best_distribution)?,
        });
        write(path, &pretty(&v))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cloud(
    config: &Path,
    directions: usize,
    seed: u64,
    optima_only: bool,
    frame: &IngletonFrame,
    out: &Path,
) -> Result<ExitCode> {
    let cfg =
        SearchConfig::read_json(config).with_context(|| format!("reading {}", config.display()))?;
    let dirs = sphere_directions(directions, seed);
    let opts = CloudOptions {
        optima_only,
        ..Default::default()
    };
    let pts = generate_cloud(&dirs, &cfg, frame, opts)?;
    let mut buf = Vec::new();
    write_points_csv(&mut buf, &pts)?;
    fs::write(out, buf).with_context(|| format!("writing {}", out.display()))?;
    let best = pts
        .iter()
        .map(|p| p.alpha)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("directions: {directions}");
    println!("points: {}", pts.len());
    println!(
        "optima: {}",
        pts.iter().filter(|p| !p.source.is_empty()).count()
    );
    if !pts.is_empty() {
        println!("max_alpha: {}", num(best));
    }
    Ok(ExitCode::SUCCESS)
}

fn hull(points: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let file = fs::File::open(points).with_context(|| format!("reading {}", points.display()))?;
    let pts = entropy_toolkit::frame::read_points_csv(file)?;
    if pts.is_empty() {
        bail!("{} holds no points", points.display());
    }
    let ws: Vec<[f64; 4]> = pts.iter().map(CrossSectionPoint::weights).collect();
    let h = convex_hull_3d(&ws);
    println!("points: {}", pts.len());
    println!("dimension: {}", h.dimension);
    println!("vertices: {}", h.vertices.len());
    println!("facets: {}", h.facets.len());
    println!("volume: {}", num(h.volume()));
    if let Some(p) = out {
        write(p, &h.to_obj())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn outer(
    dfz_max_s: u32,
    files: &[std::path::PathBuf],
    frame: &IngletonFrame,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let mut bank: Vec<CrossSectionHalfspace> = if dfz_max_s > 0 {
        dfz_bank(dfz_max_s)?
    } else {
        Vec::new()
    };
    for f in files {
        for entry in
            load_bank(f, frame.ground()).with_context(|| format!("reading {}", f.display()))?
        {
            bank.push(entry.to_halfspace(frame)?);
        }
    }
    let region = outer_region(&bank);
    println!("halfspaces: {}", bank.len());
    println!("empty: {}", region.is_empty());
    println!("vertices: {}", region.vertices.len());
    for v in &region.vertices {
        println!("vertex: {} [{}]", nums(&v.weights), v.active.join(", "));
    }
    if let Some(a) = region.max_alpha_on_edge_ab() {
        println!("max_alpha_on_alpha_beta_edge: {}", num(a));
    }
    if let Some(p) = out {
        write(p, &pretty(&region.to_json_value()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn export(
    kind: ExportKind,
    out: &Path,
    points: usize,
    max_s: u32,
    frame: &IngletonFrame,
) -> Result<ExitCode> {
    let text = match kind {
        ExportKind::FourAtomCurve => {
            if points < 2 {
                bail!("--points must be at least 2");
            }
            let mut s = String::from("p,score\n");
            for k in 0..points {
                let p = 0.5 * k as f64 / (points - 1) as f64;
                s += &format!("{p},{}\n", four_atom_score(FourAtomParams::new(p)?)?);
            }
            s
        }
        ExportKind::Tetrahedron => {
            let pts: Vec<CrossSectionPoint> = ["alpha", "beta", "gamma", "delta"]
                .iter()
                .enumerate()
                .map(|(k, name)| {
                    let mut w = [0.0; 4];
                    w[k] = 1.0;
                    CrossSectionPoint::new(w, *name)
                })
                .collect();
            points_csv(&pts)?
        }
        ExportKind::Examples => {
            let (p, _) = four_atom_minimum()?;
            let e1 = entropy_function(&four_atom_distribution(FourAtomParams::new(p)?));
            let e2 = exl_closed_form(ExLParams::published());
            let pts = [(e1, "four-atom"), (e2, "exl")]
                .iter()
                .map(|(h, name)| {
                    Ok(CrossSectionPoint::new(
                        cross_section_point(h, frame, 1e-12)?.point.weights(),
                        *name,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            points_csv(&pts)?
        }
        ExportKind::Generators => {
            let gens: Vec<Value> = basis_generators(frame)
                .iter()
                .zip(GENERATOR_NAMES)
                .map(|(g, name)| Ok(json!({"name": name, "function": serde_json::from_str::<Value>(&g.to_json()?)?})))
                .collect::<Result<_>>()?;
            pretty(&Value::Array(gens))
        }
        ExportKind::DfzBank => {
            let bank: Vec<Value> = dfz_bank(max_s)?
                .iter()
                .map(CrossSectionHalfspace::to_json_value)
                .collect();
            pretty(&Value::Array(bank))
        }
    };
    write(out, &text)?;
    println!("wrote: {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn points_csv(pts: &[CrossSectionPoint]) -> Result<String> {
    let mut buf = Vec::new();
    write_points_csv(&mut buf, pts)?;
    Ok(String::from_utf8(buf)?)
}

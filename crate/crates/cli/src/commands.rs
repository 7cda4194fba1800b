use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use serde_json::{json, Value};
use zagreb_core::census_algebra::{solve_census_d3, solve_census_d4, FreeCensusVarsD3, FreeCensusVarsD4, SolvedCensus};
use zagreb_core::enumeration::enumerate_coded;
use zagreb_core::families::{members, predicted_census};
use zagreb_core::indices::{grm, m1, m2};
use zagreb_core::rational::{format_rational, int};
use zagreb_core::report::{render, to_json, Format};
use zagreb_core::transforms::normalize;
use zagreb_core::verify::{default_lambdas, run as run_verify, Theorem, VerifyConfig};
use zagreb_core::{build_tree, canonical_code, count_trees, EdgeList, EnumSpec, FamilySpec, Tree};

use crate::output::{emit, read_input, resolve_dir, resolve_file, write_atomic};
use crate::{
    CensusArgs, Command, Context, Emit, EnumerateArgs, FamilyArgs, FamilyKindArg, IndexArgs, NormalizeArgs, Outcome,
    ReportFormat, TextFormat, TheoremArg, TraceFormat, VerifyArgs,
};

pub fn run(command: Command, ctx: &Context) -> Result<Outcome> {
    match command {
        Command::Index(a) => index(a),
        Command::Family(a) => family(a),
        Command::Enumerate(a) => enumerate(a, ctx),
        Command::Census(a) => census(a),
        Command::Normalize(a) => normalize_cmd(a),
        Command::Verify(a) => verify(a, ctx),
    }
}

fn load_tree(path: &Path) -> Result<Tree> {
    let text = read_input(path)?;
    let edges = EdgeList::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    build_tree(&edges).with_context(|| format!("invalid tree in {}", path.display()))
}

fn index(a: IndexArgs) -> Result<Outcome> {
    let tree = load_tree(&a.tree)?;
    let mut rows = Vec::new();
    for l in &a.lambda {
        rows.push((format_rational(l), format_rational(&grm(&tree, l)?)));
    }
    let text = match a.format {
        TextFormat::Text if rows.len() == 1 => format!("{}\n", rows[0].1),
        TextFormat::Text => rows.iter().map(|(l, v)| format!("lambda={l}\t{v}\n")).collect(),
        TextFormat::Csv => {
            let mut s = String::from("lambda,grm\n");
            for (l, v) in &rows {
                let _ = writeln!(s, "{l},{v}");
            }
            s
        }
        TextFormat::Json => to_json(&json!({
            "order": tree.order(),
            "m1": format_rational(&m1(&tree)?),
            "m2": format_rational(&m2(&tree)?),
            "values": rows.iter().map(|(l, v)| json!({"lambda": l, "grm": v})).collect::<Vec<_>>(),
        }))?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Outcome::Done)
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec> {
    let need = |v: Option<usize>, flag: &str| match v {
        Some(x) => Ok(x),
        None => bail!("{flag} is required for --kind {:?}", a.kind),
    };
    let allowed: &[&str] = match a.kind {
        FamilyKindArg::Path | FamilyKindArg::Star => &["--n"],
        FamilyKindArg::Spider => &["--n", "--max-deg"],
        FamilyKindArg::Broom => &["--n", "--max-deg", "--second-deg"],
        _ => &["--k"],
    };
    for (flag, given) in
        [("--n", a.n.is_some()), ("--max-deg", a.max_deg.is_some()), ("--second-deg", a.second_deg.is_some()), ("--k", a.k.is_some())]
    {
        if given && !allowed.contains(&flag) {
            bail!("{flag} does not apply to --kind {:?}", a.kind);
        }
    }
    let opt = |variant| -> Result<FamilySpec> { Ok(FamilySpec::TOpt { variant, k: need(a.k, "--k")? }) };
    let opt4 = |variant| -> Result<FamilySpec> { Ok(FamilySpec::TTOpt { variant, k: need(a.k, "--k")? }) };
    let spec = match a.kind {
        FamilyKindArg::Path => FamilySpec::Path { n: need(a.n, "--n")? },
        FamilyKindArg::Star => FamilySpec::Star { n: need(a.n, "--n")? },
        FamilyKindArg::Spider => FamilySpec::Spider { n: need(a.n, "--n")?, max_degree: need(a.max_deg, "--max-deg")? },
        FamilyKindArg::Broom => FamilySpec::Broom {
            n: need(a.n, "--n")?,
            max_degree: need(a.max_deg, "--max-deg")?,
            second_degree: need(a.second_deg, "--second-deg")?,
        },
        FamilyKindArg::T1 => opt(1)?,
        FamilyKindArg::T2 => opt(2)?,
        FamilyKindArg::T3 => opt(3)?,
        FamilyKindArg::TT1 => opt4(1)?,
        FamilyKindArg::TT2 => opt4(2)?,
        FamilyKindArg::TT3 => opt4(3)?,
        FamilyKindArg::TT4 => opt4(4)?,
    };
    spec.validate()?;
    Ok(spec)
}

/// File-name friendly form of a family label: `TT1opt(2)` becomes `tt1opt-2`.
fn slug(spec: &FamilySpec) -> String {
    spec.to_string().to_lowercase().replace(['(', ','], "-").replace(')', "")
}

fn family(a: FamilyArgs) -> Result<Outcome> {
    let spec = family_spec(&a)?;
    let trees = members(&spec)?;
    let slug = slug(&spec);
    let dir = resolve_dir(a.out.clone());
    let file_name = |i: usize| format!("{slug}-{:02}.edges", i + 1);
    let sidecar = |with_files: bool| -> Result<String> {
        let members: Vec<Value> = trees
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut m = json!({"index": i + 1, "code": canonical_code(t), "census": t.census()});
                if with_files {
                    m["file"] = json!(file_name(i));
                }
                m
            })
            .collect();
        to_json(&json!({
            "family": spec.to_string(),
            "order": spec.order(),
            "members": members,
            "predicted_census": predicted_census(&spec)?,
        }))
        .map_err(Into::into)
    };
    match (dir, a.emit) {
        (Some(dir), Emit::Edgelist) => {
            for (i, t) in trees.iter().enumerate() {
                let path = dir.join(file_name(i));
                write_atomic(&path, &t.to_edge_list().to_string())?;
                println!("{}", path.display());
            }
            let path = dir.join(format!("{slug}.census.json"));
            write_atomic(&path, &sidecar(true)?)?;
            println!("{}", path.display());
        }
        (Some(dir), Emit::Code) => {
            let path = dir.join(format!("{slug}.codes"));
            write_atomic(&path, &code_lines(&trees))?;
            println!("{}", path.display());
        }
        (Some(dir), Emit::Census) => {
            let path = dir.join(format!("{slug}.census.json"));
            write_atomic(&path, &sidecar(false)?)?;
            println!("{}", path.display());
        }
        (None, Emit::Edgelist) => {
            let mut s = String::new();
            for (i, t) in trees.iter().enumerate() {
                let _ = writeln!(s, "# {spec} member {} {}", i + 1, canonical_code(t));
                let _ = writeln!(s, "{}", t.to_edge_list());
            }
            emit(None, &s)?;
        }
        (None, Emit::Code) => emit(None, &code_lines(&trees))?,
        (None, Emit::Census) => emit(None, &sidecar(false)?)?,
    }
    Ok(Outcome::Done)
}

fn code_lines(trees: &[Tree]) -> String {
    trees.iter().map(|t| format!("{}\n", canonical_code(t))).collect()
}

fn enumerate(a: EnumerateArgs, ctx: &Context) -> Result<Outcome> {
    let mut spec = EnumSpec::new(a.n).guard(ctx.guard).parallel(ctx.jobs != Some(1));
    let mut tag = format!("n{}", a.n);
    if let Some(d) = a.max_deg {
        spec = spec.max_degree(d);
        tag.push_str(&format!("-max{d}"));
    }
    if let Some(d) = a.exact_deg {
        spec = spec.exact_degree(d);
        tag.push_str(&format!("-exact{d}"));
    }
    if a.count {
        let count = count_trees(&spec)?;
        let path = resolve_file(a.out, &format!("count-{tag}.txt"));
        emit(path.as_deref(), &format!("{count}\n"))?;
        return Ok(Outcome::Done);
    }
    let trees = enumerate_coded(&spec)?;
    let ext = match (a.emit, a.format) {
        (Emit::Census, TextFormat::Json) => "json",
        (Emit::Census, TextFormat::Csv) => "csv",
        (Emit::Edgelist, _) => "edges",
        _ => "txt",
    };
    let explicit_dir = a.out.as_ref().is_some_and(|p| p.is_dir() || p.to_string_lossy().ends_with('/'));
    if a.emit == Emit::Edgelist && explicit_dir {
        let dir: PathBuf = a.out.expect("checked above");
        let width = trees.len().to_string().len().max(4);
        for (i, (_, t)) in trees.iter().enumerate() {
            write_atomic(&dir.join(format!("tree-{:0width$}.edges", i + 1)), &t.to_edge_list().to_string())?;
        }
        eprintln!("wrote {} trees to {}", trees.len(), dir.display());
        return Ok(Outcome::Done);
    }
    let mut s = String::new();
    match a.emit {
        Emit::Code => {
            for (code, _) in &trees {
                let _ = writeln!(s, "{code}");
            }
        }
        Emit::Edgelist => {
            for (i, (code, t)) in trees.iter().enumerate() {
                let _ = writeln!(s, "# tree {} {code}", i + 1);
                let _ = writeln!(s, "{}", t.to_edge_list());
            }
        }
        Emit::Census => match a.format {
            TextFormat::Text => {
                for (code, t) in &trees {
                    let _ = writeln!(s, "{code}\t{}", t.census());
                }
            }
            TextFormat::Csv => {
                s.push_str("code,census\n");
                for (code, t) in &trees {
                    let _ = writeln!(s, "{code},{}", t.census());
                }
            }
            TextFormat::Json => {
                let rows: Vec<Value> = trees.iter().map(|(c, t)| json!({"code": c, "census": t.census()})).collect();
                s = to_json(&rows)?;
            }
        },
    }
    let path = resolve_file(a.out, &format!("trees-{tag}.{ext}"));
    emit(path.as_deref(), &s)?;
    Ok(Outcome::Done)
}

fn census(a: CensusArgs) -> Result<Outcome> {
    let (max_degree, solved, free) = match &a.tree {
        Some(path) => {
            let tree = load_tree(path)?;
            let c = tree.census();
            let d = match a.max_deg {
                Some(d) => d,
                None if c.max_degree() <= 3 => 3,
                None => 4,
            };
            if d == 3 {
                let v = FreeCensusVarsD3::from_census(&c)?;
                (3, solve_census_d3(&v)?, serde_json::to_value(v)?)
            } else {
                let v = FreeCensusVarsD4::from_census(&c)?;
                (4, solve_census_d4(&v)?, serde_json::to_value(v)?)
            }
        }
        None => {
            let Some(d) = a.max_deg else { bail!("--max-deg is required unless --tree is given") };
            let n = a.n.expect("clap requires --n without --tree");
            let g = |x: Option<i64>| x.unwrap_or(0);
            if d == 3 {
                for (flag, v) in [("--m12", a.m12), ("--m13", a.m13), ("--m34", a.m34), ("--m44", a.m44)] {
                    if v.is_some() {
                        bail!("{flag} is not a free variable of the max degree 3 system");
                    }
                }
                let v = FreeCensusVarsD3 { n, n3: g(a.n3), m22: g(a.m22), m23: g(a.m23) };
                (3, solve_census_d3(&v)?, serde_json::to_value(v)?)
            } else {
                let v = FreeCensusVarsD4 {
                    n,
                    n3: g(a.n3),
                    m12: g(a.m12),
                    m13: g(a.m13),
                    m22: g(a.m22),
                    m23: g(a.m23),
                    m34: g(a.m34),
                    m44: g(a.m44),
                };
                (4, solve_census_d4(&v)?, serde_json::to_value(v)?)
            }
        }
    };
    let text = census_text(max_degree, &solved, &free, a.format)?;
    emit(a.out.as_deref(), &text)?;
    Ok(Outcome::Done)
}

fn census_text(max_degree: u8, solved: &SolvedCensus, free: &Value, format: TextFormat) -> Result<String> {
    let grm2 = format_rational(&solved.grm_minus_two());
    let full = solved.census();
    Ok(match format {
        TextFormat::Json => to_json(&json!({
            "max_degree": max_degree,
            "free": free,
            "solved": solved,
            "census": full,
            "grm_minus_two": grm2,
        }))?,
        TextFormat::Csv => {
            let mut s = String::from("variable,value\n");
            for (v, x) in &solved.values {
                let _ = writeln!(s, "{v},{}", format_rational(x));
            }
            let _ = writeln!(s, "realizable,{}", solved.realizable);
            let _ = writeln!(s, "grm_minus_two,{grm2}");
            s
        }
        TextFormat::Text => {
            let mut s = format!("system: max degree {max_degree}\n");
            for (v, x) in &solved.values {
                let _ = writeln!(s, "{v:>4} = {}", format_rational(x));
            }
            // Nonnegative integral solution; a necessary condition for a tree, not a sufficient one.
            let _ = writeln!(s, "realizable: {} (nonnegative integral solution)", if solved.realizable { "yes" } else { "no" });
            if let Some(c) = full {
                let _ = writeln!(s, "census: {c}");
            }
            let _ = writeln!(s, "GRM_-2 = {grm2}");
            s
        }
    })
}

fn normalize_cmd(a: NormalizeArgs) -> Result<Outcome> {
    let tree = load_tree(&a.tree)?;
    let norm = normalize(&tree)?;
    let lambda = int(-2);
    let mut current = tree.clone();
    let mut s = String::new();
    if a.format == TraceFormat::Text {
        let _ = writeln!(s, "start: n={} GRM_-2={}", tree.order(), format_rational(&grm(&tree, &lambda)?));
    }
    for (i, step) in norm.trace.iter().enumerate() {
        let before = grm(&current, &lambda)?;
        let after = grm(&step.result, &lambda)?;
        match a.format {
            TraceFormat::Jsonl => {
                let line = json!({
                    "step": i + 1,
                    "transform": step.kind.number(),
                    "kind": step.kind,
                    "site": step.site,
                    "removed": step.removed,
                    "claimed_delta": format_rational(&step.claimed_delta),
                    "observed_delta": format_rational(&(&before - &after)),
                    "order": step.result.order(),
                    "grm_minus_two": format_rational(&after),
                });
                let _ = writeln!(s, "{line}");
            }
            TraceFormat::Text => {
                let _ = writeln!(
                    s,
                    "{:>3}. T{} at {:?}: n={} GRM_-2={} (delta {})",
                    i + 1,
                    step.kind.number(),
                    step.site,
                    step.result.order(),
                    format_rational(&after),
                    format_rational(&step.claimed_delta),
                );
            }
        }
        current = step.result.clone();
    }
    let end = json!({
        "final": true,
        "order": norm.result.order(),
        "code": canonical_code(&norm.result),
        "grm_minus_two": format_rational(&grm(&norm.result, &lambda)?),
        "total_claimed_delta": format_rational(&norm.total_delta),
    });
    match a.format {
        TraceFormat::Jsonl => {
            let _ = writeln!(s, "{end}");
        }
        TraceFormat::Text => {
            let _ = writeln!(
                s,
                "end: n={} GRM_-2={} total delta {}",
                norm.result.order(),
                end["grm_minus_two"].as_str().unwrap_or_default(),
                format_rational(&norm.total_delta)
            );
        }
    }
    if let Some(path) = &a.result {
        write_atomic(path, &norm.result.to_edge_list().to_string())?;
    }
    emit(a.out.as_deref(), &s)?;
    Ok(Outcome::Done)
}

fn verify(a: VerifyArgs, ctx: &Context) -> Result<Outcome> {
    let mut theorems: Vec<Theorem> = if a.theorem.contains(&TheoremArg::All) {
        Theorem::ALL.to_vec()
    } else {
        a.theorem
            .iter()
            .map(|t| match t {
                TheoremArg::Spider => Theorem::Spider,
                TheoremArg::DegreeThree => Theorem::DegreeThree,
                TheoremArg::DegreeThreeCensus => Theorem::DegreeThreeCensus,
                TheoremArg::DegreeFour | TheoremArg::All => Theorem::DegreeFour,
            })
            .collect()
    };
    theorems.sort();
    theorems.dedup();
    let config = VerifyConfig {
        theorems,
        n_min: a.n_min,
        n_max: a.n_max,
        lambdas: if a.lambda.is_empty() { default_lambdas() } else { a.lambda },
        at_most: a.at_most,
        guard: ctx.guard,
        jobs: ctx.jobs,
        timings: a.timings,
    };
    let report = run_verify(&config)?;
    let (format, ext) = match a.format {
        ReportFormat::Json => (Format::Json, "json"),
        ReportFormat::Csv => (Format::Csv, "csv"),
        ReportFormat::Md => (Format::Md, "md"),
    };
    let path = resolve_file(a.out, &format!("verify.{ext}"));
    emit(path.as_deref(), &render(&report, format)?)?;
    let failed = report.failures().count();
    eprintln!("{} of {} cells pass", report.cells.len() - failed, report.cells.len());
    for c in report.failures() {
        eprintln!("  FAIL theorem {} n={} max degree {} lambda={}", c.theorem.id(), c.n, c.max_degree, format_rational(&c.lambda));
    }
    Ok(if report.passed { Outcome::Done } else { Outcome::VerificationFailed })
}

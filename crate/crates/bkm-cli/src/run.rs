//! Subcommand implementations.

use crate::report::{self, Meta};
use crate::{CharKind, Cli, Command, CommonOpts, Format};
use anyhow::{anyhow, bail, Context, Result};
use bkm_core::cartan::{BkmCartanMatrix, MatrixJson, RootSum, Weight, WeightJson};
use bkm_core::characters::{self, FormalCharacter};
use bkm_core::lie_engine::{Engine, KillSpec, ModuleModel};
use bkm_core::solver;
use bkm_core::weights::{self, HoleSet, HoleSetJson};
use serde_json::{json, Value};
use std::process::ExitCode;

/// Reads a `--flag` value that is either inline JSON or a file path.
fn read_source(s: &str) -> Result<String> {
    if s.trim_start().starts_with(['{', '[']) {
        Ok(s.to_string())
    } else {
        std::fs::read_to_string(s).with_context(|| format!("reading {s}"))
    }
}

fn parse_matrix(opts: &CommonOpts) -> Result<BkmCartanMatrix> {
    let src = opts.matrix.as_deref().ok_or_else(|| anyhow!("--matrix is required"))?;
    let j: MatrixJson = serde_json::from_str(&read_source(src)?)?;
    Ok(BkmCartanMatrix::from_json(&j)?)
}

fn parse_lambda(opts: &CommonOpts, n: usize) -> Result<Weight> {
    let src = opts.lambda.as_deref().ok_or_else(|| anyhow!("--lambda is required"))?;
    let j: WeightJson = serde_json::from_str(&read_source(src)?)?;
    let w = Weight::from_json(&j)?;
    if w.pairings.len() != n {
        bail!("--lambda has {} pairings, the matrix has {} nodes", w.pairings.len(), n);
    }
    Ok(w)
}

fn parse_holes(opts: &CommonOpts, n: usize) -> Result<Option<HoleSet>> {
    let Some(src) = opts.holes.as_deref() else {
        return Ok(None);
    };
    let j: HoleSetJson = serde_json::from_str(&read_source(src)?)?;
    let hs = HoleSet::from_json(&j)?;
    for h in &hs.holes {
        if h.support().iter().any(|&i| i >= n) {
            bail!("hole support node out of range for a rank-{n} matrix");
        }
    }
    Ok(Some(hs))
}

fn parse_grade(s: &str, n: usize) -> Result<RootSum> {
    let coeffs: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| anyhow!("bad grade entry {t:?}: {e}")))
        .collect::<Result<_>>()?;
    if coeffs.len() != n {
        bail!("grade has {} entries, the matrix has {} nodes", coeffs.len(), n);
    }
    Ok(RootSum { coeffs })
}

fn char_to_value(ch: &FormalCharacter) -> Value {
    serde_json::to_value(ch.to_json()).expect("character serializes")
}

fn weight_set_to_value(set: &std::collections::BTreeSet<RootSum>) -> Value {
    Value::Array(
        set.iter()
            .map(|b| Value::Array(b.coeffs.iter().map(|&c| Value::from(c)).collect()))
            .collect(),
    )
}

pub fn dispatch(cli: Cli) -> Result<ExitCode> {
    if let Command::Verify { suite } = &cli.command {
        return crate::verify::run_suite(suite);
    }
    let (format, cache_key) = (format_of(&cli.command), cache_key_of(&cli.command));
    if let Some(text) = cache_lookup(&cache_key)? {
        print!("{text}");
        return Ok(ExitCode::SUCCESS);
    }
    let (meta, result) = compute(&cli.command)?;
    let text = report::emit(&meta, &result, format);
    cache_store(&cache_key, &text)?;
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Classify { opts }
        | Command::Weights { opts }
        | Command::Char { opts, .. }
        | Command::Maxvec { opts, .. }
        | Command::Solve { opts, .. }
        | Command::Kk { opts, .. } => opts.format,
        Command::Dn { format, .. } | Command::Unique { format, .. } => *format,
        Command::Verify { .. } => Format::Json,
    }
}

/// Canonical description of the invocation, used as the cache key.
fn cache_key_of(cmd: &Command) -> String {
    fn opts_key(o: &CommonOpts) -> String {
        format!(
            "m={:?};l={:?};h={:?};cutoff={};cap={:?};fmt={};of={}",
            o.matrix,
            o.lambda,
            o.holes,
            o.cutoff,
            o.cap,
            matches!(o.format, Format::Table) as u8,
            o.oracle_fallback
        )
    }
    match cmd {
        Command::Classify { opts } => format!("classify;{}", opts_key(opts)),
        Command::Weights { opts } => format!("weights;{}", opts_key(opts)),
        Command::Char { opts, kind } => {
            let k = match kind {
                CharKind::Verma => "verma",
                CharKind::Simple => "simple",
                CharKind::Quotient => "quotient",
                CharKind::Denominator => "denominator",
            };
            format!("char;{k};{}", opts_key(opts))
        }
        Command::Maxvec { opts, grade } => format!("maxvec;{grade};{}", opts_key(opts)),
        Command::Solve { opts, bbox } => format!("solve;{bbox:?};{}", opts_key(opts)),
        Command::Kk { opts, grade } => format!("kk;{grade};{}", opts_key(opts)),
        Command::Dn { n, include_zero, format } => {
            format!("dn;{n};{include_zero};{}", matches!(format, Format::Table) as u8)
        }
        Command::Unique { m1, m2, format } => {
            format!("unique;{m1};{m2};{}", matches!(format, Format::Table) as u8)
        }
        Command::Verify { suite } => format!("verify;{suite}"),
    }
}

fn cache_path(key: &str) -> Option<std::path::PathBuf> {
    let dir = std::env::var_os("BKM_CACHE_DIR")?;
    Some(std::path::Path::new(&dir).join(format!("{:016x}.out", report::fnv1a(key.as_bytes()))))
}

fn cache_lookup(key: &str) -> Result<Option<String>> {
    match cache_path(key) {
        Some(p) if p.is_file() => Ok(Some(std::fs::read_to_string(p)?)),
        _ => Ok(None),
    }
}

fn cache_store(key: &str, text: &str) -> Result<()> {
    if let Some(p) = cache_path(key) {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn init_threads(opts: &CommonOpts) {
    if opts.threads > 0 {
        // ignore "already initialized" when tests share a process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build_global();
    }
}

fn engine(m: &BkmCartanMatrix, opts: &CommonOpts) -> Engine {
    Engine::with_budget_mb(m.clone(), opts.budget_mb)
}

fn compute(cmd: &Command) -> Result<(Meta, Value)> {
    match cmd {
        Command::Classify { opts } => {
            let m = parse_matrix(opts)?;
            let mut out = json!({
                "types": m.node_types().iter().map(|t| format!("{t:?}")).collect::<Vec<_>>(),
                "symmetrizer": m.symmetrizer().ok().map(|d| {
                    d.iter().map(bkm_core::rat::format_rat).collect::<Vec<_>>()
                }),
            });
            if opts.lambda.is_some() {
                let lam = parse_lambda(opts, m.size())?;
                let cone = m.cone_membership(&lam);
                out["cone"] = json!({
                    "in_p_plus": cone.in_p_plus,
                    "in_p_pm": cone.in_p_pm,
                    "j_lambda": cone.j_lambda.iter().collect::<Vec<_>>(),
                    "powers": cone
                        .powers
                        .iter()
                        .map(|(i, p)| (i.to_string(), p.to_string()))
                        .collect::<std::collections::BTreeMap<_, _>>(),
                });
            }
            Ok((Meta::new(Some(&m), None), out))
        }
        Command::Weights { opts } => {
            init_threads(opts);
            let m = parse_matrix(opts)?;
            let lam = parse_lambda(opts, m.size())?;
            let cap = opts.cap.unwrap_or(opts.cutoff);
            let hs = match parse_holes(opts, m.size())? {
                Some(mut hs) => {
                    hs.heisenberg_power_cap = hs.heisenberg_power_cap.max(cap);
                    weights::validate_hole_set(&m, &lam, &hs)?;
                    hs
                }
                None => HoleSet::empty(cap),
            };
            let (method, set) = if weights::is_nice(&m, &hs) {
                ("thmA", weights::thm_a_enumerate(&m, &lam, &hs, opts.cutoff)?)
            } else {
                ("thmB", weights::thm_b_weights(&m, &lam, &hs, opts.cutoff)?)
            };
            let out = json!({ "method": method, "weights": weight_set_to_value(&set) });
            Ok((Meta::new(Some(&m), Some(opts.cutoff)), out))
        }
        Command::Char { opts, kind } => {
            init_threads(opts);
            let m = parse_matrix(opts)?;
            let mut eng = engine(&m, opts);
            let ch = match kind {
                CharKind::Verma => {
                    let lam = parse_lambda(opts, m.size())?;
                    characters::char_verma(&mut eng, &lam, opts.cutoff)?
                }
                CharKind::Denominator => characters::denominator(&mut eng, opts.cutoff)?,
                CharKind::Quotient => {
                    let lam = parse_lambda(opts, m.size())?;
                    let hs = parse_holes(opts, m.size())?
                        .ok_or_else(|| anyhow!("--holes is required for a quotient character"))?;
                    weights::validate_hole_set(&m, &lam, &hs)?;
                    let mut model =
                        ModuleModel::new(lam, KillSpec::Holes(weights::minimal_holes(&hs).holes));
                    characters::char_module(&mut eng, &mut model, opts.cutoff)?
                }
                CharKind::Simple => {
                    let lam = parse_lambda(opts, m.size())?;
                    simple_char(&mut eng, &lam, opts)?
                }
            };
            Ok((Meta::new(Some(&m), Some(opts.cutoff)), char_to_value(&ch)))
        }
        Command::Maxvec { opts, grade } => {
            let m = parse_matrix(opts)?;
            let lam = parse_lambda(opts, m.size())?;
            let beta = parse_grade(grade, m.size())?;
            let mut eng = engine(&m, opts);
            let mut model = ModuleModel::new(lam, KillSpec::Verma);
            let dim = model.maximal_vector_space_dim(&mut eng, &beta)?;
            Ok((Meta::new(Some(&m), None), json!({ "dim": dim })))
        }
        Command::Solve { opts, bbox } => {
            let m = parse_matrix(opts)?;
            let lam = parse_lambda(opts, m.size())?;
            let inst = solver::QuadraticInstance::from_matrix(&m, &lam)?;
            let bbox = bbox
                .as_deref()
                .map(|s| -> Result<(u32, u32)> {
                    let g = parse_grade(s, 2)?;
                    Ok((g.coeffs[0], g.coeffs[1]))
                })
                .transpose()?;
            let sols = solver::enumerate_solutions(&inst, bbox)?;
            let out = json!({
                "variant": format!("{:?}", inst.variant),
                "solutions": sols.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>(),
            });
            Ok((Meta::new(Some(&m), None), out))
        }
        Command::Dn { n, include_zero, .. } => {
            let sols = solver::enumerate_dn(*n, *include_zero);
            let out = json!({
                "n": n,
                "count": sols.len(),
                "solutions": sols,
            });
            Ok((Meta::new(None, None), out))
        }
        Command::Kk { opts, grade } => {
            let m = parse_matrix(opts)?;
            let lam = parse_lambda(opts, m.size())?;
            let beta = parse_grade(grade, m.size())?;
            let mut eng = engine(&m, opts);
            let chain = solver::kk_linked(&mut eng, &lam, &beta)?;
            let out = json!({
                "linked": chain.is_some(),
                "chain": chain.map(|c| {
                    c.iter()
                        .map(|s| json!({ "beta": s.beta.coeffs, "n": s.n }))
                        .collect::<Vec<_>>()
                }),
            });
            Ok((Meta::new(Some(&m), None), out))
        }
        Command::Unique { m1, m2, .. } => {
            let predicate = solver::unique_solution_predicate(*m1, *m2);
            let bruteforce = solver::unique_solution_bruteforce(*m1, *m2);
            let out = json!({
                "m1": m1, "m2": m2,
                "predicate": predicate,
                "bruteforce": bruteforce,
                "agree": predicate == bruteforce,
            });
            Ok((Meta::new(None, None), out))
        }
        Command::Verify { .. } => unreachable!("handled in dispatch"),
    }
}

/// Simple-module character: tries the closed forms in order of specificity,
/// optionally falling back to the exact engine model.
fn simple_char(eng: &mut Engine, lam: &Weight, opts: &CommonOpts) -> Result<FormalCharacter> {
    let m = eng.matrix().clone();
    let closed: bkm_core::Result<FormalCharacter> = (|| {
        if m.cone_membership(lam).in_p_plus {
            return characters::char_wkb(eng, lam, opts.cutoff);
        }
        characters::char_simple_rank2(eng, lam, opts.cutoff)
    })();
    match closed {
        Ok(ch) => Ok(ch),
        Err(e) if opts.oracle_fallback => {
            let mut model = ModuleModel::new(lam.clone(), KillSpec::Simple);
            eprintln!("# no closed form ({e}); using the exact engine");
            Ok(characters::char_module(eng, &mut model, opts.cutoff)?)
        }
        Err(e) => Err(e.into()),
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sigred::towerfile::GeneratorEntry;
use sigred::workload::{run_bench, BenchProfile};
use sigred::{
    depth_reduce, parameterized_telescope, parse_expression, print_elem, sigma_check, telescope, verify_sigma_pair,
    well_generate, Elem, Error, ReductionContext, ReductionOptions, Result, SequenceAssignment, SigmaPair, TowerFile,
    TowerSpec, VerificationReport,
};

use crate::args::{BenchArgs, Command, IndexRange, MultiArgs, SigmaCheckArgs, SingleArgs, TowerArgs, VerifyArgs};
use crate::document::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub const MAX_INT_BITS_ENV: &str = "SIGRED_MAX_INT_BITS";

/// Runs one command, filling `doc` and returning the human-readable report.
pub fn run(command: &Command, doc: &mut ResultDocument) -> Result<String> {
    match command {
        Command::Reduce(a) => reduce(a, doc, false),
        Command::Telescope(a) => reduce(a, doc, true),
        Command::ParamTelescope(a) => param_telescope(a, doc),
        Command::SigmaCheck(a) => sigma_check_cmd(a, doc),
        Command::WellGenerate(a) => well_generate_cmd(a, doc),
        Command::DepthReduce(a) => depth_reduce_cmd(a, doc),
        Command::Verify(a) => verify(a, doc),
        Command::Bench(a) => bench(a, doc),
    }
}

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Reduce(_) => "reduce",
        Command::Telescope(_) => "telescope",
        Command::ParamTelescope(_) => "param-telescope",
        Command::SigmaCheck(_) => "sigma-check",
        Command::WellGenerate(_) => "well-generate",
        Command::DepthReduce(_) => "depth-reduce",
        Command::Verify(_) => "verify",
        Command::Bench(_) => "bench",
    }
}

pub fn json_requested(command: &Command) -> bool {
    match command {
        Command::Reduce(a) | Command::Telescope(a) | Command::DepthReduce(a) => a.tower.json,
        Command::ParamTelescope(a) => a.tower.json,
        Command::SigmaCheck(a) => a.tower.json,
        Command::WellGenerate(a) => a.json,
        Command::Verify(a) => a.tower.json,
        Command::Bench(a) => a.json,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "division_by_zero",
        Error::UnsupportedFactorization { .. } => "unsupported_factorization",
        Error::InconsistentFactorization => "inconsistent_factorization",
        Error::NotSigmaMonomial { .. } => "not_sigma_monomial",
        Error::Syntax { .. } => "syntax",
        Error::UnknownSymbol(_) => "unknown_symbol",
        Error::InvalidTower(_) => "invalid_tower",
        Error::InvalidInput(_) => "invalid_input",
        Error::SizeLimit { .. } => "size_limit",
    }
}

fn max_int_bits() -> Result<Option<u64>> {
    match std::env::var(MAX_INT_BITS_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("{MAX_INT_BITS_ENV} must be a positive integer, not `{s}`"))),
        Err(_) => Ok(None),
    }
}

fn options(
    base: ReductionOptions,
    se_window: Option<usize>,
    fast_path: Option<sigred::FastPathMode>,
) -> Result<ReductionOptions> {
    let mut opts = base;
    if let Some(w) = se_window {
        opts.se_window = w;
    }
    if let Some(m) = fast_path {
        opts.fast_path = m;
    }
    opts.max_int_bits = max_int_bits()?;
    Ok(opts)
}

fn load(args: &TowerArgs) -> Result<ReductionContext> {
    let file = TowerFile::load(&args.tower)?;
    let mut ctx = file.context_with(options(file.options(), args.se_window, args.fast_path)?)?;
    for entry in &args.seed_reps {
        let (name, src) = entry
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("--seed-reps expects NAME=POLY, got `{entry}`")))?;
        let level = ctx
            .tower()
            .lookup(name.trim())
            .map(|v| ctx.tower().level_of_var(v))
            .filter(|&l| l > 0)
            .ok_or_else(|| Error::UnknownSymbol(name.trim().to_string()))?;
        let p = sigred::syntax::parse_poly(src, ctx.tower(), level)?;
        ctx.seed_representative(level, &p.monic())?;
    }
    Ok(ctx)
}

fn parse(ctx: &ReductionContext, src: &str) -> Result<Elem> {
    parse_expression(src, ctx.tower())
}

fn show(ctx: &ReductionContext, e: &Elem) -> String {
    print_elem(ctx.tower(), e)
}

fn pair_out(ctx: &ReductionContext, input: &str, pair: &SigmaPair) -> PairOut {
    PairOut { input: input.to_string(), g: show(ctx, &pair.g), r: show(ctx, &pair.r), summable: pair.r.is_zero() }
}

fn assignment(tower: &TowerSpec, start: i64, params: &[String]) -> Result<SequenceAssignment> {
    let ground = TowerSpec::new(Vec::new())?;
    let mut values = BTreeMap::new();
    for entry in params {
        let (name, src) = entry
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("--param expects NAME=VALUE, got `{entry}`")))?;
        let value = parse_expression(src, &ground)?;
        let value =
            value.as_rat().ok_or_else(|| Error::InvalidInput(format!("value of `{name}` is not a rational number")))?;
        values.insert(name.trim().to_string(), value.clone());
    }
    SequenceAssignment::new(tower, start, values)
}

fn verification_out(report: &VerificationReport, range: IndexRange, start: i64) -> VerificationOut {
    VerificationOut {
        from: range.from,
        to: range.to,
        start,
        checked: report.checked.len(),
        poles: report.poles.clone(),
        failures: report.failures.iter().map(|(k, r)| FailureOut { k: *k, residual: r.to_string() }).collect(),
        passed: report.passed(),
    }
}

fn describe_verification(v: &VerificationOut) -> String {
    let mut s = format!(
        "verification on {}..{}: {} checked, {} poles, {} failures",
        v.from,
        v.to,
        v.checked,
        v.poles.len(),
        v.failures.len()
    );
    for f in &v.failures {
        let _ = write!(s, "\n  k = {}: residual {}", f.k, f.residual);
    }
    s
}

fn reduce(a: &SingleArgs, doc: &mut ResultDocument, telescoping: bool) -> Result<String> {
    let mut ctx = load(&a.tower)?;
    let f = parse(&ctx, &a.expr)?;
    let pair = if telescoping { telescope(&mut ctx, &f)?.pair } else { ctx.reduce(&f)? };
    let out = pair_out(&ctx, &a.expr, &pair);
    let mut text = format!("g = {}\nr = {}\nsummable: {}", out.g, out.r, out.summable);
    if !out.summable && a.require_summable {
        doc.status = "not_summable";
        doc.exit_code = EXIT_NEGATIVE;
    }
    doc.pair = Some(out);
    if let Some(range) = a.verify_range {
        let assign = assignment(ctx.tower(), a.start, &a.param)?;
        let report = verify_sigma_pair(ctx.tower(), &f, &pair, &assign, range.from, range.to)?;
        let v = verification_out(&report, range, a.start);
        text.push('\n');
        text.push_str(&describe_verification(&v));
        if !v.passed {
            doc.status = "verification_failed";
            doc.exit_code = EXIT_NEGATIVE;
        }
        doc.verification = Some(v);
    }
    Ok(text)
}

fn param_telescope(a: &MultiArgs, doc: &mut ResultDocument) -> Result<String> {
    let mut ctx = load(&a.tower)?;
    let fs = a.expr.iter().map(|s| parse(&ctx, s)).collect::<Result<Vec<_>>>()?;
    let basis = parameterized_telescope(&mut ctx, &fs)?;
    let rows: Vec<RowOut> = basis
        .rows
        .iter()
        .map(|row| RowOut {
            coeffs: row.coeffs.iter().map(|c| show(&ctx, c)).collect(),
            certificate: show(&ctx, &row.certificate),
        })
        .collect();
    let mut text = format!("{} basis rows (c_1, ..., c_{}; g):", rows.len(), fs.len());
    for row in &rows {
        let _ = write!(text, "\n  ({}; {})", row.coeffs.join(", "), row.certificate);
    }
    if basis.relations().is_empty() && a.require_summable {
        doc.status = "not_summable";
        doc.exit_code = EXIT_NEGATIVE;
    }
    doc.basis = Some(rows);
    Ok(text)
}

fn sigma_check_cmd(a: &SigmaCheckArgs, doc: &mut ResultDocument) -> Result<String> {
    let mut ctx = load(&a.tower)?;
    let f = parse(&ctx, &a.expr)?;
    let level = a.level.unwrap_or(ctx.height());
    let check = sigma_check(&mut ctx, &f, level)?;
    let out = SigmaCheckOut {
        level,
        is_sigma_monomial: check.is_sigma_monomial,
        g: show(&ctx, &check.witness.g),
        r: show(&ctx, &check.witness.r),
    };
    let text =
        format!("sigma-monomial over level {}: {}\ng = {}\nr = {}", out.level, out.is_sigma_monomial, out.g, out.r);
    doc.sigma_check = Some(out);
    Ok(text)
}

fn tower_out(ctx: &ReductionContext, wg: &sigred::WellGenerated) -> TowerOut {
    let source = &wg.map.source;
    let target = wg.context.tower();
    let mut generators = Vec::new();
    let mut entries = Vec::new();
    for level in 1..=target.height() {
        let delta = print_elem(target, target.generator_delta(level));
        let reps = wg.context.representatives(level).members();
        entries.push(GeneratorEntry {
            name: target.generator_name(level).to_string(),
            delta: delta.clone(),
            seed_reps: reps.iter().map(|p| print_elem(target, &Elem::from_poly(p.clone()))).collect(),
        });
        generators.push(GeneratorOut {
            source: source.generator_name(level).to_string(),
            name: target.generator_name(level).to_string(),
            delta,
            image: print_elem(target, &wg.map.images[level - 1]),
        });
    }
    let file = TowerFile {
        constants: target.params().to_vec(),
        generators: entries,
        options: sigred::towerfile::OptionsEntry {
            se_window: ctx.options().se_window,
            ring_fast_path: ctx.options().fast_path,
        },
    };
    TowerOut { constants: target.params().to_vec(), generators, file: file.to_toml() }
}

fn well_generate_cmd(a: &TowerArgs, doc: &mut ResultDocument) -> Result<String> {
    let mut ctx = load(a)?;
    let wg = well_generate(&mut ctx)?;
    let out = tower_out(&ctx, &wg);
    let mut text = String::new();
    for g in &out.generators {
        let _ = writeln!(text, "# {} -> {}", g.source, g.image);
    }
    text.push_str(out.file.trim_end());
    doc.tower = Some(out);
    Ok(text)
}

fn depth_reduce_cmd(a: &SingleArgs, doc: &mut ResultDocument) -> Result<String> {
    let mut ctx = load(&a.tower)?;
    let f = parse(&ctx, &a.expr)?;
    let mut wg = well_generate(&mut ctx)?;
    let d = depth_reduce(&mut ctx, &mut wg, &f)?;
    let target = wg.context.tower();
    let out = DepthOut {
        image: print_elem(target, &d.image),
        g: print_elem(target, &d.pair.g),
        r: print_elem(target, &d.pair.r),
        depth_before: d.depth_before,
        depth_after: d.depth_after,
    };
    doc.pair = Some(pair_out(&ctx, &a.expr, &d.original));
    doc.tower = Some(tower_out(&ctx, &wg));
    let text = format!(
        "tau(f) = {}\ng = {}\nr = {}\ndepth: {} -> {}",
        out.image, out.g, out.r, out.depth_before, out.depth_after
    );
    if !d.pair.r.is_zero() && a.require_summable {
        doc.status = "not_summable";
        doc.exit_code = EXIT_NEGATIVE;
    }
    doc.depth = Some(out);
    Ok(text)
}

fn verify(a: &VerifyArgs, doc: &mut ResultDocument) -> Result<String> {
    let mut ctx = load(&a.tower)?;
    let f = parse(&ctx, &a.expr)?;
    let pair = ctx.reduce(&f)?;
    let out = pair_out(&ctx, &a.expr, &pair);
    let assign = assignment(ctx.tower(), a.start, &a.param)?;
    let report = verify_sigma_pair(ctx.tower(), &f, &pair, &assign, a.verify_range.from, a.verify_range.to)?;
    let v = verification_out(&report, a.verify_range, a.start);
    let text = format!("g = {}\nr = {}\n{}", out.g, out.r, describe_verification(&v));
    if !v.passed {
        doc.status = "verification_failed";
        doc.exit_code = EXIT_NEGATIVE;
    }
    doc.pair = Some(out);
    doc.verification = Some(v);
    Ok(text)
}

fn bench(a: &BenchArgs, doc: &mut ResultDocument) -> Result<String> {
    let opts = options(ReductionOptions::default(), a.se_window, a.fast_path)?;
    let profile = BenchProfile { degrees: a.degrees.clone(), trials: a.trials.max(1), seed: a.seed };
    let rows = run_bench(&profile, &opts)?;
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    let out: Vec<BenchRowOut> = rows
        .iter()
        .map(|r| BenchRowOut {
            degree: r.degree,
            trials: r.times.len(),
            mean_ms: ms(r.mean()),
            median_ms: ms(r.median()),
            all_summable: r.all_summable,
        })
        .collect();
    let mut text = String::from("degree  trials     mean ms   median ms  summable");
    for r in &out {
        let _ = write!(
            text,
            "\n{:>6}  {:>6}  {:>10.3}  {:>10.3}  {}",
            r.degree, r.trials, r.mean_ms, r.median_ms, r.all_summable
        );
    }
    doc.bench = Some(out);
    Ok(text)
}

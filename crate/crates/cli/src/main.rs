mod args;
mod build;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use polarwd::identities::{run_selftest, SelftestOptions};
use polarwd::{
    baseline_expansion_size, brute_force_wd, candidate, compute_wd_with, expanded_information_set,
    optimize_pretransform, tables, EngineConfig, OracleLimits,
};

use args::{BenchTable, Cli, Command, ExpandArgs, OracleArgs, SelftestArgs, WdArgs};
use build::{build_code, load_sequence, Failure};
use render::{emit, expansion_table, reduction_table, spectrum, ExpandLine};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Wd(a) => wd(a),
        Command::Expand(a) => expand(a),
        Command::Oracle(a) => oracle(a),
        Command::Selftest(a) => selftest(a),
        Command::Bench { table } => bench(table),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn wd(a: WdArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let mut code = build_code(&a.code)?;
    let baseline = baseline_expansion_size(&code);
    let mut notes = Vec::new();
    if a.optimize {
        let report = optimize_pretransform(&code);
        notes.push(format!("lambda_original={}", report.original_lambda()));
        notes.push(format!("j_star={}", report.selected));
        code = candidate(&code, report.selected)?;
        eprintln!("{} lambda={}", notes.join(" "), report.best().lambda);
    }
    let config = EngineConfig {
        use_cache: !a.no_cache,
        lambda_limit: a.lambda_limit,
        workers: a.workers,
        ..EngineConfig::default()
    };
    let (dist, stats) = compute_wd_with(&code, &config)?;
    eprintln!(
        "lambda={} baseline={} {}cosets={} cache_hits={} cache_misses={} hit_rate={:.4} elapsed={:.3}s",
        stats.lambda,
        baseline,
        notes.iter().map(|s| format!("{s} ")).collect::<String>(),
        stats.cosets,
        stats.cache_hits,
        stats.cache_misses,
        stats.hit_rate(),
        start.elapsed().as_secs_f64()
    );
    emit(&a.out, &spectrum(a.out.format, &code, stats.lambda, &dist))
}

fn expand(a: ExpandArgs) -> Result<(), Failure> {
    let code = build_code(&a.code)?;
    let exp = expanded_information_set(&code);
    let mut line = ExpandLine {
        k: code.k(),
        n1: baseline_expansion_size(&code),
        n2: exp.lambda(),
        optimized: None,
    };
    if a.optimize {
        let report = optimize_pretransform(&code);
        let best = report.best();
        line.optimized = Some((
            best.lambda,
            best.j,
            best.memory.as_ref().map(|m| m.trimmed()),
        ));
    }
    emit(&a.out, &line.render(a.out.format))
}

fn oracle(a: OracleArgs) -> Result<(), Failure> {
    let code = build_code(&a.code)?;
    let limits = OracleLimits {
        max_k: a.oracle_max_k,
        ..OracleLimits::default()
    };
    let dist = brute_force_wd(&code, &limits)?;
    let lambda = expanded_information_set(&code).lambda();
    emit(&a.out, &spectrum(a.out.format, &code, lambda, &dist))
}

fn selftest(a: SelftestArgs) -> Result<(), Failure> {
    let report = run_selftest(&SelftestOptions {
        max_n: a.max_n,
        samples: a.samples,
        seed: a.seed,
        inject_fault: a.inject_fault,
    });
    let mut text = String::new();
    for c in &report.checks {
        match &c.counterexample {
            None => text.push_str(&format!("PASS {} ({} cases)\n", c.name, c.cases)),
            Some(x) => text.push_str(&format!("FAIL {} ({} cases): {x}\n", c.name, c.cases)),
        }
    }
    render::print(&text);
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(Failure::Selftest(format!("failed: {}", names.join(", "))))
    }
}

fn bench(table: BenchTable) -> Result<(), Failure> {
    let start = Instant::now();
    match table {
        BenchTable::Table1 {
            seq,
            parity_positions,
            out,
        } => {
            let seq = load_sequence(seq.as_deref())?;
            let rows = tables::table1(&seq, parity_positions)?;
            emit(&out, &expansion_table(out.format, &rows, false))?;
        }
        BenchTable::Table3 { seq, out } => {
            let seq = load_sequence(seq.as_deref())?;
            let rows = tables::table3(&seq)?;
            emit(&out, &expansion_table(out.format, &rows, true))?;
        }
        BenchTable::Table2 {
            seq,
            n,
            ks,
            samples,
            seed,
            density,
            workers,
            out,
        } => {
            if samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let seq = load_sequence(seq.as_deref())?;
            let ks = ks.unwrap_or_else(|| tables::table2_default_ks(n));
            let run = || tables::table2(&seq, n, &ks, samples, density, seed);
            let rows = if workers == 0 {
                run()?
            } else {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| Failure::Usage(e.to_string()))?
                    .install(run)?
            };
            emit(&out, &reduction_table(out.format, &rows))?;
        }
    }
    eprintln!("elapsed={:.3}s", start.elapsed().as_secs_f64());
    Ok(())
}

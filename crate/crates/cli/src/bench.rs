use std::time::Instant;

use pg_core::{rng_stream, sample_pg};
use pg_models::synthetic::logit_benchmark;
use pg_models::{fit_logit_gibbs, fit_logit_metropolis, GibbsConfig, PosteriorDraws};

use crate::error::CliError;
use crate::{BenchArgs, Suite};

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    match args.suite {
        Suite::PgSpeed => pg_speed(args),
        Suite::LogitEss => logit_ess(args),
    }
}

fn pg_speed(args: &BenchArgs) -> Result<(), CliError> {
    if args.draws == 0 {
        return Err(CliError::Usage("need at least one draw".into()));
    }
    let mut rng = rng_stream(args.seed);
    let mut times = Vec::new();
    for &b in &[1.0f64, 10.0, 100.0] {
        let start = Instant::now();
        let mut acc = 0.0;
        for _ in 0..args.draws {
            acc += sample_pg(b, 1.0, &mut rng).map_err(|e| CliError::Numeric(e.to_string()))?;
        }
        std::hint::black_box(acc);
        let secs = start.elapsed().as_secs_f64();
        times.push(secs);
        println!(
            "PG({b:>3},1): {:>12.0} draws/s  ({secs:.3} s for {} draws)",
            args.draws as f64 / secs,
            args.draws
        );
    }
    println!(
        "time ratios: PG(10,1)/PG(1,1) = {:.1}, PG(100,1)/PG(10,1) = {:.1}",
        times[1] / times[0],
        times[2] / times[1]
    );
    Ok(())
}

fn row(label: &str, draws: &PosteriorDraws) -> Result<String, CliError> {
    let eff = draws
        .efficiency()
        .map_err(|e| CliError::Numeric(format!("efficiency report: {e}")))?;
    let arate = draws
        .acceptance_rate
        .map_or("  1.00".to_string(), |r| format!("{r:6.2}"));
    Ok(format!(
        "{label:<6} {:>8.2} {arate} {:>9.1} {:>9.1} {:>9.1} {:>9.1} {:>9.1} {:>9.1}",
        draws.sampling_seconds,
        eff.ess_min,
        eff.ess_median,
        eff.ess_max,
        eff.esr_min,
        eff.esr_median,
        eff.esr_max
    ))
}

fn logit_ess(args: &BenchArgs) -> Result<(), CliError> {
    let (data, prior) = logit_benchmark();
    let cfg = GibbsConfig::new(args.samples, args.burn, 1, args.seed)?;
    let gibbs = fit_logit_gibbs(&data, &prior, &cfg)?;
    let metro = fit_logit_metropolis(&data, &prior, &cfg)?;
    println!(
        "{:<6} {:>8} {:>6} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "method", "time", "ARate", "ESS.min", "ESS.med", "ESS.max", "ESR.min", "ESR.med", "ESR.max"
    );
    println!("{}", row("PG", &gibbs)?);
    println!("{}", row("IndMH", &metro)?);
    Ok(())
}

use std::path::PathBuf;

use pg_models::{
    fit_gp_negbin_gibbs, fit_logit_gibbs, fit_mixed_gibbs, fit_multinomial_gibbs, fit_negbin_gibbs,
    fit_tables_gibbs, GaussianPrior, GibbsConfig, PosteriorDraws,
};

use crate::error::CliError;
use crate::input::{self, Table};
use crate::output;
use crate::{FitArgs, ModelKind};

pub fn run(args: &FitArgs) -> Result<(), CliError> {
    if args.chains == 0 {
        return Err(CliError::Usage("chains must be >= 1".into()));
    }
    let table = input::read_csv(&args.data)?;
    // Validate the chain settings once up front.
    GibbsConfig::new(args.samples, args.burn, args.thin, args.seed)?;

    if args.chains == 1 {
        let draws = fit_one(args, &table, args.seed)?;
        return write_outputs(args, &draws, "");
    }

    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..args.chains)
            .map(|k| {
                let table = &table;
                scope.spawn(move || fit_one(args, table, args.seed + k as u64))
            })
            .collect();
        for (k, handle) in handles.into_iter().enumerate() {
            let draws = handle.join().expect("chain thread panicked")?;
            write_outputs(args, &draws, &format!("_chain{k}"))?;
        }
        Ok(())
    })
}

fn out_path(prefix: &std::path::Path, suffix: &str, kind: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(format!("{suffix}_{kind}"));
    PathBuf::from(name)
}

fn write_outputs(args: &FitArgs, draws: &PosteriorDraws, suffix: &str) -> Result<(), CliError> {
    output::write_draws_csv(&out_path(&args.out, suffix, "draws.csv"), draws)?;
    let summary = output::summary_json(args.model.name(), args.seed, draws)?;
    output::write_summary(&out_path(&args.out, suffix, "summary.json"), &summary)?;
    Ok(())
}

fn fit_one(args: &FitArgs, table: &Table, seed: u64) -> Result<PosteriorDraws, CliError> {
    let cfg = GibbsConfig::new(args.samples, args.burn, args.thin, seed)?;
    let intercept = !args.no_intercept;
    if !(args.prior_scale > 0.0) {
        return Err(CliError::Usage("prior-scale must be positive".into()));
    }
    match args.model {
        ModelKind::Logit => {
            let (data, names) = input::logit_input(table, intercept)?;
            let prior = GaussianPrior::isotropic(data.n_coef(), args.prior_scale)?;
            let mut draws = fit_logit_gibbs(&data, &prior, &cfg)?;
            draws.names = names;
            Ok(draws)
        }
        ModelKind::Mixed => {
            let (data, coef_names, labels) = input::mixed_input(table, intercept)?;
            let prior = GaussianPrior::isotropic(data.x.ncols(), args.prior_scale)?;
            let mut draws = fit_mixed_gibbs(&data, &prior, &cfg)?;
            let mut names = vec!["m".to_string()];
            names.extend(labels.iter().map(|l| format!("delta[{l}]")));
            names.extend(labels.iter().map(|l| format!("intercept[{l}]")));
            names.extend(coef_names);
            names.push("phi".to_string());
            draws.names = names;
            Ok(draws)
        }
        ModelKind::Negbin => {
            if args.dispersion_init == 0 {
                return Err(CliError::Usage("dispersion-init must be >= 1".into()));
            }
            let (data, coef_names) =
                input::negbin_input(table, intercept, args.dispersion_init, !args.fix_dispersion)?;
            let prior = GaussianPrior::isotropic(data.x.ncols(), args.prior_scale)?;
            let mut draws = fit_negbin_gibbs(&data, &prior, &cfg)?;
            let mut names = coef_names;
            names.push("alpha".to_string());
            names.push("d".to_string());
            draws.names = names;
            Ok(draws)
        }
        ModelKind::Mlogit => {
            let (data, coef_names, ycols) = input::mlogit_input(table, intercept)?;
            let active = data.n_categories() - 1;
            let prior = GaussianPrior::isotropic(data.x.ncols(), args.prior_scale)?;
            let priors = vec![prior; active];
            let mut draws = fit_multinomial_gibbs(&data, &priors, &cfg)?;
            let mut names = Vec::with_capacity(active * coef_names.len());
            for ycol in ycols.iter().take(active) {
                for c in &coef_names {
                    names.push(format!("{ycol}:{c}"));
                }
            }
            draws.names = names;
            Ok(draws)
        }
        ModelKind::Tables => {
            let data = input::tables_input(
                table,
                args.wishart_dof,
                args.expected_var1,
                args.expected_var2,
                args.expected_rho,
                args.mu_scale,
            )?;
            Ok(fit_tables_gibbs(&data, &cfg)?)
        }
        ModelKind::GpNegbin => {
            if args.nb_size == 0 {
                return Err(CliError::Usage("nb-size must be >= 1".into()));
            }
            let data = input::gp_input(table, args.length_scale, args.nugget, args.nb_size)?;
            Ok(fit_gp_negbin_gibbs(&data, &cfg)?)
        }
    }
}

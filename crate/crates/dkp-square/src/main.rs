use clap::Parser;

use dkp_square::bound::{find_bound_states, sweep_a, sweep_v, SpectrumRow, SpectrumTable};
use dkp_square::error::Error;
use dkp_square::io::{
    self, build_config, emit_resonances, emit_scan, emit_spectrum, format_f64, meta_lines, Cli,
    Command, RunConfig,
};
use dkp_square::kinematics::derived_params;
use dkp_square::oracle::confirm_levels;
use dkp_square::scattering::{coefficients_scan, resonance_table};
use dkp_square::verify;

// exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error
const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            err.exit();
        }
    };
    let config = match build_config(cli) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(match err {
                Error::Io { .. } => EXIT_IO,
                _ => EXIT_USAGE,
            });
        }
    };
    std::process::exit(run(&config));
}

fn run(config: &RunConfig) -> i32 {
    if matches!(config.command, Command::Verify) {
        return run_verify();
    }
    let rendered = match render(config) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    match &config.out {
        None => {
            print!("{rendered}");
            0
        }
        Some(path) => match io::write_atomic(path, &rendered) {
            Ok(()) => 0,
            Err(err) => {
                eprintln!("error: {err}");
                EXIT_IO
            }
        },
    }
}

fn run_verify() -> i32 {
    let checks = verify::run_all();
    let mut failed = 0usize;
    for check in &checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<26} {}", check.name, check.detail);
        if !check.passed {
            failed += 1;
        }
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        0
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn render(config: &RunConfig) -> dkp_square::Result<String> {
    let meta = meta_lines(config);
    let mut out = String::new();
    match &config.command {
        Command::Scan { emin, emax, steps } => {
            let grid = io::scan_grid(*emin, *emax, *steps, &config.spec);
            let points = coefficients_scan(&grid, &config.spec, config.sector)?;
            emit_scan(&points, config.format, &meta, &mut out);
        }
        Command::Resonances { n_max } => {
            let table = resonance_table(*n_max, &config.spec);
            emit_resonances(&table, config.format, &meta, &mut out);
        }
        Command::Bound { grid_points } => {
            let mut levels = find_bound_states(&config.spec, config.sector, *grid_points)?;
            // confirm each level against the shooting solver and report the
            // per-level diagnostics as comments
            confirm_levels(&mut levels, &config.spec, config.sector, *grid_points)?;
            let (_, upsilon) = derived_params(&config.spec);
            let mut comments = Vec::new();
            let mut table = SpectrumTable::default();
            for (idx, level) in levels.iter().enumerate() {
                let q = match level.quantization_residual {
                    Some(res) => format_f64(res),
                    None => "undefined".to_string(),
                };
                let gap = match level.oracle_gap {
                    Some(gap) => format_f64(gap),
                    None => "unconfirmed".to_string(),
                };
                comments.push(format!(
                    "# level {}: y = {}, pole_residual = {}, quantization_residual = {q}, oracle_gap = {gap}",
                    idx + 1,
                    format_f64(level.y),
                    format_f64(level.pole_residual),
                ));
                table.rows.push(SpectrumRow { param: upsilon, level_index: idx + 1, e: level.e_pair.0 });
                table.rows.push(SpectrumRow { param: upsilon, level_index: idx + 1, e: level.e_pair.1 });
            }
            emit_spectrum(&table, config.format, &meta, &comments, &mut out);
        }
        Command::SweepV { vmin, vmax, vsteps } => {
            let vs = io::uniform_grid(*vmin, *vmax, *vsteps);
            let table = sweep_v(&vs, &config.spec, config.sector, 1200)?;
            emit_spectrum(&table, config.format, &meta, &[], &mut out);
        }
        Command::SweepA { amin, amax, asteps } => {
            let a_values = io::uniform_grid(*amin, *amax, *asteps);
            let table = sweep_a(&a_values, config.spec.v0(), &config.spec, config.sector, 1200)?;
            emit_spectrum(&table, config.format, &meta, &[], &mut out);
        }
        Command::Verify => unreachable!("handled in run()"),
    }
    Ok(out)
}

//! Command-line surface, configuration handling and CSV/JSON emission.
//!
//! Flag precedence: CLI flag > config file > built-in default
//! (a = 1, m = 1, b0 = 0, b1 = 1, V0 = 2, scalar sector). The config file is
//! flat `key=value` text, one pair per line, `#` comments.
//!
//! Output is deterministic byte-for-byte for identical configurations:
//! floating values are printed with 17 significant digits (which round-trips
//! f64 exactly), metadata goes into `#`-prefixed CSV comment lines, and files
//! are written atomically (temp file + rename).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::bound::{SpectrumRow, SpectrumTable};
use crate::error::{Error, Result};
use crate::kinematics::{derived_params, eta_of_xi, xi_of_energy, Polarization, PotentialSpec, Sector};
use crate::scattering::{ScanFlag, ScanPoint};

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved command with its grid parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Scan { emin: f64, emax: f64, steps: usize },
    Resonances { n_max: u32 },
    Bound { grid_points: usize },
    SweepV { vmin: f64, vmax: f64, vsteps: usize },
    SweepA { amin: f64, amax: f64, asteps: usize },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Scan { .. } => "scan",
            Command::Resonances { .. } => "resonances",
            Command::Bound { .. } => "bound",
            Command::SweepV { .. } => "sweep-v",
            Command::SweepA { .. } => "sweep-a",
            Command::Verify => "verify",
        }
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: PotentialSpec,
    pub sector: Sector,
    pub command: Command,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Default, Clone)]
pub struct CommonArgs {
    /// Half-width of the square region
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Potential scale V0 (positive: well, negative: barrier)
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Time-component coupling weight
    #[arg(long, allow_negative_numbers = true)]
    pub b0: Option<f64>,
    /// Space-component coupling weight
    #[arg(long, allow_negative_numbers = true)]
    pub b1: Option<f64>,
    /// Boson mass
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// scalar | vector
    #[arg(long)]
    pub sector: Option<String>,
    /// Vector polarization: +1 | -1
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
    /// Output path (stdout when omitted); files are written atomically
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat key=value config file
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "dkp-square",
    about = "Scattering and bound states of relativistic bosons in nonminimal vector square potentials",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Reflection/transmission coefficients over an energy grid
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_negative_numbers = true)]
        emin: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        emax: Option<f64>,
        /// Number of grid points
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Transmission-resonance energies E_N for N = 0..=nmax
    Resonances {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Bound-state levels of the configured potential
    Bound {
        #[command(flatten)]
        common: CommonArgs,
        /// Root-bracketing grid resolution
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Bound spectrum as a function of upsilon = a*V0
    SweepV {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        vmin: Option<f64>,
        #[arg(long)]
        vmax: Option<f64>,
        #[arg(long)]
        vsteps: Option<usize>,
    },
    /// Bound spectrum as a function of the half-width a at fixed V0
    SweepA {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        amin: Option<f64>,
        #[arg(long)]
        amax: Option<f64>,
        #[arg(long)]
        asteps: Option<usize>,
    },
    /// Run the verification suite; exit 0 on pass, 1 on any failure
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Values read from a key=value config file.
#[derive(Debug, Default, Clone)]
struct FileConfig {
    numbers: std::collections::BTreeMap<String, f64>,
    strings: std::collections::BTreeMap<String, String>,
}

const NUMERIC_KEYS: &[&str] = &[
    "a", "v0", "b0", "b1", "m", "emin", "emax", "steps", "nmax", "grid_points", "vmin", "vmax",
    "vsteps", "amin", "amax", "asteps",
];
const STRING_KEYS: &[&str] = &["sector", "sigma", "format", "out"];

fn read_config_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("{}:{}: expected key=value", path.display(), lineno + 1))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if NUMERIC_KEYS.contains(&key.as_str()) {
            let parsed = value.parse::<f64>().map_err(|_| {
                Error::Config(format!(
                    "{}:{}: malformed number `{value}` for `{key}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            cfg.numbers.insert(key, parsed);
        } else if STRING_KEYS.contains(&key.as_str()) {
            cfg.strings.insert(key, value);
        } else {
            return Err(Error::Config(format!(
                "{}:{}: unknown key `{key}`",
                path.display(),
                lineno + 1
            )));
        }
    }
    Ok(cfg)
}

struct Merger {
    file: FileConfig,
}

impl Merger {
    fn num(&self, cli: Option<f64>, key: &str, default: f64) -> f64 {
        cli.or_else(|| self.file.numbers.get(key).copied()).unwrap_or(default)
    }

    fn count(&self, cli: Option<usize>, key: &str, default: usize) -> Result<usize> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.file.numbers.get(key) {
            Some(&v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as usize),
            Some(&v) => Err(Error::Config(format!("`{key}` must be a nonnegative integer, got {v}"))),
            None => Ok(default),
        }
    }

    fn string(&self, cli: Option<String>, key: &str) -> Option<String> {
        cli.or_else(|| self.file.strings.get(key).cloned())
    }
}

fn resolve_sector(sector: Option<String>, sigma: Option<String>) -> Result<Sector> {
    let sigma = match sigma.as_deref() {
        None | Some("+1") | Some("1") => Polarization::Longitudinal,
        Some("-1") => Polarization::Transverse,
        Some(other) => return Err(Error::Config(format!("sigma must be +1 or -1, got `{other}`"))),
    };
    match sector.as_deref() {
        None | Some("scalar") => Ok(Sector::Scalar),
        Some("vector") => Ok(Sector::Vector(sigma)),
        Some(other) => Err(Error::Config(format!("sector must be scalar or vector, got `{other}`"))),
    }
}

fn resolve_format(format: Option<String>) -> Result<OutputFormat> {
    match format.as_deref() {
        None | Some("csv") => Ok(OutputFormat::Csv),
        Some("json") => Ok(OutputFormat::Json),
        Some(other) => Err(Error::Config(format!("format must be csv or json, got `{other}`"))),
    }
}

fn check_grid(name: &str, lo: f64, hi: f64, steps: usize) -> Result<()> {
    if !(lo < hi) {
        return Err(Error::Config(format!("{name}: lower bound {lo} must be below upper bound {hi}")));
    }
    if steps < 2 {
        return Err(Error::Config(format!("{name}: needs at least 2 grid points, got {steps}")));
    }
    Ok(())
}

/// Turns parsed CLI arguments into a validated `RunConfig`, applying the
/// config file and the built-in defaults.
pub fn build_config(cli: Cli) -> Result<RunConfig> {
    let (common, partial) = match cli.command {
        CliCommand::Scan { common, emin, emax, steps } => {
            (common, PartialCommand::Scan { emin, emax, steps })
        }
        CliCommand::Resonances { common, nmax } => (common, PartialCommand::Resonances { nmax }),
        CliCommand::Bound { common, grid_points } => (common, PartialCommand::Bound { grid_points }),
        CliCommand::SweepV { common, vmin, vmax, vsteps } => {
            (common, PartialCommand::SweepV { vmin, vmax, vsteps })
        }
        CliCommand::SweepA { common, amin, amax, asteps } => {
            (common, PartialCommand::SweepA { amin, amax, asteps })
        }
        CliCommand::Verify { common } => (common, PartialCommand::Verify),
    };

    let file = match &common.config {
        Some(path) => read_config_file(path)?,
        None => FileConfig::default(),
    };
    let merge = Merger { file };

    let spec = PotentialSpec::new(
        merge.num(common.a, "a", 1.0),
        merge.num(common.v0, "v0", 2.0),
        merge.num(common.b0, "b0", 0.0),
        merge.num(common.b1, "b1", 1.0),
        merge.num(common.m, "m", 1.0),
    )?;
    let sector = resolve_sector(
        merge.string(common.sector, "sector"),
        merge.string(common.sigma, "sigma"),
    )?;
    let format = resolve_format(merge.string(common.format, "format"))?;
    let out = common.out.or_else(|| merge.file.strings.get("out").map(PathBuf::from));

    let command = match partial {
        PartialCommand::Scan { emin, emax, steps } => {
            let emin = merge.num(emin, "emin", 1.001);
            let emax = merge.num(emax, "emax", 10.0);
            let steps = merge.count(steps, "steps", 2000)?;
            check_grid("scan", emin, emax, steps)?;
            Command::Scan { emin, emax, steps }
        }
        PartialCommand::Resonances { nmax } => {
            let n_max = match nmax {
                Some(n) => n,
                None => merge.count(None, "nmax", 5)? as u32,
            };
            Command::Resonances { n_max }
        }
        PartialCommand::Bound { grid_points } => {
            let grid_points = merge.count(grid_points, "grid_points", 2000)?;
            if grid_points < 100 {
                return Err(Error::Config(format!(
                    "bound: grid_points must be at least 100, got {grid_points}"
                )));
            }
            Command::Bound { grid_points }
        }
        PartialCommand::SweepV { vmin, vmax, vsteps } => {
            let vmin = merge.num(vmin, "vmin", 0.5);
            let vmax = merge.num(vmax, "vmax", 5.0);
            let vsteps = merge.count(vsteps, "vsteps", 46)?;
            check_grid("sweep-v", vmin, vmax, vsteps)?;
            Command::SweepV { vmin, vmax, vsteps }
        }
        PartialCommand::SweepA { amin, amax, asteps } => {
            let amin = merge.num(amin, "amin", 0.001);
            let amax = merge.num(amax, "amax", 0.2);
            let asteps = merge.count(asteps, "asteps", 200)?;
            check_grid("sweep-a", amin, amax, asteps)?;
            Command::SweepA { amin, amax, asteps }
        }
        PartialCommand::Verify => Command::Verify,
    };

    Ok(RunConfig { spec, sector, command, format, out })
}

enum PartialCommand {
    Scan { emin: Option<f64>, emax: Option<f64>, steps: Option<usize> },
    Resonances { nmax: Option<u32> },
    Bound { grid_points: Option<usize> },
    SweepV { vmin: Option<f64>, vmax: Option<f64>, vsteps: Option<usize> },
    SweepA { amin: Option<f64>, amax: Option<f64>, asteps: Option<usize> },
    Verify,
}

/// Parses argv (including the program name) into a validated `RunConfig`.
pub fn parse_cli<I, S>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Config(e.to_string()))?;
    build_config(cli)
}

// ---------------------------------------------------------------------------
// grids
// ---------------------------------------------------------------------------

/// Uniform inclusive grid of `steps` points.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let width = hi - lo;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + width * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Scan grid: uniform points with the threshold band [-m-d, m+d]
/// (d = 1e-3 * m) removed automatically, and exactly-degenerate points
/// (xi = 0 or eta = 0) nudged by one grid-epsilon.
pub fn scan_grid(emin: f64, emax: f64, steps: usize, spec: &PotentialSpec) -> Vec<f64> {
    let step_size = (emax - emin) / (steps - 1) as f64;
    let grid_epsilon = step_size * 1e-9;
    let cutoff = spec.m() * (1.0 + 1e-3);
    let (j, upsilon) = derived_params(spec);
    let degenerate = |e: f64| {
        let xi = xi_of_energy(e, spec);
        xi == Complex64::new(0.0, 0.0) || eta_of_xi(xi, j, upsilon) == Complex64::new(0.0, 0.0)
    };
    uniform_grid(emin, emax, steps)
        .into_iter()
        .filter(|e| e.abs() >= cutoff)
        .map(|e| if degenerate(e) { e + grid_epsilon } else { e })
        .collect()
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

/// 17 significant digits; round-trips f64 exactly and is valid JSON.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `# key = value` metadata lines describing a run.
pub fn meta_lines(config: &RunConfig) -> Vec<String> {
    let spec = &config.spec;
    let (j, upsilon) = derived_params(spec);
    let (sector, sigma) = match config.sector {
        Sector::Scalar => ("scalar", "+1"),
        Sector::Vector(Polarization::Longitudinal) => ("vector", "+1"),
        Sector::Vector(Polarization::Transverse) => ("vector", "-1"),
    };
    let mut lines = vec![
        format!("# dkp-square {}", config.command.name()),
        format!("# a = {}", format_f64(spec.a())),
        format!("# v0 = {}", format_f64(spec.v0())),
        format!("# b0 = {}", format_f64(spec.b0())),
        format!("# b1 = {}", format_f64(spec.b1())),
        format!("# m = {}", format_f64(spec.m())),
        format!("# sector = {sector}"),
        format!("# sigma = {sigma}"),
        format!("# j = {}", format_f64(j)),
        format!("# upsilon = {}", format_f64(upsilon)),
    ];
    match &config.command {
        Command::Scan { emin, emax, steps } => {
            lines.push(format!("# emin = {}", format_f64(*emin)));
            lines.push(format!("# emax = {}", format_f64(*emax)));
            lines.push(format!("# steps = {steps}"));
        }
        Command::Resonances { n_max } => lines.push(format!("# nmax = {n_max}")),
        Command::Bound { grid_points } => lines.push(format!("# grid_points = {grid_points}")),
        Command::SweepV { vmin, vmax, vsteps } => {
            lines.push(format!("# vmin = {}", format_f64(*vmin)));
            lines.push(format!("# vmax = {}", format_f64(*vmax)));
            lines.push(format!("# vsteps = {vsteps}"));
        }
        Command::SweepA { amin, amax, asteps } => {
            lines.push(format!("# amin = {}", format_f64(*amin)));
            lines.push(format!("# amax = {}", format_f64(*amax)));
            lines.push(format!("# asteps = {asteps}"));
        }
        Command::Verify => {}
    }
    lines
}

pub const SCAN_HEADER: &str = "E,xi_re,xi_im,eta_re,eta_im,r_re,r_im,t_re,t_im,R,T,flag";
pub const SPECTRUM_HEADER: &str = "param,level_index,E";
pub const RESONANCE_HEADER: &str = "N,E";

/// Scan table, CSV or JSON. Degenerate points keep their kinematics but have
/// empty r/t/R/T fields (null in JSON).
pub fn emit_scan(
    points: &[ScanPoint],
    format: OutputFormat,
    meta: &[String],
    out: &mut String,
) {
    match format {
        OutputFormat::Csv => {
            for line in meta {
                out.push_str(line);
                out.push('\n');
            }
            out.push_str(SCAN_HEADER);
            out.push('\n');
            for p in points {
                let kin = format!(
                    "{},{},{},{},{}",
                    format_f64(p.e),
                    format_f64(p.xi.re),
                    format_f64(p.xi.im),
                    format_f64(p.eta.re),
                    format_f64(p.eta.im)
                );
                match (&p.amplitude, p.flag) {
                    (Some(res), ScanFlag::Ok) => {
                        let _ = writeln!(
                            out,
                            "{kin},{},{},{},{},{},{},ok",
                            format_f64(res.r.re),
                            format_f64(res.r.im),
                            format_f64(res.t.re),
                            format_f64(res.t.im),
                            format_f64(res.reflection),
                            format_f64(res.transmission)
                        );
                    }
                    (_, flag) => {
                        let _ = writeln!(out, "{kin},,,,,,,{}", flag.as_str());
                    }
                }
            }
        }
        OutputFormat::Json => {
            out.push_str("[\n");
            for (i, p) in points.iter().enumerate() {
                let opt = |v: Option<f64>| match v {
                    Some(x) => format_f64(x),
                    None => "null".to_string(),
                };
                let amp = p.amplitude;
                let _ = write!(
                    out,
                    "  {{\"E\": {}, \"xi_re\": {}, \"xi_im\": {}, \"eta_re\": {}, \"eta_im\": {}, \
                     \"r_re\": {}, \"r_im\": {}, \"t_re\": {}, \"t_im\": {}, \"R\": {}, \"T\": {}, \
                     \"flag\": \"{}\"}}",
                    format_f64(p.e),
                    format_f64(p.xi.re),
                    format_f64(p.xi.im),
                    format_f64(p.eta.re),
                    format_f64(p.eta.im),
                    opt(amp.map(|r| r.r.re)),
                    opt(amp.map(|r| r.r.im)),
                    opt(amp.map(|r| r.t.re)),
                    opt(amp.map(|r| r.t.im)),
                    opt(amp.map(|r| r.reflection)),
                    opt(amp.map(|r| r.transmission)),
                    p.flag.as_str()
                );
                out.push_str(if i + 1 == points.len() { "\n" } else { ",\n" });
            }
            out.push_str("]\n");
        }
    }
}

/// Spectrum table (`bound`, `sweep-v`, `sweep-a`): rows param,level_index,E.
/// Flagged parameter values become comment lines in CSV and are omitted from
/// the JSON array.
pub fn emit_spectrum(
    table: &SpectrumTable,
    format: OutputFormat,
    meta: &[String],
    extra_comments: &[String],
    out: &mut String,
) {
    match format {
        OutputFormat::Csv => {
            for line in meta.iter().chain(extra_comments) {
                out.push_str(line);
                out.push('\n');
            }
            for (param, reason) in &table.flagged {
                let _ = writeln!(out, "# flagged: param = {} ({reason})", format_f64(*param));
            }
            out.push_str(SPECTRUM_HEADER);
            out.push('\n');
            for SpectrumRow { param, level_index, e } in &table.rows {
                let _ = writeln!(out, "{},{level_index},{}", format_f64(*param), format_f64(*e));
            }
        }
        OutputFormat::Json => {
            out.push_str("[\n");
            for (i, SpectrumRow { param, level_index, e }) in table.rows.iter().enumerate() {
                let _ = write!(
                    out,
                    "  {{\"param\": {}, \"level_index\": {level_index}, \"E\": {}}}",
                    format_f64(*param),
                    format_f64(*e)
                );
                out.push_str(if i + 1 == table.rows.len() { "\n" } else { ",\n" });
            }
            out.push_str("]\n");
        }
    }
}

/// Resonance table: rows N,E, keyed by the true resonance index (levels
/// below the propagation band are skipped, not renumbered).
pub fn emit_resonances(
    table: &[(u32, f64)],
    format: OutputFormat,
    meta: &[String],
    out: &mut String,
) {
    match format {
        OutputFormat::Csv => {
            for line in meta {
                out.push_str(line);
                out.push('\n');
            }
            out.push_str(RESONANCE_HEADER);
            out.push('\n');
            for (n, e) in table {
                let _ = writeln!(out, "{n},{}", format_f64(*e));
            }
        }
        OutputFormat::Json => {
            out.push_str("[\n");
            for (i, (n, e)) in table.iter().enumerate() {
                let _ = write!(out, "  {{\"N\": {n}, \"E\": {}}}", format_f64(*e));
                out.push_str(if i + 1 == table.len() { "\n" } else { ",\n" });
            }
            out.push_str("]\n");
        }
    }
}

/// Writes `contents` to `path` atomically: temp file in the same directory,
/// then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let wrap = |source: std::io::Error| Error::Io { path: path.to_path_buf(), source };
    std::fs::write(&tmp, contents).map_err(wrap)?;
    std::fs::rename(&tmp, path).map_err(wrap)?;
    Ok(())
}

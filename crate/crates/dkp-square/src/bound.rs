//! Bound-state energies from the poles of the transmission amplitude.
//!
//! With the prescription xi -> i*y (y = |xi| > 0) the pole condition
//! `cos(2 eta) - i f sin(2 eta) = 0` is multiplied through by `8 eta y`,
//! which removes every pole of `f`, and rewritten with the entire functions
//!
//! ```text
//! C(u) = cos(2 sqrt(u)),   S(u) = sin(2 sqrt(u)) / (2 sqrt(u)),   u = eta^2
//! ```
//!
//! giving the pole-free real root function
//!
//! ```text
//! G(y) = 8 y C(u) - 2 [4 (u - y^2) + b1^2 upsilon^2] S(u),   u = -y^2 - j upsilon^2.
//! ```
//!
//! G = 8y * (pole condition), so its zeros on y > 0 are exactly the poles of
//! t, and G stays real-analytic across the u = 0 turning point (for u < 0 the
//! functions continue as cosh/sinh). The tan form of the quantization
//! condition is kept only as a cross-check: it has spurious sign changes at
//! its own poles (at upsilon = 2 near y = 1.84) that a bracketing search
//! would misreport as roots.
//!
//! Each root y in (0, a*m) maps to the pair E = +-sqrt(m^2 - (y/a)^2): the
//! spectrum carries bound particles and antiparticles symmetrically.

use crate::error::{Error, Result};
use crate::kinematics::{derived_params, PotentialSpec, Sector};

/// cos(2 sqrt(u)) continued through u <= 0.
fn c_entire(u: f64) -> f64 {
    if u >= 0.0 {
        (2.0 * u.sqrt()).cos()
    } else {
        (2.0 * (-u).sqrt()).cosh()
    }
}

/// sin(2 sqrt(u)) / (2 sqrt(u)) continued through u = 0.
fn s_entire(u: f64) -> f64 {
    let z2 = 4.0 * u; // (2 sqrt(u))^2
    if z2.abs() < 1e-8 {
        // sin(z)/z = 1 - z^2/6 + z^4/120 - ...
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    if u > 0.0 {
        let z = 2.0 * u.sqrt();
        z.sin() / z
    } else {
        let z = 2.0 * (-u).sqrt();
        z.sinh() / z
    }
}

/// The pole-free bound-state root function G(y).
///
/// Depends on b1 only through b1^2, so the vector polarization drops out and
/// spectra for b1 = +-1 are identical.
pub fn pole_function(y: f64, spec: &PotentialSpec, _sector: Sector) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("pole function needs y > 0, got {y}")));
    }
    let (j, upsilon) = derived_params(spec);
    let b1 = spec.b1();
    let u = -y * y - j * upsilon * upsilon;
    Ok(8.0 * y * c_entire(u) - 2.0 * (4.0 * (u - y * y) + b1 * b1 * upsilon * upsilon) * s_entire(u))
}

/// Residual lhs - rhs of the j = -1, b1^2 = 1 quantization condition
///
/// ```text
/// 8 sqrt(upsilon^2 - y^2) y / (5 upsilon^2 - 8 y^2) = tan(2 sqrt(upsilon^2 - y^2))
/// ```
///
/// Cross-check only; root finding uses `pole_function`.
pub fn quantization_residual(y: f64, upsilon: f64) -> Result<f64> {
    if !(y > 0.0 && y < upsilon) {
        return Err(Error::Domain(format!(
            "quantization condition needs 0 < y < upsilon, got y = {y}, upsilon = {upsilon}"
        )));
    }
    let eta = (upsilon * upsilon - y * y).sqrt();
    // the residual is meaningless close to either singularity: the lhs pole
    // at 5*upsilon^2 = 8*y^2 and the tan poles. The gates below keep the
    // amplification of the root's machine-precision error under ~1e-10.
    let denom = 5.0 * upsilon * upsilon - 8.0 * y * y;
    if denom.abs() < 5e-3 * 5.0 * upsilon * upsilon {
        return Err(Error::NearPole(format!("5*upsilon^2 - 8*y^2 = {denom} at y = {y}")));
    }
    let arg = 2.0 * eta;
    let half_period = std::f64::consts::FRAC_PI_2;
    let radians_from_pole = {
        let k = ((arg - half_period) / std::f64::consts::PI).round();
        (arg - half_period - k * std::f64::consts::PI).abs()
    };
    if radians_from_pole < 5e-3 {
        return Err(Error::NearPole(format!("tan argument {arg} near an odd multiple of pi/2")));
    }
    Ok(8.0 * eta * y / denom - arg.tan())
}

/// One bound level: the dimensionless root y = |xi| with its +-E pair and
/// consistency records.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundLevel {
    /// Root of G in (0, a*m).
    pub y: f64,
    /// (E, -E) with E = +sqrt(m^2 - (y/a)^2); exact pairing by construction.
    pub e_pair: (f64, f64),
    /// |G(y)| at the reported root.
    pub pole_residual: f64,
    /// Residual of the tan-form condition, when its preconditions hold
    /// (j = -1, b1^2 = 1, y < upsilon, away from its poles).
    pub quantization_residual: Option<f64>,
    /// |E - E_shooting| once confirmed against the shooting solver.
    pub oracle_gap: Option<f64>,
}

/// Relative half-width of the open search window in y.
const WINDOW_EPS: f64 = 1e-6;
/// Bisection runs to machine precision (well below the required 1e-12 * a*m)
/// so that residual cross-checks are not limited by the root location.
const BISECT_TOL: f64 = 4.0 * f64::EPSILON;

/// Finds all simple roots of G on the open window (eps, a*m - eps) with
/// eps = a*m * 1e-6, by uniform bracketing and bisection.
///
/// The endpoints are excluded as degenerate: y = 0 is the |E| = m threshold
/// (a trivial zero factor of G, not a normalizable state) and y = a*m is
/// E = 0. Double roots where G touches zero without crossing are not
/// searched for. An empty result is a valid spectrum.
pub fn find_bound_states(
    spec: &PotentialSpec,
    sector: Sector,
    grid_points: usize,
) -> Result<Vec<BoundLevel>> {
    if grid_points < 100 {
        return Err(Error::Domain(format!(
            "bound-state search needs at least 100 grid points, got {grid_points}"
        )));
    }
    let am = spec.a() * spec.m();
    let lo = am * WINDOW_EPS;
    let hi = am * (1.0 - WINDOW_EPS);
    let g = |y: f64| pole_function(y, spec, sector).expect("window keeps y > 0");

    let mut levels = Vec::new();
    let step = (hi - lo) / (grid_points as f64 - 1.0);
    let mut y_prev = lo;
    let mut g_prev = g(lo);
    for i in 1..grid_points {
        let y = lo + step * i as f64;
        let gy = g(y);
        if g_prev == 0.0 {
            levels.push(make_level(y_prev, spec, sector));
        } else if g_prev * gy < 0.0 {
            let root = bisect(y_prev, y, g_prev, &g, BISECT_TOL * am);
            levels.push(make_level(root, spec, sector));
        }
        y_prev = y;
        g_prev = gy;
    }
    levels.sort_by(|a, b| a.y.total_cmp(&b.y));
    Ok(levels)
}

fn bisect(mut lo: f64, mut hi: f64, g_lo: f64, g: &dyn Fn(f64) -> f64, tol: f64) -> f64 {
    let mut sign_lo = g_lo.signum();
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval no longer representable
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == sign_lo {
            lo = mid;
            sign_lo = gm.signum();
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn make_level(y: f64, spec: &PotentialSpec, sector: Sector) -> BoundLevel {
    let (a, m) = (spec.a(), spec.m());
    let kappa = y / a;
    let e = (m * m - kappa * kappa).max(0.0).sqrt();
    let (j, upsilon) = derived_params(spec);
    let q_res = if (j + 1.0).abs() <= 1e-9 && (spec.b1().abs() - 1.0).abs() <= 1e-9 {
        quantization_residual(y, upsilon).ok()
    } else {
        None
    };
    BoundLevel {
        y,
        e_pair: (e, -e),
        pole_residual: pole_function(y, spec, sector).map(f64::abs).unwrap_or(f64::NAN),
        quantization_residual: q_res,
        oracle_gap: None,
    }
}

/// One row of a spectrum table: both signs of E appear as separate rows with
/// the same 1-based level index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub param: f64,
    pub level_index: usize,
    pub e: f64,
}

/// Spectrum sweep output; parameter values that failed are flagged, not fatal.
#[derive(Debug, Clone, Default)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
    pub flagged: Vec<(f64, String)>,
}

fn push_levels(table: &mut SpectrumTable, param: f64, levels: &[BoundLevel]) {
    for (idx, level) in levels.iter().enumerate() {
        table.rows.push(SpectrumRow { param, level_index: idx + 1, e: level.e_pair.0 });
        table.rows.push(SpectrumRow { param, level_index: idx + 1, e: level.e_pair.1 });
    }
}

/// Spectrum as a function of upsilon at fixed a and m (the template's V0 is
/// replaced by upsilon/a per point). Requires an attractive configuration
/// (j < 0) and positive upsilon values.
pub fn sweep_v(
    v_values: &[f64],
    spec_template: &PotentialSpec,
    sector: Sector,
    grid_points: usize,
) -> Result<SpectrumTable> {
    if spec_template.j() >= 0.0 {
        return Err(Error::Domain(format!(
            "spectrum sweeps need j < 0, got j = {}",
            spec_template.j()
        )));
    }
    let mut table = SpectrumTable::default();
    for &v in v_values {
        if !(v > 0.0) {
            table.flagged.push((v, format!("upsilon must be positive, got {v}")));
            continue;
        }
        let spec = PotentialSpec::new(
            spec_template.a(),
            v / spec_template.a(),
            spec_template.b0(),
            spec_template.b1(),
            spec_template.m(),
        );
        match spec.and_then(|s| find_bound_states(&s, sector, grid_points)) {
            Ok(levels) => push_levels(&mut table, v, &levels),
            Err(err) => table.flagged.push((v, err.to_string())),
        }
    }
    Ok(table)
}

/// Spectrum as a function of the half-width a at fixed V0, m;
/// upsilon = a*V0 is recomputed per point.
pub fn sweep_a(
    a_values: &[f64],
    v0: f64,
    spec_template: &PotentialSpec,
    sector: Sector,
    grid_points: usize,
) -> Result<SpectrumTable> {
    if spec_template.j() >= 0.0 {
        return Err(Error::Domain(format!(
            "spectrum sweeps need j < 0, got j = {}",
            spec_template.j()
        )));
    }
    let mut table = SpectrumTable::default();
    for &a in a_values {
        if !(a > 0.0) {
            table.flagged.push((a, format!("half-width must be positive, got {a}")));
            continue;
        }
        let spec = PotentialSpec::new(
            a,
            v0,
            spec_template.b0(),
            spec_template.b1(),
            spec_template.m(),
        );
        match spec.and_then(|s| find_bound_states(&s, sector, grid_points)) {
            Ok(levels) => push_levels(&mut table, a, &levels),
            Err(err) => table.flagged.push((a, err.to_string())),
        }
    }
    Ok(table)
}

//! Closed-form scattering amplitudes, reflection/transmission coefficients,
//! resonance energies and energy-grid scans.
//!
//! For a unit wave incident from the left,
//!
//! ```text
//! r = e^{-2i xi} [i f(xi) - gamma(xi)] sin(2 eta) / [cos(2 eta) - i f(xi) sin(2 eta)]
//! t = e^{-2i xi}                                  / [cos(2 eta) - i f(xi) sin(2 eta)]
//! ```
//!
//! with gamma = (upsilon*b1 + 2i*xi)/(2 eta) and
//! f = [4(xi^2 + eta^2) + b1^2 upsilon^2]/(8 eta xi). In the tunneling regime
//! eta is purely imaginary and the same expressions are evaluated with complex
//! trigonometric functions; there is no separate cosh/sinh path.
//!
//! R and T are always |r|^2 and |t|^2. The amplitude route is analytically
//! unitary: |i f - gamma|^2 = f^2 - 1 whenever eta^2 = xi^2 - j*upsilon^2.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kinematics::{derived_params, eta_of_xi, xi_of_energy, PotentialSpec, Sector};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Reflection/transmission data at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub e: f64,
    pub r: Complex64,
    pub t: Complex64,
    /// R = |r|^2
    pub reflection: f64,
    /// T = |t|^2
    pub transmission: f64,
}

/// The two auxiliary amplitude factors for one kinematic point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeFactors {
    pub gamma: Complex64,
    pub f: Complex64,
}

impl AmplitudeFactors {
    /// Both factors at once. `b1_delta` is the coupling entering the
    /// delta-linear term (sigma*b1 in the vector sector); f always uses
    /// b1^2, so it takes the sign-free magnitude.
    pub fn for_kinematics(
        xi: Complex64,
        eta: Complex64,
        upsilon: f64,
        b1_delta: f64,
    ) -> Result<Self> {
        Ok(Self {
            gamma: gamma_factor(xi, eta, upsilon, b1_delta)?,
            f: f_factor(xi, eta, upsilon, b1_delta)?,
        })
    }
}

/// gamma(xi) = (upsilon*b1 + 2i*xi)/(2*eta).
pub fn gamma_factor(xi: Complex64, eta: Complex64, upsilon: f64, b1: f64) -> Result<Complex64> {
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateKinematics("gamma factor at eta = 0".into()));
    }
    Ok((Complex64::new(upsilon * b1, 0.0) + 2.0 * I * xi) / (2.0 * eta))
}

/// f(xi) = [4(xi^2 + eta^2) + b1^2*upsilon^2]/(8*eta*xi). Depends on b1 only
/// through b1^2.
pub fn f_factor(xi: Complex64, eta: Complex64, upsilon: f64, b1: f64) -> Result<Complex64> {
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateKinematics("f factor at eta = 0".into()));
    }
    if xi == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateKinematics("f factor at xi = 0".into()));
    }
    let num = 4.0 * (xi * xi + eta * eta) + Complex64::new(b1 * b1 * upsilon * upsilon, 0.0);
    Ok(num / (8.0 * eta * xi))
}

/// Closed-form amplitudes at energy `e` (requires |E| > m).
///
/// In the vector sector b1 is replaced by sigma*b1 in the delta-linear terms
/// only, i.e. inside gamma; f is unchanged since b1 enters squared. As
/// |E| -> m+ the transmission vanishes (total reflection at the threshold);
/// T = 1 exactly at the sin(2 eta) = 0 resonances.
pub fn amplitudes(e: f64, spec: &PotentialSpec, sector: Sector) -> Result<ScatteringResult> {
    if e.abs() <= spec.m() {
        return Err(Error::Threshold { e, m: spec.m() });
    }
    let (j, upsilon) = derived_params(spec);
    let xi = xi_of_energy(e, spec);
    let eta = eta_of_xi(xi, j, upsilon);
    if xi == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateKinematics(format!("xi = 0 at E = {e}")));
    }
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateKinematics(format!("eta = 0 at E = {e}")));
    }
    let b1_delta = sector.delta_sign() * spec.b1();
    let AmplitudeFactors { gamma, f } = AmplitudeFactors::for_kinematics(xi, eta, upsilon, b1_delta)?;

    let den = (2.0 * eta).cos() - I * f * (2.0 * eta).sin();
    let phase = (-2.0 * I * xi).exp();
    let t = phase / den;
    let r = phase * (I * f - gamma) * (2.0 * eta).sin() / den;
    Ok(ScatteringResult {
        e,
        r,
        t,
        reflection: r.norm_sqr(),
        transmission: t.norm_sqr(),
    })
}

/// Why a scan point carries no amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFlag {
    Ok,
    /// xi = 0 or eta = 0 exactly at this grid point.
    Degenerate,
    /// |E| <= m.
    Threshold,
}

impl ScanFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanFlag::Ok => "ok",
            ScanFlag::Degenerate => "degenerate",
            ScanFlag::Threshold => "threshold",
        }
    }
}

/// One row of an energy scan. Kinematics are always present; amplitudes are
/// absent on flagged points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub e: f64,
    pub xi: Complex64,
    pub eta: Complex64,
    pub amplitude: Option<ScatteringResult>,
    pub flag: ScanFlag,
}

/// Evaluates the coefficients over an energy grid, one result per point in
/// input order. Per-point failures flag the point instead of aborting.
pub fn coefficients_scan(
    e_grid: &[f64],
    spec: &PotentialSpec,
    sector: Sector,
) -> Result<Vec<ScanPoint>> {
    if e_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("energy grid must be strictly increasing".into()));
    }
    let (j, upsilon) = derived_params(spec);
    Ok(e_grid
        .iter()
        .map(|&e| {
            let xi = xi_of_energy(e, spec);
            let eta = eta_of_xi(xi, j, upsilon);
            match amplitudes(e, spec, sector) {
                Ok(res) => ScanPoint { e, xi, eta, amplitude: Some(res), flag: ScanFlag::Ok },
                Err(Error::Threshold { .. }) => {
                    ScanPoint { e, xi, eta, amplitude: None, flag: ScanFlag::Threshold }
                }
                Err(_) => ScanPoint { e, xi, eta, amplitude: None, flag: ScanFlag::Degenerate },
            }
        })
        .collect())
}

/// Resonance energies keyed by their index: (N, E_N) with
/// E_N = sqrt(m^2 + xi_N^2/a^2) and xi_N^2 = (N+1)^2 pi^2/4 + j*upsilon^2,
/// for N = 0..=n_max.
///
/// T = 1 exactly at these energies (sin(2 eta) = 0). N values with a negative
/// xi_N^2 are skipped; energies are strictly increasing.
pub fn resonance_table(n_max: u32, spec: &PotentialSpec) -> Vec<(u32, f64)> {
    let (j, upsilon) = derived_params(spec);
    let (a, m) = (spec.a(), spec.m());
    (0..=n_max)
        .filter_map(|n| {
            let half_waves = (n + 1) as f64;
            let xi2 = half_waves * half_waves * PI * PI / 4.0 + j * upsilon * upsilon;
            if xi2 < 0.0 {
                None
            } else {
                Some((n, (m * m + xi2 / (a * a)).sqrt()))
            }
        })
        .collect()
}

/// The resonance energies alone, in increasing order.
pub fn resonance_energies(n_max: u32, spec: &PotentialSpec) -> Vec<f64> {
    resonance_table(n_max, spec).into_iter().map(|(_, e)| e).collect()
}

//! Independent numerical verification of the closed-form results.
//!
//! Three routes that share nothing with the amplitude algebra except the
//! kinematic definitions:
//!
//! * a 2x2 transfer-matrix assembly of the interface conditions,
//! * direct fixed-step RK4 integration of the effective equation with the
//!   derivative jumps applied exactly at the borders,
//! * a two-sided shooting method for bound states (Wronskian matching at
//!   x = 0).
//!
//! The deltas are never smoothed into narrow bumps: the jump condition is the
//! regularization, so there is no extra convergence parameter. The outer
//! integration window is fixed at 3a per side; outside the support the
//! solution is exactly a plane wave or exponential, so the window length only
//! affects the projector, not the physics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{delta_strengths, derived_params, eta_of_xi, xi_of_energy, PotentialSpec, Sector};

const C1: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Piecewise data of the three-region problem: squared wavenumbers per unit
/// length outside/inside and the border jump coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionModel {
    /// (-a, +a), strictly increasing.
    pub boundaries: (f64, f64),
    pub exterior_k2: Complex64,
    pub interior_k2: Complex64,
    /// (g_minus, g_plus) from `delta_strengths`.
    pub jumps: (f64, f64),
}

impl RegionModel {
    /// Model at a propagating energy (|E| > m).
    pub fn scattering(e: f64, spec: &PotentialSpec, sector: Sector) -> Result<Self> {
        if e.abs() <= spec.m() {
            return Err(Error::Threshold { e, m: spec.m() });
        }
        let a = spec.a();
        let xi = xi_of_energy(e, spec);
        let (j, upsilon) = derived_params(spec);
        let eta = eta_of_xi(xi, j, upsilon);
        Ok(Self {
            boundaries: (-a, a),
            exterior_k2: xi * xi / (a * a),
            interior_k2: eta * eta / (a * a),
            jumps: delta_strengths(spec, sector),
        })
    }

    /// Model at a bound trial point y = |xi| in (0, a*m).
    pub fn bound(y: f64, spec: &PotentialSpec, sector: Sector) -> Result<Self> {
        let a = spec.a();
        if !(y > 0.0 && y < a * spec.m()) {
            return Err(Error::Domain(format!(
                "bound trial y must lie in (0, a*m), got {y}"
            )));
        }
        let (j, upsilon) = derived_params(spec);
        let xi = Complex64::new(0.0, y);
        let eta = eta_of_xi(xi, j, upsilon);
        Ok(Self {
            boundaries: (-a, a),
            exterior_k2: xi * xi / (a * a),
            interior_k2: eta * eta / (a * a),
            jumps: delta_strengths(spec, sector),
        })
    }
}

// ---------------------------------------------------------------------------
// transfer matrix
// ---------------------------------------------------------------------------

/// Column-major 2x2 complex matrix, just enough for interface composition.
#[derive(Debug, Clone, Copy)]
struct Mat2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mat2 {
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    fn inverse(self) -> Result<Mat2> {
        let det = self.a * self.d - self.b * self.c;
        if det.norm() == 0.0 {
            return Err(Error::SingularSystem);
        }
        Ok(Mat2 {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        })
    }
}

/// Basis matrix of (phi, phi') over coefficients of e^{+ikx}, e^{-ikx} at x.
fn basis(k: Complex64, x: f64) -> Mat2 {
    let p = (I * k * x).exp();
    let q = (-I * k * x).exp();
    Mat2 { a: p, b: q, c: I * k * p, d: -I * k * q }
}

/// Derivative-jump matrix: phi unchanged, phi' increased by g*phi.
fn jump(g: f64) -> Mat2 {
    Mat2 { a: C1, b: Complex64::new(0.0, 0.0), c: Complex64::new(g, 0.0), d: C1 }
}

/// Scattering amplitudes assembled from 2x2 interface matrices: value
/// continuity plus the derivative jump at each border, interior plane-wave
/// propagation over the width 2a, unit incidence from the left.
pub fn transfer_matrix_amplitudes(
    e: f64,
    spec: &PotentialSpec,
    sector: Sector,
) -> Result<(Complex64, Complex64)> {
    let model = RegionModel::scattering(e, spec, sector)?;
    let (xl, xr) = model.boundaries;
    let k_out = model.exterior_k2.sqrt();
    let k_in = sqrt_principal_positive_imag(model.interior_k2);
    if k_out.norm() == 0.0 || k_in.norm() == 0.0 {
        return Err(Error::SingularSystem);
    }
    // coefficients right of an interface in terms of coefficients left of it
    let across_left = basis(k_in, xl).inverse()?.mul(jump(model.jumps.0)).mul(basis(k_out, xl));
    let across_right = basis(k_out, xr).inverse()?.mul(jump(model.jumps.1)).mul(basis(k_in, xr));
    let q = across_right.mul(across_left);
    // (t, 0)^T = Q (1, r)^T
    if q.d.norm() == 0.0 {
        return Err(Error::SingularSystem);
    }
    let r = -q.c / q.d;
    let t = q.a + q.b * r;
    Ok((r, t))
}

/// Principal square root pushed onto the positive imaginary axis for
/// negative real input (matches the kinematic branch convention).
fn sqrt_principal_positive_imag(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

// ---------------------------------------------------------------------------
// direct integration
// ---------------------------------------------------------------------------

/// Sampled wavefunction with its derivative. Border points appear twice,
/// once per side, so the derivative jump is visible in the data.
#[derive(Debug, Clone)]
pub struct WavefunctionTrace {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

impl WavefunctionTrace {
    /// Indices i where grid[i] == grid[i+1] (the border double points).
    pub fn border_pairs(&self) -> Vec<usize> {
        (0..self.grid.len().saturating_sub(1))
            .filter(|&i| self.grid[i] == self.grid[i + 1])
            .collect()
    }
}

/// Classical fixed-step RK4 for phi'' = -k2 * phi over [x0, x1] (either
/// direction), recording every new point.
fn rk4_segment(
    state: (Complex64, Complex64),
    k2: Complex64,
    x0: f64,
    x1: f64,
    n: usize,
    record: &mut dyn FnMut(f64, Complex64, Complex64),
) -> (Complex64, Complex64) {
    let h = (x1 - x0) / n as f64;
    let (mut phi, mut dphi) = state;
    let f = |p: Complex64, dp: Complex64| (dp, -k2 * p);
    for i in 1..=n {
        let (k1p, k1d) = f(phi, dphi);
        let (k2p, k2d) = f(phi + 0.5 * h * k1p, dphi + 0.5 * h * k1d);
        let (k3p, k3d) = f(phi + 0.5 * h * k2p, dphi + 0.5 * h * k2d);
        let (k4p, k4d) = f(phi + h * k3p, dphi + h * k3d);
        phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        // pin the endpoint so borders land exactly
        let x = if i == n { x1 } else { x0 + h * i as f64 };
        record(x, phi, dphi);
    }
    (phi, dphi)
}

/// Integrates the effective equation from x = +3a (seeded as a pure
/// transmitted plane wave with unit amplitude) leftward to x = -3a, applying
/// the derivative jump exactly at each border.
pub fn integrate_effective(
    e: f64,
    spec: &PotentialSpec,
    sector: Sector,
    step: f64,
) -> Result<WavefunctionTrace> {
    let a = spec.a();
    if e.abs() < spec.m() {
        return Err(Error::BoundRegime(e));
    }
    if !(step > 0.0) || step > a / 100.0 {
        return Err(Error::StepSize { step, max: a / 100.0 });
    }
    let model = RegionModel::scattering(e, spec, sector)?;
    let xi = xi_of_energy(e, spec);
    let k_out = xi / a;

    // equal-length segments keep the borders on the grid exactly
    let n = (2.0 * a / step).ceil() as usize;

    let mut xs = Vec::with_capacity(3 * n + 5);
    let mut vals = Vec::with_capacity(3 * n + 5);
    let mut ders = Vec::with_capacity(3 * n + 5);
    let mut record = |x: f64, p: Complex64, dp: Complex64| {
        xs.push(x);
        vals.push(p);
        ders.push(dp);
    };

    // seed: phi = e^{i xi x / a} at x = 3a
    let mut phi = (I * xi * 3.0).exp();
    let mut dphi = I * k_out * phi;
    record(3.0 * a, phi, dphi);

    (phi, dphi) = rk4_segment((phi, dphi), model.exterior_k2, 3.0 * a, a, n, &mut record);
    // crossing x = +a from the right: phi'(left) = phi'(right) - g_plus*phi
    dphi -= Complex64::new(model.jumps.1, 0.0) * phi;
    record(a, phi, dphi);

    (phi, dphi) = rk4_segment((phi, dphi), model.interior_k2, a, -a, n, &mut record);
    dphi -= Complex64::new(model.jumps.0, 0.0) * phi;
    record(-a, phi, dphi);

    rk4_segment((phi, dphi), model.exterior_k2, -a, -3.0 * a, n, &mut record);

    xs.reverse();
    vals.reverse();
    ders.reverse();
    Ok(WavefunctionTrace { grid: xs, values: vals, derivatives: ders })
}

/// Reads (r, t) off a scattering trace by projecting the x < -a portion onto
/// e^{+-i xi x / a}, using value/derivative pairs point by point, with the
/// transmitted amplitude seeded at 1.
///
/// The paired projection stays well conditioned even when the outer window
/// is shorter than one wavelength; the solve only degenerates as xi -> 0.
pub fn extract_amplitudes(
    trace: &WavefunctionTrace,
    xi: f64,
    a: f64,
) -> Result<(Complex64, Complex64)> {
    if !(xi.is_finite() && a > 0.0) || xi <= 0.0 {
        return Err(Error::IllConditionedProjection(format!(
            "projection needs a positive propagating xi, got {xi}"
        )));
    }
    let k = Complex64::new(xi / a, 0.0);
    if xi * 2.0 < 1e-9 {
        return Err(Error::IllConditionedProjection(format!(
            "outer window spans {:.3e} wavelengths; the coefficient system is singular",
            xi / std::f64::consts::PI
        )));
    }
    let mut a_sum = Complex64::new(0.0, 0.0);
    let mut b_sum = Complex64::new(0.0, 0.0);
    let mut count = 0usize;
    for i in 0..trace.grid.len() {
        let x = trace.grid[i];
        if x >= -a {
            break; // the grid ascends; everything from here is not outer-left
        }
        let (phi, dphi) = (trace.values[i], trace.derivatives[i]);
        let plus = (I * k * x).exp();
        let minus = (-I * k * x).exp();
        a_sum += 0.5 * (phi + dphi / (I * k)) / plus;
        b_sum += 0.5 * (phi - dphi / (I * k)) / minus;
        count += 1;
    }
    if count == 0 {
        return Err(Error::IllConditionedProjection("no samples left of -a".into()));
    }
    let a_coef = a_sum / count as f64;
    let b_coef = b_sum / count as f64;
    if a_coef.norm() == 0.0 || !a_coef.is_finite() {
        return Err(Error::IllConditionedProjection("vanishing incident amplitude".into()));
    }
    Ok((b_coef / a_coef, C1 / a_coef))
}

// ---------------------------------------------------------------------------
// shooting
// ---------------------------------------------------------------------------

/// steps per segment of length 2a in the shooting integrator
const SHOOT_STEPS: usize = 1024;

/// Wronskian mismatch at x = 0 of the two decaying solutions for a trial y.
fn shooting_mismatch(y: f64, spec: &PotentialSpec, sector: Sector) -> Result<f64> {
    let a = spec.a();
    let model = RegionModel::bound(y, spec, sector)?;
    let kappa = y / a;
    let mut sink = |_: f64, _: Complex64, _: Complex64| {};

    // left solution ~ e^{+y x/a}, normalized to 1 at x = -3a
    let mut phi = C1;
    let mut dphi = Complex64::new(kappa, 0.0);
    (phi, dphi) = rk4_segment((phi, dphi), model.exterior_k2, -3.0 * a, -a, SHOOT_STEPS, &mut sink);
    dphi += Complex64::new(model.jumps.0, 0.0) * phi; // crossing -a rightward
    let (l, dl) = rk4_segment((phi, dphi), model.interior_k2, -a, 0.0, SHOOT_STEPS / 2, &mut sink);

    // right solution ~ e^{-y x/a}, normalized to 1 at x = +3a
    let mut phi = C1;
    let mut dphi = Complex64::new(-kappa, 0.0);
    (phi, dphi) = rk4_segment((phi, dphi), model.exterior_k2, 3.0 * a, a, SHOOT_STEPS, &mut sink);
    dphi -= Complex64::new(model.jumps.1, 0.0) * phi; // crossing +a leftward
    let (r, dr) = rk4_segment((phi, dphi), model.interior_k2, a, 0.0, SHOOT_STEPS / 2, &mut sink);

    Ok((l * dr - dl * r).re)
}

/// Bound states by two-sided shooting: brackets sign changes of the
/// Wronskian mismatch over y in (eps, a*m - eps) and bisects each.
/// Returns (y, E) with E = +sqrt(m^2 - (y/a)^2); the -E partner is implied.
pub fn shooting_bound_states(
    spec: &PotentialSpec,
    sector: Sector,
    y_grid: usize,
) -> Result<Vec<(f64, f64)>> {
    if y_grid < 100 {
        return Err(Error::Domain(format!(
            "shooting search needs at least 100 grid points, got {y_grid}"
        )));
    }
    let am = spec.a() * spec.m();
    let lo = am * 1e-6;
    let hi = am * (1.0 - 1e-6);
    let w = |y: f64| shooting_mismatch(y, spec, sector).expect("window keeps y in (0, a*m)");

    let mut roots = Vec::new();
    let step = (hi - lo) / (y_grid as f64 - 1.0);
    let mut y_prev = lo;
    let mut w_prev = w(lo);
    for i in 1..y_grid {
        let y = lo + step * i as f64;
        let wy = w(y);
        if w_prev * wy < 0.0 {
            let (mut blo, mut bhi) = (y_prev, y);
            let mut w_lo = w_prev;
            while bhi - blo > 1e-12 * am {
                let mid = 0.5 * (blo + bhi);
                let wm = w(mid);
                if wm == 0.0 {
                    blo = mid;
                    bhi = mid;
                    break;
                }
                if wm.signum() == w_lo.signum() {
                    blo = mid;
                    w_lo = wm;
                } else {
                    bhi = mid;
                }
            }
            let y_root = 0.5 * (blo + bhi);
            let kappa = y_root / spec.a();
            let e = (spec.m() * spec.m() - kappa * kappa).max(0.0).sqrt();
            roots.push((y_root, e));
        }
        y_prev = y;
        w_prev = wy;
    }
    Ok(roots)
}

/// Confirms pole-function levels against an independent shooting run,
/// filling each level's `oracle_gap` with the distance to the nearest
/// shooting energy. A level without any shooting partner keeps `None`.
pub fn confirm_levels(
    levels: &mut [crate::bound::BoundLevel],
    spec: &PotentialSpec,
    sector: Sector,
    y_grid: usize,
) -> Result<()> {
    let shots = shooting_bound_states(spec, sector, y_grid)?;
    for level in levels.iter_mut() {
        level.oracle_gap = shots
            .iter()
            .map(|&(_, e)| (e - level.e_pair.0).abs())
            .min_by(f64::total_cmp);
    }
    Ok(())
}

/// Glued bound-state wavefunction for a converged root y: the two decaying
/// solutions, the right branch rescaled to match the left at x = 0.
pub fn bound_wavefunction(y: f64, spec: &PotentialSpec, sector: Sector) -> Result<WavefunctionTrace> {
    let a = spec.a();
    let model = RegionModel::bound(y, spec, sector)?;
    let kappa = y / a;

    let mut xs = Vec::new();
    let mut vals = Vec::new();
    let mut ders = Vec::new();
    {
        let mut record = |x: f64, p: Complex64, dp: Complex64| {
            xs.push(x);
            vals.push(p);
            ders.push(dp);
        };
        let mut phi = C1;
        let mut dphi = Complex64::new(kappa, 0.0);
        record(-3.0 * a, phi, dphi);
        (phi, dphi) =
            rk4_segment((phi, dphi), model.exterior_k2, -3.0 * a, -a, SHOOT_STEPS, &mut record);
        dphi += Complex64::new(model.jumps.0, 0.0) * phi;
        record(-a, phi, dphi);
        rk4_segment((phi, dphi), model.interior_k2, -a, 0.0, SHOOT_STEPS / 2, &mut record);
    }
    let left_end = (*vals.last().unwrap(), *ders.last().unwrap());

    let mut xs_r = Vec::new();
    let mut vals_r = Vec::new();
    let mut ders_r = Vec::new();
    {
        let mut record = |x: f64, p: Complex64, dp: Complex64| {
            xs_r.push(x);
            vals_r.push(p);
            ders_r.push(dp);
        };
        let mut phi = C1;
        let mut dphi = Complex64::new(-kappa, 0.0);
        record(3.0 * a, phi, dphi);
        (phi, dphi) =
            rk4_segment((phi, dphi), model.exterior_k2, 3.0 * a, a, SHOOT_STEPS, &mut record);
        dphi -= Complex64::new(model.jumps.1, 0.0) * phi;
        record(a, phi, dphi);
        rk4_segment((phi, dphi), model.interior_k2, a, 0.0, SHOOT_STEPS / 2, &mut record);
    }
    // match the branches at x = 0 (value if possible, slope otherwise); the
    // x = 0 sample is kept from both sides so the matching quality is
    // visible in the trace, like the border double points
    let right_end = (*vals_r.last().unwrap(), *ders_r.last().unwrap());
    let scale = if right_end.0.norm() > 1e-12 * left_end.0.norm().max(1.0) {
        left_end.0 / right_end.0
    } else {
        left_end.1 / right_end.1
    };
    for ((x, v), d) in xs_r.into_iter().zip(vals_r).zip(ders_r).rev() {
        xs.push(x);
        vals.push(v * scale);
        ders.push(d * scale);
    }
    Ok(WavefunctionTrace { grid: xs, values: vals, derivatives: ders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Polarization;

    fn spec(a: f64, v0: f64, b0: f64, b1: f64, m: f64) -> PotentialSpec {
        PotentialSpec::new(a, v0, b0, b1, m).unwrap()
    }

    fn fig1_spec() -> PotentialSpec {
        spec(1.0, 2.0, 0.0, 1.0, 1.0)
    }

    fn fig2_spec() -> PotentialSpec {
        spec(1.0, 2.0, 2f64.sqrt(), 1.0, 1.0)
    }

    #[test]
    fn region_model_invariants() {
        let s = fig2_spec();
        for e in [1.5, 3.0, -2.0] {
            let model = RegionModel::scattering(e, &s, Sector::Scalar).unwrap();
            assert!(model.boundaries.0 < model.boundaries.1);
            let diff = model.exterior_k2 - model.interior_k2;
            let want = s.j() * s.v0() * s.v0();
            assert!((diff.re - want).abs() < 1e-12 * (1.0 + want.abs()) && diff.im == 0.0);
        }
        assert!(RegionModel::scattering(0.5, &s, Sector::Scalar).is_err());
        assert!(RegionModel::bound(0.5, &s, Sector::Scalar).is_ok());
        assert!(RegionModel::bound(1.5, &s, Sector::Scalar).is_err());
    }

    #[test]
    fn transfer_matrix_free_case() {
        let s = spec(1.0, 0.0, 0.0, 1.0, 1.0);
        let (r, t) = transfer_matrix_amplitudes(2.0, &s, Sector::Scalar).unwrap();
        assert!(r.norm() < 1e-13);
        assert!((t - C1).norm() < 1e-13);
    }

    /// Frozen against the same independent 40-digit interface solve used for
    /// the closed-form regression values.
    #[test]
    fn transfer_matrix_frozen_reference() {
        let s = fig1_spec();
        let (r, t) = transfer_matrix_amplitudes(1.2, &s, Sector::Scalar).unwrap();
        assert!((r - Complex64::new(-0.64105332014803882, 0.76669548978275555)).norm() < 1e-12);
        assert!((t - Complex64::new(-0.015500152710236493, -0.031439019385406486)).norm() < 1e-12);
        let (r, t) = transfer_matrix_amplitudes(3.0, &s, Sector::Scalar).unwrap();
        assert!((r - Complex64::new(0.17809708456443922, -0.35114204136384204)).norm() < 1e-12);
        assert!((t - Complex64::new(-0.016756721714096634, -0.91907557226480411)).norm() < 1e-12);
    }

    #[test]
    fn transfer_matrix_resonance() {
        // first resonance of the v=2, j=1 configuration
        let s = fig1_spec();
        let e0 = 2.7326545885406629;
        let (_, t) = transfer_matrix_amplitudes(e0, &s, Sector::Scalar).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_rejects_bad_input() {
        let s = fig1_spec();
        assert!(matches!(
            integrate_effective(0.5, &s, Sector::Scalar, 1e-3),
            Err(Error::BoundRegime(_))
        ));
        assert!(matches!(
            integrate_effective(1.5, &s, Sector::Scalar, 0.5),
            Err(Error::StepSize { .. })
        ));
    }

    #[test]
    fn free_trace_is_plane_wave() {
        let s = spec(1.0, 0.0, 0.0, 1.0, 1.0);
        let trace = integrate_effective(2.0, &s, Sector::Scalar, 1e-3).unwrap();
        let xi = xi_of_energy(2.0, &s).re;
        let (r, t) = extract_amplitudes(&trace, xi, 1.0).unwrap();
        assert!(r.norm() < 1e-9, "r = {r}");
        assert!((t - C1).norm() < 1e-9, "t = {t}");
    }

    #[test]
    fn trace_respects_jumps_and_continuity() {
        let s = fig1_spec();
        let trace = integrate_effective(1.7, &s, Sector::Scalar, 1e-3).unwrap();
        let pairs = trace.border_pairs();
        assert_eq!(pairs.len(), 2);
        let (gm, gp) = delta_strengths(&s, Sector::Scalar);
        for &i in &pairs {
            // identical value on both sides of the border
            assert_eq!(trace.values[i], trace.values[i + 1]);
            let g = if trace.grid[i] < 0.0 { gm } else { gp };
            let jump = trace.derivatives[i + 1] - trace.derivatives[i];
            let want = Complex64::new(g, 0.0) * trace.values[i];
            assert!((jump - want).norm() < 1e-8 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn extraction_examples() {
        // pure right-mover: r = 0
        let k = 0.8;
        let grid: Vec<f64> = (0..200).map(|i| -3.0 + i as f64 * 0.01).collect();
        let values: Vec<Complex64> = grid.iter().map(|&x| (I * k * x).exp()).collect();
        let derivatives: Vec<Complex64> = values.iter().map(|&v| I * k * v).collect();
        let trace = WavefunctionTrace { grid: grid.clone(), values, derivatives };
        let (r, _) = extract_amplitudes(&trace, k, 1.0).unwrap();
        assert!(r.norm() < 1e-12);

        // standing wave A = B: |r| = 1
        let values: Vec<Complex64> =
            grid.iter().map(|&x| (I * k * x).exp() + (-I * k * x).exp()).collect();
        let derivatives: Vec<Complex64> =
            grid.iter().map(|&x| I * k * ((I * k * x).exp() - (-I * k * x).exp())).collect();
        let trace = WavefunctionTrace { grid, values, derivatives };
        let (r, _) = extract_amplitudes(&trace, k, 1.0).unwrap();
        assert!((r.norm() - 1.0).abs() < 1e-12);

        // xi <= 0 is rejected
        assert!(extract_amplitudes(&trace, 0.0, 1.0).is_err());
    }

    #[test]
    fn extracted_unitarity() {
        let s = fig1_spec();
        for e in [1.3, 1.9, 2.7, 4.0] {
            let trace = integrate_effective(e, &s, Sector::Scalar, 5e-4).unwrap();
            let xi = xi_of_energy(e, &s).re;
            let (r, t) = extract_amplitudes(&trace, xi, 1.0).unwrap();
            assert!(
                (r.norm_sqr() + t.norm_sqr() - 1.0).abs() < 1e-8,
                "E = {e}: R+T = {}",
                r.norm_sqr() + t.norm_sqr()
            );
        }
    }

    #[test]
    fn ode_matches_transfer_matrix() {
        let s = fig1_spec();
        for e in [1.2, 2.0, 3.0] {
            let (r_tm, t_tm) = transfer_matrix_amplitudes(e, &s, Sector::Scalar).unwrap();
            let trace = integrate_effective(e, &s, Sector::Scalar, 1e-4).unwrap();
            let xi = xi_of_energy(e, &s).re;
            let (r, t) = extract_amplitudes(&trace, xi, 1.0).unwrap();
            assert!((r - r_tm).norm() < 1e-8, "E = {e}: {:e}", (r - r_tm).norm());
            assert!((t - t_tm).norm() < 1e-8, "E = {e}: {:e}", (t - t_tm).norm());
        }
    }

    #[test]
    fn shooting_finds_figure2_level() {
        let roots = shooting_bound_states(&fig2_spec(), Sector::Scalar, 600).unwrap();
        assert_eq!(roots.len(), 1);
        let (y, e) = roots[0];
        assert!((y - 0.7166385933602056).abs() < 1e-8, "y = {y}");
        assert!((e - 0.6974447121505087).abs() < 1e-8, "E = {e}");
    }

    #[test]
    fn shooting_empty_cases() {
        // no potential
        let s = spec(1.0, 0.0, 2f64.sqrt(), 1.0, 1.0);
        assert!(shooting_bound_states(&s, Sector::Scalar, 400).unwrap().is_empty());
        // j = 1: repulsive discriminant
        let s = fig1_spec();
        assert!(shooting_bound_states(&s, Sector::Scalar, 400).unwrap().is_empty());
    }

    #[test]
    fn shooting_sector_independent() {
        for p in [Polarization::Longitudinal, Polarization::Transverse] {
            let roots = shooting_bound_states(&fig2_spec(), Sector::Vector(p), 400).unwrap();
            assert_eq!(roots.len(), 1);
            assert!((roots[0].0 - 0.7166385933602056).abs() < 1e-8);
        }
    }

    #[test]
    fn confirm_levels_fills_oracle_gap() {
        let s = fig2_spec();
        let mut levels = crate::bound::find_bound_states(&s, Sector::Scalar, 1000).unwrap();
        assert_eq!(levels.len(), 1);
        assert!(levels[0].oracle_gap.is_none());
        confirm_levels(&mut levels, &s, Sector::Scalar, 800).unwrap();
        assert!(levels[0].oracle_gap.unwrap() < 1e-8);
    }

    #[test]
    fn bound_trace_is_glued_continuously() {
        let trace = bound_wavefunction(0.7166385933602056, &fig2_spec(), Sector::Scalar).unwrap();
        assert!(trace.grid.windows(2).all(|w| w[0] <= w[1]));
        // values agree at the glue point by construction, and the slopes
        // agree because y is a converged eigenvalue
        let mid = trace.grid.iter().position(|&x| x == 0.0).unwrap();
        assert_eq!(trace.grid[mid + 1], 0.0);
        assert!((trace.values[mid] - trace.values[mid + 1]).norm() < 1e-12);
        let (dl, dr) = (trace.derivatives[mid], trace.derivatives[mid + 1]);
        let scale = dl.norm().max(1.0);
        assert!((dl - dr).norm() < 1e-6 * scale, "slope mismatch {}", (dl - dr).norm());
    }
}

//! Reconstruction of the dependent DKP spinor components from the solved
//! first component, and the conserved currents.
//!
//! Scalar sector: phi2 = (E + i A0) phi1 / m, phi3 = i (phi1' + A1 phi1) / m,
//! phi4 = phi5 = 0. Vector sector, per polarization sigma: the same formulas
//! with A_mu -> sigma A_mu (and the eighth component zero).
//!
//! The potential profile g(x) is -1 inside (-a, a) and 0 outside, so
//! A_mu = -b_mu V0 inside. g has no pointwise value at the borders; samples
//! at x = +-a are rejected. Components are recomputed on demand from
//! (phi1, phi1') rather than stored along traces, since they are
//! algebraically dependent.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{PotentialSpec, Sector};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spinor components at one point. In the vector sector phi1/phi2/phi3 play
/// the roles of phi_I/phi_II/phi_III for the sample's polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub x: f64,
    pub sector: Sector,
    pub phi1: Complex64,
    pub dphi1: Complex64,
    pub phi2: Complex64,
    pub phi3: Complex64,
}

/// Charge density J0 and current J1 at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentSample {
    pub x: f64,
    pub j0: f64,
    pub j1: f64,
}

/// A_mu at x, by region: (-b0*V0, -b1*V0) inside, (0, 0) outside.
fn potential_at(x: f64, spec: &PotentialSpec) -> Result<(f64, f64)> {
    let a = spec.a();
    if x == a || x == -a {
        return Err(Error::BorderEvaluation(x));
    }
    if x.abs() < a {
        Ok((-spec.b0() * spec.v0(), -spec.b1() * spec.v0()))
    } else {
        Ok((0.0, 0.0))
    }
}

/// Fills the dependent components from (phi1, phi1') at x.
pub fn reconstruct(
    x: f64,
    phi1: Complex64,
    dphi1: Complex64,
    e: f64,
    spec: &PotentialSpec,
    sector: Sector,
) -> Result<SpinorSample> {
    let (a0, a1) = potential_at(x, spec)?;
    let s = sector.delta_sign(); // sigma for the vector sector, 1 for scalar
    let m = spec.m();
    let phi2 = (Complex64::new(e, 0.0) + I * (s * a0)) * phi1 / m;
    let phi3 = I * (dphi1 + Complex64::new(s * a1, 0.0) * phi1) / m;
    Ok(SpinorSample { x, sector, phi1, dphi1, phi2, phi3 })
}

/// Conserved currents of one sample: J0 = (E/m)|phi1|^2,
/// J1 = Im(phi1* dphi1)/m. For the vector sector this is the contribution of
/// the sample's polarization; sum over both with `sum_polarizations`.
pub fn current(sample: &SpinorSample, e: f64, m: f64) -> CurrentSample {
    CurrentSample {
        x: sample.x,
        j0: e / m * sample.phi1.norm_sqr(),
        j1: (sample.phi1.conj() * sample.dphi1).im / m,
    }
}

/// Sigma-summed vector-sector current from the two polarization samples.
pub fn sum_polarizations(plus: &CurrentSample, minus: &CurrentSample) -> CurrentSample {
    CurrentSample { x: plus.x, j0: plus.j0 + minus.j0, j1: plus.j1 + minus.j1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Polarization;

    fn spec(a: f64, v0: f64, b0: f64, b1: f64, m: f64) -> PotentialSpec {
        PotentialSpec::new(a, v0, b0, b1, m).unwrap()
    }

    const C1: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn outside_region_components() {
        let s = spec(1.0, 2.0, 0.7, 1.0, 1.0);
        let d = Complex64::new(0.3, -0.2);
        let sample = reconstruct(2.5, C1, d, 1.0, &s, Sector::Scalar).unwrap();
        // A vanishes outside: phi2 = (E/m) phi1 = phi1 at E = m
        assert_eq!(sample.phi2, C1);
        assert_eq!(sample.phi3, I * d);
    }

    #[test]
    fn inside_region_no_time_component() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        let sample = reconstruct(0.3, C1, Complex64::new(0.0, 0.0), 1.7, &s, Sector::Scalar).unwrap();
        // b0 = 0: phi2 is a real multiple of phi1
        assert_eq!(sample.phi2, Complex64::new(1.7, 0.0));
        // A1 = -b1 V0 = -2 inside
        assert_eq!(sample.phi3, I * Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn borders_are_rejected() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        assert!(matches!(
            reconstruct(1.0, C1, C1, 1.5, &s, Sector::Scalar),
            Err(Error::BorderEvaluation(_))
        ));
        assert!(reconstruct(-1.0, C1, C1, 1.5, &s, Sector::Scalar).is_err());
    }

    #[test]
    fn plane_wave_current() {
        // phi1 = e^{i xi x/a} with a = m = 1, xi = 1: J1 = 1
        let s = spec(1.0, 0.0, 0.0, 1.0, 1.0);
        let x = 3.0;
        let phi1 = (I * Complex64::new(x, 0.0)).exp();
        let sample = reconstruct(x, phi1, I * phi1, 2f64.sqrt(), &s, Sector::Scalar).unwrap();
        let cur = current(&sample, 2f64.sqrt(), 1.0);
        assert!((cur.j1 - 1.0).abs() < 1e-15);
        assert!(cur.j0 > 0.0);
    }

    #[test]
    fn real_wavefunction_carries_no_current() {
        let s = spec(1.0, 2.0, 2f64.sqrt(), 1.0, 1.0);
        let sample =
            reconstruct(0.2, Complex64::new(0.8, 0.0), Complex64::new(-0.1, 0.0), 0.7, &s, Sector::Scalar)
                .unwrap();
        assert_eq!(current(&sample, 0.7, 1.0).j1, 0.0);
    }

    #[test]
    fn j0_sign_follows_energy() {
        let s = spec(1.0, 2.0, 2f64.sqrt(), 1.0, 1.0);
        for e in [0.7, -0.7] {
            let sample = reconstruct(0.2, C1, C1, e, &s, Sector::Scalar).unwrap();
            assert_eq!(current(&sample, e, 1.0).j0.signum(), e.signum());
        }
    }

    #[test]
    fn vector_components_match_scalar_with_flipped_b1() {
        let s = spec(1.0, 2.0, 0.7, 1.0, 1.0);
        let phi1 = Complex64::new(0.6, 0.4);
        let d = Complex64::new(-0.2, 0.9);
        // sigma = -1 flips the sign of both A0 and A1; the scalar analogue
        // flips b1 only, so phi3 agrees while phi2 differs through A0
        let vec = reconstruct(0.1, phi1, d, 1.3, &s, Sector::Vector(Polarization::Transverse)).unwrap();
        let scal = reconstruct(0.1, phi1, d, 1.3, &s.with_b1_flipped(), Sector::Scalar).unwrap();
        assert_eq!(vec.phi3, scal.phi3);
        // and the currents are identical since they involve phi1 only
        let cv = current(&vec, 1.3, 1.0);
        let cs = current(&scal, 1.3, 1.0);
        assert_eq!(cv.j0, cs.j0);
        assert_eq!(cv.j1, cs.j1);
    }

    #[test]
    fn polarization_sum() {
        let plus = CurrentSample { x: 0.0, j0: 1.5, j1: 0.25 };
        let minus = CurrentSample { x: 0.0, j0: 1.5, j1: 0.25 };
        let total = sum_polarizations(&plus, &minus);
        assert_eq!(total.j0, 3.0);
        assert_eq!(total.j1, 0.5);
    }
}

//! Physical configuration, dimensionless reduction and wavenumber kinematics.
//!
//! Internally everything is computed in the dimensionless variables
//! `xi = a*sqrt(E^2 - m^2)`, `eta = sqrt(xi^2 - j*upsilon^2)` and
//! `upsilon = a*V0`, with the half-width `a` and the mass `m` kept only for
//! unit conversion at the API boundary.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square well/barrier configuration: A_mu(x) = b_mu * V0 * g(x) on (-a, a),
/// with g = -1 inside and 0 outside.
///
/// `V0 > 0` is the well convention, `V0 < 0` the barrier. The discriminant
/// `j = b1^2 - b0^2` and the strength `upsilon = a*V0` are always recomputed,
/// never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    a: f64,
    v0: f64,
    b0: f64,
    b1: f64,
    m: f64,
}

impl PotentialSpec {
    pub fn new(a: f64, v0: f64, b0: f64, b1: f64, m: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidSpec(format!("half-width a must be positive, got {a}")));
        }
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidSpec(format!("mass m must be positive, got {m}")));
        }
        for (name, x) in [("v0", v0), ("b0", b0), ("b1", b1)] {
            if !x.is_finite() {
                return Err(Error::InvalidSpec(format!("{name} must be finite, got {x}")));
            }
        }
        Ok(Self { a, v0, b0, b1, m })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// Coupling discriminant j = b1^2 - b0^2. Bound states require j < 0.
    pub fn j(&self) -> f64 {
        self.b1 * self.b1 - self.b0 * self.b0
    }

    /// Dimensionless potential strength upsilon = a*V0.
    pub fn upsilon(&self) -> f64 {
        self.a * self.v0
    }

    /// Same configuration with the sign of b1 flipped.
    pub fn with_b1_flipped(&self) -> Self {
        Self { b1: -self.b1, ..*self }
    }
}

/// Both derived couplings at once: (j, upsilon).
pub fn derived_params(spec: &PotentialSpec) -> (f64, f64) {
    (spec.j(), spec.upsilon())
}

/// Polarization label of vector boson states: sigma = +1 longitudinal,
/// sigma = -1 transverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Longitudinal,
    Transverse,
}

impl Polarization {
    pub fn sigma(self) -> f64 {
        match self {
            Polarization::Longitudinal => 1.0,
            Polarization::Transverse => -1.0,
        }
    }

    pub fn from_sigma(sigma: i32) -> Result<Self> {
        match sigma {
            1 => Ok(Polarization::Longitudinal),
            -1 => Ok(Polarization::Transverse),
            other => Err(Error::Domain(format!("sigma must be +1 or -1, got {other}"))),
        }
    }
}

/// Spin sector of the DKP spinor. The polarization only flips the sign of
/// the border delta terms; every observable ends up sigma-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Scalar,
    Vector(Polarization),
}

impl Sector {
    /// Sign s multiplying b1 in the delta-linear terms (s = 1 for the scalar
    /// sector, s = sigma for the vector sector).
    pub fn delta_sign(self) -> f64 {
        match self {
            Sector::Scalar => 1.0,
            Sector::Vector(p) => p.sigma(),
        }
    }
}

/// Energy regime of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// |E| >= m: xi real and nonnegative.
    Scattering,
    /// |E| < m: xi = i*|xi| with positive imaginary part.
    Bound,
}

/// Energy with its derived dimensionless wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub e: f64,
    pub xi: Complex64,
    pub eta: Complex64,
    pub regime: Regime,
}

impl Kinematics {
    pub fn for_energy(e: f64, spec: &PotentialSpec) -> Self {
        let xi = xi_of_energy(e, spec);
        let (j, upsilon) = derived_params(spec);
        let eta = eta_of_xi(xi, j, upsilon);
        let regime = if e.abs() >= spec.m() { Regime::Scattering } else { Regime::Bound };
        Self { e, xi, eta, regime }
    }
}

/// Outer dimensionless wavenumber xi = a*sqrt(E^2 - m^2).
///
/// For |E| < m the prescription xi -> i*|xi| puts the branch on the positive
/// imaginary axis, which is what the bound-state pole condition assumes.
pub fn xi_of_energy(e: f64, spec: &PotentialSpec) -> Complex64 {
    let rad = e * e - spec.m() * spec.m();
    if rad >= 0.0 {
        Complex64::new(spec.a() * rad.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, spec.a() * (-rad).sqrt())
    }
}

/// Inner dimensionless wavenumber eta = sqrt(xi^2 - j*upsilon^2).
///
/// Principal branch: real nonnegative for nonnegative real radicand, and
/// +i*|.| for negative real radicand, so the tunneling regime comes out on
/// the positive imaginary axis.
pub fn eta_of_xi(xi: Complex64, j: f64, upsilon: f64) -> Complex64 {
    let rad = xi * xi - Complex64::new(j * upsilon * upsilon, 0.0);
    if rad.im == 0.0 {
        if rad.re >= 0.0 {
            Complex64::new(rad.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-rad.re).sqrt())
        }
    } else {
        rad.sqrt()
    }
}

/// Propagation direction of a wave (sign of the group velocity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Right => 1.0,
            Direction::Left => -1.0,
        }
    }
}

/// Group velocity +-(xi/a)/sqrt((xi/a)^2 + m^2); always subluminal.
///
/// Only defined in the scattering regime, where xi is real.
pub fn group_velocity(xi: Complex64, spec: &PotentialSpec, direction: Direction) -> Result<f64> {
    if xi.im != 0.0 {
        return Err(Error::Domain(format!(
            "group velocity needs a propagating (real) xi, got {xi}"
        )));
    }
    let k = xi.re / spec.a();
    Ok(direction.sign() * k / (k * k + spec.m() * spec.m()).sqrt())
}

/// Coefficients of the derivative-jump conditions at the borders:
/// crossing x = -a, dphi/dx jumps by `g_minus * phi(-a)`; crossing x = +a,
/// by `g_plus * phi(+a)`.
///
/// g_minus = +s*b1*upsilon/(2a), g_plus = -s*b1*upsilon/(2a), where s = 1 in
/// the scalar sector and s = sigma in the vector sector.
pub fn delta_strengths(spec: &PotentialSpec, sector: Sector) -> (f64, f64) {
    let g = sector.delta_sign() * spec.b1() * spec.upsilon() / (2.0 * spec.a());
    (g, -g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(a: f64, v0: f64, b0: f64, b1: f64, m: f64) -> PotentialSpec {
        PotentialSpec::new(a, v0, b0, b1, m).unwrap()
    }

    #[test]
    fn derived_params_examples() {
        assert_eq!(derived_params(&spec(1.0, 2.0, 0.0, 1.0, 1.0)), (1.0, 2.0));
        assert_eq!(derived_params(&spec(1.0, 2.0, 1.0, 0.0, 1.0)), (-1.0, 2.0));
        assert_eq!(derived_params(&spec(3.0, 0.0, 1.0, 1.0, 1.0)), (0.0, 0.0));
    }

    #[test]
    fn spec_rejects_nonpositive_a_and_m() {
        assert!(PotentialSpec::new(0.0, 2.0, 0.0, 1.0, 1.0).is_err());
        assert!(PotentialSpec::new(-1.0, 2.0, 0.0, 1.0, 1.0).is_err());
        assert!(PotentialSpec::new(1.0, 2.0, 0.0, 1.0, 0.0).is_err());
        assert!(PotentialSpec::new(1.0, f64::NAN, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn xi_examples() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        assert_eq!(xi_of_energy(1.0, &s), Complex64::new(0.0, 0.0));
        let x = xi_of_energy(2f64.sqrt(), &s);
        assert!((x.re - 1.0).abs() < 1e-15 && x.im == 0.0);
        assert_eq!(xi_of_energy(0.0, &s), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn eta_examples() {
        // free interior: eta = xi
        let x = Complex64::new(0.3, 0.0);
        assert_eq!(eta_of_xi(x, 5.0, 0.0), x);
        // vanishing radicand
        let e = eta_of_xi(Complex64::new(2.0, 0.0), 1.0, 2.0);
        assert_eq!(e, Complex64::new(0.0, 0.0));
        // xi = i/2, j = -1, upsilon = 2: radicand = 4 - 1/4 = 3.75
        let e = eta_of_xi(Complex64::new(0.0, 0.5), -1.0, 2.0);
        assert!((e.re - 3.75f64.sqrt()).abs() < 1e-15 && e.im == 0.0);
        // negative radicand lands on the positive imaginary axis
        let e = eta_of_xi(Complex64::new(1.0, 0.0), 1.0, 2.0);
        assert!(e.re == 0.0 && (e.im - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn group_velocity_examples() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        let v = group_velocity(Complex64::new(0.0, 0.0), &s, Direction::Right).unwrap();
        assert_eq!(v, 0.0);
        let v = group_velocity(Complex64::new(1.0, 0.0), &s, Direction::Right).unwrap();
        assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        let v = group_velocity(Complex64::new(1e12, 0.0), &s, Direction::Left).unwrap();
        assert!((v + 1.0).abs() < 1e-15);
        assert!(group_velocity(Complex64::new(0.0, 0.5), &s, Direction::Right).is_err());
    }

    #[test]
    fn delta_strength_examples() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        assert_eq!(delta_strengths(&s, Sector::Scalar), (1.0, -1.0));
        assert_eq!(
            delta_strengths(&s, Sector::Vector(Polarization::Transverse)),
            (-1.0, 1.0)
        );
        let free = spec(1.0, 2.0, 1.0, 0.0, 1.0);
        assert_eq!(delta_strengths(&free, Sector::Scalar), (0.0, 0.0));
    }

    #[test]
    fn kinematics_regime_tags() {
        let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
        assert_eq!(Kinematics::for_energy(1.5, &s).regime, Regime::Scattering);
        assert_eq!(Kinematics::for_energy(-1.5, &s).regime, Regime::Scattering);
        assert_eq!(Kinematics::for_energy(1.0, &s).regime, Regime::Scattering);
        assert_eq!(Kinematics::for_energy(0.3, &s).regime, Regime::Bound);
    }

    proptest! {
        // free-interior identity for propagating and evanescent xi
        #[test]
        fn eta_free_identity(x in -30.0f64..30.0, imag in proptest::bool::ANY, j in -4.0f64..4.0) {
            let xi = if imag { Complex64::new(0.0, x.abs()) } else { Complex64::new(x.abs(), 0.0) };
            prop_assert_eq!(eta_of_xi(xi, j, 0.0), xi);
        }

        #[test]
        fn xi_energy_parity(e in 1.0f64..60.0) {
            let s = spec(1.0, 2.0, 0.0, 1.0, 1.0);
            prop_assert_eq!(xi_of_energy(e, &s), xi_of_energy(-e, &s));
        }

        #[test]
        fn group_velocity_subluminal(x in 0.0f64..1e6, m in 0.1f64..10.0, a in 0.1f64..10.0) {
            let s = spec(a, 2.0, 0.0, 1.0, m);
            let v = group_velocity(Complex64::new(x, 0.0), &s, Direction::Right).unwrap();
            prop_assert!(v.abs() < 1.0);
        }

        // eta^2 = xi^2 - j*upsilon^2 to machine precision
        #[test]
        fn eta_squared_consistency(e in -20.0f64..20.0, v0 in -5.0f64..5.0, b0 in -2.0f64..2.0, b1 in -2.0f64..2.0) {
            let s = spec(1.0, v0, b0, b1, 1.0);
            let k = Kinematics::for_energy(e, &s);
            let (j, upsilon) = derived_params(&s);
            let lhs = k.eta * k.eta;
            let rhs = k.xi * k.xi - Complex64::new(j * upsilon * upsilon, 0.0);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        // sigma dependence is exactly a b1 sign flip in the delta terms
        #[test]
        fn sigma_is_b1_flip(v0 in -5.0f64..5.0, b1 in -2.0f64..2.0) {
            let s = spec(1.0, v0, 0.7, b1, 1.0);
            let flipped = s.with_b1_flipped();
            prop_assert_eq!(
                delta_strengths(&s, Sector::Vector(Polarization::Transverse)),
                delta_strengths(&flipped, Sector::Scalar)
            );
        }
    }
}

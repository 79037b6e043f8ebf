//! Lamb-form momentum balance `(∂_t g + grad U) − v × rot g` on a ring of
//! samples, in cylindrical components `(r, θ, z)`.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_RING_SAMPLES: usize = 16;

/// `(r, θ, z)`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylPoint {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
}

/// Components along `(e_r, e_θ, e_z)`.
pub type CylVector = Vector3<f64>;

/// A stationary or slowly varying field configuration around a ring.
pub trait RingField {
    fn energy_density(&self, p: CylPoint) -> f64;
    fn momentum_density(&self, p: CylPoint) -> CylVector;
    fn velocity(&self, p: CylPoint) -> CylVector;
    /// `∂_t g`; zero for stationary rotation.
    fn momentum_rate(&self, _p: CylPoint) -> CylVector {
        CylVector::zeros()
    }
}

/// Rigid rotation `v = ω r e_θ` carrying uniform density `ρ₀`:
/// `g = ρ₀ v`, `U = ρ₀ω²r² + U₀`, which balances the Lamb form exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidRing {
    pub omega: f64,
    pub rho0: f64,
    pub u0: f64,
}

impl RigidRing {
    pub fn new(omega: f64) -> Self {
        Self {
            omega,
            rho0: 1.0,
            u0: 0.0,
        }
    }

    /// No motion and `U ≡ U₀`.
    pub fn static_uniform(u0: f64) -> Self {
        Self {
            omega: 0.0,
            rho0: 0.0,
            u0,
        }
    }
}

impl RingField for RigidRing {
    fn energy_density(&self, p: CylPoint) -> f64 {
        self.rho0 * self.omega * self.omega * p.r * p.r + self.u0
    }

    fn momentum_density(&self, p: CylPoint) -> CylVector {
        self.velocity(p) * self.rho0
    }

    fn velocity(&self, p: CylPoint) -> CylVector {
        CylVector::new(0.0, self.omega * p.r, 0.0)
    }
}

/// Sheared rotation `v = (a r + b r³) e_θ`, `g = v`, with the balancing
/// `U = a²r² + (3/2)ab r⁴ + (2/3)b²r⁶`. Unlike rigid rotation, the
/// finite-difference errors of `grad U` and `v × rot g` do not cancel, so
/// the stencil order is observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShearedRing {
    pub a: f64,
    pub b: f64,
}

impl RingField for ShearedRing {
    fn energy_density(&self, p: CylPoint) -> f64 {
        let (a, b, r2) = (self.a, self.b, p.r * p.r);
        a * a * r2 + 1.5 * a * b * r2 * r2 + 2.0 / 3.0 * b * b * r2 * r2 * r2
    }

    fn momentum_density(&self, p: CylPoint) -> CylVector {
        self.velocity(p)
    }

    fn velocity(&self, p: CylPoint) -> CylVector {
        CylVector::new(0.0, self.a * p.r + self.b * p.r.powi(3), 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSampling {
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambReport {
    pub samples: usize,
    /// max over samples of `|(∂_t g + grad U) − v × rot g|`
    pub residual: f64,
    /// max `|grad U|` (or `|v × rot g|`), for a relative reading
    pub scale: f64,
    /// mean radial component of `½ v × rot v`
    pub centripetal: f64,
    /// `v²/r` at the ring
    pub centripetal_expected: f64,
    /// max over samples of `|a_r − v²/r| / (v²/r)`; zero without motion
    pub centripetal_error: f64,
}

impl LambReport {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual
        } else {
            self.residual / self.scale
        }
    }
}

struct Stencil<'a, F: RingField + ?Sized> {
    field: &'a F,
    h: f64,
    dtheta: f64,
}

impl<F: RingField + ?Sized> Stencil<'_, F> {
    fn shift(p: CylPoint, dr: f64, dth: f64, dz: f64) -> CylPoint {
        CylPoint {
            r: p.r + dr,
            theta: p.theta + dth,
            z: p.z + dz,
        }
    }

    /// `(∂_r, ∂_θ, ∂_z)` of a scalar.
    fn partials(&self, p: CylPoint, f: &dyn Fn(CylPoint) -> f64) -> Vector3<f64> {
        let (h, dt) = (self.h, self.dtheta);
        Vector3::new(
            (f(Self::shift(p, h, 0.0, 0.0)) - f(Self::shift(p, -h, 0.0, 0.0))) / (2.0 * h),
            (f(Self::shift(p, 0.0, dt, 0.0)) - f(Self::shift(p, 0.0, -dt, 0.0))) / (2.0 * dt),
            (f(Self::shift(p, 0.0, 0.0, h)) - f(Self::shift(p, 0.0, 0.0, -h))) / (2.0 * h),
        )
    }

    fn grad(&self, p: CylPoint) -> CylVector {
        let d = self.partials(p, &|q| self.field.energy_density(q));
        CylVector::new(d[0], d[1] / p.r, d[2])
    }

    fn curl(&self, p: CylPoint, a: &dyn Fn(CylPoint) -> CylVector) -> CylVector {
        let ar = self.partials(p, &|q| a(q)[0]);
        let az = self.partials(p, &|q| a(q)[2]);
        let rat = self.partials(p, &|q| q.r * a(q)[1]);
        let at = self.partials(p, &|q| a(q)[1]);
        CylVector::new(
            az[1] / p.r - at[2],
            ar[2] - az[0],
            (rat[0] - ar[1]) / p.r,
        )
    }
}

/// Samples `field` at `N` equally spaced angles on the ring `r = radius`,
/// `z = 0`. Angular derivatives use the ring neighbours; radial and axial
/// derivatives use the arc-length step `h = 2πR/N`.
pub fn lamb_residual<F: RingField + ?Sized>(field: &F, radius: f64, sampling: RingSampling) -> Result<LambReport> {
    let n = sampling.samples;
    if n < MIN_RING_SAMPLES {
        return Err(Error::InsufficientSampling {
            min: MIN_RING_SAMPLES,
            got: n,
        });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid("radius", format!("must be positive, got {radius}")));
    }
    let dtheta = 2.0 * PI / n as f64;
    let st = Stencil {
        field,
        h: radius * dtheta,
        dtheta,
    };

    let mut report = LambReport {
        samples: n,
        residual: 0.0,
        scale: 0.0,
        centripetal: 0.0,
        centripetal_expected: 0.0,
        centripetal_error: 0.0,
    };
    let mut v2_sum = 0.0;
    for j in 0..n {
        let p = CylPoint {
            r: radius,
            theta: j as f64 * dtheta,
            z: 0.0,
        };
        let v = field.velocity(p);
        let grad_u = st.grad(p);
        let lamb = v.cross(&st.curl(p, &|q| field.momentum_density(q)));
        let r = field.momentum_rate(p) + grad_u - lamb;
        report.residual = report.residual.max(r.norm());
        report.scale = report.scale.max(grad_u.norm()).max(lamb.norm());

        let a = v.cross(&st.curl(p, &|q| field.velocity(q))) * 0.5;
        let expected = v.norm_squared() / radius;
        report.centripetal += a[0] / n as f64;
        v2_sum += expected;
        if expected > 0.0 {
            report.centripetal_error = report.centripetal_error.max((a[0] - expected).abs() / expected);
        }
    }
    report.centripetal_expected = v2_sum / n as f64;
    Ok(report)
}

//! The heat-tail special functions
//!
//! `H_j(r) = ∫_0^1 e^{−r²/4t} t^{−j/2} dt`
//!
//! with two independent evaluation routes: the closed forms
//!
//! * `H_1(r) = 2 e^{−r²/4} − r Θ(r²/4)`, `Θ(x) = ∫_x^∞ e^{−u} u^{−1/2} du`,
//! * `H_2(r) = −ln(r²/4) e^{−r²/4} + Υ(r²/4)`, `Υ(x) = ∫_x^∞ ln(u) e^{−u} du`,
//! * `H_j(r) = 2^{j−2} r^{2−j} F_j(r²/4)`, `F_j(x) = ∫_x^∞ e^{−u} u^{j/2−2} du`
//!   with `F_j(0) = Γ(j/2 − 1)` for j ≥ 3,
//!
//! and direct adaptive quadrature of the defining integral. The auxiliary
//! integrals Θ, Υ, F_j are themselves evaluated by adaptive quadrature, not
//! by special-function identities, so the two routes share no code path.

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, adaptive_simpson_graded};

/// Evaluation route selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HjMethod {
    Closed,
    Quadrature,
}

/// Tolerances for the incomplete-gamma-type auxiliary integrals.
#[derive(Clone, Copy, Debug)]
pub struct SpecialFnConfig {
    pub tolerance: f64,
}

impl Default for SpecialFnConfig {
    fn default() -> Self {
        Self { tolerance: 1e-13 }
    }
}

impl SpecialFnConfig {
    pub fn new(tolerance: f64) -> Result<Self> {
        if !(1e-14..=1e-8).contains(&tolerance) {
            return Err(Error::InvalidConfig {
                reason: format!("special-function tolerance {tolerance:e} outside [1e-14, 1e-8]"),
            });
        }
        Ok(Self { tolerance })
    }
}

/// Upper tail `∫_x^∞ e^{−u} u^{p} du` by adaptive quadrature after the
/// substitution `u = v²`, which removes the power singularity at u = 0:
/// the integrand becomes `2 e^{−v²} v^{2p+1}`, smooth for every p ≥ −1/2
/// used here. The cutoff sits far below rounding.
fn upper_tail(x: f64, p: f64, tol: f64) -> f64 {
    let lo = x.max(0.0).sqrt();
    let hi = (lo + 12.0).max(12.0);
    let f = |v: f64| 2.0 * (-v * v).exp() * v.powf(2.0 * p + 1.0);
    adaptive_simpson(&f, lo, hi, tol)
}

/// `Θ(x) = ∫_x^∞ e^{−u} u^{−1/2} du`, so `Θ(0) = Γ(1/2) = √π`.
pub fn theta_fn(x: f64, cfg: &SpecialFnConfig) -> f64 {
    upper_tail(x, -0.5, cfg.tolerance)
}

/// `Υ(x) = ∫_x^∞ ln(u) e^{−u} du`.
pub fn upsilon_fn(x: f64, cfg: &SpecialFnConfig) -> f64 {
    let tol = cfg.tolerance;
    let hi = (x + 60.0).max(80.0);
    let f = |u: f64| u.ln() * (-u).exp();
    adaptive_simpson_graded(&f, x.max(1e-300), hi, (x * 0.1).max(1e-4), tol)
}

/// `F_j(x) = ∫_x^∞ e^{−u} u^{j/2−2} du` for integer j ≥ 3.
pub fn f_fn(j: u32, x: f64, cfg: &SpecialFnConfig) -> f64 {
    upper_tail(x, j as f64 / 2.0 - 2.0, cfg.tolerance)
}

/// `H_j(r)` through the chosen route.
///
/// Allowed domains: any r ≥ 0 for the closed forms with j ≤ 2; strictly
/// positive r for j ≥ 3 (where `H_j(0)` diverges... for j > 2) and for the
/// quadrature route with j ≥ 1. At r = 0 with j = 2 the integral diverges
/// logarithmically and an error is returned.
pub fn hj_eval(j: u32, r: f64, method: HjMethod, cfg: &SpecialFnConfig) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::SpecialFnDomain { context: format!("H_{j} needs r >= 0, got {r}") });
    }
    if r == 0.0 && j >= 2 {
        return Err(Error::SpecialFnDomain {
            context: format!("H_{j}(0) diverges (j >= 2)"),
        });
    }
    match method {
        HjMethod::Closed => {
            let x = r * r / 4.0;
            match j {
                0 => Ok(adaptive_simpson(&|t: f64| (-x / t).exp(), 1e-300, 1.0, cfg.tolerance)),
                1 => Ok(2.0 * (-x).exp() - r * theta_fn(x, cfg)),
                2 => Ok(-(x.ln()) * (-x).exp() + upsilon_fn(x, cfg)),
                _ => Ok(2f64.powi(j as i32 - 2) * r.powi(2 - j as i32) * f_fn(j, x, cfg)),
            }
        }
        HjMethod::Quadrature => {
            if r == 0.0 && j == 1 {
                // H_1(0) = ∫_0^1 t^{−1/2} dt = 2 exactly
                return Ok(2.0);
            }
            let f = |t: f64| {
                let arg = r * r / (4.0 * t);
                if arg > 700.0 {
                    return 0.0;
                }
                (-arg).exp() * t.powf(-(j as f64) / 2.0)
            };
            // the integrand turns on at t ~ r²/4; grade the subdivision there
            Ok(adaptive_simpson_graded(&f, 1e-300, 1.0, (r * r / 4.0).max(1e-8), cfg.tolerance))
        }
    }
}

/// The gradient factor `H̃_j(r) = r^{j−1} H_j'(r)`, via the differentiated
/// closed form `H_j'(r) = −(r/2) H_{j+2}(r)`, i.e.
/// `H̃_j(r) = −2^{j−1} F_{j+2}(r²/4)` — smooth on [0, ∞) for every j there,
/// with the j = 2 case flagged separately by callers per its C¹ status.
pub fn hj_gradient_factor(j: u32, r: f64, cfg: &SpecialFnConfig) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::SpecialFnDomain {
            context: format!("gradient factor of H_{j} needs r > 0"),
        });
    }
    let x = r * r / 4.0;
    Ok(-(2f64.powi(j as i32 - 1)) * f_fn(j + 2, x, cfg))
}

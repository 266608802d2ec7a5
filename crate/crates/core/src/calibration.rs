//! Frozen sign-calibration constants.
//!
//! The composite current-level sign conventions (duality embedding, operator
//! sign alterations, fiber-integration order) collapse into one recorded
//! constant per backend. Each constant was fixed once by anchoring to the
//! crossing-sign oracle on the standard Hopf configuration
//! `K1 = (cos s, sin s, 0)`, `K2 = (cos t + 1, 0, sin t)` and is frozen here;
//! the acceptance suite re-verifies the anchors on every run.

/// Sign applied to the raw Gauss-map integral
/// `∫∫ j*BS(diagonal)` so it matches the crossing oracle.
pub const GAUSS_PAIRING_SIGN: f64 = 1.0;

/// Sign applied to the raw torus pairing `∮_{K1} BS(K2)` so it matches the
/// crossing oracle (the asymmetric linking formula carries `(−1)^{dim L}`).
pub const TORUS_PAIRING_SIGN: f64 = -1.0;

/// Sign folded into the knot-current coefficients per (n, k) so that the b2
/// probe of a positively oriented small circle returns +1. With the pairing
/// embedding `ω ↦ (η ↦ ∫ ω ∧ η)` used throughout, the anchor fixes +1.
pub fn current_embedding_sign(_n: u8, _k: usize) -> f64 {
    1.0
}

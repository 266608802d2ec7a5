//! Finite-difference exterior calculus on pointwise form fields, used as
//! independent oracles against the closed-form kernels.

use crate::exterior::{codiff_sign, hodge_star_basis, wedge_basis, MultiIndex, SignedIndex};
use crate::form_value::FormValue;

/// Central first derivative of a scalar field along the axis (2nd order).
pub fn central1<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], axis: usize, h: f64) -> f64 {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[axis] += h;
    xm[axis] -= h;
    (f(&xp) - f(&xm)) / (2.0 * h)
}

/// Central first derivative, 4th order (5-point stencil).
pub fn central1_4th<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], axis: usize, h: f64) -> f64 {
    let mut at = |d: f64| {
        let mut xx = x.to_vec();
        xx[axis] += d;
        f(&xx)
    };
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

/// Finite-difference exterior derivative of a form field at x:
/// `dω = Σ_j ∂_j ω_I dx_j ∧ dx_I`.
pub fn d_form_field<F: Fn(&[f64]) -> FormValue>(
    field: &F,
    x: &[f64],
    h: f64,
    fourth_order: bool,
) -> FormValue {
    let n = x.len();
    let probe = field(x);
    let degree = probe.degree();
    let mut out = FormValue::zero(n as u8, degree + 1);
    let indices: Vec<MultiIndex> = probe.iter().map(|(i, _)| i.clone()).collect();
    for index in indices {
        for j in 1..=n as u8 {
            if let SignedIndex::Term { sign, index: target } =
                wedge_basis(&MultiIndex::new(&[j], n as u8).unwrap(), &index)
            {
                let comp = |p: &[f64]| field(p).coeff(&index);
                let deriv = if fourth_order {
                    central1_4th(&comp, x, (j - 1) as usize, h)
                } else {
                    central1(&comp, x, (j - 1) as usize, h)
                };
                out.add(target, sign as f64 * deriv);
            }
        }
    }
    out
}

/// Finite-difference codifferential via `d* = (−1)^{ν_{n,k}} * d *`.
pub fn dstar_form_field<F: Fn(&[f64]) -> FormValue>(
    field: &F,
    x: &[f64],
    h: f64,
    fourth_order: bool,
) -> FormValue {
    let n = x.len() as u8;
    let probe = field(x);
    let k = probe.degree();
    let starred = |p: &[f64]| star_value(&field(p));
    let d_starred = d_form_field(&starred, x, h, fourth_order);
    let sign = codiff_sign(n, k) as f64;
    star_value(&d_starred).scale(sign)
}

/// Hodge star of a pointwise form value.
pub fn star_value(f: &FormValue) -> FormValue {
    let n = f.n();
    let mut out = FormValue::zero(n, n as usize - f.degree());
    for (i, c) in f.iter() {
        if let SignedIndex::Term { sign, index } = hodge_star_basis_signed(i) {
            out.add(index, sign as f64 * c);
        }
    }
    out
}

fn hodge_star_basis_signed(i: &MultiIndex) -> SignedIndex {
    hodge_star_basis(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_of_exact_form_vanishes() {
        // ω = d(x1² x2) = 2x1x2 dx1 + x1² dx2: dω = 0
        let field = |p: &[f64]| {
            let mut f = FormValue::zero(3, 1);
            f.set(MultiIndex::new(&[1], 3).unwrap(), 2.0 * p[0] * p[1]);
            f.set(MultiIndex::new(&[2], 3).unwrap(), p[0] * p[0]);
            f
        };
        let d = d_form_field(&field, &[0.4, -0.3, 0.7], 1e-4, false);
        assert!(d.sup_norm() < 1e-8);
    }

    #[test]
    fn dstar_matches_divergence() {
        // d* on a 1-form in R^3 is −div of the dual vector field
        let field = |p: &[f64]| {
            let mut f = FormValue::zero(3, 1);
            f.set(MultiIndex::new(&[1], 3).unwrap(), p[0] * p[0]);
            f.set(MultiIndex::new(&[2], 3).unwrap(), p[1] * p[2]);
            f.set(MultiIndex::new(&[3], 3).unwrap(), -p[2]);
            f
        };
        let x = [0.3, 0.8, -0.2];
        let ds = dstar_form_field(&field, &x, 1e-4, false);
        let expected = -(2.0 * x[0] + x[2] - 1.0);
        assert!((ds.coeff(&MultiIndex::empty(3)) - expected).abs() < 1e-7);
    }
}

//! Knot currents on flat tori and their Biot-Savart forms.
//!
//! The degree-(n−1) current form of a knot is defined by the pairing
//! contract: for every truncated test 1-form η,
//! `∫_{T^n} L̂ ∧ η = ∮_K η`. The Biot-Savart form is `d* G (L̂ − H)`;
//! pointwise evaluation near the knot uses an Ewald split of the heat-time
//! integral at t₀: lattice-image erfc kernels below t₀, the damped spectral
//! tail above it.

use num_complex::Complex64;

use super::{
    d_form, dstar_form, eval_form_at, green_op, harmonic_projection, heat_semigroup, FourierForm,
    TorusGeometry,
};
use crate::calibration::current_embedding_sign;
use crate::error::{Error, Result};
use crate::exterior::MultiIndex;
use crate::form_value::FormValue;
use crate::geom::{cross3, norm};
use crate::knot::Knot;

/// Fourier coefficients of the knot line integrals,
/// `F_j(m) = ∮ e^{−i m·γ(s)} γ_j'(s) ds`, by periodic trapezoid quadrature.
/// Phases factorize per axis, so the cost is O(quad_n · modes).
fn line_integral_coefficients(knot: &Knot, truncation: i32, quad_n: usize) -> Vec<Vec<Complex64>> {
    let n = knot.dim();
    let grid = super::ModeGrid::new(n as u8, truncation);
    let w = (2 * truncation + 1) as usize;
    let h = std::f64::consts::TAU / quad_n as f64;
    let mut out = vec![vec![Complex64::ZERO; grid.len()]; n];
    // per-node phase tables e^{−i m_a γ_a(s_q)}
    let mut phase = vec![vec![Complex64::ZERO; w]; n];
    for q in 0..quad_n {
        let s = q as f64 * h;
        let p = knot.position(s);
        let v = knot.velocity(s);
        for a in 0..n {
            let unit = Complex64::from_polar(1.0, -p[a]);
            let mut cur = Complex64::from_polar(1.0, truncation as f64 * p[a]);
            for slot in phase[a].iter_mut() {
                *slot = cur;
                cur *= unit;
            }
        }
        for mi in 0..grid.len() {
            let m = grid.mode_at(mi);
            let mut e = Complex64::new(h, 0.0);
            for a in 0..n {
                e *= phase[a][(m[a] + truncation) as usize];
            }
            for j in 0..n {
                out[j][mi] += e * v[j];
            }
        }
    }
    out
}

/// The truncated degree-(n−1) current form of a closed knot, satisfying
/// `∫ L̂ ∧ e^{i m·x} dx_j = ∮_K e^{i m·γ} γ_j' ds` for all |m|_∞ ≤ M.
///
/// The quadrature is re-run at doubled node count; if any coefficient moves
/// by more than 1e−10 the build fails with a non-convergence error.
pub fn current_from_knot(knot: &Knot, truncation: i32, quad_n: usize) -> Result<FourierForm> {
    let n = knot.dim() as u8;
    let geometry = TorusGeometry::new(n)?;
    let coarse = line_integral_coefficients(knot, truncation, quad_n);
    let fine = line_integral_coefficients(knot, truncation, quad_n * 2);
    let mut delta = 0.0f64;
    for (a, b) in coarse.iter().zip(&fine) {
        for (x, y) in a.iter().zip(b) {
            delta = delta.max((x - y).norm());
        }
    }
    if delta > 1e-10 {
        return Err(Error::QuadratureNonConvergence { delta });
    }
    let grid = super::ModeGrid::new(n, truncation);
    let vol = geometry.volume();
    let mut form = FourierForm::zero(geometry, n as usize - 1, truncation);
    let emb = current_embedding_sign(n, 1);
    for j in 1..=n {
        // pairing: ∫ a_{−m,{j}^c} e^{i(m'−m)x} dx_{{j}^c} ∧ dx_j picks the
        // complement slot with sign (−1)^{n−1}(−1)^{j−1}
        let index = MultiIndex::new(&[j], n).unwrap().complement();
        let sign = if (n as usize - 1 + j as usize - 1) % 2 == 0 { 1.0 } else { -1.0 };
        for mi in 0..grid.len() {
            let m = grid.mode_at(mi);
            // table entry at m is ∮ e^{−i m·γ} γ_j' ds = F_j(−m), exactly the
            // coefficient the contract assigns at mode m
            let f = fine[(j - 1) as usize][mi];
            form.add_coeff(&m, &index, emb * sign * f / vol);
        }
    }
    Ok(form)
}

/// Biot-Savart form of a knot: `d* G (L̂ − H(L̂))`, a degree-(n−2) form.
pub fn biot_savart_of_knot(knot: &Knot, truncation: i32, quad_n: usize) -> Result<FourierForm> {
    let current = current_from_knot(knot, truncation, quad_n)?;
    let reduced = current.sub_form(&harmonic_projection(&current));
    dstar_form(&green_op(&reduced))
}

/// Parameters of the Ewald split.
#[derive(Clone, Copy, Debug)]
pub struct EwaldParams {
    /// heat-time split point; the default matches the smooth-tail cut
    pub t_split: f64,
    /// real-space images per axis: v ∈ 2π{−R..R}^n
    pub lattice_radius: i32,
    /// curve quadrature nodes for the near field
    pub quad_n: usize,
}

impl Default for EwaldParams {
    fn default() -> Self {
        Self { t_split: 1.0, lattice_radius: 2, quad_n: 512 }
    }
}

/// Spectral far field of the Biot-Savart form: `d* G e^{−t₀Δ} (L̂ − H)`.
/// The heat damping makes the truncation error `O(e^{−t₀ M²})`.
pub fn bs_far_field(current: &FourierForm, t_split: f64) -> Result<FourierForm> {
    let reduced = current.sub_form(&harmonic_projection(current));
    let damped = heat_semigroup(&reduced, t_split)?;
    dstar_form(&green_op(&damped))
}

/// Pointwise Biot-Savart evaluation on T³ by the Ewald split:
/// near field = `d* ∫_0^{t₀} e^{−tΔ} L dt` summed over lattice images of the
/// screened kernel `erfc(r/(2√t₀))/(4πr)`, far field = the damped spectral
/// tail. Exact in the continuum up to curve quadrature and image cutoff.
pub fn ewald_eval_bs(
    knot: &Knot,
    far: &FourierForm,
    x: &[f64],
    params: &EwaldParams,
) -> Result<FormValue> {
    assert_eq!(knot.dim(), 3, "Ewald evaluation is implemented on T^3");
    let tau = std::f64::consts::TAU;
    let quad_n = params.quad_n;
    let h = tau / quad_n as f64;
    let sqrt_t = params.t_split.sqrt();
    let r_lat = params.lattice_radius;
    // near field: curl-type kernel of the screened potential
    // N_j(x) = Σ_v ∮ (w'(r)/r) [(x+v−γ) × γ']_j ds,
    // w(r) = erfc(r/(2√t₀))/(4πr)
    let mut near = [0.0f64; 3];
    let min_r = {
        let mut best = f64::INFINITY;
        for q in 0..quad_n {
            let p = knot.position(q as f64 * h);
            let mut d = [0.0; 3];
            for a in 0..3 {
                let raw = (x[a] - p[a]).rem_euclid(tau);
                d[a] = raw.min(tau - raw);
            }
            best = best.min(norm(&d));
        }
        best
    };
    if min_r < 1e-9 {
        return Err(Error::SingularInput { context: "Ewald evaluation on the knot".into() });
    }
    for q in 0..quad_n {
        let s = q as f64 * h;
        let p = knot.position(s);
        let v = knot.velocity(s);
        for i1 in -r_lat..=r_lat {
            for i2 in -r_lat..=r_lat {
                for i3 in -r_lat..=r_lat {
                    let d = [
                        x[0] + tau * i1 as f64 - p[0],
                        x[1] + tau * i2 as f64 - p[1],
                        x[2] + tau * i3 as f64 - p[2],
                    ];
                    let r = norm(&d);
                    // w'(r)/r with w = erfc(r/(2√t))/(4πr):
                    // w' = −[erfc(r/2√t)/r² + e^{−r²/4t}/(√(πt) r)]/(4π)
                    let u = r / (2.0 * sqrt_t);
                    let erfc_term = libm::erfc(u);
                    if erfc_term < 1e-18 {
                        continue;
                    }
                    let gauss = (-u * u).exp() / (std::f64::consts::PI.sqrt() * sqrt_t);
                    let wp_over_r =
                        -(erfc_term / (r * r) + gauss / r) / (4.0 * std::f64::consts::PI * r);
                    let c = cross3(&d, &v);
                    for a in 0..3 {
                        near[a] += h * wp_over_r * c[a];
                    }
                }
            }
        }
    }
    let mut value = eval_form_at(far, x);
    for a in 0..3u8 {
        let idx = MultiIndex::new(&[a + 1], 3).unwrap();
        value.add(idx, near[a as usize]);
    }
    Ok(value)
}

/// Harmonic class of a knot current: the m = 0 coefficients, reported as the
/// real coefficient vector over the degree-(n−1) indices.
pub fn harmonic_class(current: &FourierForm) -> Vec<f64> {
    let n = current.geometry().n();
    let zero = vec![0i32; n as usize];
    current
        .index_list()
        .iter()
        .map(|i| current.coeff(&zero, i).re)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::Ambient;
    use crate::torus::wedge_integral;

    fn small_circle() -> Knot {
        let pi = std::f64::consts::PI;
        Knot::circle(
            "c",
            Ambient::Torus,
            &[pi, pi, pi],
            0.3,
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
        )
    }

    #[test]
    fn geodesic_current_structure() {
        // coordinate geodesic: modes with m_1 ≠ 0 vanish, m = 0 part nonzero
        let tau = std::f64::consts::TAU;
        let pts: Vec<Vec<f64>> = (0..64)
            .map(|q| vec![tau * q as f64 / 64.0, 1.0, 2.5])
            .collect();
        let k = Knot::from_samples("geo", Ambient::Torus, &pts).unwrap();
        let cur = current_from_knot(&k, 4, 128).unwrap();
        for idx in cur.index_list().to_vec() {
            for mi in 0..cur.modes().len() {
                let m = cur.modes().mode_at(mi);
                let c = cur.coeff(&m, &idx);
                if m[0] != 0 {
                    assert!(c.norm() < 1e-13, "m={m:?} idx={idx:?} |c|={}", c.norm());
                }
            }
        }
        let class = harmonic_class(&cur);
        assert!(class.iter().any(|c| c.abs() > 1e-6));
    }

    #[test]
    fn nullhomologous_circle_has_no_harmonic_part() {
        let cur = current_from_knot(&small_circle(), 4, 256).unwrap();
        let h = harmonic_projection(&cur);
        assert!(h.sup_coeff() < 1e-12);
        assert!(cur.reality_residual() < 1e-12);
    }

    #[test]
    fn pairing_contract_against_quadrature() {
        // ∫ L̂ ∧ η = ∮_K η for random truncated test 1-forms η
        let k = small_circle();
        let m = 4;
        let cur = current_from_knot(&k, m, 256).unwrap();
        for seed in 0..10 {
            let eta = crate::torus::random_form(TorusGeometry::new(3).unwrap(), 1, m, 900 + seed);
            let lhs = wedge_integral(&cur, &eta);
            let rhs = crate::quad::periodic_trapezoid(1024, |s| {
                let p = k.position(s);
                let v = k.velocity(s);
                let val = eval_form_at(&eta, &p);
                val.apply(&[&v])
            });
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "seed {seed}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn d_of_bs_recovers_current() {
        // d BS = L̂ − H exactly in the truncated space
        let k = small_circle();
        let cur = current_from_knot(&k, 4, 256).unwrap();
        let bs = biot_savart_of_knot(&k, 4, 256).unwrap();
        let dbs = d_form(&bs).unwrap();
        let target = cur.sub_form(&harmonic_projection(&cur));
        assert!(dbs.sub_form(&target).sup_coeff() < 1e-12);
    }

    #[test]
    fn geodesic_bs_translation_invariant() {
        let tau = std::f64::consts::TAU;
        let pts: Vec<Vec<f64>> = (0..64)
            .map(|q| vec![tau * q as f64 / 64.0, 2.0, 4.0])
            .collect();
        let k = Knot::from_samples("geo", Ambient::Torus, &pts).unwrap();
        let bs = biot_savart_of_knot(&k, 4, 128).unwrap();
        for idx in bs.index_list().to_vec() {
            for mi in 0..bs.modes().len() {
                let m = bs.modes().mode_at(mi);
                if m[0] != 0 {
                    assert!(bs.coeff(&m, &idx).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn heat_flow_converges_to_harmonic_part() {
        let tau = std::f64::consts::TAU;
        let pts: Vec<Vec<f64>> = (0..64)
            .map(|q| vec![tau * q as f64 / 64.0, 1.0, 2.0])
            .collect();
        let k = Knot::from_samples("geo", Ambient::Torus, &pts).unwrap();
        let cur = current_from_knot(&k, 4, 128).unwrap();
        let h = harmonic_projection(&cur);
        let sup0 = cur.sub_form(&h).sup_coeff();
        for t in [5.0, 10.0] {
            let drift = heat_semigroup(&cur, t).unwrap().sub_form(&h).sup_coeff();
            assert!(drift <= sup0 * (-t).exp() * 1.0001, "t={t}: {drift}");
        }
    }
}

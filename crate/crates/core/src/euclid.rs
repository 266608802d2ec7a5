//! Closed-form Euclidean kernels: the heat kernel, Green kernels on k-forms,
//! and Biot-Savart forms of points, linear subspaces, and the diagonal.
//!
//! All kernels are evaluated, never tabulated; callers own quadrature.
//! Singular inputs return errors instead of infinities.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exterior::{epsilon_exponent, MultiIndex};
use crate::form_value::{expand_beta_pullback, DoubleFormValue, FormValue};
use crate::geom::{dot, norm, sub};
use crate::knot::Knot;

/// Volume of the unit m-sphere, `|S^m| = 2 π^{(m+1)/2} / Γ((m+1)/2)`.
pub fn sphere_volume(m: usize) -> f64 {
    let a = (m as f64 + 1.0) / 2.0;
    2.0 * PI.powf(a) / libm::tgamma(a)
}

/// `c_n = [(n−2)|S^{n−1}|]^{−1}`, the Green-function constant.
pub fn green_constant(n: usize) -> f64 {
    1.0 / ((n as f64 - 2.0) * sphere_volume(n - 1))
}

/// Green kernel on k-forms in R^n as an (n−k, k) double form:
///
/// `G_k(x,y) = c_n (−1)^{kn} |x−y|^{2−n} Σ_{|I|=k} (−1)^{ε(I)} dx_{I^c} ∧ dy_I`.
pub fn green_kernel_value(x: &[f64], y: &[f64], k: usize) -> Result<DoubleFormValue> {
    let n = x.len();
    assert!(n >= 3, "green kernel needs n >= 3");
    let r = norm(&sub(x, y));
    if r == 0.0 {
        return Err(Error::SingularInput { context: "green kernel at coincident points".into() });
    }
    let radial = green_constant(n) * r.powi(2 - n as i32);
    let kn_sign = if (k * n) % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = DoubleFormValue::zero(n as u8, n - k, k);
    for i in MultiIndex::all_of_degree(n as u8, k) {
        let eps = if epsilon_exponent(&i) % 2 == 0 { 1.0 } else { -1.0 };
        out.set(i.complement(), i, kn_sign * eps * radial);
    }
    Ok(out)
}

/// Biot-Savart form of the Dirac point at the origin, the normalized
/// solid-angle (n−1)-form:
///
/// `BS(δ_0)(x) = |S^{n−1}|^{−1} |x|^{−n} Σ_i (−1)^{i−1} x_i dx_{{i}^c}`.
pub fn bs_delta0_value(x: &[f64]) -> Result<FormValue> {
    let n = x.len();
    let r = norm(x);
    if r == 0.0 {
        return Err(Error::SingularInput { context: "BS(delta_0) at the origin".into() });
    }
    let c = 1.0 / (sphere_volume(n - 1) * r.powi(n as i32));
    let mut out = FormValue::zero(n as u8, n - 1);
    for i in 1..=n {
        let sign = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let index = MultiIndex::new(&[i as u8], n as u8).unwrap().complement();
        out.set(index, sign * c * x[i - 1]);
    }
    Ok(out)
}

/// Biot-Savart form of the diagonal in R^n x R^n, expanded from
///
/// `|S^{n−1}|^{−1} |x−y|^{−n} Σ_i (−1)^{i−1} (x_i−y_i) Π_{j≠i} (dx_j − dy_j)`
///
/// into a table over (dx_A, dy_B) index pairs of every bidegree with
/// total degree n−1.
pub fn bs_diagonal_value(x: &[f64], y: &[f64]) -> Result<DoubleFormValue> {
    let n = x.len();
    let d = sub(x, y);
    let r = norm(&d);
    if r == 0.0 {
        return Err(Error::SingularInput { context: "BS(diagonal) on the diagonal".into() });
    }
    let c = 1.0 / (sphere_volume(n - 1) * r.powi(n as i32));
    let mut out = DoubleFormValue::zero(n as u8, n - 1, 0);
    for i in 1..=n {
        let outer_sign = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let factor = outer_sign * c * d[i - 1];
        if factor == 0.0 {
            continue;
        }
        // expand Π_{j≠i} (dx_j − dy_j) over subsets sent to the y slot
        let ids: Vec<u8> = (1..=n as u8).filter(|&j| j as usize != i).collect();
        let m = ids.len();
        for mask in 0u32..(1 << m) {
            let mut xs: Vec<u8> = Vec::new();
            let mut ys: Vec<u8> = Vec::new();
            let mut sign = 1.0f64;
            let mut y_so_far = 0usize;
            for (pos, &j) in ids.iter().enumerate() {
                if mask & (1 << pos) == 0 {
                    if y_so_far % 2 == 1 {
                        sign = -sign;
                    }
                    xs.push(j);
                } else {
                    sign = -sign;
                    ys.push(j);
                    y_so_far += 1;
                }
            }
            let ix = MultiIndex::new(&xs, n as u8).unwrap();
            let iy = MultiIndex::new(&ys, n as u8).unwrap();
            out.add(ix, iy, sign * factor);
        }
    }
    Ok(out)
}

/// The same value through the other algebraic route: `β*(BS(δ_0))` with
/// `β(x,y) = x − y`. Used as the independent cross-check of
/// [`bs_diagonal_value`].
pub fn bs_diagonal_via_pullback(x: &[f64], y: &[f64]) -> Result<DoubleFormValue> {
    let base = bs_delta0_value(&sub(x, y))?;
    Ok(expand_beta_pullback(&base))
}

/// An oriented linear subspace L^k ⊂ R^n given by an orthonormal frame:
/// normal basis of L^⊥ first, then a basis of L, with
/// `ori(L^⊥) ∧ ori(L) = ori(R^n)`.
#[derive(Clone, Debug)]
pub struct LinearSubspaceSpec {
    n: usize,
    k: usize,
    /// rows: n−k normal vectors, then k tangent vectors
    frame: Vec<Vec<f64>>,
}

impl LinearSubspaceSpec {
    pub fn new(n: usize, k: usize, frame: Vec<Vec<f64>>) -> Result<Self> {
        if frame.len() != n {
            return Err(Error::InvalidConfig {
                reason: format!("subspace frame needs {n} vectors, got {}", frame.len()),
            });
        }
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot(a, b) - expect).abs() > 1e-12 {
                    return Err(Error::InvalidConfig {
                        reason: format!("frame not orthonormal at ({i},{j})"),
                    });
                }
            }
        }
        if crate::geom::det_rows(&frame) < 0.0 {
            return Err(Error::InvalidConfig {
                reason: "frame orientation violates ori(L_perp) ∧ ori(L) = ori(R^n)".into(),
            });
        }
        Ok(Self { n, k, frame })
    }

    /// The coordinate subspace spanned by the last k axes, L = {0} x R^k,
    /// with L^⊥ = R^{n−k} x {0}.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut frame = Vec::new();
        for i in 0..n {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            frame.push(v);
        }
        Self { n, k, frame }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn normal_frame(&self) -> &[Vec<f64>] {
        &self.frame[..self.n - self.k]
    }

    pub fn tangent_frame(&self) -> &[Vec<f64>] {
        &self.frame[self.n - self.k..]
    }

    /// Component of x orthogonal to L (the L^⊥ part).
    pub fn normal_component(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for nu in self.normal_frame() {
            let c = dot(x, nu);
            crate::geom::axpy(&mut out, c, nu);
        }
        out
    }

    pub fn distance(&self, x: &[f64]) -> f64 {
        norm(&self.normal_component(x))
    }

    /// `dvol_{L^⊥}` as an (n−k)-form value in ambient coordinates: the wedge
    /// of the normal covectors, expanded into dx_I coefficients (minors of
    /// the normal frame).
    pub fn normal_volume_form(&self) -> FormValue {
        frame_wedge(self.normal_frame(), self.n as u8)
    }
}

/// Wedge of the covectors dual to the given vectors, as a FormValue.
pub fn frame_wedge(vectors: &[Vec<f64>], n: u8) -> FormValue {
    let k = vectors.len();
    let mut out = FormValue::zero(n, k);
    for index in MultiIndex::all_of_degree(n, k) {
        // coefficient = det of the k x k minor with columns selected by index
        let minor: Vec<Vec<f64>> = vectors
            .iter()
            .map(|v| index.indices().iter().map(|&j| v[(j - 1) as usize]).collect())
            .collect();
        let d = crate::geom::det_rows(&minor);
        if d.abs() > 0.0 {
            out.set(index, d);
        }
    }
    out
}

/// Green form of a linear subspace (Eq. for G(L)):
///
/// `G(L)(x) = [(n−k−2)|S^{n−k−1}|]^{−1} d(x,L)^{2−(n−k)} dvol_{L^⊥}`.
pub fn green_linear_subspace_value(l: &LinearSubspaceSpec, x: &[f64]) -> Result<FormValue> {
    let (n, k) = (l.n(), l.k());
    if n - k < 3 {
        return Err(Error::UnsupportedCodimension { n: n as u8, k });
    }
    let r = l.distance(x);
    if r < 1e-300 {
        return Err(Error::SingularInput { context: "G(L) on the subspace".into() });
    }
    let m = n - k;
    let c = 1.0 / ((m as f64 - 2.0) * sphere_volume(m - 1));
    Ok(l.normal_volume_form().scale(c * r.powi(2 - m as i32)))
}

/// Biot-Savart form of a linear subspace (codimension ≥ 3):
///
/// `BS(L)(x) = |S^{n−k−1}|^{−1} r^{−(n−k−1)} ι_{∇r} dvol_{L^⊥}`.
pub fn bs_linear_subspace_value(l: &LinearSubspaceSpec, x: &[f64]) -> Result<FormValue> {
    let (n, k) = (l.n(), l.k());
    if n - k < 3 {
        return Err(Error::UnsupportedCodimension { n: n as u8, k });
    }
    let nc = l.normal_component(x);
    let r = norm(&nc);
    if r < 1e-300 {
        return Err(Error::SingularInput { context: "BS(L) on the subspace".into() });
    }
    let grad_r = crate::geom::scale(&nc, 1.0 / r);
    let m = n - k;
    let c = 1.0 / (sphere_volume(m - 1) * r.powi(m as i32 - 1));
    Ok(l.normal_volume_form().contract(&grad_r).scale(c))
}

/// Heat evolution of a closed curve current in flat R^3: the smooth 2-form
///
/// `Ω_t(x) = Σ_i (−1)^{i−1} [∮_K (4πt)^{−3/2} e^{−|x−γ(s)|²/4t} γ_i'(s) ds] dx_{{i}^c}`
///
/// computed by periodic-trapezoid quadrature with `quad_n` nodes.
pub fn heat_evolve_curve_r3(knot: &Knot, t: f64, x: &[f64], quad_n: usize) -> Result<FormValue> {
    if t <= 0.0 {
        return Err(Error::NonPositiveTime { t });
    }
    assert_eq!(knot.dim(), 3);
    let gauss_norm = (4.0 * PI * t).powf(-1.5);
    let h = std::f64::consts::TAU / quad_n as f64;
    let mut c = [0.0f64; 3];
    for q in 0..quad_n {
        let s = q as f64 * h;
        let p = knot.position(s);
        let v = knot.velocity(s);
        let d2 = (x[0] - p[0]).powi(2) + (x[1] - p[1]).powi(2) + (x[2] - p[2]).powi(2);
        let g = gauss_norm * (-d2 / (4.0 * t)).exp();
        for i in 0..3 {
            c[i] += g * v[i] * h;
        }
    }
    let mut out = FormValue::zero(3, 2);
    for i in 1..=3u8 {
        let sign = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let index = MultiIndex::new(&[i], 3).unwrap().complement();
        out.set(index, sign * c[(i - 1) as usize]);
    }
    Ok(out)
}

/// Flat heat kernel weight `(4πt)^{−n/2} e^{−r²/4t}`.
pub fn heat_weight(n: usize, t: f64, r: f64) -> f64 {
    (4.0 * PI * t).powf(-(n as f64) / 2.0) * (-r * r / (4.0 * t)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::MultiIndex;

    fn mi(ix: &[u8], n: u8) -> MultiIndex {
        MultiIndex::new(ix, n).unwrap()
    }

    #[test]
    fn sphere_volumes() {
        assert!((sphere_volume(1) - 2.0 * PI).abs() < 1e-12);
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-12);
        assert!((sphere_volume(3) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn green_kernel_scalar_case() {
        let g = green_kernel_value(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], 0).unwrap();
        let c = g.coeff(&mi(&[1, 2, 3], 3), &MultiIndex::empty(3));
        assert!((c - 1.0 / (4.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn green_kernel_one_forms_magnitude() {
        // n=3, k=1: each surviving coefficient has magnitude c_3 = 1/(4π)
        let g = green_kernel_value(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], 1).unwrap();
        let mut count = 0;
        for (_, c) in g.iter() {
            assert!((c.abs() - 1.0 / (4.0 * PI)).abs() < 1e-12);
            count += 1;
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn green_kernel_reflection_symmetry() {
        // R*(G_{n−k}) = (−1)^n G_k at random-ish points for n ∈ {3,4}
        for n in [3usize, 4] {
            let x: Vec<f64> = (0..n).map(|i| 0.3 + 0.21 * i as f64).collect();
            let y: Vec<f64> = (0..n).map(|i| -0.5 + 0.4 * (i as f64).sin()).collect();
            let rn = if n % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..=n {
                let gk = green_kernel_value(&x, &y, k).unwrap();
                let gnk = green_kernel_value(&y, &x, n - k).unwrap();
                // R* swaps slots: coefficient of (A,B) in R*G_{n−k} is the
                // coefficient of (B,A) in G_{n−k}(y,x) times the reorder sign
                // (−1)^{|A||B|}.
                for (pair, c) in gk.iter() {
                    let (a, b) = pair;
                    let reorder =
                        if (a.degree() * b.degree()) % 2 == 0 { 1.0 } else { -1.0 };
                    let other = gnk.coeff(b, a) * reorder;
                    assert!(
                        (rn * c - other).abs() < 1e-12,
                        "n={n} k={k} pair ({a:?},{b:?}): {c} vs {other}"
                    );
                }
            }
        }
    }

    #[test]
    fn bs_delta0_axis_value() {
        let f = bs_delta0_value(&[1.0, 0.0, 0.0]).unwrap();
        assert!((f.coeff(&mi(&[2, 3], 3)) - 1.0 / (4.0 * PI)).abs() < 1e-14);
        assert_eq!(f.coeff(&mi(&[1, 2], 3)), 0.0);
        assert_eq!(f.coeff(&mi(&[1, 3], 3)), 0.0);
    }

    #[test]
    fn bs_delta0_scale_invariance() {
        // coefficient(λx) = λ^{1−n} coefficient(x)
        let x = [0.4, -0.7, 0.2];
        let f1 = bs_delta0_value(&x).unwrap();
        let lam = 3.7;
        let xs: Vec<f64> = x.iter().map(|v| v * lam).collect();
        let f2 = bs_delta0_value(&xs).unwrap();
        for (i, c) in f1.iter() {
            assert!((f2.coeff(i) - c * lam.powi(-2)).abs() < 1e-14);
        }
    }

    #[test]
    fn bs_delta0_sphere_integral_is_one() {
        // ∫_{S^2} BS(δ_0) = 1 by 2D product quadrature (trapezoid in φ,
        // Gauss-Legendre in cos θ)
        let (cos_nodes, cos_w) = crate::quad::gauss_legendre(24);
        let n_phi = 48;
        let hphi = std::f64::consts::TAU / n_phi as f64;
        let mut total = 0.0;
        for (ct, w) in cos_nodes.iter().zip(&cos_w) {
            let st = (1.0 - ct * ct).sqrt();
            for q in 0..n_phi {
                let phi = q as f64 * hphi;
                let x = [st * phi.cos(), st * phi.sin(), *ct];
                // tangent vectors ∂_θ' (θ' the polar angle) and ∂_φ scaled:
                // with u = cos θ, ∂_u x and ∂_φ x give dA = du dφ weighting
                let dxdu = [
                    -ct / st * phi.cos(),
                    -ct / st * phi.sin(),
                    1.0,
                ];
                let dxdphi = [-st * phi.sin(), st * phi.cos(), 0.0];
                let f = bs_delta0_value(&x).unwrap();
                // orientation: outward normal first ⇒ (∂_φ, ∂_u)? Fix by the
                // sign of det(x, a, b): choose the order giving +.
                let or = crate::geom::det3(&x, &dxdphi, &dxdu);
                let val = if or > 0.0 {
                    f.apply(&[&dxdphi, &dxdu])
                } else {
                    f.apply(&[&dxdu, &dxdphi])
                };
                total += w * hphi * val;
            }
        }
        assert!((total - 1.0).abs() < 1e-10, "sphere integral {total}");
    }

    #[test]
    fn bs_diagonal_hand_expansion() {
        // n=3, x=(1,0,0), y=0: (1/4π)(dx_2−dy_2)∧(dx_3−dy_3)
        let d = bs_diagonal_value(&[1.0, 0.0, 0.0], &[0.0; 3]).unwrap();
        let c = 1.0 / (4.0 * PI);
        let e = MultiIndex::empty(3);
        assert!((d.coeff(&mi(&[2, 3], 3), &e) - c).abs() < 1e-14);
        assert!((d.coeff(&e, &mi(&[2, 3], 3)) - c).abs() < 1e-14);
        assert!((d.coeff(&mi(&[2], 3), &mi(&[3], 3)) + c).abs() < 1e-14);
        assert!((d.coeff(&mi(&[3], 3), &mi(&[2], 3)) - c).abs() < 1e-14);
    }

    #[test]
    fn bs_diagonal_matches_remark_coefficients() {
        // b_{23} = (1/4π)(y_1−x_1)/|x−y|³ on dx_2 ∧ dy_3, with the cube
        // exponent used uniformly (b_{12} as printed lacks it; the expansion
        // of the product formula forces the cube).
        let x = [0.3, -0.2, 0.9];
        let y = [-0.5, 0.4, 0.1];
        let r = norm(&sub(&x, &y));
        let d = bs_diagonal_value(&x, &y).unwrap();
        let c = 1.0 / (4.0 * PI * r.powi(3));
        let b23 = d.coeff(&mi(&[2], 3), &mi(&[3], 3));
        assert!((b23 - c * (y[0] - x[0])).abs() < 1e-13);
        let b13 = d.coeff(&mi(&[1], 3), &mi(&[3], 3));
        assert!((b13 + c * (y[1] - x[1])).abs() < 1e-13);
        let b12 = d.coeff(&mi(&[1], 3), &mi(&[2], 3));
        assert!((b12 - c * (y[2] - x[2])).abs() < 1e-13);
    }

    #[test]
    fn bs_diagonal_pullback_identity() {
        // bs_diagonal == β*(BS(δ_0)) coefficientwise at pseudo-random pairs
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..100 {
            let x: Vec<f64> = (0..3).map(|_| 4.0 * next()).collect();
            let y: Vec<f64> = (0..3).map(|_| 4.0 * next()).collect();
            if norm(&sub(&x, &y)) < 1e-3 {
                continue;
            }
            let a = bs_diagonal_value(&x, &y).unwrap();
            let b = bs_diagonal_via_pullback(&x, &y).unwrap();
            assert!(a.sub(&b).sup_norm() < 1e-12);
        }
    }

    #[test]
    fn bs_linear_subspace_point_case_matches_delta0() {
        // n=3, k=0: same formula as BS(δ_0)
        let l = LinearSubspaceSpec::coordinate(3, 0);
        let mut state = 123456789u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..50 {
            let x: Vec<f64> = (0..3).map(|_| 3.0 * next()).collect();
            if norm(&x) < 1e-2 {
                continue;
            }
            let a = bs_linear_subspace_value(&l, &x).unwrap();
            let b = bs_delta0_value(&x).unwrap();
            assert!(a.sub_form(&b).sup_norm() < 1e-13);
        }
    }

    #[test]
    fn bs_linear_subspace_r4_axis_example() {
        // n=4, k=1, L = x_4-axis, x = (1,0,0,0): (1/4π) dx_2∧dx_3
        let l = LinearSubspaceSpec::coordinate(4, 1);
        let f = bs_linear_subspace_value(&l, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((f.coeff(&mi(&[2, 3], 4)) - 1.0 / (4.0 * PI)).abs() < 1e-14);
        assert!(f.sup_norm() - 1.0 / (4.0 * PI) < 1e-14);
    }

    #[test]
    fn green_linear_subspace_example() {
        // n=3, k=0, x=(2,0,0): (1/(4π·2)) dx_1∧dx_2∧dx_3
        let l = LinearSubspaceSpec::coordinate(3, 0);
        let f = green_linear_subspace_value(&l, &[2.0, 0.0, 0.0]).unwrap();
        assert!((f.coeff(&mi(&[1, 2, 3], 3)) - 1.0 / (8.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn green_linear_rotation_equivariance() {
        // the scalar r-profile depends only on d(x, L)
        let l0 = LinearSubspaceSpec::coordinate(4, 1);
        // rotate x1-x2 plane by 0.7 and x3-x4 by -0.3
        let (c1, s1) = (0.7f64.cos(), 0.7f64.sin());
        let (c2, s2) = ((-0.3f64).cos(), (-0.3f64).sin());
        let rot = |v: &[f64]| {
            vec![
                c1 * v[0] - s1 * v[1],
                s1 * v[0] + c1 * v[1],
                c2 * v[2] - s2 * v[3],
                s2 * v[2] + c2 * v[3],
            ]
        };
        let frame: Vec<Vec<f64>> = (0..4)
            .map(|i| {
                let mut v = vec![0.0; 4];
                v[i] = 1.0;
                rot(&v)
            })
            .collect();
        let l1 = LinearSubspaceSpec::new(4, 1, frame).unwrap();
        let x = [0.9, -0.4, 0.3, 1.2];
        let xr = rot(&x);
        let f0 = green_linear_subspace_value(&l0, &x).unwrap();
        let f1 = green_linear_subspace_value(&l1, &xr).unwrap();
        // profile: compare the full coefficient norms and distances
        assert!((l0.distance(&x) - l1.distance(&xr)).abs() < 1e-12);
        let n0: f64 = f0.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        let n1: f64 = f1.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        assert!((n0 - n1).abs() < 1e-12);
    }

    #[test]
    fn errors_on_singular_inputs() {
        assert!(green_kernel_value(&[0.0; 3], &[0.0; 3], 1).is_err());
        assert!(bs_delta0_value(&[0.0; 3]).is_err());
        let l = LinearSubspaceSpec::coordinate(4, 1);
        assert!(bs_linear_subspace_value(&l, &[0.0, 0.0, 0.0, 5.0]).is_err());
        assert!(matches!(
            bs_linear_subspace_value(&LinearSubspaceSpec::coordinate(4, 2), &[1.0, 0.0, 0.0, 0.0]),
            Err(Error::UnsupportedCodimension { .. })
        ));
    }
}

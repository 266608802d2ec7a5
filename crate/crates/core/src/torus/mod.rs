//! Exact truncated-Fourier Hodge calculus on flat tori T^n = R^n/(2πZ)^n.
//!
//! A degree-k form is a table of complex coefficients per (mode, multi-index)
//! with modes m ∈ Z^n, |m|_∞ ≤ M. On this space d, d*, Δ, the Hodge star,
//! the heat semigroup, the Green operator and the harmonic projection act
//! exactly (machine epsilon); truncation only enters when a form is built
//! from off-grid data such as a knot current.

mod current;
mod diag_kernel;
mod signs;

pub use current::{
    biot_savart_of_knot, bs_far_field, current_from_knot, ewald_eval_bs, harmonic_class,
    EwaldParams,
};
pub use diag_kernel::{dlf2_identity_residual, dlf_identity_residual};
pub use signs::{verify_current_op_signs, SignCheckEntry, SignCheckReport};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exterior::{
    codiff_sign, epsilon_exponent, hodge_star_basis, wedge_basis, MultiIndex, SignedIndex,
};
use crate::form_value::FormValue;

/// The flat torus R^n/(2πZ)^n; the period is fixed at 2π per coordinate so
/// the Laplace eigenvalues are the integers |m|².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusGeometry {
    n: u8,
}

impl TorusGeometry {
    pub fn new(n: u8) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::InvalidConfig { reason: format!("torus dimension {n} not in 2..=4") });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn volume(&self) -> f64 {
        std::f64::consts::TAU.powi(self.n as i32)
    }
}

/// Dense grid of Fourier modes `m ∈ Z^n`, `|m|_∞ ≤ M`, with a fixed linear
/// ordering used by every deterministic reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeGrid {
    n: u8,
    truncation: i32,
}

impl ModeGrid {
    pub fn new(n: u8, truncation: i32) -> Self {
        assert!(truncation >= 1);
        Self { n, truncation }
    }

    pub fn len(&self) -> usize {
        (2 * self.truncation as usize + 1).pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn truncation(&self) -> i32 {
        self.truncation
    }

    pub fn index_of(&self, m: &[i32]) -> Option<usize> {
        let w = 2 * self.truncation + 1;
        let mut idx = 0usize;
        for &c in m.iter().rev() {
            if c.abs() > self.truncation {
                return None;
            }
            idx = idx * w as usize + (c + self.truncation) as usize;
        }
        Some(idx)
    }

    pub fn mode_at(&self, idx: usize) -> Vec<i32> {
        let w = (2 * self.truncation + 1) as usize;
        let mut rem = idx;
        let mut m = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            m.push((rem % w) as i32 - self.truncation);
            rem /= w;
        }
        m
    }

    pub fn norm2_at(&self, idx: usize) -> f64 {
        self.mode_at(idx).iter().map(|&c| (c as f64) * (c as f64)).sum()
    }

    pub fn negate_index(&self, idx: usize) -> usize {
        let m = self.mode_at(idx);
        let neg: Vec<i32> = m.iter().map(|c| -c).collect();
        self.index_of(&neg).unwrap()
    }
}

/// A degree-k form on T^n as a truncated table of complex coefficients:
/// `ω = Σ_{m,I} c_{m,I} e^{i m·x} dx_I` with the reality constraint
/// `c_{−m,I} = conj(c_{m,I})`.
#[derive(Clone, Debug)]
pub struct FourierForm {
    geometry: TorusGeometry,
    degree: usize,
    modes: ModeGrid,
    /// one dense mode vector per multi-index of the given degree, in the
    /// lexicographic index order
    index_list: Vec<MultiIndex>,
    coeffs: Vec<Vec<Complex64>>,
}

impl FourierForm {
    pub fn zero(geometry: TorusGeometry, degree: usize, truncation: i32) -> Self {
        let modes = ModeGrid::new(geometry.n(), truncation);
        let index_list = MultiIndex::all_of_degree(geometry.n(), degree);
        let coeffs = index_list.iter().map(|_| vec![Complex64::ZERO; modes.len()]).collect();
        Self { geometry, degree, modes, index_list, coeffs }
    }

    pub fn geometry(&self) -> TorusGeometry {
        self.geometry
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn truncation(&self) -> i32 {
        self.modes.truncation()
    }

    pub fn modes(&self) -> &ModeGrid {
        &self.modes
    }

    pub fn index_list(&self) -> &[MultiIndex] {
        &self.index_list
    }

    fn slot(&self, index: &MultiIndex) -> Option<usize> {
        self.index_list.iter().position(|i| i == index)
    }

    pub fn coeff(&self, m: &[i32], index: &MultiIndex) -> Complex64 {
        match (self.modes.index_of(m), self.slot(index)) {
            (Some(mi), Some(si)) => self.coeffs[si][mi],
            _ => Complex64::ZERO,
        }
    }

    pub fn set_coeff(&mut self, m: &[i32], index: &MultiIndex, value: Complex64) {
        let mi = self.modes.index_of(m).expect("mode inside truncation");
        let si = self.slot(index).expect("index of matching degree");
        self.coeffs[si][mi] = value;
    }

    pub fn add_coeff(&mut self, m: &[i32], index: &MultiIndex, value: Complex64) {
        let mi = self.modes.index_of(m).expect("mode inside truncation");
        let si = self.slot(index).expect("index of matching degree");
        self.coeffs[si][mi] += value;
    }

    /// Raw coefficient storage for one multi-index slot.
    pub fn slot_coeffs(&self, slot: usize) -> &[Complex64] {
        &self.coeffs[slot]
    }

    /// Largest coefficient magnitude.
    pub fn sup_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0f64, |m, c| m.max(c.norm()))
    }

    /// Largest violation of the reality constraint c(−m) = conj(c(m)).
    pub fn reality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for slot in &self.coeffs {
            for idx in 0..self.modes.len() {
                let neg = self.modes.negate_index(idx);
                worst = worst.max((slot[idx] - slot[neg].conj()).norm());
            }
        }
        worst
    }

    pub fn scale(&self, factor: f64) -> FourierForm {
        let mut out = self.clone();
        for slot in &mut out.coeffs {
            for c in slot.iter_mut() {
                *c *= factor;
            }
        }
        out
    }

    pub fn add_form(&self, other: &FourierForm) -> FourierForm {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.modes, other.modes);
        let mut out = self.clone();
        for (slot, oslot) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in slot.iter_mut().zip(oslot) {
                *c += o;
            }
        }
        out
    }

    pub fn sub_form(&self, other: &FourierForm) -> FourierForm {
        self.add_form(&other.scale(-1.0))
    }

    /// Map every coefficient through `f(|m|², c)`, the shared skeleton of the
    /// modewise operators (Δ, heat, Green, harmonic projection).
    fn map_modewise(&self, f: impl Fn(f64, Complex64) -> Complex64) -> FourierForm {
        let mut out = self.clone();
        let norms: Vec<f64> = (0..self.modes.len()).map(|i| self.modes.norm2_at(i)).collect();
        for slot in &mut out.coeffs {
            for (idx, c) in slot.iter_mut().enumerate() {
                *c = f(norms[idx], *c);
            }
        }
        out
    }
}

/// Modewise exterior derivative:
/// `d(c e^{im·x} dx_I) = Σ_j i m_j c e^{im·x} dx_j ∧ dx_I`.
pub fn d_form(form: &FourierForm) -> Result<FourierForm> {
    let n = form.geometry().n();
    if form.degree() == n as usize {
        return Err(Error::TopDegreeInput);
    }
    let mut out = FourierForm::zero(form.geometry(), form.degree() + 1, form.truncation());
    for (slot, index) in form.index_list.iter().enumerate() {
        for j in 1..=n {
            let sj = MultiIndex::new(&[j], n).unwrap();
            if let SignedIndex::Term { sign, index: target } = wedge_basis(&sj, index) {
                let tslot = out.slot(&target).unwrap();
                let sf = sign as f64;
                for (mi, &c) in form.coeffs[slot].iter().enumerate() {
                    if c != Complex64::ZERO {
                        let m = out.modes.mode_at(mi);
                        let factor = Complex64::new(0.0, sf * m[(j - 1) as usize] as f64);
                        out.coeffs[tslot][mi] += factor * c;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Hodge star, coefficientwise: `coeff'(m, I^c) = (−1)^{ε(I)} coeff(m, I)`.
pub fn hodge_star_torus(form: &FourierForm) -> FourierForm {
    let n = form.geometry().n();
    let mut out = FourierForm::zero(form.geometry(), n as usize - form.degree(), form.truncation());
    for (slot, index) in form.index_list.iter().enumerate() {
        if let SignedIndex::Term { sign, index: target } = hodge_star_basis(index) {
            let tslot = out.slot(&target).unwrap();
            let sf = sign as f64;
            for (mi, &c) in form.coeffs[slot].iter().enumerate() {
                out.coeffs[tslot][mi] = sf * c;
            }
        }
    }
    debug_assert_eq!(
        0,
        form.index_list.iter().filter(|i| epsilon_exponent(i) == u32::MAX).count()
    );
    out
}

/// Codifferential `d* = (−1)^{ν_{n,k}} * d *`.
pub fn dstar_form(form: &FourierForm) -> Result<FourierForm> {
    if form.degree() == 0 {
        return Err(Error::DegreeZeroInput);
    }
    let n = form.geometry().n();
    let starred = hodge_star_torus(form);
    let d_starred = d_form(&starred)?;
    let back = hodge_star_torus(&d_starred);
    Ok(back.scale(codiff_sign(n, form.degree()) as f64))
}

/// Hodge Laplacian, `coeff'(m, I) = |m|² coeff(m, I)`.
pub fn laplace_form(form: &FourierForm) -> FourierForm {
    form.map_modewise(|n2, c| n2 * c)
}

/// Heat semigroup `e^{−tΔ}`: `coeff'(m, I) = e^{−t|m|²} coeff(m, I)`.
pub fn heat_semigroup(form: &FourierForm, t: f64) -> Result<FourierForm> {
    if t < 0.0 {
        return Err(Error::NonPositiveTime { t });
    }
    Ok(form.map_modewise(|n2, c| (-t * n2).exp() * c))
}

/// Green operator: zero on the harmonic (m = 0) modes, `1/|m|²` elsewhere.
pub fn green_op(form: &FourierForm) -> FourierForm {
    form.map_modewise(|n2, c| if n2 == 0.0 { Complex64::ZERO } else { c / n2 })
}

/// Harmonic projection: keeps only the m = 0 coefficients.
pub fn harmonic_projection(form: &FourierForm) -> FourierForm {
    form.map_modewise(|n2, c| if n2 == 0.0 { c } else { Complex64::ZERO })
}

/// Pointwise evaluation by direct Fourier summation in the fixed mode order.
/// The imaginary parts cancel by the reality constraint; the real parts are
/// returned as a covector/form value.
pub fn eval_form_at(form: &FourierForm, x: &[f64]) -> FormValue {
    let n = form.geometry().n();
    let mtr = form.truncation();
    // factorized phases: e^{i m_a x_a} per axis and mode component
    let w = (2 * mtr + 1) as usize;
    let mut phase = vec![vec![Complex64::ZERO; w]; n as usize];
    for a in 0..n as usize {
        for (pos, slot) in phase[a].iter_mut().enumerate() {
            let m = pos as i32 - mtr;
            *slot = Complex64::from_polar(1.0, m as f64 * x[a]);
        }
    }
    let mut out = FormValue::zero(n, form.degree());
    for (slot, index) in form.index_list.iter().enumerate() {
        let mut total = Complex64::ZERO;
        for (mi, &c) in form.coeffs[slot].iter().enumerate() {
            if c != Complex64::ZERO {
                let m = form.modes.mode_at(mi);
                let mut e = Complex64::new(1.0, 0.0);
                for a in 0..n as usize {
                    e *= phase[a][(m[a] + mtr) as usize];
                }
                total += c * e;
            }
        }
        if total.norm() > 0.0 {
            out.set(index.clone(), total.re);
        }
    }
    out
}

/// Exact integral `∫_{T^n} α ∧ β` for forms of complementary degree,
/// computed in mode space (no truncation loss: the integral pairs m with −m).
pub fn wedge_integral(a: &FourierForm, b: &FourierForm) -> f64 {
    let n = a.geometry().n();
    assert_eq!(a.degree() + b.degree(), n as usize);
    let vol = a.geometry().volume();
    let mut total = Complex64::ZERO;
    for (sa, ia) in a.index_list.iter().enumerate() {
        let ib = ia.complement();
        let Some(sb) = b.slot(&ib) else { continue };
        let sign = match wedge_basis(ia, &ib) {
            SignedIndex::Term { sign, .. } => sign as f64,
            SignedIndex::Zero => continue,
        };
        // Σ_m a(m) b(−m): iterate shared modes inside the smaller truncation
        let (small, large, swap) = if a.truncation() <= b.truncation() {
            (a, b, false)
        } else {
            (b, a, true)
        };
        for mi in 0..small.modes.len() {
            let m = small.modes.mode_at(mi);
            let neg: Vec<i32> = m.iter().map(|c| -c).collect();
            let Some(li) = large.modes.index_of(&neg) else { continue };
            let (ca, cb) = if !swap {
                (small.coeffs[sa][mi], large.coeffs[sb][li])
            } else {
                (large.coeffs[sa][li], small.coeffs[sb][mi])
            };
            total += sign * ca * cb;
        }
    }
    debug_assert!(total.im.abs() < 1e-9 * (1.0 + total.re.abs()));
    vol * total.re
}

/// Parseval inner product `⟨α, β⟩ = ∫ α ∧ *β` for same-degree forms.
pub fn inner_product(a: &FourierForm, b: &FourierForm) -> f64 {
    wedge_integral(a, &hodge_star_torus(b))
}

/// Deterministically seeded pseudo-random real form, for identity tests.
pub fn random_form(
    geometry: TorusGeometry,
    degree: usize,
    truncation: i32,
    seed: u64,
) -> FourierForm {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut form = FourierForm::zero(geometry, degree, truncation);
    let nmodes = form.modes.len();
    let nslots = form.index_list.len();
    for slot in 0..nslots {
        let mut data = vec![Complex64::ZERO; nmodes];
        for (mi, c) in data.iter_mut().enumerate() {
            let m = form.modes.mode_at(mi);
            // fill each conjugate pair once: the m = 0 mode (real) and the
            // half-space where the last nonzero component is positive
            let zero = m.iter().all(|&x| x == 0);
            let lead_positive = m.iter().rev().find(|&&x| x != 0).map_or(false, |&lead| lead > 0);
            if zero || lead_positive {
                let re = rng.gen_range(-1.0..1.0);
                let im = if zero { 0.0 } else { rng.gen_range(-1.0..1.0) };
                *c = Complex64::new(re, im);
            }
        }
        for mi in 0..nmodes {
            let neg = form.modes.negate_index(mi);
            if data[mi] == Complex64::ZERO && data[neg] != Complex64::ZERO {
                data[mi] = data[neg].conj();
            }
        }
        form.coeffs[slot] = data;
    }
    form
}

//! Diagonal kernels on T^n x T^n: the spectral Green kernel, the diagonal
//! current and its harmonic representative, and the operators d_x*, d_y*, Δ
//! acting on them modewise. Everything here is exact arithmetic on paired
//! modes (−m, m); the identities checked are
//!
//! * `Δ(½ G_k) = δ^{k,n−k} − H^{k,n−k}`,
//! * `d_x* G_k = d_y* G_{k+1}` and hence `d*(½ G) = d_y* G`,
//! * the kernel of `(−1)^n d* G_k` is `d_y* G_k` (apply-oracle).

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{FourierForm, ModeGrid, TorusGeometry};
use crate::exterior::{epsilon_exponent, MultiIndex};

/// A kernel `Σ_m Σ_{A,B} g_{A,B}(m) e^{−i m·x} e^{i m·y} dx_A ∧ dy_B`.
#[derive(Clone, Debug)]
pub struct DiagKernel {
    n: u8,
    modes: ModeGrid,
    entries: BTreeMap<(MultiIndex, MultiIndex), Vec<Complex64>>,
}

impl DiagKernel {
    pub fn zero(n: u8, truncation: i32) -> Self {
        Self { n, modes: ModeGrid::new(n, truncation), entries: BTreeMap::new() }
    }

    fn slot_mut(&mut self, a: MultiIndex, b: MultiIndex) -> &mut Vec<Complex64> {
        let len = self.modes.len();
        self.entries.entry((a, b)).or_insert_with(|| vec![Complex64::ZERO; len])
    }

    pub fn scale(&self, factor: f64) -> DiagKernel {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            for c in v.iter_mut() {
                *c *= factor;
            }
        }
        out
    }

    pub fn add(&self, other: &DiagKernel) -> DiagKernel {
        let mut out = self.clone();
        for (key, v) in &other.entries {
            let slot = out.slot_mut(key.0.clone(), key.1.clone());
            for (c, o) in slot.iter_mut().zip(v) {
                *c += o;
            }
        }
        out
    }

    pub fn sub(&self, other: &DiagKernel) -> DiagKernel {
        self.add(&other.scale(-1.0))
    }

    pub fn sup(&self) -> f64 {
        self.entries
            .values()
            .flat_map(|v| v.iter())
            .fold(0.0f64, |m, c| m.max(c.norm()))
    }

    /// The spectral Green kernel on k-forms:
    /// `G_k = (−1)^{kn} Σ_{m≠0,|I|=k} (−1)^{ε(I)} |m|^{−2} e^{−imx} e^{imy} dx_{I^c} ∧ dy_I / (2π)^n`.
    pub fn green(n: u8, k: usize, truncation: i32) -> Self {
        Self::weighted(n, k, truncation, |n2| if n2 == 0.0 { 0.0 } else { 1.0 / n2 })
    }

    /// The (k, n−k) part of the diagonal: same structure with weight 1 on
    /// every mode (the t → 0 heat kernel).
    pub fn diagonal_part(n: u8, k: usize, truncation: i32) -> Self {
        Self::weighted(n, k, truncation, |_| 1.0)
    }

    /// The harmonic representative `H^{k,n−k}`: the m = 0 term only.
    pub fn harmonic_part(n: u8, k: usize, truncation: i32) -> Self {
        Self::weighted(n, k, truncation, |n2| if n2 == 0.0 { 1.0 } else { 0.0 })
    }

    fn weighted(n: u8, k: usize, truncation: i32, weight: impl Fn(f64) -> f64) -> Self {
        let mut out = Self::zero(n, truncation);
        let vol = TorusGeometry::new(n).unwrap().volume();
        let kn_sign = if (k * n as usize) % 2 == 0 { 1.0 } else { -1.0 };
        let norms: Vec<f64> = (0..out.modes.len()).map(|i| out.modes.norm2_at(i)).collect();
        for i in MultiIndex::all_of_degree(n, k) {
            let eps = if epsilon_exponent(&i) % 2 == 0 { 1.0 } else { -1.0 };
            let base = kn_sign * eps / vol;
            let slot = out.slot_mut(i.complement(), i.clone());
            for (mi, c) in slot.iter_mut().enumerate() {
                *c = Complex64::new(base * weight(norms[mi]), 0.0);
            }
        }
        out
    }

    /// The Laplacian `Δ = Δ_x + Δ_y`, acting modewise as `2|m|²`.
    pub fn laplacian(&self) -> DiagKernel {
        let mut out = self.clone();
        let norms: Vec<f64> = (0..self.modes.len()).map(|i| self.modes.norm2_at(i)).collect();
        for v in out.entries.values_mut() {
            for (mi, c) in v.iter_mut().enumerate() {
                *c *= 2.0 * norms[mi];
            }
        }
        out
    }

    /// `d_x*`: flat codifferential in the x slot; the x phase is `e^{−i m·x}`.
    pub fn dstar_x(&self) -> DiagKernel {
        let mut out = DiagKernel::zero(self.n, self.modes.truncation());
        for ((a, b), v) in &self.entries {
            for (pos, &ax) in a.indices().iter().enumerate() {
                let csign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let mut rest = a.indices().to_vec();
                rest.remove(pos);
                let target_a = MultiIndex::new(&rest, self.n).unwrap();
                let slot = out.slot_mut(target_a, b.clone());
                for (mi, c) in v.iter().enumerate() {
                    if *c != Complex64::ZERO {
                        let m = self.modes.mode_at(mi);
                        // d*(f dx_A) = −Σ_a (∂_a f) ι_a dx_A; ∂ e^{−imx} = −i m
                        let factor = Complex64::new(0.0, m[(ax - 1) as usize] as f64) * csign;
                        slot[mi] += factor * c;
                    }
                }
            }
        }
        out
    }

    /// `d_y*`: flat codifferential in the y slot, defined y-factor-first,
    /// so commuting past `dx_A` contributes `(−1)^{|A|}`.
    pub fn dstar_y(&self) -> DiagKernel {
        let mut out = DiagKernel::zero(self.n, self.modes.truncation());
        for ((a, b), v) in &self.entries {
            let pass = if a.degree() % 2 == 0 { 1.0 } else { -1.0 };
            for (pos, &by) in b.indices().iter().enumerate() {
                let csign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let mut rest = b.indices().to_vec();
                rest.remove(pos);
                let target_b = MultiIndex::new(&rest, self.n).unwrap();
                let slot = out.slot_mut(a.clone(), target_b);
                for (mi, c) in v.iter().enumerate() {
                    if *c != Complex64::ZERO {
                        let m = self.modes.mode_at(mi);
                        // ∂ e^{imy} = i m; with the −Σ of d* this gives −i m
                        let factor =
                            Complex64::new(0.0, -(m[(by - 1) as usize] as f64)) * pass * csign;
                        slot[mi] += factor * c;
                    }
                }
            }
        }
        out
    }

    /// Apply the kernel to a form: `(π_2)_* (K ∧ π_1^* ω)`. The x-slot index
    /// must complement the form's index; the fiber-first x integration gives
    /// `(−1)^{|B||A^c|} (−1)^{ε(A)} (2π)^n`.
    pub fn apply(&self, form: &FourierForm) -> FourierForm {
        let vol = TorusGeometry::new(self.n).unwrap().volume();
        // output degree: common |B| over entries (assume homogeneous kernel)
        let out_degree = self
            .entries
            .keys()
            .map(|(_, b)| b.degree())
            .next()
            .unwrap_or(0);
        let mut out = FourierForm::zero(form.geometry(), out_degree, form.truncation());
        for ((a, b), v) in &self.entries {
            let j = a.complement();
            if j.degree() != form.degree() {
                continue;
            }
            let par = (b.degree() * j.degree()) % 2;
            let eps = epsilon_exponent(a) % 2;
            let sign = if (par + eps as usize) % 2 == 0 { 1.0 } else { -1.0 };
            for mi in 0..form.modes().len() {
                let m = form.modes().mode_at(mi);
                let Some(ki) = self.modes.index_of(&m) else { continue };
                let g = v[ki];
                if g == Complex64::ZERO {
                    continue;
                }
                let c = form.coeff(&m, &j);
                if c != Complex64::ZERO {
                    out.add_coeff(&m, b, sign * vol * g * c);
                }
            }
        }
        out
    }
}

/// Max modewise residual of `Δ(½ G_k) − (δ^{k,n−k} − H^{k,n−k})`.
pub fn dlf_identity_residual(n: u8, k: usize, truncation: i32) -> f64 {
    let g = DiagKernel::green(n, k, truncation);
    let lhs = g.scale(0.5).laplacian();
    let rhs = DiagKernel::diagonal_part(n, k, truncation)
        .sub(&DiagKernel::harmonic_part(n, k, truncation));
    lhs.sub(&rhs).sup()
}

/// Max modewise residual of `d*(½ G) − d_y* G` for the total Green kernel
/// `G = Σ_k G_k`, together with the stepwise identity `d_x* G_k = d_y* G_{k+1}`.
pub fn dlf2_identity_residual(n: u8, truncation: i32) -> f64 {
    let mut total = DiagKernel::zero(n, truncation);
    for k in 0..=n as usize {
        total = total.add(&DiagKernel::green(n, k, truncation));
    }
    let lhs = total.dstar_x().add(&total.dstar_y()).scale(0.5);
    let rhs = total.dstar_y();
    let mut worst = lhs.sub(&rhs).sup();
    for k in 0..n as usize {
        let step = DiagKernel::green(n, k, truncation)
            .dstar_x()
            .sub(&DiagKernel::green(n, k + 1, truncation).dstar_y());
        worst = worst.max(step.sup());
    }
    worst
}

//! Pointwise values of forms and double forms as sparse coefficient tables.

use std::collections::BTreeMap;

use crate::exterior::{wedge_basis, MultiIndex, SignedIndex};

/// The value of a degree-k form at a point: coefficients over basis
/// covectors `dx_I`. Absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FormValue {
    n: u8,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl FormValue {
    pub fn zero(n: u8, degree: usize) -> Self {
        Self { n, degree, coeffs: BTreeMap::new() }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, index: MultiIndex, value: f64) {
        debug_assert_eq!(index.degree(), self.degree);
        debug_assert_eq!(index.n(), self.n);
        if value != 0.0 {
            self.coeffs.insert(index, value);
        } else {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&mut self, index: MultiIndex, value: f64) {
        let entry = self.coeffs.entry(index).or_insert(0.0);
        *entry += value;
    }

    pub fn coeff(&self, index: &MultiIndex) -> f64 {
        self.coeffs.get(index).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, factor: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|(i, c)| (i.clone(), c * factor)).collect();
        Self { n: self.n, degree: self.degree, coeffs }
    }

    pub fn add_form(&mut self, other: &FormValue) {
        debug_assert_eq!(self.degree, other.degree);
        for (i, c) in other.iter() {
            self.add(i.clone(), *c);
        }
    }

    pub fn sub_form(&self, other: &FormValue) -> Self {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add(i.clone(), -c);
        }
        out
    }

    /// Evaluate on `degree` tangent vectors (each of length n) by expanding
    /// each basis covector as the determinant of the selected components.
    pub fn apply(&self, vectors: &[&[f64]]) -> f64 {
        debug_assert_eq!(vectors.len(), self.degree);
        let mut total = 0.0;
        for (index, c) in &self.coeffs {
            total += c * det_minor(index.indices(), vectors);
        }
        total
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.values().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Interior product with a vector: `ι_v ω`.
    pub fn contract(&self, v: &[f64]) -> FormValue {
        let mut out = FormValue::zero(self.n, self.degree.saturating_sub(1));
        for (index, c) in &self.coeffs {
            for (pos, &j) in index.indices().iter().enumerate() {
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                let mut rest = index.indices().to_vec();
                rest.remove(pos);
                let sub = MultiIndex::new(&rest, self.n).expect("subindex valid");
                out.add(sub, sign * c * v[(j - 1) as usize]);
            }
        }
        out
    }

    /// Wedge product of pointwise values.
    pub fn wedge(&self, other: &FormValue) -> FormValue {
        let mut out = FormValue::zero(self.n, self.degree + other.degree);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if let SignedIndex::Term { sign, index } = wedge_basis(i, j) {
                    out.add(index, (sign as f64) * a * b);
                }
            }
        }
        out
    }
}

/// Determinant of the minor of the column-vectors selected by `rows`
/// (1-based component indices).
fn det_minor(rows: &[u8], vectors: &[&[f64]]) -> f64 {
    let k = rows.len();
    debug_assert_eq!(vectors.len(), k);
    match k {
        0 => 1.0,
        1 => vectors[0][(rows[0] - 1) as usize],
        2 => {
            let (a, b) = ((rows[0] - 1) as usize, (rows[1] - 1) as usize);
            vectors[0][a] * vectors[1][b] - vectors[0][b] * vectors[1][a]
        }
        _ => {
            // Laplace expansion along the first vector; k <= 6 in practice.
            let mut total = 0.0;
            for (pos, &r) in rows.iter().enumerate() {
                let sub_rows: Vec<u8> =
                    rows.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &x)| x).collect();
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                total += sign
                    * vectors[0][(r - 1) as usize]
                    * det_minor(&sub_rows, &vectors[1..]);
            }
            total
        }
    }
}

/// The value of a (p,q) double form at a point pair (x,y): coefficients over
/// pairs `(dx_I, dy_J)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleFormValue {
    n: u8,
    p: usize,
    q: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), f64>,
}

impl DoubleFormValue {
    pub fn zero(n: u8, p: usize, q: usize) -> Self {
        Self { n, p, q, coeffs: BTreeMap::new() }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn set(&mut self, ix: MultiIndex, iy: MultiIndex, value: f64) {
        debug_assert_eq!(ix.degree(), self.p);
        debug_assert_eq!(iy.degree(), self.q);
        if value != 0.0 {
            self.coeffs.insert((ix, iy), value);
        }
    }

    pub fn add(&mut self, ix: MultiIndex, iy: MultiIndex, value: f64) {
        *self.coeffs.entry((ix, iy)).or_insert(0.0) += value;
    }

    pub fn coeff(&self, ix: &MultiIndex, iy: &MultiIndex) -> f64 {
        self.coeffs.get(&(ix.clone(), iy.clone())).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &f64)> {
        self.coeffs.iter()
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.values().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let coeffs =
            self.coeffs.iter().map(|(k, c)| (k.clone(), c * factor)).collect();
        Self { n: self.n, p: self.p, q: self.q, coeffs }
    }

    pub fn sub(&self, other: &DoubleFormValue) -> DoubleFormValue {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            *out.coeffs.entry(k.clone()).or_insert(0.0) -= c;
        }
        out
    }

    /// Evaluate on x-slot and y-slot tangent vectors. Entries whose bidegree
    /// does not match the supplied arities pull back to zero on the slot
    /// subspaces and are skipped (this is how a mixed table restricts to a
    /// product of curves: only its (1,1) part survives).
    pub fn apply(&self, x_vectors: &[&[f64]], y_vectors: &[&[f64]]) -> f64 {
        let mut total = 0.0;
        for ((ix, iy), c) in &self.coeffs {
            if ix.degree() != x_vectors.len() || iy.degree() != y_vectors.len() {
                continue;
            }
            total += c * det_minor(ix.indices(), x_vectors) * det_minor(iy.indices(), y_vectors);
        }
        total
    }
}

/// Total-degree decomposition of a form on the product space pulled back
/// through `β(x,y) = x − y`: substitute `dz_i ↦ dx_i − dy_i` in each basis
/// covector of `form` and collect the (p,q) pieces.
pub fn expand_beta_pullback(form: &FormValue) -> DoubleFormValue {
    let n = form.n();
    let deg = form.degree();
    // accumulate into a map over (p, q) with p + q = deg; we return one table
    // holding every component, so use a DoubleFormValue with mixed bidegrees
    // disallowed -- instead callers get the full expansion via this helper
    // returning a vector of tables. Since downstream only needs the whole
    // collection, we flatten into one BTreeMap keyed by index pair.
    let mut out = MixedDoubleForm::zero(n, deg);
    for (index, c) in form.iter() {
        // expand the product over chosen slots: each index j in `index`
        // becomes dx_j (keep in x-slot) or -dy_j (y-slot).
        let ids = index.indices();
        let k = ids.len();
        for mask in 0u32..(1 << k) {
            let mut xs: Vec<u8> = Vec::new();
            let mut ys: Vec<u8> = Vec::new();
            // sign: (−1)^{#y} from the −dy factors, times the interleave sign
            // moving all chosen dy's to the right past later-chosen dx's.
            let mut sign = 1.0f64;
            let mut y_count_so_far = 0usize;
            for (pos, &j) in ids.iter().enumerate() {
                if mask & (1 << pos) == 0 {
                    // x slot: jumps over all y's already placed
                    if y_count_so_far % 2 == 1 {
                        sign = -sign;
                    }
                    xs.push(j);
                } else {
                    sign = -sign; // the minus in (dx_j − dy_j)
                    ys.push(j);
                    y_count_so_far += 1;
                }
            }
            let ix = MultiIndex::new(&xs, n).expect("sorted");
            let iy = MultiIndex::new(&ys, n).expect("sorted");
            out.add(ix, iy, sign * c);
        }
    }
    out.into_double_form()
}

/// Internal accumulator for mixed-bidegree expansions with fixed total degree.
struct MixedDoubleForm {
    n: u8,
    total: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), f64>,
}

impl MixedDoubleForm {
    fn zero(n: u8, total: usize) -> Self {
        Self { n, total, coeffs: BTreeMap::new() }
    }

    fn add(&mut self, ix: MultiIndex, iy: MultiIndex, value: f64) {
        debug_assert_eq!(ix.degree() + iy.degree(), self.total);
        *self.coeffs.entry((ix, iy)).or_insert(0.0) += value;
    }

    fn into_double_form(self) -> DoubleFormValue {
        // bidegree markers are advisory here: the table mixes (p,q) with
        // p+q = total, which is exactly what the diagonal kernels need.
        let mut out = DoubleFormValue {
            n: self.n,
            p: self.total,
            q: 0,
            coeffs: BTreeMap::new(),
        };
        for (k, v) in self.coeffs {
            if v != 0.0 {
                out.coeffs.insert(k, v);
            }
        }
        out
    }
}

/// Extract the (p,q)-bidegree part of a mixed table.
pub fn bidegree_part(form: &DoubleFormValue, p: usize, q: usize) -> DoubleFormValue {
    let mut out = DoubleFormValue::zero(form.n(), p, q);
    for ((ix, iy), c) in form.iter() {
        if ix.degree() == p && iy.degree() == q {
            out.set(ix.clone(), iy.clone(), *c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_matches_determinant() {
        let mut f = FormValue::zero(3, 2);
        f.set(MultiIndex::new(&[1, 2], 3).unwrap(), 1.0);
        let u = [1.0, 0.0, 0.0];
        let v = [0.0, 1.0, 0.0];
        assert_eq!(f.apply(&[&u, &v]), 1.0);
        assert_eq!(f.apply(&[&v, &u]), -1.0);
    }

    #[test]
    fn contract_volume_form() {
        let mut vol = FormValue::zero(3, 3);
        vol.set(MultiIndex::full(3), 1.0);
        let e1 = [1.0, 0.0, 0.0];
        let got = vol.contract(&e1);
        assert_eq!(got.coeff(&MultiIndex::new(&[2, 3], 3).unwrap()), 1.0);
    }

    #[test]
    fn beta_pullback_of_single_covector() {
        // dz_1 ↦ dx_1 − dy_1
        let mut f = FormValue::zero(3, 1);
        f.set(MultiIndex::new(&[1], 3).unwrap(), 1.0);
        let d = expand_beta_pullback(&f);
        let e = MultiIndex::empty(3);
        let i1 = MultiIndex::new(&[1], 3).unwrap();
        assert_eq!(d.coeff(&i1, &e), 1.0);
        assert_eq!(d.coeff(&e, &i1), -1.0);
    }

    #[test]
    fn beta_pullback_of_two_form() {
        // dz_2∧dz_3 ↦ (dx_2−dy_2)∧(dx_3−dy_3)
        let mut f = FormValue::zero(3, 2);
        f.set(MultiIndex::new(&[2, 3], 3).unwrap(), 1.0);
        let d = expand_beta_pullback(&f);
        let e = MultiIndex::empty(3);
        let i2 = MultiIndex::new(&[2], 3).unwrap();
        let i3 = MultiIndex::new(&[3], 3).unwrap();
        let i23 = MultiIndex::new(&[2, 3], 3).unwrap();
        assert_eq!(d.coeff(&i23, &e), 1.0);
        assert_eq!(d.coeff(&e, &i23), 1.0);
        // −dx_2∧dy_3 and −dy_2∧dx_3 = +dx_3∧dy_2
        assert_eq!(d.coeff(&i2, &i3), -1.0);
        assert_eq!(d.coeff(&i3, &i2), 1.0);
    }
}

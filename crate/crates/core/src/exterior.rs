//! Exact integer/sign arithmetic for multi-index exterior algebra on R^n.
//!
//! Basis covectors of degree k are indexed by strictly increasing subsets
//! `I ⊂ {1..n}`. All signs are exact integers; no floating point enters
//! this module. Degrees stay small (n ≤ 6 everywhere downstream), so
//! exhaustive enumeration of subsets is cheap and used freely in tests.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing list of indices in `1..=n`, identifying the basis
/// covector `dx_I = dx_{i_1} ∧ … ∧ dx_{i_k}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<u8>,
    n: u8,
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx{:?}/n={}", self.indices, self.n)
    }
}

impl MultiIndex {
    /// Build a multi-index, checking the strict-increase and range invariants.
    pub fn new(indices: &[u8], n: u8) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidMultiIndex {
                    reason: format!("indices not strictly increasing: {indices:?}"),
                });
            }
        }
        if let (Some(&first), Some(&last)) = (indices.first(), indices.last()) {
            if first < 1 || last > n {
                return Err(Error::InvalidMultiIndex {
                    reason: format!("index out of range 1..={n}: {indices:?}"),
                });
            }
        }
        Ok(Self { indices: indices.to_vec(), n })
    }

    /// The empty index (degree-0 basis element, the constant 1).
    pub fn empty(n: u8) -> Self {
        Self { indices: Vec::new(), n }
    }

    /// The full index `{1,…,n}` (the volume form).
    pub fn full(n: u8) -> Self {
        Self { indices: (1..=n).collect(), n }
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Degree k = |I|.
    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, j: u8) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    /// The complement `I^c` with respect to `{1..n}`.
    pub fn complement(&self) -> Self {
        let indices = (1..=self.n).filter(|j| !self.contains(*j)).collect();
        Self { indices, n: self.n }
    }

    /// All multi-indices of the given degree, in lexicographic order.
    pub fn all_of_degree(n: u8, k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn rec(n: u8, k: usize, start: u8, current: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
            if current.len() == k {
                out.push(MultiIndex { indices: current.clone(), n });
                return;
            }
            for j in start..=n {
                current.push(j);
                rec(n, k, j + 1, current, out);
                current.pop();
            }
        }
        rec(n, k, 1, &mut current, &mut out);
        out
    }
}

/// A basis covector with a sign, or the zero marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedIndex {
    /// `sign * dx_I` with sign in {-1, +1}.
    Term { sign: i8, index: MultiIndex },
    /// The zero covector (e.g. a wedge with a repeated index).
    Zero,
}

impl SignedIndex {
    pub fn term(sign: i8, index: MultiIndex) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        SignedIndex::Term { sign, index }
    }

    pub fn sign(&self) -> i8 {
        match self {
            SignedIndex::Term { sign, .. } => *sign,
            SignedIndex::Zero => 0,
        }
    }

    pub fn index(&self) -> Option<&MultiIndex> {
        match self {
            SignedIndex::Term { index, .. } => Some(index),
            SignedIndex::Zero => None,
        }
    }
}

/// ε(I) = Σ_{j∈I} j − Σ_{j=1}^{|I|} j, the number of elementary moves taking
/// `dx_I ∧ dx_{I^c}` to the volume form.
pub fn epsilon_exponent(i: &MultiIndex) -> u32 {
    let sum: u32 = i.indices.iter().map(|&j| j as u32).sum();
    let k = i.indices.len() as u32;
    sum - k * (k + 1) / 2
}

/// Hodge star on basis covectors: `*dx_I = (−1)^{ε(I)} dx_{I^c}`.
pub fn hodge_star_basis(i: &MultiIndex) -> SignedIndex {
    let sign = if epsilon_exponent(i) % 2 == 0 { 1 } else { -1 };
    SignedIndex::term(sign, i.complement())
}

/// Wedge of basis covectors. Zero if they share an index, otherwise the
/// shuffle sign and the sorted union.
pub fn wedge_basis(i: &MultiIndex, j: &MultiIndex) -> SignedIndex {
    debug_assert_eq!(i.n, j.n);
    // Count inversions while merging: each element of `j` that precedes an
    // element of `i` in the sorted union contributes one transposition.
    let mut merged = Vec::with_capacity(i.indices.len() + j.indices.len());
    let mut transpositions = 0usize;
    let (mut a, mut b) = (0usize, 0usize);
    while a < i.indices.len() || b < j.indices.len() {
        match (i.indices.get(a), j.indices.get(b)) {
            (Some(&x), Some(&y)) if x == y => return SignedIndex::Zero,
            (Some(&x), Some(&y)) if x < y => {
                merged.push(x);
                a += 1;
            }
            (Some(_), Some(&y)) => {
                // y jumps over the remaining elements of i
                transpositions += i.indices.len() - a;
                merged.push(y);
                b += 1;
            }
            (Some(&x), None) => {
                merged.push(x);
                a += 1;
            }
            (None, Some(&y)) => {
                merged.push(y);
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let sign = if transpositions % 2 == 0 { 1 } else { -1 };
    SignedIndex::term(sign, MultiIndex { indices: merged, n: i.n })
}

/// Interior product with the j-th coordinate vector on a basis covector:
/// zero if `j ∉ I`, otherwise `(−1)^{pos(j,I)−1} dx_{I∖{j}}`.
pub fn contract_basis(j: u8, i: &MultiIndex) -> SignedIndex {
    match i.indices.binary_search(&j) {
        Err(_) => SignedIndex::Zero,
        Ok(pos) => {
            let mut indices = i.indices.clone();
            indices.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            SignedIndex::term(sign, MultiIndex { indices, n: i.n })
        }
    }
}

/// The sign in `d* = (−1)^{ν_{n,k}} * d *` on k-forms, with ν_{n,k} = nk+n+1.
pub fn codiff_sign(n: u8, k: usize) -> i8 {
    let nu = (n as usize) * k + n as usize + 1;
    if nu % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Operators whose currential extension carries a sign alteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurrentOp {
    D,
    Dstar,
    Green,
}

/// Sign alteration ε^O for the operator O acting on currents in D'_{n−k}:
/// (−1)^k for d, (−1)^{k−1} for d*, +1 for the Green operator.
pub fn current_op_sign(op: CurrentOp, _n: u8, k: usize) -> i8 {
    let parity = match op {
        CurrentOp::D => k,
        CurrentOp::Dstar => k + 1, // (−1)^{k−1} = (−1)^{k+1}
        CurrentOp::Green => 0,
    };
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(ix: &[u8], n: u8) -> MultiIndex {
        MultiIndex::new(ix, n).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_exponent(&mi(&[1, 2, 3], 5)), 0);
        assert_eq!(epsilon_exponent(&mi(&[3], 3)), 2);
        assert_eq!(epsilon_exponent(&mi(&[2, 3], 4)), 2);
        assert_eq!(epsilon_exponent(&MultiIndex::empty(4)), 0);
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            hodge_star_basis(&mi(&[1], 3)),
            SignedIndex::term(1, mi(&[2, 3], 3))
        );
        assert_eq!(
            hodge_star_basis(&mi(&[2], 3)),
            SignedIndex::term(-1, mi(&[1, 3], 3))
        );
        assert_eq!(
            hodge_star_basis(&MultiIndex::empty(3)),
            SignedIndex::term(1, mi(&[1, 2, 3], 3))
        );
    }

    #[test]
    fn star_involution_sign() {
        // *^2 = (−1)^{k(n−k)} id, exhaustively for n ≤ 6
        for n in 1..=6u8 {
            for k in 0..=n as usize {
                for i in MultiIndex::all_of_degree(n, k) {
                    let s1 = hodge_star_basis(&i);
                    let s2 = hodge_star_basis(s1.index().unwrap());
                    let expected = if (k * (n as usize - k)) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(s1.sign() * s2.sign(), expected);
                    assert_eq!(s2.index().unwrap(), &i);
                }
            }
        }
    }

    #[test]
    fn complement_exponent_identity() {
        // ε(I) + ε(I^c) = k(n−k)
        for n in 1..=6u8 {
            for k in 0..=n as usize {
                for i in MultiIndex::all_of_degree(n, k) {
                    let lhs = epsilon_exponent(&i) + epsilon_exponent(&i.complement());
                    assert_eq!(lhs as usize, k * (n as usize - k));
                }
            }
        }
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(
            wedge_basis(&mi(&[1], 3), &mi(&[2], 3)),
            SignedIndex::term(1, mi(&[1, 2], 3))
        );
        assert_eq!(
            wedge_basis(&mi(&[2], 3), &mi(&[1], 3)),
            SignedIndex::term(-1, mi(&[1, 2], 3))
        );
        assert_eq!(wedge_basis(&mi(&[1], 3), &mi(&[1], 3)), SignedIndex::Zero);
    }

    #[test]
    fn wedge_associativity_and_anticommutativity() {
        for n in 1..=4u8 {
            let all: Vec<MultiIndex> = (0..=n as usize)
                .flat_map(|k| MultiIndex::all_of_degree(n, k))
                .collect();
            for i in &all {
                for j in &all {
                    // graded anticommutativity: I∧J = (−1)^{|I||J|} J∧I
                    let ij = wedge_basis(i, j);
                    let ji = wedge_basis(j, i);
                    let par = (i.degree() * j.degree()) % 2;
                    match (&ij, &ji) {
                        (SignedIndex::Zero, SignedIndex::Zero) => {}
                        (SignedIndex::Term { .. }, SignedIndex::Term { .. }) => {
                            let expected = if par == 0 { 1 } else { -1 };
                            assert_eq!(ij.sign(), expected * ji.sign());
                            assert_eq!(ij.index(), ji.index());
                        }
                        _ => panic!("zero mismatch"),
                    }
                    for l in &all {
                        // associativity
                        let left = match wedge_basis(i, j) {
                            SignedIndex::Zero => SignedIndex::Zero,
                            SignedIndex::Term { sign, index } => match wedge_basis(&index, l) {
                                SignedIndex::Zero => SignedIndex::Zero,
                                SignedIndex::Term { sign: s2, index: ix } => {
                                    SignedIndex::term(sign * s2, ix)
                                }
                            },
                        };
                        let right = match wedge_basis(j, l) {
                            SignedIndex::Zero => SignedIndex::Zero,
                            SignedIndex::Term { sign, index } => match wedge_basis(i, &index) {
                                SignedIndex::Zero => SignedIndex::Zero,
                                SignedIndex::Term { sign: s2, index: ix } => {
                                    SignedIndex::term(sign * s2, ix)
                                }
                            },
                        };
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn contract_examples() {
        assert_eq!(
            contract_basis(2, &mi(&[1, 2, 3], 3)),
            SignedIndex::term(-1, mi(&[1, 3], 3))
        );
        assert_eq!(
            contract_basis(1, &mi(&[1, 3], 3)),
            SignedIndex::term(1, mi(&[3], 3))
        );
        assert_eq!(contract_basis(2, &mi(&[1, 3], 3)), SignedIndex::Zero);
    }

    #[test]
    fn contract_is_antiderivation() {
        // ι_j(I∧J) = ι_j(I)∧J + (−1)^{|I|} I∧ι_j(J), exhaustively for n ≤ 5
        for n in 1..=5u8 {
            let all: Vec<MultiIndex> = (0..=n as usize)
                .flat_map(|k| MultiIndex::all_of_degree(n, k))
                .collect();
            for i in &all {
                for j in &all {
                    for v in 1..=n {
                        // collect terms as (sign, index) with zero dropped
                        let lhs = match wedge_basis(i, j) {
                            SignedIndex::Zero => vec![],
                            SignedIndex::Term { sign, index } => match contract_basis(v, &index) {
                                SignedIndex::Zero => vec![],
                                SignedIndex::Term { sign: s2, index: ix } => {
                                    vec![(sign * s2, ix)]
                                }
                            },
                        };
                        let mut rhs: Vec<(i8, MultiIndex)> = Vec::new();
                        if let SignedIndex::Term { sign, index } = contract_basis(v, i) {
                            if let SignedIndex::Term { sign: s2, index: ix } =
                                wedge_basis(&index, j)
                            {
                                rhs.push((sign * s2, ix));
                            }
                        }
                        let par = if i.degree() % 2 == 0 { 1 } else { -1 };
                        if let SignedIndex::Term { sign, index } = contract_basis(v, j) {
                            if let SignedIndex::Term { sign: s2, index: ix } =
                                wedge_basis(i, &index)
                            {
                                rhs.push((par * sign * s2, ix));
                            }
                        }
                        // cancel opposite-signed duplicates
                        rhs.sort_by(|a, b| a.1.cmp(&b.1));
                        let mut reduced: Vec<(i8, MultiIndex)> = Vec::new();
                        for (s, ix) in rhs {
                            if let Some(last) = reduced.last_mut() {
                                if last.1 == ix {
                                    last.0 += s;
                                    continue;
                                }
                            }
                            reduced.push((s, ix));
                        }
                        reduced.retain(|(s, _)| *s != 0);
                        assert_eq!(lhs, reduced, "n={n} v={v} I={i:?} J={j:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn codiff_sign_examples() {
        assert_eq!(codiff_sign(3, 1), -1);
        assert_eq!(codiff_sign(3, 2), 1);
        assert_eq!(codiff_sign(2, 1), -1);
    }

    #[test]
    fn current_op_sign_table() {
        assert_eq!(current_op_sign(CurrentOp::D, 3, 1), -1);
        assert_eq!(current_op_sign(CurrentOp::Green, 3, 0), 1);
        assert_eq!(current_op_sign(CurrentOp::Green, 4, 2), 1);
        assert_eq!(current_op_sign(CurrentOp::Dstar, 3, 2), -1);
    }

    #[test]
    fn invalid_multi_index_rejected() {
        assert!(MultiIndex::new(&[2, 1], 3).is_err());
        assert!(MultiIndex::new(&[1, 1], 3).is_err());
        assert!(MultiIndex::new(&[0, 1], 3).is_err());
        assert!(MultiIndex::new(&[1, 4], 3).is_err());
    }
}

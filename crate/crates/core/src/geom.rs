//! Small dense vector helpers for points and frames in R^n (n <= 6).

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

pub fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    scale(a, 1.0 / n)
}

pub fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn det3(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Determinant of an n x n matrix given as rows, by Gaussian elimination
/// with partial pivoting. Sizes stay tiny (n <= 6).
pub fn det_rows(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() < 1e-300 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            for j in col..n {
                m[i][j] -= f * m[col][j];
            }
        }
    }
    det
}

/// Complete `seed` (orthonormal, possibly empty) to an orthonormal basis of
/// R^n by Gram-Schmidt over the coordinate vectors. Deterministic.
pub fn complete_orthonormal(seed: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = seed.to_vec();
    for axis in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = vec![0.0; n];
        v[axis] = 1.0;
        for b in &basis {
            let p = dot(&v, b);
            axpy(&mut v, -p, b);
        }
        let len = norm(&v);
        if len > 1e-8 {
            basis.push(scale(&v, 1.0 / len));
        }
    }
    basis
}

/// Orthonormal pair spanning the plane perpendicular to the unit vector `d`
/// in R^3, with (u, w, d) positively oriented.
pub fn plane_basis3(d: &[f64]) -> ([f64; 3], [f64; 3]) {
    let seed = if d[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let mut u = seed;
    let p = dot(&u, d);
    for i in 0..3 {
        u[i] -= p * d[i];
    }
    let nu = norm(&u);
    for x in u.iter_mut() {
        *x /= nu;
    }
    let w = cross3(d, &u);
    debug_assert!((det3(&u, &w, d) - 1.0).abs() < 1e-10);
    (u, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_basis_is_orthonormal() {
        let seed = vec![normalize(&[1.0, 1.0, 0.0, 0.0])];
        let basis = complete_orthonormal(&seed, 4);
        assert_eq!(basis.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&basis[i], &basis[j]) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn det_rows_matches_det3() {
        let a = vec![0.3, -1.2, 0.7];
        let b = vec![2.0, 0.4, -0.5];
        let c = vec![-0.1, 0.9, 1.1];
        let d = det_rows(&[a.clone(), b.clone(), c.clone()]);
        assert!((d - det3(&a, &b, &c)).abs() < 1e-12);
    }
}

//! Tube-coordinate analysis around curves in flat ambients (R^3, T^3):
//! the normal-exponential volume Jacobian, the radial ODE recursion for the
//! small-time heat coefficients η_i, parametrix evaluation and error-order
//! fits, mean-curvature identities, and blow-up extendibility probes.
//!
//! Only flat ambient spaces are supported, so the parallel frame along
//! normal rays is the Euclidean frame and the Hodge Laplacian acts
//! componentwise on ambient coefficients; every identity tested stays
//! nontrivial through the curve's extrinsic geometry.

mod probe;
mod special;

pub use probe::{extendibility_probe, normal_sphere_samples, ProbeComponent, ProbeReport};
pub use special::{
    f_fn, hj_eval, hj_gradient_factor, theta_fn, upsilon_fn, HjMethod, SpecialFnConfig,
};

use crate::error::{Error, Result};
use crate::form_value::FormValue;
use crate::geom::{det3, norm};
use crate::MultiIndex;

/// The supported model curves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    /// the x1-axis in R^3 (fields are s-invariant)
    LineR3,
    /// circle of the given radius in the z = 0 plane, centered at the origin
    CircleR3 { radius: f64 },
    /// coordinate geodesic {(s, c2, c3)} in T^3; flat and totally geodesic,
    /// identical to the line inside the tube
    TorusGeodesic,
}

/// A curve together with its tube radius ε.
#[derive(Clone, Copy, Debug)]
pub struct CurveGeometrySpec {
    pub kind: CurveKind,
    pub tube_radius: f64,
}

impl CurveGeometrySpec {
    pub fn new(kind: CurveKind, tube_radius: f64) -> Result<Self> {
        if let CurveKind::CircleR3 { radius } = kind {
            if radius <= 0.0 {
                return Err(Error::InvalidConfig { reason: "circle radius must be positive".into() });
            }
            if tube_radius >= radius / 2.0 {
                return Err(Error::InvalidConfig {
                    reason: format!(
                        "tube radius {tube_radius} must stay below half the circle radius {radius}"
                    ),
                });
            }
        }
        Ok(Self { kind, tube_radius })
    }

    pub fn gamma(&self, s: f64) -> [f64; 3] {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => [s, 0.0, 0.0],
            CurveKind::CircleR3 { radius } => [radius * s.cos(), radius * s.sin(), 0.0],
        }
    }

    /// |γ'(s)|, constant for all three kinds.
    pub fn speed(&self) -> f64 {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => 1.0,
            CurveKind::CircleR3 { radius } => radius,
        }
    }

    pub fn tangent(&self, s: f64) -> [f64; 3] {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => [1.0, 0.0, 0.0],
            CurveKind::CircleR3 { .. } => [-s.sin(), s.cos(), 0.0],
        }
    }

    /// First normal: for the circle this points toward the center (the θ = 0
    /// direction of the volume Jacobian).
    pub fn nu1(&self, s: f64) -> [f64; 3] {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => [0.0, 1.0, 0.0],
            CurveKind::CircleR3 { .. } => [-s.cos(), -s.sin(), 0.0],
        }
    }

    pub fn nu2(&self, _s: f64) -> [f64; 3] {
        [0.0, 0.0, 1.0]
    }

    /// Tube chart `(s, r, θ) ↦ γ(s) + r cosθ ν1(s) + r sinθ ν2(s)`.
    pub fn chart(&self, s: f64, r: f64, theta: f64) -> [f64; 3] {
        let g = self.gamma(s);
        let n1 = self.nu1(s);
        let n2 = self.nu2(s);
        let (c, sn) = (theta.cos(), theta.sin());
        [
            g[0] + r * (c * n1[0] + sn * n2[0]),
            g[1] + r * (c * n1[1] + sn * n2[1]),
            g[2] + r * (c * n1[2] + sn * n2[2]),
        ]
    }

    /// Closed-form volume Jacobian of the normal exponential map.
    pub fn jacobian(&self, _s: f64, r: f64, theta: f64) -> f64 {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => 1.0,
            CurveKind::CircleR3 { radius } => 1.0 - (r / radius) * theta.cos(),
        }
    }

    /// Jacobian by finite differences of the chart: the triple product of
    /// the partials divided by the Sasaki density `|γ'| r`.
    pub fn jacobian_numeric(&self, s: f64, r: f64, theta: f64) -> f64 {
        let h = 1e-5;
        let partial = |f0: [f64; 3], f1: [f64; 3]| {
            [(f1[0] - f0[0]) / (2.0 * h), (f1[1] - f0[1]) / (2.0 * h), (f1[2] - f0[2]) / (2.0 * h)]
        };
        let ds = partial(self.chart(s - h, r, theta), self.chart(s + h, r, theta));
        let dr = partial(self.chart(s, r - h, theta), self.chart(s, r + h, theta));
        let dth = partial(self.chart(s, r, theta - h), self.chart(s, r, theta + h));
        det3(&ds, &dr, &dth) / (self.speed() * r)
    }

    /// Spatial Jacobian and chart inversion for points off the curve.
    pub fn tube_coords(&self, x: &[f64]) -> (f64, f64, f64) {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => {
                let r = x[1].hypot(x[2]);
                (x[0], r, x[2].atan2(x[1]))
            }
            CurveKind::CircleR3 { radius } => {
                let s = x[1].atan2(x[0]);
                let rho_xy = x[0].hypot(x[1]);
                let r = (rho_xy - radius).hypot(x[2]);
                // cosθ = (ρ − ρ_xy)/r along ν1, sinθ = x3/r along ν2
                let theta = x[2].atan2(radius - rho_xy);
                (s, r, theta)
            }
        }
    }

    /// Jacobian as a spatial function (used for gradient probes).
    pub fn jacobian_at(&self, x: &[f64], numeric: bool) -> f64 {
        let (s, r, theta) = self.tube_coords(x);
        if numeric {
            self.jacobian_numeric(s, r, theta)
        } else {
            self.jacobian(s, r, theta)
        }
    }

    /// Mean-curvature vector at γ(s): zero for the line/geodesic, inward
    /// of magnitude 1/ρ for the circle.
    pub fn mean_curvature(&self, s: f64) -> [f64; 3] {
        match self.kind {
            CurveKind::LineR3 | CurveKind::TorusGeodesic => [0.0; 3],
            CurveKind::CircleR3 { radius } => {
                let n1 = self.nu1(s);
                [n1[0] / radius, n1[1] / radius, n1[2] / radius]
            }
        }
    }
}

/// Tube grid: uniform periodic in s and θ, logarithmic in r on
/// `[r_min, ε]` via `r(u) = ε (r_min/ε)^{1−u}` with u uniform on [0, 1].
#[derive(Clone, Debug)]
pub struct TubeGrid {
    pub n_s: usize,
    pub n_r: usize,
    pub n_theta: usize,
    pub eps: f64,
    pub r_min: f64,
    r_nodes: Vec<f64>,
    /// dr/du at each r node
    dr_du: Vec<f64>,
}

impl TubeGrid {
    pub fn new(n_s: usize, n_r: usize, n_theta: usize, eps: f64, r_min: f64) -> Result<Self> {
        if r_min <= 0.0 || r_min >= eps {
            return Err(Error::InvalidConfig {
                reason: format!("need 0 < r_min ({r_min}) < eps ({eps})"),
            });
        }
        if n_r < 8 || n_s < 4 || n_theta < 8 {
            return Err(Error::InvalidConfig { reason: "tube grid too small".into() });
        }
        let log_ratio = (eps / r_min).ln();
        let mut r_nodes = Vec::with_capacity(n_r);
        let mut dr_du = Vec::with_capacity(n_r);
        for q in 0..n_r {
            let u = q as f64 / (n_r - 1) as f64;
            let r = eps * (r_min / eps).powf(1.0 - u);
            r_nodes.push(r);
            dr_du.push(r * log_ratio);
        }
        Ok(Self { n_s, n_r, n_theta, eps, r_min, r_nodes, dr_du })
    }

    pub fn s_node(&self, i: usize) -> f64 {
        std::f64::consts::TAU * i as f64 / self.n_s as f64
    }

    pub fn theta_node(&self, k: usize) -> f64 {
        std::f64::consts::TAU * k as f64 / self.n_theta as f64
    }

    pub fn r_node(&self, q: usize) -> f64 {
        self.r_nodes[q]
    }

    pub fn r_nodes(&self) -> &[f64] {
        &self.r_nodes
    }

    pub fn dr_du(&self, q: usize) -> f64 {
        self.dr_du[q]
    }

    pub fn h_s(&self) -> f64 {
        std::f64::consts::TAU / self.n_s as f64
    }

    pub fn h_theta(&self) -> f64 {
        std::f64::consts::TAU / self.n_theta as f64
    }

    pub fn h_u(&self) -> f64 {
        1.0 / (self.n_r - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n_s * self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn idx(&self, i: usize, q: usize, k: usize) -> usize {
        (i * self.n_r + q) * self.n_theta + k
    }
}

/// A scalar field on the tube grid.
#[derive(Clone, Debug)]
pub struct Grid3 {
    pub data: Vec<f64>,
}

impl Grid3 {
    pub fn zeros(grid: &TubeGrid) -> Self {
        Self { data: vec![0.0; grid.len()] }
    }

    pub fn from_fn(grid: &TubeGrid, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        let mut data = vec![0.0; grid.len()];
        for i in 0..grid.n_s {
            let s = grid.s_node(i);
            for q in 0..grid.n_r {
                let r = grid.r_node(q);
                for k in 0..grid.n_theta {
                    data[grid.idx(i, q, k)] = f(s, r, grid.theta_node(k));
                }
            }
        }
        Self { data }
    }
}

/// 4th-order first derivative along s (periodic).
fn diff_s(grid: &TubeGrid, f: &Grid3) -> Grid3 {
    let mut out = Grid3 { data: vec![0.0; grid.len()] };
    let h = grid.h_s();
    let n = grid.n_s;
    for i in 0..n {
        let (im2, im1, ip1, ip2) = ((i + n - 2) % n, (i + n - 1) % n, (i + 1) % n, (i + 2) % n);
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let v = (-f.data[grid.idx(ip2, q, k)] + 8.0 * f.data[grid.idx(ip1, q, k)]
                    - 8.0 * f.data[grid.idx(im1, q, k)]
                    + f.data[grid.idx(im2, q, k)])
                    / (12.0 * h);
                out.data[grid.idx(i, q, k)] = v;
            }
        }
    }
    out
}

/// 4th-order first derivative along θ (periodic).
fn diff_theta(grid: &TubeGrid, f: &Grid3) -> Grid3 {
    let mut out = Grid3 { data: vec![0.0; grid.len()] };
    let h = grid.h_theta();
    let n = grid.n_theta;
    for i in 0..grid.n_s {
        for q in 0..grid.n_r {
            for k in 0..n {
                let (km2, km1, kp1, kp2) =
                    ((k + n - 2) % n, (k + n - 1) % n, (k + 1) % n, (k + 2) % n);
                let v = (-f.data[grid.idx(i, q, kp2)] + 8.0 * f.data[grid.idx(i, q, kp1)]
                    - 8.0 * f.data[grid.idx(i, q, km1)]
                    + f.data[grid.idx(i, q, km2)])
                    / (12.0 * h);
                out.data[grid.idx(i, q, k)] = v;
            }
        }
    }
    out
}

/// 4th-order first derivative along u (the log-radial coordinate), with
/// one-sided 4th-order stencils at the two ends.
fn diff_u(grid: &TubeGrid, f: &Grid3) -> Grid3 {
    let mut out = Grid3 { data: vec![0.0; grid.len()] };
    let h = grid.h_u();
    let n = grid.n_r;
    for i in 0..grid.n_s {
        for k in 0..grid.n_theta {
            let at = |q: usize| f.data[grid.idx(i, q, k)];
            for q in 0..n {
                let v = if q >= 2 && q + 2 < n {
                    (-at(q + 2) + 8.0 * at(q + 1) - 8.0 * at(q - 1) + at(q - 2)) / (12.0 * h)
                } else if q == 0 {
                    (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4))
                        / (12.0 * h)
                } else if q == 1 {
                    (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / (12.0 * h)
                } else if q == n - 2 {
                    (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4)
                        - at(n - 5))
                        / (12.0 * h)
                } else {
                    (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4)
                        + 3.0 * at(n - 5))
                        / (12.0 * h)
                };
                out.data[grid.idx(i, q, k)] = v;
            }
        }
    }
    out
}

/// Positive-spectrum scalar Laplacian `Δ_0 = −div grad` in the orthogonal
/// tube coordinates, in conservative form:
/// `Δ_0 f = −(1/J)[∂_s(J/h_s² ∂_s f) + ∂_r(J ∂_r f) + ∂_θ(J/r² ∂_θ f)]`
/// with `h_s = |γ'| j` and coordinate density `J = h_s r`. Radial
/// derivatives go through the log coordinate u.
pub fn scalar_laplacian(spec: &CurveGeometrySpec, grid: &TubeGrid, f: &Grid3) -> Grid3 {
    let speed = spec.speed();
    let jfield = Grid3::from_fn(grid, |s, r, th| spec.jacobian(s, r, th));
    let density = Grid3::from_fn(grid, |s, r, th| speed * spec.jacobian(s, r, th) * r);

    // s-term
    let fs = diff_s(grid, f);
    let mut flux_s = Grid3::zeros(grid);
    for (idx, v) in flux_s.data.iter_mut().enumerate() {
        let hs = speed * jfield.data[idx];
        *v = density.data[idx] / (hs * hs) * fs.data[idx];
    }
    let term_s = diff_s(grid, &flux_s);

    // r-term via u
    let fu = diff_u(grid, f);
    let mut flux_r = Grid3::zeros(grid);
    for i in 0..grid.n_s {
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                // ∂_r f = (du/dr) ∂_u f
                flux_r.data[idx] = density.data[idx] * fu.data[idx] / grid.dr_du(q);
            }
        }
    }
    let flux_r_u = diff_u(grid, &flux_r);

    // θ-term
    let ft = diff_theta(grid, f);
    let mut flux_t = Grid3::zeros(grid);
    for i in 0..grid.n_s {
        for q in 0..grid.n_r {
            let r = grid.r_node(q);
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                flux_t.data[idx] = density.data[idx] / (r * r) * ft.data[idx];
            }
        }
    }
    let term_t = diff_theta(grid, &flux_t);

    let mut out = Grid3::zeros(grid);
    for i in 0..grid.n_s {
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                let term_r = flux_r_u.data[idx] / grid.dr_du(q);
                out.data[idx] =
                    -(term_s.data[idx] + term_r + term_t.data[idx]) / density.data[idx];
            }
        }
    }
    out
}

/// A 2-form field on the tube grid, stored in the parallel-transported
/// adapted frame (f1, f2, f3) = (ν1, ν2, T): components on
/// (f1∧f2, f1∧f3, f2∧f3). In flat ambients the transported frame equals the
/// frame at the foot point, so conversion to ambient coordinates is a pure
/// per-s rotation.
#[derive(Clone, Debug)]
pub struct TubeField {
    pub comps: [Grid3; 3],
}

impl TubeField {
    pub fn zeros(grid: &TubeGrid) -> Self {
        Self { comps: [Grid3::zeros(grid), Grid3::zeros(grid), Grid3::zeros(grid)] }
    }

    pub fn sup(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.data.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Ambient (dx23, dx13, dx12)-style components at a node; returned as a
    /// FormValue of degree 2 via the frame wedge expansion.
    pub fn ambient_at(
        &self,
        spec: &CurveGeometrySpec,
        grid: &TubeGrid,
        i: usize,
        q: usize,
        k: usize,
    ) -> FormValue {
        let s = grid.s_node(i);
        let frame = [spec.nu1(s), spec.nu2(s), spec.tangent(s)];
        let idx = grid.idx(i, q, k);
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut out = FormValue::zero(3, 2);
        for (slot, &(a, b)) in pairs.iter().enumerate() {
            let c = self.comps[slot].data[idx];
            if c == 0.0 {
                continue;
            }
            let fa = frame[a];
            let fb = frame[b];
            // wedge of the dual covectors, expanded over ambient dx pairs
            for (ci, cj, m) in [(1u8, 2u8, (0, 1)), (1, 3, (0, 2)), (2, 3, (1, 2))] {
                let det = fa[m.0] * fb[m.1] - fa[m.1] * fb[m.0];
                if det != 0.0 {
                    out.add(MultiIndex::new(&[ci, cj], 3).unwrap(), c * det);
                }
            }
        }
        out
    }
}

/// Convert adapted components to the three ambient 2-form component grids
/// (dx1∧dx2, dx1∧dx3, dx2∧dx3), apply the scalar Laplacian componentwise,
/// and convert back. This is the flat Hodge Laplacian on the 2-form field.
pub fn hodge_laplacian_2form(
    spec: &CurveGeometrySpec,
    grid: &TubeGrid,
    field: &TubeField,
) -> TubeField {
    // frame covector wedges per s: matrix from adapted comps to ambient comps
    let mut fwd = vec![[[0.0f64; 3]; 3]; grid.n_s];
    for (i, mat) in fwd.iter_mut().enumerate() {
        let s = grid.s_node(i);
        let frame = [spec.nu1(s), spec.nu2(s), spec.tangent(s)];
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let apairs = [(0usize, 1usize), (0, 2), (1, 2)];
        for (col, &(a, b)) in pairs.iter().enumerate() {
            let fa = frame[a];
            let fb = frame[b];
            for (row, &(c, d)) in apairs.iter().enumerate() {
                mat[row][col] = fa[c] * fb[d] - fa[d] * fb[c];
            }
        }
    }
    // orthonormal frames: the inverse is the transpose
    let mut ambient = [Grid3::zeros(grid), Grid3::zeros(grid), Grid3::zeros(grid)];
    for i in 0..grid.n_s {
        let m = &fwd[i];
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                for row in 0..3 {
                    let mut v = 0.0;
                    for col in 0..3 {
                        v += m[row][col] * field.comps[col].data[idx];
                    }
                    ambient[row].data[idx] = v;
                }
            }
        }
    }
    let lap: Vec<Grid3> = ambient.iter().map(|c| scalar_laplacian(spec, grid, c)).collect();
    let mut out = TubeField::zeros(grid);
    for i in 0..grid.n_s {
        let m = &fwd[i];
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                for col in 0..3 {
                    let mut v = 0.0;
                    for (row, l) in lap.iter().enumerate() {
                        v += m[row][col] * l.data[idx];
                    }
                    out.comps[col].data[idx] = v;
                }
            }
        }
    }
    out
}

/// η_0 = j^{−1/2} × (parallel-transported normal volume form): in the
/// adapted frame, component (f1∧f2) = j^{−1/2}, others zero.
pub fn eta0_field(spec: &CurveGeometrySpec, grid: &TubeGrid) -> TubeField {
    let mut out = TubeField::zeros(grid);
    out.comps[0] = Grid3::from_fn(grid, |s, r, th| spec.jacobian(s, r, th).powf(-0.5));
    out
}

/// Radial-ODE residual of the η_0 equation, `|∂_r (j^{1/2} η_0)|`, sampled
/// along rays; identically the derivative of the constant 1.
pub fn eta0_radial_residual(spec: &CurveGeometrySpec, grid: &TubeGrid) -> f64 {
    let field = eta0_field(spec, grid);
    let weighted = Grid3 {
        data: {
            let j = Grid3::from_fn(grid, |s, r, th| spec.jacobian(s, r, th).sqrt());
            j.data
                .iter()
                .zip(&field.comps[0].data)
                .map(|(a, b)| a * b)
                .collect()
        },
    };
    let du = diff_u(grid, &weighted);
    let mut worst = 0.0f64;
    for i in 0..grid.n_s {
        for q in 0..grid.n_r {
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                worst = worst.max((du.data[idx] / grid.dr_du(q)).abs());
            }
        }
    }
    worst
}

/// Solve the recursion
/// `A_{i+1,I}(s, r, θ) = −j^{−1/2}(s,r,θ) ∫_0^1 σ^i j(s,σr,θ)^{1/2} B_{i,I}(s,σr,θ) dσ`
/// with `B_i = Δη_i` from the 4th-order grid Laplacian, returning
/// η_0 … η_n. The two innermost radial shells of each Laplacian are
/// distrusted; radial interpolation extends `B_i` smoothly to r = 0 with a
/// quadratic fit through the innermost reliable nodes.
pub fn eta_recursion(
    spec: &CurveGeometrySpec,
    grid: &TubeGrid,
    n_order: usize,
) -> Result<Vec<TubeField>> {
    assert!(n_order <= 3, "recursion depth capped at 3");
    let mut etas = vec![eta0_field(spec, grid)];
    let sqrt_j = Grid3::from_fn(grid, |s, r, th| spec.jacobian(s, r, th).sqrt());
    for i in 0..n_order {
        let lap = hodge_laplacian_2form(spec, grid, &etas[i]);
        let mut next = TubeField::zeros(grid);
        for comp in 0..3 {
            for si in 0..grid.n_s {
                let s = grid.s_node(si);
                for k in 0..grid.n_theta {
                    let theta = grid.theta_node(k);
                    // B along the ray, with the two distrusted one-sided
                    // shells replaced by the quadratic fit through the
                    // innermost reliable nodes
                    let mut b_ray: Vec<f64> = (0..grid.n_r)
                        .map(|q| lap.comps[comp].data[grid.idx(si, q, k)])
                        .collect();
                    let fit = quadratic_fit(
                        grid.r_node(2),
                        b_ray[2],
                        grid.r_node(3),
                        b_ray[3],
                        grid.r_node(4),
                        b_ray[4],
                    );
                    b_ray[0] = fit.at(grid.r_node(0));
                    b_ray[1] = fit.at(grid.r_node(1));
                    // cumulative W(r_q) = ∫_0^{r_q} t^i j^{1/2} B dt: head
                    // piece from the fit, then per-interval cubic quadrature
                    // through neighboring nodes (smooth in q by prefix sums)
                    let w_at = |r: f64, b: f64| {
                        r.powi(i as i32) * spec.jacobian(s, r, theta).sqrt() * b
                    };
                    let head = crate::quad::gauss_legendre_integrate(8, 0.0, grid.r_node(0), |r| {
                        w_at(r, fit.at(r))
                    });
                    let mut cum = vec![0.0; grid.n_r];
                    cum[0] = head;
                    for q in 0..grid.n_r - 1 {
                        // cubic through nodes clamp(q−1..q+3)
                        let lo = q.saturating_sub(1).min(grid.n_r - 4);
                        let xs = [
                            grid.r_node(lo),
                            grid.r_node(lo + 1),
                            grid.r_node(lo + 2),
                            grid.r_node(lo + 3),
                        ];
                        let ys = [
                            w_at(xs[0], b_ray[lo]),
                            w_at(xs[1], b_ray[lo + 1]),
                            w_at(xs[2], b_ray[lo + 2]),
                            w_at(xs[3], b_ray[lo + 3]),
                        ];
                        let seg = crate::quad::gauss_legendre_integrate(
                            4,
                            grid.r_node(q),
                            grid.r_node(q + 1),
                            |r| lagrange4(&xs, &ys, r),
                        );
                        cum[q + 1] = cum[q] + seg;
                    }
                    for q in 0..grid.n_r {
                        let idx = grid.idx(si, q, k);
                        let r = grid.r_node(q);
                        next.comps[comp].data[idx] =
                            -cum[q] / (r.powi(i as i32 + 1) * sqrt_j.data[idx]);
                    }
                }
            }
        }
        etas.push(next);
    }
    Ok(etas)
}

/// Quadratic through three points, used to extend smooth radial profiles
/// below the innermost reliable shell.
struct Quadratic {
    a0: f64,
    a1: f64,
    a2: f64,
}

impl Quadratic {
    fn at(&self, x: f64) -> f64 {
        self.a0 + self.a1 * x + self.a2 * x * x
    }
}

fn quadratic_fit(r0: f64, v0: f64, r1: f64, v1: f64, r2: f64, v2: f64) -> Quadratic {
    let d0 = (r0 - r1) * (r0 - r2);
    let d1 = (r1 - r0) * (r1 - r2);
    let d2 = (r2 - r0) * (r2 - r1);
    Quadratic {
        a2: v0 / d0 + v1 / d1 + v2 / d2,
        a1: -(v0 * (r1 + r2) / d0 + v1 * (r0 + r2) / d1 + v2 * (r0 + r1) / d2),
        a0: v0 * r1 * r2 / d0 + v1 * r0 * r2 / d1 + v2 * r0 * r1 / d2,
    }
}

fn lagrange4(xs: &[f64; 4], ys: &[f64; 4], x: f64) -> f64 {
    let mut total = 0.0;
    for a in 0..4 {
        let mut term = ys[a];
        for b in 0..4 {
            if a != b {
                term *= (x - xs[b]) / (xs[a] - xs[b]);
            }
        }
        total += term;
    }
    total
}

/// Residual of the recursion ODE
/// `∂_r (r^{i+1} j^{1/2} η_{i+1}) + r^i j^{1/2} Δη_i = 0`
/// over the reliable interior of the grid (radial one-sided shells and the
/// distrusted Laplacian shells excluded).
pub fn recursion_residual(
    spec: &CurveGeometrySpec,
    grid: &TubeGrid,
    etas: &[TubeField],
    i: usize,
) -> f64 {
    let sqrt_j = Grid3::from_fn(grid, |s, r, th| spec.jacobian(s, r, th).sqrt());
    let lap = hodge_laplacian_2form(spec, grid, &etas[i]);
    let mut worst = 0.0f64;
    for comp in 0..3 {
        let weighted = Grid3 {
            data: (0..grid.len())
                .map(|idx| {
                    let q = (idx / grid.n_theta) % grid.n_r;
                    let r = grid.r_node(q);
                    r.powi(i as i32 + 1) * sqrt_j.data[idx] * etas[i + 1].comps[comp].data[idx]
                })
                .collect(),
        };
        let du = diff_u(grid, &weighted);
        for si in 0..grid.n_s {
            for q in 3..grid.n_r - 3 {
                let r = grid.r_node(q);
                for k in 0..grid.n_theta {
                    let idx = grid.idx(si, q, k);
                    let lhs = du.data[idx] / grid.dr_du(q);
                    let rhs = -r.powi(i as i32) * sqrt_j.data[idx] * lap.comps[comp].data[idx];
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
    }
    worst
}

/// Gaussian prefactor `f_t(r) = (4πt)^{−(n−k)/2} e^{−r²/4t}` with n−k = 2.
pub fn gaussian_prefactor(t: f64, r: f64) -> f64 {
    (4.0 * std::f64::consts::PI * t).powi(-1) * (-r * r / (4.0 * t)).exp()
}

/// Parametrix value `f_t(r) Σ_i t^i η_i` at a grid node, in ambient
/// coordinates.
pub fn parametrix_eval_node(
    spec: &CurveGeometrySpec,
    grid: &TubeGrid,
    etas: &[TubeField],
    t: f64,
    i: usize,
    q: usize,
    k: usize,
) -> Result<FormValue> {
    if t <= 0.0 {
        return Err(Error::NonPositiveTime { t });
    }
    let r = grid.r_node(q);
    if r >= grid.eps {
        return Err(Error::OutsideTube { r, eps: grid.eps });
    }
    let f = gaussian_prefactor(t, r);
    let mut out = FormValue::zero(3, 2);
    let mut tp = 1.0;
    for eta in etas {
        let amb = eta.ambient_at(spec, grid, i, q, k);
        out.add_form(&amb.scale(f * tp));
        tp *= t;
    }
    Ok(out)
}

/// Least-squares slope of log(error) against log(t): the measured order of
/// the parametrix error `sup_annulus |exact − parametrix|`.
pub fn fit_loglog_slope(ts: &[f64], errs: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.max(1e-300).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Error-order experiment for the circle: exact heat evolution of the circle
/// current (quadrature) against the order-`n_order` parametrix, sup over an
/// annulus sample, fitted in log-log over the given times. Returns
/// (errors, slope).
pub fn error_order_fit(
    spec: &CurveGeometrySpec,
    grid: &TubeGrid,
    n_order: usize,
    times: &[f64],
    annulus: (f64, f64),
    exact_quad: usize,
) -> Result<(Vec<f64>, f64)> {
    let CurveKind::CircleR3 { radius } = spec.kind else {
        return Err(Error::InvalidConfig {
            reason: "error-order fit drives the circle case; the line is exact".into(),
        });
    };
    let knot = crate::knot::Knot::circle(
        "fit-circle",
        crate::knot::Ambient::Euclidean,
        &[0.0, 0.0, 0.0],
        radius,
        &[1.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0],
    );
    let etas = eta_recursion(spec, grid, n_order)?;
    // sample the annulus: all r nodes in range, a spread of θ, few s
    let r_ids: Vec<usize> = (0..grid.n_r)
        .filter(|&q| grid.r_node(q) >= annulus.0 && grid.r_node(q) <= annulus.1)
        .collect();
    if r_ids.is_empty() {
        return Err(Error::InvalidConfig { reason: "annulus misses every radial node".into() });
    }
    let s_ids = [0usize, grid.n_s / 3];
    let theta_stride = (grid.n_theta / 16).max(1);
    let mut errs = Vec::with_capacity(times.len());
    for &t in times {
        let mut sup = 0.0f64;
        for &i in &s_ids {
            for &q in &r_ids {
                for k in (0..grid.n_theta).step_by(theta_stride) {
                    let x = spec.chart(grid.s_node(i), grid.r_node(q), grid.theta_node(k));
                    let exact = crate::euclid::heat_evolve_curve_r3(&knot, t, &x, exact_quad)?;
                    let para = parametrix_eval_node(spec, grid, &etas, t, i, q, k)?;
                    sup = sup.max(exact.sub_form(&para).sup_norm());
                }
            }
        }
        errs.push(sup);
    }
    let slope = fit_loglog_slope(times, &errs);
    Ok((errs, slope))
}

/// `|∇j|_{r→0} + H|`: Richardson extrapolation of the finite-difference
/// spatial gradient of the volume Jacobian toward the curve, compared with
/// the analytic mean-curvature vector.
pub fn mean_curvature_residual(spec: &CurveGeometrySpec, numeric_j: bool) -> f64 {
    let jfun = |x: &[f64]| spec.jacobian_at(x, numeric_j);
    let fd_h = if numeric_j { 1e-4 } else { 1e-5 };
    let mut worst = 0.0f64;
    for &s in &[0.0, 1.3, 2.9, 4.6] {
        for &theta in &[0.0, 1.1, 2.7, 4.2, 5.6] {
            // gradient at three shells r0/2^m, extrapolated linearly to 0
            let r0 = 0.02;
            let mut grads = Vec::new();
            for m in 0..3 {
                let r = r0 / 2f64.powi(m);
                let x = spec.chart(s, r, theta);
                let g: Vec<f64> =
                    (0..3).map(|a| crate::fd::central1(&jfun, &x, a, fd_h)).collect();
                grads.push(g);
            }
            // Neville with ratio 2: kill O(r) then O(r²)
            let lin = |a: &[f64], b: &[f64]| -> Vec<f64> {
                a.iter().zip(b).map(|(x, y)| 2.0 * y - x).collect()
            };
            let r01 = lin(&grads[0], &grads[1]);
            let r12 = lin(&grads[1], &grads[2]);
            let ext: Vec<f64> = r01.iter().zip(&r12).map(|(x, y)| (2.0 * y - x)).collect();
            let h = spec.mean_curvature(s);
            let mut resid = 0.0;
            for a in 0..3 {
                resid += (ext[a] + h[a]).powi(2);
            }
            worst = worst.max(resid.sqrt());
        }
    }
    worst
}

/// d*η_0 extrapolated to the curve, compared against `ι_{H/2} vol_{νL}`.
/// Returns (max residual against the vertical pattern, max horizontal
/// component) over sample points.
pub fn dstar_eta0_limit(spec: &CurveGeometrySpec) -> Result<(f64, f64)> {
    let field = |x: &[f64]| -> FormValue {
        let (s, _, _) = spec.tube_coords(x);
        let jval = spec.jacobian_at(x, false);
        let n1 = spec.nu1(s);
        let n2 = spec.nu2(s);
        crate::euclid::frame_wedge(&[n1.to_vec(), n2.to_vec()], 3).scale(jval.powf(-0.5))
    };
    let mut worst_vertical = 0.0f64;
    let mut worst_horizontal = 0.0f64;
    for &s in &[0.0, 1.7, 3.9] {
        for &theta in &[0.3, 2.0, 5.1] {
            let r0 = 0.02;
            let mut values: Vec<FormValue> = Vec::new();
            for m in 0..3 {
                let r = r0 / 2f64.powi(m);
                let x = spec.chart(s, r, theta);
                values.push(crate::fd::dstar_form_field(&field, &x, 1e-4, false));
            }
            // componentwise Richardson toward r = 0
            let comb = |a: &FormValue, b: &FormValue| {
                let mut out = b.scale(2.0);
                out.add_form(&a.scale(-1.0));
                out
            };
            let e01 = comb(&values[0], &values[1]);
            let e12 = comb(&values[1], &values[2]);
            let ext = comb(&e01, &e12);
            // expected: ι_{H/2}(ν1∧ν2)
            let h = spec.mean_curvature(s);
            let half_h = [h[0] / 2.0, h[1] / 2.0, h[2] / 2.0];
            let n1 = spec.nu1(s);
            let n2 = spec.nu2(s);
            let expected =
                crate::euclid::frame_wedge(&[n1.to_vec(), n2.to_vec()], 3).contract(&half_h);
            let diff = ext.sub_form(&expected);
            worst_vertical = worst_vertical.max(diff.sup_norm());
            // horizontal part: coefficient along the tangent covector
            let t = spec.tangent(s);
            worst_horizontal = worst_horizontal.max(ext.apply(&[&t]).abs());
        }
    }
    Ok((worst_vertical, worst_horizontal))
}

/// Numeric check of the key tube identity
/// `(k − n − Δ_0 ξ)/2 = ∇ξ(log √j)` with ξ = r²/2, on the circle tube.
/// Returns the max residual over the reliable grid interior.
pub fn chiave_identity_residual(spec: &CurveGeometrySpec, grid: &TubeGrid) -> f64 {
    let xi = Grid3::from_fn(grid, |_, r, _| 0.5 * r * r);
    let lap_xi = scalar_laplacian(spec, grid, &xi);
    let mut worst = 0.0f64;
    for i in 0..grid.n_s {
        for q in 3..grid.n_r - 3 {
            let r = grid.r_node(q);
            for k in 0..grid.n_theta {
                let idx = grid.idx(i, q, k);
                let lhs = (1.0 - 3.0 - lap_xi.data[idx]) / 2.0;
                // ∇ξ(log √j) = r ∂_r log √j, analytic via the closed form
                let s = grid.s_node(i);
                let theta = grid.theta_node(k);
                let h = 1e-6;
                let jp = spec.jacobian(s, r + h, theta).sqrt().ln();
                let jm = spec.jacobian(s, r - h, theta).sqrt().ln();
                let rhs = r * (jp - jm) / (2.0 * h);
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    worst
}

/// Numeric check of the Weitzenböck-type product rule
/// `Δ(fη) = Δ_0 f · η + f Δη − 2 ∇_{∇f} η` for `f = f_t(r)`, `η = η_0`,
/// on the flat tube. Returns the max residual over the reliable interior.
pub fn product_rule_residual(spec: &CurveGeometrySpec, grid: &TubeGrid, t: f64) -> f64 {
    let f = Grid3::from_fn(grid, |_, r, _| gaussian_prefactor(t, r));
    let eta = eta0_field(spec, grid);
    // left side: Δ applied to the product field
    let mut prod = TubeField::zeros(grid);
    for comp in 0..3 {
        prod.comps[comp] = Grid3 {
            data: f.data.iter().zip(&eta.comps[comp].data).map(|(a, b)| a * b).collect(),
        };
    }
    let lhs = hodge_laplacian_2form(spec, grid, &prod);
    // right side, term by term
    let lap_f = scalar_laplacian(spec, grid, &f);
    let lap_eta = hodge_laplacian_2form(spec, grid, &eta);
    // ∇_{∇f} η: ∇f = f'(r) ∇r is radial; in the adapted frame the covariant
    // derivative along ∇r is the plain radial derivative of the components
    // (the frame is parallel along normal rays)
    let fu = diff_u(grid, &f);
    let mut worst = 0.0f64;
    for comp in 0..3 {
        let eta_u = diff_u(grid, &eta.comps[comp]);
        for i in 0..grid.n_s {
            for q in 3..grid.n_r - 3 {
                for k in 0..grid.n_theta {
                    let idx = grid.idx(i, q, k);
                    let df_dr = fu.data[idx] / grid.dr_du(q);
                    let deta_dr = eta_u.data[idx] / grid.dr_du(q);
                    let rhs = lap_f.data[idx] * eta.comps[comp].data[idx]
                        + f.data[idx] * lap_eta.comps[comp].data[idx]
                        - 2.0 * df_dr * deta_dr;
                    worst = worst.max((lhs.comps[comp].data[idx] - rhs).abs());
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_spec() -> CurveGeometrySpec {
        CurveGeometrySpec::new(CurveKind::CircleR3 { radius: 1.0 }, 0.3).unwrap()
    }

    fn line_spec() -> CurveGeometrySpec {
        CurveGeometrySpec::new(CurveKind::LineR3, 0.3).unwrap()
    }

    #[test]
    fn jacobian_values() {
        let line = line_spec();
        assert_eq!(line.jacobian(0.3, 0.1, 2.0), 1.0);
        let circ = circle_spec();
        assert!((circ.jacobian(0.7, 0.1, 0.0) - 0.9).abs() < 1e-15);
        // r → 0 limit is 1 uniformly
        for &theta in &[0.0, 1.0, 3.0, 5.0] {
            assert!((circ.jacobian(0.2, 1e-9, theta) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn numeric_jacobian_confirms_closed_form() {
        let circ = circle_spec();
        for &(s, r, theta) in &[(0.0, 0.1, 0.0), (1.2, 0.2, 2.1), (4.0, 0.05, 4.9)] {
            let a = circ.jacobian(s, r, theta);
            let b = circ.jacobian_numeric(s, r, theta);
            assert!((a - b).abs() < 1e-8, "({s},{r},{theta}): {a} vs {b}");
        }
        let line = line_spec();
        assert!((line.jacobian_numeric(0.5, 0.12, 1.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tube_coords_roundtrip() {
        let circ = circle_spec();
        for &(s, r, theta) in &[(0.4, 0.11, 0.9), (2.2, 0.25, 3.3), (5.5, 0.02, 5.9)] {
            let x = circ.chart(s, r, theta);
            let (s2, r2, th2) = circ.tube_coords(&x);
            assert!((s - s2).rem_euclid(std::f64::consts::TAU) < 1e-10);
            assert!((r - r2).abs() < 1e-12);
            let dth = (theta - th2).rem_euclid(std::f64::consts::TAU);
            assert!(dth < 1e-10 || std::f64::consts::TAU - dth < 1e-10);
        }
    }

    #[test]
    fn spatial_jacobian_is_axis_ratio() {
        // for the circle, j(x) = ρ_xy / ρ
        let circ = circle_spec();
        let x = circ.chart(1.0, 0.2, 1.3);
        let expect = x[0].hypot(x[1]) / 1.0;
        assert!((circ.jacobian_at(&x, false) - expect).abs() < 1e-12);
    }

    #[test]
    fn eta0_examples() {
        let grid = TubeGrid::new(8, 16, 8, 0.3, 1e-3).unwrap();
        let line = line_spec();
        let f = eta0_field(&line, &grid);
        for v in &f.comps[0].data {
            assert_eq!(*v, 1.0);
        }
        assert_eq!(f.comps[1].data.iter().fold(0.0f64, |m, v| m.max(v.abs())), 0.0);
        // circle at (r, θ) = (0.1, 0): component = 0.9^{−1/2}
        let circ = circle_spec();
        let g = TubeGrid::new(8, 16, 8, 0.3, 1e-3).unwrap();
        let fc = eta0_field(&circ, &g);
        // find the θ = 0 slot at some node: use from_fn consistency instead
        let direct = circ.jacobian(0.0, 0.1, 0.0).powf(-0.5);
        assert!((direct - 0.9f64.powf(-0.5)).abs() < 1e-12);
        assert!(fc.sup() >= direct);
    }

    #[test]
    fn eta0_radial_ode_residual_small() {
        let grid = TubeGrid::new(8, 32, 16, 0.3, 1e-3).unwrap();
        assert!(eta0_radial_residual(&line_spec(), &grid) < 1e-12);
        assert!(eta0_radial_residual(&circle_spec(), &grid) < 1e-10);
    }

    #[test]
    fn scalar_laplacian_on_known_function() {
        // f = x² + y² − 2z² is harmonic; f = x² has Δ_0 f = −2
        let circ = circle_spec();
        let grid = TubeGrid::new(32, 48, 32, 0.3, 0.3 / 16.0).unwrap();
        let harm = Grid3::from_fn(&grid, |s, r, th| {
            let x = circ.chart(s, r, th);
            x[0] * x[0] + x[1] * x[1] - 2.0 * x[2] * x[2]
        });
        let lap = scalar_laplacian(&circ, &grid, &harm);
        let mut worst = 0.0f64;
        for i in 0..grid.n_s {
            for q in 3..grid.n_r - 3 {
                for k in 0..grid.n_theta {
                    worst = worst.max(lap.data[grid.idx(i, q, k)].abs());
                }
            }
        }
        assert!(worst < 2e-4, "harmonic residual {worst:.2e}");
        let x2 = Grid3::from_fn(&grid, |s, r, th| {
            let x = circ.chart(s, r, th);
            x[0] * x[0]
        });
        let lap2 = scalar_laplacian(&circ, &grid, &x2);
        let mut worst2 = 0.0f64;
        for i in 0..grid.n_s {
            for q in 3..grid.n_r - 3 {
                for k in 0..grid.n_theta {
                    worst2 = worst2.max((lap2.data[grid.idx(i, q, k)] + 2.0).abs());
                }
            }
        }
        assert!(worst2 < 2e-4, "x^2 residual {worst2:.2e}");
    }

    #[test]
    fn line_recursion_is_zero() {
        let grid = TubeGrid::new(8, 24, 16, 0.3, 1e-3).unwrap();
        let etas = eta_recursion(&line_spec(), &grid, 2).unwrap();
        assert!(etas[1].sup() < 1e-12);
        assert!(etas[2].sup() < 1e-12);
    }

    #[test]
    fn circle_recursion_nonzero_with_small_residual() {
        let grid = TubeGrid::new(48, 48, 48, 0.25, 0.25 / 16.0).unwrap();
        let circ = circle_spec();
        let etas = eta_recursion(&circ, &grid, 1).unwrap();
        assert!(etas[1].sup() > 1e-4, "eta_1 sup {}", etas[1].sup());
        let resid = recursion_residual(&circ, &grid, &etas, 0);
        assert!(resid < 1e-4, "recursion residual {resid:.2e}");
    }

    #[test]
    fn mean_curvature_residuals() {
        assert!(mean_curvature_residual(&line_spec(), false) < 1e-10);
        for radius in [1.0f64, 2.0, 4.0] {
            let spec =
                CurveGeometrySpec::new(CurveKind::CircleR3 { radius }, 0.2 * radius.min(1.0))
                    .unwrap();
            let closed = mean_curvature_residual(&spec, false);
            assert!(closed < 1e-6, "radius {radius}: closed-form residual {closed:.2e}");
        }
        let numeric = mean_curvature_residual(&circle_spec(), true);
        assert!(numeric < 1e-3, "numeric-jacobian residual {numeric:.2e}");
    }

    #[test]
    fn chiave_identity_on_circle() {
        let grid = TubeGrid::new(32, 48, 32, 0.25, 0.25 / 16.0).unwrap();
        let resid = chiave_identity_residual(&circle_spec(), &grid);
        assert!(resid < 1e-3, "chiave residual {resid:.2e}");
    }

    #[test]
    fn parametrix_line_is_exact_gaussian() {
        let line = line_spec();
        let grid = TubeGrid::new(8, 24, 16, 0.3, 1e-3).unwrap();
        let etas = eta_recursion(&line, &grid, 0).unwrap();
        let t = 0.01;
        // find the node closest to r = 0.1
        let q = (0..grid.n_r)
            .min_by(|&a, &b| {
                (grid.r_node(a) - 0.1)
                    .abs()
                    .partial_cmp(&(grid.r_node(b) - 0.1).abs())
                    .unwrap()
            })
            .unwrap();
        let v = parametrix_eval_node(&line, &grid, &etas, t, 0, q, 0).unwrap();
        let r = grid.r_node(q);
        let expect = gaussian_prefactor(t, r);
        let c = v.coeff(&MultiIndex::new(&[2, 3], 3).unwrap());
        assert!((c - expect).abs() < 1e-14 * expect.abs().max(1.0));
    }
}

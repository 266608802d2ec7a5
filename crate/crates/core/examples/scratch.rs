use hodgelink_core::parametrix::*;

fn main() {
    let circ = CurveGeometrySpec::new(CurveKind::CircleR3 { radius: 1.0 }, 0.3).unwrap();
    let grid = TubeGrid::new(64, 64, 64, 0.3, 0.3 / 16.0).unwrap();
    // exact eta1 via 64-node GL quadrature of the exact B0 along rays:
    // eta1 = −j^{−1/2}(v) ∫_0^1 j^{1/2}(σv) B0(σv) dσ (ambient components)
    let exact_b0 = |x: &[f64]| -> [f64; 3] {
        let rho = x[0].hypot(x[1]);
        [0.0, -0.75 * x[0] * rho.powf(-3.5), -0.75 * x[1] * rho.powf(-3.5)]
    };
    let (gn, gw) = hodgelink_core::quad::gauss_legendre(64);
    let mut exact_eta1 = TubeField::zeros(&grid);
    for i in 0..grid.n_s {
        let s = grid.s_node(i);
        for q in 0..grid.n_r {
            let r = grid.r_node(q);
            for k in 0..grid.n_theta {
                let th = grid.theta_node(k);
                let mut acc = [0.0f64; 3];
                for (xn, w) in gn.iter().zip(&gw) {
                    let sigma = 0.5 * (xn + 1.0);
                    let x = circ.chart(s, sigma * r, th);
                    let b = exact_b0(&x);
                    let jj = circ.jacobian(s, sigma * r, th).sqrt();
                    for c in 0..3 { acc[c] += 0.5 * w * jj * b[c]; }
                }
                let jv = circ.jacobian(s, r, th).sqrt();
                // ambient → adapted: frame orthonormal: adapted comps are the
                // evaluations on frame pairs; here ambient [12,13,23] map by
                // the transpose of the per-s wedge matrix. Use the inverse
                // via evaluating on frame vectors.
                let n1 = circ.nu1(s); let n2 = circ.nu2(s); let t = circ.tangent(s);
                let pairs = [(n1, n2), (n1, t), (n2, t)];
                for (c, (a, b2)) in pairs.iter().enumerate() {
                    // form with ambient comps acc: evaluate on (a, b2)
                    let ev = acc[0] * (a[0]*b2[1]-a[1]*b2[0])
                        + acc[1] * (a[0]*b2[2]-a[2]*b2[0])
                        + acc[2] * (a[1]*b2[2]-a[2]*b2[1]);
                    exact_eta1.comps[c].data[grid.idx(i, q, k)] = -ev / jv;
                }
            }
        }
    }
    let etas = eta_recursion(&circ, &grid, 1).unwrap();
    let mut err: f64 = 0.0;
    for c in 0..3 {
        for (a, b) in etas[1].comps[c].data.iter().zip(&exact_eta1.comps[c].data) {
            err = err.max((a - b).abs());
        }
    }
    println!("eta1 numeric vs exact: {err:.3e}");
    let lap_exact = hodge_laplacian_2form(&circ, &grid, &exact_eta1);
    for q in [0usize, 4, 8, 16, 32] {
        let mut sup: f64 = 0.0;
        for i in 0..grid.n_s { for k in 0..grid.n_theta {
            for c in 0..3 { sup = sup.max(lap_exact.comps[c].data[grid.idx(i,q,k)].abs()); }
        }}
        println!("Δ(exact eta1) sup at q={q} (r={:.4}): {sup:.3e}", grid.r_node(q));
    }
}

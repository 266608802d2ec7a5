//! Smooth closed parametric curves with position/derivative evaluation.
//!
//! A knot is stored as a truncated Fourier descriptor per coordinate plus an
//! integer winding vector (nonzero only on tori, where coordinates are
//! interpreted mod 2π). Sampled curves are converted to this representation
//! by trigonometric interpolation at construction.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Euclidean,
    Torus,
}

/// One coordinate function `γ_a(s) = c + w s + Σ_h (A_h cos hs + B_h sin hs)`.
#[derive(Clone, Debug)]
struct CoordSeries {
    constant: f64,
    winding: i32,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl CoordSeries {
    fn eval(&self, s: f64) -> f64 {
        let mut v = self.constant + self.winding as f64 * s;
        for (h, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let hs = (h + 1) as f64 * s;
            v += a * hs.cos() + b * hs.sin();
        }
        v
    }

    fn deriv(&self, s: f64) -> f64 {
        let mut v = self.winding as f64;
        for (h, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let hf = (h + 1) as f64;
            let hs = hf * s;
            v += hf * (-a * hs.sin() + b * hs.cos());
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Knot {
    name: String,
    ambient: Ambient,
    coords: Vec<CoordSeries>,
    /// +1 or -1; -1 traverses the same geometric curve backwards.
    orientation: i8,
}

impl Knot {
    /// Build from explicit Fourier data. `cos[a]`, `sin[a]` hold harmonics
    /// 1..=H of coordinate a; `winding[a]` must be zero in Euclidean space.
    pub fn from_fourier(
        name: &str,
        ambient: Ambient,
        constant: Vec<f64>,
        winding: Vec<i32>,
        cos: Vec<Vec<f64>>,
        sin: Vec<Vec<f64>>,
        orientation: i8,
    ) -> Result<Self> {
        let n = constant.len();
        if winding.len() != n || cos.len() != n || sin.len() != n {
            return Err(Error::InvalidKnot { reason: "coordinate arrays disagree in length".into() });
        }
        if ambient == Ambient::Euclidean && winding.iter().any(|&w| w != 0) {
            return Err(Error::InvalidKnot {
                reason: format!("curve `{name}` has nonzero winding in Euclidean space"),
            });
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidKnot { reason: "orientation must be +1 or -1".into() });
        }
        let coords = (0..n)
            .map(|a| CoordSeries {
                constant: constant[a],
                winding: winding[a],
                cos: cos[a].clone(),
                sin: sin[a].clone(),
            })
            .collect();
        let knot = Self { name: name.to_string(), ambient, coords, orientation };
        knot.check_regularity()?;
        Ok(knot)
    }

    /// Build from positions sampled at `s_q = 2πq/P`, q = 0..P−1, by
    /// trigonometric interpolation. Torus curves must be given as a
    /// continuous lift (unwrapped); the winding is read off the net drift.
    /// A curve whose detrended samples are not spectrally closed (energy in
    /// the top harmonics) is rejected as open/under-resolved.
    pub fn from_samples(name: &str, ambient: Ambient, positions: &[Vec<f64>]) -> Result<Self> {
        let p = positions.len();
        if p < 16 {
            return Err(Error::InvalidKnot { reason: "need at least 16 samples".into() });
        }
        let n = positions[0].len();
        let tau = std::f64::consts::TAU;
        let mut coords = Vec::with_capacity(n);
        for a in 0..n {
            let series: Vec<f64> = positions.iter().map(|x| x[a]).collect();
            // endpoint drift over the sampled range, extrapolated to a full
            // period: 2πw (P−1)/P plus a one-step periodic wiggle
            let drift_est = (series[p - 1] - series[0]) / ((p - 1) as f64 / p as f64);
            let winding = (drift_est / tau).round() as i32;
            if ambient == Ambient::Euclidean && winding != 0 {
                return Err(Error::InvalidKnot {
                    reason: format!("curve `{name}` coordinate {a} drifts in R^n"),
                });
            }
            // subtract the winding line, then a plain DFT of the periodic rest
            let periodic: Vec<f64> = series
                .iter()
                .enumerate()
                .map(|(q, v)| v - winding as f64 * tau * q as f64 / p as f64)
                .collect();
            let hmax = (p - 1) / 2;
            let mut cos = vec![0.0; hmax];
            let mut sin = vec![0.0; hmax];
            let mut constant = 0.0;
            for v in &periodic {
                constant += v / p as f64;
            }
            for h in 1..=hmax {
                let (mut ca, mut sa) = (0.0, 0.0);
                for (q, v) in periodic.iter().enumerate() {
                    let ang = tau * (h * q) as f64 / p as f64;
                    ca += v * ang.cos();
                    sa += v * ang.sin();
                }
                cos[h - 1] = 2.0 * ca / p as f64;
                sin[h - 1] = 2.0 * sa / p as f64;
            }
            // a seam jump (open curve) spreads 1/h energy across the whole
            // spectrum; smooth closed data leaves the top harmonics at
            // rounding level
            let scale = periodic.iter().fold(1e-30f64, |m, v| m.max((v - constant).abs()));
            let tail_start = hmax.saturating_sub(hmax / 8).max(1);
            let mut tail = 0.0f64;
            for h in tail_start..=hmax {
                tail = tail.max(cos[h - 1].abs()).max(sin[h - 1].abs());
            }
            if tail > 1e-7 * scale.max(1e-6) {
                return Err(Error::OpenCurve { name: name.to_string(), gap: tail });
            }
            // drop negligible tail harmonics
            let cutoff = 1e-13 * scale;
            while let (Some(&c), Some(&s)) = (cos.last(), sin.last()) {
                if c.abs() < cutoff && s.abs() < cutoff && cos.len() > 1 {
                    cos.pop();
                    sin.pop();
                } else {
                    break;
                }
            }
            coords.push(CoordSeries { constant, winding, cos, sin });
        }
        let knot = Self { name: name.to_string(), ambient, coords, orientation: 1 };
        knot.check_regularity()?;
        Ok(knot)
    }

    /// Planar circle `center + radius (cos s · u + sin s · w)`.
    pub fn circle(name: &str, ambient: Ambient, center: &[f64], radius: f64, u: &[f64], w: &[f64]) -> Self {
        let n = center.len();
        let coords = (0..n)
            .map(|a| CoordSeries {
                constant: center[a],
                winding: 0,
                cos: vec![radius * u[a]],
                sin: vec![radius * w[a]],
            })
            .collect();
        Self { name: name.to_string(), ambient, coords, orientation: 1 }
    }

    fn check_regularity(&self) -> Result<()> {
        for q in 0..512 {
            let s = std::f64::consts::TAU * q as f64 / 512.0;
            let speed = crate::geom::norm(&self.velocity(s));
            if speed < 1e-6 {
                return Err(Error::IrregularCurve { name: self.name.clone(), s, speed });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn winding(&self) -> Vec<i32> {
        let or = self.orientation as i32;
        self.coords.iter().map(|c| or * c.winding).collect()
    }

    pub fn reversed(&self) -> Knot {
        let mut k = self.clone();
        k.orientation = -k.orientation;
        k
    }

    /// Position at parameter s (lifted coordinates; reduce mod 2π on tori
    /// where needed).
    pub fn position(&self, s: f64) -> Vec<f64> {
        let sp = self.orientation as f64 * s;
        self.coords.iter().map(|c| c.eval(sp)).collect()
    }

    pub fn velocity(&self, s: f64) -> Vec<f64> {
        let or = self.orientation as f64;
        let sp = or * s;
        self.coords.iter().map(|c| or * c.deriv(sp)).collect()
    }

    /// Apply an affine map `x ↦ scale·x + shift` to the curve.
    pub fn affine(&self, name: &str, ambient: Ambient, scale: f64, shift: &[f64]) -> Knot {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(a, c)| CoordSeries {
                constant: scale * c.constant + shift[a],
                winding: c.winding,
                cos: c.cos.iter().map(|v| v * scale).collect(),
                sin: c.sin.iter().map(|v| v * scale).collect(),
            })
            .collect();
        Knot { name: name.to_string(), ambient, coords, orientation: self.orientation }
    }

    /// Minimum over a parameter grid of the distance between two curves.
    pub fn min_distance(&self, other: &Knot, grid: usize) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..grid {
            let s = std::f64::consts::TAU * i as f64 / grid as f64;
            let p = self.position(s);
            for j in 0..grid {
                let t = std::f64::consts::TAU * j as f64 / grid as f64;
                let q = other.position(t);
                let d = crate::geom::norm(&crate::geom::sub(&p, &q));
                best = best.min(d);
            }
        }
        best
    }
}

/// Smooth seeded perturbation: adds a 3-harmonic random Fourier displacement
/// with sup norm `amplitude` to each coordinate. Deterministic per seed.
pub fn isotopy_perturb(knot: &Knot, seed: u64, amplitude: f64) -> Result<Knot> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = knot.dim();
    // draw raw coefficients, then rescale so the sup of the displacement
    // norm is exactly `amplitude`
    let mut cos_d = vec![[0.0; 3]; n];
    let mut sin_d = vec![[0.0; 3]; n];
    for a in 0..n {
        for h in 0..3 {
            cos_d[a][h] = rng.gen_range(-1.0..1.0);
            sin_d[a][h] = rng.gen_range(-1.0..1.0);
        }
    }
    let mut sup = 0.0f64;
    for q in 0..256 {
        let s = std::f64::consts::TAU * q as f64 / 256.0;
        let mut norm2 = 0.0;
        for coefs in cos_d.iter().zip(&sin_d) {
            let mut v = 0.0;
            for h in 0..3 {
                let hs = (h + 1) as f64 * s;
                v += coefs.0[h] * hs.cos() + coefs.1[h] * hs.sin();
            }
            norm2 += v * v;
        }
        sup = sup.max(norm2.sqrt());
    }
    let factor = if sup > 0.0 { amplitude / sup } else { 0.0 };
    let mut out = knot.clone();
    for (a, coord) in out.coords.iter_mut().enumerate() {
        while coord.cos.len() < 3 {
            coord.cos.push(0.0);
            coord.sin.push(0.0);
        }
        for h in 0..3 {
            coord.cos[h] += factor * cos_d[a][h];
            coord.sin[h] += factor * sin_d[a][h];
        }
    }
    out.name = format!("{}~{}", knot.name, seed);
    out.check_regularity()?;
    Ok(out)
}

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multi-index: {reason}")]
    InvalidMultiIndex { reason: String },

    #[error("singular input: {context}")]
    SingularInput { context: String },

    #[error("unsupported codimension: need n-k >= 3, got n={n}, k={k}")]
    UnsupportedCodimension { n: u8, k: usize },

    #[error("time parameter must be positive, got {t}")]
    NonPositiveTime { t: f64 },

    #[error("exterior derivative of a top-degree form")]
    TopDegreeInput,

    #[error("codifferential of a degree-0 form")]
    DegreeZeroInput,

    #[error("curve `{name}` is not closed: gap {gap:.3e}")]
    OpenCurve { name: String, gap: f64 },

    #[error("curve `{name}` is not regular: |gamma'| = {speed:.3e} at s = {s:.4}")]
    IrregularCurve { name: String, s: f64, speed: f64 },

    #[error("quadrature non-convergence: doubling nodes moved a coefficient by {delta:.3e}")]
    QuadratureNonConvergence { delta: f64 },

    #[error("knot `{name}` is not nullhomologous: harmonic class {class:?}")]
    HomologyNontrivial { name: String, class: Vec<f64> },

    #[error("curves too close for reliable quadrature: min distance {dist:.3e} < {required:.3e}")]
    CurvesTooClose { dist: f64, required: f64 },

    #[error("no generic projection direction found after {attempts} attempts")]
    DegenerateProjection { attempts: usize },

    #[error("tube grid too coarse: residual {residual:.3e} exceeds {threshold:.3e}")]
    ResolutionTooCoarse { residual: f64, threshold: f64 },

    #[error("extrapolation to r=0 did not converge: {context}")]
    ExtrapolationNonConvergent { context: String },

    #[error("point outside tube: r = {r:.3e} >= eps = {eps:.3e}")]
    OutsideTube { r: f64, eps: f64 },

    #[error("probe surface intersects the curve {count} times, need exactly 1")]
    ProbeNotTransverse { count: usize },

    #[error("special function domain error: {context}")]
    SpecialFnDomain { context: String },

    #[error("invalid knot data: {reason}")]
    InvalidKnot { reason: String },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },
}

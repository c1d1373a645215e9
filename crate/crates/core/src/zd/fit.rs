use super::vector::{MemoryOneVector, TransformedVector};
use crate::engine::PayoffParams;
use crate::{Error, Result};

/// Default `SSE` threshold for flagging extortion.
pub const DEFAULT_SSE_THRESHOLD: f64 = 0.01;

/// `|chi - 1|` below which a fit is reported as [`Verdict::Boundary`].
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// The 4x2 matrix whose columns span the extortionate subspace:
///
/// ```text
/// | R-P  R-P |
/// | S-P  T-P |
/// | T-P  S-P |
/// |  0    0  |
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignMatrix {
    rows: [[f64; 2]; 4],
}

impl DesignMatrix {
    pub fn new(payoffs: &PayoffParams) -> Self {
        let [r, s, t, p] = payoffs.as_array();
        DesignMatrix {
            rows: [[r - p, r - p], [s - p, t - p], [t - p, s - p], [0.0, 0.0]],
        }
    }

    pub fn rows(&self) -> &[[f64; 2]; 4] {
        &self.rows
    }

    pub fn apply(&self, x: [f64; 2]) -> [f64; 4] {
        self.rows.map(|row| row[0] * x[0] + row[1] * x[1])
    }

    pub fn transpose_apply(&self, y: &[f64; 4]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (row, yi) in self.rows.iter().zip(y) {
            out[0] += row[0] * yi;
            out[1] += row[1] * yi;
        }
        out
    }

    /// `C^T C` as `[[a, b], [b, d]]`.
    pub fn gram(&self) -> [[f64; 2]; 2] {
        let mut g = [[0.0; 2]; 2];
        for row in &self.rows {
            g[0][0] += row[0] * row[0];
            g[0][1] += row[0] * row[1];
            g[1][1] += row[1] * row[1];
        }
        g[1][0] = g[0][1];
        g
    }

    /// Least-squares coefficients `x* = (C^T C)^{-1} C^T y` by explicit 2x2
    /// inversion.
    pub fn solve_normal_equations(&self, y: &[f64; 4]) -> Result<[f64; 2]> {
        let [[a, b], [_, d]] = self.gram();
        let det = a * d - b * b;
        if !det.is_finite() || det.abs() <= 1e-12 * (a * d).abs().max(f64::MIN_POSITIVE) {
            return Err(Error::DegeneratePayoffs);
        }
        let [u, v] = self.transpose_apply(y);
        Ok([(d * u - b * v) / det, (a * v - b * u) / det])
    }
}

/// Best least-squares zero-determinant description of a vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZdFit {
    pub alpha: f64,
    pub beta: f64,
    /// `-P (alpha + beta)`
    pub gamma: f64,
    /// `-beta / alpha`; infinite or NaN when `alpha == 0`.
    pub chi: f64,
    /// `||C x* - p*||^2`
    pub sse: f64,
    /// `C x*`, the nearest point of the subspace.
    pub projected: TransformedVector,
}

impl ZdFit {
    /// The matrix form `p*^T p* - p*^T C x*` of the residual, evaluated
    /// independently of the stored direct residual.
    pub fn sse_matrix_form(&self, target: &TransformedVector, design: &DesignMatrix) -> f64 {
        let cx = design.apply([self.alpha, self.beta]);
        let pp: f64 = target.0.iter().map(|v| v * v).sum();
        let pcx: f64 = target.0.iter().zip(cx).map(|(a, b)| a * b).sum();
        pp - pcx
    }
}

/// Fits `p* = (p1 - 1, p2 - 1, p3, p4)` by `C x` in the least-squares sense.
pub fn fit_zd(p: &MemoryOneVector, payoffs: &PayoffParams) -> Result<ZdFit> {
    fit_transformed(&p.transformed(), payoffs)
}

pub(crate) fn fit_transformed(target: &TransformedVector, payoffs: &PayoffParams) -> Result<ZdFit> {
    let design = DesignMatrix::new(payoffs);
    let [alpha, beta] = design.solve_normal_equations(&target.0)?;
    let projected = design.apply([alpha, beta]);
    let sse = projected.iter().zip(target.0).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(ZdFit {
        alpha,
        beta,
        gamma: -payoffs.punishment() * (alpha + beta),
        chi: -beta / alpha,
        sse,
        projected: TransformedVector(projected),
    })
}

/// Orthogonal projection onto the extortionate subspace, in transformed
/// coordinates.
pub fn project_onto_plane(p: &MemoryOneVector, payoffs: &PayoffParams) -> Result<TransformedVector> {
    fit_zd(p, payoffs).map(|fit| fit.projected)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Extortionate,
    /// Fits the subspace with `chi = 1` (e.g. tit for tat).
    Boundary,
    NotExtortionate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Extortionate => "extortionate",
            Verdict::Boundary => "boundary",
            Verdict::NotExtortionate => "not_extortionate",
        }
    }
}

/// Classifies a fit: extortionate when `sse <= sse_threshold` and, with the
/// sign of `(alpha, beta)` normalized so that `alpha > 0`, `-beta > alpha`.
pub fn detect_extortion(fit: &ZdFit, sse_threshold: f64) -> Verdict {
    if !(fit.sse <= sse_threshold) {
        return Verdict::NotExtortionate;
    }
    if (fit.chi - 1.0).abs() <= BOUNDARY_TOLERANCE {
        return Verdict::Boundary;
    }
    // chi is invariant under a global sign change of (alpha, beta)
    let (alpha, beta) = if fit.alpha < 0.0 { (-fit.alpha, -fit.beta) } else { (fit.alpha, fit.beta) };
    if alpha > 0.0 && -beta > alpha {
        Verdict::Extortionate
    } else {
        Verdict::NotExtortionate
    }
}

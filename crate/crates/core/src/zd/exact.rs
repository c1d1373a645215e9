use super::vector::MemoryOneVector;
use crate::engine::PayoffParams;
use crate::{Error, Result};

/// One of the three algebraic conditions for extortion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactCondition {
    /// `p1 = ((R-P)(p2+p3) - R + T + S - P) / (S + T - 2P)`
    PlaneP1,
    /// `p4 = 0`
    NoCooperationAfterMutualDefection,
    /// `p2 + p3 < 1`
    DisagreementCooperationBelowOne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactCheck {
    pub extortionate: bool,
    /// The value of `p1` the plane requires for the given `p2`, `p3`.
    pub required_p1: f64,
    pub failed: Vec<ExactCondition>,
}

/// Tests membership of the extortionate region within `tol`.
///
/// The strict inequality `p2 + p3 < 1` must hold by a margin larger than
/// `tol`.
pub fn is_extortionate_exact(p: &MemoryOneVector, payoffs: &PayoffParams, tol: f64) -> ExactCheck {
    let [p1, p2, p3, p4] = p.as_array();
    let [r, s, t, pp] = payoffs.as_array();
    let required_p1 = ((r - pp) * (p2 + p3) - r + t + s - pp) / (s + t - 2.0 * pp);
    let mut failed = Vec::new();
    if (p1 - required_p1).abs() > tol {
        failed.push(ExactCondition::PlaneP1);
    }
    if p4.abs() > tol {
        failed.push(ExactCondition::NoCooperationAfterMutualDefection);
    }
    if 1.0 - (p2 + p3) <= tol {
        failed.push(ExactCondition::DisagreementCooperationBelowOne);
    }
    ExactCheck { extortionate: failed.is_empty(), required_p1, failed }
}

/// Extortion factor of a plane member from its transformed `p~2`, `p~3`:
///
/// `chi = (p~2 (P - T) + p~3 (S - P)) / (p~2 (P - S) + p~3 (T - P))`
pub fn chi_closed_form(p: &MemoryOneVector, payoffs: &PayoffParams) -> Result<f64> {
    let [_, q2, q3, _] = p.transformed().0;
    let [_, s, t, pp] = payoffs.as_array();
    let numerator = q2 * (pp - t) + q3 * (s - pp);
    let denominator = q2 * (pp - s) + q3 * (t - pp);
    if denominator == 0.0 {
        return Err(Error::ChiUndefined);
    }
    Ok(numerator / denominator)
}

//! Zero-determinant geometry and extortion detection.
//!
//! A memory-one vector `p = (p1, p2, p3, p4)` is compared with the
//! extortionate subspace in transformed coordinates
//! `p~ = (p1 - 1, p2 - 1, p3, p4)`. Extortionate vectors are exactly the
//! points `p~ = C x` for the 4x2 payoff-difference matrix `C` with
//! `chi = -beta / alpha > 1`; the squared distance to the column space of
//! `C` is the `SSE` used to flag extortion-like behavior in measured play.

mod exact;
mod fit;
mod measure;
mod vector;

pub use exact::{chi_closed_form, is_extortionate_exact, ExactCheck, ExactCondition};
pub use fit::{
    detect_extortion, fit_zd, project_onto_plane, DesignMatrix, Verdict, ZdFit,
    BOUNDARY_TOLERANCE, DEFAULT_SSE_THRESHOLD,
};
pub use measure::{measure_memory_one, Imputation, MeasuredProfile};
pub use vector::{MemoryOneVector, TransformedVector};

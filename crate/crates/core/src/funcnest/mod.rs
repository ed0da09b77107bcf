//! Infinite nests represented by their cut parameters.
//!
//! * The bilateral shift nest `𝒩_k`, `k ∈ ℤ`, and its half `k ≥ 0`.
//! * The Volterra nest `𝒩_t = {f ∈ Lᵖ[0,1] : f = 0 on [t, 1]}`, acted on by
//!   `V_φ f = (φ')^{1/p} (f ∘ φ)` for increasing piecewise-linear `φ`.
//! * The two-sided nest on `[-1, 1]` cut by `θ₁(t) ≤ 0 ≤ θ₂(t)`.
//!
//! Operators are described by their exact action on cuts and, for `V_φ`, on
//! step functions. Segment slopes of a pl map are positive by construction,
//! so every `PLBijection` is absolutely continuous with absolutely continuous
//! inverse; maps outside that class cannot be built here.

pub mod pl;
pub mod shift;
pub mod step;
pub mod volterra;

pub use pl::{random_pl, PLBijection};
pub use shift::{
    one_sided_invariant, one_sided_witness, shift_collineation_test, shift_decompose, ShiftDecomposition,
    ShiftFamily, ShiftNestOperator,
};
pub use step::{random_step, StepFunction, Token};
pub use volterra::{
    cantor_points, cantor_psi_approx, cantor_report, gamma_theta_membership, nest_q_restriction_test,
    two_sided_cut_map, v_phi_apply, v_phi_nest_action, volterra_decompose, CantorReport, QRestrictionReport,
    VolterraDecomposition,
};

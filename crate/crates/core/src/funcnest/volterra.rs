use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::pl::PLBijection;
use super::step::{StepFunction, Token};
use crate::error::{Error, Result};
use crate::rng::Lcg64;
use crate::scalar::{format_rational, rational, Rational};

fn require_unit(phi: &PLBijection) -> Result<()> {
    let unit = (Rational::zero(), Rational::one());
    if phi.domain() != unit || phi.range() != unit {
        return Err(Error::InvalidPiecewise("expected a bijection of [0, 1]".into()));
    }
    Ok(())
}

/// `V_φ f = (φ')^{1/p} · (f ∘ φ)`, computed exactly on the common refinement
/// of the breakpoints of `φ` and the preimages of the cuts of `f`.
pub fn v_phi_apply(phi: &PLBijection, f: &StepFunction) -> Result<StepFunction> {
    require_unit(phi)?;
    let p = f.p();
    let mut xs: Vec<Rational> = phi.points().iter().map(|(x, _)| x.clone()).collect();
    for c in f.cuts() {
        xs.push(phi.eval_inverse(c)?);
    }
    xs.sort();
    xs.dedup();
    let mut values = Vec::with_capacity(xs.len() - 1);
    for a in &xs[..xs.len() - 1] {
        let slope = phi.slope(phi.segment_index(a)?);
        let t = f.value_at(&phi.eval(a)?);
        values.push(Token::new(t.coeff.clone(), t.radical.clone() * slope));
    }
    StepFunction::new(p, xs[1..xs.len() - 1].to_vec(), values)
}

/// `V_φ 𝒩_t = 𝒩_{φ⁻¹(t)}`.
pub fn v_phi_nest_action(phi: &PLBijection, t: &Rational) -> Result<Rational> {
    require_unit(phi)?;
    phi.eval_inverse(t)
}

/// Factorization `S = (S V_φ) · V_{φ⁻¹}` of a collineation `S` of the
/// Volterra nest with `S𝒩_t = 𝒩_{φ(t)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VolterraDecomposition {
    pub action: PLBijection,
    /// The complement factor is `V_{complement}`, here `φ⁻¹`.
    pub complement: PLBijection,
    /// Cuts at which the `Grp` factor `S V_φ` was checked to act trivially.
    pub checked_cuts: Vec<Rational>,
}

impl VolterraDecomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "action": self.action.to_json(),
            "grp_part": "grp",
            "complement": {"v_of": self.complement.to_json()},
            "checked_cuts": self.checked_cuts.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// Cut action of `S` composed after that of `V_φ`: `t ↦ φ(φ⁻¹(t))`.
fn grp_part_action(phi: &PLBijection, t: &Rational) -> Result<Rational> {
    phi.eval(&v_phi_nest_action(phi, t)?)
}

pub fn volterra_decompose(phi: &PLBijection) -> Result<VolterraDecomposition> {
    require_unit(phi)?;
    let complement = phi.inverse();
    let mut cuts: Vec<Rational> = phi.points().iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
    cuts.extend([rational(1, 8), rational(1, 4), rational(1, 3), rational(1, 2)]);
    cuts.sort();
    cuts.dedup();
    for t in &cuts {
        if grp_part_action(phi, t)? != *t {
            return Err(Error::InvariantViolation(format!("Grp factor moves the cut {}", format_rational(t))));
        }
        // The complement V_{φ⁻¹} must reproduce the action of S.
        if v_phi_nest_action(&complement, t)? != phi.eval(t)? {
            return Err(Error::InvariantViolation("complement action differs from the collineation".into()));
        }
    }
    Ok(VolterraDecomposition { action: phi.clone(), complement, checked_cuts: cuts })
}

/// Membership of `φ` (on `[-1, 1]`) in `Γ_{θ₁,θ₂}` where `θ₁ = -ψ₁` and
/// `ψ₁, θ₂` are increasing bijections of `[0, 1]`:
/// `θ₁⁻¹∘φ∘θ₁ = θ₂⁻¹∘φ∘θ₂`, which forces `φ(0) = 0`.
pub fn gamma_theta_membership(phi: &PLBijection, psi1: &PLBijection, theta2: &PLBijection) -> Result<bool> {
    let (one, zero) = (Rational::one(), Rational::zero());
    if phi.domain() != (-one.clone(), one.clone()) || phi.range() != (-one.clone(), one.clone()) {
        return Err(Error::InvalidPiecewise("φ must be a bijection of [-1, 1]".into()));
    }
    require_unit(psi1)?;
    require_unit(theta2)?;
    if !phi.eval(&zero)?.is_zero() {
        return Ok(false);
    }
    let plus = phi.restrict(&zero, &one)?;
    let minus = phi.restrict(&-one, &zero)?.mirror();
    let left = psi1.inverse().compose(&minus.compose(psi1)?)?;
    let right = theta2.inverse().compose(&plus.compose(theta2)?)?;
    Ok(left == right)
}

/// Induced cut map `θ₂⁻¹∘φ⁻¹∘θ₂` of `V_φ` on the two-sided nest, for `φ ∈ Γ_{θ₁,θ₂}`.
pub fn two_sided_cut_map(phi: &PLBijection, psi1: &PLBijection, theta2: &PLBijection) -> Result<PLBijection> {
    if !gamma_theta_membership(phi, psi1, theta2)? {
        return Err(Error::Precondition("φ is not in Γ_{θ₁,θ₂}".into()));
    }
    let plus = phi.restrict(&Rational::zero(), &Rational::one())?;
    theta2.inverse().compose(&plus.inverse().compose(theta2)?)
}

/// Breakpoints of the depth-`n` approximant of the Cantor function: `c₀(x) = x`
/// and each step rescales into the outer thirds with a flat middle third.
pub fn cantor_points(depth: u32) -> Vec<(Rational, Rational)> {
    let mut pts = vec![(Rational::zero(), Rational::zero()), (Rational::one(), Rational::one())];
    let (third, half) = (rational(1, 3), rational(1, 2));
    for _ in 0..depth {
        let mut next: Vec<(Rational, Rational)> =
            pts.iter().map(|(x, y)| (x.clone() * third.clone(), y.clone() * half.clone())).collect();
        next.extend(pts.iter().map(|(x, y)| {
            ((x.clone() + rational(2, 1)) * third.clone(), half.clone() + y.clone() * half.clone())
        }));
        pts = next;
    }
    pts
}

/// `ψₙ(x) = ½(x + cₙ(x))`.
pub fn cantor_psi_approx(depth: u32) -> PLBijection {
    let half = rational(1, 2);
    let pts = cantor_points(depth).into_iter().map(|(x, y)| (x.clone(), (x + y) * half.clone())).collect();
    PLBijection::new(pts).expect("ψₙ is strictly increasing")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CantorReport {
    pub depth: u32,
    pub psi: PLBijection,
    /// Smallest `(x₂ − x₁)/(φ(x₂) − φ(x₁))` over the sampled pairs, `φ = ψₙ⁻¹`.
    pub min_inverse_quotient: Rational,
    pub pairs: usize,
    /// Total length of the segments where `ψₙ' = ½` (flat parts of `cₙ`).
    pub slope_half_measure: Rational,
    /// `min φₙ' = 2 / (1 + (3/2)ⁿ)`, which tends to 0.
    pub min_inverse_slope: Rational,
    pub note: &'static str,
}

impl CantorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "psi": self.psi.to_json(),
            "min_inverse_quotient": format_rational(&self.min_inverse_quotient),
            "pairs": self.pairs,
            "slope_half_measure": format_rational(&self.slope_half_measure),
            "min_inverse_slope": format_rational(&self.min_inverse_slope),
            "note": self.note,
        })
    }
}

/// Approximant `ψₙ` with the inverse difference-quotient bound checked on
/// `pairs` seeded pairs.
pub fn cantor_report(depth: u32, pairs: usize, seed: u64) -> Result<CantorReport> {
    let psi = cantor_psi_approx(depth);
    let phi = psi.inverse();
    let mut rng = Lcg64::new(seed);
    const DEN: i64 = 1 << 20;
    let mut min_q: Option<Rational> = None;
    for _ in 0..pairs {
        let (a, b) = loop {
            let a = rng.range(0, DEN);
            let b = rng.range(0, DEN);
            if a != b {
                break (a.min(b), a.max(b));
            }
        };
        let (x1, x2) = (rational(a, DEN), rational(b, DEN));
        let q = (x2.clone() - x1.clone()) / (phi.eval(&x2)? - phi.eval(&x1)?);
        if min_q.as_ref().is_none_or(|m| q < *m) {
            min_q = Some(q);
        }
    }
    let half = rational(1, 2);
    let slope_half_measure = psi
        .points()
        .windows(2)
        .zip(psi.slopes())
        .filter(|(_, s)| *s == half)
        .map(|(w, _)| w[1].0.clone() - w[0].0.clone())
        .fold(Rational::zero(), |a, b| a + b);
    let min_inverse_slope = phi.slopes().into_iter().min().expect("at least one segment");
    Ok(CantorReport {
        depth,
        psi,
        min_inverse_quotient: min_q.unwrap_or_else(|| rational(1, 2)),
        pairs,
        slope_half_measure,
        min_inverse_slope,
        note: "the inverse slope has no positive lower bound as depth grows, so the limit ψ is not in Δ",
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRestrictionReport {
    pub holds: bool,
    pub note: &'static str,
}

/// Whether `φ` and `φ⁻¹` map `ℚ ∩ [0, 1]` into itself. For pl maps with
/// rational breakpoints this always holds; `x³` is an element of the group
/// whose inverse does not, which this representation cannot express.
pub fn nest_q_restriction_test(phi: &PLBijection) -> Result<QRestrictionReport> {
    require_unit(phi)?;
    // Rational breakpoints make both maps affine over ℚ on each segment;
    // evaluating confirms exactness at every breakpoint and midpoint.
    let inv = phi.inverse();
    for w in phi.points().windows(2) {
        let mid = (w[0].0.clone() + w[1].0.clone()) * rational(1, 2);
        phi.eval(&mid)?;
        inv.eval(&phi.eval(&mid)?)?;
    }
    Ok(QRestrictionReport {
        holds: true,
        note: "every rational-breakpoint pl collineation restricts to the rational-indexed nest; \
               φ(x) = x³ does not (its inverse sends 1/2 to an irrational) and lies outside pl",
    })
}

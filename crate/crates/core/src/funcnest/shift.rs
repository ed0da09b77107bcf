use serde_json::{json, Value};

/// Which cuts `𝒩_k` of the bilateral shift nest belong to the family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftFamily {
    /// Every `k ∈ ℤ`.
    FullZ,
    /// Only `k ≥ 0`.
    HalfFrom0,
}

impl ShiftFamily {
    pub fn contains(self, k: i64) -> bool {
        match self {
            Self::FullZ => true,
            Self::HalfFrom0 => k >= 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::FullZ => "full_Z",
            Self::HalfFrom0 => "half_from_0",
        }
    }
}

/// `Wˢ` for the bilateral shift `W eₖ = eₖ₊₁`, acting on cuts by `k ↦ k + s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ShiftNestOperator {
    pub shift: i64,
}

impl ShiftNestOperator {
    pub fn new(shift: i64) -> Self {
        Self { shift }
    }

    pub fn compose(self, other: Self) -> Self {
        Self { shift: self.shift + other.shift }
    }

    pub fn inverse(self) -> Self {
        Self { shift: -self.shift }
    }

    pub fn act(self, k: i64) -> i64 {
        k + self.shift
    }
}

/// Least cut index `k` of the family whose image `k + s` leaves it.
///
/// Only `HalfFrom0` can fail, and only at its first cut `k = 0`.
pub fn one_sided_witness(family: ShiftFamily, s: i64) -> Option<i64> {
    match family {
        ShiftFamily::FullZ => None,
        ShiftFamily::HalfFrom0 => (s < 0).then_some(0),
    }
}

pub fn one_sided_invariant(family: ShiftFamily, s: i64) -> bool {
    one_sided_witness(family, s).is_none()
}

/// Both `Wˢ` and `W⁻ˢ` map the family into itself.
pub fn shift_collineation_test(family: ShiftFamily, s: i64) -> bool {
    one_sided_invariant(family, s) && one_sided_invariant(family, -s)
}

/// `S = (S·W⁻ˢ)·Wˢ` for a collineation of the full nest with `S𝒩₀ = 𝒩ₛ`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShiftDecomposition {
    pub w_power: i64,
}

impl ShiftDecomposition {
    pub fn to_json(&self) -> Value {
        json!({"grp_part": "grp", "w_power": self.w_power})
    }
}

pub fn shift_decompose(s_index: i64) -> ShiftDecomposition {
    let s = ShiftNestOperator::new(s_index);
    let grp_part = s.compose(ShiftNestOperator::new(-s_index));
    debug_assert_eq!(grp_part.act(0), 0);
    ShiftDecomposition { w_power: s_index }
}

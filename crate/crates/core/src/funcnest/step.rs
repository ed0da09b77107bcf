use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rng::Lcg64;
use crate::scalar::{format_rational, parse_rational, rational, rational_nth_root, GaussianRational, Rational, Scalar};

/// The value `coeff · radical^{1/p}` with `radical > 0`.
#[derive(Clone, Debug)]
pub struct Token {
    pub coeff: GaussianRational,
    pub radical: Rational,
}

impl Token {
    pub fn new(coeff: GaussianRational, radical: Rational) -> Self {
        Self { coeff, radical }
    }

    pub fn scalar(coeff: GaussianRational) -> Self {
        Self { coeff, radical: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::scalar(GaussianRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Pulls a rational `p`-th root out of the radical when one exists.
    fn normalized(mut self, p: u32) -> Self {
        if self.coeff.is_zero() {
            self.radical = Rational::one();
        } else if let Some(root) = rational_nth_root(&self.radical, p) {
            self.coeff = self.coeff * GaussianRational::real(root);
            self.radical = Rational::one();
        }
        self
    }

    /// `coeff₁·r₁^{1/p} = coeff₂·r₂^{1/p}`: equal phase and equal `p`-th powers
    /// of the moduli.
    pub fn equals(&self, other: &Self, p: u32) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let phase = self.coeff.clone() * other.coeff.conj();
        if !phase.is_real() || !phase.re.is_positive() {
            return false;
        }
        self.coeff.norm_sqr().pow(p as i32) * self.radical.clone().pow(2)
            == other.coeff.norm_sqr().pow(p as i32) * other.radical.clone().pow(2)
    }

    /// `|value|^p`, a rational whenever `|coeff|^p` is.
    pub fn abs_pow(&self, p: u32) -> Result<Rational> {
        let modulus_pow = if p % 2 == 0 {
            self.coeff.norm_sqr().pow((p / 2) as i32)
        } else {
            self.coeff
                .modulus()
                .ok_or_else(|| Error::IrrationalNorm(self.coeff.to_string()))?
                .pow(p as i32)
        };
        Ok(modulus_pow * self.radical.clone())
    }
}

/// Step function on `[0, 1]` with segments `[cutᵢ, cutᵢ₊₁)`, read as an
/// element of `Lᵖ[0, 1]`. Adjacent equal segments are merged.
#[derive(Clone, Debug)]
pub struct StepFunction {
    p: u32,
    cuts: Vec<Rational>,
    values: Vec<Token>,
}

impl StepFunction {
    /// `cuts` are the interior cut points; `values` has one more entry.
    pub fn new(p: u32, cuts: Vec<Rational>, values: Vec<Token>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidPiecewise("p must be at least 1".into()));
        }
        if values.len() != cuts.len() + 1 {
            return Err(Error::InvalidPiecewise(format!("{} cuts need {} values", cuts.len(), cuts.len() + 1)));
        }
        let mut prev = Rational::zero();
        for c in &cuts {
            if *c <= prev || *c >= Rational::one() {
                return Err(Error::InvalidPiecewise("cuts must increase strictly inside (0, 1)".into()));
            }
            prev = c.clone();
        }
        if values.iter().any(|t| !t.radical.is_positive()) {
            return Err(Error::InvalidPiecewise("radicals must be positive".into()));
        }
        let mut out_cuts = Vec::with_capacity(cuts.len());
        let mut out_vals: Vec<Token> = Vec::with_capacity(values.len());
        for (i, t) in values.into_iter().enumerate() {
            let t = t.normalized(p);
            match out_vals.last() {
                Some(last) if last.equals(&t, p) => {}
                Some(_) => {
                    out_cuts.push(cuts[i - 1].clone());
                    out_vals.push(t);
                }
                None => out_vals.push(t),
            }
        }
        Ok(Self { p, cuts: out_cuts, values: out_vals })
    }

    /// `coeff · χ_[a, b)`.
    pub fn indicator(p: u32, a: Rational, b: Rational, coeff: GaussianRational) -> Result<Self> {
        if a >= b || a.is_negative() || b > Rational::one() {
            return Err(Error::InvalidPiecewise("indicator interval must be a non-empty subinterval of [0, 1]".into()));
        }
        let mut cuts = Vec::new();
        let mut values = Vec::new();
        if a.is_positive() {
            cuts.push(a);
            values.push(Token::zero());
        }
        values.push(Token::scalar(coeff));
        if b < Rational::one() {
            cuts.push(b);
            values.push(Token::zero());
        }
        Self::new(p, cuts, values)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn values(&self) -> &[Token] {
        &self.values
    }

    /// `(start, end, value)` for each segment.
    pub fn segments(&self) -> Vec<(Rational, Rational, &Token)> {
        let mut bounds = vec![Rational::zero()];
        bounds.extend(self.cuts.iter().cloned());
        bounds.push(Rational::one());
        bounds.windows(2).zip(&self.values).map(|(w, t)| (w[0].clone(), w[1].clone(), t)).collect()
    }

    pub fn value_at(&self, x: &Rational) -> &Token {
        &self.values[self.cuts.partition_point(|c| c <= x)]
    }

    /// `‖f‖ₚᵖ`.
    pub fn norm_p_pow(&self) -> Result<Rational> {
        let mut total = Rational::zero();
        for (a, b, t) in self.segments() {
            total += t.abs_pow(self.p)? * (b - a);
        }
        Ok(total)
    }

    /// Closure of `{x : f(x) ≠ 0}` as disjoint closed intervals.
    pub fn support(&self) -> Vec<(Rational, Rational)> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        for (a, b, t) in self.segments() {
            if t.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => out.push((a, b)),
            }
        }
        out
    }

    /// `{"p": p, "cuts": [...], "values": [[coeff, radical], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "cuts": self.cuts.iter().map(|c| format_rational(c)).collect::<Vec<_>>(),
            "values": self
                .values
                .iter()
                .map(|t| json!([t.coeff.to_json(), format_rational(&t.radical)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| Error::Parse("step function needs integer \"p\"".into()))?;
        let cuts = v
            .get("cuts")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("step function needs \"cuts\"".into()))?
            .iter()
            .map(|c| c.as_str().map(parse_rational).unwrap_or_else(|| Err(Error::Parse("cut must be a \"p/q\" string".into()))))
            .collect::<Result<Vec<_>>>()?;
        let values = v
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("step function needs \"values\"".into()))?
            .iter()
            .map(|t| match t.as_array().map(Vec::as_slice) {
                Some([c, r]) => {
                    let r = r.as_str().map(parse_rational).unwrap_or_else(|| Err(Error::Parse("radical must be a \"p/q\" string".into())))?;
                    Ok(Token::new(GaussianRational::from_json(c)?, r))
                }
                Some([c]) => Ok(Token::scalar(GaussianRational::from_json(c)?)),
                _ => Err(Error::Parse("value must be [coeff, radical]".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p as u32, cuts, values)
    }
}

impl PartialEq for StepFunction {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.cuts == other.cuts
            && self.values.iter().zip(&other.values).all(|(a, b)| a.equals(b, self.p))
    }
}

impl Eq for StepFunction {}

/// Coefficients with rational modulus: small rationals and Pythagorean phases.
fn random_coeff(rng: &mut Lcg64) -> GaussianRational {
    const PHASES: [(i64, i64, i64); 5] = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (-5, 12, 13), (8, -15, 17)];
    let (a, b, c) = *rng.pick(&PHASES);
    let scale = rational(rng.range(-6, 6), rng.range(1, 6));
    GaussianRational::new(rational(a, c) * scale.clone(), rational(b, c) * scale)
}

/// Random step function with up to `segments` pieces and cut denominator `den`.
pub fn random_step(rng: &mut Lcg64, p: u32, segments: usize, den: i64) -> StepFunction {
    let mut ks: Vec<i64> = Vec::new();
    while ks.len() + 1 < segments.min(den as usize) {
        let k = rng.range(1, den - 1);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ks.sort_unstable();
    let cuts: Vec<Rational> = ks.into_iter().map(|k| rational(k, den)).collect();
    let values = (0..=cuts.len()).map(|_| Token::new(random_coeff(rng), rational(rng.range(1, 9), rng.range(1, 9)))).collect();
    StepFunction::new(p, cuts, values).expect("valid random step function")
}

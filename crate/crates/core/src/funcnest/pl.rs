use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rng::Lcg64;
use crate::scalar::{format_rational, parse_rational, rational, Rational};

/// Strictly increasing continuous piecewise-linear bijection between two
/// closed intervals, stored by its breakpoints. Collinear interior points are
/// removed, so equal functions have equal breakpoint lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PLBijection {
    points: Vec<(Rational, Rational)>,
}

fn slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (b.1.clone() - a.1.clone()) / (b.0.clone() - a.0.clone())
}

impl PLBijection {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPiecewise("need at least two breakpoints".into()));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidPiecewise(format!(
                    "breakpoint abscissae must increase: {} then {}",
                    format_rational(&w[0].0),
                    format_rational(&w[1].0)
                )));
            }
            if w[1].1 <= w[0].1 {
                return Err(Error::InvalidPiecewise(format!(
                    "slope must be positive on [{}, {}]",
                    format_rational(&w[0].0),
                    format_rational(&w[1].0)
                )));
            }
        }
        let mut canon: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            if canon.len() >= 2 {
                let k = canon.len();
                if slope(&canon[k - 2], &canon[k - 1]) == slope(&canon[k - 1], &p) {
                    canon.pop();
                }
            }
            canon.push(p);
        }
        Ok(Self { points: canon })
    }

    pub fn from_ints(points: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        Self::new(points.iter().map(|&((a, b), (c, d))| (rational(a, b), rational(c, d))).collect())
    }

    pub fn identity(lo: Rational, hi: Rational) -> Self {
        Self { points: vec![(lo.clone(), lo), (hi.clone(), hi)] }
    }

    /// Identity of `[0, 1]`.
    pub fn unit() -> Self {
        Self::identity(Rational::zero(), Rational::one())
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn domain(&self) -> (Rational, Rational) {
        (self.points[0].0.clone(), self.points[self.points.len() - 1].0.clone())
    }

    pub fn range(&self) -> (Rational, Rational) {
        (self.points[0].1.clone(), self.points[self.points.len() - 1].1.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.points.iter().all(|(x, y)| x == y)
    }

    /// Index `i` of the segment `[xᵢ, xᵢ₊₁)` containing `x`; the right
    /// endpoint belongs to the last segment.
    pub fn segment_index(&self, x: &Rational) -> Result<usize> {
        let (lo, hi) = self.domain();
        if *x < lo || *x > hi {
            return Err(Error::InvalidPiecewise(format!("{} outside the domain", format_rational(x))));
        }
        let k = self.points.partition_point(|(px, _)| px <= x);
        Ok(k.saturating_sub(1).min(self.points.len() - 2))
    }

    pub fn slope(&self, segment: usize) -> Rational {
        slope(&self.points[segment], &self.points[segment + 1])
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let i = self.segment_index(x)?;
        let (x0, y0) = &self.points[i];
        Ok(y0.clone() + (x.clone() - x0.clone()) * self.slope(i))
    }

    pub fn inverse(&self) -> Self {
        Self { points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    pub fn eval_inverse(&self, y: &Rational) -> Result<Rational> {
        self.inverse().eval(y)
    }

    /// `self ∘ g`, requiring the range of `g` to be the domain of `self`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if g.range() != self.domain() {
            return Err(Error::InvalidPiecewise("range of the inner map differs from the outer domain".into()));
        }
        let g_inv = g.inverse();
        let mut xs: Vec<Rational> = g.points.iter().map(|(x, _)| x.clone()).collect();
        for (x, _) in &self.points {
            xs.push(g_inv.eval(x)?);
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&g.eval(&x)?)?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    /// Restriction to `[lo, hi]` inside the domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidPiecewise("empty restriction interval".into()));
        }
        let mut pts = vec![(lo.clone(), self.eval(lo)?)];
        for (x, y) in &self.points {
            if x > lo && x < hi {
                pts.push((x.clone(), y.clone()));
            }
        }
        pts.push((hi.clone(), self.eval(hi)?));
        Self::new(pts)
    }

    /// `x ↦ -f(-x)` on the mirrored interval.
    pub fn mirror(&self) -> Self {
        Self { points: self.points.iter().rev().map(|(x, y)| (-x.clone(), -y.clone())).collect() }
    }

    /// `{"interval": "[a,b]", "breakpoints": [["x","y"], ...]}`, with `"range"`
    /// added when it differs from the domain.
    pub fn to_json(&self) -> Value {
        let (lo, hi) = self.domain();
        let mut v = json!({
            "interval": format!("[{},{}]", format_rational(&lo), format_rational(&hi)),
            "breakpoints": self
                .points
                .iter()
                .map(|(x, y)| json!([format_rational(x), format_rational(y)]))
                .collect::<Vec<_>>(),
        });
        let (rlo, rhi) = self.range();
        if (rlo.clone(), rhi.clone()) != (lo, hi) {
            v["range"] = json!(format!("[{},{}]", format_rational(&rlo), format_rational(&rhi)));
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bps = v
            .get("breakpoints")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("piecewise-linear map needs \"breakpoints\"".into()))?;
        let coord = |c: &Value| -> Result<Rational> {
            match c {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n
                    .as_i64()
                    .map(|k| rational(k, 1))
                    .ok_or_else(|| Error::Parse(format!("non-integer number {n}; use a \"p/q\" string"))),
                other => Err(Error::Parse(format!("expected rational, found {other}"))),
            }
        };
        let pts = bps
            .iter()
            .map(|p| match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok((coord(x)?, coord(y)?)),
                _ => Err(Error::Parse("breakpoint must be a pair".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Self::new(pts)?;
        if let Some(interval) = v.get("interval").and_then(Value::as_str) {
            let (lo, hi) = f.domain();
            let expected = format!("[{},{}]", format_rational(&lo), format_rational(&hi));
            if interval.replace(' ', "") != expected {
                return Err(Error::InvalidPiecewise(format!("breakpoints span {expected}, declared {interval}")));
            }
        }
        Ok(f)
    }
}

impl fmt::Display for PLBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.points.iter().map(|(x, y)| format!("({},{})", format_rational(x), format_rational(y))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Random increasing pl bijection of `[0, 1]` with `interior` breakpoints whose
/// coordinates have denominator `den`.
pub fn random_pl(rng: &mut Lcg64, interior: usize, den: i64) -> PLBijection {
    let pick = |rng: &mut Lcg64| -> Vec<Rational> {
        let mut v: Vec<i64> = Vec::new();
        while v.len() < interior.min(den as usize - 1) {
            let k = rng.range(1, den - 1);
            if !v.contains(&k) {
                v.push(k);
            }
        }
        v.sort_unstable();
        v.into_iter().map(|k| rational(k, den)).collect()
    };
    let xs = pick(rng);
    let ys = pick(rng);
    let mut pts = vec![(Rational::zero(), Rational::zero())];
    pts.extend(xs.into_iter().zip(ys));
    pts.push((Rational::one(), Rational::one()));
    PLBijection::new(pts).expect("increasing coordinates")
}

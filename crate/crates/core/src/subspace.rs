//! Subspaces of `Fⁿ` in canonical form.
//!
//! A subspace is stored by the column-reduced echelon form of any spanning
//! set: the transpose of the basis matrix is in reduced row echelon form with
//! no zero rows. That form is unique, so subspace equality is plain structural
//! equality. The dual space is identified with `Fⁿ` through the bilinear
//! pairing `⟨x, ξ⟩ = ξᵀx`; callers track which side a subspace lives on.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

fn same_ambient<F>(a: &Subspace<F>, b: &Subspace<F>) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch { left: a.ambient, right: b.ambient });
    }
    Ok(())
}

impl<F: Scalar> Subspace<F> {
    /// Column space of `spanning` (an `ambient × k` matrix).
    pub fn from_spanning(ambient: usize, spanning: &Matrix<F>) -> Result<Self> {
        if spanning.rows() != ambient {
            return Err(Error::Shape(format!(
                "spanning set has {} rows in ambient dimension {ambient}",
                spanning.rows()
            )));
        }
        let (r, pivots) = spanning.transpose().rref();
        let basis = r.select_rows(0..pivots.len()).transpose();
        Ok(Self { ambient, basis: if pivots.is_empty() { Matrix::zeros(ambient, 0) } else { basis } })
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        Self::from_spanning(ambient, &Matrix::from_columns(ambient, vectors)?)
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ambient) }
    }

    /// Span of the standard basis vectors `e_i`, `i ∈ indices` (0-based).
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<F>> = indices
            .iter()
            .map(|&i| (0..ambient).map(|k| if k == i { F::one() } else { F::zero() }).collect())
            .collect();
        Self::span(ambient, &vecs).expect("coordinate vectors have ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn pivot_rows(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|j| (0..self.ambient).find(|&i| !self.basis.get(i, j).is_zero()).expect("nonzero basis column"))
            .collect()
    }

    /// Coordinates of `x` in the canonical basis, if `x` lies in the subspace.
    pub fn coordinates(&self, x: &[F]) -> Option<Vec<F>> {
        assert_eq!(x.len(), self.ambient, "vector length differs from ambient dimension");
        let coords: Vec<F> = self.pivot_rows().into_iter().map(|p| x[p].clone()).collect();
        let reconstructed = self.basis.apply(&coords);
        (reconstructed.as_slice() == x).then_some(coords)
    }

    pub fn contains_vector(&self, x: &[F]) -> bool {
        self.coordinates(x).is_some()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        same_ambient(self, other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.basis.columns().iter().all(|c| self.contains_vector(c)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        same_ambient(self, other)?;
        Ok(self == other)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        Self::from_spanning(self.ambient, &Matrix::hstack(&[&self.basis, &other.basis])?)
    }

    /// Intersection, from the kernel of `[A | −B]`: `A·u = B·v` exactly on it.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let neg_b = other.basis.scale(&-F::one());
        let kernel = Matrix::hstack(&[&self.basis, &neg_b])?.kernel();
        let u = kernel.select_rows(0..self.dim());
        Self::from_spanning(self.ambient, &self.basis.mul(&u))
    }

    /// `{ξ : ξᵀx = 0 for all x in self}`, a subspace of the dual space.
    pub fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let k = self.basis.transpose().kernel();
        Self::from_spanning(self.ambient, &k).expect("kernel has ambient rows")
    }

    /// `s · self` for a square operator `s` on the ambient space.
    pub fn image(&self, s: &Matrix<F>) -> Result<Self> {
        if s.rows() != self.ambient || s.cols() != self.ambient {
            return Err(Error::Shape(format!(
                "{}x{} operator on ambient dimension {}",
                s.rows(),
                s.cols(),
                self.ambient
            )));
        }
        Self::from_spanning(self.ambient, &s.mul(&self.basis))
    }

    /// Entrywise conjugate subspace `{conj(x) : x ∈ self}`.
    pub fn conj(&self) -> Self {
        Self::from_spanning(self.ambient, &self.basis.conj()).expect("same shape")
    }

    /// True iff the parts are pairwise independent and together span the space.
    pub fn is_direct_sum(parts: &[Self]) -> Result<bool> {
        let Some(first) = parts.first() else {
            return Ok(false);
        };
        for p in parts {
            same_ambient(first, p)?;
        }
        let n = first.ambient;
        if parts.iter().map(Self::dim).sum::<usize>() != n {
            return Ok(false);
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if !a.meet(b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        let cols: Vec<&Matrix<F>> = parts.iter().map(|p| &p.basis).collect();
        Ok(Matrix::hstack(&cols)?.rank() == n)
    }

    /// The graph `{x + Vx : x ∈ m}` of an isomorphism `V: m → n`.
    ///
    /// `v` maps canonical-basis coordinates of `m` to canonical-basis
    /// coordinates of `n`. The result is a common complement of `m` and `n`.
    pub fn graph_subspace(m: &Self, n: &Self, v: &Matrix<F>) -> Result<Self> {
        same_ambient(m, n)?;
        if !Self::is_direct_sum(&[m.clone(), n.clone()])? {
            return Err(Error::NotDirectSum);
        }
        if v.rows() != n.dim() || v.cols() != m.dim() {
            return Err(Error::Shape(format!(
                "graph map is {}x{}, expected {}x{}",
                v.rows(),
                v.cols(),
                n.dim(),
                m.dim()
            )));
        }
        if !v.is_invertible() {
            return Err(Error::Singular);
        }
        let graph = m.basis.add(&n.basis.mul(v));
        Self::from_spanning(m.ambient, &graph)
    }

    pub fn to_json(&self) -> Value {
        let cols: Vec<Value> = self
            .basis
            .columns()
            .iter()
            .map(|c| Value::Array(c.iter().map(Scalar::to_json).collect()))
            .collect();
        json!({ "ambient": self.ambient, "basis": cols })
    }

    /// Accepts `{"ambient": n, "basis": [[column], ...]}`; any spanning set is
    /// accepted and canonicalized.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("subspace needs an integer \"ambient\"".into()))? as usize;
        let cols = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("subspace needs a \"basis\" array".into()))?;
        let vectors = cols
            .iter()
            .map(|c| {
                c.as_array()
                    .ok_or_else(|| Error::Parse("basis column must be an array".into()))?
                    .iter()
                    .map(F::from_json)
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::span(ambient, &vectors)
    }
}

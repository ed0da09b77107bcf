//! Diamonds and double triangles realized by three pairwise complementary
//! subspaces, their involutions `W₁, W₂, W₃`, and the factorization of
//! collineations as `Grp · 𝒪`.
//!
//! Matrices act on column vectors from the left, so `V₁⁻¹V₂` applies `V₂`
//! first. Each `Vᵢ` is written in the coordinates of the stored bases
//! `b1, b2, b3`:
//!
//! * `M₁ = {x + V₁x : x ∈ M₂}` with `V₁: M₂ → M₃`
//! * `M₂ = {x + V₂x : x ∈ M₁}` with `V₂: M₁ → M₃`
//! * `M₃ = {x + V₃x : x ∈ M₁}` with `V₃: M₁ → M₂`
//!
//! and `V₃ = V₁⁻¹V₂`.

use serde_json::{json, Value};

use crate::algops::grp_membership;
use crate::error::{Error, Result};
use crate::lattice::SubspaceLattice;
use crate::matrix::Matrix;
use crate::rng::{random_invertible, Lcg64};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MedialKind {
    /// `{0, M₁, M₂, X}`; `M₃` is only the common complement defining `W₃`.
    Diamond,
    /// `{0, M₁, M₂, M₃, X}`.
    DoubleTriangle,
}

impl MedialKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "diamond" => Ok(Self::Diamond),
            "double_triangle" | "double-triangle" => Ok(Self::DoubleTriangle),
            other => Err(Error::Parse(format!("unknown medial kind {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Diamond => "diamond",
            Self::DoubleTriangle => "double_triangle",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MedialRealization<F> {
    pub m: usize,
    pub m1: Subspace<F>,
    pub m2: Subspace<F>,
    pub m3: Subspace<F>,
    pub b1: Matrix<F>,
    pub b2: Matrix<F>,
    pub b3: Matrix<F>,
    pub v1: Matrix<F>,
    pub v2: Matrix<F>,
    pub v3: Matrix<F>,
    pub w1: Matrix<F>,
    pub w2: Matrix<F>,
    pub w3: Matrix<F>,
}

/// `[B_P | B_Q] · [[0, V⁻¹], [V, 0]] · [B_P | B_Q]⁻¹`: swaps `P` and `Q` along
/// the graph of `V: P → Q`.
fn swap_operator<F: Scalar>(bp: &Matrix<F>, bq: &Matrix<F>, v: &Matrix<F>) -> Result<Matrix<F>> {
    let m = v.rows();
    let v_inv = v.invert().ok_or(Error::Singular)?;
    let z = Matrix::zeros(m, m);
    let top = Matrix::hstack(&[&z, &v_inv])?;
    let bottom = Matrix::hstack(&[v, &z])?;
    let block = Matrix::vstack(&[&top, &bottom])?;
    let frame = Matrix::hstack(&[bp, bq])?;
    let frame_inv = frame.invert().ok_or(Error::NotDirectSum)?;
    Ok(frame.mul(&block).mul(&frame_inv))
}

/// The `V: P → Q` whose graph is `K`, in the coordinates of `bp`, `bq`.
fn graph_map<F: Scalar>(bp: &Matrix<F>, bq: &Matrix<F>, bk: &Matrix<F>) -> Result<Matrix<F>> {
    let m = bp.cols();
    let frame = Matrix::hstack(&[bp, bq])?;
    let frame_inv = frame.invert().ok_or(Error::NotDirectSum)?;
    let c = frame_inv.mul(bk);
    let cp = c.select_rows(0..m);
    let cq = c.select_rows(m..2 * m);
    let cp_inv = cp.invert().ok_or(Error::NotDirectSum)?;
    Ok(cq.mul(&cp_inv))
}

fn span_of<F: Scalar>(n: usize, b: &Matrix<F>) -> Result<Subspace<F>> {
    Subspace::from_spanning(n, b)
}

impl<F: Scalar> MedialRealization<F> {
    /// Anchored realization in `F^{2m}`: `M₁` and `M₂` are the first and last
    /// `m` coordinates, `M₃` is the graph of `v3` over `M₁`, and `M₃`
    /// carries the basis making `v1` the map of the graph `M₁` over `M₂`.
    pub fn realize_double_triangle(v3: &Matrix<F>, v1: &Matrix<F>) -> Result<Self> {
        let m = v3.rows();
        if !v3.is_square() || v1.rows() != m || v1.cols() != m {
            return Err(Error::Shape("v3 and v1 must be square of the same size".into()));
        }
        let v3_inv = v3.invert().ok_or(Error::Singular)?;
        let v1_inv = v1.invert().ok_or(Error::Singular)?;
        let n = 2 * m;
        let id = Matrix::identity(m);
        let z = Matrix::zeros(m, m);
        let b1 = Matrix::vstack(&[&id, &z])?;
        let b2 = Matrix::vstack(&[&z, &id])?;
        let g = v3_inv.mul(&v1_inv).scale(&-F::one());
        let b3 = Matrix::vstack(&[&g, &v1_inv.scale(&-F::one())])?;
        let v2 = v1.mul(v3);
        let r = Self::assemble(n, m, b1, b2, b3, v1.clone(), v2, v3.clone())?;
        r.check_invariants()?;
        Ok(r)
    }

    /// Realization from three pairwise complementary subspaces of equal
    /// dimension, in their canonical bases.
    pub fn from_subspaces(m1: &Subspace<F>, m2: &Subspace<F>, m3: &Subspace<F>) -> Result<Self> {
        let n = m1.ambient();
        let m = m1.dim();
        if n != 2 * m || m2.dim() != m || m3.dim() != m {
            return Err(Error::Precondition("three subspaces of half the ambient dimension are required".into()));
        }
        for (a, b) in [(m1, m2), (m1, m3), (m2, m3)] {
            if !Subspace::is_direct_sum(&[a.clone(), b.clone()])? {
                return Err(Error::NotDirectSum);
            }
        }
        let (b1, b2, b3) = (m1.basis().clone(), m2.basis().clone(), m3.basis().clone());
        let v1 = graph_map(&b2, &b3, &b1)?;
        let v2 = graph_map(&b1, &b3, &b2)?;
        let v3 = graph_map(&b1, &b2, &b3)?;
        Self::assemble(n, m, b1, b2, b3, v1, v2, v3)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        n: usize,
        m: usize,
        b1: Matrix<F>,
        b2: Matrix<F>,
        b3: Matrix<F>,
        v1: Matrix<F>,
        v2: Matrix<F>,
        v3: Matrix<F>,
    ) -> Result<Self> {
        let w1 = swap_operator(&b2, &b3, &v1)?;
        let w2 = swap_operator(&b1, &b3, &v2)?;
        let w3 = swap_operator(&b1, &b2, &v3)?;
        Ok(Self {
            m,
            m1: span_of(n, &b1)?,
            m2: span_of(n, &b2)?,
            m3: span_of(n, &b3)?,
            b1,
            b2,
            b3,
            v1,
            v2,
            v3,
            w1,
            w2,
            w3,
        })
    }

    pub fn ambient(&self) -> usize {
        2 * self.m
    }

    /// Direct sums, graph relations, `V₃ = V₁⁻¹V₂` and `Wᵢ² = I`.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolation(what.to_string()));
        for (a, b) in [(&self.m1, &self.m2), (&self.m1, &self.m3), (&self.m2, &self.m3)] {
            if !Subspace::is_direct_sum(&[a.clone(), b.clone()])? {
                return fail("pair of atoms is not a direct sum");
            }
        }
        let n = self.ambient();
        let graphs = [
            (&self.m1, self.b2.add(&self.b3.mul(&self.v1))),
            (&self.m2, self.b1.add(&self.b3.mul(&self.v2))),
            (&self.m3, self.b1.add(&self.b2.mul(&self.v3))),
        ];
        for (target, g) in graphs {
            if span_of(n, &g)? != *target {
                return fail("graph relation");
            }
        }
        let v1_inv = self.v1.invert().ok_or(Error::Singular)?;
        if v1_inv.mul(&self.v2) != self.v3 {
            return fail("V3 = V1^-1 V2");
        }
        let id = Matrix::identity(n);
        for w in [&self.w1, &self.w2, &self.w3] {
            if w.mul(w) != id {
                return fail("W^2 = I");
            }
        }
        Ok(())
    }

    /// `W₁W₂ = W₃W₁ = W₂W₃` and `W₁W₃ = W₂W₁ = W₃W₂`.
    pub fn verify_relations(&self) -> bool {
        let (w1, w2, w3) = (&self.w1, &self.w2, &self.w3);
        let a = w1.mul(w2);
        let b = w1.mul(w3);
        a == w3.mul(w1) && a == w2.mul(w3) && b == w2.mul(w1) && b == w3.mul(w2)
    }

    pub fn atoms(&self, kind: MedialKind) -> Vec<Subspace<F>> {
        match kind {
            MedialKind::Diamond => vec![self.m1.clone(), self.m2.clone()],
            MedialKind::DoubleTriangle => vec![self.m1.clone(), self.m2.clone(), self.m3.clone()],
        }
    }

    pub fn lattice(&self, kind: MedialKind) -> SubspaceLattice<F> {
        SubspaceLattice::generate_closure(&self.atoms(kind)).expect("pairwise complementary atoms close to a medial lattice")
    }

    /// `𝒪(𝔇) = {I, W₃}` or `𝒪(𝔗) = {I, W₁, W₂, W₃, W₁W₂, W₂W₁}`.
    pub fn complement_group(&self, kind: MedialKind) -> Vec<Matrix<F>> {
        let id = Matrix::identity(self.ambient());
        match kind {
            MedialKind::Diamond => vec![id, self.w3.clone()],
            MedialKind::DoubleTriangle => vec![
                id,
                self.w1.clone(),
                self.w2.clone(),
                self.w3.clone(),
                self.w1.mul(&self.w2),
                self.w2.mul(&self.w1),
            ],
        }
    }

    /// Unique `(a, w)` with `s = a·w`, `a` fixing every atom and `w` in the complement.
    pub fn decompose(&self, kind: MedialKind, s: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
        let atoms = self.atoms(kind);
        let s_inv = s.invert().ok_or(Error::Singular)?;
        for m in &atoms {
            if !atoms.contains(&m.image(s)?) || !atoms.contains(&m.image(&s_inv)?) {
                return Err(Error::NotACollineation);
            }
        }
        let mut found = None;
        for w in self.complement_group(kind) {
            // Every complement element is its own inverse or has its inverse in the set.
            let w_inv = w.invert().ok_or(Error::Singular)?;
            let a = s.mul(&w_inv);
            if grp_membership(&atoms, &a)? {
                if found.is_some() {
                    return Err(Error::InvariantViolation("Grp and the complement intersect beyond I".into()));
                }
                found = Some((a, w));
            }
        }
        found.ok_or_else(|| Error::InvariantViolation("collineation has no Grp·O factorization".into()))
    }

    /// Random element of `Grp(Alg)`: `diag(P, Q)` in the `[b1 | b2]` frame,
    /// with `Q = V₃PV₃⁻¹` when `M₃` must also be fixed.
    pub fn sample_grp(&self, kind: MedialKind, rng: &mut Lcg64, height: i64) -> Matrix<F> {
        let complex = F::imaginary_unit().is_some();
        let p = random_invertible::<F>(rng, self.m, height, complex);
        let q = match kind {
            MedialKind::Diamond => random_invertible::<F>(rng, self.m, height, complex),
            MedialKind::DoubleTriangle => {
                self.v3.mul(&p).mul(&self.v3.invert().expect("v3 invertible"))
            }
        };
        let z = Matrix::zeros(self.m, self.m);
        let block = Matrix::vstack(&[&Matrix::hstack(&[&p, &z]).unwrap(), &Matrix::hstack(&[&z, &q]).unwrap()]).unwrap();
        let frame = Matrix::hstack(&[&self.b1, &self.b2]).unwrap();
        frame.mul(&block).mul(&frame.invert().expect("complementary frame"))
    }

    /// Descriptor `{"m": m, "v3": matrix, "v1": matrix}`.
    pub fn to_json(&self) -> Value {
        json!({"m": self.m, "v3": self.v3.to_json(), "v1": self.v1.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let v3 = Matrix::from_json(v.get("v3").ok_or_else(|| Error::Parse("medial descriptor needs \"v3\"".into()))?)?;
        let v1 = Matrix::from_json(v.get("v1").ok_or_else(|| Error::Parse("medial descriptor needs \"v1\"".into()))?)?;
        if let Some(m) = v.get("m").and_then(Value::as_u64) {
            if m as usize != v3.rows() {
                return Err(Error::Shape(format!("m = {m} but v3 is {}x{}", v3.rows(), v3.cols())));
            }
        }
        Self::realize_double_triangle(&v3, &v1)
    }
}

/// Cayley table of a finite set of matrices, `None` unless closed under products.
pub fn cayley_table<F: Scalar>(elems: &[Matrix<F>]) -> Option<Vec<Vec<usize>>> {
    elems
        .iter()
        .map(|a| elems.iter().map(|b| elems.iter().position(|c| *c == a.mul(b))).collect())
        .collect()
}

/// Some `S` with `S·src[i] = dst[i]` for lines in `F²`, if one exists.
///
/// With `v₃ = c·v₁ + d·v₂` and `w₃ = a·w₁ + b·w₂`, the map
/// `v₁ ↦ (a/c)·w₁, v₂ ↦ (b/d)·w₂` is the unique one up to scalars on the first
/// three lines; the remaining lines are then checked.
pub fn line_transport<F: Scalar>(src: &[Subspace<F>], dst: &[Subspace<F>]) -> Result<Option<Matrix<F>>> {
    if src.len() != dst.len() || src.len() < 3 {
        return Err(Error::Precondition("need at least three source and target lines".into()));
    }
    for l in src.iter().chain(dst) {
        if l.ambient() != 2 || l.dim() != 1 {
            return Err(Error::Precondition("line_transport works on lines in a 2-dimensional space".into()));
        }
    }
    let v: Vec<Vec<F>> = src.iter().map(|l| l.basis().column(0)).collect();
    let w: Vec<Vec<F>> = dst.iter().map(|l| l.basis().column(0)).collect();
    let coords = |a: &Vec<F>, b: &Vec<F>, x: &Vec<F>| -> Result<Vec<F>> {
        let frame = Matrix::from_columns(2, &[a.clone(), b.clone()])?;
        let sol = frame.solve(&Matrix::column_vector(x.clone()))?.ok_or(Error::NotDirectSum)?;
        Ok(sol.column(0))
    };
    let cd = coords(&v[0], &v[1], &v[2])?;
    let ab = coords(&w[0], &w[1], &w[2])?;
    if cd.iter().chain(&ab).any(|x| x.is_zero()) {
        return Err(Error::Precondition("lines must be pairwise distinct".into()));
    }
    let alpha = ab[0].clone() / cd[0].clone();
    let beta = ab[1].clone() / cd[1].clone();
    let img: Vec<F> = w[0].iter().map(|x| x.clone() * alpha.clone()).collect();
    let img2: Vec<F> = w[1].iter().map(|x| x.clone() * beta.clone()).collect();
    let target = Matrix::from_columns(2, &[img, img2])?;
    let source = Matrix::from_columns(2, &[v[0].clone(), v[1].clone()])?;
    let s = target.mul(&source.invert().ok_or(Error::NotDirectSum)?);
    for (a, b) in src.iter().zip(dst) {
        if a.image(&s)? != *b {
            return Ok(None);
        }
    }
    Ok(Some(s))
}

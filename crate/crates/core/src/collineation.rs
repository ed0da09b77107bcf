//! Collineations of finite families and the checks around them.

use crate::algops::{cyclic_subspace, grp_membership, OperatorAlgebra};
use crate::error::{Error, Result};
use crate::lattice::SubspaceLattice;
use crate::matrix::Matrix;
use crate::poset::LatticeAutomorphism;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// An invertible `s` mapping a family onto itself, with the induced
/// permutation of family indices (`i ↦ j` when `s·Mᵢ = Mⱼ`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Collineation<F> {
    pub s: Matrix<F>,
    pub s_inv: Matrix<F>,
    pub permutation: LatticeAutomorphism,
}

impl<F: Scalar> Collineation<F> {
    pub fn induced_automorphism(&self) -> &LatticeAutomorphism {
        &self.permutation
    }

    /// `self · other` acting on the same family.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            s: self.s.mul(&other.s),
            s_inv: other.s_inv.mul(&self.s_inv),
            permutation: self.permutation.compose(&other.permutation),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { s: self.s_inv.clone(), s_inv: self.s.clone(), permutation: self.permutation.inverse() }
    }
}

fn check_operator<F: Scalar>(family: &[Subspace<F>], s: &Matrix<F>) -> Result<Matrix<F>> {
    if let Some(m) = family.first() {
        if s.rows() != m.ambient() || s.cols() != m.ambient() {
            return Err(Error::Shape(format!("{}x{} operator on ambient {}", s.rows(), s.cols(), m.ambient())));
        }
    }
    s.invert().ok_or(Error::Singular)
}

fn index_in<F: Scalar>(family: &[Subspace<F>], m: &Subspace<F>) -> Option<usize> {
    family.iter().position(|x| x == m)
}

/// `Some` iff `s` is invertible and both `s` and `s⁻¹` map every member into
/// the family. A singular `s` is an error, not a negative.
pub fn is_collineation<F: Scalar>(family: &[Subspace<F>], s: &Matrix<F>) -> Result<Option<Collineation<F>>> {
    let s_inv = check_operator(family, s)?;
    let mut perm = Vec::with_capacity(family.len());
    for m in family {
        match index_in(family, &m.image(s)?) {
            Some(j) => perm.push(j),
            None => return Ok(None),
        }
        if index_in(family, &m.image(&s_inv)?).is_none() {
            return Ok(None);
        }
    }
    Ok(Some(Collineation { s: s.clone(), s_inv, permutation: LatticeAutomorphism { perm } }))
}

/// Collineation of a lattice, with the permutation in node indices.
pub fn lattice_collineation<F: Scalar>(l: &SubspaceLattice<F>, s: &Matrix<F>) -> Result<Option<Collineation<F>>> {
    let s_inv = check_operator(l.nodes(), s)?;
    let mut perm = Vec::with_capacity(l.len());
    for m in l.nodes() {
        match l.index_of(&m.image(s)?) {
            Some(j) => perm.push(j),
            None => return Ok(None),
        }
        if !l.contains(&m.image(&s_inv)?) {
            return Ok(None);
        }
    }
    Ok(Some(Collineation { s: s.clone(), s_inv, permutation: LatticeAutomorphism { perm } }))
}

/// One-sided test `s·M ∈ family` for every member.
pub fn one_sided_suffices<F: Scalar>(family: &[Subspace<F>], s: &Matrix<F>) -> Result<bool> {
    check_operator(family, s)?;
    for m in family {
        if index_in(family, &m.image(s)?).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `s1·M = s2·M` for every member; both must be collineations.
pub fn same_action<F: Scalar>(family: &[Subspace<F>], s1: &Matrix<F>, s2: &Matrix<F>) -> Result<bool> {
    let c1 = is_collineation(family, s1)?.ok_or(Error::NotACollineation)?;
    let c2 = is_collineation(family, s2)?.ok_or(Error::NotACollineation)?;
    Ok(c1.permutation == c2.permutation)
}

/// Checks `c·s·c⁻¹ ∈ Grp(Alg(𝔏))`. A negative would contradict normality of
/// `Grp` in `Col`, so it is reported as an invariant violation.
pub fn normality_check<F: Scalar>(l: &SubspaceLattice<F>, c: &Matrix<F>, s: &Matrix<F>) -> Result<bool> {
    let col = lattice_collineation(l, c)?.ok_or(Error::NotACollineation)?;
    if !grp_membership(l.nodes(), s)? {
        return Err(Error::Precondition("s does not fix every node".into()));
    }
    let conj = c.mul(s).mul(&col.s_inv);
    if grp_membership(l.nodes(), &conj)? {
        Ok(true)
    } else {
        Err(Error::InvariantViolation("c·s·c⁻¹ left Grp(Alg(L))".into()))
    }
}

/// True iff `s𝒜s⁻¹ = 𝒜`, checked on a basis in both directions.
pub fn spatial_check<F: Scalar>(alg: &OperatorAlgebra<F>, s: &Matrix<F>) -> Result<bool> {
    if s.rows() != alg.ambient() || s.cols() != alg.ambient() {
        return Err(Error::Shape(format!("{}x{} operator on ambient {}", s.rows(), s.cols(), alg.ambient())));
    }
    let s_inv = s.invert().ok_or(Error::Singular)?;
    Ok(alg
        .basis()
        .iter()
        .all(|b| alg.contains(&s.mul(b).mul(&s_inv)) && alg.contains(&s_inv.mul(b).mul(s))))
}

/// True iff `𝒜(sx) = s·(𝒜x)` for every sample `x`.
pub fn cyclic_transport_check<F: Scalar>(alg: &OperatorAlgebra<F>, s: &Matrix<F>, xs: &[Vec<F>]) -> Result<bool> {
    if !s.is_invertible() {
        return Err(Error::Singular);
    }
    for x in xs {
        let lhs = cyclic_subspace(alg, &s.apply(x))?;
        let rhs = cyclic_subspace(alg, x)?.image(s)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Standard basis vectors followed by all pairwise sums `eᵢ + eⱼ`.
pub fn default_spanning_sample<F: Scalar>(n: usize) -> Vec<Vec<F>> {
    let e = |i: usize| -> Vec<F> { (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect() };
    let mut out: Vec<Vec<F>> = (0..n).map(e).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(e(i).into_iter().zip(e(j)).map(|(a, b)| a + b).collect());
        }
    }
    out
}

/// For `a ∈ Grp(𝒜)` and invertible `b ∈ 𝒜′`, checks that `a·b` is a
/// collineation of `l`, which should be `Lat(𝒜)`.
pub fn grp_product_check<F: Scalar>(
    alg: &OperatorAlgebra<F>,
    a: &Matrix<F>,
    b: &Matrix<F>,
    l: &SubspaceLattice<F>,
) -> Result<bool> {
    if !alg.contains(a) || !grp_membership(l.nodes(), a)? {
        return Err(Error::Precondition("a is not an invertible element of the algebra".into()));
    }
    if !b.is_invertible() {
        return Err(Error::Precondition("b is singular".into()));
    }
    if alg.basis().iter().any(|t| t.mul(b) != b.mul(t)) {
        return Err(Error::Precondition("b does not commute with the algebra".into()));
    }
    Ok(lattice_collineation(l, &a.mul(b))?.is_some())
}

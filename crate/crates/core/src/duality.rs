//! Annihilator families, adjoint collineations and conjugate-linear
//! collineations.
//!
//! The adjoint of `s` under the pairing `⟨x, ξ⟩ = ξᵀx` is the plain
//! transpose `sᵀ`. A conjugate-linear map is always written `x ↦ m·conj(x)`.

use serde_json::{json, Value};

use crate::algops::grp_membership;
use crate::collineation::{is_collineation, lattice_collineation};
use crate::error::{Error, Result};
use crate::lattice::SubspaceLattice;
use crate::matrix::Matrix;
use crate::poset::LatticeAutomorphism;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

pub fn perp_family<F: Scalar>(family: &[Subspace<F>]) -> Vec<Subspace<F>> {
    family.iter().map(Subspace::annihilator).collect()
}

/// For a collineation `s` of `family`, checks that `sᵀ` is a collineation of
/// the annihilator family and that `sᵀ·M⊥ = (s⁻¹M)⊥` for every member.
pub fn adjoint_is_collineation<F: Scalar>(family: &[Subspace<F>], s: &Matrix<F>) -> Result<bool> {
    let c = is_collineation(family, s)?.ok_or_else(|| Error::Precondition("s is not a collineation".into()))?;
    let perp = perp_family(family);
    let st = s.transpose();
    if is_collineation(&perp, &st)?.is_none() {
        return Ok(false);
    }
    for m in family {
        if m.annihilator().image(&st)? != m.image(&c.s_inv)?.annihilator() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reverse inclusion: a collineation `t` of the annihilator family is the
/// adjoint of the collineation `tᵀ` of the family.
pub fn pre_adjoint_is_collineation<F: Scalar>(family: &[Subspace<F>], t: &Matrix<F>) -> Result<bool> {
    let perp = perp_family(family);
    if is_collineation(&perp, t)?.is_none() {
        return Err(Error::Precondition("t is not a collineation of the annihilator family".into()));
    }
    Ok(is_collineation(family, &t.transpose())?.is_some())
}

/// For `s = a·v` with `a ∈ Grp(Alg(𝔏))` and `v ∈ Col(𝔏)`, returns the dual
/// factors `((v⁻¹av)ᵀ, vᵀ)` of `sᵀ`, after checking that the first lies in
/// `Grp(Alg(𝔏⊥))` and the second in `Col(𝔏⊥)`.
pub fn semidirect_transfer<F: Scalar>(
    l: &SubspaceLattice<F>,
    a: &Matrix<F>,
    v: &Matrix<F>,
) -> Result<(Matrix<F>, Matrix<F>)> {
    if !grp_membership(l.nodes(), a)? {
        return Err(Error::Precondition("a does not fix every node".into()));
    }
    let cv = lattice_collineation(l, v)?.ok_or_else(|| Error::Precondition("v is not a collineation".into()))?;
    let a_star = cv.s_inv.mul(a).mul(v).transpose();
    let v_star = v.transpose();
    let dual = l.dual_lattice();
    if a_star.mul(&v_star) != a.mul(v).transpose() {
        return Err(Error::InvariantViolation("dual factors do not multiply to the adjoint".into()));
    }
    if !grp_membership(dual.nodes(), &a_star)? {
        return Err(Error::InvariantViolation("dual Grp factor moves a node".into()));
    }
    if lattice_collineation(&dual, &v_star)?.is_none() {
        return Err(Error::InvariantViolation("dual complement factor is not a collineation".into()));
    }
    Ok((a_star, v_star))
}

/// The conjugate-linear map `x ↦ m·conj(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugateOperator<F> {
    pub m: Matrix<F>,
}

impl<F: Scalar> ConjugateOperator<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape("conjugate operator matrix must be square".into()));
        }
        Ok(Self { m })
    }

    /// Entrywise conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self { m: Matrix::identity(n) }
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        let cx: Vec<F> = x.iter().map(Scalar::conj).collect();
        self.m.apply(&cx)
    }

    pub fn apply_subspace(&self, s: &Subspace<F>) -> Result<Subspace<F>> {
        s.conj().image(&self.m)
    }

    pub fn is_invertible(&self) -> bool {
        self.m.is_invertible()
    }

    /// `y = m·conj(x)` gives `x = conj(m⁻¹)·conj(y)`.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { m: self.m.invert().ok_or(Error::Singular)?.conj() })
    }

    /// `self ∘ other = m₁·conj(m₂)`, a linear map.
    pub fn compose_conjugate(&self, other: &Self) -> Matrix<F> {
        self.m.mul(&other.m.conj())
    }

    /// `self ∘ t = (m·conj(t))∘conj`.
    pub fn compose_linear(&self, t: &Matrix<F>) -> Self {
        Self { m: self.m.mul(&t.conj()) }
    }

    /// `t ∘ self = (t·m)∘conj`.
    pub fn precompose_linear(&self, t: &Matrix<F>) -> Self {
        Self { m: t.mul(&self.m) }
    }

    pub fn to_json(&self) -> Value {
        json!({"matrix": self.m.to_json(), "form": "m∘conj"})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(form) = v.get("form").and_then(Value::as_str) {
            if form != "m∘conj" {
                return Err(Error::Parse(format!("unsupported conjugate operator form {form:?}")));
            }
        }
        let m = v.get("matrix").ok_or_else(|| Error::Parse("conjugate operator needs \"matrix\"".into()))?;
        Self::new(Matrix::from_json(m)?)
    }
}

/// True iff `cbar·M` and `cbar⁻¹·M` lie in the family for every member.
pub fn is_conjugate_collineation<F: Scalar>(family: &[Subspace<F>], cbar: &ConjugateOperator<F>) -> Result<bool> {
    let inv = cbar.inverse()?;
    for m in family {
        if !family.contains(&cbar.apply_subspace(m)?) || !family.contains(&inv.apply_subspace(m)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `cbar ∘ t` for a conjugate collineation `cbar` and collineation `t`,
/// checked to be a conjugate collineation whose quotient `cbar⁻¹ ∘ (cbar ∘ t)`
/// is again the collineation `t`.
pub fn coset_transfer<F: Scalar>(
    family: &[Subspace<F>],
    cbar: &ConjugateOperator<F>,
    t: &Matrix<F>,
) -> Result<ConjugateOperator<F>> {
    if !is_conjugate_collineation(family, cbar)? {
        return Err(Error::Precondition("cbar is not a conjugate collineation".into()));
    }
    if is_collineation(family, t)?.is_none() {
        return Err(Error::Precondition("t is not a collineation".into()));
    }
    let product = cbar.compose_linear(t);
    if !is_conjugate_collineation(family, &product)? {
        return Err(Error::InvariantViolation("cbar∘t is not a conjugate collineation".into()));
    }
    let back = cbar.inverse()?.compose_conjugate(&product);
    if back != *t || is_collineation(family, &back)?.is_none() {
        return Err(Error::InvariantViolation("cbar⁻¹∘(cbar∘t) did not return t".into()));
    }
    Ok(product)
}

/// Automorphisms of the node order that preserve dimensions. Any permutation
/// induced by an invertible linear or conjugate-linear map is among them.
pub fn dimension_preserving_automorphisms<F: Scalar>(l: &SubspaceLattice<F>) -> Vec<LatticeAutomorphism> {
    l.automorphisms()
        .into_iter()
        .filter(|a| (0..l.len()).all(|i| l.node(i).dim() == l.node(a.apply(i)).dim()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    type C = GaussianRational;

    fn c(a: i64, b: i64) -> C {
        C::from_ints(a, b)
    }

    fn cm(rows: &[&[i64]]) -> Matrix<C> {
        Matrix::from_ints(rows)
    }

    fn line(v: Vec<C>) -> Subspace<C> {
        Subspace::span(v.len(), &[v]).unwrap()
    }

    fn diamond() -> SubspaceLattice<C> {
        SubspaceLattice::generate_closure(&[line(vec![c(1, 0), c(0, 0)]), line(vec![c(0, 0), c(1, 0)])]).unwrap()
    }

    fn chain() -> SubspaceLattice<C> {
        SubspaceLattice::generate_closure(&[line(vec![c(1, 0), c(0, 0)])]).unwrap()
    }

    #[test]
    fn perp_examples() {
        let trivial = [Subspace::<C>::zero(2), Subspace::full(2)];
        assert_eq!(perp_family(&trivial), vec![Subspace::full(2), Subspace::zero(2)]);
        let d = diamond();
        let p = perp_family(d.nodes());
        let dual = SubspaceLattice::from_nodes(p).unwrap();
        assert_eq!(dual.classify(), d.classify());
    }

    #[test]
    fn adjoint_examples() {
        let d = diamond();
        assert!(adjoint_is_collineation(d.nodes(), &Matrix::identity(2)).unwrap());
        assert!(adjoint_is_collineation(d.nodes(), &cm(&[&[0, 1], &[1, 0]])).unwrap());
        let ch = chain();
        assert!(adjoint_is_collineation(ch.nodes(), &cm(&[&[1, 0], &[0, 2]])).unwrap());
        assert!(pre_adjoint_is_collineation(ch.nodes(), &cm(&[&[1, 0], &[3, 2]])).unwrap());
    }

    #[test]
    fn transfer_on_diamond() {
        let d = diamond();
        let (a_star, v_star) = semidirect_transfer(&d, &cm(&[&[2, 0], &[0, 3]]), &cm(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(a_star, cm(&[&[3, 0], &[0, 2]]));
        assert_eq!(v_star, cm(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn conjugate_rules() {
        let a = ConjugateOperator::new(Matrix::from_rows(vec![vec![c(1, 1), c(0, 2)], vec![c(3, 0), c(0, -1)]]).unwrap()).unwrap();
        let b = ConjugateOperator::new(Matrix::from_rows(vec![vec![c(2, 0), c(1, 1)], vec![c(0, 1), c(1, 0)]]).unwrap()).unwrap();
        let x = vec![c(1, 2), c(-3, 1)];
        assert_eq!(a.compose_conjugate(&b).apply(&x), a.apply(&b.apply(&x)));
        assert_eq!(a.inverse().unwrap().apply(&a.apply(&x)), x);
        let t = Matrix::from_rows(vec![vec![c(1, 0), c(2, -1)], vec![c(0, 1), c(1, 1)]]).unwrap();
        assert_eq!(a.compose_linear(&t).apply(&x), a.apply(&t.apply(&x)));
        assert_eq!(a.precompose_linear(&t).apply(&x), t.apply(&a.apply(&x)));
        assert_eq!(ConjugateOperator::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn conjugate_collineations() {
        let conj = ConjugateOperator::conjugation(2);
        assert!(is_conjugate_collineation(diamond().nodes(), &conj).unwrap());
        let fam = [Subspace::zero(2), line(vec![c(1, 0), c(0, 1)]), Subspace::full(2)];
        assert!(!is_conjugate_collineation(&fam, &conj).unwrap());
        let swap = ConjugateOperator::new(cm(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(is_conjugate_collineation(diamond().nodes(), &swap).unwrap());
    }

    #[test]
    fn coset_examples() {
        let ch = chain();
        let conj = ConjugateOperator::conjugation(2);
        assert_eq!(coset_transfer(ch.nodes(), &conj, &Matrix::identity(2)).unwrap(), conj);
        let t = cm(&[&[1, 0], &[0, 2]]);
        assert_eq!(coset_transfer(ch.nodes(), &conj, &t).unwrap().m, t);
        assert!(matches!(
            coset_transfer(ch.nodes(), &conj, &cm(&[&[0, 1], &[1, 0]])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mixed_dimension_diamond() {
        let e = |i: usize| -> Vec<C> { (0..3).map(|j| c(i64::from(i == j), 0)).collect() };
        let m = Subspace::span(3, &[e(0)]).unwrap();
        let n = Subspace::span(3, &[e(1), e(2)]).unwrap();
        let l = SubspaceLattice::generate_closure(&[m, n]).unwrap();
        assert_eq!(l.automorphisms().len(), 2);
        assert_eq!(dimension_preserving_automorphisms(&l).len(), 1);
    }

    /// Products of two conjugate-linear maps fixing every node land in Alg.
    #[test]
    fn conjugate_pairs_land_in_alg() {
        use crate::algops::{alg_of_family, sample_group_element};
        use crate::rng::Lcg64;
        let fam = [Subspace::zero(2), line(vec![c(1, 0), c(0, 1)]), Subspace::full(2)];
        let alg = alg_of_family(2, &fam).unwrap();
        let sbar = ConjugateOperator::new(cm(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(fam.iter().all(|m| sbar.apply_subspace(m).unwrap() == *m));
        let mut rng = Lcg64::new(17);
        for _ in 0..20 {
            let s1 = sbar.precompose_linear(&sample_group_element(&alg, &mut rng, 3));
            let s2 = sbar.precompose_linear(&sample_group_element(&alg, &mut rng, 3));
            assert!(alg.contains(&s1.compose_conjugate(&s2)));
        }
    }
}

//! Operator algebras as linear spans of matrices: `Alg(𝔉)`, commutants,
//! cyclic subspaces, `Grp` membership and a seeded reflexivity probe.
//!
//! An algebra on `Fⁿ` is stored as a subspace of `F^{n²}` (row-major
//! vectorization), so equality and membership reuse the canonical subspace
//! form.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{SubspaceLattice, DEFAULT_NODE_CAP};
use crate::matrix::Matrix;
use crate::rng::{random_vector, small_scalar, Lcg64};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorAlgebra<F> {
    ambient: usize,
    space: Subspace<F>,
}

fn vectorize<F: Scalar>(m: &Matrix<F>) -> Vec<F> {
    m.entries().to_vec()
}

fn devectorize<F: Scalar>(n: usize, v: &[F]) -> Matrix<F> {
    Matrix::new(n, n, v.to_vec()).expect("n² entries")
}

fn check_square<F: Scalar>(n: usize, m: &Matrix<F>) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

impl<F: Scalar> OperatorAlgebra<F> {
    /// Linear span of `mats`; fails unless the span is a unital algebra.
    pub fn from_spanning(ambient: usize, mats: &[Matrix<F>]) -> Result<Self> {
        let alg = Self::span_unchecked(ambient, mats)?;
        if !alg.contains(&Matrix::identity(ambient)) {
            return Err(Error::Precondition("span does not contain the identity".into()));
        }
        if !alg.is_multiplicatively_closed() {
            return Err(Error::Precondition("span is not closed under multiplication".into()));
        }
        Ok(alg)
    }

    fn span_unchecked(ambient: usize, mats: &[Matrix<F>]) -> Result<Self> {
        for m in mats {
            check_square(ambient, m)?;
        }
        let vecs: Vec<Vec<F>> = mats.iter().map(vectorize).collect();
        Ok(Self { ambient, space: Subspace::span(ambient * ambient, &vecs)? })
    }

    fn from_kernel(ambient: usize, constraints: Vec<Vec<F>>) -> Self {
        let nn = ambient * ambient;
        if constraints.is_empty() {
            return Self { ambient, space: Subspace::full(nn) };
        }
        let k = Matrix::from_rows(constraints).expect("rows of length n²").kernel();
        let space = if k.cols() == 0 { Subspace::zero(nn) } else { Subspace::from_spanning(nn, &k).expect("n² rows") };
        Self { ambient, space }
    }

    /// All `n × n` matrices.
    pub fn full(ambient: usize) -> Self {
        Self { ambient, space: Subspace::full(ambient * ambient) }
    }

    /// Scalar multiples of the identity.
    pub fn scalars(ambient: usize) -> Self {
        Self::span_unchecked(ambient, &[Matrix::identity(ambient)]).expect("square")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Canonical basis of the algebra as a vector space.
    pub fn basis(&self) -> Vec<Matrix<F>> {
        self.space.basis().columns().iter().map(|c| devectorize(self.ambient, c)).collect()
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        m.rows() == self.ambient && m.cols() == self.ambient && self.space.contains_vector(&vectorize(m))
    }

    pub fn is_unital(&self) -> bool {
        self.contains(&Matrix::identity(self.ambient))
    }

    pub fn is_multiplicatively_closed(&self) -> bool {
        let basis = self.basis();
        basis.iter().all(|a| basis.iter().all(|b| self.contains(&a.mul(b))))
    }

    /// `alg ⊆ self` as matrix spaces.
    pub fn includes(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.space.contains(&other.space).unwrap_or(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "basis": self.basis().iter().map(Matrix::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("algebra needs an integer \"ambient\"".into()))? as usize;
        let mats = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("algebra needs a \"basis\" array".into()))?
            .iter()
            .map(Matrix::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::from_spanning(ambient, &mats)
    }
}

/// `Alg(𝔉)`: every operator leaving each member of `family` invariant.
///
/// For `M` with basis `B` and annihilator basis `A`, invariance is `Aᵀ T B = 0`,
/// one homogeneous equation in the entries of `T` per pair of columns.
pub fn alg_of_family<F: Scalar>(ambient: usize, family: &[Subspace<F>]) -> Result<OperatorAlgebra<F>> {
    let n = ambient;
    let mut rows = Vec::new();
    for m in family {
        if m.ambient() != n {
            return Err(Error::AmbientMismatch { left: n, right: m.ambient() });
        }
        if m.is_zero() || m.is_full() {
            continue;
        }
        let b = m.basis();
        let a = m.annihilator();
        let a = a.basis();
        for k in 0..a.cols() {
            for l in 0..b.cols() {
                let mut row = vec![F::zero(); n * n];
                for i in 0..n {
                    if a.get(i, k).is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        row[i * n + j] = a.get(i, k).clone() * b.get(j, l).clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(OperatorAlgebra::from_kernel(n, rows))
}

/// `{T : TA = AT for every generator A}`.
pub fn commutant<F: Scalar>(ambient: usize, generators: &[Matrix<F>]) -> Result<OperatorAlgebra<F>> {
    let n = ambient;
    let mut rows = Vec::new();
    for a in generators {
        check_square(n, a)?;
        for p in 0..n {
            for q in 0..n {
                let mut row = vec![F::zero(); n * n];
                for j in 0..n {
                    let c = std::mem::replace(&mut row[p * n + j], F::zero());
                    row[p * n + j] = c + a.get(j, q).clone();
                }
                for i in 0..n {
                    let c = std::mem::replace(&mut row[i * n + q], F::zero());
                    row[i * n + q] = c - a.get(p, i).clone();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(OperatorAlgebra::from_kernel(n, rows))
}

pub fn bicommutant<F: Scalar>(ambient: usize, generators: &[Matrix<F>]) -> Result<OperatorAlgebra<F>> {
    commutant(ambient, &commutant(ambient, generators)?.basis())
}

/// Commutant of an algebra (of its basis).
pub fn algebra_commutant<F: Scalar>(alg: &OperatorAlgebra<F>) -> OperatorAlgebra<F> {
    commutant(alg.ambient(), &alg.basis()).expect("basis is square")
}

/// `𝒜x = span{Bx : B in the basis of 𝒜}`.
pub fn cyclic_subspace<F: Scalar>(alg: &OperatorAlgebra<F>, x: &[F]) -> Result<Subspace<F>> {
    if x.len() != alg.ambient() {
        return Err(Error::Shape(format!("vector of length {} in ambient {}", x.len(), alg.ambient())));
    }
    let images: Vec<Vec<F>> = alg.basis().iter().map(|b| b.apply(x)).collect();
    Subspace::span(alg.ambient(), &images)
}

pub fn is_invariant<F: Scalar>(alg: &OperatorAlgebra<F>, m: &Subspace<F>) -> Result<bool> {
    if m.ambient() != alg.ambient() {
        return Err(Error::AmbientMismatch { left: alg.ambient(), right: m.ambient() });
    }
    for b in alg.basis() {
        if !m.contains(&m.image(&b)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `s` is invertible and `s·M = M` for every member.
pub fn grp_membership<F: Scalar>(family: &[Subspace<F>], s: &Matrix<F>) -> Result<bool> {
    if !s.is_square() {
        return Err(Error::Shape("operator must be square".into()));
    }
    if !s.is_invertible() {
        return Ok(false);
    }
    for m in family {
        if m.image(s)? != *m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random invertible element of `alg`, hence of `Grp(alg)` when `alg = Alg(𝔏)`.
pub fn sample_group_element<F: Scalar>(alg: &OperatorAlgebra<F>, rng: &mut Lcg64, height: i64) -> Matrix<F> {
    let basis = alg.basis();
    let complex = F::imaginary_unit().is_some();
    loop {
        let mut s = Matrix::zeros(alg.ambient(), alg.ambient());
        for b in &basis {
            s = s.add(&b.scale(&small_scalar(rng, height, complex)));
        }
        if s.is_invertible() {
            return s;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProbeMode {
    /// `trials` seeded random vectors.
    Sampled,
    /// Every integer vector with entries in `-height..=height`; ambient ≤ 3 only.
    ExhaustiveSmall { height: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbeReport<F> {
    pub seed: u64,
    pub trials: usize,
    pub mode: ProbeMode,
    pub algebra_dim: usize,
    /// Cyclic subspaces of `Alg(𝔏)` that are not nodes of `𝔏`.
    pub witnesses: Vec<Subspace<F>>,
    /// Size of the lattice generated by the nodes and every cyclic subspace found.
    pub closure_nodes: usize,
}

impl<F: Scalar> ProbeReport<F> {
    /// A witness refutes reflexivity; its absence proves nothing.
    pub fn refutes_reflexivity(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.refutes_reflexivity() {
            "not_reflexive"
        } else {
            "no_counterexample_found"
        }
    }

    pub fn to_json(&self) -> Value {
        let mode = match self.mode {
            ProbeMode::Sampled => json!({"kind": "sampled"}),
            ProbeMode::ExhaustiveSmall { height } => json!({"kind": "exhaustive-small", "height": height}),
        };
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "mode": mode,
            "algebra_dim": self.algebra_dim,
            "verdict": self.verdict(),
            "witnesses": self.witnesses.iter().map(Subspace::to_json).collect::<Vec<_>>(),
            "closure_nodes": self.closure_nodes,
        })
    }
}

fn finish_probe<F: Scalar>(
    l: &SubspaceLattice<F>,
    found: BTreeSet<Subspace<F>>,
    seed: u64,
    trials: usize,
    mode: ProbeMode,
    algebra_dim: usize,
) -> Result<ProbeReport<F>> {
    let witnesses: Vec<Subspace<F>> = found.iter().filter(|m| !l.contains(m)).cloned().collect();
    let mut family: Vec<Subspace<F>> = l.nodes().to_vec();
    family.extend(found);
    let closure = SubspaceLattice::generate_closure_with_cap(&family, DEFAULT_NODE_CAP)?;
    Ok(ProbeReport { seed, trials, mode, algebra_dim, witnesses, closure_nodes: closure.len() })
}

/// Samples cyclic subspaces of `Alg(𝔏)` looking for invariant subspaces outside `𝔏`.
///
/// Every invariant subspace is a join of cyclic ones, so `𝔏` is reflexive
/// exactly when all cyclic subspaces are nodes.
pub fn reflexivity_probe<F: Scalar>(l: &SubspaceLattice<F>, trials: usize, seed: u64) -> Result<ProbeReport<F>> {
    let alg = alg_of_family(l.ambient(), l.nodes())?;
    let mut rng = Lcg64::new(seed);
    let complex = F::imaginary_unit().is_some();
    let mut found = BTreeSet::new();
    for _ in 0..trials {
        let x = random_vector::<F>(&mut rng, l.ambient(), 8, complex);
        found.insert(cyclic_subspace(&alg, &x)?);
    }
    finish_probe(l, found, seed, trials, ProbeMode::Sampled, alg.dim())
}

/// Exhaustive probe over every integer vector of entry height ≤ `height`.
pub fn reflexivity_probe_exhaustive_small<F: Scalar>(l: &SubspaceLattice<F>, height: i64) -> Result<ProbeReport<F>> {
    let n = l.ambient();
    if n > 3 {
        return Err(Error::Precondition(format!("exhaustive-small mode needs ambient ≤ 3, got {n}")));
    }
    let alg = alg_of_family(n, l.nodes())?;
    let side = (2 * height + 1) as usize;
    let total = side.pow(n as u32);
    let mut found = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let x: Vec<F> = (0..n)
            .map(|_| {
                let v = (c % side) as i64 - height;
                c /= side;
                F::from_int(v)
            })
            .collect();
        found.insert(cyclic_subspace(&alg, &x)?);
    }
    finish_probe(l, found, 0, total, ProbeMode::ExhaustiveSmall { height }, alg.dim())
}

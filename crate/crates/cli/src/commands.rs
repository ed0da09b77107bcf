use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use colkit::algops::{
    alg_of_family, algebra_commutant, bicommutant, commutant, reflexivity_probe, reflexivity_probe_exhaustive_small,
};
use colkit::collineation::lattice_collineation;
use colkit::duality::{dimension_preserving_automorphisms, is_conjugate_collineation, ConjugateOperator};
use colkit::funcnest::{
    cantor_report, one_sided_invariant, one_sided_witness, shift_collineation_test, shift_decompose, v_phi_apply,
    v_phi_nest_action, volterra_decompose, PLBijection, ShiftFamily, StepFunction,
};
use colkit::rng::random_invertible;
use colkit::scalar::{format_rational, parse_rational, rational};
use colkit::{
    Error, GaussianRational, LatticeAutomorphism, Lcg64, Matrix, MedialKind, MedialRealization, OperatorAlgebra,
    Rational, Scalar, Subspace, SubspaceLattice,
};
use serde_json::{json, Value};

use crate::{Cli, Field, Kind, ShiftFamilyArg, Verb, VolterraVerb};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Core(Error::InvariantViolation(_)) => 3,
            Self::Core(Error::NotACollineation) => 1,
            Self::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(msg) => write!(f, "{msg}"),
            Self::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

struct Outcome {
    report: Value,
    negative: bool,
    dot: Option<String>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, negative: false, dot: None }
    }
}

/// Input files of a verb, by role.
fn input_paths(verb: &Verb) -> Vec<&PathBuf> {
    match verb {
        Verb::Closure { input, .. }
        | Verb::Alg { input }
        | Verb::Aut { input }
        | Verb::Classify { input }
        | Verb::Perp { input }
        | Verb::ProbeReflexive { input, .. } => vec![&input.lattice],
        Verb::Collineate { input, matrix } => vec![&input.lattice, matrix],
        Verb::ConjTest { input, conjugate } => vec![&input.lattice, conjugate],
        Verb::Commutant { algebra, matrices, .. } => algebra.iter().chain(matrices).collect(),
        Verb::RealizeMedial { medial, .. } => medial.iter().collect(),
        Verb::Decompose { medial, matrix, .. } => vec![medial, matrix],
        Verb::Volterra { action } => match action {
            VolterraVerb::Decompose { phi } | VolterraVerb::Cut { phi, .. } => vec![phi],
            VolterraVerb::Apply { phi, step } => vec![phi, step],
            VolterraVerb::Cantor { .. } => vec![],
        },
        Verb::ShiftNest { .. } => vec![],
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn has_gaussian(v: &Value) -> bool {
    match v {
        Value::Object(map) => map.contains_key("re") || map.contains_key("im") || map.values().any(has_gaussian),
        Value::Array(items) => items.iter().any(has_gaussian),
        _ => false,
    }
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    let inputs = input_paths(&cli.verb).into_iter().map(|p| read_json(p)).collect::<CliResult<Vec<_>>>()?;
    let gaussian = match cli.field {
        Field::Auto => inputs.iter().any(has_gaussian),
        Field::Rational => false,
        Field::Gaussian => true,
    };
    let outcome = if gaussian {
        execute::<GaussianRational>(cli, &inputs)?
    } else {
        execute::<Rational>(cli, &inputs)?
    };
    if let Some(path) = &cli.dot {
        let dot = outcome.dot.as_ref().ok_or_else(|| CliError::Input("--dot applies to lattice verbs only".into()))?;
        write_file(path, dot)?;
    }
    let text = format!("{}\n", serde_json::to_string_pretty(&outcome.report).expect("json values serialize"));
    match &cli.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(u8::from(outcome.negative))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Subspaces listed under `"nodes"`, not yet closed.
fn parse_family<F: Scalar>(v: &Value) -> CliResult<Vec<Subspace<F>>> {
    let ambient = v
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Input("lattice needs an integer \"ambient\"".into()))? as usize;
    let nodes = v
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input("lattice needs a \"nodes\" array".into()))?
        .iter()
        .map(Subspace::from_json)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = nodes.iter().find(|m| m.ambient() != ambient) {
        return Err(Error::AmbientMismatch { left: ambient, right: bad.ambient() }.into());
    }
    Ok(if nodes.is_empty() { vec![Subspace::zero(ambient)] } else { nodes })
}

fn lattice<F: Scalar>(v: &Value) -> CliResult<SubspaceLattice<F>> {
    Ok(SubspaceLattice::generate_closure(&parse_family(v)?)?)
}

fn perm_json(p: &LatticeAutomorphism) -> Value {
    json!(p.perm)
}

fn kind(k: Kind) -> MedialKind {
    match k {
        Kind::Diamond => MedialKind::Diamond,
        Kind::DoubleTriangle => MedialKind::DoubleTriangle,
    }
}

fn matrix_list<F: Scalar>(v: &Value) -> CliResult<Vec<Matrix<F>>> {
    let items = v.as_array().ok_or_else(|| CliError::Input("expected a JSON array of matrices".into()))?;
    Ok(items.iter().map(Matrix::from_json).collect::<Result<Vec<_>, _>>()?)
}

fn execute<F: Scalar>(cli: &Cli, inputs: &[Value]) -> CliResult<Outcome> {
    let outcome = match &cli.verb {
        Verb::Closure { cap, .. } => {
            let l = SubspaceLattice::<F>::generate_closure_with_cap(&parse_family(&inputs[0])?, *cap)?;
            let mut report = l.to_json();
            report["size"] = json!(l.len());
            Outcome { report, negative: false, dot: Some(l.to_dot()) }
        }
        Verb::Alg { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let alg = alg_of_family(l.ambient(), l.nodes())?;
            let mut report = alg.to_json();
            report["dim"] = json!(alg.dim());
            Outcome { report, negative: false, dot: Some(l.to_dot()) }
        }
        Verb::Commutant { algebra, double, .. } => {
            let result = if algebra.is_some() {
                let alg = OperatorAlgebra::<F>::from_json(&inputs[0])?;
                if *double {
                    algebra_commutant(&algebra_commutant(&alg))
                } else {
                    algebra_commutant(&alg)
                }
            } else {
                let gens = matrix_list::<F>(&inputs[0])?;
                let n = gens.first().map(Matrix::rows).ok_or_else(|| CliError::Input("no matrices given".into()))?;
                if *double {
                    bicommutant(n, &gens)?
                } else {
                    commutant(n, &gens)?
                }
            };
            let mut report = result.to_json();
            report["dim"] = json!(result.dim());
            Outcome::ok(report)
        }
        Verb::Collineate { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let s = Matrix::<F>::from_json(&inputs[1])?;
            let (report, negative) = match lattice_collineation(&l, &s) {
                Ok(Some(c)) => (json!({"verdict": true, "permutation": perm_json(&c.permutation)}), false),
                Ok(None) => (json!({"verdict": false, "reason": "some node leaves the lattice"}), true),
                Err(Error::Singular) => (json!({"verdict": false, "reason": "singular"}), true),
                Err(e) => return Err(e.into()),
            };
            Outcome { report, negative, dot: Some(l.to_dot()) }
        }
        Verb::Aut { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let auts = l.automorphisms();
            let dims = dimension_preserving_automorphisms(&l);
            let report = json!({
                "count": auts.len(),
                "automorphisms": auts.iter().map(perm_json).collect::<Vec<_>>(),
                "dimension_preserving": dims.iter().map(perm_json).collect::<Vec<_>>(),
            });
            Outcome { report, negative: false, dot: Some(l.to_dot()) }
        }
        Verb::Classify { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let shape = l.classify();
            let report = json!({
                "shape": shape.name(),
                "tags": shape.tags(),
                "chain_lengths": shape.chain_lengths(),
                "size": l.len(),
                "dims": l.nodes().iter().map(Subspace::dim).collect::<Vec<_>>(),
            });
            Outcome { report, negative: false, dot: Some(l.to_dot()) }
        }
        Verb::RealizeMedial { random, height, kind: k, .. } => {
            let r = match random {
                Some(m) => {
                    let mut rng = Lcg64::new(cli.seed);
                    let complex = F::imaginary_unit().is_some();
                    let v3 = random_invertible::<F>(&mut rng, *m, *height, complex);
                    let v1 = random_invertible::<F>(&mut rng, *m, *height, complex);
                    MedialRealization::realize_double_triangle(&v3, &v1)?
                }
                None => MedialRealization::<F>::from_json(&inputs[0])?,
            };
            r.check_invariants()?;
            if !r.verify_relations() {
                return Err(Error::InvariantViolation("relation chains do not hold".into()).into());
            }
            let k = kind(*k);
            let l = r.lattice(k);
            let report = json!({
                "descriptor": r.to_json(),
                "kind": k.name(),
                "atoms": r.atoms(k).iter().map(Subspace::to_json).collect::<Vec<_>>(),
                "w": [r.w1.to_json(), r.w2.to_json(), r.w3.to_json()],
                "complement": r.complement_group(k).iter().map(Matrix::to_json).collect::<Vec<_>>(),
                "relations_hold": true,
            });
            Outcome { report, negative: false, dot: Some(l.to_dot()) }
        }
        Verb::Decompose { kind: k, .. } => {
            let r = MedialRealization::<F>::from_json(&inputs[0])?;
            let s = Matrix::<F>::from_json(&inputs[1])?;
            let k = kind(*k);
            match r.decompose(k, &s) {
                Ok((a, w)) => {
                    let index = r.complement_group(k).iter().position(|x| *x == w);
                    Outcome::ok(json!({"verdict": true, "grp": a.to_json(), "complement": w.to_json(), "complement_index": index}))
                }
                Err(Error::NotACollineation) | Err(Error::Singular) => Outcome {
                    report: json!({"verdict": false, "reason": "not a collineation of the atoms"}),
                    negative: true,
                    dot: None,
                },
                Err(e) => return Err(e.into()),
            }
        }
        Verb::Perp { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let dual = l.dual_lattice();
            let map = l
                .dual_index_map(&dual)
                .ok_or_else(|| Error::InvariantViolation("annihilator missing from the dual".into()))?;
            let mut report = dual.to_json();
            report["index_map"] = json!(map);
            Outcome { report, negative: false, dot: Some(dual.to_dot()) }
        }
        Verb::ConjTest { .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let c = ConjugateOperator::<F>::from_json(&inputs[1])?;
            let verdict = is_conjugate_collineation(l.nodes(), &c)?;
            let report = if verdict {
                let perm = l
                    .nodes()
                    .iter()
                    .map(|m| Ok(l.index_of(&c.apply_subspace(m)?).expect("checked above")))
                    .collect::<Result<Vec<_>, Error>>()?;
                json!({"verdict": true, "permutation": perm})
            } else {
                json!({"verdict": false})
            };
            Outcome { report, negative: !verdict, dot: Some(l.to_dot()) }
        }
        Verb::Volterra { action } => volterra(action, inputs, cli.seed)?,
        Verb::ShiftNest { family, shift } => {
            let fam = match family {
                ShiftFamilyArg::Full => ShiftFamily::FullZ,
                ShiftFamilyArg::Half => ShiftFamily::HalfFrom0,
            };
            let two_sided = shift_collineation_test(fam, *shift);
            let witness = one_sided_witness(fam, *shift).or_else(|| one_sided_witness(fam, -shift));
            let mut report = json!({
                "family": fam.name(),
                "shift": shift,
                "one_sided": one_sided_invariant(fam, *shift),
                "verdict": two_sided,
                "witness": witness,
            });
            if two_sided {
                report["decomposition"] = shift_decompose(*shift).to_json();
            }
            Outcome { report, negative: !two_sided, dot: None }
        }
        Verb::ProbeReflexive { trials, exhaustive, .. } => {
            let l = lattice::<F>(&inputs[0])?;
            let probe = match exhaustive {
                Some(h) => reflexivity_probe_exhaustive_small(&l, *h)?,
                None => reflexivity_probe(&l, *trials, cli.seed)?,
            };
            let mut report = probe.to_json();
            report["verdict"] = json!(probe.verdict());
            Outcome { report, negative: probe.refutes_reflexivity(), dot: Some(l.to_dot()) }
        }
    };
    Ok(outcome)
}

fn volterra(action: &VolterraVerb, inputs: &[Value], seed: u64) -> CliResult<Outcome> {
    Ok(match action {
        VolterraVerb::Decompose { .. } => Outcome::ok(volterra_decompose(&PLBijection::from_json(&inputs[0])?)?.to_json()),
        VolterraVerb::Apply { .. } => {
            let phi = PLBijection::from_json(&inputs[0])?;
            let f = StepFunction::from_json(&inputs[1])?;
            Outcome::ok(v_phi_apply(&phi, &f)?.to_json())
        }
        VolterraVerb::Cut { t, .. } => {
            let phi = PLBijection::from_json(&inputs[0])?;
            let t = parse_rational(t)?;
            let image = v_phi_nest_action(&phi, &t)?;
            Outcome::ok(json!({"t": format_rational(&t), "image": format_rational(&image)}))
        }
        VolterraVerb::Cantor { depth, pairs } => {
            let report = cantor_report(*depth, *pairs, seed)?;
            if report.min_inverse_quotient < rational(1, 2) {
                return Err(Error::InvariantViolation("inverse difference quotient below 1/2".into()).into());
            }
            Outcome::ok(report.to_json())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(Error::Singular).exit_code(), 2);
        assert_eq!(CliError::Core(Error::NotACollineation).exit_code(), 1);
        assert_eq!(CliError::Core(Error::InvariantViolation("x".into())).exit_code(), 3);
    }

    #[test]
    fn gaussian_detection() {
        assert!(!has_gaussian(&json!({"basis": [["1", "2/3"]]})));
        assert!(has_gaussian(&json!({"basis": [["1", {"re": "0", "im": "1"}]]})));
        assert!(has_gaussian(&json!([[{"im": "1"}]])));
    }
}

//! JSON encodings of the public value types. Integers are emitted as
//! JSON numbers at full precision (no rounding through floats), so the
//! records round-trip exactly.
//!
//! Records: `FgAbGroup {rank, torsion}`, `GradedGroup {K0, K1}`,
//! `IntMatrix {rows, cols, entries}` (row-major), `SnfResult {U, S, V,
//! diag}`, `DirectSystem {prefix, tail_group, tail_map}`, ring elements
//! `{base, phi0, phi1, kappa01, kappa10}`.

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use std::str::FromStr;

use crate::fgab::{ExtGroup, FgAbGroup, GroupHom};
use crate::intlin::{IntMatrix, SnfResult};
use crate::kkobj::GradedGroup;
use crate::limits::{Colimit, DirectSystem, DualVerdict, NonExistenceMechanism};
use crate::ringmodel::{EndoRingElement, InvertOutcome, Obstruction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("expected {expected} at {context}")]
    Expected {
        expected: &'static str,
        context: String,
    },
    #[error("{0}")]
    Invariant(#[from] crate::fgab::InvariantError),
    #[error("{0}")]
    Hom(#[from] crate::fgab::HomError),
    #[error("{0}")]
    System(#[from] crate::limits::SystemError),
    #[error("{0}")]
    Ring(#[from] crate::ringmodel::RingError),
    #[error("residue vector for {slot} has length {got}, expected {expected}")]
    ResidueLength {
        slot: &'static str,
        expected: usize,
        got: usize,
    },
}

fn expected(what: &'static str, context: &str) -> JsonError {
    JsonError::Expected {
        expected: what,
        context: context.to_string(),
    }
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal digits parse as a number"))
}

pub fn bigint_from_json(v: &Value, context: &str) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| expected("integer", context))
        }
        _ => Err(expected("integer", context)),
    }
}

fn usize_from_json(v: &Value, context: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| expected("nonnegative integer", context))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &'static str) -> Result<&'a Value, JsonError> {
    obj.get(name).ok_or(JsonError::Expected {
        expected: name,
        context: "object field".to_string(),
    })
}

fn as_object<'a>(v: &'a Value, context: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| expected("object", context))
}

fn as_array<'a>(v: &'a Value, context: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| expected("array", context))
}

fn bigint_vec_from_json(v: &Value, context: &str) -> Result<Vec<BigInt>, JsonError> {
    as_array(v, context)?
        .iter()
        .map(|e| bigint_from_json(e, context))
        .collect()
}

fn bigint_vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_json).collect())
}

pub fn group_to_json(g: &FgAbGroup) -> Value {
    let mut obj = Map::new();
    obj.insert("rank".into(), Value::from(g.rank() as u64));
    obj.insert("torsion".into(), bigint_vec_to_json(g.torsion()));
    Value::Object(obj)
}

pub fn group_from_json(v: &Value) -> Result<FgAbGroup, JsonError> {
    let obj = as_object(v, "group record")?;
    let rank = usize_from_json(field(obj, "rank")?, "group rank")?;
    let torsion = bigint_vec_from_json(field(obj, "torsion")?, "group torsion")?;
    Ok(FgAbGroup::try_new(rank, torsion)?)
}

pub fn graded_to_json(g: &GradedGroup) -> Value {
    let mut obj = Map::new();
    obj.insert("K0".into(), group_to_json(g.k0()));
    obj.insert("K1".into(), group_to_json(g.k1()));
    Value::Object(obj)
}

pub fn graded_from_json(v: &Value) -> Result<GradedGroup, JsonError> {
    let obj = as_object(v, "graded record")?;
    Ok(GradedGroup::new(
        group_from_json(field(obj, "K0")?)?,
        group_from_json(field(obj, "K1")?)?,
    ))
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    let mut obj = Map::new();
    obj.insert("rows".into(), Value::from(m.rows() as u64));
    obj.insert("cols".into(), Value::from(m.cols() as u64));
    obj.insert("entries".into(), bigint_vec_to_json(m.entries()));
    Value::Object(obj)
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix, JsonError> {
    let obj = as_object(v, "matrix record")?;
    let rows = usize_from_json(field(obj, "rows")?, "matrix rows")?;
    let cols = usize_from_json(field(obj, "cols")?, "matrix cols")?;
    let entries = bigint_vec_from_json(field(obj, "entries")?, "matrix entries")?;
    if entries.len() != rows * cols {
        return Err(expected("rows*cols entries", "matrix entries"));
    }
    Ok(IntMatrix::new(rows, cols, entries))
}

pub fn snf_to_json(r: &SnfResult) -> Value {
    let mut obj = Map::new();
    obj.insert("U".into(), matrix_to_json(&r.u));
    obj.insert("S".into(), matrix_to_json(&r.s));
    obj.insert("V".into(), matrix_to_json(&r.v));
    obj.insert("diag".into(), bigint_vec_to_json(&r.diag));
    Value::Object(obj)
}

pub fn system_to_json(s: &DirectSystem) -> Value {
    let prefix: Vec<Value> = s
        .prefix()
        .iter()
        .map(|(g, f)| {
            let mut obj = Map::new();
            obj.insert("group".into(), group_to_json(g));
            obj.insert("map".into(), matrix_to_json(f.matrix()));
            Value::Object(obj)
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("prefix".into(), Value::Array(prefix));
    obj.insert("tail_group".into(), group_to_json(s.tail_group()));
    obj.insert("tail_map".into(), matrix_to_json(s.tail_map().matrix()));
    Value::Object(obj)
}

pub fn system_from_json(v: &Value) -> Result<DirectSystem, JsonError> {
    let obj = as_object(v, "direct system record")?;
    let tail_group = group_from_json(field(obj, "tail_group")?)?;
    let tail_matrix = matrix_from_json(field(obj, "tail_map")?)?;
    let tail_map = GroupHom::new(tail_group.clone(), tail_group.clone(), tail_matrix)?;
    let raw_prefix = as_array(field(obj, "prefix")?, "prefix")?;
    // stage groups first, so each connecting map knows its target
    let mut stages: Vec<(FgAbGroup, IntMatrix)> = Vec::with_capacity(raw_prefix.len());
    for item in raw_prefix {
        let entry = as_object(item, "prefix entry")?;
        stages.push((
            group_from_json(field(entry, "group")?)?,
            matrix_from_json(field(entry, "map")?)?,
        ));
    }
    let mut prefix = Vec::with_capacity(stages.len());
    for (i, (group, matrix)) in stages.iter().enumerate() {
        let target = stages
            .get(i + 1)
            .map(|(g, _)| g.clone())
            .unwrap_or_else(|| tail_group.clone());
        prefix.push((
            group.clone(),
            GroupHom::new(group.clone(), target, matrix.clone())?,
        ));
    }
    Ok(DirectSystem::new(prefix, tail_group, tail_map)?)
}

pub fn element_to_json(e: &EndoRingElement) -> Value {
    let mut obj = Map::new();
    obj.insert("base".into(), graded_to_json(e.base()));
    obj.insert("phi0".into(), matrix_to_json(e.phi0().matrix()));
    obj.insert("phi1".into(), matrix_to_json(e.phi1().matrix()));
    obj.insert("kappa01".into(), bigint_vec_to_json(e.kappa01().residues()));
    obj.insert("kappa10".into(), bigint_vec_to_json(e.kappa10().residues()));
    Value::Object(obj)
}

pub fn element_from_json(v: &Value) -> Result<EndoRingElement, JsonError> {
    let obj = as_object(v, "ring element record")?;
    let base = graded_from_json(field(obj, "base")?)?;
    let phi0 = GroupHom::new(
        base.k0().clone(),
        base.k0().clone(),
        matrix_from_json(field(obj, "phi0")?)?,
    )?;
    let phi1 = GroupHom::new(
        base.k1().clone(),
        base.k1().clone(),
        matrix_from_json(field(obj, "phi1")?)?,
    )?;
    let eg01 = ExtGroup::new(base.k0(), base.k1());
    let eg10 = ExtGroup::new(base.k1(), base.k0());
    let r01 = bigint_vec_from_json(field(obj, "kappa01")?, "kappa01")?;
    if r01.len() != eg01.num_slots() {
        return Err(JsonError::ResidueLength {
            slot: "kappa01",
            expected: eg01.num_slots(),
            got: r01.len(),
        });
    }
    let r10 = bigint_vec_from_json(field(obj, "kappa10")?, "kappa10")?;
    if r10.len() != eg10.num_slots() {
        return Err(JsonError::ResidueLength {
            slot: "kappa10",
            expected: eg10.num_slots(),
            got: r10.len(),
        });
    }
    Ok(EndoRingElement::new(
        base,
        phi0,
        phi1,
        eg01.class(r01),
        eg10.class(r10),
    )?)
}

pub fn colimit_to_json(c: &Colimit) -> Value {
    let mut obj = Map::new();
    match c {
        Colimit::FinitelyGenerated(g) => {
            obj.insert("finitely_generated".into(), Value::Bool(true));
            obj.insert("colimit".into(), group_to_json(g));
        }
        Colimit::Unbounded => {
            obj.insert("finitely_generated".into(), Value::Bool(false));
            obj.insert("colimit".into(), Value::String("unbounded".into()));
        }
    }
    Value::Object(obj)
}

pub fn verdict_to_json(v: &DualVerdict) -> Value {
    let mut obj = Map::new();
    match v {
        DualVerdict::Exists(d) => {
            obj.insert("exists".into(), Value::Bool(true));
            obj.insert("dual".into(), graded_to_json(d));
        }
        DualVerdict::NotExists { degree, mechanism } => {
            obj.insert("exists".into(), Value::Bool(false));
            obj.insert("degree".into(), Value::from(*degree));
            let name = match mechanism {
                NonExistenceMechanism::NotFinitelyGenerated => "not_finitely_generated",
                NonExistenceMechanism::TorsionFreeDivisible => "torsion_free_divisible",
            };
            obj.insert("mechanism".into(), Value::String(name.into()));
            obj.insert("reason".into(), Value::String(v.reason()));
        }
    }
    Value::Object(obj)
}

pub fn invert_outcome_to_json(o: &InvertOutcome) -> Value {
    let mut obj = Map::new();
    match o {
        InvertOutcome::Inverse(e) => {
            obj.insert("invertible".into(), Value::Bool(true));
            obj.insert("inverse".into(), element_to_json(e));
        }
        InvertOutcome::NotInvertible(ob) => {
            obj.insert("invertible".into(), Value::Bool(false));
            let (kind, degree, witness) = match ob {
                Obstruction::Cokernel { degree, witness } => ("cokernel", degree, witness),
                Obstruction::Kernel { degree, witness } => ("kernel", degree, witness),
            };
            let mut cert = Map::new();
            cert.insert("kind".into(), Value::String(kind.into()));
            cert.insert("degree".into(), Value::from(*degree));
            cert.insert("witness".into(), group_to_json(witness));
            obj.insert("obstruction".into(), Value::Object(cert));
        }
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_round_trip() {
        let g = FgAbGroup::new(2, vec![BigInt::from(3), BigInt::from(12)]);
        let v = group_to_json(&g);
        assert_eq!(group_from_json(&v).unwrap(), g);
    }

    #[test]
    fn huge_integers_survive() {
        let big = BigInt::from_str("123456789012345678901234567890123456789").unwrap();
        let g = FgAbGroup::new(0, vec![big.clone()]);
        let text = serde_json::to_string(&group_to_json(&g)).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(group_from_json(&back).unwrap().torsion()[0], big);
    }

    #[test]
    fn matrix_round_trip() {
        let m = IntMatrix::from_rows(&[vec![1, -2], vec![3, 4]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let empty = IntMatrix::zero(0, 2);
        assert_eq!(matrix_from_json(&matrix_to_json(&empty)).unwrap(), empty);
    }

    #[test]
    fn system_round_trip() {
        let g = FgAbGroup::free(1);
        let tail = GroupHom::new(g.clone(), g.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let s = DirectSystem::from_tail(tail).unwrap();
        let v = system_to_json(&s);
        assert_eq!(system_from_json(&v).unwrap(), s);
    }

    #[test]
    fn element_round_trip() {
        let base = GradedGroup::new(FgAbGroup::cyclic(5), FgAbGroup::cyclic(5));
        let e = EndoRingElement::identity(&base);
        let v = element_to_json(&e);
        assert_eq!(element_from_json(&v).unwrap(), e);
    }

    #[test]
    fn malformed_records_are_rejected() {
        assert!(group_from_json(&serde_json::json!({"rank": 1})).is_err());
        assert!(group_from_json(&serde_json::json!({"rank": 0, "torsion": [1]})).is_err());
        assert!(matrix_from_json(&serde_json::json!({"rows": 2, "cols": 2, "entries": [1]})).is_err());
    }
}

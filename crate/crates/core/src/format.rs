//! JSON encodings of algebras, affgebras, maps and cocycle data.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`); integers are accepted
//! on input as well. Fields are `"Q"` or `{"Fp": p}`. Structure constants
//! list only pairs `i < j`; the rest follows by antisymmetry. Decoding
//! errors name the offending JSON path, and syntax errors their line and
//! column.

use serde_json::{json, Map, Value};

use crate::affgebra::{AffgebraHom, AffineData, LieAffgebra};
use crate::cocycle::{AffineCocycleData, TwoCocycle};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::hull::HullResult;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Vector};

/// Parses JSON text, reporting syntax errors with their position.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("line {} column {}: {}", e.line(), e.column(), e)))
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

fn err(path: &str, message: impl std::fmt::Display) -> Error {
    Error::Format(format!("at {path}: {message}"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn member<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| err(path, format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

pub fn field_to_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_json(v: &Value, path: &str) -> Result<FieldSpec> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(obj) => {
            let p = member(obj, "Fp", path)?;
            let p = p
                .as_u64()
                .ok_or_else(|| err(&format!("{path}.Fp"), "expected an integer"))?;
            FieldSpec::prime(p).map_err(|e| err(path, e))
        }
        _ => Err(err(path, "expected \"Q\" or {\"Fp\": p}")),
    }
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn scalar_from_json(field: FieldSpec, v: &Value, path: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(err(path, "expected a scalar string or integer")),
    };
    field.parse_scalar(&text).map_err(|e| err(path, e))
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(field: FieldSpec, v: &Value, len: usize, path: &str) -> Result<Vector> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(err(
            path,
            format!("expected {len} entries, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(field, x, &format!("{path}[{i}]")))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_from_json(
    field: FieldSpec,
    v: &Value,
    rows: usize,
    cols: usize,
    path: &str,
) -> Result<Matrix> {
    let items = array(v, path)?;
    if items.len() != rows {
        return Err(err(
            path,
            format!("expected {rows} rows, found {}", items.len()),
        ));
    }
    let data = items
        .iter()
        .enumerate()
        .map(|(i, r)| vector_from_json(field, r, cols, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, data).map_err(|e| err(path, e))
}

pub fn lie_algebra_to_json(g: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = g
        .nonzero_brackets()
        .into_iter()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, v)| json!([i, j, vector_to_json(&v)]))
        .collect();
    let mut obj = Map::new();
    if let Some(name) = g.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("field".into(), field_to_json(g.field()));
    obj.insert("dim".into(), json!(g.dim()));
    obj.insert("brackets".into(), Value::Array(brackets));
    Value::Object(obj)
}

pub fn lie_algebra_from_json(v: &Value, path: &str) -> Result<LieAlgebra> {
    let obj = object(v, path)?;
    let field = field_from_json(member(obj, "field", path)?, &format!("{path}.field"))?;
    let dim = index(member(obj, "dim", path)?, &format!("{path}.dim"))?;
    let mut brackets = Vec::new();
    if let Some(list) = obj.get("brackets") {
        for (k, entry) in array(list, &format!("{path}.brackets"))?.iter().enumerate() {
            let here = format!("{path}.brackets[{k}]");
            let parts = array(entry, &here)?;
            if parts.len() != 3 {
                return Err(err(&here, "expected [i, j, [coefficients]]"));
            }
            let i = index(&parts[0], &format!("{here}[0]"))?;
            let j = index(&parts[1], &format!("{here}[1]"))?;
            if i >= j || j >= dim {
                return Err(err(
                    &here,
                    format!("need 0 <= i < j < {dim}, found ({i}, {j})"),
                ));
            }
            brackets.push((
                i,
                j,
                vector_from_json(field, &parts[2], dim, &format!("{here}[2]"))?,
            ));
        }
    }
    let g = LieAlgebra::from_brackets(field, dim, &brackets).map_err(|e| err(path, e))?;
    Ok(match obj.get("name") {
        Some(Value::String(name)) => g.with_name(name.clone()),
        Some(Value::Null) | None => g,
        Some(_) => return Err(err(&format!("{path}.name"), "expected a string")),
    })
}

pub fn affgebra_to_json(a: &LieAffgebra) -> Value {
    json!({
        "fibre": lie_algebra_to_json(a.fibre()),
        "kappa": matrix_to_json(a.kappa()),
        "lambda": matrix_to_json(a.lambda()),
        "s": vector_to_json(a.s()),
    })
}

/// Decodes affgebra data without checking the generalised derivation
/// condition, so that invalid data can be diagnosed.
pub fn affine_data_from_json(v: &Value, path: &str) -> Result<AffineData> {
    let obj = object(v, path)?;
    let fibre = lie_algebra_from_json(member(obj, "fibre", path)?, &format!("{path}.fibre"))?;
    let (field, n) = (fibre.field(), fibre.dim());
    let kappa = matrix_from_json(
        field,
        member(obj, "kappa", path)?,
        n,
        n,
        &format!("{path}.kappa"),
    )?;
    let lambda = matrix_from_json(
        field,
        member(obj, "lambda", path)?,
        n,
        n,
        &format!("{path}.lambda"),
    )?;
    let s = vector_from_json(field, member(obj, "s", path)?, n, &format!("{path}.s"))?;
    AffineData::new(fibre, kappa, lambda, s).map_err(|e| err(path, e))
}

/// Decodes and validates an affgebra; an invalid `(kappa, lambda)` is an error.
pub fn affgebra_from_json(v: &Value, path: &str) -> Result<LieAffgebra> {
    LieAffgebra::from_data(affine_data_from_json(v, path)?).map_err(|e| err(path, e))
}

pub fn hom_to_json(h: &AffgebraHom) -> Value {
    json!({ "psi": matrix_to_json(&h.psi), "q_prime": vector_to_json(&h.q_prime) })
}

/// Decodes `x -> psi x + q'` from an `n`-dimensional to an `m`-dimensional fibre.
pub fn hom_from_json(
    field: FieldSpec,
    n: usize,
    m: usize,
    v: &Value,
    path: &str,
) -> Result<AffgebraHom> {
    let obj = object(v, path)?;
    Ok(AffgebraHom {
        psi: matrix_from_json(
            field,
            member(obj, "psi", path)?,
            m,
            n,
            &format!("{path}.psi"),
        )?,
        q_prime: vector_from_json(
            field,
            member(obj, "q_prime", path)?,
            m,
            &format!("{path}.q_prime"),
        )?,
    })
}

pub fn cocycle_to_json(d: &AffineCocycleData) -> Value {
    json!({
        "pi": matrix_to_json(d.pi.matrix()),
        "rho": vector_to_json(&d.rho),
        "sigma": vector_to_json(&d.sigma),
        "tau": scalar_to_json(&d.tau),
    })
}

pub fn cocycle_from_json(
    field: FieldSpec,
    n: usize,
    v: &Value,
    path: &str,
) -> Result<AffineCocycleData> {
    let obj = object(v, path)?;
    let pi = matrix_from_json(field, member(obj, "pi", path)?, n, n, &format!("{path}.pi"))?;
    let pi = TwoCocycle::new(pi).map_err(|e| err(&format!("{path}.pi"), e))?;
    let rho = vector_from_json(field, member(obj, "rho", path)?, n, &format!("{path}.rho"))?;
    let sigma = vector_from_json(
        field,
        member(obj, "sigma", path)?,
        n,
        &format!("{path}.sigma"),
    )?;
    let tau = scalar_from_json(field, member(obj, "tau", path)?, &format!("{path}.tau"))?;
    AffineCocycleData::new(pi, rho, sigma, tau)
}

pub fn hull_to_json(h: &HullResult) -> Value {
    json!({
        "extended": lie_algebra_to_json(&h.extended),
        "ambient": affgebra_to_json(&h.ambient),
        "offset": vector_to_json(&h.offset),
    })
}

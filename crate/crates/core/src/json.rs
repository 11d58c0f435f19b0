//! JSON encodings for points, polytopes, polynomials and rational matrices.
//!
//! Integers are JSON numbers when `|x| < 2^53` and decimal strings
//! otherwise; rationals are always strings (`"3"`, `"-1/2"`). Object keys
//! are emitted in sorted order.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolytope};
use crate::linalg::Rational;
use crate::matrix::IntMatrix;
use crate::sospoly::SparsePolynomial;

const SAFE: i64 = 1 << 53;

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() < SAFE => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("expected an integer, found {n}"))),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| Error::Parse(format!("expected a rational \"p/q\", found {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(
            n.as_i64().expect("checked"),
        ))),
        other => Err(Error::Parse(format!(
            "expected a rational string, found {other}"
        ))),
    }
}

pub fn point_to_json(p: &LatticePoint) -> Value {
    Value::Array(p.coords().iter().map(int_to_json).collect())
}

pub fn point_from_json(v: &Value) -> Result<LatticePoint> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a coordinate array, found {v}")))?;
    Ok(LatticePoint::new(
        arr.iter().map(int_from_json).collect::<Result<_>>()?,
    ))
}

pub fn points_to_json(ps: &[LatticePoint]) -> Value {
    Value::Array(ps.iter().map(point_to_json).collect())
}

pub fn points_from_json(v: &Value) -> Result<Vec<LatticePoint>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected a point list, found {v}")))?
        .iter()
        .map(point_from_json)
        .collect()
}

/// `{"dim": n, "points": [...]}` with the given point list.
pub fn point_set_to_json(dim: usize, points: &[LatticePoint]) -> Value {
    json!({ "dim": dim, "points": points_to_json(points) })
}

/// Encodes `P` by its lattice points, which generate the same hull.
pub fn polytope_to_json(p: &LatticePolytope) -> Value {
    point_set_to_json(p.dim(), p.lattice_points())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("expected a JSON object, found {v}")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a non-negative integer")))
}

pub fn polytope_from_json(v: &Value) -> Result<LatticePolytope> {
    let obj = object(v)?;
    let dim = usize_field(obj, "dim")?;
    let points = points_from_json(field(obj, "points")?)?;
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    LatticePolytope::new(points)
}

pub fn polynomial_to_json(p: &SparsePolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| json!({ "exp": point_to_json(e), "coef": rational_to_json(c) }))
        .collect();
    json!({ "nvars": p.nvars(), "terms": terms })
}

pub fn polynomial_from_json(v: &Value) -> Result<SparsePolynomial> {
    let obj = object(v)?;
    let nvars = usize_field(obj, "nvars")?;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| Error::Parse("field \"terms\" must be an array".into()))?;
    let mut out = SparsePolynomial::zero(nvars);
    for t in terms {
        let t = object(t)?;
        out.add_term(
            point_from_json(field(t, "exp")?)?,
            rational_from_json(field(t, "coef")?)?,
        )?;
    }
    Ok(out)
}

pub fn rational_matrix_to_json(a: &[Vec<Rational>]) -> Value {
    Value::Array(
        a.iter()
            .map(|r| Value::Array(r.iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn rational_matrix_from_json(v: &Value) -> Result<Vec<Vec<Rational>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected a matrix".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a matrix row".into()))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect()
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
    )
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a matrix".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a matrix row".into()))?
                .iter()
                .map(int_from_json)
                .collect()
        })
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    IntMatrix::new(rows)
}

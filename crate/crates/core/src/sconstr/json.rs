use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::intlat::QMatrix;
use crate::simplex::{enumerate_simplices, Simplex};

use super::complex::{ChainMapQ, QComplex};
use super::diagram::PosetDiagram;
use super::SConstrError;

fn parse_err(msg: impl Into<String>) -> SConstrError {
    SConstrError::Parse(msg.into())
}

fn rational_from(v: &Value) -> Result<BigRational, SConstrError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(x.into()))
            .ok_or_else(|| parse_err(format!("non-integer number {n}; write rationals as strings"))),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p = BigInt::from_str(p.trim()).map_err(|_| parse_err(format!("bad rational {s}")))?;
                    let q = BigInt::from_str(q.trim()).map_err(|_| parse_err(format!("bad rational {s}")))?;
                    if q == BigInt::from(0) {
                        return Err(parse_err(format!("zero denominator in {s}")));
                    }
                    Ok(BigRational::new(p, q))
                }
                None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| parse_err(format!("bad rational {s}")))?)),
            }
        }
        other => Err(parse_err(format!("expected a rational, found {other}"))),
    }
}

fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<QMatrix, SConstrError> {
    let arr = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(parse_err(format!("matrix has {} rows, expected {rows}", arr.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().ok_or_else(|| parse_err("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(parse_err(format!("matrix row has {} entries, expected {cols}", row.len())));
        }
        for x in row {
            entries.push(rational_from(x)?);
        }
    }
    QMatrix::from_entries(rows, cols, entries).map_err(|e| parse_err(e.to_string()))
}

fn complex_to_json(c: &QComplex) -> Value {
    let Some((lo, hi)) = c.range() else { return json!({"lo": 0, "dims": [], "diffs": {}}) };
    let diffs: Map<String, Value> =
        (lo + 1..=hi).filter(|&k| !c.d(k).is_zero()).map(|k| (k.to_string(), matrix_to_json(&c.d(k)))).collect();
    json!({"lo": lo, "dims": (lo..=hi).map(|k| c.dim(k)).collect::<Vec<_>>(), "diffs": diffs})
}

fn complex_from_json(v: &Value) -> Result<QComplex, SConstrError> {
    let lo = v.get("lo").and_then(Value::as_i64).unwrap_or(0) as i32;
    let dims: Vec<usize> = v
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("complex needs a \"dims\" array"))?
        .iter()
        .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| parse_err("dims must be non-negative integers")))
        .collect::<Result<_, _>>()?;
    let dim = |k: i32| if k < lo || k - lo >= dims.len() as i32 { 0 } else { dims[(k - lo) as usize] };
    let mut diffs = BTreeMap::new();
    if let Some(obj) = v.get("diffs").and_then(Value::as_object) {
        for (k, m) in obj {
            let k: i32 = k.parse().map_err(|_| parse_err(format!("bad degree {k}")))?;
            diffs.insert(k, matrix_from_json(m, dim(k - 1), dim(k))?);
        }
    }
    let hi = lo + dims.len() as i32 - 1;
    QComplex::build(lo, hi, dim, |k| diffs.get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(dim(k - 1), dim(k))))
}

/// JSON form: `{m, n, elements, objects: {key: {lo, dims, diffs}}, arrows: {"a->b": {degree: matrix}}}`.
/// Zero objects and zero arrows are omitted; rationals are strings.
pub fn diagram_to_json(x: &PosetDiagram) -> Value {
    let mut objects = Map::new();
    for s in x.elements() {
        let o = x.object(s).expect("element");
        if !o.is_zero() {
            objects.insert(s.key(), complex_to_json(o));
        }
    }
    let mut arrows = Map::new();
    for (a, b, f) in x.cover_arrows() {
        if !f.is_zero() {
            let blocks: Map<String, Value> = f.blocks().iter().map(|(k, m)| (k.to_string(), matrix_to_json(m))).collect();
            arrows.insert(format!("{}->{}", a.key(), b.key()), Value::Object(blocks));
        }
    }
    let elements: Vec<String> = x.elements().iter().map(Simplex::key).collect();
    json!({"m": x.m(), "n": x.n(), "elements": elements, "objects": objects, "arrows": arrows})
}

/// Parses [`diagram_to_json`] output. Without an `elements` list the poset is `default(m, n)`,
/// or all of `Δ(m,n)` when no default is given.
pub fn diagram_from_json(v: &Value, default: Option<fn(usize, usize) -> Vec<Simplex>>) -> Result<PosetDiagram, SConstrError> {
    let get = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| parse_err(format!("missing \"{k}\"")));
    let (m, n) = (get("m")?, get("n")?);
    let key = |s: &str| Simplex::parse_key(s, n).map_err(|e| parse_err(format!("bad simplex key {s}: {e}")));
    let elements: Vec<Simplex> = match v.get("elements").and_then(Value::as_array) {
        Some(list) => list
            .iter()
            .map(|e| e.as_str().ok_or_else(|| parse_err("element keys must be strings")).and_then(key))
            .collect::<Result<_, _>>()?,
        None => default.map_or_else(|| enumerate_simplices(m, n), |f| f(m, n)),
    };
    let mut objects = BTreeMap::new();
    if let Some(obj) = v.get("objects").and_then(Value::as_object) {
        for (k, c) in obj {
            objects.insert(key(k)?, complex_from_json(c)?);
        }
    }
    let zero = QComplex::zero();
    let mut arrows = BTreeMap::new();
    if let Some(obj) = v.get("arrows").and_then(Value::as_object) {
        for (k, blocks) in obj {
            let (a, b) = k.split_once("->").ok_or_else(|| parse_err(format!("arrow key {k} must look like \"a->b\"")))?;
            let (a, b) = (key(a)?, key(b)?);
            let src = Arc::new(objects.get(&a).unwrap_or(&zero).clone());
            let tgt = Arc::new(objects.get(&b).unwrap_or(&zero).clone());
            let mut bl = BTreeMap::new();
            for (d, m) in blocks.as_object().ok_or_else(|| parse_err("arrow blocks must be an object"))? {
                let d: i32 = d.parse().map_err(|_| parse_err(format!("bad degree {d}")))?;
                bl.insert(d, matrix_from_json(m, tgt.dim(d), src.dim(d))?);
            }
            arrows.insert((a, b), ChainMapQ::new(src, tgt, bl)?);
        }
    }
    PosetDiagram::new(m, n, elements, objects, arrows)
}

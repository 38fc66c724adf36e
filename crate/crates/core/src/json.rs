//! JSON documents for polynomials, matrices, families and the reduced
//! family. Term lists are emitted in canonical map order and rationals as
//! "p/q" strings, so serialization is deterministic and round-trips
//! bit-exactly.
//!
//! Term format: {"coeff": "p/q", "factors": [[kind, i, j, exp], ...],
//! "spectral": {"u": a, "lambda"|"D": b, "eps": c}} with kind "x" for
//! coordinate variables, "F"/"E" for mixed-basis generators. A nonzero
//! second classical parameter is carried under "mu" (internal use only).

use serde_json::{json, Map, Value};

use crate::aks::{Character, ReducedFamily};
use crate::comm::{CommPoly, CommTerm};
use crate::error::{Error, Result};
use crate::family::GradedFamily;
use crate::gens::{GenKind, MixedGen};
use crate::matrix::SquareMatrix;
use crate::pbw::{PbwMonomial, UeaElement};
use crate::quantum::{QuantumPoly, QuantumTerm};
use crate::rational::{parse_rational, rational_str};

fn get_u32(m: &Map<String, Value>, key: &str) -> Result<u32> {
    match m.get(key) {
        None => Ok(0),
        Some(v) => v
            .as_u64()
            .map(|x| x as u32)
            .ok_or_else(|| Error::Parse(format!("field {key} is not an integer"))),
    }
}

fn spectral_obj(u: u32, second: (&str, u32), eps: u32, mu: u32) -> Value {
    let mut m = Map::new();
    m.insert("u".into(), json!(u));
    m.insert(second.0.into(), json!(second.1));
    m.insert("eps".into(), json!(eps));
    if mu != 0 {
        m.insert("mu".into(), json!(mu));
    }
    Value::Object(m)
}

pub fn comm_poly_to_json(p: &CommPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(t, c)| {
            let factors: Vec<Value> =
                t.xs.iter()
                    .map(|&((i, j), e)| json!(["x", i, j, e]))
                    .collect();
            json!({
                "coeff": rational_str(c),
                "factors": factors,
                "spectral": spectral_obj(t.u, ("lambda", t.lambda), t.eps, t.mu),
            })
        })
        .collect();
    json!({"ring": "classical", "n": p.rank(), "terms": terms})
}

pub fn comm_poly_from_json(v: &Value) -> Result<CommPoly> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("polynomial document must be an object".into()))?;
    if obj.get("ring").and_then(Value::as_str) != Some("classical") {
        return Err(Error::Parse("expected ring \"classical\"".into()));
    }
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing rank".into()))? as usize;
    let mut p = CommPoly::zero(n);
    for term in obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing terms".into()))?
    {
        let t = term
            .as_object()
            .ok_or_else(|| Error::Parse("term must be an object".into()))?;
        let coeff = parse_rational(
            t.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing coeff".into()))?,
        )?;
        let mut xs: Vec<((u8, u8), u32)> = Vec::new();
        for f in t
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing factors".into()))?
        {
            let arr = f
                .as_array()
                .ok_or_else(|| Error::Parse("factor must be an array".into()))?;
            if arr.len() != 4 || arr[0].as_str() != Some("x") {
                return Err(Error::Parse(
                    "classical factor must be [\"x\", i, j, e]".into(),
                ));
            }
            let i = arr[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad index".into()))? as u8;
            let j = arr[2]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad index".into()))? as u8;
            let e = arr[3]
                .as_u64()
                .ok_or_else(|| Error::Parse("bad exponent".into()))? as u32;
            xs.push(((i, j), e));
        }
        xs.sort();
        let spectral = t
            .get("spectral")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing spectral exponents".into()))?;
        p.add_term(
            CommTerm {
                xs,
                u: get_u32(spectral, "u")?,
                lambda: get_u32(spectral, "lambda")?,
                mu: get_u32(spectral, "mu")?,
                eps: get_u32(spectral, "eps")?,
            },
            coeff,
        );
    }
    Ok(p)
}

fn mono_to_factors(m: &PbwMonomial) -> Vec<Value> {
    m.factors()
        .iter()
        .map(|&(g, e)| {
            let kind = match g.kind {
                GenKind::F => "F",
                GenKind::E => "E",
            };
            json!([kind, g.i, g.j, e])
        })
        .collect()
}

fn factors_to_mono(v: &Value) -> Result<PbwMonomial> {
    let mut factors: Vec<(MixedGen, u32)> = Vec::new();
    for f in v
        .as_array()
        .ok_or_else(|| Error::Parse("factors must be an array".into()))?
    {
        let arr = f
            .as_array()
            .ok_or_else(|| Error::Parse("factor must be an array".into()))?;
        if arr.len() != 4 {
            return Err(Error::Parse("factor must be [kind, i, j, e]".into()));
        }
        let i = arr[1]
            .as_u64()
            .ok_or_else(|| Error::Parse("bad index".into()))? as u8;
        let j = arr[2]
            .as_u64()
            .ok_or_else(|| Error::Parse("bad index".into()))? as u8;
        let e = arr[3]
            .as_u64()
            .ok_or_else(|| Error::Parse("bad exponent".into()))? as u32;
        let g = match arr[0].as_str() {
            Some("F") => MixedGen::f(i, j),
            Some("E") => MixedGen::e(i, j),
            _ => return Err(Error::Parse("generator kind must be F or E".into())),
        };
        factors.push((g, e));
    }
    if !factors.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(Error::Parse("generator factors out of order".into()));
    }
    Ok(PbwMonomial::from_factors(factors))
}

pub fn quantum_poly_to_json(p: &QuantumPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(t, c)| {
            json!({
                "coeff": rational_str(c),
                "factors": mono_to_factors(&t.mono),
                "spectral": spectral_obj(t.u, ("D", t.d), t.eps, 0),
            })
        })
        .collect();
    json!({"ring": "quantum", "n": p.rank(), "terms": terms})
}

pub fn quantum_poly_from_json(v: &Value) -> Result<QuantumPoly> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("polynomial document must be an object".into()))?;
    if obj.get("ring").and_then(Value::as_str) != Some("quantum") {
        return Err(Error::Parse("expected ring \"quantum\"".into()));
    }
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing rank".into()))? as usize;
    let mut p = QuantumPoly::zero(n);
    for term in obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing terms".into()))?
    {
        let t = term
            .as_object()
            .ok_or_else(|| Error::Parse("term must be an object".into()))?;
        let coeff = parse_rational(
            t.get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing coeff".into()))?,
        )?;
        let mono = factors_to_mono(
            t.get("factors")
                .ok_or_else(|| Error::Parse("missing factors".into()))?,
        )?;
        let spectral = t
            .get("spectral")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing spectral exponents".into()))?;
        p.add_term(
            QuantumTerm {
                mono,
                u: get_u32(spectral, "u")?,
                d: get_u32(spectral, "D")?,
                eps: get_u32(spectral, "eps")?,
            },
            coeff,
        );
    }
    Ok(p)
}

/// Pure enveloping-algebra elements reuse the quantum term format with
/// zero spectral exponents.
pub fn uea_to_json(e: &UeaElement) -> Value {
    quantum_poly_to_json(&QuantumPoly::from_uea(e))
}

pub fn uea_from_json(v: &Value) -> Result<UeaElement> {
    quantum_poly_from_json(v)?.to_uea()
}

pub fn classical_matrix_to_json(m: &SquareMatrix<CommPoly>) -> Value {
    let rows: Vec<Value> = (0..m.size())
        .map(|r| {
            let cols: Vec<Value> = (0..m.size())
                .map(|c| comm_poly_to_json(m.get(r, c)))
                .collect();
            Value::Array(cols)
        })
        .collect();
    json!({"size": m.size(), "entries": rows})
}

pub fn quantum_matrix_to_json(m: &SquareMatrix<QuantumPoly>) -> Value {
    let rows: Vec<Value> = (0..m.size())
        .map(|r| {
            let cols: Vec<Value> = (0..m.size())
                .map(|c| quantum_poly_to_json(m.get(r, c)))
                .collect();
            Value::Array(cols)
        })
        .collect();
    json!({"size": m.size(), "entries": rows})
}

pub fn classical_family_to_json(f: &GradedFamily<CommPoly>) -> Value {
    family_to_json(f, "classical", |e| comm_poly_to_json(e)["terms"].clone())
}

pub fn quantum_family_to_json(f: &GradedFamily<UeaElement>) -> Value {
    family_to_json(f, "quantum", |e| uea_to_json(e)["terms"].clone())
}

fn family_to_json<T>(f: &GradedFamily<T>, mode: &str, term_fn: impl Fn(&T) -> Value) -> Value {
    let mut entries = Map::new();
    for ((k, i), e) in &f.entries {
        entries.insert(format!("{k},{i}"), term_fn(e));
    }
    let mut denom = Map::new();
    for (k, i) in &f.denominator_index {
        denom.insert(k.to_string(), json!(i));
    }
    json!({
        "mode": mode,
        "n": f.n,
        "entries": entries,
        "denominator_index": denom,
    })
}

pub fn character_to_json(c: &Character) -> Value {
    let mut values = Map::new();
    for (g, v) in &c.values {
        values.insert(format!("{},{}", g.i, g.j), json!(rational_str(v)));
    }
    Value::Object(values)
}

pub fn reduced_family_to_json(r: &ReducedFamily) -> Value {
    let mut numerators = Map::new();
    for ((k, i), e) in &r.numerators {
        numerators.insert(format!("{k},{i}"), uea_to_json(e)["terms"].clone());
    }
    let mut denominators = Map::new();
    for (k, e) in &r.denominators {
        denominators.insert(k.to_string(), uea_to_json(e)["terms"].clone());
    }
    let mut characters = Map::new();
    for (k, c) in &r.characters {
        characters.insert(k.to_string(), character_to_json(c));
    }
    json!({
        "n": r.n,
        "numerators": numerators,
        "denominators": denominators,
        "characters": characters,
    })
}

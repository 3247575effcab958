//! JSON formats for instances, verdicts, polynomials, gadgets and search results.
//!
//! Rationals are written as text (`"3"`, `"-1/2"`); matrices as row-major
//! nested arrays.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{IntMat, MatrixError, Rational, UTMat2};
use crate::decider::{Branch, DecideError, Instance, Verdict, Witness};
use crate::encoder::{EncodeError, Gadget, Lemma7Collision, Polynomial};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}: lower-left entry must be 0")]
    NotUpperTriangular(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

type Mat2Json = [[Rational; 2]; 2];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    t: usize,
    x: Mat2Json,
    z: Vec<Mat2Json>,
}

fn to_utmat(name: &str, m: &Mat2Json) -> Result<UTMat2, IoError> {
    if !m[1][0].is_zero() {
        return Err(IoError::NotUpperTriangular(name.to_string()));
    }
    Ok(UTMat2::new(m[0][0].clone(), m[0][1].clone(), m[1][1].clone()))
}

fn from_utmat(m: &UTMat2) -> Mat2Json {
    m.rows()
}

/// The raw contents of an instance file, before the nonsingularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInstance {
    pub t: usize,
    pub x: UTMat2,
    pub z: Vec<UTMat2>,
}

impl RawInstance {
    pub fn into_instance(self) -> Result<Instance, DecideError> {
        Instance::new(self.t, self.x, self.z)
    }
}

pub fn parse_raw_instance(text: &str) -> Result<RawInstance, IoError> {
    let json: InstanceJson = serde_json::from_str(text)?;
    if json.z.len() != json.t + 1 {
        return Err(IoError::Invalid(format!(
            "t = {} needs {} z matrices, found {}",
            json.t,
            json.t + 1,
            json.z.len()
        )));
    }
    let x = to_utmat("x", &json.x)?;
    let z = json
        .z
        .iter()
        .enumerate()
        .map(|(i, m)| to_utmat(&format!("z{}", i + 1), m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawInstance { t: json.t, x, z })
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    Ok(parse_raw_instance(text)?.into_instance()?)
}

pub fn instance_to_json(inst: &Instance) -> String {
    let json = InstanceJson {
        t: inst.t(),
        x: from_utmat(inst.x()),
        z: inst.z().iter().map(from_utmat).collect(),
    };
    serde_json::to_string_pretty(&json).expect("instances serialize")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictJson {
    injective: bool,
    branch: Branch,
    witness: Option<Witness>,
}

pub fn verdict_to_json(v: &Verdict) -> String {
    let json = VerdictJson {
        injective: v.injective,
        branch: v.branch,
        witness: v.witness.clone(),
    };
    serde_json::to_string_pretty(&json).expect("verdicts serialize")
}

pub fn parse_verdict(text: &str) -> Result<Verdict, IoError> {
    let json: VerdictJson = serde_json::from_str(text)?;
    Ok(Verdict {
        injective: json.injective,
        branch: json.branch,
        witness: json.witness,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    coeff: Rational,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    arity: usize,
    terms: Vec<TermJson>,
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, IoError> {
    let json: PolynomialJson = serde_json::from_str(text)?;
    Ok(Polynomial::from_terms(
        json.arity,
        json.terms.into_iter().map(|t| (t.exps, t.coeff)),
    )?)
}

pub fn polynomial_to_json(p: &Polynomial) -> String {
    let json = PolynomialJson {
        arity: p.arity(),
        terms: p
            .terms()
            .map(|(e, c)| TermJson {
                coeff: c.clone(),
                exps: e.to_vec(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&json).expect("polynomials serialize")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GadgetJson {
    t: usize,
    k: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<Value>>,
    #[serde(rename = "M")]
    m: Vec<Vec<Value>>,
    #[serde(rename = "N")]
    n: Vec<Vec<Value>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Value>>,
}

/// Writes a matrix densely, one row at a time.
struct DenseRows<'a>(&'a IntMat);

struct DenseRow<'a>(&'a IntMat, usize);

impl Serialize for DenseRows<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq((0..self.0.dim()).map(|i| DenseRow(self.0, i)))
    }
}

impl Serialize for DenseRow<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let DenseRow(m, i) = *self;
        s.collect_seq((0..m.dim()).map(|j| int_value(&m.get(i, j))))
    }
}

#[derive(Serialize)]
struct GadgetOut<'a> {
    t: usize,
    k: usize,
    #[serde(rename = "A")]
    a: DenseRows<'a>,
    #[serde(rename = "M")]
    m: DenseRows<'a>,
    #[serde(rename = "N")]
    n: DenseRows<'a>,
    #[serde(rename = "B")]
    b: DenseRows<'a>,
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => Value::from(small),
        None => Value::from(v.to_string()),
    }
}

fn value_int(v: &Value) -> Result<BigInt, IoError> {
    let bad = || IoError::Invalid(format!("matrix entry {v} is not an integer"));
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
        Value::String(s) => s.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn sparse(rows: &[Vec<Value>]) -> Result<IntMat, IoError> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(value_int).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMat::from_rows(&rows)?)
}

/// Streams the gadget as JSON; dense matrices get large quickly.
pub fn write_gadget<W: std::io::Write>(g: &Gadget, writer: W) -> Result<(), IoError> {
    let out = GadgetOut {
        t: g.t,
        k: g.k(),
        a: DenseRows(&g.a),
        m: DenseRows(&g.m),
        n: DenseRows(&g.n),
        b: DenseRows(&g.b),
    };
    serde_json::to_writer(writer, &out)?;
    Ok(())
}

pub fn gadget_to_json(g: &Gadget) -> String {
    let mut buf = Vec::new();
    write_gadget(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn parse_gadget(text: &str) -> Result<Gadget, IoError> {
    let json: GadgetJson = serde_json::from_str(text)?;
    let g = Gadget::new(json.t, sparse(&json.a)?, sparse(&json.m)?, sparse(&json.n)?, sparse(&json.b)?)?;
    if g.k() != json.k {
        return Err(IoError::Invalid(format!("k = {} but matrices have dimension {}", json.k, g.k())));
    }
    Ok(g)
}

/// Output of the Q-collision search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma7Report {
    pub a: u32,
    pub bound: u32,
    pub e: String,
    pub found: bool,
    pub collision: Option<Lemma7Collision>,
}

//! JSON documents carrying a presentation.
//!
//! ```json
//! {
//!   "presentation": {
//!     "c_dh": {"pi": "2"},
//!     "derham": [{}],
//!     "fibration": [0],
//!     "genus": 1,
//!     "isotropy": [],
//!     "monodromy": {"kind": "torus-linear", "matrix": [[1, 1], [0, 1]]},
//!     "tau": {"pi^-1": "1/2"}
//!   },
//!   "schema_version": "1"
//! }
//! ```
//!
//! Symbolic values are maps from monomials to rationals written `"p/q"`.
//! Integers are JSON numbers when they fit in `i64` and decimal strings
//! otherwise. Keys are emitted in sorted order, so output is byte-stable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactalg::{IntMatrix, Monomial, Rational, SymbolicReal};
use crate::monodromy::MappingClassRep;
use crate::orbits::{DeRhamClass, FibrationClass};
use crate::seifert::{CoprimeResidueClass, IsotropyData, SeifertInvariant};
use crate::spaces::{ModelWitness, SpacePresentation};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field {path}: {message}")]
    Field { path: String, message: String },
    #[error("unsupported schema_version {0:?} (supported: \"1\")")]
    UnsupportedVersion(String),
}

fn field(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub presentation: SpacePresentation,
    pub witness: Option<ModelWitness>,
}

impl PresentationDocument {
    pub fn new(presentation: SpacePresentation) -> Self {
        PresentationDocument {
            presentation,
            witness: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("schema_version".into(), json!(SCHEMA_VERSION));
        top.insert("presentation".into(), presentation_to_value(&self.presentation));
        if let Some(w) = &self.witness {
            top.insert("witness".into(), witness_to_value(w));
        }
        Value::Object(top)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(v: &Value) -> Result<Self, DocumentError> {
        let top = object(v, "$")?;
        let version = top
            .get("schema_version")
            .ok_or_else(|| field("schema_version", "missing"))?;
        let version = version
            .as_str()
            .ok_or_else(|| field("schema_version", "expected a string"))?;
        if version != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedVersion(version.to_string()));
        }
        reject_unknown(top, "$", &["schema_version", "presentation", "witness"])?;
        let presentation = presentation_from_value(
            top.get("presentation").ok_or_else(|| field("presentation", "missing"))?,
        )?;
        let witness = top.get("witness").map(witness_from_value).transpose()?;
        Ok(PresentationDocument {
            presentation,
            witness,
        })
    }
}

pub fn bigint_to_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

pub fn symbolic_to_value(x: &SymbolicReal) -> Value {
    let map: Map<String, Value> = x
        .terms()
        .map(|(m, q)| (m.to_string(), json!(q.to_string())))
        .collect();
    Value::Object(map)
}

fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

fn isotropy_to_value(d: &IsotropyData) -> Value {
    Value::Array(d.classes().iter().map(|c| json!([c.n, c.a])).collect())
}

pub fn monodromy_to_value(rep: &MappingClassRep) -> Value {
    match rep {
        MappingClassRep::IdentityClass => json!({"kind": "identity"}),
        MappingClassRep::TorusLinear(m) => json!({"kind": "torus-linear", "matrix": matrix_to_value(m)}),
        MappingClassRep::HomologyPermutation { perm, h1 } => json!({
            "kind": "homology-permutation",
            "perm": perm,
            "h1": matrix_to_value(h1),
        }),
    }
}

pub fn presentation_to_value(p: &SpacePresentation) -> Value {
    json!({
        "tau": symbolic_to_value(&p.tau),
        "c_dh": symbolic_to_value(&p.c_dh),
        "genus": p.genus,
        "isotropy": isotropy_to_value(&p.isotropy),
        "monodromy": monodromy_to_value(&p.monodromy),
        "fibration": p.fibration.coords.iter().map(bigint_to_value).collect::<Vec<_>>(),
        "derham": p.derham.coords.iter().map(symbolic_to_value).collect::<Vec<_>>(),
    })
}

fn witness_to_value(w: &ModelWitness) -> Value {
    json!({
        "level_set": {
            "genus": w.level_set.genus,
            "b": bigint_to_value(&w.level_set.b),
            "exceptional": isotropy_to_value(&w.level_set.exceptional),
        },
        "gluing": w.gluing,
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, DocumentError> {
    v.as_object().ok_or_else(|| field(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, DocumentError> {
    m.get(key).ok_or_else(|| field(&format!("{path}.{key}"), "missing"))
}

fn reject_unknown(m: &Map<String, Value>, path: &str, known: &[&str]) -> Result<(), DocumentError> {
    match m.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(field(&format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

pub fn bigint_from_value(v: &Value, path: &str) -> Result<BigInt, DocumentError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| field(path, "expected an integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| field(path, format!("{s:?} is not an integer"))),
        _ => Err(field(path, "expected an integer")),
    }
}

fn small_int(v: &Value, path: &str) -> Result<i64, DocumentError> {
    bigint_from_value(v, path)?
        .to_i64()
        .ok_or_else(|| field(path, "integer out of range"))
}

pub fn symbolic_from_value(v: &Value, path: &str) -> Result<SymbolicReal, DocumentError> {
    let m = object(v, path)?;
    let mut terms = Vec::with_capacity(m.len());
    for (key, coeff) in m {
        let here = format!("{path}[{key:?}]");
        let monomial: Monomial = key.parse().map_err(|e| field(&here, format!("{e}")))?;
        let q: Rational = match coeff {
            Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| field(&here, format!("{s:?} is not a rational p/q")))?,
            Value::Number(_) => Rational::from_integer(bigint_from_value(coeff, &here)?),
            _ => return Err(field(&here, "expected a rational \"p/q\"")),
        };
        terms.push((monomial, q));
    }
    Ok(SymbolicReal::from_terms(terms))
}

fn matrix_from_value(v: &Value, path: &str) -> Result<IntMatrix, DocumentError> {
    let rows = array(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let entries = array(r, &rp)?
            .iter()
            .enumerate()
            .map(|(j, x)| bigint_from_value(x, &format!("{rp}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(entries);
    }
    if out.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    IntMatrix::from_big_rows(out).map_err(|e| field(path, e.to_string()))
}

fn isotropy_from_value(v: &Value, path: &str) -> Result<IsotropyData, DocumentError> {
    let mut classes = Vec::new();
    for (i, pair) in array(v, path)?.iter().enumerate() {
        let here = format!("{path}[{i}]");
        let xs = array(pair, &here)?;
        if xs.len() != 2 {
            return Err(field(&here, "expected a pair [n, a]"));
        }
        classes.push(CoprimeResidueClass {
            n: small_int(&xs[0], &format!("{here}[0]"))?,
            a: small_int(&xs[1], &format!("{here}[1]"))?,
        });
    }
    // Range and coprimality are checked by validation, not parsing.
    Ok(IsotropyData::new(classes))
}

pub fn monodromy_from_value(v: &Value, path: &str) -> Result<MappingClassRep, DocumentError> {
    let m = object(v, path)?;
    let kind = get(m, "kind", path)?
        .as_str()
        .ok_or_else(|| field(&format!("{path}.kind"), "expected a string"))?;
    match kind {
        "identity" => {
            reject_unknown(m, path, &["kind"])?;
            Ok(MappingClassRep::IdentityClass)
        }
        "torus-linear" => {
            reject_unknown(m, path, &["kind", "matrix"])?;
            let mp = format!("{path}.matrix");
            Ok(MappingClassRep::TorusLinear(matrix_from_value(get(m, "matrix", path)?, &mp)?))
        }
        "homology-permutation" => {
            reject_unknown(m, path, &["kind", "perm", "h1"])?;
            let pp = format!("{path}.perm");
            let perm = array(get(m, "perm", path)?, &pp)?
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| field(&format!("{pp}[{i}]"), "expected a nonnegative integer"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let h1 = matrix_from_value(get(m, "h1", path)?, &format!("{path}.h1"))?;
            Ok(MappingClassRep::HomologyPermutation { perm, h1 })
        }
        other => Err(field(
            &format!("{path}.kind"),
            format!("unknown kind {other:?} (expected identity, torus-linear, homology-permutation)"),
        )),
    }
}

pub fn presentation_from_value(v: &Value) -> Result<SpacePresentation, DocumentError> {
    let path = "presentation";
    let m = object(v, path)?;
    reject_unknown(
        m,
        path,
        &["tau", "c_dh", "genus", "isotropy", "monodromy", "fibration", "derham"],
    )?;
    let genus = get(m, "genus", path)?
        .as_u64()
        .and_then(|g| u32::try_from(g).ok())
        .ok_or_else(|| field("presentation.genus", "expected a nonnegative integer"))?;
    let fibration = array(get(m, "fibration", path)?, "presentation.fibration")?
        .iter()
        .enumerate()
        .map(|(i, x)| bigint_from_value(x, &format!("presentation.fibration[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let derham = array(get(m, "derham", path)?, "presentation.derham")?
        .iter()
        .enumerate()
        .map(|(i, x)| symbolic_from_value(x, &format!("presentation.derham[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpacePresentation {
        tau: symbolic_from_value(get(m, "tau", path)?, "presentation.tau")?,
        c_dh: symbolic_from_value(get(m, "c_dh", path)?, "presentation.c_dh")?,
        genus,
        isotropy: isotropy_from_value(get(m, "isotropy", path)?, "presentation.isotropy")?,
        monodromy: monodromy_from_value(get(m, "monodromy", path)?, "presentation.monodromy")?,
        fibration: FibrationClass::new(fibration),
        derham: DeRhamClass::new(derham),
    })
}

fn witness_from_value(v: &Value) -> Result<ModelWitness, DocumentError> {
    let path = "witness";
    let m = object(v, path)?;
    reject_unknown(m, path, &["level_set", "gluing"])?;
    let ls = object(get(m, "level_set", path)?, "witness.level_set")?;
    reject_unknown(ls, "witness.level_set", &["genus", "b", "exceptional"])?;
    let genus = get(ls, "genus", "witness.level_set")?
        .as_u64()
        .and_then(|g| u32::try_from(g).ok())
        .ok_or_else(|| field("witness.level_set.genus", "expected a nonnegative integer"))?;
    let level_set = SeifertInvariant {
        genus,
        b: bigint_from_value(get(ls, "b", "witness.level_set")?, "witness.level_set.b")?,
        exceptional: isotropy_from_value(
            get(ls, "exceptional", "witness.level_set")?,
            "witness.level_set.exceptional",
        )?,
    };
    let gluing = get(m, "gluing", path)?
        .as_str()
        .ok_or_else(|| field("witness.gluing", "expected a string"))?
        .to_string();
    Ok(ModelWitness { level_set, gluing })
}

/// Parses `key=value` pairs into a sorted map.
pub fn parse_params<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("parameter {k} given twice"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{kodaira_thurston, t4_family, torus_times_sphere, DiagonalParams};
    use crate::spaces::model_witness;

    #[test]
    fn kodaira_document_shape() {
        let doc = PresentationDocument::new(kodaira_thurston());
        let v = doc.to_value();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["presentation"]["tau"], json!({"pi^-1": "1/2"}));
        assert_eq!(v["presentation"]["c_dh"], json!({"pi": "2"}));
        assert_eq!(v["presentation"]["monodromy"]["matrix"], json!([[1, 1], [0, 1]]));
        assert_eq!(v["presentation"]["fibration"], json!([0]));
        assert_eq!(v["presentation"]["derham"], json!([{}]));
    }

    #[test]
    fn round_trips() {
        let mut big = t4_family("A + 1/3*pi^2".parse().unwrap(), "-2*B".parse().unwrap());
        big.fibration = FibrationClass::new(vec![BigInt::from(10).pow(30), BigInt::from(-3)]);
        let sphere = torus_times_sphere(&DiagonalParams::new(
            "2*pi".parse().unwrap(),
            "4*pi".parse().unwrap(),
            5,
            2,
        ))
        .unwrap();
        let mut with_witness = PresentationDocument::new(sphere.clone());
        with_witness.witness = Some(model_witness(&sphere));
        let perm = SpacePresentation {
            monodromy: MappingClassRep::HomologyPermutation {
                perm: vec![1, 0],
                h1: IntMatrix::zeros(0, 0),
            },
            ..torus_times_sphere(&DiagonalParams::new("1".parse().unwrap(), "1".parse().unwrap(), 3, 1)).unwrap()
        };
        for doc in [PresentationDocument::new(big), with_witness, PresentationDocument::new(perm)] {
            let text = doc.to_json();
            let back = PresentationDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn big_integers_are_strings() {
        let mut p = kodaira_thurston();
        p.fibration = FibrationClass::new(vec![BigInt::from(i64::MAX) + 1]);
        let v = PresentationDocument::new(p).to_value();
        assert_eq!(v["presentation"]["fibration"][0], json!("9223372036854775808"));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = PresentationDocument::parse("{\"schema_version\": \"1\",").unwrap_err();
        assert!(matches!(err, DocumentError::Json { line: 1, .. }));

        let err = PresentationDocument::parse(r#"{"schema_version": "2", "presentation": {}}"#).unwrap_err();
        assert!(matches!(err, DocumentError::UnsupportedVersion(_)));

        let mut v = PresentationDocument::new(kodaira_thurston()).to_value();
        v["presentation"]["tau"] = json!({"pi^-1": "one half"});
        let err = PresentationDocument::from_value(&v).unwrap_err();
        assert!(err.to_string().contains("presentation.tau"), "{err}");

        let mut v = PresentationDocument::new(kodaira_thurston()).to_value();
        v["presentation"]["monodromy"] = json!({"kind": "dehn-twist"});
        let err = PresentationDocument::from_value(&v).unwrap_err();
        assert!(err.to_string().contains("presentation.monodromy.kind"), "{err}");

        let mut v = PresentationDocument::new(kodaira_thurston()).to_value();
        v["presentation"]["extra"] = json!(1);
        assert!(PresentationDocument::from_value(&v).is_err());
    }

    #[test]
    fn lenient_input_canonical_output() {
        let text = r#"{"schema_version":"1","presentation":{"tau":{"1":1,"pi":"0"},"c_dh":{"1":"2/4"},
            "genus":0,"isotropy":[[3,2],[3,1]],"monodromy":{"kind":"identity"},"fibration":[],"derham":[]}}"#;
        let doc = PresentationDocument::parse(text).unwrap();
        let v = doc.to_value();
        assert_eq!(v["presentation"]["tau"], json!({"1": "1"}));
        assert_eq!(v["presentation"]["c_dh"], json!({"1": "1/2"}));
        assert_eq!(v["presentation"]["isotropy"], json!([[3, 1], [3, 2]]));
    }

    #[test]
    fn params() {
        let p = parse_params(["k=5", "l = 2"]).unwrap();
        assert_eq!(p["k"], "5");
        assert_eq!(p["l"], "2");
        assert!(parse_params(["k"]).is_err());
        assert!(parse_params(["k=1", "k=2"]).is_err());
    }
}

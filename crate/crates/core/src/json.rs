//! JSON interchange formats.
//!
//! Every `*_to_json` has a matching `*_from_json` that restores an equal value.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arcs::{ArcDiagram, LabeledArc};
use crate::cyclotomic::{parse_rational, CycNumber};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::{Basis, ScfVector, TensorElement};
use crate::pattern::{GroupElement, PatternGroup};
use crate::poset::Poset;
use crate::supercharacters::{Check, SupercharacterTable, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub p: u32,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcJson {
    pub from: String,
    pub to: String,
    /// A string or integer code for prime fields; a coefficient list (constant first) otherwise.
    pub label: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default)]
    pub arcs: Vec<ArcJson>,
}

// ----- fields -----

pub fn field_to_json(f: &Field) -> FieldJson {
    FieldJson {
        p: f.p() as u64,
        e: f.e(),
        modulus: (f.e() > 1).then(|| f.modulus().iter().map(|&c| c as u64).collect()),
    }
}

pub fn field_from_json(j: &FieldJson) -> Result<Field> {
    Field::new(j.p, j.e, j.modulus.as_deref())
}

// ----- cyclotomic numbers -----

pub fn cyc_to_json(c: &CycNumber) -> CycJson {
    CycJson {
        p: c.p(),
        coords: c.coord_strings(),
    }
}

pub fn cyc_from_json(j: &CycJson) -> Result<CycNumber> {
    let coords = j
        .coords
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    CycNumber::from_coords(j.p, coords)
}

// ----- posets -----

pub fn poset_to_json(p: &Poset) -> PosetJson {
    PosetJson {
        elements: p.labels().to_vec(),
        covers: p.cover_labels(),
    }
}

pub fn poset_from_json(j: &PosetJson) -> Result<Poset> {
    let covers: Vec<(&str, &str)> = j
        .covers
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Poset::from_covers(&j.elements, &covers)
}

// ----- field elements as labels -----

pub fn label_to_json(f: &Field, code: u32) -> Value {
    if f.e() == 1 {
        Value::String(code.to_string())
    } else {
        json!(f.coeffs(code))
    }
}

pub fn label_from_json(f: &Field, v: &Value) -> Result<u32> {
    let bad = || Error::InvalidElement(v.to_string());
    let code = match v {
        Value::String(s) => {
            let c: u64 = s.trim().parse().map_err(|_| bad())?;
            if f.e() > 1 && c >= f.p() as u64 {
                return Err(bad());
            }
            c
        }
        Value::Number(n) => n.as_u64().ok_or_else(bad)?,
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|x| x.as_i64().ok_or_else(bad))
                .collect::<Result<Vec<i64>>>()?;
            if coeffs.len() > f.e() as usize || coeffs.iter().any(|&c| c < 0 || c >= f.p() as i64) {
                return Err(bad());
            }
            f.from_coeffs(&coeffs).code() as u64
        }
        _ => return Err(bad()),
    };
    if code >= f.q() as u64 {
        return Err(bad());
    }
    Ok(code as u32)
}

// ----- diagrams -----

pub fn diagram_to_json(d: &ArcDiagram) -> DiagramJson {
    DiagramJson {
        poset: Some(poset_to_json(d.poset())),
        field: Some(field_to_json(d.field())),
        arcs: d
            .label_triples()
            .into_iter()
            .map(|(a, b, c)| ArcJson {
                from: a,
                to: b,
                label: label_to_json(d.field(), c),
            })
            .collect(),
    }
}

/// Arcs only, without poset or field.
pub fn arcs_to_json(d: &ArcDiagram) -> DiagramJson {
    DiagramJson {
        poset: None,
        field: None,
        ..diagram_to_json(d)
    }
}

/// Parse a diagram. The embedded poset and field win over the fallbacks.
pub fn diagram_from_json(
    j: &DiagramJson,
    poset: Option<&Poset>,
    field: Option<&Field>,
) -> Result<ArcDiagram> {
    let poset = match &j.poset {
        Some(p) => poset_from_json(p)?,
        None => poset
            .cloned()
            .ok_or_else(|| Error::Parse("diagram has no poset".into()))?,
    };
    let field = match &j.field {
        Some(f) => field_from_json(f)?,
        None => field
            .cloned()
            .ok_or_else(|| Error::Parse("diagram has no field".into()))?,
    };
    let mut arcs = Vec::with_capacity(j.arcs.len());
    for a in &j.arcs {
        let label = label_from_json(&field, &a.label)?;
        arcs.push(LabeledArc::new(
            poset.require_index(&a.from)?,
            poset.require_index(&a.to)?,
            label,
        ));
    }
    ArcDiagram::validate(&poset, &field, &arcs)
}

// ----- group elements -----

pub fn group_element_to_json(g: &GroupElement) -> Value {
    let f = g.field();
    let entries: Vec<Value> = g
        .label_entries()
        .into_iter()
        .filter(|(_, _, c)| *c != 0)
        .map(|(r, c, v)| json!({"row": r, "col": c, "value": f.coeffs(v)}))
        .collect();
    json!({ "entries": entries })
}

pub fn group_element_from_json(group: &PatternGroup, v: &Value) -> Result<GroupElement> {
    let f = group.field();
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("group element needs an entries list".into()))?;
    let mut triples = Vec::with_capacity(entries.len());
    for e in entries {
        let get = |k: &str| {
            e.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("entry needs a string {k:?}")))
        };
        let value = e
            .get("value")
            .ok_or_else(|| Error::Parse("entry needs a value".into()))?;
        triples.push((get("row")?, get("col")?, label_from_json(f, value)?));
    }
    group.element(group.entries_from_labels(&triples)?)
}

// ----- tables -----

pub fn table_to_json(t: &SupercharacterTable) -> Value {
    let index: Vec<DiagramJson> = t.diagrams.iter().map(arcs_to_json).collect();
    json!({
        "theory": t.theory.name(),
        "field": field_to_json(&t.field),
        "poset": poset_to_json(&t.poset),
        "rows": index,
        "cols": index,
        "dims": t.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "class_sizes": t.class_sizes.as_ref().map(|s| s.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
        "values": t.values.iter().map(|row| row.iter().map(cyc_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn parse_as<T: for<'de> Deserialize<'de>>(v: &Value, key: &str) -> Result<T> {
    let x = v
        .get(key)
        .ok_or_else(|| Error::Parse(format!("missing {key:?}")))?;
    Ok(serde_json::from_value(x.clone())?)
}

fn parse_biguint(s: &str) -> Result<BigUint> {
    s.parse()
        .map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

pub fn table_from_json(v: &Value) -> Result<SupercharacterTable> {
    let theory = match parse_as::<String>(v, "theory")?.as_str() {
        "nonnesting" => Theory::Nonnesting,
        "algebra" => Theory::Algebra,
        other => return Err(Error::Parse(format!("unknown theory {other:?}"))),
    };
    let field = field_from_json(&parse_as(v, "field")?)?;
    let poset = poset_from_json(&parse_as(v, "poset")?)?;
    let rows: Vec<DiagramJson> = parse_as(v, "rows")?;
    let diagrams = rows
        .iter()
        .map(|d| diagram_from_json(d, Some(&poset), Some(&field)))
        .collect::<Result<Vec<_>>>()?;
    let dims = parse_as::<Vec<String>>(v, "dims")?
        .iter()
        .map(|s| parse_biguint(s))
        .collect::<Result<Vec<_>>>()?;
    let class_sizes = match parse_as::<Option<Vec<String>>>(v, "class_sizes")? {
        Some(s) => Some(
            s.iter()
                .map(|x| parse_biguint(x))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let values = parse_as::<Vec<Vec<CycJson>>>(v, "values")?
        .iter()
        .map(|row| row.iter().map(cyc_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SupercharacterTable {
        theory,
        poset,
        field,
        diagrams,
        values,
        dims,
        class_sizes,
    })
}

// ----- Hopf elements -----

pub fn vector_to_json(v: &ScfVector) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .map(|(d, c)| json!({"diagram": diagram_to_json(d), "coeff": cyc_to_json(c)}))
        .collect();
    json!({
        "basis": v.basis().name(),
        "field": field_to_json(v.field()),
        "ground": v.ground(),
        "terms": terms,
    })
}

pub fn vector_from_json(v: &Value) -> Result<ScfVector> {
    let basis = Basis::parse(&parse_as::<String>(v, "basis")?)?;
    let field = field_from_json(&parse_as(v, "field")?)?;
    let ground: Vec<String> = parse_as(v, "ground")?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"terms\"".into()))?;
    let mut out = ScfVector::zero(&ground, &field, basis);
    for t in terms {
        let d: DiagramJson = parse_as(t, "diagram")?;
        let c: CycJson = parse_as(t, "coeff")?;
        out.add_term(
            &diagram_from_json(&d, None, Some(&field))?,
            cyc_from_json(&c)?,
        )?;
    }
    Ok(out)
}

/// A 2-tensor as a list of {left, right, coeff}.
pub fn tensor_to_json(t: &TensorElement) -> Value {
    Value::Array(
        t.terms()
            .map(|(ds, c)| {
                json!({
                    "left": diagram_to_json(&ds[0]),
                    "right": diagram_to_json(&ds[1]),
                    "coeff": cyc_to_json(c),
                })
            })
            .collect(),
    )
}

/// Parse a 2-tensor list; the grounds, field and basis are not stored in the list.
pub fn tensor_from_json(
    v: &Value,
    grounds: [Vec<String>; 2],
    field: &Field,
    basis: Basis,
) -> Result<TensorElement> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("tensor must be a list".into()))?;
    let mut out = TensorElement::zero(grounds.to_vec(), field, basis);
    for item in items {
        let l = diagram_from_json(&parse_as(item, "left")?, None, Some(field))?;
        let r = diagram_from_json(&parse_as(item, "right")?, None, Some(field))?;
        let c = cyc_from_json(&parse_as(item, "coeff")?)?;
        out.add_term(vec![l, r], c)?;
    }
    Ok(out)
}

// ----- reports -----

pub fn checks_to_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "witness": c.witness}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_and_cyc_round_trip() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
        let j: FieldJson = serde_json::from_str(r#"{"p": 2, "e": 1}"#).unwrap();
        assert_eq!(field_from_json(&j).unwrap(), Field::prime(2).unwrap());
        let c: CycJson = serde_json::from_str(r#"{"p": 3, "coords": ["1/2", "-1/2"]}"#).unwrap();
        let x = cyc_from_json(&c).unwrap();
        assert_eq!(cyc_to_json(&x), c);
    }

    #[test]
    fn labels_over_extension_fields() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(label_from_json(&f, &json!([0, 1])).unwrap(), 2);
        assert_eq!(label_to_json(&f, 3), json!([1, 1]));
        assert!(label_from_json(&f, &json!([2])).is_err());
        let g = Field::prime(3).unwrap();
        assert_eq!(label_from_json(&g, &json!("2")).unwrap(), 2);
        assert!(label_from_json(&g, &json!("3")).is_err());
    }
}

//! Versioned JSON documents (`"format": "origami-fan/1"`).
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; rationals are always strings (`"3/2"`). Both
//! forms are accepted on input.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multifan::MultiFan;
use crate::polytope::{DelzantPolytope, Facet, Orientation};
use crate::realize2d::{RealizationCertificate, UnimodularSequence, V};
use crate::template::{FacetRef, FoldEntry, OrigamiTemplate, TemplatePiece};
use crate::{Integer, Rational};

pub const FORMAT: &str = "origami-fan/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    MultiFan,
    Polytope,
    Template,
    Sequence,
    Certificate,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::MultiFan => "multifan",
            Kind::Polytope => "polytope",
            Kind::Template => "template",
            Kind::Sequence => "sequence",
            Kind::Certificate => "certificate",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Some(match s {
            "multifan" => Kind::MultiFan,
            "polytope" => Kind::Polytope,
            "template" => Kind::Template,
            "sequence" => Kind::Sequence,
            "certificate" => Kind::Certificate,
            _ => return None,
        })
    }
}

/// A parsed document. Sequences stay raw so that a non-unimodular input is
/// reported by the caller as a domain error rather than a schema error.
#[derive(Clone, Debug)]
pub enum Document {
    MultiFan(MultiFan),
    Polytope(DelzantPolytope, Option<Orientation>),
    Template(OrigamiTemplate),
    Sequence(Vec<V>),
    Certificate(RealizationCertificate),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::MultiFan(_) => Kind::MultiFan,
            Document::Polytope(..) => Kind::Polytope,
            Document::Template(_) => Kind::Template,
            Document::Sequence(_) => Kind::Sequence,
            Document::Certificate(_) => Kind::Certificate,
        }
    }
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Parse text, reporting syntax errors with line and column.
pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| fmt_err(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))
}

/// `kind` field if present, otherwise guessed from the keys.
pub fn detect_kind(v: &Value) -> Result<Kind> {
    let obj = v.as_object().ok_or_else(|| fmt_err("top level must be an object"))?;
    if let Some(k) = obj.get("kind") {
        let name = k.as_str().ok_or_else(|| fmt_err("\"kind\" must be a string"))?;
        return Kind::from_name(name).ok_or_else(|| fmt_err(format!("unknown kind {name:?}")));
    }
    for (key, kind) in [
        ("polytopes", Kind::Template),
        ("edges", Kind::MultiFan),
        ("facets", Kind::Polytope),
        ("vectors", Kind::Sequence),
        ("template", Kind::Certificate),
    ] {
        if obj.contains_key(key) {
            return Ok(kind);
        }
    }
    Err(fmt_err("cannot tell the document kind from its keys"))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v = parse_value(text)?;
    document_from_value(&v, None)
}

/// Read `v` as `expected` (or its detected kind). Shape problems are
/// [`Error::Format`]; mathematical problems keep their own error.
pub fn document_from_value(v: &Value, expected: Option<Kind>) -> Result<Document> {
    if let Some(f) = v.get("format") {
        if f.as_str() != Some(FORMAT) {
            return Err(fmt_err(format!("unsupported format {f}")));
        }
    }
    let kind = match expected {
        Some(k) => k,
        None => detect_kind(v)?,
    };
    Ok(match kind {
        Kind::MultiFan => Document::MultiFan(multifan_from_value(v)?),
        Kind::Polytope => {
            let o = orientation_from_value(v.get("orientation"))?;
            Document::Polytope(polytope_from_value(v)?, o)
        }
        Kind::Template => Document::Template(template_from_value(v)?),
        Kind::Sequence => Document::Sequence(vectors_from_value(field(v, "vectors")?)?),
        Kind::Certificate => Document::Certificate(certificate_from_value(v)?),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| fmt_err(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fmt_err(format!("{what} must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| fmt_err(format!("{what} must be a non-negative integer")))
}

fn string_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| fmt_err(format!("{what} must be a string")))
}

pub fn integer_to_value(x: &Integer) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

pub fn integer_from_value(v: &Value) -> Result<Integer> {
    match v {
        Value::Number(n) => n.as_i64().map(Integer::from).ok_or_else(|| fmt_err(format!("{n} is not an integer"))),
        Value::String(s) => Integer::from_str(s).map_err(|_| fmt_err(format!("{s:?} is not an integer"))),
        _ => Err(fmt_err(format!("{v} is not an integer"))),
    }
}

pub fn rational_to_value(x: &Rational) -> Value {
    json!(x.to_string())
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(Rational::from).ok_or_else(|| fmt_err(format!("{n} is not exact"))),
        Value::String(s) => Rational::from_str(s.trim()).map_err(|_| fmt_err(format!("{s:?} is not a rational"))),
        _ => Err(fmt_err(format!("{v} is not a rational"))),
    }
}

pub fn vector_to_value(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(integer_to_value).collect())
}

pub fn vector_from_value(v: &Value) -> Result<LatticeVector> {
    let coords = array(v, "a vector")?.iter().map(integer_from_value).collect::<Result<Vec<_>>>()?;
    Ok(LatticeVector::new(coords))
}

fn vectors_from_value(v: &Value) -> Result<Vec<V>> {
    array(v, "\"vectors\"")?
        .iter()
        .map(|x| {
            let c = array(x, "a vector")?;
            match c.as_slice() {
                [a, b] => Ok([
                    a.as_i64().ok_or_else(|| fmt_err("sequence entries must be integers"))?,
                    b.as_i64().ok_or_else(|| fmt_err("sequence entries must be integers"))?,
                ]),
                _ => Err(fmt_err("sequence vectors must have two entries")),
            }
        })
        .collect()
}

fn header(kind: Kind) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("kind".into(), json!(kind.name()));
    m
}

pub fn multifan_to_value(mf: &MultiFan) -> Value {
    let mut m = header(Kind::MultiFan);
    m.insert("dim".into(), json!(mf.dim()));
    m.insert(
        "edges".into(),
        Value::Array(
            mf.edges().iter().map(|e| json!({"label": e.label, "vector": vector_to_value(&e.vector)})).collect(),
        ),
    );
    let faces: Vec<Value> = mf.generating_faces().iter().map(|f| json!(mf.labels_of(f))).collect();
    if !faces.is_empty() {
        m.insert("faces".into(), Value::Array(faces));
    }
    m.insert(
        "chambers".into(),
        Value::Array(
            mf.chambers()
                .iter()
                .map(|c| json!({"id": c.id, "edges": mf.labels_of(&c.edges), "w_plus": c.w_plus, "w_minus": c.w_minus}))
                .collect(),
        ),
    );
    Value::Object(m)
}

pub fn multifan_from_value(v: &Value) -> Result<MultiFan> {
    let dim = usize_of(field(v, "dim")?, "\"dim\"")?;
    let mut b = MultiFan::builder(dim);
    for e in array(field(v, "edges")?, "\"edges\"")? {
        let label = string_of(field(e, "label")?, "an edge label")?;
        b = b.edge(label, vector_from_value(field(e, "vector")?)?);
    }
    let labels = |x: &Value| -> Result<Vec<String>> {
        array(x, "a label list")?.iter().map(|l| string_of(l, "a label").map(str::to_string)).collect()
    };
    if let Some(fs) = v.get("faces") {
        for f in array(fs, "\"faces\"")? {
            b = b.face(&labels(f)?);
        }
    }
    for c in array(field(v, "chambers")?, "\"chambers\"")? {
        let id = string_of(field(c, "id")?, "a chamber id")?;
        let w = |k: &str| -> Result<u64> {
            c.get(k).map_or(Ok(0), |x| x.as_u64().ok_or_else(|| fmt_err(format!("{k} must be a non-negative integer"))))
        };
        b = b.chamber(id, &labels(field(c, "edges")?)?, w("w_plus")?, w("w_minus")?);
    }
    b.build()
}

fn orientation_to_value(o: Option<Orientation>) -> Value {
    match o {
        Some(Orientation::Positive) => json!("+"),
        Some(Orientation::Negative) => json!("-"),
        None => Value::Null,
    }
}

fn orientation_from_value(v: Option<&Value>) -> Result<Option<Orientation>> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) if s == "+" => Ok(Some(Orientation::Positive)),
        Some(Value::String(s)) if s == "-" => Ok(Some(Orientation::Negative)),
        Some(Value::Number(n)) => n
            .as_i64()
            .and_then(Orientation::from_sign)
            .map(Some)
            .ok_or_else(|| fmt_err("orientation must be \"+\", \"-\", 1, -1 or null")),
        Some(_) => Err(fmt_err("orientation must be \"+\", \"-\", 1, -1 or null")),
    }
}

fn polytope_fields(p: &DelzantPolytope, m: &mut Map<String, Value>) {
    m.insert("dim".into(), json!(p.dim()));
    m.insert(
        "facets".into(),
        Value::Array(
            p.facets()
                .iter()
                .map(|f| json!({"normal": vector_to_value(&f.normal), "offset": rational_to_value(&f.offset)}))
                .collect(),
        ),
    );
    m.insert(
        "vertices".into(),
        Value::Array(
            p.vertices()
                .iter()
                .map(|v| Value::Array(v.point.iter().map(rational_to_value).collect()))
                .collect(),
        ),
    );
}

pub fn polytope_to_value(p: &DelzantPolytope, orientation: Option<Orientation>) -> Value {
    let mut m = header(Kind::Polytope);
    polytope_fields(p, &mut m);
    if orientation.is_some() {
        m.insert("orientation".into(), orientation_to_value(orientation));
    }
    Value::Object(m)
}

/// Vertices in the input, if any, are ignored: they are recomputed.
pub fn polytope_from_value(v: &Value) -> Result<DelzantPolytope> {
    let dim = usize_of(field(v, "dim")?, "\"dim\"")?;
    let facets = array(field(v, "facets")?, "\"facets\"")?
        .iter()
        .map(|f| Ok(Facet::new(vector_from_value(field(f, "normal")?)?, rational_from_value(field(f, "offset")?)?)))
        .collect::<Result<Vec<_>>>()?;
    DelzantPolytope::new(dim, facets)
}

fn facet_ref_to_value(r: FacetRef) -> Value {
    json!([r.polytope, r.facet])
}

fn facet_ref_from_value(v: &Value) -> Result<FacetRef> {
    match array(v, "a facet reference")?.as_slice() {
        [p, f] => Ok(FacetRef::new(usize_of(p, "a polytope index")?, usize_of(f, "a facet index")?)),
        _ => Err(fmt_err("facet references are [polytope, facet]")),
    }
}

pub fn template_to_value(t: &OrigamiTemplate) -> Value {
    let mut m = header(Kind::Template);
    m.insert("dim".into(), json!(t.dim()));
    m.insert(
        "polytopes".into(),
        Value::Array(
            t.pieces()
                .iter()
                .map(|p| {
                    let mut pm = Map::new();
                    pm.insert("orientation".into(), orientation_to_value(p.orientation));
                    polytope_fields(&p.polytope, &mut pm);
                    pm.remove("dim");
                    Value::Object(pm)
                })
                .collect(),
        ),
    );
    m.insert(
        "folds".into(),
        Value::Array(
            t.folds()
                .iter()
                .map(|e| match *e {
                    FoldEntry::Pair(a, b) => json!({"pair": [facet_ref_to_value(a), facet_ref_to_value(b)]}),
                    FoldEntry::Single(a) => json!({"single": facet_ref_to_value(a)}),
                })
                .collect(),
        ),
    );
    Value::Object(m)
}

pub fn template_from_value(v: &Value) -> Result<OrigamiTemplate> {
    let polys = array(field(v, "polytopes")?, "\"polytopes\"")?;
    let dim = match v.get("dim") {
        Some(d) => usize_of(d, "\"dim\"")?,
        None => polys
            .first()
            .and_then(|p| p.get("facets")?.get(0)?.get("normal")?.as_array().map(Vec::len))
            .ok_or_else(|| fmt_err("missing field \"dim\""))?,
    };
    let pieces = polys
        .iter()
        .map(|p| {
            let mut with_dim = p.clone();
            if let Some(o) = with_dim.as_object_mut() {
                o.insert("dim".into(), json!(dim));
            }
            Ok(TemplatePiece {
                polytope: polytope_from_value(&with_dim)?,
                orientation: orientation_from_value(p.get("orientation"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let folds = match v.get("folds") {
        None => Vec::new(),
        Some(fs) => array(fs, "\"folds\"")?
            .iter()
            .map(|e| {
                if let Some(p) = e.get("pair") {
                    match array(p, "\"pair\"")?.as_slice() {
                        [a, b] => Ok(FoldEntry::Pair(facet_ref_from_value(a)?, facet_ref_from_value(b)?)),
                        _ => Err(fmt_err("\"pair\" needs two facet references")),
                    }
                } else if let Some(s) = e.get("single") {
                    Ok(FoldEntry::Single(facet_ref_from_value(s)?))
                } else {
                    Err(fmt_err("fold entries are {\"pair\": …} or {\"single\": …}"))
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };
    OrigamiTemplate::new(pieces, folds)
}

pub fn sequence_to_value(s: &UnimodularSequence) -> Value {
    let mut m = header(Kind::Sequence);
    m.insert("vectors".into(), json!(s.vectors()));
    Value::Object(m)
}

pub fn certificate_to_value(c: &RealizationCertificate) -> Value {
    let mut m = header(Kind::Certificate);
    m.insert("sequence".into(), json!({"vectors": c.sequence.vectors()}));
    m.insert("signs".into(), json!(c.signs));
    m.insert("template".into(), template_to_value(&c.template));
    m.insert("trace".into(), serde_json::to_value(&c.trace).expect("trace serializes"));
    Value::Object(m)
}

/// The trace is informational and not read back.
pub fn certificate_from_value(v: &Value) -> Result<RealizationCertificate> {
    let sequence = UnimodularSequence::new(vectors_from_value(field(field(v, "sequence")?, "vectors")?)?)?;
    let signs = array(field(v, "signs")?, "\"signs\"")?
        .iter()
        .map(|s| match s.as_i64() {
            Some(1) => Ok(1),
            Some(-1) => Ok(-1),
            _ => Err(fmt_err("signs must be 1 or -1")),
        })
        .collect::<Result<Vec<i8>>>()?;
    let template = template_from_value(field(v, "template")?)?;
    Ok(RealizationCertificate { sequence, template, signs, trace: Vec::new() })
}

pub fn document_to_value(d: &Document) -> Value {
    match d {
        Document::MultiFan(mf) => multifan_to_value(mf),
        Document::Polytope(p, o) => polytope_to_value(p, *o),
        Document::Template(t) => template_to_value(t),
        Document::Sequence(vs) => {
            let mut m = header(Kind::Sequence);
            m.insert("vectors".into(), json!(vs));
            Value::Object(m)
        }
        Document::Certificate(c) => certificate_to_value(c),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

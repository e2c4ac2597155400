use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use origami_core::io::{self, Document, Kind, FORMAT};
use origami_core::multifan::MultiFan;
use origami_core::realize2d::{realize as realize_sequence, V};
use origami_core::{
    n_delta, pi1_report, DegreeOptions, DelzantPolytope, Error, FacetRef, OrigamiTemplate, Orientation,
    UnimodularSequence, VertexRef,
};

use crate::svg;

/// What to print and how to exit.
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn json(v: &Value, code: u8) -> Output {
        Output { stdout: io::to_pretty(v), code }
    }
}

pub struct Failure {
    pub code: u8,
    pub name: String,
    pub message: String,
    /// A partial report still worth printing.
    pub stdout: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::Format(_)) { 2 } else { 1 };
        Failure { code, name: e.name().to_string(), message: e.to_string(), stdout: None }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, name: "Io".into(), message: format!("{}: {e}", path.display()), stdout: None }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, name: "Usage".into(), message: message.into(), stdout: None }
}

fn read(path: &Path, kind: Option<Kind>) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let v = io::parse_value(&text)?;
    Ok(io::document_from_value(&v, kind)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn header(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("kind".into(), json!(kind));
    m
}

fn error_value(e: &Error) -> Value {
    json!({"error": e.name(), "message": e.to_string()})
}

// ------------------------------------------------------------------ validate

pub fn validate(path: &Path, kind: Option<Kind>) -> Result<Output> {
    let doc = read(path, kind)?;
    let mut m = header("validation");
    m.insert("input".into(), json!(doc.kind().name()));
    let valid = match &doc {
        Document::MultiFan(mf) => {
            let r = mf.validate();
            m.insert("violations".into(), json!(r.violations));
            r.is_valid()
        }
        Document::Polytope(p, _) => {
            let r = p.is_delzant();
            m.insert("delzant".into(), json!(r));
            r.delzant
        }
        Document::Template(t) => {
            let r = t.validate();
            m.insert("violations".into(), json!(r.violations));
            r.is_valid()
        }
        Document::Sequence(vs) => match UnimodularSequence::new(vs.clone()) {
            Ok(_) => true,
            Err(e) => {
                m.insert("violations".into(), json!([{"kind": e.name(), "message": e.to_string()}]));
                false
            }
        },
        Document::Certificate(c) => match c.verify() {
            Ok(()) => true,
            Err(e) => {
                m.insert("violations".into(), json!([{"kind": e.name(), "message": e.to_string()}]));
                false
            }
        },
    };
    let mut out = header("validation");
    out.insert("valid".into(), json!(valid));
    out.extend(m.into_iter().filter(|(k, _)| k != "format" && k != "kind"));
    Ok(Output::json(&Value::Object(out), if valid { 0 } else { 1 }))
}

// ------------------------------------------------------------------- analyze

/// Collects fields; inapplicable ones are `null` with a reason under
/// `"notes"`, failing ones make the exit code 1.
struct Report {
    fields: Map<String, Value>,
    notes: Map<String, Value>,
    failed: bool,
}

impl Report {
    fn new(input: Kind) -> Report {
        let mut fields = header("analysis");
        fields.insert("input".into(), json!(input.name()));
        Report { fields, notes: Map::new(), failed: false }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.into(), v);
    }

    fn skip(&mut self, key: &str, reason: impl Into<String>) {
        self.fields.insert(key.into(), Value::Null);
        self.notes.insert(key.into(), json!(reason.into()));
    }

    fn fail(&mut self, key: &str, e: &Error) {
        self.fields.insert(key.into(), Value::Null);
        self.notes.insert(key.into(), error_value(e));
        self.failed = true;
    }

    fn fan(&mut self, mf: &MultiFan, seed: u64) {
        self.set("nonsingular", json!(mf.is_nonsingular()));
        let merged = mf.merge();
        self.set("chambers", json!(mf.chambers().len()));
        self.set("merged_chambers", json!(merged.chambers().len()));
        let opts = DegreeOptions { seed, ..DegreeOptions::default() };
        match merged.degree_with(&opts) {
            Ok(r) => {
                self.set("degree", json!(r.degree));
                self.set("degree_method", json!(r.method));
            }
            Err(Error::EmptyTopDimension) => self.skip("degree", "no top-dimensional cones"),
            Err(e) => self.fail("degree", &e),
        }
        self.set("complete", json!(merged.is_complete_with(&opts)));
        let nd = n_delta(mf);
        self.set("n_delta_rank", json!(nd.rank));
        self.set("n_delta_quotient", json!(nd.quotient.to_string()));
    }

    fn template(&mut self, t: &OrigamiTemplate, seed: u64) {
        let report = t.validate();
        self.set("valid", json!(report.is_valid()));
        self.set("violations", json!(report.violations));
        if !report.is_valid() {
            self.failed = true;
            return;
        }
        self.set("classification", json!(t.classify()));
        let g = t.graph();
        self.set("b1", json!(g.b1));
        self.set("graph", json!(g));
        self.set("fixed_points", json!(t.count_fixed_points()));
        self.set("faces_connected", json!(t.faces_connected()));
        match t.multifan() {
            Ok(mf) => self.fan(&mf, seed),
            Err(Error::NotOriented) => {
                for key in ["nonsingular", "degree", "complete"] {
                    self.skip(key, "the multi-fan of a template needs every polytope oriented");
                }
            }
            Err(e) => self.fail("multifan", &e),
        }
        let pi1 = pi1_report(t);
        self.set("simply_connected", json!(pi1.simply_connected));
        if pi1.simply_connected.is_none() {
            self.notes.insert("simply_connected".into(), json!("not coörientable: undecided"));
        }
        // The multi-fan's edges give the same N_Δ; the report also covers
        // unoriented templates.
        self.set("n_delta_rank", json!(pi1.n_delta_rank));
        self.set("n_delta_quotient", json!(pi1.n_delta_quotient.to_string()));
        self.set("pi1", json!(pi1));
    }

    fn finish(mut self) -> Result<Output> {
        if !self.notes.is_empty() {
            let notes = std::mem::take(&mut self.notes);
            self.fields.insert("notes".into(), Value::Object(notes));
        }
        let out = Output::json(&Value::Object(self.fields), if self.failed { 1 } else { 0 });
        if self.failed {
            return Err(Failure {
                code: 1,
                name: "AnalysisFailed".into(),
                message: "some computations failed; see \"notes\"".into(),
                stdout: Some(out.stdout),
            });
        }
        Ok(out)
    }
}

pub fn analyze(path: &Path, kind: Option<Kind>, seed: u64) -> Result<Output> {
    let doc = read(path, kind)?;
    let mut r = Report::new(doc.kind());
    match &doc {
        Document::MultiFan(mf) => {
            let v = mf.validate();
            r.set("valid", json!(v.is_valid()));
            r.set("violations", json!(v.violations));
            r.failed |= !v.is_valid();
            r.fan(mf, seed);
        }
        Document::Polytope(p, o) => {
            let d = p.is_delzant();
            r.set("delzant", json!(d.delzant));
            r.set("vertices", json!(p.vertices().len()));
            r.set("facets", json!(p.facets().len()));
            if d.delzant {
                let fan = p.normal_fan(o.unwrap_or(Orientation::Positive)).map_err(Failure::from)?;
                r.fan(&fan, seed);
            } else {
                r.set("offending", json!(d.offending));
                r.failed = true;
            }
        }
        Document::Template(t) => r.template(t, seed),
        Document::Sequence(vs) => match UnimodularSequence::new(vs.clone()) {
            Ok(s) => {
                r.set("length", json!(s.len()));
                r.set("winding_number", json!(s.winding_number()));
                r.fan(&s.multifan(), seed);
            }
            Err(e) => return Err(e.into()),
        },
        Document::Certificate(c) => {
            match c.verify() {
                Ok(()) => r.set("verified", json!(true)),
                Err(e) => r.fail("verified", &e),
            }
            r.template(&c.template, seed);
        }
    }
    r.finish()
}

// ------------------------------------------------------------------- realize

fn parse_vector(s: &str) -> Result<V> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => match (x.parse(), y.parse()) {
            (Ok(x), Ok(y)) => Ok([x, y]),
            _ => Err(usage(format!("cannot read vector {s:?}"))),
        },
        _ => Err(usage(format!("vectors are written x,y; got {s:?}"))),
    }
}

pub fn realize(
    path: Option<&Path>,
    vectors: &[String],
    check: bool,
    max_sign_search: usize,
    out: Option<&Path>,
) -> Result<Output> {
    let vs: Vec<V> = match (path, vectors.is_empty()) {
        (Some(p), true) => match read(p, Some(Kind::Sequence))? {
            Document::Sequence(vs) => vs,
            _ => unreachable!("read with an expected kind"),
        },
        (None, false) => vectors.iter().map(|s| parse_vector(s)).collect::<Result<_>>()?,
        _ => return Err(usage("give either a sequence file or -v vectors")),
    };
    let seq = UnimodularSequence::new(vs)?;
    let cert = realize_sequence(&seq)?;
    let mut doc = io::certificate_to_value(&cert);
    if check {
        let v = check_certificate(&doc, max_sign_search);
        let ok = v["verified"] == json!(true) && v["signs_confirmed"] != json!(false);
        doc.as_object_mut().expect("object").insert("check".into(), v);
        if !ok {
            return Err(Failure {
                code: 1,
                name: "VerificationFailed".into(),
                message: "the certificate did not survive the round trip".into(),
                stdout: Some(io::to_pretty(&doc)),
            });
        }
    }
    emit(doc, out)
}

/// Reload the emitted certificate, verify it, and search all sign vectors
/// for one matching the template (when the sequence is short enough).
fn check_certificate(doc: &Value, bound: usize) -> Value {
    let cert = match io::certificate_from_value(doc) {
        Ok(c) => c,
        Err(e) => return json!({"verified": false, "reload": error_value(&e)}),
    };
    let mut m = Map::new();
    match cert.verify() {
        Ok(()) => m.insert("verified".into(), json!(true)),
        Err(e) => m.insert("verified".into(), json!(false)).and(m.insert("reason".into(), error_value(&e))),
    };
    let seq = &cert.sequence;
    let signs = seq
        .multifan()
        .equivalent_up_to_signs(&seq.with_signs(&cert.signs).multifan(), bound)
        .and_then(|found| {
            let target = cert.template.multifan()?.merge();
            Ok(found.map(|f| seq.with_signs(&f).multifan().merge().is_isomorphic(&target)))
        });
    match signs {
        Ok(Some(ok)) => m.insert("signs_confirmed".into(), json!(ok)),
        Ok(None) => m.insert("signs_confirmed".into(), json!(false)),
        Err(e) => m.insert("signs_confirmed".into(), Value::Null).and(m.insert("signs_note".into(), error_value(&e))),
    };
    Value::Object(m)
}

/// Print the document, or write it and print a short summary.
fn emit(doc: Value, out: Option<&Path>) -> Result<Output> {
    match out {
        None => Ok(Output::json(&doc, 0)),
        Some(path) => {
            write(path, &io::to_pretty(&doc))?;
            let mut m = header("written");
            m.insert("out".into(), json!(path.display().to_string()));
            m.insert("document".into(), doc.get("kind").cloned().unwrap_or(Value::Null));
            Ok(Output::json(&Value::Object(m), 0))
        }
    }
}

// -------------------------------------------------------------------- render

pub fn render(path: &Path, out: &Path) -> Result<Output> {
    let doc = read(path, None)?;
    let picture = match &doc {
        Document::MultiFan(mf) => svg::fan(mf),
        Document::Polytope(p, o) => svg::template(&OrigamiTemplate::single(p.clone(), *o)),
        Document::Template(t) => svg::template(t),
        Document::Sequence(vs) => svg::fan(&UnimodularSequence::new(vs.clone())?.multifan()),
        Document::Certificate(c) => svg::template(&c.template),
    }?;
    write(out, &picture)?;
    let mut m = header("written");
    m.insert("out".into(), json!(out.display().to_string()));
    m.insert("document".into(), json!("svg"));
    Ok(Output::json(&Value::Object(m), 0))
}

// ------------------------------------------------------------------- compose

pub struct ComposeArgs {
    pub first: PathBuf,
    pub second: Option<PathBuf>,
    pub at: Option<String>,
    pub at2: Option<String>,
    pub sign: i8,
    pub reduce: bool,
    pub check: bool,
    pub out: Option<PathBuf>,
}

impl ComposeArgs {
    fn second(&self) -> Result<&Path> {
        self.second.as_deref().ok_or_else(|| usage("this operation needs two inputs"))
    }

    fn at(&self) -> Result<&str> {
        self.at.as_deref().ok_or_else(|| usage("--at is required"))
    }

    fn at2(&self) -> Result<&str> {
        self.at2.as_deref().ok_or_else(|| usage("--at2 is required"))
    }
}

fn vector_arg(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// An edge label, or the unique edge with the given vector.
fn edge_arg(mf: &MultiFan, s: &str) -> Result<String> {
    if mf.edge_index(s).is_some() {
        return Ok(s.to_string());
    }
    let Some(v) = vector_arg(s) else {
        return Err(Error::EdgeNotPresent(s.into()).into());
    };
    let hits: Vec<_> = mf.edges().iter().filter(|e| e.vector.to_i64s().as_deref() == Some(&v[..])).collect();
    match hits.as_slice() {
        [e] => Ok(e.label.clone()),
        [] => Err(Error::EdgeNotPresent(s.into()).into()),
        _ => Err(usage(format!("several edges have vector {s}; use a label"))),
    }
}

/// `p<i>.<letter><j>`, e.g. `p0.f3`.
fn indexed_ref(s: &str, letter: char) -> Option<(usize, usize)> {
    let (p, x) = s.strip_prefix('p')?.split_once('.')?;
    Some((p.parse().ok()?, x.strip_prefix(letter)?.parse().ok()?))
}

/// `p<i>.f<j>`, or the unique non-folded facet with the given normal.
fn facet_arg(t: &OrigamiTemplate, s: &str) -> Result<FacetRef> {
    if let Some((p, f)) = indexed_ref(s, 'f') {
        return Ok(FacetRef::new(p, f));
    }
    let v = vector_arg(s).ok_or_else(|| usage(format!("cannot read facet {s:?}; use p<i>.f<j> or x,y")))?;
    let folded = t.folded_facets();
    let hits: Vec<FacetRef> = t
        .pieces()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.polytope.facets().iter().enumerate().map(move |(j, f)| (FacetRef::new(i, j), f.normal.to_i64s()))
        })
        .filter(|(r, n)| !folded.contains(r) && n.as_deref() == Some(&v[..]))
        .map(|(r, _)| r)
        .collect();
    match hits.as_slice() {
        [r] => Ok(*r),
        [] => Err(usage(format!("no free facet with normal {s}"))),
        _ => Err(usage(format!("several facets have normal {s}; use p<i>.f<j>"))),
    }
}

fn vertex_arg(s: &str) -> Result<VertexRef> {
    indexed_ref(s, 'v')
        .map(|(polytope, vertex)| VertexRef { polytope, vertex })
        .ok_or_else(|| usage(format!("cannot read vertex {s:?}; use p<i>.v<j>")))
}

/// Write the result, validating it first with `--check`.
fn finish(doc: Document, args: &ComposeArgs) -> Result<Output> {
    if args.check {
        let report = match &doc {
            Document::MultiFan(mf) => mf.validate(),
            Document::Template(t) => t.validate(),
            _ => Default::default(),
        };
        if !report.is_valid() {
            return Err(Failure {
                code: 1,
                name: "CheckFailed".into(),
                message: report.to_string(),
                stdout: None,
            });
        }
    }
    emit(io::document_to_value(&doc), args.out.as_deref())
}

fn mismatch(what: &str) -> Failure {
    usage(format!("{what}: unsupported combination of inputs"))
}

pub fn diamond(args: &ComposeArgs) -> Result<Output> {
    let doc = match (read(&args.first, None)?, read(args.second()?, None)?) {
        (Document::MultiFan(a), Document::MultiFan(b)) => {
            let (l, l2) = (edge_arg(&a, args.at()?)?, edge_arg(&b, args.at2()?)?);
            Document::MultiFan(a.diamond(&b, &l, &l2)?)
        }
        (Document::Template(a), Document::Template(b)) => {
            let (f, f2) = (facet_arg(&a, args.at()?)?, facet_arg(&b, args.at2()?)?);
            Document::Template(a.diamond(&b, f, f2)?)
        }
        _ => return Err(mismatch("diamond")),
    };
    finish(doc, args)
}

pub fn connected_sum(args: &ComposeArgs) -> Result<Output> {
    let doc = match (read(&args.first, None)?, read(args.second()?, None)?) {
        (Document::MultiFan(a), Document::MultiFan(b)) => {
            Document::MultiFan(a.connected_sum(&b, args.at()?, args.at2()?, args.reduce)?)
        }
        (Document::Template(a), Document::Template(b)) => {
            let (v, v2) = (vertex_arg(args.at()?)?, vertex_arg(args.at2()?)?);
            Document::Template(a.connected_sum(&b, v, v2)?)
        }
        _ => return Err(mismatch("connected-sum")),
    };
    finish(doc, args)
}

pub fn blow_up(args: &ComposeArgs) -> Result<Output> {
    if args.second.is_some() {
        return Err(usage("blow-up takes one input"));
    }
    let doc = match read(&args.first, None)? {
        Document::MultiFan(a) => Document::MultiFan(a.blow_up(args.at()?, args.sign)?),
        Document::Polytope(p, o) => {
            let v = indexed_ref(args.at()?, 'v').map(|(_, v)| v).ok_or_else(|| usage("polytope blow-ups take --at p0.v<j>"))?;
            Document::Polytope(p.corner_chop(v, None)?, o)
        }
        _ => return Err(mismatch("blow-up")),
    };
    finish(doc, args)
}

fn polytope_of(doc: Document) -> Result<DelzantPolytope> {
    match doc {
        Document::Polytope(p, _) => Ok(p),
        _ => Err(mismatch("product")),
    }
}

pub fn product(args: &ComposeArgs) -> Result<Output> {
    let q = polytope_of(read(args.second()?, None)?)?;
    let doc = match read(&args.first, None)? {
        Document::Template(t) => Document::Template(t.product(&q)),
        Document::Polytope(p, o) => Document::Polytope(p.product(&q), o),
        _ => return Err(mismatch("product")),
    };
    finish(doc, args)
}

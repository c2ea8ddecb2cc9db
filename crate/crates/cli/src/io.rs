//! Fan and module JSON dialects, corpus lookup and exact serialization.

use std::fmt::Debug;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use coxsheaf::groeb::{cox_variable_names, format_rational, parse_rational, PolyParseError};
use coxsheaf::polyfan::MAX_RANK;
use coxsheaf::{
    AbelianGroup, CoxError, CoxRingData, Fan, FanError, GradmodError, GroupElement, Index, ModElem, Poly, Q,
    SheafError,
};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{1}")]
    Usage(&'static str, String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cox(#[from] CoxError),
    #[error(transparent)]
    Module(#[from] GradmodError),
    #[error(transparent)]
    Sheaf(SheafError),
}

impl From<SheafError> for CliError {
    fn from(e: SheafError) -> Self {
        match e {
            SheafError::Cox(e) => CliError::Cox(e),
            SheafError::Module(e) => CliError::Module(e),
            e => CliError::Sheaf(e),
        }
    }
}

fn variant<T: Debug>(e: &T) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Parse { .. } | CliError::Usage(..) => 2,
            _ => 1,
        }
    }

    pub fn reason(&self) -> String {
        match self {
            CliError::Io(..) => "Io".into(),
            CliError::Parse { .. } => "ParseError".into(),
            CliError::Usage(r, _) => (*r).into(),
            CliError::Fan(e) => variant(e),
            CliError::Cox(e) => variant(e),
            CliError::Module(GradmodError::Groebner(e)) => variant(e),
            CliError::Module(e) => variant(e),
            CliError::Sheaf(e) => variant(e),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "reason": self.reason(), "message": self.to_string() });
        if let CliError::Parse { line, .. } = self {
            v["line"] = json!(line);
        }
        v
    }
}

fn parse_error(e: serde_json::Error) -> CliError {
    CliError::Parse { line: e.line(), reason: e.to_string() }
}

/// Integers may be given as JSON numbers or decimal strings, rationals as
/// `"p/q"` strings.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum Exact {
    Int(i64),
    Text(String),
}

impl Exact {
    fn rational(&self) -> Option<Q> {
        match self {
            Exact::Int(n) => Some(Q::from_integer(BigInt::from(*n))),
            Exact::Text(s) => parse_rational(s.trim()),
        }
    }

    fn integer(&self) -> Option<BigInt> {
        match self {
            Exact::Int(n) => Some(BigInt::from(*n)),
            Exact::Text(s) => s.trim().parse().ok(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// A fan together with normalization notes.
pub struct ParsedFan {
    pub fan: Fan,
    pub warnings: Vec<Value>,
}

pub fn parse_fan_json(text: &str) -> Result<ParsedFan, CliError> {
    let file: FanFile = serde_json::from_str(text).map_err(parse_error)?;
    if file.rank > MAX_RANK {
        return Err(FanError::RankTooLarge(file.rank).into());
    }
    let mut warnings = Vec::new();
    let rays = file
        .rays
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let g = r.iter().fold(0i64, |g, x| g.gcd(x));
            if g > 1 && r.len() == file.rank {
                let normalized: Vec<i64> = r.iter().map(|x| x / g).collect();
                warnings.push(json!({
                    "reason": "NonPrimitiveRay",
                    "ray": i,
                    "given": r,
                    "normalized": normalized,
                }));
                normalized
            } else {
                r
            }
        })
        .collect();
    let fan = Fan::from_indexed(file.rank, rays, &file.max_cones)?;
    Ok(ParsedFan { fan, warnings })
}

pub fn fan_json(f: &Fan) -> Value {
    json!({ "rank": f.rank(), "rays": f.rays(), "max_cones": f.maximal_cones() })
}

pub fn default_corpus_dir() -> PathBuf {
    match std::env::var_os("COXSHEAF_CORPUS") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"),
    }
}

/// A path as given, or else a file of the corpus by name.
pub fn resolve_fan_path(arg: &str, corpus: &Path) -> PathBuf {
    let direct = PathBuf::from(arg);
    if direct.exists() {
        return direct;
    }
    let named = corpus.join(arg);
    if named.exists() {
        return named;
    }
    corpus.join(format!("{arg}.json"))
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Triple {
    generator: usize,
    exponents: Vec<i64>,
    coefficient: Exact,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    generator_degrees: Vec<Vec<Exact>>,
    relations: Vec<Vec<Triple>>,
}

fn usage(reason: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Usage(reason, msg.into())
}

pub fn group_element(group: &AbelianGroup, coords: &[Exact]) -> Result<GroupElement, CliError> {
    if coords.len() != group.coord_len() {
        return Err(usage(
            "InvalidElement",
            format!("element has {} coordinates, the class group needs {}", coords.len(), group.coord_len()),
        ));
    }
    let c = coords
        .iter()
        .map(|x| x.integer().ok_or_else(|| usage("InvalidElement", "group coordinates must be integers")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(group.element(&c))
}

fn triples(rows: Vec<Triple>, rank: usize, nvars: usize) -> Result<ModElem, CliError> {
    let mut m = ModElem::zero(rank, nvars);
    for t in rows {
        if t.generator >= rank {
            return Err(usage("InvalidElement", format!("generator index {} out of range", t.generator)));
        }
        if t.exponents.len() != nvars || t.exponents.iter().any(|e| *e < 0) {
            return Err(usage("InvalidElement", format!("exponent vector {:?} is not a monomial", t.exponents)));
        }
        let c = t.coefficient.rational().ok_or_else(|| usage("InvalidElement", "coefficient is not a rational"))?;
        m.components[t.generator].add_term(t.exponents, c);
    }
    Ok(m)
}

/// Generator degrees and relations of a module file.
pub fn parse_module_json(text: &str, cox: &Arc<CoxRingData>) -> Result<(Vec<GroupElement>, Vec<ModElem>), CliError> {
    let file: ModuleFile = serde_json::from_str(text).map_err(parse_error)?;
    let group = cox.grading().class_group();
    let degrees =
        file.generator_degrees.iter().map(|d| group_element(group, d)).collect::<Result<Vec<_>, _>>()?;
    let rank = degrees.len();
    let relations = file
        .relations
        .into_iter()
        .map(|r| triples(r, rank, cox.ray_count()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((degrees, relations))
}

/// Submodule generators in the module dialect: a list of triple lists.
pub fn parse_elements_json(text: &str, rank: usize, nvars: usize) -> Result<Vec<ModElem>, CliError> {
    let rows: Vec<Vec<Triple>> = serde_json::from_str(text).map_err(parse_error)?;
    rows.into_iter().map(|r| triples(r, rank, nvars)).collect()
}

/// Comma-separated polynomials in `Z1, ..., Zk`.
pub fn parse_polys(text: &str, nvars: usize) -> Result<Vec<Poly>, CliError> {
    let names = cox_variable_names(nvars);
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            Poly::parse(s, &names).map_err(|e: PolyParseError| CliError::Parse { line: 1, reason: e.to_string() })
        })
        .collect()
}

/// A JSON list of coordinate lists, e.g. `[[2]]`.
pub fn parse_elements_list(text: &str, group: &AbelianGroup) -> Result<Vec<GroupElement>, CliError> {
    let rows: Vec<Vec<Exact>> = serde_json::from_str(text).map_err(parse_error)?;
    rows.iter().map(|r| group_element(group, r)).collect()
}

/// Degrees as a JSON list of coordinate lists, or `a..b` (inclusive) when
/// the class group has a single coordinate.
pub fn parse_degrees(text: &str, group: &AbelianGroup) -> Result<Vec<GroupElement>, CliError> {
    if let Some((a, b)) = text.split_once("..") {
        if group.coord_len() != 1 {
            return Err(usage("InvalidElement", "ranges need a class group with one coordinate"));
        }
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| usage("InvalidElement", format!("bad bound {s:?}")));
        let (a, b) = (parse(a)?, parse(b)?);
        return Ok((a..=b).map(|d| group.element_i64(&[d])).collect());
    }
    parse_elements_list(text, group)
}

pub fn parse_cone(text: &str) -> Result<Vec<usize>, CliError> {
    let mut cone = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage("InvalidCone", format!("bad ray index {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    cone.sort_unstable();
    cone.dedup();
    Ok(cone)
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn element(g: &GroupElement) -> Value {
    Value::Array(g.coords().iter().map(int).collect())
}

pub fn elements(gs: &[GroupElement]) -> Value {
    Value::Array(gs.iter().map(element).collect())
}

pub fn group(a: &AbelianGroup) -> Value {
    json!({
        "free_rank": a.free_rank,
        "torsion_orders": a.torsion_orders.iter().map(int).collect::<Vec<_>>(),
    })
}

pub fn index(i: &Index) -> Value {
    Value::String(i.to_string())
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn monomial(e: &[i64]) -> Value {
    poly(&Poly::term(e))
}

/// A module element as its list of `{generator, exponents, coefficient}`
/// triples.
pub fn mod_elem(m: &ModElem) -> Value {
    Value::Array(
        m.terms()
            .map(|(i, e, c)| json!({ "generator": i, "exponents": e, "coefficient": format_rational(c) }))
            .collect(),
    )
}

pub fn mod_elems(ms: &[ModElem]) -> Value {
    Value::Array(ms.iter().map(mod_elem).collect())
}

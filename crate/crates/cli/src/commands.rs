//! One function per subcommand; each returns the JSON result object.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use coxsheaf::cox::{monoid_chart_is_iso, CoxRingData};
use coxsheaf::gradmod::{degree_component, is_torsion, saturate_submodule, POWER_CAP};
use coxsheaf::polyfan::fan_properties;
use coxsheaf::schemeprops::scheme_property_report;
use coxsheaf::sheaf::{
    eta_check, global_sections_degree, is_zero_sheaf, lift_finite_type, sheafify, xi_forward, xi_preimage_exact,
    ChartElement, SectionMode, SheafCoverPresentation,
};
use coxsheaf::{
    build_cox, build_grading, classify_subgroup, corpus, picard_group, BaseRingFlags, GradedModulePresentation,
    GradedSubmodule, GradingData, Verdict,
};
use serde_json::{json, Value};

use crate::io::{self, CliError, ParsedFan};

/// Largest denominator bound tried when none is given.
pub const K_CAP: usize = 8;

pub struct Setup {
    pub fan: ParsedFan,
    pub grading: GradingData,
}

pub fn load(fan: &str, corpus_dir: &Path) -> Result<Setup, CliError> {
    let path = io::resolve_fan_path(fan, corpus_dir);
    let fan = io::parse_fan_json(&io::read(&path)?)?;
    let grading = build_grading(&fan.fan);
    Ok(Setup { fan, grading })
}

pub struct Options<'a> {
    pub subgroup: Option<&'a str>,
    pub flags: &'a [String],
    pub no_default_flags: bool,
}

fn flags(opts: &Options) -> Result<BaseRingFlags, CliError> {
    let mut f = if opts.no_default_flags { BaseRingFlags::default() } else { BaseRingFlags::rationals() };
    for item in opts.flags {
        let bad = || CliError::Usage("InvalidFlag", format!("expected name=true|false, got {item:?}"));
        let (name, value) = item.split_once('=').ok_or_else(bad)?;
        let value: bool = value.trim().parse().map_err(|_| bad())?;
        if !f.set(name.trim(), value) {
            return Err(CliError::Usage("InvalidFlag", format!("unknown flag {name:?}")));
        }
    }
    Ok(f.closure())
}

fn subgroup(s: &Setup, opts: &Options) -> Result<coxsheaf::SubgroupB, CliError> {
    let gens = match opts.subgroup {
        Some(text) => io::parse_elements_list(text, s.grading.class_group())?,
        None => s.grading.whole_group(),
    };
    classify_subgroup(&s.grading, &gens).map_err(|e| CliError::Usage("InvalidElement", e.to_string()))
}

fn cox(s: &Setup, opts: &Options) -> Result<Arc<CoxRingData>, CliError> {
    Ok(Arc::new(build_cox(&s.grading, &subgroup(s, opts)?, flags(opts)?)?))
}

fn subgroup_json(b: &coxsheaf::SubgroupB) -> Value {
    json!({
        "generators": io::elements(&b.generators),
        "index": io::index(&b.index_in_a),
        "big": b.is_big,
        "small": b.is_small,
    })
}

pub fn fan_validate(s: &Setup) -> Value {
    let f = &s.fan.fan;
    json!({
        "fan": io::fan_json(f),
        "ray_count": f.ray_count(),
        "cone_count": f.cones().len(),
        "cones": f.cones(),
    })
}

fn verdict(v: &Verdict) -> (Value, Value) {
    match v {
        Verdict::Holds => (json!("holds"), Value::Null),
        Verdict::Fails => (json!("fails"), Value::Null),
        Verdict::Conditional(c) => (json!("conditional"), json!(c)),
    }
}

pub fn fan_report(s: &Setup, opts: &Options) -> Result<Value, CliError> {
    let p = fan_properties(&s.fan.fan);
    let pic = picard_group(&s.grading);
    let b = subgroup(s, opts)?;
    let f = flags(opts)?;
    let report = scheme_property_report(&p, &f, &pic, &b);
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            let (verdict, condition) = verdict(&v.verdict);
            json!({ "property": v.property, "verdict": verdict, "condition": condition, "rule": v.provenance })
        })
        .collect();
    let declared: serde_json::Map<String, Value> =
        BaseRingFlags::NAMES.iter().map(|n| (n.to_string(), json!(f.get(n)))).collect();
    Ok(json!({
        "properties": {
            "full": p.is_full,
            "complete": p.is_complete,
            "simplicial": p.is_simplicial,
            "regular": p.is_regular,
            "cone_equals_span": p.cone_equals_span,
            "empty": p.is_empty,
        },
        "picard": { "generators": io::elements(&pic.generators), "index": io::index(&pic.index_in_a) },
        "subgroup": subgroup_json(&b),
        "base_ring": declared,
        "verdicts": verdicts,
    }))
}

pub fn grading_build(s: &Setup) -> Value {
    let g = &s.grading;
    let c = g.c_matrix();
    json!({
        "class_group": io::group(g.class_group()),
        "c_matrix": c.to_rows().iter().map(|r| r.iter().map(io::int).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ray_degrees": io::elements(g.ray_degrees()),
        "c_injective": g.is_c_injective(),
    })
}

pub fn pic(s: &Setup) -> Value {
    let p = picard_group(&s.grading);
    json!({
        "generators": io::elements(&p.generators),
        "index": io::index(&p.index_in_a),
        "big": p.index_in_a.is_finite(),
        "equals_class_group": p.index_in_a == coxsheaf::Index::Finite(1.into()),
    })
}

pub fn subgroup_classify(s: &Setup, opts: &Options) -> Result<Value, CliError> {
    Ok(subgroup_json(&subgroup(s, opts)?))
}

pub fn cox_build(s: &Setup, opts: &Options, bound: usize) -> Result<Value, CliError> {
    let cox = cox(s, opts)?;
    let names = coxsheaf::groeb::cox_variable_names(cox.ray_count());
    let cones: Vec<Value> = cox
        .zhat_table()
        .iter()
        .map(|(cone, z)| {
            json!({
                "cone": cone,
                "zhat": io::monomial(z),
                "m": cox.m_exponent_table()[cone],
                "strongly_graded": cox.strongly_graded_at(cone).expect("cone of the fan"),
            })
        })
        .collect();
    let gamma = cox.gamma_is_iso();
    let pos = cox.is_positively_graded(bound);
    let witness = pos.witness.as_ref().map(|w| {
        json!({ "degree": io::element(&w.degree), "monomial": io::monomial(&w.monomial), "opposite": io::monomial(&w.opposite) })
    });
    Ok(json!({
        "variables": names,
        "degrees": io::elements(cox.variable_degrees()),
        "subgroup": subgroup_json(cox.subgroup()),
        "cones": cones,
        "irrelevant": cox.irrelevant_generators().iter().map(|e| io::monomial(e)).collect::<Vec<_>>(),
        "restricted_irrelevant": cox.restricted_irrelevant_generators().iter().map(|e| io::monomial(e)).collect::<Vec<_>>(),
        "gamma_iso": gamma.is_iso,
        "gamma_witness": gamma.witness.as_ref().map(|w| w.iter().map(io::int).collect::<Vec<_>>()),
        "positively_graded": pos.positive,
        "positivity_witness": witness,
        "positivity_bound": bound,
    }))
}

pub fn chart(s: &Setup, opts: &Options, cone: &[usize]) -> Result<Value, CliError> {
    let cox = cox(s, opts)?;
    let c = cox.local_chart(cone)?;
    Ok(json!({
        "cone": c.cone,
        "zhat": io::monomial(cox.zhat(&c.cone)?),
        "m": cox.m_exponent(&c.cone)?,
        "strongly_graded": cox.strongly_graded_at(&c.cone)?,
        "degree_zero_generators": c.degree_zero_generators,
        "toric_relations": c.toric_relations,
        "monoid_chart": c.monoid_chart.iter().map(|(u, e)| json!({ "u": u, "exponents": e })).collect::<Vec<_>>(),
        "monoid_chart_iso": monoid_chart_is_iso(&cox, &c),
    }))
}

fn ideal_submodule(f: &GradedModulePresentation, text: &str) -> Result<GradedSubmodule, CliError> {
    let gens = io::parse_polys(text, f.nvars())?;
    Ok(GradedSubmodule::ideal(f, &gens)?)
}

pub fn ideal_saturate(s: &Setup, opts: &Options, ideal: &str) -> Result<Value, CliError> {
    let cox = cox(s, opts)?;
    let f = GradedModulePresentation::structure(cox);
    let g = ideal_submodule(&f, ideal)?;
    let sat = saturate_submodule(&g)?;
    let generators: Vec<Value> = sat.reduced_generators().iter().map(|m| io::poly(&m.components[0])).collect();
    Ok(json!({
        "ideal": g.element_generators.iter().map(|m| io::poly(&m.components[0])).collect::<Vec<_>>(),
        "generators": generators,
        "b_generators": sat.element_generators.iter().map(|m| io::poly(&m.components[0])).collect::<Vec<_>>(),
        "already_saturated": sat == g,
    }))
}

pub struct ModuleSource<'a> {
    pub module: Option<&'a PathBuf>,
    pub quotient: Option<&'a str>,
}

fn module(cox: Arc<CoxRingData>, src: &ModuleSource) -> Result<GradedModulePresentation, CliError> {
    if let Some(path) = src.module {
        let (degrees, relations) = io::parse_module_json(&io::read(path)?, &cox)?;
        return Ok(GradedModulePresentation::new(cox, degrees, relations)?);
    }
    if let Some(text) = src.quotient {
        let gens = io::parse_polys(text, cox.ray_count())?;
        return Ok(GradedModulePresentation::quotient(cox, &gens)?);
    }
    Ok(GradedModulePresentation::structure(cox))
}

fn module_json(f: &GradedModulePresentation) -> Value {
    json!({ "generator_degrees": io::elements(f.generator_degrees()), "relations": io::mod_elems(f.relations()) })
}

/// The sheaf at the given bound, or at the least stabilized bound `≤ K_CAP`.
fn sheaf(f: &GradedModulePresentation, k: Option<usize>) -> Result<SheafCoverPresentation, CliError> {
    if let Some(k) = k {
        return Ok(sheafify(f, k)?);
    }
    let mut s = sheafify(f, 1)?;
    for k in 2..=K_CAP {
        if s.is_stabilized() {
            break;
        }
        s = sheafify(f, k)?;
    }
    Ok(s)
}

pub fn module_sections(
    s: &Setup,
    opts: &Options,
    src: &ModuleSource,
    degrees: &str,
    k: Option<usize>,
) -> Result<Value, CliError> {
    let cox = cox(s, opts)?;
    let degrees = io::parse_degrees(degrees, cox.grading().class_group())?;
    let f = module(cox, src)?;
    let sh = sheaf(&f, k)?;
    let mut rows = Vec::new();
    for d in &degrees {
        let shift = global_sections_degree(&sh, d, SectionMode::ViaShift)?;
        let twist = global_sections_degree(&sh, d, SectionMode::ViaTwist)?;
        let eta = eta_check(&sh, d)?;
        let component = degree_component(&f, d, None)?;
        rows.push(json!({
            "degree": io::element(d),
            "component_dimension": component.dimension(),
            "via_shift": shift.dimension(),
            "via_twist": twist.dimension(),
            "eta_bijective": eta.is_bijective(),
            "eta_rank": eta.image_rank,
            "stabilized": shift.stabilized && twist.stabilized,
        }));
    }
    Ok(json!({ "module": module_json(&f), "denominator_exponent": sh.denominator_exponent(), "sections": rows }))
}

pub fn module_torsion(
    s: &Setup,
    opts: &Options,
    src: &ModuleSource,
    power_cap: Option<usize>,
    k: Option<usize>,
) -> Result<Value, CliError> {
    let f = module(cox(s, opts)?, src)?;
    let cert = is_torsion(&f, power_cap.unwrap_or(POWER_CAP));
    let sh = sheaf(&f, k)?;
    let zero = is_zero_sheaf(&sh)?;
    Ok(json!({
        "module": module_json(&f),
        "torsion": cert.torsion,
        "power_cap": cert.power_cap,
        "cones": cert.cones,
        "exponents": cert.exponents,
        "failing": cert.failing.as_ref().map(|(i, c)| json!({ "generator": i, "cone": c })),
        "zero_sheaf": zero,
        "denominator_exponent": sh.denominator_exponent(),
    }))
}

pub struct SubmoduleSource<'a> {
    pub ideal: Option<&'a str>,
    pub elements: Option<&'a PathBuf>,
}

fn submodule(f: &GradedModulePresentation, src: &SubmoduleSource) -> Result<GradedSubmodule, CliError> {
    if let Some(path) = src.elements {
        let gens = io::parse_elements_json(&io::read(path)?, f.rank(), f.nvars())?;
        return Ok(GradedSubmodule::new(f, gens)?);
    }
    match src.ideal {
        Some(text) if f.rank() == 1 => ideal_submodule(f, text),
        Some(_) => Err(CliError::Usage("RankMismatch", "--ideal needs a module with one generator".into())),
        None => Err(CliError::Usage("MissingSubmodule", "give --ideal or --elements".into())),
    }
}

fn chart_element(x: &ChartElement) -> Value {
    json!({ "numerator": io::mod_elem(&x.numerator), "power": x.power })
}

fn family_json(t: &coxsheaf::ChartFamily) -> Value {
    Value::Array(
        t.charts
            .iter()
            .map(|c| {
                json!({
                    "cone": c.cone,
                    "generators": c.generators.iter().map(chart_element).collect::<Vec<_>>(),
                    "saturated": io::mod_elems(&c.saturated),
                })
            })
            .collect(),
    )
}

pub fn sheaf_xi_check(
    s: &Setup,
    opts: &Options,
    src: &ModuleSource,
    sub: &SubmoduleSource,
) -> Result<Value, CliError> {
    let f = module(cox(s, opts)?, src)?;
    let g = submodule(&f, sub)?;
    let family = xi_forward(&g)?;
    let sat = saturate_submodule(&g)?;
    let pre = xi_preimage_exact(&family, &f)?;
    Ok(json!({
        "submodule": io::mod_elems(&g.element_generators),
        "saturation": io::mod_elems(&sat.reduced_generators()),
        "preimage": io::mod_elems(&pre.reduced_generators()),
        "preimage_equals_saturation": pre == sat,
        "saturated": sat == g,
        "family": family_json(&family),
        "family_compatible": family.is_compatible(&f)?,
        "family_zero": family.is_zero(&f)?,
    }))
}

pub fn sheaf_lift(s: &Setup, opts: &Options, src: &ModuleSource, sub: &SubmoduleSource) -> Result<Value, CliError> {
    let f = module(cox(s, opts)?, src)?;
    let g = submodule(&f, sub)?;
    let family = xi_forward(&g)?;
    let lifted = lift_finite_type(&family, &f)?;
    let round_trip = xi_forward(&lifted)? == family;
    Ok(json!({
        "family": family_json(&family),
        "lifted": io::mod_elems(&lifted.element_generators),
        "round_trip": round_trip,
    }))
}

pub fn corpus_list(dir: &Path) -> Value {
    let entries: Vec<Value> = corpus::extended()
        .iter()
        .map(|c| {
            let path = dir.join(format!("{}.json", c.name));
            json!({ "name": c.name, "path": path.display().to_string(), "present": path.exists() })
        })
        .collect();
    json!({ "directory": dir.display().to_string(), "fans": entries })
}

/// Writes every corpus fan as JSON into `dir`.
pub fn corpus_export(dir: &Path) -> Result<Value, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut written = Vec::new();
    for c in corpus::extended() {
        let path = dir.join(format!("{}.json", c.name));
        let text = crate::render(&io::fan_json(&c.fan));
        std::fs::write(&path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        written.push(path.display().to_string());
    }
    Ok(json!({ "written": written }))
}

//! Quasicoherent sheaves on the Cox scheme, presented on the affine cover by
//! maximal cones.
//!
//! For `F = (E/K)_B` and a maximal cone `σ` let `U_σ = Ẑ_σ^{m_σ}`. A chart
//! element is `x / U_σ^p` with `x ∈ E` homogeneous of degree `p·deg U_σ`; it
//! vanishes iff `x ∈ Sat_σ = (K : Ẑ_σ^∞)`. A sub-`𝒪`-module of a chart is
//! stored through its saturated numerator module in `E`, which determines it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cox::{CoxError, CoxRingData, Exponent};
use crate::gradmod::{degree_component, restrict_to_b, GradedModulePresentation, GradedSubmodule, GradmodError};
use crate::groeb::{
    canonical, module_intersection, module_leading_term, module_normal_form, module_saturate_by_element,
    ModElem, MonomialOrder, Poly,
};
use crate::intlat::{hermite_normal_form, to_i64, GroupElement};
use crate::polyfan::{cone_from_inequalities, hilbert_basis, Vector};
use crate::qlin::{nullspace, rank, Q, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("denominator bound must be at least 1")]
    ZeroBound,
    #[error("chart {0:?} has not stabilized at k = {1}")]
    Unstabilized(Vec<usize>, usize),
    #[error("degree {0} is not in B")]
    DegreeNotInB(String),
    #[error("chart families have different cones")]
    CoverMismatch,
    #[error("no power U^N with N ≤ {1} moves a generator of chart {0:?} into the family")]
    LiftCap(Vec<usize>, usize),
    #[error(transparent)]
    Cox(#[from] CoxError),
    #[error(transparent)]
    Module(#[from] GradmodError),
}

/// Cap on the exponent `N` in [`lift_finite_type`].
pub const LIFT_CAP: usize = 64;

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// `numerator / U_σ^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartElement {
    pub numerator: ModElem,
    pub power: usize,
}

/// The chart `F_(σ)` with generators whose denominators are bounded by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModuleWindow {
    pub cone: Vec<usize>,
    /// Exponent of `U_σ`.
    pub unit: Exponent,
    pub denominator_exponent: usize,
    /// Nonzero generators `e_i·t` over `S_(σ)`, `t` running over twist
    /// generators of degree `−d_i`.
    pub generators: Vec<ChartElement>,
    /// Canonical generators of `Sat_σ`.
    pub saturated_relations: Vec<ModElem>,
    /// Whether every generator has denominator exponent `≤ k`, so the
    /// window generates the whole chart.
    pub stabilized: bool,
}

impl LocalModuleWindow {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero_element(&self, x: &ChartElement) -> bool {
        module_normal_form(&x.numerator, &self.saturated_relations, ORDER).is_zero()
    }
}

/// Localization data on `σ ∩ τ` for a pair of maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub overlap: Vec<usize>,
    /// Canonical generators of `(K : Ẑ_{σ∩τ}^∞)`.
    pub saturated_relations: Vec<ModElem>,
}

#[derive(Clone, Debug)]
pub struct SheafCoverPresentation {
    pub charts: BTreeMap<Vec<usize>, LocalModuleWindow>,
    pub restrictions: Vec<Restriction>,
    pub origin: GradedModulePresentation,
}

impl SheafCoverPresentation {
    pub fn denominator_exponent(&self) -> usize {
        self.charts.values().next().map_or(1, |c| c.denominator_exponent)
    }

    pub fn is_stabilized(&self) -> bool {
        self.charts.values().all(|c| c.stabilized)
    }

    /// Restrictions are well defined: `Sat_σ ⊆ Sat_{σ∩τ}` for every pair.
    pub fn is_compatible(&self) -> bool {
        self.restrictions.iter().all(|r| {
            [&r.left, &r.right].iter().all(|c| {
                self.charts[*c]
                    .saturated_relations
                    .iter()
                    .all(|x| module_normal_form(x, &r.saturated_relations, ORDER).is_zero())
            })
        })
    }

    fn check_stabilized(&self) -> Result<(), SheafError> {
        match self.charts.values().find(|c| !c.stabilized) {
            Some(c) => Err(SheafError::Unstabilized(c.cone.clone(), c.denominator_exponent)),
            None => Ok(()),
        }
    }
}

fn unit_of(cox: &CoxRingData, cone: &[usize]) -> Result<Exponent, SheafError> {
    let m = cox.m_exponent(cone)?;
    Ok(cox.zhat(cone)?.iter().map(|z| z * m).collect())
}

/// Smallest `p` with `t + p·U ≥ 0`, and `t + p·U`.
fn clear(t: &[i64], unit: &[i64]) -> (Exponent, usize) {
    let p = t
        .iter()
        .zip(unit)
        .filter(|(x, _)| **x < 0)
        .map(|(x, u)| (-x + u - 1) / u)
        .max()
        .unwrap_or(0);
    (t.iter().zip(unit).map(|(x, u)| x + p * u).collect(), p as usize)
}

fn saturate(f: &GradedModulePresentation, gens: &[ModElem], zhat: &[i64]) -> Vec<ModElem> {
    module_saturate_by_element(f.ambient(), gens, &Poly::term(zhat))
}

/// Laurent monomials of degree `α` that are nonnegative on `σ_1`, minimal
/// up to multiplication by degree-zero ones; this generates
/// `(S_{Ẑ_σ})_α` over `S_(σ)`.
pub fn twist_generators(cox: &CoxRingData, alpha: &GroupElement, cone: &[usize]) -> Result<Vec<Exponent>, SheafError> {
    cox.zhat(cone)?;
    if !cox.in_b(alpha) {
        return Err(SheafError::DegreeNotInB(alpha.to_string()));
    }
    let g = cox.grading();
    let k = g.ray_count();
    let n = g.fan().rank();
    let c_cols: Vec<Vec<BigInt>> = (0..n).map(|j| g.c_matrix().column(j)).collect();
    let basis: Vec<Vector> = hermite_normal_form(&c_cols, k).iter().map(|r| to_i64(r)).collect();
    let v0 = to_i64(&g.lift(alpha));
    let r = basis.len();
    // Homogenize: (y, s) with s·v0 + yB ≥ 0 on σ_1 and s ≥ 0; level one
    // Hilbert basis elements are the module generators.
    let mut ineqs: Vec<Vector> = cone
        .iter()
        .map(|&i| basis.iter().map(|b| b[i]).chain(std::iter::once(v0[i])).collect())
        .collect();
    let mut level = vec![0; r + 1];
    level[r] = 1;
    ineqs.push(level);
    let hb = hilbert_basis(r + 1, &cone_from_inequalities(r + 1, &ineqs));
    let mut out: Vec<Exponent> = hb
        .iter()
        .filter(|y| y[r] == 1)
        .map(|y| (0..k).map(|i| v0[i] + (0..r).map(|j| y[j] * basis[j][i]).sum::<i64>()).collect())
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

/// `𝒮_B(F)` on the maximal-cone cover with denominators bounded by `k`.
pub fn sheafify(f: &GradedModulePresentation, k: usize) -> Result<SheafCoverPresentation, SheafError> {
    if k == 0 {
        return Err(SheafError::ZeroBound);
    }
    let cox = f.cox();
    let group = cox.grading().class_group();
    let mut charts = BTreeMap::new();
    for cone in cox.maximal_cones() {
        let unit = unit_of(cox, &cone)?;
        let sat = saturate(f, f.relations(), cox.zhat(&cone)?);
        let mut generators = Vec::new();
        let mut stabilized = true;
        for (i, d) in f.generator_degrees().iter().enumerate() {
            for t in twist_generators(cox, &group.neg(d), &cone)? {
                let (num, p) = clear(&t, &unit);
                let x = f.basis_element(i, &num);
                if !module_normal_form(&x, &sat, ORDER).is_zero() {
                    stabilized &= p <= k;
                    generators.push(ChartElement { numerator: x, power: p });
                }
            }
        }
        charts.insert(
            cone.clone(),
            LocalModuleWindow { cone, unit, denominator_exponent: k, generators, saturated_relations: sat, stabilized },
        );
    }
    let cones: Vec<Vec<usize>> = charts.keys().cloned().collect();
    let mut restrictions = Vec::new();
    for (a, left) in cones.iter().enumerate() {
        for right in &cones[a + 1..] {
            let overlap: Vec<usize> = left.iter().filter(|i| right.contains(i)).copied().collect();
            let saturated_relations = saturate(f, f.relations(), cox.zhat(&overlap)?);
            restrictions.push(Restriction { left: left.clone(), right: right.clone(), overlap, saturated_relations });
        }
    }
    Ok(SheafCoverPresentation { charts, restrictions, origin: f.clone() })
}

/// Whether every chart is zero.
pub fn is_zero_sheaf(s: &SheafCoverPresentation) -> Result<bool, SheafError> {
    s.check_stabilized()?;
    Ok(s.charts.values().all(LocalModuleWindow::is_zero))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionMode {
    /// `Γ(Y, 𝒮_B(F(α)))`.
    ViaShift,
    /// Sections of the image of `𝒮_B(F) ⊗ 𝒮_B(S_B(α)) → 𝒮_B(F(α))`.
    ViaTwist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSections {
    pub degree: GroupElement,
    pub mode: SectionMode,
    pub denominator_exponent: usize,
    /// A basis; each section is given by one chart element per maximal cone,
    /// in the order of `charts`.
    pub basis: Vec<Vec<ChartElement>>,
    /// Whether the dimension at `k + 1` agrees.
    pub stabilized: bool,
}

impl GlobalSections {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Degree-`β` part of `E / gb` by standard monomials.
struct Window {
    monomials: Vec<(usize, Exponent)>,
    index: BTreeMap<(usize, Exponent), usize>,
}

impl Window {
    fn new(f: &GradedModulePresentation, gb: &[ModElem], beta: &GroupElement) -> Result<Window, SheafError> {
        let monomials = if f.cox().in_b(beta) {
            let (all, _) = f.monomials_of_degree(beta, None)?;
            let leads: Vec<(usize, Exponent)> = gb.iter().filter_map(|r| module_leading_term(r, ORDER)).collect();
            all.into_iter()
                .filter(|(i, v)| !leads.iter().any(|(p, e)| p == i && e.iter().zip(v).all(|(a, b)| a <= b)))
                .collect()
        } else {
            Vec::new()
        };
        let index = monomials.iter().cloned().enumerate().map(|(j, m)| (m, j)).collect();
        Ok(Window { monomials, index })
    }

    fn len(&self) -> usize {
        self.monomials.len()
    }

    fn coordinates(&self, x: &ModElem, gb: &[ModElem]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len()];
        for (p, e, c) in module_normal_form(x, gb, ORDER).terms() {
            v[self.index[&(p, e.clone())]] = c.clone();
        }
        v
    }

    fn element(&self, coeffs: &[Q], rank: usize, nvars: usize) -> ModElem {
        let mut x = ModElem::zero(rank, nvars);
        for ((p, e), c) in self.monomials.iter().zip(coeffs) {
            if !c.is_zero() {
                x.components[*p].add_term(e.clone(), c.clone());
            }
        }
        x
    }
}

/// Numerators of `e_i·t'·t` for twist generators `t'` of `−d_i` and `t` of
/// `α`, saturated together with `K`.
fn twisted_image(f: &GradedModulePresentation, cone: &[usize], alpha: &GroupElement) -> Result<Vec<ModElem>, SheafError> {
    let cox = f.cox();
    let group = cox.grading().class_group();
    let unit = unit_of(cox, cone)?;
    let outer = twist_generators(cox, alpha, cone)?;
    let mut gens: Vec<ModElem> = f.relations().to_vec();
    for (i, d) in f.generator_degrees().iter().enumerate() {
        for s in twist_generators(cox, &group.neg(d), cone)? {
            for t in &outer {
                let prod: Exponent = s.iter().zip(t).map(|(a, b)| a + b).collect();
                gens.push(f.basis_element(i, &clear(&prod, &unit).0));
            }
        }
    }
    Ok(saturate(f, &gens, cox.zhat(cone)?))
}

struct ChartSpace {
    window: Window,
    /// Basis of the allowed subspace, in window coordinates.
    basis: Vec<Vec<Q>>,
    unit: Exponent,
}

fn chart_spaces(
    s: &SheafCoverPresentation,
    alpha: &GroupElement,
    mode: SectionMode,
    k: usize,
) -> Result<Vec<ChartSpace>, SheafError> {
    let f = &s.origin;
    let cox = f.cox();
    let g = cox.grading();
    let group = g.class_group();
    let mut out = Vec::new();
    for chart in s.charts.values() {
        let shift = group.scale(&BigInt::from(k), &g.degree(&chart.unit));
        let beta = group.add(alpha, &shift);
        let window = Window::new(f, &chart.saturated_relations, &beta)?;
        let n = window.len();
        let basis = match mode {
            SectionMode::ViaShift => (0..n)
                .map(|j| {
                    let mut v = vec![Q::zero(); n];
                    v[j] = Q::one();
                    v
                })
                .collect(),
            SectionMode::ViaTwist => {
                let image = twisted_image(f, &chart.cone, alpha)?;
                let target = Window::new(f, &image, &beta)?;
                let columns: Vec<Vec<Q>> = window
                    .monomials
                    .iter()
                    .map(|(i, e)| target.coordinates(&f.basis_element(*i, e), &image))
                    .collect();
                let m: QMatrix = (0..target.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
                nullspace(&m, n)
            }
        };
        out.push(ChartSpace { window, basis, unit: chart.unit.clone() });
    }
    Ok(out)
}

fn scaled(u: &[i64], k: usize) -> Exponent {
    u.iter().map(|x| x * k as i64).collect()
}

fn equalizer(
    s: &SheafCoverPresentation,
    alpha: &GroupElement,
    mode: SectionMode,
    k: usize,
) -> Result<Vec<Vec<ChartElement>>, SheafError> {
    let f = &s.origin;
    let (rank_e, nvars) = (f.rank(), f.nvars());
    let spaces = chart_spaces(s, alpha, mode, k)?;
    let cones: Vec<&Vec<usize>> = s.charts.keys().collect();
    let mut offsets = Vec::new();
    let mut total = 0;
    for sp in &spaces {
        offsets.push(total);
        total += sp.basis.len();
    }
    let elements: Vec<Vec<ModElem>> =
        spaces.iter().map(|sp| sp.basis.iter().map(|b| sp.window.element(b, rank_e, nvars)).collect()).collect();
    let mut rows: BTreeMap<(usize, usize, Exponent), Vec<Q>> = BTreeMap::new();
    for (ri, r) in s.restrictions.iter().enumerate() {
        let a = cones.iter().position(|c| **c == r.left).expect("chart");
        let b = cones.iter().position(|c| **c == r.right).expect("chart");
        for (this, other, sign) in [(a, b, Q::one()), (b, a, -Q::one())] {
            let lift = scaled(&spaces[other].unit, k);
            for (j, x) in elements[this].iter().enumerate() {
                let y = module_normal_form(&x.mul_term(&lift, &sign), &r.saturated_relations, ORDER);
                for (p, e, c) in y.terms() {
                    let row = rows.entry((ri, p, e.clone())).or_insert_with(|| vec![Q::zero(); total]);
                    row[offsets[this] + j] += c;
                }
            }
        }
    }
    let m: QMatrix = rows.into_values().collect();
    Ok(nullspace(&m, total)
        .into_iter()
        .map(|v| {
            spaces
                .iter()
                .zip(&elements)
                .enumerate()
                .map(|(c, (_, xs))| {
                    let mut num = ModElem::zero(rank_e, nvars);
                    for (j, x) in xs.iter().enumerate() {
                        let coeff = &v[offsets[c] + j];
                        if !coeff.is_zero() {
                            num = num.add(&x.scale(coeff));
                        }
                    }
                    ChartElement { numerator: num, power: k }
                })
                .collect()
        })
        .collect())
}

/// Sections of degree `α` by the Čech equalizer over the maximal-cone cover,
/// with chart elements `x / U_σ^k`, `k` the sheaf's denominator bound.
pub fn global_sections_degree(
    s: &SheafCoverPresentation,
    alpha: &GroupElement,
    mode: SectionMode,
) -> Result<GlobalSections, SheafError> {
    s.check_stabilized()?;
    let cox = s.origin.cox();
    if !cox.in_b(alpha) {
        return Err(SheafError::DegreeNotInB(alpha.to_string()));
    }
    let k = s.denominator_exponent();
    let basis = equalizer(s, alpha, mode, k)?;
    let next = equalizer(s, alpha, mode, k + 1)?.len();
    Ok(GlobalSections { degree: alpha.clone(), mode, denominator_exponent: k, stabilized: next == basis.len(), basis })
}

/// The comparison `F_α → Γ(Y, 𝒮_B(F(α)))` on a stabilized window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaCheck {
    pub degree: GroupElement,
    pub source_dimension: usize,
    pub section_dimension: usize,
    pub image_rank: usize,
    pub stabilized: bool,
}

impl EtaCheck {
    pub fn is_bijective(&self) -> bool {
        self.image_rank == self.source_dimension && self.image_rank == self.section_dimension
    }
}

pub fn eta_check(s: &SheafCoverPresentation, alpha: &GroupElement) -> Result<EtaCheck, SheafError> {
    let sections = global_sections_degree(s, alpha, SectionMode::ViaShift)?;
    let f = &s.origin;
    let k = sections.denominator_exponent;
    let source = degree_component(f, alpha, None)?;
    let spaces = chart_spaces(s, alpha, SectionMode::ViaShift, k)?;
    let images: QMatrix = source
        .basis
        .iter()
        .map(|(i, e)| {
            s.charts
                .values()
                .zip(&spaces)
                .flat_map(|(chart, sp)| {
                    let x = f.basis_element(*i, e).mul_term(&scaled(&chart.unit, k), &Q::one());
                    sp.window.coordinates(&x, &chart.saturated_relations)
                })
                .collect()
        })
        .collect();
    Ok(EtaCheck {
        degree: alpha.clone(),
        source_dimension: source.dimension(),
        section_dimension: sections.dimension(),
        image_rank: rank(&images),
        stabilized: sections.stabilized,
    })
}

/// A sub-`𝒪_(σ)`-module of a chart.
#[derive(Clone, Debug)]
pub struct ChartSubmodule {
    pub cone: Vec<usize>,
    pub generators: Vec<ChartElement>,
    /// Canonical generators of `(numerators + K : Ẑ_σ^∞)`.
    pub saturated: Vec<ModElem>,
}

impl PartialEq for ChartSubmodule {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.saturated == other.saturated
    }
}

impl ChartSubmodule {
    pub fn contains(&self, x: &ChartElement) -> bool {
        module_normal_form(&x.numerator, &self.saturated, ORDER).is_zero()
    }
}

/// A family of chart submodules over the maximal cones.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartFamily {
    pub charts: Vec<ChartSubmodule>,
}

impl ChartFamily {
    pub fn is_zero(&self, f: &GradedModulePresentation) -> Result<bool, SheafError> {
        let cox = f.cox();
        for c in &self.charts {
            let sat = saturate(f, f.relations(), cox.zhat(&c.cone)?);
            if c.saturated != sat {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether chart `σ` and chart `τ` agree on `σ ∩ τ` for every pair.
    pub fn is_compatible(&self, f: &GradedModulePresentation) -> Result<bool, SheafError> {
        let cox = f.cox();
        for (a, x) in self.charts.iter().enumerate() {
            for y in &self.charts[a + 1..] {
                let overlap: Vec<usize> = x.cone.iter().filter(|i| y.cone.contains(i)).copied().collect();
                let z = cox.zhat(&overlap)?;
                if saturate(f, &x.saturated, z) != saturate(f, &y.saturated, z) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `Ξ_F(G)`: on each chart, the submodule generated by `g·t` for generators
/// `g` of `G` and twist generators `t` of degree `−deg g`.
pub fn xi_forward(g: &GradedSubmodule) -> Result<ChartFamily, SheafError> {
    let f = &g.ambient;
    let cox = f.cox();
    let group = cox.grading().class_group();
    let mut charts = Vec::new();
    for cone in cox.maximal_cones() {
        let unit = unit_of(cox, &cone)?;
        let zhat = cox.zhat(&cone)?;
        let sat = saturate(f, f.relations(), zhat);
        let mut generators = Vec::new();
        for x in g.element_generators.iter().filter(|x| !x.is_zero()) {
            let d = f.element_degree(x).expect("generators are homogeneous");
            for t in twist_generators(cox, &group.neg(&d), &cone)? {
                let (num, p) = clear(&t, &unit);
                let y = x.mul_term(&num, &Q::one());
                if !module_normal_form(&y, &sat, ORDER).is_zero() {
                    generators.push(ChartElement { numerator: y, power: p });
                }
            }
        }
        let mut gens: Vec<ModElem> = generators.iter().map(|c| c.numerator.clone()).collect();
        gens.extend(f.relations().iter().cloned());
        let saturated = saturate(f, &gens, zhat);
        charts.push(ChartSubmodule { cone, generators, saturated });
    }
    Ok(ChartFamily { charts })
}

fn check_cover(t: &ChartFamily, f: &GradedModulePresentation) -> Result<(), SheafError> {
    let cones: Vec<&Vec<usize>> = t.charts.iter().map(|c| &c.cone).collect();
    let expected = f.cox().maximal_cones();
    if cones.len() != expected.len() || cones.iter().zip(&expected).any(|(a, b)| *a != b) {
        return Err(SheafError::CoverMismatch);
    }
    Ok(())
}

/// All `x ∈ F_α`, `α` in the window, whose image lies in `t` on every chart.
pub fn xi_preimage(t: &ChartFamily, f: &GradedModulePresentation, window: &[GroupElement]) -> Result<GradedSubmodule, SheafError> {
    check_cover(t, f)?;
    let m = f.ambient();
    let mut meet: Option<Vec<ModElem>> = None;
    for c in &t.charts {
        meet = Some(match meet {
            None => c.saturated.clone(),
            Some(prev) => module_intersection(m, &prev, &c.saturated),
        });
    }
    let meet = meet.unwrap_or_else(|| canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>()));
    let relations = f.relation_basis();
    let mut gens = Vec::new();
    for alpha in window {
        let source = Window::new(f, relations, alpha)?;
        let target = Window::new(f, &meet, alpha)?;
        let columns: Vec<Vec<Q>> = source
            .monomials
            .iter()
            .map(|(i, e)| target.coordinates(&f.basis_element(*i, e), &meet))
            .collect();
        let mat: QMatrix = (0..target.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        for v in nullspace(&mat, source.len()) {
            gens.push(source.element(&v, m.rank, m.nvars));
        }
    }
    Ok(GradedSubmodule::new(f, gens)?)
}

/// A finitely generated `G ⊆ F` with `Ξ_F(G) = t`: each chart generator's
/// numerator times the least power of `U_σ` that lies in `t` on every chart.
pub fn lift_finite_type(t: &ChartFamily, f: &GradedModulePresentation) -> Result<GradedSubmodule, SheafError> {
    check_cover(t, f)?;
    let cox = f.cox();
    let mut lifted: Vec<ModElem> = Vec::new();
    for c in &t.charts {
        let unit = unit_of(cox, &c.cone)?;
        for gen in &c.generators {
            let n = (0..=LIFT_CAP)
                .find(|&n| {
                    let y = gen.numerator.mul_term(&scaled(&unit, n), &Q::one());
                    t.charts.iter().all(|d| module_normal_form(&y, &d.saturated, ORDER).is_zero())
                })
                .ok_or_else(|| SheafError::LiftCap(c.cone.clone(), LIFT_CAP))?;
            let y = gen.numerator.mul_term(&scaled(&unit, n), &Q::one());
            if !lifted.contains(&y) {
                lifted.push(y);
            }
        }
    }
    let relations = f.relations();
    let mut i = 0;
    while i < lifted.len() {
        let mut rest: Vec<ModElem> = lifted.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
        rest.extend(relations.iter().cloned());
        if module_normal_form(&lifted[i], &canonical(&rest), ORDER).is_zero() {
            lifted.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(GradedSubmodule::new(f, lifted)?)
}

/// The full saturated preimage `∩_σ (numerators_σ + K : Ẑ_σ^∞)`, restricted
/// to degrees in `B`, without a degree window.
pub fn xi_preimage_exact(t: &ChartFamily, f: &GradedModulePresentation) -> Result<GradedSubmodule, SheafError> {
    check_cover(t, f)?;
    let m = f.ambient();
    let mut meet = canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>());
    for c in &t.charts {
        meet = module_intersection(m, &meet, &c.saturated);
    }
    Ok(GradedSubmodule { ambient: f.clone(), element_generators: restrict_to_b(f, &meet) })
}

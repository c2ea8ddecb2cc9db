//! The Cox ring `S` with its `A`-grading, the monomials `Ẑ_σ`, the
//! irrelevant ideal and its `B`-restriction, and the degree-zero charts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::grading::{order_modulo, GradingData, SubgroupB};
use crate::intlat::{hermite_normal_form, integer_kernel, to_i64, GroupElement, Index, IntMatrix};
use crate::polyfan::{cone_from_inequalities, dot, hilbert_basis, Vector};
use crate::schemeprops::BaseRingFlags;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("subgroup B has infinite index in the class group")]
    NotBig,
    #[error("cone {0:?} is not in the fan")]
    ConeNotInFan(Vec<usize>),
}

/// Exponent vector of a monomial in the Cox variables, in `Σ_1` order.
pub type Exponent = Vec<i64>;

pub fn total_degree(v: &[i64]) -> i64 {
    v.iter().sum()
}

pub fn divides(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

/// Order used for monomial lists: total degree, then lexicographically decreasing.
pub fn monomial_order(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| b.cmp(a))
}

/// Minimal elements under `u ≼ v`, deduplicated and sorted.
pub fn minimalize_by(mut gens: Vec<Exponent>, below: impl Fn(&[i64], &[i64]) -> bool) -> Vec<Exponent> {
    gens.sort_by(|a, b| monomial_order(a, b));
    gens.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| below(h, &g)) {
            out.push(g);
        }
    }
    out
}

/// Minimal monomial generators under ordinary divisibility.
pub fn minimalize(gens: Vec<Exponent>) -> Vec<Exponent> {
    minimalize_by(gens, divides)
}

/// Nonnegative vectors of length `k` with entry sum exactly `d`.
pub fn vectors_of_sum(k: usize, d: usize) -> Vec<Exponent> {
    fn rec(pos: usize, left: i64, v: &mut Vec<i64>, out: &mut Vec<Exponent>) {
        if pos + 1 == v.len() {
            v[pos] = left;
            out.push(v.clone());
            return;
        }
        for x in (0..=left).rev() {
            v[pos] = x;
            rec(pos + 1, left - x, v, out);
        }
        v[pos] = 0;
    }
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d as i64, &mut vec![0; k], &mut out);
    out
}

/// The Cox ring of a fan restricted to a big subgroup `B`.
#[derive(Clone, Debug)]
pub struct CoxRingData {
    grading: GradingData,
    subgroup: SubgroupB,
    flags: BaseRingFlags,
    zhat: BTreeMap<Vec<usize>, Exponent>,
    m_exponents: BTreeMap<Vec<usize>, i64>,
    irrelevant: Vec<Exponent>,
    restricted_irrelevant: Vec<Exponent>,
}

fn zhat_of(k: usize, cone: &[usize]) -> Exponent {
    (0..k).map(|i| if cone.contains(&i) { 0 } else { 1 }).collect()
}

pub fn build_cox(g: &GradingData, b: &SubgroupB, flags: BaseRingFlags) -> Result<CoxRingData, CoxError> {
    let Index::Finite(index) = &b.index_in_a else {
        return Err(CoxError::NotBig);
    };
    let index = index.to_usize().expect("subgroup index fits in usize");
    let fan = g.fan();
    let k = g.ray_count();
    let mut zhat = BTreeMap::new();
    let mut m_exponents = BTreeMap::new();
    for c in fan.cones() {
        let z = zhat_of(k, c);
        let m = match order_modulo(g, &g.degree(&z), b) {
            Index::Finite(m) => m.to_i64().expect("exponent fits in i64"),
            Index::Infinite => unreachable!("B has finite index"),
        };
        zhat.insert(c.clone(), z);
        m_exponents.insert(c.clone(), m);
    }
    let maximal = fan.maximal_cones();
    let irrelevant = minimalize(maximal.iter().map(|c| zhat[c].clone()).collect());
    // A minimal generator Ẑ_σ·x^r of I ∩ S_B has |r| < [A:B]: among |r| ≥ [A:B]
    // unit steps some nonempty partial sum has degree in B and can be removed.
    let mut candidates = Vec::new();
    for c in &maximal {
        for d in 0..index {
            for r in vectors_of_sum(k, d) {
                let v: Exponent = zhat[c].iter().zip(&r).map(|(a, b)| a + b).collect();
                if b.contains(g, &g.degree(&v)) {
                    candidates.push(v);
                }
            }
        }
    }
    let restricted_irrelevant = minimalize_by(candidates, |u, v| {
        divides(u, v) && {
            let diff: Vec<i64> = v.iter().zip(u).map(|(a, b)| a - b).collect();
            b.contains(g, &g.degree(&diff))
        }
    });
    Ok(CoxRingData {
        grading: g.clone(),
        subgroup: b.clone(),
        flags,
        zhat,
        m_exponents,
        irrelevant,
        restricted_irrelevant,
    })
}

/// Degree-zero part `S_(σ)` of the localization at `Ẑ_σ`, with its toric
/// description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalChart {
    pub cone: Vec<usize>,
    /// Exponent vectors of Laurent monomials generating `S_(σ)` as an algebra.
    pub degree_zero_generators: Vec<Exponent>,
    /// Integer relations `λ` with `Σ λ_i g_i = 0`; the trivial relation between
    /// a unit and its inverse is omitted.
    pub toric_relations: Vec<Vec<i64>>,
    /// Hilbert basis `u` of `σ∨ ∩ M` paired with `c(u)`.
    pub monoid_chart: Vec<(Vector, Exponent)>,
}

/// Whether a point `v ≥ 0` on `σ_1` lies in the degree-zero monoid.
pub fn in_degree_zero_monoid(g: &GradingData, cone: &[usize], v: &[i64]) -> bool {
    cone.iter().all(|&i| v[i] >= 0) && g.class_group().is_zero_element(&g.degree(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCheck {
    pub is_iso: bool,
    /// Nonzero `u ∈ M` with `c(u) = 0` when `γ` fails to be an isomorphism.
    pub witness: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityWitness {
    pub degree: GroupElement,
    pub monomial: Exponent,
    pub opposite: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    /// Monomials of degrees `α ≠ 0` and `−α` in `S_B`, when found within the bound.
    pub witness: Option<PositivityWitness>,
}

impl CoxRingData {
    pub fn grading(&self) -> &GradingData {
        &self.grading
    }

    pub fn subgroup(&self) -> &SubgroupB {
        &self.subgroup
    }

    pub fn flags(&self) -> &BaseRingFlags {
        &self.flags
    }

    pub fn ray_count(&self) -> usize {
        self.grading.ray_count()
    }

    pub fn variable_degrees(&self) -> &[GroupElement] {
        self.grading.ray_degrees()
    }

    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.grading.fan().maximal_cones()
    }

    fn check_cone(&self, cone: &[usize]) -> Result<Vec<usize>, CoxError> {
        let mut s = cone.to_vec();
        s.sort_unstable();
        if self.zhat.contains_key(&s) {
            Ok(s)
        } else {
            Err(CoxError::ConeNotInFan(cone.to_vec()))
        }
    }

    pub fn zhat(&self, cone: &[usize]) -> Result<&Exponent, CoxError> {
        Ok(&self.zhat[&self.check_cone(cone)?])
    }

    /// Least `m ≥ 1` with `Ẑ_σ^m ∈ S_B`.
    pub fn m_exponent(&self, cone: &[usize]) -> Result<i64, CoxError> {
        Ok(self.m_exponents[&self.check_cone(cone)?])
    }

    pub fn zhat_table(&self) -> &BTreeMap<Vec<usize>, Exponent> {
        &self.zhat
    }

    pub fn m_exponent_table(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.m_exponents
    }

    /// Minimal monomial generators of `I`.
    pub fn irrelevant_generators(&self) -> &[Exponent] {
        &self.irrelevant
    }

    /// Minimal monomial generators of `I_B` as an ideal of `S_B`.
    pub fn restricted_irrelevant_generators(&self) -> &[Exponent] {
        &self.restricted_irrelevant
    }

    pub fn degree(&self, v: &[i64]) -> GroupElement {
        self.grading.degree(v)
    }

    pub fn in_b(&self, alpha: &GroupElement) -> bool {
        self.subgroup.contains(&self.grading, alpha)
    }

    pub fn local_chart(&self, cone: &[usize]) -> Result<LocalChart, CoxError> {
        let cone = self.check_cone(cone)?;
        let g = &self.grading;
        let k = g.ray_count();
        let n = g.fan().rank();
        let c_cols: Vec<Vec<BigInt>> = (0..n).map(|j| g.c_matrix().column(j)).collect();
        let basis: Vec<Vector> = hermite_normal_form(&c_cols, k).iter().map(|r| to_i64(r)).collect();
        let r = basis.len();
        let ineqs: Vec<Vector> = cone.iter().map(|&i| basis.iter().map(|b| b[i]).collect()).collect();
        let mut generators: Vec<Exponent> = if r == 0 {
            Vec::new()
        } else {
            let gens = cone_from_inequalities(r, &ineqs);
            hilbert_basis(r, &gens)
                .iter()
                .map(|y| (0..k).map(|i| y.iter().zip(&basis).map(|(a, b)| a * b[i]).sum()).collect())
                .collect()
        };
        generators.sort_by(|a, b| b.cmp(a));
        let rays = g.fan().cone(&cone);
        let duals = hilbert_basis(n, &crate::polyfan::dual_generators(n, rays.rays()));
        let monoid_chart = duals.into_iter().map(|u| {
            let cu = g.c_apply(&u);
            (u, cu)
        });
        Ok(LocalChart {
            toric_relations: toric_relations(&generators),
            cone,
            degree_zero_generators: generators,
            monoid_chart: monoid_chart.collect(),
        })
    }

    pub fn gamma_is_iso(&self) -> GammaCheck {
        let kernel = integer_kernel(self.grading.c_matrix());
        GammaCheck { is_iso: kernel.is_empty(), witness: kernel.into_iter().next() }
    }

    /// Whether every degree of `B` is the degree of a unit of `S_{B,σ}`,
    /// i.e. `B ⊆ a(Z^{Σ_1∖σ_1})`.
    pub fn strongly_graded_at(&self, cone: &[usize]) -> Result<bool, CoxError> {
        let cone = self.check_cone(cone)?;
        let g = &self.grading;
        let units = g.span_of_rays((0..g.ray_count()).filter(|i| !cone.contains(i)));
        Ok(g.class_group().is_subgroup(&self.subgroup.generators, &units))
    }

    /// Exact positivity of the `B`-grading of `S_B`; `bound` limits only the
    /// total degree of the witness monomials.
    pub fn is_positively_graded(&self, bound: usize) -> Positivity {
        let g = &self.grading;
        let group = g.class_group();
        let moving = g.non_lineality_rays();
        let span = g.span_of_rays(moving.iter().copied());
        let meet = group.intersection(&span, &self.subgroup.generators);
        if meet.is_empty() {
            return Positivity { positive: true, witness: None };
        }
        let k = g.ray_count();
        let mut by_degree: BTreeMap<GroupElement, Exponent> = BTreeMap::new();
        let mut ordered: Vec<(GroupElement, Exponent)> = Vec::new();
        for d in 1..=bound {
            for v in vectors_of_sum(k, d) {
                let alpha = g.degree(&v);
                if group.is_zero_element(&alpha) || !self.in_b(&alpha) {
                    continue;
                }
                by_degree.entry(alpha.clone()).or_insert_with(|| v.clone());
                ordered.push((alpha, v));
            }
        }
        let witness = ordered.into_iter().find_map(|(alpha, v)| {
            by_degree.get(&group.neg(&alpha)).map(|w| PositivityWitness { degree: alpha, monomial: v, opposite: w.clone() })
        });
        Positivity { positive: false, witness }
    }
}

fn toric_relations(generators: &[Exponent]) -> Vec<Vec<i64>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let k = generators[0].len();
    let keep: Vec<usize> = (0..generators.len())
        .filter(|&j| {
            let neg: Exponent = generators[j].iter().map(|x| -x).collect();
            !generators[..j].contains(&neg)
        })
        .collect();
    let cols: Vec<Vec<BigInt>> =
        keep.iter().map(|&j| generators[j].iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = IntMatrix::from_columns(&cols, k);
    integer_kernel(&m)
        .iter()
        .map(|lam| {
            let mut full = vec![0i64; generators.len()];
            for (pos, &j) in keep.iter().enumerate() {
                full[j] = lam[pos].to_i64().expect("relation coefficient fits in i64");
            }
            full
        })
        .collect()
}

/// Checks that a chart's monoid data is a bijection onto the degree-zero
/// monoid on generators: every `c(u)` lies in the monoid and every
/// degree-zero generator is `c(u)` for some `u ∈ σ∨ ∩ M`.
pub fn monoid_chart_is_iso(cox: &CoxRingData, chart: &LocalChart) -> bool {
    let g = cox.grading();
    let rays = g.fan().cone(&chart.cone);
    let into = chart.monoid_chart.iter().all(|(u, cu)| *cu == g.c_apply(u) && in_degree_zero_monoid(g, &chart.cone, cu));
    let onto = chart.degree_zero_generators.iter().all(|v| {
        let rhs: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        crate::intlat::solve_integer(g.c_matrix(), &rhs)
            .map(|u| to_i64(&u))
            .is_some_and(|u| rays.rays().iter().all(|r| dot(r, &u) >= 0))
    });
    into && onto && g.is_c_injective()
}

//! Finitely presented `B`-graded `S_B`-modules, their degree components,
//! submodules, `I_B`-saturation and `I_B`-torsion.
//!
//! A module is presented as `E/K` with `E = ⊕ S(−d_i)`, `d_i ∈ B`, and `K`
//! generated by homogeneous relations of degree in `B`; the `S_B`-module is
//! the restriction of `E/K` to degrees in `B`. Since `K·S ∩ E_B = K·S_B`,
//! membership and colon computations can be done over `S`.

use std::sync::{Arc, OnceLock};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cox::{vectors_of_sum, CoxRingData, Exponent};
use crate::grading::degree_monomials;
use crate::groeb::{
    canonical, module_contains, module_leading_term, module_saturate_by_monomials,
    module_saturate_iterated, FreeModule, GroebError, ModElem, MonomialOrder, Poly,
};
use crate::intlat::{GroupElement, Index};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradmodError {
    #[error("degree fiber is infinite and no enumeration bound was given")]
    UnboundedFiber,
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("degree {0} is not in B")]
    DegreeNotInB(String),
    #[error("element has rank {0}, expected {1}")]
    WrongRank(usize, usize),
    #[error(transparent)]
    Groebner(#[from] GroebError),
}

/// Default cap on `k` in torsion certificates.
pub const POWER_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    cox: Arc<CoxRingData>,
    generator_degrees: Vec<GroupElement>,
    relations: Vec<ModElem>,
    relation_gb: Arc<OnceLock<Vec<ModElem>>>,
}

impl PartialEq for GradedModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.generator_degrees == other.generator_degrees && self.relation_basis() == other.relation_basis()
    }
}

impl GradedModulePresentation {
    pub fn new(
        cox: Arc<CoxRingData>,
        generator_degrees: Vec<GroupElement>,
        relations: Vec<ModElem>,
    ) -> Result<Self, GradmodError> {
        for d in &generator_degrees {
            if !cox.in_b(d) {
                return Err(GradmodError::DegreeNotInB(d.to_string()));
            }
        }
        let m = GradedModulePresentation { cox, generator_degrees, relations, relation_gb: Arc::default() };
        for (i, r) in m.relations.iter().enumerate() {
            if r.rank() != m.rank() {
                return Err(GradmodError::WrongRank(r.rank(), m.rank()));
            }
            if r.is_zero() {
                continue;
            }
            let d = m.element_degree(r).ok_or(GradmodError::NotHomogeneous(i))?;
            if !m.cox.in_b(&d) {
                return Err(GradmodError::DegreeNotInB(d.to_string()));
            }
        }
        Ok(m)
    }

    /// `⊕ S_B(−d_i)`.
    pub fn free(cox: Arc<CoxRingData>, degrees: Vec<GroupElement>) -> Result<Self, GradmodError> {
        Self::new(cox, degrees, Vec::new())
    }

    /// `S_B` itself.
    pub fn structure(cox: Arc<CoxRingData>) -> Self {
        let zero = cox.grading().class_group().zero();
        Self::free(cox, vec![zero]).expect("0 lies in B")
    }

    /// The zero module.
    pub fn zero(cox: Arc<CoxRingData>) -> Self {
        Self::free(cox, Vec::new()).expect("no generators")
    }

    /// `S_B / J` for a homogeneous ideal with generators of degree in `B`.
    pub fn quotient(cox: Arc<CoxRingData>, ideal: &[Poly]) -> Result<Self, GradmodError> {
        let zero = cox.grading().class_group().zero();
        Self::new(cox, vec![zero], ideal.iter().map(|p| ModElem::from_poly(p.clone())).collect())
    }

    pub fn cox(&self) -> &Arc<CoxRingData> {
        &self.cox
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn nvars(&self) -> usize {
        self.cox.ray_count()
    }

    pub fn ambient(&self) -> FreeModule {
        FreeModule { rank: self.rank(), nvars: self.nvars() }
    }

    pub fn generator_degrees(&self) -> &[GroupElement] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &[ModElem] {
        &self.relations
    }

    /// Reduced Gröbner basis of the relation submodule `K`.
    pub fn relation_basis(&self) -> &[ModElem] {
        self.relation_gb.get_or_init(|| canonical(&self.relations))
    }

    /// `F(α)`, with `F(α)_β = F_{α+β}`.
    pub fn shift(&self, alpha: &GroupElement) -> Result<Self, GradmodError> {
        let group = self.cox.grading().class_group();
        let degrees = self.generator_degrees.iter().map(|d| group.sub(d, alpha)).collect();
        Self::new(self.cox.clone(), degrees, self.relations.clone())
    }

    pub fn element_degree(&self, x: &ModElem) -> Option<GroupElement> {
        x.homogeneous_degree(self.cox.grading(), &self.generator_degrees)
    }

    /// `x^v e_i`.
    pub fn basis_element(&self, i: usize, v: &[i64]) -> ModElem {
        ModElem::basis_term(self.rank(), i, v, num_traits::One::one())
    }

    /// Whether `x` vanishes in `F`.
    pub fn is_zero_element(&self, x: &ModElem) -> bool {
        module_contains(self.relation_basis(), x)
    }

    /// All monomials `x^v e_i` of `E_α` within the total-degree bound; the
    /// flag tells whether the enumeration is known to be exhaustive.
    pub fn monomials_of_degree(
        &self,
        alpha: &GroupElement,
        enum_bound: Option<usize>,
    ) -> Result<(Vec<(usize, Exponent)>, bool), GradmodError> {
        let g = self.cox.grading();
        let group = g.class_group();
        let mut out = Vec::new();
        let mut exhaustive = true;
        for (i, d) in self.generator_degrees.iter().enumerate() {
            let target = group.sub(alpha, d);
            let auto = g.total_degree_bound(&target);
            let bound = match (auto, enum_bound) {
                (Some(b), _) if b < 0 => continue,
                (Some(b), Some(u)) => {
                    exhaustive &= (b as usize) <= u;
                    (b as usize).min(u)
                }
                (Some(b), None) => b as usize,
                (None, Some(u)) => {
                    exhaustive = false;
                    u
                }
                (None, None) => return Err(GradmodError::UnboundedFiber),
            };
            for v in degree_monomials(g, &target, &[], bound) {
                out.push((i, v));
            }
        }
        Ok((out, exhaustive))
    }
}

/// Basis of `F_α` over `Q` by standard monomials of the relation module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComponent {
    pub degree: GroupElement,
    pub basis: Vec<(usize, Exponent)>,
    /// False when a user bound may have cut off part of the fiber.
    pub exhaustive: bool,
}

impl DegreeComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Standard monomials of `E_α` modulo the relation basis.
pub fn degree_component(
    f: &GradedModulePresentation,
    alpha: &GroupElement,
    enum_bound: Option<usize>,
) -> Result<DegreeComponent, GradmodError> {
    if !f.cox.in_b(alpha) {
        return Ok(DegreeComponent { degree: alpha.clone(), basis: Vec::new(), exhaustive: true });
    }
    let (monomials, exhaustive) = f.monomials_of_degree(alpha, enum_bound)?;
    let leads: Vec<(usize, Exponent)> =
        f.relation_basis().iter().filter_map(|r| module_leading_term(r, MonomialOrder::GrevLex)).collect();
    let basis = monomials
        .into_iter()
        .filter(|(i, v)| !leads.iter().any(|(p, e)| p == i && e.iter().zip(v).all(|(a, b)| a <= b)))
        .collect();
    Ok(DegreeComponent { degree: alpha.clone(), basis, exhaustive })
}

/// A graded submodule `G ⊆ F` given by homogeneous generators in `E`.
#[derive(Clone, Debug)]
pub struct GradedSubmodule {
    pub ambient: GradedModulePresentation,
    pub element_generators: Vec<ModElem>,
}

impl PartialEq for GradedSubmodule {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.canonical_generators() == other.canonical_generators()
    }
}

impl GradedSubmodule {
    pub fn new(ambient: &GradedModulePresentation, gens: Vec<ModElem>) -> Result<Self, GradmodError> {
        for (i, x) in gens.iter().enumerate() {
            if x.rank() != ambient.rank() {
                return Err(GradmodError::WrongRank(x.rank(), ambient.rank()));
            }
            if x.is_zero() {
                continue;
            }
            let d = ambient.element_degree(x).ok_or(GradmodError::NotHomogeneous(i))?;
            if !ambient.cox.in_b(&d) {
                return Err(GradmodError::DegreeNotInB(d.to_string()));
            }
        }
        Ok(GradedSubmodule { ambient: ambient.clone(), element_generators: gens })
    }

    /// Ideal of `S_B` from polynomial generators.
    pub fn ideal(ambient: &GradedModulePresentation, gens: &[Poly]) -> Result<Self, GradmodError> {
        Self::new(ambient, gens.iter().map(|p| ModElem::from_poly(p.clone())).collect())
    }

    /// Generators of the preimage `G + K` in `E`.
    pub fn preimage_generators(&self) -> Vec<ModElem> {
        let mut v = self.element_generators.clone();
        v.extend(self.ambient.relations().iter().cloned());
        v
    }

    /// Reduced Gröbner basis of `(G + K)·S`; equal submodules of `F` give
    /// equal lists.
    pub fn canonical_generators(&self) -> Vec<ModElem> {
        canonical(&self.preimage_generators())
    }

    /// Canonical generators with the relation module's elements removed.
    pub fn reduced_generators(&self) -> Vec<ModElem> {
        let k = self.ambient.relation_basis();
        self.canonical_generators().into_iter().filter(|g| !module_contains(k, g)).collect()
    }

    pub fn contains(&self, x: &ModElem) -> bool {
        submodule_membership(x, self)
    }
}

pub fn submodule_membership(x: &ModElem, g: &GradedSubmodule) -> bool {
    x.is_zero() || module_contains(&g.canonical_generators(), x)
}

/// Elements `x^r·g` of degree in `B`, `r` minimal: they generate `(M)_B` over
/// `S_B` for the `S`-module `M` generated by `gens`.
pub(crate) fn restrict_to_b(f: &GradedModulePresentation, gens: &[ModElem]) -> Vec<ModElem> {
    let cox = &f.cox;
    let index = match &cox.subgroup().index_in_a {
        Index::Finite(i) => i.to_usize().expect("index fits in usize"),
        Index::Infinite => unreachable!("B is big"),
    };
    if index == 1 {
        return canonical(gens);
    }
    let group = cox.grading().class_group();
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let Some(d) = f.element_degree(g) else {
            continue;
        };
        for s in 0..index {
            for r in vectors_of_sum(f.nvars(), s) {
                if cox.in_b(&group.add(&d, &cox.degree(&r))) {
                    out.push(g.mul_term(&r, &num_traits::One::one()));
                }
            }
        }
    }
    canonical(&out)
}

/// `∪_m (G :_F I_B^m)`, computed as `∩_σ (G + K : Ẑ_σ^∞)` over maximal cones
/// and restricted to degrees in `B`.
pub fn saturate_submodule(g: &GradedSubmodule) -> Result<GradedSubmodule, GradmodError> {
    let f = &g.ambient;
    let cox = &f.cox;
    let zhats: Vec<Exponent> = cox.maximal_cones().iter().map(|c| cox.zhat(c).expect("maximal cone").clone()).collect();
    let sat = module_saturate_by_monomials(f.ambient(), &g.preimage_generators(), &zhats);
    Ok(GradedSubmodule { ambient: f.clone(), element_generators: restrict_to_b(f, &sat) })
}

/// Saturation by iterating `G ↦ (G : I_B)` until it stabilizes.
pub fn saturate_submodule_iterated(g: &GradedSubmodule, cap: usize) -> Result<(GradedSubmodule, usize), GradmodError> {
    let f = &g.ambient;
    let ideal: Vec<Poly> = f.cox.restricted_irrelevant_generators().iter().map(|e| Poly::term(e)).collect();
    let (sat, steps) = module_saturate_iterated(f.ambient(), &g.preimage_generators(), &ideal, cap)?;
    Ok((GradedSubmodule { ambient: f.clone(), element_generators: restrict_to_b(f, &sat) }, steps))
}

pub fn is_saturated(g: &GradedSubmodule) -> Result<bool, GradmodError> {
    Ok(saturate_submodule(g)? == *g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate {
    pub torsion: bool,
    /// Per generator and maximal cone, least `k ≤ cap` with `Ẑ_σ^k e_i ∈ K`.
    pub exponents: Vec<Vec<Option<usize>>>,
    pub cones: Vec<Vec<usize>>,
    /// First `(generator, cone)` without such `k`.
    pub failing: Option<(usize, Vec<usize>)>,
    pub power_cap: usize,
}

pub fn is_torsion(f: &GradedModulePresentation, power_cap: usize) -> TorsionCertificate {
    let cox = &f.cox;
    let cones = cox.maximal_cones();
    let k = f.relation_basis();
    let mut exponents = Vec::new();
    let mut failing = None;
    for i in 0..f.rank() {
        let mut row = Vec::new();
        for c in &cones {
            let z = cox.zhat(c).expect("maximal cone");
            let found = (0..=power_cap).find(|&p| {
                let v: Exponent = z.iter().map(|x| x * p as i64).collect();
                module_contains(k, &f.basis_element(i, &v))
            });
            if found.is_none() && failing.is_none() {
                failing = Some((i, c.clone()));
            }
            row.push(found);
        }
        exponents.push(row);
    }
    TorsionCertificate { torsion: failing.is_none(), exponents, cones, failing, power_cap }
}

/// The ideal `I_B^m` of `S` by monomial generators.
pub fn restricted_irrelevant_power(cox: &CoxRingData, m: usize) -> Vec<Poly> {
    let gens = cox.restricted_irrelevant_generators();
    let k = cox.ray_count();
    let mut acc: Vec<Exponent> = vec![vec![0; k]];
    for _ in 0..m {
        let mut next = Vec::new();
        for a in &acc {
            for g in gens {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        acc = crate::cox::minimalize(next);
    }
    acc.iter().map(|e| Poly::term(e)).collect()
}

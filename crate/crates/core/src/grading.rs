//! The exact sequence `M → Z^Σ1 → A → 0`, ray degrees, the Picard subgroup
//! and classification of subgroups `B ⊆ A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intlat::{
    cokernel_presentation, element_order_in_quotient, integer_kernel, lattice_intersection, subgroup_index,
    AbelianGroup, Cokernel, GroupElement, Index, IntMatrix,
};
use crate::polyfan::{cone_from_inequalities, h_representation, Fan, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("element has {0} coordinates, the class group needs {1}")]
    InvalidElement(usize, usize),
}

/// Degree bookkeeping for the Cox ring of a fan.
#[derive(Clone, Debug)]
pub struct GradingData {
    fan: Fan,
    c_matrix: IntMatrix,
    coker: Cokernel,
    ray_degrees: Vec<GroupElement>,
}

pub fn build_grading(f: &Fan) -> GradingData {
    let c_matrix = IntMatrix::from_i64_rows(f.rays(), f.rank());
    let coker = cokernel_presentation(&c_matrix);
    let ray_degrees = (0..f.ray_count())
        .map(|i| {
            let mut e = vec![0i64; f.ray_count()];
            e[i] = 1;
            coker.project_i64(&e)
        })
        .collect();
    GradingData { fan: f.clone(), c_matrix, coker, ray_degrees }
}

impl GradingData {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Rows indexed by `Σ_1`; row `ρ` is `ρ_N`.
    pub fn c_matrix(&self) -> &IntMatrix {
        &self.c_matrix
    }

    pub fn class_group(&self) -> &AbelianGroup {
        &self.coker.group
    }

    pub fn ray_degrees(&self) -> &[GroupElement] {
        &self.ray_degrees
    }

    pub fn ray_count(&self) -> usize {
        self.fan.ray_count()
    }

    /// `a(v)` for an exponent vector in `Z^Σ1`.
    pub fn degree(&self, v: &[i64]) -> GroupElement {
        self.coker.project_i64(v)
    }

    pub fn degree_big(&self, v: &[BigInt]) -> GroupElement {
        self.coker.project(v)
    }

    /// Some `v ∈ Z^Σ1` with `a(v) = α`.
    pub fn lift(&self, alpha: &GroupElement) -> Vec<BigInt> {
        self.coker.lift(alpha)
    }

    /// `c(u)`.
    pub fn c_apply(&self, u: &[i64]) -> Vec<i64> {
        self.fan.rays().iter().map(|r| r.iter().zip(u).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GradingError> {
        let n = self.class_group().coord_len();
        if coords.len() != n {
            return Err(GradingError::InvalidElement(coords.len(), n));
        }
        Ok(self.class_group().element_i64(coords))
    }

    pub fn is_c_injective(&self) -> bool {
        integer_kernel(&self.c_matrix).is_empty()
    }

    /// Canonical generators of `A` itself.
    pub fn whole_group(&self) -> Vec<GroupElement> {
        let g = self.class_group();
        let n = g.coord_len();
        let basis: Vec<GroupElement> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                g.element_i64(&e)
            })
            .collect();
        g.canonical_generators(&basis)
    }

    /// `⟨α_ρ : ρ ∈ rays⟩`.
    pub fn span_of_rays(&self, rays: impl IntoIterator<Item = usize>) -> Vec<GroupElement> {
        let gens: Vec<GroupElement> = rays.into_iter().map(|i| self.ray_degrees[i].clone()).collect();
        self.class_group().canonical_generators(&gens)
    }

    /// A weight `w > 0` on `Z^Σ1` vanishing on `im(c)`, when one exists.
    /// Its existence means every fiber of `a` on monomials is finite.
    pub fn positive_weight(&self) -> Option<Vec<BigInt>> {
        let k = self.ray_count();
        if k == 0 {
            return Some(Vec::new());
        }
        let mut ineqs: Vec<Vector> = (0..k)
            .map(|i| {
                let mut e = vec![0i64; k];
                e[i] = 1;
                e
            })
            .collect();
        for j in 0..self.fan.rank() {
            let col: Vector = self.fan.rays().iter().map(|r| r[j]).collect();
            ineqs.push(col.iter().map(|x| -x).collect());
            ineqs.push(col);
        }
        let gens = cone_from_inequalities(k, &ineqs);
        let w: Vec<BigInt> = (0..k).map(|i| gens.iter().map(|g| BigInt::from(g[i])).sum()).collect();
        w.iter().all(Signed::is_positive).then_some(w)
    }

    /// Upper bound on the total degree of monomials of degree `α`, when fibers
    /// are finite; `None` otherwise.
    pub fn total_degree_bound(&self, alpha: &GroupElement) -> Option<i64> {
        let w = self.positive_weight()?;
        if w.is_empty() {
            return Some(0);
        }
        let value: BigInt = w.iter().zip(self.lift(alpha)).map(|(a, b)| a * b).sum();
        let min = w.iter().min().cloned().unwrap_or_else(BigInt::one);
        Some(value.div_floor(&min).max(BigInt::from(-1)).to_i64().unwrap_or(i64::MAX))
    }

    /// Rays `ρ` on which some `u` of the dual of `cone(Σ_1)` is positive.
    pub fn non_lineality_rays(&self) -> Vec<usize> {
        let h = h_representation(self.fan.rank(), self.fan.rays());
        (0..self.ray_count())
            .filter(|&i| h.facets.iter().any(|f| f.iter().zip(&self.fan.rays()[i]).map(|(a, b)| a * b).sum::<i64>() > 0))
            .collect()
    }
}

/// `pic(Σ) ⊆ A` by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardGroup {
    pub generators: Vec<GroupElement>,
    pub index_in_a: Index,
}

/// Classes of vectors `v ∈ Z^Σ1` admitting Cartier data: for every cone
/// `σ` some `u_σ ∈ M` with `u_σ(ρ_N) = v_ρ` for all `ρ ∈ σ_1`.
pub fn picard_group(g: &GradingData) -> PicardGroup {
    let k = g.ray_count();
    let fan = g.fan();
    let c_cols: Vec<Vec<BigInt>> = (0..fan.rank()).map(|j| g.c_matrix.column(j)).collect();
    let mut cartier: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            e
        })
        .collect();
    for sigma in fan.maximal_cones() {
        if k == 0 {
            break;
        }
        let mut local = c_cols.clone();
        for i in (0..k).filter(|i| !sigma.contains(i)) {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            local.push(e);
        }
        cartier = lattice_intersection(&cartier, &local, k);
    }
    let classes: Vec<GroupElement> = cartier.iter().map(|v| g.degree_big(v)).collect();
    let generators = g.class_group().canonical_generators(&classes);
    let index_in_a = subgroup_index(&generators, g.class_group());
    PicardGroup { generators, index_in_a }
}

/// A subgroup `B ⊆ A` with its bigness and smallness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupB {
    pub generators: Vec<GroupElement>,
    pub index_in_a: Index,
    pub is_big: bool,
    pub is_small: bool,
}

impl SubgroupB {
    pub fn contains(&self, g: &GradingData, x: &GroupElement) -> bool {
        g.class_group().contains(&self.generators, x)
    }
}

pub fn classify_subgroup(g: &GradingData, b: &[GroupElement]) -> Result<SubgroupB, GradingError> {
    let group = g.class_group();
    for x in b {
        let len = x.torsion_part.len() + x.free_part.len();
        if len != group.coord_len() || x.torsion_part.len() != group.torsion_orders.len() {
            return Err(GradingError::InvalidElement(len, group.coord_len()));
        }
    }
    let generators = group.canonical_generators(b);
    let index_in_a = subgroup_index(&generators, group);
    let pic = picard_group(g);
    Ok(SubgroupB {
        is_big: index_in_a.is_finite(),
        is_small: group.is_subgroup(&generators, &pic.generators),
        generators,
        index_in_a,
    })
}

/// Least `m ≥ 1` with `m·x ∈ B`.
pub fn order_modulo(g: &GradingData, x: &GroupElement, b: &SubgroupB) -> Index {
    element_order_in_quotient(x, &b.generators, g.class_group())
}

/// All `v` with `a(v) = α`, `v_ρ ≥ 0` off `negatives_allowed`, and
/// `Σ|v_ρ| ≤ bound`, in lexicographically decreasing order.
pub fn degree_monomials(g: &GradingData, alpha: &GroupElement, negatives_allowed: &[usize], bound: usize) -> Vec<Vec<i64>> {
    let k = g.ray_count();
    let mut out = Vec::new();
    let mut v = vec![0i64; k];
    enumerate(g, alpha, negatives_allowed, 0, bound as i64, &mut v, &mut out);
    out
}

fn enumerate(
    g: &GradingData,
    alpha: &GroupElement,
    neg: &[usize],
    pos: usize,
    budget: i64,
    v: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if pos == v.len() {
        if g.degree(v) == *alpha {
            out.push(v.clone());
        }
        return;
    }
    let low = if neg.contains(&pos) { -budget } else { 0 };
    for x in (low..=budget).rev() {
        v[pos] = x;
        enumerate(g, alpha, neg, pos + 1, budget - x.abs(), v, out);
    }
    v[pos] = 0;
}

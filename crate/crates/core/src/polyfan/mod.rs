//! Rational polyhedral cones and fans in `N = Z^n`, with the combinatorial
//! predicates (full, complete, simplicial, regular) used downstream.

mod geometry;

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::intlat::{smith_normal_form, IntMatrix};

pub use geometry::{
    cone_from_inequalities, dual_generators, extreme_rays, h_representation, hilbert_basis, lattice_basis, triangulate,
    HRep, Vector,
};
pub(crate) use geometry::{dot, is_zero, primitive, rank_of};

/// Largest ambient rank accepted by the enumeration-based algorithms.
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("cones {0:?} and {1:?} meet in a set that is not a common face")]
    FanInvalid(Vec<Vector>, Vec<Vector>),
    #[error("cone {0:?} contains a line")]
    NonPointed(Vec<Vector>),
    #[error("ambient rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("vector {0:?} does not have length {1}")]
    DimensionMismatch(Vector, usize),
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone refers to unknown ray index {0}")]
    UnknownRay(usize),
    #[error("ray {0} is not an extreme ray of cone {1:?}")]
    RayNotExtreme(usize, Vec<usize>),
    #[error("ray {0} belongs to no cone")]
    UnusedRay(usize),
}

fn check_rank(rank: usize) -> Result<(), FanError> {
    if rank > MAX_RANK {
        Err(FanError::RankTooLarge(rank))
    } else {
        Ok(())
    }
}

/// A pointed rational cone given by its primitive extreme rays.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vector>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.sorted_rays() == other.sorted_rays()
    }
}

impl Eq for Cone {}

impl Cone {
    /// Builds `cone(gens)`, normalizing to primitive minimal generators.
    pub fn new(ambient_rank: usize, gens: &[Vector]) -> Result<Cone, FanError> {
        check_rank(ambient_rank)?;
        for g in gens {
            if g.len() != ambient_rank {
                return Err(FanError::DimensionMismatch(g.clone(), ambient_rank));
            }
        }
        let hrep = h_representation(ambient_rank, gens);
        if !hrep.is_pointed() {
            return Err(FanError::NonPointed(gens.to_vec()));
        }
        Ok(Cone { ambient_rank, rays: extreme_rays(ambient_rank, gens) })
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone { ambient_rank, rays: Vec::new() }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn sorted_rays(&self) -> Vec<Vector> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.rays, self.ambient_rank)
    }

    pub fn h_representation(&self) -> HRep {
        h_representation(self.ambient_rank, &self.rays)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.h_representation().contains(x)
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Simplicial with rays extending to a lattice basis.
    pub fn is_regular(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&self.rays, self.ambient_rank));
        snf.invariant_factors().iter().all(One::is_one)
    }

    pub fn dual(&self) -> DualCone {
        let hrep = self.h_representation();
        DualCone {
            inequalities: self.rays.clone(),
            generators: dual_generators(self.ambient_rank, &self.rays),
            lineality: hrep.equations,
        }
    }
}

/// `σ∨` in both descriptions: `σ∨ = {u : u·r ≥ 0 for r in inequalities}`
/// and `σ∨ = cone(generators)`; `lineality` is a lattice basis of `σ^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    pub inequalities: Vec<Vector>,
    pub generators: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

pub fn dual_cone(c: &Cone) -> DualCone {
    c.dual()
}

/// A fan: face-closed, pairwise meeting in common faces. Cones are stored
/// as sorted index sets into the ray list, whose order fixes `Σ_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vector>,
    cones: Vec<Vec<usize>>,
}

fn faces_of(rank: usize, rays: &[Vector], ids: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    if !out.insert(ids.to_vec()) {
        return;
    }
    if ids.is_empty() {
        return;
    }
    let gens: Vec<Vector> = ids.iter().map(|&i| rays[i].clone()).collect();
    let hrep = h_representation(rank, &gens);
    for h in &hrep.facets {
        let face: Vec<usize> = ids.iter().copied().filter(|&i| dot(h, &rays[i]) == 0).collect();
        faces_of(rank, rays, &face, out);
    }
}

/// `σ ∩ τ` is a face of `σ`, given the H-description of `τ`.
fn intersection_is_face(rank: usize, sigma: &[Vector], tau: &HRep) -> bool {
    let sh = h_representation(rank, sigma);
    let mut ineqs: Vec<Vector> = sh.facets.iter().chain(&tau.facets).cloned().collect();
    for e in sh.equations.iter().chain(&tau.equations) {
        ineqs.push(e.clone());
        ineqs.push(e.iter().map(|x| -x).collect());
    }
    let meet = cone_from_inequalities(rank, &ineqs);
    // Smallest face of σ containing the intersection.
    let tight: Vec<&Vector> = sh.facets.iter().filter(|h| meet.iter().all(|g| dot(h, g) == 0)).collect();
    sigma.iter().filter(|r| tight.iter().all(|h| dot(h, r) == 0)).all(|r| tau.contains(r))
}

impl Fan {
    /// Fan from a ray list and maximal cones given by ray indices.
    ///
    /// Rays must be nonzero, primitive and distinct; every ray must be used.
    pub fn from_indexed(rank: usize, rays: Vec<Vector>, max_cones: &[Vec<usize>]) -> Result<Fan, FanError> {
        check_rank(rank)?;
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(FanError::DimensionMismatch(r.clone(), rank));
            }
            if is_zero(r) {
                return Err(FanError::ZeroRay(i));
            }
            if primitive(r) != *r {
                return Err(FanError::NonPrimitiveRay(i));
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return Err(FanError::DuplicateRay(j, i));
            }
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for c in max_cones {
            let mut ids: Vec<usize> = c.clone();
            ids.sort_unstable();
            ids.dedup();
            if let Some(&bad) = ids.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::UnknownRay(bad));
            }
            let gens: Vec<Vector> = ids.iter().map(|&i| rays[i].clone()).collect();
            if !h_representation(rank, &gens).is_pointed() {
                return Err(FanError::NonPointed(gens));
            }
            let extreme = extreme_rays(rank, &gens);
            if let Some(&bad) = ids.iter().find(|&&i| !extreme.contains(&rays[i])) {
                return Err(FanError::RayNotExtreme(bad, ids.clone()));
            }
            if !maximal.contains(&ids) {
                maximal.push(ids);
            }
        }
        let mut faces = BTreeSet::new();
        for ids in &maximal {
            faces_of(rank, &rays, ids, &mut faces);
        }
        for i in 0..rays.len() {
            if !faces.contains(&vec![i]) {
                return Err(FanError::UnusedRay(i));
            }
        }
        for (a, sa) in maximal.iter().enumerate() {
            for sb in &maximal[a + 1..] {
                let ga: Vec<Vector> = sa.iter().map(|&i| rays[i].clone()).collect();
                let gb: Vec<Vector> = sb.iter().map(|&i| rays[i].clone()).collect();
                let ha = h_representation(rank, &ga);
                let hb = h_representation(rank, &gb);
                if !intersection_is_face(rank, &ga, &hb) || !intersection_is_face(rank, &gb, &ha) {
                    return Err(FanError::FanInvalid(ga, gb));
                }
            }
        }
        let mut cones: Vec<Vec<usize>> = faces.into_iter().collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(Fan { rank, rays, cones })
    }

    /// The fan with no cones at all.
    pub fn empty(rank: usize) -> Fan {
        Fan { rank, rays: Vec::new(), cones: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `Σ_1` in its fixed order.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// All cones, as sorted ray-index sets, ordered by size then lexicographically.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains_cone(&self, ids: &[usize]) -> bool {
        let mut s = ids.to_vec();
        s.sort_unstable();
        self.cones.binary_search_by(|c| c.len().cmp(&s.len()).then(c.as_slice().cmp(&s))).is_ok()
    }

    /// Cones not strictly contained in another cone, in storage order.
    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i))))
            .cloned()
            .collect()
    }

    pub fn cone(&self, ids: &[usize]) -> Cone {
        let gens: Vec<Vector> = ids.iter().map(|&i| self.rays[i].clone()).collect();
        Cone { ambient_rank: self.rank, rays: gens }
    }

    /// Ray-index set of a geometric cone, if it belongs to the fan.
    pub fn index_of(&self, c: &Cone) -> Option<Vec<usize>> {
        let mut ids = Vec::new();
        for r in c.rays() {
            ids.push(self.rays.iter().position(|s| s == r)?);
        }
        ids.sort_unstable();
        self.contains_cone(&ids).then_some(ids)
    }
}

/// Closes `max_cones` under faces and checks the fan axioms. The ray order
/// is the order of first appearance.
pub fn validate_fan(max_cones: &[Cone]) -> Result<Fan, FanError> {
    let Some(first) = max_cones.first() else {
        return Ok(Fan::empty(0));
    };
    let rank = first.ambient_rank();
    let mut rays: Vec<Vector> = Vec::new();
    let mut indexed = Vec::new();
    for c in max_cones {
        if c.ambient_rank() != rank {
            return Err(FanError::DimensionMismatch(c.rays().first().cloned().unwrap_or_default(), rank));
        }
        let mut ids = Vec::new();
        for r in c.rays() {
            let i = match rays.iter().position(|s| s == r) {
                Some(i) => i,
                None => {
                    rays.push(r.clone());
                    rays.len() - 1
                }
            };
            ids.push(i);
        }
        indexed.push(ids);
    }
    Fan::from_indexed(rank, rays, &indexed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanProperties {
    pub is_full: bool,
    pub is_complete: bool,
    pub is_simplicial: bool,
    pub is_regular: bool,
    pub cone_equals_span: bool,
    pub is_empty: bool,
}

pub fn fan_properties(f: &Fan) -> FanProperties {
    let n = f.rank();
    let is_full = rank_of(f.rays(), n) == n;
    let cones: Vec<Cone> = f.cones().iter().map(|c| f.cone(c)).collect();
    let is_simplicial = cones.iter().all(Cone::is_simplicial);
    let is_regular = cones.iter().all(Cone::is_regular);
    let is_complete = !f.is_empty() && {
        let maximal = f.maximal_cones();
        let full_dim: Vec<&Vec<usize>> = maximal.iter().filter(|c| f.cone(c).dim() == n).collect();
        full_dim.len() == maximal.len()
            && (n == 0
                || f.cones().iter().filter(|c| f.cone(c).dim() + 1 == n).all(|wall| {
                    full_dim.iter().filter(|c| wall.iter().all(|i| c.contains(i))).count() == 2
                }))
    };
    let cone_equals_span = h_representation(n, f.rays()).facets.is_empty();
    FanProperties { is_full, is_complete, is_simplicial, is_regular, cone_equals_span, is_empty: f.is_empty() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(gens: &[[i64; 2]]) -> Cone {
        Cone::new(2, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn p2() -> Fan {
        validate_fan(&[c(&[[1, 0], [0, 1]]), c(&[[0, 1], [-1, -1]]), c(&[[1, 0], [-1, -1]])]).unwrap()
    }

    #[test]
    fn p2_fan_has_seven_cones() {
        let f = p2();
        assert_eq!(f.cones().len(), 7);
        assert_eq!(f.rays(), &[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        let p = fan_properties(&f);
        assert!(p.is_full && p.is_complete && p.is_simplicial && p.is_regular && p.cone_equals_span);
    }

    #[test]
    fn face_closure_of_a_single_cone() {
        let f = validate_fan(&[c(&[[1, 0], [0, 1]])]).unwrap();
        assert_eq!(f.cones().len(), 4);
        assert_eq!(validate_fan(&[f.cone(&f.maximal_cones()[0])]).unwrap(), f);
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let err = validate_fan(&[c(&[[1, 0], [0, 1]]), c(&[[1, 1], [-1, 1]])]).unwrap_err();
        assert!(matches!(err, FanError::FanInvalid(..)));
    }

    #[test]
    fn non_pointed_cone_is_rejected() {
        assert!(matches!(Cone::new(2, &[vec![1, 0], vec![-1, 0]]), Err(FanError::NonPointed(_))));
    }

    #[test]
    fn rank_cap() {
        assert_eq!(Cone::new(7, &[]), Err(FanError::RankTooLarge(7)));
    }

    #[test]
    fn single_ray_is_neither_full_nor_complete() {
        let f = validate_fan(&[c(&[[1, 0]])]).unwrap();
        let p = fan_properties(&f);
        assert!(!p.is_full && !p.is_complete);
    }

    #[test]
    fn weighted_projective_plane() {
        let f = Fan::from_indexed(2, vec![vec![1, 0], vec![0, 1], vec![-1, -2]], &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let p = fan_properties(&f);
        assert!(p.is_simplicial && !p.is_regular && p.is_complete);
        assert!(!f.cone(&[0, 2]).is_regular());
        assert!(f.cone(&[1, 2]).is_regular());
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let cone = c(&[[1, 0], [1, 2]]);
        let d = dual_cone(&cone);
        assert_eq!(d.generators, vec![vec![0, 1], vec![2, -1]]);
        let back = Cone::new(2, &d.generators).unwrap();
        assert_eq!(dual_cone(&back).generators.len(), 2);
        assert_eq!(Cone::new(2, &dual_cone(&back).generators).unwrap(), cone);
    }

    #[test]
    fn empty_fan_properties() {
        let p = fan_properties(&Fan::empty(2));
        assert!(p.is_empty && !p.is_full && !p.is_complete && p.cone_equals_span);
    }
}

//! Gröbner bases over `Q` for ideals and submodules of free modules:
//! normal forms, membership, intersections, colons and saturations.
//!
//! Results of ideal and submodule operations are reduced Gröbner bases for
//! [`MonomialOrder::GrevLex`], so equal submodules give equal outputs.

mod engine;
mod poly;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cox::{minimalize, Exponent};
use crate::qlin::Q;
use engine::{groebner, reduce, s_elem, Vect};

pub use poly::{cox_variable_names, format_rational, parse_rational, ModElem, Poly, PolyParseError};

/// Monomial orders; ties between variables follow index order `x1 > x2 > ...`.
///
/// On free modules the position comes right after an elimination block, a
/// lower index being larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    /// The first `k` variables, compared by grevlex, dominate the rest.
    BlockElimination(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebError {
    #[error("iterated colon did not stabilize within {0} steps")]
    IterationCapExceeded(usize),
}

/// Default cap for iterated colons.
pub const ITERATION_CAP: usize = 64;

/// The free module `Q[x_1..x_nvars]^rank` containing a submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub rank: usize,
    pub nvars: usize,
}

impl FreeModule {
    pub fn ring(nvars: usize) -> FreeModule {
        FreeModule { rank: 1, nvars }
    }

    pub fn unit(&self, i: usize) -> ModElem {
        ModElem::basis_term(self.rank, i, &vec![0; self.nvars], Q::one())
    }

    pub fn zero(&self) -> ModElem {
        ModElem::zero(self.rank, self.nvars)
    }
}

fn to_vects(gens: &[ModElem], order: MonomialOrder) -> Vec<Vect> {
    gens.iter().filter(|g| !g.is_zero()).map(|g| Vect::from_elem(g, order)).collect()
}

pub fn module_groebner_basis(gens: &[ModElem], order: MonomialOrder) -> Vec<ModElem> {
    groebner(&to_vects(gens, order), order).iter().map(Vect::to_elem).collect()
}

pub fn module_normal_form(x: &ModElem, gb: &[ModElem], order: MonomialOrder) -> ModElem {
    reduce(&Vect::from_elem(x, order), &to_vects(gb, order), order).to_elem()
}

/// Leading `(position, exponent)` of a nonzero element.
pub fn module_leading_term(x: &ModElem, order: MonomialOrder) -> Option<(usize, Exponent)> {
    let v = Vect::from_elem(x, order);
    (!v.is_zero()).then(|| (v.lead().0.pos, v.lead().0.exp.clone()))
}

/// Whether every S-vector of `gb` reduces to zero modulo `gb`.
pub fn module_is_groebner_basis(gb: &[ModElem], order: MonomialOrder) -> bool {
    let vs = to_vects(gb, order);
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            if let Some(s) = s_elem(&gb[i], &gb[j], order) {
                if !reduce(&Vect::from_elem(&s, order), &vs, order).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical form of the submodule generated by `gens`.
pub fn canonical(gens: &[ModElem]) -> Vec<ModElem> {
    module_groebner_basis(gens, MonomialOrder::GrevLex)
}

pub fn module_contains(gens: &[ModElem], x: &ModElem) -> bool {
    let gb = canonical(gens);
    module_normal_form(x, &gb, MonomialOrder::GrevLex).is_zero()
}

pub fn module_is_subset(a: &[ModElem], b: &[ModElem]) -> bool {
    let gb = canonical(b);
    a.iter().all(|x| module_normal_form(x, &gb, MonomialOrder::GrevLex).is_zero())
}

/// Leading exponents per position when every generator is a single term.
fn monomial_generators(gens: &[ModElem]) -> Option<Vec<(usize, Exponent)>> {
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut terms = g.terms();
        let (pos, e, _) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        out.push((pos, e.clone()));
    }
    Some(out)
}

fn from_monomials(m: FreeModule, gens: Vec<(usize, Exponent)>) -> Vec<ModElem> {
    let mut out = Vec::new();
    for pos in 0..m.rank {
        let here: Vec<Exponent> = gens.iter().filter(|(p, _)| *p == pos).map(|(_, e)| e.clone()).collect();
        for e in minimalize(here) {
            out.push(ModElem::basis_term(m.rank, pos, &e, Q::one()));
        }
    }
    canonical(&out)
}

fn single_monomial(f: &Poly) -> Option<Exponent> {
    f.is_monomial().then(|| f.terms().next().map(|(e, _)| e.clone())).flatten()
}

/// Generators free of the first `k` variables, with those variables dropped.
fn eliminate(gens: &[ModElem], k: usize) -> Vec<ModElem> {
    module_groebner_basis(gens, MonomialOrder::BlockElimination(k))
        .into_iter()
        .filter(|g| g.terms().all(|(_, e, _)| e[..k].iter().all(|&x| x == 0)))
        .map(|g| g.drop_vars(k))
        .collect()
}

/// `(N : f^∞)`.
pub fn module_saturate_by_element(m: FreeModule, gens: &[ModElem], f: &Poly) -> Vec<ModElem> {
    if let (Some(mono), Some(z)) = (monomial_generators(gens), single_monomial(f)) {
        let sat = mono
            .into_iter()
            .map(|(p, e)| (p, e.iter().zip(&z).map(|(a, b)| if *b > 0 { 0 } else { *a }).collect()))
            .collect();
        return from_monomials(m, sat);
    }
    module_saturate_by_element_general(m, gens, f)
}

/// `(N : f^∞)` by elimination of `t` from `N + (1 − t f)`, with no fast path.
pub fn module_saturate_by_element_general(m: FreeModule, gens: &[ModElem], f: &Poly) -> Vec<ModElem> {
    if f.is_zero() {
        return canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>());
    }
    let mut ext: Vec<ModElem> = gens.iter().map(|g| g.prepend_vars(1)).collect();
    let t = Poly::variable(m.nvars + 1, 0);
    let one_minus = Poly::one(m.nvars + 1).sub(&t.mul(&f.prepend_vars(1)));
    let big = FreeModule { rank: m.rank, nvars: m.nvars + 1 };
    for i in 0..m.rank {
        ext.push(big.unit(i).mul_poly(&one_minus));
    }
    canonical(&eliminate(&ext, 1))
}

/// `N_1 ∩ N_2`.
pub fn module_intersection(m: FreeModule, a: &[ModElem], b: &[ModElem]) -> Vec<ModElem> {
    if let (Some(ma), Some(mb)) = (monomial_generators(a), monomial_generators(b)) {
        let mut out = Vec::new();
        for (p, u) in &ma {
            for (q, v) in &mb {
                if p == q {
                    out.push((*p, u.iter().zip(v).map(|(x, y)| *x.max(y)).collect()));
                }
            }
        }
        return from_monomials(m, out);
    }
    module_intersection_general(m, a, b)
}

/// `N_1 ∩ N_2` by elimination of `t` from `t·N_1 + (1 − t)·N_2`.
pub fn module_intersection_general(m: FreeModule, a: &[ModElem], b: &[ModElem]) -> Vec<ModElem> {
    let n = m.nvars + 1;
    let t = Poly::variable(n, 0);
    let one_minus = Poly::one(n).sub(&t);
    let mut ext: Vec<ModElem> = a.iter().map(|g| g.prepend_vars(1).mul_poly(&t)).collect();
    ext.extend(b.iter().map(|g| g.prepend_vars(1).mul_poly(&one_minus)));
    canonical(&eliminate(&ext, 1))
}

/// Exact quotient `h / f` for `h ∈ f·E`.
fn divide_exact(h: &ModElem, f: &Poly) -> ModElem {
    let order = MonomialOrder::GrevLex;
    let fv = Vect::from_elem(&ModElem::from_poly(f.clone()), order);
    let (ft, fc) = fv.lead().clone();
    let mut out = ModElem::zero(h.rank(), h.nvars());
    for (i, comp) in h.components.iter().enumerate() {
        let mut rest = comp.clone();
        let mut q = Poly::zero(comp.nvars());
        while let Some((t, c)) = module_leading_term(&ModElem::from_poly(rest.clone()), order)
            .map(|(_, e)| (e.clone(), rest.coefficient(&e)))
        {
            let shift: Exponent = t.iter().zip(&ft.exp).map(|(a, b)| a - b).collect();
            assert!(shift.iter().all(|&x| x >= 0), "division is not exact");
            let coeff = &c / &fc;
            q.add_term(shift.clone(), coeff.clone());
            rest = rest.sub(&f.mul_term(&shift, &coeff));
        }
        out.components[i] = q;
    }
    out
}

/// `(N : f) = {x : f x ∈ N}`.
pub fn module_quotient(m: FreeModule, gens: &[ModElem], f: &Poly) -> Vec<ModElem> {
    if f.is_zero() {
        return canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>());
    }
    if let (Some(mono), Some(z)) = (monomial_generators(gens), single_monomial(f)) {
        let q = mono.into_iter().map(|(p, e)| (p, e.iter().zip(&z).map(|(a, b)| (a - b).max(0)).collect())).collect();
        return from_monomials(m, q);
    }
    let multiples: Vec<ModElem> = (0..m.rank).map(|i| m.unit(i).mul_poly(f)).collect();
    let meet = module_intersection_general(m, gens, &multiples);
    canonical(&meet.iter().map(|h| divide_exact(h, f)).collect::<Vec<_>>())
}

/// `(N : J) = ∩_g (N : g)` over generators `g` of `J`.
pub fn module_quotient_by_ideal(m: FreeModule, gens: &[ModElem], ideal: &[Poly]) -> Vec<ModElem> {
    let mut acc: Option<Vec<ModElem>> = None;
    for g in ideal.iter().filter(|g| !g.is_zero()) {
        let q = module_quotient(m, gens, g);
        acc = Some(match acc {
            None => q,
            Some(prev) => module_intersection(m, &prev, &q),
        });
    }
    acc.unwrap_or_else(|| canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>()))
}

/// `∩_z (N : z^∞)`: the saturation by any ideal with the same radical as
/// the product of the given monomials' ideal.
pub fn module_saturate_by_monomials(m: FreeModule, gens: &[ModElem], monomials: &[Exponent]) -> Vec<ModElem> {
    let mut acc: Option<Vec<ModElem>> = None;
    for z in monomials {
        let s = module_saturate_by_element(m, gens, &Poly::term(z));
        acc = Some(match acc {
            None => s,
            Some(prev) => module_intersection(m, &prev, &s),
        });
    }
    acc.unwrap_or_else(|| canonical(&(0..m.rank).map(|i| m.unit(i)).collect::<Vec<_>>()))
}

/// `∪_m (N : J^m)` by iterating `N ↦ (N : J)` until stable; also returns the
/// number of colon steps that changed the module.
pub fn module_saturate_iterated(
    m: FreeModule,
    gens: &[ModElem],
    ideal: &[Poly],
    cap: usize,
) -> Result<(Vec<ModElem>, usize), GroebError> {
    let mut current = canonical(gens);
    for step in 0..cap {
        let next = module_quotient_by_ideal(m, &current, ideal);
        if next == current {
            return Ok((current, step));
        }
        current = next;
    }
    Err(GroebError::IterationCapExceeded(cap))
}

fn lift(gens: &[Poly]) -> Vec<ModElem> {
    gens.iter().map(|p| ModElem::from_poly(p.clone())).collect()
}

fn lower(gens: Vec<ModElem>) -> Vec<Poly> {
    gens.into_iter().map(|m| m.components.into_iter().next().expect("rank one")).collect()
}

fn nvars_of(gens: &[Poly], other: Option<&Poly>) -> usize {
    gens.first().or(other).map_or(0, Poly::nvars)
}

/// Unique reduced Gröbner basis with monic leading coefficients.
pub fn reduced_groebner_basis(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    lower(module_groebner_basis(&lift(gens), order))
}

pub fn normal_form(p: &Poly, gb: &[Poly], order: MonomialOrder) -> Poly {
    lower(vec![module_normal_form(&ModElem::from_poly(p.clone()), &lift(gb), order)]).remove(0)
}

pub fn leading_monomial(p: &Poly, order: MonomialOrder) -> Option<Exponent> {
    module_leading_term(&ModElem::from_poly(p.clone()), order).map(|(_, e)| e)
}

pub fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Option<Poly> {
    s_elem(&ModElem::from_poly(f.clone()), &ModElem::from_poly(g.clone()), order).map(|m| lower(vec![m]).remove(0))
}

pub fn is_groebner_basis(gb: &[Poly], order: MonomialOrder) -> bool {
    module_is_groebner_basis(&lift(gb), order)
}

pub fn ideal_contains(gens: &[Poly], p: &Poly) -> bool {
    module_contains(&lift(gens), &ModElem::from_poly(p.clone()))
}

/// `(J : f^∞)`; monomial inputs use exponent combinatorics.
pub fn saturate_by_element(ideal: &[Poly], f: &Poly) -> Vec<Poly> {
    lower(module_saturate_by_element(FreeModule::ring(nvars_of(ideal, Some(f))), &lift(ideal), f))
}

pub fn saturate_by_element_general(ideal: &[Poly], f: &Poly) -> Vec<Poly> {
    lower(module_saturate_by_element_general(FreeModule::ring(nvars_of(ideal, Some(f))), &lift(ideal), f))
}

pub fn ideal_intersection(i1: &[Poly], i2: &[Poly]) -> Vec<Poly> {
    let n = nvars_of(i1, i2.first());
    lower(module_intersection(FreeModule::ring(n), &lift(i1), &lift(i2)))
}

pub fn ideal_intersection_general(i1: &[Poly], i2: &[Poly]) -> Vec<Poly> {
    let n = nvars_of(i1, i2.first());
    lower(module_intersection_general(FreeModule::ring(n), &lift(i1), &lift(i2)))
}

pub fn ideal_quotient(ideal: &[Poly], f: &Poly) -> Vec<Poly> {
    lower(module_quotient(FreeModule::ring(nvars_of(ideal, Some(f))), &lift(ideal), f))
}

/// The unit ideal check `1 ∈ J`.
pub fn is_unit_ideal(gens: &[Poly]) -> bool {
    gens.iter().any(|g| g.len() == 1 && g.terms().all(|(e, c)| e.iter().all(|&x| x == 0) && !c.is_zero()))
        || reduced_groebner_basis(gens, MonomialOrder::GrevLex).first().is_some_and(|g| {
            leading_monomial(g, MonomialOrder::GrevLex).is_some_and(|e| e.iter().all(|&x| x == 0))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        let names: Vec<String> = if n <= 2 { vec!["x".into(), "y".into()] } else { cox_variable_names(n) };
        Poly::parse(s, &names[..n]).unwrap()
    }

    fn ps(list: &[&str], n: usize) -> Vec<Poly> {
        list.iter().map(|s| p(s, n)).collect()
    }

    #[test]
    fn groebner_examples() {
        let g = MonomialOrder::GrevLex;
        assert_eq!(reduced_groebner_basis(&ps(&["x", "y"], 2), g), ps(&["x", "y"], 2));
        assert_eq!(reduced_groebner_basis(&ps(&["x^2", "x*y + y^2"], 2), g), ps(&["x^2", "x*y + y^2", "y^3"], 2));
        assert_eq!(reduced_groebner_basis(&ps(&["x - y"], 2), g), ps(&["x - y"], 2));
    }

    #[test]
    fn normal_form_examples() {
        let g = MonomialOrder::GrevLex;
        assert_eq!(normal_form(&p("x^2", 2), &ps(&["x - y"], 2), g), p("y^2", 2));
        assert!(normal_form(&p("y^3", 2), &ps(&["x^2", "x*y + y^2", "y^3"], 2), g).is_zero());
        assert_eq!(normal_form(&p("1", 2), &ps(&["x", "y"], 2), g), p("1", 2));
    }

    #[test]
    fn saturation_examples() {
        let sat = saturate_by_element(&ps(&["Z1*Z2", "Z1*Z3"], 3), &p("Z2", 3));
        assert_eq!(sat, ps(&["Z1"], 3));
        assert_eq!(saturate_by_element_general(&ps(&["Z1*Z2", "Z1*Z3"], 3), &p("Z2", 3)), sat);
        assert_eq!(saturate_by_element(&ps(&["x^2"], 2), &p("x", 2)), ps(&["1"], 2));
        assert_eq!(saturate_by_element_general(&ps(&["x^2"], 2), &p("x", 2)), ps(&["1"], 2));
        assert_eq!(saturate_by_element(&ps(&["x"], 2), &p("y", 2)), ps(&["x"], 2));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(ideal_intersection(&ps(&["x"], 2), &ps(&["y"], 2)), ps(&["x*y"], 2));
        assert_eq!(ideal_intersection_general(&ps(&["x"], 2), &ps(&["y"], 2)), ps(&["x*y"], 2));
        assert_eq!(ideal_intersection(&ps(&["x^2", "y"], 2), &ps(&["x"], 2)), ps(&["x^2", "x*y"], 2));
        assert_eq!(ideal_intersection_general(&ps(&["x^2", "y"], 2), &ps(&["x"], 2)), ps(&["x^2", "x*y"], 2));
        let j = ps(&["x^2 + y", "x*y"], 2);
        assert_eq!(ideal_intersection(&ps(&["1"], 2), &j), reduced_groebner_basis(&j, MonomialOrder::GrevLex));
    }

    #[test]
    fn quotient_of_non_monomial_ideal() {
        // (x(x+y)) : (x+y) = (x)
        let q = ideal_quotient(&ps(&["x^2 + x*y"], 2), &p("x + y", 2));
        assert_eq!(q, ps(&["x"], 2));
    }

    #[test]
    fn module_saturation() {
        let m = FreeModule { rank: 2, nvars: 2 };
        let x = Poly::variable(2, 0);
        let y = Poly::variable(2, 1);
        // N = ⟨x e1, x e2 - y e1⟩ ; saturating by x frees e1 and e2? check membership only.
        let n = vec![m.unit(0).mul_poly(&x), m.unit(1).mul_poly(&x).sub(&m.unit(0).mul_poly(&y))];
        let sat = module_saturate_by_element(m, &n, &x);
        assert!(module_contains(&sat, &m.unit(0)));
        let (iter, _) = module_saturate_iterated(m, &n, &[x.clone()], ITERATION_CAP).unwrap();
        assert_eq!(iter, sat);
        assert!(module_is_groebner_basis(&sat, MonomialOrder::GrevLex));
    }

    #[test]
    fn unit_ideal_detection() {
        assert!(is_unit_ideal(&ps(&["x", "1 - x"], 2)));
        assert!(!is_unit_ideal(&ps(&["x", "y"], 2)));
    }
}

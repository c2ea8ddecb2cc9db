//! Buchberger's algorithm for submodules of free modules over `Q[x]`.
//!
//! Vectors are kept as term lists sorted decreasingly under the order.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::ModElem;
use super::MonomialOrder;
use crate::cox::Exponent;
use crate::qlin::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub exp: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vect {
    pub rank: usize,
    pub nvars: usize,
    pub terms: Vec<(Term, Q)>,
}

fn grevlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp_monomials(&self, a: &[i64], b: &[i64]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::BlockElimination(k) => grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..])),
        }
    }

    /// Module order: an elimination block dominates, then position (lower
    /// index is larger), then the monomial.
    pub(crate) fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => b.pos.cmp(&a.pos).then_with(|| grevlex(&a.exp, &b.exp)),
            MonomialOrder::BlockElimination(k) => grevlex(&a.exp[..k], &b.exp[..k])
                .then_with(|| b.pos.cmp(&a.pos))
                .then_with(|| grevlex(&a.exp[k..], &b.exp[k..])),
        }
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Vect {
    pub fn from_elem(m: &ModElem, order: MonomialOrder) -> Vect {
        let mut terms: Vec<(Term, Q)> =
            m.terms().map(|(pos, e, c)| (Term { pos, exp: e.clone() }, c.clone())).collect();
        terms.sort_by(|a, b| order.cmp_terms(&b.0, &a.0));
        Vect { rank: m.rank(), nvars: m.nvars(), terms }
    }

    pub fn to_elem(&self) -> ModElem {
        let mut m = ModElem::zero(self.rank, self.nvars);
        for (t, c) in &self.terms {
            m.components[t.pos].add_term(t.exp.clone(), c.clone());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &(Term, Q) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            let inv = Q::one() / c;
            for (_, x) in &mut self.terms {
                *x *= &inv;
            }
        }
    }

    /// `self − c·x^shift·other`, both sorted; the result stays sorted.
    fn sub_scaled(&self, c: &Q, shift: &[i64], other: &Vect, order: MonomialOrder) -> Vect {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |(t, x): &(Term, Q)| {
            (Term { pos: t.pos, exp: t.exp.iter().zip(shift).map(|(a, b)| a + b).collect() }, -(x * c))
        };
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let b = shifted(&other.terms[j]);
            if i == self.terms.len() {
                out.push(b);
                j += 1;
                continue;
            }
            match order.cmp_terms(&self.terms[i].0, &b.0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &b.1;
                    if !s.is_zero() {
                        out.push((b.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vect { rank: self.rank, nvars: self.nvars, terms: out }
    }
}

/// Full reduction of `f` modulo `basis`.
pub(crate) fn reduce(f: &Vect, basis: &[Vect], order: MonomialOrder) -> Vect {
    let mut rest = f.clone();
    let mut done: Vec<(Term, Q)> = Vec::new();
    while let Some((t, c)) = rest.terms.first().cloned() {
        let reducer = basis.iter().find(|g| {
            let (gt, _) = g.lead();
            gt.pos == t.pos && divides(&gt.exp, &t.exp)
        });
        match reducer {
            Some(g) => {
                let (gt, gc) = g.lead();
                let shift = diff(&t.exp, &gt.exp);
                rest = rest.sub_scaled(&(&c / gc), &shift, g, order);
            }
            None => {
                done.push((t, c));
                rest.terms.remove(0);
            }
        }
    }
    Vect { rank: f.rank, nvars: f.nvars, terms: done }
}

fn s_vector(f: &Vect, g: &Vect, order: MonomialOrder) -> Vect {
    let (ft, fc) = f.lead();
    let (gt, gc) = g.lead();
    let l = lcm(&ft.exp, &gt.exp);
    let empty = Vect { rank: f.rank, nvars: f.nvars, terms: Vec::new() };
    empty
        .sub_scaled(&(-Q::one() / fc), &diff(&l, &ft.exp), f, order)
        .sub_scaled(&(Q::one() / gc), &diff(&l, &gt.exp), g, order)
}

/// S-vector of two elements with leading terms in the same position.
pub(crate) fn s_elem(f: &ModElem, g: &ModElem, order: MonomialOrder) -> Option<ModElem> {
    let vf = Vect::from_elem(f, order);
    let vg = Vect::from_elem(g, order);
    if vf.is_zero() || vg.is_zero() || vf.lead().0.pos != vg.lead().0.pos {
        return None;
    }
    Some(s_vector(&vf, &vg, order).to_elem())
}

/// Reduced Gröbner basis, monic, sorted by position, then degree of the
/// leading term, then decreasingly.
pub(crate) fn groebner(gens: &[Vect], order: MonomialOrder) -> Vec<Vect> {
    let rank = gens.first().map_or(0, |g| g.rank);
    let mut basis: Vec<Vect> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |basis: &mut Vec<Vect>, pairs: &mut Vec<(usize, usize)>, mut v: Vect| {
        v.make_monic();
        let n = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if b.lead().0.pos == v.lead().0.pos {
                pairs.push((i, n));
            }
        }
        basis.push(v);
    };
    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = lcm(&basis[pairs[a].0].lead().0.exp, &basis[pairs[a].1].lead().0.exp);
                let lb = lcm(&basis[pairs[b].0].lead().0.exp, &basis[pairs[b].1].lead().0.exp);
                order.cmp_monomials(&la, &lb).then(pairs[a].cmp(&pairs[b]))
            })
            .expect("nonempty");
        let (i, j) = pairs.remove(pick);
        let ti = &basis[i].lead().0;
        let tj = &basis[j].lead().0;
        let l = lcm(&ti.exp, &tj.exp);
        if rank == 1 && ti.exp.iter().zip(&tj.exp).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let pending = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.pos == ti.pos
                && divides(&basis[k].lead().0.exp, &l)
                && !pending(i, k)
                && !pending(j, k)
        });
        if chain {
            continue;
        }
        let s = s_vector(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }
    // Minimalize, then inter-reduce.
    let mut minimal: Vec<Vect> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let (t, _) = b.lead();
        let redundant = basis.iter().enumerate().any(|(j, c)| {
            let (u, _) = c.lead();
            j != i && u.pos == t.pos && divides(&u.exp, &t.exp) && (u.exp != t.exp || j < i)
        });
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut reduced: Vec<Vect> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vect> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let head = Vect { rank: minimal[i].rank, nvars: minimal[i].nvars, terms: vec![minimal[i].terms[0].clone()] };
        let tail = Vect { rank: minimal[i].rank, nvars: minimal[i].nvars, terms: minimal[i].terms[1..].to_vec() };
        let mut v = head;
        v.terms.extend(reduce(&tail, &others, order).terms);
        v.make_monic();
        reduced.push(v);
    }
    reduced.sort_by(|a, b| {
        let (ta, tb) = (&a.lead().0, &b.lead().0);
        let da: i64 = ta.exp.iter().sum();
        let db: i64 = tb.exp.iter().sum();
        ta.pos.cmp(&tb.pos).then(da.cmp(&db)).then_with(|| order.cmp_terms(tb, ta))
    });
    reduced
}

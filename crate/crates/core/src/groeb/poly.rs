//! Polynomials and free-module elements with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cox::Exponent;
use crate::grading::GradingData;
use crate::intlat::GroupElement;
use crate::qlin::Q;

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::monomial(vec![0; nvars], Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, coeff: Q) -> Poly {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Poly { nvars, terms }
    }

    /// The monomial `x^exp` with coefficient 1.
    pub fn term(exp: &[i64]) -> Poly {
        Poly::monomial(exp.to_vec(), Q::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::term(&e)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, exp: &[i64], c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), x * c))
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &other.terms {
            for (f, d) in &self.terms {
                p.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Exponents in increasing lexicographic order.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, g: &GradingData) -> Option<GroupElement> {
        let mut degs = self.terms.keys().map(|e| g.degree(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Inserts `k` new variables in front, with exponent zero.
    pub fn prepend_vars(&self, k: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; k];
                f.extend_from_slice(e);
                (f, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars + k, terms }
    }

    /// Drops the first `k` variables, which must not occur.
    pub fn drop_vars(&self, k: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                debug_assert!(e[..k].iter().all(|&x| x == 0));
                (e[k..].to_vec(), c.clone())
            })
            .collect();
        Poly { nvars: self.nvars - k, terms }
    }

    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { names(i) } else { format!("{}^{}", names(i), x) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parses sums of terms such as `2*Z1^2*Z3 - 1/3*Z2`; variables are
    /// named by `names` (e.g. `Z1`, ..., `Zk`).
    pub fn parse(text: &str, names: &[String]) -> Result<Poly, PolyParseError> {
        let nvars = names.len();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut p = Poly::zero(nvars);
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(current.is_empty() && i == 0) {
                if current.is_empty() {
                    return Err(PolyParseError::Syntax(text.to_string()));
                }
                chunks.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(PolyParseError::Syntax(text.to_string()));
        }
        chunks.push((negative, current));
        for (neg, chunk) in chunks {
            let mut coeff = Q::one();
            let mut exp = vec![0i64; nvars];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(PolyParseError::Syntax(text.to_string()));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor).ok_or_else(|| PolyParseError::Syntax(factor.to_string()))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<i64>().map_err(|_| PolyParseError::Syntax(factor.to_string()))?),
                    None => (factor, 1),
                };
                if power < 0 {
                    return Err(PolyParseError::Syntax(factor.to_string()));
                }
                let i = names.iter().position(|n| n == name).ok_or_else(|| PolyParseError::UnknownVariable(name.to_string()))?;
                exp[i] += power;
            }
            p.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(p)
    }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let den: BigInt = b.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Q::new(a.parse().ok()?, den))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// `p/q` rendering of a rational, `p` for integers.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
}

/// Default Cox variable names `Z1, ..., Zk`.
pub fn cox_variable_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("Z{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("Z{}", i + 1)))
    }
}

/// An element of the free module `S^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModElem {
    pub components: Vec<Poly>,
}

impl ModElem {
    pub fn zero(rank: usize, nvars: usize) -> ModElem {
        ModElem { components: vec![Poly::zero(nvars); rank] }
    }

    /// `x^exp · e_i`.
    pub fn basis_term(rank: usize, i: usize, exp: &[i64], coeff: Q) -> ModElem {
        let mut m = ModElem::zero(rank, exp.len());
        m.components[i] = Poly::monomial(exp.to_vec(), coeff);
        m
    }

    pub fn from_poly(p: Poly) -> ModElem {
        ModElem { components: vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components.first().map_or(0, Poly::nvars)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &ModElem) -> ModElem {
        ModElem { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModElem) -> ModElem {
        ModElem { components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> ModElem {
        ModElem { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> ModElem {
        ModElem { components: self.components.iter().map(|p| p.mul(f)).collect() }
    }

    pub fn mul_term(&self, exp: &[i64], c: &Q) -> ModElem {
        ModElem { components: self.components.iter().map(|p| p.mul_term(exp, c)).collect() }
    }

    /// All `(i, exponent, coefficient)` triples.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Exponent, &Q)> {
        self.components.iter().enumerate().flat_map(|(i, p)| p.terms().map(move |(e, c)| (i, e, c)))
    }

    /// The common degree of all terms given generator degrees, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, g: &GradingData, generator_degrees: &[GroupElement]) -> Option<GroupElement> {
        let group = g.class_group();
        let mut degs = self.terms().map(|(i, e, _)| group.add(&g.degree(e), &generator_degrees[i]));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn prepend_vars(&self, k: usize) -> ModElem {
        ModElem { components: self.components.iter().map(|p| p.prepend_vars(k)).collect() }
    }

    pub fn drop_vars(&self, k: usize) -> ModElem {
        ModElem { components: self.components.iter().map(|p| p.drop_vars(k)).collect() }
    }
}

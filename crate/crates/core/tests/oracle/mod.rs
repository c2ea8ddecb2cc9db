//! Brute-force reference implementations used by the acceptance suite.
//! Nothing here calls into the library.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank and invariant factors of an integer matrix from gcds of all minors.
pub fn determinantal_invariants(rows: &[Vec<i64>]) -> (usize, Vec<i128>) {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                g = gcd(g, det(&m));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    (rank, (1..=rank).map(|i| divisors[i] / divisors[i - 1]).collect())
}

/// Whether `p` is a nonnegative combination of `gens`, by Carathéodory:
/// try every linearly independent subset and solve by Cramer's rule.
pub fn cone_contains(gens: &[Vec<i64>], p: &[i64]) -> bool {
    if p.iter().all(|&x| x == 0) {
        return true;
    }
    let n = p.len();
    for s in 1..=gens.len().min(n) {
        for set in subsets(gens.len(), s) {
            for rows in subsets(n, s) {
                let m: Vec<Vec<i128>> =
                    rows.iter().map(|&i| set.iter().map(|&j| gens[j][i] as i128).collect()).collect();
                let d = det(&m);
                if d == 0 {
                    continue;
                }
                let lambda: Vec<i128> = (0..s)
                    .map(|col| {
                        let mut mc = m.clone();
                        for (r, &i) in rows.iter().enumerate() {
                            mc[r][col] = p[i] as i128;
                        }
                        det(&mc)
                    })
                    .collect();
                // λ_j = lambda_j / d.
                let nonneg = lambda.iter().all(|l| l * d.signum() >= 0);
                let exact = (0..n).all(|i| {
                    set.iter().zip(&lambda).map(|(&j, l)| gens[j][i] as i128 * l).sum::<i128>() == d * p[i] as i128
                });
                if nonneg && exact {
                    return true;
                }
                break;
            }
        }
    }
    false
}

/// Integer points with `Σ|x_i| ≤ bound`.
pub fn lattice_points(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == rank {
            out.push(cur.clone());
            return;
        }
        for x in -budget..=budget {
            cur.push(x);
            rec(rank, budget - x.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, bound, &mut Vec::new(), &mut out);
    out
}

/// A `w` with `w·g > 0` for every generator, searched in a box.
pub fn positive_functional(gens: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = gens.first()?.len();
    lattice_points(n, 3 * n as i64 * 4)
        .into_iter()
        .filter(|w| w.iter().all(|x| x.abs() <= 12))
        .find(|w| gens.iter().all(|g| g.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() > 0))
}

/// Whether `p` is a nonnegative integer combination of `basis` inside a
/// cone on which `w` is positive.
pub fn representable(
    p: &[i64],
    basis: &[Vec<i64>],
    gens: &[Vec<i64>],
    w: &[i64],
    memo: &mut HashMap<Vec<i64>, bool>,
) -> bool {
    if p.iter().all(|&x| x == 0) {
        return true;
    }
    if let Some(&r) = memo.get(p) {
        return r;
    }
    let wp: i64 = p.iter().zip(w).map(|(a, b)| a * b).sum();
    let mut ok = false;
    if wp > 0 {
        for h in basis {
            let q: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
            if cone_contains(gens, &q) && representable(&q, basis, gens, w, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert(p.to_vec(), ok);
    ok
}

pub fn monomial_count(nvars: u32, degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    fn rec(vars: u32, d: i64) -> usize {
        if vars == 1 {
            return 1;
        }
        (0..=d).map(|x| rec(vars - 1, d - x)).sum()
    }
    rec(nvars, degree)
}

pub type Q = BigRational;
pub type P = BTreeMap<Vec<i64>, Q>;

pub fn grevlex(a: &[i64], b: &[i64]) -> Ordering {
    let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lead(p: &P) -> Option<(Vec<i64>, Q)> {
    p.iter().max_by(|x, y| grevlex(x.0, y.0)).map(|(e, c)| (e.clone(), c.clone()))
}

fn sub_mul(p: &mut P, q: &P, shift: &[i64], c: &Q) {
    for (e, x) in q {
        let key: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = p.remove(&key).unwrap_or_else(Q::zero) - x * c;
        if !v.is_zero() {
            p.insert(key, v);
        }
    }
}

/// Full reduction of `p` by `gs`.
pub fn reduce(p: &P, gs: &[P]) -> P {
    let mut rest = p.clone();
    let mut out = P::new();
    while let Some((e, c)) = lead(&rest) {
        let hit = gs.iter().find_map(|g| {
            let (ge, gc) = lead(g)?;
            ge.iter().zip(&e).all(|(a, b)| a <= b).then(|| (g, ge, gc))
        });
        match hit {
            Some((g, ge, gc)) => {
                let shift: Vec<i64> = e.iter().zip(&ge).map(|(a, b)| a - b).collect();
                sub_mul(&mut rest, g, &shift, &(&c / &gc));
            }
            None => {
                rest.remove(&e);
                out.insert(e, c);
            }
        }
    }
    out
}

pub fn s_poly(f: &P, g: &P) -> P {
    let (fe, fc) = lead(f).expect("nonzero");
    let (ge, gc) = lead(g).expect("nonzero");
    let l: Vec<i64> = fe.iter().zip(&ge).map(|(a, b)| *a.max(b)).collect();
    let mut out = P::new();
    sub_mul(&mut out, f, &l.iter().zip(&fe).map(|(a, b)| a - b).collect::<Vec<_>>(), &(-Q::one() / &fc));
    sub_mul(&mut out, g, &l.iter().zip(&ge).map(|(a, b)| a - b).collect::<Vec<_>>(), &(Q::one() / &gc));
    out
}

/// Plain Buchberger with every pair, then minimalization and
/// inter-reduction to the monic reduced basis.
pub fn reduced_basis(gens: &[P]) -> Vec<P> {
    let mut basis: Vec<P> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_empty() {
            let n = basis.len();
            pairs.extend((0..n).map(|i| (i, n)));
            basis.push(r);
        }
    }
    let leads: Vec<Vec<i64>> = basis.iter().map(|g| lead(g).unwrap().0).collect();
    let mut keep: Vec<P> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, l)| {
            j != i && l.iter().zip(&leads[i]).all(|(a, b)| a <= b) && (*l != leads[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<P> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let r = reduce(&keep[i], &others);
        let (_, c) = lead(&r).unwrap();
        out.push(r.into_iter().map(|(e, x)| (e, x / &c)).collect());
    }
    out
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

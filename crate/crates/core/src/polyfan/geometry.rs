//! Polyhedral cone geometry on generator lists: facet descriptions, duals
//! and Hilbert bases. Cones here may be non-pointed and lower dimensional.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::intlat::{hermite_normal_form, integer_kernel, saturated_row_basis, smith_normal_form, to_big, to_i64, IntMatrix};
use crate::qlin::{self, Q};

pub type Vector = Vec<i64>;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn primitive(v: &[i64]) -> Vector {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub(crate) fn rank_of(vectors: &[Vector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    smith_normal_form(&IntMatrix::from_i64_rows(vectors, n)).rank()
}

/// Nonzero primitive generators, duplicates removed, input order kept.
pub(crate) fn clean_generators(gens: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for g in gens {
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let p = primitive(g);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Cone as `{x : e·x = 0 for e in equations, h·x ≥ 0 for h in facets}`.
///
/// Facet normals lie in the linear span of the cone and are primitive; the
/// equations form a saturated basis of the orthogonal complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub rank: usize,
    pub equations: Vec<Vector>,
    pub facets: Vec<Vector>,
}

impl HRep {
    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, x) == 0) && self.facets.iter().all(|h| dot(h, x) >= 0)
    }

    pub fn is_pointed(&self) -> bool {
        self.dim() == 0 || rank_of(&self.facets, self.rank) == self.dim()
    }

    /// Saturated lattice basis of the lineality space.
    pub fn lineality(&self) -> Vec<Vector> {
        let rows: Vec<Vector> = self.facets.iter().chain(&self.equations).cloned().collect();
        let m = IntMatrix::from_i64_rows(&rows, self.rank);
        integer_kernel(&m).iter().map(|v| to_i64(v)).collect()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facet description of `cone(gens)` in `Z^rank`.
pub fn h_representation(rank: usize, gens: &[Vector]) -> HRep {
    let gens = clean_generators(gens);
    let equations: Vec<Vector> = integer_kernel(&IntMatrix::from_i64_rows(&gens, rank)).iter().map(|v| to_i64(v)).collect();
    let d = rank - equations.len();
    let mut facets: Vec<Vector> = Vec::new();
    if d > 0 {
        for subset in combinations(gens.len(), d - 1) {
            let chosen: Vec<Vector> = subset.iter().map(|&i| gens[i].clone()).collect();
            if rank_of(&chosen, rank) != d - 1 {
                continue;
            }
            let mut rows = chosen;
            rows.extend(equations.iter().cloned());
            let ker = integer_kernel(&IntMatrix::from_i64_rows(&rows, rank));
            if ker.len() != 1 {
                continue;
            }
            let mut h = primitive(&to_i64(&ker[0]));
            let signs: Vec<i64> = gens.iter().map(|g| dot(&h, g).signum()).collect();
            if signs.iter().all(|&s| s >= 0) {
            } else if signs.iter().all(|&s| s <= 0) {
                h = h.iter().map(|x| -x).collect();
            } else {
                continue;
            }
            if !facets.contains(&h) {
                facets.push(h);
            }
        }
    }
    facets.sort();
    HRep { rank, equations, facets }
}

/// Extreme rays of a pointed cone, primitive, in input order.
pub fn extreme_rays(rank: usize, gens: &[Vector]) -> Vec<Vector> {
    let hrep = h_representation(rank, gens);
    let d = hrep.dim();
    clean_generators(gens)
        .into_iter()
        .filter(|g| {
            let tight: Vec<Vector> = hrep.facets.iter().filter(|h| dot(h, g) == 0).cloned().collect();
            rank_of(&tight, rank) + 1 == d
        })
        .collect()
}

/// Generators of the dual cone `{u : u·g ≥ 0 for all g}`: facet normals of
/// `cone(gens)` together with both signs of a lineality lattice basis.
pub fn dual_generators(rank: usize, gens: &[Vector]) -> Vec<Vector> {
    let hrep = h_representation(rank, gens);
    let mut out = hrep.facets.clone();
    for e in &hrep.equations {
        out.push(e.clone());
        out.push(e.iter().map(|x| -x).collect());
    }
    out
}

/// Generators of the cone cut out by the given inequalities `a·x ≥ 0`.
pub fn cone_from_inequalities(rank: usize, inequalities: &[Vector]) -> Vec<Vector> {
    dual_generators(rank, inequalities)
}

/// Pulling triangulation of a pointed cone given by its extreme rays.
pub fn triangulate(rank: usize, rays: &[Vector]) -> Vec<Vec<Vector>> {
    let d = rank_of(rays, rank);
    if rays.len() == d {
        return vec![rays.to_vec()];
    }
    let apex = &rays[0];
    let hrep = h_representation(rank, rays);
    let mut out = Vec::new();
    for h in &hrep.facets {
        if dot(h, apex) == 0 {
            continue;
        }
        let face: Vec<Vector> = rays.iter().filter(|r| dot(h, r) == 0).cloned().collect();
        for mut simplex in triangulate(rank, &face) {
            simplex.insert(0, apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Lattice points `Σ λ_i r_i` with `λ ∈ [0,1)^d` of a simplicial cone.
fn parallelepiped_points(rank: usize, simplex: &[Vector]) -> Vec<Vector> {
    let d = simplex.len();
    let basis = saturated_row_basis(&simplex.iter().map(|r| to_big(r)).collect::<Vec<_>>(), rank);
    let bq = qlin::from_int_rows(&basis);
    // Coordinates of each ray in the lattice basis.
    let mut coords: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let bt: Vec<Vec<Q>> = (0..rank).map(|j| (0..d).map(|i| bq[i][j].clone()).collect()).collect();
    for r in simplex {
        let rhs: Vec<Q> = r.iter().map(|&x| qlin::q(x)).collect();
        let c = qlin::solve(&bt, &rhs, d).expect("ray lies in its own span");
        coords.push(c.into_iter().map(|x| x.to_integer()).collect());
    }
    let cmat = IntMatrix::from_rows(&coords, d);
    let snf = smith_normal_form(&cmat);
    let vinv = snf.v.unimodular_inverse();
    let cinv = qlin::inverse(&qlin::from_int_rows(&coords)).expect("simplicial");
    let orders: Vec<i64> = (0..d).map(|i| to_i64(&[snf.d.get(i, i).clone()])[0]).collect();
    let mut out = Vec::new();
    let mut t = vec![0i64; d];
    loop {
        // y = t V^{-1}, λ = y C^{-1}
        let y: Vec<Q> = (0..d).map(|j| (0..d).map(|i| qlin::q(t[i]) * Q::from_integer(vinv.get(i, j).clone())).sum()).collect();
        let lambda: Vec<Q> = (0..d).map(|j| (0..d).map(|i| &y[i] * &cinv[i][j]).sum()).collect();
        let frac: Vec<Q> = lambda.iter().map(|l| l - l.floor()).collect();
        let x: Vec<Q> = (0..rank).map(|k| (0..d).map(|i| &frac[i] * qlin::q(simplex[i][k])).sum()).collect();
        if !qlin::is_zero_vec(&x) {
            out.push(x.iter().map(|v| to_i64(&[v.to_integer()])[0]).collect());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            t[i] += 1;
            if t[i] < orders[i] {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

fn pointed_hilbert_basis(rank: usize, gens: &[Vector]) -> Vec<Vector> {
    let rays = extreme_rays(rank, gens);
    if rays.is_empty() {
        return Vec::new();
    }
    let hrep = h_representation(rank, &rays);
    let mut candidates: Vec<Vector> = rays.clone();
    for simplex in triangulate(rank, &rays) {
        for p in parallelepiped_points(rank, &simplex) {
            if !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    let mut basis: Vec<Vector> = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|c| {
                c != *x && {
                    let diff: Vector = x.iter().zip(c).map(|(a, b)| a - b).collect();
                    hrep.contains(&diff)
                }
            })
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

/// Minimal generating set of the monoid `cone(gens) ∩ Z^rank`.
///
/// For non-pointed cones the output starts with `±w` for a lattice basis
/// `w` of the lineality space, followed by lifts of the Hilbert basis of
/// the pointed quotient.
pub fn hilbert_basis(rank: usize, gens: &[Vector]) -> Vec<Vector> {
    let hrep = h_representation(rank, gens);
    let lineality = hrep.lineality();
    if lineality.is_empty() {
        return pointed_hilbert_basis(rank, gens);
    }
    let l = lineality.len();
    let wbig: Vec<Vec<BigInt>> = lineality.iter().map(|w| to_big(w)).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(&wbig, rank));
    let vinv = snf.v.unimodular_inverse();
    let mut trows = wbig.clone();
    trows.extend((l..rank).map(|i| vinv.row(i)));
    let t = IntMatrix::from_rows(&trows, rank);
    let tinv = t.unimodular_inverse();
    // x = y T, so y = x T^{-1}; keep the coordinates past the lineality block.
    let project = |x: &Vector| -> Vector {
        let xb = to_big(x);
        let y: Vec<BigInt> = (0..rank).map(|j| (0..rank).map(|i| &xb[i] * tinv.get(i, j)).sum()).collect();
        to_i64(&y[l..])
    };
    let projected: Vec<Vector> = clean_generators(gens).iter().map(project).collect();
    let quotient_basis = pointed_hilbert_basis(rank - l, &projected);
    let mut out = Vec::new();
    for w in &lineality {
        out.push(w.clone());
        out.push(w.iter().map(|x| -x).collect());
    }
    for y in quotient_basis {
        let x: Vec<BigInt> = (0..rank).map(|j| (0..rank - l).map(|i| BigInt::from(y[i]) * t.get(l + i, j)).sum()).collect();
        out.push(to_i64(&x));
    }
    out
}

/// Hermite-canonical integer basis of the lattice spanned by `vectors`.
pub fn lattice_basis(vectors: &[Vector], rank: usize) -> Vec<Vector> {
    hermite_normal_form(&vectors.iter().map(|v| to_big(v)).collect::<Vec<_>>(), rank).iter().map(|v| to_i64(v)).collect()
}

pub(crate) fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

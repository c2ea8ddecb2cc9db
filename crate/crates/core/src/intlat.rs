//! Exact integer linear algebra: Smith and Hermite normal forms, kernels,
//! cokernels and finitely generated abelian groups.
//!
//! A finitely generated abelian group is kept in the canonical shape
//! `Z/t_1 ⊕ ... ⊕ Z/t_k ⊕ Z^r` with `t_1 | t_2 | ... | t_k` and every
//! `t_i ≥ 2`. Elements carry torsion residues in `[0, t_i)` followed by the
//! free coordinates, so two groups are equal iff their descriptions are.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qlin;

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows; `cols` is used when `rows` is empty.
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().map(|&x| BigInt::from(x))
        });
        IntMatrix { rows: rows.len(), cols, data: data.collect() }
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let data = rows.iter().flat_map(|r| {
            assert_eq!(r.len(), cols);
            r.iter().cloned()
        });
        IntMatrix { rows: rows.len(), cols, data: data.collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let inv = qlin::inverse(&qlin::from_int_rows(&self.to_rows())).expect("matrix is not invertible");
        let rows: Vec<Vec<BigInt>> = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "matrix is not unimodular");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows, self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let s = self.get(source, j) * factor;
            if !s.is_zero() {
                self.data[target * self.cols + j] += s;
            }
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = self.get(i, source) * factor;
            if !s.is_zero() {
                self.data[i * self.cols + target] += s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

/// Result of [`smith_normal_form`]: `d = u · m · v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot: smallest nonzero absolute value in the active block, ties broken
/// by lowest row-major index.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    d.add_row(i, t, &f);
                    u.add_row(i, t, &f);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    let f = -q;
                    d.add_col(j, t, &f);
                    v.add_col(j, t, &f);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows: echelon shape, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Two row sets span the same lattice
/// iff their Hermite forms agree.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        if r >= a.len() {
            break;
        }
        loop {
            let piv = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                if !q.is_zero() {
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
        a.retain(|row| row.iter().any(|x| !x.is_zero()));
    }
    a.truncate(r.min(a.len()));
    a
}

/// Hermite-canonical basis of `{x ∈ Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let basis: Vec<Vec<BigInt>> = (r..m.cols).map(|j| snf.v.column(j)).collect();
    hermite_normal_form(&basis, m.cols)
}

/// Basis of the saturation `(span_Q rows) ∩ Z^cols` of a row lattice.
pub fn saturated_row_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let m = IntMatrix::from_rows(rows, cols);
    let snf = smith_normal_form(&m);
    let r = snf.rank();
    let vinv = snf.v.unimodular_inverse();
    let basis: Vec<Vec<BigInt>> = (0..r).map(|i| vinv.row(i)).collect();
    hermite_normal_form(&basis, cols)
}

/// One integer solution of `m x = b`, if any.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows);
    let snf = smith_normal_form(m);
    let ub = snf.u.apply(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, val) in ub.iter().enumerate() {
        if i < r {
            let (q, rem) = val.div_rem(snf.d.get(i, i));
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.apply(&y))
}

/// Basis of the intersection of two sublattices of `Z^dim` given by spanning sets.
pub fn lattice_intersection(a: &[Vec<BigInt>], b: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // [A | -B] (x, y) = 0  =>  A x lies in both lattices.
    let cols: Vec<Vec<BigInt>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let m = IntMatrix::from_columns(&cols, dim);
    let ker = integer_kernel(&m);
    let amat = IntMatrix::from_columns(a, dim);
    let images: Vec<Vec<BigInt>> = ker.iter().map(|k| amat.apply(&k[..a.len()])).collect();
    hermite_normal_form(&images, dim)
}

/// Finite index or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Z/t_1 ⊕ ... ⊕ Z/t_k ⊕ Z^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion_orders: Vec<BigInt>,
}

/// Element of an [`AbelianGroup`]; torsion residues are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub torsion_part: Vec<BigInt>,
    pub free_part: Vec<BigInt>,
}

impl GroupElement {
    /// Coordinates in the order torsion residues, then free part.
    pub fn coords(&self) -> Vec<BigInt> {
        self.torsion_part.iter().chain(&self.free_part).cloned().collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        if c.len() == 1 {
            write!(f, "{}", c[0])
        } else {
            write!(f, "({})", c.join(","))
        }
    }
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion_orders: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion_orders.is_empty()
    }

    /// Number of coordinates of an element.
    pub fn coord_len(&self) -> usize {
        self.torsion_orders.len() + self.free_rank
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            torsion_part: vec![BigInt::zero(); self.torsion_orders.len()],
            free_part: vec![BigInt::zero(); self.free_rank],
        }
    }

    /// Element from coordinates (torsion first); torsion entries are reduced.
    pub fn element(&self, coords: &[BigInt]) -> GroupElement {
        assert_eq!(coords.len(), self.coord_len(), "wrong coordinate count for group");
        let t = self.torsion_orders.len();
        GroupElement {
            torsion_part: coords[..t].iter().zip(&self.torsion_orders).map(|(x, n)| x.mod_floor(n)).collect(),
            free_part: coords[t..].to_vec(),
        }
    }

    pub fn element_i64(&self, coords: &[i64]) -> GroupElement {
        let c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        self.element(&c)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let c: Vec<BigInt> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
        self.element(&c)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let c: Vec<BigInt> = a.coords().iter().map(|x| -x).collect();
        self.element(&c)
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        let c: Vec<BigInt> = a.coords().iter().map(|x| x * k).collect();
        self.element(&c)
    }

    pub fn is_zero_element(&self, a: &GroupElement) -> bool {
        a.torsion_part.iter().chain(&a.free_part).all(Zero::is_zero)
    }

    /// Generators of the relation lattice `⊕ t_i Z e_i` in coordinate space.
    fn relation_lattice(&self) -> Vec<Vec<BigInt>> {
        let n = self.coord_len();
        self.torsion_orders
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = t.clone();
                v
            })
            .collect()
    }

    /// Canonical Hermite basis of the lift of `⟨gens⟩` to coordinate space
    /// (always containing the relation lattice).
    pub fn subgroup_lattice(&self, gens: &[GroupElement]) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(GroupElement::coords).collect();
        rows.extend(self.relation_lattice());
        hermite_normal_form(&rows, self.coord_len())
    }

    /// Canonical generator list of `⟨gens⟩`; equal subgroups give equal lists.
    pub fn canonical_generators(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .subgroup_lattice(gens)
            .iter()
            .map(|r| self.element(r))
            .filter(|e| !self.is_zero_element(e))
            .collect();
        out.dedup();
        out
    }

    /// Whether `x ∈ ⟨gens⟩`.
    pub fn contains(&self, gens: &[GroupElement], x: &GroupElement) -> bool {
        element_order_in_quotient(x, gens, self) == Index::Finite(BigInt::one())
    }

    /// Whether `⟨a⟩ ⊆ ⟨b⟩`.
    pub fn is_subgroup(&self, a: &[GroupElement], b: &[GroupElement]) -> bool {
        a.iter().all(|x| self.contains(b, x))
    }

    /// Canonical generators of `⟨a⟩ ∩ ⟨b⟩`.
    pub fn intersection(&self, a: &[GroupElement], b: &[GroupElement]) -> Vec<GroupElement> {
        let la = self.subgroup_lattice(a);
        let lb = self.subgroup_lattice(b);
        let n = self.coord_len();
        if n == 0 {
            return Vec::new();
        }
        let inter = lattice_intersection(&la, &lb, n);
        let elems: Vec<GroupElement> = inter.iter().map(|r| self.element(r)).collect();
        self.canonical_generators(&elems)
    }
}

/// Cokernel of an integer matrix together with its projection.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: AbelianGroup,
    /// Rows give the group coordinates (torsion first) of an ambient vector.
    proj: IntMatrix,
    /// Columns lift group coordinates back to the ambient space.
    section: IntMatrix,
}

impl Cokernel {
    pub fn ambient_dim(&self) -> usize {
        self.proj.cols()
    }

    pub fn project(&self, x: &[BigInt]) -> GroupElement {
        self.group.element(&self.proj.apply(x))
    }

    pub fn project_i64(&self, x: &[i64]) -> GroupElement {
        let b: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.project(&b)
    }

    /// Some ambient vector projecting to `g`.
    pub fn lift(&self, g: &GroupElement) -> Vec<BigInt> {
        self.section.apply(&g.coords())
    }

    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.proj
    }
}

/// Cokernel of `m : Z^cols → Z^rows`.
///
/// The free coordinates are canonical: the free part of the projection is
/// put in Hermite normal form.
pub fn cokernel_presentation(m: &IntMatrix) -> Cokernel {
    let n = m.rows;
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let uinv = snf.u.unimodular_inverse();
    let mut torsion_orders = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut torsion_cols = Vec::new();
    for i in 0..r {
        let di = snf.d.get(i, i);
        if di > &BigInt::one() {
            torsion_orders.push(di.clone());
            torsion_rows.push(snf.u.row(i).iter().map(|x| x.mod_floor(di)).collect::<Vec<_>>());
            torsion_cols.push(uinv.column(i));
        }
    }
    let free_rows: Vec<Vec<BigInt>> = (r..n).map(|i| snf.u.row(i)).collect();
    let free_cols: Vec<Vec<BigInt>> = (r..n).map(|i| uinv.column(i)).collect();
    let free_rank = free_rows.len();
    let hnf = hermite_normal_form(&free_rows, n);
    assert_eq!(hnf.len(), free_rank);
    let free_lift = if free_rank > 0 {
        // W = H · U_free, and H · U_free · W^{-1} = I.
        let h = IntMatrix::from_rows(&hnf, n);
        let ufc = IntMatrix::from_columns(&free_cols, n);
        let w = h.mul(&ufc);
        ufc.mul(&w.unimodular_inverse())
    } else {
        IntMatrix::zeros(n, 0)
    };
    let mut proj_rows = torsion_rows;
    proj_rows.extend(hnf);
    let mut section_cols = torsion_cols;
    section_cols.extend((0..free_rank).map(|j| free_lift.column(j)));
    let k = proj_rows.len();
    Cokernel {
        group: AbelianGroup { free_rank, torsion_orders },
        proj: IntMatrix::from_rows(&proj_rows, n),
        section: if k == 0 { IntMatrix::zeros(n, 0) } else { IntMatrix::from_columns(&section_cols, n) },
    }
}

/// `[g : ⟨sub⟩]`.
pub fn subgroup_index(sub: &[GroupElement], g: &AbelianGroup) -> Index {
    let n = g.coord_len();
    if n == 0 {
        return Index::Finite(BigInt::one());
    }
    let lat = g.subgroup_lattice(sub);
    if lat.len() < n {
        return Index::Infinite;
    }
    // Full-rank echelon basis: index is the product of the pivots.
    Index::Finite(lat.iter().enumerate().map(|(i, row)| row[i].clone()).product())
}

/// Least `m ≥ 1` with `m·x ∈ ⟨sub⟩`.
pub fn element_order_in_quotient(x: &GroupElement, sub: &[GroupElement], g: &AbelianGroup) -> Index {
    let n = g.coord_len();
    if n == 0 {
        return Index::Finite(BigInt::one());
    }
    let lat = g.subgroup_lattice(sub);
    if lat.is_empty() {
        return if g.is_zero_element(x) { Index::Finite(BigInt::one()) } else { Index::Infinite };
    }
    let quotient = cokernel_presentation(&IntMatrix::from_columns(&lat, n));
    let image = quotient.project(&x.coords());
    if image.free_part.iter().any(|v| !v.is_zero()) {
        return Index::Infinite;
    }
    let order = image
        .torsion_part
        .iter()
        .zip(&quotient.group.torsion_orders)
        .fold(BigInt::one(), |acc, (v, t)| acc.lcm(&(t / v.gcd(t))));
    Index::Finite(order)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("lattice coordinate exceeds i64")).collect()
}

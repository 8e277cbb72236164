//! Exact linear algebra over `Z` for finite abelian groups.
//!
//! Groups are presented as `Z^rank / L` where the columns of a relation matrix
//! span `L`. Every algorithm works in "diagonal coordinates": the relation
//! lattice is brought to diagonal form once by a Smith normal form and all
//! later computations reduce entries modulo the diagonal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_i64_rows())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn from_big_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> IntMatrix {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m.data[i][i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.data[i][j].is_one()
                    } else {
                        self.data[i][j].is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `col_dst += q * col_src`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in &mut self.data {
            if !r[src].is_zero() {
                let t = &r[src] * q;
                r[dst] += t;
            }
        }
    }

    /// `row_dst += q * row_src`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x += y * q;
            }
        }
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal, `d1 | d2 | ...`.
/// `u_inv` is the inverse of `U`, tracked alongside it.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.data[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SnfRun {
    a: IntMatrix,
    u: Option<(IntMatrix, IntMatrix)>,
    v: Option<IntMatrix>,
}

impl SnfRun {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.data.swap(i, j);
        if let Some((u, ui)) = &mut self.u {
            u.data.swap(i, j);
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// `row_dst += q * row_src`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        if let Some((u, ui)) = &mut self.u {
            u.add_row(dst, src, q);
            ui.add_col(src, dst, &-q);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a.data[i] {
            *x = -&*x;
        }
        if let Some((u, ui)) = &mut self.u {
            for x in &mut u.data[i] {
                *x = -&*x;
            }
            for r in &mut ui.data {
                r[i] = -&r[i];
            }
        }
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.rows, self.a.cols);
        for t in 0..rows.min(cols) {
            loop {
                // smallest absolute nonzero entry, row-major tie-break
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = &self.a.data[i][j];
                        if x.is_zero() {
                            continue;
                        }
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => x.abs() < self.a.data[bi][bj].abs(),
                        };
                        if better {
                            best = Some((i, j));
                            if x.abs().is_one() {
                                break;
                            }
                        }
                    }
                    if best.is_some_and(|(bi, bj)| self.a.data[bi][bj].abs().is_one()) {
                        break;
                    }
                }
                let Some((pi, pj)) = best else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a.data[t][t].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a.data[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a.data[i][t].div_floor(&p);
                    self.add_row(i, t, &-q);
                    if !self.a.data[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if self.a.data[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a.data[t][j].div_floor(&p);
                    self.add_col(j, t, &-q);
                    if !self.a.data[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a.data[i][j].is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.data[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with both transforms (and the inverse of the left one).
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut run = SnfRun {
        a: m.clone(),
        u: Some((IntMatrix::identity(m.rows), IntMatrix::identity(m.rows))),
        v: Some(IntMatrix::identity(m.cols)),
    };
    run.run();
    let (u, u_inv) = run.u.unwrap();
    Snf { u, u_inv, s: run.a, v: run.v.unwrap() }
}

fn snf_left_only(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<BigInt>) {
    let mut run = SnfRun {
        a: m.clone(),
        u: Some((IntMatrix::identity(m.rows), IntMatrix::identity(m.rows))),
        v: None,
    };
    run.run();
    let (u, u_inv) = run.u.unwrap();
    let d = (0..m.rows.min(m.cols)).map(|i| run.a.data[i][i].clone()).collect();
    (u, u_inv, d)
}

/// Invariant factors (including units and zeros) of an integer matrix.
pub fn matrix_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut run = SnfRun { a: m.clone(), u: None, v: None };
    run.run();
    (0..m.rows.min(m.cols)).map(|i| run.a.data[i][i].clone()).collect()
}

/// Canonical invariant factors `d1 | d2 | ...` (all > 1) of `(+) Z/n_i`.
pub fn canonical_factors(orders: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = orders.iter().filter(|o| !o.is_one()).cloned().collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(m)
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Sublattice of `span(K)` cut out by `row . y == 0 (mod modulus)`, with `K`
/// column-reduced in place. Entries of row `i` are reduced modulo `row_mods[i]`
/// afterwards; the caller guarantees `row_mods[i] * e_i` lies in every lattice
/// involved.
fn cut_lattice(k: &mut IntMatrix, row: &[BigInt], modulus: &BigInt, row_mods: &[BigInt]) {
    let n = k.cols;
    let mut v: Vec<BigInt> = (0..n)
        .map(|c| {
            let s: BigInt = (0..k.rows)
                .filter(|&i| !row[i].is_zero() && !k.data[i][c].is_zero())
                .map(|i| &row[i] * &k.data[i][c])
                .sum();
            reduce(&s, modulus)
        })
        .collect();
    let Some(p) = v.iter().position(|x| !x.is_zero()) else {
        return;
    };
    for c in p + 1..n {
        if v[c].is_zero() {
            continue;
        }
        let (g, x, y) = ext_gcd(&v[p], &v[c]);
        let (a, b) = (&v[p] / &g, &v[c] / &g);
        // [col_p col_c] <- [col_p col_c] * [[x, -b], [y, a]]
        for r in &mut k.data {
            let (cp, cc) = (r[p].clone(), r[c].clone());
            if cp.is_zero() && cc.is_zero() {
                continue;
            }
            r[p] = &x * &cp + &y * &cc;
            r[c] = &a * &cc - &b * &cp;
        }
        v[p] = g;
        v[c] = BigInt::zero();
    }
    let scale = if modulus.is_zero() {
        BigInt::zero()
    } else {
        modulus / v[p].gcd(modulus)
    };
    for r in &mut k.data {
        r[p] = &r[p] * &scale;
    }
    for (i, r) in k.data.iter_mut().enumerate() {
        if !row_mods[i].is_zero() {
            for x in r.iter_mut() {
                *x = x.mod_floor(&row_mods[i]);
            }
        }
    }
}

/// A finite abelian group `Z^rank / L`.
#[derive(Clone, Debug)]
pub struct FinAbGroup {
    rank: usize,
    relations: IntMatrix,
    /// diagonal coordinates are `to_diag * x`, reduced modulo `mods`
    to_diag: Option<IntMatrix>,
    from_diag: Option<IntMatrix>,
    mods: Vec<BigInt>,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.relations == other.relations
    }
}

impl FinAbGroup {
    /// `(+) Z/orders[i]`.
    pub fn diagonal(orders: &[u64]) -> FinAbGroup {
        let big: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        FinAbGroup::diagonal_big(&big)
    }

    pub fn diagonal_big(orders: &[BigInt]) -> FinAbGroup {
        assert!(orders.iter().all(|o| o.is_positive()), "orders must be positive");
        FinAbGroup {
            rank: orders.len(),
            relations: IntMatrix::diagonal(orders),
            to_diag: None,
            from_diag: None,
            mods: orders.to_vec(),
        }
    }

    /// General presentation; the relation columns must span a full-rank lattice.
    pub fn new(rank: usize, relations: IntMatrix) -> Result<FinAbGroup> {
        if relations.rows != rank {
            return Err(Error::Validation(format!(
                "relation matrix has {} rows, expected {rank}",
                relations.rows
            )));
        }
        if relations.cols == rank && relations.is_diagonal() {
            let d: Vec<BigInt> = (0..rank).map(|i| relations.data[i][i].abs()).collect();
            if d.iter().any(|x| x.is_zero()) {
                return Err(Error::Validation("group is infinite".into()));
            }
            return Ok(FinAbGroup::diagonal_big(&d));
        }
        let (u, u_inv, d) = snf_left_only(&relations);
        if d.len() < rank || d.iter().any(|x| x.is_zero()) {
            return Err(Error::Validation("relation lattice is not of full rank".into()));
        }
        Ok(FinAbGroup { rank, relations, to_diag: Some(u), from_diag: Some(u_inv), mods: d })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup::diagonal(&[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn order(&self) -> BigInt {
        self.mods.iter().product()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        canonical_factors(&self.mods)
    }

    pub fn is_trivial(&self) -> bool {
        self.mods.iter().all(|m| m.is_one())
    }

    /// Exponent (lcm of element orders).
    pub fn exponent(&self) -> BigInt {
        self.mods.iter().fold(BigInt::one(), |acc, m| acc.lcm(m))
    }

    fn to_diag(&self, x: &[BigInt]) -> Vec<BigInt> {
        match &self.to_diag {
            None => x.to_vec(),
            Some(u) => u.mul_vec(x),
        }
    }

    fn from_diag(&self, x: &[BigInt]) -> Vec<BigInt> {
        match &self.from_diag {
            None => x.to_vec(),
            Some(u) => u.mul_vec(x),
        }
    }

    /// Canonical representative: least nonnegative in diagonal coordinates.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank, "element has wrong rank");
        let d: Vec<BigInt> = self.to_diag(x).iter().zip(&self.mods).map(|(a, m)| reduce(a, m)).collect();
        self.from_diag(&d)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.to_diag(x).iter().zip(&self.mods).all(|(a, m)| reduce(a, m).is_zero())
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.canonical(&s)
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| a * k).collect();
        self.canonical(&s)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }

    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Direct sum of groups, coordinates concatenated.
    pub fn direct_sum(parts: &[FinAbGroup]) -> FinAbGroup {
        if parts.iter().all(|p| p.to_diag.is_none()) {
            let orders: Vec<BigInt> = parts.iter().flat_map(|p| p.mods.clone()).collect();
            return FinAbGroup::diagonal_big(&orders);
        }
        let rank: usize = parts.iter().map(|p| p.rank).sum();
        let cols: usize = parts.iter().map(|p| p.relations.cols).sum();
        let mut rel = IntMatrix::zeros(rank, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rank {
                for j in 0..p.relations.cols {
                    rel.data[r0 + i][c0 + j] = p.relations.data[i][j].clone();
                }
            }
            r0 += p.rank;
            c0 += p.relations.cols;
        }
        FinAbGroup::new(rank, rel).expect("direct sum of finite groups is finite")
    }

    /// Every element, in mixed-radix order over diagonal coordinates.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let gens: Vec<Vec<BigInt>> = (0..self.rank)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.rank];
                e[i] = BigInt::one();
                self.from_diag(&e)
            })
            .collect();
        enumerate_combinations(self, &gens, &self.mods)
    }
}

fn enumerate_combinations(
    ambient: &FinAbGroup,
    gens: &[Vec<BigInt>],
    orders: &[BigInt],
) -> Vec<Vec<BigInt>> {
    let total: BigInt = orders.iter().product();
    let total = usize::try_from(&total).expect("group too large to enumerate");
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![BigInt::zero(); orders.len()];
    let mut current = ambient.zero();
    for _ in 0..total {
        out.push(ambient.canonical(&current));
        // increment mixed-radix counter
        for k in (0..orders.len()).rev() {
            digits[k] += 1;
            for (c, g) in current.iter_mut().zip(&gens[k]) {
                *c += g;
            }
            if digits[k] < orders[k] {
                break;
            }
            for (c, g) in current.iter_mut().zip(&gens[k]) {
                *c -= g * &orders[k];
            }
            digits[k] = BigInt::zero();
        }
    }
    out
}

/// A homomorphism given by an integer matrix (target rank x source rank).
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks `M * L_source` lies in `L_target`.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<GroupHom> {
        if matrix.rows != target.rank || matrix.cols != source.rank {
            return Err(Error::Validation(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows, matrix.cols, target.rank, source.rank
            )));
        }
        for j in 0..source.relations.cols {
            let image = matrix.mul_vec(&source.relations.column(j));
            if !target.is_zero(&image) {
                return Err(Error::Validation(format!(
                    "homomorphism is not well defined on relation {j}"
                )));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    /// Builds the map from the images of the source's standard generators.
    pub fn from_images(
        source: FinAbGroup,
        target: FinAbGroup,
        images: &[Vec<BigInt>],
    ) -> Result<GroupHom> {
        let m = IntMatrix::from_columns(target.rank, images);
        GroupHom::new(source, target, m)
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.canonical(&self.matrix.mul_vec(x))
    }

    fn diag_matrix(&self) -> IntMatrix {
        let mut m = self.matrix.clone();
        if let Some(u) = &self.target.to_diag {
            m = u.mul(&m);
        }
        if let Some(ui) = &self.source.from_diag {
            m = m.mul(ui);
        }
        m
    }

    pub fn kernel(&self) -> Subgroup {
        let m = self.diag_matrix();
        let a = self.source.rank;
        let mut k = IntMatrix::identity(a);
        for (i, d) in self.source.mods.iter().enumerate() {
            k.data[i][i] = reduce(&k.data[i][i], d);
        }
        for j in 0..self.target.rank {
            let modulus = &self.target.mods[j];
            if modulus.is_one() {
                continue;
            }
            cut_lattice(&mut k, &m.data[j], modulus, &self.source.mods);
        }
        let gens: Vec<Vec<BigInt>> =
            k.columns().iter().map(|c| self.source.from_diag(c)).collect();
        Subgroup::generated(&self.source, &gens)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.matrix.columns())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order().is_one()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// Some `x` with `h(x) = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let solver = Solver::new(&self.target, &self.matrix.columns());
        solver.coefficients(b).map(|y| self.source.canonical(&y))
    }
}

/// Solves `sum y_k g_k = x` in a finite abelian group.
#[derive(Clone, Debug)]
pub struct Solver {
    ambient: FinAbGroup,
    ngens: usize,
    snf: Snf,
}

impl Solver {
    pub fn new(ambient: &FinAbGroup, gens: &[Vec<BigInt>]) -> Solver {
        let a = ambient.rank;
        let s = gens.len();
        let mut p = IntMatrix::zeros(a, s + a);
        for (k, g) in gens.iter().enumerate() {
            let d = ambient.to_diag(g);
            for i in 0..a {
                p.data[i][k] = d[i].clone();
            }
        }
        for i in 0..a {
            p.data[i][s + i] = ambient.mods[i].clone();
        }
        Solver { ambient: ambient.clone(), ngens: s, snf: smith_normal_form(&p) }
    }

    /// Integer coefficients (not reduced) for `x`, or `None` if `x` is not in
    /// the span.
    pub fn coefficients(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let b = self.snf.u.mul_vec(&self.ambient.to_diag(x));
        let diag = self.snf.diagonal();
        let mut w = vec![BigInt::zero(); self.snf.v.rows];
        for (i, bi) in b.iter().enumerate() {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !bi.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = bi.div_mod_floor(&d);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        let y = self.snf.v.mul_vec(&w);
        Some(y[..self.ngens].to_vec())
    }
}

/// A subgroup in canonical form: `(+) Z/orders[k]` generated by
/// `generators[k]`, with `orders` the invariant factors (all > 1).
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FinAbGroup,
    generators: Vec<Vec<BigInt>>,
    orders: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupSummary {
    pub order: String,
    pub invariant_factors: Vec<String>,
}

impl Subgroup {
    /// The subgroup generated by `gens`, put in canonical form.
    pub fn generated(ambient: &FinAbGroup, gens: &[Vec<BigInt>]) -> Subgroup {
        let mut kept: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            let c = ambient.canonical(g);
            if !ambient.is_zero(&c) && !kept.contains(&c) {
                kept.push(c);
            }
        }
        let s = kept.len();
        if s == 0 {
            return Subgroup { ambient: ambient.clone(), generators: vec![], orders: vec![] };
        }
        let exponent = ambient.exponent();
        let diag_gens: Vec<Vec<BigInt>> = kept.iter().map(|g| ambient.to_diag(g)).collect();
        // relation lattice {y : sum y_k g_k = 0}
        let mut k = IntMatrix::identity(s);
        let row_mods = vec![exponent.clone(); s];
        for i in 0..ambient.rank {
            if ambient.mods[i].is_one() {
                continue;
            }
            let row: Vec<BigInt> = diag_gens.iter().map(|g| g[i].clone()).collect();
            cut_lattice(&mut k, &row, &ambient.mods[i], &row_mods);
        }
        let mut p = IntMatrix::zeros(s, 2 * s);
        for i in 0..s {
            for j in 0..s {
                p.data[i][j] = k.data[i][j].clone();
            }
            p.data[i][s + i] = exponent.clone();
        }
        let (_, u_inv, d) = snf_left_only(&p);
        let gm = IntMatrix::from_columns(ambient.rank, &kept);
        let new_gens = gm.mul(&u_inv);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, di) in d.iter().enumerate() {
            if di.is_one() {
                continue;
            }
            generators.push(ambient.canonical(&new_gens.column(i)));
            orders.push(di.clone());
        }
        Subgroup { ambient: ambient.clone(), generators, orders }
    }

    pub fn whole(ambient: &FinAbGroup) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = (0..ambient.rank).map(|i| ambient.unit_vector(i)).collect();
        Subgroup::generated(ambient, &gens)
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// The subgroup as an abstract group `(+) Z/orders[k]`.
    pub fn as_group(&self) -> FinAbGroup {
        FinAbGroup::diagonal_big(&self.orders)
    }

    /// Inclusion `(+) Z/orders[k] -> ambient`.
    pub fn embedding(&self) -> GroupHom {
        GroupHom::from_images(self.as_group(), self.ambient.clone(), &self.generators)
            .expect("generators have the recorded orders")
    }

    pub fn solver(&self) -> Solver {
        Solver::new(&self.ambient, &self.generators)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solver().coefficients(x).is_some()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        let s = self.solver();
        other.generators.iter().all(|g| s.coefficients(g).is_some())
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.contains_subgroup(other)
    }

    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        enumerate_combinations(&self.ambient, &self.generators, &self.orders)
    }

    /// `self / sub`, failing if `sub` is not contained in `self`.
    pub fn quotient(&self, sub: &Subgroup) -> Result<Quotient> {
        let solver = self.solver();
        let s = self.generators.len();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for (k, o) in self.orders.iter().enumerate() {
            let mut c = vec![BigInt::zero(); s];
            c[k] = o.clone();
            cols.push(c);
        }
        for g in &sub.generators {
            let y = solver.coefficients(g).ok_or(Error::NotContained)?;
            cols.push(y);
        }
        let p = IntMatrix::from_columns(s, &cols);
        let (u, u_inv, d) = snf_left_only(&p);
        let gm = IntMatrix::from_columns(self.ambient.rank, &self.generators);
        let new_gens = if s == 0 { IntMatrix::zeros(self.ambient.rank, 0) } else { gm.mul(&u_inv) };
        let mut representatives = Vec::new();
        let mut factors = Vec::new();
        let mut kept = Vec::new();
        for (i, di) in d.iter().enumerate() {
            if di.is_one() {
                continue;
            }
            representatives.push(self.ambient.canonical(&new_gens.column(i)));
            factors.push(di.clone());
            kept.push(i);
        }
        Ok(Quotient { factors, representatives, solver, u, kept })
    }

    pub fn summary(&self) -> SubgroupSummary {
        SubgroupSummary {
            order: self.order().to_string(),
            invariant_factors: self.orders.iter().map(|o| o.to_string()).collect(),
        }
    }
}

/// `A / B` with one representative per invariant-factor generator.
#[derive(Clone, Debug)]
pub struct Quotient {
    factors: Vec<BigInt>,
    representatives: Vec<Vec<BigInt>>,
    solver: Solver,
    u: IntMatrix,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.representatives
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Coordinates of the class of `x` (reduced modulo the factors), or
    /// `None` if `x` is not in the numerator.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solver.coefficients(x)?;
        let z = self.u.mul_vec(&y);
        Some(self.kept.iter().zip(&self.factors).map(|(&i, f)| z[i].mod_floor(f)).collect())
    }
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn to_u64s(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).expect("small nonnegative integer")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn cyc(orders: &[u64]) -> FinAbGroup {
        FinAbGroup::diagonal(orders)
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.diagonal()), vec![1, 6]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.s);

        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.u.is_identity() && s.v.is_identity());
        assert_eq!(s.s, z);

        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.diagonal()), vec![2, 4]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.s);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
    }

    #[test]
    fn kernels() {
        let id = GroupHom::new(cyc(&[2]), cyc(&[2]), IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert!(id.kernel().is_trivial());

        let red = GroupHom::new(cyc(&[4]), cyc(&[2]), IntMatrix::from_rows(&[vec![1]])).unwrap();
        let k = red.kernel();
        assert_eq!(ints(k.invariant_factors()), vec![2]);
        assert_eq!(ints(&k.generators()[0]), vec![2]);

        let sum =
            GroupHom::new(cyc(&[2, 2]), cyc(&[2]), IntMatrix::from_rows(&[vec![1, 1]])).unwrap();
        let k = sum.kernel();
        assert_eq!(ints(k.invariant_factors()), vec![2]);
        assert_eq!(ints(&k.generators()[0]), vec![1, 1]);
    }

    #[test]
    fn ill_defined_hom_rejected() {
        // Z/2 -> Z/3 sending 1 to 1 is not a homomorphism.
        assert!(GroupHom::new(cyc(&[2]), cyc(&[3]), IntMatrix::from_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn images() {
        let id = GroupHom::new(cyc(&[6]), cyc(&[6]), IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(ints(id.image().invariant_factors()), vec![6]);
        let dbl = GroupHom::new(cyc(&[4]), cyc(&[4]), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(ints(dbl.image().invariant_factors()), vec![2]);
        let zero = GroupHom::new(cyc(&[4]), cyc(&[4]), IntMatrix::from_rows(&[vec![0]])).unwrap();
        assert!(zero.image().is_trivial());
    }

    #[test]
    fn quotients() {
        let a = cyc(&[4]);
        let whole = Subgroup::whole(&a);
        let sub = Subgroup::generated(&a, &[big(&[2])]);
        assert_eq!(ints(whole.quotient(&sub).unwrap().invariant_factors()), vec![2]);
        assert!(whole.quotient(&whole).unwrap().is_trivial());

        let b = cyc(&[2, 4]);
        let whole = Subgroup::whole(&b);
        let sub = Subgroup::generated(&b, &[big(&[0, 2])]);
        assert_eq!(ints(whole.quotient(&sub).unwrap().invariant_factors()), vec![2, 2]);

        let small = Subgroup::generated(&b, &[big(&[0, 2])]);
        let bigger = Subgroup::generated(&b, &[big(&[1, 0])]);
        assert_eq!(small.quotient(&bigger).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn solving() {
        let dbl = GroupHom::new(cyc(&[4]), cyc(&[4]), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let x = dbl.solve(&big(&[2])).unwrap();
        assert!(x == big(&[1]) || x == big(&[3]));
        assert!(dbl.solve(&big(&[1])).is_none());
        assert_eq!(dbl.solve(&big(&[0])).map(|x| dbl.apply(&x)), Some(big(&[0])));
    }

    #[test]
    fn general_presentation() {
        // Z^2 / <(2,4),(6,8)> = Z/2 x Z/4
        let g = FinAbGroup::new(2, IntMatrix::from_rows(&[vec![2, 6], vec![4, 8]])).unwrap();
        assert_eq!(ints(&g.invariant_factors()), vec![2, 4]);
        assert_eq!(g.elements().len(), 8);
        assert!(g.is_zero(&big(&[2, 4])));
        assert!(!g.is_zero(&big(&[1, 0])));
        assert!(FinAbGroup::new(2, IntMatrix::from_rows(&[vec![1], vec![0]])).is_err());
    }

    #[test]
    fn canonical_factor_normalisation() {
        assert_eq!(ints(&canonical_factors(&big(&[2, 3]))), vec![6]);
        assert_eq!(ints(&canonical_factors(&big(&[4, 2, 1]))), vec![2, 4]);
        assert!(canonical_factors(&big(&[1, 1])).is_empty());
    }
}

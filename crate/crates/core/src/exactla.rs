//! Exact linear algebra over the rationals.
//!
//! Matrices are stored as sorted sparse rows. Elimination scales every row to
//! a primitive integer vector and runs fraction-free (Bareiss) forward
//! elimination, on a dense array when the matrix has fewer than
//! [`DENSE_COLUMN_LIMIT`] columns and on sparse rows otherwise. The reduced
//! row echelon form is then recovered over the rationals, so every basis this
//! module hands out is canonical: it depends only on the matrix, not on the
//! storage path or on the order entries were inserted.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Below this many columns elimination runs on a dense array.
pub const DENSE_COLUMN_LIMIT: usize = 64;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut n = BigInt::parse_bytes(num.as_bytes(), 10)?;
    if neg {
        n = -n;
    }
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            let bytes = d.as_bytes();
            if bytes.is_empty() || !(b'1'..=b'9').contains(&bytes[0]) || !bytes.iter().all(|b| b.is_ascii_digit()) {
                return None;
            }
            BigInt::parse_bytes(bytes, 10)?
        }
    };
    Some(Rational::new(n, d))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &[(usize, Rational)], n: usize) -> Vec<Rational> {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

/// `acc += coef * v`, dropping entries that cancel.
pub fn accumulate(acc: &mut BTreeMap<usize, Rational>, coef: &Rational, v: &[(usize, Rational)]) {
    for (i, x) in v {
        add_entry(acc, *i, coef * x);
    }
}

pub fn add_entry<K: Ord>(acc: &mut BTreeMap<K, Rational>, key: K, value: Rational) {
    if value.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        MatrixQ { rows: n, cols: n, data: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            add_entry(&mut acc[r], c, v);
        }
        MatrixQ { rows, cols, data: acc.into_iter().map(|m| m.into_iter().collect()).collect() }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[Vec<Rational>]) -> Self {
        assert_eq!(entries.len(), rows);
        let data = entries
            .iter()
            .map(|row| {
                assert_eq!(row.len(), cols);
                to_sparse(row)
            })
            .collect();
        MatrixQ { rows, cols, data }
    }

    pub fn from_i64(entries: &[&[i64]]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = entries.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_dense(rows, cols, &dense)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let triplets = columns.iter().enumerate().flat_map(|(j, col)| {
            assert_eq!(col.len(), rows);
            col.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(i, x)| (i, j, x.clone()))
        });
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let cols = columns.len();
        let triplets =
            columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, x)| (*i, j, x.clone())));
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|row| to_dense(row, self.cols)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        let t = self.transpose();
        t.data.iter().map(|row| to_dense(row, self.rows)).collect()
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        MatrixQ { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (c, x)| if v[*c].is_zero() { acc } else { acc + x * &v[*c] }))
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> MatrixQ {
        if s.is_zero() {
            return MatrixQ::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect()).collect();
        MatrixQ { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, k: usize) -> MatrixQ {
        assert_eq!(self.rows, self.cols);
        let mut out = MatrixQ::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> MatrixQ {
        MatrixQ { rows: rows.len(), cols: self.cols, data: rows.iter().map(|&r| self.data[r].clone()).collect() }
    }

    pub fn select_cols(&self, cols: &[usize]) -> MatrixQ {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let triplets = self
            .entries()
            .filter_map(|(r, c, v)| pos.get(&c).map(|&k| (r, k, v.clone())))
            .collect::<Vec<_>>();
        Self::from_triplets(self.rows, cols.len(), triplets)
    }

    pub fn hstack(blocks: &[&MatrixQ]) -> MatrixQ {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut offset = 0;
        let mut data = vec![Vec::new(); rows];
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (r, row) in b.data.iter().enumerate() {
                data[r].extend(row.iter().map(|(c, v)| (c + offset, v.clone())));
            }
            offset += b.cols;
        }
        MatrixQ { rows, cols: offset, data }
    }

    pub fn vstack(blocks: &[&MatrixQ]) -> MatrixQ {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        MatrixQ { rows: data.len(), cols, data }
    }

    /// First column on which `self` and `other` differ, with the difference `self - other` there.
    pub fn first_difference(&self, other: &MatrixQ) -> Option<(usize, Vec<Rational>)> {
        let diff = self - other;
        if diff.is_zero() {
            return None;
        }
        let col = diff.entries().map(|(_, c, _)| c).min()?;
        Some((col, diff.column(col)))
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;

    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "product of {}x{} by {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BTreeMap::new();
                for (k, a) in row {
                    accumulate(&mut acc, a, &rhs.data[*k]);
                }
                acc.into_iter().collect()
            })
            .collect();
        MatrixQ { rows: self.rows, cols: rhs.cols, data }
    }
}

fn merge_rows(a: &[(usize, Rational)], b: &[(usize, Rational)], sign_b: bool) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if sign_b { -b[j].1.clone() } else { b[j].1.clone() };
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = if sign_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Add for &MatrixQ {
    type Output = MatrixQ;

    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| merge_rows(a, b, false)).collect();
        MatrixQ { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &MatrixQ {
    type Output = MatrixQ;

    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| merge_rows(a, b, true)).collect();
        MatrixQ { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &MatrixQ {
    type Output = MatrixQ;

    fn neg(self) -> MatrixQ {
        self.scale(&-Rational::one())
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

/// Scales a rational row to a primitive integer row with the same support.
fn primitive_integer_row(row: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut ints: Vec<(usize, BigInt)> = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut ints {
            *v = &*v / &g;
        }
    }
    ints
}

fn exact_div(n: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Integer row echelon form and pivot columns.
struct Echelon {
    rows: Vec<Vec<(usize, BigInt)>>,
    pivots: Vec<usize>,
}

fn bareiss_dense(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = exact_div(v, &prev);
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let rows = a
        .into_iter()
        .map(|row| row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    Echelon { rows, pivots }
}

fn bareiss_sparse(mut a: Vec<Vec<(usize, BigInt)>>) -> Echelon {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let ncols = a.iter().filter_map(|row| row.last().map(|(c, _)| c + 1)).max().unwrap_or(0);
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i].first().is_some_and(|(j, _)| *j == c)) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[0].1.clone();
        for row in rest.iter_mut() {
            let leads_here = row.first().is_some_and(|(j, _)| *j == c);
            if !leads_here {
                for (_, v) in row.iter_mut() {
                    *v = exact_div(&pivot * &*v, &prev);
                }
                continue;
            }
            let factor = row[0].1.clone();
            let lhs = &row[1..];
            let rhs = &pivot_row[1..];
            let mut out = Vec::with_capacity(lhs.len() + rhs.len());
            let (mut i, mut j) = (0, 0);
            while i < lhs.len() || j < rhs.len() {
                let (col, v) = if j >= rhs.len() || (i < lhs.len() && lhs[i].0 < rhs[j].0) {
                    i += 1;
                    (lhs[i - 1].0, &pivot * &lhs[i - 1].1)
                } else if i >= lhs.len() || rhs[j].0 < lhs[i].0 {
                    j += 1;
                    (rhs[j - 1].0, -(&factor * &rhs[j - 1].1))
                } else {
                    i += 1;
                    j += 1;
                    (lhs[i - 1].0, &pivot * &lhs[i - 1].1 - &factor * &rhs[j - 1].1)
                };
                if !v.is_zero() {
                    out.push((col, exact_div(v, &prev)));
                }
            }
            *row = out;
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

fn echelon(m: &MatrixQ) -> Echelon {
    let rows: Vec<Vec<(usize, BigInt)>> =
        m.data.iter().filter(|r| !r.is_empty()).map(|r| primitive_integer_row(r)).collect();
    if m.cols < DENSE_COLUMN_LIMIT {
        let dense = rows
            .into_iter()
            .map(|row| {
                let mut d = vec![BigInt::zero(); m.cols];
                for (c, v) in row {
                    d[c] = v;
                }
                d
            })
            .collect();
        bareiss_dense(dense, m.cols)
    } else {
        bareiss_sparse(rows)
    }
}

#[doc(hidden)]
pub fn echelon_pivots_both_paths(m: &MatrixQ) -> (Vec<usize>, Vec<usize>) {
    let rows: Vec<Vec<(usize, BigInt)>> =
        m.data.iter().filter(|r| !r.is_empty()).map(|r| primitive_integer_row(r)).collect();
    let dense = rows
        .iter()
        .map(|row| {
            let mut d = vec![BigInt::zero(); m.cols];
            for (c, v) in row {
                d[*c] = v.clone();
            }
            d
        })
        .collect();
    (bareiss_dense(dense, m.cols).pivots, bareiss_sparse(rows).pivots)
}

pub fn rank(m: &MatrixQ) -> usize {
    echelon(m).pivots.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Pivot columns of the reduced row echelon form, increasing.
    pub pivots: Vec<usize>,
    /// Reduced row echelon form, `rank` rows.
    pub rref: MatrixQ,
    pub kernel_basis: Vec<Vec<Rational>>,
    /// The pivot columns of the input matrix.
    pub image_basis: Vec<Vec<Rational>>,
}

pub fn eliminate(m: &MatrixQ) -> Elimination {
    let Echelon { rows, pivots } = echelon(m);
    let mut rref: Vec<SparseVec> = rows
        .into_iter()
        .map(|row| {
            let lead = Rational::from_integer(row[0].1.clone());
            row.into_iter().map(|(c, v)| (c, Rational::from_integer(v) / &lead)).collect()
        })
        .collect();
    for k in (0..rref.len()).rev() {
        let p = pivots[k];
        let (above, below) = rref.split_at_mut(k);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&p, |(j, _)| *j) {
                let coef = row[pos].1.clone();
                let scaled: SparseVec = pivot_row.iter().map(|(c, v)| (*c, v * &coef)).collect();
                *row = merge_rows(row, &scaled, true);
            }
        }
    }
    let rank = pivots.len();
    let pivot_set: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let rref = MatrixQ { rows: rank, cols: m.cols, data: rref };
    let mut kernel_basis = Vec::new();
    let rref_t = rref.transpose();
    for f in (0..m.cols).filter(|c| !pivot_set.contains_key(c)) {
        let mut v = zero_vec(m.cols);
        v[f] = Rational::one();
        for (k, x) in rref_t.row(f) {
            v[pivots[*k]] = -x.clone();
        }
        kernel_basis.push(v);
    }
    let image_basis = if rank == 0 {
        Vec::new()
    } else {
        let cols = m.select_cols(&pivots);
        cols.columns()
    };
    debug_assert_eq!(rank + kernel_basis.len(), m.cols, "rank-nullity");
    Elimination { rank, pivots, rref, kernel_basis, image_basis }
}

pub fn inverse(m: &MatrixQ) -> Option<MatrixQ> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let aug = MatrixQ::hstack(&[m, &MatrixQ::identity(n)]);
    let e = eliminate(&aug);
    if e.rank != n || e.pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    let right: Vec<usize> = (n..2 * n).collect();
    Some(e.rref.select_cols(&right))
}

/// `L` with `L * w = I` for a matrix `w` of full column rank.
pub fn left_inverse(w: &MatrixQ) -> Option<MatrixQ> {
    let k = w.cols;
    if k == 0 {
        return Some(MatrixQ::zeros(0, w.rows));
    }
    let rows = eliminate(&w.transpose()).pivots;
    if rows.len() != k {
        return None;
    }
    let s_inv = inverse(&w.select_rows(&rows))?;
    let triplets = s_inv.entries().map(|(r, c, v)| (r, rows[c], v.clone())).collect::<Vec<_>>();
    Some(MatrixQ::from_triplets(k, w.rows, triplets))
}

/// Whether `v` lies in the column space of `m`.
pub fn in_column_space(m: &MatrixQ, v: &[Rational]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let col = MatrixQ::from_columns(m.rows, &[v.to_vec()]);
    rank(&MatrixQ::hstack(&[m, &col])) == rank(m)
}

/// Dimension of the intersection of two column spaces in the same ambient space.
pub fn intersection_dim(a: &MatrixQ, b: &MatrixQ) -> usize {
    rank(a) + rank(b) - rank(&MatrixQ::hstack(&[a, b]))
}

/// The quotient of an ambient space by the column span of a matrix, presented
/// on the coordinates that are not pivots of the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub ambient: usize,
    /// Ambient coordinates whose classes form the quotient basis.
    pub basis: Vec<usize>,
    /// `basis.len() x ambient`.
    pub projection: MatrixQ,
    /// `ambient x basis.len()`; `projection * lift = I`.
    pub lift: MatrixQ,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn quotient(span: &MatrixQ) -> Quotient {
    let ambient = span.rows;
    let e = eliminate(&span.transpose());
    let pivot_set: BTreeMap<usize, usize> = e.pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let basis: Vec<usize> = (0..ambient).filter(|c| !pivot_set.contains_key(c)).collect();
    let position: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut triplets = Vec::new();
    for (k, &c) in basis.iter().enumerate() {
        triplets.push((k, c, Rational::one()));
    }
    for (k, &p) in e.pivots.iter().enumerate() {
        for (c, v) in e.rref.row(k) {
            if let Some(&q) = position.get(c) {
                triplets.push((q, p, -v.clone()));
            }
        }
    }
    let projection = MatrixQ::from_triplets(basis.len(), ambient, triplets);
    let lift = MatrixQ::from_triplets(ambient, basis.len(), basis.iter().enumerate().map(|(k, &c)| (c, k, Rational::one())));
    Quotient { ambient, basis, projection, lift }
}

// ---------------------------------------------------------------------------
// Homology of a presented complex
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub betti: usize,
    pub representative_cycles: Vec<Vec<Rational>>,
    outgoing: MatrixQ,
    coordinates: MatrixQ,
}

impl HomologyPresentation {
    pub fn ambient_dim(&self) -> usize {
        self.outgoing.cols
    }

    pub fn is_cycle(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.outgoing.mul_vec(v))
    }

    /// Coordinates of the class of `cycle` in the representative basis.
    pub fn coordinates_of(&self, cycle: &[Rational]) -> Result<Vec<Rational>> {
        if cycle.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "vector of length {} in a {}-dimensional chain space",
                cycle.len(),
                self.ambient_dim()
            )));
        }
        if !self.is_cycle(cycle) {
            return Err(Error::NotACycle);
        }
        Ok(self.coordinates.mul_vec(cycle))
    }

    pub fn is_boundary(&self, cycle: &[Rational]) -> Result<bool> {
        Ok(is_zero_vec(&self.coordinates_of(cycle)?))
    }
}

/// Homology at the middle of `. --b_in--> C --b_out--> .`.
pub fn homology_quotient(b_out: &MatrixQ, b_in: &MatrixQ) -> Result<HomologyPresentation> {
    if b_out.cols != b_in.rows {
        return Err(Error::DimensionMismatch(alloc::format!(
            "b_out has {} columns but b_in has {} rows",
            b_out.cols,
            b_in.rows
        )));
    }
    if !(b_out * b_in).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    let m = b_out.cols;
    let kernel = eliminate(b_out).kernel_basis;
    let image = eliminate(b_in).image_basis;
    let stacked: Vec<Vec<Rational>> = image.iter().chain(kernel.iter()).cloned().collect();
    let e = eliminate(&MatrixQ::from_columns(m, &stacked));
    let reps: Vec<Vec<Rational>> =
        e.pivots.iter().filter(|&&p| p >= image.len()).map(|&p| kernel[p - image.len()].clone()).collect();
    let basis: Vec<Vec<Rational>> = image.iter().chain(reps.iter()).cloned().collect();
    let l = left_inverse(&MatrixQ::from_columns(m, &basis)).expect("boundaries plus representatives are independent");
    let coord_rows: Vec<usize> = (image.len()..basis.len()).collect();
    let coordinates = l.select_rows(&coord_rows);
    Ok(HomologyPresentation { betti: reps.len(), representative_cycles: reps, outgoing: b_out.clone(), coordinates })
}

/// Matrix of the map induced by `f` between two homology presentations.
pub fn induced_on_homology(
    f: &MatrixQ,
    domain: &HomologyPresentation,
    codomain: &HomologyPresentation,
) -> Result<MatrixQ> {
    if f.ncols() != domain.ambient_dim() || f.nrows() != codomain.ambient_dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{}x{} map between chain spaces of dimension {} and {}",
            f.nrows(),
            f.ncols(),
            domain.ambient_dim(),
            codomain.ambient_dim()
        )));
    }
    let mut columns = Vec::with_capacity(domain.betti);
    for rep in &domain.representative_cycles {
        let image = f.mul_vec(rep);
        let coords = codomain.coordinates_of(&image).map_err(|e| match e {
            Error::NotACycle => Error::NotAChainMap,
            other => other,
        })?;
        columns.push(coords);
    }
    Ok(MatrixQ::from_columns(codomain.betti, &columns))
}

/// Absolute value helper used by report code.
pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportional_rows() {
        let m = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        let e = eliminate(&m);
        assert_eq!(e.rank, 1);
        assert_eq!(e.kernel_basis, vec![vec![rat(-2), rat(1)]]);
        // span{(2,-1)} = span{(-2,1)}
        assert!(is_zero_vec(&m.mul_vec(&[rat(2), rat(-1)])));
    }

    #[test]
    fn zero_and_identity() {
        let z = MatrixQ::zeros(3, 3);
        let e = eliminate(&z);
        assert_eq!(e.rank, 0);
        assert_eq!(e.kernel_basis.len(), 3);
        let e = eliminate(&MatrixQ::identity(4));
        assert_eq!(e.rank, 4);
        assert!(e.kernel_basis.is_empty());
        assert_eq!(e.image_basis.len(), 4);
    }

    #[test]
    fn rational_entries() {
        let m = MatrixQ::from_dense(2, 2, &[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), rat(1)]]);
        assert_eq!(rank(&m), 1);
        let inv = inverse(&MatrixQ::from_dense(2, 2, &[vec![ratio(1, 2), rat(0)], vec![rat(0), ratio(-3, 4)]]));
        assert_eq!(inv.unwrap(), MatrixQ::from_dense(2, 2, &[vec![rat(2), rat(0)], vec![rat(0), ratio(-4, 3)]]));
    }

    #[test]
    fn homology_examples() {
        let h = homology_quotient(&MatrixQ::zeros(0, 3), &MatrixQ::zeros(3, 0)).unwrap();
        assert_eq!(h.betti, 3);
        let h = homology_quotient(&MatrixQ::identity(3), &MatrixQ::zeros(3, 0)).unwrap();
        assert_eq!(h.betti, 0);
        // Two-dimensional cycles modulo the line spanned by (1, 1).
        let h = homology_quotient(&MatrixQ::zeros(0, 2), &MatrixQ::from_i64(&[&[1], &[1]])).unwrap();
        assert_eq!(h.betti, 1);
        assert!(h.is_boundary(&[rat(3), rat(3)]).unwrap());
        assert!(!h.is_boundary(&[rat(1), rat(0)]).unwrap());
    }

    #[test]
    fn nonzero_composition_rejected() {
        let r = homology_quotient(&MatrixQ::identity(2), &MatrixQ::identity(2));
        assert_eq!(r.unwrap_err(), Error::CompositionNonzero);
    }

    #[test]
    fn induced_maps() {
        let b_in = MatrixQ::from_i64(&[&[1], &[1], &[0]]);
        let h = homology_quotient(&MatrixQ::zeros(0, 3), &b_in).unwrap();
        assert_eq!(h.betti, 2);
        let id = induced_on_homology(&MatrixQ::identity(3), &h, &h).unwrap();
        assert_eq!(id, MatrixQ::identity(2));
        let zero = induced_on_homology(&MatrixQ::zeros(3, 3), &h, &h).unwrap();
        assert!(zero.is_zero());
        // A map whose image lies in the boundaries induces zero.
        let into_boundaries = &b_in * &MatrixQ::from_i64(&[&[2, -1, 5]]);
        assert!(induced_on_homology(&into_boundaries, &h, &h).unwrap().is_zero());
    }

    #[test]
    fn induced_rejects_non_chain_maps() {
        // domain: cycles of the zero map on k^1; codomain: only the zero vector is a cycle.
        let dom = homology_quotient(&MatrixQ::zeros(0, 1), &MatrixQ::zeros(1, 0)).unwrap();
        let cod = homology_quotient(&MatrixQ::identity(1), &MatrixQ::zeros(1, 0)).unwrap();
        let r = induced_on_homology(&MatrixQ::identity(1), &dom, &cod);
        assert_eq!(r.unwrap_err(), Error::NotAChainMap);
    }

    #[test]
    fn quotient_projection() {
        let span = MatrixQ::from_i64(&[&[1], &[1], &[0]]);
        let q = quotient(&span);
        assert_eq!(q.dim(), 2);
        assert!((&q.projection * &span).is_zero());
        assert_eq!(&q.projection * &q.lift, MatrixQ::identity(2));
    }

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("-3/4"), Some(ratio(-3, 4)));
        assert_eq!(parse_rational("12"), Some(rat(12)));
        assert_eq!(parse_rational("2/4"), Some(ratio(1, 2)));
        for bad in ["", "-", "1/0", "1/05", "+1", "1.5", "a", "1/", "/2", "--1"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn wide_matrices_use_sparse_path() {
        let n = DENSE_COLUMN_LIMIT + 6;
        let trip = (0..n - 1).flat_map(|i| [(i, i, rat(1)), (i, i + 1, rat(-1))]);
        let m = MatrixQ::from_triplets(n - 1, n, trip);
        let e = eliminate(&m);
        assert_eq!(e.rank, n - 1);
        assert_eq!(e.kernel_basis, vec![vec![rat(1); n]]);
    }
}

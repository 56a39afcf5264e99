//! Exact linear algebra over the rationals.
//!
//! Two routes to the same reduced row echelon form live here: the dense
//! Gauss–Jordan [`rref`] on a [`Mat`], and the incremental sparse
//! [`RowReducer`] used to assemble the large defining systems of the map
//! spaces. The reduced row echelon form of a row space is unique, so both
//! routes produce identical output for identical input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Rat>;

/// Sparse row: `(column, value)` pairs sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, Rat)>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (q ≠ 0) into a reduced rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    s.parse::<Rat>().ok()
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rat::zero(); len]
}

pub fn unit_vector(len: usize, i: usize) -> Vector {
    let mut v = zero_vector(len);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vector(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_sparse(v: &[Rat]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(row: &[(usize, Rat)], width: usize) -> Vector {
    let mut v = zero_vector(width);
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Returns `a - coef * b` for sorted sparse rows.
fn sparse_axpy(a: &[(usize, Rat)], coef: &Rat, b: &[(usize, Rat)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(coef * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - coef * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get(row: &[(usize, Rat)], col: usize) -> Option<&Rat> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: format!("row {r}"),
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Integer convenience constructor. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| rat(x)).collect()
            })
            .collect();
        Mat::from_rows(cols, data).expect("checked above")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Rat) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Rat, &Rat) -> Rat) -> Mat {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rref: Mat,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Echelon {
    /// Canonical kernel basis: one vector per free column, ordered by free
    /// column, with 1 in its own free column and 0 in every other free
    /// column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let cols = self.rref.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivot_cols {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = unit_vector(cols, f);
                for (r, &p) in self.pivot_cols.iter().enumerate() {
                    v[p] = -self.rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

/// Gauss–Jordan elimination. The pivot of each column is the first nonzero
/// entry at or below the current row.
pub fn rref(m: &Mat) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.entries.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = a.get(r, c).recip();
        for k in c..cols {
            let idx = r * cols + k;
            a.entries[idx] = &a.entries[idx] * &inv;
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for k in c..cols {
                let pv = &a.entries[r * cols + k];
                if pv.is_zero() {
                    continue;
                }
                let delta = &f * pv;
                a.entries[i * cols + k] -= delta;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = pivot_cols.len();
    let rref = Mat {
        rows,
        cols,
        entries: a.entries,
    };
    Echelon {
        rref,
        pivot_cols,
        rank,
    }
}

pub fn nullspace(m: &Mat) -> Vec<Vector> {
    rref(m).nullspace()
}

/// One particular solution of `a·x = b` with every free variable set to
/// zero, or `None` when the system is inconsistent.
pub fn solve(a: &Mat, b: &[Rat]) -> Result<Option<Vector>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            what: "right-hand side".into(),
            expected: a.rows(),
            found: b.len(),
        });
    }
    let cols = a.cols();
    let mut aug = Mat::zeros(a.rows(), cols + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, cols, rhs.clone());
    }
    let ech = rref(&aug);
    if ech.pivot_cols.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = zero_vector(cols);
    for (r, &p) in ech.pivot_cols.iter().enumerate() {
        x[p] = ech.rref.get(r, cols).clone();
    }
    Ok(Some(x))
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Pivot rows are kept fully reduced at all times, so a vector is reduced
/// against the basis in a single pass.
#[derive(Clone, Debug, Default)]
pub struct RowReducer {
    width: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(width: usize) -> Self {
        RowReducer {
            width,
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, Rat)]) -> SparseRow {
        let hits: Vec<(usize, Rat)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x.clone())))
            .collect();
        let mut out: SparseRow = v.to_vec();
        for (r, coef) in hits {
            out = sparse_axpy(&out, &coef, &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Rat)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Rat]) -> bool {
        self.contains(&to_sparse(v))
    }

    /// Adds `v` to the spanning set; returns whether it was independent.
    pub fn insert(&mut self, v: &[(usize, Rat)]) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.width));
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.recip();
        for e in r.iter_mut() {
            e.1 = &e.1 * &lead;
        }
        let pc = r[0].0;
        for row in self.rows.iter_mut() {
            if let Some(f) = sparse_get(row, pc).cloned() {
                *row = sparse_axpy(row, &f, &r);
            }
        }
        self.pivot_row[pc] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert_dense(&mut self, v: &[Rat]) -> bool {
        self.insert(&to_sparse(v))
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|&c| self.pivot_row[c].is_some())
            .collect()
    }

    /// Basis rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseRow> {
        (0..self.width)
            .filter_map(|c| self.pivot_row[c].map(|r| &self.rows[r]))
            .collect()
    }

    /// The basis as dense vectors ordered by pivot column.
    pub fn basis(&self) -> Vec<Vector> {
        self.sorted_rows()
            .into_iter()
            .map(|r| to_dense(r, self.width))
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let basis = self.basis();
        let rank = basis.len();
        Echelon {
            rref: Mat::from_rows(self.width, basis).expect("rows have reducer width"),
            pivot_cols: self.pivot_cols(),
            rank,
        }
    }

    pub fn nullspace(&self) -> Vec<Vector> {
        let sorted = self.sorted_rows();
        let pivots = self.pivot_cols();
        (0..self.width)
            .filter(|&f| self.pivot_row[f].is_none())
            .map(|f| {
                let mut v = unit_vector(self.width, f);
                for (row, &p) in sorted.iter().zip(&pivots) {
                    if let Some(x) = sparse_get(row, f) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Expresses vectors as combinations of a fixed list of vectors, which may
/// be dependent. Rows `[v_i | e_i]` are reduced together so the identity
/// block records the combination.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    width: usize,
    count: usize,
    reducer: RowReducer,
}

impl Coordinatizer {
    pub fn new(width: usize, vectors: &[Vector]) -> Self {
        let count = vectors.len();
        let mut reducer = RowReducer::new(width + count);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), width, "vector width");
            let mut row = to_sparse(v);
            row.push((width + i, Rat::one()));
            reducer.insert(&row);
        }
        Coordinatizer {
            width,
            count,
            reducer,
        }
    }

    /// Rank of the spanning list.
    pub fn rank(&self) -> usize {
        self.reducer
            .pivot_cols()
            .iter()
            .filter(|&&c| c < self.width)
            .count()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.count
    }

    /// Some `c` with `Σ c_i v_i = v`, or `None` outside the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vector> {
        if v.len() != self.width {
            return None;
        }
        let rest = self.reducer.reduce(&to_sparse(v));
        if rest.iter().any(|(c, _)| *c < self.width) {
            return None;
        }
        let mut out = zero_vector(self.count);
        for (c, x) in rest {
            out[c - self.width] = -x;
        }
        Some(out)
    }
}

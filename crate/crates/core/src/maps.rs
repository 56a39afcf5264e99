//! Derivations, anti-derivations and biderivations as nullspaces of their
//! defining linear systems, plus inner (bi)derivations and the brackets on
//! these spaces.
//!
//! A linear map is an `n×n` matrix whose column `j` is the image of `e_j`.
//! Maps are vectorized row-major; a biderivation `(d, D)` is vectorized as
//! `d` followed by `D`. Every [`MapSpace`] basis is the reduced row echelon
//! basis of the space under that vectorization.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{
    is_zero_vector, to_sparse, unit_vector, zero_vector, Mat, Rat, RowReducer, SparseRow, Vector,
};

/// Linear endomorphism of an `n`-dimensional algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    matrix: Mat,
}

impl LinMap {
    pub fn zero(n: usize) -> Self {
        LinMap {
            matrix: Mat::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        LinMap {
            matrix: Mat::identity(n),
        }
    }

    /// Matrix unit `E_{row,col}` (0-based): sends `e_col` to `e_row`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m.set(row, col, Rat::one());
        LinMap { matrix: m }
    }

    pub fn from_matrix(matrix: Mat) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                what: "linear map must be square".into(),
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(LinMap { matrix })
    }

    /// Inverse of [`LinMap::flatten`].
    pub fn from_flat(n: usize, v: &[Rat]) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::DimensionMismatch {
                what: "flattened map".into(),
                expected: n * n,
                found: v.len(),
            });
        }
        let rows = v.chunks(n.max(1)).map(<[Rat]>::to_vec).collect();
        Ok(LinMap {
            matrix: Mat::from_rows(n, rows)?,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rat {
        self.matrix.get(row, col)
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rat) {
        self.matrix.set(row, col, v);
    }

    pub fn apply(&self, v: &[Rat]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Image of the basis vector `e_j`.
    pub fn image(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, k: &Rat) -> LinMap {
        LinMap {
            matrix: self.matrix.scale(k),
        }
    }

    pub fn neg(&self) -> LinMap {
        self.scale(&-Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn flatten(&self) -> Vector {
        self.matrix.entries().to_vec()
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({:?})", self.matrix)
    }
}

/// A pair `(d, D)`: derivation part and anti-derivation part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bider {
    pub derivation: LinMap,
    pub anti: LinMap,
}

impl Bider {
    pub fn new(derivation: LinMap, anti: LinMap) -> Result<Self> {
        if derivation.n() != anti.n() {
            return Err(Error::DimensionMismatch {
                what: "biderivation components".into(),
                expected: derivation.n(),
                found: anti.n(),
            });
        }
        Ok(Bider { derivation, anti })
    }

    pub fn zero(n: usize) -> Self {
        Bider {
            derivation: LinMap::zero(n),
            anti: LinMap::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.derivation.n()
    }

    pub fn from_flat(n: usize, v: &[Rat]) -> Result<Self> {
        if v.len() != 2 * n * n {
            return Err(Error::DimensionMismatch {
                what: "flattened biderivation".into(),
                expected: 2 * n * n,
                found: v.len(),
            });
        }
        Ok(Bider {
            derivation: LinMap::from_flat(n, &v[..n * n])?,
            anti: LinMap::from_flat(n, &v[n * n..])?,
        })
    }

    pub fn flatten(&self) -> Vector {
        let mut v = self.derivation.flatten();
        v.extend(self.anti.flatten());
        v
    }

    pub fn add(&self, other: &Bider) -> Bider {
        Bider {
            derivation: self.derivation.add(&other.derivation),
            anti: self.anti.add(&other.anti),
        }
    }

    pub fn scale(&self, k: &Rat) -> Bider {
        Bider {
            derivation: self.derivation.scale(k),
            anti: self.anti.scale(k),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.derivation.is_zero() && self.anti.is_zero()
    }
}

/// Anything with a fixed vectorization into a [`MapSpace`] coordinate space.
pub trait Vectorize {
    fn vectorize(&self) -> Vector;
}

impl Vectorize for LinMap {
    fn vectorize(&self) -> Vector {
        self.flatten()
    }
}

impl Vectorize for Bider {
    fn vectorize(&self) -> Vector {
        self.flatten()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Der,
    AntiDer,
    Bider,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::Der, MapKind::AntiDer, MapKind::Bider];

    /// Length of the vectorization for an `n`-dimensional algebra.
    pub fn width(self, n: usize) -> usize {
        match self {
            MapKind::Der | MapKind::AntiDer => n * n,
            MapKind::Bider => 2 * n * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Der => "der",
            MapKind::AntiDer => "antider",
            MapKind::Bider => "bider",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One element of a [`MapSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapElement {
    Map(LinMap),
    Bider(Bider),
}

impl MapElement {
    pub fn from_flat(kind: MapKind, n: usize, v: &[Rat]) -> Result<Self> {
        Ok(match kind {
            MapKind::Der | MapKind::AntiDer => MapElement::Map(LinMap::from_flat(n, v)?),
            MapKind::Bider => MapElement::Bider(Bider::from_flat(n, v)?),
        })
    }
}

impl Vectorize for MapElement {
    fn vectorize(&self) -> Vector {
        match self {
            MapElement::Map(m) => m.flatten(),
            MapElement::Bider(b) => b.flatten(),
        }
    }
}

/// Size data of an assembled defining system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SystemStats {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub nullity: usize,
}

/// Homogeneous linear system whose nullspace is a map space.
#[derive(Clone, Debug)]
pub struct DefiningSystem {
    pub kind: MapKind,
    pub unknowns: usize,
    pub rows: Vec<SparseRow>,
}

impl DefiningSystem {
    pub fn to_mat(&self) -> Mat {
        let dense = self
            .rows
            .iter()
            .map(|r| crate::linalg::to_dense(r, self.unknowns))
            .collect();
        Mat::from_rows(self.unknowns, dense).expect("rows have system width")
    }

    pub fn reducer(&self) -> RowReducer {
        let mut red = RowReducer::new(self.unknowns);
        for r in &self.rows {
            red.insert(r);
        }
        red
    }
}

/// Linear space of maps or biderivations with its canonical echelon basis.
#[derive(Clone, Debug)]
pub struct MapSpace {
    kind: MapKind,
    n: usize,
    span: RowReducer,
    non_leibniz: bool,
    system: Option<SystemStats>,
}

impl MapSpace {
    /// Span of the given vectors.
    pub fn from_vectors<'a>(
        kind: MapKind,
        n: usize,
        vectors: impl IntoIterator<Item = &'a Vector>,
    ) -> Self {
        let mut span = RowReducer::new(kind.width(n));
        for v in vectors {
            span.insert_dense(v);
        }
        MapSpace {
            kind,
            n,
            span,
            non_leibniz: false,
            system: None,
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// True when the source algebra failed the right Leibniz identity.
    pub fn non_leibniz(&self) -> bool {
        self.non_leibniz
    }

    pub fn system(&self) -> Option<SystemStats> {
        self.system
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.span.basis()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.span.pivot_cols()
    }

    pub fn elements(&self) -> Vec<MapElement> {
        self.basis_vectors()
            .iter()
            .map(|v| MapElement::from_flat(self.kind, self.n, v).expect("basis has space width"))
            .collect()
    }

    pub fn linmaps(&self) -> Vec<LinMap> {
        self.basis_vectors()
            .iter()
            .map(|v| LinMap::from_flat(self.n, &v[..self.n * self.n]).expect("width"))
            .collect()
    }

    /// Basis as biderivations; only meaningful for the bider kind.
    pub fn biders(&self) -> Vec<Bider> {
        assert_eq!(self.kind, MapKind::Bider, "not a biderivation space");
        self.basis_vectors()
            .iter()
            .map(|v| Bider::from_flat(self.n, v).expect("width"))
            .collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        v.len() == self.span.width() && self.span.contains_dense(v)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivot_cols().iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &MapSpace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn same_span(&self, other: &MapSpace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other) && other.is_subspace_of(self)
    }
}

/// Membership of a map or biderivation in a space.
pub fn span_contains(space: &MapSpace, m: &impl Vectorize) -> bool {
    space.contains(&m.vectorize())
}

fn push_row(rows: &mut Vec<SparseRow>, acc: BTreeMap<usize, Rat>) {
    rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
}

fn add_at(acc: &mut BTreeMap<usize, Rat>, idx: usize, v: Rat) {
    if !v.is_zero() {
        *acc.entry(idx).or_insert_with(Rat::zero) += v;
    }
}

/// Rows `d([e_i,e_j]) − [d(e_i),e_j] − [e_i,d(e_j)] = 0` for unknowns at
/// `offset + r·n + c`, in `(i, j, k)` order.
fn derivation_rows(a: &Algebra, offset: usize, rows: &mut Vec<SparseRow>) {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = BTreeMap::new();
                for (m, c) in a.basis_product(i, j) {
                    add_at(&mut acc, offset + k * n + m, c.clone());
                }
                for r in 0..n {
                    add_at(&mut acc, offset + r * n + i, -a.constant(r, j, k));
                    add_at(&mut acc, offset + r * n + j, -a.constant(i, r, k));
                }
                push_row(rows, acc);
            }
        }
    }
}

/// Rows `D([e_i,e_j]) − [D(e_i),e_j] + [D(e_j),e_i] = 0`.
fn antiderivation_rows(a: &Algebra, offset: usize, rows: &mut Vec<SparseRow>) {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = BTreeMap::new();
                for (m, c) in a.basis_product(i, j) {
                    add_at(&mut acc, offset + k * n + m, c.clone());
                }
                for r in 0..n {
                    add_at(&mut acc, offset + r * n + i, -a.constant(r, j, k));
                    add_at(&mut acc, offset + r * n + j, a.constant(r, i, k));
                }
                push_row(rows, acc);
            }
        }
    }
}

/// Rows `[e_i, d(e_j)] − [e_i, D(e_j)] = 0` with `d` at 0 and `D` at `n²`.
fn compatibility_rows(a: &Algebra, rows: &mut Vec<SparseRow>) {
    let n = a.dim();
    let off = n * n;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = BTreeMap::new();
                for r in 0..n {
                    let c = a.constant(i, r, k);
                    add_at(&mut acc, r * n + j, c.clone());
                    add_at(&mut acc, off + r * n + j, -c);
                }
                push_row(rows, acc);
            }
        }
    }
}

/// Assembles the defining system of the requested space. The biderivation
/// system stacks the derivation rows, the anti-derivation rows and the
/// compatibility rows, in that order.
pub fn defining_system(a: &Algebra, kind: MapKind) -> DefiningSystem {
    let n = a.dim();
    let mut rows = Vec::new();
    match kind {
        MapKind::Der => derivation_rows(a, 0, &mut rows),
        MapKind::AntiDer => antiderivation_rows(a, 0, &mut rows),
        MapKind::Bider => {
            derivation_rows(a, 0, &mut rows);
            antiderivation_rows(a, n * n, &mut rows);
            compatibility_rows(a, &mut rows);
        }
    }
    DefiningSystem {
        kind,
        unknowns: kind.width(n),
        rows,
    }
}

fn solve_space(a: &Algebra, kind: MapKind) -> MapSpace {
    let system = defining_system(a, kind);
    let reduced = system.reducer();
    let kernel = reduced.nullspace();
    let stats = SystemStats {
        equations: system.rows.len(),
        unknowns: system.unknowns,
        rank: reduced.rank(),
        nullity: kernel.len(),
    };
    let mut space = MapSpace::from_vectors(kind, a.dim(), kernel.iter());
    space.non_leibniz = !a.is_right_leibniz();
    space.system = Some(stats);
    space
}

/// `Der(L)`.
pub fn derivation_space(a: &Algebra) -> MapSpace {
    solve_space(a, MapKind::Der)
}

/// Space of anti-derivations of `L`.
pub fn antiderivation_space(a: &Algebra) -> MapSpace {
    solve_space(a, MapKind::AntiDer)
}

/// `Bider(L)`, solved as one stacked system in `2n²` unknowns.
pub fn biderivation_space(a: &Algebra) -> MapSpace {
    solve_space(a, MapKind::Bider)
}

pub fn map_space(a: &Algebra, kind: MapKind) -> MapSpace {
    solve_space(a, kind)
}

fn check_vec(a: &Algebra, x: &[Rat]) -> Result<()> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "element".into(),
            expected: a.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

fn check_map(a: &Algebra, m: &LinMap) -> Result<()> {
    if m.n() != a.dim() {
        return Err(Error::DimensionMismatch {
            what: "linear map".into(),
            expected: a.dim(),
            found: m.n(),
        });
    }
    Ok(())
}

/// Right multiplication `ad_x = [−, x]`.
pub fn inner_derivation(a: &Algebra, x: &[Rat]) -> Result<LinMap> {
    check_vec(a, x)?;
    let n = a.dim();
    let mut m = LinMap::zero(n);
    for j in 0..n {
        let img = a.bracket_unchecked(&unit_vector(n, j), x);
        for (r, v) in img.into_iter().enumerate() {
            m.set(r, j, v);
        }
    }
    Ok(m)
}

/// Left multiplication `Ad_x = [x, −]`.
pub fn left_adjoint(a: &Algebra, x: &[Rat]) -> Result<LinMap> {
    check_vec(a, x)?;
    let n = a.dim();
    let mut m = LinMap::zero(n);
    for j in 0..n {
        let img = a.bracket_unchecked(x, &unit_vector(n, j));
        for (r, v) in img.into_iter().enumerate() {
            m.set(r, j, v);
        }
    }
    Ok(m)
}

/// The inner biderivation `(−ad_x, Ad_x)`.
pub fn inner_biderivation(a: &Algebra, x: &[Rat]) -> Result<Bider> {
    let b = Bider {
        derivation: inner_derivation(a, x)?.neg(),
        anti: left_adjoint(a, x)?,
    };
    debug_assert!(
        !a.is_right_leibniz() || is_biderivation(a, &b).unwrap_or(false),
        "inner biderivation of a right Leibniz algebra must be a biderivation"
    );
    Ok(b)
}

/// Span of `(−ad_{e_i}, Ad_{e_i})` over the basis.
pub fn inner_bider_space(a: &Algebra) -> MapSpace {
    let n = a.dim();
    let vecs: Vec<Vector> = (0..n)
        .map(|i| {
            inner_biderivation(a, &unit_vector(n, i))
                .expect("basis vector has algebra dimension")
                .flatten()
        })
        .collect();
    MapSpace::from_vectors(MapKind::Bider, n, vecs.iter())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapIdentity {
    Derivation,
    AntiDerivation,
    Compatibility,
}

/// First basis pair `(e_i, e_j)` on which an identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWitness {
    pub identity: MapIdentity,
    pub i: usize,
    pub j: usize,
    pub residual: Vector,
}

impl fmt::Display for MapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{:?} identity fails at (e{}, e{}): residual [{}]",
            self.identity,
            self.i + 1,
            self.j + 1,
            r.join(", ")
        )
    }
}

fn first_failure(
    a: &Algebra,
    identity: MapIdentity,
    residual: impl Fn(usize, usize) -> Vector,
) -> Option<MapWitness> {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let r = residual(i, j);
            (!is_zero_vector(&r)).then_some(MapWitness {
                identity,
                i,
                j,
                residual: r,
            })
        })
}

fn basis_bracket(a: &Algebra, i: usize, j: usize) -> Vector {
    let mut v = zero_vector(a.dim());
    for (k, c) in a.basis_product(i, j) {
        v[*k] = c.clone();
    }
    v
}

pub fn derivation_witness(a: &Algebra, d: &LinMap) -> Result<Option<MapWitness>> {
    check_map(a, d)?;
    let n = a.dim();
    Ok(first_failure(a, MapIdentity::Derivation, |i, j| {
        let lhs = d.apply(&basis_bracket(a, i, j));
        let r1 = a.bracket_unchecked(&d.image(i), &unit_vector(n, j));
        let r2 = a.bracket_unchecked(&unit_vector(n, i), &d.image(j));
        lhs.iter()
            .zip(r1.iter().zip(&r2))
            .map(|(l, (x, y))| l - x - y)
            .collect()
    }))
}

pub fn antiderivation_witness(a: &Algebra, dd: &LinMap) -> Result<Option<MapWitness>> {
    check_map(a, dd)?;
    let n = a.dim();
    Ok(first_failure(a, MapIdentity::AntiDerivation, |i, j| {
        let lhs = dd.apply(&basis_bracket(a, i, j));
        let r1 = a.bracket_unchecked(&dd.image(i), &unit_vector(n, j));
        let r2 = a.bracket_unchecked(&dd.image(j), &unit_vector(n, i));
        lhs.iter()
            .zip(r1.iter().zip(&r2))
            .map(|(l, (x, y))| l - x + y)
            .collect()
    }))
}

pub fn biderivation_witness(a: &Algebra, b: &Bider) -> Result<Option<MapWitness>> {
    if let Some(w) = derivation_witness(a, &b.derivation)? {
        return Ok(Some(w));
    }
    if let Some(w) = antiderivation_witness(a, &b.anti)? {
        return Ok(Some(w));
    }
    let n = a.dim();
    Ok(first_failure(a, MapIdentity::Compatibility, |i, j| {
        let ei = unit_vector(n, i);
        let l = a.bracket_unchecked(&ei, &b.derivation.image(j));
        let r = a.bracket_unchecked(&ei, &b.anti.image(j));
        l.iter().zip(&r).map(|(x, y)| x - y).collect()
    }))
}

pub fn is_derivation(a: &Algebra, d: &LinMap) -> Result<bool> {
    Ok(derivation_witness(a, d)?.is_none())
}

pub fn is_antiderivation(a: &Algebra, dd: &LinMap) -> Result<bool> {
    Ok(antiderivation_witness(a, dd)?.is_none())
}

pub fn is_biderivation(a: &Algebra, b: &Bider) -> Result<bool> {
    Ok(biderivation_witness(a, b)?.is_none())
}

fn same_n(x: usize, y: usize) -> Result<()> {
    if x != y {
        return Err(Error::DimensionMismatch {
            what: "bracket operands".into(),
            expected: x,
            found: y,
        });
    }
    Ok(())
}

/// Commutator `d1∘d2 − d2∘d1`.
pub fn der_bracket(d1: &LinMap, d2: &LinMap) -> Result<LinMap> {
    same_n(d1.n(), d2.n())?;
    Ok(d1.compose(d2).sub(&d2.compose(d1)))
}

/// `[(d,D),(d',D')] = (d∘d′ − d′∘d, D∘d′ − d′∘D)`.
pub fn bider_bracket(b1: &Bider, b2: &Bider) -> Result<Bider> {
    same_n(b1.n(), b2.n())?;
    Ok(Bider {
        derivation: der_bracket(&b1.derivation, &b2.derivation)?,
        anti: b1
            .anti
            .compose(&b2.derivation)
            .sub(&b2.derivation.compose(&b1.anti)),
    })
}

/// Sparse helper used by tests and reports: the vectorization of a
/// biderivation as a sparse row.
pub fn sparse_vectorization(m: &impl Vectorize) -> SparseRow {
    to_sparse(&m.vectorize())
}

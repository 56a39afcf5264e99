//! Algebras given by structure constants, the Leibniz identities, and the
//! lower central and derived series.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, to_sparse, unit_vector, zero_vector, Rat, RowReducer, Vector};

/// Finite-dimensional algebra over the rationals, `[e_i, e_j] = Σ_k c_ij^k e_k`.
///
/// Indices are 0-based. Products of basis vectors are stored sparsely, so
/// omitted products are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    products: Vec<Vec<(usize, Rat)>>,
    labels: Option<Vec<String>>,
}

impl Algebra {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyAlgebra);
        }
        Ok(Algebra {
            dim,
            products: vec![Vec::new(); dim * dim],
            labels: None,
        })
    }

    /// Builds an algebra from `(i, j, k, c)` entries meaning `c_ij^k += c`.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rat)>,
    {
        let mut a = Algebra::abelian(dim)?;
        for (i, j, k, c) in entries {
            a.add_product(i, j, k, c)?;
        }
        Ok(a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                what: "basis labels".into(),
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Adds `c·e_k` to the product `[e_i, e_j]`.
    pub fn add_product(&mut self, i: usize, j: usize, k: usize, c: Rat) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    what: "structure constant".into(),
                    index: idx,
                    dim: self.dim,
                });
            }
        }
        let slot = &mut self.products[i * self.dim + j];
        match slot.binary_search_by_key(&k, |(kk, _)| *kk) {
            Ok(p) => {
                slot[p].1 += c;
                if slot[p].1.is_zero() {
                    slot.remove(p);
                }
            }
            Err(p) => {
                if !c.is_zero() {
                    slot.insert(p, (k, c));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of basis vector `i`, defaulting to `e{i+1}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// Sparse product `[e_i, e_j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.products[i * self.dim + j]
    }

    /// Coefficient `c_ij^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    /// Nonzero structure constants `(i, j, k, c)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rat)> + '_ {
        (0..self.dim).flat_map(move |i| {
            (0..self.dim).flat_map(move |j| {
                self.basis_product(i, j)
                    .iter()
                    .map(move |(k, c)| (i, j, *k, c))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.products.iter().all(Vec::is_empty)
    }

    fn check_len(&self, what: &str, v: &[Rat]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                what: what.into(),
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vector> {
        self.check_len("left operand", x)?;
        self.check_len("right operand", y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rat], y: &[Rat]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (k, c) in self.basis_product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Violations of the right Leibniz identity
    /// `[[x,y],z] = [[x,z],y] + [x,[y,z]]` over all basis triples.
    pub fn check_right_leibniz(&self) -> Vec<Violation> {
        self.collect_violations(Convention::Right)
    }

    /// Violations of the left Leibniz identity
    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` over all basis triples.
    pub fn check_left_leibniz(&self) -> Vec<Violation> {
        self.collect_violations(Convention::Left)
    }

    pub fn check_leibniz(&self, convention: Convention) -> Vec<Violation> {
        self.collect_violations(convention)
    }

    pub fn is_right_leibniz(&self) -> bool {
        self.check_right_leibniz().is_empty()
    }

    fn collect_violations(&self, convention: Convention) -> Vec<Violation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let residual = self.identity_residual(convention, i, j, k);
                    if !is_zero_vector(&residual) {
                        out.push(Violation {
                            convention,
                            i,
                            j,
                            k,
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    fn identity_residual(&self, convention: Convention, i: usize, j: usize, k: usize) -> Vector {
        let (ei, ej, ek) = (
            unit_vector(self.dim, i),
            unit_vector(self.dim, j),
            unit_vector(self.dim, k),
        );
        let b = |x: &[Rat], y: &[Rat]| self.bracket_unchecked(x, y);
        let (lhs, r1, r2) = match convention {
            Convention::Right => (
                b(&self.basis_bracket(i, j), &ek),
                b(&self.basis_bracket(i, k), &ej),
                b(&ei, &self.basis_bracket(j, k)),
            ),
            Convention::Left => (
                b(&ei, &self.basis_bracket(j, k)),
                b(&self.basis_bracket(i, j), &ek),
                b(&ej, &self.basis_bracket(i, k)),
            ),
        };
        lhs.iter()
            .zip(r1.iter().zip(&r2))
            .map(|(l, (a, c))| l - a - c)
            .collect()
    }

    /// The whole algebra as a subspace.
    pub fn full_subspace(&self) -> Subspace {
        let mut red = RowReducer::new(self.dim);
        for i in 0..self.dim {
            red.insert_dense(&unit_vector(self.dim, i));
        }
        Subspace { reducer: red }
    }

    /// Span of all brackets `[x, y]` with `x` in `u` and `y` in `v`.
    pub fn product_subspace(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        for s in [u, v] {
            if s.ambient_dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    what: "subspace ambient dimension".into(),
                    expected: self.dim,
                    found: s.ambient_dim(),
                });
            }
        }
        let mut red = RowReducer::new(self.dim);
        let (ub, vb) = (u.basis(), v.basis());
        for x in &ub {
            for y in &vb {
                red.insert(&to_sparse(&self.bracket_unchecked(x, y)));
            }
        }
        Ok(Subspace { reducer: red })
    }

    /// Span of all products `[e_i, e_j]`.
    pub fn derived_subspace(&self) -> Subspace {
        let full = self.full_subspace();
        self.product_subspace(&full, &full)
            .expect("full subspace has the algebra's dimension")
    }

    /// Span of the squares `[x, x]`, i.e. of all `c_ii` and `c_ij + c_ji`.
    pub fn squares_subspace(&self) -> Subspace {
        let mut red = RowReducer::new(self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut v = self.basis_bracket(i, j);
                if i != j {
                    for (k, c) in self.basis_product(j, i) {
                        v[*k] += c;
                    }
                }
                red.insert_dense(&v);
            }
        }
        Subspace { reducer: red }
    }

    /// `ℒ¹ = ℒ`, `ℒ^{k+1} = [ℒ^k, ℒ]`.
    pub fn lower_central_series(&self) -> SeriesReport {
        let full = self.full_subspace();
        self.run_series(SeriesKind::LowerCentral, |cur| {
            self.product_subspace(cur, &full).expect("same ambient")
        })
    }

    /// `ℒ^[1] = ℒ`, `ℒ^[s+1] = [ℒ^[s], ℒ^[s]]`.
    pub fn derived_series(&self) -> SeriesReport {
        self.run_series(SeriesKind::Derived, |cur| {
            self.product_subspace(cur, cur).expect("same ambient")
        })
    }

    fn run_series(&self, kind: SeriesKind, step: impl Fn(&Subspace) -> Subspace) -> SeriesReport {
        let mut cur = self.full_subspace();
        let mut dims = vec![cur.dim()];
        let mut seen = vec![cur.clone()];
        // Nested chains terminate within dim+1 steps; the cap only matters
        // for inputs that are not Leibniz.
        let cap = 2 * self.dim + 2;
        let mut index = None;
        while dims.len() <= cap {
            if cur.dim() == 0 {
                index = Some(dims.len());
                break;
            }
            let next = step(&cur);
            if seen.iter().any(|s| s == &next) {
                break;
            }
            dims.push(next.dim());
            seen.push(next.clone());
            cur = next;
        }
        SeriesReport { kind, dims, index }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().index.is_some()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().index.is_some()
    }

    /// `dim ℒ^i = n − i` for every `2 ≤ i ≤ n`.
    pub fn is_filiform(&self) -> bool {
        let n = self.dim;
        let series = self.lower_central_series();
        (2..=n).all(|i| series.dim_at(i) == n - i)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim={}", self.dim)?;
        for (i, j, k, c) in self.entries() {
            write!(f, ", [e{},e{}]∋{}·e{}", i + 1, j + 1, c, k + 1)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Right,
    Left,
}

/// A basis triple on which a Leibniz identity fails, with
/// `residual = lhs − rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub convention: Convention,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{:?} Leibniz identity fails at (e{}, e{}, e{}): residual [{}]",
            self.convention,
            self.i + 1,
            self.j + 1,
            self.k + 1,
            r.join(", ")
        )
    }
}

/// Subspace of the coordinate space, stored as its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    reducer: RowReducer,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.basis() == other.basis()
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            reducer: RowReducer::new(ambient_dim),
        }
    }

    pub fn span<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut reducer = RowReducer::new(ambient_dim);
        for v in vectors {
            reducer.insert_dense(v);
        }
        Subspace { reducer }
    }

    pub fn ambient_dim(&self) -> usize {
        self.reducer.width()
    }

    pub fn dim(&self) -> usize {
        self.reducer.rank()
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.reducer.basis()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reducer.contains_dense(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Dimensions of successive terms of a series. `index` is the 1-based
/// position of the first zero term, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub dims: Vec<usize>,
    pub index: Option<usize>,
}

impl SeriesReport {
    /// Dimension of the `i`-th term (1-based); zero past the vanishing index.
    pub fn dim_at(&self, i: usize) -> usize {
        match self.dims.get(i - 1) {
            Some(&d) => d,
            None if self.index.is_some() => 0,
            None => *self.dims.last().expect("series has a first term"),
        }
    }

    pub fn reaches_zero(&self) -> bool {
        self.index.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn nf(n: usize) -> Algebra {
        Algebra::from_entries(n, (0..n - 1).map(|i| (i, 0, i + 1, rat(1)))).unwrap()
    }

    fn sl2() -> Algebra {
        // e1 = h, e2 = e, e3 = f
        Algebra::from_entries(
            3,
            [
                (0, 1, 1, rat(2)),
                (1, 0, 1, rat(-2)),
                (0, 2, 2, rat(-2)),
                (2, 0, 2, rat(2)),
                (1, 2, 0, rat(1)),
                (2, 1, 0, rat(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bracket_examples() {
        let a = nf(3);
        let e1 = unit_vector(3, 0);
        assert_eq!(a.bracket(&e1, &e1).unwrap(), unit_vector(3, 1));
        assert!(is_zero_vector(&a.bracket(&zero_vector(3), &e1).unwrap()));
        assert!(a.bracket(&e1, &zero_vector(2)).is_err());
    }

    #[test]
    fn add_product_cancels_and_rejects_bad_indices() {
        let mut a = Algebra::abelian(2).unwrap();
        a.add_product(0, 1, 0, rat(1)).unwrap();
        a.add_product(0, 1, 0, rat(-1)).unwrap();
        assert!(a.is_abelian());
        assert!(a.add_product(0, 2, 0, rat(1)).is_err());
        assert_eq!(Algebra::abelian(0), Err(Error::EmptyAlgebra));
    }

    #[test]
    fn square_of_basis_vector_breaks_right_identity() {
        // one-dimensional [e1,e1] = e1
        let a = Algebra::from_entries(1, [(0, 0, 0, rat(1))]).unwrap();
        let v = a.check_right_leibniz();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].i, v[0].j, v[0].k), (0, 0, 0));
        // lhs e1, rhs e1 + e1
        assert_eq!(v[0].residual, vec![rat(-1)]);
    }

    #[test]
    fn right_but_not_left_leibniz() {
        // [e1,e2] = e1 only: right multiplication by e2 is a projection,
        // which is a derivation, so the right identity holds.
        let a = Algebra::from_entries(2, [(0, 1, 0, rat(1))]).unwrap();
        assert!(a.check_right_leibniz().is_empty());
        let left = a.check_left_leibniz();
        assert_eq!((left[0].i, left[0].j, left[0].k), (0, 1, 1));
        assert_eq!(left[0].residual, vec![rat(-1), rat(0)]);
    }

    #[test]
    fn left_identity_examples() {
        assert!(Algebra::abelian(3).unwrap().check_left_leibniz().is_empty());
        assert!(!nf(3).check_left_leibniz().is_empty());
        assert!(sl2().check_left_leibniz().is_empty());
        assert!(sl2().check_right_leibniz().is_empty());
    }

    #[test]
    fn product_subspace_examples() {
        let a = nf(3);
        let full = a.full_subspace();
        let p = a.product_subspace(&full, &full).unwrap();
        assert_eq!(p.basis(), vec![unit_vector(3, 1), unit_vector(3, 2)]);
        let zero = Subspace::zero(3);
        assert_eq!(a.product_subspace(&zero, &full).unwrap().dim(), 0);
        let ab = Algebra::abelian(3).unwrap();
        let f = ab.full_subspace();
        assert_eq!(ab.product_subspace(&f, &f).unwrap().dim(), 0);
        assert!(a.product_subspace(&Subspace::zero(2), &full).is_err());
    }

    #[test]
    fn series_examples() {
        let s = nf(4).lower_central_series();
        assert_eq!(s.dims, vec![4, 3, 2, 1, 0]);
        assert_eq!(s.index, Some(5));
        let ab = Algebra::abelian(3).unwrap().lower_central_series();
        assert_eq!(ab.dims, vec![3, 0]);
        assert_eq!(ab.index, Some(2));
        assert!(nf(4).derived_series().reaches_zero());
        let d = sl2().derived_series();
        assert_eq!(d.dims, vec![3]);
        assert_eq!(d.index, None);
        assert_eq!(d.dim_at(5), 3);
    }

    #[test]
    fn filiform_examples() {
        assert!(!nf(5).is_filiform());
        assert!(!Algebra::abelian(3).unwrap().is_filiform());
    }

    #[test]
    fn squares_span() {
        let s = nf(3).squares_subspace();
        // [e1,e1] = e2 and [e2,e1] + [e1,e2] = e3
        assert_eq!(s.dim(), 2);
    }
}

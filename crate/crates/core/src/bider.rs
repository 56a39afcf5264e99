//! Bider(L) as a Leibniz algebra: structure constants over the solver
//! basis, conformance of named tables, innerness, invariant fingerprints
//! and verification of candidate homomorphisms.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::catalog::{FamilyId, PaperBiderBasis};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, rref, unit_vector, Coordinatizer, Mat, Rat, Vector};
use crate::maps::{
    bider_bracket, biderivation_space, biderivation_witness, inner_bider_space, inner_derivation,
    left_adjoint, Bider, LinMap, MapSpace,
};

/// Bider(L) with the structure constants of its bracket.
#[derive(Clone, Debug)]
pub struct InducedAlgebra {
    pub source: Algebra,
    pub basis: MapSpace,
    pub algebra: Algebra,
    pub closure_ok: bool,
    /// First basis pair whose bracket left the span, if any.
    pub closure_failure: Option<(usize, usize)>,
}

impl InducedAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Builds Bider(L) over the canonical solver basis `B_1..B_m`.
pub fn bider_algebra(a: &Algebra) -> Result<InducedAlgebra> {
    let basis = biderivation_space(a);
    induced_algebra(a, basis)
}

/// Structure constants of the bider bracket over an arbitrary space of
/// biderivations, expressed in its echelon basis.
pub fn induced_algebra(a: &Algebra, basis: MapSpace) -> Result<InducedAlgebra> {
    let m = basis.dim();
    if m == 0 {
        return Err(Error::EmptyAlgebra);
    }
    let elems = basis.biders();
    let mut entries = Vec::new();
    let mut failure = None;
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let v = bider_bracket(x, y)?.flatten();
            match basis.coordinates(&v) {
                Some(c) => entries.extend(
                    c.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (i, j, k, x)),
                ),
                None => {
                    failure.get_or_insert((i, j));
                }
            }
        }
    }
    let labels = (1..=m).map(|i| format!("B{i}")).collect();
    let algebra = Algebra::from_entries(m, entries)?.with_labels(labels)?;
    Ok(InducedAlgebra {
        source: a.clone(),
        basis,
        algebra,
        closure_ok: failure.is_none(),
        closure_failure: failure,
    })
}

/// Coefficient of one named element in a combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: String,
    pub coeff: String,
}

fn terms(list: &[(String, Rat)]) -> Vec<Term> {
    list.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(name, c)| Term {
            name: name.clone(),
            coeff: c.to_string(),
        })
        .collect()
}

/// Human-readable form such as `X3 - Y3` or `-2 Y4`.
pub fn format_combination(list: &[(String, Rat)]) -> String {
    let mut out = String::new();
    for (name, c) in list.iter().filter(|(_, c)| !c.is_zero()) {
        let neg = c < &Rat::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push(' ');
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Outcome of one bracket `[left, right]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub expected_terms: Vec<Term>,
    /// The computed bracket in the named basis; `None` when it lies outside
    /// the span of the named elements.
    pub computed: Option<String>,
    pub computed_terms: Option<Vec<Term>>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisDefect {
    pub name: String,
    pub witness: String,
}

/// Conformance of a named Bider basis and its table against computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub family: FamilyId,
    pub asserted: bool,
    pub elements: Vec<String>,
    pub span_dim: usize,
    pub bider_dim: usize,
    pub spans_bider: bool,
    pub basis_defects: Vec<BasisDefect>,
    pub rows: Vec<RowCheck>,
    pub omitted_checked: usize,
    pub omitted_nonzero: Vec<RowCheck>,
    pub notes: Vec<String>,
}

impl TableReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.matches).count() + self.omitted_nonzero.len()
    }

    /// True when the basis is sound and every product agrees with the table.
    pub fn conforms(&self) -> bool {
        self.mismatches() == 0 && self.basis_defects.is_empty() && self.spans_bider
    }
}

/// Brackets every ordered pair of named elements and compares with the
/// table, omitted pairs against zero.
pub fn verify_table(a: &Algebra, pb: &PaperBiderBasis) -> Result<TableReport> {
    let dim = a.dim();
    if dim != pb.family.dim() {
        return Err(Error::DimensionMismatch {
            what: "named basis".into(),
            expected: pb.family.dim(),
            found: dim,
        });
    }
    let names: Vec<String> = pb.elements.iter().map(|(s, _)| s.clone()).collect();
    let vecs: Vec<Vector> = pb.elements.iter().map(|(_, b)| b.flatten()).collect();
    let coords = Coordinatizer::new(2 * dim * dim, &vecs);

    let mut basis_defects = Vec::new();
    for (name, b) in &pb.elements {
        if let Some(w) = biderivation_witness(a, b)? {
            basis_defects.push(BasisDefect {
                name: name.clone(),
                witness: w.to_string(),
            });
        }
    }

    let bider = biderivation_space(a);
    let span = MapSpace::from_vectors(crate::maps::MapKind::Bider, dim, vecs.iter());

    let express = |v: &Vector| -> Option<Vec<(String, Rat)>> {
        coords
            .coordinates(v)
            .map(|c| names.iter().cloned().zip(c).collect::<Vec<_>>())
    };
    let check = |left: &str, right: &str, expected: &[(String, Rat)]| -> Result<RowCheck> {
        let l = pb.element(left).expect("defined");
        let r = pb.element(right).expect("defined");
        let got = bider_bracket(l, r)?.flatten();
        let want = pb.combination(expected);
        let computed = express(&got);
        Ok(RowCheck {
            left: left.into(),
            right: right.into(),
            expected: format_combination(expected),
            expected_terms: terms(expected),
            computed: computed.as_deref().map(format_combination),
            computed_terms: computed.as_deref().map(terms),
            matches: got == want,
        })
    };

    let mut rows = Vec::new();
    for t in &pb.table {
        rows.push(check(&t.left, &t.right, &t.expected)?);
    }
    let mut omitted_checked = 0;
    let mut omitted_nonzero = Vec::new();
    for l in &names {
        for r in &names {
            if pb.table.iter().any(|t| &t.left == l && &t.right == r) {
                continue;
            }
            omitted_checked += 1;
            let row = check(l, r, &[])?;
            if !row.matches {
                omitted_nonzero.push(row);
            }
        }
    }
    Ok(TableReport {
        family: pb.family,
        asserted: pb.asserted,
        elements: names.clone(),
        span_dim: span.dim(),
        bider_dim: bider.dim(),
        spans_bider: span.same_span(&bider),
        basis_defects,
        rows,
        omitted_checked,
        omitted_nonzero,
        notes: pb.notes.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InnernessReport {
    pub dim_bider: usize,
    pub dim_inner: usize,
    pub inner_contained: bool,
    pub inner_equals_all: bool,
}

pub fn innerness(a: &Algebra) -> InnernessReport {
    let all = biderivation_space(a);
    let inner = inner_bider_space(a);
    let inner_contained = inner.is_subspace_of(&all);
    InnernessReport {
        dim_bider: all.dim(),
        dim_inner: inner.dim(),
        inner_contained,
        inner_equals_all: inner_contained && inner.dim() == all.dim(),
    }
}

/// Isomorphism invariants computed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFingerprint {
    pub dim: usize,
    pub lower_central: Vec<usize>,
    pub derived: Vec<usize>,
    pub squares_dim: usize,
    /// Rank of the bracket as a linear map `L ⊗ L → L`.
    pub bracket_rank: usize,
    /// Dimension of the span of the right multiplications `[−, x]`.
    pub right_mult_rank: usize,
    /// Dimension of the span of the left multiplications `[x, −]`.
    pub left_mult_rank: usize,
}

fn span_rank(vs: Vec<Vector>) -> usize {
    let width = vs.first().map_or(0, Vec::len);
    Coordinatizer::new(width, &vs).rank()
}

pub fn fingerprint(a: &Algebra) -> InvariantFingerprint {
    let n = a.dim();
    let mults = |f: fn(&Algebra, &[Rat]) -> Result<LinMap>| {
        span_rank(
            (0..n)
                .map(|i| f(a, &unit_vector(n, i)).expect("dim").flatten())
                .collect(),
        )
    };
    InvariantFingerprint {
        dim: n,
        lower_central: a.lower_central_series().dims,
        derived: a.derived_series().dims,
        squares_dim: a.squares_subspace().dim(),
        bracket_rank: a.derived_subspace().dim(),
        right_mult_rank: mults(inner_derivation),
        left_mult_rank: mults(left_adjoint),
    }
}

/// Result of checking a candidate homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub invertible: bool,
    /// First basis pair `(i, j)` with `p[e_i,e_j] ≠ [p e_i, p e_j]`.
    pub failure: Option<(usize, usize, Vector)>,
}

impl HomReport {
    pub fn is_isomorphism(&self) -> bool {
        self.invertible && self.failure.is_none()
    }
}

/// Checks that `p` (column `j` = image of `e_j`) is a bijective bracket
/// preserving map `src → dst`.
pub fn verify_hom(src: &Algebra, dst: &Algebra, p: &LinMap) -> Result<HomReport> {
    let n = src.dim();
    if dst.dim() != n || p.n() != n {
        return Err(Error::DimensionMismatch {
            what: "homomorphism".into(),
            expected: n,
            found: if dst.dim() != n { dst.dim() } else { p.n() },
        });
    }
    let invertible = rref(p.matrix()).rank == n;
    let mut failure = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = p.apply(&src.bracket(&unit_vector(n, i), &unit_vector(n, j))?);
            let rhs = dst.bracket(&p.image(i), &p.image(j))?;
            let diff: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            if !is_zero_vector(&diff) {
                failure = Some((i, j, diff));
                break 'outer;
            }
        }
    }
    Ok(HomReport {
        invertible,
        failure,
    })
}

/// The map `x ↦ (−ad_x, Ad_x)` written in the coordinates of a space of
/// biderivations; `None` if some inner biderivation lies outside it.
pub fn inner_map_matrix(a: &Algebra, space: &MapSpace) -> Option<LinMap> {
    let n = a.dim();
    if space.dim() != n {
        return None;
    }
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        let b = crate::maps::inner_biderivation(a, &unit_vector(n, j)).ok()?;
        let c = space.coordinates(&b.flatten())?;
        for (i, x) in c.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    LinMap::from_matrix(m).ok()
}

/// Convenience for callers holding a [`Bider`] list instead of a space.
pub fn bracket_in_span(space: &MapSpace, x: &Bider, y: &Bider) -> Result<bool> {
    Ok(space.contains(&bider_bracket(x, y)?.flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_algebra, paper_bider_basis, Family};
    use crate::linalg::rat;

    fn nf(n: usize) -> Algebra {
        make_algebra(&FamilyId::new(Family::Nf, n).unwrap()).unwrap()
    }

    #[test]
    fn formatting() {
        let t = |v: &[(&str, i64)]| -> Vec<(String, Rat)> {
            v.iter().map(|(s, c)| (s.to_string(), rat(*c))).collect()
        };
        assert_eq!(format_combination(&t(&[("X3", 1), ("Y3", -1)])), "X3 - Y3");
        assert_eq!(format_combination(&t(&[("Y4", -2)])), "-2 Y4");
        assert_eq!(format_combination(&t(&[("X1", 0)])), "0");
    }

    #[test]
    fn nf4_induced() {
        let ind = bider_algebra(&nf(4)).unwrap();
        assert_eq!(ind.dim(), 7);
        assert!(ind.closure_ok);
        assert!(ind.algebra.is_right_leibniz());
        assert!(ind.algebra.is_solvable());
    }

    #[test]
    fn abelian_induced_is_all_pairs() {
        let a = Algebra::abelian(2).unwrap();
        let ind = bider_algebra(&a).unwrap();
        assert_eq!(ind.dim(), 8);
        assert!(ind.closure_ok);
        assert!(ind.algebra.is_right_leibniz());
    }

    #[test]
    fn nf_table_rows() {
        let a = nf(5);
        let rep = verify_table(&a, &paper_bider_basis(&FamilyId::new(Family::Nf, 5).unwrap()).unwrap()).unwrap();
        assert!(rep.spans_bider && rep.basis_defects.is_empty());
        let row = |l: &str, r: &str| rep.rows.iter().find(|x| x.left == l && x.right == r).unwrap();
        assert!(row("X2", "X1").matches);
        assert!(row("Y3", "X1").matches);
        assert_eq!(row("Y3", "X1").expected, "-2 Y3");
        // Y2, Y3 do not appear in the table and bracket to zero
        assert!(!rep.omitted_nonzero.iter().any(|x| x.left == "Y2" && x.right == "Y3"));
    }

    #[test]
    fn innerness_examples() {
        let r = make_algebra(&FamilyId::new(Family::RNf, 5).unwrap()).unwrap();
        assert!(innerness(&r).inner_equals_all);
        let i = innerness(&nf(5));
        assert!(!i.inner_equals_all);
        assert_eq!(i.dim_bider, 9);
        let z = innerness(&Algebra::abelian(2).unwrap());
        assert_eq!((z.dim_inner, z.inner_equals_all), (0, false));
    }

    #[test]
    fn fingerprints() {
        assert_eq!(fingerprint(&nf(3)).lower_central, vec![3, 2, 1, 0]);
        assert_eq!(fingerprint(&Algebra::abelian(2).unwrap()).derived, vec![2, 0]);
    }

    #[test]
    fn homomorphisms() {
        let a = nf(2);
        assert!(verify_hom(&a, &a, &LinMap::identity(2)).unwrap().is_isomorphism());
        let mut swap = LinMap::zero(2);
        swap.set(0, 1, rat(1));
        swap.set(1, 0, rat(1));
        let rep = verify_hom(&a, &a, &swap).unwrap();
        assert!(rep.invertible && rep.failure.is_some());

        let n = 5;
        let b = nf(n);
        let mut s = LinMap::zero(n);
        (0..n).for_each(|i| s.set(i, i, rat(3).pow(i as i32 + 1)));
        assert!(verify_hom(&b, &b, &s).unwrap().is_isomorphism());
        assert!(!verify_hom(&b, &b, &LinMap::zero(n)).unwrap().invertible);
        assert!(verify_hom(&a, &b, &LinMap::identity(2)).is_err());
    }
}

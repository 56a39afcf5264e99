mod common;

use leibniz_core::catalog::{make_algebra, Family, FamilyId};
use leibniz_core::linalg::{rat, unit_vector};
use leibniz_core::{Algebra, Convention};

fn catalog(n_max: usize) -> Vec<(FamilyId, Algebra)> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for n in f.min_n()..=n_max {
            let id = FamilyId::new(f, n).unwrap();
            out.push((id, make_algebra(&id).unwrap()));
        }
    }
    out
}

#[test]
fn catalog_is_right_leibniz_by_both_checks() {
    for (id, a) in catalog(10) {
        assert!(a.check_right_leibniz().is_empty(), "{id}");
        assert!(common::right_leibniz_ok(&common::cube(&a)), "{id}");
    }
}

#[test]
fn catalog_algebras_are_not_lie() {
    // NF_1 is abelian and NF_2 has a single central product, so both
    // satisfy the left identity too.
    for (id, a) in catalog(8).into_iter().filter(|(id, _)| id.n >= 3) {
        assert!(!a.check_leibniz(Convention::Left).is_empty(), "{id}");
    }
}

#[test]
fn perturbed_tables_are_caught() {
    for (id, a) in catalog(6) {
        let mut c = common::cube(&a);
        let n = c.len();
        // Add a product [e_n, e_n] = e_1 where none existed.
        c[n - 1][n - 1][0] += rat(1);
        let b = common::algebra(&c);
        assert_eq!(
            b.check_right_leibniz().is_empty(),
            common::right_leibniz_ok(&c),
            "{id}"
        );
    }
}

#[test]
fn right_witness_is_a_true_violation() {
    let a = common::algebra(&common::cube_from(2, &[(0, 0, 1, 1), (1, 0, 0, 1)]));
    let v = &a.check_right_leibniz()[0];
    let n = a.dim();
    let (x, y, z) = (unit_vector(n, v.i), unit_vector(n, v.j), unit_vector(n, v.k));
    let lhs = a.bracket(&a.bracket(&x, &y).unwrap(), &z).unwrap();
    let r1 = a.bracket(&a.bracket(&x, &z).unwrap(), &y).unwrap();
    let r2 = a.bracket(&x, &a.bracket(&y, &z).unwrap()).unwrap();
    let res: Vec<_> = (0..n).map(|t| &lhs[t] - &r1[t] - &r2[t]).collect();
    assert_eq!(res, v.residual);
}

#[test]
fn series_examples() {
    for n in 2..=8 {
        let a = make_algebra(&FamilyId::new(Family::Nf, n).unwrap()).unwrap();
        let lcs = a.lower_central_series();
        assert_eq!(lcs.dims, (0..=n).rev().collect::<Vec<_>>());
        assert_eq!(lcs.index, Some(n + 1));
        assert!(a.is_nilpotent() && a.is_solvable());
        assert!(!a.is_filiform());
    }
    for f in [Family::F1, Family::F2] {
        for n in 4..=10 {
            let a = make_algebra(&FamilyId::new(f, n).unwrap()).unwrap();
            assert!(a.is_filiform(), "{f:?} {n}");
            assert_eq!(a.lower_central_series().index, Some(n));
        }
    }
    for f in [Family::RNf, Family::RF1, Family::L1, Family::L2] {
        for n in 4..=8 {
            let a = make_algebra(&FamilyId::new(f, n).unwrap()).unwrap();
            assert!(a.is_solvable() && !a.is_nilpotent(), "{f:?} {n}");
        }
    }
    let r = make_algebra(&FamilyId::new(Family::RNf, 4).unwrap()).unwrap();
    assert_eq!(r.derived_series().dims, vec![5, 4, 3, 0]);
}

#[test]
fn lie_algebras_satisfy_both_identities() {
    let sl2 = common::algebra(&common::seeds4()[3]);
    assert!(sl2.check_leibniz(Convention::Right).is_empty());
    assert!(sl2.check_leibniz(Convention::Left).is_empty());
    assert!(!sl2.is_solvable());
}

//! Claim-by-claim comparison of a family against computation.

use std::fmt;

use leibniz_core::bider::{
    bider_algebra, fingerprint, inner_map_matrix, innerness, verify_hom, verify_table,
};
use leibniz_core::catalog::{expected_dim, make_algebra, paper_bider_basis, paper_form, Family, FamilyId};
use leibniz_core::maps::{is_biderivation, map_space, MapKind, MapSpace};
use leibniz_core::Result;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A known difference between a published value and the computed one.
    Delta,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Delta => "DELTA",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub id: FamilyId,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Claim {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.id.family.tag(),
            "n": self.id.n,
            "claim": self.name,
            "status": self.status.to_string(),
            "detail": self.detail,
        })
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn verify_family(id: FamilyId) -> Result<Vec<Claim>> {
    let a = make_algebra(&id)?;
    let mut out = Vec::new();
    let mut push = |name: &str, status: Status, detail: String| {
        out.push(Claim {
            id,
            name: name.to_string(),
            status,
            detail,
        })
    };

    let violations = a.check_right_leibniz();
    push(
        "right leibniz",
        pass_fail(violations.is_empty()),
        format!("{} violations", violations.len()),
    );

    let mut bider_space: Option<MapSpace> = None;
    for kind in MapKind::ALL {
        let space = map_space(&a, kind);
        let exp = expected_dim(&id, kind)?;
        let (status, detail) = match exp.stated {
            Some(s) if s == space.dim() => (Status::Pass, format!("computed {}, stated {s}", space.dim())),
            Some(s) if exp.discrepancy && space.dim() == exp.param_count => (
                Status::Delta,
                format!(
                    "computed {}, stated {s}, displayed parameters {}",
                    space.dim(),
                    exp.param_count
                ),
            ),
            Some(s) => (Status::Fail, format!("computed {}, stated {s}", space.dim())),
            None => (
                pass_fail(space.dim() == exp.param_count),
                format!("computed {}, displayed parameters {}", space.dim(), exp.param_count),
            ),
        };
        push(&format!("dim {kind}"), status, detail);

        let form = paper_form(&id, kind)?;
        let span = MapSpace::from_vectors(kind, a.dim(), form.vectors().iter());
        let same = span.same_span(&space);
        let mut detail = format!("{} generators, span {}", form.params.len(), span.dim());
        for note in &form.notes {
            detail.push_str("; ");
            detail.push_str(note);
        }
        push(&format!("form {kind}"), pass_fail(same), detail);
        if kind == MapKind::Bider {
            bider_space = Some(space);
        }
    }
    let bider_space = bider_space.expect("bider kind visited");

    let pb = paper_bider_basis(&id)?;
    let all_bider = pb
        .elements
        .iter()
        .all(|(_, b)| is_biderivation(&a, b).unwrap_or(false));
    let report = verify_table(&a, &pb)?;
    push(
        "named basis",
        pass_fail(all_bider && report.spans_bider),
        format!(
            "{} elements, span {}, Bider dim {}",
            pb.elements.len(),
            report.span_dim,
            report.bider_dim
        ),
    );
    let mismatches = report.mismatches();
    let detail = format!(
        "{} listed rows, {} omitted pairs, {} mismatches",
        report.rows.len(),
        report.omitted_checked,
        mismatches
    );
    let status = match (mismatches == 0, report.asserted) {
        (true, _) => Status::Pass,
        (false, true) => Status::Fail,
        (false, false) => Status::Delta,
    };
    push("bracket table", status, detail);

    let ind = bider_algebra(&a)?;
    push(
        "induced algebra",
        pass_fail(ind.closure_ok && ind.algebra.is_right_leibniz()),
        format!("dim {}, closure {}", ind.dim(), ind.closure_ok),
    );
    let inner = innerness(&a);
    let detail = format!("inner {}, all {}", inner.dim_inner, inner.dim_bider);
    if id.family.is_solvable_extension() {
        push("all biderivations inner", pass_fail(inner.inner_equals_all), detail);
        let same = fingerprint(&ind.algebra) == fingerprint(&a);
        push(
            "fingerprint Bider(L) = L",
            if same { Status::Pass } else { Status::Delta },
            String::new(),
        );
        let iso = inner_map_matrix(&a, &bider_space)
            .map(|p| verify_hom(&a, &ind.algebra, &p))
            .transpose()?
            .is_some_and(|r| r.is_isomorphism());
        push(
            "x -> (-ad_x, Ad_x) is an isomorphism",
            if iso { Status::Pass } else { Status::Delta },
            String::new(),
        );
    } else {
        push("not all biderivations inner", pass_fail(!inner.inner_equals_all), detail);
    }
    if id.family == Family::Nf {
        let solvable = ind.algebra.is_solvable();
        push(
            "Bider solvable",
            pass_fail(solvable),
            format!("derived dims {:?}", ind.algebra.derived_series().dims),
        );
    }
    Ok(out)
}

/// Families and sizes for a full sweep up to `n_max`.
pub fn sweep(n_max: usize) -> Vec<FamilyId> {
    let mut ids = Vec::new();
    for f in Family::ALL {
        for n in f.min_n().max(2)..=n_max {
            ids.push(FamilyId::new(f, n).expect("n above minimum"));
        }
    }
    ids
}

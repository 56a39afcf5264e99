//! The algebra families NF, F1, F2, R_NF, R_F1, L1, L2 together with the
//! closed-form Der / AntiDer / Bider families and the named Bider bases
//! with their expected bracket tables.
//!
//! Published matrices for the solvable families list the `h` generators
//! first, while algebras here use the basis `(e_1..e_n, h)` or
//! `(e_1..e_n, h_1, h_2)`. Matrix positions are therefore written in
//! display coordinates and mapped through [`FamilyId::display_frame`].

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{rat, zero_vector, Rat, Vector};
use crate::maps::{Bider, MapElement, MapKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "NF")]
    Nf,
    #[serde(rename = "F1")]
    F1,
    #[serde(rename = "F2")]
    F2,
    #[serde(rename = "R_NF")]
    RNf,
    #[serde(rename = "R_F1")]
    RF1,
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "L2")]
    L2,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Nf,
        Family::F1,
        Family::F2,
        Family::RNf,
        Family::RF1,
        Family::L1,
        Family::L2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Nf => "NF",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::RNf => "R_NF",
            Family::RF1 => "R_F1",
            Family::L1 => "L1",
            Family::L2 => "L2",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Nf => 1,
            Family::RNf => 2,
            _ => 4,
        }
    }

    /// Number of generators appended after `e_1..e_n`.
    pub fn extra_dims(self) -> usize {
        match self {
            Family::Nf | Family::F1 | Family::F2 => 0,
            Family::RNf => 1,
            Family::RF1 | Family::L1 | Family::L2 => 2,
        }
    }

    pub fn is_solvable_extension(self) -> bool {
        self.extra_dims() > 0
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | '(' | ')' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        Ok(match key.as_str() {
            "NF" => Family::Nf,
            "F1" => Family::F1,
            "F2" => Family::F2,
            "RNF" | "R" => Family::RNf,
            "RF1" => Family::RF1,
            "L1" => Family::L1,
            "L2" => Family::L2,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

/// A family together with its nilradical dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyId {
    pub family: Family,
    pub n: usize,
}

impl FamilyId {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_n() {
            return Err(Error::FamilyTooSmall {
                family: family.tag().into(),
                min: family.min_n(),
                n,
            });
        }
        Ok(FamilyId { family, n })
    }

    /// Dimension of the algebra itself.
    pub fn dim(&self) -> usize {
        self.n + self.family.extra_dims()
    }

    /// Algebra index of each display index (both 0-based).
    pub fn display_frame(&self) -> Vec<usize> {
        let n = self.n;
        match self.family.extra_dims() {
            0 => (0..n).collect(),
            1 => std::iter::once(n).chain(0..n).collect(),
            _ => [n, n + 1].into_iter().chain(0..n).collect(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = (1..=self.n).map(|i| format!("e{i}")).collect();
        match self.family.extra_dims() {
            0 => {}
            1 => l.push("h".into()),
            _ => {
                l.push("h1".into());
                l.push("h2".into());
            }
        }
        l
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.family, self.n)
    }
}

/// Builds the multiplication table of a family. Indices in the closures
/// below are 1-based `e_i`; `h`, `h1`, `h2` sit after `e_n`.
pub fn make_algebra(id: &FamilyId) -> Result<Algebra> {
    let id = FamilyId::new(id.family, id.n)?;
    let n = id.n;
    let e = |i: usize| i - 1;
    let (h, h1, h2) = (n, n, n + 1);
    let mut t: Vec<(usize, usize, usize, Rat)> = Vec::new();
    let mut put = |i: usize, j: usize, k: usize, c: i64| t.push((i, j, k, rat(c)));

    match id.family {
        Family::Nf => (1..n).for_each(|i| put(e(i), e(1), e(i + 1), 1)),
        Family::F1 => {
            put(e(1), e(1), e(3), 1);
            (2..n).for_each(|i| put(e(i), e(1), e(i + 1), 1));
        }
        Family::F2 => {
            put(e(1), e(1), e(3), 1);
            (3..n).for_each(|i| put(e(i), e(1), e(i + 1), 1));
        }
        Family::RNf => {
            (1..n).for_each(|i| put(e(i), e(1), e(i + 1), 1));
            put(h, e(1), e(1), -1);
            (1..=n).for_each(|i| put(e(i), h, e(i), i as i64));
        }
        Family::RF1 => {
            (2..n).for_each(|i| put(e(i), e(1), e(i + 1), 1));
            put(e(1), h2, e(1), 1);
            put(h2, e(1), e(1), -1);
            for i in 2..=n {
                put(e(i), h1, e(i), 1);
                put(e(i), h2, e(i), i as i64 - 1);
            }
        }
        Family::L1 | Family::L2 => {
            put(e(1), e(1), e(3), 1);
            (3..n).for_each(|i| put(e(i), e(1), e(i + 1), 1));
            put(e(1), h2, e(1), 1);
            put(h2, e(1), e(1), -1);
            put(e(2), h1, e(2), 1);
            if id.family == Family::L1 {
                put(h1, e(2), e(2), -1);
            }
            (3..=n).for_each(|i| put(e(i), h2, e(i), i as i64 - 1));
        }
    }
    Algebra::from_entries(id.dim(), t)?.with_labels(id.labels())
}

/// A closed-form family of maps: one generator per free parameter.
#[derive(Clone, Debug)]
pub struct ParametricForm {
    pub family: FamilyId,
    pub kind: MapKind,
    pub params: Vec<String>,
    pub generators: Vec<MapElement>,
    pub notes: Vec<String>,
}

impl ParametricForm {
    pub fn vectors(&self) -> Vec<Vector> {
        use crate::maps::Vectorize;
        self.generators.iter().map(Vectorize::vectorize).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    /// `d`, or the single map for der / antider forms.
    First,
    /// `D` of a biderivation, or the single map of an antider form.
    Second,
}

use Part::{First as P_D, Second as P_A};

/// Accumulates generators in display coordinates (1-based row, column).
struct FormBuilder {
    id: FamilyId,
    kind: MapKind,
    frame: Vec<usize>,
    params: Vec<String>,
    gens: Vec<Vector>,
    notes: Vec<String>,
}

impl FormBuilder {
    fn new(id: FamilyId, kind: MapKind) -> Self {
        FormBuilder {
            frame: id.display_frame(),
            id,
            kind,
            params: Vec::new(),
            gens: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(&mut self, name: String) -> usize {
        self.params.push(name);
        self.gens
            .push(zero_vector(self.kind.width(self.id.dim())));
        self.gens.len() - 1
    }

    fn alpha(&mut self, i: usize) -> usize {
        self.param(format!("alpha_{i}"))
    }

    fn beta(&mut self, i: usize) -> usize {
        self.param(format!("beta_{i}"))
    }

    fn put(&mut self, p: usize, part: Part, row: usize, col: usize, c: i64) {
        let dim = self.id.dim();
        let offset = match (self.kind, part) {
            (MapKind::Bider, Part::Second) => dim * dim,
            (MapKind::Der, Part::Second) | (MapKind::AntiDer, Part::First) => {
                panic!("part does not exist for {:?}", self.kind)
            }
            _ => 0,
        };
        let (r, c0) = (self.frame[row - 1], self.frame[col - 1]);
        self.gens[p][offset + r * dim + c0] += rat(c);
    }

    fn finish(self) -> ParametricForm {
        let n = self.id.dim();
        let generators = self
            .gens
            .iter()
            .map(|v| MapElement::from_flat(self.kind, n, v).expect("width"))
            .collect();
        ParametricForm {
            family: self.id,
            kind: self.kind,
            params: self.params,
            generators,
            notes: self.notes,
        }
    }
}

/// The part holding the single map of a der or antider form.
fn single(kind: MapKind) -> Part {
    if kind == MapKind::AntiDer {
        P_A
    } else {
        P_D
    }
}

fn nf_der(b: &mut FormBuilder, n: usize) -> Vec<usize> {
    let a1 = b.alpha(1);
    (1..=n).for_each(|i| b.put(a1, P_D, i, i, i as i64));
    let mut ps = vec![a1];
    for k in 2..=n {
        let p = b.alpha(k);
        (1..=n + 1 - k).for_each(|i| b.put(p, P_D, i + k - 1, i, 1));
        ps.push(p);
    }
    ps
}

/// d-part of the F1 family: α_1..α_{n+1}.
fn f1_der(b: &mut FormBuilder, n: usize) -> usize {
    let a1 = b.alpha(1);
    b.put(a1, P_D, 1, 1, 1);
    b.put(a1, P_D, 2, 2, 1);
    (3..=n).for_each(|j| b.put(a1, P_D, j, j, j as i64 - 1));
    let a2 = b.alpha(2);
    b.put(a2, P_D, 2, 1, 1);
    (2..=n).for_each(|j| b.put(a2, P_D, j, j, 1));
    for k in 3..=n {
        let p = b.alpha(k);
        b.put(p, P_D, k, 1, 1);
        if k < n {
            b.put(p, P_D, k, 2, 1);
        }
        (3..=n).filter(|j| j + k - 2 <= n).for_each(|j| b.put(p, P_D, j + k - 2, j, 1));
    }
    let last = b.alpha(n + 1);
    b.put(last, P_D, n, 2, 1);
    a1
}

/// d-part of the F2 family: α_1..α_{n+2}.
fn f2_der(b: &mut FormBuilder, n: usize) -> usize {
    let a1 = b.alpha(1);
    b.put(a1, P_D, 1, 1, 1);
    (3..=n).for_each(|j| b.put(a1, P_D, j, j, j as i64 - 1));
    for k in 2..=n {
        let p = b.alpha(k);
        b.put(p, P_D, k, 1, 1);
        (3..=n).filter(|j| j + k - 2 <= n && k >= 3).for_each(|j| b.put(p, P_D, j + k - 2, j, 1));
    }
    let p = b.alpha(n + 1);
    b.put(p, P_D, 2, 2, 1);
    let p = b.alpha(n + 2);
    b.put(p, P_D, n, 2, 1);
    a1
}

/// d-part of R_NF: α_1, α_2.
fn rnf_der(b: &mut FormBuilder, n: usize) -> (usize, usize) {
    let a1 = b.alpha(1);
    b.put(a1, P_D, 2, 1, -1);
    (2..=n).for_each(|k| b.put(a1, P_D, k + 1, k, 1));
    let a2 = b.alpha(2);
    (1..=n).for_each(|k| b.put(a2, P_D, k + 1, k + 1, k as i64));
    (a1, a2)
}

/// d-part of R_F1: α_1, α_2, α_3.
fn rf1_der(b: &mut FormBuilder, n: usize) -> [usize; 3] {
    let a1 = b.alpha(1);
    (2..=n).for_each(|k| b.put(a1, P_D, k + 2, k + 2, 1));
    let a2 = b.alpha(2);
    b.put(a2, P_D, 3, 2, -1);
    (2..n).for_each(|k| b.put(a2, P_D, k + 3, k + 2, 1));
    let a3 = b.alpha(3);
    b.put(a3, P_D, 3, 3, 1);
    (2..=n).for_each(|k| b.put(a3, P_D, k + 2, k + 2, k as i64 - 1));
    [a1, a2, a3]
}

/// d-part of L1 (α_1..α_4) or L2 (α_1..α_3). Returns the parameters
/// `[shift, h1, e2-scale, grading]`; `h1` is absent for L2.
fn l_der(b: &mut FormBuilder, n: usize, l1: bool) -> [Option<usize>; 4] {
    let a1 = b.alpha(1);
    b.put(a1, P_D, 3, 2, -1);
    b.put(a1, P_D, 5, 3, 1);
    (3..n).for_each(|k| b.put(a1, P_D, k + 3, k + 2, 1));
    let h1 = if l1 {
        let p = b.alpha(2);
        b.put(p, P_D, 4, 1, -1);
        Some(p)
    } else {
        None
    };
    let s = b.alpha(if l1 { 3 } else { 2 });
    b.put(s, P_D, 4, 4, 1);
    let g = b.alpha(if l1 { 4 } else { 3 });
    b.put(g, P_D, 3, 3, 1);
    (3..=n).for_each(|k| b.put(g, P_D, k + 2, k + 2, k as i64 - 1));
    [Some(a1), h1, Some(s), Some(g)]
}

/// Shared anti-derivation pattern of R_F1: β_k for 3 ≤ k ≤ n+1.
fn rf1_beta_tail(b: &mut FormBuilder, n: usize, part: Part) {
    for k in 3..=n + 1 {
        let p = b.beta(k);
        b.put(p, part, k + 1, 1, 1);
        b.put(p, part, k + 1, 2, k as i64 - 2);
        if k <= n {
            b.put(p, part, k + 2, 3, 1);
        }
    }
}

/// Shared anti-derivation pattern of L1/L2: β_k for 4 ≤ k ≤ n+1.
fn l_beta_tail(b: &mut FormBuilder, n: usize, part: Part) {
    for k in 4..=n {
        let p = b.beta(k);
        b.put(p, part, k + 1, 2, k as i64 - 2);
        b.put(p, part, k + 2, 3, 1);
    }
    let p = b.beta(n + 1);
    b.put(p, part, n + 2, 2, 1);
}

/// The closed-form family for `(id, kind)`, in its parameter order.
pub fn paper_form(id: &FamilyId, kind: MapKind) -> Result<ParametricForm> {
    let id = FamilyId::new(id.family, id.n)?;
    let n = id.n;
    let mut b = FormBuilder::new(id, kind);
    let one = single(kind);
    match (id.family, kind) {
        (Family::Nf, MapKind::Der) => {
            nf_der(&mut b, n);
        }
        (Family::Nf, MapKind::AntiDer) => {
            for j in 1..=n {
                let p = b.beta(j);
                b.put(p, one, j, 1, 1);
            }
        }
        (Family::Nf, MapKind::Bider) => {
            let a1 = nf_der(&mut b, n)[0];
            b.put(a1, P_A, 1, 1, 1);
            for j in 2..=n {
                let p = b.beta(j);
                b.put(p, P_A, j, 1, 1);
            }
        }
        (Family::F1, MapKind::Der) => {
            f1_der(&mut b, n);
            b.notes.push(
                "column 2 follows the d-part of the biderivation display: \
                 entries alpha_3..alpha_{n-1} in rows 3..n-1 and alpha_{n+1} in row n"
                    .into(),
            );
        }
        (Family::F1, MapKind::AntiDer) | (Family::F2, MapKind::AntiDer) => {
            for j in 1..=n {
                let p = b.beta(j);
                b.put(p, one, j, 1, 1);
            }
            let p = b.beta(n + 1);
            let q = b.beta(n + 2);
            if id.family == Family::F1 {
                b.put(p, one, 1, 2, 1);
                b.put(p, one, 2, 2, -1);
                b.put(q, one, n, 2, 1);
            } else {
                b.put(p, one, 2, 2, 1);
                b.put(q, one, n, 2, 2);
            }
        }
        (Family::F1, MapKind::Bider) => {
            let a1 = f1_der(&mut b, n);
            b.put(a1, P_A, 1, 1, 1);
            for j in 2..=n {
                let p = b.beta(j);
                b.put(p, P_A, j, 1, 1);
            }
            let p = b.beta(n + 2);
            b.put(p, P_A, n, 2, 1);
        }
        (Family::F2, MapKind::Der) => {
            f2_der(&mut b, n);
            b.notes.push(
                "lower triangle of columns 3..n follows the d-part of the \
                 biderivation display (alpha_{i-j+2} below the diagonal)"
                    .into(),
            );
        }
        (Family::F2, MapKind::Bider) => {
            let a1 = f2_der(&mut b, n);
            b.put(a1, P_A, 1, 1, 1);
            for j in 2..=n {
                let p = b.beta(j);
                b.put(p, P_A, j, 1, 1);
            }
            let p = b.beta(n + 1);
            b.put(p, P_A, 2, 2, 1);
            let p = b.beta(n + 2);
            b.put(p, P_A, n, 2, 1);
        }
        (Family::RNf, MapKind::Der) => {
            rnf_der(&mut b, n);
        }
        (Family::RNf, MapKind::AntiDer) => {
            let p = b.beta(1);
            b.put(p, one, 2, 2, 1);
            for k in 2..=n {
                let p = b.beta(k);
                b.put(p, one, k + 1, 2, 1);
                b.put(p, one, k, 1, k as i64 - 1);
            }
            let p = b.beta(n + 1);
            b.put(p, one, n + 1, 1, 1);
        }
        (Family::RNf, MapKind::Bider) => {
            let (a1, a2) = rnf_der(&mut b, n);
            b.put(a1, P_A, 2, 1, -1);
            b.put(a1, P_A, 3, 2, -1);
            b.put(a2, P_A, 2, 2, 1);
            for k in 3..=n {
                let p = b.beta(k);
                b.put(p, P_A, k + 1, 2, 1);
                b.put(p, P_A, k, 1, k as i64 - 1);
            }
            let p = b.beta(n + 1);
            b.put(p, P_A, n + 1, 1, 1);
        }
        (Family::RF1, MapKind::Der) => {
            rf1_der(&mut b, n);
        }
        (Family::RF1, MapKind::AntiDer) => {
            let p = b.beta(1);
            b.put(p, one, 3, 3, 1);
            let p = b.beta(2);
            b.put(p, one, 3, 2, 1);
            rf1_beta_tail(&mut b, n, one);
            let p = b.beta(n + 2);
            b.put(p, one, 1, 1, 1);
            let p = b.beta(n + 3);
            b.put(p, one, 1, 2, 1);
        }
        (Family::RF1, MapKind::Bider) => {
            let [_, a2, a3] = rf1_der(&mut b, n);
            b.put(a2, P_A, 3, 2, -1);
            b.put(a3, P_A, 3, 3, 1);
            rf1_beta_tail(&mut b, n, P_A);
        }
        (Family::L1 | Family::L2, MapKind::Der) => {
            l_der(&mut b, n, id.family == Family::L1);
        }
        (Family::L1 | Family::L2, MapKind::AntiDer) => {
            let l1 = id.family == Family::L1;
            let p = b.beta(1);
            b.put(p, one, 3, 3, 1);
            let p = b.beta(2);
            if l1 {
                b.put(p, one, 4, 4, 1);
            } else {
                b.put(p, one, 1, 2, 1);
            }
            let p = b.beta(3);
            b.put(p, one, 3, 2, 1);
            b.put(p, one, 5, 3, 1);
            l_beta_tail(&mut b, n, one);
            let p = b.beta(n + 2);
            if l1 {
                b.put(p, one, 4, 1, 1);
            } else {
                b.put(p, one, 1, 1, 1);
                let q = b.beta(n + 3);
                b.put(q, one, 4, 1, 1);
            }
        }
        (Family::L1 | Family::L2, MapKind::Bider) => {
            let l1 = id.family == Family::L1;
            let [a1, h1, s, g] = l_der(&mut b, n, l1);
            let (a1, s, g) = (a1.unwrap(), s.unwrap(), g.unwrap());
            b.put(a1, P_A, 3, 2, -1);
            b.put(a1, P_A, 5, 3, -1);
            b.put(g, P_A, 3, 3, 1);
            if let Some(h1) = h1 {
                b.put(h1, P_A, 4, 1, -1);
                b.put(s, P_A, 4, 4, 1);
            }
            l_beta_tail(&mut b, n, P_A);
            if !l1 {
                let p = b.beta(n + 2);
                b.put(p, P_A, 4, 1, 1);
            }
            b.notes.push(
                "D-part entry at display (5,3) is encoded as -alpha_1; the printed \
                 symbol is -beta_1, a parameter that does not occur elsewhere in the family"
                    .into(),
            );
        }
    }
    Ok(b.finish())
}

/// Dimension claim for a space, with the parameter count of the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedDim {
    pub family: FamilyId,
    pub kind: MapKind,
    /// Dimension stated in words, where the source states one.
    pub stated: Option<usize>,
    /// Number of free parameters of the closed form.
    pub param_count: usize,
    pub discrepancy: bool,
    pub note: Option<String>,
}

pub fn expected_dim(id: &FamilyId, kind: MapKind) -> Result<ExpectedDim> {
    let form = paper_form(id, kind)?;
    let n = id.n;
    let stated = match kind {
        MapKind::Bider => Some(match id.family {
            Family::Nf => 2 * n - 1,
            Family::F1 => 2 * n + 1,
            Family::F2 => 2 * n + 3,
            Family::RNf | Family::RF1 | Family::L1 | Family::L2 => n + 2,
        }),
        _ => None,
    };
    let param_count = form.params.len();
    let discrepancy = stated.is_some_and(|s| s != param_count);
    let note = discrepancy.then(|| {
        format!(
            "stated dimension {} differs from the {} free parameters of the displayed family",
            stated.unwrap(),
            param_count
        )
    });
    Ok(ExpectedDim {
        family: *id,
        kind,
        stated,
        param_count,
        discrepancy,
        note,
    })
}

/// One expected product `[left, right] = Σ coeff · name`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    pub expected: Vec<(String, Rat)>,
}

/// Named biderivations with their expected bracket table. Pairs not listed
/// in `table` are expected to bracket to zero.
#[derive(Clone, Debug)]
pub struct PaperBiderBasis {
    pub family: FamilyId,
    pub elements: Vec<(String, Bider)>,
    pub table: Vec<TableEntry>,
    /// True when the table is expected to hold exactly.
    pub asserted: bool,
    pub notes: Vec<String>,
}

impl PaperBiderBasis {
    pub fn names(&self) -> Vec<&str> {
        self.elements.iter().map(|(s, _)| s.as_str()).collect()
    }

    pub fn element(&self, name: &str) -> Option<&Bider> {
        self.elements.iter().find(|(s, _)| s == name).map(|(_, b)| b)
    }

    /// Vectorization of `Σ c · name`.
    pub fn combination(&self, terms: &[(String, Rat)]) -> Vector {
        let dim = self.family.dim();
        let mut v = zero_vector(2 * dim * dim);
        for (name, c) in terms {
            if let Some(b) = self.element(name) {
                for (x, y) in v.iter_mut().zip(b.flatten()) {
                    *x += c * y;
                }
            }
        }
        v
    }
}

struct BasisBuilder {
    id: FamilyId,
    frame: Vec<usize>,
    elements: Vec<(String, Bider)>,
    table: Vec<TableEntry>,
    notes: Vec<String>,
}

impl BasisBuilder {
    fn new(id: FamilyId) -> Self {
        BasisBuilder {
            frame: id.display_frame(),
            id,
            elements: Vec::new(),
            table: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Adds an element from matrix units `(part, row, col, coeff)` in
    /// display coordinates.
    fn element(&mut self, name: String, units: &[(Part, usize, usize, i64)]) {
        let mut b = Bider::zero(self.id.dim());
        for &(part, r, c, k) in units {
            let (r, c) = (self.frame[r - 1], self.frame[c - 1]);
            let m = if part == P_D {
                &mut b.derivation
            } else {
                &mut b.anti
            };
            let v = m.entry(r, c) + rat(k);
            m.set(r, c, v);
        }
        self.elements.push((name, b));
    }

    fn defined(&self, name: &str) -> bool {
        self.elements.iter().any(|(s, _)| s == name)
    }

    fn row(&mut self, left: String, right: String, terms: &[(String, i64)]) {
        let mut expected = Vec::new();
        for (name, c) in terms {
            if *c == 0 {
                continue;
            }
            if self.defined(name) {
                expected.push((name.clone(), rat(*c)));
            } else {
                self.notes.push(format!(
                    "[{left},{right}]: {name} is not a defined element; its term is taken as zero"
                ));
            }
        }
        if !self.defined(&left) || !self.defined(&right) {
            self.notes.push(format!(
                "[{left},{right}]: operand not a defined element; row skipped"
            ));
            return;
        }
        self.table.push(TableEntry {
            left,
            right,
            expected,
        });
    }

    fn finish(self, asserted: bool) -> PaperBiderBasis {
        PaperBiderBasis {
            family: self.id,
            elements: self.elements,
            table: self.table,
            asserted,
            notes: self.notes,
        }
    }
}

fn x(i: usize) -> String {
    format!("X{i}")
}

fn y(i: usize) -> String {
    format!("Y{i}")
}

fn diag_units(part: Part, entries: impl IntoIterator<Item = (usize, i64)>) -> Vec<(Part, usize, usize, i64)> {
    entries.into_iter().map(|(i, c)| (part, i, i, c)).collect()
}

fn nf_basis(b: &mut BasisBuilder, n: usize) {
    let mut x1 = diag_units(P_D, (1..=n).map(|i| (i, i as i64)));
    x1.push((P_A, 1, 1, 1));
    b.element(x(1), &x1);
    for k in 2..=n {
        let u: Vec<_> = (1..=n + 1 - k).map(|i| (P_D, i + k - 1, i, 1)).collect();
        b.element(x(k), &u);
    }
    for k in 2..=n {
        b.element(y(k), &[(P_A, k, 1, 1)]);
    }
    for k in 2..=n {
        let ki = k as i64;
        b.row(x(1), x(k), &[(x(k), 1), (y(k), -1)]);
        b.row(x(k), x(1), &[(x(k), -1)]);
        b.row(y(k), x(1), &[(y(k), -(ki - 1))]);
    }
    for k in 2..=n {
        for l in 2..=n {
            if k + l - 1 <= n {
                b.row(y(k), x(l), &[(y(k + l - 1), -1)]);
            }
        }
    }
}

/// `X_k` of F1 / F2 for 3 ≤ k ≤ n: first-column entry, optional second
/// column entry, then the subdiagonal band from column 3.
fn filiform_xk(n: usize, k: usize, with_col2: bool) -> Vec<(Part, usize, usize, i64)> {
    let mut u = vec![(P_D, k, 1, 1)];
    if with_col2 && k < n {
        u.push((P_D, k, 2, 1));
    }
    u.extend((3..=n).filter(|j| j + k - 2 <= n).map(|j| (P_D, j + k - 2, j, 1)));
    u
}

fn f1_basis(b: &mut BasisBuilder, n: usize) {
    let mut x1 = vec![(P_D, 1, 1, 1), (P_D, 2, 2, 1)];
    x1.extend((3..=n).map(|i| (P_D, i, i, i as i64 - 1)));
    x1.push((P_A, 1, 1, 1));
    b.element(x(1), &x1);
    let mut x2 = vec![(P_D, 2, 1, 1)];
    x2.extend((2..=n).map(|i| (P_D, i, i, 1)));
    b.element(x(2), &x2);
    for k in 3..=n {
        b.element(x(k), &filiform_xk(n, k, true));
    }
    b.element(x(n + 1), &[(P_D, n, 2, 1)]);
    for k in 2..=n {
        b.element(y(k), &[(P_A, k, 1, 1)]);
    }
    b.element(y(n + 1), &[(P_A, n, 2, 1)]);

    let m = n as i64;
    b.row(x(1), x(2), &[(y(2), -1)]);
    b.row(x(n + 1), x(1), &[(x(n + 1), -(m - 2))]);
    b.row(x(1), x(n + 1), &[(x(n + 1), m - 2), (y(n + 1), -1)]);
    b.row(y(n + 1), x(1), &[(y(n + 1), -(m - 2))]);
    b.row(x(1), y(2), &[(y(2), -1)]);
    b.row(y(2), x(n + 1), &[(y(2), -1)]);
    for k in 2..=n + 1 {
        b.row(y(k), x(2), &[(y(k), -1)]);
    }
    for k in 2..=n {
        for l in 3..=n {
            if k + 2 <= n + l {
                b.row(y(k), x(l), &[(y(k + l - 2), -1)]);
            }
        }
    }
    for k in 3..=n {
        let ki = k as i64;
        b.row(y(k), x(1), &[(y(k), -(ki - 2))]);
        b.row(x(k), x(1), &[(x(k), -(ki - 2))]);
        b.row(x(1), y(k), &[(x(k), ki - 2), (y(k), -1)]);
    }
}

fn f2_basis(b: &mut BasisBuilder, n: usize) {
    let mut x1 = vec![(P_D, 1, 1, 1)];
    x1.extend((3..=n).map(|i| (P_D, i, i, i as i64 - 1)));
    x1.push((P_A, 1, 1, 1));
    b.element(x(1), &x1);
    b.element(x(2), &[(P_D, 2, 1, 1)]);
    for k in 3..=n {
        b.element(x(k), &filiform_xk(n, k, false));
    }
    b.element(x(n + 1), &[(P_D, 2, 2, 1)]);
    b.element(x(n + 2), &[(P_D, n, 2, 1)]);
    for k in 2..=n {
        b.element(y(k), &[(P_A, k, 1, 1)]);
    }
    b.element(y(n + 1), &[(P_A, 2, 2, 1)]);
    b.element(y(n + 2), &[(P_A, n, 2, 1)]);

    let m = n as i64;
    b.row(x(1), x(2), &[(y(2), -1)]);
    b.row(x(2), x(1), &[(x(2), 1)]);
    b.row(x(1), x(n), &[(x(n), m - 2), (y(n), -1)]);
    b.row(x(n), x(1), &[(x(n), 1)]);
    b.row(y(2), x(1), &[(y(2), 1)]);
    b.row(y(n + 1), x(2), &[(y(2), 1)]);
    b.row(x(1), x(n + 2), &[(x(n + 2), m - 1)]);
    b.row(x(n + 2), x(1), &[(x(n + 2), -(m - 2))]);
    b.row(y(n + 2), x(1), &[(y(n + 2), -(m - 1))]);
    b.row(y(n + 2), x(2), &[(y(n + 2), 1)]);
    b.row(y(n + 1), x(n + 2), &[(y(n + 2), 1)]);
    for k in 3..=n {
        b.row(y(k), x(1), &[(y(k), -(k as i64 - 2))]);
    }
    for k in 3..n {
        let ki = k as i64;
        b.row(x(1), x(k), &[(x(k), ki - 2), (y(k), -1)]);
        b.row(x(k), x(1), &[(x(k), -(ki - 2))]);
    }
    for k in 3..n {
        for l in 3..n {
            if k + 2 <= n + l {
                b.row(y(k), x(l), &[(y(k + l - 2), -1)]);
            }
        }
    }
}

fn rnf_basis(b: &mut BasisBuilder, n: usize) {
    let mut h = diag_units(P_D, (1..=n).map(|k| (k + 1, k as i64)));
    h.push((P_A, 2, 2, 1));
    b.element("H".into(), &h);
    let mut x1 = vec![(P_D, 2, 1, -1)];
    x1.extend((2..=n).map(|k| (P_D, k + 1, k, 1)));
    x1.extend([(P_A, 2, 1, -1), (P_A, 3, 2, -1)]);
    b.element(x(1), &x1);
    for i in 2..n {
        b.element(x(i), &[(P_A, i + 1, 1, i as i64), (P_A, i + 2, 2, 1)]);
    }
    if n >= 2 {
        b.element(x(n), &[(P_A, n + 1, 1, 1)]);
    }

    b.row("H".into(), x(1), &[(x(1), 1)]);
    for i in std::iter::once(1).chain(3..=n) {
        b.row(x(i), x(1), &[(x(i + 1), -1)]);
        b.row(x(i), "H".into(), &[(x(i), i as i64)]);
    }
}

fn rf1_basis(b: &mut BasisBuilder, n: usize) {
    b.element("H1".into(), &diag_units(P_D, (2..=n).map(|k| (k + 2, -1))));
    let mut h2 = vec![(P_D, 3, 3, 1)];
    h2.extend((2..=n).map(|k| (P_D, k + 2, k + 2, k as i64 - 1)));
    h2.push((P_A, 3, 3, 1));
    b.element("H2".into(), &h2);
    let mut x1 = vec![(P_D, 3, 2, 1)];
    x1.extend((2..n).map(|k| (P_D, k + 3, k + 2, -1)));
    x1.push((P_A, 3, 2, 1));
    b.element(x(1), &x1);
    for i in 2..n {
        b.element(
            x(i),
            &[
                (P_A, i + 2, 1, 1),
                (P_A, i + 2, 2, i as i64 - 1),
                (P_A, i + 3, 3, 1),
            ],
        );
    }
    b.element(x(n), &[(P_A, n + 2, 1, 1), (P_A, n + 2, 2, n as i64 - 1)]);

    b.row(x(1), "H2".into(), &[(x(1), 1)]);
    b.row("H2".into(), x(1), &[(x(1), -1)]);
    for i in 2..=n {
        b.row(x(i), "H1".into(), &[(x(i), 1)]);
        b.row(x(i), "H2".into(), &[(x(i), i as i64 - 1)]);
    }
    for i in 2..n {
        b.row(x(i), x(1), &[(x(i + 1), 1)]);
    }
}

fn l_basis(b: &mut BasisBuilder, n: usize, l1: bool) {
    if l1 {
        b.element("H1".into(), &[(P_D, 4, 4, 1), (P_A, 4, 4, 1)]);
    } else {
        b.element("H1".into(), &[(P_D, 4, 4, 1)]);
    }
    let mut h2 = vec![(P_D, 3, 3, 1)];
    h2.extend((3..=n).map(|k| (P_D, k + 2, k + 2, k as i64 - 1)));
    h2.push((P_A, 3, 3, 1));
    b.element("H2".into(), &h2);
    let mut x1 = vec![(P_D, 3, 2, -1), (P_D, 5, 3, 1)];
    x1.extend((3..n).map(|k| (P_D, k + 3, k + 2, 1)));
    x1.extend([(P_A, 3, 2, -1), (P_A, 5, 3, -1)]);
    b.element(x(1), &x1);
    if l1 {
        b.element(x(2), &[(P_D, 4, 1, -1), (P_A, 4, 1, -1)]);
    } else {
        b.element(x(2), &[(P_A, 4, 1, 1)]);
    }
    for i in 3..n {
        b.element(x(i), &[(P_A, i + 2, 2, i as i64 - 1), (P_A, i + 3, 3, 1)]);
    }
    b.element(x(n), &[(P_A, n + 2, 2, 1)]);

    b.row(x(1), x(1), &[(x(3), 1)]);
    b.row(x(1), x(4), &[(x(1), -1)]);
    b.row(x(4), x(1), &[(x(1), 1)]);
    b.row(x(2), "H1".into(), &[(x(2), -1)]);
    if l1 {
        b.row("H1".into(), x(2), &[(x(2), 1)]);
    }
    for i in 3..n {
        b.row(x(i), x(1), &[(x(i + 1), -1)]);
        b.row(x(i), "H2".into(), &[(x(i), -(i as i64 - 1))]);
    }
    b.row(x(n), "H2".into(), &[(x(n), -(n as i64 - 1))]);
}

/// Named Bider basis of a family with its expected table.
pub fn paper_bider_basis(id: &FamilyId) -> Result<PaperBiderBasis> {
    let id = FamilyId::new(id.family, id.n)?;
    let n = id.n;
    let mut b = BasisBuilder::new(id);
    match id.family {
        Family::Nf => nf_basis(&mut b, n),
        Family::F1 => f1_basis(&mut b, n),
        Family::F2 => f2_basis(&mut b, n),
        Family::RNf => rnf_basis(&mut b, n),
        Family::RF1 => rf1_basis(&mut b, n),
        Family::L1 => l_basis(&mut b, n, true),
        Family::L2 => l_basis(&mut b, n, false),
    }
    Ok(b.finish(id.family == Family::Nf))
}

/// Number of nonzero entries of a basis element; handy for reports.
pub fn support_size(b: &Bider) -> usize {
    b.flatten().iter().filter(|v| !v.is_zero()).count()
}

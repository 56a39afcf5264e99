use leibniz_core::algebra::{SeriesReport, Violation};
use leibniz_core::catalog::FamilyId;
use leibniz_core::maps::{LinMap, MapElement, MapSpace};
use leibniz_core::{Algebra, Rat};
use serde_json::{json, Map, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn vector(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn map_entries(part: &str, m: &LinMap, out: &mut Vec<Value>) {
    let n = m.n();
    let zero = leibniz_core::linalg::rat(0);
    for r in 0..n {
        for c in 0..n {
            let v = m.entry(r, c);
            if *v != zero {
                out.push(json!({ "part": part, "row": r + 1, "col": c + 1, "value": rat(v) }));
            }
        }
    }
}

/// Nonzero matrix entries with 1-based positions.
pub fn element(e: &MapElement) -> Value {
    let mut out = Vec::new();
    match e {
        MapElement::Map(m) => map_entries("map", m, &mut out),
        MapElement::Bider(b) => {
            map_entries("d", &b.derivation, &mut out);
            map_entries("D", &b.anti, &mut out);
        }
    }
    Value::Array(out)
}

pub fn space(s: &MapSpace) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(s.kind().name()));
    m.insert("n".into(), json!(s.n()));
    m.insert("dim".into(), json!(s.dim()));
    m.insert("non_leibniz".into(), json!(s.non_leibniz()));
    if let Some(st) = s.system() {
        m.insert("system".into(), serde_json::to_value(st).expect("stats"));
    }
    m.insert(
        "basis".into(),
        Value::Array(s.elements().iter().map(element).collect()),
    );
    Value::Object(m)
}

pub fn series(s: &SeriesReport) -> Value {
    json!({ "dims": s.dims, "index": s.index })
}

pub fn violation(v: &Violation) -> Value {
    json!({ "i": v.i + 1, "j": v.j + 1, "k": v.k + 1, "residual": vector(&v.residual) })
}

pub fn family(id: &FamilyId) -> Value {
    json!({ "family": id.family.tag(), "n": id.n })
}

pub fn brackets(a: &Algebra) -> Value {
    Value::Array(
        a.entries()
            .map(|(i, j, k, c)| json!({ "i": i + 1, "j": j + 1, "k": k + 1, "c": rat(c) }))
            .collect(),
    )
}

/// Matrix with columns labelled by the basis vectors they are images of.
pub fn pretty_matrix(m: &LinMap, labels: &[String]) -> String {
    let n = m.n();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|r| (0..n).map(|c| m.entry(r, c).to_string()).collect())
        .collect();
    let lw = labels.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain([labels[c].len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = format!("{:lw$} ", "");
    for c in 0..n {
        out.push_str(&format!(" {:>w$}", labels[c], w = widths[c]));
    }
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        out.push_str(&format!("{:>lw$} ", labels[r]));
        for (c, cell) in row.iter().enumerate() {
            out.push_str(&format!(" {:>w$}", cell, w = widths[c]));
        }
        out.push('\n');
    }
    out
}

pub fn pretty_element(e: &MapElement, labels: &[String]) -> String {
    match e {
        MapElement::Map(m) => pretty_matrix(m, labels),
        MapElement::Bider(b) => format!(
            "d:\n{}D:\n{}",
            pretty_matrix(&b.derivation, labels),
            pretty_matrix(&b.anti, labels)
        ),
    }
}

pub fn labels(a: &Algebra) -> Vec<String> {
    (0..a.dim()).map(|i| a.label(i)).collect()
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::bider::{bider_algebra, innerness};
use leibniz_core::catalog::{expected_dim, make_algebra, Family, FamilyId};
use leibniz_core::file::{emit_algebra, parse_algebra};
use leibniz_core::maps::{map_space, MapKind};
use leibniz_core::{Algebra, Convention};
use serde_json::{json, Map, Value};

use verify::Status;

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact computations on finite-dimensional Leibniz algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args, Clone)]
struct Source {
    /// Catalog family: NF, F1, F2, R_NF, R_F1, L1, L2.
    #[arg(long, requires = "n", conflicts_with = "file")]
    family: Option<String>,
    /// Nilradical dimension for --family.
    #[arg(long, requires = "family")]
    n: Option<usize>,
    /// Algebra file in JSON.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity.
    Check {
        #[command(flatten)]
        source: Source,
        /// Decide the exit status by the left identity.
        #[arg(long)]
        left: bool,
    },
    /// Derivations.
    Der {
        #[command(flatten)]
        source: Source,
    },
    /// Anti-derivations.
    Antider {
        #[command(flatten)]
        source: Source,
    },
    /// Biderivations.
    Bider {
        #[command(flatten)]
        source: Source,
    },
    /// Structure of the algebra of biderivations.
    BiderAlgebra {
        #[command(flatten)]
        source: Source,
        /// Write the induced algebra as an algebra file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Lower central and derived series.
    Series {
        #[command(flatten)]
        source: Source,
    },
    /// Compare published claims for catalog families with computation.
    VerifyPaper {
        #[arg(long, requires = "n", conflicts_with = "all")]
        family: Option<String>,
        #[arg(long, requires = "family")]
        n: Option<usize>,
        /// Sweep every family.
        #[arg(long, requires = "n_max")]
        all: bool,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Output {
    command: Value,
    result: Value,
    warnings: Vec<String>,
    pretty: String,
    ok: bool,
}

struct Loaded {
    algebra: Algebra,
    family: Option<FamilyId>,
    echo: Value,
}

fn load(src: &Source) -> Result<Loaded, InputError> {
    match (&src.family, src.n, &src.file) {
        (Some(f), Some(n), None) => {
            let id = FamilyId::new(f.parse::<Family>()?, n)?;
            Ok(Loaded {
                algebra: make_algebra(&id)?,
                family: Some(id),
                echo: report::family(&id),
            })
        }
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let algebra =
                parse_algebra(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(Loaded {
                algebra,
                family: None,
                echo: json!({ "file": path.display().to_string() }),
            })
        }
        _ => Err(InputError("give either --file or --family with --n".into())),
    }
}

fn echo(name: &str, source: Value) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(name));
    if let Value::Object(s) = source {
        m.extend(s);
    }
    Value::Object(m)
}

fn cmd_check(src: &Source, left: bool) -> Result<Output, InputError> {
    let l = load(src)?;
    let a = &l.algebra;
    let right = a.check_leibniz(Convention::Right);
    let leftv = a.check_leibniz(Convention::Left);
    let decisive = if left { &leftv } else { &right };
    let mut pretty = String::new();
    for (name, vs) in [("right", &right), ("left", &leftv)] {
        match vs.first() {
            None => pretty.push_str(&format!("{name} Leibniz: OK\n")),
            Some(v) => pretty.push_str(&format!(
                "{name} Leibniz: FAIL ({} violations), first at (i, j, k) = ({}, {}, {})\n",
                vs.len(),
                v.i + 1,
                v.j + 1,
                v.k + 1
            )),
        }
    }
    let side = |vs: &Vec<leibniz_core::Violation>| {
        json!({
            "ok": vs.is_empty(),
            "count": vs.len(),
            "violations": vs.iter().map(report::violation).collect::<Vec<_>>(),
        })
    };
    Ok(Output {
        command: echo("check", {
            let mut e = l.echo;
            e["left"] = json!(left);
            e
        }),
        result: json!({ "dim": a.dim(), "right": side(&right), "left": side(&leftv) }),
        warnings: Vec::new(),
        pretty,
        ok: decisive.is_empty(),
    })
}

fn non_leibniz_warning(a: &Algebra) -> Option<String> {
    (!a.is_right_leibniz()).then(|| "input is not right Leibniz".to_string())
}

fn cmd_space(src: &Source, kind: MapKind) -> Result<Output, InputError> {
    let l = load(src)?;
    let a = &l.algebra;
    let space = map_space(a, kind);
    let mut warnings: Vec<String> = non_leibniz_warning(a).into_iter().collect();
    if let Some(id) = &l.family {
        let exp = expected_dim(id, kind)?;
        if let Some(s) = exp.stated {
            if s != space.dim() {
                warnings.push(format!(
                    "stated dimension {s} differs from computed {}",
                    space.dim()
                ));
            }
        }
    }
    let labels = report::labels(a);
    let mut pretty = format!("{} dimension: {}\n", kind.name(), space.dim());
    for (idx, e) in space.elements().iter().enumerate() {
        pretty.push_str(&format!("\nbasis element {}\n", idx + 1));
        pretty.push_str(&report::pretty_element(e, &labels));
    }
    Ok(Output {
        command: echo(kind.name(), l.echo),
        result: report::space(&space),
        warnings,
        pretty,
        ok: true,
    })
}

fn cmd_bider_algebra(src: &Source, emit: Option<&PathBuf>) -> Result<Output, InputError> {
    let l = load(src)?;
    let a = &l.algebra;
    let warnings: Vec<String> = non_leibniz_warning(a).into_iter().collect();
    let ind = bider_algebra(a)?;
    if let Some(path) = emit {
        std::fs::write(path, emit_algebra(&ind.algebra))
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    let b = &ind.algebra;
    let inner = innerness(a);
    let lcs = b.lower_central_series();
    let ds = b.derived_series();
    let pretty = format!(
        "dimension: {}\nclosed under bracket: {}\nright Leibniz: {}\nsolvable: {}\nnilpotent: {}\n\
         derived series dims: {:?}\nlower central series dims: {:?}\ninner biderivations: {} of {}\n",
        b.dim(),
        ind.closure_ok,
        b.is_right_leibniz(),
        b.is_solvable(),
        b.is_nilpotent(),
        ds.dims,
        lcs.dims,
        inner.dim_inner,
        inner.dim_bider
    );
    let mut cmd = l.echo;
    if let Some(p) = emit {
        cmd["emit"] = json!(p.display().to_string());
    }
    Ok(Output {
        command: echo("bider-algebra", cmd),
        result: json!({
            "dim": b.dim(),
            "closure_ok": ind.closure_ok,
            "closure_failure": ind.closure_failure.as_ref().map(|(i, j)| json!([i + 1, j + 1])),
            "right_leibniz": b.is_right_leibniz(),
            "brackets": report::brackets(b),
            "basis": ind.basis.elements().iter().map(report::element).collect::<Vec<_>>(),
            "lower_central": report::series(&lcs),
            "derived": report::series(&ds),
            "solvable": b.is_solvable(),
            "nilpotent": b.is_nilpotent(),
            "innerness": {
                "dim_inner": inner.dim_inner,
                "dim_bider": inner.dim_bider,
                "inner_equals_all": inner.inner_equals_all,
            },
        }),
        warnings,
        pretty,
        ok: ind.closure_ok,
    })
}

fn cmd_series(src: &Source) -> Result<Output, InputError> {
    let l = load(src)?;
    let a = &l.algebra;
    let lcs = a.lower_central_series();
    let ds = a.derived_series();
    let pretty = format!(
        "lower central series dims: {:?}\nderived series dims: {:?}\nnilpotent: {}\nsolvable: {}\nfiliform: {}\n",
        lcs.dims,
        ds.dims,
        a.is_nilpotent(),
        a.is_solvable(),
        a.is_filiform()
    );
    Ok(Output {
        command: echo("series", l.echo),
        result: json!({
            "dim": a.dim(),
            "lower_central": report::series(&lcs),
            "derived": report::series(&ds),
            "nilpotent": a.is_nilpotent(),
            "solvable": a.is_solvable(),
            "filiform": a.is_filiform(),
        }),
        warnings: non_leibniz_warning(a).into_iter().collect(),
        pretty,
        ok: true,
    })
}

fn cmd_verify(
    family: Option<&String>,
    n: Option<usize>,
    all: bool,
    n_max: Option<usize>,
) -> Result<Output, InputError> {
    let (ids, cmd) = match (family, n, all, n_max) {
        (Some(f), Some(n), false, _) => {
            let id = FamilyId::new(f.parse::<Family>()?, n)?;
            (vec![id], report::family(&id))
        }
        (None, None, true, Some(k)) => (verify::sweep(k), json!({ "all": true, "n_max": k })),
        _ => return Err(InputError("give --family with --n, or --all with --n-max".into())),
    };
    let mut claims = Vec::new();
    for id in ids {
        claims.extend(verify::verify_family(id)?);
    }
    let count = |s: Status| claims.iter().filter(|c| c.status == s).count();
    let (pass, fail, delta) = (count(Status::Pass), count(Status::Fail), count(Status::Delta));
    let mut pretty = String::new();
    for c in &claims {
        pretty.push_str(&format!(
            "{:<5} {:<5} n={:<2} {}",
            c.status,
            c.id.family.tag(),
            c.id.n,
            c.name
        ));
        if !c.detail.is_empty() {
            pretty.push_str(&format!(": {}", c.detail));
        }
        pretty.push('\n');
    }
    pretty.push_str(&format!("\n{pass} PASS, {fail} FAIL, {delta} DELTA\n"));
    let warnings = claims
        .iter()
        .filter(|c| c.status == Status::Delta && c.name.starts_with("dim "))
        .map(|c| format!("{} n={} {}: {}", c.id.family.tag(), c.id.n, c.name, c.detail))
        .collect();
    Ok(Output {
        command: echo("verify-paper", cmd),
        result: json!({
            "claims": claims.iter().map(verify::Claim::to_json).collect::<Vec<_>>(),
            "summary": { "pass": pass, "fail": fail, "delta": delta },
        }),
        warnings,
        pretty,
        ok: fail == 0,
    })
}

fn run(cli: &Cli) -> Result<Output, InputError> {
    match &cli.command {
        Command::Check { source, left } => cmd_check(source, *left),
        Command::Der { source } => cmd_space(source, MapKind::Der),
        Command::Antider { source } => cmd_space(source, MapKind::AntiDer),
        Command::Bider { source } => cmd_space(source, MapKind::Bider),
        Command::BiderAlgebra { source, emit } => cmd_bider_algebra(source, emit.as_ref()),
        Command::Series { source } => cmd_series(source),
        Command::VerifyPaper {
            family,
            n,
            all,
            n_max,
        } => cmd_verify(family.as_ref(), *n, *all, *n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => print!(
                    "{}",
                    report::to_text(&json!({
                        "command": out.command,
                        "result": out.result,
                        "warnings": out.warnings,
                    }))
                ),
                Format::Pretty => {
                    for w in &out.warnings {
                        println!("warning: {w}");
                    }
                    print!("{}", out.pretty);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

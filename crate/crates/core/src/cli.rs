//! Command-line front end. [`run`] is pure apart from reading input files, so it is
//! exercised directly by the tests.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::HomologySummary;
use crate::complex::{is_shifted, ShiftedVerdict, SimplicialComplex};
use crate::error::{Error, Result};
use crate::format::{load_complex, parse_pair_spec};
use crate::pair::{pair_disk_sphere, PairModel};
use crate::polyprod::{
    broadcast_pairs, poincare_polynomial, porter_decomposition, Context, Decomposition, DEFAULT_BUDGET,
};
use crate::series::{Poly, RationalSeries, DEFAULT_TRUNCATION};
use crate::sr::{dj_additive_check, sr_hilbert_series, sr_presentation};
use crate::toric::{toric_report, CharacteristicMatrix};

pub const SCHEMA: &str = "polyprod/1";

/// Exit status for a failed identity check.
pub const EXIT_MISMATCH: i32 = 2;
/// Exit status for unusable input.
pub const EXIT_INPUT: i32 = 1;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "polyprod",
    version,
    about = "Homology and graded invariants of polyhedral products"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Emit tab-separated tables.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Treat complex diagnostics (such as unused vertices) as errors.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for subset enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest number of tensor cells in a chain model.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ComplexArg {
    /// Complex file (text or JSON), or a catalog name such as `@square`.
    pub complex: String,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Pair model, once per vertex or once for all vertices.
    #[arg(long = "pair", required = true)]
    pub pairs: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check a complex and print its face data.
    Validate(ComplexArg),
    /// Homology of the polyhedral product chain model.
    Homology {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        pairs: PairArgs,
        /// Use the smash polyhedral product (reduced homology).
        #[arg(long)]
        smash: bool,
        /// Reduced homology of the polyhedral product.
        #[arg(long)]
        reduced: bool,
    },
    /// Compare the homology with the sum over full subcomplexes of the smash products.
    Split {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        pairs: PairArgs,
    },
    /// Homology of Z(K;(D^(n+1),S^n)) from full subcomplexes.
    Hochster {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Also build the chain model and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Join decomposition of the smash product over faces.
    WedgeLemma {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        pairs: PairArgs,
    },
    /// Sphere decomposition over the q-skeleton of the (m-1)-simplex.
    Porter {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
        /// Sphere dimensions, comma separated (one, or one per vertex; default 1).
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Compare with the chain model on disk/sphere pairs.
        #[arg(long)]
        verify: bool,
    },
    /// Reduced Poincaré series of Z(K;(X,*)) from the f-vector.
    Poincare {
        #[command(flatten)]
        complex: ComplexArg,
        /// Coefficients of the reduced Poincaré polynomial of X, lowest degree first.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        px: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
    },
    /// Stanley–Reisner presentation and Hilbert series.
    Sr {
        #[command(flatten)]
        complex: ComplexArg,
        /// Generator degree.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
    },
    /// Compare the Hilbert series with the wedge of smash powers of BS^1.
    DjCheck {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
    },
    /// Quasi-toric invariants from a characteristic matrix.
    Toric {
        #[command(flatten)]
        complex: ComplexArg,
        /// Matrix file: JSON {"n", "rows"} or whitespace rows.
        #[arg(long)]
        lambda: String,
    },
    /// Shiftedness and the sphere wedge decomposition.
    Shifted {
        #[command(flatten)]
        complex: ComplexArg,
        /// Labeling: new label of each vertex, comma separated.
        #[arg(long, value_delimiter = ',')]
        labeling: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

/// Exit status and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Tsv,
}

/// Rendered result of one command.
struct Report {
    status: i32,
    json: Value,
    text: String,
    tsv: String,
}

impl Report {
    fn new(command: &str, status: i32, body: Value, text: String, tsv: String) -> Self {
        let mut json = json!({ "schema": SCHEMA, "command": command });
        if let (Value::Object(target), Value::Object(extra)) = (&mut json, body) {
            target.extend(extra);
        }
        Report {
            status,
            json,
            text,
            tsv,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        EXIT_MISMATCH
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "VERIFIED"
    } else {
        "MISMATCH"
    }
}

/// Parses arguments (first item is the program name) and runs them.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Invocation::try_parse_from(args) {
        Ok(inv) => run(&inv),
        Err(e) => {
            let rendered = e.render().to_string();
            let status = if e.use_stderr() { EXIT_INPUT } else { 0 };
            if e.use_stderr() {
                RunOutput {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                RunOutput {
                    status,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(inv: &Invocation) -> RunOutput {
    let format = if inv.json {
        Format::Json
    } else if inv.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    let ctx = Context::new(inv.budget);
    let result = match inv.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(inv, &ctx)),
            Err(e) => Err(Error::InvalidPair(format!("cannot start worker pool: {e}"))),
        },
        None => dispatch(inv, &ctx),
    };
    match result {
        Ok(report) => {
            let mut stdout = match format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json value"),
                Format::Tsv => report.tsv,
                Format::Text => report.text,
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            RunOutput {
                status: report.status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => RunOutput {
            status: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(arg: &ComplexArg, strict: bool) -> Result<SimplicialComplex> {
    let k = load_complex(&arg.complex)?;
    if strict {
        if let Some(d) = k.validate(true).first() {
            return Err(Error::Parse {
                location: Some(arg.complex.clone()),
                message: d.to_string(),
            });
        }
    }
    Ok(k)
}

fn load_pairs(args: &PairArgs, m: usize) -> Result<Vec<PairModel>> {
    let pairs = args
        .pairs
        .iter()
        .map(|s| parse_pair_spec(s))
        .collect::<Result<Vec<_>>>()?;
    broadcast_pairs(&pairs, m)
}

fn homology_tsv(h: &HomologySummary) -> String {
    let mut out = String::from("degree\tbetti\ttorsion\n");
    for (d, g) in h.iter() {
        let t: Vec<String> = g.torsion.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{d}\t{}\t{}", g.betti, t.join(","));
    }
    out
}

fn decomposition_report(command: &str, d: &Decomposition, extra: Value) -> Report {
    let mut text = String::new();
    let mut tsv = String::from("I\tdescription\thomology\n");
    for s in &d.summands {
        let _ = writeln!(tsv, "{}\t{}\t{}", s.subset, s.description, s.homology);
        if !s.homology.is_zero() {
            let _ = writeln!(
                text,
                "{:<14} {:<28} {}",
                s.subset.to_string(),
                s.description,
                s.homology
            );
        }
    }
    let _ = writeln!(text, "sum of summands: {}", d.total);
    let _ = writeln!(text, "chain model:     {}", d.oracle);
    let _ = writeln!(text, "{}", verdict_word(d.verified));
    let _ = writeln!(tsv, "total\t\t{}", d.total);
    let _ = writeln!(tsv, "oracle\t\t{}", d.oracle);
    let _ = writeln!(tsv, "verdict\t\t{}", verdict_word(d.verified));
    let mut body = to_value(d);
    if let (Value::Object(target), Value::Object(more)) = (&mut body, extra) {
        target.extend(more);
    }
    Report::new(command, verdict(d.verified), body, text, tsv)
}

fn series_table(coeffs: &[num_bigint::BigInt]) -> String {
    let mut out = String::from("degree\tcoefficient\n");
    for (d, c) in coeffs.iter().enumerate() {
        let _ = writeln!(out, "{d}\t{c}");
    }
    out
}

fn dispatch(inv: &Invocation, ctx: &Context) -> Result<Report> {
    match &inv.command {
        Command::Validate(arg) => {
            let k = load_complex(&arg.complex)?;
            let diags = k.validate(inv.strict);
            let ok = diags.is_empty();
            let mnf: Vec<String> = k.minimal_non_faces().iter().map(|s| s.to_string()).collect();
            let mut text = String::new();
            let _ = writeln!(text, "m = {}, dim = {}", k.m(), k.dim());
            let _ = writeln!(text, "f-vector: {:?}", k.f_vector());
            let _ = writeln!(text, "h-vector: {:?}", k.h_vector());
            let _ = writeln!(text, "minimal non-faces: {}", mnf.join(" "));
            for d in &diags {
                let _ = writeln!(text, "{d}");
            }
            let _ = writeln!(text, "{}", if ok { "OK" } else { "INVALID" });
            let mut tsv = String::from("field\tvalue\n");
            let _ = writeln!(tsv, "m\t{}\ndim\t{}", k.m(), k.dim());
            let _ = writeln!(tsv, "f_vector\t{:?}\nh_vector\t{:?}", k.f_vector(), k.h_vector());
            for d in &diags {
                let _ = writeln!(tsv, "diagnostic\t{d}");
            }
            let body = json!({
                "m": k.m(),
                "dim": k.dim(),
                "f_vector": k.f_vector(),
                "h_vector": k.h_vector(),
                "maximal_faces": k.maximal_faces(),
                "minimal_non_faces": k.minimal_non_faces(),
                "diagnostics": diags,
                "valid": ok,
            });
            Ok(Report::new(
                "validate",
                if ok { 0 } else { EXIT_INPUT },
                body,
                text,
                tsv,
            ))
        }
        Command::Homology {
            complex,
            pairs,
            smash,
            reduced,
        } => {
            let k = load(complex, inv.strict)?;
            let pairs = load_pairs(pairs, k.m())?;
            let (h, reduced) = if *smash {
                (ctx.smash_homology(&k, &pairs)?, true)
            } else {
                let c = ctx.moment_angle_chain(&k, &pairs)?;
                (crate::chain::homology(&c, *reduced)?, *reduced)
            };
            let names: Vec<&str> = pairs.iter().map(PairModel::name).collect();
            let betti = h.betti_vector();
            let text = format!(
                "{h}\nbetti: {}\n",
                betti.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            );
            let body = json!({
                "pairs": names,
                "space": if *smash { "smash" } else { "polyhedral" },
                "reduced": reduced,
                "betti": betti,
                "homology": h,
            });
            Ok(Report::new("homology", 0, body, text, homology_tsv(&h)))
        }
        Command::Split { complex, pairs } => {
            let k = load(complex, inv.strict)?;
            let pairs = load_pairs(pairs, k.m())?;
            let d = ctx.stable_splitting(&k, &pairs)?;
            Ok(decomposition_report("split", &d, json!({})))
        }
        Command::Hochster { complex, n, verify } => {
            let k = load(complex, inv.strict)?;
            let (total, summands) = ctx.hochster_homology(&k, *n)?;
            let oracle = if *verify {
                Some(ctx.moment_angle_homology(&k, &vec![pair_disk_sphere(*n); k.m()])?)
            } else {
                None
            };
            let d = Decomposition {
                verified: oracle.as_ref().is_none_or(|o| *o == total),
                oracle: oracle.clone().unwrap_or_else(|| total.clone()),
                total,
                summands,
            };
            let mut report = decomposition_report("hochster", &d, json!({ "n": n, "checked": verify }));
            if oracle.is_none() {
                let mut text = String::new();
                for s in d.summands.iter().filter(|s| !s.homology.is_zero()) {
                    let _ = writeln!(
                        text,
                        "{:<14} {:<28} {}",
                        s.subset.to_string(),
                        s.description,
                        s.homology
                    );
                }
                let _ = writeln!(text, "total: {}", d.total);
                report.text = text;
                if let Value::Object(obj) = &mut report.json {
                    obj.remove("oracle");
                    obj.remove("verified");
                }
            }
            Ok(report)
        }
        Command::WedgeLemma { complex, pairs } => {
            let k = load(complex, inv.strict)?;
            let pairs = load_pairs(pairs, k.m())?;
            let d = ctx.wedge_lemma_decomposition(&k, &pairs)?;
            Ok(decomposition_report("wedge-lemma", &d, json!({})))
        }
        Command::Porter { m, q, dims, verify } => {
            let dims = match dims.len() {
                0 => vec![1; *m],
                1 => vec![dims[0]; *m],
                _ => dims.clone(),
            };
            let spheres = porter_decomposition(*m, *q, &dims)?;
            let predicted = spheres.homology();
            const RULE: &str =
                "each I with |I| > q+1 gives C(|I|-1, q+1) copies of Σ^(q+1) of the smash of its spheres";
            let mut text = format!("{spheres}\nnote: {RULE}\n");
            let mut tsv = String::from("dimension\tmultiplicity\n");
            for (d, k) in spheres.entries() {
                let _ = writeln!(tsv, "{d}\t{k}");
            }
            let mut body =
                json!({ "m": m, "q": q, "dims": dims, "spheres": spheres, "homology": predicted, "note": RULE });
            let mut status = 0;
            if *verify {
                let k = SimplicialComplex::skeleton(*m, *q as isize)?;
                let pairs: Vec<PairModel> = dims.iter().map(|&d| pair_disk_sphere(d)).collect();
                let oracle = ctx.moment_angle_homology(&k, &pairs)?;
                let ok = oracle == predicted;
                status = verdict(ok);
                let _ = writeln!(text, "chain model: {oracle}\n{}", verdict_word(ok));
                let _ = writeln!(tsv, "verdict\t{}", verdict_word(ok));
                body["oracle"] = to_value(&oracle);
                body["verified"] = json!(ok);
            }
            Ok(Report::new("porter", status, body, text, tsv))
        }
        Command::Poincare { complex, px, trunc } => {
            let k = load(complex, inv.strict)?;
            let series = poincare_polynomial(&k, &RationalSeries::polynomial(Poly::new(px.clone())))?;
            let view = series.view(*trunc)?;
            let text = format!("{series}\n");
            let tsv = series_table(&view.expansion);
            let body = json!({ "f_vector": k.f_vector(), "series": to_value(&view) });
            Ok(Report::new("poincare", 0, body, text, tsv))
        }
        Command::Sr { complex, degree, trunc } => {
            let k = load(complex, inv.strict)?;
            let p = sr_presentation(&k, *degree)?;
            let series = sr_hilbert_series(&k, *degree)?;
            let view = series.view(*trunc)?;
            let text = format!("{p}\nHilbert series: {series}\n");
            let tsv = series_table(&view.expansion);
            let body = json!({
                "presentation": p,
                "relations": p.relation_strings(),
                "hilbert_series": to_value(&view),
            });
            Ok(Report::new("sr", 0, body, text, tsv))
        }
        Command::DjCheck { complex, trunc } => {
            let k = load(complex, inv.strict)?;
            let check = dj_additive_check(&k, *trunc)?;
            let mut tsv = String::from("degree\tsr\twedge\n");
            for row in &check.table {
                let _ = writeln!(tsv, "{}\t{}\t{}", row.degree, row.sr, row.wedge);
            }
            let mut text = String::new();
            if !check.mismatches.is_empty() {
                let _ = writeln!(text, "mismatched degrees: {:?}", check.mismatches);
            }
            let _ = writeln!(text, "degrees 0..{}: {}", trunc, verdict_word(check.verified));
            Ok(Report::new(
                "dj-check",
                verdict(check.verified),
                to_value(&check),
                text,
                tsv,
            ))
        }
        Command::Toric { complex, lambda } => {
            let k = load(complex, inv.strict)?;
            let text_in = std::fs::read_to_string(lambda).map_err(|e| Error::Parse {
                location: Some(lambda.clone()),
                message: e.to_string(),
            })?;
            let lam = CharacteristicMatrix::parse(&text_in).map_err(|e| e.in_file(lambda))?;
            let report = toric_report(&k, &lam)?;
            let mut text = String::new();
            let _ = writeln!(text, "betti: {:?}", report.betti.betti);
            let _ = writeln!(text, "euler characteristic: {}", report.betti.euler);
            let _ = writeln!(text, "relations: {}", report.relations.join(", "));
            let _ = writeln!(
                text,
                "linear relations (normalized): {}",
                report.normalized_linear.join(", ")
            );
            let _ = writeln!(text, "kernel rank: {}", report.kernel.rank);
            for note in &report.validity.notes {
                let _ = writeln!(text, "note: {note}");
            }
            let mut tsv = String::from("degree\tbetti\n");
            for (d, b) in report.betti.betti.iter().enumerate() {
                let _ = writeln!(tsv, "{d}\t{b}");
            }
            Ok(Report::new("toric", 0, to_value(&report), text, tsv))
        }
        Command::Shifted { complex, labeling, n } => {
            let k = load(complex, inv.strict)?;
            let v = is_shifted(&k, labeling.as_deref())?;
            let mut body = json!({ "shifted": to_value(&v) });
            let mut text = String::new();
            let mut tsv = String::from("dimension\tmultiplicity\n");
            match &v {
                ShiftedVerdict::Shifted { labeling } => {
                    let spheres = ctx.sphere_wedge_report(&k, *n, Some(labeling))?;
                    let _ = writeln!(text, "shifted under labeling {labeling:?}");
                    let _ = writeln!(text, "suspension of Z(K;(D^{},S^{n})) ≃ {spheres}", n + 1);
                    for (d, m) in spheres.entries() {
                        let _ = writeln!(tsv, "{d}\t{m}");
                    }
                    body["n"] = json!(n);
                    body["suspension_spheres"] = to_value(&spheres);
                }
                ShiftedVerdict::NotShifted { face, removed, added } => {
                    let _ = writeln!(
                        text,
                        "not shifted: in face {face}, {removed} cannot be replaced by {added}"
                    );
                }
            }
            Ok(Report::new("shifted", 0, body, text, tsv))
        }
    }
}

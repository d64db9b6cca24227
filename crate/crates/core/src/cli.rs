//! Command line front end: `run` parses arguments, runs the checkers and
//! returns the exit code with the rendered output.
//!
//! Exit codes: 0 success, 1 invalid model or failed precondition, 2 a
//! required cross-check failed, 64 usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cohomology::Analysis;
use crate::contact;
use crate::error::{Error, Result};
use crate::hodge::random::DEFAULT_SEED;
use crate::model::{load_model, render_model, zoo, FoliatedModel};
use crate::report::SCHEMA_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Samples per degree for the seeded spot checks.
const SAMPLES: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "foliahodge",
    version,
    about = "Exact symplectic Hodge theory on invariant models of transversely symplectic foliations",
    after_help = "Models are files or builtin names written zoo:<name> (e.g. zoo:heisenberg3)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the JSON report instead of tables
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the random-form spot checks
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Only tabulate degrees up to K
    #[arg(long, global = true, value_name = "K")]
    max_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a model and report its structure
    Validate { model: String },
    /// Betti numbers of the basic, de Rham and δ complexes
    Cohomology {
        model: String,
        /// Basic complex only (combinable)
        #[arg(long)]
        basic: bool,
        /// Full de Rham complex only (combinable)
        #[arg(long)]
        derham: bool,
        /// δ-homology only (combinable)
        #[arg(long)]
        delta: bool,
    },
    /// Operator identities of the symplectic Hodge theory
    Hodge { model: String },
    /// Transverse Lefschetz maps, and the contact Lefschetz relation when eta is set
    Lefschetz { model: String },
    /// The dδ-lemma and its equivalence with the Lefschetz property
    Ddlemma { model: String },
    /// Cup length and product bounds
    Cup { model: String },
    /// Write the Boothby–Wang extension of a symplectic model
    BoothbyWang {
        base: String,
        /// Where to write the extended model
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
        /// Name of the new generator
        #[arg(long, default_value = "eta")]
        generator: String,
    },
    /// Every check; exit 0 iff all required checks pass
    Suite { model: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::Hodge { .. } => "hodge",
            Command::Lefschetz { .. } => "lefschetz",
            Command::Ddlemma { .. } => "ddlemma",
            Command::Cup { .. } => "cup",
            Command::BoothbyWang { .. } => "boothby-wang",
            Command::Suite { .. } => "suite",
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Default)]
struct Report {
    sections: Map<String, Value>,
    checks: Vec<Check>,
}

impl Report {
    fn section(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("reports serialize");
        self.sections.insert(key.to_string(), v);
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            required: true,
            detail,
        });
    }

    fn note(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            required: false,
            detail,
        });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let checker = cli.command.name();
    match execute(&cli) {
        Ok((model, report)) => finish(&cli, checker, &model, report),
        Err(e) => {
            let code = match e {
                Error::Inconsistency(_) => EXIT_INCONSISTENT,
                _ => EXIT_INVALID,
            };
            let stdout = if cli.json {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "checker": checker,
                    "error": e.to_string(),
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                String::new()
            };
            Output {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn finish(cli: &Cli, checker: &str, model: &str, report: Report) -> Output {
    let passed = report.passed();
    let mut top = Map::new();
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    top.insert("model".into(), json!(model));
    top.insert("checker".into(), json!(checker));
    top.insert("seed".into(), json!(cli.seed));
    top.extend(report.sections);
    top.insert("checks".into(), serde_json::to_value(&report.checks).expect("json"));
    top.insert("passed".into(), json!(passed));
    let mut value = Value::Object(top);
    if let Some(k) = cli.max_degree {
        limit_degrees(&mut value, k);
    }
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
    } else {
        render_human(&value)
    };
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.required && !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    Output {
        code: if passed { EXIT_OK } else { EXIT_INCONSISTENT },
        stdout,
        stderr: if failed.is_empty() {
            String::new()
        } else {
            format!("error: failed checks: {}\n", failed.join("; "))
        },
    }
}

/// `zoo:<name>` or a model file path.
pub fn load_source(source: &str) -> Result<FoliatedModel> {
    if let Some(name) = source.strip_prefix("zoo:") {
        return zoo(name);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    let m = load_model(&text)?;
    if m.name() == "model" {
        if let Some(stem) = Path::new(source).file_stem() {
            return Ok(m.with_name(stem.to_string_lossy()));
        }
    }
    Ok(m)
}

fn execute(cli: &Cli) -> Result<(String, Report)> {
    let mut r = Report::default();
    let seed = cli.seed;
    let name = match &cli.command {
        Command::BoothbyWang {
            base,
            output,
            generator,
        } => {
            let m = load_source(base)?;
            let ext = m.boothby_wang_extend(generator)?;
            std::fs::write(output, render_model(&ext))
                .map_err(|e| Error::Io(format!("{}: {e}", output.display())))?;
            r.section("output", output.display().to_string());
            r.section("extension", structure(&ext));
            return Ok((m.name().to_string(), r));
        }
        Command::Validate { model }
        | Command::Cohomology { model, .. }
        | Command::Hodge { model }
        | Command::Lefschetz { model }
        | Command::Ddlemma { model }
        | Command::Cup { model }
        | Command::Suite { model } => model,
    };
    let m = load_source(name)?;
    if let Command::Validate { .. } = cli.command {
        r.section("structure", structure(&m));
        return Ok((m.name().to_string(), r));
    }
    let a = Analysis::new(&m)?;
    match &cli.command {
        Command::Cohomology {
            basic, derham, delta, ..
        } => {
            let all = !(*basic || *derham || *delta);
            cohomology(&mut r, &a, [all || *basic, all || *derham, all || *delta]);
        }
        Command::Hodge { .. } => hodge(&mut r, &a, seed)?,
        Command::Lefschetz { .. } => lefschetz(&mut r, &a)?,
        Command::Ddlemma { .. } => ddlemma(&mut r, &a, seed)?,
        Command::Cup { .. } => cup(&mut r, &a)?,
        Command::Suite { .. } => {
            r.section("structure", structure(&m));
            cohomology(&mut r, &a, [true; 3]);
            hodge(&mut r, &a, seed)?;
            lefschetz(&mut r, &a)?;
            ddlemma(&mut r, &a, seed)?;
            cup(&mut r, &a)?;
            if m.is_contact() {
                contact_extras(&mut r, &a)?;
            }
            if m.foliation().is_empty() {
                gysin(&mut r, &a)?;
            }
        }
        Command::Validate { .. } | Command::BoothbyWang { .. } => unreachable!("handled above"),
    }
    Ok((m.name().to_string(), r))
}

fn structure(m: &FoliatedModel) -> Value {
    let names = m.names();
    let pick = |idx: &[usize]| idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    let diffs: Vec<Value> = (0..m.num_generators())
        .map(|i| json!({"generator": names[i], "d": m.base().render(m.base().d_generator(i))}))
        .collect();
    let mut rules = vec!["d² = 0", "dω = 0", "ω transverse and invariant", "ω^n ≠ 0"];
    if m.is_contact() {
        rules.push("d(eta) = ω");
    }
    json!({
        "name": m.name(),
        "generators": names,
        "differentials": diffs,
        "foliation": pick(m.foliation()),
        "transverse": pick(m.transverse()),
        "eta": m.eta().map(|e| names[e].clone()),
        "omega": m.render(m.omega()),
        "half_dim": m.half_dim(),
        "contact": m.is_contact(),
        "full_dims": m.full_complex().dims(),
        "basic_dims": m.basic_complex().dims(),
        "rules": rules.iter().map(|r| json!({"rule": r, "holds": true})).collect::<Vec<_>>(),
    })
}

fn cohomology(r: &mut Report, a: &Analysis, which: [bool; 3]) {
    let m = a.model();
    let (basic, full, delta) = (a.basic_betti(), a.de_rham_betti(), a.delta_betti());
    let rows: Vec<Value> = (0..full.len())
        .map(|k| {
            let mut row = Map::new();
            row.insert("k".into(), json!(k));
            if which[0] {
                row.insert("basic".into(), json!(basic.get(k)));
            }
            if which[1] {
                row.insert("de_rham".into(), json!(full[k]));
            }
            if which[2] {
                row.insert("delta".into(), json!(delta.get(k)));
            }
            Value::Object(row)
        })
        .collect();
    let mut body = Map::new();
    body.insert("per_degree".into(), Value::Array(rows));
    for (on, key, b) in [(which[0], "basic_betti", &basic), (which[1], "de_rham_betti", &full), (which[2], "delta_betti", &delta)] {
        if on {
            body.insert(key.into(), json!(b));
        }
    }
    r.section("cohomology", Value::Object(body));
    r.check("d² = 0 on the basic complex", m.basic_complex().is_complex(), None);
    r.check("d² = 0 on the full complex", m.full_complex().is_complex(), None);
}

fn hodge(r: &mut Report, a: &Analysis, seed: u64) -> Result<()> {
    let h = a.hodge();
    let ids = h.identity_checks();
    r.section("identities", &ids);
    for c in &ids {
        let detail = (!c.holds()).then(|| format!("fails at degrees {:?}", c.failing_degrees));
        if c.required {
            r.check(&c.name, c.holds(), detail);
        } else {
            let detail = detail.map(|d| format!("{d}; the opposite sign holds"));
            r.note(&c.name, c.holds(), detail);
        }
    }
    let weil = h.weil_check(SAMPLES, seed)?;
    let dec = h.decomposition_check(SAMPLES, seed)?;
    r.section("weil_identity", &weil);
    r.section("lefschetz_decomposition", &dec);
    r.check(
        "⋆L^r α = (−1)^(k(k−1)/2) r!/(n−k−r)! L^(n−k−r) α on random primitive α",
        weil.holds(),
        (!weil.holds()).then(|| format!("failing (k, r): {:?}", weil.failing)),
    );
    r.check(
        "Lefschetz decomposition of random forms",
        dec.holds(),
        (!dec.holds()).then(|| format!("failing degrees: {:?}", dec.failing)),
    );
    Ok(())
}

fn lefschetz(r: &mut Report, a: &Analysis) -> Result<()> {
    let t = a.transverse_lefschetz()?;
    r.section("transverse_lefschetz", &t);
    if a.model().is_contact() {
        let c = contact::contact_lefschetz(a)?;
        let eq = contact::contact_transverse_equivalence(a)?;
        r.check("contact Lefschetz holds at k = 0", c.per_degree[0].iso, c.per_degree[0].witness.clone());
        r.check(
            "contact and transverse Lefschetz levels agree",
            eq.consistent,
            Some(format!("max_s = {:?}", eq.max_s)),
        );
        r.section("contact_lefschetz", &c);
        r.section("contact_transverse_equivalence", &eq);
    }
    Ok(())
}

fn ddlemma(r: &mut Report, a: &Analysis, seed: u64) -> Result<()> {
    let dd = a.dd_lemma()?;
    let eq = a.lefschetz_dd_equivalence()?;
    let harm = a.harmonic_representatives_check()?;
    r.section("dd_lemma", &dd);
    r.section("lefschetz_dd_equivalence", &eq);
    r.section("harmonic_representatives", &harm);
    r.check(
        "Lefschetz, dδ-lemma and mirror levels agree",
        eq.consistent,
        Some(format!("max_s = {:?}", eq.max_s)),
    );
    r.check(
        "surjectivity and harmonic representatives give the same levels",
        harm.consistent,
        Some(format!("max_s = {:?}", harm.max_s)),
    );
    let lef = a.transverse_lefschetz()?;
    r.note(
        "surjectivity and isomorphism levels coincide",
        lef.max_s == lef.max_s_surjective,
        Some(format!("iso {} / surjective {}", lef.max_s, lef.max_s_surjective)),
    );
    let duality = a.delta_duality_check()?;
    r.check("⋆ induces H_δ,k ≅ H_B^(2n−k)", duality.iter().all(|d| d.holds), None);
    r.section("delta_duality", &duality);
    let hl = a.harmonic_lefschetz_check()?;
    r.check("L^k: harmonic (n−k)-forms ≅ harmonic (n+k)-forms", hl.iter().all(|d| d.holds), None);
    r.section("harmonic_lefschetz", &hl);
    if lef.max_s >= 0 {
        let s = lef.max_s as usize;
        let dec = a.decomposition_in_cohomology(lef.max_s)?;
        r.check("H_B = ⊕ L^r PH_B in the Lefschetz range", dec.holds, None);
        r.section("decomposition", &dec);
        let ex = a.exactness_checks(s)?;
        for c in &ex {
            r.check(&c.name, c.holds(), (!c.holds()).then(|| format!("fails at degrees {:?}", c.failing_degrees)));
        }
        r.section("exactness", &ex);
        let (n, failing) = a.exact_pieces_check(s, SAMPLES, seed)?;
        r.check(
            "primitive pieces of exact δ-closed forms are exact",
            failing.is_empty(),
            Some(format!("{n} samples, failing degrees {failing:?}")),
        );
    }
    Ok(())
}

fn cup(r: &mut Report, a: &Analysis) -> Result<()> {
    use crate::cohomology::ComplexKind;
    let c = contact::cup_length(a)?;
    r.section("cup_length", &c);
    let top = a.model().num_generators();
    let mut well = true;
    for p in 0..=top {
        for q in 0..=top - p {
            well &= a.cup_well_defined(ComplexKind::DeRham, p, q)?;
        }
    }
    r.check("cup product is well defined on classes", well, None);
    if a.model().is_contact() {
        let n = a.half_dim();
        let s = contact::contact_lefschetz(a)?.max_s;
        if s >= 0 {
            let p = contact::product_vanishing_check(a, s)?;
            r.check(
                "products of low-degree classes vanish in high total degree",
                p.holds,
                Some(format!(
                    "s = {s}, {} products at the bound, {} vanishing prefixes, nonzero {:?}",
                    p.products_checked, p.vanishing_prefixes, p.nonzero
                )),
            );
            r.section("product_vanishing", &p);
            let bound = 2 * n as i64 - s;
            r.check(
                "cup length ≤ 2n − s",
                (c.cup_length as i64) <= bound,
                Some(format!("{} ≤ {bound}", c.cup_length)),
            );
        }
        r.check(
            "cup length ≤ 2n",
            c.cup_length <= 2 * n,
            Some(format!("{} ≤ {}", c.cup_length, 2 * n)),
        );
    }
    Ok(())
}

fn contact_extras(r: &mut Report, a: &Analysis) -> Result<()> {
    use crate::cohomology::unit;
    let les = contact::long_exact_sequence(a)?;
    r.check("long exact sequence is exact", les.exact, None);
    r.section("long_exact_sequence", &les);
    let mut pairings = Vec::new();
    for deg in 0..=2 * a.half_dim() {
        pairings.push(contact::basic_poincare_pairing(a, deg)?.1);
    }
    r.check("basic pairing is nondegenerate", pairings.iter().all(|p| p.nondegenerate), None);
    r.section("basic_pairing", &pairings);
    let s = a.transverse_lefschetz()?.max_s;
    if s >= 0 {
        let mut maps = Vec::new();
        for k in 0..=((s + 1) as usize).min(a.half_dim()) {
            let dim = a.de_rham_cohomology(k).dim();
            for i in 0..dim {
                maps.push(contact::lef_map(a, k, &unit(dim, i))?.1);
            }
        }
        r.check(
            "Lef_k does not depend on the primitive representative",
            maps.iter().all(|m| m.well_defined),
            None,
        );
        r.section("lef_map", &maps);
    }
    r.section("sasakian_obstruction", contact::sasakian_obstruction(a)?);
    Ok(())
}

fn gysin(r: &mut Report, a: &Analysis) -> Result<()> {
    let s = a.transverse_lefschetz()?.max_s.max(0) as usize;
    let (_, g) = contact::gysin_bookkeeping(a.model(), s)?;
    r.check("Gysin sequence is exact around degree s + 1", g.exact, None);
    if let Some(ok) = g.formula_holds {
        r.check(
            "b_(s+1)(total) = b_(s+1)(base) − b_(s−1)(base)",
            ok,
            Some(format!("{:?} vs {}", g.predicted, g.actual)),
        );
    }
    r.section("gysin", &g);
    Ok(())
}

/// Drops per-degree rows above `max` and truncates Betti arrays.
fn limit_degrees(v: &mut Value, max: usize) {
    match v {
        Value::Object(map) => {
            for (key, child) in map.iter_mut() {
                match child {
                    Value::Array(items) if key == "per_degree" => items.retain(|row| {
                        let deg = row.get("k").or_else(|| row.get("i")).and_then(Value::as_u64);
                        deg.is_none_or(|d| d as usize <= max)
                    }),
                    Value::Array(items) if key.ends_with("betti") || key.ends_with("dims") => {
                        items.truncate(max + 1)
                    }
                    _ => limit_degrees(child, max),
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|c| limit_degrees(c, max)),
        _ => {}
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[Value], pad: &str) {
    let mut cols: Vec<&String> = Vec::new();
    for row in rows {
        for k in row.as_object().expect("rows are objects").keys() {
            if !cols.contains(&k) {
                cols.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| cols.iter().map(|c| row.get(c.as_str()).map_or("-".into(), scalar)).collect())
        .collect();
    let width = |i: usize| {
        cells
            .iter()
            .map(|r| r[i].chars().count())
            .chain([cols[i].chars().count()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..cols.len()).map(width).collect();
    let line = |items: Vec<&str>| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(cols.iter().map(|c| c.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}

fn render_object(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (key, v) in map {
        match v {
            Value::Object(m) => {
                out.push_str(&format!("{pad}{key}:\n"));
                render_object(out, m, depth + 1);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                out.push_str(&format!("{pad}{key}:\n"));
                table(out, items, &"  ".repeat(depth + 1));
            }
            Value::Array(items) if items.iter().any(Value::is_array) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  {}\n", scalar(item)));
                }
            }
            other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
        }
    }
}

/// Plain-text rendering of a report: scalars as `key: value`, arrays of
/// records as aligned tables.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => render_object(&mut out, m, 0),
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("foliahodge").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).code, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["suite"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["suite", "zoo:torus2", "--seed", "x"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn unknown_zoo_model_is_invalid() {
        let out = run_args(&["validate", "zoo:klein_bottle"]);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("klein_bottle"));
    }

    #[test]
    fn max_degree_filters_rows() {
        let mut v = json!({"per_degree": [{"k": 0}, {"k": 1}, {"k": 2}], "basic_betti": [1, 2, 1],
                           "inner": {"per_degree": [{"i": 3}]}});
        limit_degrees(&mut v, 1);
        assert_eq!(v["per_degree"].as_array().unwrap().len(), 2);
        assert_eq!(v["basic_betti"], json!([1, 2]));
        assert!(v["inner"]["per_degree"].as_array().unwrap().is_empty());
    }

    #[test]
    fn human_tables_align() {
        let v = json!({"rows": [{"k": 0, "name": "a"}, {"k": 10, "name": "bb"}], "flag": true});
        assert_eq!(render_human(&v), "rows:\n  k   name\n  0   a\n  10  bb\nflag: yes\n");
    }
}

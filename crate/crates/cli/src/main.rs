//! `excol`: analyses of exceptional collections from collection documents.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use excol::collection::{self, CollectionSpec, QualitativeExtTable, TableOptions};
use excol::exactlin::FieldKind;
use excol::fixtures::{fixture, FIXTURE_NAMES};
use excol::fullness::fullness;
use excol::height::height_report;
use excol::nhh::{self, Bidegree};
use excol::pseudoheight::{cyclically_ext1_connected, hom_free, pseudoheight, qualitative_ph_bounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Validate,
    Pseudoheight,
    E1,
    Ss,
    Height,
    Report,
    Fullness,
    Fixture,
}

/// Pseudoheight, normal Hochschild cohomology, height and fullness of exceptional collections.
#[derive(Debug, Parser)]
#[command(name = "excol", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Collection document: a path, a path without `.json`, or a fixture name.
    /// For `fixture`: `list` or a fixture name.
    input: String,
    /// Emit canonical JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Last spectral sequence page to print.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_page: Option<u64>,
    /// Report anticanonical values.
    #[arg(long)]
    anticanonical: bool,
    /// Dimensions of HOH^0(X), HOH^1(X), ... for the comparison report.
    #[arg(long, value_delimiter = ',')]
    hoh: Option<Vec<usize>>,
    /// Field override: Q, Fp, or F<prime>.
    #[arg(long)]
    field: Option<FieldKind>,
}

/// Failures mapped to exit status 2; validation failures exit with 1.
enum Failure {
    Invalid(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn fixture_dir() -> PathBuf {
    std::env::var_os("EXCOL_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

fn load(input: &str) -> Result<CollectionSpec> {
    let direct = PathBuf::from(input);
    let name = direct.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = name.strip_suffix(".json").unwrap_or(&name).to_string();
    let candidates =
        [direct.clone(), PathBuf::from(format!("{input}.json")), fixture_dir().join(format!("{stem}.json"))];
    for path in candidates {
        if path.is_file() {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            return collection::parse_str(&text).with_context(|| format!("parsing {}", path.display()));
        }
    }
    fixture(&stem).ok_or_else(|| anyhow!("no collection document at {input}, {input}.json or fixture '{stem}'"))
}

fn grid(page: &BTreeMap<Bidegree, usize>) -> String {
    if page.is_empty() {
        return "  (zero)\n".into();
    }
    let cols: Vec<i64> = page.keys().map(|k| k.0).collect();
    let qs: Vec<i64> = page.keys().map(|k| k.1).collect();
    let (c0, c1) = (*cols.iter().min().unwrap(), *cols.iter().max().unwrap());
    let (q0, q1) = (*qs.iter().min().unwrap(), *qs.iter().max().unwrap());
    let width = page.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(3);
    let mut out = String::new();
    for q in (q0..=q1).rev() {
        out.push_str(&format!("{q:>4} |"));
        for c in c0..=c1 {
            let cell = page.get(&(c, q)).map_or(".".into(), |d| d.to_string());
            out.push_str(&format!(" {cell:>width$}"));
        }
        out.push('\n');
    }
    out.push_str(&format!("     +{}\n      ", "-".repeat((width + 1) * (c1 - c0 + 1) as usize)));
    for c in c0..=c1 {
        out.push_str(&format!("{c:>width$} "));
    }
    out.push_str(" (-p)\n");
    out
}

fn page_json(page: &BTreeMap<Bidegree, usize>) -> Value {
    json!(page.iter().map(|(&(c, q), d)| json!([c, q, d])).collect::<Vec<_>>())
}

fn dims_json(m: &BTreeMap<i64, usize>) -> Value {
    json!(m.iter().map(|(t, d)| (t.to_string(), json!(d))).collect::<serde_json::Map<_, _>>())
}

fn dims_text(m: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = m.iter().filter(|(_, d)| **d > 0).map(|(t, d)| format!("{t}:{d}")).collect();
    format!("{{{}}}", parts.join(", "))
}

struct Output {
    json: Value,
    text: String,
}

fn pseudoheight_cmd(spec: &CollectionSpec, anticanonical: bool) -> Result<Output> {
    let table = QualitativeExtTable::from_spec(spec, TableOptions::default())?;
    let (connected, cycle) = cyclically_ext1_connected(&table)?;
    let hom = hom_free(&table);
    let mut text = String::new();
    let mut doc = serde_json::Map::new();
    if spec.exact {
        let ph = pseudoheight(spec)?;
        let shown = if anticanonical { ("ph_ac", ph.ph_ac) } else { ("ph", ph.ph) };
        text.push_str(&format!("{} = {}\n", shown.0, shown.1));
        if let Some(w) = &ph.witness {
            text.push_str(&format!("witness = {w}\n"));
        }
        doc.insert("ph".into(), ph.ph.to_json());
        doc.insert("ph_ac".into(), ph.ph_ac.to_json());
        doc.insert("witness".into(), json!(ph.witness.as_ref().map(|w| w.to_json())));
    } else {
        let b = qualitative_ph_bounds(&table)?;
        let (lo, hi) = if anticanonical { (b.ac_lower, b.ac_upper) } else { (b.lower(), b.upper()) };
        let name = if anticanonical { "ph_ac" } else { "ph" };
        if lo == hi {
            text.push_str(&format!("{name} = {lo}\n"));
        } else {
            text.push_str(&format!("{name} in [{lo}, {hi}]\n"));
        }
        if let Some(w) = &b.witness {
            text.push_str(&format!("witness = {w}\n"));
        }
        doc.insert("ph".into(), json!([b.lower().to_json(), b.upper().to_json()]));
        doc.insert("ph_ac".into(), json!([b.ac_lower.to_json(), b.ac_upper.to_json()]));
        doc.insert("witness".into(), json!(b.witness.as_ref().map(|w| w.to_json())));
        doc.insert("lower_witness".into(), json!(b.lower_witness.as_ref().map(|w| w.to_json())));
    }
    text.push_str(&format!("hom_free = {}\ncyclically_ext1_connected = {}", hom.as_str(), connected.as_str()));
    if let Some(c) = &cycle {
        text.push_str(&format!(" via {c}"));
    }
    text.push('\n');
    doc.insert("anticanonical".into(), json!(anticanonical));
    doc.insert("hom_free".into(), json!(hom.as_str()));
    doc.insert("cyclically_ext1_connected".into(), json!(connected.as_str()));
    doc.insert("ext1_cycle".into(), json!(cycle.as_ref().map(|c| c.to_json())));
    Ok(Output { json: Value::Object(doc), text })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.command == Command::Fixture {
        if cli.input == "list" {
            return Ok(Output { json: json!(FIXTURE_NAMES), text: FIXTURE_NAMES.join("\n") + "\n" });
        }
        let spec = fixture(&cli.input).ok_or_else(|| anyhow!("unknown fixture '{}'", cli.input))?;
        let text = collection::serialize(&spec);
        return Ok(Output { json: collection::serialize_value(&spec), text });
    }
    let spec = load(&cli.input)?;
    let report = collection::validate(&spec);
    if cli.command == Command::Validate {
        let out = Output { json: report.to_json(), text: report.to_string() };
        if !report.ok() {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).unwrap() } else { out.text };
            return Err(Failure::Invalid(body));
        }
        return Ok(out);
    }
    if !report.ok() {
        return Err(Failure::Invalid(format!("validation failed\n{report}")));
    }
    let max_page = cli.max_page.map_or(usize::MAX, |r| r as usize);
    let out = match cli.command {
        Command::Pseudoheight => pseudoheight_cmd(&spec, cli.anticanonical)?,
        Command::E1 => {
            let e1 = nhh::build_e1(&spec).map_err(anyhow::Error::from)?;
            Output { json: json!({"e1": page_json(&e1)}), text: format!("E_1\n{}", grid(&e1)) }
        }
        Command::Ss => {
            let s = nhh::summarize(&spec, cli.field, max_page).map_err(anyhow::Error::from)?;
            let mut text = String::new();
            for (r, page) in s.pages.iter().enumerate() {
                text.push_str(&format!("E_{}\n{}", r + 1, grid(page)));
            }
            text.push_str(&format!("E_inf (from E_{})\n{}", s.r_stab, grid(&s.e_inf)));
            text.push_str(&format!("NHH dims: {}\n", dims_text(&s.nhh)));
            if let Some(r) = s.exact_through {
                text.push_str(&format!("only pages through E_{r} are determined by the supplied products\n"));
            }
            let pages: Vec<Value> =
                s.pages.iter().enumerate().map(|(r, p)| json!({"r": r + 1, "entries": page_json(p)})).collect();
            let json = json!({
                "pages": pages,
                "e_inf": page_json(&s.e_inf),
                "r_stab": s.r_stab,
                "nhh": dims_json(&s.nhh),
                "exact_through_page": s.exact_through,
            });
            Output { json, text }
        }
        Command::Height | Command::Report => {
            let hoh = if cli.command == Command::Report { cli.hoh.as_deref() } else { None };
            let r = height_report(&spec, cli.field, hoh).map_err(anyhow::Error::from)?;
            let mut json = r.to_json();
            let mut text = r.to_string();
            if cli.command == Command::Report {
                let v = fullness(&spec, cli.field).map_err(anyhow::Error::from)?;
                json["fullness"] = v.to_json();
                json["validation"] = report.to_json();
                text.push_str(&format!("fullness: {v}\n"));
            }
            Output { json, text }
        }
        Command::Fullness => {
            let v = fullness(&spec, cli.field).map_err(anyhow::Error::from)?;
            Output { json: v.to_json(), text: format!("{v}\n") }
        }
        Command::Validate | Command::Fixture => unreachable!("handled above"),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            println!("{}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let g = grid(&BTreeMap::from([((-1, 1), 4), ((0, 1), 6)]));
        assert!(g.starts_with("   1 |   4   6\n"), "{g}");
        assert_eq!(grid(&BTreeMap::new()), "  (zero)\n");
    }

    #[test]
    fn rejects_bad_max_page() {
        assert!(Cli::try_parse_from(["excol", "ss", "point", "--max-page", "0"]).is_err());
        let ok = Cli::try_parse_from(["excol", "report", "x", "--hoh", "1,0,0,6,9"]).unwrap();
        assert_eq!(ok.hoh, Some(vec![1, 0, 0, 6, 9]));
    }

    #[test]
    fn unknown_input_is_reported() {
        assert!(load("no/such/collection").is_err());
    }
}

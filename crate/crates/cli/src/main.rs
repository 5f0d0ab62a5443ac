//! `nichols`: verification runs and single computations from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource cap.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nichols_core::adjoint::{reflection_trace, ChainConfig, PairState, DEFAULT_CHAIN_CAP};
use nichols_core::hilbert::{
    classify_y, compare, series_for_yclass, strategy, univariate_series, HilbertError, HilbertSeries, YClass,
};
use nichols_core::instantiate::{
    coefficient_table, example, instantiate, table_runs, verify_instance, yclass_witness, Instance, Report,
    CHARACTERISTICS,
};
use nichols_core::pairfile::{describe, PairDescription};
use nichols_core::weylgroupoid::{default_identity, generate, identity, ObjectIdentity, DEFAULT_OBJECT_CAP};
use nichols_core::ydmod::BraidedSpace;

const MISMATCH: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "nichols", version, about = "Rank-two Nichols algebras over finite group quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every table row applicable to the requested characteristics.
    VerifyTable {
        /// Characteristics to run; repeat the flag for several (default 0, 2, 3).
        #[arg(long = "char", value_name = "P")]
        chars: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Cartan matrix, class, reflections, roots and series of one pair.
    Pair {
        #[command(flatten)]
        source: Source,
        /// Also write the pair description record to this file.
        #[arg(long, value_name = "FILE")]
        save_pair: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a word of reflections and trace classes and Cartan matrices.
    Reflect {
        #[command(flatten)]
        source: Source,
        /// Reflection indices applied left to right, e.g. "1 2 1".
        #[arg(long, default_value = "1 2")]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Objects, reflection maps and positive roots of the Weyl groupoid.
    Roots {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert series, dimension and coefficients up to the maximal degree.
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Compare symmetrizer ranks with series coefficients.
    Oracle {
        #[command(flatten)]
        source: Source,
        /// Check a class series on a witness module instead of a pair.
        #[arg(long, value_name = "CLASS", conflicts_with_all = ["example", "pair"])]
        yclass: Option<String>,
        /// Rank strategy: incremental or full.
        #[arg(long, default_value = "incremental")]
        strategy: String,
        /// Largest tensor dimension handled in one block.
        #[arg(long, default_value_t = 1 << 22)]
        tensor_cap: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Series of a class, or the classes of the entries of a pair.
    Yclass {
        /// Class name such as Y1; omit to classify the pair's entries.
        class: Option<String>,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Source {
    /// Example id (g2a, g2b, g4, t, z32-p1, z32-p2, z32-p5', z31a-p4, z31a-p5, z31a-p5'', z31b-p3, z31a-p6).
    #[arg(long)]
    example: Option<String>,
    /// Pair description file (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "example")]
    pair: Option<PathBuf>,
    #[arg(long = "char", value_name = "P", default_value_t = 0)]
    characteristic: u64,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
    chain_cap: usize,
    #[arg(long, default_value_t = DEFAULT_OBJECT_CAP)]
    object_cap: usize,
    /// Object identity for groupoids: pair-iso or class-label (default by family).
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

/// Rendered output plus the exit code it implies.
struct Output {
    body: String,
    code: u8,
}

impl Common {
    fn chain(&self) -> Result<ChainConfig, Failure> {
        if self.chain_cap == 0 || self.object_cap == 0 {
            return Err(usage("caps must be positive"));
        }
        Ok(ChainConfig { chain_cap: self.chain_cap, ..ChainConfig::default() })
    }

    fn identity_for(&self, pair: &PairState) -> Result<Box<dyn ObjectIdentity>, Failure> {
        match &self.identity {
            Some(name) => identity(name).map_err(|e| usage(e.to_string())),
            None => Ok(default_identity(pair)),
        }
    }

    fn render<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String, csv: Option<String>) -> Result<String, Failure> {
        match self.format {
            Format::Text => Ok(text()),
            Format::Json => serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| usage(e.to_string())),
            Format::Csv => csv.ok_or_else(|| usage("csv output is not available for this command")),
        }
    }
}

fn check_char(p: u64) -> Result<u64, Failure> {
    if CHARACTERISTICS.contains(&p) {
        Ok(p)
    } else {
        Err(usage(format!("characteristic {p} is not one of 0, 2, 3, 5, 7")))
    }
}

enum Loaded {
    Example(Instance),
    File(PairState),
}

impl Loaded {
    fn pair(&self) -> &PairState {
        match self {
            Loaded::Example(i) => &i.pair,
            Loaded::File(p) => p,
        }
    }
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    let p = check_char(source.characteristic)?;
    match (&source.example, &source.pair) {
        (Some(id), _) => {
            let ex = example(id).map_err(|e| usage(e.to_string()))?;
            let inst = instantiate(ex.as_ref(), p).map_err(|e| usage(e.to_string()))?;
            Ok(Loaded::Example(inst))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let d: PairDescription =
                serde_json::from_str(&text).map_err(|e| usage(format!("invalid pair description: {e}")))?;
            let pair = d.build().map_err(|e| usage(format!("invalid pair description: {e}")))?;
            Ok(Loaded::File(pair))
        }
        (None, None) => Err(usage("give --example or --pair")),
    }
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"', '\n']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    quoted.join(",") + "\n"
}

// ---------------------------------------------------------------- commands

#[derive(Serialize)]
struct TableRun {
    rank: u32,
    family: &'static str,
    dimension: u64,
    characteristic: String,
    support: &'static str,
    example: &'static str,
    run_characteristic: u64,
    pass: bool,
    report: Report,
}

fn verify_table(chars: &[u64], common: &Common) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let chars = if chars.is_empty() { vec![0, 2, 3] } else { chars.to_vec() };
    let mut runs = Vec::new();
    for &p in &chars {
        check_char(p)?;
        for (row, id, allowed) in table_runs(p) {
            if !allowed {
                continue;
            }
            let ex = example(id).map_err(|e| usage(e.to_string()))?;
            let report = match instantiate(ex.as_ref(), p) {
                Ok(inst) => verify_instance(ex.as_ref(), &inst, &cfg, common.object_cap),
                Err(e) => return Err(Failure { code: MISMATCH, message: format!("{id} in characteristic {p}: {e}") }),
            };
            runs.push(TableRun {
                rank: row.rank,
                family: row.family,
                dimension: row.dimension,
                characteristic: row.characteristic.to_string(),
                support: row.support,
                example: id,
                run_characteristic: p,
                pass: report.pass,
                report,
            });
        }
    }
    let all = runs.iter().all(|r| r.pass);
    let text = || {
        let mut s = format!(
            "{:<5} {:<7} {:>10} {:<6} {:<9} {:<10} {:<4} {:>12} result\n",
            "rank", "family", "dimension", "char", "support", "example", "run", "computed"
        );
        for r in &runs {
            let _ = writeln!(
                s,
                "{:<5} {:<7} {:>10} {:<6} {:<9} {:<10} {:<4} {:>12} {}",
                r.rank,
                r.family,
                r.dimension,
                r.characteristic,
                r.support,
                r.example,
                r.run_characteristic,
                r.report.dimension.as_deref().unwrap_or("-"),
                if r.pass { "pass".to_string() } else { failed_checks(&r.report) }
            );
        }
        let _ = writeln!(s, "{} of {} runs pass", runs.iter().filter(|r| r.pass).count(), runs.len());
        s
    };
    let mut csv = "rank,family,dimension,char,support,example,run_char,computed,pass\n".to_string();
    for r in &runs {
        csv += &csv_line(&[
            r.rank.to_string(),
            r.family.into(),
            r.dimension.to_string(),
            r.characteristic.clone(),
            r.support.into(),
            r.example.into(),
            r.run_characteristic.to_string(),
            r.report.dimension.clone().unwrap_or_default(),
            r.pass.to_string(),
        ]);
    }
    let body = common.render(&runs, text, Some(csv))?;
    Ok(Output { body, code: if all { 0 } else { MISMATCH } })
}

fn failed_checks(r: &Report) -> String {
    let names: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    format!("FAIL ({})", names.join(", "))
}

fn pair_cmd(source: &Source, save: Option<&PathBuf>, common: &Common) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let loaded = load(source)?;
    if let Some(path) = save {
        let Loaded::Example(inst) = &loaded else {
            return Err(usage("--save-pair needs --example"));
        };
        let json = serde_json::to_string_pretty(&PairDescription::from_instance(inst)).expect("serializable");
        std::fs::write(path, json + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    match &loaded {
        Loaded::Example(inst) => {
            let ex = example(inst.example).expect("known example");
            let report = verify_instance(ex.as_ref(), inst, &cfg, common.object_cap);
            let code = if report.pass { 0 } else { MISMATCH };
            let text = || {
                let mut s = String::new();
                let p = &report.provenance;
                let _ = writeln!(s, "example {} in characteristic {}", report.example, report.characteristic);
                let _ = writeln!(s, "witness: {} of order {} over {} ({} candidates tried)", p.group, p.order, p.field, p.candidates_tried);
                let _ = writeln!(s, "V = M({}, ...) dim {}; W = M({}, ...) dim {}", p.v.degree, p.v.dim, p.w.degree, p.w.dim);
                if let Some(l) = &report.label {
                    let _ = writeln!(s, "class: {l}");
                }
                if let Some(c) = report.cartan {
                    let _ = writeln!(s, "cartan: {c}");
                }
                let _ = writeln!(s, "outcome: {}", report.outcome);
                if let Some(n) = report.objects {
                    let _ = writeln!(s, "objects: {n}, standard: {}", report.standard.unwrap_or(false));
                }
                if !report.roots.is_empty() {
                    let _ = writeln!(s, "positive roots: {}", report.roots.join(", "));
                }
                if report.root_classes.iter().any(|c| c != "-") {
                    let _ = writeln!(s, "root classes: {}", report.root_classes.join(", "));
                }
                if let Some(series) = &report.series {
                    let _ = writeln!(s, "series: {series}");
                }
                if let Some(d) = &report.dimension {
                    let _ = writeln!(s, "dimension: {d}");
                }
                for c in &report.checks {
                    let _ = writeln!(s, "  [{}] {} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
                }
                s
            };
            Ok(Output { body: common.render(&report, text, None)?, code })
        }
        Loaded::File(pair) => {
            let id = common.identity_for(pair)?;
            let report = describe(pair, id.as_ref(), &cfg, common.object_cap);
            let code = if report.braiding_square_identity {
                MISMATCH
            } else if report.cap_hit {
                CAP
            } else {
                0
            };
            let text = || {
                let mut s = String::new();
                let _ = writeln!(s, "pair over {} / {}, dims {:?}", report.group, report.field, report.dims);
                let _ = writeln!(s, "class: {}", report.label);
                if let Some(c) = report.cartan {
                    let _ = writeln!(s, "cartan: {c}");
                }
                for (i, r) in report.reflections.iter().enumerate() {
                    let _ = writeln!(s, "R{}: {}", i + 1, r.as_deref().unwrap_or("undefined"));
                }
                let _ = writeln!(s, "outcome: {}", report.outcome);
                if let Some(scheme) = &report.scheme {
                    let _ = writeln!(s, "{scheme}");
                }
                if report.root_classes.iter().any(|c| c != "-") {
                    let _ = writeln!(s, "root classes: {}", report.root_classes.join(", "));
                }
                if let Some(series) = &report.series {
                    let _ = writeln!(s, "series: {series}");
                }
                if let Some(d) = &report.dimension {
                    let _ = writeln!(s, "dimension: {d}");
                }
                s
            };
            Ok(Output { body: common.render(&report, text, None)?, code })
        }
    }
}

fn parse_word(word: &str) -> Result<Vec<usize>, Failure> {
    word.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(usage(format!("reflection word may only contain 1 and 2, found `{c}`"))),
        })
        .collect()
}

fn reflect_cmd(source: &Source, word: &str, common: &Common) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let word = parse_word(word)?;
    let loaded = load(source)?;
    let trace = reflection_trace(loaded.pair(), &word, &cfg);
    let text = || {
        let mut s = String::new();
        for t in &trace {
            let cartan = t.cartan.map_or("-".to_string(), |c| c.to_string());
            let _ = write!(s, "{:<14} {:<12} A={:<18} dims={:?}", t.word, t.label, cartan, t.dims);
            if let Some(e) = &t.error {
                let _ = write!(s, "  {e}");
            }
            s.push('\n');
        }
        s
    };
    let mut csv = "word,label,a12,a21,dim_v,dim_w,error\n".to_string();
    for t in &trace {
        csv += &csv_line(&[
            t.word.clone(),
            t.label.clone(),
            t.cartan.map_or(String::new(), |c| c.a12.to_string()),
            t.cartan.map_or(String::new(), |c| c.a21.to_string()),
            t.dims[0].to_string(),
            t.dims[1].to_string(),
            t.error.clone().unwrap_or_default(),
        ]);
    }
    Ok(Output { body: common.render(&trace, text, Some(csv))?, code: 0 })
}

fn roots_cmd(source: &Source, common: &Common) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let loaded = load(source)?;
    let pair = loaded.pair();
    let id = common.identity_for(pair)?;
    match generate(pair, id.as_ref(), &cfg, common.object_cap) {
        Ok(scheme) => {
            let record = scheme.record();
            let mut csv = "object,path,label,a12,a21,r1,r2,roots\n".to_string();
            for o in &record.objects {
                csv += &csv_line(&[
                    o.index.to_string(),
                    o.path.clone(),
                    o.label.clone(),
                    o.cartan.a12.to_string(),
                    o.cartan.a21.to_string(),
                    o.r1.to_string(),
                    o.r2.to_string(),
                    o.roots.join(" "),
                ]);
            }
            Ok(Output { body: common.render(&record, || format!("{record}\n"), Some(csv))?, code: 0 })
        }
        Err(e) => Err(Failure { code: if e.is_cap() { CAP } else { MISMATCH }, message: e.to_string() }),
    }
}

#[derive(Serialize)]
struct HilbertOut {
    series: String,
    dimension: String,
    source: &'static str,
    /// `(d₁, d₂, coefficient)` up to the maximal total degree.
    coefficients: Vec<(u32, u32, u128)>,
}

/// The pair's series: computed from root classes when possible, else the transcription.
fn pair_series(loaded: &Loaded, cfg: &ChainConfig, common: &Common) -> Result<(HilbertSeries, &'static str), Failure> {
    match loaded {
        Loaded::Example(inst) => {
            let ex = example(inst.example).expect("known example");
            let report = verify_instance(ex.as_ref(), inst, cfg, common.object_cap);
            if report.factors.is_empty() {
                return Err(Failure { code: MISMATCH, message: format!("no series: {}", report.outcome) });
            }
            let source = if ex.family() == "Gamma3" { "root classes" } else { "printed factors" };
            Ok((HilbertSeries::new(report.factors), source))
        }
        Loaded::File(pair) => {
            let id = common.identity_for(pair)?;
            let r = describe(pair, id.as_ref(), cfg, common.object_cap);
            match r.hilbert {
                Some(s) => Ok((s, "root classes")),
                None => Err(Failure { code: if r.cap_hit { CAP } else { MISMATCH }, message: format!("no series: {}", r.outcome) }),
            }
        }
    }
}

fn hilbert_cmd(source: &Source, common: &Common) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let loaded = load(source)?;
    let (series, src) = pair_series(&loaded, &cfg, common)?;
    let table = coefficient_table(&series, common.max_degree);
    let out = HilbertOut {
        series: series.to_string(),
        dimension: series.dimension().to_string(),
        source: src,
        coefficients: table.iter().map(|(&(a, b), &c)| (a, b, c)).collect(),
    };
    let text = || {
        let mut s = format!("series: {}\ndimension: {}\nfrom: {}\n", out.series, out.dimension, out.source);
        for d in 0..=common.max_degree {
            let row: Vec<String> = (0..=d).map(|a| table.get(&(a, d - a)).copied().unwrap_or(0).to_string()).collect();
            let _ = writeln!(s, "degree {d}: {}", row.join(" "));
        }
        s
    };
    let mut csv = "d1,d2,coefficient\n".to_string();
    for (a, b, c) in &out.coefficients {
        csv += &format!("{a},{b},{c}\n");
    }
    Ok(Output { body: common.render(&out, text, Some(csv))?, code: 0 })
}

#[derive(Serialize)]
struct OracleRow {
    d1: u32,
    d2: u32,
    rank: usize,
    coefficient: u128,
    pass: bool,
}

#[derive(Serialize)]
struct OracleOut {
    subject: String,
    series: String,
    strategy: String,
    max_degree: u32,
    rows: Vec<OracleRow>,
    pass: bool,
    elapsed_ms: u128,
}

fn oracle_cmd(
    source: &Source,
    yclass: Option<&str>,
    strat: &str,
    tensor_cap: u64,
    common: &Common,
) -> Result<Output, Failure> {
    let cfg = common.chain()?;
    let strategy = strategy(strat).map_err(|e| usage(e.to_string()))?;
    let (space, series, subject) = match yclass {
        Some(name) => {
            let y = YClass::parse(name).ok_or_else(|| usage(format!("unknown class `{name}`")))?;
            let m = yclass_witness(y).map_err(|e| Failure { code: MISMATCH, message: e.to_string() })?;
            let p = m.field().characteristic();
            if classify_y(&m) != Some(y) {
                return Err(Failure { code: MISMATCH, message: format!("witness is not of class {y}") });
            }
            let series = univariate_series(&series_for_yclass(y, p).map_err(|e| usage(e.to_string()))?);
            (BraidedSpace::single(&m), series, format!("{y} witness over {}", m.field()))
        }
        None => {
            let loaded = load(source)?;
            let (series, _) = pair_series(&loaded, &cfg, common)?;
            let pair = loaded.pair();
            let u = BraidedSpace::from_pair(&pair.v, &pair.w).map_err(|e| usage(e.to_string()))?;
            let subject = source.example.clone().unwrap_or_else(|| "pair file".into());
            (u, series, subject)
        }
    };
    let start = Instant::now();
    let ranks = match strategy.ranks(&space, common.max_degree as usize, tensor_cap) {
        Ok(t) => t,
        Err(e @ HilbertError::Cap(_)) => return Err(Failure { code: CAP, message: e.to_string() }),
        Err(e) => return Err(Failure { code: MISMATCH, message: e.to_string() }),
    };
    let elapsed = start.elapsed();
    let bad = compare(&ranks, &series, common.max_degree).map_err(|e| Failure { code: MISMATCH, message: e.to_string() })?;
    let expanded = coefficient_table(&series, common.max_degree);
    let rows: Vec<OracleRow> = ranks
        .iter()
        .filter(|(&(a, b), _)| a + b <= common.max_degree)
        .map(|(&(a, b), &r)| {
            let c = expanded.get(&(a, b)).copied().unwrap_or(0);
            OracleRow { d1: a, d2: b, rank: r, coefficient: c, pass: r as u128 == c }
        })
        .collect();
    let out = OracleOut {
        subject,
        series: series.to_string(),
        strategy: strategy.name().into(),
        max_degree: common.max_degree,
        pass: bad.is_empty(),
        rows,
        elapsed_ms: elapsed.as_millis(),
    };
    let text = || {
        let mut s = format!("{}: {} (strategy {})\n", out.subject, out.series, out.strategy);
        for r in &out.rows {
            let _ = writeln!(s, "({}, {}) rank {} coefficient {} {}", r.d1, r.d2, r.rank, r.coefficient, if r.pass { "ok" } else { "MISMATCH" });
        }
        let _ = writeln!(s, "{} in {:.2}s", if out.pass { "all bidegrees match" } else { "mismatch" }, elapsed.as_secs_f64());
        s
    };
    let mut csv = "d1,d2,rank,coefficient,pass\n".to_string();
    for r in &out.rows {
        csv += &format!("{},{},{},{},{}\n", r.d1, r.d2, r.rank, r.coefficient, r.pass);
    }
    let code = if out.pass { 0 } else { MISMATCH };
    Ok(Output { body: common.render(&out, text, Some(csv))?, code })
}

#[derive(Serialize)]
struct ClassOut {
    class: String,
    characteristic: u64,
    series: Option<String>,
    dimension: Option<String>,
}

fn class_out(y: Option<YClass>, p: u64) -> ClassOut {
    let s = y.and_then(|y| series_for_yclass(y, p).ok()).map(|f| univariate_series(&f));
    ClassOut {
        class: y.map_or("none".into(), |y| y.ascii().into()),
        characteristic: p,
        series: s.as_ref().map(|s| s.to_string()),
        dimension: s.map(|s| s.dimension().to_string()),
    }
}

fn yclass_cmd(class: Option<&str>, source: &Source, common: &Common) -> Result<Output, Failure> {
    let rows: Vec<ClassOut> = match class {
        Some(name) => {
            let y = YClass::parse(name).ok_or_else(|| usage(format!("unknown class `{name}`")))?;
            CHARACTERISTICS.iter().map(|&p| class_out(Some(y), p)).collect()
        }
        None => {
            let loaded = load(source)?;
            let pair = loaded.pair();
            let p = pair.field().characteristic();
            vec![class_out(classify_y(&pair.v), p), class_out(classify_y(&pair.w), p)]
        }
    };
    let text = || {
        let mut s = String::new();
        for r in &rows {
            let _ = writeln!(
                s,
                "{} char {}: {} dim {}",
                r.class,
                r.characteristic,
                r.series.as_deref().unwrap_or("-"),
                r.dimension.as_deref().unwrap_or("-")
            );
        }
        s
    };
    let mut csv = "class,char,series,dimension\n".to_string();
    for r in &rows {
        csv += &csv_line(&[
            r.class.clone(),
            r.characteristic.to_string(),
            r.series.clone().unwrap_or_default(),
            r.dimension.clone().unwrap_or_default(),
        ]);
    }
    Ok(Output { body: common.render(&rows, text, Some(csv))?, code: 0 })
}

fn run(cli: Cli) -> Result<(Output, Common), Failure> {
    match cli.command {
        Command::VerifyTable { chars, common } => Ok((verify_table(&chars, &common)?, common)),
        Command::Pair { source, save_pair, common } => Ok((pair_cmd(&source, save_pair.as_ref(), &common)?, common)),
        Command::Reflect { source, word, common } => Ok((reflect_cmd(&source, &word, &common)?, common)),
        Command::Roots { source, common } => Ok((roots_cmd(&source, &common)?, common)),
        Command::Hilbert { source, common } => Ok((hilbert_cmd(&source, &common)?, common)),
        Command::Oracle { source, yclass, strategy, tensor_cap, common } => {
            Ok((oracle_cmd(&source, yclass.as_deref(), &strategy, tensor_cap, &common)?, common))
        }
        Command::Yclass { class, source, common } => Ok((yclass_cmd(class.as_deref(), &source, &common)?, common)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, common)) => {
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &out.body) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(USAGE);
                }
            } else {
                print!("{}", out.body);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

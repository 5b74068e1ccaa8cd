//! Command-line front end: color evaluation, exhaustive scans, the
//! interval-bound verifier, identity spot checks, and the tiny-instance
//! oracle. Every subcommand speaks JSON with --json.
//!
//! Exit codes: 0 success or verified, 1 a counterexample or `false`
//! verdict was found (still a correct run), 2 usage or input errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use hjline::claim::{claim_eval, h, h_coefficient, H_PAIR_COLUMNS};
use hjline::coloring::{
    canonical_weights, read_coloring_file, tplus_color, weight_symbols, ColoringSpec,
    WeightVector,
};
use hjline::lines::{LineTemplate, Symbol};
use hjline::search::{
    decide_all_colorings, min_n_with_mono_line, pigeonhole_line, scan, verify_even_remark,
    verify_theorem, OracleOptions, ScanOptions, SearchReport, Verdict,
};
use hjline::words::Word;

#[derive(Parser)]
#[command(
    name = "hj",
    version,
    about = "Colorings of [m]^n and the interval structure of monochromatic combinatorial lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct WeightArgs {
    /// Modulus r of the color group
    #[arg(long)]
    r: u32,

    /// Letter weights, e.g. --t 2,-1,2; defaults to the canonical (2,-1,2)
    /// for odd r
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Option<Vec<i64>>,

    /// Use the even-r construction: run the canonical chain at modulus r-1
    /// and view it as an r-coloring
    #[arg(long, conflicts_with = "t")]
    even_r: bool,
}

impl WeightArgs {
    fn weights(&self) -> Result<WeightVector, String> {
        if self.even_r {
            if self.r < 4 || !self.r.is_multiple_of(2) {
                return Err(format!("--even-r needs an even r >= 4, got {}", self.r));
            }
            return canonical_weights(self.r - 1).map_err(|e| e.to_string());
        }
        match &self.t {
            Some(t) => WeightVector::new(self.r, t).map_err(|e| e.to_string()),
            None => canonical_weights(self.r).map_err(|e| {
                if self.r >= 2 && self.r.is_multiple_of(2) {
                    format!(
                        "r={} is even; pass --t explicitly or use --even-r for the \
                         modulus r-1 construction",
                        self.r
                    )
                } else {
                    e.to_string()
                }
            }),
        }
    }
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Worker threads for scans (default: available parallelism)
    #[arg(long)]
    workers: Option<usize>,

    /// Refuse scans walking more than this many template indices
    #[arg(long)]
    budget: Option<u64>,
}

impl RunArgs {
    fn options(&self) -> ScanOptions {
        let mut options = ScanOptions {
            workers: self.workers,
            ..ScanOptions::default()
        };
        if let Some(budget) = self.budget {
            options.budget = budget;
        }
        options
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the coloring on a single word
    Color {
        /// The word as digits, e.g. 11122133; "-" is the empty word
        #[arg(long)]
        word: String,

        #[command(flatten)]
        weights: WeightArgs,

        /// Alphabet size (default: number of weight entries)
        #[arg(long)]
        m: Option<u8>,

        #[arg(long)]
        json: bool,
    },

    /// Exhaustively verify the interval lower bound at one dimension
    Verify {
        #[arg(long)]
        r: u32,

        #[arg(long)]
        n: usize,

        /// Check the even-r bound (fewer than r-1 intervals) instead
        #[arg(long)]
        even_r: bool,

        #[command(flatten)]
        run: RunArgs,

        #[arg(long)]
        json: bool,
    },

    /// Scan a coloring for monochromatic lines and report the q histogram
    Scan {
        /// Coloring: "tplus", "file:<path>", or "random:<seed>"
        #[arg(long)]
        coloring: String,

        /// Dimension n (tplus and random colorings)
        #[arg(long)]
        n: Option<usize>,

        /// Modulus r (tplus and random colorings)
        #[arg(long)]
        r: Option<u32>,

        /// Letter weights for tplus (default canonical for odd r)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Option<Vec<i64>>,

        /// Use the even-r construction for tplus
        #[arg(long, conflicts_with = "t")]
        even_r: bool,

        /// Alphabet size (random colorings; default 3)
        #[arg(long)]
        m: Option<u8>,

        #[command(flatten)]
        run: RunArgs,

        #[arg(long)]
        json: bool,
    },

    /// Spot-check the decomposition identity on random lines
    #[command(name = "claim-check")]
    ClaimCheck {
        /// Number of random cases
        #[arg(long, default_value_t = 100_000)]
        cases: u64,

        /// RNG seed; identical seeds give identical case sequences
        #[arg(long, default_value_t = 7)]
        seed: u64,

        /// Largest template length to draw
        #[arg(long, default_value_t = 30)]
        max_n: usize,

        #[arg(long)]
        json: bool,
    },

    /// Print the boundary-pair correction table
    Table {
        /// Also print numeric entries under the canonical weights mod r
        #[arg(long)]
        r: Option<u32>,

        #[arg(long)]
        json: bool,
    },

    /// Find a monochromatic single-interval line among the two-letter
    /// threshold words
    Pigeonhole {
        /// Colors of the n+1 threshold words 1^n, 1^(n-1)2, .., 2^n
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "r", "seed"])]
        colors: Option<Vec<u32>>,

        /// Dimension for randomly drawn threshold colors
        #[arg(long, requires = "r")]
        n: Option<usize>,

        /// Number of colors for randomly drawn threshold colors
        #[arg(long, requires = "n")]
        r: Option<u32>,

        /// Seed for randomly drawn threshold colors
        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long)]
        json: bool,
    },

    /// Decide by brute force whether every r-coloring of [m]^n contains a
    /// monochromatic line
    Oracle {
        #[arg(long)]
        m: u8,

        #[arg(long)]
        n: usize,

        #[arg(long)]
        r: u32,

        /// Cell-count guard for the backtracking search
        #[arg(long, default_value_t = 16)]
        max_cells: u64,

        #[arg(long)]
        json: bool,
    },

    /// Smallest n at which the canonical coloring admits any monochromatic
    /// line
    #[command(name = "min-n")]
    MinN {
        #[arg(long)]
        r: u32,

        #[arg(long)]
        n_max: usize,

        #[command(flatten)]
        run: RunArgs,

        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("hj: error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Color { word, weights, m, json } => cmd_color(&word, &weights, m, json),
        Command::Verify { r, n, even_r, run, json } => cmd_verify(r, n, even_r, &run, json),
        Command::Scan { coloring, n, r, t, even_r, m, run, json } => {
            cmd_scan(&coloring, n, r, t.as_deref(), even_r, m, &run, json)
        }
        Command::ClaimCheck { cases, seed, max_n, json } => {
            cmd_claim_check(cases, seed, max_n, json)
        }
        Command::Table { r, json } => cmd_table(r, json),
        Command::Pigeonhole { colors, n, r, seed, json } => {
            cmd_pigeonhole(colors, n, r, seed, json)
        }
        Command::Oracle { m, n, r, max_cells, json } => cmd_oracle(m, n, r, max_cells, json),
        Command::MinN { r, n_max, run, json } => cmd_min_n(r, n_max, &run, json),
    }
}

fn report_lines(report: &SearchReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("spec: {}\n", report.spec));
    out.push_str(&format!("templates scanned: {}\n", report.templates_scanned));
    out.push_str(&format!("monochromatic lines: {}\n", report.monochromatic_count));
    match (&report.min_q, &report.witness) {
        (Some(q), Some(witness)) => {
            out.push_str(&format!("min q: {q} (witness {witness})\n"));
        }
        _ => out.push_str("min q: none\n"),
    }
    if !report.q_histogram.is_empty() {
        let parts: Vec<String> = report
            .q_histogram
            .iter()
            .map(|(q, count)| format!("{q}:{count}"))
            .collect();
        out.push_str(&format!("q histogram: {}\n", parts.join(" ")));
    }
    out.push_str(&format!("elapsed: {} ms", report.elapsed.as_millis()));
    out
}

fn cmd_color(text: &str, weights: &WeightArgs, m: Option<u8>, json: bool) -> Result<u8, String> {
    let wv = weights.weights()?;
    let m = m.unwrap_or_else(|| wv.m());
    let word = Word::from_text(text, m).map_err(|e| e.to_string())?;
    let color = tplus_color(&word, &wv).map_err(|e| e.to_string())?;
    let plus = word.plus_extend();
    let contraction = plus.contract();
    if json {
        let value = json!({
            "word": word.to_string(),
            "m": m,
            "r": weights.r,
            "modulus": wv.r(),
            "t": wv.weights(),
            "plus_extension": plus.to_string(),
            "contraction": contraction.to_string(),
            "symbolic": weight_symbols(&contraction),
            "color": color,
        });
        println!("{value}");
    } else {
        println!("{color}");
    }
    Ok(0)
}

fn verdict_json(verdict: &Verdict, r: u32, n: usize, bound: u32) -> serde_json::Value {
    json!({
        "verdict": if verdict.is_verified() { "verified" } else { "counterexample" },
        "r": r,
        "n": n,
        "interval_bound": bound,
        "counterexample": verdict.counterexample().map(|t| t.to_string()),
        "report": verdict.report().to_json(),
    })
}

fn cmd_verify(r: u32, n: usize, even_r: bool, run: &RunArgs, json: bool) -> Result<u8, String> {
    let options = run.options();
    let (verdict, bound) = if even_r {
        (verify_even_remark(r, n, &options).map_err(|e| e.to_string())?, r - 1)
    } else {
        let verdict = verify_theorem(r, n, &options).map_err(|e| {
            if r >= 2 && r.is_multiple_of(2) {
                format!("r={r} is even; the bound holds at r-1, use --even-r")
            } else {
                e.to_string()
            }
        })?;
        (verdict, r)
    };
    if json {
        println!("{}", verdict_json(&verdict, r, n, bound));
    } else {
        match &verdict {
            Verdict::Verified { report } => {
                println!(
                    "verified: no monochromatic line of [3]^{n} has a wildcard set \
                     splitting into fewer than {bound} intervals"
                );
                println!("{}", report_lines(report));
            }
            Verdict::Counterexample { template, report } => {
                println!("counterexample: {template}");
                println!("{}", report_lines(report));
            }
        }
    }
    Ok(u8::from(!verdict.is_verified()))
}

fn build_scan_spec(
    coloring: &str,
    n: Option<usize>,
    r: Option<u32>,
    t: Option<&[i64]>,
    even_r: bool,
    m: Option<u8>,
) -> Result<ColoringSpec, String> {
    if coloring == "tplus" {
        let n = n.ok_or("--coloring tplus needs --n")?;
        let r = r.ok_or("--coloring tplus needs --r")?;
        let args = WeightArgs { r, t: t.map(<[i64]>::to_vec), even_r };
        return Ok(ColoringSpec::tplus(n, args.weights()?));
    }
    if let Some(path) = coloring.strip_prefix("file:") {
        let spec = read_coloring_file(&PathBuf::from(path)).map_err(|e| e.to_string())?;
        for (name, given, have) in [
            ("--m", m.map(u64::from), u64::from(spec.m())),
            ("--n", n.map(|v| v as u64), spec.n() as u64),
            ("--r", r.map(u64::from), u64::from(spec.r())),
        ] {
            if let Some(given) = given {
                if given != have {
                    return Err(format!("{name}={given} contradicts the file header ({have})"));
                }
            }
        }
        return Ok(spec);
    }
    if let Some(seed) = coloring.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| format!("bad seed {seed:?}"))?;
        let n = n.ok_or("--coloring random:<seed> needs --n")?;
        let r = r.ok_or("--coloring random:<seed> needs --r")?;
        return ColoringSpec::random(m.unwrap_or(3), n, r, seed).map_err(|e| e.to_string());
    }
    Err(format!(
        "unknown coloring {coloring:?}; use tplus, file:<path>, or random:<seed>"
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    coloring: &str,
    n: Option<usize>,
    r: Option<u32>,
    t: Option<&[i64]>,
    even_r: bool,
    m: Option<u8>,
    run: &RunArgs,
    json: bool,
) -> Result<u8, String> {
    let spec = build_scan_spec(coloring, n, r, t, even_r, m)?;
    let report = scan(&spec, &run.options()).map_err(|e| e.to_string())?;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report_lines(&report));
    }
    Ok(0)
}

fn cmd_claim_check(cases: u64, seed: u64, max_n: usize, json: bool) -> Result<u8, String> {
    if max_n == 0 {
        return Err("--max-n must be at least 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u64;
    let mut digest = 0xcbf2_9ce4_8422_2325u64;
    let fold = |digest: &mut u64, value: u64| {
        *digest ^= value;
        *digest = digest.wrapping_mul(0x100_0000_01b3);
    };
    for _ in 0..cases {
        let r = rng.gen_range(2..=31u32);
        let t: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..50)).collect();
        let wv = WeightVector::new(r, &t).map_err(|e| e.to_string())?;
        let n = rng.gen_range(1..=max_n);
        let mut symbols: Vec<Symbol> = (0..n)
            .map(|_| match rng.gen_range(0..4u8) {
                3 => Symbol::Star,
                code => Symbol::Letter(code + 1),
            })
            .collect();
        symbols[rng.gen_range(0..n)] = Symbol::Star;
        let template = LineTemplate::new(symbols, 3).map_err(|e| e.to_string())?;
        fold(&mut digest, r as u64);
        fold(&mut digest, template.canonical_index().map_err(|e| e.to_string())?);
        for i in 1..=3u8 {
            let split = claim_eval(&template, i, &wv).map_err(|e| e.to_string())?;
            let direct = tplus_color(&template.point(i).map_err(|e| e.to_string())?, &wv)
                .map_err(|e| e.to_string())?;
            fold(&mut digest, split as u64);
            if split != direct {
                mismatches += 1;
                if mismatches <= 5 {
                    eprintln!(
                        "mismatch: template {template} i={i} r={r} split={split} direct={direct}"
                    );
                }
            }
        }
    }
    let ok = mismatches == 0;
    if json {
        let value = json!({
            "cases": cases,
            "seed": seed,
            "max_n": max_n,
            "mismatches": mismatches,
            "sequence_digest": format!("{digest:016x}"),
            "ok": ok,
        });
        println!("{value}");
    } else {
        println!(
            "{cases} cases, {mismatches} mismatches (seed {seed}, digest {digest:016x}): {}",
            if ok { "ok" } else { "FAILED" }
        );
    }
    Ok(u8::from(!ok))
}

fn cmd_table(r: Option<u32>, json: bool) -> Result<u8, String> {
    let symbolic = |i: u8, l: u8, f: u8| -> Result<String, String> {
        Ok(match h_coefficient(i, l, f).map_err(|e| e.to_string())? {
            0 => "0".to_owned(),
            1 => format!("t{i}"),
            _ => format!("-t{i}"),
        })
    };
    let weights = r
        .map(|r| canonical_weights(r).map_err(|e| e.to_string()))
        .transpose()?;
    if json {
        let mut symbolic_rows = BTreeMap::new();
        let mut numeric_rows = BTreeMap::new();
        for i in 1..=3u8 {
            let mut symbols = Vec::new();
            let mut numbers = Vec::new();
            for (l, f) in H_PAIR_COLUMNS {
                symbols.push(symbolic(i, l, f)?);
                if let Some(wv) = &weights {
                    numbers.push(h(i, l, f, wv).map_err(|e| e.to_string())?);
                }
            }
            symbolic_rows.insert(format!("h{i}"), symbols);
            if weights.is_some() {
                numeric_rows.insert(format!("h{i}"), numbers);
            }
        }
        let value = json!({
            "columns": H_PAIR_COLUMNS.iter().map(|&(l, f)| vec![l, f]).collect::<Vec<_>>(),
            "symbolic": symbolic_rows,
            "numeric": if weights.is_some() { json!(numeric_rows) } else { json!(null) },
            "r": r,
            "t": weights.as_ref().map(|wv| wv.weights().to_vec()),
        });
        println!("{value}");
        return Ok(0);
    }
    let header: Vec<String> = H_PAIR_COLUMNS
        .iter()
        .map(|&(l, f)| format!("({l},{f})"))
        .collect();
    println!("{:6} {}", "(l,f)", header.join("  "));
    for i in 1..=3u8 {
        let row: Vec<String> = H_PAIR_COLUMNS
            .iter()
            .map(|&(l, f)| symbolic(i, l, f))
            .collect::<Result<_, _>>()?;
        let cells: Vec<String> = row
            .iter()
            .zip(&header)
            .map(|(cell, head)| format!("{cell:>width$}", width = head.len()))
            .collect();
        println!("h{i:<5} {}", cells.join("  "));
    }
    if let Some(wv) = &weights {
        println!();
        println!("numeric, r={} t={}:", wv.r(), wv);
        for i in 1..=3u8 {
            let cells: Vec<String> = H_PAIR_COLUMNS
                .iter()
                .zip(&header)
                .map(|(&(l, f), head)| {
                    h(i, l, f, wv)
                        .map(|value| format!("{value:>width$}", width = head.len()))
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<_, _>>()?;
            println!("h{i:<5} {}", cells.join("  "));
        }
    }
    Ok(0)
}

fn cmd_pigeonhole(
    colors: Option<Vec<u32>>,
    n: Option<usize>,
    r: Option<u32>,
    seed: u64,
    json: bool,
) -> Result<u8, String> {
    let colors = match (colors, n, r) {
        (Some(colors), _, _) => colors,
        (None, Some(n), Some(r)) => {
            if r == 0 {
                return Err("--r must be positive".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..=n).map(|_| rng.gen_range(0..r)).collect()
        }
        _ => return Err("pass --colors, or --n with --r (and optional --seed)".into()),
    };
    match pigeonhole_line(&colors) {
        Ok(template) => {
            if json {
                let value = json!({
                    "colors": colors,
                    "n": colors.len() - 1,
                    "template": template.to_string(),
                    "interval_count": template.interval_count(),
                });
                println!("{value}");
            } else {
                println!("{template}");
            }
            Ok(0)
        }
        Err(err) => {
            if json {
                println!("{}", json!({ "colors": colors, "template": null }));
            } else {
                println!("no repeated color: {err}");
            }
            Ok(1)
        }
    }
}

fn cmd_oracle(m: u8, n: usize, r: u32, max_cells: u64, json: bool) -> Result<u8, String> {
    let outcome = decide_all_colorings(m, n, r, &OracleOptions { max_cells })
        .map_err(|e| e.to_string())?;
    if json {
        let value = json!({
            "m": m,
            "n": n,
            "r": r,
            "every_coloring_has_line": outcome.every_coloring_has_line,
            "witness": outcome.witness,
        });
        println!("{value}");
    } else if outcome.every_coloring_has_line {
        println!("true: every {r}-coloring of [{m}]^{n} contains a monochromatic line");
    } else {
        println!("false: a line-free {r}-coloring of [{m}]^{n} exists");
        if let Some(witness) = &outcome.witness {
            let rendered: Vec<String> = witness.iter().map(u32::to_string).collect();
            println!("witness colors (canonical word order): {}", rendered.join(" "));
        }
    }
    Ok(u8::from(!outcome.every_coloring_has_line))
}

fn cmd_min_n(r: u32, n_max: usize, run: &RunArgs, json: bool) -> Result<u8, String> {
    let found = min_n_with_mono_line(r, n_max, &run.options()).map_err(|e| e.to_string())?;
    if json {
        let value = json!({
            "r": r,
            "n_max": n_max,
            "n": found.as_ref().map(|f| f.n),
            "report": found.as_ref().map(|f| f.report.to_json()),
        });
        println!("{value}");
    } else {
        match &found {
            Some(found) => {
                println!("first monochromatic line at n={}", found.n);
                println!("{}", report_lines(&found.report));
            }
            None => println!("no monochromatic line up to n={n_max}"),
        }
    }
    Ok(0)
}

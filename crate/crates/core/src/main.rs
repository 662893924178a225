//! Command-line driver: enumerations, polynomial emitters, and exact
//! verification of the character identities, resonance-family sums,
//! and p-adic decomposition formulas. Exit code 0 means every requested
//! check passed, 1 means a mismatch (details in the report), and 2 means
//! a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mv_exact::chevrep::{fundamental_rep, s_i_laurent, trails_from_minor, generalized_minor};
use mv_exact::g2eval::{augmented, mv_integral};
use mv_exact::lusztig::ToricChart;
use mv_exact::resonance::{
    enumerate_families, epsilon_1, epsilon_2, family_sum, phi_1, phi_2,
};
use mv_exact::rootsys::{CartanDatum, Series};
use mv_exact::tokuyama::{
    g2_sum_v1, g2_sum_v2, gelfand_tsetlin_word, product_side, type_a_sum, verify,
};

#[derive(Parser)]
#[command(name = "mvx", about = "Exact crystal combinatorics and p-adic checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    V1,
    V2,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generalized minors Δ_{Λ_i, w_0Λ_i} and Δ_{Λ_i, w_0s_iΛ_i}.
    Minors {
        #[arg(long, default_value = "G2")]
        series: String,
        #[arg(long, default_value = "212121")]
        word: String,
    },
    /// Count and list the trails behind each coordinate function.
    Trails {
        #[arg(long, default_value = "G2")]
        series: String,
        #[arg(long, default_value = "212121")]
        word: String,
    },
    /// Print the chart coordinate functions 𝔰_i.
    Sfunctions {
        #[arg(long, default_value = "G2")]
        series: String,
        #[arg(long, default_value = "212121")]
        word: String,
    },
    /// Enumerate the crystal B(λ+ρ) with bounding data and weights.
    Crystal {
        #[arg(long, default_value = "G2")]
        series: String,
        #[arg(long, default_value = "212121")]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Evaluate the contribution of one Lusztig datum.
    MvEval {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        datum: String,
    },
    /// Enumerate resonant families for λ.
    Families {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Check that families disjoint from the crystal sum to zero.
    VerifyVanishing {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Check the two-string crystal axioms on resonant families.
    VerifyCrystalAxioms {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Compare a G_2 crystal sum against the deformed character product.
    VerifyTokuyamaG2 {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Variant::V1)]
        variant: Variant,
    },
    /// Compare the type-A standard-contribution sum against the product.
    #[command(name = "verify-tokuyama-typeA")]
    VerifyTokuyamaTypeA {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Sample-check w_k·b_k = 1 for the twisted parametrization.
    PadicGeomalgo {
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Sample-check the SL_4 closed forms h_i(t, w).
    PadicAppendix {
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn parse_series(s: &str) -> Result<CartanDatum, String> {
    let (series, rank) = match s.to_uppercase().as_str() {
        "A1" => (Series::A, 1),
        "A2" => (Series::A, 2),
        "A3" => (Series::A, 3),
        "B2" => (Series::B, 2),
        "G2" => (Series::G, 2),
        other => return Err(format!("unsupported series {other}; use A1..A3, B2, G2")),
    };
    CartanDatum::build_cartan(series, rank).map_err(|e| e.to_string())
}

/// A word given as 1-based digits, e.g. "212121".
fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for c in s.chars() {
        let d = c.to_digit(10).ok_or_else(|| format!("bad word letter {c}"))? as usize;
        if d == 0 || d > rank {
            return Err(format!("word letter {d} out of range 1..={rank}"));
        }
        out.push(d - 1);
    }
    Ok(out)
}

fn parse_vec(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_dominant(s: &str, rank: usize) -> Result<Vec<i64>, String> {
    let v = parse_vec(s)?;
    if v.len() != rank {
        return Err(format!("lambda needs {rank} coordinates"));
    }
    if v.iter().any(|&x| x < 0) {
        return Err(format!("lambda must be dominant, got {v:?}"));
    }
    Ok(v)
}

fn g2_chart() -> ToricChart {
    let g2 = CartanDatum::build_cartan(Series::G, 2).expect("G_2");
    ToricChart::new(&g2, &[1, 0, 1, 0, 1, 0]).expect("G_2 chart")
}

fn emit(format: Format, report: &serde_json::Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Csv | Format::Text => {
            if let Some(rows) = report.get("rows").and_then(|r| r.as_array()) {
                for row in rows {
                    if let Some(cells) = row.as_array() {
                        let line: Vec<String> = cells
                            .iter()
                            .map(|c| c.as_str().map(str::to_string).unwrap_or_else(|| c.to_string()))
                            .collect();
                        println!("{}", line.join(if matches!(format, Format::Csv) { "," } else { "  " }));
                    }
                }
            } else {
                println!("{}", serde_json::to_string_pretty(report).unwrap());
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Minors { series, word } => {
            let datum = parse_series(&series)?;
            let letters = parse_word(&word, datum.rank)?;
            let b_names: Vec<String> = (1..=letters.len()).map(|k| format!("b_{k}")).collect();
            let b_vars: Vec<&str> = b_names.iter().map(|s| s.as_str()).collect();
            let e = datum.weyl_identity();
            let w0 = datum.longest_element();
            let mut rows = Vec::new();
            for i in 0..datum.rank {
                let rep = fundamental_rep(&datum, i).map_err(|e| e.to_string())?;
                let w0si = datum.compose(&w0, &datum.simple_reflection(i));
                let den = generalized_minor(&datum, &rep, &e, &w0, &letters, &b_vars)
                    .map_err(|e| e.to_string())?;
                let num = generalized_minor(&datum, &rep, &e, &w0si, &letters, &b_vars)
                    .map_err(|e| e.to_string())?;
                rows.push(json!([
                    format!("i={}", i + 1),
                    den.to_canonical_string(),
                    num.to_canonical_string()
                ]));
            }
            emit(cli.format, &json!({ "subject": "generalized minors (lowest, adjacent)", "rows": rows }));
            Ok(0)
        }
        Command::Trails { series, word } => {
            let datum = parse_series(&series)?;
            let letters = parse_word(&word, datum.rank)?;
            let b_names: Vec<String> = (1..=letters.len()).map(|k| format!("b_{k}")).collect();
            let b_vars: Vec<&str> = b_names.iter().map(|s| s.as_str()).collect();
            let inv = datum.dynkin_involution();
            let starred: Vec<usize> = letters.iter().map(|&j| inv[j]).collect();
            let mut rows = Vec::new();
            for i in 0..datum.rank {
                let rep = fundamental_rep(&datum, i).map_err(|e| e.to_string())?;
                let e = datum.weyl_identity();
                let w0 = datum.longest_element();
                let w0si = datum.compose(&w0, &datum.simple_reflection(i));
                let minor = generalized_minor(&datum, &rep, &e, &w0si, &starred, &b_vars)
                    .map_err(|e| e.to_string())?;
                let source = rep.highest_weight.clone();
                let target = {
                    let si = datum.act_word_on_weight(&[i], &source);
                    let w0_word = datum.reduced_word_of(&w0);
                    datum.act_word_on_weight(&w0_word, &si)
                };
                let trails = trails_from_minor(&datum, &minor, &starred, &source, &target)
                    .map_err(|e| e.to_string())?;
                rows.push(json!([
                    format!("i={}", i + 1),
                    format!("{} trails", trails.len()),
                    trails
                        .iter()
                        .map(|t| format!("c={:?} d={}", t.c, t.d))
                        .collect::<Vec<_>>()
                        .join("; ")
                ]));
            }
            emit(cli.format, &json!({ "subject": "trail counts", "rows": rows }));
            Ok(0)
        }
        Command::Sfunctions { series, word } => {
            let datum = parse_series(&series)?;
            let letters = parse_word(&word, datum.rank)?;
            let b_names: Vec<String> = (1..=letters.len()).map(|k| format!("b_{k}")).collect();
            let b_vars: Vec<&str> = b_names.iter().map(|s| s.as_str()).collect();
            let mut rows = Vec::new();
            for i in 0..datum.rank {
                let rep = fundamental_rep(&datum, i).map_err(|e| e.to_string())?;
                let s = s_i_laurent(&datum, &rep, i, &letters, &b_vars).map_err(|e| e.to_string())?;
                rows.push(json!([format!("s_{}", i + 1), s.to_canonical_string()]));
            }
            emit(cli.format, &json!({ "subject": "chart coordinate functions", "rows": rows }));
            Ok(0)
        }
        Command::Crystal { series, word, lambda } => {
            let datum = parse_series(&series)?;
            let letters = parse_word(&word, datum.rank)?;
            let lambda = parse_dominant(&lambda, datum.rank)?;
            let chart = ToricChart::new(&datum, &letters).map_err(|e| e.to_string())?;
            let mut rows = vec![json!(["datum", "bounding data", "weight"])];
            for m in chart.enumerate_crystal(&lambda) {
                let s = chart.bounding_data(&lambda, &m);
                let w = chart.weight_of(&m);
                rows.push(json!([format!("{m:?}"), format!("{s:?}"), format!("{w:?}")]));
            }
            emit(cli.format, &json!({ "subject": "crystal members", "rows": rows }));
            Ok(0)
        }
        Command::MvEval { lambda, datum } => {
            let chart = g2_chart();
            let lambda = parse_dominant(&lambda, 2)?;
            let m = parse_vec(&datum)?;
            if m.len() != 6 || m.iter().any(|&x| x < 0) {
                return Err("datum needs six non-negative coordinates".into());
            }
            let plain = mv_integral(&chart, &lambda, &m).map_err(|e| e.to_string())?;
            let tilde = augmented(&chart, &lambda, &m).ok();
            emit(cli.format, &json!({
                "datum": m,
                "plain": plain.coefficient.to_canonical_string(),
                "augmented": tilde.map(|t| t.coefficient.to_canonical_string()),
                "weight": plain.weight,
                "in_crystal": plain.in_crystal,
                "resonant": plain.resonant,
                "totally_resonant": plain.totally_resonant,
                "decoration": plain.decoration,
            }));
            Ok(0)
        }
        Command::Families { lambda, cap } => {
            let chart = g2_chart();
            let lambda = parse_dominant(&lambda, 2)?;
            let mut rows = vec![json!(["head", "size", "relevant", "totally resonant", "weight"])];
            for fam in enumerate_families(&chart, &lambda, cap) {
                rows.push(json!([
                    format!("{:?}", fam.head),
                    fam.members.len(),
                    fam.lambda_relevant,
                    fam.totally_resonant,
                    format!("{:?}", fam.weight)
                ]));
            }
            emit(cli.format, &json!({ "subject": "resonant families", "rows": rows }));
            Ok(0)
        }
        Command::VerifyVanishing { lambda, cap } => {
            let chart = g2_chart();
            let lambda = parse_dominant(&lambda, 2)?;
            let mut failures = Vec::new();
            let mut checked = 0;
            for fam in enumerate_families(&chart, &lambda, cap) {
                if fam.lambda_relevant {
                    continue;
                }
                checked += 1;
                let total = family_sum(&chart, &lambda, &fam);
                if !total.is_zero() {
                    failures.push(json!({
                        "head": fam.head,
                        "sum": total.to_canonical_string(),
                    }));
                }
            }
            let ok = failures.is_empty();
            emit(cli.format, &json!({
                "subject": "external vanishing",
                "families_checked": checked,
                "failures": failures,
                "pass": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::VerifyCrystalAxioms { lambda, cap } => {
            let chart = g2_chart();
            let lambda = parse_dominant(&lambda, 2)?;
            let mut failures = Vec::new();
            let mut truncated = 0;
            let mut full = 0;
            for fam in enumerate_families(&chart, &lambda, cap) {
                let s = chart.bounding_data(&lambda, &fam.head);
                let hw = (s[5] + 1, s[1].min(s[4]) + 1);
                if fam.lambda_relevant {
                    truncated += 1;
                    continue;
                }
                full += 1;
                let expected = ((hw.0 + 1) * (hw.1 + 1)) as usize;
                if fam.members.len() != expected {
                    failures.push(json!({ "head": fam.head, "reason": "grid size" }));
                    continue;
                }
                for m in &fam.members {
                    let e1 = epsilon_1(&chart, &lambda, m);
                    let e2 = epsilon_2(&chart, &lambda, m);
                    let f1 = phi_1(&chart, &lambda, m);
                    let f2 = phi_2(&chart, &lambda, m);
                    // Weight strings of an A1×A1 crystal with highest
                    // weight hw: φ_i + ε_i is the string length.
                    if e1 + f1 != hw.0 || e2 + f2 != hw.1 {
                        failures.push(json!({
                            "head": fam.head, "member": m, "reason": "string lengths"
                        }));
                    }
                }
            }
            let ok = failures.is_empty();
            emit(cli.format, &json!({
                "subject": "two-string crystal axioms",
                "full_families": full,
                "truncated_families": truncated,
                "failures": failures,
                "pass": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::VerifyTokuyamaG2 { lambda, variant } => {
            let chart = g2_chart();
            let g2 = CartanDatum::build_cartan(Series::G, 2).expect("G_2");
            let lambda = parse_dominant(&lambda, 2)?;
            let sum = match variant {
                Variant::V1 => g2_sum_v1(&chart, &lambda),
                Variant::V2 => g2_sum_v2(&chart, &lambda),
            }
            .map_err(|e| e.to_string())?;
            let product = product_side(&g2, &lambda).map_err(|e| e.to_string())?;
            let report = verify(&sum, &product);
            emit(cli.format, &json!({
                "subject": "deformed character identity",
                "lambda": lambda,
                "equal": report.equal,
                "diff": report.diff.to_canonical_string(),
            }));
            Ok(if report.equal { 0 } else { 1 })
        }
        Command::VerifyTokuyamaTypeA { rank, lambda } => {
            if !(1..=3).contains(&rank) {
                return Err("rank must be 1, 2, or 3".into());
            }
            let datum = CartanDatum::build_cartan(Series::A, rank).expect("A_r");
            let lambda = parse_dominant(&lambda, rank)?;
            let chart = ToricChart::new(&datum, &gelfand_tsetlin_word(rank))
                .map_err(|e| e.to_string())?;
            let sum = type_a_sum(&chart, &lambda).map_err(|e| e.to_string())?;
            let product = product_side(&datum, &lambda).map_err(|e| e.to_string())?;
            let report = verify(&sum, &product);
            emit(cli.format, &json!({
                "subject": "standard contribution identity",
                "rank": rank,
                "lambda": lambda,
                "equal": report.equal,
                "diff": report.diff.to_canonical_string(),
            }));
            Ok(if report.equal { 0 } else { 1 })
        }
        Command::PadicGeomalgo { rank, word, prime, samples, seed } => {
            if !(2..=3).contains(&rank) {
                return Err("rank must be 2 or 3".into());
            }
            let datum = CartanDatum::build_cartan(Series::A, rank).expect("A_r");
            let letters = match word {
                Some(w) => parse_word(&w, rank)?,
                None => gelfand_tsetlin_word(rank),
            };
            let report = mv_exact::padic::verify_geom_algo(&datum, &letters, prime, samples, seed)
                .map_err(|e| e.to_string())?;
            let ok = report.matches == report.samples;
            emit(cli.format, &json!({
                "subject": "inverse coordinates under the twisted parametrization",
                "samples": report.samples,
                "matches": report.matches,
                "pass": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::PadicAppendix { prime, samples, seed } => {
            let report = mv_exact::padic::verify_appendix(prime, samples, seed)
                .map_err(|e| e.to_string())?;
            let ok = report.matches == report.samples;
            emit(cli.format, &json!({
                "subject": "SL_4 closed forms for the peeled coordinates",
                "samples": report.samples,
                "matches": report.matches,
                "samples_with_m4_zero": report.m4_zero_samples,
                "pass": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

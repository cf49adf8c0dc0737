//! `matknap` command line: solvers for multiplicative matrix equations and
//! the symmetric 2x2 census. Reports are JSON (rationals as "p/q" strings)
//! or CSV for census runs.
//!
//! Exit codes: 0 success (including empty solution sets), 2 invalid input,
//! 3 precondition violation (singular matrix, non-commuting knapsack, ...).

use std::fmt;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use matknap::arith::{mat_pow, ArithError, Mat};
use matknap::census::{
    build_dependent_tuple, census_pairs, census_tuples, count_fixed_det, CensusConfig,
    CensusReport,
};
use matknap::heisenberg::{compose, solve_pair, solve_triple, HeisKind, HeisMat};
use matknap::io::{mat_from_json, mat_to_json, mats_from_json, ParseError};
use matknap::knapsack::{
    abc_bounded_search, commuting_knapsack_with_kmax, power_equality_with_kmax, SolveStatus,
};
use matknap::spectra::torsion_order;

#[derive(Parser)]
#[command(name = "matknap", about = "exact solvers for multiplicative matrix equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve A1^k1 = A2^k2 for the full solution subgroup
    PowerEq {
        /// JSON array of two matrices, or @file
        #[arg(long)]
        matrices: String,
        #[arg(long)]
        kmax: Option<i64>,
        /// re-verify every reported witness by exact powering
        #[arg(long)]
        verify: bool,
    },
    /// Solve A1^k1 ... As^ks = I for commuting matrices
    Knapsack {
        #[arg(long)]
        matrices: String,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        verify: bool,
    },
    /// Solve A1^k1 A2^k2 A3^k3 = I for Heisenberg matrices
    HeisenbergTriple {
        /// JSON array of three 3x3 unitriangular matrices, or @file
        #[arg(long)]
        matrices: String,
        #[arg(long)]
        verify: bool,
    },
    /// Solve A1^k1 A2^k2 = I for Heisenberg matrices
    HeisenbergPair {
        #[arg(long)]
        matrices: String,
        #[arg(long)]
        verify: bool,
    },
    /// Smallest k >= 1 with A^k = I, if any
    Torsion {
        #[arg(long)]
        matrix: String,
    },
    /// Bounded search for A^x B^y C^z = I with nonzero exponents
    AbcSearch {
        #[arg(long)]
        matrices: String,
        #[arg(long, default_value_t = 12)]
        kmax: i64,
        #[arg(long)]
        verify: bool,
    },
    /// Census of multiplicatively dependent symmetric 2x2 pairs
    CensusPairs {
        /// single height or inclusive range a..b
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Count symmetric 2x2 matrices with a fixed determinant
    CensusFixedDet {
        #[arg(long = "H")]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        det: i64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Census or sampled estimate of dependent s-tuples
    CensusTuples {
        #[arg(long)]
        s: usize,
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        kmax: Option<i64>,
        /// sample this many tuples instead of exhausting
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Generate dependent tuples with no dependent subtuple
    Fixtures {
        #[arg(long, default_value_t = 4)]
        s: usize,
        #[arg(long, default_value_t = 6)]
        entry_bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        verify: bool,
    },
}

enum CliError {
    Invalid(String),
    Precondition(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::DimensionMismatch { .. } => CliError::Invalid(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Invalid(_) => ExitCode::from(2),
                CliError::Precondition(_) => ExitCode::from(3),
            }
        }
    }
}

/// Inline JSON or @path indirection.
fn load_input(arg: &str) -> Result<Value, CliError> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{path}: {e}")))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("malformed JSON: {e}")))
}

fn parse_mats(arg: &str, expected: Option<usize>) -> Result<Vec<Mat>, CliError> {
    let mats = mats_from_json(&load_input(arg)?)?;
    if let Some(n) = expected {
        if mats.len() != n {
            return Err(CliError::Invalid(format!("expected {n} matrices, got {}", mats.len())));
        }
    }
    Ok(mats)
}

fn parse_h_range(s: &str) -> Result<Vec<i64>, CliError> {
    let parse_one = |t: &str| {
        t.parse::<i64>()
            .map_err(|_| CliError::Invalid(format!("bad height value {t:?}")))
            .and_then(|h| {
                if h >= 1 { Ok(h) } else { Err(CliError::Invalid("height must be >= 1".into())) }
            })
    };
    if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (parse_one(a)?, parse_one(b)?);
        if lo > hi {
            return Err(CliError::Invalid(format!("empty height range {s}")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![parse_one(s)?])
    }
}

fn default_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("MATKNAP_WORKERS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get().min(8)).unwrap_or(1))
        .max(1)
}

fn big_str(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_str).collect())
}

fn basis_json(basis: &[Vec<BigInt>]) -> Value {
    Value::Array(basis.iter().map(|r| vec_json(r)).collect())
}

/// prod mats[i]^{k_i} = I, exactly.
fn check_relation(mats: &[Mat], k: &[BigInt]) -> Result<(), CliError> {
    let mut prod = Mat::identity(mats[0].dim());
    for (m, ki) in mats.iter().zip(k) {
        let e = ki
            .to_i64()
            .ok_or_else(|| CliError::Precondition("witness exponent out of range".into()))?;
        prod = prod.mul(&mat_pow(m, e)?)?;
    }
    if prod.is_identity() {
        Ok(())
    } else {
        Err(CliError::Precondition(format!("reported solution {k:?} failed verification")))
    }
}

fn heis_from_mat(m: &Mat) -> Result<HeisMat, CliError> {
    let ok = m.dim() == 3
        && m.at(0, 0).is_integer()
        && *m.at(0, 0) == matknap::arith::rat_int(1)
        && *m.at(1, 1) == matknap::arith::rat_int(1)
        && *m.at(2, 2) == matknap::arith::rat_int(1)
        && m.at(1, 0).eq(&matknap::arith::rat_int(0))
        && m.at(2, 0).eq(&matknap::arith::rat_int(0))
        && m.at(2, 1).eq(&matknap::arith::rat_int(0));
    if !ok {
        return Err(CliError::Precondition("expected a 3x3 upper unitriangular matrix".into()));
    }
    Ok(HeisMat::new(m.at(0, 1).clone(), m.at(1, 2).clone(), m.at(0, 2).clone()))
}

fn heis_report(mats: &[HeisMat], set: &matknap::heisenberg::HeisSolutionSet, verify: bool) -> Value {
    let kind = match set.kind {
        HeisKind::LatticeWithNonzeroFilter => "lattice_with_nonzero_filter",
        HeisKind::Finite => "finite",
        HeisKind::Empty => "empty",
    };
    let lattice = set.lattice.as_ref().map(|l| basis_json(&l.basis)).unwrap_or(Value::Null);
    let finite = basis_json(&set.finite_solutions);
    let mut verified = Value::Null;
    if verify {
        for sol in &set.finite_solutions {
            assert!(compose(mats, sol).is_identity());
        }
        if let Some(l) = &set.lattice {
            for b in &l.basis {
                assert!(compose(mats, b).is_identity());
            }
        }
        verified = json!(true);
    }
    json!({
        "kind": kind,
        "lattice_basis": lattice,
        "finite_solutions": finite,
        "verified": verified,
    })
}

fn census_csv(reports: &[CensusReport]) -> String {
    let mut out = String::from(CensusReport::csv_header());
    for r in reports {
        out.push('\n');
        out.push_str(&r.csv_row());
    }
    out
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::PowerEq { matrices, kmax, verify } => {
            let mats = parse_mats(&matrices, Some(2))?;
            let sol = power_equality_with_kmax(&mats[0], &mats[1], kmax)?;
            if verify {
                for w in &sol.witnesses {
                    // A1^k1 = A2^k2  <=>  A1^k1 A2^-k2 = I
                    check_relation(&[mats[0].clone(), mats[1].clone()], &[w[0].clone(), -&w[1]])?;
                }
            }
            let report = json!({
                "subgroup_basis": basis_json(&sol.subgroup.basis),
                "witnesses": basis_json(&sol.witnesses),
                "status": sol.status.as_str(),
                "verified": if verify { json!(true) } else { Value::Null },
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Cmd::Knapsack { matrices, kmax, verify } => {
            let mats = parse_mats(&matrices, None)?;
            if mats.is_empty() {
                return Err(CliError::Invalid("need at least one matrix".into()));
            }
            let sol = commuting_knapsack_with_kmax(&mats, kmax)?;
            if matches!(sol.status, SolveStatus::Inapplicable) {
                return Err(CliError::Precondition("matrices do not commute".into()));
            }
            if verify {
                for b in &sol.lattice.basis {
                    check_relation(&mats, b)?;
                }
                if let Some(w) = &sol.nonzero_witness {
                    check_relation(&mats, w)?;
                }
            }
            let report = json!({
                "basis": basis_json(&sol.lattice.basis),
                "witness": sol.nonzero_witness.as_ref().map(|w| vec_json(w)).unwrap_or(Value::Null),
                "status": sol.status.as_str(),
                "verified": if verify { json!(true) } else { Value::Null },
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Cmd::HeisenbergTriple { matrices, verify } => {
            let mats = parse_mats(&matrices, Some(3))?;
            let hs: Vec<HeisMat> = mats.iter().map(heis_from_mat).collect::<Result<_, _>>()?;
            let set = solve_triple(&hs[0], &hs[1], &hs[2]);
            println!("{}", serde_json::to_string_pretty(&heis_report(&hs, &set, verify)).unwrap());
            Ok(())
        }
        Cmd::HeisenbergPair { matrices, verify } => {
            let mats = parse_mats(&matrices, Some(2))?;
            let hs: Vec<HeisMat> = mats.iter().map(heis_from_mat).collect::<Result<_, _>>()?;
            let set = solve_pair(&hs[0], &hs[1]);
            println!("{}", serde_json::to_string_pretty(&heis_report(&hs, &set, verify)).unwrap());
            Ok(())
        }
        Cmd::Torsion { matrix } => {
            let m = mat_from_json(&load_input(&matrix)?)?;
            let order = torsion_order(&m);
            println!("{}", json!({ "order": order }));
            Ok(())
        }
        Cmd::AbcSearch { matrices, kmax, verify } => {
            let mats = parse_mats(&matrices, Some(3))?;
            let target = Mat::identity(mats[0].dim());
            let sols = abc_bounded_search(&mats[0], &mats[1], &mats[2], &target, kmax)?;
            if verify {
                for &(x, y, z) in &sols {
                    check_relation(&mats, &[BigInt::from(x), BigInt::from(y), BigInt::from(z)])?;
                }
            }
            let report = json!({
                "kmax": kmax,
                "solutions": sols.iter().map(|&(x, y, z)| json!([x, y, z])).collect::<Vec<_>>(),
                "verified": if verify { json!(true) } else { Value::Null },
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Cmd::CensusPairs { h, kmax, workers, seed, format } => {
            let heights = parse_h_range(&h)?;
            let workers = default_workers(workers);
            let mut reports = Vec::new();
            for height in heights {
                let mut cfg = CensusConfig::new(height);
                if let Some(k) = kmax {
                    cfg.kmax = k;
                }
                cfg.workers = workers;
                cfg.seed = seed;
                reports.push(census_pairs(&cfg));
            }
            match format.as_str() {
                "csv" => println!("{}", census_csv(&reports)),
                "json" => {
                    let rows: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "H": r.h,
                                "total": r.total_matrices,
                                "torsion": r.torsion_count,
                                "dependent": r.dependent_pairs,
                                "undecided": r.undecided_pairs,
                                "seconds": r.elapsed_seconds,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "workers": workers,
                            "reports": rows,
                        }))
                        .unwrap()
                    );
                }
                other => return Err(CliError::Invalid(format!("unknown format {other:?}"))),
            }
            Ok(())
        }
        Cmd::CensusFixedDet { h, det, format } => {
            if det == 0 {
                return Err(CliError::Precondition("determinant must be nonzero".into()));
            }
            let heights = parse_h_range(&h)?;
            let rows: Vec<(i64, u64)> =
                heights.iter().map(|&height| (height, count_fixed_det(height, det))).collect();
            match format.as_str() {
                "csv" => {
                    println!("H,d,count");
                    for (height, count) in rows {
                        println!("{height},{det},{count}");
                    }
                }
                "json" => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|(height, count)| json!({"H": height, "d": det, "count": count}))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&Value::Array(rows)).unwrap());
                }
                other => return Err(CliError::Invalid(format!("unknown format {other:?}"))),
            }
            Ok(())
        }
        Cmd::CensusTuples { s, h, kmax, sample, seed, format } => {
            let heights = parse_h_range(&h)?;
            if heights.len() != 1 {
                return Err(CliError::Invalid("census-tuples takes a single height".into()));
            }
            if s < 3 {
                return Err(CliError::Precondition("tuple census needs s >= 3".into()));
            }
            let kmax = kmax.unwrap_or(8);
            let report = census_tuples(s, heights[0], kmax, sample, seed)?;
            match format.as_str() {
                "csv" => {
                    println!("s,H,kmax,mode,examined,dependent,undecided,seconds");
                    println!(
                        "{},{},{},{},{},{},{},{:.3}",
                        report.s,
                        report.h,
                        report.kmax,
                        if report.exhaustive { "exhaustive" } else { "sampled" },
                        report.examined,
                        report.dependent,
                        report.undecided,
                        report.elapsed_seconds
                    );
                }
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "s": report.s,
                        "H": report.h,
                        "kmax": report.kmax,
                        "mode": if report.exhaustive { "exhaustive" } else { "sampled" },
                        "examined": report.examined,
                        "dependent": report.dependent,
                        "undecided": report.undecided,
                        "seconds": report.elapsed_seconds,
                    }))
                    .unwrap()
                ),
                other => return Err(CliError::Invalid(format!("unknown format {other:?}"))),
            }
            Ok(())
        }
        Cmd::Fixtures { s, entry_bound, seed, count, verify } => {
            if s < 3 {
                return Err(CliError::Precondition("tuples need s >= 3".into()));
            }
            if entry_bound < 2 {
                return Err(CliError::Precondition("entry bound must be >= 2".into()));
            }
            let mut out = Vec::new();
            for i in 0..count {
                let (tuple, witness) = build_dependent_tuple(s, entry_bound, seed.wrapping_add(i));
                if verify {
                    check_relation(&tuple, &witness)?;
                }
                out.push(json!({
                    "tuple": tuple.iter().map(mat_to_json).collect::<Vec<_>>(),
                    "witness": vec_json(&witness),
                }));
            }
            println!("{}", serde_json::to_string_pretty(&Value::Array(out)).unwrap());
            Ok(())
        }
    }
}

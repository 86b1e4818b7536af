//! `concordance` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::covers::{classify, cover_scan, prime_power_cover_scan};
use crate::family::{build_witness_family, nonconcordance_report, WitnessFamily};
use crate::knotfile::parse_knot_file;
use crate::laurent::LaurentPoly;
use crate::rational::{format_rational, parse_rational};
use crate::report::{sha256_hex, Report, TOOL_VERSION};
use crate::seifert::{arf_from_alexander, SeifertMatrix};
use crate::signature::{sample_csv, signature_function, SignatureOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_CERTIFICATE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Companions larger than this are not rebuilt as dense matrices by `family`.
pub const MAX_VERIFIED_MULTIPLICITY: u64 = 1024;
/// `certify` enumerates `2^{4g} - 1` patterns per pair.
pub const MAX_CERTIFY_GENUS: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "concordance",
    version,
    about = "Knot concordance invariants from Seifert matrices"
)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit the timestamp so that output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Relative eigenvalue gap for floating signature evaluation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial, Arf invariant, signature and genus.
    Invariants { file: PathBuf },
    /// Levine-Tristram signature function and its integral rho.
    Signature {
        file: PathBuf,
        /// Also write `theta,sigma` samples to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1000, requires = "csv")]
        samples: usize,
    },
    /// Orders of H_1 of branched cyclic covers.
    Covers {
        file: PathBuf,
        #[arg(long, default_value_t = 27)]
        max_n: u64,
        /// Scan every n, not only prime powers.
        #[arg(long)]
        all_n: bool,
    },
    /// Cyclotomic classification of the Alexander polynomial.
    Livingston { file: PathBuf },
    /// Build the witness family J_1, .., J_N.
    Family(FamilyArgs),
    /// Certify pairwise non-concordance of the infected knots K_i.
    Certify {
        #[command(flatten)]
        params: OptionalFamilyArgs,
        /// Load the family from JSON instead of building it.
        #[arg(long, conflicts_with_all = ["c", "genus", "count"])]
        family: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Bound on the rho-invariants of M_{K # -K} (a positive rational).
    #[arg(long)]
    c: String,
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    count: usize,
}

#[derive(Args, Debug)]
struct OptionalFamilyArgs {
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
}

struct Outcome {
    digest: String,
    results: Value,
    exit: i32,
    csv: Option<(PathBuf, String)>,
}

type CmdResult = Result<Outcome, String>;

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code together with the report, when one was produced.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> (i32, Option<Report>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_INPUT_ERROR
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return (code, None);
        }
    };
    let mut opts = match SignatureOptions::from_env() {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return (EXIT_INPUT_ERROR, None);
        }
    };
    if !(cli.tolerance > 0.0 && cli.tolerance < 0.1) {
        let _ = writeln!(
            err,
            "error: --tolerance must lie in (0, 0.1), got {}",
            cli.tolerance
        );
        return (EXIT_INPUT_ERROR, None);
    }
    opts.gap_tolerance = cli.tolerance;

    let outcome = match &cli.command {
        Command::Invariants { file } => invariants(file),
        Command::Signature { file, csv, samples } => {
            signature(file, csv.as_deref(), *samples, &opts)
        }
        Command::Covers { file, max_n, all_n } => covers(file, *max_n, *all_n),
        Command::Livingston { file } => livingston(file),
        Command::Family(args) => family(args, &opts),
        Command::Certify { params, family } => certify(params, family.as_deref()),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return (EXIT_INPUT_ERROR, None);
        }
    };
    if let Some((path, text)) = &outcome.csv {
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return (EXIT_INPUT_ERROR, None);
        }
    }
    let timestamp = (!cli.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let report = Report {
        command: argv[1..]
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        input_digest: outcome.digest,
        results: outcome.results,
        tool_version: TOOL_VERSION.to_string(),
        tolerances: opts,
        timestamp,
    };
    let text = if cli.json {
        report.to_json() + "\n"
    } else {
        report.render_human()
    };
    let _ = out.write_all(text.as_bytes());
    (outcome.exit, Some(report))
}

fn read_input(path: &Path) -> Result<Vec<u8>, String> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}

fn load_knot(path: &Path) -> Result<(String, Option<String>, SeifertMatrix, usize), String> {
    let bytes = read_input(path)?;
    let desc = parse_knot_file(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((
        sha256_hex(&bytes),
        desc.name.clone(),
        desc.seifert_matrix().clone(),
        desc.infections().len(),
    ))
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p,
    })
}

fn ok(digest: String, results: Value) -> CmdResult {
    Ok(Outcome {
        digest,
        results,
        exit: EXIT_OK,
        csv: None,
    })
}

fn invariants(path: &Path) -> CmdResult {
    let (digest, name, v, infections) = load_knot(path)?;
    let delta = v.alexander_poly();
    let determinant = delta
        .eval_int(-1)
        .map(|d| format_rational(&num_traits::Signed::abs(&d)))
        .unwrap_or_default();
    ok(
        digest,
        json!({
            "name": name,
            "genus": v.genus(),
            "infections": infections,
            "alexander": poly_json(&delta),
            "arf": arf_from_alexander(&delta),
            "signature": v.ordinary_signature(),
            "determinant": determinant,
        }),
    )
}

fn signature(
    path: &Path,
    csv: Option<&Path>,
    samples: usize,
    opts: &SignatureOptions,
) -> CmdResult {
    let (digest, name, v, _) = load_knot(path)?;
    let f = signature_function(&v, opts).map_err(|e| e.to_string())?;
    let rho = f.integral();
    let jumps: Vec<Value> = f
        .jumps
        .iter()
        .map(|j| {
            json!({
                "lo": format_rational(&j.lo),
                "hi": format_rational(&j.hi),
                "exact": j.is_exact(),
                "cyclotomic_index": j.cyclotomic_index,
                "approx": j.midpoint_f64(),
            })
        })
        .collect();
    let csv = match csv {
        Some(p) => {
            if samples == 0 {
                return Err("--samples must be positive".into());
            }
            Some((
                p.to_path_buf(),
                sample_csv(&v, samples, opts).map_err(|e| e.to_string())?,
            ))
        }
        None => None,
    };
    Ok(Outcome {
        digest,
        results: json!({
            "name": name,
            "alexander": poly_json(&v.alexander_poly()),
            "jumps": jumps,
            "values": f.values,
            "rho": {
                "value": format_rational(&rho.value),
                "error_bound": format_rational(&rho.error_bound),
                "exact": rho.is_exact(),
                "approx": rho.approx(),
            },
            "csv": csv.as_ref().map(|(p, _)| p.display().to_string()),
        }),
        exit: EXIT_OK,
        csv,
    })
}

fn covers(path: &Path, max_n: u64, all_n: bool) -> CmdResult {
    let (digest, name, v, _) = load_knot(path)?;
    let delta = v.alexander_poly();
    let reports = if all_n {
        cover_scan(&delta, max_n)
    } else {
        prime_power_cover_scan(&delta, max_n)
    }
    .map_err(|e| e.to_string())?;
    let classification = classify(&delta).map_err(|e| e.to_string())?;
    ok(
        digest,
        json!({
            "name": name,
            "alexander": poly_json(&delta),
            "max_n": max_n,
            "prime_powers_only": !all_n,
            "reports": reports,
            "classification": classification,
        }),
    )
}

fn livingston(path: &Path) -> CmdResult {
    let (digest, name, v, _) = load_knot(path)?;
    let delta = v.alexander_poly();
    let classification = classify(&delta).map_err(|e| e.to_string())?;
    ok(
        digest,
        json!({
            "name": name,
            "alexander": poly_json(&delta),
            "classification": classification,
        }),
    )
}

fn build(c: &str, genus: usize, count: usize) -> Result<(String, WitnessFamily), String> {
    let c = parse_rational(c).map_err(|e| format!("--c: {e}"))?;
    let fam = build_witness_family(&c, genus, count).map_err(|e| e.to_string())?;
    let canonical = format!("c={};genus={genus};count={count}", format_rational(&c));
    Ok((sha256_hex(canonical.as_bytes()), fam))
}

fn family(args: &FamilyArgs, opts: &SignatureOptions) -> CmdResult {
    let (digest, fam) = build(&args.c, args.genus, args.count)?;
    let mut checks = Vec::with_capacity(fam.len());
    for (k, &m) in fam.multiplicities.iter().enumerate() {
        if m > MAX_VERIFIED_MULTIPLICITY {
            checks.push(json!({"index": k + 1, "multiplicity": m, "verified": false}));
            continue;
        }
        let single = WitnessFamily::from_multiplicities(fam.c.clone(), fam.g, vec![m])
            .map_err(|e| e.to_string())?;
        let check = single
            .verify_companions(opts)
            .map_err(|e| e.to_string())?
            .remove(0);
        checks.push(json!({
            "index": k + 1,
            "multiplicity": m,
            "verified": true,
            "arf": check.arf,
            "rho": format_rational(&check.rho.value),
            "rho_matches": check.rho_matches,
        }));
    }
    ok(
        digest,
        json!({
            "family": fam,
            "satisfies_recursion": fam.satisfies_recursion(),
            "companions": checks,
        }),
    )
}

fn certify(params: &OptionalFamilyArgs, family_file: Option<&Path>) -> CmdResult {
    let (digest, fam) = match family_file {
        Some(path) => {
            let bytes = read_input(path)?;
            let fam: WitnessFamily =
                serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
            (sha256_hex(&bytes), fam)
        }
        None => match (&params.c, params.genus, params.count) {
            (Some(c), Some(g), Some(n)) => build(c, g, n)?,
            _ => return Err("certify needs --c, --genus and --count, or --family FILE".into()),
        },
    };
    if fam.g > MAX_CERTIFY_GENUS {
        return Err(format!(
            "genus {} exceeds {MAX_CERTIFY_GENUS}: too many patterns to enumerate",
            fam.g
        ));
    }
    let report = nonconcordance_report(&fam).map_err(|e| e.to_string())?;
    let exit = if report.valid {
        EXIT_OK
    } else {
        EXIT_INVALID_CERTIFICATE
    };
    Ok(Outcome {
        digest,
        results: json!({
            "family": fam,
            "satisfies_recursion": fam.satisfies_recursion(),
            "valid": report.valid,
            "certificates": report.certificates,
        }),
        exit,
        csv: None,
    })
}

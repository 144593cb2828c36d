use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zptower::error::Error;
use zptower::input::{parse_document, Document};
use zptower::iwasawa;
use zptower::oracle::brute_force_spanning_trees;
use zptower::picard;
use zptower::report;
use zptower::tower;

#[derive(Parser)]
#[command(
    name = "zptower",
    version,
    about = "Towers of branched graph covers in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document, check the graph and voltage axioms, and report
    /// the connectedness criterion
    Validate { file: PathBuf },
    /// Build levels 0..=n and print their statistics
    Tower {
        file: PathBuf,
        #[arg(long)]
        levels: u32,
        #[arg(long, value_enum)]
        emit: Option<EmitFormat>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Spanning-tree count of one level, with its p-part
    Kappa {
        file: PathBuf,
        #[arg(long)]
        level: u32,
        /// Also print the sandpile group invariant factors
        #[arg(long)]
        group: bool,
    },
    /// Characteristic series and the invariants mu, lambda
    Invariants {
        file: PathBuf,
        #[arg(long = "t-prec", default_value_t = iwasawa::DEFAULT_T_PREC)]
        t_prec: usize,
        #[arg(long = "p-prec", default_value_t = iwasawa::DEFAULT_P_PREC)]
        p_prec: u32,
    },
    /// Full pipeline: growth law plus the structural property checks;
    /// emits a JSON report on stdout
    Verify {
        file: PathBuf,
        #[arg(long = "max-level")]
        max_level: u32,
        /// Exit with code 4 when the invariants are uncertified
        #[arg(long)]
        strict: bool,
    },
    /// Brute-force spanning-tree count compared against the determinant
    Oracle {
        file: PathBuf,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Dot,
    Json,
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_COMPUTATION: u8 = 3;
const EXIT_UNCERTIFIED: u8 = 4;

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Input(_)
        | Error::InvalidGraph(_)
        | Error::EmptyGraph
        | Error::UnknownVertex(_)
        | Error::Disconnected
        | Error::DisconnectedLevel(_)
        | Error::IndeterminateCriterion
        | Error::NotPrime(_)
        | Error::BadArgument(_) => EXIT_VALIDATION,
        _ => EXIT_COMPUTATION,
    }
}

fn load(file: &PathBuf) -> Result<Document, Error> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", file.display())))?;
    parse_document(&text)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Tower {
            file,
            levels,
            emit,
            out,
        } => cmd_tower(&file, levels, emit, &out),
        Command::Kappa { file, level, group } => cmd_kappa(&file, level, group),
        Command::Invariants {
            file,
            t_prec,
            p_prec,
        } => cmd_invariants(&file, t_prec, p_prec),
        Command::Verify {
            file,
            max_level,
            strict,
        } => cmd_verify(&file, max_level, strict),
        Command::Oracle { file, level } => cmd_oracle(&file, level),
    }
}

fn cmd_validate(file: &PathBuf) -> Result<u8, Error> {
    let doc = load(file)?;
    let base = doc.vg.base();
    println!(
        "ok: {} vertices, {} edges, p = {}",
        base.num_vertices(),
        base.num_undirected_edges(),
        doc.vg.prime()
    );
    println!("graph axioms: ok");
    println!(
        "voltage anti-symmetry: {}",
        if doc.vg.voltage_antisymmetry_ok() {
            "ok"
        } else {
            "violated"
        }
    );
    let ramified: Vec<String> = (0..base.num_vertices())
        .filter_map(|v| match doc.vg.ramification(v) {
            tower::Ramification::Ramified(k) => Some(format!("{}: k = {k}", base.vertex_name(v))),
            tower::Ramification::Unramified => None,
        })
        .collect();
    println!(
        "ramification: {}",
        if ramified.is_empty() {
            "none".to_string()
        } else {
            ramified.join(", ")
        }
    );
    match tower::connectedness_criterion(&doc.vg) {
        Ok(rep) => {
            println!(
                "connectedness criterion: {} (min cycle valuation {})",
                rep.unramified_tower_connected,
                rep.min_cycle_valuation
                    .map_or("inf".to_string(), |v| v.to_string())
            );
        }
        Err(Error::IndeterminateCriterion) => {
            println!("connectedness criterion: indeterminate at the given precision");
        }
        Err(e) => return Err(e),
    }
    Ok(0)
}

fn cmd_tower(
    file: &PathBuf,
    levels: u32,
    emit: Option<EmitFormat>,
    out: &PathBuf,
) -> Result<u8, Error> {
    let doc = load(file)?;
    if emit.is_some() {
        fs::create_dir_all(out)
            .map_err(|e| Error::Input(format!("cannot create {}: {e}", out.display())))?;
    }
    for n in 0..=levels {
        let level = tower::build_level(&doc.vg, n)?;
        let g = level.graph();
        println!(
            "level {n}: vertices = {}, edges = {}, connected = {}",
            g.num_vertices(),
            g.num_undirected_edges(),
            g.is_connected()?
        );
        match emit {
            Some(EmitFormat::Dot) => {
                let path = out.join(format!("level_{n}.dot"));
                fs::write(&path, report::level_to_dot(&level, &doc))
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            Some(EmitFormat::Json) => {
                let path = out.join(format!("level_{n}.json"));
                let value = report::level_to_json(&level, &doc);
                fs::write(
                    &path,
                    serde_json::to_string_pretty(&value).expect("serializable"),
                )
                .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            None => {}
        }
    }
    Ok(0)
}

fn cmd_kappa(file: &PathBuf, level_n: u32, group: bool) -> Result<u8, Error> {
    let doc = load(file)?;
    let level = tower::build_level(&doc.vg, level_n)?;
    let g = level.graph();
    if !g.is_connected()? {
        return Err(Error::DisconnectedLevel(level_n));
    }
    let k = picard::kappa(g)?;
    let ordp = zptower::matrix::ord_p(&k, doc.vg.prime()).expect("kappa is positive");
    println!("kappa(X_{level_n}) = {k}");
    println!("ord_{}(kappa) = {ordp}", doc.vg.prime());
    if group {
        let pic = picard::picard_group(g)?;
        let factors: Vec<String> = pic
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        println!(
            "invariant factors: [{}]",
            if factors.is_empty() {
                "trivial group".to_string()
            } else {
                factors.join(", ")
            }
        );
        let pp = picard::p_part(&pic, doc.vg.prime());
        println!(
            "p-part: p^{} (per factor {:?})",
            pp.total, pp.factor_valuations
        );
    }
    Ok(0)
}

fn cmd_invariants(file: &PathBuf, t_prec: usize, p_prec: u32) -> Result<u8, Error> {
    let doc = load(file)?;
    let (cs, inv) = iwasawa::series_and_invariants(&doc.vg, t_prec, p_prec)?;
    match (&cs.exact, &cs.exact_coeffs) {
        (Some(f), Some(coeffs)) => {
            let (shift, poly) = cs.exact_normalized().expect("exact path");
            if shift >= 0 && f.max_exp().unwrap_or(0) >= 0 {
                // a polynomial in u is a polynomial in T: print it in full
                let deg = f.max_exp().expect("nonzero") as usize;
                println!(
                    "f = {}",
                    report::format_t_series(&f.expand_series(deg + 1), None)
                );
            } else {
                println!("f = {}", report::format_t_series(coeffs, Some(cs.t_prec)));
            }
            let terms: Vec<String> = poly.iter().map(|(e, c)| format!("[{e}, {c}]")).collect();
            println!(
                "exact form: u^{shift} * poly, poly coefficients (exp, coeff): {}",
                terms.join(" ")
            );
        }
        _ => {
            let coeffs: Vec<_> = (0..cs.series.t_precision())
                .map(|i| cs.series.signed_coeff(i))
                .collect();
            println!(
                "f = {}  (mod {}^{}, T^{})",
                report::format_t_series(&coeffs, Some(cs.t_prec)),
                cs.p,
                cs.p_prec,
                cs.t_prec
            );
        }
    }
    println!("mu = {}", inv.mu);
    println!("lambda_f = {}", inv.lambda_f);
    println!("lambda_pic = {}", inv.lambda_pic);
    println!("certified = {} ({})", inv.certified, inv.note);
    Ok(0)
}

fn cmd_verify(file: &PathBuf, max_level: u32, strict: bool) -> Result<u8, Error> {
    let doc = load(file)?;
    let outcome = iwasawa::full_verify(&doc.vg, max_level)?;
    let value = report::verify_outcome_to_json(&outcome);
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("serializable")
    );
    if !outcome.success() {
        let stage = if !outcome.report.growth_ok {
            "growth law"
        } else if !outcome.checks.cover_axioms {
            "cover axioms"
        } else if !outcome.checks.laplacian_compatibility {
            "Laplacian compatibility"
        } else if !outcome.checks.kappa_divisibility {
            "kappa divisibility"
        } else if !outcome.checks.f_vanishes_at_origin {
            "f(0) = 0"
        } else {
            "determinant factorization"
        };
        eprintln!("verification failed at stage: {stage}");
        return Ok(EXIT_COMPUTATION);
    }
    if strict && !outcome.report.certified {
        eprintln!(
            "invariants are uncertified: {}",
            outcome.report.certification_note
        );
        return Ok(EXIT_UNCERTIFIED);
    }
    Ok(0)
}

fn cmd_oracle(file: &PathBuf, level_n: u32) -> Result<u8, Error> {
    let doc = load(file)?;
    let level = tower::build_level(&doc.vg, level_n)?;
    let g = level.graph();
    let by_enumeration = brute_force_spanning_trees(g)?;
    let by_determinant = picard::kappa(g)?;
    println!("enumeration: {by_enumeration}");
    println!("determinant: {by_determinant}");
    if by_enumeration == by_determinant {
        println!("match: yes");
        Ok(0)
    } else {
        eprintln!("mismatch between enumeration and determinant");
        Ok(EXIT_COMPUTATION)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

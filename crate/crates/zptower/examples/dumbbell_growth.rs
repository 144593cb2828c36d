//! Growth-law verification on the dumbbell graph over p = 3, run twice:
//! once unramified and once with the second vertex ramified.  The
//! ramification changes lambda and therefore the slope of the
//! valuation sequence.

use zptower::graph::SerreGraph;
use zptower::iwasawa::{full_verify, series_and_invariants};
use zptower::padic::PadicScalar;
use zptower::report::format_t_series;
use zptower::tower::{Ramification, VoltageGraph};

fn dumbbell(ramified: bool) -> Result<VoltageGraph, zptower::Error> {
    let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)])?;
    let volts = vec![
        PadicScalar::exact(3, 1),
        PadicScalar::exact(3, 0),
        PadicScalar::exact(3, 11),
    ];
    let ram = if ramified {
        vec![Ramification::Unramified, Ramification::Ramified(1)]
    } else {
        vec![Ramification::Unramified, Ramification::Unramified]
    };
    VoltageGraph::new(base, 3, volts, ram)
}

fn run(label: &str, vg: &VoltageGraph) -> Result<(), zptower::Error> {
    println!("== {label} ==");
    let (cs, inv) = series_and_invariants(vg, 8, 16)?;
    println!(
        "f(T) = {}   mu = {}, lambda_pic = {}",
        format_t_series(cs.exact_coeffs.as_ref().unwrap(), Some(8)),
        inv.mu,
        inv.lambda_pic
    );
    let outcome = full_verify(vg, 4)?;
    let report = &outcome.report;
    println!(" n  vertices  kappa                     ord_3");
    for l in &report.levels {
        println!(
            "{:>2}  {:>8}  {:<24}  {}",
            l.n,
            l.vertices,
            l.kappa.to_string(),
            l.ordp
        );
    }
    println!(
        "fit: ord_3 kappa(X_n) = {}*3^n + {}*n + {} for n >= {}",
        report.mu, report.lambda_pic, report.nu, report.n0
    );
    println!(
        "growth verified: {}   structural checks: {}",
        report.growth_ok,
        outcome.checks.all_pass()
    );
    println!();
    Ok(())
}

fn main() -> Result<(), zptower::Error> {
    run("unramified dumbbell", &dumbbell(false)?)?;
    run("dumbbell, second vertex ramified (k = 1)", &dumbbell(true)?)?;
    Ok(())
}

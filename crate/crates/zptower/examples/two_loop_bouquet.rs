//! A first tower, end to end: one vertex carrying two loops with odd
//! voltages over p = 2, ramified with exponent 2.  Builds the finite
//! levels, counts spanning trees exactly, and reads off the growth law.

use num_bigint::BigInt;

use zptower::graph::SerreGraph;
use zptower::iwasawa::{series_and_invariants, verify_growth};
use zptower::matrix::ord_p;
use zptower::padic::PadicScalar;
use zptower::picard::kappa;
use zptower::report::format_t_series;
use zptower::tower::{build_level, connectedness_criterion, Ramification, VoltageGraph};

fn main() -> Result<(), zptower::Error> {
    let base = SerreGraph::from_pairs(1, &[(0, 0), (0, 0)])?;
    let vg = VoltageGraph::new(
        base,
        2,
        vec![PadicScalar::exact(2, 3), PadicScalar::exact(2, 5)],
        vec![Ramification::Ramified(2)],
    )?;

    let crit = connectedness_criterion(&vg)?;
    println!(
        "connectedness criterion: {}",
        crit.unramified_tower_connected
    );
    println!();

    println!(" n  vertices  edges  kappa        ord_2");
    for n in 0..=5u32 {
        let level = build_level(&vg, n)?;
        let g = level.graph();
        let k = kappa(g)?;
        println!(
            "{n:>2}  {:>8}  {:>5}  {:<11}  {}",
            g.num_vertices(),
            g.num_undirected_edges(),
            k.to_string(),
            ord_p(&k, 2).unwrap()
        );
    }
    println!();

    let (cs, inv) = series_and_invariants(&vg, 16, 16)?;
    let coeffs: Vec<BigInt> = cs.exact_coeffs.clone().unwrap();
    println!("f(T) = {}", format_t_series(&coeffs[..6], None));
    println!(
        "mu = {}, lambda = {} (degree-zero part)",
        inv.mu, inv.lambda_pic
    );

    let report = verify_growth(&vg, 5)?;
    println!(
        "growth law: ord_2 kappa(X_n) = {}*2^n + {}*n + {} for n >= {}  (verified: {})",
        report.mu, report.lambda_pic, report.nu, report.n0, report.growth_ok
    );
    Ok(())
}

//! The arithmetic carriers: exact Laurent polynomials in u = 1 + T,
//! binomial series rho(a) = (1 + T)^a, the distinguished polynomials
//! omega_k, and mu/lambda extraction.

use num_bigint::BigUint;

use zptower::padic::{
    binomial_series, laurent_to_series, mu_lambda_exact, mu_lambda_series, omega_poly, LaurentU,
    PadicScalar,
};
use zptower::report::format_t_series;

fn main() -> Result<(), zptower::Error> {
    // omega_k(T) = (1 + T)^(p^k) - 1
    for (p, k) in [(2u64, 2u32), (3, 1)] {
        let w = omega_poly(p, k)?;
        println!(
            "omega_{k} over Z_{p}:  {}",
            format_t_series(&w.expand_series(1 + p.pow(k) as usize), None)
        );
    }
    println!();

    // rho is a group morphism into the units of the series ring
    let m = 8;
    let n = 12;
    let a = PadicScalar::exact(3, 11);
    let b = PadicScalar::exact(3, -4);
    let sum = a.checked_add(&b)?;
    let lhs = binomial_series(&a, m, n)?.mul(&binomial_series(&b, m, n)?)?;
    let rhs = binomial_series(&sum, m, n)?;
    println!("rho(11) * rho(-4) == rho(7): {}", lhs == rhs);

    // a truncated exponent needs guard digits beyond the target precision
    let t = PadicScalar::truncated(3, BigUint::from(11u32), 9);
    match binomial_series(&t, m, 12) {
        Err(e) => println!("rho of a 9-digit exponent at 12-digit output: {e}"),
        Ok(_) => unreachable!(),
    }

    // exact Laurent identities: 2 - u - 1/u = -T^2 / u
    let lhs = LaurentU::constant(2)
        .sub(&LaurentU::u_pow(1))
        .sub(&LaurentU::u_pow(-1));
    println!();
    println!(
        "2 - u - 1/u expands to {}",
        format_t_series(&lhs.expand_series(6), Some(6))
    );

    // mu/lambda: exact path is always certified
    let f = omega_poly(3, 1)?.mul(&LaurentU::constant(9));
    let ml = mu_lambda_exact(&f, 3)?;
    println!();
    println!(
        "9 * omega_1 = {}: mu = {}, lambda = {} (certified: {})",
        format_t_series(&f.expand_series(4), None),
        ml.mu,
        ml.lambda,
        ml.certified
    );

    // the truncated path flags what a finite window cannot certify
    let series = laurent_to_series(&f, 3, 8, 6);
    let ml = mu_lambda_series(&series, None)?;
    println!(
        "same series mod (3^6, T^8): mu = {}, lambda = {}, certified: {}",
        ml.mu, ml.lambda, ml.certified
    );
    println!("  note: {}", ml.note);
    let ml = mu_lambda_series(&series, Some(5))?;
    println!(
        "with an external bound lambda <= 5: certified: {}",
        ml.certified
    );
    Ok(())
}

//! Randomized invariants across the crate boundaries.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

use zptower::graph::SerreGraph;
use zptower::matrix::ord_p;
use zptower::padic::{binomial_series, laurent_to_series, mu_lambda_exact, LaurentU, PadicScalar};
use zptower::picard::{kappa_at, picard_group};

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

/// A few Laurent terms with small exponents and coefficients.
fn laurent() -> impl Strategy<Value = LaurentU> {
    prop::collection::vec((-5i64..=5, -9i64..=9), 0..5).prop_map(|terms| {
        terms.into_iter().fold(LaurentU::zero(), |acc, (e, c)| {
            acc.add(&LaurentU::term(e, c))
        })
    })
}

/// Connected multigraph on up to 5 vertices: a random spanning tree plus
/// random extra edges (loops allowed).
fn connected_graph() -> impl Strategy<Value = SerreGraph> {
    (1usize..=5)
        .prop_flat_map(|nv| {
            let tree = prop::collection::vec(0usize..usize::MAX, nv.saturating_sub(1));
            let extra = prop::collection::vec((0..nv, 0..nv), 0..5);
            (Just(nv), tree, extra)
        })
        .prop_map(|(nv, tree, extra)| {
            let mut pairs: Vec<(usize, usize)> = tree
                .into_iter()
                .enumerate()
                .map(|(i, r)| (r % (i + 1), i + 1))
                .collect();
            pairs.extend(extra);
            SerreGraph::from_pairs(nv, &pairs).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// rho(a) * rho(b) = rho(a + b) for exact integer exponents.
    #[test]
    fn binomial_group_law_exact(p in small_prime(), a in -60i64..=60, b in -60i64..=60) {
        let m = 12usize;
        let n = 8u32;
        let pa = binomial_series(&PadicScalar::exact(p, a), m, n).unwrap();
        let pb = binomial_series(&PadicScalar::exact(p, b), m, n).unwrap();
        let pab = binomial_series(&PadicScalar::exact(p, a + b), m, n).unwrap();
        prop_assert_eq!(pa.mul(&pb).unwrap(), pab);
    }

    /// The same law for truncated exponents carrying guard digits.
    #[test]
    fn binomial_group_law_truncated(p in small_prime(), a in any::<u64>(), b in any::<u64>()) {
        let m = 10usize;
        let n = 6u32;
        let guard = m as u32 / (p as u32 - 1) + 2;
        let prec = n + guard;
        let sa = PadicScalar::truncated(p, BigUint::from(a), prec);
        let sb = PadicScalar::truncated(p, BigUint::from(b), prec);
        let sum = sa.checked_add(&sb).unwrap();
        let pa = binomial_series(&sa, m, n).unwrap();
        let pb = binomial_series(&sb, m, n).unwrap();
        let pab = binomial_series(&sum, m, n).unwrap();
        prop_assert_eq!(pa.mul(&pb).unwrap(), pab);
    }

    /// Substituting u = 1 + T commutes with ring operations.
    #[test]
    fn laurent_expansion_is_a_ring_map(p in small_prime(), a in laurent(), b in laurent()) {
        let m = 10usize;
        let n = 10u32;
        let conv = |x: &LaurentU| laurent_to_series(x, p, m, n);
        prop_assert_eq!(conv(&a.add(&b)), conv(&a).add(&conv(&b)).unwrap());
        prop_assert_eq!(conv(&a.mul(&b)), conv(&a).mul(&conv(&b)).unwrap());
    }

    /// mu and lambda ignore multiplication by the units u^c.
    #[test]
    fn invariants_ignore_unit_shifts(p in small_prime(), f in laurent(), c in -8i64..=8) {
        prop_assume!(!f.is_zero());
        let base = mu_lambda_exact(&f, p).unwrap();
        let shifted = mu_lambda_exact(&f.mul(&LaurentU::u_pow(c)), p).unwrap();
        prop_assert_eq!((base.mu, base.lambda), (shifted.mu, shifted.lambda));
    }

    /// A Laurent polynomial with a unit coefficient has mu = 0,
    /// certified: the u- and T-coefficient vectors differ by a
    /// unimodular integer change of basis, so a unit survives reduction
    /// mod p.
    #[test]
    fn unit_coefficient_forces_mu_zero(p in small_prime(), f in laurent()) {
        let has_unit = f.terms().any(|(_, c)| ord_p(c, p) == Some(0));
        prop_assume!(has_unit);
        let ml = mu_lambda_exact(&f, p).unwrap();
        prop_assert_eq!(ml.mu, 0);
        prop_assert!(ml.certified);
    }

    /// Deterministic spanning trees, and cycle sums scale linearly.
    #[test]
    fn spanning_tree_and_cycle_scaling(g in connected_graph(), scale in 1i64..=7) {
        let t1 = g.spanning_tree().unwrap();
        let t2 = g.spanning_tree().unwrap();
        prop_assert_eq!(&t1, &t2);
        let weight = |e: usize| {
            let pair = e / 2;
            let sign = if e.is_multiple_of(2) { 1 } else { -1 };
            Some(BigInt::from(sign * (pair as i64 + 2)))
        };
        let base = g.fundamental_cycle_sums(&t1, BigInt::zero(), weight).unwrap();
        let scaled = g
            .fundamental_cycle_sums(&t1, BigInt::zero(), |e| weight(e).map(|w| w * scale))
            .unwrap();
        for (b, s) in base.iter().zip(&scaled) {
            prop_assert_eq!(b * scale, s.clone());
        }
    }

    /// Kirchhoff does not care which vertex is deleted, and the SNF
    /// product reproduces the count.
    #[test]
    fn reduced_laplacian_choice_is_irrelevant(g in connected_graph()) {
        let k0 = kappa_at(&g, 0).unwrap();
        for v in 1..g.num_vertices() {
            prop_assert_eq!(kappa_at(&g, v).unwrap(), k0.clone());
        }
        prop_assert_eq!(picard_group(&g).unwrap().order, k0);
    }

    /// Laplacian rows and columns sum to zero on arbitrary multigraphs.
    #[test]
    fn laplacian_is_doubly_balanced(g in connected_graph()) {
        let l = g.laplacian_matrix();
        let n = g.num_vertices();
        for i in 0..n {
            let row: BigInt = (0..n).map(|j| l.entry(i, j).clone()).sum();
            let col: BigInt = (0..n).map(|j| l.entry(j, i).clone()).sum();
            prop_assert!(row.is_zero() && col.is_zero());
        }
    }
}

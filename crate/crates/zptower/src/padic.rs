//! Exact and truncated p-adic arithmetic.
//!
//! Three carriers are provided:
//!
//! * [`PadicScalar`] — an element of `Z_p`, either an exact integer or a
//!   residue known mod `p^N`;
//! * [`TruncatedSeries`] — an element of `Z_p[[T]]` known mod `(p^N, T^M)`;
//! * [`LaurentU`] — an exact integer Laurent polynomial in `u = 1 + T`.
//!
//! When every input is an exact integer, all computations stay in
//! [`LaurentU`] with arbitrary-precision coefficients and no truncation
//! at all; the series form is only an output format.  Truncated carriers
//! exist for genuinely p-adic voltages and never silently exceed their
//! stated precision.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::ord_p;

/// `p^k` as `u64`, or an overflow error.
pub fn checked_pow_u64(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k)
        .ok_or_else(|| Error::Overflow(format!("{p}^{k} does not fit in 64 bits")))
}

fn pow_biguint(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// The first `m` binomial coefficients `C(a, 0), ..., C(a, m-1)` of an
/// integer argument, computed exactly.  Every division in the iteration
/// `C(a, i) = C(a, i-1) * (a - i + 1) / i` is exact over the integers.
pub fn binomial_coefficients(a: &BigInt, m: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(m);
    if m == 0 {
        return out;
    }
    let mut c = BigInt::one();
    out.push(c.clone());
    for i in 1..m {
        c = c * (a - BigInt::from(i as i64 - 1)) / BigInt::from(i);
        out.push(c.clone());
    }
    out
}

/// How much is known about the p-adic valuation of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// `ord_p` is exactly this value.
    Exact(u32),
    /// The scalar vanishes mod `p^N`; the valuation is at least `N`.
    AtLeast(u32),
    /// The scalar is exactly zero.
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ScalarRepr {
    Exact(BigInt),
    Truncated { value: BigUint, precision: u32 },
}

/// An element of `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicScalar {
    p: u64,
    repr: ScalarRepr,
}

impl PadicScalar {
    pub fn exact(p: u64, value: impl Into<BigInt>) -> PadicScalar {
        PadicScalar {
            p,
            repr: ScalarRepr::Exact(value.into()),
        }
    }

    /// A residue known mod `p^precision`; the value is reduced on entry.
    pub fn truncated(p: u64, value: BigUint, precision: u32) -> PadicScalar {
        let value = value % pow_biguint(p, precision);
        PadicScalar {
            p,
            repr: ScalarRepr::Truncated { value, precision },
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, ScalarRepr::Exact(_))
    }

    /// Forgets exactness, keeping only the residue mod `p^precision`.
    pub fn forced_truncation(&self, precision: u32) -> PadicScalar {
        match &self.repr {
            ScalarRepr::Exact(x) => {
                let m = BigInt::from(pow_biguint(self.p, precision));
                let r = x
                    .mod_floor(&m)
                    .to_biguint()
                    .expect("mod_floor is non-negative");
                PadicScalar::truncated(self.p, r, precision)
            }
            ScalarRepr::Truncated {
                value,
                precision: q,
            } => PadicScalar::truncated(self.p, value.clone(), precision.min(*q)),
        }
    }

    pub fn negated(&self) -> PadicScalar {
        match &self.repr {
            ScalarRepr::Exact(x) => PadicScalar::exact(self.p, -x),
            ScalarRepr::Truncated { value, precision } => {
                let m = pow_biguint(self.p, *precision);
                let v = if value.is_zero() {
                    BigUint::zero()
                } else {
                    m - value
                };
                PadicScalar {
                    p: self.p,
                    repr: ScalarRepr::Truncated {
                        value: v,
                        precision: *precision,
                    },
                }
            }
        }
    }

    pub fn checked_add(&self, other: &PadicScalar) -> Result<PadicScalar> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let p = self.p;
        Ok(match (&self.repr, &other.repr) {
            (ScalarRepr::Exact(a), ScalarRepr::Exact(b)) => PadicScalar::exact(p, a + b),
            (ScalarRepr::Exact(_), ScalarRepr::Truncated { precision, .. })
            | (ScalarRepr::Truncated { precision, .. }, ScalarRepr::Exact(_)) => {
                let n = *precision;
                let a = self.forced_truncation(n);
                let b = other.forced_truncation(n);
                a.checked_add(&b)?
            }
            (
                ScalarRepr::Truncated {
                    value: a,
                    precision: na,
                },
                ScalarRepr::Truncated {
                    value: b,
                    precision: nb,
                },
            ) => {
                let n = (*na).min(*nb);
                PadicScalar::truncated(p, a + b, n)
            }
        })
    }

    /// What is known about `ord_p` of this scalar.
    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            ScalarRepr::Exact(x) => match ord_p(x, self.p) {
                Some(v) => Valuation::Exact(v),
                None => Valuation::Infinite,
            },
            ScalarRepr::Truncated { value, precision } => {
                if value.is_zero() {
                    Valuation::AtLeast(*precision)
                } else {
                    let v = ord_p(&BigInt::from(value.clone()), self.p)
                        .expect("nonzero residue has finite valuation");
                    Valuation::Exact(v)
                }
            }
        }
    }

    /// The residue mod `p^n` as a machine integer.  Truncated scalars
    /// must carry at least `n` digits.
    pub fn residue_mod(&self, n: u32) -> Result<u64> {
        let modulus = checked_pow_u64(self.p, n)?;
        match &self.repr {
            ScalarRepr::Exact(x) => {
                let r = x.mod_floor(&BigInt::from(modulus));
                Ok(r.to_u64().expect("residue fits by construction"))
            }
            ScalarRepr::Truncated { value, precision } => {
                if *precision < n {
                    return Err(Error::Precision(format!(
                        "voltage known mod {}^{precision} but level needs {} digits",
                        self.p, n
                    )));
                }
                Ok((value % BigUint::from(modulus))
                    .to_u64()
                    .expect("residue fits"))
            }
        }
    }

    /// An exact integer representative (the stored integer, or the
    /// canonical residue for truncated scalars).
    pub fn integer_representative(&self) -> BigInt {
        match &self.repr {
            ScalarRepr::Exact(x) => x.clone(),
            ScalarRepr::Truncated { value, .. } => BigInt::from(value.clone()),
        }
    }
}

impl std::ops::Add for PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: PadicScalar) -> PadicScalar {
        self.checked_add(&rhs)
            .expect("prime mismatch in scalar addition")
    }
}

/// An element of `Z_p[[T]]` known mod `(p^N, T^M)`.
///
/// Coefficients are canonical residues in `[0, p^N)`; arithmetic
/// reconciles mismatched precisions by taking the minimum of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u64,
    p_prec: u32,
    t_prec: usize,
    modulus: BigUint,
    coeffs: Vec<BigUint>,
}

impl TruncatedSeries {
    pub fn zero(p: u64, p_prec: u32, t_prec: usize) -> TruncatedSeries {
        assert!(p_prec >= 1 && t_prec >= 1, "precisions must be positive");
        TruncatedSeries {
            p,
            p_prec,
            t_prec,
            modulus: pow_biguint(p, p_prec),
            coeffs: vec![BigUint::zero(); t_prec],
        }
    }

    pub fn one(p: u64, p_prec: u32, t_prec: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(p, p_prec, t_prec);
        s.coeffs[0] = BigUint::one() % &s.modulus;
        s
    }

    pub fn from_signed_coeffs(
        p: u64,
        p_prec: u32,
        t_prec: usize,
        coeffs: &[BigInt],
    ) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(p, p_prec, t_prec);
        let m = BigInt::from(s.modulus.clone());
        for (i, c) in coeffs.iter().take(t_prec).enumerate() {
            s.coeffs[i] = c
                .mod_floor(&m)
                .to_biguint()
                .expect("mod_floor is non-negative");
        }
        s
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn p_precision(&self) -> u32 {
        self.p_prec
    }

    pub fn t_precision(&self) -> usize {
        self.t_prec
    }

    pub fn coeff(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    /// Representative in `(-p^N/2, p^N/2]`, for readable output.
    pub fn signed_coeff(&self, i: usize) -> BigInt {
        let c = BigInt::from(self.coeffs[i].clone());
        let m = BigInt::from(self.modulus.clone());
        if &c * 2 > m {
            c - m
        } else {
            c
        }
    }

    /// Reduces to coarser precisions (no-op when already coarser).
    pub fn reduce_to(&self, p_prec: u32, t_prec: usize) -> TruncatedSeries {
        let p_prec = p_prec.min(self.p_prec);
        let t_prec = t_prec.min(self.t_prec);
        let mut s = TruncatedSeries::zero(self.p, p_prec, t_prec);
        for i in 0..t_prec {
            s.coeffs[i] = &self.coeffs[i] % &s.modulus;
        }
        s
    }

    fn reconcile(&self, other: &TruncatedSeries) -> Result<(TruncatedSeries, TruncatedSeries)> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let n = self.p_prec.min(other.p_prec);
        let m = self.t_prec.min(other.t_prec);
        Ok((self.reduce_to(n, m), other.reduce_to(n, m)))
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (a, mut b) = self.reconcile(other)?;
        for i in 0..b.t_prec {
            b.coeffs[i] = (&a.coeffs[i] + &b.coeffs[i]) % &b.modulus;
        }
        Ok(b)
    }

    pub fn neg(&self) -> TruncatedSeries {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            if !c.is_zero() {
                *c = &s.modulus - &*c;
            }
        }
        s
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (a, b) = self.reconcile(other)?;
        let mut out = TruncatedSeries::zero(a.p, a.p_prec, a.t_prec);
        for i in 0..a.t_prec {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..a.t_prec - i {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &a.coeffs[i] * &b.coeffs[j];
                out.coeffs[i + j] = (&out.coeffs[i + j] + prod) % &out.modulus;
            }
        }
        Ok(out)
    }

    pub fn is_visibly_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `ord_p` of coefficient `i`, capped at the p-precision `N`.
    pub fn visible_ord(&self, i: usize) -> u32 {
        if self.coeffs[i].is_zero() {
            self.p_prec
        } else {
            ord_p(&BigInt::from(self.coeffs[i].clone()), self.p).expect("nonzero")
        }
    }
}

/// `rho(a) = (1 + T)^a` mod `(p^N, T^M)`.
///
/// For a truncated scalar the input must carry a guard of
/// `floor(M / (p - 1)) + 2` digits beyond `N`, which absorbs the
/// divisions by `i` in the binomial iteration (`ord_p(i!) <= M/(p-1)`).
pub fn binomial_series(a: &PadicScalar, t_prec: usize, p_prec: u32) -> Result<TruncatedSeries> {
    let p = a.prime();
    if let ScalarRepr::Truncated { precision, .. } = &a.repr {
        let guard = (t_prec as u32) / (p as u32 - 1).max(1) + 2;
        if *precision < p_prec + guard {
            return Err(Error::Precision(format!(
                "binomial series to {t_prec} terms mod {p}^{p_prec} needs the exponent mod \
                 {p}^{}, have {p}^{precision}",
                p_prec + guard
            )));
        }
    }
    let rep = a.integer_representative();
    let coeffs = binomial_coefficients(&rep, t_prec);
    Ok(TruncatedSeries::from_signed_coeffs(
        p, p_prec, t_prec, &coeffs,
    ))
}

/// An exact integer Laurent polynomial in `u = 1 + T`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentU {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentU {
    pub fn zero() -> LaurentU {
        LaurentU::default()
    }

    pub fn one() -> LaurentU {
        LaurentU::term(0, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> LaurentU {
        LaurentU::term(0, c.into())
    }

    pub fn term(exp: i64, coeff: impl Into<BigInt>) -> LaurentU {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentU { terms }
    }

    /// `u^exp`
    pub fn u_pow(exp: i64) -> LaurentU {
        LaurentU::term(exp, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn insert_add(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentU) -> LaurentU {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentU {
        LaurentU {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentU) -> LaurentU {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentU) -> LaurentU {
        let mut out = LaurentU::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentU {
        if c.is_zero() {
            return LaurentU::zero();
        }
        LaurentU {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Value at `u = 1`, i.e. the power series evaluated at `T = 0`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact coefficients of the first `m` powers of `T` in the power
    /// series expansion under `u = 1 + T` (negative powers of `u`
    /// expand via the binomial series of a negative integer exponent).
    pub fn expand_series(&self, m: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); m];
        for (e, c) in &self.terms {
            let bins = binomial_coefficients(&BigInt::from(*e), m);
            for (i, b) in bins.iter().enumerate() {
                out[i] += c * b;
            }
        }
        out
    }

    /// Reduction of the exact expansion mod `(p^N, T^M)`.
    pub fn to_truncated(&self, p: u64, t_prec: usize, p_prec: u32) -> TruncatedSeries {
        TruncatedSeries::from_signed_coeffs(p, p_prec, t_prec, &self.expand_series(t_prec))
    }

    /// Dense coefficients after shifting the lowest exponent to zero.
    /// Returns `(coeffs, shift)` with `self = u^shift * poly(coeffs)`.
    fn to_dense_poly(&self) -> (Vec<BigInt>, i64) {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return (Vec::new(), 0),
        };
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (coeffs, lo)
    }

    fn from_dense_poly(coeffs: Vec<BigInt>, shift: i64) -> LaurentU {
        let mut out = LaurentU::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            out.insert_add(shift + i as i64, c);
        }
        out
    }

    /// Exact division; panics if `other` does not divide `self`.  Only
    /// called where divisibility is guaranteed (Bareiss elimination).
    pub fn div_exact(&self, other: &LaurentU) -> LaurentU {
        assert!(!other.is_zero(), "division by the zero Laurent polynomial");
        if self.is_zero() {
            return LaurentU::zero();
        }
        let (mut rem, sa) = self.to_dense_poly();
        let (d, sd) = other.to_dense_poly();
        let dd = d.len() - 1;
        assert!(rem.len() >= d.len(), "inexact Laurent division (degree)");
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let lead = &rem[k + dd];
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(&d[dd]);
            assert!(
                r.is_zero(),
                "inexact Laurent division (leading coefficient)"
            );
            for i in 0..=dd {
                let delta = &q * &d[i];
                rem[k + i] -= delta;
            }
            quo[k] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact Laurent division (remainder)"
        );
        LaurentU::from_dense_poly(quo, sa - sd)
    }
}

/// `omega_k(T) = (1 + T)^(p^k) - 1 = u^(p^k) - 1`.
pub fn omega_poly(p: u64, k: u32) -> Result<LaurentU> {
    let e = checked_pow_u64(p, k)?;
    let e = i64::try_from(e)
        .map_err(|_| Error::Overflow(format!("{p}^{k} exceeds the exponent range")))?;
    Ok(LaurentU::u_pow(e).sub(&LaurentU::one()))
}

/// Substitutes `u = 1 + T` and reduces mod `(p^N, T^M)`.
pub fn laurent_to_series(f: &LaurentU, p: u64, t_prec: usize, p_prec: u32) -> TruncatedSeries {
    f.to_truncated(p, t_prec, p_prec)
}

/// The Iwasawa invariants of a nonzero power series: `mu` is the least
/// coefficient valuation and `lambda` the first index attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuLambda {
    pub mu: u32,
    pub lambda: usize,
    pub certified: bool,
    pub note: String,
}

/// Invariants from the exact Laurent carrier.  The unit `u^c` carrying
/// the lowest exponent has `mu = lambda = 0`, so the invariants are read
/// off the exact integer polynomial that remains; the result is always
/// certified.
pub fn mu_lambda_exact(f: &LaurentU, p: u64) -> Result<MuLambda> {
    if f.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let lo = f.min_exp().expect("nonzero");
    let hi = f.max_exp().expect("nonzero");
    let poly = f.mul(&LaurentU::u_pow(-lo));
    let deg = (hi - lo) as usize;
    let coeffs = poly.expand_series(deg + 1);
    let mut mu = u32::MAX;
    let mut lambda = 0usize;
    for (i, c) in coeffs.iter().enumerate() {
        if let Some(v) = ord_p(c, p) {
            if v < mu {
                mu = v;
                lambda = i;
            }
        }
    }
    Ok(MuLambda {
        mu,
        lambda,
        certified: true,
        note: format!(
            "exact path: invariants of the integer polynomial after removing the unit u^{lo}"
        ),
    })
}

/// Invariants from a truncated series.  Let `m` be the least visible
/// coefficient valuation (capped at `N`) and `i0` the first index
/// attaining it.  The pair is certified when `m = 0` (no unseen
/// coefficient can go lower), or when the caller supplies an external
/// bound `lambda < lambda_bound < M`; otherwise coefficients beyond
/// `T^M` could in principle carry a smaller valuation and the result is
/// flagged uncertified.
pub fn mu_lambda_series(f: &TruncatedSeries, lambda_bound: Option<usize>) -> Result<MuLambda> {
    let n = f.p_precision();
    let m_terms = f.t_precision();
    let mut min_ord = n;
    let mut first = None;
    for i in 0..m_terms {
        let v = f.visible_ord(i);
        if v < min_ord {
            min_ord = v;
            first = Some(i);
        }
    }
    let Some(i0) = first else {
        return Err(Error::ZeroSeries);
    };
    let (certified, note) = if min_ord == 0 {
        (
            true,
            "mu = 0 is attained by a visible unit coefficient".to_string(),
        )
    } else {
        match lambda_bound {
            Some(b) if b < m_terms && i0 <= b => {
                (true, format!("certified by the external bound lambda <= {b} < M = {m_terms}"))
            }
            Some(b) => (
                false,
                format!("external bound {b} does not certify the window (M = {m_terms}, first minimum at {i0})"),
            ),
            None => (
                false,
                format!(
                    "coefficients beyond T^{m_terms} could carry valuation below {min_ord}; \
                     supply an external lambda bound or use exact voltages"
                ),
            ),
        }
    };
    Ok(MuLambda {
        mu: min_ord,
        lambda: i0,
        certified,
        note,
    })
}

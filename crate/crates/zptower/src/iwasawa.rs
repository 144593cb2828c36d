//! The characteristic series of a tower and the growth of the p-part.
//!
//! With vertices ordered unramified-first, the tower data determines an
//! `s x s` matrix `D - B(T)` over `Z_p[[T]]`: `D` carries the base
//! valencies on the unramified diagonal, the unramified columns of `B`
//! carry `rho(alpha(e)) = (1 + T)^alpha(e)` summed over the edges into
//! each row vertex, and each ramified column is zero except for
//! `-omega_k(T)` on the diagonal.  The determinant
//! `f(T) = det(D - B(T))` generates the characteristic ideal of the
//! tower's Picard module times `(T)`, so `mu(f)` and `lambda(f) - 1`
//! drive the asymptotic growth `ord_p kappa(X_n) = mu p^n + lambda n + nu`.
//!
//! Integer voltages keep the whole computation in the exact Laurent ring
//! `Z[u, 1/u]` with `u = 1 + T`; truncated voltages fall back to series
//! arithmetic mod `(p^N, T^M)` with certification tracking.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::ord_p;
use crate::padic::{
    binomial_series, laurent_to_series, mu_lambda_exact, mu_lambda_series, omega_poly, LaurentU,
    TruncatedSeries,
};
use crate::picard::kappa;
use crate::tower::{build_level, connectedness_criterion, projection, VoltageGraph};

/// Default p-adic coefficient precision for the truncated path.
pub const DEFAULT_P_PREC: u32 = 16;
/// Default number of series coefficients.
pub const DEFAULT_T_PREC: usize = 32;
/// The truncated path doubles `M` up to this cap while certifying.
pub const T_PREC_CAP: usize = 512;

/// Entries of `D - B(T)`, on whichever arithmetic path applies.
#[derive(Clone, Debug)]
pub enum CharEntries {
    Exact(Vec<LaurentU>),
    Truncated(Vec<TruncatedSeries>),
}

/// The assembled matrix `D - B(T)` with its vertex bookkeeping.
#[derive(Clone, Debug)]
pub struct CharMatrix {
    /// Base vertices in matrix order: unramified first, then ramified.
    pub vertex_order: Vec<usize>,
    /// How many leading vertices are unramified.
    pub num_unramified: usize,
    pub entries: CharEntries,
}

impl CharMatrix {
    pub fn size(&self) -> usize {
        self.vertex_order.len()
    }

    pub fn exact_entry(&self, i: usize, j: usize) -> Option<&LaurentU> {
        match &self.entries {
            CharEntries::Exact(v) => Some(&v[i * self.size() + j]),
            CharEntries::Truncated(_) => None,
        }
    }
}

fn voltage_exponent(vg: &VoltageGraph, e: usize) -> Result<i64> {
    vg.voltage(e)
        .integer_representative()
        .to_i64()
        .ok_or_else(|| Error::Overflow("voltage exponent exceeds the Laurent range".into()))
}

fn assemble_exact(vg: &VoltageGraph) -> Result<Vec<LaurentU>> {
    let (unram, ram) = vg.vertex_split();
    let r = unram.len();
    let order: Vec<usize> = unram.iter().chain(ram.iter()).copied().collect();
    let s = order.len();
    let mut pos = vec![0usize; vg.base().num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut entries = vec![LaurentU::zero(); s * s];
    for (j, &vj) in order.iter().enumerate().take(r) {
        entries[j * s + j] = LaurentU::constant(vg.base().valency(vj)? as i64);
        for &e in vg.base().out_edges(vj) {
            let i = pos[vg.base().terminus(e)];
            let a = voltage_exponent(vg, e)?;
            entries[i * s + j] = entries[i * s + j].sub(&LaurentU::u_pow(a));
        }
    }
    for (idx, &v) in order.iter().enumerate().skip(r) {
        let k = match vg.ramification(v) {
            crate::tower::Ramification::Ramified(k) => k,
            crate::tower::Ramification::Unramified => unreachable!("split put it in the tail"),
        };
        entries[idx * s + idx] = omega_poly(vg.prime(), k)?;
    }
    Ok(entries)
}

fn assemble_truncated(
    vg: &VoltageGraph,
    t_prec: usize,
    p_prec: u32,
) -> Result<Vec<TruncatedSeries>> {
    let p = vg.prime();
    let (unram, ram) = vg.vertex_split();
    let r = unram.len();
    let order: Vec<usize> = unram.iter().chain(ram.iter()).copied().collect();
    let s = order.len();
    let mut pos = vec![0usize; vg.base().num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut entries = vec![TruncatedSeries::zero(p, p_prec, t_prec); s * s];
    for (j, &vj) in order.iter().enumerate().take(r) {
        let val = BigInt::from(vg.base().valency(vj)?);
        entries[j * s + j] = TruncatedSeries::from_signed_coeffs(p, p_prec, t_prec, &[val]);
        for &e in vg.base().out_edges(vj) {
            let i = pos[vg.base().terminus(e)];
            let rho = binomial_series(vg.voltage(e), t_prec, p_prec)?;
            entries[i * s + j] = entries[i * s + j].sub(&rho)?;
        }
    }
    for (idx, &v) in order.iter().enumerate().skip(r) {
        let k = match vg.ramification(v) {
            crate::tower::Ramification::Ramified(k) => k,
            crate::tower::Ramification::Unramified => unreachable!(),
        };
        entries[idx * s + idx] = laurent_to_series(&omega_poly(p, k)?, p, t_prec, p_prec);
    }
    Ok(entries)
}

/// Assembles `D - B(T)`; the exact path is chosen iff every voltage is
/// an exact integer.
pub fn build_char_matrix(vg: &VoltageGraph) -> Result<CharMatrix> {
    build_char_matrix_prec(vg, DEFAULT_T_PREC, DEFAULT_P_PREC)
}

/// As [`build_char_matrix`] with explicit precisions for the truncated
/// path (the exact path ignores them).
pub fn build_char_matrix_prec(vg: &VoltageGraph, t_prec: usize, p_prec: u32) -> Result<CharMatrix> {
    let (unram, ram) = vg.vertex_split();
    let order: Vec<usize> = unram.iter().chain(ram.iter()).copied().collect();
    let entries = if vg.all_exact() {
        CharEntries::Exact(assemble_exact(vg)?)
    } else {
        CharEntries::Truncated(assemble_truncated(vg, t_prec, p_prec)?)
    };
    Ok(CharMatrix {
        vertex_order: order,
        num_unramified: unram.len(),
        entries,
    })
}

/// Forces the series path even for exact voltages; used to cross-check
/// the two routes against each other.
pub fn build_char_matrix_truncated(
    vg: &VoltageGraph,
    t_prec: usize,
    p_prec: u32,
) -> Result<CharMatrix> {
    let (unram, ram) = vg.vertex_split();
    let order: Vec<usize> = unram.iter().chain(ram.iter()).copied().collect();
    Ok(CharMatrix {
        vertex_order: order,
        num_unramified: unram.len(),
        entries: CharEntries::Truncated(assemble_truncated(vg, t_prec, p_prec)?),
    })
}

trait DetRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl DetRing for LaurentU {
    fn zero_like(&self) -> Self {
        LaurentU::zero()
    }
    fn one_like(&self) -> Self {
        LaurentU::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl DetRing for TruncatedSeries {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.prime(), self.p_precision(), self.t_precision())
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.prime(), self.p_precision(), self.t_precision())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
            .expect("uniform precision within one matrix")
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self.sub(other)
            .expect("uniform precision within one matrix")
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
            .expect("uniform precision within one matrix")
    }
}

/// Division-free determinant by column expansion over row subsets.
/// Exponential in the size, which is the base-graph vertex count; fine
/// through a dozen vertices.
fn det_subsets<T: DetRing>(entries: &[T], s: usize) -> T {
    assert!((1..=20).contains(&s), "subset determinant limited to 20 rows");
    let full = 1usize << s;
    let mut dp: Vec<Option<T>> = vec![None; full];
    dp[0] = Some(entries[0].one_like());
    for mask in 1..full {
        let k = (mask as u32).count_ones() as usize - 1; // column index
        let mut acc = entries[0].zero_like();
        let mut local = 0usize;
        for row in 0..s {
            if mask & (1 << row) == 0 {
                continue;
            }
            let sub = dp[mask ^ (1 << row)]
                .as_ref()
                .expect("smaller mask already filled");
            let term = entries[row * s + k].ring_mul(sub);
            if (local + k).is_multiple_of(2) {
                acc = acc.ring_add(&term);
            } else {
                acc = acc.ring_sub(&term);
            }
            local += 1;
        }
        dp[mask] = Some(acc);
    }
    dp[full - 1].take().expect("filled")
}

/// Fraction-free elimination over the Laurent ring: rows are unit
/// multiples of integer polynomials in `u`, so every Bareiss division is
/// exact there.
fn det_bareiss_laurent(entries: &[LaurentU], s: usize) -> LaurentU {
    let mut m = entries.to_vec();
    if s == 0 {
        return LaurentU::one();
    }
    let mut negate = false;
    let mut prev = LaurentU::one();
    for k in 0..s - 1 {
        if m[k * s + k].is_zero() {
            let Some(r) = (k + 1..s).find(|&r| !m[r * s + k].is_zero()) else {
                return LaurentU::zero();
            };
            for j in 0..s {
                m.swap(k * s + j, r * s + j);
            }
            negate = !negate;
        }
        for i in k + 1..s {
            for j in k + 1..s {
                let num = m[k * s + k]
                    .mul(&m[i * s + j])
                    .sub(&m[i * s + k].mul(&m[k * s + j]));
                m[i * s + j] = num.div_exact(&prev);
            }
            m[i * s + k] = LaurentU::zero();
        }
        prev = m[k * s + k].clone();
    }
    let det = m[(s - 1) * s + (s - 1)].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

fn determinant_exact(entries: &[LaurentU], s: usize) -> LaurentU {
    if s <= 8 {
        det_subsets(entries, s)
    } else {
        det_bareiss_laurent(entries, s)
    }
}

/// The characteristic series in both carriers.
#[derive(Clone, Debug)]
pub struct CharSeries {
    pub p: u64,
    /// The determinant as an exact Laurent polynomial in `u = 1 + T`
    /// (exact path only).
    pub exact: Option<LaurentU>,
    /// Exact integer coefficients of `T^0 .. T^(M-1)` (exact path only).
    pub exact_coeffs: Option<Vec<BigInt>>,
    /// The expansion mod `(p^N, T^M)` (always present).
    pub series: TruncatedSeries,
    pub t_prec: usize,
    pub p_prec: u32,
}

impl CharSeries {
    /// `(shift, dense poly coefficients)` with
    /// `f = u^shift * (c_0 + c_1 u + ...)`, exact path only.
    pub fn exact_normalized(&self) -> Option<(i64, Vec<(u64, BigInt)>)> {
        let f = self.exact.as_ref()?;
        let shift = f.min_exp()?;
        let terms = f
            .terms()
            .map(|(e, c)| ((e - shift) as u64, c.clone()))
            .collect();
        Some((shift, terms))
    }
}

fn char_series_from_matrix(
    vg: &VoltageGraph,
    matrix: &CharMatrix,
    t_prec: usize,
    p_prec: u32,
) -> Result<CharSeries> {
    let s = matrix.size();
    match &matrix.entries {
        CharEntries::Exact(entries) => {
            let f = determinant_exact(entries, s);
            if f.is_zero() {
                return Err(Error::ZeroDeterminant);
            }
            let coeffs = f.expand_series(t_prec);
            let series = TruncatedSeries::from_signed_coeffs(vg.prime(), p_prec, t_prec, &coeffs);
            Ok(CharSeries {
                p: vg.prime(),
                exact: Some(f),
                exact_coeffs: Some(coeffs),
                series,
                t_prec,
                p_prec,
            })
        }
        CharEntries::Truncated(entries) => {
            if s > 12 {
                return Err(Error::BadArgument(
                    "truncated-path determinant supported up to 12 base vertices".into(),
                ));
            }
            let f = det_subsets(entries, s);
            if f.is_visibly_zero() {
                return Err(Error::ZeroDeterminant);
            }
            Ok(CharSeries {
                p: vg.prime(),
                exact: None,
                exact_coeffs: None,
                series: f,
                t_prec,
                p_prec,
            })
        }
    }
}

/// `f(T) = det(D - B(T))`, exact when the voltages allow it, always with
/// a series expansion mod `(p^N, T^M)`.
pub fn char_series(vg: &VoltageGraph, t_prec: usize, p_prec: u32) -> Result<CharSeries> {
    let matrix = build_char_matrix_prec(vg, t_prec, p_prec)?;
    char_series_from_matrix(vg, &matrix, t_prec, p_prec)
}

/// The series route regardless of exactness, for path cross-checks.
pub fn char_series_truncated(vg: &VoltageGraph, t_prec: usize, p_prec: u32) -> Result<CharSeries> {
    let matrix = build_char_matrix_truncated(vg, t_prec, p_prec)?;
    char_series_from_matrix(vg, &matrix, t_prec, p_prec)
}

/// The tower invariants extracted from the characteristic series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub mu: u32,
    pub lambda_f: usize,
    /// `lambda_f - 1`: `T` always divides `f`, and that factor belongs
    /// to the degree map rather than the degree-zero part.
    pub lambda_pic: usize,
    pub certified: bool,
    pub note: String,
    /// T-precision that produced the result (the truncated path doubles
    /// it while uncertified).
    pub t_prec_used: usize,
}

fn invariants_from(cs: &CharSeries, vg: &VoltageGraph) -> Result<Invariants> {
    let ml = match &cs.exact {
        Some(f) => mu_lambda_exact(f, vg.prime())?,
        None => mu_lambda_series(&cs.series, None)?,
    };
    if ml.lambda == 0 {
        return Err(Error::InvalidGraph(
            "characteristic series does not vanish at T = 0".into(),
        ));
    }
    Ok(Invariants {
        mu: ml.mu,
        lambda_f: ml.lambda,
        lambda_pic: ml.lambda - 1,
        certified: ml.certified,
        note: ml.note,
        t_prec_used: cs.t_prec,
    })
}

/// The characteristic series together with its invariants.  On the
/// truncated path the T-window starts at `t_prec` and doubles (capped at
/// [`T_PREC_CAP`], or earlier when the voltage precision cannot support
/// a wider window) until the invariants certify.
pub fn series_and_invariants(
    vg: &VoltageGraph,
    t_prec: usize,
    p_prec: u32,
) -> Result<(CharSeries, Invariants)> {
    if vg.all_exact() {
        let cs = char_series(vg, t_prec, p_prec)?;
        let inv = invariants_from(&cs, vg)?;
        return Ok((cs, inv));
    }
    let mut t_prec = t_prec;
    let mut last: Option<(CharSeries, Invariants)> = None;
    loop {
        match char_series(vg, t_prec, p_prec) {
            Ok(cs) => {
                let inv = invariants_from(&cs, vg)?;
                let certified = inv.certified;
                last = Some((cs, inv));
                if certified || t_prec >= T_PREC_CAP {
                    return Ok(last.expect("just stored"));
                }
            }
            Err(Error::ZeroDeterminant) if t_prec < T_PREC_CAP => {}
            // voltage precision cannot support a wider window; report the
            // best (uncertified) result obtained so far
            Err(Error::Precision(_)) if last.is_some() => return Ok(last.expect("checked")),
            Err(e) => return Err(e),
        }
        t_prec = (t_prec * 2).min(T_PREC_CAP);
    }
}

/// `mu`, `lambda_f` and `lambda_pic` of the tower.
pub fn invariants(vg: &VoltageGraph) -> Result<Invariants> {
    series_and_invariants(vg, DEFAULT_T_PREC, DEFAULT_P_PREC).map(|(_, inv)| inv)
}

/// Per-level data gathered by the growth verifier.
#[derive(Clone, Debug)]
pub struct LevelStat {
    pub n: u32,
    pub vertices: usize,
    pub undirected_edges: usize,
    pub kappa: BigInt,
    pub ordp: u32,
    pub connected: bool,
}

/// The full outcome: series, invariants, per-level valuations, and the
/// fitted growth law.
#[derive(Clone, Debug)]
pub struct IwasawaReport {
    pub p: u64,
    pub f: CharSeries,
    pub mu: u32,
    pub lambda_f: usize,
    pub lambda_pic: usize,
    pub certified: bool,
    pub certification_note: String,
    /// Empirical constant term, fitted from the top computed level.
    pub nu: i64,
    /// Onset of exact agreement with the growth law.
    pub n0: u32,
    /// True when at least the last two computed levels conform.
    pub growth_ok: bool,
    pub levels: Vec<LevelStat>,
    /// Outcome of the sufficient connectedness criterion; `None` when
    /// indeterminate at the available voltage precision.
    pub criterion_connected: Option<bool>,
    pub warnings: Vec<String>,
}

/// Computes `ord_p kappa(X_n)` for `n = 0..=n_max`, fits
/// `nu = ord_p kappa(X_max) - mu p^max - lambda_pic * max`, and locates
/// the onset `n0` of exact agreement.  When the connectedness criterion
/// fails or is indeterminate, every level is required to be connected
/// individually (with a warning); a disconnected level aborts.
pub fn verify_growth(vg: &VoltageGraph, n_max: u32) -> Result<IwasawaReport> {
    if n_max < 2 {
        return Err(Error::BadArgument(
            "growth verification needs n_max >= 2".into(),
        ));
    }
    let mut warnings = Vec::new();
    let criterion_connected = match connectedness_criterion(vg) {
        Ok(rep) => Some(rep.unramified_tower_connected),
        Err(Error::IndeterminateCriterion) => None,
        Err(e) => return Err(e),
    };
    match criterion_connected {
        Some(true) => {}
        Some(false) => warnings.push(
            "connectedness criterion failed; relying on per-level connectivity checks".into(),
        ),
        None => warnings.push(
            "connectedness criterion indeterminate at the given precision; relying on per-level connectivity checks".into(),
        ),
    }

    let (f, inv) = series_and_invariants(vg, DEFAULT_T_PREC, DEFAULT_P_PREC)?;
    if !inv.certified {
        warnings.push(format!("invariants are uncertified: {}", inv.note));
    }

    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let level = build_level(vg, n)?;
        let g = level.graph();
        let connected = g.is_connected()?;
        if !connected {
            return Err(Error::DisconnectedLevel(n));
        }
        let k = kappa(g)?;
        let ordp = ord_p(&k, vg.prime()).expect("kappa is positive");
        levels.push(LevelStat {
            n,
            vertices: g.num_vertices(),
            undirected_edges: g.num_undirected_edges(),
            kappa: k,
            ordp,
            connected,
        });
    }

    let p = vg.prime() as i64;
    let predicted = |n: u32, nu: i64| -> Option<i64> {
        let pn = p.checked_pow(n)?;
        Some(inv.mu as i64 * pn + inv.lambda_pic as i64 * n as i64 + nu)
    };
    let top = &levels[n_max as usize];
    let pn_top = p
        .checked_pow(n_max)
        .ok_or_else(|| Error::Overflow("p^n_max exceeds the integer range".into()))?;
    let nu = top.ordp as i64 - inv.mu as i64 * pn_top - inv.lambda_pic as i64 * n_max as i64;
    let mut n0 = n_max;
    for n in (0..n_max).rev() {
        if predicted(n, nu) == Some(levels[n as usize].ordp as i64) {
            n0 = n;
        } else {
            break;
        }
    }
    let growth_ok = n0 < n_max;

    Ok(IwasawaReport {
        p: vg.prime(),
        f,
        mu: inv.mu,
        lambda_f: inv.lambda_f,
        lambda_pic: inv.lambda_pic,
        certified: inv.certified,
        certification_note: inv.note,
        nu,
        n0,
        growth_ok,
        levels,
        criterion_connected,
        warnings,
    })
}

/// Checks the structural factorization `det(D - B) = prod omega_{k_i} *
/// det(unramified principal block)`: each ramified column has a single
/// nonzero entry, so cofactor expansion forces the identity.  Both sides
/// are computed independently and compared.
pub fn factorization_check(vg: &VoltageGraph) -> Result<bool> {
    factorization_check_prec(vg, DEFAULT_T_PREC, DEFAULT_P_PREC)
}

pub fn factorization_check_prec(vg: &VoltageGraph, t_prec: usize, p_prec: u32) -> Result<bool> {
    let matrix = build_char_matrix_prec(vg, t_prec, p_prec)?;
    let s = matrix.size();
    let r = matrix.num_unramified;
    let ram_exponents: Vec<u32> = matrix.vertex_order[r..]
        .iter()
        .map(|&v| match vg.ramification(v) {
            crate::tower::Ramification::Ramified(k) => k,
            crate::tower::Ramification::Unramified => unreachable!(),
        })
        .collect();
    match &matrix.entries {
        CharEntries::Exact(entries) => {
            let full = determinant_exact(entries, s);
            let block: Vec<LaurentU> = (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .map(|(i, j)| entries[i * s + j].clone())
                .collect();
            let mut rhs = if r == 0 {
                LaurentU::one()
            } else {
                determinant_exact(&block, r)
            };
            for &k in &ram_exponents {
                rhs = rhs.mul(&omega_poly(vg.prime(), k)?);
            }
            Ok(full == rhs)
        }
        CharEntries::Truncated(entries) => {
            let full = det_subsets(entries, s);
            let one = TruncatedSeries::one(vg.prime(), p_prec, t_prec);
            let block: Vec<TruncatedSeries> = (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .map(|(i, j)| entries[i * s + j].clone())
                .collect();
            let mut rhs = if r == 0 { one } else { det_subsets(&block, r) };
            for &k in &ram_exponents {
                let w = laurent_to_series(&omega_poly(vg.prime(), k)?, vg.prime(), t_prec, p_prec);
                rhs = rhs.mul(&w)?;
            }
            Ok(full == rhs)
        }
    }
}

/// The property checks bundled with a full verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyChecks {
    /// Branched-cover axioms plus the valency and degree laws on every
    /// single-step projection.
    pub cover_axioms: bool,
    /// The pushforward square of the Laplacians on every projection.
    pub laplacian_compatibility: bool,
    /// `kappa(X_n) | kappa(X_{n+1})` along the computed levels.
    pub kappa_divisibility: bool,
    /// `f(0) = 0`.
    pub f_vanishes_at_origin: bool,
    /// The ramified-column factorization of the determinant.
    pub factorization: bool,
}

impl VerifyChecks {
    pub fn all_pass(&self) -> bool {
        self.cover_axioms
            && self.laplacian_compatibility
            && self.kappa_divisibility
            && self.f_vanishes_at_origin
            && self.factorization
    }
}

/// Growth verification plus the structural property suite.
#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: IwasawaReport,
    pub checks: VerifyChecks,
}

impl VerifyOutcome {
    pub fn success(&self) -> bool {
        self.report.growth_ok && self.checks.all_pass()
    }
}

/// Runs [`verify_growth`] and the full property suite on every
/// projection between computed levels.
pub fn full_verify(vg: &VoltageGraph, n_max: u32) -> Result<VerifyOutcome> {
    let report = verify_growth(vg, n_max)?;

    let mut cover_axioms = true;
    let mut laplacian_compatibility = true;
    for n in 0..n_max {
        let c = projection(vg, n + 1, n)?;
        let cr = crate::tower::verify_cover(&c);
        cover_axioms &= cr.is_branched_cover
            && cr.valency_law_ok
            && cr.degree_law_ok
            && cr.ram_indices_consistent
            && cr.degree == Some(vg.prime());
        laplacian_compatibility &= crate::picard::check_laplacian_compatibility(&c)?.ok;
    }

    let kappa_divisibility = report
        .levels
        .windows(2)
        .all(|w| (&w[1].kappa % &w[0].kappa).is_zero());

    let f_vanishes_at_origin = match &report.f.exact {
        Some(f) => f.eval_at_one().is_zero(),
        None => report.f.series.coeff(0).is_zero(),
    };

    let factorization = factorization_check(vg)?;

    Ok(VerifyOutcome {
        report,
        checks: VerifyChecks {
            cover_axioms,
            laplacian_compatibility,
            kappa_divisibility,
            f_vanishes_at_origin,
            factorization,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::SerreGraph;
    use crate::padic::PadicScalar;
    use crate::tower::Ramification;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn char_matrix_of_bouquet_is_omega2() {
        let m = build_char_matrix(&fixtures::bouquet_p2()).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.num_unramified, 0);
        assert_eq!(m.exact_entry(0, 0).unwrap(), &omega_poly(2, 2).unwrap());
    }

    #[test]
    fn char_matrix_of_unramified_dumbbell() {
        let m = build_char_matrix(&fixtures::dumbbell_p3_unramified()).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.num_unramified, 2);
        let three = LaurentU::constant(3);
        let e00 = three.sub(&LaurentU::u_pow(1)).sub(&LaurentU::u_pow(-1));
        let e11 = three.sub(&LaurentU::u_pow(11)).sub(&LaurentU::u_pow(-11));
        let minus_one = LaurentU::constant(-1);
        assert_eq!(m.exact_entry(0, 0).unwrap(), &e00);
        assert_eq!(m.exact_entry(0, 1).unwrap(), &minus_one);
        assert_eq!(m.exact_entry(1, 0).unwrap(), &minus_one);
        assert_eq!(m.exact_entry(1, 1).unwrap(), &e11);
    }

    #[test]
    fn char_matrix_of_branched_dumbbell() {
        let m = build_char_matrix(&fixtures::dumbbell_p3_branched()).unwrap();
        assert_eq!((m.size(), m.num_unramified), (2, 1));
        let e00 = LaurentU::constant(3)
            .sub(&LaurentU::u_pow(1))
            .sub(&LaurentU::u_pow(-1));
        assert_eq!(m.exact_entry(0, 0).unwrap(), &e00);
        assert_eq!(m.exact_entry(0, 1).unwrap(), &LaurentU::zero());
        assert_eq!(m.exact_entry(1, 0).unwrap(), &LaurentU::constant(-1));
        assert_eq!(m.exact_entry(1, 1).unwrap(), &omega_poly(3, 1).unwrap());
    }

    #[test]
    fn char_series_of_bouquet_is_exactly_omega2() {
        let cs = char_series(&fixtures::bouquet_p2(), 8, 16).unwrap();
        assert_eq!(cs.exact.as_ref().unwrap(), &omega_poly(2, 2).unwrap());
        assert_eq!(
            &cs.exact_coeffs.as_ref().unwrap()[..6],
            &ints(&[0, 4, 6, 4, 1, 0])[..]
        );
    }

    #[test]
    fn char_series_of_unramified_dumbbell_prefix() {
        let cs = char_series(&fixtures::dumbbell_p3_unramified(), 8, 16).unwrap();
        assert_eq!(
            &cs.exact_coeffs.as_ref().unwrap()[..5],
            &ints(&[0, 0, -122, 122, -1211])[..]
        );
    }

    #[test]
    fn char_series_of_branched_dumbbell_prefix() {
        let cs = char_series(&fixtures::dumbbell_p3_branched(), 8, 16).unwrap();
        assert_eq!(
            &cs.exact_coeffs.as_ref().unwrap()[..6],
            &ints(&[0, 3, 3, -2, 0, -1])[..]
        );
    }

    #[test]
    fn char_series_of_triple_loop_prefix() {
        let cs = char_series(&fixtures::triple_loop_p3(), 8, 16).unwrap();
        assert_eq!(
            &cs.exact_coeffs.as_ref().unwrap()[..5],
            &ints(&[0, 9, 9, -6, 0])[..]
        );
    }

    #[test]
    fn invariants_of_the_reference_towers() {
        let inv = invariants(&fixtures::bouquet_p2()).unwrap();
        assert_eq!((inv.mu, inv.lambda_f, inv.lambda_pic), (0, 4, 3));
        assert!(inv.certified);
        let inv = invariants(&fixtures::dumbbell_p3_unramified()).unwrap();
        assert_eq!((inv.mu, inv.lambda_f, inv.lambda_pic), (0, 2, 1));
        let inv = invariants(&fixtures::dumbbell_p3_branched()).unwrap();
        assert_eq!((inv.mu, inv.lambda_f, inv.lambda_pic), (0, 3, 2));
        let inv = invariants(&fixtures::triple_loop_p3()).unwrap();
        assert_eq!((inv.mu, inv.lambda_f, inv.lambda_pic), (1, 3, 2));
    }

    #[test]
    fn growth_of_the_bouquet_tower() {
        let report = verify_growth(&fixtures::bouquet_p2(), 4).unwrap();
        let ords: Vec<u32> = report.levels.iter().map(|l| l.ordp).collect();
        assert_eq!(ords, vec![0, 2, 5, 8, 11]);
        assert_eq!(report.nu, -1);
        assert_eq!(report.n0, 1);
        assert!(report.growth_ok);
        assert_eq!(report.criterion_connected, Some(true));
    }

    #[test]
    fn growth_of_the_unramified_dumbbell() {
        let report = verify_growth(&fixtures::dumbbell_p3_unramified(), 3).unwrap();
        let ords: Vec<u32> = report.levels.iter().map(|l| l.ordp).collect();
        assert_eq!(ords, vec![0, 1, 2, 3]);
        assert_eq!((report.nu, report.n0), (0, 0));
        assert!(report.growth_ok);
        assert_eq!(report.levels[1].kappa, BigInt::from(75));
    }

    #[test]
    fn growth_of_the_branched_dumbbell() {
        let report = verify_growth(&fixtures::dumbbell_p3_branched(), 3).unwrap();
        let ords: Vec<u32> = report.levels.iter().map(|l| l.ordp).collect();
        assert_eq!(ords, vec![0, 1, 3, 5]);
        assert_eq!((report.nu, report.n0), (-1, 1));
        assert!(report.growth_ok);
    }

    #[test]
    fn growth_of_the_triple_loop_tower() {
        let report = verify_growth(&fixtures::triple_loop_p3(), 2).unwrap();
        let ords: Vec<u32> = report.levels.iter().map(|l| l.ordp).collect();
        assert_eq!(ords, vec![1, 4, 12]);
        assert_eq!((report.nu, report.n0), (-1, 1));
        assert!(report.growth_ok);
    }

    #[test]
    fn growth_needs_two_levels() {
        assert!(matches!(
            verify_growth(&fixtures::bouquet_p2(), 1),
            Err(Error::BadArgument(_))
        ));
    }

    #[test]
    fn growth_refuses_disconnected_levels() {
        let vg = fixtures::divisible_bouquet_p3();
        assert!(matches!(
            verify_growth(&vg, 2),
            Err(Error::DisconnectedLevel(1))
        ));
    }

    #[test]
    fn factorization_holds_on_all_fixtures() {
        for vg in fixtures::all() {
            assert!(factorization_check(&vg).unwrap());
        }
    }

    #[test]
    fn f_vanishes_at_the_origin() {
        for vg in fixtures::all() {
            let cs = char_series(&vg, 8, 16).unwrap();
            assert!(cs.exact.as_ref().unwrap().eval_at_one().is_zero());
            assert!(cs.series.coeff(0).is_zero());
        }
    }

    #[test]
    fn exact_and_truncated_paths_agree() {
        for vg in fixtures::all() {
            let exact = char_series(&vg, 32, 16).unwrap();
            let trunc = char_series_truncated(&vg, 32, 16).unwrap();
            assert_eq!(exact.series, trunc.series);
        }
    }

    #[test]
    fn truncated_voltages_still_certify_mu_zero() {
        // forced truncation with enough guard digits for M = 32, N = 16
        let vg = fixtures::dumbbell_p3_branched().forced_truncation(40);
        assert!(!vg.all_exact());
        let inv = invariants(&vg).unwrap();
        assert_eq!((inv.mu, inv.lambda_pic), (0, 2));
        assert!(inv.certified);
    }

    #[test]
    fn truncated_triple_loop_is_uncertified() {
        // mu = 1 > 0 cannot be certified from a finite window alone;
        // the window doubles as far as the voltage precision allows
        let vg = fixtures::triple_loop_p3().forced_truncation(150);
        let inv = invariants(&vg).unwrap();
        assert_eq!((inv.mu, inv.lambda_f), (1, 3));
        assert!(!inv.certified);
        assert_eq!(inv.t_prec_used, 256);
    }

    #[test]
    fn edgeless_base_has_zero_determinant() {
        let base = SerreGraph::from_pairs(1, &[]).unwrap();
        let vg = crate::tower::VoltageGraph::new(base, 3, vec![], vec![Ramification::Unramified])
            .unwrap();
        assert!(matches!(
            char_series(&vg, 8, 8),
            Err(Error::ZeroDeterminant)
        ));
    }

    #[test]
    fn bareiss_and_subset_determinants_agree() {
        // pseudo-random small Laurent matrices
        let mut state = 7u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 59) as i64 - 8
        };
        for _ in 0..10 {
            let s = 5;
            let entries: Vec<LaurentU> = (0..s * s)
                .map(|_| {
                    LaurentU::term(next() % 3, next()).add(&LaurentU::term(next() % 3, next()))
                })
                .collect();
            assert_eq!(det_subsets(&entries, s), det_bareiss_laurent(&entries, s));
        }
    }

    #[test]
    fn large_base_goes_through_bareiss() {
        // a 9-cycle with a unit-voltage loop: 10 vertices, so the exact
        // path uses fraction-free elimination
        let mut pairs: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        pairs.push((0, 0));
        let base = SerreGraph::from_pairs(9, &pairs).unwrap();
        let mut volts: Vec<PadicScalar> = (0..9).map(|_| PadicScalar::exact(3, 0)).collect();
        volts.push(PadicScalar::exact(3, 1));
        let mut ram = vec![Ramification::Unramified; 9];
        ram[4] = Ramification::Ramified(1);
        let vg = crate::tower::VoltageGraph::new(base, 3, volts, ram).unwrap();
        let m = build_char_matrix(&vg).unwrap();
        let CharEntries::Exact(entries) = &m.entries else {
            panic!("exact path expected")
        };
        let via_bareiss = determinant_exact(entries, m.size());
        let via_subsets = det_subsets(entries, m.size());
        assert_eq!(via_bareiss, via_subsets);
        assert!(!via_bareiss.is_zero());
    }

    #[test]
    fn full_verify_passes_on_reference_towers() {
        for vg in fixtures::all() {
            let outcome = full_verify(&vg, 2).unwrap();
            assert!(outcome.checks.all_pass());
            assert!(outcome.report.growth_ok);
            assert!(outcome.success());
        }
    }

    /// With both vertices ramified (k = 1) the unramified block is empty
    /// and f = omega_1^2, so lambda_pic = 5; the levels must follow.
    #[test]
    fn fully_ramified_dumbbell_growth() {
        let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let vg = crate::tower::VoltageGraph::new(
            base,
            3,
            vec![
                PadicScalar::exact(3, 1),
                PadicScalar::exact(3, 0),
                PadicScalar::exact(3, 11),
            ],
            vec![Ramification::Ramified(1), Ramification::Ramified(1)],
        )
        .unwrap();
        let w1 = omega_poly(3, 1).unwrap();
        let cs = char_series(&vg, 8, 16).unwrap();
        assert_eq!(cs.exact.as_ref().unwrap(), &w1.mul(&w1));
        let outcome = full_verify(&vg, 3).unwrap();
        assert_eq!((outcome.report.mu, outcome.report.lambda_pic), (0, 5));
        assert!(outcome.report.growth_ok);
        assert!(outcome.checks.all_pass());
    }

    #[test]
    fn growth_differences_match_the_law() {
        for vg in fixtures::all() {
            let report = verify_growth(&vg, 3).unwrap();
            let p = report.p as i64;
            for n in report.n0..3 {
                let delta = report.levels[n as usize + 1].ordp as i64
                    - report.levels[n as usize].ordp as i64;
                let expect =
                    report.mu as i64 * (p.pow(n + 1) - p.pow(n)) + report.lambda_pic as i64;
                assert_eq!(delta, expect);
            }
        }
    }
}

//! Closed-form upper bounds for induced edge counts in distance powers of
//! the hypercube, together with the integer quantities they are built from
//! and the arithmetic facts that make the proofs go through.
//!
//! All logarithms are base 2. Transcendental evaluation is double
//! precision; values within 1e-9 of an integer are snapped to it before
//! ceil/floor so that exact powers of two round the way the algebra says
//! they must.

use std::f64::consts::{E, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::compress::{is_down_set, is_left_compressed, rank};
use crate::error::{Error, Result};
use crate::vertex::{degree, VertexFamily};

const SNAP: f64 = 1e-9;

/// Exact ⌊log₂ m⌋ for m ≥ 1.
pub fn floor_log2(m: u128) -> u32 {
    debug_assert!(m >= 1);
    127 - m.leading_zeros()
}

/// log₂ m in double precision, exact whenever m is a power of two.
fn log2_of(m: u128) -> f64 {
    if m.is_power_of_two() {
        m.trailing_zeros() as f64
    } else {
        (m as f64).log2()
    }
}

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP {
        r
    } else {
        x
    }
}

fn ceil_snapped(x: f64) -> u64 {
    snap(x).ceil() as u64
}

fn floor_snapped(x: f64) -> u64 {
    snap(x).floor() as u64
}

/// True iff m ≤ 2^n.
fn fits_in_cube(m: u128, n: u32) -> bool {
    n >= 128 || m <= 1u128 << n
}

/// True iff 2^t ≤ m.
fn at_least_pow2(m: u128, t: u32) -> bool {
    t < 128 && m >= 1u128 << t
}

fn check_ell_domain(m: u128, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got n = {n}")));
    }
    if m < 2 || !fits_in_cube(m, n) {
        return Err(Error::invalid(format!(
            "need 2 <= m <= 2^n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// ℓ(m, n) = min{⌈2 log m / (log n − log log m)⌉, ⌊log m⌋}; a nonpositive
/// denominator makes the first term +∞ so the floor term governs.
pub fn ell(m: u128, n: u32) -> Result<u64> {
    check_ell_domain(m, n)?;
    let lg_m = log2_of(m);
    let floor_term = floor_log2(m) as u64;
    let denom = snap((n as f64).log2() - lg_m.log2());
    if denom <= 0.0 {
        return Ok(floor_term);
    }
    Ok(ceil_snapped(2.0 * lg_m / denom).min(floor_term))
}

fn check_ell_prime_domain(m: u128, n: u32) -> Result<()> {
    // 1 <= log m < n, i.e. 2 <= m < 2^n
    if m < 2 || (n < 128 && m >= 1u128 << n) {
        return Err(Error::hypothesis(format!(
            "need 1 <= log2 m < n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// ℓ′(m, n) = min{⌈log m / (log n − log log m)⌉, ⌊log m⌋}, defined under
/// the hypothesis 1 ≤ log m < n.
pub fn ell_prime(m: u128, n: u32) -> Result<u64> {
    check_ell_prime_domain(m, n)?;
    let lg_m = log2_of(m);
    let floor_term = floor_log2(m) as u64;
    let denom = snap((n as f64).log2() - lg_m.log2());
    if denom <= 0.0 {
        return Ok(floor_term);
    }
    Ok(ceil_snapped(lg_m / denom).min(floor_term))
}

/// β(m, n) = ⌊(n / log m)^{1/2} · ℓ(m, n)⌋.
pub fn beta(m: u128, n: u32) -> Result<u64> {
    let l = ell(m, n)?;
    Ok(floor_snapped((n as f64 / log2_of(m)).sqrt() * l as f64))
}

/// β′(m, n) = ⌊n · ℓ′(m, n) / log m⌋.
pub fn beta_prime(m: u128, n: u32) -> Result<u64> {
    let lp = ell_prime(m, n)?;
    Ok(floor_snapped(n as f64 * lp as f64 / log2_of(m)))
}

/// One evaluated bound with the integer quantities that entered it.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem: &'static str,
    pub n: u32,
    pub m: u128,
    pub t_or_r: Option<u32>,
    pub ell: Option<u64>,
    pub ell_prime: Option<u64>,
    pub beta: Option<u64>,
    pub beta_prime: Option<u64>,
    pub bound: f64,
    pub notes: String,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "theorem,n,m,t_or_r,ell,ell_prime,beta,beta_prime,bound";

    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.theorem,
            self.n,
            self.m,
            opt(&self.t_or_r),
            opt(&self.ell),
            opt(&self.ell_prime),
            opt(&self.beta),
            opt(&self.beta_prime),
            self.bound
        )
    }
}

fn quantities(m: u128, n: u32) -> (Option<u64>, Option<u64>, Option<u64>, Option<u64>) {
    (
        ell(m, n).ok(),
        ell_prime(m, n).ok(),
        beta(m, n).ok(),
        beta_prime(m, n).ok(),
    )
}

/// Distance-two bound: edges_within(A, 2) ≤ n · ℓ′ · |A| under
/// 1 ≤ log|A| < n.
pub fn distance_two_bound(m: u128, n: u32) -> Result<BoundReport> {
    let lp = ell_prime(m, n)?;
    let (l, _, b, bp) = quantities(m, n);
    Ok(BoundReport {
        theorem: "distance-two",
        n,
        m,
        t_or_r: Some(2),
        ell: l,
        ell_prime: Some(lp),
        beta: b,
        beta_prime: bp,
        bound: n as f64 * lp as f64 * m as f64,
        notes: "pairs at Hamming distance 1 or 2".into(),
    })
}

fn check_power_domain(m: u128, n: u32, t: u32) -> Result<()> {
    if t < 1 {
        return Err(Error::hypothesis("need t >= 1".to_string()));
    }
    if !at_least_pow2(m, t) || !fits_in_cube(m, n) {
        return Err(Error::hypothesis(format!(
            "need 2^t <= m <= 2^n, got m = {m}, n = {n}, t = {t}"
        )));
    }
    Ok(())
}

/// Even-power bound: edges_within(A, 2t) ≤ (8e/t)^{2t} (nℓ)^t |A| under
/// 2^t ≤ |A| ≤ 2^n.
pub fn even_power_bound(m: u128, n: u32, t: u32) -> Result<BoundReport> {
    check_power_domain(m, n, t)?;
    let l = ell(m, n)?;
    let (_, lp, b, bp) = quantities(m, n);
    let bound =
        (8.0 * E / t as f64).powi(2 * t as i32) * (n as f64 * l as f64).powi(t as i32) * m as f64;
    Ok(BoundReport {
        theorem: "even-power",
        n,
        m,
        t_or_r: Some(t),
        ell: Some(l),
        ell_prime: lp,
        beta: b,
        beta_prime: bp,
        bound,
        notes: format!("graph power r = 2t = {}", 2 * t),
    })
}

/// Odd-power bound: edges_within(A, 2t+1) ≤ (16e/(2t+1))^{2t+1} (nℓ)^t
/// |A| log|A| under 2^t ≤ |A| ≤ 2^n.
pub fn odd_power_bound(m: u128, n: u32, t: u32) -> Result<BoundReport> {
    check_power_domain(m, n, t)?;
    let l = ell(m, n)?;
    let (_, lp, b, bp) = quantities(m, n);
    let k = 2 * t + 1;
    let bound = (16.0 * E / k as f64).powi(k as i32)
        * (n as f64 * l as f64).powi(t as i32)
        * m as f64
        * log2_of(m);
    Ok(BoundReport {
        theorem: "odd-power",
        n,
        m,
        t_or_r: Some(t),
        ell: Some(l),
        ell_prime: lp,
        beta: b,
        beta_prime: bp,
        bound,
        notes: format!("graph power r = 2t+1 = {k}"),
    })
}

/// Kleitman-West bound: a size-m subset of one weight layer induces at most
/// n · ℓ′ · m distance-two pairs. A single vertex (or none) induces none.
pub fn kleitman_west_bound(m: u128, n: u32) -> Result<BoundReport> {
    if m <= 1 {
        return Ok(BoundReport {
            theorem: "kleitman-west",
            n,
            m,
            t_or_r: Some(2),
            ell: None,
            ell_prime: None,
            beta: None,
            beta_prime: None,
            bound: 0.0,
            notes: "fewer than two vertices induce no edges".into(),
        });
    }
    let lp = ell_prime(m, n)?;
    let (l, _, b, bp) = quantities(m, n);
    Ok(BoundReport {
        theorem: "kleitman-west",
        n,
        m,
        t_or_r: Some(2),
        ell: l,
        ell_prime: Some(lp),
        beta: b,
        beta_prime: bp,
        bound: n as f64 * lp as f64 * m as f64,
        notes: "single weight layer, distance exactly two".into(),
    })
}

/// Half the degree times the family size: the bound that ignores all
/// structure.
pub fn trivial_bound(m: u128, n: u32, r: u32) -> Result<f64> {
    let d = degree(n, r)?;
    Ok(0.5 * m as f64 * d as f64)
}

/// Exact maximum for half-sized families: 2^{n−2} Σ_{j=1}^{r} C(n−1, j).
pub fn kkl_exact(n: u32, r: u32) -> Result<u128> {
    if n < 2 || r < 1 || r > n {
        return Err(Error::invalid(format!(
            "need n >= 2 and 1 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    let mut sum: u128 = 0;
    for j in 1..=r {
        let term = crate::vertex::binomial((n - 1) as u64, j as u64)
            .ok_or_else(|| Error::limit("binomial overflows 128 bits"))?;
        sum = sum
            .checked_add(term)
            .ok_or_else(|| Error::limit("half-space value overflows 128 bits"))?;
    }
    if n - 2 >= 128 {
        return Err(Error::limit(
            "half-space value overflows 128 bits".to_string(),
        ));
    }
    (1u128 << (n - 2))
        .checked_mul(sum)
        .ok_or_else(|| Error::limit("half-space value overflows 128 bits"))
}

/// Largest family size for which every m-set can be pairwise within
/// distance r (r even): Σ_{j=0}^{r/2} C(n, j).
pub fn kleitman_threshold(n: u32, r: u32) -> Result<u128> {
    if r == 0 || !r.is_multiple_of(2) || r > n {
        return Err(Error::invalid(format!(
            "need even r with 2 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    let mut sum: u128 = 0;
    for j in 0..=(r / 2) {
        let term = crate::vertex::binomial(n as u64, j as u64)
            .ok_or_else(|| Error::limit("binomial overflows 128 bits"))?;
        sum = sum
            .checked_add(term)
            .ok_or_else(|| Error::limit("threshold overflows 128 bits"))?;
    }
    Ok(sum)
}

/// Edges at distance exactly 1 within any m-set: at most ⌊log₂ m⌋ · m.
pub fn weight_edge_bound(m: u128) -> Result<u128> {
    if m < 1 {
        return Err(Error::invalid("need m >= 1".to_string()));
    }
    (floor_log2(m) as u128)
        .checked_mul(m)
        .ok_or_else(|| Error::limit("bound overflows 128 bits"))
}

/// True iff every member of the left-compressed down-set A has rank at most
/// n · ℓ′(|A|, n).
pub fn rank_bound_check(a: &VertexFamily) -> Result<bool> {
    if !is_down_set(a) || !is_left_compressed(a) {
        return Err(Error::hypothesis(
            "family is not a left-compressed down-set".to_string(),
        ));
    }
    let n = a.dim();
    let m = a.len() as u128;
    let lp = ell_prime(m, n)?;
    let cap = n as u64 * lp;
    Ok(a.iter().map(rank).max().unwrap_or(0) <= cap)
}

/// Which side of the large-element comparison an edge falls on: writing an
/// edge as {x, y} with |x| ≥ |y|, either y has at most as many large
/// elements as x, or strictly more.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EllCase {
    YAtMostX,
    YAboveX,
}

/// Per-class bound for edges {x, y} with |x ∖ y| = b and |y ∖ x| = a,
/// split by the large-element comparison. The constant is
/// (4√2·e/(b+a))^{b+a}; the power of nℓ and the trailing factor depend on
/// the parity of b+a and on the case.
pub fn pair_class_bound(b: u32, a: u32, m: u128, n: u32, case: EllCase) -> Result<f64> {
    if b < a {
        return Err(Error::hypothesis(format!(
            "need b >= a, got b = {b}, a = {a}"
        )));
    }
    let k = b + a;
    let lg_m = log2_of(m);
    if k < 1 || (k as f64) > 2.0 * lg_m {
        return Err(Error::hypothesis(format!(
            "need 1 <= b+a <= 2 log2 m, got b+a = {k}, m = {m}"
        )));
    }
    if case == EllCase::YAboveX && a == 0 {
        // y has no private elements, so it cannot have more large ones
        return Ok(0.0);
    }
    let l = ell(m, n)? as f64;
    let bt = beta(m, n)? as f64;
    let c = (4.0 * SQRT_2 * E / k as f64).powi(k as i32);
    let nl = n as f64 * l;
    let mf = m as f64;
    let even = k.is_multiple_of(2);
    let bound = match (case, even) {
        (EllCase::YAtMostX, true) => c * nl.powi((k / 2) as i32) * mf,
        (EllCase::YAtMostX, false) => c * nl.powi(((k - 1) / 2) as i32) * lg_m * mf,
        (EllCase::YAboveX, true) => c * nl.powi(((k - 2) / 2) as i32) * l * bt * mf,
        (EllCase::YAboveX, false) => c * nl.powi(((k - 1) / 2) as i32) * l * mf,
    };
    Ok(bound)
}

/// The five arithmetic facts relating ⌊log m⌋, log m, β, and nℓ that the
/// per-class bounds lean on.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ThresholdFacts {
    /// ⌊log m⌋ · β ≤ nℓ
    pub weight_times_beta: bool,
    /// β² ≤ nℓ
    pub beta_squared: bool,
    /// log²m ≤ (n/(n−1)) · nℓ
    pub log_squared_scaled: bool,
    /// ⌊log m⌋² ≤ nℓ
    pub floor_log_squared: bool,
    /// ⌊log m⌋ · log m ≤ nℓ
    pub floor_log_times_log: bool,
}

impl ThresholdFacts {
    pub fn all_hold(&self) -> bool {
        self.weight_times_beta
            && self.beta_squared
            && self.log_squared_scaled
            && self.floor_log_squared
            && self.floor_log_times_log
    }
}

/// Evaluates the five facts, in exact integer arithmetic whenever both
/// sides are integral (always for the first, second, and fourth; for the
/// rest whenever m is a power of two).
pub fn threshold_facts(m: u128, n: u32) -> Result<ThresholdFacts> {
    let l = ell(m, n)? as u128;
    let b = beta(m, n)? as u128;
    let fl = floor_log2(m) as u128;
    let nl = n as u128 * l;
    let lg = log2_of(m);
    let nl_f = nl as f64;
    let (log_squared_scaled, floor_log_times_log) = if m.is_power_of_two() {
        (
            (n as u128 - 1) * fl * fl <= n as u128 * n as u128 * l,
            fl * fl <= nl,
        )
    } else {
        (
            lg * lg * (n as f64 - 1.0) <= n as f64 * n as f64 * l as f64,
            fl as f64 * lg <= nl_f,
        )
    };
    Ok(ThresholdFacts {
        weight_times_beta: fl * b <= nl,
        beta_squared: b * b <= nl,
        log_squared_scaled,
        floor_log_squared: fl * fl <= nl,
        floor_log_times_log,
    })
}

/// True iff the per-class bounds increase along both parities of the chain
/// of classes, so that the largest class dominates the sum: for
/// 2 ≤ k ≤ 2t, (8e/(k−1))^{k−1} (nℓ)^{(k−1)/2} ≤ (8e/k)^k (nℓ)^{k/2}, and
/// for 2 ≤ k ≤ 2t+1 the analogue with the exponent of nℓ lowered by one
/// half. Compared in log space within 1e−9.
pub fn chain_monotone(m: u128, n: u32, t: u32) -> Result<bool> {
    if t < 1 {
        return Err(Error::hypothesis("need t >= 1".to_string()));
    }
    if !at_least_pow2(m, t) {
        return Err(Error::hypothesis(format!(
            "need 2^t <= m, got m = {m}, t = {t}"
        )));
    }
    let l = ell(m, n)?;
    let ln_nl = (n as f64 * l as f64).ln();
    let even_chain = |k: f64| k * (8.0 * E / k).ln() + k / 2.0 * ln_nl;
    let odd_chain = |k: f64| k * (8.0 * E / k).ln() + (k - 1.0) / 2.0 * ln_nl;
    let even_ok = (2..=2 * t).all(|k| {
        let k = k as f64;
        even_chain(k - 1.0) <= even_chain(k) + SNAP
    });
    let odd_ok = (2..=2 * t + 1).all(|k| {
        let k = k as f64;
        odd_chain(k - 1.0) <= odd_chain(k) + SNAP
    });
    Ok(even_ok && odd_ok)
}

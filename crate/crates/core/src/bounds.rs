//! Bounds on `R_t(r, m)`.
//!
//! Certified bounds hold at the exact parameters given and are safe to use
//! as radius certificates. Display bounds evaluate asymptotic formulas with
//! their `o(1)` / `O(.)` terms dropped and are never certified.
//!
//! Real-valued upper bounds are floored and lower bounds ceiled, since the
//! radius is an integer. A relative slack of `1e-9` is applied first so that
//! rounding noise can only loosen a bound, never tighten it.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact::closed_form_exact;
use crate::rm::rm_dimension;

const SLACK: f64 = 1e-9;
const MAX_T: usize = 20;
const MAX_M: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    ExactClosedForm,
    BallCovering,
    DualDistance,
    Binomial,
    ImprovedBinomial,
    RecursionDp,
    AsymptoticConstantR,
    AsymptoticConstantS,
    AsymptoticAlphaLowImproved,
    AsymptoticAlphaLow,
    AsymptoticAlphaHigh,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::ExactClosedForm => "exact-closed-form",
            BoundSource::BallCovering => "ball-covering",
            BoundSource::DualDistance => "dual-distance",
            BoundSource::Binomial => "binomial",
            BoundSource::ImprovedBinomial => "improved-binomial",
            BoundSource::RecursionDp => "recursion-dp",
            BoundSource::AsymptoticConstantR => "asymptotic-constant-r",
            BoundSource::AsymptoticConstantS => "asymptotic-constant-s",
            BoundSource::AsymptoticAlphaLowImproved => "asymptotic-alpha-low-improved",
            BoundSource::AsymptoticAlphaLow => "asymptotic-alpha-low",
            BoundSource::AsymptoticAlphaHigh => "asymptotic-alpha-high",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub source: BoundSource,
    pub side: Side,
    pub raw: f64,
    /// Floor of `raw` for upper bounds, ceiling for lower bounds.
    pub integer_form: i64,
    pub certified: bool,
    /// What was dropped to get a number out of an asymptotic statement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<&'static str>,
}

impl BoundValue {
    pub fn upper(source: BoundSource, raw: f64) -> Self {
        Self {
            source,
            side: Side::Upper,
            raw,
            integer_form: (raw + SLACK * raw.abs().max(1.0)).floor() as i64,
            certified: true,
            caveat: None,
        }
    }

    pub fn lower(source: BoundSource, raw: f64) -> Self {
        Self {
            source,
            side: Side::Lower,
            raw,
            integer_form: (raw - SLACK * raw.abs().max(1.0)).ceil() as i64,
            certified: true,
            caveat: None,
        }
    }

    fn exact_integer(source: BoundSource, side: Side, value: u64) -> Self {
        Self {
            source,
            side,
            raw: value as f64,
            integer_form: value as i64,
            certified: true,
            caveat: None,
        }
    }

    /// Marks an approximation; outside its regime it can go negative, and radii cannot.
    fn display(mut self, caveat: &'static str) -> Self {
        self.integer_form = self.integer_form.max(0);
        self.certified = false;
        self.caveat = Some(caveat);
        self
    }
}

/// Validated `(t, r, m)` with the derived regime parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub t: usize,
    pub r: usize,
    pub m: usize,
}

impl BoundQuery {
    pub fn new(t: usize, r: usize, m: usize) -> Result<Self> {
        if t == 0 || t > MAX_T {
            return Err(invalid(format!("t={t} must lie in 1..={MAX_T}")));
        }
        if m > MAX_M {
            return Err(invalid(format!("m={m} exceeds {MAX_M}")));
        }
        if r > m {
            return Err(invalid(format!("r={r} exceeds m={m}")));
        }
        Ok(Self { t, r, m })
    }

    /// `r / m`.
    pub fn alpha(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.r as f64 / self.m as f64
        }
    }

    /// `m - r`.
    pub fn s(&self) -> usize {
        self.m - self.r
    }

    fn q(&self) -> f64 {
        (self.t as f64).exp2()
    }

    /// `(1 - 2^-t) 2^m`, the leading term shared by most bounds.
    fn leading(&self) -> f64 {
        (1.0 - 1.0 / self.q()) * (self.m as f64).exp2()
    }

    /// `sqrt(2^t - 1) / 2^t`.
    fn c(&self) -> f64 {
        (self.q() - 1.0).sqrt() / self.q()
    }
}

/// `sum_{i <= radius} C(n, i) (q - 1)^i`, exactly.
pub fn ball_volume(q: u64, n: u64, radius: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(invalid("alphabet size must be at least 2"));
    }
    if radius > n {
        return Err(Error::Domain(format!("radius {radius} exceeds length {n}")));
    }
    let mut term = BigUint::one();
    let mut total = BigUint::one();
    for i in 0..radius {
        term = term * (n - i) * (q - 1) / (i + 1);
        total += &term;
    }
    Ok(total)
}

/// The q-ary entropy function, with `0 log 0 = 0`.
pub fn entropy(q: f64, x: f64) -> Result<f64> {
    if q < 2.0 || !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "entropy needs q >= 2 and x in [0,1], got q={q}, x={x}"
        )));
    }
    let xlogx = |p: f64| if p <= 0.0 { 0.0 } else { p * p.ln() };
    let ln_q = q.ln();
    Ok((x * (q - 1.0).ln() - xlogx(x) - xlogx(1.0 - x)) / ln_q)
}

/// `x (x-1) ... (x-j+1) / j!` for real `x`.
fn real_binomial(x: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        real_binomial(n as f64, k.min(n - k))
    }
}

/// `K_k(x; n, q) = sum_j (-1)^j C(x, j) C(n - x, k - j) (q - 1)^(k - j)`.
pub fn krawtchouk(k: usize, x: f64, n: f64, q: f64) -> f64 {
    (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * real_binomial(x, j)
                * real_binomial(n - x, k - j)
                * (q - 1.0).powi((k - j) as i32)
        })
        .sum()
}

/// Closed-form smallest root of `K_2(x; n, q)`.
fn second_krawtchouk_root(n: f64, q: f64) -> f64 {
    (1.0 - 1.0 / q) * n - 0.5 + 1.0 / q
        - ((4.0 * q - 4.0) * n + (q - 2.0).powi(2)).sqrt() / (2.0 * q)
}

/// Smallest real root `x(k, n; q)` of `K_k(.; n, q)`.
///
/// `k = 2` uses the closed form; other orders go through
/// [`krawtchouk_min_root_bisection`].
pub fn krawtchouk_min_root(k: usize, n: u64, q: u64) -> Result<f64> {
    match k {
        0 => Err(Error::Domain("K_0 is constant and has no root".into())),
        2 => Ok(second_krawtchouk_root(n as f64, q as f64)),
        _ => krawtchouk_min_root_bisection(k, n, q),
    }
}

/// Scans `[0, n]` in steps of `n / 1024` for the first sign change, then bisects to `1e-9`.
pub fn krawtchouk_min_root_bisection(k: usize, n: u64, q: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("K_0 is constant and has no root".into()));
    }
    let (nf, qf) = (n as f64, q as f64);
    let f = |x: f64| krawtchouk(k, x, nf, qf);
    let step = nf / 1024.0;
    let mut lo = 0.0;
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(0.0);
    }
    for i in 1..=1024 {
        let hi = step * i as f64;
        let f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if (f_lo > 0.0) != (f_hi > 0.0) {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                if b - a <= 1e-9 {
                    break;
                }
                let mid = 0.5 * (a + b);
                let f_mid = f(mid);
                if f_mid == 0.0 {
                    return Ok(mid);
                }
                if (f_mid > 0.0) == (f_lo > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Ok(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::Domain(format!(
        "no sign change of K_{k}(x; {n}, {q}) on [0, {n}]"
    )))
}

/// Smallest `rho` whose ball in GF(2^t)^(2^m) is at least `2^(t (2^m - k))`.
///
/// Exact integer arithmetic throughout; the cost grows like
/// `rho * t * 2^m` bit operations.
pub fn lb_ball_covering(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    let query = BoundQuery::new(t, r, m)?;
    if m > 30 {
        return Err(invalid("ball-covering bound needs m <= 30"));
    }
    let n = 1u64 << query.m;
    let redundancy = n - rm_dimension(r, m);
    let target = BigUint::one() << (t as u64 * redundancy);
    let q_minus_1 = (1u64 << t) - 1;
    let mut term = BigUint::one();
    let mut volume = BigUint::one();
    let mut rho = 0u64;
    while volume < target {
        term = term * (n - rho) * q_minus_1 / (rho + 1);
        volume += &term;
        rho += 1;
    }
    debug_assert!(!volume.is_zero());
    Ok(BoundValue::exact_integer(
        BoundSource::BallCovering,
        Side::Lower,
        rho,
    ))
}

/// `floor(x(2, 2^m; 2^t))`: the dual distance of `RM(1, m)` is 4.
pub fn ub_dual_distance(t: usize, m: usize) -> Result<BoundValue> {
    let query = BoundQuery::new(t, 1.min(m), m)?;
    if m < 2 {
        return Err(invalid("the dual-distance bound needs m >= 2"));
    }
    let raw = second_krawtchouk_root((m as f64).exp2(), query.q());
    Ok(BoundValue::upper(BoundSource::DualDistance, raw))
}

/// `(1 - 2^-t) 2^m - sqrt(2^t - 1) / 2^t * C(m, r)` for `1 <= r <= m`.
pub fn ub_binom(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    let query = BoundQuery::new(t, r, m)?;
    if r == 0 {
        return Err(invalid("the binomial bound needs r >= 1"));
    }
    let raw = query.leading() - query.c() * binomial_f64(m, r);
    Ok(BoundValue::upper(BoundSource::Binomial, raw))
}

/// Whether the sharpened binomial bound applies: `2 <= r <= m / (2 + sqrt 2)`, `m >= 3`.
pub fn improved_binom_applies(r: usize, m: usize) -> bool {
    r >= 2 && m >= 3 && (2.0 + std::f64::consts::SQRT_2) * r as f64 <= m as f64
}

/// `(1 - 2^-t) 2^m - c (1 + sqrt 2)^(r-1) 2^((m-1)/2) + c 2^(-1/4) r C(m, r)`.
pub fn ub_improved_binom(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    let query = BoundQuery::new(t, r, m)?;
    if !improved_binom_applies(r, m) {
        return Err(Error::NotApplicable(format!(
            "needs 2 <= r <= m/(2+sqrt 2) and m >= 3, got r={r}, m={m}"
        )));
    }
    let c = query.c();
    let silver = 1.0 + std::f64::consts::SQRT_2;
    let raw = query.leading() - c * silver.powi(r as i32 - 1) * ((m as f64 - 1.0) / 2.0).exp2()
        + c / 2f64.powf(0.25) * r as f64 * binomial_f64(m, r);
    Ok(BoundValue::upper(BoundSource::ImprovedBinomial, raw))
}

/// Table of the recursion bound, indexed `[m'][r']` for `r' <= m' <= m_max`.
fn dp_table(t: usize, m_max: usize) -> Result<Vec<Vec<u64>>> {
    let single = if t > 1 {
        Some(dp_table(1, m_max)?)
    } else {
        None
    };
    let mut table: Vec<Vec<u64>> = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let mut row = Vec::with_capacity(m + 1);
        for r in 0..=m {
            let mut best = u64::MAX;
            let mut offer = |v: u64| best = best.min(v);
            if let Some(exact) = closed_form_exact(t, r, m) {
                offer(exact);
            }
            if r == 1 && m >= 2 {
                offer(ub_dual_distance(t, m)?.integer_form.max(0) as u64);
            }
            if r >= 1 {
                offer(ub_binom(t, r, m)?.integer_form.max(0) as u64);
                if improved_binom_applies(r, m) {
                    offer(ub_improved_binom(t, r, m)?.integer_form.max(0) as u64);
                }
            }
            if r >= 1 && r < m {
                let prev: &Vec<u64> = &table[m - 1];
                offer(prev[r - 1] + prev[r]);
            }
            if let Some(single) = &single {
                offer((t as u64).saturating_mul(single[m][r]));
            }
            row.push(best);
        }
        table.push(row);
    }
    Ok(table)
}

/// Dynamic program over `(r', m')` combining the exact base cases, the
/// `(u, u+v)` recursion, subadditivity against the `t = 1` table, and the
/// closed-form bounds at every cell.
pub fn ub_dp(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    BoundQuery::new(t, r, m)?;
    let table = dp_table(t, m)?;
    Ok(BoundValue::exact_integer(
        BoundSource::RecursionDp,
        Side::Upper,
        table[m][r],
    ))
}

/// Every certified upper bound that applies at `(t, r, m)`.
pub fn certified_upper_bounds(t: usize, r: usize, m: usize) -> Result<Vec<BoundValue>> {
    BoundQuery::new(t, r, m)?;
    let mut out = Vec::new();
    if let Some(exact) = closed_form_exact(t, r, m) {
        out.push(BoundValue::exact_integer(
            BoundSource::ExactClosedForm,
            Side::Upper,
            exact,
        ));
    }
    if r == 1 && m >= 2 {
        out.push(ub_dual_distance(t, m)?);
    }
    if r >= 1 {
        out.push(ub_binom(t, r, m)?);
    }
    if improved_binom_applies(r, m) {
        out.push(ub_improved_binom(t, r, m)?);
    }
    out.push(ub_dp(t, r, m)?);
    Ok(out)
}

/// The least certified upper bound at `(t, r, m)`.
pub fn best_upper_bound(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    let all = certified_upper_bounds(t, r, m)?;
    let mut best = all[0].clone();
    for b in &all[1..] {
        if b.integer_form < best.integer_form {
            best = b.clone();
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `r` fixed as `m` grows.
    ConstantR,
    /// `s = m - r` fixed, `s >= 3`.
    ConstantS,
    /// `alpha = r / m` fixed in `(0, 1)`.
    Alpha,
}

/// Evaluates the asymptotic formula for the regime with its vanishing terms dropped.
pub fn asymptotic_display(
    t: usize,
    r: usize,
    m: usize,
    regime: Regime,
    side: Side,
) -> Result<BoundValue> {
    let query = BoundQuery::new(t, r, m)?;
    let (q, c, lead) = (query.q(), query.c(), query.leading());
    let mf = m as f64;
    let ln2 = std::f64::consts::LN_2;
    let half_len = (mf / 2.0).exp2();
    let mk = |source, raw: f64, caveat| match side {
        Side::Upper => BoundValue::upper(source, raw).display(caveat),
        Side::Lower => BoundValue::lower(source, raw).display(caveat),
    };
    match regime {
        Regime::ConstantR => {
            if r == 0 {
                return Err(Error::NotApplicable(
                    "constant-r formulas need r >= 1".into(),
                ));
            }
            Ok(match side {
                Side::Upper => {
                    let silver = 1.0 + std::f64::consts::SQRT_2;
                    let raw = lead - c * silver.powi(r as i32 - 1) * half_len;
                    mk(
                        BoundSource::AsymptoticConstantR,
                        raw,
                        "O(m^(r-2)) term dropped",
                    )
                }
                Side::Lower => {
                    let factorial: f64 = (1..=r).map(|i| i as f64).product();
                    let coeff = (2.0 * t as f64 * (q - 1.0) * ln2).sqrt() / (q * factorial.sqrt());
                    let raw = lead - coeff * mf.powf(r as f64 / 2.0) * half_len;
                    mk(
                        BoundSource::AsymptoticConstantR,
                        raw,
                        "(1+o(1)) factor dropped",
                    )
                }
            })
        }
        Regime::ConstantS => {
            let s = query.s();
            if s < 3 {
                return Err(Error::NotApplicable(format!(
                    "constant-s formulas need s >= 3, got {s}"
                )));
            }
            let power = mf.powi(s as i32 - 2);
            Ok(match side {
                Side::Upper => {
                    let fact: f64 = (1..=s - 2).map(|i| i as f64).product();
                    mk(
                        BoundSource::AsymptoticConstantS,
                        t as f64 / fact * power,
                        "O(m^(s-3)) term dropped",
                    )
                }
                Side::Lower => {
                    let fact: f64 = (1..=s - 1).map(|i| i as f64).product();
                    mk(
                        BoundSource::AsymptoticConstantS,
                        t as f64 / fact * power,
                        "O(m^(s-3) log m) term dropped",
                    )
                }
            })
        }
        Regime::Alpha => {
            let alpha = query.alpha();
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::NotApplicable(format!(
                    "alpha = r/m must lie in (0,1), got {alpha}"
                )));
            }
            let h = entropy(2.0, alpha)?;
            let low_cut = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
            Ok(match side {
                Side::Upper if alpha < low_cut => {
                    let exponent = mf * (0.5 + alpha * (1.0 + std::f64::consts::SQRT_2).log2());
                    let raw = lead - c / (2.0 + std::f64::consts::SQRT_2) * exponent.exp2();
                    mk(
                        BoundSource::AsymptoticAlphaLowImproved,
                        raw,
                        "(1+o(1)) factor dropped",
                    )
                }
                Side::Upper if alpha <= 0.5 => {
                    let raw =
                        lead - c / (8.0 * mf * alpha * (1.0 - alpha)).sqrt() * (mf * h).exp2();
                    mk(
                        BoundSource::AsymptoticAlphaLow,
                        raw,
                        "binomial estimate assumes alpha*m integral",
                    )
                }
                Side::Upper => {
                    let raw = t as f64 * (2.0 * h).exp2() * (mf * h).exp2();
                    mk(
                        BoundSource::AsymptoticAlphaHigh,
                        raw,
                        "(1+o(1)) factor dropped",
                    )
                }
                Side::Lower if alpha <= 0.5 => {
                    let coeff = (2.0 * t as f64 * (q - 1.0) * ln2).sqrt() / q;
                    let raw = lead - coeff * (mf / 2.0 * (1.0 + h)).exp2();
                    mk(
                        BoundSource::AsymptoticAlphaLow,
                        raw,
                        "(1+o(1)) factor dropped",
                    )
                }
                Side::Lower => {
                    let raw = t as f64
                        * ((1.0 - alpha) / (8.0 * (alpha * mf).powi(3))).sqrt()
                        * (mf * h).exp2();
                    mk(
                        BoundSource::AsymptoticAlphaHigh,
                        raw,
                        "(1+o(1)) factor dropped",
                    )
                }
            })
        }
    }
}

/// One `(rho, rate)` point from an RM code with a certified radius bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaPoint {
    pub rho: f64,
    pub rate: f64,
    pub r: usize,
    pub m: usize,
    pub source: BoundSource,
    pub certified: bool,
}

/// `(U_t(r, m) / 2^m, dim RM(r, m) / 2^m)` for `2 <= m <= m_max`, `1 <= r <= m`.
pub fn kappa_points(t: usize, m_max: usize) -> Result<Vec<KappaPoint>> {
    if m_max < 2 {
        return Err(invalid("m_max must be at least 2"));
    }
    let mut out = Vec::new();
    for m in 2..=m_max {
        let n = (m as f64).exp2();
        let table = dp_table(t, m)?;
        for (r, &dp) in table[m].iter().enumerate().skip(1) {
            // best_upper_bound, reusing one table per m
            let mut best = BoundValue::exact_integer(BoundSource::RecursionDp, Side::Upper, dp);
            if let Some(exact) = closed_form_exact(t, r, m) {
                if exact as i64 <= best.integer_form {
                    best =
                        BoundValue::exact_integer(BoundSource::ExactClosedForm, Side::Upper, exact);
                }
            }
            out.push(KappaPoint {
                rho: best.integer_form as f64 / n,
                rate: rm_dimension(r, m) as f64 / n,
                r,
                m,
                source: best.source,
                certified: best.certified,
            });
        }
    }
    Ok(out)
}

/// `1 - H_q(rho / t)`.
pub fn kappa_entropy_curve(t: usize, q: f64, rho: f64) -> Result<f64> {
    if t == 0 {
        return Err(invalid("t must be at least 1"));
    }
    let max_rho = t as f64 * (1.0 - 1.0 / q);
    if !(0.0..=max_rho + 1e-12).contains(&rho) {
        return Err(Error::Domain(format!("rho={rho} outside [0, {max_rho}]")));
    }
    Ok(1.0 - entropy(q, (rho / t as f64).min(1.0 - 1.0 / q))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volume_examples() {
        assert_eq!(ball_volume(2, 4, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(ball_volume(4, 8, 2).unwrap(), BigUint::from(277u32));
        assert_eq!(ball_volume(2, 3, 3).unwrap(), BigUint::from(8u32));
        assert!(ball_volume(2, 3, 4).is_err());
    }

    #[test]
    fn ball_volume_monotone_and_full() {
        for t in 1..=3u32 {
            let q = 1u64 << t;
            for n in 1..=10u64 {
                let mut prev = BigUint::zero();
                for r in 0..=n {
                    let v = ball_volume(q, n, r).unwrap();
                    assert!(v > prev);
                    prev = v;
                }
                assert_eq!(prev, BigUint::from(q).pow(n as u32));
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(2.0, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(entropy(3.0, 0.0).unwrap(), 0.0);
        assert!((entropy(4.0, 0.75).unwrap() - 1.0).abs() < 1e-12);
        assert!(entropy(2.0, 1.5).is_err());
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(0, 3.7, 8.0, 2.0), 1.0);
        assert!(krawtchouk(1, 4.0, 8.0, 2.0).abs() < 1e-12);
        let root = krawtchouk_min_root(2, 8, 2).unwrap();
        assert!(krawtchouk(2, root, 8.0, 2.0).abs() < 1e-9);
        assert!((root - (4.0 - 32f64.sqrt() / 4.0)).abs() < 1e-12);
        assert!(krawtchouk_min_root(0, 8, 2).is_err());
    }

    #[test]
    fn linear_root() {
        for (n, q) in [(8u64, 2u64), (16, 4), (100, 8)] {
            let x = krawtchouk_min_root(1, n, q).unwrap();
            let expected = (q - 1) as f64 * n as f64 / q as f64;
            assert!(
                (x - expected).abs() < 1e-8,
                "n={n} q={q}: {x} vs {expected}"
            );
        }
    }

    #[test]
    fn relaxed_root_inequality() {
        for t in 1..=4 {
            for m in 2..=12 {
                let (n, q) = ((m as f64).exp2(), (t as f64).exp2());
                let x = krawtchouk_min_root(2, 1 << m, 1 << t).unwrap();
                let relaxed = (1.0 - 1.0 / q) * n - ((q - 1.0) * n).sqrt() / q;
                assert!(x <= relaxed + 1e-9);
            }
        }
    }

    #[test]
    fn bisection_matches_closed_form() {
        for q in [2u64, 4, 8] {
            for n in 4..=1024u64 {
                let closed = krawtchouk_min_root(2, n, q).unwrap();
                let scanned = krawtchouk_min_root_bisection(2, n, q).unwrap();
                assert!(
                    (closed - scanned).abs() < 1e-6,
                    "n={n} q={q}: {closed} vs {scanned}"
                );
            }
        }
    }

    #[test]
    fn ball_covering_examples() {
        assert_eq!(lb_ball_covering(1, 1, 3).unwrap().integer_form, 2);
        assert_eq!(lb_ball_covering(2, 1, 3).unwrap().integer_form, 2);
        for t in 1..=3 {
            for m in 0..=5 {
                assert_eq!(lb_ball_covering(t, m, m).unwrap().integer_form, 0);
            }
        }
    }

    #[test]
    fn dual_distance_examples() {
        assert_eq!(ub_dual_distance(1, 3).unwrap().integer_form, 2);
        assert_eq!(ub_dual_distance(1, 4).unwrap().integer_form, 6);
        let b = ub_dual_distance(2, 2).unwrap();
        assert!((b.raw - 1.848).abs() < 1e-3);
        assert_eq!(b.integer_form, 1);
        assert!(ub_dual_distance(1, 1).is_err());
    }

    #[test]
    fn binom_examples() {
        assert_eq!(ub_binom(1, 1, 4).unwrap().integer_form, 6);
        for m in 1..=10 {
            assert_eq!(ub_binom(1, m, m).unwrap().integer_form, (1 << (m - 1)) - 1);
        }
        let b = ub_binom(2, 1, 3).unwrap();
        assert!((b.raw - 4.70).abs() < 0.01);
        assert_eq!(b.integer_form, 4);
    }

    #[test]
    fn improved_binom_range() {
        assert!(ub_improved_binom(1, 2, 7).is_ok());
        assert!(matches!(
            ub_improved_binom(1, 2, 6),
            Err(Error::NotApplicable(_))
        ));
        let improved = ub_improved_binom(1, 2, 7).unwrap();
        let lower = lb_ball_covering(1, 2, 7).unwrap();
        assert!(improved.integer_form >= lower.integer_form);
    }

    #[test]
    fn dp_examples() {
        for t in 1..=3 {
            for m in 0..=6 {
                assert_eq!(ub_dp(t, m, m).unwrap().integer_form, 0);
            }
        }
        assert_eq!(ub_dp(1, 1, 3).unwrap().integer_form, 2);
        assert!(ub_dp(2, 1, 4).unwrap().integer_form <= ub_binom(2, 1, 4).unwrap().integer_form);
    }

    #[test]
    fn dp_is_minimal_over_its_transitions() {
        for t in 1..=4 {
            for m in 1..=12 {
                for r in 1..=m {
                    let dp = ub_dp(t, r, m).unwrap().integer_form;
                    assert!(dp <= ub_binom(t, r, m).unwrap().integer_form);
                    assert!(dp <= t as i64 * ub_dp(1, r, m).unwrap().integer_form);
                }
            }
        }
    }

    #[test]
    fn best_upper_examples() {
        for t in 1..=3 {
            assert_eq!(best_upper_bound(t, 4, 4).unwrap().integer_form, 0);
        }
        assert_eq!(best_upper_bound(1, 1, 3).unwrap().integer_form, 2);
        assert_eq!(best_upper_bound(2, 1, 3).unwrap().integer_form, 3);
    }

    #[test]
    fn display_examples() {
        for m in 2..=10 {
            let b = asymptotic_display(1, 1, m, Regime::ConstantR, Side::Upper).unwrap();
            let expected = 0.5 * (m as f64).exp2() - 0.5 * (m as f64 / 2.0).exp2();
            assert!((b.raw - expected).abs() < 1e-9);
            assert!(!b.certified);
            assert!(b.caveat.is_some());
        }
        let b = asymptotic_display(1, 5, 10, Regime::Alpha, Side::Lower).unwrap();
        let expected = 512.0 - (2.0 * std::f64::consts::LN_2).sqrt() / 2.0 * 2f64.powf(10.0);
        assert!((b.raw - expected).abs() < 1e-6);
        assert!(!b.certified);

        let b = asymptotic_display(3, 5, 5, Regime::ConstantR, Side::Upper).unwrap();
        assert!(b.raw < 0.0);
        assert_eq!(b.integer_form, 0);

        let b = asymptotic_display(2, 7, 10, Regime::ConstantS, Side::Upper).unwrap();
        assert!((b.raw - 20.0).abs() < 1e-12);
        assert!(asymptotic_display(2, 8, 10, Regime::ConstantS, Side::Upper).is_err());
        assert!(asymptotic_display(2, 0, 10, Regime::Alpha, Side::Upper).is_err());
    }

    #[test]
    fn kappa_examples() {
        let pts = kappa_points(1, 6).unwrap();
        assert!(pts.iter().all(|p| p.certified));
        let full = pts.iter().find(|p| p.r == p.m).unwrap();
        assert_eq!((full.rho, full.rate), (0.0, 1.0));
        let p = pts.iter().find(|p| p.r == 1 && p.m == 3).unwrap();
        assert_eq!((p.rho, p.rate), (0.25, 0.5));
        for t in 1..=3 {
            let cap = 1.0 - (-(t as f64)).exp2() + 1e-12;
            assert!(kappa_points(t, 8)
                .unwrap()
                .iter()
                .all(|p| (0.0..=cap).contains(&p.rho)));
        }
    }

    #[test]
    fn kappa_points_agree_with_best_upper_bound() {
        for t in 1..=3 {
            for p in kappa_points(t, 7).unwrap() {
                let b = best_upper_bound(t, p.r, p.m).unwrap();
                assert_eq!(p.rho, b.integer_form as f64 / (p.m as f64).exp2());
            }
        }
    }

    #[test]
    fn entropy_curve_examples() {
        assert_eq!(kappa_entropy_curve(3, 2.0, 0.0).unwrap(), 1.0);
        assert!(kappa_entropy_curve(3, 2.0, 1.5).unwrap().abs() < 1e-12);
        assert!(kappa_entropy_curve(2, 4.0, 1.5).unwrap().abs() < 1e-12);
        assert!(kappa_entropy_curve(3, 2.0, 1.6).is_err());
    }
}

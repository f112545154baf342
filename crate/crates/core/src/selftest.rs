//! Small-instance consistency suites behind `rmcover selftest`.
//!
//! Each suite returns a [`SuiteReport`] listing what it checked and what
//! failed; nothing panics. The suites are deterministic given the seed.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    best_upper_bound, lb_ball_covering, ub_binom, ub_dp, ub_dual_distance, ub_improved_binom,
    BoundValue,
};
use crate::cover::{cover, CoverOptions};
use crate::error::{Error, Result};
use crate::exact::{closed_form_exact, exact_rt_geometric, exact_rt_lifted, exact_rt_span, Caps};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::planner::Planner;
use crate::rm::{rm, LinearCode};

/// A certified upper bound on `R_t(r, m)` as a function of `(t, r, m)`.
pub type UpperBoundFn = fn(usize, usize, usize) -> Result<BoundValue>;

fn dual_distance_at(t: usize, r: usize, m: usize) -> Result<BoundValue> {
    if r != 1 {
        return Err(Error::NotApplicable(
            "dual-distance bound is for r = 1".into(),
        ));
    }
    ub_dual_distance(t, m)
}

/// The library's certified upper bounds, by name.
pub fn library_upper_bounds() -> Vec<(&'static str, UpperBoundFn)> {
    vec![
        ("binomial", ub_binom),
        ("improved-binomial", ub_improved_binom),
        ("dual-distance", dual_distance_at),
        ("recursion-dp", ub_dp),
        ("best", best_upper_bound),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.checked += 1;
        self.failures.push(message);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random inputs per parameter set for the decoder and planner suites.
    pub samples: usize,
    pub caps: Caps,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 100,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed={}", self.seed)?;
        writeln!(
            f,
            "{:<20} {:>8} {:>8} {:>8}  status",
            "suite", "checked", "skipped", "failed"
        )?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<20} {:>8} {:>8} {:>8}  {}",
                s.name,
                s.checked,
                s.skipped,
                s.failures.len(),
                if s.passed() { "PASS" } else { "FAIL" }
            )?;
        }
        for s in &self.suites {
            for failure in s.failures.iter().take(10) {
                writeln!(f, "  {}: {failure}", s.name)?;
            }
        }
        writeln!(f, "overall {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// A random binary code of length `n` with a full-rank generator.
pub fn random_code(rng: &mut impl Rng, n: usize) -> LinearCode {
    let k = rng.gen_range(0..=n);
    let rows: Vec<BitVector> = (0..k)
        .map(|_| BitVector::from_bits((0..n).map(|_| rng.gen::<bool>())))
        .collect();
    let raw = BitMatrix::from_rows(rows, n).expect("rows have length n");
    let basis = BitMatrix::from_rows(Echelon::new(&raw).rows, n).expect("rows have length n");
    LinearCode::from_generator(basis).expect("echelon rows are independent")
}

fn random_matrix(rng: &mut impl Rng, t: usize, n: usize) -> BitMatrix {
    let rows = (0..t)
        .map(|_| BitVector::from_bits((0..n).map(|_| rng.gen::<bool>())))
        .collect();
    BitMatrix::from_rows(rows, n).expect("rows have length n")
}

/// Runs all three exhaustive oracles on `code` and checks they agree.
fn compare_oracles(
    report: &mut SuiteReport,
    label: &str,
    code: &LinearCode,
    t: usize,
    caps: &Caps,
) {
    let results = (
        exact_rt_geometric(code, t, caps).map(|r| r.exact),
        exact_rt_span(code, t, caps),
        exact_rt_lifted(code, t, caps),
    );
    match results {
        (Ok(a), Ok(b), Ok(c)) => report.check(a == b && b == c, || {
            format!("{label} t={t}: geometric={a} span={b} lifted={c}")
        }),
        (Err(Error::CapExceeded { .. }), _, _)
        | (_, Err(Error::CapExceeded { .. }), _)
        | (_, _, Err(Error::CapExceeded { .. })) => report.skipped += 1,
        (a, b, c) => report.fail(format!("{label} t={t}: {a:?} {b:?} {c:?}")),
    }
}

/// The three exact oracles agree on `RM(r, m)`, `m <= m_max`, and on random codes.
pub fn oracle_equivalence_suite(
    seed: u64,
    caps: &Caps,
    m_max: usize,
    t_max: usize,
    random_codes: usize,
) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-equivalence");
    for m in 0..=m_max {
        for r in 0..=m {
            let code = rm(r, m).expect("small parameters");
            for t in 1..=t_max {
                compare_oracles(&mut report, &format!("RM({r},{m})"), &code, t, caps);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_codes {
        let n = rng.gen_range(1..=8);
        let code = random_code(&mut rng, n);
        for t in 1..=t_max {
            compare_oracles(
                &mut report,
                &format!("random code #{i} [{n},{}]", code.dimension()),
                &code,
                t,
                caps,
            );
        }
    }
    report
}

/// Brute force reproduces every closed-form value within the caps.
pub fn closed_form_suite(caps: &Caps, m_max: usize, t_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("closed-forms");
    for m in 0..=m_max {
        for r in 0..=m {
            let code = rm(r, m).expect("small parameters");
            for t in 1..=t_max {
                let Some(expected) = closed_form_exact(t, r, m) else {
                    continue;
                };
                match exact_rt_geometric(&code, t, caps) {
                    Ok(got) => report.check(got.exact as u64 == expected, || {
                        format!(
                            "R_{t}({r},{m}): search {} vs closed form {expected}",
                            got.exact
                        )
                    }),
                    Err(Error::CapExceeded { .. }) => report.skipped += 1,
                    Err(e) => report.fail(format!("R_{t}({r},{m}): {e}")),
                }
            }
        }
    }
    report
}

/// Exact values computed once per suite run.
struct ExactCache<'a> {
    caps: &'a Caps,
    values: HashMap<(usize, usize, usize), Option<usize>>,
}

impl ExactCache<'_> {
    fn get(&mut self, t: usize, r: usize, m: usize) -> Option<usize> {
        let caps = self.caps;
        *self.values.entry((t, r, m)).or_insert_with(|| {
            rm(r, m)
                .ok()
                .and_then(|code| exact_rt_geometric(&code, t, caps).ok())
                .map(|rep| rep.exact)
        })
    }
}

/// `lower <= exact <= upper` for every supplied upper bound that applies.
pub fn sandwich_suite(
    uppers: &[(&str, UpperBoundFn)],
    caps: &Caps,
    m_max: usize,
    t_max: usize,
) -> SuiteReport {
    let mut report = SuiteReport::new("sandwich");
    let mut cache = ExactCache {
        caps,
        values: HashMap::new(),
    };
    for m in 0..=m_max {
        for r in 0..=m {
            for t in 1..=t_max {
                let Some(exact) = cache.get(t, r, m) else {
                    report.skipped += 1;
                    continue;
                };
                let exact = exact as i64;
                match lb_ball_covering(t, r, m) {
                    Ok(lower) => report.check(lower.integer_form <= exact, || {
                        format!(
                            "R_{t}({r},{m})={exact} below the ball-covering bound {}",
                            lower.integer_form
                        )
                    }),
                    Err(e) => report.fail(format!("ball-covering at ({t},{r},{m}): {e}")),
                }
                for (name, upper) in uppers {
                    match upper(t, r, m) {
                        Ok(b) => report.check(b.integer_form >= exact, || {
                            format!(
                                "R_{t}({r},{m})={exact} above the {name} bound {}",
                                b.integer_form
                            )
                        }),
                        Err(Error::NotApplicable(_) | Error::InvalidParameters(_)) => {}
                        Err(e) => report.fail(format!("{name} at ({t},{r},{m}): {e}")),
                    }
                }
            }
        }
    }
    report
}

/// Decoder outputs are codewords within the certified radius.
pub fn cover_fuzz_suite(seed: u64, samples: usize, m_max: usize, t_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("cover-fuzz");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 0..=m_max {
        for r in 0..=m {
            let code = rm(r, m).expect("small parameters");
            for t in 1..=t_max {
                for _ in 0..samples {
                    let v = random_matrix(&mut rng, t, 1 << m);
                    match cover(&v, r, CoverOptions::default()) {
                        Ok(res) => {
                            let d = v.t_distance(&res.codeword).unwrap_or(usize::MAX);
                            report.check(
                                code.contains_rows(&res.codeword)
                                    && d == res.distance
                                    && res.distance as u64 <= res.guarantee,
                                || format!("({t},{r},{m}) input\n{v}\ndecoded\n{}", res.codeword),
                            );
                        }
                        Err(e) => report.fail(format!("({t},{r},{m}): {e}")),
                    }
                }
            }
        }
    }
    report
}

/// Every plan reproduces its queries within the probe budget.
pub fn planner_suite(seed: u64, samples: usize, m_max: usize, t_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("planner");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1..=m_max {
        for r in 1..=m {
            let planner = Planner::new(r, m).expect("small parameters");
            let len = planner.code().redundancy();
            for t in 1..=t_max {
                for _ in 0..samples {
                    let queries = random_matrix(&mut rng, t, len);
                    let outcome = planner
                        .plan(&queries)
                        .and_then(|p| planner.verify(&queries, &p));
                    if let Err(e) = outcome {
                        report.fail(format!("({t},{r},{m}): {e}"));
                    } else {
                        report.checked += 1;
                    }
                }
            }
        }
    }
    report
}

pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let caps = &config.caps;
    SelftestReport {
        seed: config.seed,
        suites: vec![
            oracle_equivalence_suite(config.seed, caps, 3, 2, 50),
            closed_form_suite(caps, 4, 3),
            sandwich_suite(&library_upper_bounds(), caps, 3, 3),
            cover_fuzz_suite(config.seed, config.samples, 6, 2),
            planner_suite(config.seed, config.samples, 6, 3),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundSource;

    fn negated_binomial(t: usize, r: usize, m: usize) -> Result<BoundValue> {
        let honest = ub_binom(t, r, m)?;
        // leading term with its sign flipped
        let lead = (1.0 - (-(t as f64)).exp2()) * (m as f64).exp2();
        Ok(BoundValue::upper(
            BoundSource::Binomial,
            honest.raw - 2.0 * lead,
        ))
    }

    #[test]
    fn sandwich_catches_a_broken_bound() {
        let caps = Caps::default();
        assert!(sandwich_suite(&library_upper_bounds(), &caps, 3, 2).passed());
        let broken = sandwich_suite(&[("binomial", negated_binomial)], &caps, 3, 2);
        assert!(!broken.passed());
    }

    #[test]
    fn quick_suites_pass() {
        let caps = Caps::default();
        assert!(closed_form_suite(&caps, 3, 2).passed());
        assert!(oracle_equivalence_suite(1, &caps, 2, 2, 5).passed());
        assert!(cover_fuzz_suite(1, 3, 4, 2).passed());
        assert!(planner_suite(1, 3, 4, 2).passed());
    }

    #[test]
    fn random_codes_are_seeded() {
        let a = random_code(&mut ChaCha8Rng::seed_from_u64(4), 6);
        let b = random_code(&mut ChaCha8Rng::seed_from_u64(4), 6);
        assert_eq!(a, b);
    }
}

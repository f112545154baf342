//! Answering a batch of parity queries with few probe positions.
//!
//! A query is a vector `s` of length `n - k`, to be written as a sum of
//! columns of the parity-check matrix `H` of `RM(r, m)`. For a batch of `t`
//! queries the planner picks one preimage per query, moves the batch to a
//! nearby coset representative with [`cover`], and reads off a shared index
//! set `I` so that every query is a combination of the columns `H_i`,
//! `i in I`. The number of probes `|I|` never exceeds [`guarantee`].

use serde::Serialize;

use crate::cover::{cover, guarantee, CoverOptions, CoverPath};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::rm::{rm, RmCode};

/// `t` queries against the parity-check matrix of `RM(r, m)`, one per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryBatch {
    pub queries: BitMatrix,
    pub r: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plan {
    /// Probe positions, sorted and 0-based.
    pub indices: Vec<usize>,
    /// Row `j` selects which probes sum to query `j`, in the order of `indices`.
    pub coefficients: BitMatrix,
    pub bound: u64,
    pub path: CoverPath,
}

/// A parity-check matrix ready to plan batches against.
#[derive(Debug, Clone)]
pub struct Planner {
    code: RmCode,
    options: CoverOptions,
}

impl Planner {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        Ok(Self {
            code: rm(r, m)?,
            options: CoverOptions::default(),
        })
    }

    pub fn with_options(mut self, options: CoverOptions) -> Self {
        self.options = options;
        self
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    fn check_queries(&self, queries: &BitMatrix) -> Result<()> {
        let redundancy = self.code.redundancy();
        if queries.num_cols() != redundancy || queries.num_rows() == 0 {
            return Err(Error::ShapeMismatch {
                expected: format!("at least one query of length {redundancy}"),
                got: format!("{} x {}", queries.num_rows(), queries.num_cols()),
            });
        }
        Ok(())
    }

    pub fn plan(&self, queries: &BitMatrix) -> Result<Plan> {
        self.check_queries(queries)?;
        let h = self.code.parity_check();
        let n = self.code.len();
        let preimages = queries
            .rows()
            .iter()
            .map(|s| h.solve(s))
            .collect::<Result<Vec<_>>>()?;
        let v = BitMatrix::from_rows(preimages, n)?;
        let r = self
            .code
            .order()
            .expect("planner codes are Reed-Muller codes");
        let covered = cover(&v, r, self.options)?;
        let residual = v.xor(&covered.codeword)?;
        let indices = residual.support_union().support();
        let coefficients = BitMatrix::from_rows(
            residual
                .rows()
                .iter()
                .map(|row| BitVector::from_bits(indices.iter().map(|&i| row.get(i))))
                .collect(),
            indices.len(),
        )?;
        Ok(Plan {
            indices,
            coefficients,
            bound: covered.guarantee,
            path: covered.path,
        })
    }

    /// Rebuilds every query from the probes and checks the probe budget.
    pub fn verify(&self, queries: &BitMatrix, plan: &Plan) -> Result<()> {
        self.check_queries(queries)?;
        let h = self.code.parity_check();
        let n = self.code.len();
        if plan.indices.windows(2).any(|w| w[0] >= w[1])
            || plan.indices.last().is_some_and(|&i| i >= n)
        {
            return Err(Error::Invariant(
                "probe indices must be sorted, distinct and in range".into(),
            ));
        }
        if plan.coefficients.num_rows() != queries.num_rows()
            || plan.coefficients.num_cols() != plan.indices.len()
        {
            return Err(Error::Invariant(
                "coefficient matrix has the wrong shape".into(),
            ));
        }
        for (j, query) in queries.rows().iter().enumerate() {
            let mut e = BitVector::zeros(n);
            for (pos, &i) in plan.indices.iter().enumerate() {
                if plan.coefficients.get(j, pos) {
                    e.set(i, true);
                }
            }
            if &h.mul_vec(&e)? != query {
                return Err(Error::Invariant(format!(
                    "query {j} is not reproduced by its probes"
                )));
            }
        }
        if plan.indices.len() as u64 > plan.bound {
            return Err(Error::Invariant(format!(
                "{} probes exceed the bound {}",
                plan.indices.len(),
                plan.bound
            )));
        }
        let certified = guarantee(
            queries.num_rows(),
            self.code.order().unwrap_or(0),
            self.code.m(),
        )?;
        if plan.bound > certified {
            return Err(Error::Invariant(format!(
                "bound {} is looser than the certificate {certified}",
                plan.bound
            )));
        }
        Ok(())
    }
}

/// Plans a single batch.
pub fn plan(batch: &QueryBatch) -> Result<Plan> {
    Planner::new(batch.r, batch.m)?.plan(&batch.queries)
}

/// Checks a plan against its batch.
pub fn verify(batch: &QueryBatch, plan: &Plan) -> Result<()> {
    Planner::new(batch.r, batch.m)?.verify(&batch.queries, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_queries(rng: &mut ChaCha8Rng, t: usize, len: usize) -> BitMatrix {
        let rows = (0..t)
            .map(|_| BitVector::from_bits((0..len).map(|_| rng.gen::<bool>())))
            .collect();
        BitMatrix::from_rows(rows, len).unwrap()
    }

    #[test]
    fn single_query_examples() {
        // RM(1, 3) is self-dual, every syndrome is reached with two probes
        let planner = Planner::new(1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let q = random_queries(&mut rng, 1, 4);
            let p = planner.plan(&q).unwrap();
            assert!(p.indices.len() <= 2);
            assert_eq!(p.bound, 2);
            planner.verify(&q, &p).unwrap();
        }
    }

    #[test]
    fn zero_queries_need_no_probes() {
        let planner = Planner::new(1, 4).unwrap();
        let q = BitMatrix::zeros(3, planner.code().redundancy());
        let p = planner.plan(&q).unwrap();
        assert!(p.indices.is_empty());
        assert_eq!(p.coefficients.num_cols(), 0);
        planner.verify(&q, &p).unwrap();
    }

    #[test]
    fn full_order_code_has_empty_queries() {
        let planner = Planner::new(3, 3).unwrap();
        let q = BitMatrix::zeros(2, 0);
        let p = planner.plan(&q).unwrap();
        assert!(p.indices.is_empty());
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for m in 1..=5 {
            for r in 0..m {
                let planner = Planner::new(r, m).unwrap();
                for t in 1..=3 {
                    for _ in 0..10 {
                        let q = random_queries(&mut rng, t, planner.code().redundancy());
                        let p = planner.plan(&q).unwrap();
                        planner.verify(&q, &p).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let planner = Planner::new(1, 3).unwrap();
        let q = BitMatrix::from_strs(&["1011"]).unwrap();
        let mut p = planner.plan(&q).unwrap();
        planner.verify(&q, &p).unwrap();
        let flipped = !p.coefficients.get(0, 0);
        p.coefficients.set(0, 0, flipped);
        assert!(matches!(planner.verify(&q, &p), Err(Error::Invariant(_))));
    }

    #[test]
    fn verify_rejects_lowered_bound() {
        let planner = Planner::new(1, 3).unwrap();
        let q = BitMatrix::from_strs(&["1011"]).unwrap();
        let mut p = planner.plan(&q).unwrap();
        assert!(!p.indices.is_empty());
        p.bound = p.indices.len() as u64 - 1;
        assert!(matches!(planner.verify(&q, &p), Err(Error::Invariant(_))));
    }

    #[test]
    fn single_column_queries() {
        for (r, m) in [(0, 3), (1, 3), (1, 4), (2, 4)] {
            let planner = Planner::new(r, m).unwrap();
            let h = planner.code().parity_check().clone();
            for j in 0..h.num_cols() {
                let q = BitMatrix::from_rows(vec![h.column(j)], h.num_rows()).unwrap();
                let p = planner.plan(&q).unwrap();
                assert!(p.indices.len() as u64 <= guarantee(1, r, m).unwrap());
                planner.verify(&q, &p).unwrap();
            }
        }
    }

    #[test]
    fn shape_errors() {
        let planner = Planner::new(1, 3).unwrap();
        assert!(planner.plan(&BitMatrix::zeros(1, 3)).is_err());
    }
}

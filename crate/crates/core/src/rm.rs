//! Binary linear codes and Reed-Muller codes built by the `(u, u+v)` recursion.

use crate::error::{invalid, Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Default cap on `t * k` for codeword enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// An `[n, k]` binary code with generator `G` (`k x n`) and parity-check `H` (`(n-k) x n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: BitMatrix,
    parity_check: BitMatrix,
}

impl LinearCode {
    /// Validates `G * H^T = 0`, `rank(G) = k` and `rank(H) = n - k`.
    pub fn new(generator: BitMatrix, parity_check: BitMatrix) -> Result<Self> {
        let n = generator.num_cols();
        if parity_check.num_cols() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("parity-check with {n} columns"),
                got: format!("{} columns", parity_check.num_cols()),
            });
        }
        let k = generator.num_rows();
        if generator.rank() != k {
            return Err(invalid("generator rows are linearly dependent"));
        }
        if parity_check.num_rows() != n - k || parity_check.rank() != n - k {
            return Err(invalid(format!(
                "parity-check must have full rank {}",
                n - k
            )));
        }
        let product = generator.mul_transpose(&parity_check)?;
        if !product.rows().iter().all(BitVector::is_zero) {
            return Err(invalid("G * H^T is not zero"));
        }
        Ok(Self {
            generator,
            parity_check,
        })
    }

    /// Takes the parity-check matrix to be a kernel basis of `G`.
    pub fn from_generator(generator: BitMatrix) -> Result<Self> {
        let parity_check = generator.kernel_basis();
        Self::new(generator, parity_check)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.generator.num_cols()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    #[inline]
    pub fn redundancy(&self) -> usize {
        self.parity_check.num_rows()
    }

    #[inline]
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    #[inline]
    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn dual(&self) -> Self {
        Self {
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        }
    }

    pub fn syndrome(&self, v: &BitVector) -> Result<BitVector> {
        self.parity_check.mul_vec(v)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.len() && self.syndrome(v).map(|s| s.is_zero()).unwrap_or(false)
    }

    /// Every row of `v` is a codeword.
    pub fn contains_rows(&self, v: &BitMatrix) -> bool {
        v.rows().iter().all(|r| self.contains(r))
    }

    /// `sum_j msg_j * G_j`, message bit `j` selecting generator row `j`.
    pub fn encode(&self, message: u64) -> BitVector {
        let mut out = BitVector::zeros(self.len());
        for (j, row) in self.generator.rows().iter().enumerate() {
            if j < 64 && (message >> j) & 1 == 1 {
                out ^= row;
            }
        }
        out
    }

    /// Minimum Hamming weight of a nonzero codeword, by exhaustive search.
    ///
    /// Enumerates messages when `k <= 24`; otherwise, when `n <= 24`,
    /// looks for the smallest set of dependent parity-check columns.
    pub fn min_distance(&self) -> Result<usize> {
        let (n, k) = (self.len(), self.dimension());
        if k == 0 {
            return Err(invalid("the zero code has no minimum distance"));
        }
        if k <= 24 {
            // Gray-code walk: one row addition per step.
            let mut word = BitVector::zeros(n);
            let mut best = usize::MAX;
            for step in 1u64..(1u64 << k) {
                let flip = step.trailing_zeros() as usize;
                word ^= self.generator.row(flip);
                best = best.min(word.weight());
            }
            return Ok(best);
        }
        if n <= 24 {
            let cols: Vec<u64> = self
                .parity_check
                .columns()
                .iter()
                .map(BitVector::to_u64)
                .collect();
            for w in 1..=n {
                if subsets_with_zero_sum(&cols, w) {
                    return Ok(w);
                }
            }
        }
        Err(Error::CapExceeded {
            what: "minimum-distance search",
            needed: k.min(n),
            cap: 24,
        })
    }

    /// All `(2^k)^t` elements of `C^t`, as `t x n` matrices.
    ///
    /// Order is lexicographic in the message tuple `(msg_0, ..., msg_{t-1})`,
    /// `msg_0` varying slowest; see [`LinearCode::encode`] for the message
    /// convention.
    pub fn codewords(&self, t: usize, cap: usize) -> Result<Codewords<'_>> {
        let bits = t * self.dimension();
        if bits > cap || bits >= 64 {
            return Err(Error::CapExceeded {
                what: "codeword enumeration",
                needed: bits,
                cap,
            });
        }
        Ok(Codewords {
            code: self,
            t,
            next: 0,
            total: 1u64 << bits,
        })
    }
}

fn subsets_with_zero_sum(cols: &[u64], size: usize) -> bool {
    fn go(cols: &[u64], start: usize, left: usize, acc: u64) -> bool {
        if left == 0 {
            return acc == 0;
        }
        (start..=cols.len() - left).any(|i| go(cols, i + 1, left - 1, acc ^ cols[i]))
    }
    size <= cols.len() && go(cols, 0, size, 0)
}

/// Iterator over `C^t`; see [`LinearCode::codewords`].
pub struct Codewords<'a> {
    code: &'a LinearCode,
    t: usize,
    next: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        if self.next >= self.total {
            return None;
        }
        let idx = self.next;
        self.next += 1;
        let k = self.code.dimension();
        let mask = if k == 0 { 0 } else { (1u64 << k) - 1 };
        let rows = (0..self.t)
            .map(|i| self.code.encode((idx >> (k * (self.t - 1 - i))) & mask))
            .collect();
        Some(BitMatrix::from_rows(rows, self.code.len()).expect("rows share the code length"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// The Reed-Muller code `RM(r, m)`, or the zero code of length `2^m` when
/// it stands for the dual of `RM(m, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmCode {
    order: Option<usize>,
    m: usize,
    code: LinearCode,
}

/// Builds `RM(r, m)`.
///
/// The generator is `[G(r, m-1) | G(r, m-1)]` stacked over
/// `[0 | G(r-1, m-1)]`, with `RM(0, m)` the all-ones row and `RM(m, m)` the
/// identity. The parity-check matrix is the generator of `RM(m-r-1, m)`.
pub fn rm(r: usize, m: usize) -> Result<RmCode> {
    if r > m {
        return Err(invalid(format!("RM order r={r} exceeds m={m}")));
    }
    if m > 20 {
        return Err(invalid(format!("m={m} exceeds the supported length 2^20")));
    }
    let generator = rm_generator(r, m);
    let parity_check = if r == m {
        BitMatrix::zeros(0, 1 << m)
    } else {
        rm_generator(m - r - 1, m)
    };
    Ok(RmCode {
        order: Some(r),
        m,
        code: LinearCode {
            generator,
            parity_check,
        },
    })
}

/// Generator of `RM(r, m)` by the `(u, u+v)` recursion.
pub fn rm_generator(r: usize, m: usize) -> BitMatrix {
    let n = 1usize << m;
    if r == 0 {
        return BitMatrix::from_rows(vec![BitVector::ones(n)], n).expect("one row");
    }
    if r == m {
        return BitMatrix::identity(n);
    }
    let upper = rm_generator(r, m - 1);
    let lower = rm_generator(r - 1, m - 1);
    let mut rows: Vec<BitVector> = upper.rows().iter().map(|u| u.concat(u)).collect();
    let zero = BitVector::zeros(n / 2);
    rows.extend(lower.rows().iter().map(|v| zero.concat(v)));
    BitMatrix::from_rows(rows, n).expect("rows have length 2^m")
}

/// `sum_{i <= r} C(m, i)`.
pub fn rm_dimension(r: usize, m: usize) -> u64 {
    (0..=r.min(m)).map(|i| binomial(m as u64, i as u64)).sum()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl RmCode {
    /// The zero code `{0}` of length `2^m`, dual to `RM(m, m)`.
    pub fn zero_code(m: usize) -> Self {
        let n = 1usize << m;
        RmCode {
            order: None,
            m,
            code: LinearCode {
                generator: BitMatrix::zeros(0, n),
                parity_check: BitMatrix::identity(n),
            },
        }
    }

    /// `Some(r)` for `RM(r, m)`, `None` for the zero code.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn into_code(self) -> LinearCode {
        self.code
    }

    /// `RM(m-r-1, m)`.
    pub fn dual(&self) -> RmCode {
        match self.order {
            None => rm(self.m, self.m).expect("valid order"),
            Some(r) if r == self.m => RmCode::zero_code(self.m),
            Some(r) => RmCode {
                order: Some(self.m - r - 1),
                m: self.m,
                code: self.code.dual(),
            },
        }
    }
}

impl std::ops::Deref for RmCode {
    type Target = LinearCode;
    fn deref(&self) -> &LinearCode {
        &self.code
    }
}

/// `v = (v1, v2)` split into left and right column halves.
pub fn uuv_split(v: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    let n = v.num_cols();
    if !n.is_multiple_of(2) {
        return Err(Error::ShapeMismatch {
            expected: "an even number of columns".into(),
            got: format!("{n}"),
        });
    }
    Ok(v.split_columns(n / 2))
}

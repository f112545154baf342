//! Exact generalized covering radii for small codes.
//!
//! Three independent routes compute `R_t(C)`:
//!
//! * [`exact_rt_geometric`]: breadth-first search over syndrome tuples.
//!   Layer `w` holds exactly the syndromes whose coset leader has t-weight
//!   `w`, because adding `a * h_j` twice on one column merges into a single
//!   column term. The radius is the depth of the last layer.
//! * [`exact_rt_span`]: the smallest `r` such that every `t`-tuple of
//!   syndromes lies in the span of some `r` columns of `H`.
//! * [`exact_rt_lifted`]: the ordinary covering radius of the code over
//!   GF(2^t), by multi-source search from every codeword through the whole
//!   symbol space under the Hamming metric.
//!
//! All three refuse instances beyond their [`Caps`] instead of truncating.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::rm::LinearCode;

/// Size limits for the exhaustive routines, in bits of state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// `t * (n - k)` for the syndrome search.
    pub syndrome_bits: usize,
    /// `t * n` for the whole-space search of the lifted code.
    pub space_bits: usize,
    /// `t * (n - k)` for the column-subset search.
    pub span_syndrome_bits: usize,
    /// Code length for the column-subset search.
    pub span_length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            syndrome_bits: 24,
            space_bits: 24,
            span_syndrome_bits: 16,
            span_length: 12,
        }
    }
}

impl Caps {
    /// Every bit cap set to `bits`; the length cap for subset search grows with it.
    pub fn uniform(bits: usize) -> Self {
        Self {
            syndrome_bits: bits,
            space_bits: bits,
            span_syndrome_bits: bits,
            span_length: bits.max(12),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Geometric,
    Span,
    Lifted,
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::Geometric => "geometric",
            Oracle::Span => "span",
            Oracle::Lifted => "lifted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusReport {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub exact: usize,
    pub oracle: Oracle,
    /// Lexicographically least `t x n` matrix at distance `exact` from `C^t`.
    pub witness: BitMatrix,
}

/// Bound on the table sizes below; also keeps packed states inside `u64`.
const HARD_LIMIT_BITS: usize = 34;

fn check_cap(what: &'static str, needed: usize, cap: usize) -> Result<()> {
    if needed > cap || needed > HARD_LIMIT_BITS {
        return Err(Error::CapExceeded {
            what,
            needed,
            cap: cap.min(HARD_LIMIT_BITS),
        });
    }
    Ok(())
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    Ok(())
}

/// Columns of `H` packed into integers, row `i` of `H` to bit `i`.
fn packed_columns(h: &BitMatrix) -> Vec<u64> {
    (0..h.num_cols()).map(|j| h.column_symbol(j)).collect()
}

/// Coset-leader sweep over all `(2^t)^(n-k)` syndrome tuples.
pub fn exact_rt_geometric(code: &LinearCode, t: usize, caps: &Caps) -> Result<RadiusReport> {
    check_t(t)?;
    let (n, k) = (code.len(), code.dimension());
    let red = n - k;
    let bits = t * red;
    check_cap("syndrome sweep", bits, caps.syndrome_bits)?;

    let moves = syndrome_moves(code.parity_check(), t);
    let dist = bfs_from(&[0u64], bits, moves.iter().map(|m| m.delta));
    let exact = dist.iter().copied().max().unwrap_or(0) as usize;

    // Least deepest matrix: over every deepest syndrome, the least member of
    // its coset, then the least of those.
    let ech = Echelon::new(code.generator());
    let mut witness: Option<BitMatrix> = None;
    for (s, &d) in dist.iter().enumerate() {
        if d as usize != exact {
            continue;
        }
        let leader = backtrack_leader(s as u64, &dist, &moves, t, n);
        let rows: Vec<BitVector> = leader.rows().iter().map(|r| ech.reduce(r)).collect();
        let candidate = BitMatrix::from_rows(rows, n)?;
        if witness
            .as_ref()
            .is_none_or(|w| candidate.lex_cmp(w) == std::cmp::Ordering::Less)
        {
            witness = Some(candidate);
        }
    }
    Ok(RadiusReport {
        t,
        n,
        k,
        exact,
        oracle: Oracle::Geometric,
        witness: witness.unwrap_or_else(|| BitMatrix::zeros(t, n)),
    })
}

#[derive(Debug, Clone, Copy)]
struct SyndromeMove {
    delta: u64,
    column: usize,
    symbol: u64,
}

/// `a * h_j` for every column `j` and nonzero symbol `a`, as packed syndrome tuples.
fn syndrome_moves(h: &BitMatrix, t: usize) -> Vec<SyndromeMove> {
    let red = h.num_rows();
    let cols = packed_columns(h);
    let mut moves = Vec::with_capacity(cols.len() * ((1 << t) - 1));
    for (j, &col) in cols.iter().enumerate() {
        for a in 1u64..(1 << t) {
            let delta = (0..t)
                .filter(|i| (a >> i) & 1 == 1)
                .fold(0u64, |acc, i| acc | (col << (i * red)));
            moves.push(SyndromeMove {
                delta,
                column: j,
                symbol: a,
            });
        }
    }
    moves
}

/// Breadth-first distances on the Cayley graph of `(Z/2)^bits` with the given generators.
fn bfs_from(sources: &[u64], bits: usize, moves: impl Iterator<Item = u64> + Clone) -> Vec<u8> {
    let size = 1usize << bits;
    let mut dist = vec![u8::MAX; size];
    let mut queue = VecDeque::with_capacity(sources.len());
    for &s in sources {
        if dist[s as usize] == u8::MAX {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
    }
    let moves: Vec<u64> = moves.collect();
    while let Some(s) = queue.pop_front() {
        let d = dist[s as usize];
        for &g in &moves {
            let next = (s ^ g) as usize;
            if dist[next] == u8::MAX {
                dist[next] = d + 1;
                queue.push_back(next as u64);
            }
        }
    }
    dist
}

/// Walks a shortest path back to the zero syndrome; the moves used form a coset leader.
fn backtrack_leader(
    mut s: u64,
    dist: &[u8],
    moves: &[SyndromeMove],
    t: usize,
    n: usize,
) -> BitMatrix {
    let mut symbols = vec![0u64; n];
    while dist[s as usize] > 0 {
        let d = dist[s as usize];
        let mv = moves
            .iter()
            .find(|mv| dist[(s ^ mv.delta) as usize] == d - 1)
            .expect("a BFS layer always has a predecessor");
        symbols[mv.column] ^= mv.symbol;
        s ^= mv.delta;
    }
    BitMatrix::from_column_symbols(t, &symbols)
}

/// Smallest `r` such that every `t` syndromes share a span of `r` columns of `H`.
pub fn exact_rt_span(code: &LinearCode, t: usize, caps: &Caps) -> Result<usize> {
    check_t(t)?;
    let (n, red) = (code.len(), code.redundancy());
    if n > caps.span_length {
        return Err(Error::CapExceeded {
            what: "column-subset search length",
            needed: n,
            cap: caps.span_length,
        });
    }
    check_cap("column-subset search", t * red, caps.span_syndrome_bits)?;
    if red == 0 {
        return Ok(0);
    }
    let cols = packed_columns(code.parity_check());
    let space = 1usize << red;
    let tuples = sorted_tuples(space as u64, t);

    for r in 1..=n {
        let spans = distinct_spans(&cols, r, space);
        let all_covered = tuples.iter().all(|tuple| {
            spans
                .iter()
                .any(|span| tuple.iter().all(|&x| span_has(span, x)))
        });
        if all_covered {
            return Ok(r);
        }
    }
    Err(Error::Invariant(
        "parity-check columns do not span the syndrome space".into(),
    ))
}

/// Nondecreasing `t`-tuples over `0..space`; order within a tuple does not
/// change whether it is covered.
fn sorted_tuples(space: u64, t: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn go(space: u64, t: usize, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for x in start..space {
            cur.push(x);
            go(space, t, x, cur, out);
            cur.pop();
        }
    }
    go(space, t, 0, &mut cur, &mut out);
    out
}

#[inline]
fn span_has(span: &[u64], x: u64) -> bool {
    (span[(x / 64) as usize] >> (x % 64)) & 1 == 1
}

/// Membership bitmaps of `span{h_i : i in I}` for every `|I| = r`, deduplicated.
fn distinct_spans(cols: &[u64], r: usize, space: usize) -> Vec<Vec<u64>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    let n = cols.len();
    loop {
        let mut elems = vec![0u64];
        for &i in &idx {
            let c = cols[i];
            if !elems.contains(&c) {
                let extra: Vec<u64> = elems.iter().map(|e| e ^ c).collect();
                elems.extend(extra);
            }
        }
        let mut bitmap = vec![0u64; space.div_ceil(64)];
        for e in elems {
            bitmap[(e / 64) as usize] |= 1 << (e % 64);
        }
        if seen.insert(bitmap.clone()) {
            out.push(bitmap);
        }
        // next r-combination in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Covering radius of the code over GF(2^t) sharing `G` and `H`.
///
/// Vectors of GF(2^t)^n are packed with symbol `j` in bits
/// `[j*t, (j+1)*t)`; neighbours differ in exactly one symbol.
pub fn exact_rt_lifted(code: &LinearCode, t: usize, caps: &Caps) -> Result<usize> {
    check_t(t)?;
    let n = code.len();
    let bits = t * n;
    check_cap("lifted-code space sweep", bits, caps.space_bits)?;
    // The codeword list is at most as large as the space itself.
    let sources: Vec<u64> = code
        .codewords(t, bits)?
        .map(|c| pack_symbols(&c, t))
        .collect();
    let symbol_mask = (1u64 << t) - 1;
    let moves = (0..n).flat_map(move |j| (1..=symbol_mask).map(move |a| a << (j * t)));
    let dist = bfs_from(&sources, bits, moves);
    Ok(dist.iter().copied().max().unwrap_or(0) as usize)
}

fn pack_symbols(c: &BitMatrix, t: usize) -> u64 {
    (0..c.num_cols()).fold(0u64, |acc, j| acc | (c.column_symbol(j) << (j * t)))
}

/// Closed-form `R_t(r, m)` where one is known: `r` in `{0, m-2, m-1, m}`.
pub fn closed_form_exact(t: usize, r: usize, m: usize) -> Option<u64> {
    if t == 0 || r > m || m > 62 {
        return None;
    }
    if r == m {
        Some(0)
    } else if r + 1 == m {
        Some(1)
    } else if r == 0 {
        let most_common = if t >= m { 1 } else { 1u64 << (m - t) };
        Some((1u64 << m) - most_common)
    } else if r + 2 == m {
        Some(t.min(m) as u64 + 1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm::rm;

    /// Straight from the first definition: the deepest point of the whole
    /// space, measured against every element of `C^t`.
    fn brute_force(code: &LinearCode, t: usize) -> usize {
        let n = code.len();
        let words: Vec<BitMatrix> = code.codewords(t, 24).unwrap().collect();
        let mut worst = 0;
        for idx in 0u64..(1 << (t * n)) {
            let syms: Vec<u64> = (0..n).map(|j| (idx >> (j * t)) & ((1 << t) - 1)).collect();
            let v = BitMatrix::from_column_symbols(t, &syms);
            let d = words
                .iter()
                .map(|c| v.t_distance(c).unwrap())
                .min()
                .unwrap();
            worst = worst.max(d);
        }
        worst
    }

    fn distance_to_code(v: &BitMatrix, code: &LinearCode, t: usize) -> usize {
        code.codewords(t, 24)
            .unwrap()
            .map(|c| v.t_distance(&c).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn geometric_examples() {
        let caps = Caps::default();
        assert_eq!(
            exact_rt_geometric(&rm(0, 2).unwrap(), 1, &caps)
                .unwrap()
                .exact,
            2
        );
        assert_eq!(
            exact_rt_geometric(&rm(1, 2).unwrap(), 2, &caps)
                .unwrap()
                .exact,
            1
        );
        assert_eq!(
            exact_rt_geometric(&rm(1, 3).unwrap(), 1, &caps)
                .unwrap()
                .exact,
            2
        );
    }

    #[test]
    fn span_examples() {
        let caps = Caps::default();
        for m in 1..=3 {
            for t in 1..=3 {
                assert_eq!(exact_rt_span(&rm(m - 1, m).unwrap(), t, &caps).unwrap(), 1);
            }
        }
        assert_eq!(exact_rt_span(&rm(0, 2).unwrap(), 3, &caps).unwrap(), 3);
        assert_eq!(exact_rt_span(&rm(2, 2).unwrap(), 2, &caps).unwrap(), 0);
    }

    #[test]
    fn lifted_examples() {
        let caps = Caps::default();
        assert_eq!(exact_rt_lifted(&rm(0, 3).unwrap(), 2, &caps).unwrap(), 6);
        for t in 1..=3 {
            assert_eq!(exact_rt_lifted(&rm(2, 2).unwrap(), t, &caps).unwrap(), 0);
        }
        assert_eq!(exact_rt_lifted(&rm(1, 3).unwrap(), 2, &caps).unwrap(), 3);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_exact(3, 0, 2), Some(3));
        assert_eq!(closed_form_exact(5, 2, 4), Some(5));
        assert_eq!(closed_form_exact(1, 1, 5), None);
        assert_eq!(closed_form_exact(2, 0, 3), Some(6));
        assert_eq!(closed_form_exact(1, 0, 0), Some(0));
    }

    #[test]
    fn oracles_match_brute_force() {
        let caps = Caps::default();
        for m in 0..=2 {
            for r in 0..=m {
                let code = rm(r, m).unwrap().into_code();
                for t in 1..=2 {
                    let bf = brute_force(&code, t);
                    let geo = exact_rt_geometric(&code, t, &caps).unwrap();
                    assert_eq!(geo.exact, bf, "geometric RM({r},{m}) t={t}");
                    assert_eq!(exact_rt_span(&code, t, &caps).unwrap(), bf);
                    assert_eq!(exact_rt_lifted(&code, t, &caps).unwrap(), bf);
                }
            }
        }
    }

    #[test]
    fn witness_is_deepest_and_least() {
        let caps = Caps::default();
        for (r, m, t) in [(0, 2, 1), (1, 2, 2), (1, 3, 1), (0, 3, 2)] {
            let code = rm(r, m).unwrap().into_code();
            let rep = exact_rt_geometric(&code, t, &caps).unwrap();
            assert_eq!(distance_to_code(&rep.witness, &code, t), rep.exact);
        }
        // RM(0,2), t=1: deepest words have weight 2; the least is 0011.
        let rep = exact_rt_geometric(&rm(0, 2).unwrap(), 1, &caps).unwrap();
        assert_eq!(rep.witness.to_string(), "0011");
    }

    #[test]
    fn caps_are_errors() {
        let caps = Caps::default();
        let code = rm(1, 5).unwrap();
        assert!(matches!(
            exact_rt_geometric(&code, 2, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            exact_rt_lifted(&code, 1, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            exact_rt_span(&code, 1, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }
}

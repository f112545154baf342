//! Finding an element of `RM(r, m)^t` close to a received `t x 2^m` matrix.
//!
//! The recursive decoder splits along the `(u, u+v)` structure down to
//! first-order codes, which it decodes by exhaustive joint search over all
//! `t`-tuples of affine functions. [`guarantee`] is the radius that the
//! decoder provably never exceeds.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::ub_dual_distance;
use crate::error::{invalid, Error, Result};
use crate::exact::closed_form_exact;
use crate::gf2::{BitMatrix, BitVector};
use crate::rm::uuv_split;

/// Joint searches with at least this many tuples run on the rayon pool.
const PARALLEL_TUPLES: u128 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    /// Spread large joint searches over the rayon pool. The result does not change.
    pub parallel: bool,
    /// Decode single-row first-order blocks with a Walsh–Hadamard transform
    /// instead of enumeration. The result does not change.
    pub fast_transform: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        Self {
            parallel: true,
            fast_transform: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverPath {
    /// Joint `(u, u+v)` recursion on all rows together.
    Recursive,
    /// Each row decoded on its own.
    Subadditive,
    /// `r = 0`: the most frequent column symbol, repeated.
    Majority,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub codeword: BitMatrix,
    pub distance: usize,
    pub guarantee: u64,
    pub path: CoverPath,
}

/// All `2^(m+1)` affine functions `x -> <a, x> + b` on `GF(2)^m`,
/// in lexicographic order of their truth tables.
pub fn first_order_codewords(m: usize) -> Vec<BitVector> {
    let n = 1usize << m;
    let mut words: Vec<BitVector> = (0..1u64 << m)
        .flat_map(|a| {
            let base = BitVector::from_bits((0..n as u64).map(|x| (a & x).count_ones() % 2 == 1));
            let mut complement = base.clone();
            complement ^= &BitVector::ones(n);
            [base, complement]
        })
        .collect();
    words.sort_by(BitVector::lex_cmp);
    words
}

fn log2_len(v: &BitMatrix) -> Result<usize> {
    let n = v.num_cols();
    if v.num_rows() == 0 {
        return Err(invalid("need at least one row"));
    }
    if !n.is_power_of_two() {
        return Err(Error::ShapeMismatch {
            expected: "a power-of-two number of columns".into(),
            got: format!("{n}"),
        });
    }
    Ok(n.trailing_zeros() as usize)
}

fn check(v: &BitMatrix, r: usize) -> Result<usize> {
    let m = log2_len(v)?;
    if r > m {
        return Err(invalid(format!("r={r} exceeds m={m}")));
    }
    if m > MAX_M {
        return Err(invalid(format!("m={m} is too large to decode")));
    }
    Ok(m)
}

const MAX_M: usize = 24;

/// Largest `m` whose single-row decoding scans a stored codeword table.
const TABLE_MAX_M: usize = 10;

/// Sorted first-order codewords of one length, also packed back to back.
struct FirstOrder {
    words: Vec<BitVector>,
    packed: Vec<u64>,
    stride: usize,
}

static FIRST_ORDER: [OnceLock<FirstOrder>; MAX_M + 1] = [const { OnceLock::new() }; MAX_M + 1];
static COORDINATES: [OnceLock<Vec<BitVector>>; MAX_M + 1] = [const { OnceLock::new() }; MAX_M + 1];

fn first_order_table(m: usize) -> &'static FirstOrder {
    FIRST_ORDER[m].get_or_init(|| {
        let words = first_order_codewords(m);
        let stride = words[0].words().len();
        let packed = words
            .iter()
            .flat_map(|w| w.words().iter().copied())
            .collect();
        FirstOrder {
            words,
            packed,
            stride,
        }
    })
}

/// Index of the first nearest codeword to `target` in a packed table.
fn scan_table(target: &[u64], table: &FirstOrder) -> usize {
    match table.stride {
        1 => scan_fixed::<1>(target, &table.packed),
        2 => scan_fixed::<2>(target, &table.packed),
        4 => scan_fixed::<4>(target, &table.packed),
        8 => scan_fixed::<8>(target, &table.packed),
        16 => scan_fixed::<16>(target, &table.packed),
        _ => scan_any(target, &table.packed),
    }
}

fn scan_fixed<const W: usize>(target: &[u64], packed: &[u64]) -> usize {
    const BLOCK: usize = 128;
    let target: &[u64; W] = target.try_into().expect("stride matches");
    // per block: distances first, then the first minimum, so both passes vectorize
    let mut distances = [0u16; BLOCK];
    let (mut best, mut best_index) = (u16::MAX, 0);
    for (b, block) in packed.chunks(BLOCK * W).enumerate() {
        let distances = &mut distances[..block.len() / W];
        for (d, c) in distances.iter_mut().zip(block.chunks_exact(W)) {
            *d = (0..W).fold(0u16, |acc, k| {
                acc.wrapping_add((target[k] ^ c[k]).count_ones() as u16)
            });
        }
        let block_best = distances.iter().copied().min().unwrap_or(u16::MAX);
        if block_best < best {
            best = block_best;
            best_index = b * BLOCK + distances.iter().position(|&d| d == block_best).unwrap_or(0);
        }
    }
    best_index
}

fn scan_any(target: &[u64], packed: &[u64]) -> usize {
    let (mut best, mut best_index) = (u32::MAX, 0);
    for (i, c) in packed.chunks_exact(target.len()).enumerate() {
        let d = target
            .iter()
            .zip(c)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        if d < best {
            best = d;
            best_index = i;
        }
    }
    best_index
}

/// Truth tables of the coordinate functions `x -> x_i`, `i < m`.
fn coordinate_functions(m: usize) -> &'static [BitVector] {
    COORDINATES[m].get_or_init(|| {
        (0..m)
            .map(|i| BitVector::from_bits((0..1u64 << m).map(|x| x >> i & 1 == 1)))
            .collect()
    })
}

/// Whether `a`, complemented when `flip`, precedes `b` lexicographically.
fn lex_less(a: &[u64], flip: bool, masks: &[u64], b: &[u64]) -> bool {
    for k in 0..a.len() {
        let x = if flip { a[k] ^ masks[k] } else { a[k] };
        let diff = x ^ b[k];
        if diff != 0 {
            return x >> diff.trailing_zeros() & 1 == 0;
        }
    }
    false
}

/// Lexicographically least nearest affine function to one row.
///
/// Walks the linear functions in Gray-code order, one coordinate function
/// added per step, and scores each together with its complement. Nothing
/// proportional to the number of codewords is stored.
fn nearest_affine(row: &BitVector, m: usize) -> BitVector {
    let n = row.len();
    let coordinates = coordinate_functions(m);
    let target = row.words();
    let masks = BitVector::ones(n).words().to_vec();
    let mut current = vec![0u64; target.len()];
    let mut best = current.clone();
    let mut best_distance = usize::MAX;
    for step in 0..1u64 << m {
        if step > 0 {
            let coordinate = coordinates[step.trailing_zeros() as usize].words();
            for (c, x) in current.iter_mut().zip(coordinate) {
                *c ^= x;
            }
        }
        let d: usize = target
            .iter()
            .zip(&current)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum();
        for (flip, distance) in [(false, d), (true, n - d)] {
            if distance < best_distance
                || (distance == best_distance && lex_less(&current, flip, &masks, &best))
            {
                best_distance = distance;
                for k in 0..best.len() {
                    best[k] = if flip {
                        current[k] ^ masks[k]
                    } else {
                        current[k]
                    };
                }
            }
        }
    }
    BitVector::from_words(n, best)
}

/// Depth-first search over `t`-tuples of codewords with running union weights.
struct JointSearch<'a> {
    rows: &'a [BitVector],
    words: &'a [BitVector],
    nw: usize,
    /// `acc[d]` holds the union of row differences for rows `0..=d`.
    acc: Vec<u64>,
    choice: Vec<usize>,
    best: usize,
    best_choice: Vec<usize>,
}

impl<'a> JointSearch<'a> {
    fn new(rows: &'a [BitVector], words: &'a [BitVector]) -> Self {
        let nw = rows[0].words().len();
        Self {
            rows,
            words,
            nw,
            acc: vec![0; rows.len() * nw],
            choice: vec![0; rows.len()],
            best: usize::MAX,
            best_choice: Vec::new(),
        }
    }

    fn visit(&mut self, depth: usize, candidates: std::ops::Range<usize>) {
        let nw = self.nw;
        for ci in candidates {
            let weight = {
                let (prev, rest) = self.acc.split_at_mut(depth * nw);
                let row = self.rows[depth].words();
                let c = self.words[ci].words();
                let mut weight = 0;
                for k in 0..nw {
                    let mut w = row[k] ^ c[k];
                    if depth > 0 {
                        w |= prev[(depth - 1) * nw + k];
                    }
                    rest[k] = w;
                    weight += w.count_ones() as usize;
                }
                weight
            };
            // a tie cannot win: earlier tuples are lexicographically smaller
            if weight >= self.best {
                continue;
            }
            self.choice[depth] = ci;
            if depth + 1 == self.rows.len() {
                self.best = weight;
                self.best_choice.clone_from(&self.choice);
            } else {
                self.visit(depth + 1, 0..self.words.len());
            }
        }
    }
}

/// Best `(distance, indices)` over tuples whose first entry is fixed, or all
/// tuples when `first` is `None`. The winner is the first minimum in
/// lexicographic tuple order.
fn joint_search(
    rows: &[BitVector],
    words: &[BitVector],
    first: Option<usize>,
) -> (usize, Vec<usize>) {
    let mut search = JointSearch::new(rows, words);
    let candidates = match first {
        Some(i) => i..i + 1,
        None => 0..words.len(),
    };
    search.visit(0, candidates);
    (search.best, search.best_choice)
}

fn nearest_first_order(v: &BitMatrix, m: usize, options: CoverOptions) -> BitMatrix {
    let t = v.num_rows();
    if t == 1 {
        let row = if options.fast_transform {
            nearest_affine_transform(v.row(0))
        } else if m <= TABLE_MAX_M {
            let table = first_order_table(m);
            table.words[scan_table(v.row(0).words(), table)].clone()
        } else {
            nearest_affine(v.row(0), m)
        };
        return BitMatrix::from_rows(vec![row], v.num_cols()).expect("row length matches");
    }
    let words = &first_order_table(m).words;
    let rows = v.rows();
    let tuples = (words.len() as u128).saturating_pow(t as u32);
    let indices = if options.parallel && t >= 2 && tuples >= PARALLEL_TUPLES {
        (0..words.len())
            .into_par_iter()
            .map(|i| joint_search(rows, words, Some(i)))
            .reduce(
                || (usize::MAX, Vec::new()),
                |a, b| match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                    Ordering::Greater => b,
                    _ => a,
                },
            )
            .1
    } else {
        joint_search(rows, words, None).1
    };
    BitMatrix::from_rows(
        indices.into_iter().map(|i| words[i].clone()).collect(),
        v.num_cols(),
    )
    .expect("row length matches")
}

/// Lexicographically least nearest affine function via the Walsh–Hadamard spectrum.
fn nearest_affine_transform(v: &BitVector) -> BitVector {
    let n = v.len();
    let mut spectrum: Vec<i64> = (0..n).map(|x| if v.get(x) { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (spectrum[j], spectrum[j + h]);
                spectrum[j] = a + b;
                spectrum[j + h] = a - b;
            }
        }
        h *= 2;
    }
    // distance to <a,x> is (n - W(a)) / 2, to its complement (n + W(a)) / 2
    let best = spectrum
        .iter()
        .map(|w| (n as i64 - w.abs()) / 2)
        .min()
        .unwrap_or(0);
    let affine = |a: usize, b: bool| {
        BitVector::from_bits((0..n).map(|x| ((a & x).count_ones() % 2 == 1) ^ b))
    };
    let mut winner: Option<BitVector> = None;
    for (a, &w) in spectrum.iter().enumerate() {
        for b in [false, true] {
            let d = if b {
                (n as i64 + w) / 2
            } else {
                (n as i64 - w) / 2
            };
            if d == best {
                let c = affine(a, b);
                if winner
                    .as_ref()
                    .is_none_or(|cur| c.lex_cmp(cur) == Ordering::Less)
                {
                    winner = Some(c);
                }
            }
        }
    }
    winner.expect("some affine function is nearest")
}

/// The most frequent column symbol repeated across all columns; ties go to the smaller symbol.
fn majority(v: &BitMatrix) -> BitMatrix {
    let n = v.num_cols();
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for j in 0..n {
        *counts.entry(v.column_symbol(j)).or_default() += 1;
    }
    let (symbol, _) = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .unwrap_or((0, 0));
    let rows = (0..v.num_rows())
        .map(|i| {
            if symbol >> i & 1 == 1 {
                BitVector::ones(n)
            } else {
                BitVector::zeros(n)
            }
        })
        .collect();
    BitMatrix::from_rows(rows, n).expect("row length matches")
}

fn recurse(v: &BitMatrix, r: usize, m: usize, options: CoverOptions) -> BitMatrix {
    if r == m {
        return v.clone();
    }
    if r == 0 {
        return majority(v);
    }
    if r == 1 {
        return nearest_first_order(v, m, options);
    }
    let (v1, v2) = uuv_split(v).expect("length is a power of two");
    let c1 = recurse(&v1, r, m - 1, options);
    let shifted = v2.xor(&c1).expect("halves have equal shape");
    let c2 = recurse(&shifted, r - 1, m - 1, options);
    let right = c1.xor(&c2).expect("halves have equal shape");
    c1.hconcat(&right).expect("halves have equal row counts")
}

/// The recursive `(u, u+v)` decoder applied to all rows jointly.
pub fn cover_recursive(v: &BitMatrix, r: usize, options: CoverOptions) -> Result<BitMatrix> {
    let m = check(v, r)?;
    Ok(recurse(v, r, m, options))
}

/// The recursive decoder applied to each row separately.
pub fn cover_subadditive(v: &BitMatrix, r: usize, options: CoverOptions) -> Result<BitMatrix> {
    let m = check(v, r)?;
    let rows = v
        .rows()
        .iter()
        .map(|row| {
            let single =
                BitMatrix::from_rows(vec![row.clone()], v.num_cols()).expect("row length matches");
            recurse(&single, r, m, options).into_rows().remove(0)
        })
        .collect();
    BitMatrix::from_rows(rows, v.num_cols())
}

/// Runs both decoders and keeps the closer codeword, preferring the joint one on ties.
pub fn cover(v: &BitMatrix, r: usize, options: CoverOptions) -> Result<CoverResult> {
    let m = check(v, r)?;
    let t = v.num_rows();
    let guarantee = guarantee(t, r, m)?;
    let joint = cover_recursive(v, r, options)?;
    let joint_distance = v.t_distance(&joint)?;
    let joint_path = if r == 0 && r < m {
        CoverPath::Majority
    } else {
        CoverPath::Recursive
    };
    let (codeword, distance, path) = if t > 1 {
        let split = cover_subadditive(v, r, options)?;
        let split_distance = v.t_distance(&split)?;
        if split_distance < joint_distance {
            (split, split_distance, CoverPath::Subadditive)
        } else {
            (joint, joint_distance, joint_path)
        }
    } else {
        (joint, joint_distance, joint_path)
    };
    if distance as u64 > guarantee {
        return Err(Error::Invariant(format!(
            "decoded distance {distance} exceeds the guarantee {guarantee} at t={t}, r={r}, m={m}"
        )));
    }
    Ok(CoverResult {
        codeword,
        distance,
        guarantee,
        path,
    })
}

/// Radius bound for the joint recursion alone, indexed `[m'][r']`.
fn recursion_table(t: usize, m_max: usize) -> Result<Vec<Vec<u64>>> {
    let single = if t > 1 {
        Some(recursion_table(1, m_max)?)
    } else {
        None
    };
    let mut table: Vec<Vec<u64>> = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let mut row = Vec::with_capacity(m + 1);
        for r in 0..=m {
            let value = if r == m {
                0
            } else if r == 0 {
                closed_form_exact(t, 0, m).expect("r = 0 has a closed form")
            } else if r == 1 {
                // the first-order block is decoded exactly, so any bound on R_t(1, m) holds
                let mut best = table[m - 1][0] + table[m - 1][1];
                best = best.min(ub_dual_distance(t, m)?.integer_form.max(0) as u64);
                if let Some(exact) = closed_form_exact(t, 1, m) {
                    best = best.min(exact);
                }
                if let Some(single) = &single {
                    best = best.min((t as u64).saturating_mul(single[m][1]));
                }
                best
            } else {
                table[m - 1][r - 1] + table[m - 1][r]
            };
            row.push(value);
        }
        table.push(row);
    }
    Ok(table)
}

static GUARANTEES: [OnceLock<Vec<Vec<u64>>>; 21] = [const { OnceLock::new() }; 21];

fn guarantee_table(t: usize) -> Result<&'static [Vec<u64>]> {
    if let Some(table) = GUARANTEES[t].get() {
        return Ok(table);
    }
    let table = recursion_table(t, 62)?;
    Ok(GUARANTEES[t].get_or_init(|| table))
}

/// Largest `t`-distance [`cover`] can return on `RM(r, m)`.
pub fn guarantee(t: usize, r: usize, m: usize) -> Result<u64> {
    if t == 0 || t > 20 {
        return Err(invalid(format!("t={t} must lie in 1..=20")));
    }
    if r > m || m > 62 {
        return Err(invalid(format!("need r <= m <= 62, got r={r}, m={m}")));
    }
    let joint = guarantee_table(t)?[m][r];
    if t == 1 {
        return Ok(joint);
    }
    Ok(joint.min((t as u64).saturating_mul(guarantee_table(1)?[m][r])))
}

/// Predicted operation count of [`cover`] on `RM(r, m)^t`, up to a constant.
pub fn predicted_cost(t: usize, r: usize, m: usize) -> f64 {
    let (tf, rf, mf) = (t as f64, r as f64, m as f64);
    let q = tf.exp2();
    tf * q * (2.0 * q).powf(mf + 1.0) * (2.0 * q - 1.0).powf(-rf) + tf * mf * mf.exp2()
}

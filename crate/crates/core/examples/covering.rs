//! Decodes tuples of words to nearby codeword tuples and compares with the guarantee.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmcover::cover::{cover, guarantee, predicted_cost, CoverOptions};
use rmcover::{rm, BitMatrix, BitVector, Result};

fn random_tuple(rng: &mut ChaCha8Rng, t: usize, n: usize) -> Result<BitMatrix> {
    let rows = (0..t)
        .map(|_| BitVector::from_bits((0..n).map(|_| rng.gen::<bool>())))
        .collect();
    BitMatrix::from_rows(rows, n)
}

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let options = CoverOptions::default();
    println!(
        "{:>2} {:>2} {:>2} {:>9} {:>9} {:>10}",
        "t", "r", "m", "worst", "guarantee", "cost"
    );
    for (t, r, m) in [(1, 1, 5), (2, 1, 5), (2, 2, 6), (3, 2, 6), (2, 3, 8)] {
        let code = rm(r, m)?;
        let mut worst = 0;
        for _ in 0..200 {
            let v = random_tuple(&mut rng, t, 1 << m)?;
            let res = cover(&v, r, options)?;
            assert!(code.contains_rows(&res.codeword));
            worst = worst.max(res.distance);
        }
        println!(
            "{t:>2} {r:>2} {m:>2} {worst:>9} {:>9} {:>10.3e}",
            guarantee(t, r, m)?,
            predicted_cost(t, r, m)
        );
    }

    let v = BitMatrix::from_strs(&["01101001", "11100000"])?;
    let res = cover(&v, 1, options)?;
    println!(
        "\ninput\n{v}\nnearest RM(1,3) pair via the {:?} branch\n{}",
        res.path, res.codeword
    );
    println!("t-distance {}", res.distance);
    Ok(())
}

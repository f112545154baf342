//! Builds a few Reed-Muller codes and checks their basic parameters.

use rmcover::rm::{rm_dimension, uuv_split};
use rmcover::{rm, BitMatrix, Result};

fn main() -> Result<()> {
    println!(
        "{:>3} {:>3} {:>6} {:>6} {:>6} {:>6}",
        "r", "m", "n", "k", "n-k", "d"
    );
    for m in 1..=4 {
        for r in 0..=m {
            let code = rm(r, m)?;
            let d = code.min_distance()?;
            assert_eq!(code.dimension() as u64, rm_dimension(r, m));
            assert_eq!(d, 1 << (m - r));
            println!(
                "{r:>3} {m:>3} {:>6} {:>6} {:>6} {d:>6}",
                code.len(),
                code.dimension(),
                code.redundancy()
            );
        }
    }

    // RM(1, 3) is the extended Hamming code and is self-dual
    let hamming = rm(1, 3)?;
    println!("\nRM(1,3) generator:\n{}", hamming.generator());
    println!("dual order: {:?}", hamming.dual().order());

    // every codeword splits as (u, u + v) with u in RM(1, 2) and v in RM(0, 2)
    let word = hamming.encode(0b1011);
    let (u, uv) = uuv_split(&BitMatrix::from_rows(vec![word.clone()], 8)?)?;
    let v = u.xor(&uv)?;
    println!("codeword {word} = (u, u+v) with u = {u}, v = {v}");
    assert!(rm(1, 2)?.contains_rows(&u));
    assert!(rm(0, 2)?.contains_rows(&v));
    Ok(())
}

//! Answers a batch of parity queries with a small shared set of probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmcover::planner::Planner;
use rmcover::{BitMatrix, BitVector, Result};

fn main() -> Result<()> {
    let (t, r, m) = (3, 2, 5);
    let planner = Planner::new(r, m)?;
    let h = planner.code().parity_check();
    println!(
        "parity-check matrix of RM({r},{m}): {} x {}",
        h.num_rows(),
        h.num_cols()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows = (0..t)
        .map(|_| BitVector::from_bits((0..h.num_rows()).map(|_| rng.gen::<bool>())))
        .collect();
    let queries = BitMatrix::from_rows(rows, h.num_rows())?;
    let plan = planner.plan(&queries)?;
    planner.verify(&queries, &plan)?;

    println!("queries\n{queries}");
    println!(
        "probe columns {:?} ({} of at most {})",
        plan.indices,
        plan.indices.len(),
        plan.bound
    );
    for (j, row) in plan.coefficients.rows().iter().enumerate() {
        let used: Vec<usize> = row.iter_ones().map(|p| plan.indices[p]).collect();
        println!("  query {j} = sum of columns {used:?}");
    }
    Ok(())
}

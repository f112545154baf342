//! Rate against normalized radius for Reed-Muller codes, next to the entropy curve.

use rmcover::bounds::{kappa_entropy_curve, kappa_points};
use rmcover::Result;

fn main() -> Result<()> {
    let t = 3;
    let mut points = kappa_points(t, 16)?;
    points.sort_by(|a, b| a.rho.total_cmp(&b.rho));
    let mut below = 0;
    for p in &points {
        let curve = kappa_entropy_curve(t, 2.0, p.rho)?;
        let mark = if p.rate < curve {
            below += 1;
            "*"
        } else {
            ""
        };
        println!(
            "RM({:>2},{:>2}) rho={:.4} rate={:.4} curve={:.4} {mark}",
            p.r, p.m, p.rho, p.rate, curve
        );
    }
    println!(
        "{below} of {} points lie below 1 - H_2(rho/{t})",
        points.len()
    );
    Ok(())
}

//! Exact generalized covering radii of small codes, computed three ways.

use rmcover::exact::{closed_form_exact, exact_rt_geometric, exact_rt_lifted, exact_rt_span, Caps};
use rmcover::{rm, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    println!(
        "{:>8} {:>2} {:>6} {:>6} {:>6} {:>7}",
        "code", "t", "geom", "span", "lifted", "closed"
    );
    for m in 1..=3 {
        for r in 0..=m {
            let code = rm(r, m)?;
            for t in 1..=3 {
                let geometric = exact_rt_geometric(&code, t, &caps)?.exact;
                // searches that exceed their cap report an error instead of running for hours
                let span = exact_rt_span(&code, t, &caps).ok();
                let lifted = exact_rt_lifted(&code, t, &caps).ok();
                for other in [span, lifted].into_iter().flatten() {
                    assert_eq!(other, geometric);
                }
                let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                let closed = closed_form_exact(t, r, m).map_or("-".to_string(), |v| v.to_string());
                println!(
                    "{:>8} {t:>2} {geometric:>6} {:>6} {:>6} {closed:>7}",
                    format!("RM({r},{m})"),
                    show(span),
                    show(lifted)
                );
            }
        }
    }

    // the witness is a tuple of words that no codeword tuple gets closer to than the radius
    let hamming = rm(1, 3)?;
    let report = exact_rt_geometric(&hamming, 2, &caps)?;
    println!(
        "\nR_2(1,3) = {} attained by\n{}",
        report.exact, report.witness
    );

    // the caps bound the search: RM(0,4) with t=2 needs 30 syndrome bits
    let repetition = rm(0, 4)?;
    match exact_rt_geometric(&repetition, 2, &Caps::uniform(16)) {
        Err(e) => println!("\nwith a 16-bit cap: {e}"),
        Ok(r) => println!("\nR_2(0,4) = {}", r.exact),
    }
    Ok(())
}

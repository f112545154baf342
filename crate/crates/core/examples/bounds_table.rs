//! Upper and lower bounds on the generalized covering radius of RM(r, m).

use rmcover::bounds::{asymptotic_display, certified_upper_bounds, lb_ball_covering, Regime, Side};
use rmcover::exact::closed_form_exact;
use rmcover::Result;

fn main() -> Result<()> {
    for (t, r, m) in [(2, 1, 5), (3, 2, 8), (4, 3, 12), (2, 1, 20)] {
        println!("t={t} r={r} m={m}");
        if let Some(exact) = closed_form_exact(t, r, m) {
            println!("  exact             {exact}");
        }
        if m <= 16 {
            let lower = lb_ball_covering(t, r, m)?;
            println!("  {:<17} >= {}", lower.source.as_str(), lower.integer_form);
        }
        let mut uppers = certified_upper_bounds(t, r, m)?;
        uppers.sort_by_key(|b| b.integer_form);
        for b in &uppers {
            println!(
                "  {:<17} <= {} (raw {:.3})",
                b.source.as_str(),
                b.integer_form,
                b.raw
            );
        }
        let shape = asymptotic_display(t, r, m, Regime::ConstantR, Side::Upper)?;
        println!(
            "  leading-order upper shape {:.1} ({})",
            shape.raw,
            shape.caveat.unwrap_or("")
        );
    }
    Ok(())
}

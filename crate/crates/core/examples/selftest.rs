//! Runs the built-in consistency checks with a small sample count.

use rmcover::selftest::{run_selftest, SelftestConfig};

fn main() {
    let config = SelftestConfig {
        samples: 20,
        ..SelftestConfig::default()
    };
    let report = run_selftest(&config);
    print!("{report}");
    if !report.passed() {
        std::process::exit(1);
    }
}

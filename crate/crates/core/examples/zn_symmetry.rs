//! Checks the Zn-graded topological symmetry of type (1, ..., 1) with
//! n = p + 1, including the M-coefficient series for Q1 and Q2.
//!
//!     cargo run --example zn_symmetry -- 4

use orthofermion::symmetries::{verify_zn, ZnSpec, DEFAULT_TOLERANCE};
use orthofermion::SpaceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_p: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(4);
    for p in 1..=max_p {
        let spec = ZnSpec::new(SpaceConfig::new(p, 12)?);
        let report = verify_zn(&spec, DEFAULT_TOLERANCE)?;
        println!(
            "n={} q={:.4}: {} checks, worst residual {:.2e}, {}",
            spec.n(),
            spec.q(),
            report.checks.len(),
            report.max_residual(),
            if report.pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}

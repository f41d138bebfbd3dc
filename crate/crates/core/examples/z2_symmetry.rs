//! Checks the Z2-graded topological symmetry of type (1, p) for the
//! boson + orthofermion Hamiltonian `H = a^dag a + N`.
//!
//! The generator's overall factor matters for the cubic relation, which is
//! not scale invariant; both normalizations are shown.
//!
//!     cargo run --example z2_symmetry -- 3 1

use orthofermion::symmetries::{verify_z2, Normalization, Z2Spec, DEFAULT_TOLERANCE};
use orthofermion::SpaceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let r: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let cfg = SpaceConfig::new(p, 12)?;

    for norm in [Normalization::Stated, Normalization::Balanced] {
        let spec = Z2Spec::new(cfg, r)?.with_normalization(norm);
        println!("factor {:.6} ({norm:?})", norm.factor(p));
        print!("{}", verify_z2(&spec, DEFAULT_TOLERANCE)?);
    }
    Ok(())
}

//! Energy levels of `H = a^dag a + N` and their multiplicities.
//!
//!     cargo run --example spectrum -- 3 10

use orthofermion::symmetries::degeneracies;
use orthofermion::SpaceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let d: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);

    println!("{:>8} {:>13}", "energy", "multiplicity");
    for level in degeneracies(&SpaceConfig::new(p, d)?)? {
        println!("{:>8.3} {:>13}", level.energy, level.multiplicity);
    }
    Ok(())
}

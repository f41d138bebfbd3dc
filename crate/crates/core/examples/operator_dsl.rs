//! Parses operator expressions, prints them canonically, evaluates them and
//! compares two sides on the columns unaffected by the boson cutoff.
//!
//!     cargo run --example operator_dsl -- "Qz^3" "H"

use orthofermion::dsl::{boson_raising_count, eval, parse, EvalContext};
use orthofermion::symmetries::guarded_residual;
use orthofermion::SpaceConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lhs_text = args.next().unwrap_or_else(|| "Qz^3".into());
    let rhs_text = args.next().unwrap_or_else(|| "H".into());

    let cfg = SpaceConfig::new(2, 8)?;
    let ctx = EvalContext::new(cfg);
    let (lhs, rhs) = (parse(&lhs_text)?, parse(&rhs_text)?);
    println!("canonical: {lhs}  vs  {rhs}");

    let guard = boson_raising_count(&lhs).max(boson_raising_count(&rhs));
    let residual = guarded_residual(&cfg, &eval(&lhs, &ctx)?, &eval(&rhs, &ctx)?, guard)?;
    println!("guard {guard}, residual {residual:.3e}");

    match parse("acomm(c[1], ) + I") {
        Ok(e) => println!("unexpectedly parsed {e}"),
        Err(e) => println!("parse error example: {e}"),
    }
    Ok(())
}

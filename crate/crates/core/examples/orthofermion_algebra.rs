//! Builds the order-p orthofermion matrices and checks their algebra.
//!
//!     cargo run --example orthofermion_algebra -- 3

use orthofermion::representations::{c_dag_op, c_op, number_ops, verify_orthofermion_relations};
use orthofermion::Operator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(3);

    for alpha in 1..=p {
        let c = c_op(p, alpha)?;
        println!(
            "c[{alpha}] has a single 1 at (0, {alpha}): {}",
            c == Operator::unit(p + 1, 0, alpha)
        );
    }

    // c_1 c_1^dag + sum_g c_g^dag c_g is the identity
    let mut sum = c_op(p, 1)?.mul(&c_dag_op(p, 1)?)?;
    for g in 1..=p {
        sum = sum.add(&c_dag_op(p, g)?.mul(&c_op(p, g)?)?)?;
    }
    println!(
        "c1 c1^dag + sum c^dag c = 1: {}",
        sum == Operator::identity(p + 1)
    );

    let (n, nn) = number_ops(p)?;
    println!(
        "N  = diag{:?}",
        (0..=p).map(|i| n.get(i, i).re).collect::<Vec<_>>()
    );
    println!(
        "NN = diag{:?}",
        (0..=p).map(|i| nn.get(i, i).re).collect::<Vec<_>>()
    );

    let report = verify_orthofermion_relations(p)?;
    println!(
        "{} relations checked, worst residual {:e}: {}",
        report.checks.len(),
        report.max_residual(),
        if report.pass { "PASS" } else { "FAIL" }
    );
    Ok(())
}

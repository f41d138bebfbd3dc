//! The last-in-first-out cylinder: traces a word through the state machine
//! and cross-checks it against the `b` matrices.
//!
//!     cargo run --example cylinder_model -- 3 "b-3 b+3 b+2 b+1"

use orthofermion::cylinder::{check_equivalence, trace_word, word_matrix, CylinderState, OpWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let word: OpWord = args
        .next()
        .as_deref()
        .unwrap_or("b-3 b+3 b+2 b+1")
        .parse()?;

    let states = trace_word(p, &word, CylinderState::Fill(0))?;
    let labels: Vec<String> = states.iter().map(ToString::to_string).collect();
    println!("{word} from the empty cylinder: {}", labels.join(" -> "));

    let m = word_matrix(p, &word)?;
    let column: Vec<f64> = m.column(0).iter().map(|z| z.re).collect();
    println!("matrix column for the empty cylinder: {column:?}");

    let report = check_equivalence(p, 4)?;
    println!(
        "state machine vs matrices over every word up to length 4: {}",
        if report.pass { "agree" } else { "DISAGREE" }
    );
    Ok(())
}

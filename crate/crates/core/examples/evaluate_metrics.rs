//! Pairwise metrics from a confusion matrix and from small clusterings,
//! with the micro and macro aggregates.
//!
//! ```text
//! cargo run --example evaluate_metrics
//! ```

use land::eval::{aggregate, pair_counts, prf, BlockEval, PairCounts};

fn main() -> anyhow::Result<()> {
    let counts = PairCounts::new(996, 90, 488, 1582);
    let m = prf(&counts);
    println!("P={:.2} R={:.2} F1={:.2}", m.precision, m.recall, m.f1);

    // predicted clusters vs true people for two blocks
    let liu = pair_counts(&[0, 0, 0, 1, 1], &["x", "x", "y", "y", "y"]);
    let kim = pair_counts(&[0, 1, 2, 2], &["p", "p", "q", "q"]);
    let report = aggregate(vec![BlockEval::new("liu_w", liu), BlockEval::new("kim_j", kim)])?;
    print!("{}", report.render());
    print!("{}", report.confusion_csv());
    Ok(())
}

//! Pairwise precision, recall and F1 of predicted clusterings.
//!
//! Every unordered pair of records inside a block is a decision: the pair is
//! predicted together or apart, and is truly together when both records carry
//! the same ORCID iD. Micro metrics pool pair counts over blocks; macro
//! metrics average per-block values.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use log::warn;

use crate::disambig::{Clustering, SweepPoint};
use crate::kg::OrcidTable;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

impl PairCounts {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        PairCounts { tp, fp, fn_, tn }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// Unrounded `(precision, recall, f1)` as fractions.
    ///
    /// Precision is 1 when nothing is predicted together, recall is 1 when
    /// nothing is truly together, F1 is 0 when both are 0.
    pub fn ratios(&self) -> (f64, f64, f64) {
        let p = if self.tp + self.fp == 0 {
            1.0
        } else {
            self.tp as f64 / (self.tp + self.fp) as f64
        };
        let r = if self.tp + self.fn_ == 0 {
            1.0
        } else {
            self.tp as f64 / (self.tp + self.fn_) as f64
        };
        let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
        (p, r, f)
    }
}

impl std::ops::Add for PairCounts {
    type Output = PairCounts;

    fn add(self, o: PairCounts) -> PairCounts {
        PairCounts::new(self.tp + o.tp, self.fp + o.fp, self.fn_ + o.fn_, self.tn + o.tn)
    }
}

impl std::iter::Sum for PairCounts {
    fn sum<I: Iterator<Item = PairCounts>>(iter: I) -> PairCounts {
        iter.fold(PairCounts::default(), |a, b| a + b)
    }
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Pair counts from parallel predicted and true labels, via the contingency
/// table rather than explicit pair enumeration.
pub fn pair_counts<P: Eq + Hash, T: Eq + Hash>(predicted: &[P], truth: &[T]) -> PairCounts {
    assert_eq!(predicted.len(), truth.len(), "pair_counts: label vectors differ in length");
    let mut joint: HashMap<(&P, &T), u64> = HashMap::new();
    let mut by_pred: HashMap<&P, u64> = HashMap::new();
    let mut by_truth: HashMap<&T, u64> = HashMap::new();
    for (p, t) in predicted.iter().zip(truth) {
        *joint.entry((p, t)).or_default() += 1;
        *by_pred.entry(p).or_default() += 1;
        *by_truth.entry(t).or_default() += 1;
    }
    let tp: u64 = joint.values().map(|&n| pairs(n)).sum();
    let same_pred: u64 = by_pred.values().map(|&n| pairs(n)).sum();
    let same_truth: u64 = by_truth.values().map(|&n| pairs(n)).sum();
    let fp = same_pred - tp;
    let fn_ = same_truth - tp;
    PairCounts::new(tp, fp, fn_, pairs(predicted.len() as u64) - tp - fp - fn_)
}

/// Pair counts of one clustering against ORCID labels. Unlabeled members are
/// left out of every pair.
pub fn pairwise_counts(clustering: &Clustering, truth: &OrcidTable) -> PairCounts {
    let mut pred = Vec::new();
    let mut gold = Vec::new();
    for (iri, &label) in clustering.members.iter().zip(&clustering.labels) {
        match truth.get(iri) {
            Some(orcid) => {
                pred.push(label);
                gold.push(orcid.as_str());
            }
            None => warn!("{iri} in block {} has no truth label, excluded", clustering.block_key),
        }
    }
    pair_counts(&pred, &gold)
}

/// Half-up rounding to two decimals, with slack for binary representation.
pub fn round2(x: f64) -> f64 {
    (x * 100.0 + 0.5 + 1e-9).floor() / 100.0
}

/// Percentages with two decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    fn from_ratios((p, r, f): (f64, f64, f64)) -> Self {
        Prf {
            precision: round2(100.0 * p),
            recall: round2(100.0 * r),
            f1: round2(100.0 * f),
        }
    }
}

pub fn prf(counts: &PairCounts) -> Prf {
    Prf::from_ratios(counts.ratios())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockEval {
    pub key: String,
    pub counts: PairCounts,
    /// Unrounded fractions.
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl BlockEval {
    pub fn new(key: impl Into<String>, counts: PairCounts) -> Self {
        let (precision, recall, f1) = counts.ratios();
        BlockEval {
            key: key.into(),
            counts,
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub blocks: Vec<BlockEval>,
    pub counts: PairCounts,
    /// From pooled counts.
    pub micro: Prf,
    /// Mean of per-block values.
    pub macro_: Prf,
}

pub fn aggregate(blocks: Vec<BlockEval>) -> Result<EvalReport> {
    if blocks.is_empty() {
        return Err(Error::Config("cannot aggregate an empty block list".into()));
    }
    let counts: PairCounts = blocks.iter().map(|b| b.counts).sum();
    let n = blocks.len() as f64;
    let mean = |f: fn(&BlockEval) -> f64| blocks.iter().map(f).sum::<f64>() / n;
    let macro_ = Prf::from_ratios((mean(|b| b.precision), mean(|b| b.recall), mean(|b| b.f1)));
    Ok(EvalReport {
        micro: prf(&counts),
        macro_,
        counts,
        blocks,
    })
}

/// Evaluate every clustering against the truth table.
pub fn evaluate(clusterings: &[Clustering], truth: &OrcidTable) -> Result<EvalReport> {
    aggregate(
        clusterings
            .iter()
            .map(|c| BlockEval::new(&c.block_key, pairwise_counts(c, truth)))
            .collect(),
    )
}

impl EvalReport {
    /// Per-block table followed by the micro and macro summaries.
    pub fn render(&self) -> String {
        let mut out = String::from("block\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\n");
        for b in &self.blocks {
            let c = b.counts;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}",
                b.key,
                c.tp,
                c.fp,
                c.fn_,
                c.tn,
                round2(100.0 * b.precision),
                round2(100.0 * b.recall),
                round2(100.0 * b.f1)
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "blocks\t{}", self.blocks.len());
        let _ = writeln!(out, "pairs\t{}", self.counts.total());
        for (name, m) in [("micro", self.micro), ("macro", self.macro_)] {
            let _ = writeln!(out, "{name}\tP={:.2}\tR={:.2}\tF1={:.2}", m.precision, m.recall, m.f1);
        }
        out
    }

    /// Confusion matrix in the layout of the paper-style table: predicted
    /// rows, labeled columns, with totals.
    pub fn confusion_csv(&self) -> String {
        let c = self.counts;
        format!(
            ",positive_label,negative_label,total\n\
             positive_classification,{},{},{}\n\
             negative_classification,{},{},{}\n\
             total,{},{},{}\n",
            c.tp,
            c.fp,
            c.tp + c.fp,
            c.fn_,
            c.tn,
            c.fn_ + c.tn,
            c.tp + c.fn_,
            c.fp + c.tn,
            c.total()
        )
    }
}

/// `threshold,precision,recall,f1` rows sorted by threshold.
pub fn pr_curve_points(sweep: &[SweepPoint]) -> Result<String> {
    if sweep.is_empty() {
        return Err(Error::Config("empty sweep".into()));
    }
    let mut points = sweep.to_vec();
    points.sort_by(|a, b| a.threshold.total_cmp(&b.threshold));
    let mut out = String::from("threshold,precision,recall,f1\n");
    for p in points {
        let _ = writeln!(out, "{},{:.2},{:.2},{:.2}", p.threshold, p.metrics.precision, p.metrics.recall, p.metrics.f1);
    }
    Ok(out)
}

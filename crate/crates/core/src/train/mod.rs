//! Training of [`ModelParams`] on the structural triples.
//!
//! Each mini-batch of positives is paired with `k` corruptions per positive,
//! scored, and pushed through label-smoothed binary cross-entropy. Gradients
//! are computed in closed form for every fusion variant and applied with
//! Adam. Filtered validation MRR drives early stopping.

mod adam;
mod link_prediction;
mod loss;
mod negatives;

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use log::{info, warn};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use adam::{adam_step, OptimizerState};
pub use link_prediction::{eval_link_prediction, filtered_ranks, LinkPredictionMetrics};
pub use loss::smoothed_bce;
pub use negatives::sample_negatives;

use crate::kg::{DatasetSplit, EntityId, KnowledgeGraph, Triple};
use crate::literals::LiteralFeatures;
use crate::model::{distmult_score, Gradients, ModelParams, Variant};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub dim: usize,
    pub learning_rate: f64,
    pub negatives: usize,
    pub batch_size: usize,
    pub smoothing: f64,
    pub max_epochs: usize,
    /// Evaluate every this many epochs.
    pub eval_frequency: usize,
    /// Stop after this many evaluations without improvement.
    pub patience: usize,
    /// Cap on validation triples per evaluation (first N of the split); 0 means all.
    pub validation_limit: usize,
    pub seed: u64,
}

impl TrainConfig {
    /// Optimum found for the OpenCitations graph.
    pub fn oc() -> Self {
        TrainConfig {
            dim: 512,
            learning_rate: 0.0003,
            negatives: 12,
            batch_size: 512,
            smoothing: 0.001,
            max_epochs: 1000,
            eval_frequency: 10,
            patience: 3,
            validation_limit: 0,
            seed: 42,
        }
    }

    /// Optimum found for the AMiner graph.
    pub fn aminer() -> Self {
        TrainConfig {
            dim: 128,
            learning_rate: 0.0001,
            negatives: 32,
            smoothing: 0.1,
            ..TrainConfig::oc()
        }
    }

    /// Deviations from the documented search space:
    /// `dim ∈ {128, 256, 512}`, `lr ∈ [1e-4, 1e-2)`, `k ∈ [1, 50)`,
    /// `batch ∈ {128, 256, 512}`, `ε ∈ [1e-3, 1)`.
    pub fn range_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if ![128, 256, 512].contains(&self.dim) {
            out.push(format!("embedding dim {} outside {{128, 256, 512}}", self.dim));
        }
        if !(0.0001..0.01).contains(&self.learning_rate) {
            out.push(format!("learning rate {} outside [0.0001, 0.01)", self.learning_rate));
        }
        if !(1..50).contains(&self.negatives) {
            out.push(format!("negatives {} outside [1, 50)", self.negatives));
        }
        if ![128, 256, 512].contains(&self.batch_size) {
            out.push(format!("batch size {} outside {{128, 256, 512}}", self.batch_size));
        }
        if !(0.001..1.0).contains(&self.smoothing) {
            out.push(format!("smoothing {} outside [0.001, 1.0)", self.smoothing));
        }
        out
    }
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig::oc()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalRecord {
    pub epoch: usize,
    pub metrics: LinkPredictionMetrics,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainHistory {
    /// Item-weighted mean loss per epoch, starting at epoch 1.
    pub epoch_loss: Vec<f64>,
    pub evaluations: Vec<EvalRecord>,
    pub stopped_epoch: usize,
    /// Epoch of the returned parameters.
    pub best_epoch: usize,
}

impl TrainHistory {
    /// `epoch<TAB>mean_loss` lines interleaved with
    /// `eval<TAB>epoch<TAB>mrr<TAB>hits1<TAB>hits3<TAB>hits10` lines.
    pub fn log(&self) -> String {
        let mut out = String::new();
        let mut evals = self.evaluations.iter().peekable();
        for (i, loss) in self.epoch_loss.iter().enumerate() {
            let epoch = i + 1;
            let _ = writeln!(out, "{epoch}\t{loss}");
            while let Some(e) = evals.next_if(|e| e.epoch == epoch) {
                let m = e.metrics;
                let _ = writeln!(out, "eval\t{}\t{}\t{}\t{}\t{}", e.epoch, m.mrr, m.hits_at_1, m.hits_at_3, m.hits_at_10);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: ModelParams,
    pub history: TrainHistory,
}

/// Mean smoothed BCE of `triples` and its gradient with respect to every
/// model parameter.
pub fn loss_and_gradients(model: &ModelParams, triples: &[Triple], labels: &[bool], smoothing: f64, features: &LiteralFeatures) -> (f64, Gradients) {
    let reps = model.batch_representations(triples, features);
    let scores: Vec<f64> = triples
        .iter()
        .map(|t| distmult_score(&reps[&t.head], model.relation.row(t.relation.0), &reps[&t.tail]))
        .collect();
    let (loss, dscores) = smoothed_bce(&scores, labels, smoothing);

    let h = model.dim();
    let mut grads = Gradients::zeros_like(model);
    let mut grad_reps: BTreeMap<EntityId, Vec<f64>> = BTreeMap::new();
    for (t, &ds) in triples.iter().zip(&dscores) {
        let r = model.relation.row(t.relation.0);
        let (hr, tr) = (&reps[&t.head], &reps[&t.tail]);
        let gh = grad_reps.entry(t.head).or_insert_with(|| vec![0.0; h]);
        for i in 0..h {
            gh[i] += ds * r[i] * tr[i];
        }
        let gt = grad_reps.entry(t.tail).or_insert_with(|| vec![0.0; h]);
        for i in 0..h {
            gt[i] += ds * hr[i] * r[i];
        }
        let gr = grads.relation.entry(t.relation.0).or_insert_with(|| vec![0.0; h]);
        for i in 0..h {
            gr[i] += ds * hr[i] * tr[i];
        }
    }
    for (e, g) in &grad_reps {
        model.backprop_representation(*e, g, features, &mut grads);
    }
    (loss, grads)
}

/// Train a fresh model of the given variant on the training part of `split`.
///
/// Returns the parameters with the best validation MRR seen (or the final
/// parameters if no evaluation ran).
pub fn train_model(kg: &KnowledgeGraph, split: &DatasetSplit, features: &LiteralFeatures, variant: Variant, config: &TrainConfig) -> Result<TrainOutcome> {
    let triples: Vec<Triple> = DatasetSplit::triples(kg, &split.train).collect();
    if triples.is_empty() {
        return Err(Error::Config("training split is empty".into()));
    }
    if config.batch_size == 0 || config.eval_frequency == 0 {
        return Err(Error::Config("batch size and eval frequency must be positive".into()));
    }
    for w in config.range_warnings() {
        warn!("{w}");
    }
    let mut valid: Vec<Triple> = DatasetSplit::triples(kg, &split.valid).collect();
    if config.validation_limit > 0 {
        valid.truncate(config.validation_limit);
    }
    let known: HashSet<Triple> = kg.object_triples().iter().copied().collect();

    let mut init_rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut model = ModelParams::init(variant, kg.num_entities(), kg.num_relations(), config.dim, features.text_dim(), &mut init_rng);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut state = OptimizerState::new(&model);
    let mut history = TrainHistory::default();
    let mut best: Option<(f64, ModelParams)> = None;
    let mut stale = 0;
    let mut order: Vec<usize> = (0..triples.len()).collect();

    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        let (mut total, mut items) = (0.0, 0usize);
        for chunk in order.chunks(config.batch_size) {
            let mut batch: Vec<Triple> = chunk.iter().map(|&i| triples[i]).collect();
            let negatives = sample_negatives(&batch, config.negatives, kg.num_entities(), &mut rng)?;
            let mut labels = vec![true; batch.len()];
            labels.resize(batch.len() + negatives.len(), false);
            batch.extend(negatives);
            let (loss, grads) = loss_and_gradients(&model, &batch, &labels, config.smoothing, features);
            adam_step(&mut model, &grads, &mut state, config.learning_rate).inspect_err(|e| {
                warn!("epoch {epoch} aborted: {e}");
            })?;
            total += loss * batch.len() as f64;
            items += batch.len();
        }
        let mean = total / items as f64;
        if !mean.is_finite() {
            return Err(Error::Contract(format!("non-finite loss at epoch {epoch}")));
        }
        history.epoch_loss.push(mean);
        history.stopped_epoch = epoch;

        if !valid.is_empty() && epoch % config.eval_frequency == 0 {
            let metrics = eval_link_prediction(&model, features, &valid, &known);
            info!("epoch {epoch}: loss {mean:.6}, validation MRR {:.4}", metrics.mrr);
            history.evaluations.push(EvalRecord { epoch, metrics });
            if best.as_ref().is_none_or(|(mrr, _)| metrics.mrr > *mrr) {
                best = Some((metrics.mrr, model.clone()));
                history.best_epoch = epoch;
                stale = 0;
            } else {
                stale += 1;
                if stale >= config.patience {
                    break;
                }
            }
        }
    }

    let model = match best {
        Some((_, m)) => m,
        None => {
            history.best_epoch = history.stopped_epoch;
            model
        }
    };
    Ok(TrainOutcome { model, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::{parse_triples_str, split_structural, Schema, TripleFormat};
    use crate::literals::{NumericFeatureTable, TextFeatureTable};
    use rand::Rng;

    /// Two symmetric relations over six entities: pairs under `knows`,
    /// a 3-cycle closure under `cites`.
    fn toy_kg() -> KnowledgeGraph {
        let mut tsv = String::new();
        for (a, b) in [(0, 1), (2, 3), (4, 5)] {
            tsv += &format!("e{a}\tknows\te{b}\tiri\ne{b}\tknows\te{a}\tiri\n");
        }
        for (a, b) in [(0, 2), (2, 4), (4, 0)] {
            tsv += &format!("e{a}\tcites\te{b}\tiri\ne{b}\tcites\te{a}\tiri\n");
        }
        parse_triples_str(&tsv, TripleFormat::Tsv, Schema::Oc).unwrap()
    }

    fn toy_config() -> TrainConfig {
        TrainConfig {
            dim: 16,
            learning_rate: 0.05,
            negatives: 4,
            batch_size: 4,
            smoothing: 0.0,
            max_epochs: 200,
            eval_frequency: 10,
            patience: 3,
            validation_limit: 0,
            seed: 3,
        }
    }

    fn toy_features(kg: &KnowledgeGraph) -> LiteralFeatures {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut text = TextFeatureTable::new(4);
        let mut years = std::collections::HashMap::new();
        for i in 0..kg.num_entities() {
            text.insert(EntityId(i), (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            years.insert(EntityId(i), rng.gen_range(0.0..1.0));
        }
        LiteralFeatures::new(text, NumericFeatureTable::from_values(years, 2000, 2020))
    }

    #[test]
    fn toy_graph_is_memorized() {
        let kg = toy_kg();
        let split = split_structural(&kg, (1.0, 0.0, 0.0), 1).unwrap();
        let f = LiteralFeatures::empty(0);
        let out = train_model(&kg, &split, &f, Variant::Unimodal, &toy_config()).unwrap();
        assert_eq!(out.history.epoch_loss.len(), 200);
        let known: HashSet<Triple> = kg.object_triples().iter().copied().collect();
        let m = eval_link_prediction(&out.model, &f, kg.object_triples(), &known);
        assert_eq!(m.mrr, 1.0);
    }

    #[test]
    fn loss_decreases_for_every_variant() {
        let kg = toy_kg();
        let split = split_structural(&kg, (1.0, 0.0, 0.0), 1).unwrap();
        let f = toy_features(&kg);
        for v in Variant::ALL {
            let cfg = TrainConfig { max_epochs: 50, learning_rate: 0.01, ..toy_config() };
            let out = train_model(&kg, &split, &f, v, &cfg).unwrap();
            let l = &out.history.epoch_loss;
            assert!(l[49] < l[0], "{v}: {} !< {}", l[49], l[0]);
            assert!(out.model.is_finite());
        }
    }

    #[test]
    fn training_is_deterministic() {
        let kg = toy_kg();
        let split = split_structural(&kg, (0.5, 0.25, 0.25), 2).unwrap();
        let f = toy_features(&kg);
        let cfg = TrainConfig { max_epochs: 30, ..toy_config() };
        let a = train_model(&kg, &split, &f, Variant::GGru, &cfg).unwrap();
        let b = train_model(&kg, &split, &f, Variant::GGru, &cfg).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.model, b.model);
        let bits = |h: &TrainHistory| h.epoch_loss.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a.history), bits(&b.history));
    }

    #[test]
    fn early_stopping_returns_best_checkpoint() {
        let kg = toy_kg();
        let split = split_structural(&kg, (0.5, 0.25, 0.25), 2).unwrap();
        let f = LiteralFeatures::empty(0);
        let cfg = TrainConfig { max_epochs: 400, eval_frequency: 1, patience: 2, ..toy_config() };
        let out = train_model(&kg, &split, &f, Variant::Unimodal, &cfg).unwrap();
        let best = out.history.evaluations.iter().map(|e| e.metrics.mrr).fold(f64::MIN, f64::max);
        let known: HashSet<Triple> = kg.object_triples().iter().copied().collect();
        let valid: Vec<Triple> = DatasetSplit::triples(&kg, &split.valid).collect();
        let returned = eval_link_prediction(&out.model, &f, &valid, &known).mrr;
        assert_eq!(returned, best);
        let at_best = out.history.evaluations.iter().find(|e| e.epoch == out.history.best_epoch).unwrap();
        assert_eq!(at_best.metrics.mrr, best);
        assert!(out.history.stopped_epoch < 400);
    }

    #[test]
    fn empty_training_split_is_rejected() {
        let kg = toy_kg();
        let split = DatasetSplit { train: vec![], valid: vec![0], test: vec![], seed: 0 };
        let err = train_model(&kg, &split, &LiteralFeatures::empty(0), Variant::Unimodal, &toy_config()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn history_log_format() {
        let h = TrainHistory {
            epoch_loss: vec![0.5, 0.25],
            evaluations: vec![EvalRecord {
                epoch: 2,
                metrics: LinkPredictionMetrics { mrr: 0.5, hits_at_1: 0.25, hits_at_3: 0.5, hits_at_10: 1.0, ranks: 4 },
            }],
            stopped_epoch: 2,
            best_epoch: 2,
        };
        assert_eq!(h.log(), "1\t0.5\n2\t0.25\neval\t2\t0.5\t0.25\t0.5\t1\n");
    }

    #[test]
    fn defaults_match_reported_optima() {
        let oc = TrainConfig::oc();
        assert_eq!((oc.dim, oc.learning_rate, oc.negatives, oc.batch_size, oc.smoothing), (512, 0.0003, 12, 512, 0.001));
        let am = TrainConfig::aminer();
        assert_eq!((am.dim, am.learning_rate, am.negatives, am.batch_size, am.smoothing), (128, 0.0001, 32, 512, 0.1));
        assert!(oc.range_warnings().is_empty());
        assert!(am.range_warnings().is_empty());
        assert_eq!(toy_config().range_warnings().len(), 4);
    }
}

//! DistMult scoring with optional literal fusion.
//!
//! Three variants share the same entity and relation tables:
//!
//! | variant    | entity representation                          |
//! |------------|------------------------------------------------|
//! | `Unimodal` | `e`                                            |
//! | `GLin`     | `W [e; l]`                                     |
//! | `GGru`     | `z ∘ tanh(W_h [e; l; n]) + (1 - z) ∘ e`        |
//!
//! where `l` is the entity's text vector, `n` its normalized year and
//! `z = σ(W_ze e + W_zl [e; l] + W_zn n + b)`.

mod checkpoint;
mod fusion;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

pub use checkpoint::{read_checkpoint, write_checkpoint, Checkpoint, CHECKPOINT_MAGIC};
pub use fusion::{distmult_score, g_gru_apply, g_lin_apply, GatedParams};

use crate::kg::{EntityId, Triple};
use crate::linalg::Matrix;
use crate::literals::LiteralFeatures;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Unimodal,
    GLin,
    GGru,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Unimodal, Variant::GLin, Variant::GGru];

    fn tag(self) -> u8 {
        match self {
            Variant::Unimodal => 0,
            Variant::GLin => 1,
            Variant::GGru => 2,
        }
    }

    fn from_tag(tag: u8) -> Option<Self> {
        Variant::ALL.into_iter().find(|v| v.tag() == tag)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Unimodal => "unimodal",
            Variant::GLin => "glin",
            Variant::GGru => "ggru",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "unimodal" | "distmult" => Ok(Variant::Unimodal),
            "glin" => Ok(Variant::GLin),
            "ggru" => Ok(Variant::GGru),
            _ => Err(Error::Config(format!("unknown variant {s:?}"))),
        }
    }
}

/// Parameters of the active fusion function.
#[derive(Debug, Clone, PartialEq)]
pub enum Fusion {
    None,
    /// `h × (h + d)`
    Linear(Matrix),
    Gated(GatedParams),
}

impl Fusion {
    fn zeros_like(&self) -> Fusion {
        match self {
            Fusion::None => Fusion::None,
            Fusion::Linear(w) => Fusion::Linear(Matrix::zeros(w.rows(), w.cols())),
            Fusion::Gated(p) => Fusion::Gated(p.zeros_like()),
        }
    }

    pub(crate) fn tensors(&self) -> Vec<(&'static str, &[f64])> {
        match self {
            Fusion::None => vec![],
            Fusion::Linear(w) => vec![("W", w.as_slice())],
            Fusion::Gated(p) => vec![
                ("W_ze", p.w_ze.as_slice()),
                ("W_zl", p.w_zl.as_slice()),
                ("W_zn", &p.w_zn),
                ("b", &p.b),
                ("W_h", p.w_h.as_slice()),
            ],
        }
    }

    pub(crate) fn tensors_mut(&mut self) -> Vec<(&'static str, &mut [f64])> {
        match self {
            Fusion::None => vec![],
            Fusion::Linear(w) => vec![("W", w.as_mut_slice())],
            Fusion::Gated(p) => vec![
                ("W_ze", p.w_ze.as_mut_slice()),
                ("W_zl", p.w_zl.as_mut_slice()),
                ("W_zn", &mut p.w_zn),
                ("b", &mut p.b),
                ("W_h", p.w_h.as_mut_slice()),
            ],
        }
    }
}

/// Entity and relation embeddings plus fusion parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub entity: Matrix,
    pub relation: Matrix,
    pub fusion: Fusion,
    text_dim: usize,
}

impl ModelParams {
    /// Uniform initialization in `[-1/√h, 1/√h]`; the gate bias starts at zero.
    pub fn init<R: Rng>(variant: Variant, num_entities: usize, num_relations: usize, dim: usize, text_dim: usize, rng: &mut R) -> Self {
        let bound = 1.0 / (dim as f64).sqrt();
        let mut uniform = |rows, cols| Matrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..bound));
        let entity = uniform(num_entities, dim);
        let relation = uniform(num_relations, dim);
        let fusion = match variant {
            Variant::Unimodal => Fusion::None,
            Variant::GLin => Fusion::Linear(uniform(dim, dim + text_dim)),
            Variant::GGru => {
                let w_ze = uniform(dim, dim);
                let w_zl = uniform(dim, dim + text_dim);
                let w_h = uniform(dim, dim + text_dim + 1);
                let w_zn = uniform(1, dim).as_slice().to_vec();
                Fusion::Gated(GatedParams {
                    w_ze,
                    w_zl,
                    w_zn,
                    b: vec![0.0; dim],
                    w_h,
                })
            }
        };
        ModelParams {
            entity,
            relation,
            fusion,
            text_dim,
        }
    }

    /// Assemble from explicit tensors, checking every shape.
    pub fn from_parts(entity: Matrix, relation: Matrix, fusion: Fusion, text_dim: usize) -> Result<Self> {
        let h = entity.cols();
        let bad = |what: &str| Err(Error::Contract(format!("{what} has the wrong shape for h={h}, d={text_dim}")));
        if relation.cols() != h {
            return bad("relation table");
        }
        match &fusion {
            Fusion::None => {}
            Fusion::Linear(w) => {
                if w.shape() != (h, h + text_dim) {
                    return bad("W");
                }
            }
            Fusion::Gated(p) => {
                if p.w_ze.shape() != (h, h) {
                    return bad("W_ze");
                }
                if p.w_zl.shape() != (h, h + text_dim) {
                    return bad("W_zl");
                }
                if p.w_h.shape() != (h, h + text_dim + 1) {
                    return bad("W_h");
                }
                if p.w_zn.len() != h || p.b.len() != h {
                    return bad("W_zn/b");
                }
            }
        }
        Ok(ModelParams {
            entity,
            relation,
            fusion,
            text_dim,
        })
    }

    pub fn variant(&self) -> Variant {
        match self.fusion {
            Fusion::None => Variant::Unimodal,
            Fusion::Linear(_) => Variant::GLin,
            Fusion::Gated(_) => Variant::GGru,
        }
    }

    pub fn dim(&self) -> usize {
        self.entity.cols()
    }

    pub fn text_dim(&self) -> usize {
        self.text_dim
    }

    pub fn num_entities(&self) -> usize {
        self.entity.rows()
    }

    pub fn num_relations(&self) -> usize {
        self.relation.rows()
    }

    /// All tensors in a fixed order: entity, relation, then fusion.
    pub fn tensors(&self) -> Vec<(&'static str, &[f64])> {
        let mut out = vec![("entity", self.entity.as_slice()), ("relation", self.relation.as_slice())];
        out.extend(self.fusion.tensors());
        out
    }

    pub fn tensors_mut(&mut self) -> Vec<(&'static str, &mut [f64])> {
        let mut out = vec![
            ("entity", self.entity.as_mut_slice()),
            ("relation", self.relation.as_mut_slice()),
        ];
        out.extend(self.fusion.tensors_mut());
        out
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|(_, t)| t.iter().all(|x| x.is_finite()))
    }

    /// Representation used for scoring and clustering; length `h` for every variant.
    pub fn entity_representation(&self, entity: EntityId, features: &LiteralFeatures) -> Vec<f64> {
        let e = self.entity.row(entity.0);
        match &self.fusion {
            Fusion::None => e.to_vec(),
            Fusion::Linear(w) => g_lin_apply(e, features.text.get(entity), w),
            Fusion::Gated(p) => g_gru_apply(e, features.text.get(entity), features.numeric.get(entity), p),
        }
    }

    /// Raw embedding row, without fusion.
    pub fn raw_embedding(&self, entity: EntityId) -> &[f64] {
        self.entity.row(entity.0)
    }

    /// Materialize every entity representation (the clustering-time cache).
    pub fn representations(&self, features: &LiteralFeatures) -> Matrix {
        let mut out = Matrix::zeros(self.num_entities(), self.dim());
        for i in 0..self.num_entities() {
            if let Fusion::None = self.fusion {
                out.row_mut(i).copy_from_slice(self.entity.row(i));
            } else {
                out.row_mut(i).copy_from_slice(&self.entity_representation(EntityId(i), features));
            }
        }
        out
    }

    pub fn score_triple(&self, triple: Triple, features: &LiteralFeatures) -> f64 {
        let h = self.entity_representation(triple.head, features);
        let t = self.entity_representation(triple.tail, features);
        distmult_score(&h, self.relation.row(triple.relation.0), &t)
    }

    /// Score many triples, computing each distinct entity representation once.
    pub fn score_batch(&self, triples: &[Triple], features: &LiteralFeatures) -> Vec<f64> {
        let reps = self.batch_representations(triples, features);
        triples
            .iter()
            .map(|t| distmult_score(&reps[&t.head], self.relation.row(t.relation.0), &reps[&t.tail]))
            .collect()
    }

    pub(crate) fn batch_representations(&self, triples: &[Triple], features: &LiteralFeatures) -> BTreeMap<EntityId, Vec<f64>> {
        let mut reps = BTreeMap::new();
        for t in triples {
            for e in [t.head, t.tail] {
                reps.entry(e).or_insert_with(|| self.entity_representation(e, features));
            }
        }
        reps
    }

    /// Accumulate `∂L/∂params` given `∂L/∂rep(entity)`.
    pub(crate) fn backprop_representation(&self, entity: EntityId, grad_rep: &[f64], features: &LiteralFeatures, grads: &mut Gradients) {
        let e = self.entity.row(entity.0);
        let grad_e = grads.entity.entry(entity.0).or_insert_with(|| vec![0.0; e.len()]);
        match (&self.fusion, &mut grads.fusion) {
            (Fusion::None, _) => {
                for (g, &d) in grad_e.iter_mut().zip(grad_rep) {
                    *g += d;
                }
            }
            (Fusion::Linear(w), Fusion::Linear(gw)) => {
                fusion::g_lin_backward(e, features.text.get(entity), w, grad_rep, gw, grad_e);
            }
            (Fusion::Gated(p), Fusion::Gated(gp)) => {
                let l = features.text.get(entity);
                let n = features.numeric.get(entity);
                fusion::g_gru_backward(e, l, n, p, grad_rep, gp, grad_e);
            }
            _ => unreachable!("gradient buffer built for another variant"),
        }
    }
}

/// Gradient buffer: sparse rows for the embedding tables, dense fusion tensors.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub entity: BTreeMap<usize, Vec<f64>>,
    pub relation: BTreeMap<usize, Vec<f64>>,
    pub fusion: Fusion,
}

impl Gradients {
    pub fn zeros_like(model: &ModelParams) -> Self {
        Gradients {
            entity: BTreeMap::new(),
            relation: BTreeMap::new(),
            fusion: model.fusion.zeros_like(),
        }
    }

    pub fn scale(&mut self, factor: f64) {
        let rows = self.entity.values_mut().chain(self.relation.values_mut());
        rows.flat_map(|r| r.iter_mut()).for_each(|g| *g *= factor);
        for (_, t) in self.fusion.tensors_mut() {
            t.iter_mut().for_each(|g| *g *= factor);
        }
    }

    /// Name of the first tensor containing a non-finite value.
    pub fn first_non_finite(&self) -> Option<&'static str> {
        if self.entity.values().flatten().any(|g| !g.is_finite()) {
            return Some("entity");
        }
        if self.relation.values().flatten().any(|g| !g.is_finite()) {
            return Some("relation");
        }
        self.fusion
            .tensors()
            .into_iter()
            .find(|(_, t)| t.iter().any(|g| !g.is_finite()))
            .map(|(name, _)| name)
    }

    /// Dense copy of one tensor, in [`ModelParams::tensors`] order.
    pub fn dense(&self, model: &ModelParams, tensor: usize) -> Vec<f64> {
        let h = model.dim();
        let expand = |rows: &BTreeMap<usize, Vec<f64>>, n: usize| {
            let mut out = vec![0.0; n * h];
            for (&r, g) in rows {
                out[r * h..(r + 1) * h].copy_from_slice(g);
            }
            out
        };
        match tensor {
            0 => expand(&self.entity, model.num_entities()),
            1 => expand(&self.relation, model.num_relations()),
            i => self.fusion.tensors()[i - 2].1.to_vec(),
        }
    }
}

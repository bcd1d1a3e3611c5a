use crate::model::{Gradients, ModelParams};
use crate::{Error, Result};

/// Adam moment estimates, one buffer per parameter tensor.
#[derive(Debug, Clone)]
pub struct OptimizerState {
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
    step: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl OptimizerState {
    pub fn new(model: &ModelParams) -> Self {
        let zeros: Vec<Vec<f64>> = model.tensors().iter().map(|(_, t)| vec![0.0; t.len()]).collect();
        OptimizerState {
            m: zeros.clone(),
            v: zeros,
            step: 0,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn first_moment(&self, tensor: usize) -> &[f64] {
        &self.m[tensor]
    }

    pub fn second_moment(&self, tensor: usize) -> &[f64] {
        &self.v[tensor]
    }
}

/// One bias-corrected Adam update of every tensor of the model.
///
/// Rows of the embedding tables absent from the sparse gradient are treated
/// as zero gradient, so their moments still decay.
pub fn adam_step(model: &mut ModelParams, grads: &Gradients, state: &mut OptimizerState, lr: f64) -> Result<()> {
    if let Some(group) = grads.first_non_finite() {
        return Err(Error::NonFiniteGradient { group, step: state.step + 1 });
    }
    state.step += 1;
    let t = state.step as i32;
    let (b1, b2, eps) = (state.beta1, state.beta2, state.eps);
    let c1 = 1.0 - b1.powi(t);
    let c2 = 1.0 - b2.powi(t);
    let h = model.dim();

    let fusion_grads = grads.fusion.tensors();
    let mut tensors = model.tensors_mut();
    for (i, (_, param)) in tensors.iter_mut().enumerate() {
        let m = &mut state.m[i];
        let v = &mut state.v[i];
        let n_rows = param.len() / h.max(1);
        let mut update = |j: usize, g: f64| {
            m[j] = b1 * m[j] + (1.0 - b1) * g;
            v[j] = b2 * v[j] + (1.0 - b2) * g * g;
            let m_hat = m[j] / c1;
            let v_hat = v[j] / c2;
            param[j] -= lr * m_hat / (v_hat.sqrt() + eps);
        };
        match i {
            0 | 1 => {
                let rows = if i == 0 { &grads.entity } else { &grads.relation };
                for r in 0..n_rows {
                    match rows.get(&r) {
                        Some(g) => (0..h).for_each(|c| update(r * h + c, g[c])),
                        None => (0..h).for_each(|c| update(r * h + c, 0.0)),
                    }
                }
            }
            _ => {
                let g = fusion_grads[i - 2].1;
                (0..g.len()).for_each(|j| update(j, g[j]));
            }
        }
    }
    Ok(())
}

use crate::linalg::{sigmoid, Matrix};

/// `Σ_i h_i r_i t_i`, the diagonal bilinear form.
pub fn distmult_score(h: &[f64], r: &[f64], t: &[f64]) -> f64 {
    assert!(h.len() == r.len() && r.len() == t.len(), "distmult_score: length mismatch");
    h.iter().zip(r).zip(t).map(|((a, b), c)| a * b * c).sum()
}

/// `W [e; l]`
pub fn g_lin_apply(e: &[f64], l: &[f64], w: &Matrix) -> Vec<f64> {
    assert_eq!(w.shape(), (e.len(), e.len() + l.len()), "g_lin: W shape mismatch");
    w.mul_segments(&[e, l])
}

pub(super) fn g_lin_backward(e: &[f64], l: &[f64], w: &Matrix, grad_out: &[f64], grad_w: &mut Matrix, grad_e: &mut [f64]) {
    grad_w.add_outer(grad_out, &[e, l]);
    w.add_transpose_mul(grad_out, 0, grad_e);
}

/// Gated fusion parameters. `W_zl` multiplies the concatenation `[e; l]`,
/// following its `h × (h + d)` shape.
#[derive(Debug, Clone, PartialEq)]
pub struct GatedParams {
    /// `h × h`
    pub w_ze: Matrix,
    /// `h × (h + d)`
    pub w_zl: Matrix,
    /// length `h`
    pub w_zn: Vec<f64>,
    /// length `h`
    pub b: Vec<f64>,
    /// `h × (h + d + 1)`
    pub w_h: Matrix,
}

impl GatedParams {
    pub(super) fn zeros_like(&self) -> Self {
        GatedParams {
            w_ze: Matrix::zeros(self.w_ze.rows(), self.w_ze.cols()),
            w_zl: Matrix::zeros(self.w_zl.rows(), self.w_zl.cols()),
            w_zn: vec![0.0; self.w_zn.len()],
            b: vec![0.0; self.b.len()],
            w_h: Matrix::zeros(self.w_h.rows(), self.w_h.cols()),
        }
    }

    fn check(&self, h: usize, d: usize) {
        assert!(
            self.w_ze.shape() == (h, h)
                && self.w_zl.shape() == (h, h + d)
                && self.w_h.shape() == (h, h + d + 1)
                && self.w_zn.len() == h
                && self.b.len() == h,
            "g_gru: parameter shapes do not match h={h}, d={d}"
        );
    }
}

struct GruForward {
    z: Vec<f64>,
    candidate: Vec<f64>,
    out: Vec<f64>,
}

fn g_gru_forward(e: &[f64], l: &[f64], n: f64, p: &GatedParams) -> GruForward {
    p.check(e.len(), l.len());
    let ze = p.w_ze.mul_vec(e);
    let zl = p.w_zl.mul_segments(&[e, l]);
    let nn = [n];
    let pre_h = p.w_h.mul_segments(&[e, l, &nn]);
    let z: Vec<f64> = (0..e.len()).map(|i| sigmoid(ze[i] + zl[i] + p.w_zn[i] * n + p.b[i])).collect();
    let candidate: Vec<f64> = pre_h.iter().map(|x| x.tanh()).collect();
    let out = (0..e.len()).map(|i| z[i] * candidate[i] + (1.0 - z[i]) * e[i]).collect();
    GruForward { z, candidate, out }
}

/// `z ∘ tanh(W_h [e; l; n]) + (1 − z) ∘ e` with
/// `z = σ(W_ze e + W_zl [e; l] + W_zn n + b)`.
pub fn g_gru_apply(e: &[f64], l: &[f64], n: f64, p: &GatedParams) -> Vec<f64> {
    g_gru_forward(e, l, n, p).out
}

pub(super) fn g_gru_backward(e: &[f64], l: &[f64], n: f64, p: &GatedParams, grad_out: &[f64], grads: &mut GatedParams, grad_e: &mut [f64]) {
    let GruForward { z, candidate, .. } = g_gru_forward(e, l, n, p);
    let h = e.len();
    let mut grad_gate = vec![0.0; h];
    let mut grad_pre_h = vec![0.0; h];
    for i in 0..h {
        let g = grad_out[i];
        grad_gate[i] = g * (candidate[i] - e[i]) * z[i] * (1.0 - z[i]);
        grad_pre_h[i] = g * z[i] * (1.0 - candidate[i] * candidate[i]);
        grad_e[i] += g * (1.0 - z[i]);
    }
    let nn = [n];
    grads.w_ze.add_outer(&grad_gate, &[e]);
    grads.w_zl.add_outer(&grad_gate, &[e, l]);
    grads.w_h.add_outer(&grad_pre_h, &[e, l, &nn]);
    for i in 0..h {
        grads.w_zn[i] += grad_gate[i] * n;
        grads.b[i] += grad_gate[i];
    }
    p.w_ze.add_transpose_mul(&grad_gate, 0, grad_e);
    p.w_zl.add_transpose_mul(&grad_gate, 0, grad_e);
    p.w_h.add_transpose_mul(&grad_pre_h, 0, grad_e);
}

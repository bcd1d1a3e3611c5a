/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Binary cross-entropy against smoothed targets (`1 − ε` for positives,
/// `ε` for negatives), averaged over all items.
///
/// Returns the loss and `∂loss/∂score` for every item. Uses
/// `−[t ln σ(s) + (1 − t) ln(1 − σ(s))] = softplus(s) − t·s`.
pub fn smoothed_bce(scores: &[f64], labels: &[bool], smoothing: f64) -> (f64, Vec<f64>) {
    assert_eq!(scores.len(), labels.len(), "smoothed_bce: scores and labels differ in length");
    assert!((0.0..1.0).contains(&smoothing), "smoothing must lie in [0, 1)");
    let n = scores.len().max(1) as f64;
    let mut loss = 0.0;
    let grads = scores
        .iter()
        .zip(labels)
        .map(|(&s, &positive)| {
            let t = if positive { 1.0 - smoothing } else { smoothing };
            loss += softplus(s) - t * s;
            (crate::linalg::sigmoid(s) - t) / n
        })
        .collect();
    (loss / n, grads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_score_is_ln2() {
        for eps in [0.0, 0.001, 0.1, 0.5] {
            for label in [true, false] {
                let (l, _) = smoothed_bce(&[0.0], &[label], eps);
                assert!((l - std::f64::consts::LN_2).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_value() {
        // −ln σ(2), 30-digit reference
        let (l, g) = smoothed_bce(&[2.0], &[true], 0.0);
        assert!((l - 0.126_928_011_042_972_496).abs() < 1e-15);
        assert!((g[0] - (crate::linalg::sigmoid(2.0) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn smoothed_targets() {
        // gradient at s=0 is σ(0) − t, which exposes the target
        let (_, g) = smoothed_bce(&[0.0, 0.0], &[true, false], 0.001);
        assert!((g[0] * 2.0 - (0.5 - 0.999)).abs() < 1e-15);
        assert!((g[1] * 2.0 - (0.5 - 0.001)).abs() < 1e-15);
    }

    #[test]
    fn extreme_scores_are_finite() {
        let (l, g) = smoothed_bce(&[1e4, -1e4, 800.0], &[false, true, true], 0.1);
        assert!(l.is_finite() && g.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn gradient_matches_difference() {
        let s = [0.7, -1.3, 2.2];
        let y = [true, false, false];
        let (_, g) = smoothed_bce(&s, &y, 0.05);
        for i in 0..3 {
            let mut p = s;
            let mut m = s;
            p[i] += 1e-6;
            m[i] -= 1e-6;
            let fd = (smoothed_bce(&p, &y, 0.05).0 - smoothed_bce(&m, &y, 0.05).0) / 2e-6;
            assert!((fd - g[i]).abs() < 1e-8);
        }
    }
}

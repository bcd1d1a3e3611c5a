//! Minimal dense row-major matrix used by the embedding model.

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// `self · x` where `x` is given as consecutive segments whose lengths sum
    /// to `cols`. Avoids materializing concatenations.
    pub fn mul_segments(&self, segments: &[&[f64]]) -> Vec<f64> {
        debug_assert_eq!(segments.iter().map(|s| s.len()).sum::<usize>(), self.cols);
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = 0.0;
                let mut off = 0;
                for seg in segments {
                    acc += dot(&row[off..off + seg.len()], seg);
                    off += seg.len();
                }
                acc
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.mul_segments(&[x])
    }

    /// `self += g · [segments]ᵀ` (rank-one update).
    pub fn add_outer(&mut self, g: &[f64], segments: &[&[f64]]) {
        for (r, &gr) in g.iter().enumerate() {
            if gr == 0.0 {
                continue;
            }
            let row = self.row_mut(r);
            let mut off = 0;
            for seg in segments {
                for (w, &x) in row[off..off + seg.len()].iter_mut().zip(seg.iter()) {
                    *w += gr * x;
                }
                off += seg.len();
            }
        }
    }

    /// `out += (self[:, cols])ᵀ · g` for a column range of the matrix.
    pub fn add_transpose_mul(&self, g: &[f64], col_start: usize, out: &mut [f64]) {
        for (r, &gr) in g.iter().enumerate() {
            if gr == 0.0 {
                continue;
            }
            let row = &self.row(r)[col_start..col_start + out.len()];
            for (o, &w) in out.iter_mut().zip(row) {
                *o += gr * w;
            }
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

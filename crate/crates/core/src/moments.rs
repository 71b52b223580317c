//! Streaming first/second-moment accumulation with exact pairwise merge.
//!
//! A single pass over the samples maintains running means and centered
//! co-moments (multivariate Welford updates). Two accumulators over
//! disjoint sample blocks merge exactly, so a run can be split into
//! fixed-size chunks, accumulated independently, and folded back together
//! in a fixed order — the result does not depend on how many workers
//! processed the chunks.

/// Running means and centered co-moments for a fixed-width sample stream.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentAccumulator {
    dim: usize,
    count: u64,
    mean: Vec<f64>,
    // Upper triangle of the centered co-moment matrix, packed row-major:
    // comoment[idx(i, j)] = sum over samples of (x_i - mean_i)(x_j - mean_j).
    comoment: Vec<f64>,
    scratch: Vec<f64>,
}

impl MomentAccumulator {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            count: 0,
            mean: vec![0.0; dim],
            comoment: vec![0.0; dim * (dim + 1) / 2],
            scratch: vec![0.0; dim],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        lo * self.dim - lo * (lo + 1) / 2 + hi
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Fold one sample vector into the running moments.
    pub fn push(&mut self, sample: &[f64]) {
        assert_eq!(sample.len(), self.dim, "sample width mismatch");
        self.count += 1;
        let n = self.count as f64;
        for ((delta, &x), mean) in self.scratch.iter_mut().zip(sample).zip(&mut self.mean) {
            *delta = x - *mean;
            *mean += *delta / n;
        }
        let mut k = 0;
        for i in 0..self.dim {
            let di = self.scratch[i];
            for (&x, &mean) in sample[i..].iter().zip(&self.mean[i..]) {
                self.comoment[k] += di * (x - mean);
                k += 1;
            }
        }
    }

    /// Merge two accumulators over disjoint sample blocks.
    pub fn merge(mut self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "accumulator width mismatch");
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other.clone();
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        for i in 0..self.dim {
            self.scratch[i] = other.mean[i] - self.mean[i];
        }
        let mut k = 0;
        for i in 0..self.dim {
            for j in i..self.dim {
                self.comoment[k] +=
                    other.comoment[k] + self.scratch[i] * self.scratch[j] * na * nb / n;
                k += 1;
            }
        }
        for i in 0..self.dim {
            self.mean[i] += self.scratch[i] * nb / n;
        }
        self.count += other.count;
        self
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.mean[i]
    }

    /// Sample covariance (n - 1 denominator).
    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        self.comoment[self.idx(i, j)] / (self.count as f64 - 1.0)
    }

    pub fn variance(&self, i: usize) -> f64 {
        self.covariance(i, i)
    }
}

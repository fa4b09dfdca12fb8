//! Torus weights of `n_r` and of the tangent space of the flag variety, and
//! the weight of the canonical bundle at the base point.
//!
//! Weights are additive exponent vectors in `Z^{rN}` over the interleaved
//! coordinates; `x_m x_n^{-1}` is `e_m - e_n`.

use crate::pseudoroots::PseudorootSystem;

pub type WeightVector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWeights {
    pub r: usize,
    pub n: usize,
    /// Sum of the weights of `n_r`, one per pseudoroot.
    pub w1: WeightVector,
    /// Sum of the tangent weights of the flag variety at the base point.
    pub w2: WeightVector,
    /// `-w1 - w2`.
    pub w: WeightVector,
    /// `w1` from the double-product formula over blocks.
    pub w1_product: WeightVector,
    /// `Σ_s Σ_k (N+1-2k) e_{r(k-1)+s} + Σ_k (e_{r(k-1)+1} - e_{rk})`.
    pub w1_closed: WeightVector,
    /// `Σ_s Σ_k (2k-N-1) e_{r(k-1)+s}`.
    pub w2_closed: WeightVector,
    /// `Σ_k (e_{rk} - e_{r(k-1)+1})`.
    pub w_closed: WeightVector,
    /// The commonly quoted forms with the last factor inverted:
    /// `w1` with `Σ_k (e_{rk} - e_{r(k-1)+1})` and `w = Σ_k (e_{r(k-1)+1} - e_{rk})`.
    /// They agree with the computed weights only for `r = 1`.
    pub w1_quoted: WeightVector,
    pub w_quoted: WeightVector,
    /// Within every component all coordinates of `w` agree.
    pub sl_trivial: bool,
}

impl CanonicalWeights {
    pub fn closed_forms_hold(&self) -> bool {
        self.w1 == self.w1_product
            && self.w1 == self.w1_closed
            && self.w2 == self.w2_closed
            && self.w == self.w_closed
    }

    pub fn quoted_forms_hold(&self) -> bool {
        self.w1 == self.w1_quoted && self.w == self.w_quoted
    }
}

/// 1-based `(s, k)` to 0-based interleaved index `r(k-1) + s - 1`.
fn idx(r: usize, s: usize, k: usize) -> usize {
    r * (k - 1) + s - 1
}

pub fn lemma31_weights(r: usize, n: usize) -> CanonicalWeights {
    let len = r * n;

    let mut w1 = vec![0; len];
    for root in PseudorootSystem::build(r, n).roots() {
        w1[root.m - 1] += 1;
        w1[root.n - 1] -= 1;
    }

    // ∏_{s=2}^r ∏_{k≤l} x_{r(k-1)+s-1} x_{r(l-1)+s}^{-1} · ∏_{k<l} x_{rk} x_{r(l-1)+1}^{-1}
    let mut w1_product = vec![0; len];
    for s in 2..=r {
        for k in 1..=n {
            for l in k..=n {
                w1_product[idx(r, s - 1, k)] += 1;
                w1_product[idx(r, s, l)] -= 1;
            }
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            w1_product[idx(r, r, k)] += 1;
            w1_product[idx(r, 1, l)] -= 1;
        }
    }

    let mut w2 = vec![0; len];
    for s in 1..=r {
        for k in 1..=n {
            for l in 1..k {
                w2[idx(r, s, k)] += 1;
                w2[idx(r, s, l)] -= 1;
            }
        }
    }

    let mut w1_closed = vec![0; len];
    let mut w2_closed = vec![0; len];
    let mut w_closed = vec![0; len];
    for s in 1..=r {
        for k in 1..=n {
            w1_closed[idx(r, s, k)] += n as i64 + 1 - 2 * k as i64;
            w2_closed[idx(r, s, k)] += 2 * k as i64 - n as i64 - 1;
        }
    }
    let mut w1_quoted = w1_closed.clone();
    let mut w_quoted = vec![0; len];
    for k in 1..=n {
        w1_closed[idx(r, 1, k)] += 1;
        w1_closed[idx(r, r, k)] -= 1;
        w_closed[idx(r, r, k)] += 1;
        w_closed[idx(r, 1, k)] -= 1;
        w1_quoted[idx(r, r, k)] += 1;
        w1_quoted[idx(r, 1, k)] -= 1;
        w_quoted[idx(r, 1, k)] += 1;
        w_quoted[idx(r, r, k)] -= 1;
    }

    let w: WeightVector = w1.iter().zip(&w2).map(|(a, b)| -a - b).collect();
    let sl_trivial = (1..=r).all(|s| (1..=n).all(|k| w[idx(r, s, k)] == w[idx(r, s, 1)]));

    CanonicalWeights {
        r,
        n,
        w1,
        w2,
        w,
        w1_product,
        w1_closed,
        w2_closed,
        w_closed,
        w1_quoted,
        w_quoted,
        sl_trivial,
    }
}

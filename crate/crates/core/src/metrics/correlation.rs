use std::cmp::Ordering;

use super::MetricsError;
use crate::num::Scalar;

/// Spearman rank correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spearman<F> {
    pub rho: F,
    /// One of the inputs was constant; `rho` is reported as 0.
    pub degenerate: bool,
}

/// 1-based ranks with ties sharing the mean of the positions they span.
pub fn midranks<F: Scalar>(xs: &[F]) -> Vec<F> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![F::zero(); xs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && xs[order[end]] == xs[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end share (start + 1 + end) / 2
        let rank = F::from_usize_lossy(start + 1 + end) / F::from_u8(2).unwrap();
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson<F: Scalar>(xs: &[F], ys: &[F]) -> Spearman<F> {
    let n = F::from_usize_lossy(xs.len());
    let mx = xs.iter().fold(F::zero(), |a, &b| a + b) / n;
    let my = ys.iter().fold(F::zero(), |a, &b| a + b) / n;
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Spearman {
            rho: F::zero(),
            degenerate: true,
        };
    }
    let rho = (sxy / (sxx * syy).sqrt()).max(-F::one()).min(F::one());
    Spearman {
        rho,
        degenerate: false,
    }
}

/// Pearson correlation of the midranks of `xs` and `ys`.
pub fn spearman<F: Scalar>(xs: &[F], ys: &[F]) -> Result<Spearman<F>, MetricsError> {
    if xs.len() != ys.len() {
        return Err(MetricsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(MetricsError::TooFewObservations(xs.len()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(MetricsError::NotFinite);
    }
    Ok(pearson(&midranks(xs), &midranks(ys)))
}

pub fn spearman_rho<F: Scalar>(xs: &[F], ys: &[F]) -> Result<F, MetricsError> {
    spearman(xs, ys).map(|s| s.rho)
}

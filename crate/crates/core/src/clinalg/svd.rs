//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns of `W = AV` are rotated pairwise until mutually orthogonal; the
//! column norms are then the singular values and `V` is a full unitary
//! matrix even when `A` is wide, so null spaces can be read off directly.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;

const MAX_SWEEPS: usize = 80;

pub(crate) struct Svd {
    /// Descending.
    pub sigma: Vec<f64>,
    /// `rows x cols`; column `k` is `u_k` when `sigma[k] > 0`, zero otherwise.
    pub u: ComplexMatrix,
    /// `cols x cols` unitary; column `k` pairs with `sigma[k]`.
    pub v: ComplexMatrix,
}

/// `w_p <- c w_p - s e w_q`, `w_q <- s w_p + c e w_q` with `|e| = 1`; a
/// unitary column operation.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    for (a, b) in head[p].iter_mut().zip(tail[0].iter_mut()) {
        let (x, y) = (*a, *b * e);
        *a = x * c - y * s;
        *b = x * s + y * c;
    }
}

pub(crate) fn decompose(a: &ComplexMatrix) -> Svd {
    let (m, n) = a.shape();
    let threshold = m.max(1) as f64 * f64::EPSILON;
    // columns this small are zero for every purpose; rotating them against
    // each other would feed denormals into the phase and break unitarity
    let negligible = (f64::EPSILON * f64::EPSILON) * a.norm() * a.norm();
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if alpha.min(beta) <= negligible || g <= threshold * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = libm::copysign(1.0, zeta) / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                // phase aligning w_q with w_p so their overlap is real
                let phase = gamma.conj() / g;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w
        .iter()
        .map(|col| libm::sqrt(col.iter().map(|z| z.norm_sqr()).sum::<f64>()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma = order.iter().map(|&k| norms[k]).collect();
    let u = ComplexMatrix::from_fn(m, n, |i, k| {
        let s = norms[order[k]];
        if s > 0.0 {
            w[order[k]][i] / s
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v = ComplexMatrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Svd { sigma, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{haar_state_from, stream};

    fn random(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let v = haar_state_from(&mut stream(seed, 0), rows * cols).unwrap();
        ComplexMatrix::new(rows, cols, v.vector().as_slice().to_vec()).unwrap()
    }

    fn check(a: &ComplexMatrix) {
        let d = decompose(a);
        let n = a.cols();
        assert!(d.sigma.windows(2).all(|w| w[0] >= w[1]));
        let vv = &d.v.adjoint() * &d.v;
        assert!((&vv - &ComplexMatrix::identity(n)).norm() < 1e-13);
        let sigma = ComplexMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { d.sigma[i] } else { 0.0 }, 0.0)
        });
        let rebuilt = &(&d.u * &sigma) * &d.v.adjoint();
        assert!((&rebuilt - a).norm() < 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn reconstructs_tall_wide_and_square() {
        for seed in 0..300 {
            for (r, c) in [(8, 7), (7, 8), (4, 4), (1, 5), (5, 1), (3, 3)] {
                check(&random(r, c, seed));
            }
        }
    }

    #[test]
    fn projector_complements() {
        // low-rank Hermitian inputs, as produced by I - P
        for seed in 0..300 {
            let b = random(8, 1, seed);
            let b = b.scale(Complex64::new(1.0 / b.norm(), 0.0));
            let q = &ComplexMatrix::identity(8) - &(&b * &b.adjoint());
            check(&q);
            let d = decompose(&q);
            assert!(d.sigma[7] < 1e-14 && (d.sigma[6] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn wide_null_directions_stay_orthonormal() {
        for seed in 0..300 {
            let d = decompose(&random(2, 4, seed));
            let vv = &d.v.adjoint() * &d.v;
            assert!((&vv - &ComplexMatrix::identity(4)).norm() < 1e-13);
        }
    }

    #[test]
    fn empty_and_zero() {
        let d = decompose(&ComplexMatrix::zeros(3, 2));
        assert_eq!(d.sigma, [0.0, 0.0]);
        assert_eq!(d.v, ComplexMatrix::identity(2));
        assert!(decompose(&ComplexMatrix::zeros(0, 0)).sigma.is_empty());
    }
}

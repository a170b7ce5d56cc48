//! Cyclic Jacobi eigensolvers for the small fixed-size matrices used by the
//! entanglement criteria.

use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a real symmetric matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns. Only the symmetric part of `a` is used.
pub fn symmetric_eigen<const N: usize>(a: &[[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut m = *a;
    for i in 0..N {
        for j in 0..i {
            let s = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = s;
            m[j][i] = s;
        }
    }
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let frob: f64 = m.iter().flatten().map(|x| x * x).sum();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off == 0.0 || off <= 1e-36 * frob {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    let values = std::array::from_fn(|k| m[order[k]][order[k]]);
    let vectors = std::array::from_fn(|r| std::array::from_fn(|k| v[r][order[k]]));
    (values, vectors)
}

fn rotate<const N: usize>(m: &mut [[f64; N]; N], v: &mut [[f64; N]; N], p: usize, q: usize) {
    let apq = m[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
    // smaller root of t² + 2θt − 1 = 0
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for row in m.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = c * kp - s * kq;
        row[q] = s * kp + c * kq;
    }
    for k in 0..N {
        let (pk, qk) = (m[p][k], m[q][k]);
        m[p][k] = c * pk - s * qk;
        m[q][k] = s * pk + c * qk;
    }
    m[p][q] = 0.0;
    m[q][p] = 0.0;
    for row in v.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = c * kp - s * kq;
        row[q] = s * kp + c * kq;
    }
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian 4×4.
///
/// Works on the real symmetric embedding `[[A, −B], [B, A]]` of `A + iB`,
/// whose spectrum is that of the Hermitian matrix with every eigenvalue
/// doubled.
pub fn hermitian_eigen4(h: &[[Complex64; 4]; 4]) -> ([f64; 4], [[Complex64; 4]; 4]) {
    let mut big = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            // Hermitian part only
            let z = 0.5 * (h[i][j] + h[j][i].conj());
            big[i][j] = z.re;
            big[i + 4][j + 4] = z.re;
            big[i][j + 4] = -z.im;
            big[i + 4][j] = z.im;
        }
    }
    let (vals, vecs) = symmetric_eigen(&big);

    // Eigenvalues come in degenerate pairs; each pair spans {(x,y), (−y,x)},
    // both of which map to the same complex ray x + iy up to a phase. Take
    // one vector per pair, orthogonalised against those already chosen.
    let mut values = [0.0; 4];
    let mut vectors = [[Complex64::new(0.0, 0.0); 4]; 4];
    let mut chosen: Vec<[Complex64; 4]> = Vec::with_capacity(4);
    for k in 0..4 {
        values[k] = 0.5 * (vals[2 * k] + vals[2 * k + 1]);
        let mut best = [Complex64::new(0.0, 0.0); 4];
        let mut best_norm = -1.0;
        for col in [2 * k, 2 * k + 1] {
            let mut z: [Complex64; 4] =
                std::array::from_fn(|i| Complex64::new(vecs[i][col], vecs[i + 4][col]));
            for u in &chosen {
                let proj: Complex64 = (0..4).map(|i| u[i].conj() * z[i]).sum();
                for i in 0..4 {
                    z[i] -= proj * u[i];
                }
            }
            let n = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if n > best_norm {
                best_norm = n;
                best = z;
            }
        }
        for c in best.iter_mut() {
            *c /= best_norm;
        }
        for i in 0..4 {
            vectors[i][k] = best[i];
        }
        chosen.push(best);
    }
    (values, vectors)
}

pub fn hermitian_eigenvalues4(h: &[[Complex64; 4]; 4]) -> [f64; 4] {
    hermitian_eigen4(h).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Real roots of a monic polynomial with only real roots, by
    /// Durand–Kerner iteration.
    fn real_roots(coeffs: &[f64]) -> Vec<f64> {
        // coeffs: c[0] + c[1] x + ... + x^n, c.len() == n
        let n = coeffs.len();
        let eval = |z: Complex64| {
            let mut acc = Complex64::new(1.0, 0.0);
            for c in coeffs.iter().rev() {
                acc = acc * z + c;
            }
            acc
        };
        let seed = Complex64::new(0.4, 0.9);
        let bound = 1.0 + coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound * 0.5).collect();
        for _ in 0..2000 {
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= z[i] - z[j];
                    }
                }
                let step = eval(z[i]) / denom;
                z[i] -= step;
            }
        }
        let mut r: Vec<f64> = z.iter().map(|c| c.re).collect();
        r.sort_by(f64::total_cmp);
        r
    }

    /// Monic characteristic polynomial by Faddeev–LeVerrier.
    fn char_poly<const N: usize>(a: &[[Complex64; N]; N]) -> Vec<f64> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); N + 1];
        coeffs[N] = Complex64::new(1.0, 0.0);
        let mut m = [[Complex64::new(0.0, 0.0); N]; N];
        for k in 1..=N {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = [[Complex64::new(0.0, 0.0); N]; N];
            for i in 0..N {
                for j in 0..N {
                    next[i][j] = (0..N).map(|l| a[i][l] * m[l][j]).sum();
                }
                next[i][i] += coeffs[N - k + 1];
            }
            m = next;
            let mut am = Complex64::new(0.0, 0.0);
            for i in 0..N {
                am += (0..N).map(|l| a[i][l] * m[l][i]).sum::<Complex64>();
            }
            coeffs[N - k] = -am / k as f64;
        }
        coeffs[..N].iter().map(|c| c.re).collect()
    }

    fn random_symmetric3(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
        let mut a = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..=i {
                let x = rng.gen_range(-1.0..1.0);
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        a
    }

    fn random_hermitian4(rng: &mut ChaCha8Rng) -> [[Complex64; 4]; 4] {
        let mut a = [[Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            a[i][i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in 0..i {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[i][j] = z;
                a[j][i] = z.conj();
            }
        }
        a
    }

    #[test]
    fn symmetric3_residual_and_charpoly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = random_symmetric3(&mut rng);
            let (vals, vecs) = symmetric_eigen(&a);
            for k in 0..3 {
                let res: f64 = (0..3)
                    .map(|i| {
                        let av: f64 = (0..3).map(|j| a[i][j] * vecs[j][k]).sum();
                        (av - vals[k] * vecs[i][k]).powi(2)
                    })
                    .sum::<f64>()
                    .sqrt();
                assert!(res < 1e-10, "residual {res}");
            }
            let ac: [[Complex64; 3]; 3] =
                std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(a[i][j], 0.0)));
            let roots = real_roots(&char_poly(&ac));
            for (x, y) in vals.iter().zip(&roots) {
                assert!((x - y).abs() < 1e-8, "{vals:?} vs {roots:?}");
            }
        }
    }

    #[test]
    fn hermitian4_residual_and_charpoly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = random_hermitian4(&mut rng);
            let (vals, vecs) = hermitian_eigen4(&a);
            for k in 0..4 {
                let res: f64 = (0..4)
                    .map(|i| {
                        let av: Complex64 = (0..4).map(|j| a[i][j] * vecs[j][k]).sum();
                        (av - vecs[i][k] * vals[k]).norm_sqr()
                    })
                    .sum::<f64>()
                    .sqrt();
                assert!(res < 1e-10, "residual {res}");
            }
            // orthonormal
            for k in 0..4 {
                for l in 0..4 {
                    let ip: Complex64 = (0..4).map(|i| vecs[i][k].conj() * vecs[i][l]).sum();
                    let want = if k == l { 1.0 } else { 0.0 };
                    assert!((ip - want).norm() < 1e-10);
                }
            }
            let roots = real_roots(&char_poly(&a));
            for (x, y) in vals.iter().zip(&roots) {
                assert!((x - y).abs() < 1e-8, "{vals:?} vs {roots:?}");
            }
        }
    }

    #[test]
    fn degenerate_spectra() {
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(symmetric_eigen(&id).0, [1.0, 1.0, 1.0]);
        let zero = [[Complex64::new(0.0, 0.0); 4]; 4];
        assert_eq!(hermitian_eigenvalues4(&zero), [0.0; 4]);
        let d = [[2.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        assert_eq!(symmetric_eigen(&d).0, [-1.0, 2.0, 2.0]);
    }
}

//! Small fixed-size linear algebra used by the per-cell kernels.

use core::f64::consts::PI;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

pub fn scaled(a: &Mat3, s: f64) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j] * s;
        }
    }
    out
}

pub fn add(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j] + b[i][j];
        }
    }
    out
}

pub fn trace(a: &Mat3) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

pub fn norm_sq(v: &Vec3) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

pub fn det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Lower-triangular Cholesky factor `L` with `a = L L^T`, or `None` when a
/// pivot is not strictly positive.
pub fn cholesky(a: &Mat3) -> Option<Mat3> {
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > 0.0) || !s.is_finite() {
                    return None;
                }
                l[i][i] = libm::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves `L y = b` for lower-triangular `L`.
pub fn forward_solve(l: &Mat3, b: &Vec3) -> Vec3 {
    let y0 = b[0] / l[0][0];
    let y1 = (b[1] - l[1][0] * y0) / l[1][1];
    let y2 = (b[2] - l[2][0] * y0 - l[2][1] * y1) / l[2][2];
    [y0, y1, y2]
}

/// `log det(a)` from its Cholesky factor.
pub fn log_det_from_factor(l: &Mat3) -> f64 {
    2.0 * (libm::log(l[0][0]) + libm::log(l[1][1]) + libm::log(l[2][2]))
}

/// Eigenvalues of a symmetric 3x3 matrix in ascending order, by the
/// trigonometric closed form.
pub fn sym_eigenvalues(a: &Mat3) -> [f64; 3] {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    let q = trace(a) / 3.0;
    if p1 == 0.0 {
        let mut e = [a[0][0], a[1][1], a[2][2]];
        sort3(&mut e);
        return e;
    }
    let p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) + (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
    let p = libm::sqrt(p2 / 6.0);
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let r = (det(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = libm::acos(r) / 3.0;
    let e1 = q + 2.0 * p * libm::cos(phi);
    let e3 = q + 2.0 * p * libm::cos(phi + 2.0 * PI / 3.0);
    let e2 = 3.0 * q - e1 - e3;
    let mut e = [e1, e2, e3];
    sort3(&mut e);
    e
}

fn sort3(e: &mut [f64; 3]) {
    if e[0] > e[1] {
        e.swap(0, 1);
    }
    if e[1] > e[2] {
        e.swap(1, 2);
    }
    if e[0] > e[1] {
        e.swap(0, 1);
    }
}

/// Gaussian elimination with partial pivoting. Returns `None` for a
/// numerically singular system.
pub fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let mut piv = col;
        for r in col + 1..N {
            if libm::fabs(a[r][col]) > libm::fabs(a[piv][col]) {
                piv = r;
            }
        }
        if !(libm::fabs(a[piv][col]) > 0.0) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..N {
            let factor = a[r][col] / a[col][col];
            for c in col..N {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = [0.0; N];
    for r in (0..N).rev() {
        let mut s = b[r];
        for c in r + 1..N {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_reconstructs() {
        let a = [[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]];
        let l = cholesky(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| l[i][k] * l[j][k]).sum();
                assert!((s - a[i][j]).abs() < 1e-14);
            }
        }
        assert!((log_det_from_factor(&l) - det(&a).ln()).abs() < 1e-14);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        assert!(cholesky(&[[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).is_none());
    }

    #[test]
    fn eigenvalues_match_characteristic_polynomial() {
        let a = [[2.0, 0.3, -0.1], [0.3, 1.0, 0.4], [-0.1, 0.4, 1.5]];
        let e = sym_eigenvalues(&a);
        assert!(e[0] <= e[1] && e[1] <= e[2]);
        for &lam in &e {
            let shifted = add(&a, &scaled(&IDENTITY, -lam));
            assert!(det(&shifted).abs() < 1e-12);
        }
        assert!((e.iter().sum::<f64>() - trace(&a)).abs() < 1e-13);
    }

    #[test]
    fn dense_solve() {
        let a = [[3.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 5.0]];
        let x = solve_dense(a, [4.0, 6.0, 6.0]).unwrap();
        for (xi, want) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - want).abs() < 1e-14);
        }
    }
}

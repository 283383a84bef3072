//! Dense complex linear solve, sized for the truncated amplitude system.

use crate::Real;
use num_complex::Complex;

/// Solves `A x = b` in place by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n`. Returns `None` when a pivot falls below the
/// rank-deficiency threshold.
pub(crate) fn solve_partial_pivot<T: Real>(
    a: &mut [Complex<T>],
    b: &mut [Complex<T>],
    n: usize,
) -> Option<Vec<Complex<T>>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);

    // scale-aware singularity threshold
    let mut max_entry = T::zero();
    for entry in a.iter() {
        max_entry = max_entry.max(entry.norm());
    }
    let tiny = max_entry * T::epsilon() * T::from_usize(n * 16).unwrap();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].norm();
        for row in (col + 1)..n {
            let mag = a[row * n + col].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if !(pivot_mag > tiny) {
            return None;
        }
        if pivot_row != col {
            for k in col..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor.norm() == T::zero() {
                continue;
            }
            a[row * n + col] = Complex::new(T::zero(), T::zero());
            for k in (col + 1)..n {
                let upper = a[col * n + k];
                a[row * n + k] = a[row * n + k] - factor * upper;
            }
            let bc = b[col];
            b[row] = b[row] - factor * bc;
        }
    }

    let mut x = vec![Complex::new(T::zero(), T::zero()); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc = acc - a[col * n + k] * x[k];
        }
        x[col] = acc / a[col * n + col];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_reference_system() {
        // [[2, i], [1-i, 3]] x = [1, 2-i]
        let mut a = vec![
            Complex::new(2.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(1.0, -1.0),
            Complex::new(3.0, 0.0),
        ];
        let mut b = vec![Complex::new(1.0, 0.0), Complex::new(2.0, -1.0)];
        let x = solve_partial_pivot(&mut a, &mut b, 2).unwrap();
        // residual check against the original system
        let a0 = [
            Complex::new(2.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(1.0, -1.0),
            Complex::new(3.0, 0.0),
        ];
        let b0 = [Complex::new(1.0, 0.0), Complex::new(2.0, -1.0)];
        for row in 0..2 {
            let lhs = a0[row * 2] * x[0] + a0[row * 2 + 1] * x[1];
            assert!((lhs - b0[row]).norm() < 1e-14);
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let mut a = vec![
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
        ];
        let mut b = vec![Complex::new(3.0, 0.0), Complex::new(7.0, 0.0)];
        let x = solve_partial_pivot(&mut a, &mut b, 2).unwrap();
        assert!((x[0] - Complex::new(7.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - Complex::new(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_system_detected() {
        let mut a = vec![
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
            Complex::new(2.0, 0.0),
            Complex::new(4.0, 0.0),
        ];
        let mut b = vec![Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)];
        assert!(solve_partial_pivot(&mut a, &mut b, 2).is_none());
    }
}

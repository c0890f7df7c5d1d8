//! Closed-form counts for the `D_{n,n-2}` family.

use crate::complex::FVector;

/// Binomial coefficient, exact for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Number of 2-sphere wedge summands in the homotopy type of `D_{n,n-2}`:
/// `N_n = (n-2)(n-3)(3n^2 - 7n - 2) / 12`, for `n >= 4`.
pub fn wedge_summands(n: u8) -> i64 {
    let n = n as i64;
    let num = (n - 2) * (n - 3) * (3 * n * n - 7 * n - 2);
    debug_assert_eq!(num % 12, 0);
    num / 12
}

/// Euler characteristic of `D_{n,n-2}`, equal to `N_n + 1`.
pub fn dnn2_euler(n: u8) -> i64 {
    wedge_summands(n) + 1
}

/// The f-vector of `D_{n,n-2}`:
/// `(C(n,2), C(C(n,2),2), C(n,3) + 12 C(n,4), 3 C(n,4))`.
pub fn dnn2_f_vector(n: u8) -> FVector {
    let n = n as u64;
    let c0 = binomial(n, 2);
    FVector::new(vec![
        c0 as usize,
        binomial(c0, 2) as usize,
        (binomial(n, 3) + 12 * binomial(n, 4)) as usize,
        (3 * binomial(n, 4)) as usize,
    ])
}

/// Dimension of `D_{n,k}` for `2 <= k <= n`: one less than the integral part
/// of `(n-k+2)(n-k)/2`. Outside that range the formula is not asserted.
pub fn vizing_dimension(n: u8, k: u8) -> Option<isize> {
    if !(2..=n).contains(&k) {
        return None;
    }
    let (n, k) = (n as isize, k as isize);
    Some((n - k + 2) * (n - k) / 2 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_counts() {
        assert_eq!(
            (4..=9).map(wedge_summands).collect::<Vec<_>>(),
            vec![3, 19, 64, 160, 335, 623]
        );
    }

    #[test]
    fn euler_equals_f_vector_alternating_sum() {
        for n in 4..=12u8 {
            assert_eq!(dnn2_f_vector(n).euler(), dnn2_euler(n), "n={n}");
        }
    }

    #[test]
    fn f_vector_small_cases() {
        assert_eq!(dnn2_f_vector(4).counts(), &[6, 15, 16, 3]);
        assert_eq!(dnn2_f_vector(5).counts(), &[10, 45, 70, 15]);
    }

    #[test]
    fn vizing_dimension_cases() {
        assert_eq!(vizing_dimension(7, 3), Some(11));
        assert_eq!(vizing_dimension(5, 2), Some(6));
        assert_eq!(vizing_dimension(6, 4), Some(3));
        assert_eq!(vizing_dimension(6, 6), Some(-1)); // empty complex
        assert_eq!(vizing_dimension(6, 1), None);
    }
}

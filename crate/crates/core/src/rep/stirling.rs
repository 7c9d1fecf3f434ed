//! Stirling numbers of the second kind and the dimension of coinduced injectives in FA.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `S(t, i)` by the recurrence `S(t, i) = i·S(t-1, i) + S(t-1, i-1)`.
pub fn stirling2(t: usize, i: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for s in 1..=t {
        let mut next = vec![BigUint::zero(); s + 1];
        for k in 1..=s {
            let stay = if k < row.len() { &row[k] * BigUint::from(k) } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row.get(i).cloned().unwrap_or_default()
}

/// `Σ_{i=1}^{n} S(t, i) · n!/(n-i)!`.
pub fn coinduced_injective_dim(n: usize, t: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut falling = BigUint::one();
    for i in 1..=n {
        falling *= BigUint::from(n - i + 1);
        total += stirling2(t, i) * &falling;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(stirling2(4, 2), BigUint::from(7u32));
        assert_eq!(stirling2(5, 3), BigUint::from(25u32));
        assert_eq!(stirling2(0, 0), BigUint::one());
        assert_eq!(stirling2(3, 5), BigUint::zero());
    }

    #[test]
    fn examples() {
        for t in 1..6 {
            assert_eq!(coinduced_injective_dim(1, t), BigUint::one());
        }
        assert_eq!(coinduced_injective_dim(2, 3), BigUint::from(8u32));
        assert_eq!(coinduced_injective_dim(2, 4), BigUint::from(16u32));
    }
}

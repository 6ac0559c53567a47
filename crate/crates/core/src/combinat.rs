//! Integer combinatorics: binomials and subset enumeration.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// `C(n, k)` with the conventions `C(n, k) = 0` for `k < 0` or `k > n >= 0`.
///
/// For negative `n` the generalized binomial `n(n-1)...(n-k+1)/k!` is returned.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let k = if n >= 0 { k.min(n - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `binomial` narrowed to `i64`; panics on overflow (never hit at desk scale).
pub fn binomial_i64(n: i64, k: i64) -> i64 {
    binomial(n, k).to_i64().expect("binomial overflow")
}

/// All `k`-subsets of `{1..n}` in colexicographic order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance: find smallest position i that can be incremented
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            let limit = if i + 1 < k { cur[i + 1] } else { n + 1 };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j + 1;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Position of `subset` within `subsets_colex(n, subset.len())`.
pub fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial_i64(s as i64 - 1, i as i64 + 1) as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal's triangle, built additively.
    fn pascal(n: usize) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![1i64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1i64; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal() {
        let tri = pascal(12);
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(binomial_i64(n, k), tri[n as usize][k as usize]);
            }
        }
        assert_eq!(binomial_i64(5, 1), 5);
        assert_eq!(binomial_i64(6, 2), tri[6][2]);
        assert_eq!(binomial_i64(6, 2), 15);
        assert_eq!(binomial_i64(4, 0), 1);
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial_i64(3, -1), 0);
        assert_eq!(binomial_i64(3, 4), 0);
        assert_eq!(binomial_i64(0, 0), 1);
        assert_eq!(binomial_i64(-1, 2), 1);
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn colex_order() {
        let s = subsets_colex(4, 2);
        assert_eq!(s, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
        for (i, sub) in s.iter().enumerate() {
            assert_eq!(colex_rank(sub), i);
        }
        assert_eq!(subsets_colex(6, 5).len(), 6);
        assert_eq!(subsets_colex(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets_colex(2, 3).is_empty());
        for sub in subsets_colex(7, 3) {
            assert_eq!(subsets_colex(7, 3)[colex_rank(&sub)], sub);
        }
    }
}

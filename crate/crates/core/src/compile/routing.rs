//! Adjacent-transposition routing on a line of hardware positions.
//!
//! An arrangement lists, for each position `1..=n_q`, the logical qubit it
//! holds. A transposition `(i, i + 1)` exchanges the contents of two
//! neighbouring positions.

use crate::error::{DaqcError, Result};

/// `(1, 1+n, 2, 2+n, ..., n, 2n)` for `n_q = 2n`: spin partners side by side.
pub fn interleaved_order(n_q: usize) -> Vec<usize> {
    let n = n_q / 2;
    (1..=n).flat_map(|j| [j, j + n]).collect()
}

/// Apply transpositions to an arrangement, first element first.
pub fn apply_transpositions(order: &mut [usize], swaps: &[(usize, usize)]) {
    for &(i, j) in swaps {
        order.swap(i - 1, j - 1);
    }
}

pub fn inversion_count(perm: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

/// Shortest sequence of adjacent transpositions turning arrangement `from`
/// into `to` (insertion sort; its length is the inversion count of the
/// relative permutation).
pub fn route(from: &[usize], to: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut sorted_from = from.to_vec();
    let mut sorted_to = to.to_vec();
    sorted_from.sort_unstable();
    sorted_to.sort_unstable();
    if sorted_from != sorted_to {
        return Err(DaqcError::validation(
            "routing endpoints are not arrangements of the same qubits",
        ));
    }
    let mut arr = from.to_vec();
    let mut swaps = Vec::new();
    for p in 0..arr.len() {
        let q = p + arr[p..].iter().position(|&x| x == to[p]).unwrap();
        for k in (p..q).rev() {
            arr.swap(k, k + 1);
            swaps.push((k + 1, k + 2));
        }
    }
    Ok(swaps)
}

/// SWAP network carrying `(1, ..., n_q)` to [`interleaved_order`].
pub fn swap_network(n_q: usize) -> Result<Vec<(usize, usize)>> {
    if n_q < 2 || !n_q.is_multiple_of(2) {
        return Err(DaqcError::validation(format!(
            "swap network needs an even qubit count of at least 2, got {n_q}"
        )));
    }
    let identity: Vec<usize> = (1..=n_q).collect();
    route(&identity, &interleaved_order(n_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn run(n_q: usize, swaps: &[(usize, usize)]) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=n_q).collect();
        apply_transpositions(&mut order, swaps);
        order
    }

    #[test]
    fn two_qubits_need_nothing() {
        assert!(swap_network(2).unwrap().is_empty());
    }

    #[test]
    fn six_and_eight_qubit_networks() {
        let s6 = swap_network(6).unwrap();
        assert_eq!(run(6, &s6), vec![1, 4, 2, 5, 3, 6]);
        assert_eq!(s6.len(), 3);

        let s8 = swap_network(8).unwrap();
        assert_eq!(run(8, &s8), vec![1, 5, 2, 6, 3, 7, 4, 8]);
        assert_eq!(s8.len(), 6);
    }

    #[test]
    fn literal_products_read_left_to_right() {
        // S6 = P34 P45 P23 and S8 = P45 P34 P56 P67 P45 P23, leftmost applied first
        let s6 = [(3, 4), (4, 5), (2, 3)];
        assert_eq!(run(6, &s6), interleaved_order(6));
        let s8 = [(4, 5), (3, 4), (5, 6), (6, 7), (4, 5), (2, 3)];
        assert_eq!(run(8, &s8), interleaved_order(8));
    }

    #[test]
    fn odd_counts_rejected() {
        assert!(swap_network(5).is_err());
        assert!(swap_network(0).is_err());
    }

    #[test]
    fn route_rejects_mismatched_sets() {
        assert!(route(&[1, 2, 3], &[1, 2, 4]).is_err());
    }

    proptest! {
        #[test]
        fn network_is_minimal_and_exact(n in 1usize..10) {
            let n_q = 2 * n;
            let swaps = swap_network(n_q).unwrap();
            let target = interleaved_order(n_q);
            prop_assert_eq!(run(n_q, &swaps), target.clone());
            prop_assert_eq!(swaps.len(), inversion_count(&target));
            prop_assert!(swaps.iter().all(|&(i, j)| j == i + 1 && j <= n_q));
        }

        #[test]
        fn route_between_random_arrangements(perm in Just((1..=7usize).collect::<Vec<_>>()).prop_shuffle()) {
            let identity: Vec<usize> = (1..=7).collect();
            let swaps = route(&perm, &identity).unwrap();
            let mut arr = perm.clone();
            apply_transpositions(&mut arr, &swaps);
            prop_assert_eq!(arr, identity);
            prop_assert_eq!(swaps.len(), inversion_count(&perm));
        }
    }
}

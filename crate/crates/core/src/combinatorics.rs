//! Small enumeration helpers shared by the constructions and search code.

use crate::rational::{one, zero, Rational};

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Nonempty subsets of `0..k` as index lists, ordered by size and then
/// lexicographically.
pub fn nonempty_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << k))
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// 0/1 allocation vector of a subset of items.
pub fn indicator(subset: &[usize], k: usize) -> Vec<Rational> {
    (0..k)
        .map(|i| if subset.contains(&i) { one() } else { zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(2), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn subset_order() {
        assert_eq!(nonempty_subsets(2), vec![vec![0], vec![1], vec![0, 1]]);
        let s3 = nonempty_subsets(3);
        assert_eq!(s3.len(), 7);
        assert_eq!(s3[3], vec![0, 1]);
        assert_eq!(s3[6], vec![0, 1, 2]);
    }
}

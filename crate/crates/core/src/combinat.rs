//! Permutations, shuffles and PBW monomial enumeration.

use std::collections::BTreeSet;

/// A permutation of {0,…,k−1} stored as its image list.
pub type Perm = Vec<usize>;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// σ∘τ.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&i| sigma[i]).collect()
}

pub fn permutations(k: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// (a,b)-shuffles: permutations increasing on the first a and the last b positions.
pub fn shuffles(a: usize, b: usize) -> Vec<Perm> {
    let k = a + b;
    let mut out = Vec::new();
    for mask in 0u64..(1 << k) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let first = (0..k).filter(|i| mask >> i & 1 == 1);
        let second = (0..k).filter(|i| mask >> i & 1 == 0);
        out.push(first.chain(second).collect());
    }
    out
}

/// S_a × S_b acting separately on {0..a} and {a..a+b}.
pub fn block_permutations(a: usize, b: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for p in permutations(a) {
        for q in permutations(b) {
            out.push(p.iter().copied().chain(q.iter().map(|&j| j + a)).collect());
        }
    }
    out
}

/// Checks that W_{a,b} × (S_a × S_b) → S_k, (σ, τ) ↦ σ∘τ, is a bijection.
pub fn shuffle_factorization_is_bijective(a: usize, b: usize) -> bool {
    let images: BTreeSet<Perm> = shuffles(a, b)
        .iter()
        .flat_map(|s| block_permutations(a, b).into_iter().map(move |t| compose(s, &t)))
        .collect();
    let total = shuffles(a, b).len() * block_permutations(a, b).len();
    images.len() == total && images.len() == permutations(a + b).len()
}

/// Checks that {(i k)} × S_{k−1} → S_k, ((i k), σ) ↦ (i k)∘σ, is a bijection.
pub fn transposition_factorization_is_bijective(k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut images = BTreeSet::new();
    let mut count = 0;
    for i in 0..k {
        let mut swap: Perm = (0..k).collect();
        swap.swap(i, k - 1);
        for s in permutations(k - 1) {
            let mut s = s;
            s.push(k - 1);
            images.insert(compose(&swap, &s));
            count += 1;
        }
    }
    images.len() == count && count == permutations(k).len()
}

/// Sorted index multisets of length exactly `k` over `rank` generators.
pub fn monomials_of_degree(rank: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, rank: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..rank {
            cur.push(i);
            go(i, rank, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, rank, k, &mut Vec::new(), &mut out);
    out
}

pub fn monomials_up_to(rank: usize, k: usize) -> Vec<Vec<usize>> {
    (0..=k).flat_map(|d| monomials_of_degree(rank, d)).collect()
}

/// All distinct words that are rearrangements of a sorted multiset.
pub fn distinct_arrangements(sorted: &[usize]) -> Vec<Vec<usize>> {
    fn go(counts: &mut Vec<(usize, usize)>, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 > 0 {
                counts[i].1 -= 1;
                cur.push(counts[i].0);
                go(counts, cur, n, out);
                cur.pop();
                counts[i].1 += 1;
            }
        }
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &g in sorted {
        match counts.last_mut() {
            Some((h, c)) if *h == g => *c += 1,
            _ => counts.push((g, 1)),
        }
    }
    let mut out = Vec::new();
    go(&mut counts, &mut Vec::new(), sorted.len(), &mut out);
    out
}

/// Splits of a word into complementary subsequences, indexed by position masks.
pub fn subsequence_splits(word: &[usize]) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
    let n = word.len();
    (0u64..(1 << n)).map(move |mask| {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &g) in word.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.push(g);
            } else {
                b.push(g);
            }
        }
        (a, b)
    })
}

/// Splits of a word into three complementary subsequences.
pub fn subsequence_triples(word: &[usize]) -> Vec<[Vec<usize>; 3]> {
    let n = word.len();
    let total = 3usize.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut parts: [Vec<usize>; 3] = Default::default();
        for &g in word {
            parts[code % 3].push(g);
            code /= 3;
        }
        out.push(parts);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts_match_binomials() {
        for k in 0..=6 {
            for a in 0..=k {
                assert_eq!(shuffles(a, k - a).len() as u64, binomial(k, a));
            }
        }
    }

    #[test]
    fn shuffles_are_increasing_on_blocks() {
        for s in shuffles(2, 3) {
            assert!(s[0] < s[1]);
            assert!(s[2] < s[3] && s[3] < s[4]);
        }
    }

    #[test]
    fn factorizations_small() {
        assert!(shuffle_factorization_is_bijective(2, 2));
        assert!(transposition_factorization_is_bijective(4));
    }

    #[test]
    fn monomial_counts() {
        // C(rank + k - 1, k) sorted words of length k
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn arrangements_of_multisets() {
        assert_eq!(distinct_arrangements(&[0, 0, 1]).len(), 3);
        assert_eq!(distinct_arrangements(&[0, 1, 2]).len(), 6);
        assert_eq!(distinct_arrangements(&[]).len(), 1);
    }

    #[test]
    fn splits_enumerate_all_masks() {
        assert_eq!(subsequence_splits(&[0, 1, 1]).count(), 8);
        assert_eq!(subsequence_triples(&[0, 1]).len(), 9);
    }
}

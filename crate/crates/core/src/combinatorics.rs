//! Small enumeration helpers: multisets, permutations, combinations.
//!
//! All indices are zero-based. Enumerations are lexicographic so that case
//! numbering is reproducible.

/// All size-`k` multisets of `{0, .., n-1}`, each sorted, in lexicographic order.
///
/// There are `C(n + k - 1, k)` of them.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    loop {
        out.push(cur.clone());
        // rightmost position that can still grow
        let Some(pos) = (0..k).rev().find(|&i| cur[i] + 1 < n) else {
            return out;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|x| *x = v);
    }
}

/// All size-`k` subsets of `{0, .., n-1}`, sorted, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// Rearranges `v` into the next lexicographic permutation; returns false
/// (leaving `v` sorted ascending) after the last one. Repeated values yield
/// each distinct arrangement exactly once.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[i] < v[j]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Distinct arrangements of a multiset, starting from its sorted order.
pub fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// All permutations of `{0, .., n-1}` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    multiset_permutations(&(0..n).collect::<Vec<_>>())
}

/// Parity of a permutation given as a sequence of distinct comparable keys:
/// `1` for even, `-1` for odd.
pub fn permutation_sign<T: Ord>(seq: &[T]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

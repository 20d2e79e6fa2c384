use itertools::Itertools;

/// All permutations of `0..n` in lexicographic order, each with its sign.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

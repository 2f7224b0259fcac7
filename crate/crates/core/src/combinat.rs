//! Index bookkeeping for exterior powers: increasing tuples, their
//! lexicographic ranks, permutation signs and unshuffles.

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples drawn from `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of an increasing tuple in `combinations(n, tuple.len())`.
pub fn comb_rank(tuple: &[usize], n: usize) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &t) in tuple.iter().enumerate() {
        // tuples that agree so far but carry a smaller entry here
        for smaller in prev..t {
            rank += binomial(n - smaller - 1, k - pos - 1);
        }
        prev = t + 1;
    }
    rank
}

/// Sorts `idx` and returns the sign of the sorting permutation, or `None`
/// when an index repeats (the alternating value is then zero).
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

/// Sign of a permutation given as a sequence of distinct values.
pub fn perm_sign(seq: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Unshuffles of `0..sum(sizes)` with the given block sizes: sequences that
/// increase inside each block, paired with their sign. Any negative block
/// size yields no permutations at all.
pub fn unshuffles(sizes: &[isize]) -> Vec<(Vec<usize>, i32)> {
    if sizes.iter().any(|&s| s < 0) {
        return Vec::new();
    }
    let sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(total);
    fill_blocks(&(0..total).collect::<Vec<_>>(), &sizes, &mut seq, &mut out);
    out
}

fn fill_blocks(pool: &[usize], sizes: &[usize], seq: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
    let Some((&first, rest)) = sizes.split_first() else {
        out.push((seq.clone(), perm_sign(seq)));
        return;
    };
    for pick in combinations(pool.len(), first) {
        let chosen: Vec<usize> = pick.iter().map(|&i| pool[i]).collect();
        let remaining: Vec<usize> = pool.iter().copied().filter(|x| !chosen.contains(x)).collect();
        let len = seq.len();
        seq.extend_from_slice(&chosen);
        fill_blocks(&remaining, rest, seq, out);
        seq.truncate(len);
    }
}

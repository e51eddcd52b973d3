/// A permutation of `0..m` in one-line notation.
pub type Permutation = Vec<usize>;

pub fn identity(m: usize) -> Permutation {
    (0..m).collect()
}

pub fn inverse(p: &[usize]) -> Permutation {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// All permutations of `0..m` in lexicographic order.
pub fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial(m) as usize);
    let mut p = identity(m);
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// One permutation per conjugacy class of the symmetric group: for each
/// cycle type `(c_1 ≥ c_2 ≥ …)` the product of cycles on consecutive
/// points. Ordered by cycle type, finest (the identity) first.
pub fn conjugacy_representatives(m: usize) -> Vec<Permutation> {
    let mut parts = Vec::new();
    partitions(m, m, &mut Vec::new(), &mut parts);
    parts.sort_by(|a, b| a.len().cmp(&b.len()).reverse().then(a.cmp(b)));
    parts
        .into_iter()
        .map(|cycle_type| {
            let mut p = identity(m);
            let mut start = 0;
            for len in cycle_type {
                for k in 0..len {
                    p[start + k] = start + (k + 1) % len;
                }
                start += len;
            }
            p
        })
        .collect()
}

fn partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        cur.push(part);
        partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(4)[1], vec![0, 1, 3, 2]);
        assert!(all_permutations(4).iter().all(|p| is_permutation(p)));
    }

    #[test]
    fn class_representatives() {
        // partitions of 4: 4, 3+1, 2+2, 2+1+1, 1+1+1+1
        let reps = conjugacy_representatives(4);
        assert_eq!(reps.len(), 5);
        assert_eq!(reps[0], identity(4));
        assert_eq!(conjugacy_representatives(3).len(), 3);
        assert_eq!(inverse(&[1, 2, 0]), vec![2, 0, 1]);
    }
}

//! Permutations, Koszul signs, unshuffles, and the sign ς(k).
//!
//! Permutations are 1-indexed throughout: `images[i-1]` is σ(i).

use crate::rational::{neg_one_pow, Rat};
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds σ from its one-line notation (σ(1), ..., σ(n)); values 1..=n.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(format!("not a permutation of 1..={n}: {images:?}"));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// σ(i), 1-indexed.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// (σ∘τ)(i) = σ(τ(i)).
    pub fn compose(&self, tau: &Perm) -> Perm {
        assert_eq!(self.len(), tau.len());
        Perm {
            images: (1..=self.len()).map(|i| self.apply(tau.apply(i))).collect(),
        }
    }

    /// The ordinary sign (−1)^σ.
    pub fn sign(&self) -> Rat {
        let mut inv = 0i64;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        neg_one_pow(inv)
    }

    /// All permutations of S_n, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm {
                    images: cur.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v - 1] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

/// The Koszul sign ε(σ; x_1..x_n) determined by the degrees of the x_i in a
/// free graded-commutative algebra: x_1 ⋯ x_n = ε · x_{σ(1)} ⋯ x_{σ(n)}.
/// Does not include (−1)^σ.
pub fn koszul_sign(sigma: &Perm, degrees: &[i64]) -> Result<Rat, String> {
    if sigma.len() != degrees.len() {
        return Err(format!(
            "permutation size {} does not match degree count {}",
            sigma.len(),
            degrees.len()
        ));
    }
    let mut exp = 0i64;
    for i in 1..=sigma.len() {
        for j in i + 1..=sigma.len() {
            if sigma.apply(i) > sigma.apply(j) {
                exp += degrees[sigma.apply(i) - 1] * degrees[sigma.apply(j) - 1];
            }
        }
    }
    Ok(neg_one_pow(exp))
}

/// (−1)^σ ε(σ; degrees): the sign of σ acting on graded skew-symmetric slots.
pub fn graded_skew_sign(sigma: &Perm, degrees: &[i64]) -> Result<Rat, String> {
    Ok(sigma.sign() * koszul_sign(sigma, degrees)?)
}

/// All (i_1,...,i_k)-unshuffles: permutations ascending within each block.
/// The count is the multinomial coefficient n! / (i_1! ⋯ i_k!).
pub fn unshuffles(block_sizes: &[usize]) -> Vec<Perm> {
    assert!(
        block_sizes.iter().all(|&b| b >= 1),
        "block sizes must be positive"
    );
    let n: usize = block_sizes.iter().sum();
    let mut out = Vec::new();
    // Choose, block by block, which values each block takes; listing each
    // chosen set in ascending order yields exactly the unshuffles.
    fn rec(
        blocks: &[usize],
        remaining: &mut Vec<usize>,
        word: &mut Vec<usize>,
        out: &mut Vec<Perm>,
    ) {
        match blocks.split_first() {
            None => out.push(Perm {
                images: word.clone(),
            }),
            Some((&b, rest)) => {
                let idxs: Vec<usize> = (0..remaining.len()).collect();
                for combo in combinations(&idxs, b) {
                    let chosen: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
                    let kept: Vec<usize> = idxs
                        .iter()
                        .filter(|i| !combo.contains(i))
                        .map(|&i| remaining[i])
                        .collect();
                    word.extend_from_slice(&chosen);
                    let mut kept = kept;
                    std::mem::swap(remaining, &mut kept);
                    rec(rest, remaining, word, out);
                    std::mem::swap(remaining, &mut kept);
                    word.truncate(word.len() - b);
                }
            }
        }
    }
    let mut remaining: Vec<usize> = (1..=n).collect();
    rec(block_sizes, &mut remaining, &mut Vec::new(), &mut out);
    out
}

/// ς(k) = −(−1)^{k(k+1)/2}; satisfies ς(k−1)ς(k) = (−1)^k.
pub fn varsigma(k: usize) -> Rat {
    let k = k as i64;
    -neg_one_pow(k * (k + 1) / 2)
}

/// All strictly increasing k-element index tuples drawn from 0..n.
pub fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(&(0..n).collect::<Vec<_>>(), k)
}

/// All weakly increasing k-element index tuples drawn from 0..n.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// All ordered compositions of n into p parts, each ≥ 1.
pub fn compositions(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if left >= 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for first in 1..=left.saturating_sub(parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    if p >= 1 {
        rec(n, p, &mut cur, &mut out);
    }
    out
}

fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sorts `labels` returning (sorted, sign of the sorting permutation),
/// or None when two labels coincide. Ungraded skew slots.
pub fn sort_skew(labels: &[usize]) -> Option<(Vec<usize>, Rat)> {
    let mut v = labels.to_vec();
    let mut sign = Rat::one();
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn koszul_sign_basics() {
        let swap = Perm::from_images(vec![2, 1]).unwrap();
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), int(-1));
        assert_eq!(koszul_sign(&swap, &[0, 5]).unwrap(), int(1));
        let id = Perm::identity(3);
        assert_eq!(koszul_sign(&id, &[3, 2, 7]).unwrap(), int(1));
        assert!(koszul_sign(&swap, &[1]).is_err());
    }

    #[test]
    fn koszul_sign_is_a_cocycle() {
        // With y_i = x_{τ(i)}: ε(τ∘σ; x) = ε(σ; y) · ε(τ; x), where
        // (τ∘σ)(i) = τ(σ(i)). Signs of composite reorderings factor.
        let degs_pool = [[0i64, 1, 2, 1], [1, 1, 1, 1], [2, 3, 1, 0]];
        for sigma in Perm::all(4) {
            for tau in Perm::all(4) {
                for degs in &degs_pool {
                    let lhs = koszul_sign(&tau.compose(&sigma), degs).unwrap();
                    let tau_degs: Vec<i64> = (1..=4).map(|i| degs[tau.apply(i) - 1]).collect();
                    let rhs =
                        koszul_sign(&sigma, &tau_degs).unwrap() * koszul_sign(&tau, degs).unwrap();
                    assert_eq!(lhs, rhs, "sigma={sigma:?} tau={tau:?} degs={degs:?}");
                }
            }
        }
    }

    #[test]
    fn unshuffles_two_one() {
        // Sh(2,1) = {(1), (23), (123)} in cycle notation, i.e. one-line words
        // 123, 132, 231.
        let sh = unshuffles(&[2, 1]);
        let words: Vec<Vec<usize>> = sh.iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(words.len(), 3);
        assert!(words.contains(&vec![1, 2, 3]));
        assert!(words.contains(&vec![1, 3, 2]));
        assert!(words.contains(&vec![2, 3, 1]));
    }

    #[test]
    fn unshuffles_counts() {
        assert_eq!(unshuffles(&[1, 1]).len(), 2);
        assert_eq!(unshuffles(&[2, 2]).len(), 6);
        // |Sh(p,q)| = C(p+q, p) for p+q ≤ 8
        for p in 1..=7usize {
            for q in 1..=(8 - p) {
                let n = p + q;
                let binom = (1..=n).product::<usize>()
                    / ((1..=p).product::<usize>() * (1..=q).product::<usize>());
                assert_eq!(unshuffles(&[p, q]).len(), binom);
            }
        }
    }

    #[test]
    fn unshuffles_ascend_within_blocks() {
        for p in unshuffles(&[3, 2, 1]) {
            let w = p.images();
            assert!(w[0] < w[1] && w[1] < w[2]);
            assert!(w[3] < w[4]);
        }
    }

    #[test]
    fn varsigma_values() {
        let expect = [1, 1, -1, -1, 1, 1];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(varsigma(k + 1), int(*e), "k={}", k + 1);
        }
        // ς(k−1)ς(k) = (−1)^k
        for k in 2..=12 {
            assert_eq!(varsigma(k - 1) * varsigma(k), neg_one_pow(k as i64));
        }
        assert_eq!(varsigma(2) * varsigma(3), int(-1));
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(4, 2).len(), 3); // 1+3, 2+2, 3+1
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn sort_skew_signs() {
        assert_eq!(sort_skew(&[2, 1]).unwrap(), (vec![1, 2], int(-1)));
        assert_eq!(sort_skew(&[0, 1, 2]).unwrap().1, int(1));
        assert!(sort_skew(&[1, 1]).is_none());
    }
}

/// Ungraded skew-symmetrization of a multilinear table on k-tuples over a
/// dim-sized index set: (1/k!) Σ_σ (−1)^σ T(σ·args). Idempotent, and the
/// identity on already-skew tables.
pub fn alt_table(
    k: usize,
    dim: usize,
    table: &dyn Fn(&[usize]) -> Rat,
) -> std::collections::BTreeMap<Vec<usize>, Rat> {
    let mut out = std::collections::BTreeMap::new();
    let norm = crate::rational::factorial(k).recip();
    let mut args = vec![0usize; k];
    loop {
        let mut acc = crate::rational::int(0);
        for sigma in Perm::all(k) {
            let permuted: Vec<usize> = (1..=k).map(|i| args[sigma.apply(i) - 1]).collect();
            acc += sigma.sign() * table(&permuted);
        }
        acc *= &norm;
        if !crate::rational::is_zero(&acc) {
            out.insert(args.clone(), acc);
        }
        // advance odometer
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            args[i] += 1;
            if args[i] < dim {
                break;
            }
            args[i] = 0;
            if i == 0 {
                return out;
            }
        }
    }
}

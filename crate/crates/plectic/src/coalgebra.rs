//! The reduced symmetric coalgebra on a desuspended graded space, with
//! codifferentials built from multibrackets and coalgebra morphisms lifted
//! from their corank-one projections. Computations are bounded by word
//! length; the full coalgebra is never materialized.

use crate::linfty::{BracketTable, GradedSpace};
use crate::perm::{compositions, koszul_sign, unshuffles};
use crate::rational::{int, neg_one_pow, Rat};
use crate::value::LinearValue;
use std::collections::BTreeMap;

/// A word in the reduced symmetric algebra: a sorted multiset of shifted
/// generator indices. Repeats are only allowed on generators whose shifted
/// degree is even.
pub type Word = Vec<usize>;

/// A finite linear combination of words.
pub type WordSum = BTreeMap<Word, Rat>;

/// The shifted (desuspended) copy of a graded space: generator i has degree
/// degree(i) − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSpace {
    space: GradedSpace,
}

impl ShiftedSpace {
    pub fn new(space: &GradedSpace) -> ShiftedSpace {
        ShiftedSpace {
            space: space.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unshifted(&self) -> &GradedSpace {
        &self.space
    }

    pub fn shifted_degree(&self, i: usize) -> i64 {
        self.space.degree(i) - 1
    }

    /// Sorts the generators of a word, returning the Koszul sign in shifted
    /// degrees; None when an odd generator repeats (the word vanishes).
    pub fn normalize(&self, word: &[usize]) -> Option<(Word, Rat)> {
        let mut w = word.to_vec();
        let mut sign = int(1);
        for i in 0..w.len() {
            for j in (i + 1..w.len()).rev() {
                if w[j - 1] > w[j] {
                    let s = neg_one_pow(self.shifted_degree(w[j - 1]) * self.shifted_degree(w[j]));
                    sign *= s;
                    w.swap(j - 1, j);
                }
            }
        }
        for pair in w.windows(2) {
            if pair[0] == pair[1] && self.shifted_degree(pair[0]) % 2 != 0 {
                return None;
            }
        }
        Some((w, sign))
    }

    /// All canonical words of the given length.
    pub fn words(&self, len: usize) -> Vec<Word> {
        crate::perm::multisets(self.dim(), len)
            .into_iter()
            .filter(|w| {
                w.windows(2)
                    .all(|p| p[0] != p[1] || self.shifted_degree(p[0]) % 2 == 0)
            })
            .collect()
    }

    fn degrees_of(&self, word: &[usize]) -> Vec<i64> {
        word.iter().map(|&i| self.shifted_degree(i)).collect()
    }
}

pub fn word_sum_add(acc: &mut WordSum, word: Word, c: Rat) {
    if LinearValue::is_zero(&c) {
        return;
    }
    match acc.get_mut(&word) {
        Some(v) => {
            *v += c;
            if LinearValue::is_zero(v) {
                acc.remove(&word);
            }
        }
        None => {
            acc.insert(word, c);
        }
    }
}

/// The reduced comultiplication
/// Δ̄(v_1⊙⋯⊙v_n) = Σ_{p=1}^{n−1} Σ_{σ∈Sh(p,n−p)} ε(σ) (first p) ⊗ (rest).
pub fn reduced_coproduct(s: &ShiftedSpace, word: &[usize]) -> Vec<(Rat, Word, Word)> {
    let n = word.len();
    let degs = s.degrees_of(word);
    let mut out = Vec::new();
    for p in 1..n {
        for sigma in unshuffles(&[p, n - p]) {
            let eps = koszul_sign(&sigma, &degs).expect("length checked");
            let left: Word = (1..=p).map(|i| word[sigma.apply(i) - 1]).collect();
            let right: Word = (p + 1..=n).map(|i| word[sigma.apply(i) - 1]).collect();
            out.push((eps, left, right));
        }
    }
    out
}

/// The iterated reduced diagonal Δ̄^{(p)}: a sum of (p+1)-fold tensors
/// indexed by compositions of n into p+1 parts and their unshuffles.
pub fn reduced_diagonal(s: &ShiftedSpace, word: &[usize], p: usize) -> Vec<(Rat, Vec<Word>)> {
    let n = word.len();
    if p == 0 {
        return vec![(int(1), vec![word.to_vec()])];
    }
    let degs = s.degrees_of(word);
    let mut out = Vec::new();
    for comp in compositions(n, p + 1) {
        for sigma in unshuffles(&comp) {
            let eps = koszul_sign(&sigma, &degs).expect("length checked");
            let mut blocks = Vec::with_capacity(p + 1);
            let mut pos = 1;
            for &len in &comp {
                blocks.push((pos..pos + len).map(|i| word[sigma.apply(i) - 1]).collect());
                pos += len;
            }
            out.push((eps, blocks));
        }
    }
    out
}

/// The corank-one projections Q¹_m of the codifferential encoding a bracket
/// table: Q¹_m(↓x_1⊙⋯⊙↓x_m) = χ · ↓ l_m(x_1..x_m), where χ carries the
/// (−1)^{m(m−1)/2} normalization and the suspension Koszul signs.
#[derive(Clone)]
pub struct Codifferential {
    shifted: ShiftedSpace,
    table: BracketTable,
}

/// χ(m; x_1..x_m) = (−1)^{m(m−1)/2 + Σ_i (m−i)(deg x_i − 1)}.
fn decalage_sign(shifted_degrees: &[i64]) -> Rat {
    let m = shifted_degrees.len() as i64;
    let mut exp = m * (m - 1) / 2;
    for (i, d) in shifted_degrees.iter().enumerate() {
        exp += (m - 1 - i as i64) * d;
    }
    neg_one_pow(exp)
}

impl Codifferential {
    pub fn from_brackets(table: &BracketTable) -> Codifferential {
        Codifferential {
            shifted: ShiftedSpace::new(table.space()),
            table: table.clone(),
        }
    }

    pub fn shifted(&self) -> &ShiftedSpace {
        &self.shifted
    }

    /// Q¹_m on a word, as a vector over shifted target generators.
    pub fn q1(&self, word: &[usize]) -> Vec<Rat> {
        let m = word.len();
        let chi = decalage_sign(&self.shifted.degrees_of(word));
        self.table.eval_basis(m, word).scale(&chi)
    }

    /// The full coderivation on a word:
    /// Q_m(w) = Q¹_m(w) + Σ_{i<m} Σ_{σ∈Sh(i,m−i)} ε(σ) Q¹_i(σ-block)⊙(rest).
    pub fn apply(&self, word: &[usize]) -> WordSum {
        let m = word.len();
        let degs = self.shifted.degrees_of(word);
        let mut out = WordSum::new();
        for (t, c) in self.q1(word).iter().enumerate() {
            if !LinearValue::is_zero(c) {
                word_sum_add(&mut out, vec![t], c.clone());
            }
        }
        for i in 1..m {
            for sigma in unshuffles(&[i, m - i]) {
                let eps = koszul_sign(&sigma, &degs).expect("length checked");
                let block: Word = (1..=i).map(|p| word[sigma.apply(p) - 1]).collect();
                let rest: Word = (i + 1..=m).map(|p| word[sigma.apply(p) - 1]).collect();
                for (t, c) in self.q1(&block).iter().enumerate() {
                    if LinearValue::is_zero(c) {
                        continue;
                    }
                    let mut w = vec![t];
                    w.extend_from_slice(&rest);
                    if let Some((sorted, sgn)) = self.shifted.normalize(&w) {
                        word_sum_add(&mut out, sorted, c * &eps * sgn);
                    }
                }
            }
        }
        out
    }

    pub fn apply_sum(&self, ws: &WordSum) -> WordSum {
        let mut out = WordSum::new();
        for (w, c) in ws {
            for (w2, c2) in self.apply(w) {
                word_sum_add(&mut out, w2, c2 * c);
            }
        }
        out
    }

    /// Q∘Q on all words up to the length bound; Err carries the first
    /// nonvanishing image.
    pub fn check_squares_to_zero(&self, max_len: usize) -> Result<(), (Word, WordSum)> {
        for len in 1..=max_len {
            for w in self.shifted.words(len) {
                let qq = self.apply_sum(&self.apply(&w));
                if !qq.is_empty() {
                    return Err((w, qq));
                }
            }
        }
        Ok(())
    }
}

/// A coalgebra morphism determined by its corank-one projections
/// F¹_k: S^k(↓L) → ↓L', stored as evaluations on canonical words.
#[derive(Clone)]
pub struct CoalgebraMap {
    source: ShiftedSpace,
    target: ShiftedSpace,
    // k -> (canonical word -> vector over shifted target generators)
    f1: BTreeMap<usize, BTreeMap<Word, Vec<Rat>>>,
}

impl CoalgebraMap {
    pub fn new(source: &ShiftedSpace, target: &ShiftedSpace) -> CoalgebraMap {
        CoalgebraMap {
            source: source.clone(),
            target: target.clone(),
            f1: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ShiftedSpace {
        &self.source
    }

    pub fn target(&self) -> &ShiftedSpace {
        &self.target
    }

    pub fn set_f1(&mut self, word: Word, value: Vec<Rat>) {
        assert!(
            self.source.normalize(&word).map(|(w, _)| w) == Some(word.clone()),
            "word must be canonical"
        );
        assert_eq!(value.len(), self.target.dim());
        if !LinearValue::is_zero(&value) {
            self.f1.entry(word.len()).or_default().insert(word, value);
        }
    }

    /// Builds the projections from skew structure maps f_k on an ungraded
    /// source: F¹_k(↓x_1⊙⋯⊙↓x_k) = ↓f_k(x_1..x_k) (the decalage signs
    /// cancel in degree zero).
    pub fn from_structure_maps(
        source: &ShiftedSpace,
        target: &ShiftedSpace,
        maps: &BTreeMap<usize, crate::cochain::CECochain<Vec<Rat>>>,
    ) -> CoalgebraMap {
        let mut f = CoalgebraMap::new(source, target);
        for (&k, table) in maps {
            for word in source.words(k) {
                // ungraded source: canonical words are strictly increasing
                if let Some(v) = table.eval_basis(&word) {
                    let chi = decalage_sign(&source.degrees_of(&word));
                    f.set_f1(word, v.scale(&chi));
                }
            }
        }
        f
    }

    /// F¹ applied to a word (zero when no projection is registered).
    pub fn f1_apply(&self, word: &[usize]) -> Vec<Rat> {
        let Some((sorted, sign)) = self.source.normalize(word) else {
            return vec![int(0); self.target.dim()];
        };
        match self.f1.get(&sorted.len()).and_then(|t| t.get(&sorted)) {
            Some(v) => v.scale(&sign),
            None => vec![int(0); self.target.dim()],
        }
    }

    /// F^p_n(v_1⊙⋯⊙v_n) = Σ_{k_1+…+k_p=n} Σ_{σ∈Sh(k_1..k_p)} ε(σ)/p! ·
    /// F¹_{k_1}(block_1) ⊙ ⋯ ⊙ F¹_{k_p}(block_p).
    pub fn projection(&self, word: &[usize], p: usize) -> WordSum {
        let n = word.len();
        let mut out = WordSum::new();
        if p == 0 || p > n {
            return out;
        }
        let degs = self.source.degrees_of(word);
        let inv_pfact = crate::rational::factorial(p).recip();
        for comp in compositions(n, p) {
            for sigma in unshuffles(&comp) {
                let eps = koszul_sign(&sigma, &degs).expect("length checked");
                // expand the ⊙-product of the p images
                let mut partial: Vec<(Word, Rat)> = vec![(Vec::new(), &eps * &inv_pfact)];
                let mut pos = 1;
                for &len in &comp {
                    let block: Word = (pos..pos + len).map(|i| word[sigma.apply(i) - 1]).collect();
                    pos += len;
                    let image = self.f1_apply(&block);
                    let mut next = Vec::new();
                    for (w, c) in &partial {
                        for (t, ct) in image.iter().enumerate() {
                            if LinearValue::is_zero(ct) {
                                continue;
                            }
                            let mut w2 = w.clone();
                            w2.push(t);
                            next.push((w2, c * ct));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (w, c) in partial {
                    if let Some((sorted, sgn)) = self.target.normalize(&w) {
                        word_sum_add(&mut out, sorted, c * sgn);
                    }
                }
            }
        }
        out
    }

    /// The full morphism F = Σ_p F^p_n on a word.
    pub fn apply(&self, word: &[usize]) -> WordSum {
        let mut out = WordSum::new();
        for p in 1..=word.len() {
            for (w, c) in self.projection(word, p) {
                word_sum_add(&mut out, w, c);
            }
        }
        out
    }

    /// Checks the comorphism law Δ̄′ F = (F ⊗ F) Δ̄ on all source words up to
    /// the length bound.
    pub fn check_comorphism(&self, max_len: usize) -> Result<(), Word> {
        for len in 2..=max_len {
            for w in self.source.words(len) {
                let mut lhs: BTreeMap<(Word, Word), Rat> = BTreeMap::new();
                for (fw, fc) in self.apply(&w) {
                    for (c, l, r) in reduced_coproduct(&self.target, &fw) {
                        let key_c = &c * &fc;
                        pair_sum_add(&mut lhs, (l, r), key_c);
                    }
                }
                let mut rhs: BTreeMap<(Word, Word), Rat> = BTreeMap::new();
                for (c, l, r) in reduced_coproduct(&self.source, &w) {
                    for (fl, cl) in self.apply(&l) {
                        for (fr, cr) in self.apply(&r) {
                            pair_sum_add(&mut rhs, (fl.clone(), fr), &c * &cl * cr);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(w);
                }
            }
        }
        Ok(())
    }
}

fn pair_sum_add(acc: &mut BTreeMap<(Word, Word), Rat>, key: (Word, Word), c: Rat) {
    if LinearValue::is_zero(&c) {
        return;
    }
    match acc.get_mut(&key) {
        Some(v) => {
            *v += c;
            if LinearValue::is_zero(v) {
                acc.remove(&key);
            }
        }
        None => {
            acc.insert(key, c);
        }
    }
}

/// Verifies the chain-map condition Σ_k F¹_k Q^k_m = Σ_k Q′¹_k F^k_m for all
/// source words up to the length bound; Err carries the first failing word
/// with the two sides.
pub fn check_chain_map(
    f: &CoalgebraMap,
    q: &Codifferential,
    q_target: &Codifferential,
    max_m: usize,
) -> Result<(), (Word, Vec<Rat>, Vec<Rat>)> {
    for m in 1..=max_m {
        for w in f.source().words(m) {
            // LHS: F¹ of every word of Q(w)
            let mut lhs = vec![int(0); f.target().dim()];
            for (qw, qc) in q.apply(&w) {
                let img = f.f1_apply(&qw);
                for (a, x) in lhs.iter_mut().zip(img.iter()) {
                    *a += &qc * x;
                }
            }
            // RHS: Q′¹ of every word of every projection F^k_m(w)
            let mut rhs = vec![int(0); f.target().dim()];
            for k in 1..=m {
                for (fw, fc) in f.projection(&w, k) {
                    let img = q_target.q1(&fw);
                    for (a, x) in rhs.iter_mut().zip(img.iter()) {
                        *a += &fc * x;
                    }
                }
            }
            if lhs != rhs {
                return Err((w, lhs, rhs));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::CECochain;
    use crate::lie::StructLieAlgebra;
    use crate::linfty::{central_extension, lie_algebra_table};
    use crate::perm::Perm;

    fn su2_shifted() -> (BracketTable, ShiftedSpace) {
        let t = lie_algebra_table(&StructLieAlgebra::su2());
        let s = ShiftedSpace::new(t.space());
        (t, s)
    }

    #[test]
    fn primitives_have_zero_reduced_coproduct() {
        let (_, s) = su2_shifted();
        assert!(reduced_coproduct(&s, &[1]).is_empty());
    }

    #[test]
    fn two_letter_coproduct_has_swap_sign() {
        let (_, s) = su2_shifted();
        // shifted degrees are −1 (odd): ε of the swap is −1
        let terms = reduced_coproduct(&s, &[0, 1]);
        assert_eq!(terms.len(), 2);
        assert!(terms.contains(&(int(1), vec![0], vec![1])));
        assert!(terms.contains(&(int(-1), vec![1], vec![0])));
    }

    #[test]
    fn coproduct_is_coassociative() {
        let (_, s) = su2_shifted();
        for w in [vec![0, 1], vec![0, 1, 2]] {
            // (Δ̄⊗id)Δ̄ = (id⊗Δ̄)Δ̄, compared as triples
            let mut lhs: BTreeMap<(Word, Word, Word), Rat> = BTreeMap::new();
            for (c, l, r) in reduced_coproduct(&s, &w) {
                for (c2, l2, r2) in reduced_coproduct(&s, &l) {
                    let key = (l2, r2, r.clone());
                    let v = &c * &c2;
                    *lhs.entry(key).or_insert_with(|| int(0)) += v;
                }
            }
            lhs.retain(|_, v| !LinearValue::is_zero(v));
            let mut rhs: BTreeMap<(Word, Word, Word), Rat> = BTreeMap::new();
            for (c, l, r) in reduced_coproduct(&s, &w) {
                for (c2, l2, r2) in reduced_coproduct(&s, &r) {
                    // moving Δ̄ (degree 0) across l costs nothing
                    let key = (l.clone(), l2, r2);
                    let v = &c * &c2;
                    *rhs.entry(key).or_insert_with(|| int(0)) += v;
                }
            }
            rhs.retain(|_, v| !LinearValue::is_zero(v));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn diagonal_closed_form_matches_recursion() {
        let su2 = StructLieAlgebra::su2();
        let c: CECochain<Rat> =
            CECochain::from_components(&su2, 3, vec![(vec![0, 1, 2], int(1))]).unwrap();
        let ext = central_extension(&su2, &c, 2).unwrap();
        let s = ShiftedSpace::new(ext.space());
        for w in [vec![0usize, 1, 2], vec![0, 1, 3, 3], vec![0, 1, 2, 3]] {
            for p in 1..w.len() {
                // recursion: Δ̄^{(p)} = (Δ̄ ⊗ id^{p−1}) ∘ Δ̄^{(p−1)}
                let mut rec: BTreeMap<Vec<Word>, Rat> = BTreeMap::new();
                for (c0, blocks) in reduced_diagonal(&s, &w, p - 1) {
                    for (c1, l, r) in reduced_coproduct(&s, &blocks[0]) {
                        let mut key = vec![l, r];
                        key.extend(blocks[1..].iter().cloned());
                        *rec.entry(key).or_insert_with(|| int(0)) += &c0 * &c1;
                    }
                }
                rec.retain(|_, v| !LinearValue::is_zero(v));
                let mut closed: BTreeMap<Vec<Word>, Rat> = BTreeMap::new();
                for (c0, blocks) in reduced_diagonal(&s, &w, p) {
                    *closed.entry(blocks).or_insert_with(|| int(0)) += c0;
                }
                closed.retain(|_, v| !LinearValue::is_zero(v));
                assert_eq!(rec, closed, "word {w:?}, p={p}");
            }
        }
    }

    #[test]
    fn kernel_of_iterated_diagonal_is_short_words() {
        let (_, s) = su2_shifted();
        for k in 1..=4usize {
            for len in 1..=4usize {
                for w in s.words(len) {
                    let vanishes = reduced_diagonal(&s, &w, k)
                        .into_iter()
                        .fold(BTreeMap::<Vec<Word>, Rat>::new(), |mut acc, (c, b)| {
                            *acc.entry(b).or_insert_with(|| int(0)) += c;
                            acc
                        })
                        .values()
                        .all(LinearValue::is_zero);
                    assert_eq!(vanishes, len <= k, "len={len}, k={k}");
                }
            }
        }
    }

    #[test]
    fn full_diagonal_is_the_permutation_expansion() {
        let (_, s) = su2_shifted();
        let w = vec![0usize, 1, 2];
        let full = reduced_diagonal(&s, &w, 2);
        // Σ_{σ∈S_3} ε(σ) single-letter blocks
        assert_eq!(full.len(), 6);
        for (c, blocks) in full {
            assert!(blocks.iter().all(|b| b.len() == 1));
            let perm: Vec<usize> = blocks.iter().map(|b| b[0] + 1).collect();
            let sigma = Perm::from_images(perm).unwrap();
            // all letters have odd shifted degree: ε(σ) = (−1)^σ here
            assert_eq!(c, sigma.sign());
        }
    }

    #[test]
    fn lie_codifferential_squares_to_zero() {
        let (t, _) = su2_shifted();
        let q = Codifferential::from_brackets(&t);
        q.check_squares_to_zero(4).unwrap();
    }

    #[test]
    fn string_codifferential_squares_to_zero_on_words_up_to_five() {
        let su2 = StructLieAlgebra::su2();
        let c: CECochain<Rat> =
            CECochain::from_components(&su2, 3, vec![(vec![0, 1, 2], int(1))]).unwrap();
        let ext = central_extension(&su2, &c, 2).unwrap();
        let q = Codifferential::from_brackets(&ext);
        q.check_squares_to_zero(5).unwrap();
    }

    #[test]
    fn abelian_codifferential_vanishes() {
        let t = lie_algebra_table(&StructLieAlgebra::abelian(3));
        let q = Codifferential::from_brackets(&t);
        for len in 1..=4 {
            for w in q.shifted().words(len) {
                assert!(q.apply(&w).is_empty());
            }
        }
    }

    #[test]
    fn strict_morphism_is_a_chain_map() {
        // identity su(2) → su(2)
        let g = StructLieAlgebra::su2();
        let t = lie_algebra_table(&g);
        let s = ShiftedSpace::new(t.space());
        let mut maps = BTreeMap::new();
        let mut f1: CECochain<Vec<Rat>> = CECochain::zero(&g, 1);
        for i in 0..3 {
            f1.add_component(vec![i], t.space().basis_vector(i));
        }
        maps.insert(1, f1);
        let f = CoalgebraMap::from_structure_maps(&s, &s, &maps);
        let q = Codifferential::from_brackets(&t);
        check_chain_map(&f, &q, &q, 4).unwrap();
        f.check_comorphism(4).unwrap();
        // strict case: F^n_n is the only nonzero projection
        let w = vec![0usize, 1];
        assert!(f.projection(&w, 1).is_empty());
        assert_eq!(f.projection(&w, 2).len(), 1);
    }
}

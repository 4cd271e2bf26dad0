//! Chevalley-Eilenberg cochains on a finite-dimensional Lie algebra, with
//! values in any linear coefficient space (rationals, functions, forms).
//!
//! A degree-k cochain is stored on strictly increasing k-subsets of basis
//! indices; evaluation on arbitrary tuples applies the ungraded skew sign.

use crate::lie::StructLieAlgebra;
use crate::linalg::{solve_linear, LinSolve, LinearSystem};
use crate::perm::{increasing_subsets, sort_skew};
use crate::rational::{int, Rat};
use crate::value::LinearValue;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq)]
pub struct CECochain<V: LinearValue> {
    algebra: StructLieAlgebra,
    degree: usize,
    comps: BTreeMap<Vec<usize>, V>,
}

impl<V: LinearValue> CECochain<V> {
    pub fn zero(algebra: &StructLieAlgebra, degree: usize) -> CECochain<V> {
        CECochain {
            algebra: algebra.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_components(
        algebra: &StructLieAlgebra,
        degree: usize,
        comps: Vec<(Vec<usize>, V)>,
    ) -> Result<CECochain<V>, String> {
        let mut c = CECochain::zero(algebra, degree);
        for (idx, v) in comps {
            if idx.len() != degree {
                return Err("component arity mismatch".into());
            }
            if !idx.windows(2).all(|w| w[0] < w[1]) || idx.iter().any(|&i| i >= algebra.dim()) {
                return Err(format!("bad index set {idx:?}"));
            }
            c.add_component(idx, v);
        }
        Ok(c)
    }

    pub fn algebra(&self) -> &StructLieAlgebra {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &V)> {
        self.comps.iter()
    }

    pub fn add_component(&mut self, idx: Vec<usize>, v: V) {
        assert_eq!(idx.len(), self.degree);
        if v.is_zero() {
            return;
        }
        match self.comps.get_mut(&idx) {
            Some(existing) => {
                let sum = existing.add(&v);
                if sum.is_zero() {
                    self.comps.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.comps.insert(idx, v);
            }
        }
    }

    /// Evaluation on an arbitrary tuple of basis indices (skew extension);
    /// None encodes the zero value, so callers must handle missing entries.
    pub fn eval_basis(&self, indices: &[usize]) -> Option<V> {
        assert_eq!(indices.len(), self.degree);
        let (sorted, sign) = sort_skew(indices)?;
        self.comps.get(&sorted).map(|v| v.scale(&sign))
    }

    /// Like `eval_basis` but with one slot holding a coefficient vector.
    pub fn eval_mixed(&self, element: &[Rat], rest: &[usize]) -> Vec<(Rat, V)> {
        let mut out = Vec::new();
        for (i, c) in element.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut idx = Vec::with_capacity(self.degree);
            idx.push(i);
            idx.extend_from_slice(rest);
            if let Some(v) = self.eval_basis(&idx) {
                out.push((c.clone(), v));
            }
        }
        out
    }

    pub fn add(&self, other: &CECochain<V>) -> CECochain<V> {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (idx, v) in &other.comps {
            out.add_component(idx.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &CECochain<V>) -> CECochain<V> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> CECochain<V> {
        let mut out = CECochain::zero(&self.algebra, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in &self.comps {
            out.add_component(idx.clone(), v.scale(c));
        }
        out
    }

    /// Applies a linear map to every component value.
    pub fn map_values<W: LinearValue>(&self, f: impl Fn(&V) -> W) -> CECochain<W> {
        let mut out = CECochain::zero(&self.algebra, self.degree);
        for (idx, v) in &self.comps {
            out.add_component(idx.clone(), f(v));
        }
        out
    }

    /// The Chevalley-Eilenberg differential
    /// δc(x_1..x_{k+1}) = Σ_{i<j} (−1)^{i+j} c(`[x_i,x_j]`, ..no x_i, x_j..),
    /// acting as δ ⊗ id on the value space.
    pub fn ce_differential(&self) -> CECochain<V> {
        let d = self.algebra.dim();
        let k1 = self.degree + 1;
        let mut out = CECochain::zero(&self.algebra, k1);
        for subset in increasing_subsets(d, k1) {
            let mut acc: Option<V> = None;
            for a in 0..k1 {
                for b in a + 1..k1 {
                    let coeffs = self.algebra.bracket_basis(subset[a], subset[b]);
                    let rest: Vec<usize> = subset
                        .iter()
                        .enumerate()
                        .filter(|(p, _)| *p != a && *p != b)
                        .map(|(_, &i)| i)
                        .collect();
                    // positions are 1-based in the sign (−1)^{i+j}
                    let sign = crate::rational::neg_one_pow((a + b) as i64);
                    for (c, v) in self.eval_mixed(&coeffs, &rest) {
                        let term = v.scale(&(&c * &sign));
                        acc = Some(match acc {
                            None => term,
                            Some(s) => s.add(&term),
                        });
                    }
                }
            }
            if let Some(v) = acc {
                out.add_component(subset, v);
            }
        }
        out
    }
}

impl<V: LinearValue + std::fmt::Debug> std::fmt::Debug for CECochain<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CECochain(deg {}, {:?})", self.degree, self.comps)
    }
}

/// Decides whether a scalar cocycle is a coboundary, returning a primitive
/// when one exists. Errors when the input is not closed.
pub fn is_ce_coboundary(c: &CECochain<Rat>) -> Result<Option<CECochain<Rat>>, String> {
    if !c.ce_differential().is_zero() {
        return Err("not a cocycle: δc ≠ 0".into());
    }
    let alg = c.algebra().clone();
    let k = c.degree();
    if k == 0 {
        // δ on (−1)-cochains is zero; a 0-cochain is a coboundary iff zero
        return Ok(if c.is_zero() {
            Some(CECochain::zero(&alg, 0))
        } else {
            None
        });
    }
    let rows_idx = increasing_subsets(alg.dim(), k);
    let cols_idx = increasing_subsets(alg.dim(), k - 1);
    let mut matrix = Vec::with_capacity(rows_idx.len());
    let mut rhs = Vec::with_capacity(rows_idx.len());
    for row in &rows_idx {
        let mut coeffs = vec![int(0); cols_idx.len()];
        for a in 0..k {
            for b in a + 1..k {
                let br = alg.bracket_basis(row[a], row[b]);
                let rest: Vec<usize> = row
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != a && *p != b)
                    .map(|(_, &i)| i)
                    .collect();
                let sign = crate::rational::neg_one_pow((a + b) as i64);
                for (m, cm) in br.iter().enumerate() {
                    if cm.is_zero() {
                        continue;
                    }
                    let mut idx = vec![m];
                    idx.extend_from_slice(&rest);
                    if let Some((sorted, s2)) = sort_skew(&idx) {
                        let col = cols_idx.iter().position(|c| *c == sorted).unwrap();
                        coeffs[col] += cm * &sign * s2;
                    }
                }
            }
        }
        matrix.push(coeffs);
        rhs.push(c.eval_basis(row).unwrap_or_else(|| int(0)));
    }
    let sys = LinearSystem::new(matrix, rhs).unwrap();
    match solve_linear(&sys) {
        LinSolve::Solution { particular, .. } => {
            let comps: Vec<(Vec<usize>, Rat)> = cols_idx
                .into_iter()
                .zip(particular)
                .filter(|(_, v)| !v.is_zero())
                .collect();
            Ok(Some(
                CECochain::from_components(&alg, k - 1, comps).unwrap(),
            ))
        }
        LinSolve::Inconsistent { .. } => Ok(None),
    }
}

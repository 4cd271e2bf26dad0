//! Polynomial multivector fields and the Schouten bracket.

use crate::chart::Chart;
use crate::form::{merge_indices, IndexSet};
use crate::poly::Poly;
use crate::rational::Rat;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// A degree-m multivector field, stored on the basis ∂_I over strictly
/// increasing index m-subsets I, with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMultiVec {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<IndexSet, Poly>,
}

impl PolyMultiVec {
    pub fn zero(chart: &Chart, degree: usize) -> PolyMultiVec {
        assert!(degree >= 1, "multivector fields have degree ≥ 1");
        PolyMultiVec {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// ∂_{i1} ∧ ... ∧ ∂_{im} for strictly increasing indices.
    pub fn basis(chart: &Chart, indices: &[usize]) -> PolyMultiVec {
        assert!(!indices.is_empty());
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        assert!(indices.iter().all(|&i| i < chart.dim()));
        let mut v = PolyMultiVec::zero(chart, indices.len());
        v.comps.insert(indices.to_vec(), Poly::one(chart));
        v
    }

    /// The vector field Σ coeffs`[i]` ∂_i.
    pub fn from_coefficients(chart: &Chart, coeffs: &[Poly]) -> PolyMultiVec {
        assert_eq!(coeffs.len(), chart.dim());
        let mut v = PolyMultiVec::zero(chart, 1);
        for (i, c) in coeffs.iter().enumerate() {
            v.add_component(vec![i], c.clone());
        }
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexSet, &Poly)> {
        self.comps.iter()
    }

    pub fn component(&self, indices: &[usize]) -> Poly {
        self.comps
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.chart))
    }

    /// Coefficient functions of a vector field, indexed by coordinate.
    pub fn coefficients(&self) -> Vec<Poly> {
        assert_eq!(self.degree, 1);
        (0..self.chart.dim())
            .map(|i| self.component(&[i]))
            .collect()
    }

    pub(crate) fn add_component(&mut self, indices: IndexSet, p: Poly) {
        assert_eq!(indices.len(), self.degree);
        if p.is_zero() {
            return;
        }
        match self.comps.get_mut(&indices) {
            Some(existing) => {
                let sum = &*existing + &p;
                if sum.is_zero() {
                    self.comps.remove(&indices);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.comps.insert(indices, p);
            }
        }
    }

    pub fn add(&self, other: &PolyMultiVec) -> PolyMultiVec {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (i, p) in &other.comps {
            out.add_component(i.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyMultiVec) -> PolyMultiVec {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> PolyMultiVec {
        use num_traits::Zero;
        if c.is_zero() {
            return PolyMultiVec::zero(&self.chart, self.degree);
        }
        PolyMultiVec {
            chart: self.chart.clone(),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (i.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, q: &Poly) -> PolyMultiVec {
        let mut out = PolyMultiVec::zero(&self.chart, self.degree);
        for (i, p) in &self.comps {
            out.add_component(i.clone(), p * q);
        }
        out
    }

    pub fn wedge(&self, other: &PolyMultiVec) -> PolyMultiVec {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        let mut out = PolyMultiVec::zero(&self.chart, self.degree + other.degree);
        for (ia, pa) in &self.comps {
            for (ib, pb) in &other.comps {
                if let Some((idx, sign)) = merge_indices(ia, ib) {
                    out.add_component(idx, (pa * pb).scale(&sign));
                }
            }
        }
        out
    }

    /// Exact evaluation of a vector field at a rational point.
    pub fn eval_field(&self, point: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.degree, 1);
        self.coefficients().iter().map(|p| p.eval(point)).collect()
    }

    pub fn embed(&self, chart: &Chart, embed: &[usize]) -> PolyMultiVec {
        let mut out = PolyMultiVec::zero(chart, self.degree);
        for (idx, p) in &self.comps {
            let new_idx: Vec<usize> = idx.iter().map(|&i| embed[i]).collect();
            assert!(new_idx.windows(2).all(|w| w[0] < w[1]));
            out.add_component(new_idx, p.embed(chart, embed));
        }
        out
    }
}

/// The Schouten bracket of multivector fields, expanded bilinearly over the
/// stored components g·∂_I, h·∂_J; each such component is the decomposable
/// (g ∂_{i1}) ∧ ∂_{i2} ∧ ⋯, and
/// `[u_1∧⋯∧u_m, v_1∧⋯∧v_n]`
///   = Σ_{a,b} (−1)^{a+b} `[u_a, v_b]` ∧ u_1∧⋯∧û_a∧⋯ ∧ v_1∧⋯∧v̂_b∧⋯.
pub fn schouten(u: &PolyMultiVec, v: &PolyMultiVec) -> Result<PolyMultiVec, String> {
    if u.chart() != v.chart() {
        return Err("chart mismatch".into());
    }
    let ch = u.chart().clone();
    let (m, n) = (u.degree(), v.degree());
    let out_degree = m + n - 1;
    let mut out = PolyMultiVec::zero(&ch, out_degree);
    let one = Poly::one(&ch);
    for (iu, g) in u.components() {
        for (iv, h) in v.components() {
            for a in 1..=m {
                for b in 1..=n {
                    let pa = iu[a - 1];
                    let qb = iv[b - 1];
                    // coefficient functions carried by the chosen factors
                    let fa = if a == 1 { g } else { &one };
                    let fb = if b == 1 { h } else { &one };
                    // [fa ∂_pa, fb ∂_qb] = fa (∂_pa fb) ∂_qb − fb (∂_qb fa) ∂_pa
                    let c1 = fa * &fb.partial(pa);
                    let c2 = fb * &fa.partial(qb);
                    // residual coefficients stay on the un-chosen first factors
                    let ru = if a == 1 { &one } else { g };
                    let rv = if b == 1 { &one } else { h };
                    let rest_u: IndexSet = iu
                        .iter()
                        .enumerate()
                        .filter(|(c, _)| *c != a - 1)
                        .map(|(_, &i)| i)
                        .collect();
                    let rest_v: IndexSet = iv
                        .iter()
                        .enumerate()
                        .filter(|(c, _)| *c != b - 1)
                        .map(|(_, &i)| i)
                        .collect();
                    let Some((rest, rest_sign)) = merge_indices(&rest_u, &rest_v) else {
                        continue;
                    };
                    let term_sign = crate::rational::neg_one_pow((a + b) as i64) * rest_sign;
                    let coeff_common = (ru * rv).scale(&term_sign);
                    if !c1.is_zero() {
                        if let Some((idx, s2)) = merge_indices(&[qb], &rest) {
                            out.add_component(idx, (&c1 * &coeff_common).scale(&s2));
                        }
                    }
                    if !c2.is_zero() {
                        if let Some((idx, s2)) = merge_indices(&[pa], &rest) {
                            out.add_component(idx, (&c2 * &coeff_common).scale(&(-s2)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for PolyMultiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis: Vec<String> = idx
                .iter()
                .map(|&i| format!("@{}", self.chart.name(i)))
                .collect();
            write!(f, "({p}) {}", basis.join("^"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMultiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Polynomial differential forms on coordinate charts.
//!
//! A degree-k form is stored as a map from strictly increasing index
//! k-subsets I (the basis dx_I) to polynomial coefficients. Zero
//! coefficients are never stored, so equality is structural.

use crate::chart::Chart;
use crate::multivec::PolyMultiVec;
use crate::poly::Poly;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type IndexSet = Vec<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<IndexSet, Poly>,
}

/// Merges two strictly increasing index sets, returning the combined set and
/// the sign of the shuffle; None when they intersect.
pub(crate) fn merge_indices(a: &[usize], b: &[usize]) -> Option<(IndexSet, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = Rat::one();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] moves past the remaining a[i..]
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

impl PolyForm {
    pub fn zero(chart: &Chart, degree: usize) -> PolyForm {
        PolyForm {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// A function viewed as a 0-form.
    pub fn from_poly(p: Poly) -> PolyForm {
        let chart = p.chart().clone();
        let mut f = PolyForm::zero(&chart, 0);
        if !p.is_zero() {
            f.comps.insert(vec![], p);
        }
        f
    }

    /// The basis form dx_{i1} ∧ ... ∧ dx_{ik} for strictly increasing indices.
    pub fn basis(chart: &Chart, indices: &[usize]) -> PolyForm {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must be strictly increasing"
        );
        assert!(indices.iter().all(|&i| i < chart.dim()));
        let mut f = PolyForm::zero(chart, indices.len());
        f.comps.insert(indices.to_vec(), Poly::one(chart));
        f
    }

    pub fn monomial(chart: &Chart, indices: &[usize], coeff: Poly) -> PolyForm {
        let mut f = PolyForm::zero(chart, indices.len());
        f.add_component(indices.to_vec(), coeff);
        f
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

    /// As a polynomial, for 0-forms.
    pub fn as_poly(&self) -> Poly {
        assert_eq!(self.degree, 0, "not a 0-form");
        self.component(&[])
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

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (i, p) in &other.comps {
            out.add_component(i.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        if c.is_zero() {
            return PolyForm::zero(&self.chart, self.degree);
        }
        PolyForm {
            chart: self.chart.clone(),
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (i.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, q: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree);
        for (i, p) in &self.comps {
            out.add_component(i.clone(), p * q);
        }
        out
    }

    /// Exterior product; degrees add.
    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        let mut out = PolyForm::zero(&self.chart, self.degree + other.degree);
        for (ia, pa) in &self.comps {
            for (ib, pb) in &other.comps {
                if let Some((idx, sign)) = merge_indices(ia, ib) {
                    out.add_component(idx, (pa * pb).scale(&sign));
                }
            }
        }
        out
    }

    /// The de Rham differential.
    pub fn exterior_d(&self) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree + 1);
        for (idx, p) in &self.comps {
            for j in 0..self.chart.dim() {
                let dp = p.partial(j);
                if dp.is_zero() {
                    continue;
                }
                if let Some((merged, sign)) = merge_indices(&[j], idx) {
                    out.add_component(merged, dp.scale(&sign));
                }
            }
        }
        out
    }

    /// Contraction with the coordinate field ∂_i.
    pub fn contract_basis(&self, i: usize) -> PolyForm {
        let mut out = PolyForm::zero(&self.chart, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (idx, p) in &self.comps {
            if let Some(pos) = idx.iter().position(|&a| a == i) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                out.add_component(rest, p.scale(&sign));
            }
        }
        out
    }

    /// Contraction with a vector field v = Σ g_i ∂_i (degree-1 multivector).
    pub fn contract_field(&self, v: &PolyMultiVec) -> PolyForm {
        assert_eq!(self.chart, *v.chart(), "chart mismatch");
        assert_eq!(v.degree(), 1, "contraction needs a vector field");
        let mut out = PolyForm::zero(&self.chart, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (vi, g) in v.components() {
            out = out.add(&self.contract_basis(vi[0]).scale_poly(g));
        }
        out
    }

    /// Multilinear alternating evaluation at a rational point on the given
    /// tangent vectors; their number must equal the degree.
    pub fn eval_on_vectors(&self, point: &[Rat], vectors: &[Vec<Rat>]) -> Rat {
        assert_eq!(point.len(), self.chart.dim(), "point dimension mismatch");
        assert_eq!(vectors.len(), self.degree, "arity mismatch");
        let mut acc = Rat::zero();
        for (idx, p) in &self.comps {
            // det of the k×k minor picking rows idx from the vectors
            let minor: Vec<Vec<Rat>> = idx
                .iter()
                .map(|&row| vectors.iter().map(|v| v[row].clone()).collect())
                .collect();
            let det = crate::linalg::determinant(&minor);
            if !det.is_zero() {
                acc += p.eval(point) * det;
            }
        }
        acc
    }

    /// Reinterprets the form on a larger chart via the coordinate embedding.
    pub fn embed(&self, chart: &Chart, embed: &[usize]) -> PolyForm {
        let mut out = PolyForm::zero(chart, self.degree);
        for (idx, p) in &self.comps {
            let new_idx: Vec<usize> = idx.iter().map(|&i| embed[i]).collect();
            assert!(new_idx.windows(2).all(|w| w[0] < w[1]));
            out.add_component(new_idx, p.embed(chart, embed));
        }
        out
    }
}

/// ι(v_1∧⋯∧v_m)α = ι_{v_m} ⋯ ι_{v_1} α for a decomposable multivector;
/// extended bilinearly over the stored components.
pub fn interior(v: &PolyMultiVec, a: &PolyForm) -> Result<PolyForm, String> {
    if v.chart() != a.chart() {
        return Err("chart mismatch".into());
    }
    if a.degree() < v.degree() {
        return Err(format!(
            "cannot contract a degree-{} multivector into a degree-{} form",
            v.degree(),
            a.degree()
        ));
    }
    let mut out = PolyForm::zero(a.chart(), a.degree() - v.degree());
    for (idx, g) in v.components() {
        // ∂_{i1}∧⋯∧∂_{im} contracts as ι_{∂_{im}} ⋯ ι_{∂_{i1}}
        let mut cur = a.clone();
        for &i in idx.iter() {
            cur = cur.contract_basis(i);
        }
        out = out.add(&cur.scale_poly(g));
    }
    Ok(out)
}

/// L_v α = d ι(v) α − (−1)^{deg v} ι(v) dα.
pub fn lie_derivative(v: &PolyMultiVec, a: &PolyForm) -> Result<PolyForm, String> {
    if v.chart() != a.chart() {
        return Err("chart mismatch".into());
    }
    let m = v.degree();
    // ι(v) lowers degree by m; on forms of degree < m it acts as zero.
    let iva = if a.degree() >= m {
        interior(v, a)?.exterior_d()
    } else {
        PolyForm::zero(a.chart(), a.degree() + 1 - m)
    };
    let da = a.exterior_d();
    let ivda = if da.degree() >= m {
        interior(v, &da)?
    } else {
        PolyForm::zero(a.chart(), a.degree() + 1 - m)
    };
    let sign = crate::rational::neg_one_pow(m as i64);
    Ok(iva.sub(&ivda.scale(&sign)))
}

/// The radial homotopy operator K with dK + Kd = id on forms of degree ≥ 1
/// over a full coordinate chart (star-shaped about the origin).
pub fn poincare_homotopy(a: &PolyForm) -> Result<PolyForm, String> {
    if a.degree() == 0 {
        return Err("the homotopy operator needs degree ≥ 1".into());
    }
    let k = a.degree();
    let mut out = PolyForm::zero(a.chart(), k - 1);
    for (idx, p) in a.components() {
        for (e, c) in p.terms() {
            let total: u32 = e.iter().sum();
            let weight = Rat::new(1.into(), (u64::from(total) + k as u64).into());
            for (pos, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                let mut e2 = e.clone();
                e2[i] += 1;
                let coeff = Poly::monomial(a.chart(), e2, c * &weight * sign);
                out.add_component(rest, coeff);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for PolyForm {
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
                .map(|&i| format!("d{}", self.chart.name(i)))
                .collect();
            if basis.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p}) {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn r3() -> Chart {
        Chart::standard(3)
    }

    #[test]
    fn wedge_basics() {
        let ch = r3();
        let dx1 = PolyForm::basis(&ch, &[0]);
        let dx2 = PolyForm::basis(&ch, &[1]);
        assert_eq!(dx1.wedge(&dx2), PolyForm::basis(&ch, &[0, 1]));
        assert!(dx1.wedge(&dx1).is_zero());
        let x1 = Poly::var(&ch, 0);
        let x2 = Poly::var(&ch, 1);
        let a = dx1.scale_poly(&x1);
        let b = dx2.scale_poly(&x2);
        assert_eq!(
            a.wedge(&b),
            PolyForm::basis(&ch, &[0, 1]).scale_poly(&(&x1 * &x2))
        );
        // graded commutativity in odd degrees
        assert_eq!(b.wedge(&a), a.wedge(&b).neg());
    }

    #[test]
    fn exterior_d_basics() {
        let ch = r3();
        let x1 = Poly::var(&ch, 0);
        let x2 = Poly::var(&ch, 1);
        // d(x1^2 x2) = 2 x1 x2 dx1 + x1^2 dx2
        let f = PolyForm::from_poly(&(&x1 * &x1) * &x2);
        let df = f.exterior_d();
        assert_eq!(df.component(&[0]), (&x1 * &x2).scale(&int(2)));
        assert_eq!(df.component(&[1]), &x1 * &x1);
        // d(x1 dx2) = dx1 ∧ dx2
        let a = PolyForm::basis(&ch, &[1]).scale_poly(&x1);
        assert_eq!(a.exterior_d(), PolyForm::basis(&ch, &[0, 1]));
        // d(dx1 ∧ dx2) = 0
        assert!(PolyForm::basis(&ch, &[0, 1]).exterior_d().is_zero());
    }

    #[test]
    fn interior_examples() {
        let ch = r3();
        let omega12 = PolyForm::basis(&ch, &[0, 1]);
        let d1 = PolyMultiVec::basis(&ch, &[0]);
        let d12 = PolyMultiVec::basis(&ch, &[0, 1]);
        assert_eq!(interior(&d1, &omega12).unwrap(), PolyForm::basis(&ch, &[1]));
        // ι(∂1∧∂2)(dx1∧dx2) = ι_{∂2} ι_{∂1} (dx1∧dx2) = ι_{∂2} dx2 = 1
        assert_eq!(
            interior(&d12, &omega12).unwrap(),
            PolyForm::from_poly(Poly::one(&ch))
        );
        let omega13 = PolyForm::basis(&ch, &[0, 2]);
        assert!(interior(&d12, &omega13).unwrap().is_zero());
        // degree underflow is an error
        assert!(interior(&d12, &PolyForm::basis(&ch, &[0])).is_err());
    }

    #[test]
    fn lie_derivative_examples() {
        let ch = r3();
        let x1 = Poly::var(&ch, 0);
        // L_{∂1}(x1 dx1) = dx1
        let v = PolyMultiVec::basis(&ch, &[0]);
        let a = PolyForm::basis(&ch, &[0]).scale_poly(&x1);
        assert_eq!(lie_derivative(&v, &a).unwrap(), PolyForm::basis(&ch, &[0]));
        // Euler field rescales the volume form by the chart dimension
        let mut e = PolyMultiVec::zero(&ch, 1);
        for i in 0..3 {
            e = e.add(&PolyMultiVec::basis(&ch, &[i]).scale_poly(&Poly::var(&ch, i)));
        }
        let vol = PolyForm::basis(&ch, &[0, 1, 2]);
        assert_eq!(lie_derivative(&e, &vol).unwrap(), vol.scale(&int(3)));
        // constant-coefficient field and closed constant form
        let w = PolyMultiVec::basis(&ch, &[1]);
        assert!(lie_derivative(&w, &vol).unwrap().is_zero());
    }

    #[test]
    fn poincare_examples() {
        let ch = r3();
        let x1 = Poly::var(&ch, 0);
        let x2 = Poly::var(&ch, 1);
        assert_eq!(
            poincare_homotopy(&PolyForm::basis(&ch, &[0])).unwrap(),
            PolyForm::from_poly(x1.clone())
        );
        // K(dx1∧dx2) = (x1 dx2 − x2 dx1)/2
        let k = poincare_homotopy(&PolyForm::basis(&ch, &[0, 1])).unwrap();
        assert_eq!(k.component(&[1]), x1.scale(&rat(1, 2)));
        assert_eq!(k.component(&[0]), x2.scale(&rat(-1, 2)));
        // K recovers a primitive of an exact form: K(d(x1^2 x2)) = x1^2 x2
        let exact = PolyForm::from_poly(&(&x1 * &x1) * &x2).exterior_d();
        assert_eq!(
            poincare_homotopy(&exact).unwrap(),
            PolyForm::from_poly(&(&x1 * &x1) * &x2)
        );
        assert!(poincare_homotopy(&PolyForm::from_poly(x1)).is_err());
    }

    #[test]
    fn eval_on_vectors_examples() {
        let ch = r3();
        let e1 = vec![int(1), int(0), int(0)];
        let e2 = vec![int(0), int(1), int(0)];
        let omega = PolyForm::basis(&ch, &[0, 1]);
        let p = vec![rat(1, 3), int(-2), int(5)];
        assert_eq!(omega.eval_on_vectors(&p, &[e1.clone(), e2.clone()]), int(1));
        let a = PolyForm::basis(&ch, &[0]).scale_poly(&Poly::var(&ch, 0));
        assert_eq!(
            a.eval_on_vectors(&[int(2), int(0), int(0)], std::slice::from_ref(&e1)),
            int(2)
        );
        // antisymmetry
        assert_eq!(omega.eval_on_vectors(&p, &[e2, e1]), int(-1));
    }
}

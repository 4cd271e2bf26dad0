//! Lie algebra actions on charts as polynomial fundamental vector fields,
//! and the insertion operators they induce on forms.

use crate::chart::Chart;
use crate::cochain::CECochain;
use crate::form::PolyForm;
use crate::lie::{LinearAction, StructLieAlgebra};
use crate::multivec::{schouten, PolyMultiVec};
use crate::perm::increasing_subsets;
use crate::poly::Poly;
use crate::rational::Rat;
use crate::value::LinearValue;

/// An infinitesimal action: one fundamental vector field per basis element,
/// with the morphism property `[v_x, v_y] = v_[x,y]` checked exactly.
#[derive(Clone, Debug)]
pub struct ActionData {
    algebra: StructLieAlgebra,
    chart: Chart,
    fields: Vec<PolyMultiVec>,
}

impl ActionData {
    pub fn new(
        algebra: StructLieAlgebra,
        chart: Chart,
        fields: Vec<PolyMultiVec>,
    ) -> Result<ActionData, String> {
        if fields.len() != algebra.dim() {
            return Err("one fundamental field per basis element required".into());
        }
        for v in &fields {
            if v.degree() != 1 {
                return Err("fundamental fields must be vector fields".into());
            }
            if v.chart() != &chart {
                return Err("fundamental field on the wrong chart".into());
            }
        }
        let action = ActionData {
            algebra,
            chart,
            fields,
        };
        action.check_morphism()?;
        Ok(action)
    }

    /// schouten(v_x, v_y) = v_{[x,y]} on all basis pairs, exactly.
    fn check_morphism(&self) -> Result<(), String> {
        let d = self.algebra.dim();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = schouten(&self.fields[i], &self.fields[j])?;
                let rhs = self.field_of(&self.algebra.bracket_basis(i, j));
                if lhs != rhs {
                    return Err(format!(
                        "not an action: [v_{}, v_{}] ≠ v_[{},{}]",
                        self.algebra.name(i),
                        self.algebra.name(j),
                        self.algebra.name(i),
                        self.algebra.name(j)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &StructLieAlgebra {
        &self.algebra
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn field(&self, i: usize) -> &PolyMultiVec {
        &self.fields[i]
    }

    /// v_x for a coefficient vector x.
    pub fn field_of(&self, x: &[Rat]) -> PolyMultiVec {
        let mut acc = PolyMultiVec::zero(&self.chart, 1);
        for (i, c) in x.iter().enumerate() {
            if !LinearValue::is_zero(c) {
                acc = acc.add(&self.fields[i].scale(c));
            }
        }
        acc
    }

    /// v_{x_{i1}} ∧ ⋯ ∧ v_{x_ik} for basis indices.
    pub fn wedge_fields(&self, indices: &[usize]) -> PolyMultiVec {
        assert!(!indices.is_empty());
        let mut acc = self.fields[indices[0]].clone();
        for &i in &indices[1..] {
            acc = acc.wedge(&self.fields[i]);
        }
        acc
    }

    /// The direct-sum action of 𝔤₁ ⊕ 𝔤₂ on a product chart.
    pub fn product(&self, other: &ActionData) -> Result<ActionData, String> {
        let chart = self.chart.product(&other.chart)?;
        let n1 = self.chart.dim();
        let emb1: Vec<usize> = (0..n1).collect();
        let emb2: Vec<usize> = (0..other.chart.dim()).map(|i| n1 + i).collect();
        let d1 = self.algebra.dim();
        let d2 = other.algebra.dim();
        let dim = d1 + d2;
        let mut names: Vec<String> = self
            .algebra
            .names()
            .iter()
            .map(|n| format!("l.{n}"))
            .collect();
        names.extend(other.algebra.names().iter().map(|n| format!("r.{n}")));
        let mut brackets = Vec::new();
        for i in 0..d1 {
            for j in i + 1..d1 {
                let mut c = self.algebra.bracket_basis(i, j);
                c.extend(vec![crate::rational::int(0); d2]);
                if !LinearValue::is_zero(&c) {
                    brackets.push(((i, j), c));
                }
            }
        }
        for i in 0..d2 {
            for j in i + 1..d2 {
                let mut c = vec![crate::rational::int(0); d1];
                c.extend(other.algebra.bracket_basis(i, j));
                if !LinearValue::is_zero(&c) {
                    brackets.push(((d1 + i, d1 + j), c));
                }
            }
        }
        let algebra = StructLieAlgebra::new(names, brackets)?;
        let mut fields: Vec<PolyMultiVec> =
            self.fields.iter().map(|v| v.embed(&chart, &emb1)).collect();
        fields.extend(other.fields.iter().map(|v| v.embed(&chart, &emb2)));
        debug_assert_eq!(fields.len(), dim);
        ActionData::new(algebra, chart, fields)
    }
}

/// Fundamental fields of a linear action: v_x at p is −φ(x)·p.
pub fn fundamental_fields_linear(action: &LinearAction) -> Result<ActionData, String> {
    let n = action.space_dim();
    let chart = Chart::standard(n);
    let mut fields = Vec::with_capacity(action.algebra().dim());
    for k in 0..action.algebra().dim() {
        let m = action.matrix(k);
        let coeffs: Vec<Poly> = (0..n)
            .map(|a| {
                let mut acc = Poly::zero(&chart);
                for (b, entry) in m[a].iter().enumerate() {
                    if !LinearValue::is_zero(entry) {
                        acc = &acc + &Poly::var(&chart, b).scale(&-entry.clone());
                    }
                }
                acc
            })
            .collect();
        fields.push(PolyMultiVec::from_coefficients(&chart, &coeffs));
    }
    ActionData::new(action.algebra().clone(), chart, fields)
}

/// Like `fundamental_fields_linear` but on a caller-supplied chart.
pub fn fundamental_fields_linear_on(
    action: &LinearAction,
    chart: &Chart,
) -> Result<ActionData, String> {
    let base = fundamental_fields_linear(action)?;
    if base.chart() == chart {
        return Ok(base);
    }
    if chart.dim() != action.space_dim() {
        return Err("chart dimension does not match the representation".into());
    }
    let emb: Vec<usize> = (0..chart.dim()).collect();
    let fields = (0..base.algebra().dim())
        .map(|i| base.field(i).embed(chart, &emb))
        .collect();
    ActionData::new(base.algebra().clone(), chart.clone(), fields)
}

/// The insertion ι_𝔤^k: (ι_𝔤^k α)(x_1..x_k) = ι_{v_{x_k}} ⋯ ι_{v_{x_1}} α,
/// returned as a skew table on increasing basis k-subsets. Vanishes when
/// k exceeds the form degree.
pub fn insert_g_k(omega: &PolyForm, action: &ActionData, k: usize) -> CECochain<PolyForm> {
    assert!(k >= 1);
    let mut out = CECochain::zero(action.algebra(), k);
    if k > omega.degree() {
        return out;
    }
    for idx in increasing_subsets(action.algebra().dim(), k) {
        // ι_{v_{x_k}} ⋯ ι_{v_{x_1}} α = ι(v_{x_1} ∧ ⋯ ∧ v_{x_k}) α
        let mv = action.wedge_fields(&idx);
        if mv.is_zero() {
            continue;
        }
        let val = crate::form::interior(&mv, omega).expect("degree checked");
        out.add_component(idx, val);
    }
    out
}

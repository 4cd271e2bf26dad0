//! Quaternion-polynomial arithmetic on the chart (a,b,c,d) ≅ ℍ, used to
//! realize the unit 3-sphere as a group with its conjugation action,
//! bi-invariant 3-form, and Maurer–Cartan pairings — all with polynomial
//! coefficients (on the sphere the inverse is the conjugate).

use crate::action::ActionData;
use crate::chart::Chart;
use crate::form::PolyForm;
use crate::lie::StructLieAlgebra;
use crate::multivec::PolyMultiVec;
use crate::poly::Poly;
use crate::rational::{int, rat, Rat};

/// A quaternion with polynomial components w + x i + y j + z k.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyQuat {
    pub w: Poly,
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
}

impl PolyQuat {
    pub fn zero(chart: &Chart) -> PolyQuat {
        PolyQuat {
            w: Poly::zero(chart),
            x: Poly::zero(chart),
            y: Poly::zero(chart),
            z: Poly::zero(chart),
        }
    }

    /// The coordinate quaternion q = a + b i + c j + d k.
    pub fn coordinate(chart: &Chart) -> PolyQuat {
        assert!(chart.dim() == 4);
        PolyQuat {
            w: Poly::var(chart, 0),
            x: Poly::var(chart, 1),
            y: Poly::var(chart, 2),
            z: Poly::var(chart, 3),
        }
    }

    /// The α-th standard basis element (1, i, j, k) as a constant.
    pub fn basis(chart: &Chart, alpha: usize) -> PolyQuat {
        let mut q = PolyQuat::zero(chart);
        let one = Poly::one(chart);
        match alpha {
            0 => q.w = one,
            1 => q.x = one,
            2 => q.y = one,
            3 => q.z = one,
            _ => panic!("quaternion basis index out of range"),
        }
        q
    }

    pub fn conj(&self) -> PolyQuat {
        PolyQuat {
            w: self.w.clone(),
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    pub fn add(&self, o: &PolyQuat) -> PolyQuat {
        PolyQuat {
            w: &self.w + &o.w,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            z: &self.z + &o.z,
        }
    }

    pub fn sub(&self, o: &PolyQuat) -> PolyQuat {
        PolyQuat {
            w: &self.w - &o.w,
            x: &self.x - &o.x,
            y: &self.y - &o.y,
            z: &self.z - &o.z,
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyQuat {
        PolyQuat {
            w: self.w.scale(c),
            x: self.x.scale(c),
            y: self.y.scale(c),
            z: self.z.scale(c),
        }
    }

    pub fn mul(&self, o: &PolyQuat) -> PolyQuat {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        PolyQuat {
            w: &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2)),
            x: &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2)),
            y: &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2)),
            z: &(&(a1 * d2) + &(b1 * c2)) - &(&(c1 * b2) - &(d1 * a2)),
        }
    }

    pub fn commutator(&self, o: &PolyQuat) -> PolyQuat {
        self.mul(o).sub(&o.mul(self))
    }

    /// The real pairing ⟨u, v⟩ = Re(u v̄).
    pub fn pair(&self, o: &PolyQuat) -> Poly {
        let p = self.mul(&o.conj());
        p.w
    }

    pub fn components(&self) -> [&Poly; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

/// su(2) modeled on the imaginary quaternions {i, j, k}: `[i,j]` = 2k cyclic.
pub fn su2_imaginary() -> StructLieAlgebra {
    let e = |t: usize, s: i64| {
        let mut v = vec![int(0); 3];
        v[t] = int(s);
        v
    };
    StructLieAlgebra::new(
        vec!["i".into(), "j".into(), "k".into()],
        vec![((0, 1), e(2, 2)), ((1, 2), e(0, 2)), ((0, 2), e(1, -2))],
    )
    .unwrap()
}

fn imag_basis(chart: &Chart, t: usize) -> PolyQuat {
    PolyQuat::basis(chart, t + 1)
}

/// The conjugation-action fundamental fields v_x|_q = q·x − x·q for x in
/// the imaginary basis.
pub fn conjugation_action(chart: &Chart) -> ActionData {
    let q = PolyQuat::coordinate(chart);
    let algebra = su2_imaginary();
    let mut fields = Vec::with_capacity(3);
    for t in 0..3 {
        let x = imag_basis(chart, t);
        let v = q.mul(&x).sub(&x.mul(&q));
        let coeffs: Vec<Poly> = v.components().into_iter().cloned().collect();
        fields.push(PolyMultiVec::from_coefficients(chart, &coeffs));
    }
    ActionData::new(algebra, chart.clone(), fields).expect("conjugation is an action")
}

/// The bi-invariant Cartan 3-form on the unit sphere, as the ambient
/// polynomial form ω(u,v,w)|_q = ½ ⟨q̄u, `[q̄v, q̄w]`⟩ (with q⁻¹ = q̄ on |q|=1).
pub fn cartan_three_form(chart: &Chart) -> PolyForm {
    let q = PolyQuat::coordinate(chart);
    let qc = q.conj();
    let mut omega = PolyForm::zero(chart, 3);
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                let ta = qc.mul(&PolyQuat::basis(chart, a));
                let tb = qc.mul(&PolyQuat::basis(chart, b));
                let tc = qc.mul(&PolyQuat::basis(chart, c));
                let val = ta.pair(&tb.commutator(&tc)).scale(&rat(1, 2));
                omega.add_component(vec![a, b, c], val);
            }
        }
    }
    omega
}

/// μ(x)(u)|_q = ½ (⟨q̄u, x⟩ + ⟨u q̄, x⟩): the pairing of the sum of the two
/// Maurer–Cartan forms with x.
pub fn maurer_cartan_moment(chart: &Chart, t: usize) -> PolyForm {
    let q = PolyQuat::coordinate(chart);
    let qc = q.conj();
    let x = imag_basis(chart, t);
    let mut mu = PolyForm::zero(chart, 1);
    for a in 0..4 {
        let e = PolyQuat::basis(chart, a);
        let left = qc.mul(&e).pair(&x);
        let right = e.mul(&qc).pair(&x);
        mu.add_component(vec![a], (&left + &right).scale(&rat(1, 2)));
    }
    mu
}

/// ½⟨(Ad_g − Ad_{g⁻¹}) x, y⟩ as a polynomial on the chart (Ad_g x = g x ḡ
/// on the unit sphere).
pub fn adjoint_difference_pairing(chart: &Chart, t: usize, s: usize) -> Poly {
    let g = PolyQuat::coordinate(chart);
    let gc = g.conj();
    let x = imag_basis(chart, t);
    let y = imag_basis(chart, s);
    let ad = g.mul(&x).mul(&gc);
    let ad_inv = gc.mul(&x).mul(&g);
    ad.sub(&ad_inv).pair(&y).scale(&rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::interior;
    use crate::levelset::LevelSetChart;
    use crate::space::Space;

    fn chart() -> Chart {
        Chart::new(vec!["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let ch = chart();
        let i = PolyQuat::basis(&ch, 1);
        let j = PolyQuat::basis(&ch, 2);
        let k = PolyQuat::basis(&ch, 3);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.scale(&int(-1)));
        assert_eq!(i.mul(&i).w, Poly::constant(&ch, int(-1)));
        // ⟨i, i⟩ = 1, ⟨i, j⟩ = 0
        assert_eq!(i.pair(&i), Poly::one(&ch));
        assert!(i.pair(&j).is_zero());
    }

    #[test]
    fn conjugation_fixes_the_identity() {
        let ch = chart();
        let action = conjugation_action(&ch);
        let one = vec![int(1), int(0), int(0), int(0)];
        for t in 0..3 {
            assert!(action.field(t).eval_field(&one).iter().all(|v| {
                use num_traits::Zero;
                v.is_zero()
            }));
        }
    }

    #[test]
    fn moment_equation_holds_on_the_sphere() {
        let ch = chart();
        let action = conjugation_action(&ch);
        let ls = LevelSetChart::unit_sphere(ch.clone(), 6).unwrap();
        let space = Space::LevelSet(ls);
        let omega = cartan_three_form(&ch);
        // dω = 0 on the sphere (trivially: degree 4 forms restrict to zero)
        space.form_vanishes(&omega.exterior_d()).unwrap();
        for t in 0..3 {
            let mu = maurer_cartan_moment(&ch, t);
            let rhs = interior(action.field(t), &omega).unwrap().neg();
            space
                .forms_equal(&mu.exterior_d(), &rhs)
                .unwrap_or_else(|w| panic!("dμ ≠ −ι_v ω for basis {t}: {w}"));
        }
    }

    #[test]
    fn second_component_matches_the_adjoint_pairing() {
        let ch = chart();
        let action = conjugation_action(&ch);
        let ls = LevelSetChart::unit_sphere(ch.clone(), 6).unwrap();
        for t in 0..3 {
            for s in 0..3 {
                let mu_s = maurer_cartan_moment(&ch, s);
                let f2 = interior(action.field(t), &mu_s).unwrap().as_poly();
                let expect = adjoint_difference_pairing(&ch, t, s);
                for p in ls.sample_points() {
                    assert_eq!(f2.eval(p), expect.eval(p), "t={t}, s={s}, p={p:?}");
                }
            }
        }
    }
}

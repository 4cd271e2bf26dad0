//! The Lie n-algebra of observables of a closed (n+1)-form, realized
//! operationally: brackets are evaluated on concrete forms carrying
//! Hamiltonian vector field witnesses, never materialized as tables.

use crate::form::{interior, PolyForm};
use crate::multivec::{schouten, PolyMultiVec};
use crate::perm::varsigma;
use crate::rational::Rat;
use crate::space::Space;
use crate::value::LinearValue;

/// A Hamiltonian pair: a vector field witness v and an (n−1)-form α with
/// dα = −ι_v ω for the ambient ω it is registered against.
#[derive(Clone, PartialEq, Debug)]
pub struct HamPair {
    pub field: PolyMultiVec,
    pub form: PolyForm,
}

/// An element of the observables algebra: a Hamiltonian pair in degree 0 or
/// a plain form in negative degrees (degree i holds (n−1+i)-forms).
#[derive(Clone, PartialEq, Debug)]
pub enum ObsElem {
    Pair(HamPair),
    Form { degree: i64, form: PolyForm },
}

impl ObsElem {
    pub fn degree(&self) -> i64 {
        match self {
            ObsElem::Pair(_) => 0,
            ObsElem::Form { degree, .. } => *degree,
        }
    }

    pub fn form(&self) -> &PolyForm {
        match self {
            ObsElem::Pair(p) => &p.form,
            ObsElem::Form { form, .. } => form,
        }
    }
}

impl LinearValue for ObsElem {
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ObsElem::Pair(a), ObsElem::Pair(b)) => ObsElem::Pair(HamPair {
                field: a.field.add(&b.field),
                form: a.form.add(&b.form),
            }),
            (
                ObsElem::Form {
                    degree: d1,
                    form: f1,
                },
                ObsElem::Form {
                    degree: d2,
                    form: f2,
                },
            ) => {
                assert_eq!(d1, d2, "degree mismatch in observables sum");
                ObsElem::Form {
                    degree: *d1,
                    form: f1.add(f2),
                }
            }
            _ => panic!("cannot add a pair to a plain form"),
        }
    }

    fn neg(&self) -> Self {
        self.scale(&-Rat::from_integer(1.into()))
    }

    fn scale(&self, c: &Rat) -> Self {
        match self {
            ObsElem::Pair(p) => ObsElem::Pair(HamPair {
                field: p.field.scale(c),
                form: p.form.scale(c),
            }),
            ObsElem::Form { degree, form } => ObsElem::Form {
                degree: *degree,
                form: form.scale(c),
            },
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            ObsElem::Pair(p) => p.field.is_zero() && p.form.is_zero(),
            ObsElem::Form { form, .. } => form.is_zero(),
        }
    }
}

/// dα = −ι_v ω, exactly on charts or on sampled frames for level sets.
pub fn hamiltonian_pair_check(
    v: &PolyMultiVec,
    alpha: &PolyForm,
    omega: &PolyForm,
    space: &Space,
) -> Result<(), String> {
    let ivw = if v.is_zero() {
        PolyForm::zero(omega.chart(), omega.degree() - 1)
    } else {
        interior(v, omega)?
    };
    space
        .forms_equal(&alpha.exterior_d(), &ivw.neg())
        .map_err(|w| format!("dα ≠ −ι_v ω: {w}"))
}

/// The observables Lie n-algebra of a closed (n+1)-form on a space.
#[derive(Clone, Debug)]
pub struct ObservablesAlgebra {
    space: Space,
    omega: PolyForm,
    n: usize,
}

impl ObservablesAlgebra {
    pub fn new(space: Space, omega: PolyForm) -> Result<ObservablesAlgebra, String> {
        if omega.degree() < 2 {
            return Err("the structure form must have degree ≥ 2".into());
        }
        space
            .form_vanishes(&omega.exterior_d())
            .map_err(|w| format!("ω is not closed: {w}"))?;
        Ok(ObservablesAlgebra {
            n: omega.degree() - 1,
            space,
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &PolyForm {
        &self.omega
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn zero(&self, degree: i64) -> ObsElem {
        assert!(degree <= 0 && degree > -(self.n as i64));
        if degree == 0 {
            ObsElem::Pair(HamPair {
                field: PolyMultiVec::zero(self.omega.chart(), 1),
                form: PolyForm::zero(self.omega.chart(), self.n - 1),
            })
        } else {
            let fd = (self.n as i64 - 1 + degree) as usize;
            ObsElem::Form {
                degree,
                form: PolyForm::zero(self.omega.chart(), fd),
            }
        }
    }

    /// Registers a pair after verifying the Hamiltonian condition.
    pub fn pair(&self, field: PolyMultiVec, form: PolyForm) -> Result<ObsElem, String> {
        hamiltonian_pair_check(&field, &form, &self.omega, &self.space)?;
        Ok(ObsElem::Pair(HamPair { field, form }))
    }

    pub fn element(&self, degree: i64, form: PolyForm) -> ObsElem {
        assert!(degree < 0);
        assert_eq!(form.degree() as i64, self.n as i64 - 1 + degree);
        ObsElem::Form { degree, form }
    }

    /// l_1 = d on negative degrees (zero on degree 0 by the degree window).
    pub fn l1(&self, e: &ObsElem) -> ObsElem {
        match e {
            ObsElem::Pair(_) => ObsElem::Form {
                degree: 1,
                form: PolyForm::zero(self.omega.chart(), self.n),
            },
            ObsElem::Form { degree, form } => {
                let d = form.exterior_d();
                if *degree == -1 {
                    // lands in degree 0: an exact form with zero Hamiltonian field
                    ObsElem::Pair(HamPair {
                        field: PolyMultiVec::zero(self.omega.chart(), 1),
                        form: d,
                    })
                } else {
                    ObsElem::Form {
                        degree: degree + 1,
                        form: d,
                    }
                }
            }
        }
    }

    /// l_k for k ≥ 2: ς(k) ι(v_1∧⋯∧v_k) ω on all-degree-0 tuples (as the
    /// pair with field `[v_1,v_2]` when k = 2), zero otherwise.
    pub fn lk(&self, k: usize, args: &[ObsElem]) -> ObsElem {
        assert!(k >= 2);
        assert_eq!(args.len(), k);
        let total: i64 = args.iter().map(|a| a.degree()).sum();
        if total < 0 {
            let out_deg = total + 2 - k as i64;
            let fd = self.n as i64 - 1 + out_deg;
            assert!(fd >= 0 || out_deg < 0, "degree window violated");
            let fd = fd.max(0) as usize;
            return if out_deg == 0 {
                self.zero(0)
            } else {
                ObsElem::Form {
                    degree: out_deg,
                    form: PolyForm::zero(self.omega.chart(), fd),
                }
            };
        }
        // all arguments in degree 0
        let fields: Vec<&PolyMultiVec> = args
            .iter()
            .map(|a| match a {
                ObsElem::Pair(p) => &p.field,
                _ => unreachable!("total degree 0 forces pairs"),
            })
            .collect();
        let mut wedge = fields[0].clone();
        for f in &fields[1..] {
            wedge = wedge.wedge(f);
        }
        let form = if wedge.is_zero() {
            PolyForm::zero(self.omega.chart(), self.n + 1 - k)
        } else {
            interior(&wedge, &self.omega)
                .expect("k ≤ n+1 insertions fit")
                .scale(&varsigma(k))
        };
        if k == 2 {
            let bracket = schouten(fields[0], fields[1]).expect("same chart");
            ObsElem::Pair(HamPair {
                field: bracket,
                form,
            })
        } else {
            ObsElem::Form {
                degree: 2 - k as i64,
                form,
            }
        }
    }

    /// Zero test: field components exactly, form components on the space.
    pub fn elem_vanishes(&self, e: &ObsElem) -> Result<(), String> {
        match e {
            ObsElem::Pair(p) => {
                if !p.field.is_zero() {
                    return Err(format!("nonzero Hamiltonian field {}", p.field));
                }
                self.space.form_vanishes(&p.form)
            }
            ObsElem::Form { form, .. } => self.space.form_vanishes(form),
        }
    }
}



#[cfg(test)]
mod sign_tests {
    use super::*;
    use crate::chart::Chart;
    use crate::poly::Poly;
    use crate::rational::int;

    #[test]
    fn degree_zero_brackets_are_antisymmetric() {
        let ch = Chart::standard(2);
        let omega = PolyForm::basis(&ch, &[0, 1]);
        let alg = ObservablesAlgebra::new(Space::Chart(ch.clone()), omega).unwrap();
        let a = alg
            .pair(
                PolyMultiVec::basis(&ch, &[1]),
                PolyForm::from_poly(Poly::var(&ch, 0)),
            )
            .unwrap();
        let b = alg
            .pair(
                PolyMultiVec::basis(&ch, &[0]).scale(&int(-1)),
                PolyForm::from_poly(Poly::var(&ch, 1)),
            )
            .unwrap();
        let ab = alg.lk(2, &[a.clone(), b.clone()]);
        let ba = alg.lk(2, &[b, a]);
        assert_eq!(ab, ba.neg());
    }
}

//! Polynomial level sets {F = 0} with rational sample points and exact
//! tangent frames.
//!
//! Equality of forms on a level set is decided by evaluating both sides on
//! every tuple of frame vectors at every sample point. That is sound (no
//! false positives survive a failing sample) and exact.

use crate::chart::Chart;
use crate::form::PolyForm;
use crate::linalg::covector_kernel;
use crate::perm::increasing_subsets;
use crate::poly::Poly;
use crate::rational::{int, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct LevelSetChart {
    ambient: Chart,
    constraint: Poly,
    sample_points: Vec<Vec<Rat>>,
    tangent_frames: Vec<Vec<Vec<Rat>>>,
}

impl LevelSetChart {
    /// Builds a level set from explicit sample points; frames are computed as
    /// the exact kernel of dF at each point (pivot at the largest index).
    pub fn new(
        ambient: Chart,
        constraint: Poly,
        sample_points: Vec<Vec<Rat>>,
    ) -> Result<LevelSetChart, String> {
        if sample_points.is_empty() {
            return Err("a level set needs at least one sample point".into());
        }
        let n = ambient.dim();
        let grad: Vec<Poly> = (0..n).map(|i| constraint.partial(i)).collect();
        let mut frames = Vec::with_capacity(sample_points.len());
        for p in &sample_points {
            if p.len() != n {
                return Err("sample point dimension mismatch".into());
            }
            if !constraint.eval(p).is_zero() {
                return Err(format!(
                    "sample point {p:?} does not satisfy the constraint"
                ));
            }
            let row: Vec<Rat> = grad.iter().map(|g| g.eval(p)).collect();
            if row.iter().all(|x| x.is_zero()) {
                return Err(format!("dF vanishes at sample point {p:?}"));
            }
            let frame = covector_kernel(&row);
            debug_assert_eq!(frame.len(), n - 1);
            frames.push(frame);
        }
        Ok(LevelSetChart {
            ambient,
            constraint,
            sample_points,
            tangent_frames: frames,
        })
    }

    /// The unit sphere in the given ambient chart, sampled at `count`
    /// distinct stereographic rational points x = (2t, |t|²−1)/(|t|²+1).
    pub fn unit_sphere(ambient: Chart, count: usize) -> Result<LevelSetChart, String> {
        let n = ambient.dim();
        assert!(n >= 2);
        let mut constraint = Poly::constant(&ambient, int(-1));
        for i in 0..n {
            let xi = Poly::var(&ambient, i);
            constraint = &constraint + &(&xi * &xi);
        }
        let points = sphere_points(n, count);
        LevelSetChart::new(ambient, constraint, points)
    }

    pub fn ambient(&self) -> &Chart {
        &self.ambient
    }

    pub fn constraint(&self) -> &Poly {
        &self.constraint
    }

    pub fn sample_points(&self) -> &[Vec<Rat>] {
        &self.sample_points
    }

    pub fn frame(&self, point_index: usize) -> &[Vec<Rat>] {
        &self.tangent_frames[point_index]
    }

    /// True when the form vanishes on every k-tuple of frame vectors at every
    /// sample point; otherwise the first failing witness.
    pub fn form_vanishes(&self, a: &PolyForm) -> Result<(), LevelSetWitness> {
        assert_eq!(*a.chart(), self.ambient, "chart mismatch");
        let k = a.degree();
        for (pi, p) in self.sample_points.iter().enumerate() {
            let frame = &self.tangent_frames[pi];
            if k > frame.len() {
                continue;
            }
            // evaluate the coefficient polynomials once per point; the frame
            // tuples then only need exact determinants
            let coeffs: Vec<(&[usize], Rat)> = a
                .components()
                .map(|(idx, poly)| (idx.as_slice(), poly.eval(p)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if coeffs.is_empty() {
                continue;
            }
            for combo in increasing_subsets(frame.len(), k) {
                let mut val = Rat::zero();
                for (idx, c) in &coeffs {
                    let minor: Vec<Vec<Rat>> = idx
                        .iter()
                        .map(|&row| combo.iter().map(|&v| frame[v][row].clone()).collect())
                        .collect();
                    let det = crate::linalg::determinant(&minor);
                    if !det.is_zero() {
                        val += c * det;
                    }
                }
                if !val.is_zero() {
                    return Err(LevelSetWitness {
                        point_index: pi,
                        point: p.clone(),
                        frame_tuple: combo,
                        value: val,
                    });
                }
            }
        }
        Ok(())
    }
}

/// First failing (point, frame tuple) of a level-set identity.
#[derive(Clone, Debug)]
pub struct LevelSetWitness {
    pub point_index: usize,
    pub point: Vec<Rat>,
    pub frame_tuple: Vec<usize>,
    pub value: Rat,
}

impl std::fmt::Display for LevelSetWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "nonzero value {} at sample point #{} {:?} on frame tuple {:?}",
            crate::rational::fmt_rat(&self.value),
            self.point_index,
            self.point,
            self.frame_tuple
        )
    }
}

/// Equality of two equal-degree forms on the level set.
pub fn levelset_equal(
    a: &PolyForm,
    b: &PolyForm,
    ls: &LevelSetChart,
) -> Result<(), LevelSetWitness> {
    assert_eq!(a.chart(), b.chart(), "chart mismatch");
    assert_eq!(a.degree(), b.degree(), "degree mismatch");
    ls.form_vanishes(&a.sub(b))
}

/// `count` distinct rational points on the unit sphere S^{n-1} ⊂ ℝ^n via
/// stereographic projection of a deterministic sequence of rational vectors.
pub fn sphere_points(n: usize, count: usize) -> Vec<Vec<Rat>> {
    let mut pts = Vec::with_capacity(count);
    let mut seen = std::collections::BTreeSet::new();
    let mut k: i64 = 0;
    while pts.len() < count {
        k += 1;
        // a deterministic, mildly scrambled rational parameter vector
        let t: Vec<Rat> = (0..n - 1)
            .map(|i| {
                let i = i as i64;
                Rat::new(
                    ((k * (i + 2) + 3 * i * i - k * k) % 13).into(),
                    ((k + 2 * i) % 5 + 2).into(),
                )
            })
            .collect();
        let norm2: Rat = t.iter().map(|x| x * x).sum();
        let denom = &norm2 + Rat::one();
        let mut x: Vec<Rat> = t
            .iter()
            .map(|ti| Rat::from_integer(2.into()) * ti / &denom)
            .collect();
        x.push((&norm2 - Rat::one()) / &denom);
        let key = format!("{x:?}");
        if seen.insert(key) {
            pts.push(x);
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_points_are_exact() {
        for n in 2..=6 {
            for p in sphere_points(n, 25) {
                let norm2: Rat = p.iter().map(|x| x * x).sum();
                assert_eq!(norm2, Rat::one());
            }
        }
    }

    #[test]
    fn frames_annihilate_the_constraint_differential() {
        let ch = Chart::standard(3);
        let ls = LevelSetChart::unit_sphere(ch.clone(), 12).unwrap();
        let df = PolyForm::from_poly(ls.constraint().clone()).exterior_d();
        // dF evaluated on any frame vector at its sample point is zero
        ls.form_vanishes(&df).unwrap();
        assert_eq!(ls.frame(0).len(), 2);
    }

    #[test]
    fn equality_modulo_constraint_multiples() {
        let ch = Chart::standard(3);
        let ls = LevelSetChart::unit_sphere(ch.clone(), 20).unwrap();
        let gamma = PolyForm::basis(&ch, &[0, 1]);
        // a − b = F·γ vanishes on the sphere
        let a = gamma.scale_poly(&Poly::var(&ch, 2));
        let b = a.add(&gamma.scale_poly(ls.constraint()));
        levelset_equal(&a, &b, &ls).unwrap();
        // and a − b = (Σ x_k dx_k) ∧ γ vanishes because frames kill dF
        let half_df = PolyForm::from_poly(ls.constraint().clone())
            .exterior_d()
            .scale(&crate::rational::rat(1, 2));
        let c = a.add(&half_df.wedge(&PolyForm::basis(&ch, &[1])));
        levelset_equal(&a, &c, &ls).unwrap();
        // while a genuinely different form is caught
        let d = a.add(&gamma);
        assert!(levelset_equal(&a, &d, &ls).is_err());
    }

    #[test]
    fn rejects_off_levelset_points() {
        let ch = Chart::standard(2);
        let mut f = Poly::constant(&ch, int(-1));
        for i in 0..2 {
            let x = Poly::var(&ch, i);
            f = &f + &(&x * &x);
        }
        let bad = LevelSetChart::new(ch, f, vec![vec![int(1), int(1)]]);
        assert!(bad.is_err());
    }
}

#[cfg(test)]
mod degenerate_tests {
    use super::*;

    #[test]
    fn rejects_points_where_the_constraint_is_critical() {
        let ch = Chart::standard(2);
        let x1 = Poly::var(&ch, 0);
        let parabola = &x1 * &x1;
        let bad = LevelSetChart::new(ch, parabola, vec![vec![int(0), int(3)]]);
        assert!(bad.is_err());
    }
}

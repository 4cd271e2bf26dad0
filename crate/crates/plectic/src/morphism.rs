//! Morphism equations for maps out of a Lie algebra (or one of its central
//! n-extensions) into a Lie n-algebra with vanishing higher brackets on
//! negative total degree. Targets may be basis tables or the operational
//! observables algebra.

use crate::cochain::CECochain;
use crate::lie::StructLieAlgebra;
use crate::linfty::BracketTable;
use crate::observables::{ObsElem, ObservablesAlgebra};
use crate::rational::{neg_one_pow, Rat};
use crate::value::LinearValue;
use std::collections::BTreeMap;

/// What the morphism checks need from a target L∞-algebra.
pub trait LinftyTarget {
    type Elem: LinearValue;

    /// The Lie n-algebra window.
    fn window(&self) -> usize;
    fn l1(&self, e: &Self::Elem) -> Self::Elem;
    fn lk(&self, k: usize, args: &[Self::Elem]) -> Self::Elem;
    /// Zero test, exact or sampled depending on the target.
    fn elem_vanishes(&self, e: &Self::Elem) -> Result<(), String>;
    /// Higher brackets vanish on negative total degree.
    fn check_property_p(&self) -> Result<(), String>;
}

impl LinftyTarget for BracketTable {
    type Elem = Vec<Rat>;

    fn window(&self) -> usize {
        self.space().window()
    }

    fn l1(&self, e: &Vec<Rat>) -> Vec<Rat> {
        self.eval(1, std::slice::from_ref(e))
    }

    fn lk(&self, k: usize, args: &[Vec<Rat>]) -> Vec<Rat> {
        self.eval(k, args)
    }

    fn elem_vanishes(&self, e: &Vec<Rat>) -> Result<(), String> {
        if LinearValue::is_zero(e) {
            Ok(())
        } else {
            Err(format!("nonzero element {e:?}"))
        }
    }

    fn check_property_p(&self) -> Result<(), String> {
        BracketTable::check_property_p(self)
    }
}

impl LinftyTarget for ObservablesAlgebra {
    type Elem = ObsElem;

    fn window(&self) -> usize {
        self.n()
    }

    fn l1(&self, e: &ObsElem) -> ObsElem {
        ObservablesAlgebra::l1(self, e)
    }

    fn lk(&self, k: usize, args: &[ObsElem]) -> ObsElem {
        ObservablesAlgebra::lk(self, k, args)
    }

    fn elem_vanishes(&self, e: &ObsElem) -> Result<(), String> {
        ObservablesAlgebra::elem_vanishes(self, e)
    }

    fn check_property_p(&self) -> Result<(), String> {
        // Vanishing on negative total degree holds by construction of the
        // bracket definitions.
        Ok(())
    }
}

/// Structure maps f_k: 𝔤^⊗k → L' of degree 1−k, stored as skew tables on
/// basis subsets, plus an optional image of the central generator.
pub struct MorphismData<T: LinftyTarget> {
    source: StructLieAlgebra,
    maps: BTreeMap<usize, CECochain<T::Elem>>,
    central_image: Option<T::Elem>,
}

impl<T: LinftyTarget> MorphismData<T> {
    pub fn new(source: &StructLieAlgebra) -> MorphismData<T> {
        MorphismData {
            source: source.clone(),
            maps: BTreeMap::new(),
            central_image: None,
        }
    }

    pub fn source(&self) -> &StructLieAlgebra {
        &self.source
    }

    pub fn set_map(&mut self, k: usize, table: CECochain<T::Elem>) {
        assert_eq!(table.degree(), k);
        self.maps.insert(k, table);
    }

    pub fn map(&self, k: usize) -> Option<&CECochain<T::Elem>> {
        self.maps.get(&k)
    }

    pub fn set_central_image(&mut self, e: T::Elem) {
        self.central_image = Some(e);
    }

    pub fn central_image(&self) -> Option<&T::Elem> {
        self.central_image.as_ref()
    }

    pub fn max_k(&self) -> usize {
        self.maps.keys().max().copied().unwrap_or(0)
    }

    /// f_k on basis indices; None when the table is absent or skew-kills.
    pub fn eval(&self, k: usize, indices: &[usize]) -> Option<T::Elem> {
        self.maps.get(&k).and_then(|t| t.eval_basis(indices))
    }
}

/// One morphism equation: the bracket-compatibility at a given arity,
/// evaluated on a tuple of source basis elements.
#[derive(Debug, Clone)]
pub struct MorphismFailure {
    pub arity: usize,
    pub args: Vec<usize>,
    pub report: String,
}

fn acc_add<T: LinearValue>(acc: &mut Option<T>, v: T) {
    *acc = Some(match acc.take() {
        None => v,
        Some(a) => a.add(&v),
    });
}

// Σ_{i<j} (−1)^{i+j+1} f_{k−1}([x_i, x_j], x_1..x̂_i..x̂_j..x_k); None is zero.
fn eval_sum_term<T: LinftyTarget>(
    m: &MorphismData<T>,
    k: usize,
    args: &[usize],
) -> Option<T::Elem> {
    let mut acc: Option<T::Elem> = None;
    let g = m.source();
    for a in 0..k {
        for b in a + 1..k {
            let coeffs = g.bracket_basis(args[a], args[b]);
            let rest: Vec<usize> = args
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != a && *p != b)
                .map(|(_, &v)| v)
                .collect();
            let sign = neg_one_pow((a + b + 1) as i64);
            if let Some(table) = m.map(k - 1) {
                for (c, v) in table.eval_mixed(&coeffs, &rest) {
                    acc_add(&mut acc, v.scale(&(&c * &sign)));
                }
            }
        }
    }
    acc
}

/// Verifies the component equations of an L∞-morphism 𝔤 → L' for a target
/// with property (P): for 2 ≤ k ≤ n
///   Σ (−1)^{i+j+1} f_{k−1}(`[x_i,x_j]`, …) = l'_1 f_k(x) + l'_k(f_1 x_1,…,f_1 x_k)
/// and at k = n+1 the same left side equals l'_{n+1}(f_1 x_1,…,f_1 x_{n+1}).
pub fn check_lie_to_linfty_morphism<T: LinftyTarget>(
    m: &MorphismData<T>,
    target: &T,
) -> Result<(), MorphismFailure> {
    target.check_property_p().map_err(|e| MorphismFailure {
        arity: 0,
        args: vec![],
        report: format!("target violates the vanishing property: {e}"),
    })?;
    let n = target.window();
    let d = m.source().dim();
    let f1 = |i: usize| -> T::Elem { m.eval(1, &[i]).expect("f_1 must be total on the basis") };
    for k in 2..=n + 1 {
        for args in crate::perm::increasing_subsets(d, k) {
            let lhs = eval_sum_term(m, k, &args);
            let f1s: Vec<T::Elem> = args.iter().map(|&i| f1(i)).collect();
            let mut rhs = target.lk(k, &f1s);
            if k <= n {
                if let Some(fk) = m.eval(k, &args) {
                    rhs = rhs.add(&target.l1(&fk));
                }
            }
            let residual = match lhs {
                Some(l) => l.sub(&rhs),
                None => rhs.neg(),
            };
            if let Err(report) = target.elem_vanishes(&residual) {
                return Err(MorphismFailure {
                    arity: k,
                    args,
                    report,
                });
            }
        }
    }
    Ok(())
}

/// Verifies the morphism equations for a source that is a central
/// n-extension by the scalar cocycle c: additionally l'_1 f_1(r) = 0 and the
/// top equation acquires the term + c(x_1..x_{n+1})·f_1(r).
pub fn check_ext_morphism<T: LinftyTarget>(
    m: &MorphismData<T>,
    cocycle: &CECochain<Rat>,
    target: &T,
) -> Result<(), MorphismFailure> {
    target.check_property_p().map_err(|e| MorphismFailure {
        arity: 0,
        args: vec![],
        report: format!("target violates the vanishing property: {e}"),
    })?;
    let n = target.window();
    if cocycle.degree() != n + 1 {
        return Err(MorphismFailure {
            arity: 0,
            args: vec![],
            report: "cocycle degree does not match the target window".into(),
        });
    }
    let d = m.source().dim();
    let central = m.central_image().ok_or_else(|| MorphismFailure {
        arity: 0,
        args: vec![],
        report: "missing image of the central generator".into(),
    })?;
    // l_1 f_1(r) = 0; for n = 1 this is trivial on the degree-0 window.
    if n >= 2 {
        let l1fr = target.l1(central);
        if let Err(report) = target.elem_vanishes(&l1fr) {
            return Err(MorphismFailure {
                arity: 1,
                args: vec![],
                report: format!("l_1 f_1(r) ≠ 0: {report}"),
            });
        }
    }
    let f1 = |i: usize| -> T::Elem { m.eval(1, &[i]).expect("f_1 must be total on the basis") };
    for k in 2..=n + 1 {
        for args in crate::perm::increasing_subsets(d, k) {
            let mut lhs = eval_sum_term(m, k, &args);
            if k == n + 1 {
                if let Some(cv) = cocycle.eval_basis(&args) {
                    acc_add(&mut lhs, central.scale(&cv));
                }
            }
            let f1s: Vec<T::Elem> = args.iter().map(|&i| f1(i)).collect();
            let mut rhs = target.lk(k, &f1s);
            if k <= n {
                if let Some(fk) = m.eval(k, &args) {
                    rhs = rhs.add(&target.l1(&fk));
                }
            }
            let residual = match lhs {
                Some(l) => l.sub(&rhs),
                None => rhs.neg(),
            };
            if let Err(report) = target.elem_vanishes(&residual) {
                return Err(MorphismFailure {
                    arity: k,
                    args,
                    report,
                });
            }
        }
    }
    Ok(())
}

/// The morphism between the central n-extensions of two cohomologous
/// cocycles c and c' = c + δb: f_1 = id, f_n = −b into the central line.
/// Cross-checked against the extension-morphism equations by the caller.
pub fn cocycle_quasi_iso(
    g: &StructLieAlgebra,
    c: &CECochain<Rat>,
    c_prime: &CECochain<Rat>,
    b: &CECochain<Rat>,
    n: usize,
) -> Result<(BracketTable, MorphismData<BracketTable>), String> {
    assert!(n >= 2, "the quasi-isomorphism construction needs n ≥ 2");
    if c_prime.sub(&c.add(&b.ce_differential())) != CECochain::zero(g, n + 1) {
        return Err("coboundary mismatch: c' ≠ c + δb".into());
    }
    let target = crate::linfty::central_extension(g, c_prime, n)?;
    let d = g.dim();
    let mut m: MorphismData<BracketTable> = MorphismData::new(g);
    // f_1 = identity on 𝔤
    let mut f1: CECochain<Vec<Rat>> = CECochain::zero(g, 1);
    for i in 0..d {
        f1.add_component(vec![i], target.space().basis_vector(i));
    }
    m.set_map(1, f1);
    m.set_central_image(target.space().basis_vector(d));
    // f_n = −b into the central line
    let mut fn_table: CECochain<Vec<Rat>> = CECochain::zero(g, n);
    for (idx, v) in b.components() {
        fn_table.add_component(
            idx.clone(),
            target.space().basis_vector(d).scale(&-v.clone()),
        );
    }
    m.set_map(n, fn_table);
    Ok((target, m))
}

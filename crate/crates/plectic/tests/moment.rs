//! Moment map construction and verification on the worked examples:
//! rotation actions, translations, spheres, products, and the modification
//! moves of the 2-plectic case.

use plectic::action::{fundamental_fields_linear, ActionData};
use plectic::chart::Chart;
use plectic::cochain::CECochain;
use plectic::equivariant::{check_extension, extension_from_exact, product_extension};
use plectic::form::PolyForm;
use plectic::lie::StructLieAlgebra;
use plectic::moment::{
    check_equivariance, construct_unobstructed, extension_lift, modify_moment_2plectic,
    moment_from_cartan, moment_from_extension, moment_from_perfect, obstruction,
    obstruction_primitive_from_moment, verify_moment, MomentError, MomentMap,
};
use plectic::morphism::check_ext_morphism;
use plectic::multivec::PolyMultiVec;
use plectic::poly::Poly;
use plectic::rational::{int, rat, Rat};
use plectic::space::Space;
use plectic::sphere::{euler_primitive, sphere_two_step};
use std::collections::BTreeMap;

fn sorn_setup(n: usize) -> (ActionData, Space, PolyForm) {
    let (_, act) = StructLieAlgebra::so_n(n);
    let action = fundamental_fields_linear(&act).unwrap();
    let space = Space::Chart(action.chart().clone());
    let alpha = euler_primitive(action.chart(), n).scale(&rat(1, n as i64));
    (action, space, alpha)
}

#[test]
fn rotation_moment_maps_verify_exactly() {
    for n in [2usize, 3, 4] {
        let (action, space, alpha) = sorn_setup(n);
        let ext = extension_from_exact(&alpha, &action, &space).unwrap();
        let m = moment_from_extension(&ext, &space).unwrap();
        let report = verify_moment(&m).unwrap();
        assert!(report.passes(), "n={n}: {:?}", report.equations);
        check_equivariance(&m).unwrap();
    }
}

#[test]
fn so2_first_component_is_the_classical_moment() {
    let (action, space, alpha) = sorn_setup(2);
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let m = moment_from_extension(&ext, &space).unwrap();
    let ch = action.chart().clone();
    let x1 = Poly::var(&ch, 0);
    let x2 = Poly::var(&ch, 1);
    let expect = PolyForm::from_poly((&(&x1 * &x1) + &(&x2 * &x2)).scale(&rat(-1, 2)));
    assert_eq!(m.eval(1, &[0]), expect);
}

#[test]
fn so3_second_component_value() {
    let (action, space, alpha) = sorn_setup(3);
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let m = moment_from_extension(&ext, &space).unwrap();
    // f_2(e_12, e_13) = −(1/3) x1 (x1² + x2² + x3²)
    let ch = action.chart().clone();
    let x = |i: usize| Poly::var(&ch, i);
    let r2 = &(&(&x(0) * &x(0)) + &(&x(1) * &x(1))) + &(&x(2) * &x(2));
    let expect = PolyForm::from_poly((&x(0) * &r2).scale(&rat(-1, 3)));
    assert_eq!(m.eval(2, &[0, 1]), expect);
}

#[test]
fn cartan_route_agrees_with_extension_route_for_one_step_cocycles() {
    for n in [2usize, 3] {
        let (action, space, alpha) = sorn_setup(n);
        // several invariant rescalings of the primitive give distinct cocycles
        for j in 0..3u32 {
            let ch = action.chart().clone();
            let mut r2 = Poly::zero(&ch);
            for i in 0..n {
                let xi = Poly::var(&ch, i);
                r2 = &r2 + &(&xi * &xi);
            }
            let weight = &Poly::one(&ch) + &r2.pow(j).scale(&rat(1, 1 + j as i64));
            let a = alpha.scale_poly(&weight);
            let ext = extension_from_exact(&a, &action, &space).unwrap();
            let via_ext = moment_from_extension(&ext, &space).unwrap();
            let via_cartan = moment_from_cartan(&ext, &space).unwrap();
            for k in 1..=via_ext.n() {
                assert_eq!(
                    via_ext.component(k),
                    via_cartan.component(k),
                    "n={n}, j={j}, k={k}"
                );
            }
            assert!(verify_moment(&via_cartan).unwrap().passes());
        }
    }
}

#[test]
fn sphere_cartan_cocycles_produce_verified_moment_maps() {
    for n in [3usize, 4] {
        let (space, _, ext) = sphere_two_step(n, 8).unwrap();
        let report = check_extension(&ext, &space);
        assert!(report.is_cocycle(), "n={n}: {:?}", report.first_failure());
        let m = moment_from_cartan(&ext, &space).unwrap();
        let rep = verify_moment(&m).unwrap();
        assert!(rep.passes(), "n={n}: {:?}", rep.equations);
    }
}

#[test]
fn product_extension_moment_verifies() {
    let (a1, s1, alpha1) = sorn_setup(2);
    let ext1 = extension_from_exact(&alpha1, &a1, &s1).unwrap();
    let (a2, s2, alpha2) = sorn_setup(2);
    let ext2 = extension_from_exact(&alpha2, &a2, &s2).unwrap();
    let (action, prod) = product_extension(&ext1, &ext2).unwrap();
    let space = Space::Chart(action.chart().clone());
    let m = moment_from_cartan(&prod, &space).unwrap();
    assert!(verify_moment(&m).unwrap().passes());
    check_equivariance(&m).unwrap();
}

fn translation_setup() -> (ActionData, Space, PolyForm) {
    let ab = StructLieAlgebra::abelian(2);
    let ch = Chart::standard(2);
    let fields = vec![
        PolyMultiVec::basis(&ch, &[0]).scale(&int(-1)),
        PolyMultiVec::basis(&ch, &[1]).scale(&int(-1)),
    ];
    let action = ActionData::new(ab, ch.clone(), fields).unwrap();
    let omega = PolyForm::basis(&ch, &[0, 1]);
    (action, Space::Chart(ch), omega)
}

#[test]
fn translations_on_the_plane_are_obstructed() {
    let (action, space, omega) = translation_setup();
    let origin = vec![int(0), int(0)];
    let obs = obstruction(&action, &omega, &space, &origin).unwrap();
    assert!(!obs.is_trivial());
    assert_eq!(obs.cocycle.eval_basis(&[0, 1]), Some(int(-1)));
    // the existence construction refuses
    let ch = action.chart().clone();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    // dφ(e_i) = −ι_{v_i}ω: v_1 = −∂1 gives ι_{v_1}ω = −dx2, so φ(e_1) = x2 …
    phi.add_component(vec![0], PolyForm::from_poly(Poly::var(&ch, 1)));
    phi.add_component(vec![1], PolyForm::from_poly(Poly::var(&ch, 0)).neg());
    match construct_unobstructed(&action, &omega, &phi, &space, &origin) {
        Err(MomentError::Obstructed(_)) => {}
        Err(other) => panic!("expected the obstructed error, got {other:?}"),
        Ok(_) => panic!("expected the obstructed error, construction succeeded"),
    }
    // the verdict is the same at three base points
    for p in [
        vec![int(1), int(0)],
        vec![rat(1, 2), rat(-1, 3)],
        vec![int(-2), int(5)],
    ] {
        assert!(!obstruction(&action, &omega, &space, &p)
            .unwrap()
            .is_trivial());
    }
}

#[test]
fn heisenberg_lift_of_the_translation_action() {
    let (action, space, omega) = translation_setup();
    let ch = action.chart().clone();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    phi.add_component(vec![0], PolyForm::from_poly(Poly::var(&ch, 1)));
    phi.add_component(vec![1], PolyForm::from_poly(Poly::var(&ch, 0)).neg());
    let origin = vec![int(0), int(0)];
    let (ghat, cocycle, target, morph) =
        extension_lift(&action, &omega, &phi, &space, &origin).unwrap();
    // ĝ is the Heisenberg algebra: l_2(e1, e2) = −r here
    assert_eq!(ghat.eval_basis(2, &[0, 1]), vec![int(0), int(0), int(-1)]);
    plectic::linfty::check_generalized_jacobi(&ghat, 3).unwrap();
    check_ext_morphism(&morph, &cocycle, &target).unwrap();
}

#[test]
fn so3_obstruction_is_trivial_and_construction_succeeds() {
    let (action, space, alpha) = sorn_setup(3);
    let omega = alpha.exterior_d();
    for p in [
        vec![int(0), int(0), int(0)],
        vec![int(1), int(0), int(0)],
        vec![rat(1, 2), rat(1, 3), int(-1)],
    ] {
        let obs = obstruction(&action, &omega, &space, &p).unwrap();
        assert!(obs.is_trivial(), "base point {p:?}");
    }
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    for i in 0..3 {
        phi.add_component(vec![i], plectic::equivariant::one_step_mu(&ext, i));
    }
    let origin = vec![int(0), int(0), int(0)];
    let m = construct_unobstructed(&action, &omega, &phi, &space, &origin).unwrap();
    assert!(verify_moment(&m).unwrap().passes());
    // f_1 is the prescribed φ
    for i in 0..3 {
        assert_eq!(m.eval(1, &[i]), phi.eval_basis(&[i]).unwrap());
    }
}

#[test]
fn su2_left_translation_lift_is_the_string_extension() {
    // the Lie-algebra-level model: su(2) acting on itself at a point is not
    // available on a chart, so the string extension is exercised through the
    // cocycle directly; the lift machinery is exercised by the Heisenberg
    // case above. Here we check that the extension of su(2) by its volume
    // cocycle passes the generalized Jacobi identity through arity 4.
    let su2 = StructLieAlgebra::su2();
    let c: CECochain<Rat> =
        CECochain::from_components(&su2, 3, vec![(vec![0, 1, 2], int(1))]).unwrap();
    let s = plectic::linfty::central_extension(&su2, &c, 2).unwrap();
    plectic::linfty::check_generalized_jacobi(&s, 4).unwrap();
}

#[test]
fn perfect_algebra_moment_candidate() {
    let (action, space, alpha) = sorn_setup(3);
    let omega = alpha.exterior_d();
    let mu = moment_from_perfect(&action, &omega, &space).unwrap();
    // both primitives of −ι_{v_x}ω differ by a closed form
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    for i in 0..3 {
        let diff = mu
            .eval_basis(&[i])
            .unwrap()
            .sub(&plectic::equivariant::one_step_mu(&ext, i));
        assert!(diff.exterior_d().is_zero());
    }
    // abelian algebras are rejected
    let (tr_action, tr_space, tr_omega) = translation_setup();
    assert!(moment_from_perfect(&tr_action, &tr_omega, &tr_space).is_err());
}

#[test]
fn torus_modification_gives_equivariant_non_cocycle_moment_map() {
    // chart model (θ1, θ2, z) with ω = dθ1∧dθ2∧dz and the torus translations
    let ab = StructLieAlgebra::abelian(2);
    let ch = Chart::new(vec!["theta1", "theta2", "z"]).unwrap();
    let fields = vec![
        PolyMultiVec::basis(&ch, &[0]),
        PolyMultiVec::basis(&ch, &[1]),
    ];
    let action = ActionData::new(ab, ch.clone(), fields).unwrap();
    let space = Space::Chart(ch.clone());
    let omega = PolyForm::basis(&ch, &[0, 1, 2]);
    let z = Poly::var(&ch, 2);
    // μ: e1 ↦ z dθ2, e2 ↦ −z dθ1 is a 1-step extension of ω
    let mut ext = plectic::equivariant::CartanCochain::new(&action, 3);
    ext.set_entry(vec![], omega.clone());
    ext.set_entry(vec![0], PolyForm::basis(&ch, &[1]).scale_poly(&z).neg());
    ext.set_entry(vec![1], PolyForm::basis(&ch, &[0]).scale_poly(&z));
    assert!(check_extension(&ext, &space).is_cocycle());
    let base = moment_from_extension(&ext, &space).unwrap();
    assert!(verify_moment(&base).unwrap().passes());

    // add the closed equivariant shift f̃1 = (dθ1, dθ2), f̃2 constant
    let mut f1 = base.component(1).unwrap().clone();
    f1.add_component(vec![0], PolyForm::basis(&ch, &[0]));
    f1.add_component(vec![1], PolyForm::basis(&ch, &[1]));
    let mut f2 = base.component(2).unwrap().clone();
    f2.add_component(
        vec![0, 1],
        PolyForm::from_poly(Poly::constant(&ch, rat(1, 2))),
    );
    let mut comps = BTreeMap::new();
    comps.insert(1, f1.clone());
    comps.insert(2, f2);
    let modified = MomentMap::new(&action, &space, omega.clone(), comps);
    assert!(verify_moment(&modified).unwrap().passes());
    check_equivariance(&modified).unwrap();

    // but the 1-step data ω − f̃1 is NOT a cocycle: ι_{v_x}μ̃(x) = 1 ≠ 0
    let mut bad_ext = plectic::equivariant::CartanCochain::new(&action, 3);
    bad_ext.set_entry(vec![], omega);
    for i in 0..2 {
        bad_ext.set_entry(vec![i], f1.eval_basis(&[i]).unwrap().neg());
    }
    let report = check_extension(&bad_ext, &space);
    assert!(!report.is_cocycle());
    let failure = report.first_failure().unwrap();
    assert_eq!(failure.level, 2, "fails exactly at the quadratic condition");
    // the residual witness is the constant 1: d_G picks up ι_{v_x}μ̃(x) = 1
    let (slots, witness) = failure.witness.clone().unwrap();
    assert_eq!(slots, vec![0, 0]);
    assert!(witness.contains("nonzero form (1)"), "{witness}");
}

#[test]
fn moment_maps_trivialize_the_obstruction_at_every_point() {
    let (action, space, alpha) = sorn_setup(3);
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let m = moment_from_extension(&ext, &space).unwrap();
    for p in [
        vec![int(0), int(0), int(0)],
        vec![int(1), int(-1), int(2)],
        vec![rat(1, 3), rat(2, 5), rat(-1, 7)],
    ] {
        let obs = obstruction(&action, m.omega(), &space, &p).unwrap();
        let b = obstruction_primitive_from_moment(&m, &p);
        assert_eq!(b.ce_differential(), obs.cocycle, "base point {p:?}");
    }
}

#[test]
fn modification_move_preserves_the_moment_equations() {
    let (action, space, alpha) = sorn_setup(3);
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let m = moment_from_extension(&ext, &space).unwrap();
    let ch = action.chart().clone();
    // ψ = 0 leaves the map unchanged
    let zero_psi = vec![Poly::zero(&ch); 3];
    let same = modify_moment_2plectic(&m, &zero_psi).unwrap();
    for k in 1..=2 {
        assert_eq!(same.component(k), m.component(k));
    }
    // a nontrivial ψ still verifies
    let psi = vec![
        Poly::var(&ch, 0),
        &Poly::var(&ch, 1) * &Poly::var(&ch, 2),
        Poly::constant(&ch, rat(3, 7)),
    ];
    let moved = modify_moment_2plectic(&m, &psi).unwrap();
    assert!(verify_moment(&moved).unwrap().passes());
}

/// An independent route through the two defining equations of the
/// pre-2-plectic case, written directly from their component form:
///   f1([x,y]) − ι(v_x∧v_y)ω = d f2(x,y)
///   −ι(v_x∧v_y∧v_z)ω = f2(x,[y,z]) − f2(y,[x,z]) + f2(z,[x,y]).
fn two_plectic_equations_hold(m: &MomentMap) -> bool {
    use plectic::form::interior;
    let action = m.action();
    let g = action.algebra();
    let d = g.dim();
    let space = m.space();
    let eval_f2 = |x: usize, y: &[Rat]| -> PolyForm {
        let mut acc = PolyForm::zero(action.chart(), m.n() - 2);
        for (t, c) in y.iter().enumerate() {
            if t == x {
                continue;
            }
            let idx = if x < t { vec![x, t] } else { vec![t, x] };
            let sign = if x < t { c.clone() } else { -c.clone() };
            acc = acc.add(&m.eval(2, &idx).scale(&sign));
        }
        acc
    };
    for x in 0..d {
        for y in x + 1..d {
            let br = g.bracket_basis(x, y);
            let mut f1_of_bracket = PolyForm::zero(action.chart(), m.n() - 1);
            for (t, c) in br.iter().enumerate() {
                f1_of_bracket = f1_of_bracket.add(&m.eval(1, &[t]).scale(c));
            }
            let wedge = action.field(x).wedge(action.field(y));
            let pairing = if wedge.is_zero() {
                PolyForm::zero(action.chart(), m.n() - 1)
            } else {
                interior(&wedge, m.omega()).unwrap()
            };
            let lhs = f1_of_bracket.sub(&pairing);
            let rhs = m.eval(2, &[x, y]).exterior_d();
            if space.forms_equal(&lhs, &rhs).is_err() {
                return false;
            }
            for z in y + 1..d {
                let triple = wedge.wedge(action.field(z));
                let lhs3 = if triple.is_zero() {
                    PolyForm::zero(action.chart(), m.n() - 2)
                } else {
                    interior(&triple, m.omega()).unwrap().neg()
                };
                let rhs3 = eval_f2(x, &g.bracket_basis(y, z))
                    .sub(&eval_f2(y, &g.bracket_basis(x, z)))
                    .add(&eval_f2(z, &g.bracket_basis(x, y)));
                if space.forms_equal(&lhs3, &rhs3).is_err() {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn two_plectic_equations_agree_with_the_general_verifier() {
    // passing cases: rotation moments on ℝ³ and the modified torus data
    let (action, space, alpha) = sorn_setup(3);
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let good = moment_from_extension(&ext, &space).unwrap();
    assert!(verify_moment(&good).unwrap().passes());
    assert!(two_plectic_equations_hold(&good));
    // failing case: zero out f2, both routes must reject
    let mut broken = BTreeMap::new();
    broken.insert(1, good.component(1).unwrap().clone());
    let bad = MomentMap::new(&action, &space, good.omega().clone(), broken);
    assert!(!verify_moment(&bad).unwrap().passes());
    assert!(!two_plectic_equations_hold(&bad));
    // a perturbed f2 fails both routes as well
    let mut perturbed = good.components().clone();
    let mut f2 = good.component(2).unwrap().clone();
    f2.add_component(
        vec![0, 1],
        PolyForm::from_poly(Poly::var(action.chart(), 0)),
    );
    perturbed.insert(2, f2);
    let bad2 = MomentMap::new(&action, &space, good.omega().clone(), perturbed);
    assert!(!verify_moment(&bad2).unwrap().passes());
    assert!(!two_plectic_equations_hold(&bad2));
}

#[test]
fn lift_correction_at_a_base_point_off_the_zero_set() {
    // at a base point where the potential does not vanish, the top
    // correction b = f_n|_p is nonzero and the morphism still verifies
    let (action, space, omega) = translation_setup();
    let ch = action.chart().clone();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    phi.add_component(vec![0], PolyForm::from_poly(Poly::var(&ch, 1)));
    phi.add_component(vec![1], PolyForm::from_poly(Poly::var(&ch, 0)).neg());
    let p = vec![int(3), int(5)];
    let (_, cocycle, target, morph) = extension_lift(&action, &omega, &phi, &space, &p).unwrap();
    check_ext_morphism(&morph, &cocycle, &target).unwrap();
    // the degree-0 images were shifted by the evaluation at p
    let f1 = morph.map(1).unwrap();
    let at_e1 = f1.eval_basis(&[0]).unwrap();
    let shifted = at_e1.form().as_poly();
    assert_eq!(
        shifted.eval(&p),
        int(0),
        "f_1(e_1) vanishes at the base point"
    );
    assert_eq!(shifted.eval(&[int(0), int(0)]), int(-5));
}

#[test]
fn unobstructed_construction_away_from_the_origin() {
    let (action, space, alpha) = sorn_setup(3);
    let omega = alpha.exterior_d();
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    for i in 0..3 {
        phi.add_component(vec![i], plectic::equivariant::one_step_mu(&ext, i));
    }
    let p = vec![int(1), int(-2), rat(1, 2)];
    let m = construct_unobstructed(&action, &omega, &phi, &space, &p).unwrap();
    assert!(verify_moment(&m).unwrap().passes());
    // the canonical-primitive route may differ from the extension route by
    // a closed correction only
    let other = moment_from_extension(&ext, &space).unwrap();
    for args in [[0usize, 1], [0, 2], [1, 2]] {
        let diff = m.eval(2, &args).sub(&other.eval(2, &args));
        assert!(diff.exterior_d().is_zero(), "{args:?}");
    }
}

#[test]
fn trivial_obstruction_lift_restricts_to_a_moment_map() {
    // when the class vanishes, the central slot decouples: the lift passes
    // the extension-morphism equations and its algebra part is a moment map
    let (action, space, alpha) = sorn_setup(3);
    let omega = alpha.exterior_d();
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    let mut phi: CECochain<PolyForm> = CECochain::zero(action.algebra(), 1);
    for i in 0..3 {
        phi.add_component(vec![i], plectic::equivariant::one_step_mu(&ext, i));
    }
    let origin = vec![int(0); 3];
    let (ghat, cocycle, target, mut morph) =
        extension_lift(&action, &omega, &phi, &space, &origin).unwrap();
    assert!(cocycle.is_zero(), "the obstruction cocycle vanishes here");
    plectic::linfty::check_generalized_jacobi(&ghat, 4).unwrap();
    check_ext_morphism(&morph, &cocycle, &target).unwrap();
    // the algebra-valued components form a genuine moment map
    let mut comps = BTreeMap::new();
    for k in 1..=2usize {
        let table = morph.map(k).unwrap();
        comps.insert(k, table.map_values(|e| e.form().clone()));
    }
    let restricted = MomentMap::new(&action, &space, omega.clone(), comps);
    assert!(verify_moment(&restricted).unwrap().passes());
    // a central image that is not closed fails the first equation family
    morph.set_central_image(plectic::observables::ObsElem::Form {
        degree: -1,
        form: PolyForm::from_poly(Poly::var(action.chart(), 0)),
    });
    let err = check_ext_morphism(&morph, &cocycle, &target).unwrap_err();
    assert_eq!(err.arity, 1, "fails at the closedness of the central image");
}

#[test]
fn zero_action_with_zero_moment_verifies() {
    let ab = StructLieAlgebra::abelian(2);
    let ch = Chart::standard(3);
    let fields = vec![PolyMultiVec::zero(&ch, 1), PolyMultiVec::zero(&ch, 1)];
    let action = ActionData::new(ab, ch.clone(), fields).unwrap();
    let space = Space::Chart(ch.clone());
    let omega = PolyForm::basis(&ch, &[0, 1, 2]);
    let m = MomentMap::new(&action, &space, omega, BTreeMap::new());
    assert!(verify_moment(&m).unwrap().passes());
}

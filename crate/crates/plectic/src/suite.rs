//! Randomized exact property suites. Every suite runs a requested number of
//! instances from a seed and reports the first failure with its witness.

use crate::action::ActionData;
use crate::chart::Chart;
use crate::cochain::CECochain;
use crate::form::{interior, lie_derivative, poincare_homotopy, PolyForm};
use crate::lie::StructLieAlgebra;
use crate::multivec::{schouten, PolyMultiVec};
use crate::observables::ObservablesAlgebra;
use crate::perm::increasing_subsets;
use crate::poly::Poly;
use crate::rational::{int, neg_one_pow, Rat};
use crate::rng::Rng;
use crate::space::Space;
use crate::value::LinearValue;

pub fn random_poly(rng: &mut Rng, chart: &Chart, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(chart);
    for _ in 0..terms {
        let mut e = vec![0u32; chart.dim()];
        let mut budget = max_deg;
        for slot in &mut e {
            let step = rng.usize(budget as usize + 1) as u32;
            *slot = step;
            budget -= step.min(budget);
        }
        p = &p + &Poly::monomial(chart, e, rng.rat(4, 3));
    }
    p
}

pub fn random_form(rng: &mut Rng, chart: &Chart, degree: usize, terms: usize) -> PolyForm {
    let mut f = PolyForm::zero(chart, degree);
    let subsets = increasing_subsets(chart.dim(), degree);
    for _ in 0..terms {
        let idx = subsets[rng.usize(subsets.len())].clone();
        f = f.add(&PolyForm::monomial(
            chart,
            &idx,
            random_poly(rng, chart, 3, 2),
        ));
    }
    f
}

pub fn random_multivec(rng: &mut Rng, chart: &Chart, degree: usize, terms: usize) -> PolyMultiVec {
    let mut v = PolyMultiVec::zero(chart, degree);
    let subsets = increasing_subsets(chart.dim(), degree);
    for _ in 0..terms {
        let idx = subsets[rng.usize(subsets.len())].clone();
        v = v.add(&PolyMultiVec::basis(chart, &idx).scale_poly(&random_poly(rng, chart, 2, 2)));
    }
    v
}

/// d∘d = 0 on random forms (charts of dimension ≤ 5, degree ≤ 4).
pub fn suite_d_squared(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for t in 0..instances {
        let n = 2 + rng.usize(4);
        let chart = Chart::standard(n);
        let deg = rng.usize(n.min(4) + 1);
        let a = random_form(&mut rng, &chart, deg, 3);
        if !a.exterior_d().exterior_d().is_zero() {
            return Err(format!("d² ≠ 0 at instance {t} on {a}"));
        }
    }
    Ok(())
}

/// d(a∧b) = da∧b + (−1)^{deg a} a∧db on random pairs.
pub fn suite_leibniz(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for t in 0..instances {
        let n = 2 + rng.usize(3);
        let chart = Chart::standard(n);
        let da = rng.usize(n);
        let db = rng.usize(n - da + 1);
        let a = random_form(&mut rng, &chart, da, 2);
        let b = random_form(&mut rng, &chart, db, 2);
        let lhs = a.wedge(&b).exterior_d();
        let rhs = a
            .exterior_d()
            .wedge(&b)
            .add(&a.wedge(&b.exterior_d()).scale(&neg_one_pow(da as i64)));
        if lhs != rhs {
            return Err(format!("Leibniz fails at instance {t}"));
        }
    }
    Ok(())
}

/// ι(`[u,v]`)α = (−1)^{(deg u − 1) deg v} L_u ι(v) α − ι(v) L_u α.
pub fn suite_commutator(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    let mut done = 0;
    while done < instances {
        let n = 3 + rng.usize(2);
        let chart = Chart::standard(n);
        let du = 1 + rng.usize(2);
        let dv = 1 + rng.usize(3 - du.min(2));
        if du + dv > 4 {
            continue;
        }
        let u = random_multivec(&mut rng, &chart, du, 2);
        let v = random_multivec(&mut rng, &chart, dv, 2);
        let da = (du + dv - 1) + rng.usize(n + 2 - du - dv);
        let a = random_form(&mut rng, &chart, da.min(n), 2);
        let bracket = schouten(&u, &v).map_err(|e| e.to_string())?;
        let lhs = if a.degree() >= bracket.degree() {
            interior(&bracket, &a).map_err(|e| e.to_string())?
        } else {
            PolyForm::zero(&chart, 0)
        };
        // right side: both summands exist only when degrees allow
        let target = a.degree() as i64 - (du + dv - 1) as i64;
        if target < 0 {
            done += 1;
            continue;
        }
        let iva = if a.degree() >= dv {
            interior(&v, &a).map_err(|e| e.to_string())?
        } else {
            PolyForm::zero(&chart, 0)
        };
        let term1 = lie_derivative(&u, &iva)
            .map_err(|e| e.to_string())?
            .scale(&neg_one_pow(((du as i64) - 1) * dv as i64));
        let lua = lie_derivative(&u, &a).map_err(|e| e.to_string())?;
        let term2 = if lua.degree() >= dv {
            interior(&v, &lua).map_err(|e| e.to_string())?
        } else {
            PolyForm::zero(&chart, target as usize)
        };
        let rhs = term1.sub(&term2);
        if lhs != rhs {
            return Err(format!(
                "interior/Lie commutator identity fails at instance {done}: u={u}, v={v}, a={a}"
            ));
        }
        done += 1;
    }
    Ok(())
}

/// dK + Kd = id on random forms of degree ≥ 1.
pub fn suite_poincare(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for t in 0..instances {
        let n = 2 + rng.usize(4);
        let chart = Chart::standard(n);
        let deg = 1 + rng.usize(n.min(4));
        let a = random_form(&mut rng, &chart, deg, 3);
        let ka = poincare_homotopy(&a).map_err(|e| e.to_string())?;
        let dka = ka.exterior_d();
        let kda = if a.degree() < chart.dim() {
            poincare_homotopy(&a.exterior_d()).map_err(|e| e.to_string())?
        } else {
            PolyForm::zero(&chart, deg)
        };
        if dka.add(&kda) != a {
            return Err(format!("dK + Kd ≠ id at instance {t} on {a}"));
        }
    }
    Ok(())
}

/// ι(v)∘ι(v) = 0 for vector fields.
pub fn suite_interior_squared(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for t in 0..instances {
        let n = 2 + rng.usize(3);
        let chart = Chart::standard(n);
        let v = random_multivec(&mut rng, &chart, 1, 2);
        let deg = 2 + rng.usize(n - 1);
        let a = random_form(&mut rng, &chart, deg, 3);
        let once = interior(&v, &a).map_err(|e| e.to_string())?;
        let twice = interior(&v, &once).map_err(|e| e.to_string())?;
        if !twice.is_zero() {
            return Err(format!("ι(v)² ≠ 0 at instance {t}"));
        }
    }
    Ok(())
}

/// δ∘δ = 0 on random scalar cochains over the standard small algebras.
pub fn suite_ce_squared(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    let algebras = [
        StructLieAlgebra::su2(),
        StructLieAlgebra::heisenberg3(),
        StructLieAlgebra::solvable4(),
        StructLieAlgebra::so_n(3).0,
        StructLieAlgebra::abelian(4),
    ];
    for t in 0..instances {
        let g = &algebras[rng.usize(algebras.len())];
        let k = rng.usize(g.dim());
        let mut c: CECochain<Rat> = CECochain::zero(g, k);
        for idx in increasing_subsets(g.dim(), k) {
            c.add_component(idx, rng.rat(5, 3));
        }
        if !c.ce_differential().ce_differential().is_zero() {
            return Err(format!("δ² ≠ 0 at instance {t} on {:?}", g));
        }
    }
    Ok(())
}

/// On registered invariant scenarios: d ι(v_x∧v_y) ω = −ι(`[v_x,v_y]`) ω and
/// the higher identity
/// d ι(v_1∧⋯∧v_m) ω = (−1)^m Σ_{i<j} (−1)^{i+j} ι(`[v_i,v_j]`∧…) ω, m ≤ 4,
/// for random elements of the acting algebra.
pub fn suite_local_hamiltonian_identities(
    scenarios: &[(ActionData, PolyForm, Space)],
    seed: u64,
    instances: usize,
) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for t in 0..instances {
        let (action, omega, space) = &scenarios[rng.usize(scenarios.len())];
        let d = action.algebra().dim();
        let m = 2 + rng.usize(3.min(omega.degree()).max(1));
        let m = m.min(omega.degree());
        let xs: Vec<Vec<Rat>> = (0..m)
            .map(|_| (0..d).map(|_| rng.rat(3, 2)).collect())
            .collect();
        let fields: Vec<PolyMultiVec> = xs.iter().map(|x| action.field_of(x)).collect();
        let mut wedge: Option<PolyMultiVec> = None;
        for f in &fields {
            wedge = Some(match wedge {
                None => f.clone(),
                Some(w) => w.wedge(f),
            });
        }
        let wedge = wedge.unwrap();
        let lhs = if wedge.is_zero() {
            PolyForm::zero(action.chart(), omega.degree() - m + 1)
        } else {
            interior(&wedge, omega)
                .map_err(|e| e.to_string())?
                .exterior_d()
        };
        let mut rhs = PolyForm::zero(action.chart(), omega.degree() - m + 1);
        for i in 0..m {
            for j in i + 1..m {
                let br = schouten(&fields[i], &fields[j]).map_err(|e| e.to_string())?;
                let mut mv = br;
                for (p, f) in fields.iter().enumerate() {
                    if p != i && p != j {
                        mv = mv.wedge(f);
                    }
                }
                if mv.is_zero() {
                    continue;
                }
                let sign = neg_one_pow((m + i + j) as i64);
                rhs = rhs.add(
                    &interior(&mv, omega)
                        .map_err(|e| e.to_string())?
                        .scale(&sign),
                );
            }
        }
        space
            .forms_equal(&lhs, &rhs)
            .map_err(|w| format!("local-Hamiltonian identity fails at instance {t}, m={m}: {w}"))?;
    }
    Ok(())
}

/// Pointwise generalized Jacobi identity at arity 3 for the observables
/// brackets, on random Hamiltonian pairs of a volume form.
pub fn suite_observables_jacobi(seed: u64, instances: usize) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    let chart = Chart::standard(3);
    let omega = PolyForm::basis(&chart, &[0, 1, 2]);
    let alg = ObservablesAlgebra::new(Space::Chart(chart.clone()), omega.clone())
        .map_err(|e| e.to_string())?;
    for t in 0..instances {
        // random Hamiltonian pairs: for the volume form, any 1-form α has
        // a field v with ι_v ω = −dα, read off the 2-form coefficients
        let pair = |rng: &mut Rng| -> Result<crate::observables::ObsElem, String> {
            let alpha = random_form(rng, &chart, 1, 2);
            let da = alpha.exterior_d();
            // ι_v (dx1∧dx2∧dx3) = v1 dx23 − v2 dx13 + v3 dx12
            let coeffs = vec![
                da.component(&[1, 2]).scale(&int(-1)),
                da.component(&[0, 2]),
                da.component(&[0, 1]).scale(&int(-1)),
            ];
            let v = PolyMultiVec::from_coefficients(&chart, &coeffs);
            alg.pair(v, alpha)
        };
        let a = pair(&mut rng)?;
        let b = pair(&mut rng)?;
        let c = pair(&mut rng)?;
        // arity-3 identity: the l_2-Jacobiator balances l_1 l_3 + l_3 l_1∘…;
        // for degree-0 triples the only surviving terms are
        // Σ ± l_2(l_2(·,·),·) + l_1 l_3(a,b,c) = 0 with unshuffle signs
        let mut residual = alg.lk(2, &[alg.lk(2, &[a.clone(), b.clone()]), c.clone()]);
        residual = residual.add(
            &alg.lk(2, &[alg.lk(2, &[a.clone(), c.clone()]), b.clone()])
                .neg(),
        );
        residual = residual.add(&alg.lk(2, &[alg.lk(2, &[b.clone(), c.clone()]), a.clone()]));
        residual = residual.add(&alg.l1(&alg.lk(3, &[a, b, c])));
        alg.elem_vanishes(&residual)
            .map_err(|w| format!("observables Jacobi fails at instance {t}: {w}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fundamental_fields_linear;
    use crate::sphere::euler_primitive;

    #[test]
    fn quick_runs_of_each_suite() {
        suite_d_squared(1, 25).unwrap();
        suite_leibniz(2, 25).unwrap();
        suite_commutator(3, 25).unwrap();
        suite_poincare(4, 25).unwrap();
        suite_interior_squared(5, 25).unwrap();
        suite_ce_squared(6, 25).unwrap();
        suite_observables_jacobi(7, 10).unwrap();
    }

    #[test]
    fn local_hamiltonian_identities_on_rotation_scenarios() {
        let mut scenarios = Vec::new();
        for n in [3usize, 4] {
            let (_, act) = StructLieAlgebra::so_n(n);
            let action = fundamental_fields_linear(&act).unwrap();
            let chart = action.chart().clone();
            let omega = euler_primitive(&chart, n).exterior_d();
            scenarios.push((action, omega, Space::Chart(chart)));
        }
        suite_local_hamiltonian_identities(&scenarios, 8, 20).unwrap();
    }
}

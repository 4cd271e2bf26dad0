//! The rotation action on the unit sphere S^n ⊂ ℝ^{n+1} with its volume
//! form, extended to a 2-step Cartan cocycle ω + P + Q for 2 ≤ n ≤ 5.

use crate::action::{fundamental_fields_linear_on, ActionData};
use crate::chart::Chart;
use crate::equivariant::CartanCochain;
use crate::form::{interior, PolyForm};
use crate::levelset::LevelSetChart;
use crate::lie::{LinearAction, StructLieAlgebra};
use crate::poly::Poly;
use crate::rational::{int, neg_one_pow, rat, Rat};
use crate::space::Space;

/// so(n) acting on ℝ^{n+1} through the block embedding fixing the last axis.
pub fn so_n_on_sphere_ambient(n: usize) -> (ActionData, Chart) {
    let (alg, act) = StructLieAlgebra::so_n(n);
    let chart = Chart::standard(n + 1);
    let mut mats = Vec::with_capacity(alg.dim());
    for k in 0..alg.dim() {
        let small = act.matrix(k);
        let mut big = vec![vec![int(0); n + 1]; n + 1];
        for r in 0..n {
            for s in 0..n {
                big[r][s] = small[r][s].clone();
            }
        }
        mats.push(big);
    }
    let embedded = LinearAction::new(alg, mats).expect("block embedding is a representation");
    let action = fundamental_fields_linear_on(&embedded, &chart).expect("linear fields");
    (action, chart)
}

/// The (n−1)-form α = Σ_{k=1}^{n} (−1)^{k+1} x_k dx_1…\hat{dx_k}…dx_n on the
/// first n coordinates of the chart.
pub fn euler_primitive(chart: &Chart, n: usize) -> PolyForm {
    let mut alpha = PolyForm::zero(chart, n - 1);
    for k in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let coeff = Poly::var(chart, k).scale(&neg_one_pow(k as i64));
        alpha = alpha.add(&PolyForm::monomial(chart, &idx, coeff));
    }
    alpha
}

/// The ambient representative of the sphere volume form:
/// ω = Σ_{k=1}^{n+1} (−1)^{k+1} x_k dx_1…\hat{dx_k}…dx_{n+1}.
pub fn sphere_volume_ambient(chart: &Chart) -> PolyForm {
    euler_primitive(chart, chart.dim())
}

/// The sign B^{i,j}_{l,m} = (−1)^{#\{x ∈ \{i,j\} : l < x < m\}} (1-based).
fn b_sign(i: usize, j: usize, l: usize, m: usize) -> Rat {
    let count = [i, j].iter().filter(|&&x| l < x && x < m).count();
    neg_one_pow(count as i64)
}

/// The 2-step extension data of the sphere scenario: the level set with
/// sampled frames, the ambient so(n) action, and the cocycle ω + P + Q.
pub fn sphere_two_step(
    n: usize,
    sample_points: usize,
) -> Result<(Space, ActionData, CartanCochain), String> {
    if !(2..=5).contains(&n) {
        return Err(format!("sphere construction supports 2 ≤ n ≤ 5, got {n}"));
    }
    let (action, chart) = so_n_on_sphere_ambient(n);
    let ls = LevelSetChart::unit_sphere(chart.clone(), sample_points)?;
    let space = Space::LevelSet(ls);

    let alpha = euler_primitive(&chart, n);
    let omega = sphere_volume_ambient(&chart);
    let total = omega.degree();
    let mut c = CartanCochain::new(&action, total);
    c.set_entry(vec![], omega);

    // basis order of so(n): pairs (i, j), i < j, lexicographic, 1-based here
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let last = Poly::var(&chart, n); // x_{n+1}
    let last3 = &(&last * &last) * &last;
    let cubic = &last - &last3.scale(&rat(1, 3)); // x − x³/3
    let last5 = &(&last3 * &last) * &last;
    let quintic = &last3.scale(&rat(1, 3)) - &last5.scale(&rat(1, 15)); // x³/3 − x⁵/15

    // P(e_ij) = ((−1)^{n+1}/n) x_{n+1} ι_{v_ij} α
    //         + (−1)^{i+j+n} ((n+1)/n) (x_{n+1} − x_{n+1}³/3) dx_1…î…ĵ…dx_n
    for (a, &(i, j)) in pairs.iter().enumerate() {
        let iva = interior(action.field(a), &alpha)?;
        let first = iva
            .scale_poly(&last)
            .scale(&(neg_one_pow(n as i64 + 1) * rat(1, n as i64)));
        let idx: Vec<usize> = (0..n).filter(|&t| t + 1 != i && t + 1 != j).collect();
        let coeff = cubic.scale(&(neg_one_pow((i + j + n) as i64) * rat(n as i64 + 1, n as i64)));
        let second = PolyForm::monomial(&chart, &idx, coeff);
        c.set_entry(vec![a], first.add(&second));
    }

    // Q^{(ij)(lm)} = ((n+1)/2n)(x³/3 − x⁵/15)(−1)^n(−1)^{i+j+l+m} B^{i,j}_{l,m}
    //               dx_1…î…ĵ…l̂…m̂…dx_n, zero unless all four indices differ
    if total >= 4 {
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(l, m)) in pairs.iter().enumerate().skip(a + 1) {
                if i == l || i == m || j == l || j == m {
                    continue;
                }
                let idx: Vec<usize> = (0..n)
                    .filter(|&t| {
                        let u = t + 1;
                        u != i && u != j && u != l && u != m
                    })
                    .collect();
                let sign = neg_one_pow(n as i64)
                    * neg_one_pow((i + j + l + m) as i64)
                    * b_sign(i, j, l, m)
                    * rat(n as i64 + 1, 2 * n as i64);
                let coeff = quintic.scale(&sign);
                c.set_entry(vec![a, b], PolyForm::monomial(&chart, &idx, coeff));
            }
        }
    }
    Ok((space, action, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::check_extension;

    #[test]
    fn b_sign_is_symmetric_and_matches_examples() {
        assert_eq!(b_sign(1, 2, 3, 4), int(1));
        assert_eq!(b_sign(1, 3, 2, 4), int(-1));
        assert_eq!(b_sign(1, 4, 2, 3), int(1));
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 4)] {
            for (l, m) in [(2, 3), (3, 4), (2, 4), (1, 3)] {
                let shared = i == l || i == m || j == l || j == m;
                if !shared {
                    assert_eq!(b_sign(i, j, l, m), b_sign(l, m, i, j), "{i}{j}|{l}{m}");
                }
            }
        }
    }

    #[test]
    fn sphere_two_reduces_to_the_height_function() {
        let (space, _, c) = sphere_two_step(2, 12).unwrap();
        // on S², P(e_12) is the height function −x3
        let ls = space.level_set().unwrap();
        let p = c.entry(&[0]);
        for q in ls.sample_points() {
            let val = p.eval_on_vectors(q, &[]);
            assert_eq!(val, -q[2].clone());
        }
        // and there is no genuine second step
        assert!(c.step_entries(2).is_empty());
    }

    #[test]
    fn sphere_three_is_a_cocycle_on_sampled_frames() {
        let (space, _, c) = sphere_two_step(3, 12).unwrap();
        let report = check_extension(&c, &space);
        assert!(report.is_cocycle(), "{:?}", report.first_failure());
    }

    #[test]
    fn sphere_four_quadratic_entry_value() {
        // Q for the pair ((1,2),(3,4)) is (5/8)(x5³/3 − x5⁵/15) with a plus
        // sign, a plain function since all of 1..4 are struck out
        let (_, _, c) = sphere_two_step(4, 5).unwrap();
        let q = c.entry(&[0, 5]); // pairs in order: 12,13,14,23,24,34
        assert_eq!(q.degree(), 0);
        let chart = q.chart().clone();
        let x5 = crate::poly::Poly::var(&chart, 4);
        let expect = &x5.pow(3).scale(&rat(5, 24)) - &x5.pow(5).scale(&rat(1, 24));
        assert_eq!(q.as_poly(), expect);
        // shared indices give no entry at all
        assert!(c.entry(&[0, 1]).is_zero());
    }

    #[test]
    fn product_order_swap_still_gives_a_cocycle() {
        use crate::action::fundamental_fields_linear;
        use crate::equivariant::{extension_from_exact, product_extension};
        use crate::lie::StructLieAlgebra;
        let build = || {
            let (_, act) = StructLieAlgebra::so_n(2);
            let action = fundamental_fields_linear(&act).unwrap();
            let space = Space::Chart(action.chart().clone());
            let alpha = euler_primitive(action.chart(), 2).scale(&rat(1, 2));
            extension_from_exact(&alpha, &action, &space).unwrap()
        };
        let (a12, p12) = product_extension(&build(), &build()).unwrap();
        let (a21, p21) = product_extension(&build(), &build()).unwrap();
        for (action, prod) in [(&a12, &p12), (&a21, &p21)] {
            let space = Space::Chart(action.chart().clone());
            assert!(check_extension(prod, &space).is_cocycle());
        }
        // with identical factors the two orders agree entry for entry after
        // exchanging the two generator labels and the two coordinate blocks
        let sigma = [2usize, 3, 0, 1];
        let tau = [1usize, 0];
        for args in [vec![], vec![0], vec![1], vec![0, 1], vec![0, 0], vec![1, 1]] {
            let lhs = p12.entry(&args);
            let mapped: Vec<usize> = args.iter().map(|&i| tau[i]).collect();
            let mut sorted = mapped.clone();
            sorted.sort_unstable();
            let rhs = p21.entry(&sorted);
            // compare by exact evaluation at a point under the block swap
            let pt: Vec<Rat> = vec![rat(1, 2), rat(-1, 3), rat(2, 5), rat(3, 7)];
            let pt_sw: Vec<Rat> = sigma.iter().map(|&i| pt[i].clone()).collect();
            let frames: Vec<Vec<Rat>> = (0..lhs.degree())
                .map(|t| {
                    (0..4)
                        .map(|i| if i == t { rat(1, 1) } else { rat(0, 1) })
                        .collect()
                })
                .collect();
            let frames_sw: Vec<Vec<Rat>> = frames
                .iter()
                .map(|v| sigma.iter().map(|&i| v[i].clone()).collect())
                .collect();
            let l = lhs.eval_on_vectors(&pt, &frames);
            let r = rhs.eval_on_vectors(&pt_sw, &frames_sw);
            assert!(l == r || l == -r.clone(), "args {args:?}: {l} vs {r}");
        }
    }

    #[test]
    fn unsupported_dimension_is_rejected() {
        assert!(sphere_two_step(6, 5).is_err());
        assert!(sphere_two_step(1, 5).is_err());
    }
}

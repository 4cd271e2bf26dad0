//! Invariant symmetric polynomials on a Lie algebra, including symmetrized
//! real traces of matrix algebras with complex rational entries.

use crate::lie::StructLieAlgebra;
use crate::linalg::nullspace;
use crate::perm::{multisets, Perm};
use crate::rational::{int, Rat};
use crate::value::LinearValue;
use std::collections::BTreeMap;

/// A matrix with complex rational entries (re, im).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    pub entries: Vec<Vec<(Rat, Rat)>>,
}

impl CMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.size();
        let mut out = vec![vec![(int(0), int(0)); n]; n];
        for r in 0..n {
            for s in 0..n {
                let mut re = int(0);
                let mut im = int(0);
                for t in 0..n {
                    let (ar, ai) = &self.entries[r][t];
                    let (br, bi) = &other.entries[t][s];
                    re += ar * br - ai * bi;
                    im += ar * bi + ai * br;
                }
                out[r][s] = (re, im);
            }
        }
        CMatrix { entries: out }
    }

    pub fn trace_re(&self) -> Rat {
        (0..self.size()).map(|i| self.entries[i][i].0.clone()).sum()
    }
}

/// The standard basis of su(2): three skew-hermitian traceless matrices
/// with halves as entries, bracketing cyclically: `[e1,e2]`=e3 etc.
pub fn su2_matrices() -> Vec<CMatrix> {
    let h = crate::rational::rat(1, 2);
    let z = || int(0);
    let m = |e: [[(Rat, Rat); 2]; 2]| CMatrix {
        entries: e.iter().map(|r| r.to_vec()).collect(),
    };
    vec![
        // (1/2) [[0, 1], [−1, 0]]
        m([
            [(z(), z()), (h.clone(), z())],
            [(-h.clone(), z()), (z(), z())],
        ]),
        // (1/2) [[0, i], [i, 0]]
        m([
            [(z(), z()), (z(), h.clone())],
            [(z(), h.clone()), (z(), z())],
        ]),
        // (1/2) [[i, 0], [0, −i]]
        m([
            [(z(), h.clone()), (z(), z())],
            [(z(), z()), (z(), -h.clone())],
        ]),
    ]
}

/// A symmetric degree-k table on a Lie algebra, keyed by sorted multisets of
/// basis indices, with exact infinitesimal invariance checked at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    algebra: StructLieAlgebra,
    degree: usize,
    table: BTreeMap<Vec<usize>, Rat>,
}

impl InvariantPoly {
    pub fn new(
        algebra: StructLieAlgebra,
        degree: usize,
        table: BTreeMap<Vec<usize>, Rat>,
    ) -> Result<InvariantPoly, String> {
        for key in table.keys() {
            if key.len() != degree || !key.windows(2).all(|w| w[0] <= w[1]) {
                return Err(format!("bad multiset key {key:?}"));
            }
        }
        let q = InvariantPoly {
            algebra,
            degree,
            table,
        };
        q.check_invariance()?;
        Ok(q)
    }

    /// q(e_{i1},...,e_{ik}) for an arbitrary (unsorted) index tuple.
    pub fn eval(&self, indices: &[usize]) -> Rat {
        assert_eq!(indices.len(), self.degree);
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.table.get(&key).cloned().unwrap_or_else(|| int(0))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra(&self) -> &StructLieAlgebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|v| v.is_zero())
    }

    /// Σ_i q(x_1,...,`[y,x_i]`,...,x_k) = 0 for every basis y and every
    /// basis multiset (x_1..x_k).
    fn check_invariance(&self) -> Result<(), String> {
        let d = self.algebra.dim();
        for y in 0..d {
            for args in multisets(d, self.degree) {
                let mut acc = int(0);
                for slot in 0..self.degree {
                    let br = self.algebra.bracket_basis(y, args[slot]);
                    for (m, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut modified = args.clone();
                        modified[slot] = m;
                        acc += c * self.eval(&modified);
                    }
                }
                if !acc.is_zero() {
                    return Err(format!(
                        "invariance fails for y = {} at {:?}",
                        self.algebra.name(y),
                        args
                    ));
                }
            }
        }
        Ok(())
    }

    /// Kernel of x ↦ q(x, ·, ..., ·) by exact linear algebra; nondegenerate
    /// when the kernel is trivial.
    pub fn is_nondegenerate(&self) -> bool {
        let d = self.algebra.dim();
        let rows = multisets(d, self.degree - 1);
        let matrix: Vec<Vec<Rat>> = rows
            .iter()
            .map(|t| {
                (0..d)
                    .map(|i| {
                        let mut idx = vec![i];
                        idx.extend_from_slice(t);
                        self.eval(&idx)
                    })
                    .collect()
            })
            .collect();
        nullspace(&matrix).is_empty()
    }
}

/// q_k(x_1..x_k) = −(1/k!) Σ_σ Re Tr(x_{σ(1)} ⋯ x_{σ(k)}) over the given
/// matrix basis; invariance is verified exactly.
pub fn symtrace_poly(
    algebra: &StructLieAlgebra,
    basis: &[CMatrix],
    k: usize,
) -> Result<InvariantPoly, String> {
    assert_eq!(basis.len(), algebra.dim());
    assert!(k >= 1);
    let mut table = BTreeMap::new();
    let perms = Perm::all(k);
    let norm = -crate::rational::factorial(k).recip();
    for args in multisets(algebra.dim(), k) {
        let mut acc = int(0);
        for sigma in &perms {
            let mut prod = basis[args[sigma.apply(1) - 1]].clone();
            for pos in 2..=k {
                prod = prod.mul(&basis[args[sigma.apply(pos) - 1]]);
            }
            acc += prod.trace_re();
        }
        let v = acc * &norm;
        if !v.is_zero() {
            table.insert(args, v);
        }
    }
    InvariantPoly::new(algebra.clone(), k, table)
}

/// Realifies a complex matrix: entry a+bi becomes the 2×2 block [`[a,−b]`,`[b,a]`]
/// in the interleaved real coordinates (Re z_1, Im z_1, Re z_2, ...).
pub fn realify(m: &CMatrix) -> Vec<Vec<Rat>> {
    let n = m.size();
    let mut out = vec![vec![int(0); 2 * n]; 2 * n];
    for r in 0..n {
        for s in 0..n {
            let (a, b) = &m.entries[r][s];
            out[2 * r][2 * s] = a.clone();
            out[2 * r][2 * s + 1] = -b.clone();
            out[2 * r + 1][2 * s] = b.clone();
            out[2 * r + 1][2 * s + 1] = a.clone();
        }
    }
    out
}

//! Finite-dimensional Lie algebras via structure constants.
//!
//! Antisymmetry is built into the storage (only i < j kept) and the Jacobi
//! identity is verified exactly at construction.

use crate::linalg::{solve_linear, LinSolve, LinearSystem};
use crate::rational::{int, Rat};
use crate::value::LinearValue;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct StructLieAlgebra(Arc<LieData>);

#[derive(PartialEq, Eq)]
struct LieData {
    dim: usize,
    names: Vec<String>,
    // (i, j) with i < j  ->  coefficients of [e_i, e_j] in the basis
    brackets: BTreeMap<(usize, usize), Vec<Rat>>,
}

/// Pairs (x_i, x_i') whose brackets sum to a decomposed element.
pub type BracketDecomposition = Vec<(Vec<Rat>, Vec<Rat>)>;

impl std::fmt::Debug for StructLieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LieAlgebra(dim {}, basis {:?})",
            self.dim(),
            self.0.names
        )
    }
}

impl StructLieAlgebra {
    /// `brackets` lists ((i, j), coeffs of `[e_i, e_j]`) for i < j, 0-indexed;
    /// omitted pairs bracket to zero.
    pub fn new(
        names: Vec<String>,
        brackets: Vec<((usize, usize), Vec<Rat>)>,
    ) -> Result<StructLieAlgebra, String> {
        let dim = names.len();
        let mut table = BTreeMap::new();
        for ((i, j), coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(format!("bad bracket pair ({i}, {j})"));
            }
            if coeffs.len() != dim {
                return Err("bracket coefficient vector has wrong length".into());
            }
            if table.insert((i, j), coeffs).is_some() {
                return Err(format!("duplicate bracket pair ({i}, {j})"));
            }
        }
        let alg = StructLieAlgebra(Arc::new(LieData {
            dim,
            names,
            brackets: table,
        }));
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<(), String> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                    let mut acc = vec![int(0); d];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_basis(a, b);
                        for (m, cm) in ab.iter().enumerate() {
                            if cm.is_zero() {
                                continue;
                            }
                            let mc = self.bracket_basis(m, c);
                            for (l, v) in mc.iter().enumerate() {
                                acc[l] += cm * v;
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(format!(
                            "Jacobi identity fails on basis triple ({}, {}, {})",
                            self.name(i),
                            self.name(j),
                            self.name(k)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// `[e_i, e_j]` as a coefficient vector, any i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        if i == j {
            return vec![int(0); self.0.dim];
        }
        if i < j {
            self.0
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![int(0); self.0.dim])
        } else {
            self.bracket_basis(j, i).neg()
        }
    }

    /// `[x, y]` for coefficient vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        assert_eq!(x.len(), d);
        assert_eq!(y.len(), d);
        let mut acc = vec![int(0); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let b = self.bracket_basis(i, j);
                let f = &x[i] * &y[j];
                for (m, v) in b.iter().enumerate() {
                    acc[m] += &f * v;
                }
            }
        }
        acc
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![int(0); self.dim()];
        v[i] = int(1);
        v
    }

    /// The abelian Lie algebra of the given dimension.
    pub fn abelian(dim: usize) -> StructLieAlgebra {
        StructLieAlgebra::new((1..=dim).map(|i| format!("e{i}")).collect(), vec![]).unwrap()
    }

    /// su(2) with the cyclic basis: `[e1,e2]`=e3, `[e2,e3]`=e1, `[e3,e1]`=e2.
    pub fn su2() -> StructLieAlgebra {
        let e = |k: usize| {
            let mut v = vec![int(0), int(0), int(0)];
            v[k] = int(1);
            v
        };
        StructLieAlgebra::new(
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![((0, 1), e(2)), ((1, 2), e(0)), ((0, 2), e(1).neg())],
        )
        .unwrap()
    }

    /// The 3-dimensional Heisenberg algebra: `[e1,e2]`=e3 central.
    pub fn heisenberg3() -> StructLieAlgebra {
        StructLieAlgebra::new(
            vec!["e1".into(), "e2".into(), "e3".into()],
            vec![((0, 1), vec![int(0), int(0), int(1)])],
        )
        .unwrap()
    }

    /// A 4-dimensional solvable algebra: upper-triangular 2×2 matrices plus a
    /// central line. `[e1,e3]`=e3, `[e2,e3]`=−e3.
    pub fn solvable4() -> StructLieAlgebra {
        let e3 = |s: i64| vec![int(0), int(0), int(s), int(0)];
        StructLieAlgebra::new(
            vec!["h1".into(), "h2".into(), "n".into(), "z".into()],
            vec![((0, 2), e3(1)), ((1, 2), e3(-1))],
        )
        .unwrap()
    }

    /// Builds the algebra spanned by the given square matrices, deriving the
    /// structure constants from commutators. Fails when the span is not
    /// closed under the commutator or the matrices are dependent.
    pub fn from_matrices(
        names: Vec<String>,
        matrices: &[Vec<Vec<Rat>>],
    ) -> Result<(StructLieAlgebra, LinearAction), String> {
        let d = matrices.len();
        if d != names.len() {
            return Err("name/matrix count mismatch".into());
        }
        let n = matrices[0].len();
        let flat = |m: &Vec<Vec<Rat>>| -> Vec<Rat> { m.iter().flatten().cloned().collect() };
        // columns of the expansion system are the basis matrices
        let cols: Vec<Vec<Rat>> = matrices.iter().map(flat).collect();
        let rows = n * n;
        let expand = |target: &Vec<Rat>| -> Result<Vec<Rat>, String> {
            let a: Vec<Vec<Rat>> = (0..rows)
                .map(|r| (0..d).map(|c| cols[c][r].clone()).collect())
                .collect();
            match solve_linear(&LinearSystem::new(a, target.clone())?) {
                LinSolve::Solution { particular, .. } => Ok(particular),
                LinSolve::Inconsistent { .. } => {
                    Err("matrix span is not closed under commutators".into())
                }
            }
        };
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let comm = mat_comm(&matrices[i], &matrices[j]);
                let coeffs = expand(&flat(&comm))?;
                if coeffs.iter().any(|c| !c.is_zero()) {
                    brackets.push(((i, j), coeffs));
                }
            }
        }
        let alg = StructLieAlgebra::new(names, brackets)?;
        let action = LinearAction::new(alg.clone(), matrices.to_vec())?;
        Ok((alg, action))
    }

    /// so(n): basis e_ij (i<j) with −1 at entry (i,j) and +1 at (j,i),
    /// together with its defining action on ℝ^n.
    pub fn so_n(n: usize) -> (StructLieAlgebra, LinearAction) {
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                names.push(format!("e{}{}", i + 1, j + 1));
                let mut m = vec![vec![int(0); n]; n];
                m[i][j] = int(-1);
                m[j][i] = int(1);
                mats.push(m);
            }
        }
        StructLieAlgebra::from_matrices(names, &mats).expect("so(n) closes under commutators")
    }

    /// True when `[𝔤,𝔤]` = 𝔤, by the rank of the bracket map Λ²𝔤 → 𝔤.
    pub fn is_perfect(&self) -> bool {
        crate::linalg::rank(&self.bracket_map_matrix()) == self.dim()
    }

    // rows: basis index m; columns: pairs (i,j) with i<j in order
    fn bracket_map_matrix(&self) -> Vec<Vec<Rat>> {
        let d = self.dim();
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .collect();
        (0..d)
            .map(|m| {
                pairs
                    .iter()
                    .map(|&(i, j)| self.bracket_basis(i, j)[m].clone())
                    .collect()
            })
            .collect()
    }

    /// Writes x = Σ `[x_i, x_i']` when the algebra is perfect; deterministic in
    /// the solver's fixed pivot order.
    pub fn perfect_decomposition(&self, x: &[Rat]) -> Result<BracketDecomposition, String> {
        if !self.is_perfect() {
            return Err("the algebra is not perfect: [g,g] ≠ g".into());
        }
        let d = self.dim();
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .collect();
        let sys = LinearSystem::new(self.bracket_map_matrix(), x.to_vec())?;
        let coeffs = match solve_linear(&sys) {
            LinSolve::Solution { particular, .. } => particular,
            LinSolve::Inconsistent { .. } => unreachable!("perfect algebra spans"),
        };
        Ok(pairs
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| (self.basis_vector(i).scale(&c), self.basis_vector(j)))
            .collect())
    }
}

/// A Lie algebra realized by matrices: φ(`[x,y]`) = φ(x)φ(y) − φ(y)φ(x),
/// verified exactly at construction.
#[derive(Clone, Debug)]
pub struct LinearAction {
    algebra: StructLieAlgebra,
    matrices: Vec<Vec<Vec<Rat>>>,
}

impl LinearAction {
    pub fn new(
        algebra: StructLieAlgebra,
        matrices: Vec<Vec<Vec<Rat>>>,
    ) -> Result<LinearAction, String> {
        let d = algebra.dim();
        if matrices.len() != d {
            return Err("one matrix per basis element required".into());
        }
        let n = matrices[0].len();
        for m in &matrices {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err("matrices must be square and equally sized".into());
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                let comm = mat_comm(&matrices[i], &matrices[j]);
                let coeffs = algebra.bracket_basis(i, j);
                let mut expect = vec![vec![int(0); n]; n];
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for r in 0..n {
                        for s in 0..n {
                            expect[r][s] += c * &matrices[k][r][s];
                        }
                    }
                }
                if comm != expect {
                    return Err(format!(
                        "φ([e_{i},e_{j}]) ≠ [φ(e_{i}), φ(e_{j})]: not a representation"
                    ));
                }
            }
        }
        Ok(LinearAction { algebra, matrices })
    }

    pub fn algebra(&self) -> &StructLieAlgebra {
        &self.algebra
    }

    pub fn matrix(&self, i: usize) -> &Vec<Vec<Rat>> {
        &self.matrices[i]
    }

    pub fn space_dim(&self) -> usize {
        self.matrices[0].len()
    }

    /// φ(x) for a coefficient vector x.
    pub fn matrix_of(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let n = self.space_dim();
        let mut out = vec![vec![int(0); n]; n];
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    out[r][s] += c * &self.matrices[k][r][s];
                }
            }
        }
        out
    }
}

pub(crate) fn mat_comm(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut out = vec![vec![int(0); n]; n];
    for r in 0..n {
        for s in 0..n {
            let mut acc = int(0);
            for t in 0..n {
                acc += &a[r][t] * &b[t][s];
                acc -= &b[r][t] * &a[t][s];
            }
            out[r][s] = acc;
        }
    }
    out
}

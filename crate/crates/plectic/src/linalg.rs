//! Dense exact linear algebra over the rationals.
//!
//! Everything is plain Gaussian elimination with a fixed pivot order
//! (leftmost column, first nonzero row), so all outputs are deterministic.

use crate::rational::Rat;
use num_traits::{One, Zero};

/// A rectangular system A x = b.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
}

/// Outcome of solving a linear system exactly.
#[derive(Clone, Debug)]
pub enum LinSolve {
    /// A particular solution together with a basis of the nullspace.
    Solution {
        particular: Vec<Rat>,
        nullspace: Vec<Vec<Rat>>,
    },
    /// No solution; `certificate` is a row vector y with yᵀA = 0, yᵀb ≠ 0.
    Inconsistent { certificate: Vec<Rat> },
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<Rat>>, rhs: Vec<Rat>) -> Result<LinearSystem, String> {
        if matrix.len() != rhs.len() {
            return Err("matrix and rhs have different row counts".into());
        }
        let cols = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != cols) {
            return Err("ragged matrix".into());
        }
        Ok(LinearSystem { matrix, rhs })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }
}

pub fn solve_linear(system: &LinearSystem) -> LinSolve {
    let m = system.rows();
    let n = system.cols();
    // Augment with the identity to track the row operations: after
    // elimination, trace[i] expresses row i of the reduced system as a
    // combination of the original rows.
    let mut a = system.matrix.clone();
    let mut b = system.rhs.clone();
    let mut trace: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        b.swap(row, pr);
        trace.swap(row, pr);
        let inv = a[row][col].recip();
        for c in 0..n {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] *= &inv;
        for c in 0..m {
            trace[row][c] = &trace[row][c] * &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &a[row][c] * &f;
                    a[r][c] = &a[r][c] - &t;
                }
                let t = &b[row] * &f;
                b[r] = &b[r] - &t;
                for c in 0..m {
                    let t = &trace[row][c] * &f;
                    trace[r][c] = &trace[r][c] - &t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }

    // Inconsistency: a zero row of A with nonzero rhs.
    for r in row..m {
        if !b[r].is_zero() {
            return LinSolve::Inconsistent {
                certificate: trace[r].clone(),
            };
        }
    }

    let mut particular = vec![Rat::zero(); n];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = b[r].clone();
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); n];
        v[fc] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[r][fc].clone();
        }
        nullspace.push(v);
    }
    LinSolve::Solution {
        particular,
        nullspace,
    }
}

pub fn rank(matrix: &[Vec<Rat>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let sys = LinearSystem::new(matrix.to_vec(), vec![Rat::zero(); matrix.len()]).unwrap();
    let n = sys.cols();
    match solve_linear(&sys) {
        LinSolve::Solution { nullspace, .. } => n - nullspace.len(),
        LinSolve::Inconsistent { .. } => unreachable!("homogeneous system"),
    }
}

/// Basis of the kernel of `matrix`, in the deterministic elimination order.
pub fn nullspace(matrix: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let sys = LinearSystem::new(matrix.to_vec(), vec![Rat::zero(); matrix.len()]).unwrap();
    match solve_linear(&sys) {
        LinSolve::Solution { nullspace, .. } => nullspace,
        LinSolve::Inconsistent { .. } => unreachable!("homogeneous system"),
    }
}

/// Kernel basis of a single covector, eliminating at its largest-index
/// nonzero entry. Used for tangent frames of level sets.
pub fn covector_kernel(row: &[Rat]) -> Vec<Vec<Rat>> {
    let n = row.len();
    let Some(p) = (0..n).rev().find(|&j| !row[j].is_zero()) else {
        // zero covector: full space
        return (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect();
    };
    let mut out = Vec::new();
    for i in 0..n {
        if i == p {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        v[p] = -&row[i] / &row[p];
        out.push(v);
    }
    out
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Exact determinant by fraction-free-ish Gaussian elimination.
pub fn determinant(matrix: &[Vec<Rat>]) -> Rat {
    let n = matrix.len();
    if n == 0 {
        return Rat::one();
    }
    assert!(
        matrix.iter().all(|r| r.len() == n),
        "square matrix required"
    );
    let mut a = matrix.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pr != col {
            a.swap(col, pr);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
    }
    det
}

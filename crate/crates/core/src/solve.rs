//! Integer linear systems: particular solutions, kernel bases, image
//! lattices and membership tests. `NoSolution` is a verdict, not a failure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::matrix::IntMatrix;
use crate::snf::{snf_select, SmithDecomposition, Want};

#[derive(Clone, Debug)]
pub struct Solution {
    /// One x with M·x = b.
    pub particular: Vec<BigInt>,
    /// Columns form a basis of {x : M·x = 0}; the lattice is saturated.
    pub kernel_basis: IntMatrix,
}

#[derive(Clone, Debug)]
pub enum LinearVerdict {
    Solution(Solution),
    /// b is not in the image of M over the integers.
    NoSolution,
}

impl LinearVerdict {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            LinearVerdict::Solution(s) => Some(s),
            LinearVerdict::NoSolution => None,
        }
    }
    pub fn is_solution(&self) -> bool {
        matches!(self, LinearVerdict::Solution(_))
    }
}

/// Solve M·x = b over ℤ via the Smith decomposition of M.
pub fn solve_linear(m: &IntMatrix, b: &[BigInt]) -> LinearVerdict {
    assert_eq!(b.len(), m.rows(), "rhs length must equal row count");
    let dec = snf_select(m, Want::ALL);
    solve_with(&dec, m.cols(), b)
}

/// Solve against a precomputed decomposition (U, V and D required).
pub fn solve_with(dec: &SmithDecomposition, cols: usize, b: &[BigInt]) -> LinearVerdict {
    let c = dec.u.mul_vec(b);
    let r = dec.rank();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let d = dec.diagonal(i);
            let (q, rem) = ci.div_rem(&d);
            if !rem.is_zero() {
                return LinearVerdict::NoSolution;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return LinearVerdict::NoSolution;
        }
    }
    let particular = dec.v.mul_vec(&y);
    let kernel_cols: Vec<usize> = (r..cols).collect();
    let kernel_basis = dec.v.submatrix_columns(&kernel_cols);
    LinearVerdict::Solution(Solution {
        particular,
        kernel_basis,
    })
}

/// Basis of ker M (columns), a saturated sublattice of ℤ^cols.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let dec = snf_select(m, Want::COLUMN_SIDE);
    let r = dec.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    dec.v.submatrix_columns(&cols)
}

/// Basis of the column-image lattice of M, as columns of U⁻¹·D restricted to
/// the nonzero diagonal.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let dec = snf_select(m, Want::ROW_SIDE);
    let r = dec.rank();
    let mut basis = IntMatrix::zero(m.rows(), r);
    for k in 0..r {
        let d = dec.diagonal(k);
        let col = dec.u_inv.column(k);
        let scaled: Vec<BigInt> = col.iter().map(|x| x * &d).collect();
        basis.set_column(k, &scaled);
    }
    basis
}

/// Is v in the lattice spanned by the columns of `basis`?
pub fn lattice_member(basis: &IntMatrix, v: &[BigInt]) -> bool {
    solve_linear(basis, v).is_solution()
}

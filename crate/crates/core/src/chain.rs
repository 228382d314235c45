//! Chain complexes of free abelian groups, extracted from simplicial
//! complexes (absolute or relative to a subcomplex).

use crate::error::ComplexError;
use crate::matrix::IntMatrix;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, Copy, PartialEq, Eq)]
pub enum Coeff {
    Z,
    Z2,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub label: String,
    /// Number of cells per degree, 0..=top.
    pub dims: Vec<usize>,
    /// boundaries[d]: C_d → C_{d−1}; boundaries[0] has zero rows.
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn top_dim(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim_at(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn boundary(&self, d: usize) -> IntMatrix {
        if d == 0 || d > self.top_dim() {
            return IntMatrix::zero(
                if d == 0 { 0 } else { self.dim_at(d - 1) },
                self.dim_at(d),
            );
        }
        self.boundaries[d].clone()
    }

    /// δ_d : C^d → C^{d+1}, the transpose of ∂_{d+1}.
    pub fn coboundary(&self, d: usize) -> IntMatrix {
        if d + 1 > self.top_dim() {
            return IntMatrix::zero(0, self.dim_at(d));
        }
        self.boundaries[d + 1].transpose()
    }

    pub fn verify_dd_zero(&self) -> bool {
        for d in 2..=self.top_dim() {
            if !self.boundary(d - 1).mul(&self.boundary(d)).is_zero() {
                return false;
            }
        }
        true
    }

    pub fn from_simplicial(k: &SimplicialComplex, label: &str) -> Self {
        let top = k.dim_opt();
        let (dims, boundaries) = match top {
            None => (vec![], vec![]),
            Some(top) => {
                let dims = (0..=top).map(|d| k.simplex_count(d)).collect();
                let boundaries = (0..=top).map(|d| k.boundary_matrix(d)).collect();
                (dims, boundaries)
            }
        };
        ChainComplex {
            label: label.to_string(),
            dims,
            boundaries,
        }
    }

    /// Relative complex of the pair (x, a): cells of x not in a, in each
    /// degree, with the boundary projected away from a. The second return
    /// value maps relative indices back to ambient simplex indices.
    pub fn relative(
        x: &SimplicialComplex,
        a: &SimplicialComplex,
        label: &str,
    ) -> Result<(Self, Vec<Vec<usize>>), ComplexError> {
        if !x.contains_complex(a) {
            return Err(ComplexError::InvalidComplex(
                "relative part is not a subcomplex (shared vertex list required)".into(),
            ));
        }
        let top = x.dim();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut position: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut keep = Vec::new();
            let mut pos = vec![None; x.simplex_count(d)];
            for (i, s) in x.simplices(d).iter().enumerate() {
                if !a.has_simplex(s) {
                    pos[i] = Some(keep.len());
                    keep.push(i);
                }
            }
            kept.push(keep);
            position.push(pos);
        }
        let dims: Vec<usize> = kept.iter().map(Vec::len).collect();
        let mut boundaries = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let full = x.boundary_matrix(d);
            let rows = if d == 0 { 0 } else { dims[d - 1] };
            let mut m = IntMatrix::zero(rows, dims[d]);
            if d > 0 {
                for (jj, &j) in kept[d].iter().enumerate() {
                    for (ii, &i) in kept[d - 1].iter().enumerate() {
                        m[(ii, jj)] = full[(i, j)].clone();
                    }
                }
            }
            boundaries.push(m);
        }
        Ok((
            ChainComplex {
                label: label.to_string(),
                dims,
                boundaries,
            },
            kept,
        ))
    }
}

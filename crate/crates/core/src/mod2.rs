//! Linear algebra over GF(2) for mod-2 cochain computations.

/// Dense 0/1 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat2 {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat2 {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat2::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_int_matrix(m: &crate::matrix::IntMatrix) -> Self {
        use num_integer::Integer;
        let mut out = Mat2::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)].is_odd() {
                    out.set(i, j, 1);
                }
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v & 1;
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u8;
                for j in 0..self.cols {
                    acc ^= self.get(i, j) & v[j];
                }
                acc
            })
            .collect()
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let (a, b) = (dst * self.cols, src * self.cols);
        for j in 0..self.cols {
            self.data[a + j] ^= self.data[b + j];
        }
    }

    pub fn rank(&self) -> usize {
        Elimination::run(self).pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let elim = Elimination::run(self);
        let pivot_cols: Vec<usize> = elim.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = vec![0u8; self.cols];
            x[free] = 1;
            for &(r, c) in &elim.pivots {
                // reduced echelon: pivot rows read off directly
                if elim.reduced.get(r, free) == 1 {
                    x[c] = 1;
                }
            }
            basis.push(x);
        }
        basis
    }
}

/// Reduced row echelon data with the recorded transform E (E·M = reduced).
pub struct Elimination {
    pub reduced: Mat2,
    pub transform: Mat2,
    pub pivots: Vec<(usize, usize)>,
}

impl Elimination {
    pub fn run(m: &Mat2) -> Self {
        let mut a = m.clone();
        let mut e = Mat2::identity(m.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| a.get(i, col) == 1) else {
                continue;
            };
            if p != row {
                for j in 0..a.cols {
                    let (x, y) = (a.get(p, j), a.get(row, j));
                    a.set(p, j, y);
                    a.set(row, j, x);
                }
                for j in 0..e.cols {
                    let (x, y) = (e.get(p, j), e.get(row, j));
                    e.set(p, j, y);
                    e.set(row, j, x);
                }
            }
            for i in 0..a.rows {
                if i != row && a.get(i, col) == 1 {
                    a.xor_row(i, row);
                    e.xor_row(i, row);
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        Elimination {
            reduced: a,
            transform: e,
            pivots,
        }
    }
}

/// Outcome of solving M·x = b over GF(2).
pub enum Solve2 {
    /// A solution vector.
    Solution(Vec<u8>),
    /// A functional ℓ (row over GF(2)) with ℓ·M = 0 and ℓ·b = 1: the
    /// re-checkable witness that no solution exists.
    NoSolution(Vec<u8>),
}

pub fn solve2(m: &Mat2, b: &[u8]) -> Solve2 {
    assert_eq!(b.len(), m.rows);
    let elim = Elimination::run(m);
    let eb = elim.transform.mul_vec(b);
    // rows beyond the pivots have zero M-part; a 1 there certifies failure
    for i in elim.pivots.len()..m.rows {
        if eb[i] == 1 {
            let functional: Vec<u8> = (0..m.rows).map(|j| elim.transform.get(i, j)).collect();
            return Solve2::NoSolution(functional);
        }
    }
    let mut x = vec![0u8; m.cols];
    for (k, &(r, c)) in elim.pivots.iter().enumerate() {
        let _ = k;
        x[c] = eb[r];
    }
    Solve2::Solution(x)
}

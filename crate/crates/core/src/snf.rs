//! Smith normal form over the integers with full unimodular witnesses.
//!
//! The pivot rule is fixed (smallest nonzero absolute value, ties broken by
//! lowest row then lowest column index) so every decomposition — and every
//! certificate derived from one — is deterministic for a given input.
//!
//! Arithmetic runs on `i128` with checked operations when the input fits;
//! any overflow restarts the identical algorithm on `BigInt`. The two paths
//! execute the same elimination, so the fast path cannot change results.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use crate::matrix::IntMatrix;

/// U·M·V = D with U, V unimodular and D diagonal, d₁ | d₂ | … | d_r ≥ 1
/// followed by zeros.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    /// The positive diagonal entries, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn diagonal(&self, i: usize) -> BigInt {
        if i < self.d.rows() && i < self.d.cols() {
            self.d[(i, i)].clone()
        } else {
            <BigInt as Zero>::zero()
        }
    }
}

// Witness selection; omitting unused witnesses keeps large eliminations cheap.
#[derive(Clone, Copy, Debug)]
pub struct Want {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Want {
    pub const ALL: Want = Want {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const ROW_SIDE: Want = Want {
        u: true,
        u_inv: true,
        v: false,
        v_inv: false,
    };
    pub const COLUMN_SIDE: Want = Want {
        u: false,
        u_inv: false,
        v: true,
        v_inv: true,
    };
    pub const NONE: Want = Want {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

/// Full decomposition with all four unimodular witnesses.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    snf_select(m, Want::ALL)
}

/// Decomposition computing only the requested witnesses; the others are
/// returned as 0×0 matrices.
pub fn snf_select(m: &IntMatrix, want: Want) -> SmithDecomposition {
    if let Some(dec) = try_machine(m, want) {
        return dec;
    }
    run::<BigState>(m, want).expect("BigInt elimination cannot overflow")
}

fn try_machine(m: &IntMatrix, want: Want) -> Option<SmithDecomposition> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)].to_i128()?;
            // headroom so single products stay inside i128
            if v.unsigned_abs() > 1 << 62 {
                return None;
            }
        }
    }
    run::<MachState>(m, want)
}

// ---------------------------------------------------------------------------
// Entry abstraction: identical algorithm over i128 (checked) and BigInt.
// ---------------------------------------------------------------------------

trait Entry: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn is_abs_one(&self) -> bool;
    fn checked_mul_sub(acc: &Self, q: &Self, x: &Self) -> Option<Self>; // acc - q*x
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn div_trunc(&self, other: &Self) -> Self;
    fn rem_trunc(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Entry for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("checked before entry")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_abs_one(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn checked_mul_sub(acc: &Self, q: &Self, x: &Self) -> Option<Self> {
        acc.checked_sub(q.checked_mul(*x)?)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn div_trunc(&self, other: &Self) -> Self {
        self / other
    }
    fn rem_trunc(&self, other: &Self) -> Self {
        self % other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn is_abs_one(&self) -> bool {
        self.abs().is_one()
    }
    fn checked_mul_sub(acc: &Self, q: &Self, x: &Self) -> Option<Self> {
        Some(acc - q * x)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn div_trunc(&self, other: &Self) -> Self {
        self / other
    }
    fn rem_trunc(&self, other: &Self) -> Self {
        self % other
    }
    fn neg(&self) -> Self {
        -self
    }
}

struct MachState;
struct BigState;

trait StateKind {
    type E: Entry;
}
impl StateKind for MachState {
    type E = i128;
}
impl StateKind for BigState {
    type E = BigInt;
}

struct Work<E: Entry> {
    rows: usize,
    cols: usize,
    w: Vec<Vec<E>>,
    u: Option<Vec<Vec<E>>>,     // row ops, applied on the left
    u_inv: Option<Vec<Vec<E>>>, // inverse accumulated on the right
    v: Option<Vec<Vec<E>>>,     // column ops, applied on the right
    v_inv: Option<Vec<Vec<E>>>,
}

fn eye<E: Entry>(n: usize) -> Vec<Vec<E>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { E::one() } else { E::zero() })
                .collect()
        })
        .collect()
}

impl<E: Entry> Work<E> {
    fn new(m: &IntMatrix, want: Want) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        Work {
            rows,
            cols,
            w: (0..rows)
                .map(|i| (0..cols).map(|j| E::from_big(&m[(i, j)])).collect())
                .collect(),
            u: want.u.then(|| eye(rows)),
            u_inv: want.u_inv.then(|| eye(rows)),
            v: want.v.then(|| eye(cols)),
            v_inv: want.v_inv.then(|| eye(cols)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.w.iter_mut() {
            row.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(a, b);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let x = self.w[k][j].clone();
            if !x.is_zero() {
                self.w[i][j] = E::checked_mul_sub(&self.w[i][j], q, &x)?;
            }
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.rows {
                let x = u[k][j].clone();
                if !x.is_zero() {
                    u[i][j] = E::checked_mul_sub(&u[i][j], q, &x)?;
                }
            }
        }
        if let Some(ui) = &mut self.u_inv {
            // (U⁻¹)·(I + q·E_{ik}) : col_k += q·col_i
            for row in ui.iter_mut() {
                let x = row[i].clone();
                if !x.is_zero() {
                    let minus_q = q.neg();
                    row[k] = E::checked_mul_sub(&row[k], &minus_q, &x)?;
                }
            }
        }
        Some(())
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &E) -> Option<()> {
        if q.is_zero() {
            return Some(());
        }
        for row in self.w.iter_mut() {
            let x = row[k].clone();
            if !x.is_zero() {
                row[j] = E::checked_mul_sub(&row[j], q, &x)?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let x = row[k].clone();
                if !x.is_zero() {
                    row[j] = E::checked_mul_sub(&row[j], q, &x)?;
                }
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // (I + q·E_{kj})·(V⁻¹) : row_k += q·row_j
            for col in 0..self.cols {
                let x = vi[j][col].clone();
                if !x.is_zero() {
                    let minus_q = q.neg();
                    vi[k][col] = E::checked_mul_sub(&vi[k][col], &minus_q, &x)?;
                }
            }
        }
        Some(())
    }

    /// row_k += row_i (the divisibility repair step)
    fn row_add(&mut self, k: usize, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let x = self.w[i][j].clone();
            self.w[k][j] = self.w[k][j].checked_add(&x)?;
        }
        if let Some(u) = &mut self.u {
            for j in 0..self.rows {
                let x = u[i][j].clone();
                u[k][j] = u[k][j].checked_add(&x)?;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse: col_i -= col_k
            for row in ui.iter_mut() {
                let x = row[k].clone();
                let one = E::one();
                row[i] = E::checked_mul_sub(&row[i], &one, &x)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, k: usize) {
        for x in self.w[k].iter_mut() {
            *x = x.neg();
        }
        if let Some(u) = &mut self.u {
            for x in u[k].iter_mut() {
                *x = x.neg();
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[k] = row[k].neg();
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix, ties by row then
    /// column. Short-circuits on the first ±1.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let e = &self.w[i][j];
                if e.is_zero() {
                    continue;
                }
                if e.is_abs_one() {
                    return Some((i, j));
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if e.abs_cmp(&self.w[*bi][*bj]) == Ordering::Less {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn find_nondivisible(&self, k: usize) -> Option<usize> {
        let p = &self.w[k][k];
        if p.is_abs_one() {
            return None;
        }
        for i in k + 1..self.rows {
            for j in k + 1..self.cols {
                if !self.w[i][j].is_zero() && !self.w[i][j].rem_trunc(p).is_zero() {
                    return Some(i);
                }
            }
        }
        None
    }
}

fn run<S: StateKind>(m: &IntMatrix, want: Want) -> Option<SmithDecomposition> {
    let mut wk: Work<S::E> = Work::new(m, want);
    let (rows, cols) = (wk.rows, wk.cols);
    let bound = rows.min(cols);
    let mut rank = 0;

    'outer: for k in 0..bound {
        let Some((pi, pj)) = wk.find_pivot(k) else {
            break 'outer;
        };
        wk.swap_rows(k, pi);
        wk.swap_cols(k, pj);

        'pivot: loop {
            // Clear column k and row k, shrinking the pivot when a
            // remainder survives.
            'reduce: loop {
                let mut again = false;
                for i in k + 1..rows {
                    if !wk.w[i][k].is_zero() {
                        let q = wk.w[i][k].div_trunc(&wk.w[k][k]);
                        wk.row_sub(i, k, &q)?;
                        if !wk.w[i][k].is_zero() {
                            wk.swap_rows(i, k);
                            again = true;
                        }
                    }
                }
                if again {
                    continue 'reduce;
                }
                for j in k + 1..cols {
                    if !wk.w[k][j].is_zero() {
                        let q = wk.w[k][j].div_trunc(&wk.w[k][k]);
                        wk.col_sub(j, k, &q)?;
                        if !wk.w[k][j].is_zero() {
                            wk.swap_cols(j, k);
                            again = true;
                        }
                    }
                }
                if !again {
                    break 'reduce;
                }
            }
            // Divisibility: the pivot must divide the entire trailing block.
            match wk.find_nondivisible(k) {
                Some(i) => {
                    wk.row_add(k, i)?;
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
        rank = k + 1;
    }

    for k in 0..rank {
        if wk.w[k][k].to_big().is_negative() {
            wk.negate_row(k);
        }
    }

    let mut d = IntMatrix::zero(rows, cols);
    let mut invariant_factors = Vec::new();
    for k in 0..rank {
        let val = wk.w[k][k].to_big();
        invariant_factors.push(val.clone());
        d[(k, k)] = val;
    }

    let to_matrix = |m: &Option<Vec<Vec<S::E>>>| -> IntMatrix {
        match m {
            None => IntMatrix::zero(0, 0),
            Some(rows) => IntMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(Entry::to_big).collect())
                    .collect(),
            ),
        }
    };

    Some(SmithDecomposition {
        u: to_matrix(&wk.u),
        u_inv: to_matrix(&wk.u_inv),
        v: to_matrix(&wk.v),
        v_inv: to_matrix(&wk.v_inv),
        d,
        invariant_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_postconditions(m: &IntMatrix, dec: &SmithDecomposition) {
        let umv = dec.u.mul(m).mul(&dec.v);
        assert_eq!(umv, dec.d, "U·M·V = D");
        assert!(dec.u.det_bareiss().unwrap().abs().is_one(), "U unimodular");
        assert!(dec.v.det_bareiss().unwrap().abs().is_one(), "V unimodular");
        assert_eq!(
            dec.u.mul(&dec.u_inv),
            IntMatrix::identity(m.rows()),
            "U·U⁻¹ = I"
        );
        assert_eq!(
            dec.v.mul(&dec.v_inv),
            IntMatrix::identity(m.cols()),
            "V·V⁻¹ = I"
        );
        for w in dec.invariant_factors.windows(2) {
            assert!(num_traits::Zero::is_zero(&(&w[1] % &w[0])), "divisibility chain");
        }
        // off-diagonal of D is zero by construction of IntMatrix::zero fill
    }

    #[test]
    fn identity_and_zero() {
        let id = IntMatrix::identity(3);
        let dec = snf(&id);
        assert_eq!(dec.d, id);
        assert_eq!(dec.u, IntMatrix::identity(3));
        assert_eq!(dec.v, IntMatrix::identity(3));

        let z = IntMatrix::zero(2, 2);
        let dec = snf(&z);
        assert!(dec.d.is_zero());
        assert!(dec.invariant_factors.is_empty());
    }

    #[test]
    fn spec_two_by_two() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let dec = snf(&m);
        assert_eq!(
            dec.invariant_factors,
            vec![BigInt::from(2), BigInt::from(4)]
        );
        check_postconditions(&m, &dec);
    }

    // Independent oracle: invariant factors via determinantal divisors
    // d₁·…·d_k = gcd of all k×k minors, computed by Bareiss determinants.
    fn determinantal_factors(m: &IntMatrix) -> Vec<BigInt> {
        use itertools::Itertools;
        use num_integer::Integer;
        let mut factors = Vec::new();
        let mut prev = <BigInt as One>::one();
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::from(0);
            for rows in (0..m.rows()).combinations(k) {
                for cols in (0..m.cols()).combinations(k) {
                    let mut sub = IntMatrix::zero(k, k);
                    for (a, &i) in rows.iter().enumerate() {
                        for (b, &j) in cols.iter().enumerate() {
                            sub[(a, b)] = m[(i, j)].clone();
                        }
                    }
                    g = g.gcd(&sub.det_bareiss().unwrap());
                }
            }
            if num_traits::Zero::is_zero(&g) {
                break;
            }
            factors.push(&g / &prev);
            prev = g;
        }
        factors
    }

    #[test]
    fn gcd_reduction_oracle_small() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(determinantal_factors(&m), snf(&m).invariant_factors);
    }

    #[test]
    fn random_matrices_postconditions_and_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for case in 0..60 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let mut m = IntMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = BigInt::from(rng.gen_range(-5i64..=5));
                }
            }
            let dec = snf(&m);
            check_postconditions(&m, &dec);
            assert_eq!(
                determinantal_factors(&m),
                dec.invariant_factors,
                "case {case}: {m:?}"
            );
        }
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let m = IntMatrix::from_i64(&[&[3, 1, -2], &[0, 4, 1], &[5, -1, 0]]);
        let a = snf(&m);
        let b = snf(&m);
        assert_eq!(a.u, b.u);
        assert_eq!(a.v, b.v);
        assert_eq!(a.d, b.d);
    }

    #[test]
    fn machine_and_bigint_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let mut m = IntMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = BigInt::from(rng.gen_range(-9i64..=9));
                }
            }
            let fast = run::<MachState>(&m, Want::ALL).unwrap();
            let slow = run::<BigState>(&m, Want::ALL).unwrap();
            assert_eq!(fast.d, slow.d);
            assert_eq!(fast.u, slow.u);
            assert_eq!(fast.v, slow.v);
        }
    }
}

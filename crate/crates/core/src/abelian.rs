//! Finitely generated abelian groups in canonical form, together with the
//! subquotient machinery (kernel-mod-image with change-of-basis witnesses)
//! that realizes every cohomology group in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::ExactError;
use crate::matrix::IntMatrix;
use crate::snf::{snf_select, SmithDecomposition, Want};
use crate::solve::{solve_linear, solve_with, LinearVerdict};

/// Canonical form: two values are isomorphic groups iff they are equal.
/// Torsion coefficients are ≥ 2 and in divisibility order; free generators
/// come last.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub free_rank: usize,
    #[serde(with = "crate::jsonutil::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        FgAbGroup::free(0)
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 2);
        FgAbGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(n)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of canonical generators (torsion first, then free).
    pub fn gens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the i-th canonical generator: d ≥ 2 for torsion, 0 for free.
    pub fn gen_order(&self, i: usize) -> BigInt {
        if i < self.torsion.len() {
            self.torsion[i].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// A homomorphism between groups in canonical form, as a matrix on the
/// canonical generators (rows indexed by target generators).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    /// Checked construction: the image of each source relation must be a
    /// target relation. Entries on torsion target rows are reduced to their
    /// canonical residues.
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        mut matrix: IntMatrix,
    ) -> Result<Self, ExactError> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(ExactError::Dimension {
                what: format!(
                    "hom matrix {}x{} does not match target {} gens / source {} gens",
                    matrix.rows(),
                    matrix.cols(),
                    target.gens(),
                    source.gens()
                ),
            });
        }
        for j in 0..source.gens() {
            let o = source.gen_order(j);
            if o.is_zero() {
                continue;
            }
            for i in 0..target.gens() {
                let t = target.gen_order(i);
                let v = &o * &matrix[(i, j)];
                let ok = if t.is_zero() {
                    v.is_zero()
                } else {
                    (&v % &t).is_zero()
                };
                if !ok {
                    return Err(ExactError::IllDefined {
                        what: format!(
                            "generator {j} of order {o} maps with coefficient {} on target generator {i} of order {t}",
                            matrix[(i, j)]
                        ),
                    });
                }
            }
        }
        for i in 0..target.gens() {
            let t = target.gen_order(i);
            if t.is_zero() {
                continue;
            }
            for j in 0..source.gens() {
                let v = matrix[(i, j)].mod_floor(&t);
                matrix[(i, j)] = v;
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.gens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.gens(), source.gens()),
        }
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom, ExactError> {
        if other.target != self.source {
            return Err(ExactError::Dimension {
                what: "compose: inner target differs from outer source".into(),
            });
        }
        GroupHom::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.matrix.mul_vec(coords);
        for (i, x) in out.iter_mut().enumerate() {
            let t = self.target.gen_order(i);
            if !t.is_zero() {
                *x = x.mod_floor(&t);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix == IntMatrix::identity(self.source.gens())
    }
}

// ---------------------------------------------------------------------------
// Subquotients: (kernel lattice) / (image lattice) with witnesses.
// ---------------------------------------------------------------------------

enum KernelSpec {
    /// The kernel is all of the ambient ℤ^n.
    Full(usize),
    /// Explicit saturated basis (columns) with its decomposition for solving.
    Basis {
        basis: IntMatrix,
        dec: SmithDecomposition,
    },
}

/// A subquotient K/I of an ambient ℤ^n, with everything needed to map
/// vectors to canonical-form coordinates and back. This is the witness the
/// crate attaches to every computed cohomology group.
pub struct Subquotient {
    kernel: KernelSpec,
    /// k×k unimodular: y = u·x takes kernel coordinates to aligned
    /// coordinates in which the image lattice is diagonal.
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Diagonal of the relation matrix in aligned coordinates (1s kept).
    diag: Vec<BigInt>,
    /// Indices into `diag` that survive as canonical generators:
    /// torsion (d ≥ 2) in divisibility order, then free (d = 0).
    keep: Vec<usize>,
    pub group: FgAbGroup,
}

impl Subquotient {
    /// Quotient ℤ^n / (lattice spanned by the columns of `relations`).
    pub fn quotient(ambient: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), ambient, "relation vectors live in ℤ^n");
        Self::build(KernelSpec::Full(ambient), relations.clone())
    }

    /// ker/im subquotient: `kernel_basis` columns span a saturated sublattice
    /// of ℤ^n; each image generator (column of `image_gens`) must lie in it.
    pub fn new(kernel_basis: IntMatrix, image_gens: &IntMatrix) -> Result<Self, ExactError> {
        let k = kernel_basis.cols();
        let dec = snf_select(&kernel_basis, Want::ALL);
        let mut c = IntMatrix::zero(k, image_gens.cols());
        for j in 0..image_gens.cols() {
            let g = image_gens.column(j);
            match solve_with(&dec, k, &g) {
                LinearVerdict::Solution(s) => c.set_column(j, &s.particular),
                LinearVerdict::NoSolution => {
                    return Err(ExactError::InternalInconsistency {
                        what: format!("image generator {j} is not in the kernel lattice"),
                    })
                }
            }
        }
        Ok(Self::build(
            KernelSpec::Basis {
                basis: kernel_basis,
                dec,
            },
            c,
        ))
    }

    fn build(kernel: KernelSpec, relations_in_kernel_coords: IntMatrix) -> Self {
        let k = match &kernel {
            KernelSpec::Full(n) => *n,
            KernelSpec::Basis { basis, .. } => basis.cols(),
        };
        assert_eq!(relations_in_kernel_coords.rows(), k);
        let dec = snf_select(&relations_in_kernel_coords, Want::ROW_SIDE);
        let r = dec.rank();
        let mut diag = vec![BigInt::zero(); k];
        for (i, d) in dec.invariant_factors.iter().enumerate() {
            diag[i] = d.clone();
        }
        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in diag.iter().enumerate().take(r) {
            if !d.is_one() {
                keep.push(i);
                torsion.push(d.clone());
            }
        }
        let free_rank = k - r;
        keep.extend(r..k);
        let group = FgAbGroup { free_rank, torsion };
        Subquotient {
            kernel,
            u: dec.u,
            u_inv: dec.u_inv,
            diag,
            keep,
            group,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.kernel {
            KernelSpec::Full(n) => *n,
            KernelSpec::Basis { basis, .. } => basis.rows(),
        }
    }

    fn kernel_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        match &self.kernel {
            KernelSpec::Full(n) => {
                assert_eq!(v.len(), *n);
                Some(v.to_vec())
            }
            KernelSpec::Basis { basis, dec } => {
                assert_eq!(v.len(), basis.rows());
                match solve_with(dec, basis.cols(), v) {
                    LinearVerdict::Solution(s) => Some(s.particular),
                    LinearVerdict::NoSolution => None,
                }
            }
        }
    }

    /// Canonical coordinates of the class of `v`, or None when `v` is not in
    /// the kernel lattice.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.kernel_coords(v)?;
        let y = self.u.mul_vec(&x);
        let coords = self
            .keep
            .iter()
            .map(|&i| {
                let d = &self.diag[i];
                if d.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(d)
                }
            })
            .collect();
        Some(coords)
    }

    /// An ambient vector representing the class with the given canonical
    /// coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.group.gens());
        let k = self.diag.len();
        let mut y = vec![BigInt::zero(); k];
        for (slot, &i) in self.keep.iter().enumerate() {
            y[i] = coords[slot].clone();
        }
        let x = self.u_inv.mul_vec(&y);
        match &self.kernel {
            KernelSpec::Full(_) => x,
            KernelSpec::Basis { basis, .. } => basis.mul_vec(&x),
        }
    }

    pub fn is_class_zero(&self, v: &[BigInt]) -> Option<bool> {
        self.class_of(v).map(|c| c.iter().all(Zero::is_zero))
    }
}

/// The group presented by `m` with rows as relations on ℤ^cols.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    Subquotient::quotient(m.cols(), &m.transpose()).group
}

/// ℤ^rows / (column span of m) — the cokernel of m acting on column vectors.
pub fn coker_of_columns(m: &IntMatrix) -> FgAbGroup {
    Subquotient::quotient(m.rows(), m).group
}

/// Induce a hom on quotients from a raw matrix on the ambient lattices.
/// Errors with `IllDefined` when the raw map does not respect relations,
/// i.e. when some relation representative maps outside the target relation
/// span augmented by nothing (checked through class arithmetic).
pub fn induced_on_quotients(
    raw: &IntMatrix,
    source: &Subquotient,
    target: &Subquotient,
) -> Result<GroupHom, ExactError> {
    if raw.cols() != source.ambient_dim() || raw.rows() != target.ambient_dim() {
        return Err(ExactError::Dimension {
            what: "raw matrix does not match ambient dimensions".into(),
        });
    }
    // Well-definedness: d_j · raw(gen_j) must be zero in the target for each
    // canonical source generator of order d_j; free generators impose nothing.
    let mut cols = Vec::with_capacity(source.group.gens());
    for j in 0..source.group.gens() {
        let mut coords = vec![BigInt::zero(); source.group.gens()];
        coords[j] = BigInt::one();
        let rep = source.representative(&coords);
        let image = raw.mul_vec(&rep);
        let cls = target
            .class_of(&image)
            .ok_or_else(|| ExactError::IllDefined {
                what: format!("image of generator {j} leaves the target kernel lattice"),
            })?;
        let d = source.group.gen_order(j);
        if !d.is_zero() {
            let scaled: Vec<BigInt> = image.iter().map(|x| x * &d).collect();
            let c = target
                .class_of(&scaled)
                .ok_or_else(|| ExactError::IllDefined {
                    what: format!("scaled image of generator {j} leaves the target kernel"),
                })?;
            if !c.iter().all(Zero::is_zero) {
                return Err(ExactError::IllDefined {
                    what: format!("relation {d}·g_{j} is not sent to a target relation"),
                });
            }
        }
        cols.push(cls);
    }
    let mut matrix = IntMatrix::zero(target.group.gens(), source.group.gens());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            matrix[(i, j)] = v.clone();
        }
    }
    GroupHom::new(source.group.clone(), target.group.clone(), matrix)
}

// ---------------------------------------------------------------------------
// Lattice-with-relations utilities (subgroups of presented groups), used by
// the tower verdicts.
// ---------------------------------------------------------------------------

/// A subgroup of ℤ^n / L presented by generators; stored as the sublattice
/// span(gens) + L of ℤ^n.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: usize,
    /// Columns: subgroup generators together with the ambient relations.
    pub lattice_gens: IntMatrix,
}

impl Subgroup {
    pub fn new(ambient: usize, gens: &IntMatrix, relations: &IntMatrix) -> Self {
        Subgroup {
            ambient,
            lattice_gens: gens.hstack(relations),
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        solve_linear(&self.lattice_gens, v).is_solution()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        (0..other.lattice_gens.cols()).all(|j| self.contains(&other.lattice_gens.column(j)))
    }

    pub fn equals(&self, other: &Subgroup) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }

    /// Abstract isomorphism type of (span(gens)+L)/L.
    pub fn abstract_type(&self, relations: &IntMatrix) -> FgAbGroup {
        // K = {x : G·x ∈ L}: first-m coordinates of ker [G | Λ].
        let g = &self.lattice_gens;
        let m = g.cols();
        let stacked = g.hstack(relations);
        let ker = crate::solve::kernel_basis(&stacked);
        let mut k_gens = IntMatrix::zero(m, ker.cols());
        for j in 0..ker.cols() {
            for i in 0..m {
                k_gens[(i, j)] = ker[(i, j)].clone();
            }
        }
        Subquotient::quotient(m, &k_gens).group
    }

    /// Index [self : other] when other ⊆ self and the index is finite.
    pub fn index_over(&self, other: &Subgroup) -> Option<BigInt> {
        // Express other's lattice generators in a basis of self's lattice,
        // then read off the quotient order.
        let basis = crate::solve::image_basis(&self.lattice_gens);
        let mut rel = IntMatrix::zero(basis.cols(), other.lattice_gens.cols());
        for j in 0..other.lattice_gens.cols() {
            let col = other.lattice_gens.column(j);
            match solve_linear(&basis, &col) {
                LinearVerdict::Solution(s) => rel.set_column(j, &s.particular),
                LinearVerdict::NoSolution => return None,
            }
        }
        let q = Subquotient::quotient(basis.cols(), &rel).group;
        if !q.is_finite() {
            return None;
        }
        let mut order = BigInt::one();
        for d in &q.torsion {
            order *= d;
        }
        Some(order.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_from_i64;

    #[test]
    fn cokernel_spec_examples() {
        assert_eq!(
            cokernel(&IntMatrix::from_i64(&[&[2]])),
            FgAbGroup::cyclic(2)
        );
        assert_eq!(cokernel(&IntMatrix::zero(1, 1)), FgAbGroup::free(1));
        let g = cokernel(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(
            g,
            FgAbGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(2), BigInt::from(4)]
            }
        );
        assert_eq!(g.describe(), "Z/2 + Z/4");
    }

    #[test]
    fn cokernel_free_rank_convention() {
        // One relation (2,0,0) on Z^3: Z/2 + Z^2, free rank = cols - rank.
        let m = IntMatrix::from_i64(&[&[2, 0, 0]]);
        let g = cokernel(&m);
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn quotient_class_arithmetic() {
        // Z^2 / <(2,0)> = Z/2 + Z
        let rel = IntMatrix::from_i64(&[&[2], &[0]]);
        let q = Subquotient::quotient(2, &rel);
        assert_eq!(q.group.torsion, vec![BigInt::from(2)]);
        assert_eq!(q.group.free_rank, 1);
        let c = q.class_of(&vec_from_i64(&[3, 5])).unwrap();
        let rep = q.representative(&c);
        // difference must be in the relation lattice
        let diff = crate::matrix::vec_sub(&vec_from_i64(&[3, 5]), &rep);
        assert!(crate::solve::lattice_member(&rel, &diff));
        assert!(q.is_class_zero(&vec_from_i64(&[2, 0])).unwrap());
        assert!(!q.is_class_zero(&vec_from_i64(&[1, 0])).unwrap());
    }

    #[test]
    fn hom_respects_relations() {
        let z2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        // Z/2 -> Z must be zero
        assert!(GroupHom::new(z2.clone(), z.clone(), IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(GroupHom::new(z2.clone(), z.clone(), IntMatrix::from_i64(&[&[0]])).is_ok());
        // Z/2 -> Z/4 must land in the 2-torsion
        let z4 = FgAbGroup::cyclic(4);
        assert!(GroupHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(GroupHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(&[&[2]])).is_ok());
        // entries reduce mod the target order
        let h = GroupHom::new(z.clone(), z4.clone(), IntMatrix::from_i64(&[&[7]])).unwrap();
        assert_eq!(h.matrix[(0, 0)], BigInt::from(3));
    }

    #[test]
    fn induced_on_quotients_detects_ill_defined() {
        // source: Z/2 = Z/<2>, target: Z = Z/<0>; raw identity is ill-defined.
        let src = Subquotient::quotient(1, &IntMatrix::from_i64(&[&[2]]));
        let tgt = Subquotient::quotient(1, &IntMatrix::zero(1, 0));
        let raw = IntMatrix::from_i64(&[&[1]]);
        assert!(induced_on_quotients(&raw, &src, &tgt).is_err());
        // doubling descends Z/2 -> Z/4
        let tgt4 = Subquotient::quotient(1, &IntMatrix::from_i64(&[&[4]]));
        let h = induced_on_quotients(&IntMatrix::from_i64(&[&[2]]), &src, &tgt4).unwrap();
        assert_eq!(h.matrix[(0, 0)], BigInt::from(2));
    }

    #[test]
    fn subgroup_chain_arithmetic() {
        // G = Z, subgroups 2Z ⊃ 4Z with index 2.
        let relations = IntMatrix::zero(1, 0);
        let s2 = Subgroup::new(1, &IntMatrix::from_i64(&[&[2]]), &relations);
        let s4 = Subgroup::new(1, &IntMatrix::from_i64(&[&[4]]), &relations);
        assert!(s2.contains_subgroup(&s4));
        assert!(!s4.contains_subgroup(&s2));
        assert_eq!(s2.index_over(&s4).unwrap(), BigInt::from(2));
        assert_eq!(s2.abstract_type(&relations), FgAbGroup::free(1));
        // inside Z/8: image of x->3x is everything
        let rel8 = IntMatrix::from_i64(&[&[8]]);
        let im = Subgroup::new(1, &IntMatrix::from_i64(&[&[3]]), &rel8);
        let full = Subgroup::new(1, &IntMatrix::identity(1), &rel8);
        assert!(im.equals(&full));
        assert_eq!(im.abstract_type(&rel8), FgAbGroup::cyclic(8));
    }
}

//! Cohomology of chain complexes over ℤ and ℤ/2, with class arithmetic,
//! induced maps, and the Bockstein connecting homomorphism.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{induced_on_quotients, FgAbGroup, GroupHom, Subquotient};
use crate::chain::ChainComplex;
use crate::error::{ComplexError, ExactError};
use crate::matrix::{vec_all_even, vec_halve, IntMatrix};
use crate::mod2::{solve2, Elimination, Mat2, Solve2};
use crate::solve::kernel_basis;

/// H^d(C; ℤ) together with the witnesses to express classes in canonical
/// coordinates and to pick representatives.
pub struct CohomologyGroup {
    pub degree: usize,
    pub group: FgAbGroup,
    pub(crate) sub: Subquotient,
}

pub fn cohomology(c: &ChainComplex, d: usize) -> CohomologyGroup {
    let delta_down = if d == 0 {
        IntMatrix::zero(c.dim_at(0), 0)
    } else {
        c.coboundary(d - 1)
    };
    let delta_up = c.coboundary(d);
    let sub = if delta_up.rows() == 0 {
        Subquotient::quotient(c.dim_at(d), &delta_down)
    } else {
        let kernel = kernel_basis(&delta_up);
        Subquotient::new(kernel, &delta_down).expect("δδ = 0 puts the image inside the kernel")
    };
    CohomologyGroup {
        degree: d,
        group: sub.group.clone(),
        sub,
    }
}

impl CohomologyGroup {
    /// Canonical coordinates of a cocycle, or an error when the vector is
    /// not a cocycle.
    pub fn class_of(&self, cochain: &[BigInt]) -> Result<Vec<BigInt>, ComplexError> {
        self.sub.class_of(cochain).ok_or(ComplexError::NotACocycle)
    }

    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.sub.representative(coords)
    }

    pub fn is_zero_class(&self, cochain: &[BigInt]) -> Result<bool, ComplexError> {
        Ok(self.class_of(cochain)?.iter().all(Zero::is_zero))
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sub
    }
}

/// Contravariantly induced map on ℤ-cohomology: `cochain_map` sends cochains
/// of the map's target complex to cochains of its source complex, so the
/// resulting hom goes H(target) → H(source).
pub fn induced_hom(
    cochain_map: &IntMatrix,
    from: &CohomologyGroup,
    to: &CohomologyGroup,
) -> Result<GroupHom, ExactError> {
    induced_on_quotients(cochain_map, &from.sub, &to.sub)
}

// ---------------------------------------------------------------------------
// Mod-2 cohomology.
// ---------------------------------------------------------------------------

/// H^d(C; ℤ/2) with GF(2) witnesses.
pub struct CohomologyGroupZ2 {
    pub degree: usize,
    pub group: FgAbGroup,
    ambient: usize,
    /// Columns span ker δ_d mod 2.
    kmat: Mat2,
    /// Row echelon of the image inside kernel coordinates.
    im_rows: Vec<Vec<u8>>,
    im_pivots: Vec<usize>,
    free_cols: Vec<usize>,
}

pub fn cohomology_z2(c: &ChainComplex, d: usize) -> CohomologyGroupZ2 {
    let n = c.dim_at(d);
    let delta_up = Mat2::from_int_matrix(&c.coboundary(d));
    let kernel: Vec<Vec<u8>> = if delta_up.rows == 0 {
        (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        delta_up.kernel_basis()
    };
    let k = kernel.len();
    let mut kmat = Mat2::zero(n, k);
    for (j, col) in kernel.iter().enumerate() {
        for i in 0..n {
            kmat.set(i, j, col[i]);
        }
    }
    // image generators in kernel coordinates
    let delta_down = if d == 0 {
        IntMatrix::zero(n, 0)
    } else {
        c.coboundary(d - 1)
    };
    let dmat = Mat2::from_int_matrix(&delta_down);
    // rows = image generators expressed in kernel coordinates
    let mut im_in_kernel = Mat2::zero(delta_down.cols(), k);
    for g in 0..delta_down.cols() {
        let vec: Vec<u8> = (0..n).map(|i| dmat.get(i, g)).collect();
        match solve2(&kmat, &vec) {
            Solve2::Solution(x) => {
                for (j, &xj) in x.iter().enumerate() {
                    im_in_kernel.set(g, j, xj);
                }
            }
            Solve2::NoSolution(_) => unreachable!("δδ = 0 mod 2"),
        }
    }
    let elim = Elimination::run(&im_in_kernel);
    let im_pivots: Vec<usize> = elim.pivots.iter().map(|&(_, c)| c).collect();
    let im_rows: Vec<Vec<u8>> = elim
        .pivots
        .iter()
        .map(|&(r, _)| (0..k).map(|j| elim.reduced.get(r, j)).collect())
        .collect();
    let free_cols: Vec<usize> = (0..k).filter(|j| !im_pivots.contains(j)).collect();
    let group = FgAbGroup {
        free_rank: 0,
        torsion: vec![BigInt::from(2); free_cols.len()],
    };
    CohomologyGroupZ2 {
        degree: d,
        group,
        ambient: n,
        kmat,
        im_rows,
        im_pivots,
        free_cols,
    }
}

impl CohomologyGroupZ2 {
    pub fn rank(&self) -> usize {
        self.free_cols.len()
    }

    pub fn class_of(&self, cochain: &[u8]) -> Result<Vec<u8>, ComplexError> {
        assert_eq!(cochain.len(), self.ambient);
        let mut x = match solve2(&self.kmat, cochain) {
            Solve2::Solution(x) => x,
            Solve2::NoSolution(_) => return Err(ComplexError::NotACocycle),
        };
        for (row, &p) in self.im_rows.iter().zip(&self.im_pivots) {
            if x[p] == 1 {
                for (j, &r) in row.iter().enumerate() {
                    x[j] ^= r;
                }
            }
        }
        Ok(self.free_cols.iter().map(|&j| x[j]).collect())
    }

    pub fn representative(&self, coords: &[u8]) -> Vec<u8> {
        assert_eq!(coords.len(), self.free_cols.len());
        let mut x = vec![0u8; self.kmat.cols];
        for (slot, &j) in self.free_cols.iter().enumerate() {
            x[j] = coords[slot];
        }
        self.kmat.mul_vec(&x)
    }

    pub fn is_zero_class(&self, cochain: &[u8]) -> Result<bool, ComplexError> {
        Ok(self.class_of(cochain)?.iter().all(|&b| b == 0))
    }
}

/// Induced map on mod-2 cohomology (same contravariant convention as
/// `induced_hom`).
pub fn induced_hom_z2(
    cochain_map: &IntMatrix,
    from: &CohomologyGroupZ2,
    to: &CohomologyGroupZ2,
) -> Result<GroupHom, ExactError> {
    let m2 = Mat2::from_int_matrix(cochain_map);
    let mut matrix = IntMatrix::zero(to.rank(), from.rank());
    for j in 0..from.rank() {
        let mut coords = vec![0u8; from.rank()];
        coords[j] = 1;
        let rep = from.representative(&coords);
        let image = m2.mul_vec(&rep);
        let cls = to.class_of(&image).map_err(|_| ExactError::IllDefined {
            what: "cochain map does not preserve mod-2 cocycles".into(),
        })?;
        for (i, &b) in cls.iter().enumerate() {
            matrix[(i, j)] = BigInt::from(b);
        }
    }
    GroupHom::new(from.group.clone(), to.group.clone(), matrix)
}

// ---------------------------------------------------------------------------
// Bockstein 0 → ℤ →×2 ℤ → ℤ/2 → 0.
// ---------------------------------------------------------------------------

/// Bockstein of a mod-2 class: lift to an integer cochain, take δ/2.
/// The result is a degree d+1 integral cocycle; the class is independent of
/// the chosen lift.
pub fn bockstein(
    c: &ChainComplex,
    class_rep: &[u8],
    d: usize,
) -> Result<Vec<BigInt>, ComplexError> {
    bockstein_with_lift(c, class_rep, d, None)
}

/// Same, with an explicit integral lift offset: lift = rep + 2·offset.
pub fn bockstein_with_lift(
    c: &ChainComplex,
    class_rep: &[u8],
    d: usize,
    offset: Option<&[BigInt]>,
) -> Result<Vec<BigInt>, ComplexError> {
    assert_eq!(class_rep.len(), c.dim_at(d));
    let mut lift: Vec<BigInt> = class_rep.iter().map(|&b| BigInt::from(b)).collect();
    if let Some(off) = offset {
        assert_eq!(off.len(), lift.len());
        for (l, o) in lift.iter_mut().zip(off) {
            *l += 2 * o;
        }
    }
    let delta = c.coboundary(d);
    let up = delta.mul_vec(&lift);
    if !vec_all_even(&up) {
        return Err(ComplexError::NotACocycle);
    }
    Ok(vec_halve(&up))
}

/// Coordinates of a mod-2 reduction of an integral cochain.
pub fn reduce_mod2(v: &[BigInt]) -> Vec<u8> {
    v.iter().map(|x| if x.is_odd() { 1 } else { 0 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::matrix::vec_from_i64;
    use crate::simplicial::SimplicialComplex;
    use std::collections::HashMap;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[&["a", "b"], &["b", "c"], &["a", "c"]])
    }

    fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[
            &["a", "b", "c"],
            &["a", "b", "d"],
            &["a", "c", "d"],
            &["b", "c", "d"],
        ])
    }

    /// Six-vertex projective plane: antipodal quotient of the icosahedron,
    /// built as the gyroelongated pentagonal bipyramid.
    pub fn rp2_six_vertex() -> SimplicialComplex {
        let ico = icosahedron();
        let pairing: HashMap<String, String> = [
            ("a".to_string(), "z".to_string()),
            ("u0".to_string(), "l2".to_string()),
            ("u1".to_string(), "l3".to_string()),
            ("u2".to_string(), "l4".to_string()),
            ("u3".to_string(), "l0".to_string()),
            ("u4".to_string(), "l1".to_string()),
        ]
        .into_iter()
        .collect();
        let (q, _) = ico.quotient_by_free_involution(&pairing).unwrap();
        q
    }

    pub fn icosahedron() -> SimplicialComplex {
        let mut facets: Vec<Vec<String>> = Vec::new();
        for i in 0..5u32 {
            let j = (i + 1) % 5;
            facets.push(vec!["a".into(), format!("u{i}"), format!("u{j}")]);
            facets.push(vec!["z".into(), format!("l{i}"), format!("l{j}")]);
            facets.push(vec![format!("u{i}"), format!("u{j}"), format!("l{i}")]);
            facets.push(vec![format!("l{i}"), format!("l{j}"), format!("u{j}")]);
        }
        let mut vertices: Vec<String> = vec!["a".into(), "z".into()];
        for i in 0..5 {
            vertices.push(format!("u{i}"));
        }
        for i in 0..5 {
            vertices.push(format!("l{i}"));
        }
        SimplicialComplex::new(vertices, facets).unwrap()
    }

    #[test]
    fn circle_h1_is_z() {
        let c = ChainComplex::from_simplicial(&circle(), "circle");
        let h1 = cohomology(&c, 1);
        assert_eq!(h1.group, FgAbGroup::free(1));
    }

    #[test]
    fn sphere_cohomology() {
        let c = ChainComplex::from_simplicial(&sphere(), "sphere");
        assert_eq!(cohomology(&c, 0).group, FgAbGroup::free(1));
        assert!(cohomology(&c, 1).group.is_zero());
        assert_eq!(cohomology(&c, 2).group, FgAbGroup::free(1));
    }

    #[test]
    fn rp2_cohomology_with_rank_oracle() {
        let rp2 = rp2_six_vertex();
        assert_eq!(rp2.vertex_count(), 6);
        assert_eq!(rp2.simplex_count(2), 10);
        assert_eq!(rp2.euler_characteristic(), 1);
        let c = ChainComplex::from_simplicial(&rp2, "rp2");
        let h2 = cohomology(&c, 2);
        assert_eq!(h2.group, FgAbGroup::cyclic(2));
        // independent rank count: rational rank 0, mod-2 rank 1
        let delta1 = c.coboundary(1);
        let rank_q = delta1.rank_rational();
        assert_eq!(c.dim_at(2) - rank_q, 0, "rational H² rank");
        let h2_mod2 = cohomology_z2(&c, 2);
        assert_eq!(h2_mod2.rank(), 1, "mod-2 H² rank");
    }

    #[test]
    fn relative_pair_fundamental_class() {
        let x = SimplicialComplex::from_facets(&[&["a", "b", "c"]]);
        let bdy = x
            .subcomplex(&[
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
                vec!["a".into(), "c".into()],
            ])
            .unwrap();
        let (rel, _) = ChainComplex::relative(&x, &bdy, "pair").unwrap();
        assert_eq!(cohomology(&rel, 2).group, FgAbGroup::free(1));
        // (X, X) vanishes in all degrees
        let (self_rel, _) = ChainComplex::relative(&x, &x, "self").unwrap();
        for d in 0..=2 {
            assert!(cohomology(&self_rel, d).group.is_zero());
        }
    }

    #[test]
    fn induced_identity_and_constant() {
        let k = circle();
        let c = ChainComplex::from_simplicial(&k, "circle");
        let h1 = cohomology(&c, 1);
        let id = crate::simplicial::SimplicialMap::identity(&k);
        let cochain = id.chain_map(1).transpose();
        let h = induced_hom(&cochain, &h1, &cohomology(&c, 1)).unwrap();
        assert!(h.is_identity());
        // constant map kills positive-degree cohomology
        let images: HashMap<String, String> = ["a", "b", "c"]
            .iter()
            .map(|v| (v.to_string(), "a".to_string()))
            .collect();
        let cst = crate::simplicial::SimplicialMap::new(k.clone(), k.clone(), &images).unwrap();
        let h = induced_hom(&cst.chain_map(1).transpose(), &h1, &cohomology(&c, 1)).unwrap();
        assert!(h.matrix.is_zero());
    }

    /// Simplicial degree-p circle map: 3p-gon onto the triangle.
    fn polygon(n: usize, prefix: &str) -> SimplicialComplex {
        let facets: Vec<Vec<String>> = (0..n)
            .map(|i| vec![format!("{prefix}{i}"), format!("{prefix}{}", (i + 1) % n)])
            .collect();
        let vertices = (0..n).map(|i| format!("{prefix}{i}")).collect();
        SimplicialComplex::new(vertices, facets).unwrap()
    }

    #[test]
    fn degree_p_circle_map_with_winding_oracle() {
        for p in [2usize, 3] {
            let big = polygon(3 * p, "v");
            let small = polygon(3, "w");
            let images: HashMap<String, String> = (0..3 * p)
                .map(|i| (format!("v{i}"), format!("w{}", i % 3)))
                .collect();
            let f = crate::simplicial::SimplicialMap::new(big.clone(), small.clone(), &images)
                .unwrap();
            let cb = ChainComplex::from_simplicial(&big, "big");
            let cs = ChainComplex::from_simplicial(&small, "small");
            let h_small = cohomology(&cs, 1);
            let h_big = cohomology(&cb, 1);
            let hom = induced_hom(&f.chain_map(1).transpose(), &h_small, &h_big).unwrap();
            assert_eq!(hom.matrix.rows(), 1);
            assert_eq!(hom.matrix.cols(), 1);
            // winding-number oracle: pull a generator cocycle of the small
            // circle back and sum its values along the big cycle.
            let gen_rep = h_small.representative(&vec_from_i64(&[1]));
            let pulled = f.chain_map(1).transpose().mul_vec(&gen_rep);
            let mut winding = BigInt::from(0);
            for (j, s) in big.simplices(1).iter().enumerate() {
                // orient each edge along the cycle direction i -> i+1
                let i0: usize = big.vertex_name(s[0])[1..].parse().unwrap();
                let i1: usize = big.vertex_name(s[1])[1..].parse().unwrap();
                let forward = (i0 + 1) % (3 * p) == i1;
                let along = if forward { 1 } else { -1 };
                // small-circle generator sums to ±1 around the small cycle;
                // accumulate pulled-back values with cycle orientation.
                winding += BigInt::from(along) * &pulled[j];
            }
            assert_eq!(
                winding.magnitude().to_string(),
                p.to_string(),
                "winding oracle p={p}"
            );
            assert_eq!(
                hom.matrix[(0, 0)].magnitude().to_string(),
                p.to_string(),
                "induced H¹ map is ×{p}"
            );
        }
    }

    #[test]
    fn functoriality_of_induced_maps() {
        let big = polygon(6, "v");
        let mid = polygon(3, "w");
        let images: HashMap<String, String> = (0..6)
            .map(|i| (format!("v{i}"), format!("w{}", i % 3)))
            .collect();
        let f = crate::simplicial::SimplicialMap::new(big.clone(), mid.clone(), &images).unwrap();
        let rot: HashMap<String, String> = (0..3)
            .map(|i| (format!("w{i}"), format!("w{}", (i + 1) % 3)))
            .collect();
        let g = crate::simplicial::SimplicialMap::new(mid.clone(), mid.clone(), &rot).unwrap();
        let gf = g.compose(&f).unwrap();
        let cb = ChainComplex::from_simplicial(&big, "big");
        let cm = ChainComplex::from_simplicial(&mid, "mid");
        let h_big = cohomology(&cb, 1);
        let h_mid = cohomology(&cm, 1);
        let h_mid2 = cohomology(&cm, 1);
        let ind_f = induced_hom(&f.chain_map(1).transpose(), &h_mid, &h_big).unwrap();
        let ind_g = induced_hom(&g.chain_map(1).transpose(), &h_mid2, &h_mid).unwrap();
        let ind_gf = induced_hom(&gf.chain_map(1).transpose(), &h_mid2, &h_big).unwrap();
        assert_eq!(ind_f.compose(&ind_g).unwrap(), ind_gf);
    }

    #[test]
    fn bockstein_on_rp2() {
        let rp2 = rp2_six_vertex();
        let c = ChainComplex::from_simplicial(&rp2, "rp2");
        let h1_mod2 = cohomology_z2(&c, 1);
        assert_eq!(h1_mod2.rank(), 1);
        let h2 = cohomology(&c, 2);
        let gen = h1_mod2.representative(&[1]);
        let beta = bockstein(&c, &gen, 1).unwrap();
        assert!(!h2.is_zero_class(&beta).unwrap(), "β(w) generates H²(RP²)");
        // zero class goes to zero
        let beta0 = bockstein(&c, &vec![0; c.dim_at(1)], 1).unwrap();
        assert!(h2.is_zero_class(&beta0).unwrap());
        // lift independence: shift the lift by 2·(random-ish offset)
        let offset: Vec<BigInt> = (0..c.dim_at(1)).map(|i| BigInt::from(i as i64 % 3)).collect();
        let beta2 = bockstein_with_lift(&c, &gen, 1, Some(&offset)).unwrap();
        let diff = crate::matrix::vec_sub(&beta, &beta2);
        assert!(h2.is_zero_class(&diff).unwrap(), "lift independence");
        // a class with an integral cocycle lift has zero Bockstein:
        // integral generator of H¹(circle) reduced mod 2
        let circ = circle();
        let cc = ChainComplex::from_simplicial(&circ, "circle");
        let h1z = cohomology(&cc, 1);
        let int_gen = h1z.representative(&vec_from_i64(&[1]));
        let red = reduce_mod2(&int_gen);
        let b = bockstein(&cc, &red, 1).unwrap();
        assert!(cohomology(&cc, 2).is_zero_class(&b).unwrap());
    }
}

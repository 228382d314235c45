//! Abstract simplicial complexes and simplicial maps.
//!
//! A complex stores its full closed simplex list per dimension, each simplex
//! as a sorted tuple of vertex indices with a stable index inside its
//! dimension. Orientation is the sorted vertex order; the boundary operator
//! uses the sign (−1)^i on omitting the i-th vertex.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

use crate::error::ComplexError;
use crate::matrix::IntMatrix;

pub type Vertex = u32;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    /// Ordered vertex ids; a vertex's index is its position here.
    vertex_names: Vec<String>,
    name_to_index: HashMap<String, Vertex>,
    /// simplices[d] = lexicographically sorted list of sorted index tuples.
    simplices: Vec<Vec<Vec<Vertex>>>,
    index: Vec<HashMap<Vec<Vertex>, usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct ComplexWire {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<String>>) -> Result<Self, ComplexError> {
        let mut name_to_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if name_to_index.insert(v.clone(), i as Vertex).is_some() {
                return Err(ComplexError::InvalidComplex(format!(
                    "duplicate vertex id {v:?}"
                )));
            }
        }
        let mut closed: Vec<BTreeSet<Vec<Vertex>>> = Vec::new();
        for facet in &facets {
            let mut tuple = Vec::with_capacity(facet.len());
            for name in facet {
                let Some(&i) = name_to_index.get(name) else {
                    return Err(ComplexError::InvalidComplex(format!(
                        "facet vertex {name:?} is not in the vertex list"
                    )));
                };
                tuple.push(i);
            }
            tuple.sort_unstable();
            tuple.dedup();
            if tuple.is_empty() {
                return Err(ComplexError::InvalidComplex("empty facet".into()));
            }
            insert_closure(&mut closed, &tuple);
        }
        let simplices: Vec<Vec<Vec<Vertex>>> = closed
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        let index = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex {
            vertex_names: vertices,
            name_to_index,
            simplices,
            index,
        })
    }

    pub fn from_facets(facets: &[&[&str]]) -> Self {
        let mut vertices: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for f in facets {
            for v in *f {
                if seen.insert(v.to_string()) {
                    vertices.push(v.to_string());
                }
            }
        }
        vertices.sort();
        let facet_names = facets
            .iter()
            .map(|f| f.iter().map(|v| v.to_string()).collect())
            .collect();
        SimplicialComplex::new(vertices, facet_names).expect("literal facets")
    }

    pub fn from_wire(wire: ComplexWire) -> Result<Self, ComplexError> {
        SimplicialComplex::new(wire.vertices, wire.facets)
    }

    pub fn to_wire(&self) -> ComplexWire {
        ComplexWire {
            vertices: self.vertex_names.clone(),
            facets: self
                .facet_tuples()
                .into_iter()
                .map(|t| t.iter().map(|&v| self.vertex_name(v).to_string()).collect())
                .collect(),
        }
    }

    /// Inclusion-maximal simplices.
    pub fn facet_tuples(&self) -> Vec<Vec<Vertex>> {
        let mut facets = Vec::new();
        for d in 0..=self.dim() {
            for s in &self.simplices[d] {
                let mut maximal = true;
                'outer: for dd in d + 1..=self.dim() {
                    for t in &self.simplices[dd] {
                        if s.iter().all(|v| t.contains(v)) {
                            maximal = false;
                            break 'outer;
                        }
                    }
                }
                if maximal {
                    facets.push(s.clone());
                }
            }
        }
        facets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v as usize]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<Vertex> {
        self.name_to_index.get(name).copied()
    }

    /// Largest d with a d-simplex, or None for the empty complex.
    pub fn dim_opt(&self) -> Option<usize> {
        if self.simplices.is_empty() {
            None
        } else {
            Some(self.simplices.len() - 1)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim_opt().map_or(0, |d| d)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<Vertex>] {
        if d < self.simplices.len() {
            &self.simplices[d]
        } else {
            &[]
        }
    }

    pub fn simplex_count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn simplex_index(&self, d: usize, tuple: &[Vertex]) -> Option<usize> {
        self.index.get(d)?.get(tuple).copied()
    }

    pub fn has_simplex(&self, tuple: &[Vertex]) -> bool {
        if tuple.is_empty() {
            return false;
        }
        self.simplex_index(tuple.len() - 1, tuple).is_some()
    }

    /// ∂_d as a matrix from d-chains to (d−1)-chains.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        if d == 0 || d > self.dim() {
            return IntMatrix::zero(
                if d == 0 { 0 } else { self.simplex_count(d - 1) },
                self.simplex_count(d),
            );
        }
        let mut m = IntMatrix::zero(self.simplex_count(d - 1), self.simplex_count(d));
        for (j, s) in self.simplices(d).iter().enumerate() {
            let mut sign = BigInt::one();
            for omit in 0..s.len() {
                let face: Vec<Vertex> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let i = self
                    .simplex_index(d - 1, &face)
                    .expect("closed under faces");
                m[(i, j)] = sign.clone();
                sign = -sign;
            }
        }
        m
    }

    /// Sub complex spanned by the given facets (vertex names), verified.
    pub fn subcomplex(&self, facets: &[Vec<String>]) -> Result<SimplicialComplex, ComplexError> {
        let sub = SimplicialComplex::new(self.vertex_names.clone(), facets.to_vec())?;
        for d in 0..=sub.dim() {
            for s in sub.simplices(d) {
                // vertex indices agree because the vertex list is shared
                if !self.has_simplex(s) {
                    return Err(ComplexError::InvalidComplex(format!(
                        "simplex {s:?} of the subcomplex is not in the ambient complex"
                    )));
                }
            }
        }
        Ok(sub)
    }

    /// Is every simplex of `other` (same vertex universe) a simplex here?
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        if other.vertex_names != self.vertex_names {
            return false;
        }
        (0..=other.dim()).all(|d| other.simplices(d).iter().all(|s| self.has_simplex(s)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for d in 0..=self.dim() {
            let c = self.simplex_count(d) as i64;
            chi += if d % 2 == 0 { c } else { -c };
        }
        chi
    }

    /// Quotient by a free simplicial involution given as a vertex pairing.
    /// Checks that the action is free, that no simplex contains an orbit
    /// pair, and that each quotient simplex has exactly the two preimages
    /// σ, tσ — the conditions under which the quotient complex realizes the
    /// topological quotient and the projection is a double cover.
    pub fn quotient_by_free_involution(
        &self,
        pairing: &HashMap<String, String>,
    ) -> Result<(SimplicialComplex, SimplicialMap), ComplexError> {
        let mut t = vec![Vertex::MAX; self.vertex_count()];
        for (a, b) in pairing {
            let (ia, ib) = match (self.vertex_index(a), self.vertex_index(b)) {
                (Some(x), Some(y)) => (x, y),
                _ => {
                    return Err(ComplexError::InvalidMap(format!(
                        "pairing names unknown vertices {a:?}, {b:?}"
                    )))
                }
            };
            t[ia as usize] = ib;
            t[ib as usize] = ia;
        }
        for v in 0..self.vertex_count() {
            let tv = t[v];
            if tv == Vertex::MAX || tv as usize == v || t[tv as usize] as usize != v {
                return Err(ComplexError::InvalidMap(
                    "pairing is not a free involution on the vertex set".into(),
                ));
            }
        }
        // orbit representative = smaller index
        let orbit_rep = |v: Vertex| -> Vertex { v.min(t[v as usize]) };
        let mut quot_vertices: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in 0..self.vertex_count() as Vertex {
            let r = orbit_rep(v);
            if seen.insert(r) {
                quot_vertices.push(self.vertex_name(r).to_string());
            }
        }
        let mut facets: Vec<Vec<String>> = Vec::new();
        let mut image_count: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for d in 0..=self.dim() {
            for s in self.simplices(d) {
                let mut img: Vec<Vertex> = s.iter().map(|&v| orbit_rep(v)).collect();
                img.sort_unstable();
                if img.windows(2).any(|w| w[0] == w[1]) {
                    return Err(ComplexError::InvalidComplex(format!(
                        "simplex {s:?} contains a vertex orbit pair"
                    )));
                }
                *image_count.entry(img).or_insert(0) += 1;
            }
        }
        for (img, count) in &image_count {
            if *count != 2 {
                return Err(ComplexError::InvalidComplex(format!(
                    "quotient simplex {img:?} has {count} preimages, expected exactly 2; \
                     subdivide before taking the quotient"
                )));
            }
        }
        for d in 0..=self.dim() {
            for s in self.simplices(d) {
                let img: Vec<String> = s
                    .iter()
                    .map(|&v| self.vertex_name(orbit_rep(v)).to_string())
                    .collect();
                facets.push(img);
            }
        }
        let quotient = SimplicialComplex::new(quot_vertices, facets)?;
        let images: HashMap<String, String> = (0..self.vertex_count() as Vertex)
            .map(|v| {
                (
                    self.vertex_name(v).to_string(),
                    self.vertex_name(orbit_rep(v)).to_string(),
                )
            })
            .collect();
        let cover = SimplicialMap::new(self.clone(), quotient.clone(), &images)?;
        Ok((quotient, cover))
    }
}

fn insert_closure(closed: &mut Vec<BTreeSet<Vec<Vertex>>>, tuple: &[Vertex]) {
    let d = tuple.len() - 1;
    while closed.len() <= d {
        closed.push(BTreeSet::new());
    }
    if !closed[d].insert(tuple.to_vec()) {
        return;
    }
    if d == 0 {
        return;
    }
    for omit in 0..tuple.len() {
        let face: Vec<Vertex> = tuple
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != omit)
            .map(|(_, &v)| v)
            .collect();
        insert_closure(closed, &face);
    }
}

/// A simplicial map given by a total vertex assignment. Degenerate simplex
/// images are allowed; the induced chain map sends them to zero.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    /// vertex_images[v] = image of source vertex v, as a target vertex index.
    pub vertex_images: Vec<Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        images: &HashMap<String, String>,
    ) -> Result<Self, ComplexError> {
        let mut vertex_images = Vec::with_capacity(source.vertex_count());
        for v in 0..source.vertex_count() {
            let name = &source.vertex_names[v];
            let Some(img_name) = images.get(name) else {
                return Err(ComplexError::InvalidMap(format!(
                    "no image for source vertex {name:?}"
                )));
            };
            let Some(w) = target.vertex_index(img_name) else {
                return Err(ComplexError::InvalidMap(format!(
                    "image vertex {img_name:?} is not in the target"
                )));
            };
            vertex_images.push(w);
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_images,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(c: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: c.clone(),
            target: c.clone(),
            vertex_images: (0..c.vertex_count() as Vertex).collect(),
        }
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for d in 0..=self.source.dim() {
            for s in self.source.simplices(d) {
                let mut img: Vec<Vertex> =
                    s.iter().map(|&v| self.vertex_images[v as usize]).collect();
                img.sort_unstable();
                img.dedup();
                if !self.target.has_simplex(&img) {
                    return Err(ComplexError::InvalidMap(format!(
                        "image of simplex {s:?} is not a simplex of the target"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Image tuple with the permutation sign, or None when degenerate.
    pub fn image_simplex(&self, s: &[Vertex]) -> Option<(Vec<Vertex>, i8)> {
        let raw: Vec<Vertex> = s.iter().map(|&v| self.vertex_images[v as usize]).collect();
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        // parity of the permutation taking raw to sorted
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&i| raw[i]);
        let mut sign = 1i8;
        let mut seen = vec![false; perm.len()];
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        Some((sorted, sign))
    }

    /// Chain map in degree d: rows = target d-simplices, cols = source.
    pub fn chain_map(&self, d: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(self.target.simplex_count(d), self.source.simplex_count(d));
        for (j, s) in self.source.simplices(d).iter().enumerate() {
            if let Some((img, sign)) = self.image_simplex(s) {
                let i = self.target.simplex_index(d, &img).expect("validated");
                m[(i, j)] = BigInt::from(sign);
            }
        }
        m
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &SimplicialMap) -> Result<SimplicialMap, ComplexError> {
        if other.target.vertex_names() != self.source.vertex_names() {
            return Err(ComplexError::InvalidMap(
                "compose: inner target does not match outer source".into(),
            ));
        }
        let vertex_images = other
            .vertex_images
            .iter()
            .map(|&v| self.vertex_images[v as usize])
            .collect();
        let map = SimplicialMap {
            source: other.source.clone(),
            target: self.target.clone(),
            vertex_images,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn is_constant(&self) -> bool {
        self.vertex_images.windows(2).all(|w| w[0] == w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_counts() {
        let k = SimplicialComplex::from_facets(&[&["a", "b", "c"]]);
        assert_eq!(k.simplex_count(0), 3);
        assert_eq!(k.simplex_count(1), 3);
        assert_eq!(k.simplex_count(2), 1);
        assert_eq!(k.dim(), 2);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = SimplicialComplex::from_facets(&[&["a", "b", "c"], &["b", "c", "d"]]);
        let d2 = k.boundary_matrix(2);
        let d1 = k.boundary_matrix(1);
        assert!(d1.mul(&d2).is_zero());
    }

    #[test]
    fn chain_map_commutes_with_boundary() {
        let src = SimplicialComplex::from_facets(&[&["a", "b", "c"]]);
        let tgt = SimplicialComplex::from_facets(&[&["x", "y", "z"]]);
        let images: HashMap<String, String> = [("a", "z"), ("b", "y"), ("c", "x")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let f = SimplicialMap::new(src.clone(), tgt.clone(), &images).unwrap();
        for d in 1..=2 {
            let lhs = tgt.boundary_matrix(d).mul(&f.chain_map(d));
            let rhs = f.chain_map(d - 1).mul(&src.boundary_matrix(d));
            assert_eq!(lhs, rhs, "degree {d}");
        }
    }

    #[test]
    fn degenerate_images_go_to_zero() {
        let src = SimplicialComplex::from_facets(&[&["a", "b"]]);
        let tgt = SimplicialComplex::from_facets(&[&["x"]]);
        let images: HashMap<String, String> = [("a", "x"), ("b", "x")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let f = SimplicialMap::new(src, tgt, &images).unwrap();
        assert!(f.chain_map(1).is_zero());
    }

    #[test]
    fn quotient_hexagon_is_double_cover_of_triangle() {
        // hexagon 0..5 with antipodal v ↦ v+3
        let hex = SimplicialComplex::from_facets(&[
            &["h0", "h1"],
            &["h1", "h2"],
            &["h2", "h3"],
            &["h3", "h4"],
            &["h4", "h5"],
            &["h5", "h0"],
        ]);
        let pairing: HashMap<String, String> = (0..3)
            .map(|i| (format!("h{i}"), format!("h{}", i + 3)))
            .collect();
        let (q, cover) = hex.quotient_by_free_involution(&pairing).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.simplex_count(1), 3);
        assert_eq!(cover.source.simplex_count(1), 6);
    }

    #[test]
    fn quotient_rejects_square_with_antipodal() {
        // 4-cycle with v ↦ v+2: opposite edges share the same image pair
        // {0,1} and {2,3} both map to {0,1}; that is fine (two preimages),
        // but the diagonal-free condition fails for the 4-cycle since
        // edge {1,2} maps to {1,0} as well — leaving {0,1} with four
        // preimages? Construct and let the checker decide.
        let square = SimplicialComplex::from_facets(&[
            &["s0", "s1"],
            &["s1", "s2"],
            &["s2", "s3"],
            &["s3", "s0"],
        ]);
        let pairing: HashMap<String, String> = [("s0", "s2"), ("s1", "s3")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        // quotient would be a single edge covered 4-to-1: rejected
        assert!(square.quotient_by_free_involution(&pairing).is_err());
    }
}

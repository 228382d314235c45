//! Constructors: cones, joins, simplex skeleta, simplicial mapping cylinders
//! and telescopes, filtrations, and the relative-cohomology towers they
//! induce.
//!
//! The mapping cylinder of a simplicial map f: K → L is triangulated by the
//! ordered staircase: for σ = [v₀ < … < v_p] in K and 0 ≤ j ≤ p it contains
//! the simplex on {v₀,…,v_j} ∪ {f(v_j),…,f(v_p)}, with every source vertex
//! preceding every target vertex in the global order. The cylinder contains
//! K and L as subcomplexes and simplicially retracts onto L.

use itertools::Itertools;
use std::collections::HashMap;

use crate::abelian::{induced_on_quotients, GroupHom};
use crate::chain::ChainComplex;
use crate::cohomology::{cohomology, CohomologyGroup};
use crate::error::ComplexError;
use crate::matrix::IntMatrix;
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// n-skeleton of the N-simplex, vertices "p0" … "pN".
pub fn simplex_skeleton(n_big: usize, n: usize) -> SimplicialComplex {
    let vertices: Vec<String> = (0..=n_big).map(|i| format!("p{i:02}")).collect();
    let facets: Vec<Vec<String>> = (0..=n_big)
        .combinations(n + 1)
        .map(|c| c.into_iter().map(|i| format!("p{i:02}")).collect())
        .collect();
    SimplicialComplex::new(vertices, facets).expect("skeleton")
}

pub fn cone(k: &SimplicialComplex, apex: &str) -> SimplicialComplex {
    let mut vertices: Vec<String> = k.vertex_names().to_vec();
    assert!(
        !vertices.iter().any(|v| v == apex),
        "apex collides with a vertex"
    );
    vertices.push(apex.to_string());
    let mut facets: Vec<Vec<String>> = Vec::new();
    if k.simplex_count(0) == 0 {
        facets.push(vec![apex.to_string()]);
    }
    for t in k.facet_tuples() {
        let mut f: Vec<String> = t.iter().map(|&v| k.vertex_name(v).to_string()).collect();
        f.push(apex.to_string());
        facets.push(f);
    }
    SimplicialComplex::new(vertices, facets).expect("cone")
}

/// Join of two complexes on disjoint (prefixed) vertex sets.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let kv: Vec<String> = k.vertex_names().iter().map(|v| format!("a.{v}")).collect();
    let lv: Vec<String> = l.vertex_names().iter().map(|v| format!("b.{v}")).collect();
    let mut vertices = kv;
    vertices.extend(lv);
    let mut facets = Vec::new();
    for fk in k.facet_tuples() {
        for fl in l.facet_tuples() {
            let mut f: Vec<String> = fk
                .iter()
                .map(|&v| format!("a.{}", k.vertex_name(v)))
                .collect();
            f.extend(fl.iter().map(|&v| format!("b.{}", l.vertex_name(v))));
            facets.push(f);
        }
    }
    SimplicialComplex::new(vertices, facets).expect("join")
}

pub struct MappingCylinder {
    pub complex: SimplicialComplex,
    pub source_inclusion: SimplicialMap,
    pub target_inclusion: SimplicialMap,
    pub retraction: SimplicialMap,
}

/// Staircase cylinder with namespaces `s.` (source) and `t.` (target).
pub fn mapping_cylinder(f: &SimplicialMap) -> MappingCylinder {
    let complex = cylinder_complex(f, "s.", "t.");
    let src_images: HashMap<String, String> = f
        .source
        .vertex_names()
        .iter()
        .map(|v| (v.clone(), format!("s.{v}")))
        .collect();
    let tgt_images: HashMap<String, String> = f
        .target
        .vertex_names()
        .iter()
        .map(|v| (v.clone(), format!("t.{v}")))
        .collect();
    let source_inclusion =
        SimplicialMap::new(f.source.clone(), complex.clone(), &src_images).expect("K ⊂ Cyl");
    let target_inclusion =
        SimplicialMap::new(f.target.clone(), complex.clone(), &tgt_images).expect("L ⊂ Cyl");
    let mut retract_images: HashMap<String, String> = HashMap::new();
    for (i, v) in f.source.vertex_names().iter().enumerate() {
        let w = f.target.vertex_name(f.vertex_images[i]);
        retract_images.insert(format!("s.{v}"), w.clone());
    }
    for w in f.target.vertex_names() {
        retract_images.insert(format!("t.{w}"), w.clone());
    }
    let retraction =
        SimplicialMap::new(complex.clone(), f.target.clone(), &retract_images).expect("retract");
    MappingCylinder {
        complex,
        source_inclusion,
        target_inclusion,
        retraction,
    }
}

fn cylinder_complex(f: &SimplicialMap, sp: &str, tp: &str) -> SimplicialComplex {
    let mut vertices: Vec<String> = f
        .source
        .vertex_names()
        .iter()
        .map(|v| format!("{sp}{v}"))
        .collect();
    vertices.extend(f.target.vertex_names().iter().map(|v| format!("{tp}{v}")));
    let mut facets: Vec<Vec<String>> = Vec::new();
    for t in f.target.facet_tuples() {
        facets.push(
            t.iter()
                .map(|&v| format!("{tp}{}", f.target.vertex_name(v)))
                .collect(),
        );
    }
    for d in 0..=f.source.dim() {
        for s in f.source.simplices(d) {
            for j in 0..s.len() {
                let mut piece: Vec<String> = s[..=j]
                    .iter()
                    .map(|&v| format!("{sp}{}", f.source.vertex_name(v)))
                    .collect();
                let mut tail: Vec<u32> = s[j..]
                    .iter()
                    .map(|&v| f.vertex_images[v as usize])
                    .collect();
                tail.sort_unstable();
                tail.dedup();
                piece.extend(
                    tail.iter()
                        .map(|&v| format!("{tp}{}", f.target.vertex_name(v))),
                );
                facets.push(piece);
            }
        }
    }
    SimplicialComplex::new(vertices, facets).expect("cylinder")
}

/// Nested subcomplexes U₁ ⊆ U₂ ⊆ … ⊆ U_k of an ambient complex.
pub struct Filtration {
    pub ambient: SimplicialComplex,
    pub stages: Vec<SimplicialComplex>,
}

impl Filtration {
    pub fn new(
        ambient: SimplicialComplex,
        stage_facets: Vec<Vec<Vec<String>>>,
    ) -> Result<Self, ComplexError> {
        let mut stages = Vec::with_capacity(stage_facets.len());
        for facets in &stage_facets {
            stages.push(ambient.subcomplex(facets)?);
        }
        for w in stages.windows(2) {
            if !w[1].contains_complex(&w[0]) {
                return Err(ComplexError::InvalidFiltration(
                    "stages are not nested".into(),
                ));
            }
        }
        Ok(Filtration { ambient, stages })
    }
}

pub struct Telescope {
    pub complex: SimplicialComplex,
    /// Stage i (1-based) = union of the first i mapping cylinders.
    pub filtration: Filtration,
    /// Vertex names of level i carry the prefix "L{i}.".
    pub levels: usize,
}

/// Telescope of the composable sequence maps[0]: P₀ → P₁, maps[1]: P₁ → P₂, …
pub fn mapping_telescope(maps: &[SimplicialMap]) -> Result<Telescope, ComplexError> {
    if maps.is_empty() {
        return Err(ComplexError::InvalidMap("empty telescope".into()));
    }
    for w in maps.windows(2) {
        if w[0].target.vertex_names() != w[1].source.vertex_names() {
            return Err(ComplexError::InvalidMap(
                "telescope maps are not composable".into(),
            ));
        }
    }
    let mut vertices: Vec<String> = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        vertices.extend(m.source.vertex_names().iter().map(|v| format!("L{i}.{v}")));
    }
    let last = maps.len();
    vertices.extend(
        maps[last - 1]
            .target
            .vertex_names()
            .iter()
            .map(|v| format!("L{last}.{v}")),
    );
    let mut cylinder_facets: Vec<Vec<Vec<String>>> = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        let piece = cylinder_complex(m, &format!("L{i}."), &format!("L{}.", i + 1));
        cylinder_facets.push(
            piece
                .facet_tuples()
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|&v| piece.vertex_name(v).to_string())
                        .collect()
                })
                .collect(),
        );
    }
    let all_facets: Vec<Vec<String>> = cylinder_facets.iter().flatten().cloned().collect();
    let complex = SimplicialComplex::new(vertices, all_facets)?;
    let mut stage_facets = Vec::new();
    let mut acc: Vec<Vec<String>> = Vec::new();
    for facets in &cylinder_facets {
        acc.extend(facets.iter().cloned());
        stage_facets.push(acc.clone());
    }
    let filtration = Filtration::new(complex.clone(), stage_facets)?;
    Ok(Telescope {
        complex,
        filtration,
        levels: maps.len() + 1,
    })
}

/// Cochain-level enlargement map C^d(X, U_big) → C^d(X, U_small) for nested
/// U_small ⊆ U_big: a cochain vanishing on the bigger subcomplex also
/// vanishes on the smaller one.
fn relative_enlargement_matrix(
    x: &SimplicialComplex,
    kept_small: &[usize],
    kept_big: &[usize],
    x_count: usize,
) -> IntMatrix {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut pos_small = vec![None; x_count];
    for (ii, &i) in kept_small.iter().enumerate() {
        pos_small[i] = Some(ii);
    }
    let mut m = IntMatrix::zero(kept_small.len(), kept_big.len());
    let _ = x;
    for (jj, &j) in kept_big.iter().enumerate() {
        let ii = pos_small[j].expect("U_small ⊆ U_big: surviving cells survive below");
        m[(ii, jj)] = BigInt::one();
    }
    m
}

/// The inverse sequence H^d(X, U₁) ← H^d(X, U₂) ← … induced by a filtration,
/// returned as canonical groups with the enlargement bonding maps.
pub fn relative_tower(
    x: &SimplicialComplex,
    filtration: &Filtration,
    d: usize,
) -> Result<(Vec<CohomologyGroup>, Vec<GroupHom>), ComplexError> {
    let mut groups: Vec<CohomologyGroup> = Vec::new();
    let mut kepts: Vec<Vec<usize>> = Vec::new();
    for (i, u) in filtration.stages.iter().enumerate() {
        let (rel, kept) = ChainComplex::relative(x, u, &format!("rel{i}"))?;
        groups.push(cohomology(&rel, d));
        kepts.push(kept.get(d).cloned().unwrap_or_default());
    }
    let mut bondings = Vec::new();
    for i in 0..groups.len().saturating_sub(1) {
        let m = relative_enlargement_matrix(x, &kepts[i], &kepts[i + 1], x.simplex_count(d));
        let hom = induced_on_quotients(&m, groups[i + 1].subquotient(), groups[i].subquotient())
            .map_err(|e| ComplexError::InvalidFiltration(format!("enlargement map: {e}")))?;
        bondings.push(hom);
    }
    Ok((groups, bondings))
}

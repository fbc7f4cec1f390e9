//! Exact graph symmetry: automorphism groups, orbits on vertices, edges and
//! arcs, transitivity classification and normality tests.

mod group;
mod perm;
mod search;
mod survey;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::Graph;
use crate::metacyclic::GroupError;
use crate::Limits;

pub use group::PermGroup;
pub use perm::Permutation;
pub use survey::{survey_small_connection_sets, sylow_condition_holds, SurveyClass, SurveyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("graph has {vertices} vertices, above the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("group of order {order} is above the survey limit of {limit}")]
    GroupTooLarge { order: u64, limit: u64 },
    #[error("a generator of the first group is not in the second")]
    NotASubgroup,
    #[error("connection sets must have fewer than p elements (max_size {max_size}, p {p})")]
    SizeNotBelowP { max_size: usize, p: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SymmetryError {
    pub fn name(&self) -> &'static str {
        match self {
            SymmetryError::TooLarge { .. } => "TooLarge",
            SymmetryError::GroupTooLarge { .. } => "GroupTooLarge",
            SymmetryError::NotASubgroup => "NotASubgroup",
            SymmetryError::SizeNotBelowP { .. } => "SizeNotBelowP",
            SymmetryError::Group(e) => e.name(),
        }
    }
}

/// Full automorphism group of `graph`.
///
/// The order is read off the search and checked against the stabilizer
/// chain built from the returned generators.
pub fn automorphism_group(graph: &Graph, limits: &Limits) -> Result<PermGroup, SymmetryError> {
    let n = graph.vertex_count();
    if n > limits.max_vertices {
        return Err(SymmetryError::TooLarge {
            vertices: n,
            limit: limits.max_vertices,
        });
    }
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let found = search::search(graph);
    for g in &found.generators {
        assert!(graph.is_automorphism(g), "search returned a non-automorphism");
    }
    let group = PermGroup::with_base_prefix(n, found.generators, &found.base);
    let expected: BigUint = found.orbit_sizes.iter().map(|&s| BigUint::from(s)).product();
    assert_eq!(group.order(), expected, "search and stabilizer chain disagree");
    Ok(group)
}

/// What a group acts on when computing orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Vertices,
    /// Indices into [`Graph::edges`].
    Edges,
    /// Indices into [`Graph::arcs`].
    Arcs,
}

/// Orbit partition of the chosen domain, as sorted index lists ordered by
/// least member.
pub fn orbits_on(graph: &Graph, group: &PermGroup, domain: Domain) -> Vec<Vec<usize>> {
    match domain {
        Domain::Vertices => group.orbits(),
        Domain::Edges => {
            let edges = graph.edges();
            pair_orbits(&edges, group, |u, v| (u.min(v), u.max(v)))
        }
        Domain::Arcs => {
            let arcs = graph.arcs();
            pair_orbits(&arcs, group, |u, v| (u, v))
        }
    }
}

fn pair_orbits(
    items: &[(usize, usize)],
    group: &PermGroup,
    normalize: impl Fn(usize, usize) -> (usize, usize),
) -> Vec<Vec<usize>> {
    let mut seen = vec![false; items.len()];
    let mut out = Vec::new();
    for start in 0..items.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut idx = 0;
        while idx < orbit.len() {
            let (u, v) = items[orbit[idx]];
            for g in group.generators() {
                let image = normalize(g.apply(u), g.apply(v));
                let k = items.binary_search(&image).expect("group preserves the graph");
                if !seen[k] {
                    seen[k] = true;
                    orbit.push(k);
                }
            }
            idx += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Symmetry class of a graph under the transitivity definitions where
/// semisymmetric means only "edge-transitive but not vertex-transitive".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    ArcTransitive,
    HalfArcTransitive,
    Semisymmetric,
    VertexTransitiveOnly,
    EdgeIntransitive,
}

impl Label {
    pub fn from_flags(vertex: bool, edge: bool, arc: bool) -> Label {
        match (vertex, edge, arc) {
            (_, _, true) => Label::ArcTransitive,
            (true, true, false) => Label::HalfArcTransitive,
            (false, true, _) => Label::Semisymmetric,
            (true, false, _) => Label::VertexTransitiveOnly,
            (false, false, _) => Label::EdgeIntransitive,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::ArcTransitive => "arc-transitive",
            Label::HalfArcTransitive => "half-arc-transitive",
            Label::Semisymmetric => "semisymmetric-per-paper",
            Label::VertexTransitiveOnly => "vertex-transitive-only",
            Label::EdgeIntransitive => "edge-intransitive",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub label: Label,
    pub aut_order: BigUint,
    /// Order of the stabilizer of vertex 0.
    pub stabilizer_order: BigUint,
    pub stabilizer_is_cyclic: bool,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
}

pub fn classify_symmetry(graph: &Graph, limits: &Limits) -> Result<SymmetryReport, SymmetryError> {
    let group = automorphism_group(graph, limits)?;
    Ok(report_for(graph, &group))
}

/// Classification of `graph` under an already computed automorphism group.
pub fn report_for(graph: &Graph, group: &PermGroup) -> SymmetryReport {
    let vertex_orbits = orbits_on(graph, group, Domain::Vertices).len();
    let edge_orbits = orbits_on(graph, group, Domain::Edges).len();
    let arc_orbits = orbits_on(graph, group, Domain::Arcs).len();
    let vertex_transitive = vertex_orbits == 1;
    let edge_transitive = edge_orbits == 1;
    let arc_transitive = arc_orbits == 1 && vertex_transitive;
    let (stabilizer_order, stabilizer_is_cyclic) = if graph.vertex_count() == 0 {
        (BigUint::from(1u32), true)
    } else {
        let stab = group.stabilizer(0);
        (stab.order(), stab.is_cyclic())
    };
    SymmetryReport {
        vertex_transitive,
        edge_transitive,
        arc_transitive,
        label: Label::from_flags(vertex_transitive, edge_transitive, arc_transitive),
        aut_order: group.order(),
        stabilizer_order,
        stabilizer_is_cyclic,
        vertex_orbits,
        edge_orbits,
        arc_orbits,
    }
}

/// Whether `h` is normal in `a`; `h` must be a subgroup of `a`.
pub fn is_normal_subgroup(h: &PermGroup, a: &PermGroup) -> Result<bool, SymmetryError> {
    if !h.is_subgroup_of(a) {
        return Err(SymmetryError::NotASubgroup);
    }
    Ok(h.generators()
        .iter()
        .all(|x| a.generators().iter().all(|g| h.contains(&x.conjugate_by(g)))))
}

/// Whether, for each vertex orbit, the stabilizer of a representative is
/// transitive on its neighbours.
pub fn locally_transitive(graph: &Graph, group: &PermGroup) -> bool {
    group.orbits().iter().all(|orbit| {
        let u = orbit[0];
        let nbrs = graph.neighbors(u);
        if nbrs.len() <= 1 {
            return true;
        }
        let stab = group.stabilizer(u);
        let first = stab.orbit_of(nbrs[0] as usize);
        nbrs.iter().all(|&w| first.binary_search(&(w as usize)).is_ok())
    })
}

//! Bi-Cayley graphs `BiCay(G, R, L, S)` over a split metacyclic group, the
//! right regular action `ĝ`, the normalizing maps `σ` and `δ`, and the
//! normalizer of `Ĝ`.
//!
//! Vertex `g_0` has index `rank(g)` and `g_1` has index `|G| + rank(g)`.

use thiserror::Error;

use crate::graph::Graph;
use crate::metacyclic::{GroupAut, GroupElem, GroupError, GroupParams, MetacyclicGroup};
use crate::symmetry::{PermGroup, Permutation};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiCayleyError {
    #[error("invalid connection sets: {0}")]
    SpecViolation(String),
    #[error("condition {0} does not hold")]
    ConditionFailed(&'static str),
    #[error("permutation is not an automorphism of the graph")]
    NotAnAutomorphism,
    #[error("group of order {order} is above the enumeration limit of {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl BiCayleyError {
    pub fn name(&self) -> &'static str {
        match self {
            BiCayleyError::SpecViolation(_) => "SpecViolation",
            BiCayleyError::ConditionFailed(_) => "ConditionFailed",
            BiCayleyError::NotAnAutomorphism => "NotAnAutomorphism",
            BiCayleyError::TooLarge { .. } => "TooLarge",
            BiCayleyError::Group(e) => e.name(),
        }
    }
}

/// The data `(G, R, L, S)`, with each set sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiCayleySpec {
    params: GroupParams,
    r: Vec<GroupElem>,
    l: Vec<GroupElem>,
    s: Vec<GroupElem>,
}

fn normalized(mut xs: Vec<GroupElem>) -> Vec<GroupElem> {
    xs.sort_unstable();
    xs.dedup();
    xs
}

impl BiCayleySpec {
    pub fn new(
        params: GroupParams,
        r: Vec<GroupElem>,
        l: Vec<GroupElem>,
        s: Vec<GroupElem>,
    ) -> Result<Self, BiCayleyError> {
        let group = params.group();
        let (r, l, s) = (normalized(r), normalized(l), normalized(s));
        for (name, set) in [("R", &r), ("L", &l), ("S", &s)] {
            if let Some(x) = set.iter().find(|&&x| !group.contains(x)) {
                return Err(BiCayleyError::SpecViolation(format!("{name} contains {x:?}, not an element of {params}")));
            }
        }
        for (name, set) in [("R", &r), ("L", &l)] {
            if set.binary_search(&GroupElem::IDENTITY).is_ok() {
                return Err(BiCayleyError::SpecViolation(format!("{name} contains the identity")));
            }
            if inverse_set(&group, set) != *set {
                return Err(BiCayleyError::SpecViolation(format!("{name} is not closed under inverses")));
            }
        }
        if s.binary_search(&GroupElem::IDENTITY).is_err() {
            return Err(BiCayleyError::SpecViolation("S does not contain the identity".into()));
        }
        Ok(BiCayleySpec { params, r, l, s })
    }

    /// `BiCay(G, ∅, ∅, S)`.
    pub fn bipartite(params: GroupParams, s: Vec<GroupElem>) -> Result<Self, BiCayleyError> {
        Self::new(params, Vec::new(), Vec::new(), s)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn r(&self) -> &[GroupElem] {
        &self.r
    }

    pub fn l(&self) -> &[GroupElem] {
        &self.l
    }

    pub fn s(&self) -> &[GroupElem] {
        &self.s
    }

    /// `(R^θ, L^θ, S^θ)`.
    pub fn image(&self, theta: &GroupAut) -> BiCayleySpec {
        let group = self.params.group();
        BiCayleySpec {
            params: self.params,
            r: group.apply_set(theta, &self.r),
            l: group.apply_set(theta, &self.l),
            s: group.apply_set(theta, &self.s),
        }
    }
}

fn inverse_set(group: &MetacyclicGroup, xs: &[GroupElem]) -> Vec<GroupElem> {
    normalized(xs.iter().map(|&x| group.inv(x)).collect())
}

fn left_mul(group: &MetacyclicGroup, g: GroupElem, xs: &[GroupElem]) -> Vec<GroupElem> {
    normalized(xs.iter().map(|&x| group.mul(g, x)).collect())
}

fn right_mul(group: &MetacyclicGroup, xs: &[GroupElem], g: GroupElem) -> Vec<GroupElem> {
    normalized(xs.iter().map(|&x| group.mul(x, g)).collect())
}

/// `y^{-1} X y`.
fn conj_set(group: &MetacyclicGroup, xs: &[GroupElem], y: GroupElem) -> Vec<GroupElem> {
    normalized(xs.iter().map(|&x| group.conj(x, y)).collect())
}

/// A vertex permutation known to be a graph automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphAutMap(Permutation);

impl GraphAutMap {
    pub fn new(graph: &BiCayleyGraph, perm: Permutation) -> Result<Self, BiCayleyError> {
        if graph.graph().is_automorphism(&perm) {
            Ok(GraphAutMap(perm))
        } else {
            Err(BiCayleyError::NotAnAutomorphism)
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn into_perm(self) -> Permutation {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct BiCayleyGraph {
    spec: BiCayleySpec,
    group: MetacyclicGroup,
    graph: Graph,
    connected: bool,
}

impl BiCayleyGraph {
    pub fn build(spec: BiCayleySpec) -> BiCayleyGraph {
        let group = spec.params.group();
        let n = group.order() as usize;
        let mut edges = Vec::with_capacity(n * (spec.r.len() + spec.l.len() + 2 * spec.s.len()) / 2);
        for g in group.elements() {
            let u = group.rank(g);
            for &r in &spec.r {
                edges.push((u, group.rank(group.mul(r, g))));
            }
            for &l in &spec.l {
                edges.push((n + u, n + group.rank(group.mul(l, g))));
            }
            for &s in &spec.s {
                edges.push((u, n + group.rank(group.mul(s, g))));
            }
        }
        let graph = Graph::from_edges(2 * n, edges).expect("identity is excluded from R and L");
        let mut gens: Vec<GroupElem> = spec.r.iter().chain(&spec.l).chain(&spec.s).copied().collect();
        gens.retain(|x| !x.is_identity());
        let closure_full = gens.is_empty() && n == 1 || !gens.is_empty() && group.generates(&gens);
        let connected = graph.is_connected();
        assert_eq!(connected, closure_full, "connectivity disagrees with the generated subgroup");
        BiCayleyGraph {
            spec,
            group,
            graph,
            connected,
        }
    }

    pub fn spec(&self) -> &BiCayleySpec {
        &self.spec
    }

    pub fn group(&self) -> &MetacyclicGroup {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn vertex(&self, g: GroupElem, part: usize) -> usize {
        debug_assert!(part < 2);
        part * self.group.order() as usize + self.group.rank(g)
    }

    /// `(g, part)` for a vertex index.
    pub fn vertex_label(&self, v: usize) -> (GroupElem, usize) {
        let n = self.group.order() as usize;
        (self.group.unrank(v % n), v / n)
    }

    fn perm_from(&self, f: impl Fn(GroupElem, usize) -> usize) -> Permutation {
        let n = self.group.order() as usize;
        let images = (0..2 * n)
            .map(|v| {
                let (g, part) = self.vertex_label(v);
                f(g, part)
            })
            .collect();
        Permutation::from_images(images).expect("bijective vertex map")
    }

    /// `ĝ: h_i ↦ (hg)_i`.
    pub fn right_translation(&self, g: GroupElem) -> GraphAutMap {
        let perm = self.perm_from(|h, part| self.vertex(self.group.mul(h, g), part));
        GraphAutMap::new(self, perm).expect("right translations are automorphisms")
    }

    /// `Ĝ`, generated by `â` and `b̂`.
    pub fn hat_group(&self) -> PermGroup {
        let gens = [self.group.a(), self.group.b()]
            .into_iter()
            .map(|g| self.right_translation(g).into_perm())
            .collect();
        PermGroup::new(self.vertex_count(), gens)
    }

    /// The isomorphism `h_i ↦ (h^θ)_i` onto `BiCay(G, R^θ, L^θ, S^θ)`.
    pub fn aut_isomorphism(&self, theta: &GroupAut) -> Permutation {
        self.perm_from(|h, part| self.vertex(self.group.apply(theta, h), part))
    }

    fn sigma_conditions(&self, theta: &GroupAut, g: GroupElem) -> Result<(), BiCayleyError> {
        let grp = &self.group;
        let g_inv = grp.inv(g);
        if grp.apply_set(theta, &self.spec.r) != self.spec.r {
            return Err(BiCayleyError::ConditionFailed("R^θ = R"));
        }
        if grp.apply_set(theta, &self.spec.l) != conj_set(grp, &self.spec.l, g) {
            return Err(BiCayleyError::ConditionFailed("L^θ = g^-1 L g"));
        }
        if grp.apply_set(theta, &self.spec.s) != left_mul(grp, g_inv, &self.spec.s) {
            return Err(BiCayleyError::ConditionFailed("S^θ = g^-1 S"));
        }
        Ok(())
    }

    /// `σ_{θ,g}: h_0 ↦ (h^θ)_0, h_1 ↦ (g h^θ)_1`.
    pub fn sigma_map(&self, theta: &GroupAut, g: GroupElem) -> Result<GraphAutMap, BiCayleyError> {
        self.sigma_conditions(theta, g)?;
        let perm = self.perm_from(|h, part| {
            let ht = self.group.apply(theta, h);
            match part {
                0 => self.vertex(ht, 0),
                _ => self.vertex(self.group.mul(g, ht), 1),
            }
        });
        GraphAutMap::new(self, perm)
    }

    fn delta_conditions(&self, theta: &GroupAut, x: GroupElem, y: GroupElem) -> Result<(), BiCayleyError> {
        let grp = &self.group;
        if grp.apply_set(theta, &self.spec.r) != conj_set(grp, &self.spec.l, x) {
            return Err(BiCayleyError::ConditionFailed("R^θ = x^-1 L x"));
        }
        if grp.apply_set(theta, &self.spec.l) != conj_set(grp, &self.spec.r, y) {
            return Err(BiCayleyError::ConditionFailed("L^θ = y^-1 R y"));
        }
        let s_inv = inverse_set(grp, &self.spec.s);
        let rhs = right_mul(grp, &left_mul(grp, grp.inv(y), &s_inv), x);
        if grp.apply_set(theta, &self.spec.s) != rhs {
            return Err(BiCayleyError::ConditionFailed("S^θ = y^-1 S^-1 x"));
        }
        Ok(())
    }

    /// `δ_{θ,x,y}: h_0 ↦ (x h^θ)_1, h_1 ↦ (y h^θ)_0`.
    pub fn delta_map(&self, theta: &GroupAut, x: GroupElem, y: GroupElem) -> Result<GraphAutMap, BiCayleyError> {
        self.delta_conditions(theta, x, y)?;
        let perm = self.perm_from(|h, part| {
            let ht = self.group.apply(theta, h);
            match part {
                0 => self.vertex(self.group.mul(x, ht), 1),
                _ => self.vertex(self.group.mul(y, ht), 0),
            }
        });
        GraphAutMap::new(self, perm)
    }

    fn automorphisms_of_g(&self, limits: &Limits) -> Result<Vec<GroupAut>, BiCayleyError> {
        let order = self.group.order();
        if order > limits.max_group_order {
            return Err(BiCayleyError::TooLarge {
                order,
                limit: limits.max_group_order,
            });
        }
        Ok(self.group.enumerate_automorphisms(limits.max_group_order)?)
    }

    /// All pairs `(θ, g)` for which `σ_{θ,g}` is defined, and the group
    /// they generate.
    pub fn compute_f(&self, limits: &Limits) -> Result<FGroup, BiCayleyError> {
        let auts = self.automorphisms_of_g(limits)?;
        // 1 ∈ S forces g ∈ S whenever R = L = ∅.
        let candidates: Vec<GroupElem> = if self.spec.r.is_empty() && self.spec.l.is_empty() {
            self.spec.s.clone()
        } else {
            self.group.elements().collect()
        };
        let mut members = Vec::new();
        for theta in &auts {
            for &g in &candidates {
                if self.sigma_conditions(theta, g).is_ok() {
                    members.push((*theta, g));
                }
            }
        }
        let gens = members
            .iter()
            .map(|(theta, g)| self.sigma_map(theta, *g).expect("conditions checked").into_perm())
            .collect();
        Ok(FGroup {
            group: PermGroup::new(self.vertex_count(), gens),
            members,
        })
    }

    /// All triples `(θ, x, y)` for which `δ_{θ,x,y}` is defined, sorted.
    pub fn compute_i(&self, limits: &Limits) -> Result<Vec<(GroupAut, GroupElem, GroupElem)>, BiCayleyError> {
        let auts = self.automorphisms_of_g(limits)?;
        let mut out = Vec::new();
        for theta in &auts {
            // 1 = 1^θ lies in y^-1 S^-1 x, so x = s y for some s in S.
            for y in self.group.elements() {
                for &s in &self.spec.s {
                    let x = self.group.mul(s, y);
                    if self.delta_conditions(theta, x, y).is_ok() {
                        out.push((*theta, x, y));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `Ĝ⟨F⟩`, extended by one `δ` when any exists.
    pub fn normalizer_decomposition(&self, limits: &Limits) -> Result<PermGroup, BiCayleyError> {
        let f = self.compute_f(limits)?;
        let mut gens: Vec<Permutation> = self.hat_group().generators().to_vec();
        gens.extend(f.group.generators().iter().cloned());
        let i = self.compute_i(limits)?;
        if let Some((theta, x, y)) = i.first() {
            gens.push(self.delta_map(theta, *x, *y).expect("conditions checked").into_perm());
        }
        Ok(PermGroup::new(self.vertex_count(), gens))
    }

    /// `N_A(Ĝ)` by listing the elements of `aut`, or `None` when `aut` has
    /// more than `limits.brute_force_elements` elements.
    pub fn brute_force_normalizer(&self, aut: &PermGroup, limits: &Limits) -> Option<PermGroup> {
        let elements = aut.elements(limits.brute_force_elements)?;
        let hat = self.hat_group();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.vertex_count());
        for a in elements {
            let normalizes = hat.generators().iter().all(|h| hat.contains(&h.conjugate_by(&a)));
            if normalizes && !current.contains(&a) {
                gens.push(a);
                current = PermGroup::new(self.vertex_count(), gens.clone());
            }
        }
        Some(current)
    }
}

/// The maps `σ_{θ,g}` of a graph and the permutation group they form.
#[derive(Debug, Clone)]
pub struct FGroup {
    pub members: Vec<(GroupAut, GroupElem)>,
    pub group: PermGroup,
}

//! The graphs `Γ_{m,k,l}^±`: solutions of
//! `e^l c = (c - x(1 - e))^2` with `c = (1 + p^γ)^m`, the exponent sets
//! `T` and `T'`, the connection set `U ∪ V`, and the two automorphisms that
//! certify vertex- and edge-transitivity.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::bicayley::{BiCayleyGraph, BiCayleySpec, GraphAutMap};
use crate::metacyclic::{GroupAut, GroupElem, GroupError, GroupParams};
use crate::residue::{PrimePowerModulus, Residue, ResidueError};
use crate::symmetry::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HavtError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no solution: k/gcd(k, l) = {ratio} does not divide (p - 1)/2 = {half}")]
    Unsolvable { ratio: u64, half: u64 },
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("witness failed: {0}")]
    WitnessInvalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

impl HavtError {
    pub fn name(&self) -> &'static str {
        match self {
            HavtError::InvalidParams(_) => "InvalidParams",
            HavtError::Unsolvable { .. } => "Unsolvable",
            HavtError::InternalMismatch(_) => "InternalMismatch",
            HavtError::WitnessInvalid(_) => "WitnessInvalid",
            HavtError::Group(e) => e.name(),
            HavtError::Residue(e) => e.name(),
        }
    }
}

/// Which root of the quadratic is used; `Plus` takes `+u` with `u` the
/// square root in `[1, (p^α - 1)/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(format!("expected plus or minus, got {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HavtParams {
    params: GroupParams,
    m: u64,
    k: u64,
    l: u64,
    sign: Sign,
}

impl HavtParams {
    /// Requires `k ≥ 2`, `k | p - 1`, `0 ≤ l < k` and `m` a unit in
    /// `[1, p^{α-γ})`. Solvability is checked at construction time.
    pub fn new(params: GroupParams, m: u64, k: u64, l: u64, sign: Sign) -> Result<Self, HavtError> {
        check_mkl(params, m, k, l)?;
        Ok(HavtParams { params, m, k, l, sign })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(&self, sign: Sign) -> HavtParams {
        HavtParams { sign, ..*self }
    }
}

impl fmt::Display for HavtParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma_{{{},{},{}}}^{} over {}", self.m, self.k, self.l, self.sign, self.params)
    }
}

fn check_mkl(params: GroupParams, m: u64, k: u64, l: u64) -> Result<(), HavtError> {
    let p = params.p();
    if k < 2 || !(p - 1).is_multiple_of(k) {
        return Err(HavtError::InvalidParams(format!("k = {k} must be at least 2 and divide p - 1 = {}", p - 1)));
    }
    if l >= k {
        return Err(HavtError::InvalidParams(format!("l = {l} must be below k = {k}")));
    }
    let m_bound = p.pow(params.alpha() - params.gamma());
    if m == 0 || m >= m_bound || m.is_multiple_of(p) {
        return Err(HavtError::InvalidParams(format!("m = {m} must be a unit in [1, {m_bound})")));
    }
    Ok(())
}

/// Whether `k / gcd(k, l)` divides `(p - 1)/2`.
pub fn eq3_solvable(k: u64, l: u64, p: u64) -> bool {
    ((p - 1) / 2).is_multiple_of(k / k.gcd(&l))
}

/// `(1 + p^γ)^m` in `Z_{p^α}`.
fn twist_power(params: GroupParams, m: u64) -> Residue {
    let modulus = PrimePowerModulus::new(params.p(), params.alpha()).expect("validated params");
    modulus.residue(1 + params.p().pow(params.gamma())).pow(m)
}

/// The two solutions of the quadratic and the square root behind them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eq3Solutions {
    pub u: Residue,
    pub plus: Residue,
    pub minus: Residue,
}

impl Eq3Solutions {
    pub fn get(&self, sign: Sign) -> Residue {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    /// The solution set, sorted.
    pub fn values(&self) -> Vec<u64> {
        let mut v = vec![self.plus.value(), self.minus.value()];
        v.sort_unstable();
        v
    }
}

/// Solves `e^l c = (c - x(1 - e))^2` over `Z_{p^α}` with `e` the canonical
/// element of order `k`; `None` when there is no solution.
pub fn solve_eq3(params: GroupParams, m: u64, k: u64, l: u64) -> Result<Option<Eq3Solutions>, HavtError> {
    check_mkl(params, m, k, l)?;
    let modulus = PrimePowerModulus::new(params.p(), params.alpha())?;
    let c = twist_power(params, m);
    let e = modulus.element_of_order(k)?;
    let roots = (e.pow(l) * c).sqrt_unit()?;
    let half = (modulus.value() - 1) / 2;
    let Some(&u) = roots.iter().find(|r| r.value() <= half) else {
        return Ok(None);
    };
    let inv = (modulus.one() - e).inverse()?;
    Ok(Some(Eq3Solutions {
        u,
        plus: inv * (c + u),
        minus: inv * (c - u),
    }))
}

/// `T = {(e - 1)^{-1}(e^i - 1) : 0 ≤ i < k}` in index order, checked
/// against the partial sums `0, 1, 1 + e, ...`.
pub fn build_t(k: u64, e: Residue) -> Result<Vec<Residue>, HavtError> {
    let modulus = e.modulus();
    let inv = (e - 1).inverse()?;
    let mut out = Vec::with_capacity(k as usize);
    let mut partial = modulus.zero();
    let mut power = modulus.one();
    for i in 0..k {
        let direct = inv * (e.pow(i) - 1);
        if direct != partial {
            return Err(HavtError::InternalMismatch(format!("T_{i}: {} vs partial sum {}", direct.value(), partial.value())));
        }
        out.push(direct);
        partial = partial + power;
        power = power * e;
    }
    Ok(out)
}

/// `T'_i = T_i c + e^i n`, checked against `T (c + n(e - 1)) + n`.
pub fn build_tprime(t: &[Residue], c: Residue, n: Residue, e: Residue) -> Result<Vec<Residue>, HavtError> {
    let scale = c + n * (e - 1);
    t.iter()
        .enumerate()
        .map(|(i, &ti)| {
            let direct = ti * c + e.pow(i as u64) * n;
            let affine = ti * scale + n;
            if direct == affine {
                Ok(direct)
            } else {
                Err(HavtError::InternalMismatch(format!("T'_{i}: {} vs {}", direct.value(), affine.value())))
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct HavtConstruction {
    pub params: HavtParams,
    /// `(1 + p^γ)^m`.
    pub c: Residue,
    pub e: Residue,
    pub n: Residue,
    pub u: Residue,
    pub t: Vec<Residue>,
    pub tprime: Vec<Residue>,
    /// `{a^t : t ∈ T}`, in index order.
    pub u_set: Vec<GroupElem>,
    /// `{b^m a^t : t ∈ T'}`, in index order.
    pub v_set: Vec<GroupElem>,
    pub graph: BiCayleyGraph,
}

pub fn construct_havt(hp: HavtParams) -> Result<HavtConstruction, HavtError> {
    let params = hp.params;
    let p = params.p();
    if !eq3_solvable(hp.k, hp.l, p) {
        return Err(HavtError::Unsolvable {
            ratio: hp.k / hp.k.gcd(&hp.l),
            half: (p - 1) / 2,
        });
    }
    let solutions = solve_eq3(params, hp.m, hp.k, hp.l)?
        .ok_or_else(|| HavtError::InternalMismatch("criterion holds but no square root exists".into()))?;
    let modulus = PrimePowerModulus::new(p, params.alpha())?;
    let c = twist_power(params, hp.m);
    let e = modulus.element_of_order(hp.k)?;
    let n = solutions.get(hp.sign);
    let t = build_t(hp.k, e)?;
    let tprime = build_tprime(&t, c, n, e)?;
    let u_set: Vec<GroupElem> = t.iter().map(|x| GroupElem::new(0, x.value())).collect();
    let v_set: Vec<GroupElem> = tprime.iter().map(|x| GroupElem::new(hp.m, x.value())).collect();
    let s: Vec<GroupElem> = u_set.iter().chain(&v_set).copied().collect();
    let spec = BiCayleySpec::bipartite(params, s).map_err(|err| HavtError::InternalMismatch(err.to_string()))?;
    if spec.s().len() != 2 * hp.k as usize {
        return Err(HavtError::InternalMismatch("U ∪ V has repeated elements".into()));
    }
    let graph = BiCayleyGraph::build(spec);
    if !graph.is_connected() || graph.graph().regular_degree() != Some(2 * hp.k as usize) {
        return Err(HavtError::InternalMismatch("graph is not connected of valency 2k".into()));
    }
    Ok(HavtConstruction {
        params: hp,
        c,
        e,
        n,
        u: solutions.u,
        t,
        tprime,
        u_set,
        v_set,
        graph,
    })
}

/// Whether the two signs give the same edge set.
pub fn signs_coincide(hp: HavtParams) -> Result<bool, HavtError> {
    let plus = construct_havt(hp.with_sign(Sign::Plus))?;
    let minus = construct_havt(hp.with_sign(Sign::Minus))?;
    Ok(plus.graph.spec().s() == minus.graph.spec().s())
}

/// The vertex-stabilizer witness `σ_{τ,a}` and the part-swapping witness
/// `δ_{λ, b^m a^n, 1}`.
#[derive(Debug, Clone)]
pub struct Witnesses {
    pub tau: GroupAut,
    pub sigma: GraphAutMap,
    pub mu: Residue,
    pub nu: Residue,
    pub lambda: GroupAut,
    /// `b^m a^n`.
    pub delta_x: GroupElem,
    pub delta: GraphAutMap,
}

pub fn havt_witnesses(c: &HavtConstruction) -> Result<Witnesses, HavtError> {
    let hp = c.params;
    let group = c.graph.group();
    let tau = group.canonical_theta(hp.k)?;
    let sigma = c
        .graph
        .sigma_map(&tau, group.a())
        .map_err(|err| HavtError::WitnessInvalid(format!("sigma: {err}")))?;
    let inv = (c.e - 1).inverse()?;
    let mu = -c.c - c.n * (c.e - 1);
    let nu = -(inv * mu * mu) - inv * mu;
    let m_inv = group
        .modulus_b()
        .residue(hp.m)
        .inverse()
        .map_err(|err| HavtError::WitnessInvalid(format!("m^-1: {err}")))?;
    let base = GroupElem::new(hp.m, (nu - mu * c.n).value());
    let image_b = group.pow(base, m_inv.value());
    let lambda = group
        .aut_from_images(GroupElem::new(0, mu.value()), image_b)
        .map_err(|err| HavtError::WitnessInvalid(format!("lambda: {err}")))?;
    let delta_x = GroupElem::new(hp.m, c.n.value());
    let delta = c
        .graph
        .delta_map(&lambda, delta_x, GroupElem::IDENTITY)
        .map_err(|err| HavtError::WitnessInvalid(format!("delta: {err}")))?;
    Ok(Witnesses {
        tau,
        sigma,
        mu,
        nu,
        lambda,
        delta_x,
        delta,
    })
}

/// What the witnesses show about the graph without a full search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub sigma_order: u64,
    /// Orbits of `⟨σ⟩` on the neighbours of `1_0`.
    pub sigma_orbits: Vec<Vec<usize>>,
    /// The orbits are exactly `U_1` and `V_1`.
    pub orbits_are_u_and_v: bool,
    pub delta_swaps_parts: bool,
    /// `δ` sends the arc `(1_0, 1_1)` to `((b^m a^n)_1, 1_0)`, which lies
    /// over the other `σ`-orbit.
    pub delta_reverses_arc: bool,
}

impl WitnessCertificate {
    /// Vertex- and edge-transitivity follow from these facts together with
    /// the transitivity of `Ĝ` on each part.
    pub fn certifies_transitivity(&self, k: u64) -> bool {
        self.sigma_order == k && self.orbits_are_u_and_v && self.delta_swaps_parts && self.delta_reverses_arc
    }
}

pub fn certify(c: &HavtConstruction, w: &Witnesses) -> WitnessCertificate {
    let bc = &c.graph;
    let n = bc.group().order() as usize;
    let sigma_group = PermGroup::new(2 * n, vec![w.sigma.perm().clone()]);
    let origin = bc.vertex(GroupElem::IDENTITY, 0);
    let nbrs: Vec<usize> = bc.graph().neighbors(origin).iter().map(|&v| v as usize).collect();
    let mut sigma_orbits: Vec<Vec<usize>> = sigma_group
        .orbits()
        .into_iter()
        .filter(|o| nbrs.contains(&o[0]))
        .collect();
    sigma_orbits.sort();
    let mut expected: Vec<Vec<usize>> = [&c.u_set, &c.v_set]
        .iter()
        .map(|set| {
            let mut o: Vec<usize> = set.iter().map(|&g| bc.vertex(g, 1)).collect();
            o.sort_unstable();
            o
        })
        .collect();
    expected.sort();
    let delta = w.delta.perm();
    let delta_swaps_parts = (0..2 * n).all(|v| (v < n) != (delta.apply(v) < n));
    let one_1 = bc.vertex(GroupElem::IDENTITY, 1);
    let target = bc.vertex(w.delta_x, 1);
    let delta_reverses_arc = delta.apply(origin) == target
        && delta.apply(one_1) == origin
        && c.u_set.contains(&GroupElem::IDENTITY)
        && c.v_set.contains(&w.delta_x);
    WitnessCertificate {
        sigma_order: sigma_group.order_u64().expect("small group"),
        orbits_are_u_and_v: sigma_orbits == expected,
        sigma_orbits,
        delta_swaps_parts,
        delta_reverses_arc,
    }
}

/// Every parameter tuple whose graph has at most `max_vertices` vertices,
/// including the unsolvable `(k, l)` pairs.
pub fn parameter_tuples(max_vertices: u64) -> Vec<(GroupParams, u64, u64, u64)> {
    let mut out = Vec::new();
    let mut p = 3;
    while 2 * p * p * p <= max_vertices {
        if crate::residue::is_prime(p) {
            for params in GroupParams::enumerate(p, max_vertices / 2) {
                let m_bound = p.pow(params.alpha() - params.gamma());
                for m in (1..m_bound).filter(|m| m % p != 0) {
                    for k in (2..p).filter(|k| (p - 1) % k == 0) {
                        for l in 0..k {
                            out.push((params, m, k, l));
                        }
                    }
                }
            }
        }
        p += 2;
    }
    out
}

/// Every constructible `Γ_{m,k,l}^±` with at most `max_vertices` vertices.
pub fn constructible_instances(max_vertices: u64) -> Vec<HavtParams> {
    let mut out = Vec::new();
    for (params, m, k, l) in parameter_tuples(max_vertices) {
        if eq3_solvable(k, l, params.p()) {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(HavtParams::new(params, m, k, l, sign).expect("enumerated parameters are valid"));
            }
        }
    }
    out
}

/// Every `(x, y)` with `Tx + y = T`, by exhaustive search.
pub fn affine_symmetries_of_t(t: &[Residue]) -> Vec<(Residue, Residue)> {
    let modulus = t[0].modulus();
    let mut sorted: Vec<u64> = t.iter().map(Residue::value).collect();
    sorted.sort_unstable();
    let mut image = Vec::with_capacity(t.len());
    let mut out = Vec::new();
    for x in modulus.elements() {
        for y in modulus.elements() {
            image.clear();
            image.extend(t.iter().map(|&ti| (ti * x + y).value()));
            image.sort_unstable();
            if image == sorted {
                out.push((x, y));
            }
        }
    }
    out
}

/// The affine maps `(e^l, (e - 1)^{-1}(e^l - 1))`, sorted.
pub fn predicted_affine_symmetries(k: u64, e: Residue) -> Vec<(Residue, Residue)> {
    let inv = (e - 1).inverse().expect("e - 1 is a unit");
    let mut out: Vec<(Residue, Residue)> = (0..k).map(|l| (e.pow(l), inv * (e.pow(l) - 1))).collect();
    out.sort_by_key(|(x, y)| (x.value(), y.value()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g211(p: u64) -> GroupParams {
        GroupParams::new(p, 2, 1, 1).unwrap()
    }

    fn values(xs: &[Residue]) -> Vec<u64> {
        xs.iter().map(Residue::value).collect()
    }

    /// Roots of the quadratic by trying every `x`.
    fn exhaustive_roots(params: GroupParams, m: u64, k: u64, l: u64) -> Vec<u64> {
        let modulus = PrimePowerModulus::new(params.p(), params.alpha()).unwrap();
        let c = modulus.residue(1 + params.p().pow(params.gamma())).pow(m);
        let e = modulus.element_of_order(k).unwrap();
        let lhs = e.pow(l) * c;
        modulus
            .elements()
            .filter(|&x| {
                let d = c - x * (modulus.one() - e);
                d * d == lhs
            })
            .map(|x| x.value())
            .collect()
    }

    #[test]
    fn solvability_examples() {
        assert!(eq3_solvable(2, 0, 3));
        assert!(!eq3_solvable(2, 1, 3));
        assert!(eq3_solvable(4, 2, 5));
        assert!(!eq3_solvable(4, 1, 5));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(exhaustive_roots(g211(3), 1, 2, 0), vec![1, 3]);
        assert_eq!(solve_eq3(g211(3), 1, 2, 0).unwrap().unwrap().values(), vec![1, 3]);
        assert_eq!(solve_eq3(g211(3), 1, 2, 1).unwrap(), None);
        assert_eq!(exhaustive_roots(g211(5), 1, 4, 0), vec![10, 13]);
        let s = solve_eq3(g211(5), 1, 4, 0).unwrap().unwrap();
        assert_eq!(s.values(), vec![10, 13]);
        assert_eq!((s.u.value(), s.plus.value(), s.minus.value()), (9, 10, 13));
        let s3 = solve_eq3(g211(3), 1, 2, 0).unwrap().unwrap();
        assert_eq!((s3.u.value(), s3.plus.value(), s3.minus.value()), (2, 3, 1));
    }

    #[test]
    fn solver_matches_exhaustive_search() {
        for (params, m, k, l) in parameter_tuples(2 * 7u64.pow(3)) {
            if params.p().pow(params.alpha()) > 10_000 {
                continue;
            }
            let found = solve_eq3(params, m, k, l).unwrap().map(|s| s.values()).unwrap_or_default();
            let expected = exhaustive_roots(params, m, k, l);
            assert_eq!(found, expected, "{params} m={m} k={k} l={l}");
            assert_eq!(!found.is_empty(), eq3_solvable(k, l, params.p()));
        }
    }

    #[test]
    fn t_examples() {
        let m9 = PrimePowerModulus::new(3, 2).unwrap();
        let m25 = PrimePowerModulus::new(5, 2).unwrap();
        assert_eq!(values(&build_t(2, m9.residue(8)).unwrap()), vec![0, 1]);
        assert_eq!(values(&build_t(4, m25.residue(7)).unwrap()), vec![0, 1, 8, 7]);
        assert_eq!(values(&build_t(6, m9.residue(2)).unwrap()), vec![0, 1, 3, 7, 6, 4]);
    }

    #[test]
    fn tprime_examples() {
        let m9 = PrimePowerModulus::new(3, 2).unwrap();
        let e = m9.residue(8);
        let t = build_t(2, e).unwrap();
        let c = m9.residue(4);
        assert_eq!(values(&build_tprime(&t, c, m9.residue(1), e).unwrap()), vec![1, 3]);
        assert_eq!(values(&build_tprime(&t, c, m9.residue(3), e).unwrap()), vec![3, 1]);
        let m25 = PrimePowerModulus::new(5, 2).unwrap();
        let e = m25.residue(7);
        let t = build_t(4, e).unwrap();
        assert_eq!(values(&build_tprime(&t, m25.residue(6), m25.residue(10), e).unwrap()), vec![10, 1, 13, 22]);
    }

    #[test]
    fn construction_examples() {
        let c = construct_havt(HavtParams::new(g211(3), 1, 2, 0, Sign::Plus).unwrap()).unwrap();
        assert_eq!(c.graph.vertex_count(), 54);
        assert_eq!(c.graph.graph().regular_degree(), Some(4));
        let s: Vec<String> = c.graph.spec().s().iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["1", "a", "ba", "ba^3"]);
        assert_eq!(c.n.value(), 3);
        let c5 = construct_havt(HavtParams::new(g211(5), 1, 4, 0, Sign::Plus).unwrap()).unwrap();
        assert_eq!(c5.graph.vertex_count(), 250);
        assert_eq!(c5.graph.graph().regular_degree(), Some(8));
        for sign in [Sign::Plus, Sign::Minus] {
            let err = construct_havt(HavtParams::new(g211(3), 1, 2, 1, sign).unwrap()).unwrap_err();
            assert_eq!(err.name(), "Unsolvable");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(HavtParams::new(g211(3), 1, 3, 0, Sign::Plus).is_err());
        assert!(HavtParams::new(g211(3), 3, 2, 0, Sign::Plus).is_err());
        assert!(HavtParams::new(g211(3), 1, 2, 2, Sign::Plus).is_err());
        assert!(HavtParams::new(g211(5), 4, 4, 3, Sign::Minus).is_ok());
        assert_eq!("minus".parse::<Sign>(), Ok(Sign::Minus));
        assert!("both".parse::<Sign>().is_err());
    }

    #[test]
    fn smallest_signs_coincide() {
        let hp = HavtParams::new(g211(3), 1, 2, 0, Sign::Plus).unwrap();
        assert!(signs_coincide(hp).unwrap());
    }

    #[test]
    fn witness_values() {
        let c = construct_havt(HavtParams::new(g211(3), 1, 2, 0, Sign::Minus).unwrap()).unwrap();
        assert_eq!(c.n.value(), 1);
        let w = havt_witnesses(&c).unwrap();
        assert_eq!(w.tau.to_string(), "(a -> a^8, b -> b)");
        assert_eq!((w.mu.value(), w.nu.value(), (w.nu - w.mu * c.n).value()), (7, 1, 3));
        assert_eq!(w.lambda.to_string(), "(a -> a^7, b -> ba^3)");
        assert_eq!(w.delta_x.to_string(), "ba");
        let cert = certify(&c, &w);
        assert!(cert.certifies_transitivity(2), "{cert:?}");
    }

    #[test]
    fn witnesses_for_small_instances() {
        let instances = constructible_instances(250);
        assert_eq!(instances.len(), 44);
        for hp in instances {
            let c = construct_havt(hp).unwrap();
            let w = havt_witnesses(&c).unwrap();
            assert!(certify(&c, &w).certifies_transitivity(hp.k()), "{hp}");
        }
    }

    #[test]
    fn t_affine_symmetries() {
        for (p, alpha) in [(3, 1), (3, 2), (5, 2), (7, 2), (7, 3), (13, 1)] {
            let modulus = PrimePowerModulus::new(p, alpha).unwrap();
            for k in (2..p).filter(|k| (p - 1) % k == 0) {
                let e = modulus.element_of_order(k).unwrap();
                let t = build_t(k, e).unwrap();
                let mut found = affine_symmetries_of_t(&t);
                found.sort_by_key(|(x, y)| (x.value(), y.value()));
                assert_eq!(found, predicted_affine_symmetries(k, e), "p={p} alpha={alpha} k={k}");
                let sum = t.iter().fold(modulus.zero(), |acc, &x| acc + x);
                assert_eq!(sum, -(modulus.residue(k) * (e - 1).inverse().unwrap()));
            }
        }
    }
}

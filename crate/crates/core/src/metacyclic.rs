//! The split metacyclic p-group
//! `G(α,β,γ) = ⟨a, b | a^{p^α} = b^{p^β} = 1, b^{-1} a b = a^{1+p^γ}⟩`
//! with `0 < γ < α ≤ β + γ`.
//!
//! Elements are held in the normal form `b^j a^i`. Moving `a^i` past `b^j`
//! uses `a^i b^j = b^j a^{i (1+p^γ)^j}`, so
//! `(b^{j1} a^{i1})(b^{j2} a^{i2}) = b^{j1+j2} a^{i1 (1+p^γ)^{j2} + i2}`.

use std::fmt;

use thiserror::Error;

use crate::residue::{checked_pow, mul_mod, PrimePowerModulus, ResidueError};

/// Largest group order accepted by [`GroupParams::new`].
pub const MAX_GROUP_ORDER: u64 = 1 << 32;

/// Default guard on `|G|` for the brute-force automorphism enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 243;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),
    #[error("group of order {order} exceeds the enumeration guard {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error("element {0} does not belong to this group")]
    ParamsMismatch(GroupElem),
    #[error("images violate the defining relation b^-1 a b = a^(1+p^gamma)")]
    RelationViolated,
    #[error("images do not generate the group")]
    NotGenerating,
    #[error("image of {generator} has order {found}, expected {expected}")]
    OrderViolated {
        generator: char,
        found: u64,
        expected: u64,
    },
    #[error("no automorphism a -> a^e of order {0}: need {0} | p - 1 and {0} >= 2")]
    NoSuchOrder(u64),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::InvalidParams(_) => "InvalidParams",
            GroupError::TooLarge { .. } => "TooLarge",
            GroupError::ParamsMismatch(_) => "ParamsMismatch",
            GroupError::RelationViolated => "RelationViolated",
            GroupError::NotGenerating => "NotGenerating",
            GroupError::OrderViolated { .. } => "OrderViolated",
            GroupError::NoSuchOrder(_) => "NoSuchOrder",
            GroupError::Residue(e) => e.name(),
        }
    }
}

/// The tuple `(p, α, β, γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    p: u64,
    alpha: u32,
    beta: u32,
    gamma: u32,
}

impl GroupParams {
    pub fn new(p: u64, alpha: u32, beta: u32, gamma: u32) -> Result<Self, GroupError> {
        PrimePowerModulus::new(p, alpha)?;
        if !(0 < gamma && gamma < alpha && alpha <= beta + gamma) {
            return Err(GroupError::InvalidParams(format!(
                "need 0 < gamma < alpha <= beta + gamma, got alpha={alpha} beta={beta} gamma={gamma}"
            )));
        }
        match checked_pow(p, alpha + beta) {
            Some(order) if order < MAX_GROUP_ORDER => Ok(GroupParams { p, alpha, beta, gamma }),
            _ => Err(GroupError::InvalidParams(format!(
                "group order {p}^{} does not fit below 2^32",
                alpha + beta
            ))),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn alpha(&self) -> u32 {
        self.alpha
    }
    pub fn beta(&self) -> u32 {
        self.beta
    }
    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.alpha + self.beta)
    }

    /// `(p-1) p^{min(α,β) + min(β,γ) + β + γ - 1}`.
    pub fn aut_order_formula(&self) -> u64 {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        (self.p - 1) * self.p.pow(a.min(b) + b.min(g) + b + g - 1)
    }

    pub fn group(&self) -> MetacyclicGroup {
        MetacyclicGroup::new(*self)
    }

    /// Every valid parameter tuple for prime `p` with `|G| <= max_order`.
    pub fn enumerate(p: u64, max_order: u64) -> Vec<GroupParams> {
        let mut out = Vec::new();
        for total in 3u32.. {
            match checked_pow(p, total) {
                Some(o) if o <= max_order => {}
                _ => break,
            }
            for alpha in 2..total {
                let beta = total - alpha;
                for gamma in 1..alpha {
                    if let Ok(g) = GroupParams::new(p, alpha, beta, gamma) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G_{{{},{},{}}}({})", self.alpha, self.beta, self.gamma, self.p)
    }
}

/// The element `b^j a^i`; ordering is lexicographic on `(j, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub j: u64,
    pub i: u64,
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem { j: 0, i: 0 };

    pub fn new(j: u64, i: u64) -> Self {
        GroupElem { j, i }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.j, self.i) {
            (0, 0) => write!(f, "1"),
            (0, i) => write!(f, "{}", power_str('a', i)),
            (j, 0) => write!(f, "{}", power_str('b', j)),
            (j, i) => write!(f, "{}{}", power_str('b', j), power_str('a', i)),
        }
    }
}

fn power_str(c: char, e: u64) -> String {
    if e == 1 {
        c.to_string()
    } else {
        format!("{c}^{e}")
    }
}

/// An automorphism given by the images of `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAut {
    pub image_a: GroupElem,
    pub image_b: GroupElem,
}

impl fmt::Display for GroupAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a -> {}, b -> {})", self.image_a, self.image_b)
    }
}

/// Multiplication tables for one `GroupParams`.
#[derive(Debug, Clone)]
pub struct MetacyclicGroup {
    params: GroupParams,
    mod_a: u64,
    mod_b: u64,
    // (1+p^γ)^t mod p^α for t in 0..p^{α-γ}; the base has order p^{α-γ}.
    twist: Vec<u64>,
}

impl MetacyclicGroup {
    pub fn new(params: GroupParams) -> Self {
        let p = params.p;
        let mod_a = p.pow(params.alpha);
        let mod_b = p.pow(params.beta);
        let base = 1 + p.pow(params.gamma);
        let period = p.pow(params.alpha - params.gamma) as usize;
        let mut twist = Vec::with_capacity(period);
        let mut acc = 1;
        for _ in 0..period {
            twist.push(acc);
            acc = mul_mod(acc, base, mod_a);
        }
        debug_assert_eq!(acc, 1);
        MetacyclicGroup {
            params,
            mod_a,
            mod_b,
            twist,
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn order(&self) -> u64 {
        self.mod_a * self.mod_b
    }

    /// `p^α`, the order of `a`.
    pub fn order_a(&self) -> u64 {
        self.mod_a
    }

    /// `p^β`, the order of `b`.
    pub fn order_b(&self) -> u64 {
        self.mod_b
    }

    /// `(1+p^γ)^j mod p^α`.
    pub fn twist(&self, j: u64) -> u64 {
        self.twist[(j % self.twist.len() as u64) as usize]
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::IDENTITY
    }

    pub fn a(&self) -> GroupElem {
        GroupElem::new(0, 1 % self.mod_a)
    }

    pub fn b(&self) -> GroupElem {
        GroupElem::new(1 % self.mod_b, 0)
    }

    /// `b^j a^i` with both exponents reduced.
    pub fn elem(&self, j: i64, i: i64) -> GroupElem {
        GroupElem::new(
            j.rem_euclid(self.mod_b as i64) as u64,
            i.rem_euclid(self.mod_a as i64) as u64,
        )
    }

    pub fn contains(&self, x: GroupElem) -> bool {
        x.j < self.mod_b && x.i < self.mod_a
    }

    /// Position of `x` in the lexicographic element order.
    pub fn rank(&self, x: GroupElem) -> usize {
        (x.j * self.mod_a + x.i) as usize
    }

    pub fn unrank(&self, r: usize) -> GroupElem {
        GroupElem::new(r as u64 / self.mod_a, r as u64 % self.mod_a)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order() as usize).map(move |r| self.unrank(r))
    }

    pub fn mul(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        GroupElem::new(
            (x.j + y.j) % self.mod_b,
            (mul_mod(x.i, self.twist(y.j), self.mod_a) + y.i) % self.mod_a,
        )
    }

    pub fn checked_mul(&self, x: GroupElem, y: GroupElem) -> Result<GroupElem, GroupError> {
        for z in [x, y] {
            if !self.contains(z) {
                return Err(GroupError::ParamsMismatch(z));
            }
        }
        Ok(self.mul(x, y))
    }

    pub fn inv(&self, x: GroupElem) -> GroupElem {
        let j = (self.mod_b - x.j) % self.mod_b;
        // (b^j a^i)^{-1} = a^{-i} b^{-j} = b^{-j} a^{-i (1+p^γ)^{-j}}
        let i = mul_mod(self.mod_a - x.i, self.twist(j), self.mod_a) % self.mod_a;
        GroupElem::new(j, i)
    }

    /// `(b^j a^i)^k = b^{kj} a^{i (1 + q + ... + q^{k-1})}` with `q = (1+p^γ)^j`.
    pub fn pow(&self, x: GroupElem, k: u64) -> GroupElem {
        let j = ((x.j as u128 * k as u128) % self.mod_b as u128) as u64;
        let (sum, _) = geometric_sum(self.twist(x.j), k, self.mod_a);
        GroupElem::new(j, mul_mod(x.i, sum, self.mod_a))
    }

    /// Order of `x`, always a power of `p`.
    pub fn element_order(&self, x: GroupElem) -> u64 {
        let p = self.params.p;
        let mut d = 1;
        while !self.pow(x, d).is_identity() {
            d *= p;
        }
        d
    }

    /// `y^{-1} x y`.
    pub fn conj(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[GroupElem]) -> Vec<GroupElem> {
        let mut seen = vec![false; self.order() as usize];
        let mut stack = vec![self.identity()];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                let r = self.rank(y);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(y);
                }
            }
        }
        (0..seen.len()).filter(|&r| seen[r]).map(|r| self.unrank(r)).collect()
    }

    /// Whether `gens` generates `G`, by the orbit closure.
    pub fn generates(&self, gens: &[GroupElem]) -> bool {
        self.generated_subgroup(gens).len() as u64 == self.order()
    }

    /// Whether `gens` generates `G`, tested in `G/Φ(G) = Z_p × Z_p` where
    /// `Φ(G) = ⟨a^p, b^p⟩` (Burnside basis theorem).
    pub fn generates_mod_frattini(&self, gens: &[GroupElem]) -> bool {
        let p = self.params.p;
        let vecs: Vec<(u64, u64)> = gens.iter().map(|x| (x.j % p, x.i % p)).collect();
        vecs.iter().enumerate().any(|(s, u)| {
            vecs[s + 1..]
                .iter()
                .any(|v| !(u.0 * v.1 % p + p - u.1 * v.0 % p).is_multiple_of(p))
        })
    }

    pub fn apply(&self, aut: &GroupAut, x: GroupElem) -> GroupElem {
        self.mul(self.pow(aut.image_b, x.j), self.pow(aut.image_a, x.i))
    }

    pub fn apply_set(&self, aut: &GroupAut, xs: &[GroupElem]) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = xs.iter().map(|&x| self.apply(aut, x)).collect();
        out.sort_unstable();
        out
    }

    /// Image table `rank(x) -> rank(x^θ)`.
    pub fn aut_table(&self, aut: &GroupAut) -> Vec<u32> {
        self.elements().map(|x| self.rank(self.apply(aut, x)) as u32).collect()
    }

    pub fn identity_aut(&self) -> GroupAut {
        GroupAut {
            image_a: self.a(),
            image_b: self.b(),
        }
    }

    /// `θδ`, acting as `x ↦ (x^θ)^δ`.
    pub fn compose_aut(&self, theta: &GroupAut, delta: &GroupAut) -> GroupAut {
        GroupAut {
            image_a: self.apply(delta, theta.image_a),
            image_b: self.apply(delta, theta.image_b),
        }
    }

    pub fn aut_order(&self, aut: &GroupAut) -> u64 {
        let id = self.identity_aut();
        let mut cur = *aut;
        let mut d = 1;
        while cur != id {
            cur = self.compose_aut(&cur, aut);
            d += 1;
        }
        d
    }

    /// Validates that `a ↦ image_a, b ↦ image_b` extends to an automorphism.
    pub fn aut_from_images(
        &self,
        image_a: GroupElem,
        image_b: GroupElem,
    ) -> Result<GroupAut, GroupError> {
        for x in [image_a, image_b] {
            if !self.contains(x) {
                return Err(GroupError::ParamsMismatch(x));
            }
        }
        for (generator, x, expected) in [('a', image_a, self.mod_a), ('b', image_b, self.mod_b)] {
            let found = self.element_order(x);
            if found != expected {
                return Err(GroupError::OrderViolated {
                    generator,
                    found,
                    expected,
                });
            }
        }
        if !self.relation_holds(image_a, image_b) {
            return Err(GroupError::RelationViolated);
        }
        if !self.generates(&[image_a, image_b]) {
            return Err(GroupError::NotGenerating);
        }
        Ok(GroupAut { image_a, image_b })
    }

    fn relation_holds(&self, x: GroupElem, y: GroupElem) -> bool {
        self.conj(x, y) == self.pow(x, 1 + self.params.p.pow(self.params.gamma))
    }

    /// All automorphisms, sorted by `(image_a, image_b)`.
    pub fn enumerate_automorphisms(&self, limit: u64) -> Result<Vec<GroupAut>, GroupError> {
        if self.order() > limit {
            return Err(GroupError::TooLarge {
                order: self.order(),
                limit,
            });
        }
        let candidates_a: Vec<GroupElem> = self
            .elements()
            .filter(|&x| self.element_order(x) == self.mod_a)
            .collect();
        let candidates_b: Vec<GroupElem> = self
            .elements()
            .filter(|&y| self.element_order(y) == self.mod_b)
            .collect();
        let mut out = Vec::new();
        for &x in &candidates_a {
            for &y in &candidates_b {
                if self.generates_mod_frattini(&[x, y]) && self.relation_holds(x, y) {
                    out.push(GroupAut {
                        image_a: x,
                        image_b: y,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `a ↦ a^e, b ↦ b` where `e` is the canonical element of order `k`
    /// in `Z_{p^α}^*`.
    pub fn canonical_theta(&self, k: u64) -> Result<GroupAut, GroupError> {
        let p = self.params.p;
        if k < 2 || !(p - 1).is_multiple_of(k) {
            return Err(GroupError::NoSuchOrder(k));
        }
        let e = self.modulus_a().element_of_order(k)?;
        Ok(GroupAut {
            image_a: GroupElem::new(0, e.value()),
            image_b: self.b(),
        })
    }

    /// `Z_{p^α}`, the ring of `a`-exponents.
    pub fn modulus_a(&self) -> PrimePowerModulus {
        PrimePowerModulus::new(self.params.p, self.params.alpha).expect("validated params")
    }

    /// `Z_{p^β}`, the ring of `b`-exponents.
    pub fn modulus_b(&self) -> PrimePowerModulus {
        PrimePowerModulus::new(self.params.p, self.params.beta).expect("validated params")
    }
}

/// `(1 + q + ... + q^{k-1}, q^k) mod m` by binary splitting.
fn geometric_sum(q: u64, k: u64, m: u64) -> (u64, u64) {
    if k == 0 {
        return (0, 1 % m);
    }
    if k.is_multiple_of(2) {
        let (s, qk) = geometric_sum(q, k / 2, m);
        ((s + mul_mod(s, qk, m)) % m, mul_mod(qk, qk, m))
    } else {
        let (s, qk) = geometric_sum(q, k - 1, m);
        ((1 + mul_mod(q, s, m)) % m, mul_mod(qk, q, m))
    }
}

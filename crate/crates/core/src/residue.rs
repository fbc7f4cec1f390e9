//! Exact arithmetic in the ring `Z_{p^α}` and its unit group.
//!
//! Values are kept reduced in `[0, p^α)` and every product goes through a
//! 128-bit intermediate, so the only size constraint is `p^α < 2^63`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{alpha} does not fit below 2^63")]
    ModulusTooLarge { p: u64, alpha: u32 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("no element of order {order} in the unit group modulo {modulus}")]
    NoSuchOrder { order: u64, modulus: u64 },
}

impl ResidueError {
    pub fn name(&self) -> &'static str {
        match self {
            ResidueError::NotAnOddPrime(_) => "NotAnOddPrime",
            ResidueError::ZeroExponent => "ZeroExponent",
            ResidueError::ModulusTooLarge { .. } => "ModulusTooLarge",
            ResidueError::NotAUnit { .. } => "NotAUnit",
            ResidueError::NoSuchOrder { .. } => "NoSuchOrder",
        }
    }
}

/// The modulus `p^α` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePowerModulus {
    p: u64,
    alpha: u32,
    value: u64,
}

impl PrimePowerModulus {
    pub fn new(p: u64, alpha: u32) -> Result<Self, ResidueError> {
        if p < 3 || !is_prime(p) {
            return Err(ResidueError::NotAnOddPrime(p));
        }
        if alpha == 0 {
            return Err(ResidueError::ZeroExponent);
        }
        let value = checked_pow(p, alpha)
            .filter(|&v| v < (1 << 63))
            .ok_or(ResidueError::ModulusTooLarge { p, alpha })?;
        Ok(PrimePowerModulus { p, alpha, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// The integer `p^α`.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `|Z_{p^α}^*| = (p-1) p^{α-1}`.
    pub fn unit_group_order(&self) -> u64 {
        self.value / self.p * (self.p - 1)
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.value,
            modulus: *self,
        }
    }

    /// Reduces a signed integer into `[0, p^α)`.
    pub fn residue_i128(&self, value: i128) -> Residue {
        Residue {
            value: value.rem_euclid(self.value as i128) as u64,
            modulus: *self,
        }
    }

    pub fn zero(&self) -> Residue {
        self.residue(0)
    }

    pub fn one(&self) -> Residue {
        self.residue(1)
    }

    /// All residues in `[0, p^α)`, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.value).map(move |v| self.residue(v))
    }

    /// All units in increasing order.
    pub fn units(&self) -> impl Iterator<Item = Residue> + '_ {
        (1..self.value)
            .filter(move |v| v % self.p != 0)
            .map(move |v| self.residue(v))
    }

    /// The least positive integer that generates `Z_{p^α}^*`.
    pub fn least_primitive_root(&self) -> Residue {
        let phi = self.unit_group_order();
        let primes: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
        (2..self.value)
            .map(|g| self.residue(g))
            .find(|g| g.is_unit() && primes.iter().all(|&q| g.pow(phi / q).value != 1))
            // Z_{p^α}^* is cyclic for odd p, so a generator always exists.
            .expect("unit group of an odd prime power is cyclic")
    }

    /// The canonical element of order `k`: `g^{φ/k}` with `g` the least
    /// primitive root.
    pub fn element_of_order(&self, k: u64) -> Result<Residue, ResidueError> {
        let phi = self.unit_group_order();
        if k == 0 || !phi.is_multiple_of(k) {
            return Err(ResidueError::NoSuchOrder {
                order: k,
                modulus: self.value,
            });
        }
        Ok(self.least_primitive_root().pow(phi / k))
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.alpha)
    }
}

/// A reduced element of `Z_{p^α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: PrimePowerModulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> PrimePowerModulus {
        self.modulus
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.modulus.p)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn not_a_unit(&self) -> ResidueError {
        ResidueError::NotAUnit {
            value: self.value,
            modulus: self.modulus.value,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Residue {
        let m = self.modulus.value;
        let mut base = self.value;
        let mut acc = 1 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            exp >>= 1;
        }
        self.modulus.residue(acc)
    }

    pub fn inverse(&self) -> Result<Residue, ResidueError> {
        if !self.is_unit() {
            return Err(self.not_a_unit());
        }
        let egcd = (self.value as i128).extended_gcd(&(self.modulus.value as i128));
        debug_assert_eq!(egcd.gcd, 1);
        Ok(self.modulus.residue_i128(egcd.x))
    }

    /// Multiplicative order, found by stripping prime factors off `φ(p^α)`.
    pub fn unit_order(&self) -> Result<u64, ResidueError> {
        if !self.is_unit() {
            return Err(self.not_a_unit());
        }
        let mut order = self.modulus.unit_group_order();
        for (q, _) in factorize(order) {
            while order.is_multiple_of(q) && self.pow(order / q).value == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Square roots of a unit: either none or the pair `{u, p^α - u}`,
    /// returned in increasing order.
    ///
    /// Tonelli-Shanks modulo `p`, then Hensel lifting one power of `p` at a
    /// time.
    pub fn sqrt_unit(&self) -> Result<Vec<Residue>, ResidueError> {
        if !self.is_unit() {
            return Err(self.not_a_unit());
        }
        let p = self.modulus.p;
        let Some(mut root) = tonelli_shanks(self.value % p, p) else {
            return Ok(Vec::new());
        };
        let mut pk = p;
        for _ in 1..self.modulus.alpha {
            pk *= p;
            let x = self.value % pk;
            let fx = (mul_mod(root, root, pk) + pk - x) % pk;
            let deriv = mul_mod(2, root, pk);
            let inv = (deriv as i128).extended_gcd(&(pk as i128)).x.rem_euclid(pk as i128) as u64;
            root = (root + pk - mul_mod(fx, inv, pk)) % pk;
        }
        let u = self.modulus.residue(root);
        debug_assert_eq!(u * u, *self);
        let mut roots = vec![u, -u];
        roots.sort_by_key(|r| r.value);
        Ok(roots)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue modulus mismatch");
        let m = self.modulus.value;
        self.modulus.residue(((self.value as u128 + rhs.value as u128) % m as u128) as u64)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let m = self.modulus.value;
        self.modulus.residue((m - self.value) % m)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue modulus mismatch");
        self.modulus
            .residue(mul_mod(self.value, rhs.value, self.modulus.value))
    }
}

impl Mul<u64> for Residue {
    type Output = Residue;
    fn mul(self, rhs: u64) -> Residue {
        self * self.modulus.residue(rhs)
    }
}

impl Add<u64> for Residue {
    type Output = Residue;
    fn add(self, rhs: u64) -> Residue {
        self + self.modulus.residue(rhs)
    }
}

impl Sub<u64> for Residue {
    type Output = Residue;
    fn sub(self, rhs: u64) -> Residue {
        self - self.modulus.residue(rhs)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

/// Deterministic Miller-Rabin; the fixed witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut q = 2;
    while q * q <= n && q < 1 << 16 {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            primes.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut large = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                large.push(m);
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        large.sort_unstable();
        for m in large {
            match primes.last_mut() {
                Some((q, e)) if *q == m => *e += 1,
                _ => primes.push((m, 1)),
            }
        }
    }
    primes
}

// Brent-style rho; `n` is odd, composite and free of factors below 2^16.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Square root of `a` modulo an odd prime `p`, if one exists.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    if s == 1 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u64, alpha: u32) -> PrimePowerModulus {
        PrimePowerModulus::new(p, alpha).unwrap()
    }

    fn order_by_iteration(x: Residue) -> u64 {
        let mut y = x;
        let mut d = 1;
        while y.value() != 1 {
            y = y * x;
            d += 1;
        }
        d
    }

    fn squares_by_search(x: Residue) -> Vec<Residue> {
        x.modulus().elements().filter(|u| *u * *u == x).collect()
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(PrimePowerModulus::new(2, 3), Err(ResidueError::NotAnOddPrime(2)));
        assert_eq!(PrimePowerModulus::new(9, 1), Err(ResidueError::NotAnOddPrime(9)));
        assert_eq!(PrimePowerModulus::new(3, 0), Err(ResidueError::ZeroExponent));
        assert!(matches!(
            PrimePowerModulus::new(3, 40),
            Err(ResidueError::ModulusTooLarge { .. })
        ));
        assert_eq!(m(5, 6).value(), 15625);
    }

    #[test]
    fn inverse_examples() {
        let nine = m(3, 2);
        assert_eq!(nine.residue(2).inverse().unwrap().value(), 5);
        assert_eq!(nine.residue(7).inverse().unwrap().value(), 4);
        assert_eq!(
            nine.residue(3).inverse(),
            Err(ResidueError::NotAUnit { value: 3, modulus: 9 })
        );
    }

    #[test]
    fn unit_order_examples() {
        let nine = m(3, 2);
        assert_eq!(nine.residue(1).unit_order().unwrap(), 1);
        assert_eq!(nine.residue(4).unit_order().unwrap(), 3);
        assert_eq!(nine.residue(2).unit_order().unwrap(), 6);
        assert!(nine.residue(6).unit_order().is_err());
    }

    #[test]
    fn unit_order_matches_iteration() {
        for (p, a) in [(3, 3), (5, 2), (7, 2), (11, 1), (13, 2)] {
            let md = m(p, a);
            for x in md.units() {
                assert_eq!(x.unit_order().unwrap(), order_by_iteration(x), "{x} mod {md}");
            }
        }
    }

    #[test]
    fn element_of_order_examples() {
        assert_eq!(m(3, 2).element_of_order(2).unwrap().value(), 8);
        assert_eq!(m(3, 2).element_of_order(6).unwrap().value(), 2);
        assert_eq!(m(5, 2).element_of_order(4).unwrap().value(), 7);
        assert_eq!(
            m(3, 2).element_of_order(4),
            Err(ResidueError::NoSuchOrder { order: 4, modulus: 9 })
        );
        assert_eq!(m(3, 2).least_primitive_root().value(), 2);
        assert_eq!(m(5, 2).least_primitive_root().value(), 2);
        // 2 is not a primitive root modulo 7.
        assert_eq!(m(7, 2).least_primitive_root().value(), 3);
    }

    #[test]
    fn element_of_order_has_exact_order() {
        for (p, a) in [(3, 3), (5, 3), (7, 2), (11, 2), (13, 2)] {
            let md = m(p, a);
            let phi = md.unit_group_order();
            for k in (1..=phi).filter(|k| phi.is_multiple_of(*k)) {
                let e = md.element_of_order(k).unwrap();
                assert_eq!(e.pow(k).value(), 1);
                for d in (1..k).filter(|d| k % d == 0) {
                    assert_ne!(e.pow(d).value(), 1, "order {k} element {e} mod {md}");
                }
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let nine = m(3, 2);
        let vals = |x: u64| -> Vec<u64> {
            nine.residue(x).sqrt_unit().unwrap().iter().map(|r| r.value()).collect()
        };
        assert_eq!(vals(4), vec![2, 7]);
        assert_eq!(vals(7), vec![4, 5]);
        assert_eq!(vals(2), Vec::<u64>::new());
        assert!(nine.residue(3).sqrt_unit().is_err());
    }

    #[test]
    fn sqrt_matches_exhaustive_search() {
        // p = 17 and 41 have p - 1 divisible by 16 and 8: the general
        // Tonelli-Shanks branch.
        for (p, a) in [(3, 4), (5, 3), (7, 3), (11, 2), (13, 2), (17, 2), (41, 2)] {
            let md = m(p, a);
            for x in md.units() {
                assert_eq!(x.sqrt_unit().unwrap(), squares_by_search(x), "{x} mod {md}");
            }
        }
    }

    #[test]
    fn powers_of_e_minus_one_are_units() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..=3 {
                let md = m(p, a);
                for k in (2..p).filter(|k| (p - 1) % k == 0) {
                    let e = md.element_of_order(k).unwrap();
                    let mut sum = md.zero();
                    for i in 0..k {
                        sum = sum + e.pow(i);
                        if i >= 1 {
                            assert!((e.pow(i) - 1).is_unit(), "e^{i}-1, e={e}, mod {md}");
                        }
                    }
                    assert!(sum.is_zero(), "1+e+...+e^(k-1) mod {md}");
                }
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        let big = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factorize(big), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(v in 1u64..15625) {
            let md = m(5, 6);
            let x = md.residue(v);
            prop_assume!(x.is_unit());
            prop_assert_eq!((x * x.inverse().unwrap()).value(), 1);
        }

        #[test]
        fn sqrt_of_square(v in 1u64..(1 << 40)) {
            let md = m(1_000_003, 2);
            let x = md.residue(v);
            prop_assume!(x.is_unit());
            let roots = (x * x).sqrt_unit().unwrap();
            prop_assert_eq!(roots.len(), 2);
            prop_assert!(roots.contains(&x) && roots.contains(&-x));
            prop_assert!((roots[0] + roots[1]).is_zero());
        }
    }
}

//! Permutation groups held as a base and strong generating set, built by the
//! deterministic Schreier-Sims algorithm.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::Permutation;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level {
    base_point: u32,
    // Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    gen_inverses: Vec<Permutation>,
    orbit: Vec<u32>,
    // For each point of the orbit: (predecessor, index of generator applied).
    tree: Vec<(u32, u32)>,
    // Number of generators already checked for each orbit point.
    checked: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut tree = vec![(NO_PARENT, NO_PARENT); degree];
        tree[base_point as usize] = (base_point, NO_PARENT);
        Level {
            base_point,
            gens: Vec::new(),
            gen_inverses: Vec::new(),
            orbit: vec![base_point],
            tree,
            checked: vec![0],
        }
    }

    fn in_orbit(&self, x: usize) -> bool {
        self.tree[x].0 != NO_PARENT
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gen_inverses.push(g.inverse());
        self.gens.push(g);
        // Extend the tree without touching existing entries, so previously
        // checked Schreier generators stay valid.
        let mut idx = 0;
        while idx < self.orbit.len() {
            let x = self.orbit[idx] as usize;
            for (s, gen) in self.gens.iter().enumerate() {
                let y = gen.apply(x);
                if !self.in_orbit(y) {
                    self.tree[y] = (x as u32, s as u32);
                    self.orbit.push(y as u32);
                    self.checked.push(0);
                }
            }
            idx += 1;
        }
    }

    /// Coset representative mapping the base point to `x`.
    fn transversal(&self, x: usize, degree: usize) -> Permutation {
        let mut path = Vec::new();
        let mut y = x;
        while y != self.base_point as usize {
            let (prev, s) = self.tree[y];
            path.push(s as usize);
            y = prev as usize;
        }
        let mut u = Permutation::identity(degree);
        for &s in path.iter().rev() {
            u = u.then(&self.gens[s]);
        }
        u
    }

    /// `h · u_x^{-1}` where `x` is the image of the base point under `h`.
    fn strip(&self, mut h: Permutation, x: usize) -> Permutation {
        let mut y = x;
        while y != self.base_point as usize {
            let (prev, s) = self.tree[y];
            h = h.then(&self.gen_inverses[s as usize]);
            y = prev as usize;
        }
        h
    }
}

/// A permutation group with a stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds the chain with the given points first in the base.
    pub fn with_base_prefix(degree: usize, generators: Vec<Permutation>, prefix: &[usize]) -> Self {
        let mut generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        generators.sort();
        generators.dedup();
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels: prefix.iter().map(|&b| Level::new(degree, b as u32)).collect(),
        };
        for g in generators {
            let mut level = 0;
            loop {
                if level == group.levels.len() {
                    let moved = (0..degree).find(|&x| g.apply(x) != x).expect("nontrivial");
                    group.levels.push(Level::new(degree, moved as u32));
                }
                let b = group.levels[level].base_point as usize;
                group.levels[level].add_gen(g.clone());
                if g.apply(b) != b {
                    break;
                }
                level += 1;
            }
        }
        group.complete();
        group.trim_trailing_levels();
        group
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let mut idx = 0;
            while idx < self.levels[lvl].orbit.len() {
                while (self.levels[lvl].checked[idx] as usize) < self.levels[lvl].gens.len() {
                    let s = self.levels[lvl].checked[idx] as usize;
                    let beta = self.levels[lvl].orbit[idx] as usize;
                    let schreier = self.levels[lvl]
                        .transversal(beta, self.degree)
                        .then(&self.levels[lvl].gens[s]);
                    let (residue, depth) = self.sift(schreier, lvl);
                    debug_assert!(depth > lvl);
                    if !residue.is_identity() {
                        if depth == self.levels.len() {
                            let moved = (0..self.degree)
                                .find(|&x| residue.apply(x) != x)
                                .expect("nontrivial residue");
                            self.levels.push(Level::new(self.degree, moved as u32));
                        }
                        for l in lvl + 1..=depth {
                            self.levels[l].add_gen(residue.clone());
                        }
                        i = depth as isize;
                        continue 'outer;
                    }
                    self.levels[lvl].checked[idx] += 1;
                }
                idx += 1;
            }
            i -= 1;
        }
    }

    // Levels whose orbit is a single point add nothing to the chain.
    fn trim_trailing_levels(&mut self) {
        while self.levels.last().is_some_and(|l| l.orbit.len() == 1 && l.gens.is_empty()) {
            self.levels.pop();
        }
    }

    /// Strips `h` through the chain from level `from`; returns the residue
    /// and the level where stripping stopped.
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base_point as usize);
            if !level.in_orbit(x) {
                return (h, l);
            }
            h = level.strip(h, x);
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point as usize).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit sizes.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .fold(BigUint::one(), |acc, x| acc * x)
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut idx = 0;
            while idx < orbit.len() {
                let x = orbit[idx];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                idx += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.binary_search(&x).is_ok()).expect("every point lies in an orbit")
    }

    /// The point stabilizer of `x`.
    pub fn stabilizer(&self, x: usize) -> PermGroup {
        let chain = PermGroup::with_base_prefix(self.degree, self.generators.clone(), &[x]);
        let gens = chain.levels.get(1).map(|l| l.gens.clone()).unwrap_or_default();
        let rest: Vec<usize> = chain.base().into_iter().skip(1).collect();
        PermGroup::with_base_prefix(self.degree, gens, &rest)
    }

    /// Every element, if there are at most `limit` of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<Permutation>> {
        if self.order() > BigUint::from(limit) {
            return None;
        }
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Some(out)
    }

    /// Cyclic iff abelian and some element has order `|H|`; for an abelian
    /// group the lcm of the generator orders is attained.
    pub fn is_cyclic(&self) -> bool {
        let gens = &self.generators;
        for (s, x) in gens.iter().enumerate() {
            for y in &gens[s + 1..] {
                if x.then(y) != y.then(x) {
                    return false;
                }
            }
        }
        let exponent = gens.iter().fold(BigUint::one(), |acc, g| acc.lcm(&g.order()));
        exponent == self.order()
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` and `other` are the same set of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        PermGroup::new(n, vec![p(&cycle), p(&swap)])
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..9 {
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(symmetric(n).order_u64(), Some(expected));
        }
        let big = symmetric(30).order();
        assert_eq!(big.to_string(), "265252859812191058636308480000000");
    }

    #[test]
    fn membership() {
        // A_4 inside S_4.
        let a4 = PermGroup::new(4, vec![p(&[1, 2, 0, 3]), p(&[0, 2, 3, 1])]);
        assert_eq!(a4.order_u64(), Some(12));
        assert!(a4.contains(&p(&[1, 0, 3, 2])));
        assert!(!a4.contains(&p(&[1, 0, 2, 3])));
        assert!(a4.is_subgroup_of(&symmetric(4)));
        assert!(!symmetric(4).is_subgroup_of(&a4));
        assert!(a4.contains(&Permutation::identity(4)));
    }

    #[test]
    fn elements_enumeration_matches_order() {
        let a4 = PermGroup::new(4, vec![p(&[1, 2, 0, 3]), p(&[0, 2, 3, 1])]);
        let els = a4.elements(100).unwrap();
        assert_eq!(els.len(), 12);
        assert!(els.iter().all(|g| a4.contains(g)));
        assert!(symmetric(8).elements(100).is_none());
    }

    #[test]
    fn stabilizer_and_orbits() {
        let s5 = symmetric(5);
        let st = s5.stabilizer(2);
        assert_eq!(st.order_u64(), Some(24));
        assert!(st.generators().iter().all(|g| g.apply(2) == 2));
        assert_eq!(st.orbits(), vec![vec![0, 1, 3, 4], vec![2]]);
        let g = PermGroup::new(6, vec![p(&[1, 0, 2, 3, 5, 4])]);
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3], vec![4, 5]]);
    }

    #[test]
    fn cyclicity() {
        let c6 = PermGroup::new(6, vec![p(&[1, 2, 3, 4, 5, 0])]);
        assert!(c6.is_cyclic());
        // Z2 x Z2 is abelian but not cyclic.
        let v4 = PermGroup::new(4, vec![p(&[1, 0, 3, 2]), p(&[2, 3, 0, 1])]);
        assert!(!v4.is_cyclic());
        assert!(!symmetric(3).is_cyclic());
        // Z2 x Z3 presented by two generators is cyclic.
        let z6 = PermGroup::new(5, vec![p(&[1, 0, 2, 3, 4]), p(&[0, 1, 3, 4, 2])]);
        assert!(z6.is_cyclic());
        assert!(PermGroup::trivial(3).is_cyclic());
    }

    #[test]
    fn base_prefix_is_respected() {
        let s4 = PermGroup::with_base_prefix(4, symmetric(4).generators().to_vec(), &[3, 1]);
        assert_eq!(&s4.base()[..2], &[3, 1]);
        assert_eq!(s4.order_u64(), Some(24));
    }
}

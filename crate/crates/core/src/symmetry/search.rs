//! Automorphism search by individualization and refinement.
//!
//! The first (leftmost) path of the search tree is walked once and its leaf
//! kept as a reference. Every other node is compared against it through the
//! refinement trace; a leaf with a matching trace yields a candidate
//! permutation that is accepted only if it preserves adjacency.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use crate::graph::Graph;

use super::Permutation;

/// Ordered partition of `0..n` into cells of consecutive positions.
#[derive(Debug, Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    // Vertex to the start position of its cell.
    cell: Vec<u32>,
    // Cell start to cell end (exclusive); only meaningful at cell starts.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn by_degree(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (graph.degree(v as usize), v));
        let mut part = Partition {
            pos: vec![0; n],
            cell: vec![0; n],
            end: vec![0; n],
            elems,
            cells: 0,
        };
        let mut start = 0;
        while start < n {
            let d = graph.degree(part.elems[start] as usize);
            let mut stop = start;
            while stop < n && graph.degree(part.elems[stop] as usize) == d {
                stop += 1;
            }
            for q in start..stop {
                let v = part.elems[q] as usize;
                part.pos[v] = q as u32;
                part.cell[v] = start as u32;
            }
            part.end[start] = stop as u32;
            part.cells += 1;
            start = stop;
        }
        part
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.elems.len() {
            out.push(s);
            s = self.end[s] as usize;
        }
        out
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    /// Smallest nontrivial cell, earliest position on ties.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.elems.len() {
            let e = self.end[s] as usize;
            let size = e - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
            s = e;
        }
        best.map(|(s, _)| s)
    }

    fn cell_members(&self, start: usize) -> &[u32] {
        &self.elems[start..self.end[start] as usize]
    }

    /// Moves `v` to the front of its cell as a singleton; returns the start
    /// of that singleton cell.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell[v] as usize;
        let e = self.end[s] as usize;
        debug_assert!(e - s > 1);
        let q = self.pos[v] as usize;
        let other = self.elems[s];
        self.elems.swap(s, q);
        self.pos[other as usize] = q as u32;
        self.pos[v] = s as u32;
        self.end[s] = s as u32 + 1;
        self.end[s + 1] = e as u32;
        for q in s + 1..e {
            self.cell[self.elems[q] as usize] = s as u32 + 1;
        }
        self.cells += 1;
        s
    }
}

/// Refinement trace, either recorded or checked against a recording.
enum Trace<'a> {
    Record(&'a mut Vec<u64>),
    Compare { expected: &'a [u64], at: usize },
}

impl Trace<'_> {
    /// Returns false on the first disagreement.
    fn event(&mut self, value: u64) -> bool {
        match self {
            Trace::Record(out) => {
                out.push(value);
                true
            }
            Trace::Compare { expected, at } => {
                let ok = expected.get(*at) == Some(&value);
                *at += 1;
                ok
            }
        }
    }

    fn finished(&self) -> bool {
        match self {
            Trace::Record(_) => true,
            Trace::Compare { expected, at } => *at == expected.len(),
        }
    }
}

struct Refiner<'g> {
    graph: &'g Graph,
    count: Vec<u32>,
    in_queue: Vec<bool>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    cell_marked: Vec<bool>,
    scratch: Vec<(u32, u32)>,
}

impl<'g> Refiner<'g> {
    fn new(graph: &'g Graph) -> Self {
        let n = graph.vertex_count();
        Refiner {
            graph,
            count: vec![0; n],
            in_queue: vec![false; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            cell_marked: vec![false; n],
            scratch: Vec::new(),
        }
    }

    /// Refines to the coarsest equitable partition finer than `part`.
    fn refine(&mut self, part: &mut Partition, initial: &[usize], trace: &mut Trace) -> bool {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in initial {
            self.in_queue[s] = true;
            queue.push_back(s);
        }
        let ok = self.run(part, &mut queue, trace);
        for s in queue {
            self.in_queue[s] = false;
        }
        ok && trace.finished()
    }

    fn run(&mut self, part: &mut Partition, queue: &mut VecDeque<usize>, trace: &mut Trace) -> bool {
        while let Some(splitter) = queue.pop_front() {
            self.in_queue[splitter] = false;
            if part.is_discrete() {
                break;
            }
            let stop = part.end[splitter] as usize;
            for q in splitter..stop {
                let u = part.elems[q] as usize;
                for &w in self.graph.neighbors(u) {
                    if self.count[w as usize] == 0 {
                        self.touched.push(w);
                    }
                    self.count[w as usize] += 1;
                }
            }
            for &w in &self.touched {
                let s = part.cell[w as usize];
                if part.end[s as usize] - s > 1 && !self.cell_marked[s as usize] {
                    self.cell_marked[s as usize] = true;
                    self.touched_cells.push(s);
                }
            }
            self.touched_cells.sort_unstable();
            let mut ok = true;
            for idx in 0..self.touched_cells.len() {
                let s = self.touched_cells[idx] as usize;
                self.cell_marked[s] = false;
                if !ok {
                    continue;
                }
                if !self.split(part, s, queue, trace) {
                    ok = false;
                }
            }
            for &w in &self.touched {
                self.count[w as usize] = 0;
            }
            self.touched.clear();
            self.touched_cells.clear();
            if !ok {
                return false;
            }
        }
        true
    }

    fn split(&mut self, part: &mut Partition, s: usize, queue: &mut VecDeque<usize>, trace: &mut Trace) -> bool {
        let e = part.end[s] as usize;
        self.scratch.clear();
        self.scratch
            .extend(part.elems[s..e].iter().map(|&v| (self.count[v as usize], v)));
        let first = self.scratch[0].0;
        if self.scratch.iter().all(|&(c, _)| c == first) {
            return true;
        }
        self.scratch.sort_unstable();
        let mut hasher = DefaultHasher::new();
        s.hash(&mut hasher);
        let mut fragments: Vec<(usize, usize)> = Vec::new();
        let mut start = s;
        for q in 0..self.scratch.len() {
            let (c, v) = self.scratch[q];
            part.elems[s + q] = v;
            part.pos[v as usize] = (s + q) as u32;
            let last = q + 1 == self.scratch.len() || self.scratch[q + 1].0 != c;
            if last {
                let stop = s + q + 1;
                fragments.push((start, stop));
                (c, stop - start).hash(&mut hasher);
                start = stop;
            }
        }
        for &(fs, fe) in &fragments {
            part.end[fs] = fe as u32;
            for q in fs..fe {
                part.cell[part.elems[q] as usize] = fs as u32;
            }
        }
        part.cells += fragments.len() - 1;
        if self.in_queue[s] {
            for &(fs, _) in &fragments[1..] {
                self.in_queue[fs] = true;
                queue.push_back(fs);
            }
        } else {
            let largest = fragments
                .iter()
                .enumerate()
                .max_by_key(|&(idx, &(fs, fe))| (fe - fs, std::cmp::Reverse(idx)))
                .map(|(idx, _)| idx)
                .expect("at least two fragments");
            for (idx, &(fs, _)) in fragments.iter().enumerate() {
                if idx != largest {
                    self.in_queue[fs] = true;
                    queue.push_back(fs);
                }
            }
        }
        trace.event(hasher.finish())
    }
}

/// Outcome of the search: generators and the base used.
#[derive(Debug, Clone)]
pub(crate) struct SearchResult {
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    /// Orbit size of each base point under the stabilizer of the earlier ones.
    pub orbit_sizes: Vec<usize>,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut y = x;
        while self.parent[y] as usize != root {
            let next = self.parent[y] as usize;
            self.parent[y] = root as u32;
            y = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (big, small) = if self.size[rx] >= self.size[ry] { (rx, ry) } else { (ry, rx) };
            self.parent[small] = big as u32;
            self.size[big] += self.size[small];
        }
    }
}

struct Search<'g> {
    graph: &'g Graph,
    refiner: Refiner<'g>,
    // Partition at each level of the leftmost path, after refinement.
    path: Vec<Partition>,
    // Trace of the refinement that produced `path[d]`.
    traces: Vec<Vec<u64>>,
    targets: Vec<usize>,
    leaf: Vec<u32>,
}

impl<'g> Search<'g> {
    fn leftmost(graph: &'g Graph) -> Self {
        let mut refiner = Refiner::new(graph);
        let mut part = Partition::by_degree(graph);
        let mut trace = Vec::new();
        let starts = part.cell_starts();
        refiner.refine(&mut part, &starts, &mut Trace::Record(&mut trace));
        let mut path = vec![part];
        let mut traces = vec![trace];
        let mut targets = Vec::new();
        while let Some(t) = path.last().expect("nonempty").target_cell() {
            let mut child = path.last().expect("nonempty").clone();
            let v = *child.cell_members(t).iter().min().expect("nonempty cell") as usize;
            let s = child.individualize(v);
            let mut trace = Vec::new();
            refiner.refine(&mut child, &[s], &mut Trace::Record(&mut trace));
            targets.push(t);
            path.push(child);
            traces.push(trace);
        }
        let leaf = path.last().expect("nonempty").elems.clone();
        Search {
            graph,
            refiner,
            path,
            traces,
            targets,
            leaf,
        }
    }

    /// Individualizes `v` in `part` (a node at `level`) and looks for a leaf
    /// below it that matches the leftmost leaf as an automorphism.
    fn descend(&mut self, level: usize, part: &Partition, v: usize) -> Option<Permutation> {
        let mut child = part.clone();
        let s = child.individualize(v);
        let expected = &self.traces[level + 1];
        let ok = self.refiner.refine(
            &mut child,
            &[s],
            &mut Trace::Compare { expected, at: 0 },
        );
        if !ok || child.cells != self.path[level + 1].cells {
            return None;
        }
        if level + 1 == self.targets.len() {
            let mut images = vec![0u32; self.leaf.len()];
            for (q, &x) in self.leaf.iter().enumerate() {
                images[x as usize] = child.elems[q];
            }
            let perm = Permutation::from_raw(images);
            return self.graph.is_automorphism(&perm).then_some(perm);
        }
        let t = self.targets[level + 1];
        if child.end[t] != self.path[level + 1].end[t] {
            return None;
        }
        let cell: Vec<u32> = child.cell_members(t).to_vec();
        for w in cell {
            if let Some(perm) = self.descend(level + 1, &child, w as usize) {
                return Some(perm);
            }
        }
        None
    }
}

/// Generators of the automorphism group of `graph`.
pub(crate) fn search(graph: &Graph) -> SearchResult {
    let n = graph.vertex_count();
    let mut search = Search::leftmost(graph);
    let depth = search.targets.len();
    let base: Vec<usize> = (0..depth)
        .map(|d| search.path[d + 1].elems[search.targets[d]] as usize)
        .collect();
    let mut orbits = UnionFind::new(n);
    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1; depth];
    for d in (0..depth).rev() {
        let node = search.path[d].clone();
        let mut cell: Vec<u32> = node.cell_members(search.targets[d]).to_vec();
        cell.sort_unstable();
        for w in cell {
            let w = w as usize;
            if orbits.find(w) == orbits.find(base[d]) {
                continue;
            }
            if let Some(perm) = search.descend(d, &node, w) {
                for x in 0..n {
                    orbits.union(x, perm.apply(x));
                }
                generators.push(perm);
            }
        }
        let root = orbits.find(base[d]);
        orbit_sizes[d] = orbits.size[root] as usize;
    }
    SearchResult {
        generators,
        base,
        orbit_sizes,
    }
}

//! Finite F-denominated graded posets.
//!
//! A [`GradedPoset`] is a sequence of levels `Φ_first, …, Φ_last` together with
//! one biadjacency matrix per pair of consecutive levels. Covers only join
//! consecutive levels, so the cover digraph is graded, acyclic and
//! transitively irreducible by construction. Vertices are addressed by grid
//! coordinates `⟨s,t⟩` (1-based position `s` within level `t`); a
//! [`NaturalLabeling`] maps them to `1..=N`, level by level, left to right.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsequence::FSequence;
use crate::matrix::BoolMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridVertex {
    /// Position within the level, starting at 1.
    pub s: usize,
    /// Level index (the rank).
    pub t: usize,
}

impl GridVertex {
    pub fn new(s: usize, t: usize) -> Self {
        Self { s, t }
    }
}

impl Ord for GridVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.t, self.s).cmp(&(other.t, other.s))
    }
}

impl PartialOrd for GridVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.s, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    base: usize,
    sizes: Vec<usize>,
    biadjacency: Vec<BoolMatrix>,
    cobweb: bool,
}

impl GradedPoset {
    /// The cobweb poset on levels `1..=n` of `f`.
    pub fn cobweb(f: &FSequence, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::LevelRange { first: 1, last: 0 });
        }
        Self::cobweb_levels(f, 1, n)
    }

    /// The cobweb poset on levels `first..=last`; `first = 0` uses `0_F`.
    pub fn cobweb_levels(f: &FSequence, first: usize, last: usize) -> Result<Self> {
        if first > last {
            return Err(Error::LevelRange { first, last });
        }
        let sizes = f.sizes(first, last)?;
        let mats = sizes.windows(2).map(|w| BoolMatrix::ones(w[0], w[1])).collect();
        Ok(Self::from_biadjacency(sizes, mats)?.with_base(first))
    }

    /// A general graded poset with levels numbered from 1.
    pub fn from_biadjacency(sizes: Vec<usize>, mats: Vec<BoolMatrix>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Shape("a graded poset needs at least one level".into()));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Shape(format!("level {} is empty", i + 1)));
        }
        if mats.len() + 1 != sizes.len() {
            return Err(Error::Shape(format!(
                "{} levels need {} matrices, got {}",
                sizes.len(),
                sizes.len() - 1,
                mats.len()
            )));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.shape() != (sizes[i], sizes[i + 1]) {
                return Err(Error::Shape(format!(
                    "matrix {} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    sizes[i],
                    sizes[i + 1]
                )));
            }
        }
        let cobweb = mats.iter().all(BoolMatrix::is_all_ones);
        Ok(Self { base: 1, sizes, biadjacency: mats, cobweb })
    }

    /// Renumbers the levels so the lowest one is `base`.
    pub fn with_base(mut self, base: usize) -> Self {
        self.base = base;
        self
    }

    pub fn chain(n: usize) -> Result<Self> {
        Self::cobweb(&FSequence::constant(1)?, n)
    }

    pub fn antichain(k: usize) -> Result<Self> {
        Self::from_biadjacency(vec![k], Vec::new())
    }

    pub fn first_level(&self) -> usize {
        self.base
    }

    pub fn last_level(&self) -> usize {
        self.base + self.sizes.len() - 1
    }

    pub fn num_levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn level_size(&self, t: usize) -> Option<usize> {
        t.checked_sub(self.base).and_then(|i| self.sizes.get(i).copied())
    }

    /// Biadjacency between level `t` and `t + 1`.
    pub fn biadjacency(&self, t: usize) -> Option<&BoolMatrix> {
        t.checked_sub(self.base).and_then(|i| self.biadjacency.get(i))
    }

    pub fn biadjacencies(&self) -> &[BoolMatrix] {
        &self.biadjacency
    }

    pub fn is_cobweb(&self) -> bool {
        self.cobweb
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.biadjacency.iter().map(BoolMatrix::count_ones).sum()
    }

    pub fn contains(&self, v: GridVertex) -> bool {
        self.level_size(v.t).is_some_and(|n| v.s >= 1 && v.s <= n)
    }

    fn check(&self, v: GridVertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex { s: v.s, t: v.t })
        }
    }

    /// All vertices in natural-labeling order.
    pub fn vertices(&self) -> impl Iterator<Item = GridVertex> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(move |(i, &n)| (1..=n).map(move |s| GridVertex::new(s, self.base + i)))
    }

    pub fn level(&self, t: usize) -> Vec<GridVertex> {
        (1..=self.level_size(t).unwrap_or(0)).map(|s| GridVertex::new(s, t)).collect()
    }

    /// `x ≺· y`.
    pub fn covers(&self, x: GridVertex, y: GridVertex) -> bool {
        self.contains(x)
            && self.contains(y)
            && y.t == x.t + 1
            && self.biadjacency(x.t).is_some_and(|b| b.get(x.s - 1, y.s - 1))
    }

    pub fn out_degree(&self, v: GridVertex) -> usize {
        self.biadjacency(v.t).map_or(0, |b| b.row_count(v.s - 1))
    }

    pub fn in_degree(&self, v: GridVertex) -> usize {
        if v.t == self.base {
            return 0;
        }
        self.biadjacency(v.t - 1).map_or(0, |b| b.col_count(v.s - 1))
    }

    /// `x ≤ y`. Cobwebs use the grid formula `(t < v) ∨ (t = v ∧ s = u)`;
    /// everything else uses reachability along covers.
    pub fn leq(&self, x: GridVertex, y: GridVertex) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        if self.cobweb {
            return Ok(x.t < y.t || (x.t == y.t && x.s == y.s));
        }
        Ok(self.reachable(x, y))
    }

    /// Reflexive reachability in the cover digraph, ignoring the cobweb shortcut.
    pub fn leq_by_reachability(&self, x: GridVertex, y: GridVertex) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.reachable(x, y))
    }

    fn reachable(&self, x: GridVertex, y: GridVertex) -> bool {
        match x.t.cmp(&y.t) {
            Ordering::Greater => false,
            Ordering::Equal => x.s == y.s,
            Ordering::Less => {
                let mut frontier = vec![false; self.level_size(x.t).unwrap_or(0)];
                frontier[x.s - 1] = true;
                for t in x.t..y.t {
                    let b = &self.biadjacency[t - self.base];
                    let mut next = vec![false; b.cols()];
                    for (i, _) in frontier.iter().enumerate().filter(|(_, &on)| on) {
                        for j in b.row_ones(i) {
                            next[j] = true;
                        }
                    }
                    if !next.iter().any(|&b| b) {
                        return false;
                    }
                    frontier = next;
                }
                frontier[y.s - 1]
            }
        }
    }

    /// The induced sub-poset on levels `k..=n`.
    pub fn layer(&self, k: usize, n: usize) -> Result<Self> {
        if k > n || k < self.first_level() || n > self.last_level() {
            return Err(Error::LevelRange { first: k, last: n });
        }
        let lo = k - self.base;
        let hi = n - self.base;
        Ok(Self {
            base: k,
            sizes: self.sizes[lo..=hi].to_vec(),
            biadjacency: self.biadjacency[lo..hi].to_vec(),
            cobweb: self.biadjacency[lo..hi].iter().all(BoolMatrix::is_all_ones),
        })
    }

    /// Calls `visit` with the positions `(s_first, …, s_last)` of every chain
    /// that passes through all levels, in lexicographic order.
    pub fn for_each_max_chain<V: FnMut(&[usize])>(&self, mut visit: V) {
        let mut path = Vec::with_capacity(self.sizes.len());
        for s in 1..=self.sizes[0] {
            path.push(s);
            self.extend_chain(&mut path, &mut visit);
            path.pop();
        }
    }

    fn extend_chain<V: FnMut(&[usize])>(&self, path: &mut Vec<usize>, visit: &mut V) {
        let depth = path.len();
        if depth == self.sizes.len() {
            visit(path);
            return;
        }
        let b = &self.biadjacency[depth - 1];
        let from = path[depth - 1] - 1;
        for j in b.row_ones(from).collect::<Vec<_>>() {
            path.push(j + 1);
            self.extend_chain(path, visit);
            path.pop();
        }
    }

    /// Maximal chains spanning every level, in canonical lexicographic order.
    pub fn max_chains(&self) -> Vec<Vec<GridVertex>> {
        let mut out = Vec::new();
        self.for_each_max_chain(|p| {
            out.push(p.iter().enumerate().map(|(i, &s)| GridVertex::new(s, self.base + i)).collect());
        });
        out
    }

    /// Number of spanning chains, by dynamic programming over levels.
    pub fn max_chain_count(&self) -> BigUint {
        let mut counts: Vec<BigUint> = vec![BigUint::one(); self.sizes[0]];
        for b in &self.biadjacency {
            let mut next = vec![BigUint::default(); b.cols()];
            for (i, c) in counts.iter().enumerate() {
                for j in b.row_ones(i) {
                    next[j] += c;
                }
            }
            counts = next;
        }
        counts.into_iter().sum()
    }

    fn is_internal(&self, v: GridVertex) -> bool {
        v.t > self.first_level() && v.t < self.last_level()
    }

    /// Internal vertices (strictly between the bottom and top levels) with
    /// in-degree or out-degree zero.
    pub fn mute_vertices(&self) -> Vec<GridVertex> {
        self.vertices()
            .filter(|&v| self.is_internal(v) && (self.in_degree(v) == 0 || self.out_degree(v) == 0))
            .collect()
    }

    /// Vertices with no incident cover edge at all. Single-level posets have none.
    pub fn dummy_vertices(&self) -> Vec<GridVertex> {
        if self.num_levels() < 2 {
            return Vec::new();
        }
        self.vertices().filter(|&v| self.in_degree(v) == 0 && self.out_degree(v) == 0).collect()
    }

    pub fn natural_labeling(&self) -> NaturalLabeling {
        NaturalLabeling::new(self.base, &self.sizes)
    }

    /// Hasse adjacency in natural labeling; only the superdiagonal blocks are nonzero.
    pub fn adjacency_matrix(&self) -> BoolMatrix {
        let labels = self.natural_labeling();
        let mut a = BoolMatrix::zeros(labels.len(), labels.len());
        for (i, b) in self.biadjacency.iter().enumerate() {
            a.put_block(labels.offsets[i], labels.offsets[i + 1], b);
        }
        a
    }

    /// The order-dual: levels reversed, each biadjacency transposed. Position
    /// `s` is kept, so `⟨s, t⟩` maps to `⟨s, first + last - t⟩`.
    pub fn dual(&self) -> Self {
        let sizes: Vec<usize> = self.sizes.iter().rev().copied().collect();
        let biadjacency: Vec<BoolMatrix> = self.biadjacency.iter().rev().map(BoolMatrix::transpose).collect();
        Self { base: self.base, sizes, biadjacency, cobweb: self.cobweb }
    }

    pub fn dual_vertex(&self, v: GridVertex) -> GridVertex {
        GridVertex::new(v.s, self.first_level() + self.last_level() - v.t)
    }

    /// Whether the Hasse diagram is connected as an undirected graph.
    pub fn is_connected(&self) -> bool {
        let labels = self.natural_labeling();
        let n = labels.len();
        let adj = self.adjacency_matrix();
        let sym = adj.or(&adj.transpose()).expect("square");
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in sym.row_ones(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Graphviz rendering of the Hasse diagram, one rank per level, edges upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        for t in self.first_level()..=self.last_level() {
            let names: Vec<String> = self.level(t).iter().map(|v| format!("\"{},{}\";", v.s, v.t)).collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", names.join(" "));
        }
        for x in self.vertices() {
            if let Some(b) = self.biadjacency(x.t) {
                for j in b.row_ones(x.s - 1) {
                    let _ = writeln!(out, "  \"{},{}\" -> \"{},{}\";", x.s, x.t, j + 1, x.t + 1);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_document(&self) -> PosetDocument {
        PosetDocument {
            sizes: self.sizes.clone(),
            biadjacency: self.biadjacency.iter().map(BoolMatrix::to_int_rows).collect(),
            base_level: (self.base != 1).then_some(self.base),
        }
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Self> {
        let mats = doc
            .biadjacency
            .iter()
            .map(|rows| {
                let rows: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&b| b != 0).collect()).collect();
                if rows.is_empty() {
                    return Err(Error::Shape("empty biadjacency matrix".into()));
                }
                BoolMatrix::from_rows(&rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_biadjacency(doc.sizes.clone(), mats)?.with_base(doc.base_level.unwrap_or(1)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// JSON poset document `{"sizes": […], "biadjacency": [[[0/1…]…]…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub sizes: Vec<usize>,
    pub biadjacency: Vec<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_level: Option<usize>,
}

/// Level-major, left-to-right bijection between grid vertices and `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalLabeling {
    base: usize,
    /// `offsets[i]` is the number of vertices below level `base + i`.
    offsets: Vec<usize>,
}

impl NaturalLabeling {
    fn new(base: usize, sizes: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for s in sizes {
            acc += s;
            offsets.push(acc);
        }
        Self { base, offsets }
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Level boundaries: labels of level `base + i` are `offsets[i]+1 ..= offsets[i+1]`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn label(&self, v: GridVertex) -> Result<usize> {
        let i = v.t.checked_sub(self.base).filter(|&i| i + 1 < self.offsets.len());
        match i {
            Some(i) if v.s >= 1 && v.s <= self.offsets[i + 1] - self.offsets[i] => Ok(self.offsets[i] + v.s),
            _ => Err(Error::InvalidVertex { s: v.s, t: v.t }),
        }
    }

    pub fn vertex(&self, label: usize) -> Result<GridVertex> {
        if label == 0 || label > self.len() {
            return Err(Error::LabelOutOfRange { label, max: self.len() });
        }
        let i = self.offsets.partition_point(|&o| o < label) - 1;
        Ok(GridVertex::new(label - self.offsets[i], self.base + i))
    }

    /// Level of the vertex carrying `label`.
    pub fn level_of(&self, label: usize) -> Result<usize> {
        self.vertex(label).map(|v| v.t)
    }
}

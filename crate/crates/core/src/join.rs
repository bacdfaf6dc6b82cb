//! Sums, products and natural joins of finite posets.
//!
//! [`FinitePoset`] is a labeled poset on `0..n` stored as its reflexive order
//! matrix and its cover (Hasse) matrix. It is the common currency for the
//! operations here; graded posets convert with [`FinitePoset::from_graded`].
//! Graded operands can also be glued directly along shared levels with
//! [`natural_join_graded`], which keeps the result graded.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::poset::GradedPoset;

/// Largest poset accepted by [`FinitePoset::canonical_form`].
pub const CANONICAL_FORM_CAP: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    order: BoolMatrix,
    covers: BoolMatrix,
}

impl FinitePoset {
    /// Builds the poset generated by `pairs` (`(i, j)` meaning `i ≤ j`).
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = BoolMatrix::zeros(n, n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::LabelOutOfRange { label: i.max(j) + 1, max: n });
            }
            rel.set(i, j, true);
        }
        Self::from_matrix(labels, &rel)
    }

    /// Builds the poset generated by the relation matrix `rel`.
    pub fn from_matrix(labels: Vec<String>, rel: &BoolMatrix) -> Result<Self> {
        let n = labels.len();
        if rel.shape() != (n, n) {
            return Err(Error::Shape(format!("relation is {}x{}, expected {n}x{n}", rel.rows(), rel.cols())));
        }
        let order = rel.reflexive_transitive_closure()?;
        for i in 0..n {
            for j in order.row_ones(i) {
                if i != j && order.get(j, i) {
                    return Err(Error::NotAnOrder(format!("{} and {} lie on a cycle", labels[i], labels[j])));
                }
            }
        }
        let covers = transitive_reduction(&order);
        Ok(Self { labels, order, covers })
    }

    /// Unlabeled-style constructor with labels `0, 1, …`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_pairs(n, &[]).expect("antichain")
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs).expect("chain")
    }

    /// Vertices in natural labeling order, labeled `"s,t"`.
    pub fn from_graded(p: &GradedPoset) -> Self {
        let labels: Vec<String> = p.vertices().map(|v| format!("{},{}", v.s, v.t)).collect();
        Self::from_matrix(labels, &p.adjacency_matrix()).expect("graded posets are acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Shape(format!("{} labels for {} elements", labels.len(), self.len())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.order.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.covers.get(i, j)
    }

    /// Reflexive order matrix.
    pub fn order_matrix(&self) -> &BoolMatrix {
        &self.order
    }

    /// Hasse adjacency matrix.
    pub fn cover_matrix(&self) -> &BoolMatrix {
        &self.covers
    }

    /// Number of cover edges.
    pub fn edge_count(&self) -> usize {
        self.covers.count_ones()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.lt(i, j))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.lt(i, j))).collect()
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.covers.row_ones(i).map(move |j| (i, j))).collect()
    }

    /// Strict order pairs `(i, j)` with `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.order.row_ones(i).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    }

    /// Labeled equality: same labels in the same positions with the same order.
    pub fn same_as(&self, other: &Self) -> bool {
        self == other
    }

    pub fn dual(&self) -> Self {
        Self { labels: self.labels.clone(), order: self.order.transpose(), covers: self.covers.transpose() }
    }

    /// Restriction to `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut order = BoolMatrix::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                order.set(a, b, self.order.get(i, j));
            }
        }
        let covers = transitive_reduction(&order);
        Self { labels, order, covers }
    }

    /// A form equal for two posets exactly when they are isomorphic.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> =
            self.cover_pairs().iter().map(|&(i, j)| format!("{}<{}", self.labels[i], self.labels[j])).collect();
        write!(f, "FinitePoset[{}]{{{}}}", self.labels.join(" "), covers.join(", "))
    }
}

fn transitive_reduction(order: &BoolMatrix) -> BoolMatrix {
    let n = order.rows();
    let mut strict = order.clone();
    for i in 0..n {
        strict.set(i, i, false);
    }
    let two_step = strict.bool_mul(&strict).expect("square");
    let mut covers = BoolMatrix::zeros(n, n);
    for i in 0..n {
        for j in strict.row_ones(i) {
            if !two_step.get(i, j) {
                covers.set(i, j, true);
            }
        }
    }
    covers
}

/// Disjoint union; `Q`'s elements follow `P`'s.
pub fn cardinal_sum(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    let n = p.len() + q.len();
    let mut order = BoolMatrix::zeros(n, n);
    order.put_block(0, 0, &p.order);
    order.put_block(p.len(), p.len(), &q.order);
    let mut covers = BoolMatrix::zeros(n, n);
    covers.put_block(0, 0, &p.covers);
    covers.put_block(p.len(), p.len(), &q.covers);
    let labels = p.labels.iter().chain(&q.labels).cloned().collect();
    FinitePoset { labels, order, covers }
}

/// Everything in `P` below everything in `Q`. New cover edges join each
/// maximal element of `P` to each minimal element of `Q`.
pub fn ordinal_sum(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    let mut sum = cardinal_sum(p, q);
    let off = p.len();
    for i in 0..p.len() {
        for j in 0..q.len() {
            sum.order.set(i, off + j, true);
        }
    }
    for i in p.maximal() {
        for j in q.minimal() {
            sum.covers.set(i, off + j, true);
        }
    }
    sum
}

/// Componentwise order on `P × Q`, ordered row-major with labels `(p,q)`.
pub fn cartesian_product(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    let (m, n) = (p.len(), q.len());
    let mut labels = Vec::with_capacity(m * n);
    for a in &p.labels {
        for b in &q.labels {
            labels.push(format!("({a},{b})"));
        }
    }
    let mut order = BoolMatrix::zeros(m * n, m * n);
    for i in 0..m * n {
        for j in 0..m * n {
            order.set(i, j, p.leq(i / n, j / n) && q.leq(i % n, j % n));
        }
    }
    let covers = transitive_reduction(&order);
    FinitePoset { labels, order, covers }
}

/// Identification of elements of `P` with elements of `Q` (by index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapSpec {
    pairs: Vec<(usize, usize)>,
}

impl OverlapSpec {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    /// Identifies equal labels.
    pub fn by_labels(p: &FinitePoset, q: &FinitePoset) -> Self {
        let pairs = p.labels.iter().enumerate().filter_map(|(i, l)| q.index_of(l).map(|j| (i, j))).collect();
        Self { pairs }
    }

    /// Identifies the top `shared` levels of `p` with the bottom `shared`
    /// levels of `q`, vertex by vertex, for use on [`FinitePoset::from_graded`].
    pub fn levels(p: &GradedPoset, q: &GradedPoset, shared: usize) -> Result<Self> {
        if shared == 0 {
            return Err(Error::EmptyOverlap);
        }
        if shared > p.num_levels() || shared > q.num_levels() {
            return Err(Error::Conformity(format!("cannot share {shared} levels")));
        }
        let p_start: usize = p.sizes()[..p.num_levels() - shared].iter().sum();
        let p_len: usize = p.sizes()[p.num_levels() - shared..].iter().sum();
        let q_len: usize = q.sizes()[..shared].iter().sum();
        if p_len != q_len {
            return Err(Error::Conformity("shared levels differ in size".into()));
        }
        Ok(Self { pairs: (0..p_len).map(|k| (p_start + k, k)).collect() })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks that the map is an injective, order-isomorphic identification.
    pub fn check(&self, p: &FinitePoset, q: &FinitePoset) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::EmptyOverlap);
        }
        let mut seen_p = BTreeSet::new();
        let mut seen_q = BTreeSet::new();
        for &(i, j) in &self.pairs {
            if i >= p.len() || j >= q.len() {
                return Err(Error::Conformity(format!("pair ({i},{j}) out of range")));
            }
            if !seen_p.insert(i) || !seen_q.insert(j) {
                return Err(Error::Conformity(format!("pair ({i},{j}) repeats an element")));
            }
        }
        for &(i, j) in &self.pairs {
            for &(k, l) in &self.pairs {
                if p.leq(i, k) != q.leq(j, l) {
                    return Err(Error::Conformity(format!(
                        "{} ≤ {} is {} in the first poset but {} in the second",
                        p.labels[i],
                        p.labels[k],
                        p.leq(i, k),
                        q.leq(j, l)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Glues `P` and `Q` along the overlap. The result lists `P`'s elements and
/// then the non-identified elements of `Q`; its order is the transitive
/// closure of both orders.
pub fn natural_join(p: &FinitePoset, q: &FinitePoset, overlap: &OverlapSpec) -> Result<FinitePoset> {
    overlap.check(p, q)?;
    let mut image = vec![usize::MAX; q.len()];
    for &(i, j) in overlap.pairs() {
        image[j] = i;
    }
    let mut labels = p.labels.clone();
    for (j, slot) in image.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = labels.len();
            labels.push(q.labels[j].clone());
        }
    }
    let n = labels.len();
    let mut rel = BoolMatrix::zeros(n, n);
    rel.put_block(0, 0, &p.covers);
    for (a, b) in q.cover_pairs() {
        rel.set(image[a], image[b], true);
    }
    FinitePoset::from_matrix(labels, &rel)
}

/// Glues the top `shared` levels of `p` onto the bottom `shared` levels of
/// `q`. Both must carry identical sizes and biadjacency on those levels.
pub fn natural_join_graded(p: &GradedPoset, q: &GradedPoset, shared: usize) -> Result<GradedPoset> {
    if shared == 0 {
        return Err(Error::EmptyOverlap);
    }
    if shared > p.num_levels() || shared > q.num_levels() {
        return Err(Error::Conformity(format!(
            "cannot share {shared} levels between posets with {} and {} levels",
            p.num_levels(),
            q.num_levels()
        )));
    }
    let cut = p.num_levels() - shared;
    if p.sizes()[cut..] != q.sizes()[..shared] {
        return Err(Error::Conformity(format!(
            "shared level sizes {:?} and {:?} differ",
            &p.sizes()[cut..],
            &q.sizes()[..shared]
        )));
    }
    if p.biadjacencies()[cut..] != q.biadjacencies()[..shared - 1] {
        return Err(Error::Conformity("shared levels carry different covers".into()));
    }
    let sizes = p.sizes().iter().chain(&q.sizes()[shared..]).copied().collect();
    let mats = p.biadjacencies().iter().chain(&q.biadjacencies()[shared - 1..]).cloned().collect();
    Ok(GradedPoset::from_biadjacency(sizes, mats)?.with_base(p.first_level()))
}

/// Complete bipartite digraph from a level of size `lower` to one of size `upper`.
pub fn di_biclique(lower: usize, upper: usize) -> Result<GradedPoset> {
    GradedPoset::from_biadjacency(vec![lower, upper], vec![BoolMatrix::ones(lower, upper)])
}

/// Left fold of single-level natural joins.
pub fn join_chain(parts: &[GradedPoset]) -> Result<GradedPoset> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyOverlap)?;
    rest.iter().try_fold(first.clone(), |acc, next| natural_join_graded(&acc, next, 1))
}

/// Joins Hasse adjacency matrices over `V ∪ W` and `W ∪ U` that agree on
/// the shared `W` block (the last `shared` rows of `a`, the first of `b`).
pub fn natural_join_adjacency(a: &BoolMatrix, b: &BoolMatrix, shared: usize) -> Result<BoolMatrix> {
    if a.rows() != a.cols() || b.rows() != b.cols() {
        return Err(Error::Shape("adjacency matrices must be square".into()));
    }
    if shared == 0 {
        return Err(Error::EmptyOverlap);
    }
    if shared > a.rows() || shared > b.rows() {
        return Err(Error::Conformity(format!("shared block of size {shared} does not fit")));
    }
    let v = a.rows() - shared;
    let u = b.rows() - shared;
    if a.block(v, v, shared, shared) != b.block(0, 0, shared, shared) {
        return Err(Error::Conformity("shared blocks differ".into()));
    }
    if a.block(v, 0, shared, v).count_ones() != 0 || b.block(shared, 0, u, shared).count_ones() != 0 {
        return Err(Error::Conformity("shared block has edges pointing down".into()));
    }
    let mut out = BoolMatrix::zeros(v + shared + u, v + shared + u);
    out.put_block(0, 0, a);
    out.put_block(v, v, b);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    signature: Vec<[usize; 4]>,
    code: Vec<bool>,
}

fn canonical_form(p: &FinitePoset) -> Result<CanonicalForm> {
    let n = p.len();
    if n > CANONICAL_FORM_CAP {
        return Err(Error::CapExceeded { size: n, cap: CANONICAL_FORM_CAP });
    }
    let key = |i: usize| {
        [
            p.order.col_count(i),
            p.order.row_count(i),
            p.covers.col_count(i),
            p.covers.row_count(i),
        ]
    };
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&i| key(i));
    let signature: Vec<[usize; 4]> = slots.iter().map(|&i| key(i)).collect();
    // Elements with identical strict up- and down-sets are interchangeable;
    // only the lowest-indexed unplaced twin may be placed next.
    let twin_of: Vec<Option<usize>> = (0..n)
        .map(|i| {
            (0..i).rev().find(|&j| {
                (0..n).all(|k| k == i || k == j || (p.order.get(i, k) == p.order.get(j, k) && p.order.get(k, i) == p.order.get(k, j)))
                    && !p.comparable(i, j)
            })
        })
        .collect();

    let mut search = CanonicalSearch {
        poset: p,
        signature: &signature,
        twin_of: &twin_of,
        placed: vec![false; n],
        perm: Vec::with_capacity(n),
        code: Vec::with_capacity(n * n),
        best: None,
    };
    search.run();
    let code = search.best.unwrap_or_default();
    Ok(CanonicalForm { signature, code })
}

struct CanonicalSearch<'a> {
    poset: &'a FinitePoset,
    signature: &'a [[usize; 4]],
    twin_of: &'a [Option<usize>],
    placed: Vec<bool>,
    perm: Vec<usize>,
    code: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonicalSearch<'_> {
    fn key(&self, i: usize) -> [usize; 4] {
        let p = self.poset;
        [p.order.col_count(i), p.order.row_count(i), p.covers.col_count(i), p.covers.row_count(i)]
    }

    fn run(&mut self) {
        let pos = self.perm.len();
        if pos == self.signature.len() {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        for v in 0..self.signature.len() {
            if self.placed[v] || self.key(v) != self.signature[pos] {
                continue;
            }
            if self.twin_of[v].is_some_and(|t| !self.placed[t]) {
                continue;
            }
            let mark = self.code.len();
            for q in 0..pos {
                let u = self.perm[q];
                self.code.push(self.poset.order.get(u, v));
                self.code.push(self.poset.order.get(v, u));
            }
            let worse = self.best.as_ref().is_some_and(|b| self.code.as_slice() > &b[..self.code.len()]);
            if !worse {
                self.placed[v] = true;
                self.perm.push(v);
                self.run();
                self.perm.pop();
                self.placed[v] = false;
            }
            self.code.truncate(mark);
        }
    }
}

/// One representative of each isomorphism class of posets on `n` elements.
pub fn unlabeled_posets(n: usize) -> Result<Vec<FinitePoset>> {
    if n > 6 {
        return Err(Error::CapExceeded { size: n, cap: 6 });
    }
    // Every poset has a linear extension, so it suffices to scan transitive
    // relations contained in the strict upper triangle.
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let pairs: Vec<_> = slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
        let transitive = pairs.iter().all(|&(i, j)| {
            pairs.iter().filter(|&&(a, _)| a == j).all(|&(_, k)| pairs.contains(&(i, k)))
        });
        if !transitive {
            continue;
        }
        let p = FinitePoset::from_pairs(n, &pairs)?;
        if seen.insert(p.canonical_form()?) {
            out.push(p);
        }
    }
    Ok(out)
}

//! Discrete hyper-boxes `[k_F] × … × [n_F]`, their correspondence with
//! spanning chains of cobweb layers, block partitions of chain sets, and an
//! exact-cover search for tilings by boxes whose edge lengths are
//! `{1_F, …, m_F}`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsequence::FSequence;
use crate::poset::{GradedPoset, GridVertex};
use crate::relations::{compose_nary, NaryRelation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperBox {
    first: usize,
    last: usize,
    extents: Vec<usize>,
}

impl HyperBox {
    /// The box `[k_F] × [(k+1)_F] × … × [n_F]`.
    pub fn new(f: &FSequence, k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::LevelRange { first: k, last: n });
        }
        Ok(Self { first: k, last: n, extents: f.sizes(k, n)? })
    }

    pub fn first_level(&self) -> usize {
        self.first
    }

    pub fn last_level(&self) -> usize {
        self.last
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn dimension(&self) -> usize {
        self.extents.len()
    }

    pub fn volume(&self) -> BigUint {
        self.extents.iter().map(|&e| BigUint::from(e)).product()
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        point.len() == self.dimension() && point.iter().zip(&self.extents).all(|(&p, &e)| p >= 1 && p <= e)
    }

    /// Lattice points in lexicographic order, coordinates starting at 1.
    pub fn points(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p = vec![1; self.dimension()];
        if self.extents.contains(&0) {
            return out;
        }
        loop {
            out.push(p.clone());
            let mut axis = self.dimension();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if p[axis] < self.extents[axis] {
                    p[axis] += 1;
                    break;
                }
                p[axis] = 1;
            }
        }
    }

    /// `⟨⟨s_k,k⟩, …, ⟨s_n,n⟩⟩ ↦ (s_k, …, s_n)`.
    pub fn chain_to_point(&self, chain: &[GridVertex]) -> Result<Vec<usize>> {
        if chain.len() != self.dimension() {
            return Err(Error::LevelRange { first: self.first, last: self.last });
        }
        for (i, v) in chain.iter().enumerate() {
            if v.t != self.first + i || v.s == 0 || v.s > self.extents[i] {
                return Err(Error::InvalidVertex { s: v.s, t: v.t });
            }
        }
        Ok(chain.iter().map(|v| v.s).collect())
    }

    pub fn point_to_chain(&self, point: &[usize]) -> Result<Vec<GridVertex>> {
        if !self.contains(point) {
            return Err(Error::Shape(format!("point {point:?} lies outside the box")));
        }
        Ok(point.iter().enumerate().map(|(i, &s)| GridVertex::new(s, self.first + i)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub chains: usize,
    pub points: usize,
    pub injective: bool,
    pub onto: bool,
}

impl BijectionReport {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.onto && self.chains == self.points
    }
}

/// Maps every spanning chain of the cobweb layer `k..=n` to its box point and
/// checks the map is one-to-one and onto.
pub fn chain_box_bijection(f: &FSequence, k: usize, n: usize) -> Result<BijectionReport> {
    let bx = HyperBox::new(f, k, n)?;
    let layer = GradedPoset::cobweb_levels(f, k, n)?;
    let mut images = BTreeSet::new();
    let mut chains = 0;
    let mut injective = true;
    for chain in layer.max_chains() {
        chains += 1;
        injective &= images.insert(bx.chain_to_point(&chain)?);
    }
    let points = bx.points();
    let onto = points.iter().all(|p| images.contains(p));
    Ok(BijectionReport { chains, points: points.len(), injective, onto })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCheck {
    pub blocks: usize,
    pub block_size: usize,
    pub sizes_ok: bool,
    pub disjoint: bool,
    pub covers_all: bool,
}

impl PartitionCheck {
    pub fn is_valid(&self) -> bool {
        self.sizes_ok && self.disjoint && self.covers_all
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartitionReport {
    pub n: usize,
    pub k: usize,
    /// `|C_max⟨Φ_{k+1} → Φ_n⟩|`.
    pub chain_count: BigUint,
    pub fnomial: BigRational,
    /// `m_F!` with `m = n − k`.
    pub block_size: BigUint,
    pub identity_holds: bool,
    pub integral: bool,
    /// `None` when the chain set exceeds the materialization cap or the
    /// block count is not integral.
    pub partition: Option<PartitionCheck>,
}

/// Largest chain set [`verify_block_partition`] will materialize.
pub const PARTITION_CAP: usize = 2_000_000;

/// Checks `|C_max⟨Φ_{k+1} → Φ_n⟩| = fnomial(n, k) · (n−k)_F!` and splits the
/// lexicographic chain list into consecutive blocks of size `(n−k)_F!`.
pub fn verify_block_partition(f: &FSequence, n: usize, k: usize) -> Result<BlockPartitionReport> {
    if k > n {
        return Err(Error::DegreeExceedsIndex { n, k });
    }
    let m = n - k;
    let chain_count = f.falling_factorial(n, m)?;
    let fnomial = f.fnomial(n, k)?;
    let block_size = f.f_factorial(m)?;
    let identity_holds =
        BigRational::from_integer(chain_count.clone().into()) == &fnomial * BigRational::from_integer(block_size.clone().into());
    let integral = fnomial.is_integer();

    let materialize = integral && chain_count.to_usize().is_some_and(|c| c <= PARTITION_CAP);
    let partition = if !materialize {
        None
    } else if m == 0 {
        Some(PartitionCheck { blocks: 1, block_size: 1, sizes_ok: true, disjoint: true, covers_all: true })
    } else {
        let layer = GradedPoset::cobweb_levels(f, k + 1, n)?;
        let size = block_size.to_usize().expect("block size divides a materialized count");
        let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
        layer.for_each_max_chain(|path| {
            if blocks.last().is_none_or(|b| b.len() == size) {
                blocks.push(Vec::with_capacity(size));
            }
            blocks.last_mut().expect("pushed").push(path.to_vec());
        });
        let sizes_ok = blocks.iter().all(|b| b.len() == size);
        let mut seen = BTreeSet::new();
        let disjoint = blocks.iter().flatten().all(|c| seen.insert(c.clone()));
        let covers_all = BigUint::from(seen.len()) == chain_count;
        Some(PartitionCheck { blocks: blocks.len(), block_size: size, sizes_ok, disjoint, covers_all })
    };
    Ok(BlockPartitionReport { n, k, chain_count, fnomial, block_size, identity_holds, integral, partition })
}

/// Axis-aligned sub-box, one closed 1-based interval per axis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubBox {
    pub intervals: Vec<(usize, usize)>,
}

impl SubBox {
    pub fn lengths(&self) -> Vec<usize> {
        self.intervals.iter().map(|&(a, b)| b + 1 - a).collect()
    }

    pub fn volume(&self) -> usize {
        self.lengths().iter().product()
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        point.len() == self.intervals.len() && point.iter().zip(&self.intervals).all(|(&p, &(a, b))| a <= p && p <= b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub target: HyperBox,
    pub tiles: Vec<SubBox>,
}

impl Tiling {
    pub fn to_document(&self) -> TilingDocument {
        TilingDocument {
            target: BoxDocument {
                k: self.target.first,
                n: self.target.last,
                extents: self.target.extents.clone(),
            },
            tiles: self
                .tiles
                .iter()
                .map(|t| TileDocument { intervals: t.intervals.iter().map(|&(a, b)| [a, b]).collect() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("serializable")
    }

    /// Character grid of a two-axis tiling: rows follow the first axis,
    /// columns the second, each tile drawn with its own symbol.
    pub fn render_grid(&self) -> Option<String> {
        if self.target.dimension() != 2 {
            return None;
        }
        const SYMBOLS: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
        let (rows, cols) = (self.target.extents[0], self.target.extents[1]);
        let mut out = String::new();
        for r in 1..=rows {
            for c in 1..=cols {
                let symbol = self
                    .tiles
                    .iter()
                    .position(|t| t.contains(&[r, c]))
                    .map_or('.', |i| SYMBOLS[i % SYMBOLS.len()] as char);
                out.push(symbol);
            }
            out.push('\n');
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDocument {
    pub k: usize,
    pub n: usize,
    pub extents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileDocument {
    pub intervals: Vec<[usize; 2]>,
}

/// JSON tiling document `{"box": {k, n, extents}, "tiles": [{"intervals": [[a,b]…]}…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingDocument {
    #[serde(rename = "box")]
    pub target: BoxDocument,
    pub tiles: Vec<TileDocument>,
}

/// A tiling problem: the layer box with extents `((n−m+1)_F, …, n_F)` and
/// tiles whose edge lengths form the multiset `{1_F, …, m_F}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingProblem {
    pub target: HyperBox,
    /// Tile edge lengths, sorted ascending.
    pub lengths: Vec<usize>,
    /// Number of tiles in any tiling, `fnomial(n, n−m)`.
    pub tile_count: usize,
}

impl TilingProblem {
    pub fn new(f: &FSequence, m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::LevelRange { first: m, last: n });
        }
        let target = HyperBox::new(f, n - m + 1, n)?;
        let mut lengths = f.sizes(1, m)?;
        lengths.sort_unstable();
        let tile_volume: usize = lengths.iter().product();
        let volume = target.volume().to_usize().ok_or(Error::LevelTooLarge(target.volume()))?;
        if !volume.is_multiple_of(tile_volume) {
            return Err(Error::NonIntegralVolume);
        }
        Ok(Self { target, lengths, tile_count: volume / tile_volume })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingOutcome {
    Found(Tiling),
    /// The whole search space was explored without success.
    Exhausted { nodes: u64 },
    /// The node budget ran out first; nothing is known.
    LimitReached { nodes: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TileCount {
    pub count: u64,
    /// True when every tiling was counted (the cap was not hit).
    pub exhausted: bool,
    pub nodes: u64,
}

/// First tiling in canonical search order, searching exhaustively.
pub fn tile(f: &FSequence, m: usize, n: usize) -> Result<TilingOutcome> {
    tile_with_limit(f, m, n, None)
}

pub fn tile_with_limit(f: &FSequence, m: usize, n: usize, node_limit: Option<u64>) -> Result<TilingOutcome> {
    let problem = TilingProblem::new(f, m, n)?;
    let mut solver = Solver::new(&problem, node_limit, 1);
    solver.search(0);
    Ok(match solver.first {
        Some(tiles) => TilingOutcome::Found(Tiling { target: problem.target, tiles }),
        None if solver.aborted => TilingOutcome::LimitReached { nodes: solver.nodes },
        None => TilingOutcome::Exhausted { nodes: solver.nodes },
    })
}

/// Counts tilings, stopping once `cap` have been found.
pub fn tile_count(f: &FSequence, m: usize, n: usize, cap: u64) -> Result<TileCount> {
    let problem = TilingProblem::new(f, m, n)?;
    let mut solver = Solver::new(&problem, None, cap);
    solver.search(0);
    Ok(TileCount { count: solver.count, exhausted: !solver.aborted, nodes: solver.nodes })
}

struct Solver {
    extents: Vec<usize>,
    strides: Vec<usize>,
    cells: usize,
    occupied: Vec<u64>,
    shapes: Vec<Vec<usize>>,
    stack: Vec<SubBox>,
    nodes: u64,
    node_limit: Option<u64>,
    cap: u64,
    count: u64,
    first: Option<Vec<SubBox>>,
    aborted: bool,
}

impl Solver {
    fn new(problem: &TilingProblem, node_limit: Option<u64>, cap: u64) -> Self {
        let extents = problem.target.extents.clone();
        let mut strides = vec![1; extents.len()];
        for i in (0..extents.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * extents[i + 1];
        }
        let cells: usize = extents.iter().product();
        Self {
            shapes: distinct_permutations(&problem.lengths),
            extents,
            strides,
            cells,
            occupied: vec![0; cells.div_ceil(64)],
            stack: Vec::new(),
            nodes: 0,
            node_limit,
            cap,
            count: 0,
            first: None,
            aborted: false,
        }
    }

    fn is_set(&self, i: usize) -> bool {
        self.occupied[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.occupied[i / 64] ^= 1 << (i % 64);
    }

    fn coords(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = index / s;
                index %= s;
                c
            })
            .collect()
    }

    /// Linear indices of the cells of a box with the given 0-based corner.
    fn cells_of(&self, corner: &[usize], shape: &[usize]) -> Vec<usize> {
        let base: usize = corner.iter().zip(&self.strides).map(|(c, s)| c * s).sum();
        let mut out = vec![base];
        for (axis, &len) in shape.iter().enumerate() {
            let step = self.strides[axis];
            let current = out.len();
            for k in 1..len {
                for j in 0..current {
                    out.push(out[j] + k * step);
                }
            }
        }
        out
    }

    fn search(&mut self, from: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
            return;
        }
        let Some(cell) = (from..self.cells).find(|&i| !self.is_set(i)) else {
            self.count += 1;
            if self.first.is_none() {
                self.first = Some(self.stack.clone());
            }
            if self.count >= self.cap {
                self.aborted = true;
            }
            return;
        };
        let corner = self.coords(cell);
        for s in 0..self.shapes.len() {
            let shape = &self.shapes[s];
            if corner.iter().zip(shape).zip(&self.extents).any(|((c, l), e)| c + l > *e) {
                continue;
            }
            let cells = self.cells_of(&corner, shape);
            if cells.iter().any(|&i| self.is_set(i)) {
                continue;
            }
            let tile = SubBox { intervals: corner.iter().zip(shape).map(|(&c, &l)| (c + 1, c + l)).collect() };
            for &i in &cells {
                self.toggle(i);
            }
            self.stack.push(tile);
            self.search(cell + 1);
            self.stack.pop();
            for &i in &cells {
                self.toggle(i);
            }
            if self.aborted {
                return;
            }
        }
    }
}

/// Distinct orderings of `values` in lexicographic order.
fn distinct_permutations(values: &[usize]) -> Vec<Vec<usize>> {
    let mut current = values.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Checks a tiling against its problem using point sets rather than the
/// solver's bitset: every tile legal and inside the box, no overlaps, and
/// every point covered.
pub fn verify_tiling(tiling: &Tiling, f: &FSequence, m: usize) -> std::result::Result<(), String> {
    let mut expected: Vec<usize> = f.sizes(1, m).map_err(|e| e.to_string())?;
    expected.sort_unstable();
    let bx = &tiling.target;
    let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, t) in tiling.tiles.iter().enumerate() {
        if t.intervals.len() != bx.dimension() {
            return Err(format!("tile {i} has {} axes", t.intervals.len()));
        }
        let mut lengths = t.lengths();
        lengths.sort_unstable();
        if lengths != expected {
            return Err(format!("tile {i} has edge lengths {lengths:?}, expected {expected:?}"));
        }
        if t.intervals.iter().zip(bx.extents()).any(|(&(a, b), &e)| a < 1 || a > b || b > e) {
            return Err(format!("tile {i} leaves the box"));
        }
        for p in bx.points().into_iter().filter(|p| t.contains(p)) {
            if !covered.insert(p.clone()) {
                return Err(format!("point {p:?} is covered twice"));
            }
        }
    }
    let total = bx.points().len();
    if covered.len() != total {
        return Err(format!("{} of {} points covered", covered.len(), total));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductJoinReport {
    pub tuples: usize,
    pub expected: BigUint,
    pub equal: bool,
}

/// Joins the full relations `Φ_k × Φ_{k+1}` and `Φ_{k+1} × Φ_{k+2}` and
/// compares with the full product `Φ_k × Φ_{k+1} × Φ_{k+2}`.
pub fn product_join_check(f: &FSequence, k: usize) -> Result<ProductJoinReport> {
    let sizes = f.sizes(k, k + 2)?;
    let domains: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| (1..=n).map(|s| format!("{},{}", s, k + i)).collect())
        .collect();
    let full = |dims: &[usize]| -> Result<NaryRelation> {
        let bx = HyperBox { first: 1, last: dims.len(), extents: dims.iter().map(|&d| sizes[d]).collect() };
        let doms = dims.iter().map(|&d| domains[d].clone()).collect();
        NaryRelation::new(doms, bx.points().into_iter().map(|p| p.into_iter().map(|x| x - 1).collect()))
    };
    let joined = compose_nary(&[full(&[0, 1])?, full(&[1, 2])?])?;
    let product = full(&[0, 1, 2])?;
    let expected: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
    Ok(ProductJoinReport { tuples: joined.len(), equal: joined == product && BigUint::from(joined.len()) == expected, expected })
}

/// `Π_{t=k}^{n} t_F` as a convenience for reports.
pub fn layer_chain_count(f: &FSequence, k: usize, n: usize) -> Result<BigUint> {
    (k..=n).try_fold(BigUint::one(), |acc, t| Ok(acc * f.value(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes() {
        let b = HyperBox::new(&FSequence::natural(), 2, 4).unwrap();
        assert_eq!((b.extents(), b.volume()), (&[2, 3, 4][..], BigUint::from(24u32)));
        let b = HyperBox::new(&FSequence::fibonacci(), 2, 3).unwrap();
        assert_eq!((b.extents(), b.volume()), (&[1, 2][..], BigUint::from(2u32)));
        let b = HyperBox::new(&FSequence::gaussian(2), 3, 3).unwrap();
        assert_eq!((b.dimension(), b.volume()), (1, BigUint::from(7u32)));
        assert!(HyperBox::new(&FSequence::natural(), 3, 2).is_err());
    }

    #[test]
    fn bijections() {
        let r = chain_box_bijection(&FSequence::natural(), 3, 4).unwrap();
        assert!(r.is_bijection());
        assert_eq!(r.chains, 12);
        let r = chain_box_bijection(&FSequence::natural(), 2, 3).unwrap();
        assert_eq!((r.chains, r.points), (6, 6));
        let r = chain_box_bijection(&FSequence::fibonacci(), 2, 4).unwrap();
        assert!(r.is_bijection() && r.chains == 6);
        let r = chain_box_bijection(&FSequence::natural(), 4, 4).unwrap();
        assert_eq!(r.chains, 4);
    }

    #[test]
    fn block_partitions() {
        let r = verify_block_partition(&FSequence::natural(), 3, 1).unwrap();
        assert_eq!(r.chain_count, BigUint::from(6u32));
        let p = r.partition.unwrap();
        assert_eq!((p.blocks, p.block_size), (3, 2));
        assert!(p.is_valid() && r.identity_holds);

        let r = verify_block_partition(&FSequence::fibonacci(), 5, 2).unwrap();
        assert_eq!(r.chain_count, BigUint::from(30u32));
        assert_eq!(r.partition.unwrap().blocks, 15);

        let r = verify_block_partition(&FSequence::gaussian(3), 4, 4).unwrap();
        assert_eq!(r.partition.unwrap().blocks, 1);
        assert_eq!(r.block_size, BigUint::one());
    }

    #[test]
    fn non_integral_partition_is_reported() {
        let f = FSequence::explicit("odd", [2u32, 3, 5].map(BigUint::from).to_vec()).unwrap();
        let r = verify_block_partition(&f, 2, 1).unwrap();
        assert!(!r.integral && r.identity_holds && r.partition.is_none());
    }

    #[test]
    fn dominoes() {
        let f = FSequence::natural();
        let TilingOutcome::Found(t) = tile(&f, 2, 3).unwrap() else { panic!("2x3 tiles") };
        assert_eq!(t.tiles.len(), 3);
        verify_tiling(&t, &f, 2).unwrap();
        assert_eq!(t.render_grid().unwrap(), "AAB\nCCB\n");
        let count = tile_count(&f, 2, 3, 100).unwrap();
        assert_eq!(count, TileCount { count: 3, exhausted: true, nodes: count.nodes });
    }

    #[test]
    fn fibonacci_box() {
        let f = FSequence::fibonacci();
        let TilingOutcome::Found(t) = tile(&f, 3, 4).unwrap() else { panic!("1x2x3 tiles") };
        assert_eq!(t.target.extents(), &[1, 2, 3]);
        assert_eq!(t.tiles.len(), 3);
        verify_tiling(&t, &f, 3).unwrap();
    }

    #[test]
    fn whole_box_is_one_tile() {
        let f = FSequence::natural();
        let TilingOutcome::Found(t) = tile(&f, 4, 4).unwrap() else { panic!() };
        assert_eq!(t.tiles, vec![SubBox { intervals: vec![(1, 1), (1, 2), (1, 3), (1, 4)] }]);
    }

    #[test]
    fn verifier_rejects_bad_tilings() {
        let f = FSequence::natural();
        let target = HyperBox::new(&f, 2, 3).unwrap();
        let overlap = Tiling {
            target: target.clone(),
            tiles: vec![
                SubBox { intervals: vec![(1, 1), (1, 2)] },
                SubBox { intervals: vec![(1, 2), (2, 2)] },
                SubBox { intervals: vec![(2, 2), (2, 3)] },
            ],
        };
        assert!(verify_tiling(&overlap, &f, 2).unwrap_err().contains("twice"));
        let wrong_shape = Tiling { target, tiles: vec![SubBox { intervals: vec![(1, 2), (1, 3)] }] };
        assert!(verify_tiling(&wrong_shape, &f, 2).unwrap_err().contains("edge lengths"));
    }

    #[test]
    fn non_integral_volume() {
        let f = FSequence::explicit("odd", [2u32, 3, 5].map(BigUint::from).to_vec()).unwrap();
        assert_eq!(tile(&f, 2, 3), Err(Error::NonIntegralVolume));
    }

    #[test]
    fn node_limit() {
        let out = tile_with_limit(&FSequence::natural(), 3, 5, Some(2)).unwrap();
        assert!(matches!(out, TilingOutcome::LimitReached { .. }));
    }

    #[test]
    fn tiling_json() {
        let TilingOutcome::Found(t) = tile(&FSequence::natural(), 2, 2).unwrap() else { panic!() };
        assert_eq!(t.to_json(), r#"{"box":{"k":1,"n":2,"extents":[1,2]},"tiles":[{"intervals":[[1,1],[1,2]]}]}"#);
    }

    #[test]
    fn product_joins() {
        let r = product_join_check(&FSequence::natural(), 2).unwrap();
        assert_eq!((r.tuples, r.equal), (24, true));
        let r = product_join_check(&FSequence::fibonacci(), 3).unwrap();
        assert_eq!((r.tuples, r.equal), (30, true));
        let r = product_join_check(&FSequence::constant(1).unwrap(), 4).unwrap();
        assert_eq!((r.tuples, r.equal), (1, true));
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 1, 2]), vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
    }
}

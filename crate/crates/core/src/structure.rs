//! N-freeness, two-element realizers of cobwebs, linear extensions, jump
//! numbers and greedy extensions.
//!
//! A jump of a linear extension is a consecutive pair `x_i, x_{i+1}` with
//! `x_i ≮ x_{i+1}`. For consecutive elements this is the same as `x_i` not
//! being covered by `x_{i+1}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fsequence::FSequence;
use crate::join::FinitePoset;
use crate::poset::GradedPoset;

/// Default size limit for exhaustive extension enumeration.
pub const DEFAULT_EXTENSION_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearExtension {
    order: Vec<usize>,
}

impl LinearExtension {
    /// Checks that `order` lists every element of `p` once, respecting `≤`.
    pub fn new(p: &FinitePoset, order: Vec<usize>) -> Result<Self> {
        if order.len() != p.len() {
            return Err(Error::NotLinearExtension(format!("{} entries for {} elements", order.len(), p.len())));
        }
        let mut position = vec![usize::MAX; p.len()];
        for (i, &x) in order.iter().enumerate() {
            if x >= p.len() || position[x] != usize::MAX {
                return Err(Error::NotLinearExtension(format!("element {x} is missing or repeated")));
            }
            position[x] = i;
        }
        if let Some((a, b)) = p.strict_pairs().into_iter().find(|&(a, b)| position[a] > position[b]) {
            return Err(Error::NotLinearExtension(format!(
                "{} is listed after {} but lies below it",
                p.labels()[a],
                p.labels()[b]
            )));
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn reversed(&self) -> Vec<usize> {
        self.order.iter().rev().copied().collect()
    }

    pub fn labels(&self, p: &FinitePoset) -> Vec<String> {
        self.order.iter().map(|&i| p.labels()[i].clone()).collect()
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &x) in self.order.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }
}

/// The poset `N`: `a < c`, `b < c`, `b < d`.
pub fn n_poset() -> FinitePoset {
    let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    FinitePoset::from_relation(labels, &[(0, 2), (1, 2), (1, 3)]).expect("N is a poset")
}

/// Elements `a, b, c, d` with `a ⋖ c`, `b ⋖ c`, `b ⋖ d` and `a ≮ d`: a
/// cover-preserving copy of `N`. `None` when `p` is N-free.
pub fn n_witness(p: &FinitePoset) -> Option<[usize; 4]> {
    let n = p.len();
    for c in 0..n {
        let below: Vec<usize> = (0..n).filter(|&x| p.covers(x, c)).collect();
        for &b in &below {
            for d in (0..n).filter(|&d| d != c && p.covers(b, d)) {
                if let Some(&a) = below.iter().find(|&&a| a != b && !p.lt(a, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

pub fn is_n_free(p: &FinitePoset) -> bool {
    n_witness(p).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
    /// True when every level is a singleton, so both extensions coincide.
    pub degenerate: bool,
}

/// Two linear extensions of the cobweb on levels `1..=n` (in natural
/// labeling): level by level, left to right and right to left.
pub fn cobweb_realizer(f: &FSequence, n: usize) -> Result<(FinitePoset, Realizer)> {
    let graded = GradedPoset::cobweb(f, n)?;
    let p = FinitePoset::from_graded(&graded);
    let labels = graded.natural_labeling();
    let offsets = labels.offsets();
    let forward: Vec<usize> = (0..p.len()).collect();
    let mut backward = Vec::with_capacity(p.len());
    for w in offsets.windows(2) {
        backward.extend((w[0]..w[1]).rev());
    }
    let degenerate = graded.sizes().iter().all(|&s| s == 1);
    let extensions = vec![LinearExtension::new(&p, forward)?, LinearExtension::new(&p, backward)?];
    Ok((p, Realizer { extensions, degenerate }))
}

/// Whether `x < y ⇔ x precedes y in every extension`, for all `x ≠ y`.
pub fn verify_realizer(p: &FinitePoset, extensions: &[Vec<usize>]) -> Result<bool> {
    let checked = extensions.iter().map(|e| LinearExtension::new(p, e.clone())).collect::<Result<Vec<_>>>()?;
    let positions: Vec<Vec<usize>> = checked.iter().map(LinearExtension::positions).collect();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if x != y && p.lt(x, y) != positions.iter().all(|pos| pos[x] < pos[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_cap(p: &FinitePoset, cap: usize) -> Result<()> {
    if p.len() > cap {
        Err(Error::CapExceeded { size: p.len(), cap })
    } else {
        Ok(())
    }
}

/// Elements not yet placed all of whose predecessors are placed.
fn available(p: &FinitePoset, placed: &[bool]) -> Vec<usize> {
    (0..p.len()).filter(|&x| !placed[x] && (0..p.len()).all(|y| placed[y] || !p.lt(y, x))).collect()
}

/// Every linear extension, in lexicographic order.
pub fn linear_extensions(p: &FinitePoset, cap: usize) -> Result<Vec<LinearExtension>> {
    check_cap(p, cap)?;
    let mut out = Vec::new();
    extend_all(p, &mut vec![false; p.len()], &mut Vec::new(), &mut out, false);
    Ok(out)
}

/// Every outcome of the greedy procedure: start from a minimal element; then
/// take a minimal element of the rest lying above the last one if there is
/// any, otherwise any minimal element of the rest.
pub fn greedy_extensions(p: &FinitePoset, cap: usize) -> Result<Vec<LinearExtension>> {
    check_cap(p, cap)?;
    let mut out = Vec::new();
    extend_all(p, &mut vec![false; p.len()], &mut Vec::new(), &mut out, true);
    Ok(out)
}

fn extend_all(p: &FinitePoset, placed: &mut [bool], prefix: &mut Vec<usize>, out: &mut Vec<LinearExtension>, greedy: bool) {
    if prefix.len() == p.len() {
        out.push(LinearExtension { order: prefix.clone() });
        return;
    }
    let mut choices = available(p, placed);
    if greedy {
        if let Some(&last) = prefix.last() {
            let above: Vec<usize> = choices.iter().copied().filter(|&x| p.lt(last, x)).collect();
            if !above.is_empty() {
                choices = above;
            }
        }
    }
    for x in choices {
        placed[x] = true;
        prefix.push(x);
        extend_all(p, placed, prefix, out, greedy);
        prefix.pop();
        placed[x] = false;
    }
}

/// Number of jumps `s(L, P)`.
pub fn jump_count(p: &FinitePoset, extension: &LinearExtension) -> usize {
    extension.order.windows(2).filter(|w| !p.lt(w[0], w[1])).count()
}

/// The jump number `s(P)`, minimized over all linear extensions.
pub fn jump_number(p: &FinitePoset, cap: usize) -> Result<usize> {
    Ok(linear_extensions(p, cap)?.iter().map(|e| jump_count(p, e)).min().unwrap_or(0))
}

/// Linear extensions attaining the jump number.
pub fn optimal_extensions(p: &FinitePoset, cap: usize) -> Result<Vec<LinearExtension>> {
    let all = linear_extensions(p, cap)?;
    let best = all.iter().map(|e| jump_count(p, e)).min().unwrap_or(0);
    Ok(all.into_iter().filter(|e| jump_count(p, e) == best).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub size: usize,
    pub n_free: bool,
    pub n_witness: Option<[usize; 4]>,
    pub extensions: usize,
    pub jump_number: usize,
    pub greedy: usize,
    pub optimal: usize,
    /// Every greedy extension is optimal.
    pub is_greedy: bool,
    /// Greedy and optimal extensions coincide.
    pub is_reversible: bool,
}

pub fn structure_report(p: &FinitePoset, cap: usize) -> Result<StructureReport> {
    let all = linear_extensions(p, cap)?;
    let jumps: Vec<usize> = all.iter().map(|e| jump_count(p, e)).collect();
    let best = jumps.iter().copied().min().unwrap_or(0);
    let optimal: BTreeSet<&LinearExtension> = all.iter().zip(&jumps).filter(|(_, &j)| j == best).map(|(e, _)| e).collect();
    let greedy = greedy_extensions(p, cap)?;
    let greedy_set: BTreeSet<&LinearExtension> = greedy.iter().collect();
    let n_witness = n_witness(p);
    Ok(StructureReport {
        size: p.len(),
        n_free: n_witness.is_none(),
        n_witness,
        extensions: all.len(),
        jump_number: best,
        greedy: greedy.len(),
        optimal: optimal.len(),
        is_greedy: greedy_set.is_subset(&optimal),
        is_reversible: greedy_set == optimal,
    })
}

pub fn is_greedy_poset(p: &FinitePoset, cap: usize) -> Result<bool> {
    Ok(structure_report(p, cap)?.is_greedy)
}

pub fn is_reversible(p: &FinitePoset, cap: usize) -> Result<bool> {
    Ok(structure_report(p, cap)?.is_reversible)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cobweb(f: &FSequence, n: usize) -> FinitePoset {
        FinitePoset::from_graded(&GradedPoset::cobweb(f, n).unwrap())
    }

    #[test]
    fn n_freeness() {
        for f in FSequence::reference_set() {
            assert!(is_n_free(&cobweb(&f, 4)), "{f}");
        }
        let n = n_poset();
        let w = n_witness(&n).unwrap();
        let mut sorted = w;
        sorted.sort();
        assert_eq!(sorted, [0, 1, 2, 3]);
        assert_eq!(w, [0, 1, 2, 3]);
        assert!(is_n_free(&FinitePoset::chain(5)));
        // a fourth relation a < d closes the N into a cover-preserving "bowtie"
        let closed = FinitePoset::from_pairs(4, &[(0, 2), (1, 2), (1, 3), (0, 3)]).unwrap();
        assert!(is_n_free(&closed));
    }

    #[test]
    fn realizers() {
        let (p, r) = cobweb_realizer(&FSequence::natural(), 2).unwrap();
        assert_eq!(r.extensions[0].order(), &[0, 1, 2]);
        assert_eq!(r.extensions[1].order(), &[0, 2, 1]);
        assert!(!r.degenerate);
        let orders: Vec<Vec<usize>> = r.extensions.iter().map(|e| e.order().to_vec()).collect();
        assert!(verify_realizer(&p, &orders).unwrap());

        let (p, r) = cobweb_realizer(&FSequence::constant(1).unwrap(), 4).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.extensions[0], r.extensions[1]);
        assert!(verify_realizer(&p, &[r.extensions[0].order().to_vec()]).unwrap());

        let (p, r) = cobweb_realizer(&FSequence::fibonacci(), 4).unwrap();
        assert_eq!(p.len(), 7);
        let orders: Vec<Vec<usize>> = r.extensions.iter().map(|e| e.order().to_vec()).collect();
        assert!(verify_realizer(&p, &orders).unwrap());
    }

    #[test]
    fn realizer_rejections() {
        let anti = FinitePoset::antichain(2);
        assert!(!verify_realizer(&anti, &[vec![0, 1], vec![0, 1]]).unwrap());
        assert!(verify_realizer(&anti, &[vec![0, 1], vec![1, 0]]).unwrap());
        let c = FinitePoset::chain(2);
        assert!(matches!(verify_realizer(&c, &[vec![1, 0]]), Err(Error::NotLinearExtension(_))));
    }

    #[test]
    fn all_extensions_realize() {
        for n in 1..=5 {
            for p in crate::join::unlabeled_posets(n).unwrap() {
                let all: Vec<Vec<usize>> =
                    linear_extensions(&p, 9).unwrap().iter().map(|e| e.order().to_vec()).collect();
                assert!(verify_realizer(&p, &all).unwrap(), "{p:?}");
            }
        }
    }

    #[test]
    fn jump_numbers() {
        assert_eq!(jump_number(&FinitePoset::chain(6), 9).unwrap(), 0);
        assert_eq!(jump_number(&FinitePoset::antichain(5), 9).unwrap(), 4);
        let fan = cobweb(&FSequence::natural(), 2);
        assert_eq!(linear_extensions(&fan, 9).unwrap().len(), 2);
        assert_eq!(jump_number(&fan, 9).unwrap(), 1);
        assert!(matches!(jump_number(&FinitePoset::antichain(10), 9), Err(Error::CapExceeded { size: 10, cap: 9 })));
    }

    #[test]
    fn greedy_and_reversible() {
        let chain = FinitePoset::chain(4);
        assert!(is_greedy_poset(&chain, 9).unwrap());
        assert!(is_reversible(&chain, 9).unwrap());
        let fan = cobweb(&FSequence::natural(), 2);
        assert!(is_greedy_poset(&fan, 9).unwrap());
        let report = structure_report(&n_poset(), 9).unwrap();
        assert!(!report.n_free);
        assert_eq!(report.extensions, 5);
        assert!(report.greedy >= 1);
    }

    #[test]
    fn greedy_extensions_are_extensions() {
        for n in 1..=5 {
            for p in crate::join::unlabeled_posets(n).unwrap() {
                let greedy = greedy_extensions(&p, 9).unwrap();
                assert!(!greedy.is_empty());
                for g in &greedy {
                    LinearExtension::new(&p, g.order().to_vec()).unwrap();
                }
                let dual = p.dual();
                for g in greedy_extensions(&dual, 9).unwrap() {
                    LinearExtension::new(&p, g.reversed()).unwrap();
                }
            }
        }
    }
}

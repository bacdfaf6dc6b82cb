//! Graded digraphs as n-ary relations.
//!
//! A chain of binary relations `E_k ⊆ D_k × D_{k+1}` composes by relational
//! natural join into the n-ary relation of all paths through every domain;
//! projecting onto consecutive coordinate pairs goes the other way. For a
//! graded poset the domains are its levels and the composed relation is its
//! set of spanning chains.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::GradedPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaryRelation {
    domains: Vec<Vec<String>>,
    tuples: BTreeSet<Vec<usize>>,
}

impl NaryRelation {
    /// Tuples are given by element index within each domain.
    pub fn new(domains: Vec<Vec<String>>, tuples: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let tuples: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        for t in &tuples {
            if t.len() != domains.len() {
                return Err(Error::DomainMismatch(format!("tuple of length {} in a {}-ary relation", t.len(), domains.len())));
            }
            if let Some((i, &x)) = t.iter().enumerate().find(|&(i, &x)| x >= domains[i].len()) {
                return Err(Error::DomainMismatch(format!("index {x} outside domain {i}")));
            }
        }
        Ok(Self { domains, tuples })
    }

    /// Tuples are given by element name.
    pub fn from_names<S: AsRef<str>>(domains: &[&[S]], tuples: &[&[S]]) -> Result<Self> {
        let domains: Vec<Vec<String>> =
            domains.iter().map(|d| d.iter().map(|s| s.as_ref().to_string()).collect()).collect();
        let indexed = tuples
            .iter()
            .map(|t| {
                if t.len() != domains.len() {
                    return Err(Error::DomainMismatch(format!("tuple of length {}", t.len())));
                }
                t.iter()
                    .zip(&domains)
                    .map(|(name, dom)| {
                        dom.iter()
                            .position(|d| d == name.as_ref())
                            .ok_or_else(|| Error::DomainMismatch(format!("unknown element {}", name.as_ref())))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(domains, indexed)
    }

    pub fn arity(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Vec<String>] {
        &self.domains
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<usize>> {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn named_tuples(&self) -> Vec<Vec<String>> {
        self.tuples.iter().map(|t| self.name(t)).collect()
    }

    fn name(&self, t: &[usize]) -> Vec<String> {
        t.iter().enumerate().map(|(i, &x)| self.domains[i][x].clone()).collect()
    }

    /// Same domains and every tuple of `self` present in `other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.domains == other.domains && self.tuples.is_subset(&other.tuples)
    }

    /// Projection onto the coordinates `coords`, in that order.
    pub fn project(&self, coords: &[usize]) -> Result<Self> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.arity()) {
            return Err(Error::DomainMismatch(format!("coordinate {c} of a {}-ary relation", self.arity())));
        }
        let domains = coords.iter().map(|&c| self.domains[c].clone()).collect();
        let tuples = self.tuples.iter().map(|t| coords.iter().map(|&c| t[c]).collect());
        Self::new(domains, tuples)
    }

    pub fn to_document(&self) -> RelationDocument {
        RelationDocument { domains: self.domains.clone(), tuples: self.named_tuples() }
    }

    pub fn from_document(doc: &RelationDocument) -> Result<Self> {
        let domains: Vec<&[String]> = doc.domains.iter().map(Vec::as_slice).collect();
        let tuples: Vec<&[String]> = doc.tuples.iter().map(Vec::as_slice).collect();
        Self::from_names(&domains, &tuples)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RelationDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// JSON relation document `{"domains": [[names…]…], "tuples": [[names…]…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDocument {
    pub domains: Vec<Vec<String>>,
    pub tuples: Vec<Vec<String>>,
}

/// Relational natural join of a chain of binary relations.
pub fn compose_nary(chain: &[NaryRelation]) -> Result<NaryRelation> {
    let (first, rest) = chain.split_first().ok_or_else(|| Error::DomainMismatch("empty chain".into()))?;
    if let Some(bad) = chain.iter().find(|r| r.arity() != 2) {
        return Err(Error::DomainMismatch(format!("expected binary relations, found arity {}", bad.arity())));
    }
    let mut domains = first.domains.clone();
    let mut tuples: Vec<Vec<usize>> = first.tuples.iter().cloned().collect();
    for (k, rel) in rest.iter().enumerate() {
        if rel.domains[0] != *domains.last().expect("nonempty") {
            return Err(Error::DomainMismatch(format!(
                "relation {} starts on a different domain than relation {} ends on",
                k + 2,
                k + 1
            )));
        }
        let mut next = Vec::new();
        for t in &tuples {
            let tail = *t.last().expect("nonempty");
            for pair in rel.tuples.range(vec![tail]..vec![tail + 1]) {
                let mut longer = t.clone();
                longer.push(pair[1]);
                next.push(longer);
            }
        }
        tuples = next;
        domains.push(rel.domains[1].clone());
    }
    NaryRelation::new(domains, tuples)
}

/// Projections onto consecutive coordinate pairs.
pub fn decompose_nary(t: &NaryRelation) -> Result<Vec<NaryRelation>> {
    if t.arity() < 2 {
        return Err(Error::DomainMismatch(format!("cannot decompose a {}-ary relation", t.arity())));
    }
    (0..t.arity() - 1).map(|k| t.project(&[k, k + 1])).collect()
}

fn level_names(p: &GradedPoset, t: usize) -> Vec<String> {
    p.level(t).iter().map(|v| format!("{},{}", v.s, v.t)).collect()
}

/// The cover relation between each pair of consecutive levels.
pub fn level_relations(p: &GradedPoset) -> Vec<NaryRelation> {
    (p.first_level()..p.last_level())
        .map(|t| {
            let b = p.biadjacency(t).expect("consecutive levels");
            let tuples = (0..b.rows()).flat_map(|i| b.row_ones(i).map(move |j| vec![i, j]));
            NaryRelation::new(vec![level_names(p, t), level_names(p, t + 1)], tuples).expect("in range")
        })
        .collect()
}

/// Spanning chains of `p` as a relation over its levels.
pub fn chain_tuples(p: &GradedPoset) -> NaryRelation {
    let domains = (p.first_level()..=p.last_level()).map(|t| level_names(p, t)).collect();
    let mut tuples = BTreeSet::new();
    p.for_each_max_chain(|path| {
        tuples.insert(path.iter().map(|s| s - 1).collect());
    });
    NaryRelation { domains, tuples }
}

/// Whether `p` is determined by its chain relation: no biadjacency matrix
/// may have a zero row or a zero column.
pub fn is_identifiable(p: &GradedPoset) -> bool {
    p.biadjacencies()
        .iter()
        .all(|b| (0..b.rows()).all(|i| b.row_count(i) > 0) && (0..b.cols()).all(|j| b.col_count(j) > 0))
}

/// The worked ternary example over `X = {x1,x2,x3}`, `Z = {z1..z4}`, `Y = {y1,y2}`.
#[derive(Clone, Debug)]
pub struct TernaryExample {
    pub e1: NaryRelation,
    pub e2: NaryRelation,
    /// A hand-written ternary relation to compare the join against.
    pub reference: NaryRelation,
}

impl TernaryExample {
    pub fn new() -> Self {
        let x = ["x1", "x2", "x3"];
        let z = ["z1", "z2", "z3", "z4"];
        let y = ["y1", "y2"];
        let e1 = NaryRelation::from_names(
            &[&x, &z],
            &[&["x1", "z1"], &["x1", "z2"], &["x1", "z4"], &["x2", "z3"], &["x3", "z3"]],
        )
        .expect("valid example");
        let e2 = NaryRelation::from_names(&[&z, &y], &[&["z1", "y1"], &["z2", "y1"], &["z3", "y1"], &["z4", "y2"]])
            .expect("valid example");
        let reference = NaryRelation::from_names(
            &[&x, &z, &y],
            &[
                &["x1", "z1", "y1"],
                &["x1", "z2", "y1"],
                &["x1", "z4", "y2"],
                &["x2", "z3", "y2"],
                &["x3", "z3", "y2"],
            ],
        )
        .expect("valid example");
        Self { e1, e2, reference }
    }

    pub fn composed(&self) -> NaryRelation {
        compose_nary(&[self.e1.clone(), self.e2.clone()]).expect("domains agree")
    }

    pub fn discrepancy(&self) -> Discrepancy {
        Discrepancy::between(&self.composed(), &self.reference)
    }
}

impl Default for TernaryExample {
    fn default() -> Self {
        Self::new()
    }
}

/// A left tuple, its right partner, and the one coordinate where they differ.
pub type CoordinateMismatch = (Vec<String>, Vec<String>, usize);

/// Tuples present in only one of two relations over the same domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub only_left: Vec<Vec<String>>,
    pub only_right: Vec<Vec<String>>,
}

impl Discrepancy {
    pub fn between(left: &NaryRelation, right: &NaryRelation) -> Self {
        let only_left = left.tuples.difference(&right.tuples).map(|t| left.name(t)).collect();
        let only_right = right.tuples.difference(&left.tuples).map(|t| right.name(t)).collect();
        Self { only_left, only_right }
    }

    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }

    /// Pairs each left-only tuple with the right-only tuple that agrees on
    /// every coordinate but one, returning that coordinate. `None` if the
    /// tuples do not pair up this way.
    pub fn single_coordinate_pairs(&self) -> Option<Vec<CoordinateMismatch>> {
        if self.only_left.len() != self.only_right.len() {
            return None;
        }
        let mut unused: Vec<&Vec<String>> = self.only_right.iter().collect();
        let mut out = Vec::new();
        for l in &self.only_left {
            let pos = unused.iter().position(|r| l.iter().zip(r.iter()).filter(|(a, b)| a != b).count() == 1)?;
            let r = unused.remove(pos);
            let coord = l.iter().zip(r).position(|(a, b)| a != b)?;
            out.push((l.clone(), r.clone(), coord));
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsequence::FSequence;
    use crate::matrix::BoolMatrix;

    fn names(rows: &[&[&str]]) -> Vec<Vec<String>> {
        rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn ternary_composition() {
        let ex = TernaryExample::new();
        let t = ex.composed();
        assert_eq!(
            t.named_tuples(),
            names(&[
                &["x1", "z1", "y1"],
                &["x1", "z2", "y1"],
                &["x1", "z4", "y2"],
                &["x2", "z3", "y1"],
                &["x3", "z3", "y1"],
            ])
        );
        let d = ex.discrepancy();
        assert_eq!(d.only_left.len(), 2);
        let pairs = d.single_coordinate_pairs().unwrap();
        assert!(pairs.iter().all(|(_, _, c)| *c == 2));
    }

    #[test]
    fn complete_chains() {
        let p = GradedPoset::cobweb(&FSequence::natural(), 3).unwrap();
        let t = compose_nary(&level_relations(&p)).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t, chain_tuples(&p));
        let single = &level_relations(&p)[0];
        assert_eq!(&compose_nary(std::slice::from_ref(single)).unwrap(), single);
    }

    #[test]
    fn decomposition() {
        let ex = TernaryExample::new();
        let parts = decompose_nary(&ex.composed()).unwrap();
        assert_eq!(parts[0], ex.e1);
        assert_eq!(parts[1], ex.e2);
        assert_eq!(compose_nary(&parts).unwrap(), ex.composed());
        // the reference relation projects onto a different second factor
        let reference_parts = decompose_nary(&ex.reference).unwrap();
        assert_eq!(reference_parts[0], ex.e1);
        assert_ne!(reference_parts[1], ex.e2);
        assert!(ex.reference.is_subset(&compose_nary(&reference_parts).unwrap()));
    }

    #[test]
    fn mismatched_domains() {
        let ex = TernaryExample::new();
        assert!(matches!(compose_nary(&[ex.e2.clone(), ex.e1.clone()]), Err(Error::DomainMismatch(_))));
        assert!(compose_nary(&[]).is_err());
        assert!(NaryRelation::from_names(&[&["a"]], &[&["b"]]).is_err());
    }

    #[test]
    fn identifiability() {
        for f in FSequence::reference_set() {
            assert!(is_identifiable(&GradedPoset::cobweb(&f, 4).unwrap()));
        }
        let zero_col = GradedPoset::from_biadjacency(vec![1, 2], vec![BoolMatrix::from_bits(&[&[1, 0]])]).unwrap();
        assert!(!is_identifiable(&zero_col));
        let dummy = GradedPoset::from_biadjacency(
            vec![2, 2, 2],
            vec![BoolMatrix::from_bits(&[&[1, 0], &[1, 0]]), BoolMatrix::from_bits(&[&[1, 1], &[0, 0]])],
        )
        .unwrap();
        assert!(!is_identifiable(&dummy));
    }

    #[test]
    fn mute_vertex_leaves_chains() {
        let p = GradedPoset::from_biadjacency(
            vec![1, 2, 1],
            vec![BoolMatrix::from_bits(&[&[1, 0]]), BoolMatrix::from_bits(&[&[1], &[1]])],
        )
        .unwrap();
        let chains = chain_tuples(&p);
        assert_eq!(chains.len(), 1);
        assert!(chains.tuples().iter().all(|t| t[1] != 1));
        let rebuilt = compose_nary(&decompose_nary(&chains).unwrap()).unwrap();
        assert_eq!(rebuilt, chains);
        assert_ne!(decompose_nary(&chains).unwrap(), level_relations(&p));
    }

    #[test]
    fn json_round_trip() {
        let ex = TernaryExample::new();
        let json = ex.e2.to_json();
        assert!(json.starts_with(r#"{"domains":[["z1","z2","z3","z4"],["y1","y2"]],"tuples":[["z1","y1"]"#));
        assert_eq!(NaryRelation::from_json(&json).unwrap(), ex.e2);
    }
}

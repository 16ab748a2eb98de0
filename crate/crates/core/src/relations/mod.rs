//! Relation sets on tableau positions and their calculus.

mod admissible;
mod calculus;
mod cross;
mod realize;
mod rr;
pub mod system;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{GroupElement, Position, Tableau};

pub use admissible::{
    canonical_form, canonicalizing_element, f_condition, f_failures, is_admissible, is_pre_admissible,
};
pub use calculus::{
    critical_pair, equivalent, forced_order, implies, is_noncritical_extended, is_noncritical_set,
    is_reduced_form, is_satisfiable, reduce, Closure,
};
pub use cross::{detect_crosses, eliminate_all_crosses, eliminate_cross, Cross};
pub use realize::{
    fresh_anchor_values, is_realization, max_satisfied_set, realization_completion, reassign_anchors,
    realization_with_gaps, sample_realization, satisfied_relations,
};
pub use rr::{is_releasable, rr_reachable, rr_step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelKind {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl RelKind {
    /// Lower bound on `from - to`.
    pub fn slack(self) -> i64 {
        match self {
            RelKind::Ge => 0,
            RelKind::Gt => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelKind::Ge => ">=",
            RelKind::Gt => ">",
        }
    }
}

/// `from >= to` or `from > to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub from: Position,
    pub to: Position,
    pub kind: RelKind,
}

impl Relation {
    pub fn ge(from: (usize, usize), to: (usize, usize)) -> Self {
        Relation { from: Position::new(from.0, from.1), to: Position::new(to.0, to.1), kind: RelKind::Ge }
    }

    pub fn gt(from: (usize, usize), to: (usize, usize)) -> Self {
        Relation { from: Position::new(from.0, from.1), to: Position::new(to.0, to.1), kind: RelKind::Gt }
    }

    pub fn involves(&self, p: Position) -> bool {
        self.from == p || self.to == p
    }

    /// Adjacent-row arrow of either kind and direction, or a weak top-row arrow.
    pub fn is_valid(&self, n: usize) -> bool {
        if !self.from.is_valid(n) || !self.to.is_valid(n) || self.from == self.to {
            return false;
        }
        let (a, b) = (self.from.row, self.to.row);
        a.abs_diff(b) == 1 || (a == n && b == n && self.kind == RelKind::Ge)
    }

    /// Membership in the directed families `(i,j) >= (i-1,j')`, `(i-1,j') > (i,j)`
    /// and the weak top-row relations.
    pub fn is_directed(&self, n: usize) -> bool {
        self.is_valid(n)
            && match self.kind {
                RelKind::Ge => self.from.row == self.to.row + 1 || self.from.row == n && self.to.row == n,
                RelKind::Gt => self.from.row + 1 == self.to.row,
            }
    }

    pub fn is_top(&self, n: usize) -> bool {
        self.from.row == n && self.to.row == n
    }

    pub fn holds(&self, t: &Tableau) -> bool {
        match t.int_diff(self.from, self.to) {
            Some(d) => match self.kind {
                RelKind::Ge => !d.is_negative(),
                RelKind::Gt => d.is_positive(),
            },
            None => false,
        }
    }

    pub fn relabel(&self, sigma: &GroupElement) -> Relation {
        Relation { from: sigma.apply(self.from), to: sigma.apply(self.to), kind: self.kind }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.from, self.kind.symbol(), self.to)
    }
}

/// Every directed relation for height `n`, in sorted order.
pub fn directed_relations(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 2..=n {
        for j in 1..=i {
            for jp in 1..i {
                out.push(Relation::ge((i, j), (i - 1, jp)));
                out.push(Relation::gt((i - 1, jp), (i, j)));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(Relation::ge((n, i), (n, j)));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationSet {
    n: usize,
    relations: BTreeSet<Relation>,
}

impl RelationSet {
    pub fn empty(n: usize) -> Self {
        RelationSet { n, relations: BTreeSet::new() }
    }

    pub fn new(n: usize, relations: impl IntoIterator<Item = Relation>) -> Self {
        RelationSet { n, relations: relations.into_iter().collect() }
    }

    /// The standard set: `(k+1,i) >= (k,i) > (k+1,i+1)` for all `1 <= i <= k < n`.
    pub fn standard(n: usize) -> Self {
        let mut rels = Vec::new();
        for k in 1..n {
            for i in 1..=k {
                rels.push(Relation::ge((k + 1, i), (k, i)));
                rels.push(Relation::gt((k, i), (k + 1, i + 1)));
            }
        }
        Self::new(n, rels)
    }

    /// Weak decreasing chain on the top row.
    pub fn top_chain(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| Relation::ge((n, i), (n, i + 1))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter()
    }

    pub fn relations(&self) -> &BTreeSet<Relation> {
        &self.relations
    }

    pub fn contains(&self, r: &Relation) -> bool {
        self.relations.contains(r)
    }

    pub fn insert(&mut self, r: Relation) -> bool {
        self.relations.insert(r)
    }

    pub fn remove(&mut self, r: &Relation) -> bool {
        self.relations.remove(r)
    }

    pub fn with(&self, r: Relation) -> Self {
        let mut s = self.clone();
        s.insert(r);
        s
    }

    pub fn without(&self, r: &Relation) -> Self {
        let mut s = self.clone();
        s.remove(r);
        s
    }

    pub fn union(&self, other: &RelationSet) -> Self {
        let mut s = self.clone();
        s.relations.extend(other.relations.iter().copied());
        s
    }

    /// The positions mentioned by some relation, sorted.
    pub fn support(&self) -> BTreeSet<Position> {
        self.relations.iter().flat_map(|r| [r.from, r.to]).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.relations.iter().all(|r| r.is_valid(self.n))
    }

    pub fn is_directed(&self) -> bool {
        self.relations.iter().all(|r| r.is_directed(self.n))
    }

    pub fn check_valid(&self) -> Result<()> {
        match self.relations.iter().find(|r| !r.is_valid(self.n)) {
            Some(r) => Err(Error::InvalidSet(format!("{r} is not an admissible arrow for n={}", self.n))),
            None => Ok(()),
        }
    }

    /// Position sets of the indecomposable components, ordered by least position.
    pub fn component_supports(&self) -> Vec<BTreeSet<Position>> {
        let support: Vec<Position> = self.support().into_iter().collect();
        let idx: BTreeMap<Position, usize> = support.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut parent: Vec<usize> = (0..support.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for r in &self.relations {
            let (a, b) = (find(&mut parent, idx[&r.from]), find(&mut parent, idx[&r.to]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Position>> = BTreeMap::new();
        for (i, p) in support.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert(*p);
        }
        groups.into_values().collect()
    }

    /// The unique decomposition into indecomposable parts.
    pub fn decompose(&self) -> Vec<RelationSet> {
        self.component_supports()
            .into_iter()
            .map(|ps| {
                let rels = self.relations.iter().filter(|r| ps.contains(&r.from));
                RelationSet::new(self.n, rels.copied())
            })
            .collect()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.component_supports().len() <= 1
    }

    pub fn satisfied_by(&self, t: &Tableau) -> bool {
        self.relations.iter().all(|r| r.holds(t))
    }

    pub fn sigma_action(&self, sigma: &GroupElement) -> RelationSet {
        RelationSet::new(self.n, self.relations.iter().map(|r| r.relabel(sigma)))
    }

    pub fn relations_at(&self, p: Position) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.involves(p))
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn validate_set(c: &RelationSet) -> bool {
    c.is_valid()
}

pub fn decompose(c: &RelationSet) -> Vec<RelationSet> {
    c.decompose()
}

pub fn satisfies(t: &Tableau, c: &RelationSet) -> bool {
    c.satisfied_by(t)
}

pub fn sigma_action(sigma: &GroupElement, c: &RelationSet) -> RelationSet {
    c.sigma_action(sigma)
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    from: [usize; 2],
    rel: RelKind,
    to: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct RelationSetJson {
    n: usize,
    relations: Vec<RelationJson>,
}

impl Serialize for RelationSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationSetJson {
            n: self.n,
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson {
                    from: [r.from.row, r.from.col],
                    rel: r.kind,
                    to: [r.to.row, r.to.col],
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RelationSetJson::deserialize(d)?;
        let set = RelationSet::new(
            raw.n,
            raw.relations.into_iter().map(|r| Relation {
                from: Position::new(r.from[0], r.from[1]),
                to: Position::new(r.to[0], r.to[1]),
                kind: r.rel,
            }),
        );
        set.check_valid().map_err(serde::de::Error::custom)?;
        Ok(set)
    }
}

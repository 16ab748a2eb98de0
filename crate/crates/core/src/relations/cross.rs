use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{Relation, RelationSet};
use crate::error::{Error, Result};
use crate::tableau::{Position, Tableau};

/// The pair `(k,i) > (k+1,t)`, `(k+1,s) >= (k,j)` with `i < j`, `s < t`:
/// two arrows between rows `k` and `k+1` whose drawings intersect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cross {
    pub k: usize,
    pub i: usize,
    pub s: usize,
    pub j: usize,
    pub t: usize,
}

impl Cross {
    pub fn relations(&self) -> [Relation; 2] {
        [Relation::gt((self.k, self.i), (self.k + 1, self.t)), Relation::ge((self.k + 1, self.s), (self.k, self.j))]
    }

    pub fn as_array(&self) -> [usize; 5] {
        [self.k, self.i, self.s, self.j, self.t]
    }
}

/// All crosses of `c` in lexicographic order.
pub fn detect_crosses(c: &RelationSet) -> Vec<Cross> {
    let n = c.n();
    let mut out = Vec::new();
    for k in 1..n {
        for i in 1..=k {
            for j in i + 1..=k {
                for s in 1..=k + 1 {
                    for t in s + 1..=k + 1 {
                        let x = Cross { k, i, s, j, t };
                        if x.relations().iter().all(|r| c.contains(r)) {
                            out.push(x);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Replaces the cross by the chain selected by the entries of `t`.
pub fn eliminate_cross(c: &RelationSet, x: &Cross, t: &Tableau) -> Result<RelationSet> {
    if !c.satisfied_by(t) {
        return Err(Error::NotRealization);
    }
    if !x.relations().iter().all(|r| c.contains(r)) {
        return Err(Error::PreconditionFailed(format!("{:?} is not a cross of the set", x.as_array())));
    }
    let ki = (x.k, x.i);
    let kj = (x.k, x.j);
    let ks = (x.k + 1, x.s);
    let kt = (x.k + 1, x.t);
    let diff = |a: (usize, usize), b: (usize, usize)| t.int_diff(Position::new(a.0, a.1), Position::new(b.0, b.1));
    let gt = |a, b| diff(a, b).map(|d| d.is_positive()).ok_or(Error::NoCaseApplies);
    let ge = |a, b| diff(a, b).map(|d| !d.is_negative()).ok_or(Error::NoCaseApplies);

    let mut out = c.clone();
    for r in x.relations() {
        out.remove(&r);
    }
    let added: Vec<Relation> = if gt(ki, ks)? && ge(ks, kj)? && gt(kj, kt)? {
        vec![Relation::gt(ki, ks), Relation::ge(ks, kj), Relation::gt(kj, kt)]
    } else if gt(ki, ks)? && ge(kt, kj)? {
        vec![Relation::gt(ki, ks), Relation::ge(kt, kj)]
    } else if ge(ks, ki)? && gt(ki, kj)? && gt(kj, kt)? {
        vec![Relation::ge(ks, ki), Relation::gt(kj, kt)]
    } else if ge(ks, ki)? && gt(ki, kt)? && ge(kt, kj)? {
        vec![Relation::ge(ks, ki), Relation::gt(ki, kt), Relation::ge(kt, kj)]
    } else {
        return Err(Error::NoCaseApplies);
    };
    out.relations.extend(added);
    Ok(out)
}

/// Eliminates crosses one at a time, always the lexicographically first.
pub fn eliminate_all_crosses(c: &RelationSet, t: &Tableau) -> Result<RelationSet> {
    let mut cur = c.clone();
    for _ in 0..10_000 {
        match detect_crosses(&cur).first() {
            None => return Ok(cur),
            Some(x) => cur = eliminate_cross(&cur, x, t)?,
        }
    }
    Err(Error::BudgetExceeded("cross elimination did not terminate".into()))
}

use std::collections::BTreeMap;

use super::system::{Bounds, DifferenceSystem, PositionIndex};
use super::{RelKind, Relation, RelationSet};
use crate::error::{Error, Result};
use crate::tableau::Position;

/// Tightest implied bounds between the positions of a relation set.
#[derive(Clone, Debug)]
pub struct Closure {
    index: PositionIndex,
    bounds: Bounds,
    comp: Vec<usize>,
    components: Vec<Vec<Position>>,
}

impl Closure {
    pub fn new(c: &RelationSet) -> Self {
        let comps = c.component_supports();
        let index = PositionIndex::new(c.n(), comps.iter().flatten().copied());
        let mut comp = vec![0; index.len()];
        for (ci, ps) in comps.iter().enumerate() {
            for p in ps {
                comp[index.node(*p).unwrap()] = ci;
            }
        }
        let mut sys = DifferenceSystem::new(index.len());
        for r in c.iter() {
            sys.at_least(index.node(r.from).unwrap(), index.node(r.to).unwrap(), r.kind.slack());
        }
        let components = comps.into_iter().map(|s| s.into_iter().collect()).collect();
        Closure { index, bounds: sys.closure(), comp, components }
    }

    pub fn feasible(&self) -> bool {
        self.bounds.feasible()
    }

    pub fn contains(&self, p: Position) -> bool {
        self.index.node(p).is_some()
    }

    /// Largest `c` with `l_p - l_q >= c` forced.
    pub fn bound(&self, p: Position, q: Position) -> Option<i64> {
        let (a, b) = (self.index.node(p)?, self.index.node(q)?);
        self.bounds.get(a, b)
    }

    pub fn same_component(&self, p: Position, q: Position) -> bool {
        match (self.index.node(p), self.index.node(q)) {
            (Some(a), Some(b)) => self.comp[a] == self.comp[b],
            _ => false,
        }
    }

    pub fn component_of(&self, p: Position) -> Option<usize> {
        self.index.node(p).map(|a| self.comp[a])
    }

    pub fn components(&self) -> &[Vec<Position>] {
        &self.components
    }

    /// `l_p - l_q >= c` on every tableau satisfying the set.
    pub fn forces(&self, p: Position, q: Position, c: i64) -> bool {
        self.same_component(p, q) && self.bound(p, q).is_some_and(|b| b >= c)
    }

    pub fn forces_relation(&self, r: &Relation) -> bool {
        self.forces(r.from, r.to, r.kind.slack())
    }

    pub fn ge(&self, p: Position, q: Position) -> bool {
        self.forces(p, q, 0)
    }

    pub fn gt(&self, p: Position, q: Position) -> bool {
        self.forces(p, q, 1)
    }
}

pub fn is_satisfiable(c: &RelationSet) -> bool {
    Closure::new(c).feasible()
}

fn feasible_closure(c: &RelationSet) -> Result<Closure> {
    let cl = Closure::new(c);
    if cl.feasible() {
        Ok(cl)
    } else {
        Err(Error::UnsatisfiableSet)
    }
}

fn critical_pair_in(cl: &Closure, n: usize) -> Option<(Position, Position)> {
    for comp in cl.components() {
        for (i, &p) in comp.iter().enumerate() {
            for &q in &comp[i + 1..] {
                if p.row == q.row && p.row < n && !cl.gt(p, q) && !cl.gt(q, p) {
                    return Some((p, q));
                }
            }
        }
    }
    None
}

/// A same-row pair below the top that some satisfying tableau makes equal.
pub fn critical_pair(c: &RelationSet) -> Result<Option<(Position, Position)>> {
    let cl = feasible_closure(c)?;
    Ok(critical_pair_in(&cl, c.n()))
}

pub fn is_noncritical_set(c: &RelationSet) -> Result<bool> {
    Ok(critical_pair(c)?.is_none())
}

/// Noncritical, top-row relations acyclic, and the top row of each component
/// ordered by the set.
pub fn is_noncritical_extended(c: &RelationSet) -> Result<bool> {
    let cl = feasible_closure(c)?;
    Ok(extended_ok(c, &cl))
}

pub(crate) fn extended_ok(c: &RelationSet, cl: &Closure) -> bool {
    let n = c.n();
    if critical_pair_in(cl, n).is_some() {
        return false;
    }
    let mut top = DifferenceSystem::new(n + 1);
    for r in c.iter().filter(|r| r.is_top(n)) {
        top.at_least(r.from.col, r.to.col, 1);
    }
    if !top.is_feasible() {
        return false;
    }
    cl.components().iter().all(|comp| {
        let tops: Vec<Position> = comp.iter().copied().filter(|p| p.row == n).collect();
        tops.iter()
            .enumerate()
            .all(|(i, &p)| tops[i + 1..].iter().all(|&q| cl.ge(p, q) || cl.ge(q, p)))
    })
}

/// Row-`k` positions of each component in decreasing forced order.
pub fn forced_order(c: &RelationSet, k: usize) -> Result<Vec<Vec<Position>>> {
    let cl = feasible_closure(c)?;
    forced_order_in(&cl, c.n(), k)
}

pub(crate) fn forced_order_in(cl: &Closure, n: usize, k: usize) -> Result<Vec<Vec<Position>>> {
    let above = |p: Position, q: Position| if k == n { cl.ge(p, q) } else { cl.gt(p, q) };
    let mut out = Vec::new();
    for comp in cl.components() {
        let row: Vec<Position> = comp.iter().copied().filter(|p| p.row == k).collect();
        if row.is_empty() {
            continue;
        }
        let mut ranked: Vec<(usize, Position)> = row
            .iter()
            .map(|&p| (row.iter().filter(|&&q| q != p && above(p, q) && !above(q, p)).count(), p))
            .collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.col.cmp(&b.1.col)));
        let order: Vec<Position> = ranked.into_iter().map(|(_, p)| p).collect();
        if order.windows(2).any(|w| !above(w[0], w[1])) {
            return Err(Error::OrderUndetermined { row: k });
        }
        out.push(order);
    }
    Ok(out)
}

pub fn implies(c1: &RelationSet, c2: &RelationSet) -> Result<bool> {
    let cl = feasible_closure(c1)?;
    Ok(c2.iter().all(|r| cl.forces_relation(r)))
}

pub fn equivalent(c1: &RelationSet, c2: &RelationSet) -> Result<bool> {
    if !is_satisfiable(c2) {
        return Err(Error::UnsatisfiableSet);
    }
    Ok(implies(c1, c2)? && implies(c2, c1)?)
}

/// The unique reduced set equivalent to `c`.
pub fn reduce(c: &RelationSet) -> Result<RelationSet> {
    if !is_noncritical_set(c)? {
        return Err(Error::CriticalSet);
    }
    Ok(reduce_satisfiable(c))
}

/// Redundancy removal without the noncriticality precondition.
pub(crate) fn reduce_satisfiable(c: &RelationSet) -> RelationSet {
    reduce_in_order(c, false)
}

pub(crate) fn reduce_in_order(c: &RelationSet, reverse: bool) -> RelationSet {
    let mut cur = c.clone();
    loop {
        let mut rels: Vec<Relation> = cur.iter().copied().collect();
        if reverse {
            rels.reverse();
        }
        let removable = rels.into_iter().find(|r| {
            let rest = cur.without(r);
            Closure::new(&rest).forces_relation(r)
        });
        match removable {
            Some(r) => {
                cur.remove(&r);
            }
            None => return cur,
        }
    }
}

/// The four "at most one arrow of each type per position" conditions.
pub fn is_reduced_form(c: &RelationSet) -> bool {
    let mut counts: BTreeMap<(Position, u8), usize> = BTreeMap::new();
    for r in c.iter() {
        let (a, b) = (r.from, r.to);
        let tag = match r.kind {
            // (k,j) > (k+1,i) at a, (k-1,i) > (k,j) at b
            RelKind::Gt if b.row == a.row + 1 => [(a, 0u8), (b, 3)],
            // (k+1,i) >= (k,j) at b, (k,j) >= (k-1,i) at a
            RelKind::Ge if a.row == b.row + 1 => [(b, 1), (a, 2)],
            _ => continue,
        };
        for key in tag {
            *counts.entry(key).or_default() += 1;
        }
    }
    counts.values().all(|&v| v <= 1)
}

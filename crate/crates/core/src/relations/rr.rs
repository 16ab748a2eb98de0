use std::collections::{BTreeSet, VecDeque};

use super::calculus::reduce_satisfiable;
use super::RelationSet;
use crate::error::{Error, Result};
use crate::tableau::Position;

/// All relations at `p` bound it from the same side.
pub fn is_releasable(c: &RelationSet, p: Position) -> bool {
    let mut lower = false;
    let mut upper = false;
    for r in c.relations_at(p) {
        if r.from == p {
            lower = true;
        } else {
            upper = true;
        }
    }
    lower != upper
}

/// Removes every relation involving a releasable position.
pub fn rr_step(c: &RelationSet, p: Position) -> Result<RelationSet> {
    if !is_releasable(c, p) {
        return Err(Error::NotReleasable(p));
    }
    Ok(RelationSet::new(c.n(), c.iter().filter(|r| !r.involves(p)).copied()))
}

/// Sets reachable from the standard set by releasing positions, reduced and
/// deduplicated, in breadth-first order.
pub fn rr_reachable(n: usize, limit: usize) -> Vec<RelationSet> {
    let start = RelationSet::standard(n);
    let mut seen: BTreeSet<RelationSet> = BTreeSet::from([start.clone()]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for p in c.support() {
            if out.len() >= limit {
                return out;
            }
            let Ok(next) = rr_step(&c, p) else { continue };
            let next = reduce_satisfiable(&next);
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{is_admissible, Relation};

    #[test]
    fn standard_interior_is_not_releasable() {
        let s = RelationSet::standard(3);
        assert_eq!(rr_step(&s, Position::new(1, 1)), Err(Error::NotReleasable(Position::new(1, 1))));
        assert!(is_releasable(&s, Position::new(3, 1)));
        assert!(is_releasable(&s, Position::new(3, 3)));
        assert!(!is_releasable(&s, Position::new(3, 2)));
    }

    #[test]
    fn reachable_from_gl2() {
        let all = rr_reachable(2, 100);
        assert!(all.contains(&RelationSet::standard(2)));
        assert!(all.contains(&RelationSet::empty(2)));
        assert!(all.contains(&RelationSet::new(2, [Relation::ge((2, 1), (1, 1))])));
    }

    #[test]
    fn reachable_sets_are_admissible() {
        for n in 2..=3 {
            for c in rr_reachable(n, 200) {
                assert!(is_admissible(&c), "{c}");
            }
        }
    }
}

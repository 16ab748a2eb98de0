use super::calculus::{extended_ok, forced_order_in, reduce_satisfiable, Closure};
use super::cross::detect_crosses;
use super::RelationSet;
use crate::error::{Error, Result};
use crate::tableau::{GroupElement, Position};

/// The relabeling that makes every forced row order decrease from left to right.
pub fn canonicalizing_element(c: &RelationSet) -> Result<GroupElement> {
    let cl = Closure::new(c);
    if !cl.feasible() {
        return Err(Error::UnsatisfiableSet);
    }
    canonicalizing_in(&cl, c.n())
}

fn canonicalizing_in(cl: &Closure, n: usize) -> Result<GroupElement> {
    let mut rows: Vec<Vec<usize>> = (1..=n).map(|k| (1..=k).collect()).collect();
    for k in 1..=n {
        for order in forced_order_in(cl, n, k)? {
            let mut cols: Vec<usize> = order.iter().map(|p| p.col).collect();
            cols.sort_unstable();
            for (p, c) in order.iter().zip(cols) {
                rows[k - 1][p.col - 1] = c;
            }
        }
    }
    GroupElement::from_rows(rows)
}

pub fn canonical_form(c: &RelationSet) -> Result<RelationSet> {
    Ok(c.sigma_action(&canonicalizing_element(c)?))
}

fn oriented(cl: &Closure, n: usize) -> Result<bool> {
    for k in 1..n {
        for order in forced_order_in(cl, n, k)? {
            if order.windows(2).any(|w| w[0].col > w[1].col) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Noncritical, conventionally oriented and free of crosses.
pub fn is_pre_admissible(c: &RelationSet) -> bool {
    if !c.is_valid() {
        return false;
    }
    let cl = Closure::new(c);
    if !cl.feasible() || !extended_ok(c, &cl) {
        return false;
    }
    let n = c.n();
    if c.iter().any(|r| r.is_top(n) && r.from.col > r.to.col) {
        return false;
    }
    matches!(oriented(&cl, n), Ok(true)) && detect_crosses(c).is_empty()
}

/// For each pair `a > b` adjacent in the forced order of a row below the top,
/// the set forces one of
/// `a > P >= b` and `a >= Q > b` with `P` in the row above and `Q` in the row below, or
/// `a > P`, `Q >= b`, `P >= Q` with `P != Q` in the row above.
pub fn f_condition(c: &RelationSet) -> Result<bool> {
    let cl = Closure::new(c);
    if !cl.feasible() {
        return Err(Error::UnsatisfiableSet);
    }
    f_condition_in(&cl, c.n())
}

fn f_condition_in(cl: &Closure, n: usize) -> Result<bool> {
    Ok(f_failures_in(cl, n, true)?.is_empty())
}

/// The forced-adjacent pairs `(a, b)`, `a > b`, that meet neither pattern.
pub fn f_failures(c: &RelationSet) -> Result<Vec<(Position, Position)>> {
    let cl = Closure::new(c);
    if !cl.feasible() {
        return Err(Error::UnsatisfiableSet);
    }
    f_failures_in(&cl, c.n(), false)
}

fn f_failures_in(cl: &Closure, n: usize, first_only: bool) -> Result<Vec<(Position, Position)>> {
    let mut out = Vec::new();
    for comp in cl.components() {
        let row = |k: usize| -> Vec<Position> { comp.iter().copied().filter(|p| p.row == k).collect() };
        for k in 1..n {
            let mut order = row(k);
            if order.len() < 2 {
                continue;
            }
            let rank = |p: Position| order.iter().filter(|&&q| cl.gt(p, q)).count();
            let mut ranked: Vec<(usize, Position)> = order.iter().map(|&p| (rank(p), p)).collect();
            ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            order = ranked.into_iter().map(|(_, p)| p).collect();
            let up = row(k + 1);
            let down = if k > 1 { row(k - 1) } else { Vec::new() };
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                if !cl.gt(a, b) {
                    return Err(Error::OrderUndetermined { row: k });
                }
                let first = up.iter().any(|&p| cl.gt(a, p) && cl.ge(p, b))
                    && down.iter().any(|&q| cl.ge(a, q) && cl.gt(q, b));
                let second = up.iter().any(|&p| {
                    cl.gt(a, p) && up.iter().any(|&q| q != p && cl.ge(q, b) && cl.ge(p, q))
                });
                if !(first || second) {
                    out.push((a, b));
                    if first_only {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether every realization of `c` spans a module: the reduced set, relabeled
/// into conventional orientation, has pre-admissible components meeting the adjoining-pair condition.
pub fn is_admissible(c: &RelationSet) -> bool {
    if !c.is_valid() {
        return false;
    }
    let cl = Closure::new(c);
    if !cl.feasible() || !extended_ok(c, &cl) {
        return false;
    }
    let reduced = reduce_satisfiable(c);
    let Ok(sigma) = canonicalizing_element(&reduced) else {
        return false;
    };
    let canon = reduced.sigma_action(&sigma);
    canon.decompose().iter().all(|d| is_pre_admissible(d) && matches!(f_condition(d), Ok(true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::calculus::tests::arb_extended;
    use crate::relations::{Relation, RelationSet};
    use proptest::prelude::*;

    #[test]
    fn standard_sets_are_admissible() {
        for n in 1..=4 {
            let s = RelationSet::standard(n);
            assert!(is_pre_admissible(&s));
            assert!(is_admissible(&s));
            assert!(is_admissible(&s.union(&RelationSet::top_chain(n))));
        }
    }

    #[test]
    fn remark_set_is_admissible() {
        let c = RelationSet::new(3, [Relation::ge((3, 2), (2, 2)), Relation::gt((2, 1), (3, 1))]);
        assert!(is_admissible(&c));
        assert!(is_admissible(&c.with(Relation::ge((3, 1), (3, 2)))));
    }

    #[test]
    fn proposition_sets_are_not_admissible() {
        let one = RelationSet::new(3, [Relation::gt((2, 1), (3, 2)), Relation::ge((3, 2), (2, 2))]);
        assert!(!is_admissible(&one));
        let two = RelationSet::new(3, [Relation::ge((2, 1), (1, 1)), Relation::gt((1, 1), (2, 2))]);
        assert!(!is_admissible(&two));
    }

    #[test]
    fn pre_admissible_examples() {
        let crossed = RelationSet::new(3, [Relation::gt((2, 1), (3, 2)), Relation::ge((3, 1), (2, 2))]);
        assert!(!is_pre_admissible(&crossed));
        let crit = RelationSet::new(3, [Relation::ge((2, 1), (1, 1)), Relation::ge((2, 2), (1, 1))]);
        assert!(!is_pre_admissible(&crit));
        let flipped = RelationSet::standard(3).sigma_action(&GroupElement::swap(3, 2, 1, 2));
        assert!(!is_pre_admissible(&flipped));
        assert!(is_admissible(&flipped));
        assert_eq!(canonical_form(&flipped).unwrap(), RelationSet::standard(3));
    }

    fn arb_sigma(n: usize) -> impl Strategy<Value = GroupElement> {
        let all = GroupElement::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn admissibility_is_sigma_and_reduce_invariant(c in arb_extended(4, 9), g in arb_sigma(4)) {
            let a = is_admissible(&c);
            prop_assert_eq!(is_admissible(&c.sigma_action(&g)), a);
            prop_assert_eq!(is_admissible(&crate::relations::reduce(&c).unwrap()), a);
        }
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use super::calculus::{extended_ok, reduce_satisfiable, Closure};
use super::system::{DifferenceSystem, PositionIndex};
use super::{directed_relations, Relation, RelationSet};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::tableau::{positions, AnchorId, AnchorTable, Entry, Position, Tableau};

/// Every directed relation that `t` satisfies. Equal top entries only get the
/// arrow from the smaller column, so the top-row part stays acyclic.
pub fn satisfied_relations(t: &Tableau) -> RelationSet {
    let n = t.n();
    let rels = directed_relations(n).into_iter().filter(|r| {
        if !r.holds(t) {
            return false;
        }
        if r.is_top(n) && r.from.col > r.to.col {
            return t.int_diff(r.from, r.to).is_some_and(|d| d.is_positive());
        }
        true
    });
    RelationSet::new(n, rels)
}

/// The reduced form of everything `t` satisfies.
pub fn max_satisfied_set(t: &Tableau) -> Result<RelationSet> {
    if !t.is_noncritical() {
        return Err(Error::CriticalTableau);
    }
    Ok(reduce_satisfiable(&satisfied_relations(t)))
}

/// The completed set `C*` when `t` is a realization of `c`: components whose
/// top entries differ by integers are joined by the top-row relations `t` satisfies.
pub fn realization_completion(t: &Tableau, c: &RelationSet) -> Option<RelationSet> {
    let n = c.n();
    if t.n() != n || !c.satisfied_by(t) {
        return None;
    }
    let supports = c.component_supports();
    let mut group: BTreeMap<Position, usize> = BTreeMap::new();
    for (i, s) in supports.iter().enumerate() {
        for p in s {
            group.insert(*p, i);
        }
    }
    let mut parent: Vec<usize> = (0..supports.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    let mut cstar = c.clone();
    let tops: Vec<Position> = (1..=n).map(|j| Position::new(n, j)).filter(|p| group.contains_key(p)).collect();
    for (i, &p) in tops.iter().enumerate() {
        for &q in &tops[i + 1..] {
            let Some(d) = t.int_diff(p, q) else { continue };
            if group[&p] == group[&q] {
                continue;
            }
            let (a, b) = (find(&mut parent, group[&p]), find(&mut parent, group[&q]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
            let r = if d.is_negative() { Relation::ge((q.row, q.col), (p.row, p.col)) } else { Relation::ge((p.row, p.col), (q.row, q.col)) };
            cstar.insert(r);
        }
    }
    for k in 1..=n {
        for i in 1..=k {
            for j in i + 1..=k {
                let (p, q) = (Position::new(k, i), Position::new(k, j));
                let joined = match (group.get(&p), group.get(&q)) {
                    (Some(&a), Some(&b)) => find(&mut parent, a) == find(&mut parent, b),
                    _ => false,
                };
                if joined != (t.entry(p).anchor == t.entry(q).anchor) {
                    return None;
                }
            }
        }
    }
    let cl = Closure::new(&cstar);
    (cl.feasible() && extended_ok(&cstar, &cl)).then_some(cstar)
}

pub fn is_realization(t: &Tableau, c: &RelationSet) -> bool {
    realization_completion(t, c).is_some()
}

// Small denominators keep exact coefficient arithmetic cheap.
const PRIMES: [i64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Rationals with distinct prime denominators, hence pairwise non-integral differences.
pub fn fresh_anchor_values<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<Q> {
    assert!(count <= PRIMES.len(), "too many anchors requested");
    let mut primes = PRIMES[..count].to_vec();
    primes.shuffle(rng);
    primes[..count]
        .iter()
        .map(|&p| {
            let mut num = rng.gen_range(-5 * p..5 * p);
            if num % p == 0 {
                num += 1;
            }
            Q::new(BigInt::from(num), BigInt::from(p))
        })
        .collect()
}

/// A realization of `c` with in-component gaps of at least `gap`; positions
/// outside the support get their own anchors.
pub fn sample_realization<R: Rng + ?Sized>(c: &RelationSet, gap: i64, rng: &mut R) -> Result<Tableau> {
    let n = c.n();
    let cl = Closure::new(c);
    if !cl.feasible() {
        return Err(Error::UnsatisfiableSet);
    }
    if !extended_ok(c, &cl) {
        return Err(Error::CriticalSet);
    }
    let comps = cl.components().to_vec();
    let loose: Vec<Position> = positions(n).filter(|p| !cl.contains(*p)).collect();
    let values = fresh_anchor_values(comps.len() + loose.len(), rng);
    let mut table = AnchorTable::new();
    let ids: Vec<AnchorId> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| table.insert(format!("a{}", i + 1), v).expect("fresh anchors are independent"))
        .collect();
    let mut entries: BTreeMap<Position, Entry> = BTreeMap::new();
    for (ci, comp) in comps.iter().enumerate() {
        for (p, v) in linear_extension(&cl, comp, gap, rng) {
            entries.insert(p, Entry::new(ids[ci], v));
        }
    }
    for (i, p) in loose.iter().enumerate() {
        entries.insert(*p, Entry::new(ids[comps.len() + i], 0));
    }
    let t = Tableau::new(n, entries, Arc::new(table))?;
    debug_assert!(c.satisfied_by(&t));
    Ok(t)
}

/// A realization of `c` with `l_a - l_b = d` for every `(a, b, d)` in `gaps`, built
/// from the tightest solution of the constraints; `None` if there is none.
pub fn realization_with_gaps<R: Rng + ?Sized>(
    c: &RelationSet,
    gaps: &[(Position, Position, i64)],
    rng: &mut R,
) -> Result<Option<Tableau>> {
    let n = c.n();
    let cl = Closure::new(c);
    if !cl.feasible() {
        return Err(Error::UnsatisfiableSet);
    }
    if !extended_ok(c, &cl) {
        return Err(Error::CriticalSet);
    }
    let index = PositionIndex::new(n, c.support());
    let mut sys = DifferenceSystem::new(index.len());
    for r in c.iter() {
        sys.at_least(index.node(r.from).unwrap(), index.node(r.to).unwrap(), r.kind.slack());
    }
    for &(a, b, d) in gaps {
        match (index.node(a), index.node(b)) {
            (Some(x), Some(y)) if cl.same_component(a, b) => sys.equal(x, y, d),
            _ => return Ok(None),
        }
    }
    let Some(x) = sys.solve() else { return Ok(None) };
    let comps = cl.components().to_vec();
    let loose: Vec<Position> = positions(n).filter(|p| !cl.contains(*p)).collect();
    let values = fresh_anchor_values(comps.len() + loose.len(), rng);
    let mut table = AnchorTable::new();
    let ids: Vec<AnchorId> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| table.insert(format!("a{}", i + 1), v).expect("fresh anchors are independent"))
        .collect();
    let mut entries: BTreeMap<Position, Entry> = BTreeMap::new();
    for (ci, comp) in comps.iter().enumerate() {
        for p in comp {
            entries.insert(*p, Entry::new(ids[ci], x[index.node(*p).unwrap()]));
        }
    }
    for (i, p) in loose.iter().enumerate() {
        entries.insert(*p, Entry::new(ids[comps.len() + i], 0));
    }
    let t = Tableau::new(n, entries, Arc::new(table))?;
    Ok((t.is_noncritical() && is_realization(&t, c)).then_some(t))
}

/// Values along a random linear extension of the forced order, `gap` apart;
/// positions forced equal share a value.
fn linear_extension<R: Rng + ?Sized>(cl: &Closure, comp: &[Position], gap: i64, rng: &mut R) -> Vec<(Position, i64)> {
    let mut groups: Vec<Vec<Position>> = Vec::new();
    for &p in comp {
        match groups.iter_mut().find(|g| cl.ge(g[0], p) && cl.ge(p, g[0])) {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    let m = groups.len();
    let mut placed = vec![false; m];
    let mut out = Vec::new();
    for rank in 0..m {
        let ready: Vec<usize> = (0..m)
            .filter(|&g| !placed[g])
            .filter(|&g| (0..m).all(|h| h == g || placed[h] || !cl.ge(groups[h][0], groups[g][0])))
            .collect();
        let g = *ready.choose(rng).expect("forced order is acyclic");
        placed[g] = true;
        let v = gap * (m - rank) as i64;
        out.extend(groups[g].iter().map(|&p| (p, v)));
    }
    out
}

/// The same tableau with new values for every non-integral anchor.
pub fn reassign_anchors<R: Rng + ?Sized>(t: &Tableau, rng: &mut R) -> Result<Tableau> {
    let k = t.anchors().len() - 1;
    let table = t.anchors().reassigned(&fresh_anchor_values(k, rng))?;
    t.with_anchors(Arc::new(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::relations::calculus::tests::arb_extended;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn remark(a: Entry) -> Tableau {
        let anchors = Arc::new(AnchorTable::from_pairs([("a", ratio(1, 2)), ("b", ratio(1, 3))]).unwrap());
        let b = anchors.id("b").unwrap();
        let a = if a.anchor == AnchorId(1) { Entry::new(anchors.id("a").unwrap(), a.offset) } else { a };
        Tableau::from_rows(
            vec![vec![Entry::int(3), Entry::int(3), a], vec![Entry::int(4), Entry::int(2)], vec![Entry::new(b, 0)]],
            anchors,
        )
        .unwrap()
    }

    fn c1() -> RelationSet {
        RelationSet::new(3, [Relation::ge((3, 2), (2, 2)), Relation::gt((2, 1), (3, 1))])
    }

    #[test]
    fn realization_examples() {
        let t = remark(Entry::new(AnchorId(1), 0));
        assert!(c1().satisfied_by(&t));
        assert_eq!(realization_completion(&t, &c1()), Some(c1().with(Relation::ge((3, 1), (3, 2)))));
        assert!(!is_realization(&remark(Entry::int(5)), &c1()));
        let std = Tableau::from_int_rows(&[&[2, 0, -2], &[2, 0], &[1]]).unwrap();
        assert!(is_realization(&std, &RelationSet::standard(3)));
    }

    #[test]
    fn max_set_of_remark_tableau() {
        let t = remark(Entry::new(AnchorId(1), 0));
        let m = max_satisfied_set(&t).unwrap();
        assert!(c1().iter().all(|r| m.contains(r)));
        assert_eq!(m, c1().with(Relation::ge((3, 1), (3, 2))));
        let crit = Tableau::from_int_rows(&[&[3, 1, 0], &[2, 2], &[1]]).unwrap();
        assert_eq!(max_satisfied_set(&crit), Err(Error::CriticalTableau));
    }

    #[test]
    fn max_set_of_generic_tableau_is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = sample_realization(&RelationSet::empty(3), 1, &mut rng).unwrap();
        assert!(max_satisfied_set(&t).unwrap().is_empty());
    }

    #[test]
    fn max_set_of_wide_standard_tableau() {
        let t = Tableau::from_int_rows(&[&[12, 6, 0], &[9, 3], &[6]]).unwrap();
        let m = max_satisfied_set(&t).unwrap();
        assert_eq!(m, RelationSet::standard(3));
    }

    #[test]
    fn samples_satisfy_and_realize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = sample_realization(&RelationSet::standard(3), 2, &mut rng).unwrap();
        assert!(t.is_standard());
        assert!(is_realization(&t, &RelationSet::standard(3)));
        let g = sample_realization(&RelationSet::empty(2), 1, &mut rng).unwrap();
        assert_eq!(g.anchors().len(), 4);
        let crit = RelationSet::new(3, [Relation::ge((2, 1), (1, 1)), Relation::ge((2, 2), (1, 1))]);
        assert_eq!(sample_realization(&crit, 1, &mut rng), Err(Error::CriticalSet));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn sampled_realizations_round_trip(c in arb_extended(4, 10), seed in any::<u64>(), gap in 1i64..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = sample_realization(&c, gap, &mut rng).unwrap();
            prop_assert!(c.satisfied_by(&t));
            prop_assert!(is_realization(&t, &c));
            for comp in c.component_supports() {
                let comp: Vec<Position> = comp.into_iter().collect();
                for (i, &p) in comp.iter().enumerate() {
                    for &q in &comp[i + 1..] {
                        let d = t.int_diff(p, q).unwrap();
                        prop_assert!(d.abs() >= BigInt::from(gap) || d == BigInt::from(0));
                    }
                }
            }
            let r = reassign_anchors(&t, &mut rng).unwrap();
            prop_assert!(is_realization(&r, &c));
        }
    }
}

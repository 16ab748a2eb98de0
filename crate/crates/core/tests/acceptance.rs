//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsetlin::action::{enumerate_ball, BasisSpec, ExplicitBasis};
use tsetlin::gamma::{check_gamma_action, multiplicity_one_check};
use tsetlin::gg::{enumerate_families, gg_relation_set, lp_condition, theorem1_check, Verdict};
use tsetlin::rational::{q, ratio};
use tsetlin::relations::{
    canonical_form, directed_relations, equivalent, implies, is_admissible, is_noncritical_extended,
    is_reduced_form, is_satisfiable, reassign_anchors, realization_with_gaps, reduce, rr_reachable,
    sample_realization,
};
use tsetlin::tableau::enumerate_standard_int;
use tsetlin::verifier::{
    check_defining_relations, cross_validate, ef_defect, frz_check, is_irreducible, tableau_module_check,
};
use tsetlin::{AnchorTable, Entry, GroupElement, Position, Relation, RelationSet, Tableau};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

/// Weyl's dimension formula in the shifted top row.
fn weyl_dimension(top: &[i64]) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..top.len() {
        for j in i + 1..top.len() {
            num *= top[i] - top[j];
            den *= (j - i) as i64;
        }
    }
    num / den
}

fn dominant_weights(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                let hi = w.last().copied().unwrap_or(max);
                (0..=hi).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn standard_spec(top: &[i64]) -> BasisSpec {
    let tabs = enumerate_standard_int(top);
    BasisSpec::new(RelationSet::standard(top.len()), tabs[0].clone()).unwrap()
}

fn criterion_1() -> Outcome {
    let mut modules = 0;
    for n in 1..=3 {
        for lambda in dominant_weights(n, 3) {
            let top: Vec<i64> = lambda.iter().enumerate().map(|(i, l)| l - i as i64).collect();
            let tabs = enumerate_standard_int(&top);
            ensure!(tabs.len() as i64 == weyl_dimension(&top), "λ={lambda:?}: {} tableaux", tabs.len());
            if top == [2, 0, -2] {
                ensure!(tabs.len() == 8, "top (2,0,-2) gives {} tableaux", tabs.len());
            }
            let b = standard_spec(&top);
            let ball = enumerate_ball(&b, 12);
            ensure!(ball.len() == tabs.len(), "λ={lambda:?}: ball misses standard tableaux");
            let r = check_defining_relations(&b, 12).map_err(e)?;
            ensure!(r.passed, "λ={lambda:?}: {:?}", r.failures.first().map(|f| &f.relation));
            for t in &tabs {
                for m in 1..=n {
                    for k in 1..=m {
                        let (ok, d) = check_gamma_action(&b, t, m, k).map_err(e)?;
                        ensure!(ok, "λ={lambda:?}: c{m}{k} defect {d} at {}", t.compact());
                    }
                }
            }
            modules += 1;
        }
    }
    Ok(format!("{modules} finite-dimensional modules, dimensions, relations and Γ exact"))
}

fn sigma_key(c: &RelationSet) -> RelationSet {
    let r = reduce(c).unwrap_or_else(|_| c.clone());
    canonical_form(&r).and_then(|x| reduce(&x)).unwrap_or(r)
}

fn subsets_up_to(pool: &[Relation], max: usize, mut f: impl FnMut(&[Relation])) {
    fn go(pool: &[Relation], start: usize, max: usize, cur: &mut Vec<Relation>, f: &mut dyn FnMut(&[Relation])) {
        f(cur);
        if cur.len() == max {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, i + 1, max, cur, f);
            cur.pop();
        }
    }
    go(pool, 0, max, &mut Vec::new(), &mut f);
}

fn criterion_2() -> Outcome {
    let pool = directed_relations(3);
    let mut classes: BTreeSet<RelationSet> = BTreeSet::new();
    let mut subsets = 0usize;
    subsets_up_to(&pool, 6, |rels| {
        subsets += 1;
        let c = RelationSet::new(3, rels.iter().copied());
        if c.is_valid() && is_satisfiable(&c) && is_noncritical_extended(&c).unwrap_or(false) {
            classes.insert(sigma_key(&c));
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut admissible, mut refuted, mut excluded) = (0, 0, 0);
    for c in &classes {
        let r = cross_validate(c, 3, 2, 3, &mut rng).map_err(e)?;
        ensure!(r.agrees(), "disagreement on {c}: predicted {}, witness {:?}", r.predicted_admissible, r.witness);
        match (r.predicted_admissible, r.empirical_module) {
            (true, _) => {
                ensure!(r.realizations_tested >= 9, "{c}: only {} realizations", r.realizations_tested);
                admissible += 1;
            }
            (false, Some(false)) => {
                ensure!(r.witness.as_ref().is_some_and(|w| !w.defect.is_zero()), "{c}: no defect");
                refuted += 1;
            }
            (false, _) => excluded += 1,
        }
    }
    Ok(format!(
        "{subsets} subsets, {} noncritical classes: {admissible} admissible verified, {refuted} non-admissible refuted, {excluded} not maximal for any tested realization",
        classes.len()
    ))
}

fn diagram_witness(c: &RelationSet, gaps: &[((usize, usize), (usize, usize), i64)], k: usize) -> Result<(), String> {
    let gaps: Vec<(Position, Position, i64)> =
        gaps.iter().map(|&(a, b, d)| (Position::new(a.0, a.1), Position::new(b.0, b.1), d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = realization_with_gaps(c, &gaps, &mut rng).map_err(e)?.ok_or_else(|| format!("{c}: no witness tableau"))?;
    let b = BasisSpec::new(c.clone(), t.clone()).map_err(e)?;
    let d = ef_defect(&b, k, &t).map_err(e)?;
    ensure!(!d.is_zero(), "{c}: [e{k},f{k}] - h{k} vanishes at {}", t.compact());
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for n in 3..=4 {
        for k in 1..n {
            for j in 2..=k {
                let c = RelationSet::new(n, [Relation::gt((k, j - 1), (k + 1, j)), Relation::ge((k + 1, j), (k, j))]);
                diagram_witness(&c, &[((k, j - 1), (k + 1, j), 1), ((k + 1, j), (k, j), 0)], k)?;
                cases += 1;
            }
            if k >= 2 {
                for j in 1..k {
                    let c =
                        RelationSet::new(n, [Relation::ge((k, j), (k - 1, j)), Relation::gt((k - 1, j), (k, j + 1))]);
                    diagram_witness(&c, &[((k, j), (k - 1, j), 0), ((k - 1, j), (k, j + 1), 1)], k)?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} diagram placements, all with nonzero [e_k,f_k]-h_k"))
}

fn remark() -> (RelationSet, Tableau) {
    let anchors = std::sync::Arc::new(AnchorTable::from_pairs([("a", ratio(1, 2)), ("b", ratio(1, 3))]).unwrap());
    let (a, b) = (anchors.id("a").unwrap(), anchors.id("b").unwrap());
    let t = Tableau::from_rows(
        vec![vec![Entry::int(3), Entry::int(3), Entry::new(a, 0)], vec![Entry::int(4), Entry::int(2)], vec![Entry::new(b, 0)]],
        anchors,
    )
    .unwrap();
    (RelationSet::new(3, [Relation::ge((3, 2), (2, 2)), Relation::gt((2, 1), (3, 1))]), t)
}

fn criterion_4() -> Outcome {
    let (c, t) = remark();
    let b = BasisSpec::new(c.clone(), t.clone()).map_err(e)?;
    let r = check_defining_relations(&b, 3).map_err(e)?;
    ensure!(r.passed, "verification failed: {:?}", r.failures.first());
    let frz = frz_check(&t).map_err(e)?;
    let set = frz.set().ok_or("frz_check found no set")?;
    let without_top = RelationSet::new(3, set.iter().filter(|r| !r.is_top(3)).copied());
    ensure!(without_top == c, "frz_check returned {set}");
    ensure!(is_irreducible(&c, &t).map_err(e)?, "not irreducible");
    Ok(format!("{} tableaux at radius 3, frz {set}, irreducible", r.tableaux))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut runs = 0;
    let mut witnesses = 0;
    for top in [[3, 1, -1], [5, 2, -2]] {
        let top: Vec<_> = top.iter().map(|&x| q(x)).collect();
        for fam in enumerate_families(3) {
            let r = theorem1_check(&fam, &top, 2, &mut rng).map_err(e)?;
            let c = gg_relation_set(&fam);
            ensure!(
                r.verdict.is_module() == lp_condition(&fam) && lp_condition(&fam) == is_admissible(&c),
                "{fam}: module={} lp={} admissible={}",
                r.verdict.is_module(),
                lp_condition(&fam),
                is_admissible(&c)
            );
            if !r.verdict.is_module() {
                match &r.verdict {
                    Verdict::NotModule { defect, .. } if !defect.is_zero() => witnesses += 1,
                    v => return Err(format!("{fam}: NotModule without witness: {v:?}")),
                }
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} family/top-row runs agree three ways, {witnesses} witnesses"))
}

fn section6_example() -> (RelationSet, Tableau) {
    let mut rels = vec![
        Relation::ge((4, 1), (4, 2)),
        Relation::ge((4, 2), (4, 3)),
        Relation::ge((4, 3), (4, 4)),
        Relation::ge((4, 2), (3, 1)),
        Relation::gt((3, 3), (4, 3)),
    ];
    for k in 1..=2 {
        for i in 1..=k {
            rels.push(Relation::ge((k + 1, i), (k, i)));
            rels.push(Relation::gt((k, i), (k + 1, i + 1)));
        }
    }
    let t = Tableau::from_int_rows(&[&[4, 3, 0, -1], &[3, 2, 1], &[3, 2], &[3]]).unwrap();
    (RelationSet::new(4, rels), t)
}

fn criterion_6() -> Outcome {
    let (c, t) = section6_example();
    let b = BasisSpec::new(c.clone(), t).map_err(e)?;
    let r = check_defining_relations(&b, 2).map_err(e)?;
    ensure!(r.passed, "relations fail: {:?}", r.failures.first());
    let ball = enumerate_ball(&b, 2);
    let m = tableau_module_check(&ball).map_err(e)?;
    ensure!(m.noncritical && m.module_relations, "n=4 example: {m:?}");
    ensure!(!m.gamma_formula, "n=4 example: Γ acts by the formula");
    let g = &m.gamma_failures[0];

    let one = Tableau::from_int_rows(&[&[3, 0], &[2]]).unwrap();
    let r1 = tableau_module_check(std::slice::from_ref(&one)).map_err(e)?;
    ensure!(r1.noncritical && r1.module_relations && r1.multiplicity_one, "(3,0|2): {r1:?}");
    let b1 = ExplicitBasis::new([one.clone()]).map_err(e)?;
    let h = tsetlin::action::coeff_h(&b1, 1, &one);
    ensure!(h == q(0), "h_1 eigenvalue {h}");
    Ok(format!(
        "n=4 ball of {} passes relations, Γ mismatch at c{}{}; (3,0|2) passes (i)-(iii) with h_1 = 0, (iv) {}",
        ball.len(),
        g.m,
        g.k,
        if r1.gamma_formula { "holds" } else { "fails (c22 T = 8T vs γ22 = 12)" }
    ))
}

fn generic_specs() -> Vec<BasisSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut out = Vec::new();
    for n in 2..=3 {
        let seed = sample_realization(&RelationSet::empty(n), 1, &mut rng).unwrap();
        for a in 0..3 {
            let t = if a == 0 { seed.clone() } else { reassign_anchors(&seed, &mut rng).unwrap() };
            out.push(BasisSpec::new(RelationSet::empty(n), t).unwrap());
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let specs = generic_specs();
    let mut tabs = 0;
    for b in &specs {
        let r = check_defining_relations(b, 2).map_err(e)?;
        ensure!(r.passed, "generic n={} fails: {:?}", b.n_rows(), r.failures.first());
        tabs += r.tableaux;
    }
    Ok(format!("{} generic specs (n=2,3 × 3 anchor assignments), {tabs} tableaux", specs.len()))
}

trait Rows {
    fn n_rows(&self) -> usize;
}

impl Rows for BasisSpec {
    fn n_rows(&self) -> usize {
        self.seed().n()
    }
}

fn random_set<R: Rng>(n: usize, rng: &mut R) -> RelationSet {
    let pool = directed_relations(n);
    loop {
        let size = rng.gen_range(0..=pool.len().min(8));
        let c = RelationSet::new(n, pool.choose_multiple(rng, size).copied());
        if is_satisfiable(&c) && is_noncritical_extended(&c).unwrap_or(false) {
            return c;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    for i in 0..200 {
        let c = random_set(2 + i % 3, &mut rng);
        let r = reduce(&c).map_err(e)?;
        ensure!(reduce(&r).map_err(e)? == r, "reduce not idempotent on {c}");
        ensure!(equivalent(&c, &r).map_err(e)?, "reduce changed the meaning of {c}");
        ensure!(is_reduced_form(&r), "{r} is not in reduced form");
    }
    let (mut same, mut different) = (0, 0);
    for i in 0..100 {
        let n = 2 + i % 3;
        let c1 = random_set(n, &mut rng);
        let c2 = if i % 2 == 0 {
            // Same meaning, different presentation: add implied relations.
            let implied: Vec<Relation> = directed_relations(n)
                .into_iter()
                .filter(|r| implies(&c1, &RelationSet::new(n, [*r])).unwrap_or(false))
                .collect();
            let extra = implied.choose_multiple(&mut rng, 2).copied();
            RelationSet::new(n, c1.iter().copied().chain(extra))
        } else {
            random_set(n, &mut rng)
        };
        let eq = equivalent(&c1, &c2).map_err(e)?;
        ensure!((reduce(&c1).map_err(e)? == reduce(&c2).map_err(e)?) == eq, "{c1} vs {c2}");
        if eq {
            same += 1;
        } else {
            different += 1;
        }
    }
    Ok(format!("200 sets reduce correctly; 100 pairs ({same} equivalent, {different} not) match"))
}

fn criterion_9() -> Outcome {
    let sets = rr_reachable(3, 500);
    let mut relabeled = 0;
    for c in &sets {
        ensure!(is_admissible(c), "reachable set {c} is not admissible");
        for k in 1..=3 {
            for i in 1..=k {
                for j in i + 1..=k {
                    let s = c.sigma_action(&GroupElement::swap(3, k, i, j));
                    ensure!(is_admissible(&s), "relabeling of {c} is {s}, not admissible");
                    relabeled += 1;
                }
            }
        }
    }
    Ok(format!("{} reachable sets and {relabeled} relabelings admissible", sets.len()))
}

fn criterion_10() -> Outcome {
    let mut specs: Vec<BasisSpec> = Vec::new();
    for n in 1..=3 {
        for lambda in dominant_weights(n, 3) {
            let top: Vec<i64> = lambda.iter().enumerate().map(|(i, l)| l - i as i64).collect();
            specs.push(standard_spec(&top));
        }
    }
    let (c, t) = remark();
    specs.push(BasisSpec::new(c, t).map_err(e)?);
    specs.extend(generic_specs());
    for b in &specs {
        ensure!(multiplicity_one_check(b, 3), "repeated fingerprint around {}", b.seed().compact());
    }
    Ok(format!("{} specs, fingerprints distinct on radius-3 balls", specs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("finite-dimensional ground truth", criterion_1),
        ("admissibility vs verification sweep", criterion_2),
        ("non-admissible diagrams", criterion_3),
        ("two-anchor module example", criterion_4),
        ("Gelfand-Graev / Lemire-Patera agreement", criterion_5),
        ("tableaux-module phenomena", criterion_6),
        ("generic modules", criterion_7),
        ("reduction calculus", criterion_8),
        ("relation removal", criterion_9),
        ("multiplicity one", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

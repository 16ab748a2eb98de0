//! Exact verification of the `gl_n` relations on finite sets of basis tableaux.
//!
//! Each relation applied to one tableau yields a finite exact vector, so a
//! check on a bounded set of tableaux involves no truncation. A nonzero defect
//! is a proof that the span is not a module.

use std::collections::BTreeSet;

use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::action::{enumerate_ball, Basis, BasisSpec, Engine, ExplicitBasis, FormalVector, Gen};
use crate::error::{Error, Result};
use crate::gamma::{distinct_fingerprints, gamma_defect, gamma_value};
use crate::rational::{q, Q};
use crate::relations::{
    equivalent, f_failures, is_admissible, is_noncritical_extended, is_realization, max_satisfied_set,
    realization_completion, realization_with_gaps, reassign_anchors, reduce, sample_realization, Relation,
    RelationSet,
};
use crate::tableau::{AnchorTable, Entry, Position, Tableau};

/// `Σ c·word` where words act right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: String,
    pub terms: Vec<(Q, Vec<Gen>)>,
}

fn commutator(a: Gen, b: Gen) -> Vec<(Q, Vec<Gen>)> {
    vec![(q(1), vec![a, b]), (q(-1), vec![b, a])]
}

fn cartan(i: usize, j: usize) -> i64 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// All instances of the defining relations in Chevalley generators, with
/// `[e_i, f_j] = δ_ij h_i` first.
pub fn defining_relations(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let r = 1..n;
    for i in r.clone() {
        for j in r.clone() {
            let mut terms = commutator(Gen::E(i), Gen::F(j));
            if i == j {
                terms.push((q(-1), vec![Gen::H(i)]));
            }
            out.push(RelationInstance { id: format!("[e{i},f{j}]"), terms });
        }
    }
    for i in r.clone() {
        for j in r.clone().filter(|&j| j > i) {
            out.push(RelationInstance { id: format!("[h{i},h{j}]"), terms: commutator(Gen::H(i), Gen::H(j)) });
        }
    }
    for i in r.clone() {
        for j in r.clone() {
            let a = cartan(i, j);
            let mut terms = commutator(Gen::H(i), Gen::E(j));
            terms.push((q(-a), vec![Gen::E(j)]));
            out.push(RelationInstance { id: format!("[h{i},e{j}]"), terms });
            let mut terms = commutator(Gen::H(i), Gen::F(j));
            terms.push((q(a), vec![Gen::F(j)]));
            out.push(RelationInstance { id: format!("[h{i},f{j}]"), terms });
        }
    }
    for k in 1..=n {
        for j in r.clone() {
            let w = (k == j) as i64 - (k == j + 1) as i64;
            let mut terms = commutator(Gen::Diag(k), Gen::E(j));
            terms.push((q(-w), vec![Gen::E(j)]));
            out.push(RelationInstance { id: format!("[E{k},{k},e{j}]"), terms });
            let mut terms = commutator(Gen::Diag(k), Gen::F(j));
            terms.push((q(w), vec![Gen::F(j)]));
            out.push(RelationInstance { id: format!("[E{k},{k},f{j}]"), terms });
        }
    }
    for i in r.clone() {
        for j in r.clone() {
            if i.abs_diff(j) == 1 {
                for (name, g) in [("e", Gen::E as fn(usize) -> Gen), ("f", Gen::F as fn(usize) -> Gen)] {
                    let terms = vec![
                        (q(1), vec![g(i), g(i), g(j)]),
                        (q(-2), vec![g(i), g(j), g(i)]),
                        (q(1), vec![g(j), g(i), g(i)]),
                    ];
                    out.push(RelationInstance { id: format!("[{name}{i},[{name}{i},{name}{j}]]"), terms });
                }
            } else if j > i + 1 {
                out.push(RelationInstance { id: format!("[e{i},e{j}]"), terms: commutator(Gen::E(i), Gen::E(j)) });
                out.push(RelationInstance { id: format!("[f{i},f{j}]"), terms: commutator(Gen::F(i), Gen::F(j)) });
            }
        }
    }
    out
}

/// `[E_ij, E_kl] - δ_jk E_il + δ_li E_kj` for all index choices.
pub fn matrix_unit_relations(n: usize) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let mut terms = commutator(Gen::unit(i, j), Gen::unit(k, l));
                    if j == k {
                        terms.push((q(-1), vec![Gen::unit(i, l)]));
                    }
                    if l == i {
                        terms.push((q(1), vec![Gen::unit(k, j)]));
                    }
                    out.push(RelationInstance { id: format!("[E{i},{j},E{k},{l}]"), terms });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub relation: String,
    pub tableau: Tableau,
    pub defect: FormalVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relations: RelationSet,
    pub seed: Tableau,
    pub radius: u32,
    pub tableaux: usize,
    pub checks: usize,
    pub failure_count: usize,
    /// The first failures found, at most `MAX_RECORDED`.
    pub failures: Vec<Failure>,
    pub passed: bool,
}

pub const MAX_RECORDED: usize = 20;

/// Evaluates every relation on every tableau; returns the check count and the failures.
pub fn check_relations_on(
    eng: &mut Engine,
    rels: &[RelationInstance],
    tabs: &[Tableau],
    stop_at_first: bool,
) -> Result<(usize, Vec<Failure>)> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for t in tabs {
        for r in rels {
            checks += 1;
            let d = eng.evaluate(&r.terms, t)?;
            if !d.is_zero() {
                failures.push(Failure { relation: r.id.clone(), tableau: t.clone(), defect: d });
                if stop_at_first {
                    return Ok((checks, failures));
                }
            }
        }
    }
    Ok((checks, failures))
}

pub fn check_defining_relations(b: &BasisSpec, radius: u32) -> Result<VerificationReport> {
    if !b.is_realization() {
        return Err(Error::NotRealization);
    }
    let ball = enumerate_ball(b, radius);
    let mut eng = Engine::new(b);
    let (checks, failures) = check_relations_on(&mut eng, &defining_relations(b.n()), &ball, false)?;
    Ok(VerificationReport {
        relations: b.relations().clone(),
        seed: b.seed().clone(),
        radius,
        tableaux: ball.len(),
        checks,
        failure_count: failures.len(),
        passed: failures.is_empty(),
        failures: failures.into_iter().take(MAX_RECORDED).collect(),
    })
}

/// The first candidate in the basis on which some defining relation fails.
pub fn find_violation(b: &dyn Basis, candidates: &[Tableau]) -> Result<Option<Failure>> {
    let mut eng = Engine::new(b);
    let rels = defining_relations(b.n());
    let members: Vec<Tableau> = candidates.iter().filter(|t| b.contains(t)).cloned().collect();
    let (_, mut failures) = check_relations_on(&mut eng, &rels, &members, true)?;
    Ok(failures.pop())
}

/// Whether `C` is the whole of what `t` satisfies, up to the completion `C*`.
pub fn is_maximal_for(c: &RelationSet, t: &Tableau) -> bool {
    let Some(cstar) = realization_completion(t, c) else { return false };
    let Ok(max) = max_satisfied_set(t) else { return false };
    match reduce(&cstar) {
        Ok(r) => r == max || equivalent(&r, &max).unwrap_or(false),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub relations: RelationSet,
    pub predicted_admissible: bool,
    /// `Some(true)` if every tested realization verified, `Some(false)` if a
    /// violation was found, `None` if no realization qualified for testing.
    pub empirical_module: Option<bool>,
    pub realizations_tested: usize,
    pub witness: Option<Failure>,
}

impl CrossValidation {
    pub fn agrees(&self) -> bool {
        self.empirical_module.map_or(true, |m| m == self.predicted_admissible)
    }
}

/// Realizations on which a non-admissible set is expected to fail: one per
/// failing adjacent pair placed at distance 1, then random ones.
fn witness_candidates<R: Rng + ?Sized>(c: &RelationSet, samples: usize, rng: &mut R) -> Result<Vec<Tableau>> {
    let mut out = Vec::new();
    for (a, b) in f_failures(c)? {
        if let Some(t) = realization_with_gaps(c, &[(a, b, 1)], rng)? {
            out.push(t);
        }
    }
    for s in 0..samples {
        out.push(sample_realization(c, 1 + (s % 2) as i64, rng)?);
    }
    Ok(out)
}

/// Compares the admissibility predicate with bounded verification. Admissible
/// sets are verified on sampled realizations; non-admissible sets are searched
/// for a violation on realizations for which they are maximal.
pub fn cross_validate<R: Rng + ?Sized>(
    c: &RelationSet,
    samples: usize,
    radius: u32,
    anchor_assignments: usize,
    rng: &mut R,
) -> Result<CrossValidation> {
    if !is_noncritical_extended(c)? {
        return Err(Error::CriticalSet);
    }
    let predicted = is_admissible(c);
    let mut out = CrossValidation {
        relations: c.clone(),
        predicted_admissible: predicted,
        empirical_module: None,
        realizations_tested: 0,
        witness: None,
    };
    let seeds = if predicted {
        (0..samples).map(|s| sample_realization(c, 1 + (s % 2) as i64, rng)).collect::<Result<Vec<_>>>()?
    } else {
        witness_candidates(c, samples, rng)?.into_iter().filter(|t| is_maximal_for(c, t)).collect()
    };
    for seed in seeds {
        for a in 0..anchor_assignments.max(1) {
            let t = if a == 0 { seed.clone() } else { reassign_anchors(&seed, rng)? };
            let b = BasisSpec::new(c.clone(), t)?;
            out.realizations_tested += 1;
            let ball = enumerate_ball(&b, radius);
            let mut eng = Engine::new(&b);
            let (_, mut f) = check_relations_on(&mut eng, &defining_relations(c.n()), &ball, true)?;
            if let Some(w) = f.pop() {
                out.empirical_module = Some(false);
                out.witness = Some(w);
                return Ok(out);
            }
            out.empirical_module = Some(true);
        }
    }
    Ok(out)
}

/// Irreducible exactly when `C` is everything `t` satisfies.
pub fn is_irreducible(c: &RelationSet, t: &Tableau) -> Result<bool> {
    if !c.satisfied_by(t) {
        return Err(Error::NotRealization);
    }
    Ok(is_maximal_for(c, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "sets", rename_all = "snake_case")]
pub enum FrzOutcome {
    /// The reduced maximal satisfied set is admissible.
    Maximal(RelationSet),
    /// The maximal satisfied set is not admissible; this is the unique maximal
    /// admissible set realized by the tableau.
    Unique(RelationSet),
    Ambiguous(Vec<RelationSet>),
    None,
}

impl FrzOutcome {
    pub fn set(&self) -> Option<&RelationSet> {
        match self {
            FrzOutcome::Maximal(c) | FrzOutcome::Unique(c) => Some(c),
            _ => None,
        }
    }
}

const FRZ_SUBSET_LIMIT: usize = 16;

pub fn frz_check(t: &Tableau) -> Result<FrzOutcome> {
    let max = max_satisfied_set(t)?;
    if is_admissible(&max) {
        return Ok(FrzOutcome::Maximal(max));
    }
    let rels: Vec<Relation> = max.iter().copied().collect();
    if rels.len() > FRZ_SUBSET_LIMIT {
        return Err(Error::BudgetExceeded(format!("{} relations exceed the subset search limit", rels.len())));
    }
    let mut found: Vec<BTreeSet<Relation>> = Vec::new();
    for mask in (0u32..(1 << rels.len())).rev() {
        let sub: BTreeSet<Relation> = (0..rels.len()).filter(|i| mask >> i & 1 == 1).map(|i| rels[i]).collect();
        if found.iter().any(|f| sub.is_subset(f)) {
            continue;
        }
        let c = RelationSet::new(t.n(), sub.iter().copied());
        if is_admissible(&c) && is_realization(t, &c) {
            found.push(sub);
        }
    }
    let maximal: Vec<RelationSet> = found
        .iter()
        .filter(|s| !found.iter().any(|o| o != *s && s.is_subset(o)))
        .map(|s| RelationSet::new(t.n(), s.iter().copied()))
        .collect();
    Ok(match maximal.len() {
        0 => FrzOutcome::None,
        1 => FrzOutcome::Unique(maximal.into_iter().next().unwrap()),
        _ => FrzOutcome::Ambiguous(maximal),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauModuleReport {
    pub size: usize,
    pub noncritical: bool,
    pub module_relations: bool,
    pub multiplicity_one: bool,
    pub gamma_formula: bool,
    pub relation_failures: Vec<Failure>,
    pub gamma_failures: Vec<GammaFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaFailure {
    pub m: usize,
    pub k: usize,
    pub tableau: Tableau,
    /// Absent when `γ_mk` is singular at the tableau.
    pub defect: Option<FormalVector>,
}

impl TableauModuleReport {
    pub fn all_hold(&self) -> bool {
        self.noncritical && self.module_relations && self.multiplicity_one && self.gamma_formula
    }
}

/// Conditions (i)-(iv) on the span of an explicit list closed under the gated action.
pub fn tableau_module_check(basis: &[Tableau]) -> Result<TableauModuleReport> {
    let b = ExplicitBasis::new(basis.iter().cloned())?;
    let tabs: Vec<Tableau> = b.members().cloned().collect();
    let n = b.n();
    let mut eng = Engine::new(&b);
    let noncritical = tabs.iter().all(Tableau::is_noncritical);
    let (_, relation_failures) = if noncritical {
        check_relations_on(&mut eng, &defining_relations(n), &tabs, false)?
    } else {
        (0, Vec::new())
    };
    let mut gamma_failures = Vec::new();
    if noncritical {
        for t in &tabs {
            for m in 1..=n {
                for k in 1..=m {
                    if gamma_value(m, k, &t.row_values(m)).is_err() {
                        gamma_failures.push(GammaFailure { m, k, tableau: t.clone(), defect: None });
                        continue;
                    }
                    let d = gamma_defect(&mut eng, m, k, t)?;
                    if !d.is_zero() {
                        gamma_failures.push(GammaFailure { m, k, tableau: t.clone(), defect: Some(d) });
                    }
                }
            }
        }
    }
    Ok(TableauModuleReport {
        size: tabs.len(),
        noncritical,
        module_relations: noncritical && relation_failures.is_empty(),
        multiplicity_one: distinct_fingerprints(&tabs),
        gamma_formula: noncritical && gamma_failures.is_empty(),
        relation_failures: relation_failures.into_iter().take(MAX_RECORDED).collect(),
        gamma_failures: gamma_failures.into_iter().take(MAX_RECORDED).collect(),
    })
}

/// The admissible set and seed of the highest weight module `L(λ)`: top row
/// `l_ni = λ_i - i + 1`, lower rows copying it, and in each integral class of
/// the top row the chain `(k+1,i) ≥ (k,i) > (k+1,i')` with `i'` the next smaller entry.
pub fn hw_module_build(lambda: &[Q]) -> Result<(RelationSet, Tableau)> {
    let n = lambda.len();
    if n < 2 {
        return Err(Error::Shape("highest weight needs n ≥ 2".into()));
    }
    let top: Vec<Q> = lambda.iter().enumerate().map(|(i, x)| x - q(i as i64)).collect();
    let integral = |a: &Q, b: &Q| (a - b).is_integer();
    for i in 0..n {
        for j in i + 1..n {
            if !integral(&top[i], &top[j]) {
                continue;
            }
            let bad = if j < n - 1 { top[i] <= top[j] } else { top[i] == top[j] };
            if bad {
                return Err(Error::PreconditionFailed(format!(
                    "λ_{} - λ_{} = {} violates the hypothesis",
                    i + 1,
                    j + 1,
                    crate::rational::fmt_q(&(&lambda[i] - &lambda[j]))
                )));
            }
        }
    }
    let mut table = AnchorTable::new();
    let mut ids = Vec::with_capacity(n);
    for x in &top {
        let id = match table.class_of(x) {
            Some(id) => id,
            None => {
                let base = x - Q::from_integer(x.floor().to_integer());
                table.insert(format!("c{}", table.len()), base)?
            }
        };
        ids.push(id);
    }
    let entry = |i: usize| Entry::new(ids[i], (&top[i] - table.value(ids[i])).to_integer());
    let rows: Vec<Vec<Entry>> = (1..=n).rev().map(|k| (0..k).map(entry).collect()).collect();
    let t = Tableau::from_rows(rows, std::sync::Arc::new(table.clone()))?;

    let mut rels = Vec::new();
    for k in 1..n {
        for i in 0..k {
            rels.push(Relation::ge((k + 1, i + 1), (k, i + 1)));
            let next = (0..=k)
                .filter(|&j| j != i && ids[j] == ids[i] && top[j] < top[i])
                .max_by(|&a, &b| top[a].cmp(&top[b]));
            if let Some(j) = next {
                rels.push(Relation::gt((k, i + 1), (k + 1, j + 1)));
            }
        }
    }
    let c = RelationSet::new(n, rels);
    if !is_admissible(&c) {
        return Err(Error::InvalidSet(format!("constructed set is not admissible: {c}")));
    }
    if !is_realization(&t, &c) {
        return Err(Error::NotRealization);
    }
    let b = BasisSpec::new(c.clone(), t.clone())?;
    let mut eng = Engine::new(&b);
    for k in 1..n {
        if !eng.apply(Gen::E(k), &FormalVector::basis(t.clone()))?.is_zero() {
            return Err(Error::PreconditionFailed(format!("e_{k} does not kill the seed")));
        }
    }
    Ok((c, t))
}

/// `[e_k, f_k] - h_k` at `t`.
pub fn ef_defect(b: &dyn Basis, k: usize, t: &Tableau) -> Result<FormalVector> {
    let mut terms = commutator(Gen::E(k), Gen::F(k));
    terms.push((-Q::one(), vec![Gen::H(k)]));
    Engine::new(b).evaluate(&terms, t)
}

/// Positions whose entries equal `value` in row `k`.
pub fn positions_with_value(t: &Tableau, k: usize, value: &Q) -> Vec<Position> {
    (1..=k).map(|i| Position::new(k, i)).filter(|p| &t.value(*p) == value).collect()
}

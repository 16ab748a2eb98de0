//! Gelfand-Graev continuation: index families, their relation sets, the
//! Lemire-Patera condition and an executable check of the module criterion.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::action::{BasisSpec, FormalVector};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::relations::{is_admissible, is_realization, Relation, RelationSet};
use crate::tableau::{AnchorTable, Entry, Position, Tableau};
use crate::verifier::{check_defining_relations, ef_defect, Failure, VerificationReport};

/// One pair `(i_k, i_k')` per `k = 1..n-1`, with `0 ≤ i_k < i_k' ≤ k+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct IndexFamily {
    pairs: Vec<(usize, usize)>,
}

impl IndexFamily {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        for (idx, &(i, ip)) in pairs.iter().enumerate() {
            let k = idx + 1;
            if i > k || ip < 1 || ip > k + 1 || i >= ip {
                return Err(Error::Shape(format!("invalid pair ({i},{ip}) for k={k}")));
            }
        }
        Ok(IndexFamily { pairs })
    }

    /// The family whose relation set is the standard one.
    pub fn standard(n: usize) -> Self {
        IndexFamily { pairs: (1..n).map(|k| (0, k + 1)).collect() }
    }

    pub fn n(&self) -> usize {
        self.pairs.len() + 1
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `(i_k, i_k')`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k - 1]
    }
}

impl TryFrom<Vec<(usize, usize)>> for IndexFamily {
    type Error = Error;
    fn try_from(v: Vec<(usize, usize)>) -> Result<Self> {
        IndexFamily::new(v)
    }
}

impl From<IndexFamily> for Vec<(usize, usize)> {
    fn from(f: IndexFamily) -> Self {
        f.pairs
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(i, j)| format!("[{i},{j}]")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn enumerate_families(n: usize) -> Vec<IndexFamily> {
    if n < 2 {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for k in 1..n {
        let mut next = Vec::new();
        for prefix in &out {
            for i in 0..=k {
                for ip in i + 1..=k + 1 {
                    let mut p: Vec<(usize, usize)> = prefix.clone();
                    p.push((i, ip));
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|pairs| IndexFamily { pairs }).collect()
}

/// The adjacent-row part of the GG inequalities. Row `k` entry `j` sits in
/// `(l_{k+1,j}, l_{k+1,j-1}]` for `j ≤ i_k`, in `(l_{k+1,j+1}, l_{k+1,j}]` for
/// `i_k < j < i_k'` and in `(l_{k+1,j+2}, l_{k+1,j+1}]` for `j ≥ i_k'`;
/// bounds outside row `k+1` are dropped. The top row is chained by
/// `(n,i) ≥ (n,i+1)`; its strictness is checked on the fixed top row by
/// [`theorem1_check`].
pub fn gg_relation_set(fam: &IndexFamily) -> RelationSet {
    let n = fam.n();
    let mut rels: Vec<Relation> = (1..n).map(|i| Relation::ge((n, i), (n, i + 1))).collect();
    for k in 1..n {
        let (i, ip) = fam.pair(k);
        for j in 1..=k {
            let (upper, lower) = if j <= i {
                (j.checked_sub(1), j)
            } else if j < ip {
                (Some(j), j + 1)
            } else {
                (Some(j + 1), j + 2)
            };
            if let Some(u) = upper.filter(|&u| u >= 1) {
                rels.push(Relation::ge((k + 1, u), (k, j)));
            }
            if lower <= k + 1 {
                rels.push(Relation::gt((k, j), (k + 1, lower)));
            }
        }
    }
    RelationSet::new(n, rels)
}

fn lp_allowed(fam: &IndexFamily, k: usize) -> [usize; 4] {
    let (i, ip) = fam.pair(k);
    [0, i, ip - 1, k]
}

/// Row indices `k ≥ 2` at which `{i_{k-1}, i_{k-1}'} ⊆ {0, i_k, i_k'-1, k}` fails.
pub fn lp_failures(fam: &IndexFamily) -> Vec<usize> {
    (2..fam.n())
        .filter(|&k| {
            let allowed = lp_allowed(fam, k);
            let (a, b) = fam.pair(k - 1);
            !(allowed.contains(&a) && allowed.contains(&b))
        })
        .collect()
}

pub fn lp_condition(fam: &IndexFamily) -> bool {
    lp_failures(fam).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Module { report: Box<VerificationReport> },
    NotModule { row: usize, witness: Tableau, defect: FormalVector },
    /// No witness was found and bounded verification failed elsewhere.
    NotModuleOther { failure: Box<Failure> },
}

impl Verdict {
    pub fn is_module(&self) -> bool {
        matches!(self, Verdict::Module { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Result {
    pub family: IndexFamily,
    /// The top row actually used; wider than the requested one when the
    /// witness search needed more room.
    pub top_row: Vec<String>,
    pub lp_condition: bool,
    pub admissible: bool,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Theorem1Result {
    pub fn agrees(&self) -> bool {
        self.verdict.is_module() == self.lp_condition && self.lp_condition == self.admissible
    }
}

fn check_top(top: &[Q]) -> Result<()> {
    for w in top.windows(2) {
        let d = &w[0] - &w[1];
        if !d.is_integer() || d <= Q::from_integer(0.into()) {
            return Err(Error::PreconditionFailed(format!(
                "top row must decrease by positive integers: {} then {}",
                fmt_q(&w[0]),
                fmt_q(&w[1])
            )));
        }
    }
    Ok(())
}

/// Integer tableaux (offsets from the common class of the top row) satisfying
/// `c` with the given top row, all rows free of repeated entries, lower entries
/// confined to `[min - pad, max + pad]`. Stops when `visit` returns true.
fn search_tableaux(
    c: &RelationSet,
    top: &[i64],
    pad: i64,
    visit: &mut dyn FnMut(&[Vec<i64>]) -> Result<bool>,
) -> Result<bool> {
    let n = top.len();
    let lo = top.iter().min().unwrap() - pad;
    let hi = top.iter().max().unwrap() + pad;
    let mut rows: Vec<Vec<i64>> = vec![top.to_vec()];
    let rels: Vec<Relation> = c.iter().copied().collect();

    fn bounds(rels: &[Relation], rows: &[Vec<i64>], n: usize, p: Position, lo: i64, hi: i64) -> (i64, i64) {
        let (mut a, mut b) = (lo, hi);
        let val = |q: Position| rows.get(n - q.row).and_then(|r| r.get(q.col - 1)).copied();
        for r in rels {
            if r.to == p {
                if let Some(v) = val(r.from) {
                    b = b.min(v - r.kind.slack());
                }
            } else if r.from == p {
                if let Some(v) = val(r.to) {
                    a = a.max(v + r.kind.slack());
                }
            }
        }
        (a, b)
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        rels: &[Relation],
        rows: &mut Vec<Vec<i64>>,
        n: usize,
        k: usize,
        j: usize,
        lo: i64,
        hi: i64,
        visit: &mut dyn FnMut(&[Vec<i64>]) -> Result<bool>,
    ) -> Result<bool> {
        if j > k {
            if k == 1 {
                return visit(rows);
            }
            rows.push(Vec::with_capacity(k.saturating_sub(1)));
            let done = go(rels, rows, n, k - 1, 1, lo, hi, visit)?;
            rows.pop();
            return Ok(done);
        }
        let (a, b) = bounds(rels, rows, n, Position::new(k, j), lo, hi);
        for v in a..=b {
            let row = rows.last_mut().unwrap();
            if row.contains(&v) {
                continue;
            }
            row.push(v);
            let done = go(rels, rows, n, k, j + 1, lo, hi, visit)?;
            rows.last_mut().unwrap().pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    rows.push(Vec::with_capacity(n - 1));
    go(&rels, &mut rows, n, n - 1, 1, lo, hi, visit)
}

fn build_tableau(rows: &[Vec<i64>], base: &Q) -> Result<Tableau> {
    let frac = base - Q::from_integer(base.floor().to_integer());
    let mut table = AnchorTable::new();
    let entry: Box<dyn Fn(i64) -> Entry> = if frac == Q::from_integer(0.into()) {
        Box::new(Entry::int)
    } else {
        let id = table.insert("a", frac)?;
        Box::new(move |v| Entry::new(id, v))
    };
    let rows = rows.iter().map(|r| r.iter().map(|&v| entry(v)).collect()).collect();
    Tableau::from_rows(rows, Arc::new(table))
}

/// Offsets of the top row from its common class, and the class base.
fn top_offsets(top: &[Q]) -> Result<(Vec<i64>, Q)> {
    let base = top.last().cloned().unwrap_or_else(|| Q::from_integer(0.into()));
    let frac = &base - Q::from_integer(base.floor().to_integer());
    let offsets = top
        .iter()
        .map(|x| {
            (x - &frac)
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::BudgetExceeded("top row entry out of range".into()))
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok((offsets, base))
}

/// Row-`k` column pairs `(a, a+1)` at which a distance-1 gap is placed.
fn witness_pairs(fam: &IndexFamily, k: usize) -> Vec<usize> {
    let allowed = lp_allowed(fam, k);
    let (a, b) = fam.pair(k - 1);
    let mut out = Vec::new();
    for x in [a, b] {
        if allowed.contains(&x) {
            continue;
        }
        for p in [x.wrapping_sub(1), x, x + 1] {
            if (1..k).contains(&p) && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn has_unit_gap(rows: &[Vec<i64>], n: usize, k: usize, cols: &[usize]) -> bool {
    let row = &rows[n - k];
    cols.iter().any(|&a| (row[a - 1] - row[a]).abs() == 1)
}

const PAD: i64 = 3;
const WIDENINGS: i64 = 3;

fn search_witness(
    fam: &IndexFamily,
    c: &RelationSet,
    top: &[i64],
    base: &Q,
) -> Result<Option<(usize, Tableau, FormalVector)>> {
    let n = fam.n();
    let failing = lp_failures(fam);
    let Some(&k) = failing.last() else { return Ok(None) };
    let cols = witness_pairs(fam, k);
    let mut found = None;
    search_tableaux(c, top, PAD, &mut |rows| {
        if !has_unit_gap(rows, n, k, &cols) {
            return Ok(false);
        }
        let t = build_tableau(rows, base)?;
        if !is_realization(&t, c) {
            return Ok(false);
        }
        let b = BasisSpec::new(c.clone(), t.clone())?;
        let d = ef_defect(&b, k, &t)?;
        if d.is_zero() {
            return Ok(false);
        }
        found = Some((k, t, d));
        Ok(true)
    })?;
    Ok(found)
}

fn first_realization(c: &RelationSet, top: &[i64], base: &Q) -> Result<Option<Tableau>> {
    let mut found = None;
    search_tableaux(c, top, PAD, &mut |rows| {
        let t = build_tableau(rows, base)?;
        if is_realization(&t, c) {
            found = Some(t);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

fn widen(top: &[i64], factor: i64) -> Vec<i64> {
    top.iter().map(|&v| top[top.len() - 1] + (v - top[top.len() - 1]) * factor).collect()
}

/// Decides whether the span of the family's tableaux over `top_row` is a
/// module: LP families are verified on a realization, the others are searched
/// for a tableau with a distance-1 pair in the first failing row on which
/// `[e_k, f_k] - h_k` is nonzero.
pub fn theorem1_check<R: Rng + ?Sized>(
    fam: &IndexFamily,
    top_row: &[Q],
    radius: u32,
    _rng: &mut R,
) -> Result<Theorem1Result> {
    let n = fam.n();
    if top_row.len() != n {
        return Err(Error::Shape(format!("top row has {} entries, family needs {n}", top_row.len())));
    }
    check_top(top_row)?;
    let c = gg_relation_set(fam);
    let lp = lp_condition(fam);
    let admissible = is_admissible(&c);
    let (offsets, base) = top_offsets(top_row)?;
    let shift = &base - Q::from_integer(BigInt::from(offsets[n - 1]));
    let render = |top: &[i64]| top.iter().map(|&v| fmt_q(&(Q::from_integer(v.into()) + &shift))).collect();

    let mut fallback_seed = None;
    for factor in 1..=WIDENINGS {
        let top = widen(&offsets, factor);
        if !lp {
            if let Some((row, witness, defect)) = search_witness(fam, &c, &top, &base)? {
                return Ok(Theorem1Result {
                    family: fam.clone(),
                    top_row: render(&top),
                    lp_condition: lp,
                    admissible,
                    verdict: Verdict::NotModule { row, witness, defect },
                });
            }
        }
        if fallback_seed.is_none() {
            fallback_seed = first_realization(&c, &top, &base)?.map(|t| (t, top.clone()));
        }
        if lp && fallback_seed.is_some() {
            break;
        }
    }
    let Some((seed, used)) = fallback_seed else {
        return Err(Error::UnsatisfiableSet);
    };
    let report = check_defining_relations(&BasisSpec::new(c.clone(), seed)?, radius)?;
    let verdict = if report.passed {
        Verdict::Module { report: Box::new(report) }
    } else {
        Verdict::NotModuleOther { failure: Box::new(report.failures[0].clone()) }
    };
    Ok(Theorem1Result { family: fam.clone(), top_row: render(&used), lp_condition: lp, admissible, verdict })
}

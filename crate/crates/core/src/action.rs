//! The Gelfand-Tsetlin formulas acting on spans of shifted tableaux.
//!
//! A basis is any predicate on tableaux; `BasisSpec` is the set of integer
//! shifts of a seed satisfying a relation set. Generators act by the classical
//! formulas, with every summand whose target leaves the basis dropped.

use std::collections::{btree_map, BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, serde_q, Q};
use crate::relations::{is_realization, RelationSet};
use crate::tableau::{lower_positions, GroupElement, Position, ShiftVector, Tableau};

pub trait Basis {
    fn n(&self) -> usize;
    fn contains(&self, t: &Tableau) -> bool;
}

/// `B_C(T(L))`: shifts of the seed on rows `1..n-1` that satisfy `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    relations: RelationSet,
    seed: Tableau,
}

impl BasisSpec {
    pub fn new(relations: RelationSet, seed: Tableau) -> Result<Self> {
        if relations.n() != seed.n() {
            return Err(Error::Shape(format!("relation set has n = {}, seed has n = {}", relations.n(), seed.n())));
        }
        relations.check_valid()?;
        if !relations.satisfied_by(&seed) {
            return Err(Error::NotInBasis);
        }
        Ok(BasisSpec { relations, seed })
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn seed(&self) -> &Tableau {
        &self.seed
    }

    pub fn is_realization(&self) -> bool {
        is_realization(&self.seed, &self.relations)
    }

    /// `(σ(C), σ(seed))`.
    pub fn sigma_action(&self, g: &GroupElement) -> Result<Self> {
        BasisSpec::new(self.relations.sigma_action(g), self.seed.apply_permutation(g))
    }

    pub fn with_seed(&self, seed: Tableau) -> Result<Self> {
        BasisSpec::new(self.relations.clone(), seed)
    }
}

impl Basis for BasisSpec {
    fn n(&self) -> usize {
        self.seed.n()
    }

    fn contains(&self, t: &Tableau) -> bool {
        in_basis(self, t)
    }
}

/// A finite basis given by its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBasis {
    n: usize,
    members: BTreeSet<Tableau>,
}

impl ExplicitBasis {
    pub fn new(members: impl IntoIterator<Item = Tableau>) -> Result<Self> {
        let members: BTreeSet<Tableau> = members.into_iter().collect();
        let Some(first) = members.first() else {
            return Err(Error::Shape("explicit basis is empty".into()));
        };
        let n = first.n();
        if members.iter().any(|t| t.n() != n) {
            return Err(Error::Shape("explicit basis mixes heights".into()));
        }
        Ok(ExplicitBasis { n, members })
    }

    pub fn members(&self) -> impl Iterator<Item = &Tableau> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Basis for ExplicitBasis {
    fn n(&self) -> usize {
        self.n
    }

    fn contains(&self, t: &Tableau) -> bool {
        self.members.contains(t)
    }
}

pub fn in_basis(b: &BasisSpec, t: &Tableau) -> bool {
    let seed = &b.seed;
    if t.n() != seed.n() {
        return false;
    }
    if !Arc::ptr_eq(t.anchors(), seed.anchors()) && t.anchors() != seed.anchors() {
        return false;
    }
    if t.top_row() != seed.top_row() {
        return false;
    }
    lower_positions(t.n()).all(|p| t.entry(p).anchor == seed.entry(p).anchor) && b.relations.satisfied_by(t)
}

/// A finite linear combination of tableaux with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalVector {
    terms: BTreeMap<Tableau, Q>,
}

impl FormalVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(t: Tableau) -> Self {
        FormalVector { terms: BTreeMap::from([(t, Q::one())]) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Tableau, Q)>) -> Self {
        let mut v = Self::zero();
        for (t, c) in terms {
            v.add_term(t, &c);
        }
        v
    }

    pub fn add_term(&mut self, t: Tableau, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, other: &FormalVector, c: &Q) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), &(v * c));
        }
    }

    pub fn scaled(&self, c: &Q) -> FormalVector {
        let mut out = FormalVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, t: &Tableau) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tableau, &Q)> {
        self.terms.iter()
    }

    pub fn tableaux(&self) -> impl Iterator<Item = &Tableau> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for &FormalVector {
    type Output = FormalVector;

    fn add(self, rhs: &FormalVector) -> FormalVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl std::ops::Sub for &FormalVector {
    type Output = FormalVector;

    fn sub(self, rhs: &FormalVector) -> FormalVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl fmt::Display for FormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{}·{}", fmt_q(c), t.compact())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "serde_q")]
    coeff: Q,
    tableau: Tableau,
}

impl Serialize for FormalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> =
            self.terms.iter().map(|(t, c)| TermJson { coeff: c.clone(), tableau: t.clone() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut v = FormalVector::zero();
        for t in terms {
            if v.terms.contains_key(&t.tableau) {
                return Err(D::Error::custom("repeated tableau in formal vector"));
            }
            v.add_term(t.tableau, &t.coeff);
        }
        Ok(v)
    }
}

/// Generators: `e_k = E_{k,k+1}`, `f_k = E_{k+1,k}`, `h_k = E_kk - E_{k+1,k+1}`,
/// the diagonal `E_kk` and general matrix units `E_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(usize),
    F(usize),
    H(usize),
    Diag(usize),
    Unit(usize, usize),
}

impl Gen {
    /// `E_ij` in normal form: adjacent units become `e`, `f` or the diagonal.
    pub fn unit(i: usize, j: usize) -> Gen {
        if i == j {
            Gen::Diag(i)
        } else if j == i + 1 {
            Gen::E(i)
        } else if i == j + 1 {
            Gen::F(j)
        } else {
            Gen::Unit(i, j)
        }
    }

    fn check(self, n: usize) -> Result<()> {
        let ok = match self {
            Gen::E(k) | Gen::F(k) | Gen::H(k) => (1..n).contains(&k),
            Gen::Diag(k) => (1..=n).contains(&k),
            Gen::Unit(i, j) => (1..=n).contains(&i) && (1..=n).contains(&j),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Shape(format!("generator {self} is out of range for n = {n}")))
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(k) => write!(f, "e{k}"),
            Gen::F(k) => write!(f, "f{k}"),
            Gen::H(k) => write!(f, "h{k}"),
            Gen::Diag(k) => write!(f, "E{k},{k}"),
            Gen::Unit(i, j) => write!(f, "E{i},{j}"),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;

    /// `e2`, `f1`, `h1`, `E13` or `E1,3`.
    fn from_str(s: &str) -> Result<Gen> {
        let bad = || Error::Parse(format!("unknown generator {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match head {
            'e' => Ok(Gen::E(num(rest)?)),
            'f' => Ok(Gen::F(num(rest)?)),
            'h' => Ok(Gen::H(num(rest)?)),
            'E' => {
                let (i, j) = match rest.split_once(',') {
                    Some((a, b)) => (num(a)?, num(b)?),
                    None if rest.len() == 2 => (num(&rest[..1])?, num(&rest[1..])?),
                    None => return Err(bad()),
                };
                Ok(Gen::unit(i, j))
            }
            _ => Err(bad()),
        }
    }
}

fn row_sum(t: &Tableau, k: usize) -> Q {
    if k == 0 || k > t.n() {
        return Q::zero();
    }
    t.row_values(k).into_iter().sum()
}

/// `e_ki` evaluated at `t`, without basis gating.
pub fn e_coefficient(t: &Tableau, k: usize, i: usize) -> Result<Q> {
    let x = t.value(Position::new(k, i));
    let num: Q = t.row_values(k + 1).iter().map(|y| &x - y).product();
    let den = same_row_denominator(t, k, i, &x)?;
    Ok(-num / den)
}

/// `f_ki` evaluated at `t`, without basis gating.
pub fn f_coefficient(t: &Tableau, k: usize, i: usize) -> Result<Q> {
    let x = t.value(Position::new(k, i));
    let num: Q = if k > 1 { t.row_values(k - 1).iter().map(|y| &x - y).product() } else { Q::one() };
    let den = same_row_denominator(t, k, i, &x)?;
    Ok(num / den)
}

fn same_row_denominator(t: &Tableau, k: usize, i: usize, x: &Q) -> Result<Q> {
    let den: Q = t.row_values(k).iter().enumerate().filter(|(j, _)| j + 1 != i).map(|(_, y)| x - y).product();
    if den.is_zero() {
        return Err(Error::CriticalTableau);
    }
    Ok(den)
}

/// `2 Σ l_k - Σ l_{k-1} - Σ l_{k+1} - 1`.
pub fn h_coefficient(t: &Tableau, k: usize) -> Q {
    q(2) * row_sum(t, k) - row_sum(t, k - 1) - row_sum(t, k + 1) - q(1)
}

/// The eigenvalue of `E_kk`: `k - 1 + Σ l_k - Σ l_{k-1}`.
pub fn diag_coefficient(t: &Tableau, k: usize) -> Q {
    q(k as i64 - 1) + row_sum(t, k) - row_sum(t, k - 1)
}

pub fn coeff_e(b: &dyn Basis, k: usize, i: usize, t: &Tableau) -> Result<Q> {
    if !b.contains(t) {
        return Ok(Q::zero());
    }
    e_coefficient(t, k, i)
}

pub fn coeff_f(b: &dyn Basis, k: usize, i: usize, t: &Tableau) -> Result<Q> {
    if !b.contains(t) {
        return Ok(Q::zero());
    }
    f_coefficient(t, k, i)
}

pub fn coeff_h(b: &dyn Basis, k: usize, t: &Tableau) -> Q {
    if !b.contains(t) {
        return Q::zero();
    }
    h_coefficient(t, k)
}

/// Whether `l` and every partial sum of `path` stay in the basis.
pub fn phi(b: &dyn Basis, l: &Tableau, path: &[ShiftVector]) -> bool {
    if !b.contains(l) {
        return false;
    }
    let mut cur = l.clone();
    for z in path {
        cur = cur.shift(z);
        if !b.contains(&cur) {
            return false;
        }
    }
    true
}

/// Engine-internal coefficients; small rationals are stored inline.
type F = malachite_q::Rational;
type Sparse = BTreeMap<usize, F>;

fn to_fast(x: &Q) -> F {
    match (i64::try_from(x.numer()), i64::try_from(x.denom())) {
        (Ok(n), Ok(d)) => F::from_signeds(n, d),
        _ => fmt_q(x).parse().expect("rational literal"),
    }
}

fn from_fast(x: &F) -> Q {
    let (n, d) = (x.numerator_ref(), x.denominator_ref());
    let num = match u64::try_from(n) {
        Ok(v) => num_bigint::BigInt::from(v),
        Err(_) => n.to_string().parse().expect("integer literal"),
    };
    let den = match u64::try_from(d) {
        Ok(v) => num_bigint::BigInt::from(v),
        Err(_) => d.to_string().parse().expect("integer literal"),
    };
    let q = Q::new(num, den);
    if *x < 0u32 {
        -q
    } else {
        q
    }
}

/// Applies generators with every tableau interned and every image memoized.
pub struct Engine<'a> {
    basis: &'a dyn Basis,
    tabs: Vec<Tableau>,
    member: Vec<bool>,
    ids: HashMap<Tableau, usize>,
    cache: HashMap<(Gen, usize), Rc<Sparse>>,
    words: HashMap<(Vec<Gen>, usize), Rc<Sparse>>,
}

impl<'a> Engine<'a> {
    pub fn new(basis: &'a dyn Basis) -> Self {
        Engine {
            basis,
            tabs: Vec::new(),
            member: Vec::new(),
            ids: HashMap::new(),
            cache: HashMap::new(),
            words: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    fn intern(&mut self, t: &Tableau) -> usize {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let id = self.tabs.len();
        self.member.push(self.basis.contains(t));
        self.tabs.push(t.clone());
        self.ids.insert(t.clone(), id);
        id
    }

    fn image(&mut self, g: Gen, id: usize) -> Result<Rc<Sparse>> {
        if let Some(v) = self.cache.get(&(g, id)) {
            return Ok(v.clone());
        }
        if !self.member[id] {
            return Err(Error::NotInBasis);
        }
        let t = self.tabs[id].clone();
        let mut out = Sparse::new();
        match g {
            Gen::E(k) | Gen::F(k) => {
                let d = if matches!(g, Gen::E(_)) { 1 } else { -1 };
                for i in 1..=k {
                    let target = t.shifted(Position::new(k, i), d);
                    let tid = self.intern(&target);
                    if !self.member[tid] {
                        continue;
                    }
                    let c = if d > 0 { e_coefficient(&t, k, i)? } else { f_coefficient(&t, k, i)? };
                    if !c.is_zero() {
                        out.insert(tid, to_fast(&c));
                    }
                }
            }
            Gen::H(k) => {
                let c = h_coefficient(&t, k);
                if !c.is_zero() {
                    out.insert(id, to_fast(&c));
                }
            }
            Gen::Diag(k) => {
                let c = diag_coefficient(&t, k);
                if !c.is_zero() {
                    out.insert(id, to_fast(&c));
                }
            }
            Gen::Unit(i, j) => {
                let m = if i < j { j - 1 } else { j + 1 };
                let (a, b) = (Gen::unit(i, m), Gen::unit(m, j));
                let start = Sparse::from([(id, F::from(1u32))]);
                let ab = self.apply_sparse(&[a, b], &start)?;
                let ba = self.apply_sparse(&[b, a], &start)?;
                out = ab;
                add_into(&mut out, &ba, &F::from(-1i32));
            }
        }
        let rc = Rc::new(out);
        self.cache.insert((g, id), rc.clone());
        Ok(rc)
    }

    fn apply_gen(&mut self, g: Gen, v: &Sparse) -> Result<Sparse> {
        let mut out = Sparse::new();
        for (&id, c) in v {
            let img = self.image(g, id)?;
            add_into(&mut out, &img, c);
        }
        Ok(out)
    }

    /// A word acts right to left, with gating at every step.
    fn apply_sparse(&mut self, word: &[Gen], v: &Sparse) -> Result<Sparse> {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.apply_gen(g, &cur)?;
        }
        Ok(cur)
    }

    /// Image of a basis vector under a word, memoized on every suffix.
    fn word_image(&mut self, word: &[Gen], id: usize) -> Result<Rc<Sparse>> {
        if word.is_empty() {
            return Ok(Rc::new(Sparse::from([(id, F::from(1u32))])));
        }
        let key = (word.to_vec(), id);
        if let Some(v) = self.words.get(&key) {
            return Ok(v.clone());
        }
        let inner = self.word_image(&word[1..], id)?;
        let out = Rc::new(self.apply_gen(word[0], &inner)?);
        self.words.insert(key, out.clone());
        Ok(out)
    }

    fn to_sparse(&mut self, v: &FormalVector) -> Result<Sparse> {
        let mut out = Sparse::new();
        for (t, c) in v.terms() {
            let id = self.intern(t);
            if !self.member[id] {
                return Err(Error::NotInBasis);
            }
            out.insert(id, to_fast(c));
        }
        Ok(out)
    }

    fn to_formal(&self, v: &Sparse) -> FormalVector {
        FormalVector { terms: v.iter().map(|(&id, c)| (self.tabs[id].clone(), from_fast(c))).collect() }
    }

    pub fn apply(&mut self, g: Gen, v: &FormalVector) -> Result<FormalVector> {
        self.apply_word(&[g], v)
    }

    pub fn apply_word(&mut self, word: &[Gen], v: &FormalVector) -> Result<FormalVector> {
        for g in word {
            g.check(self.n())?;
        }
        let s = self.to_sparse(v)?;
        let out = self.apply_sparse(word, &s)?;
        Ok(self.to_formal(&out))
    }

    /// `Σ c·word(t)`.
    pub fn evaluate(&mut self, combo: &[(Q, Vec<Gen>)], t: &Tableau) -> Result<FormalVector> {
        let id = self.intern(t);
        if !self.member[id] {
            return Err(Error::NotInBasis);
        }
        let mut out = Sparse::new();
        for (c, word) in combo {
            let w = self.word_image(word, id)?;
            add_into(&mut out, &w, &to_fast(c));
        }
        Ok(self.to_formal(&out))
    }

    /// `c_mk t = Σ E_{i1 i2} E_{i2 i3} ... E_{ik i1} t`, summed by dynamic programming
    /// over the rightmost index.
    pub fn apply_cmk(&mut self, m: usize, k: usize, t: &Tableau) -> Result<FormalVector> {
        let id = self.intern(t);
        if !self.member[id] {
            return Err(Error::NotInBasis);
        }
        let start = Sparse::from([(id, F::from(1u32))]);
        let mut total = Sparse::new();
        for i1 in 1..=m {
            let mut u: Vec<Sparse> = Vec::with_capacity(m);
            for a in 1..=m {
                u.push(self.apply_gen(Gen::unit(a, i1), &start)?);
            }
            for _ in 1..k {
                let mut next = vec![Sparse::new(); m];
                for (b, slot) in next.iter_mut().enumerate() {
                    for (a, ua) in u.iter().enumerate() {
                        if ua.is_empty() {
                            continue;
                        }
                        let w = self.apply_gen(Gen::unit(b + 1, a + 1), ua)?;
                        add_into(slot, &w, &F::from(1u32));
                    }
                }
                u = next;
            }
            add_into(&mut total, &u[i1 - 1], &F::from(1u32));
        }
        Ok(self.to_formal(&total))
    }

    pub fn contains(&mut self, t: &Tableau) -> bool {
        let id = self.intern(t);
        self.member[id]
    }
}

fn add_into(out: &mut Sparse, v: &Sparse, c: &F) {
    let unit = *c == 1u32;
    for (&id, x) in v {
        let slot = out.entry(id).or_insert_with(|| F::from(0u32));
        if unit {
            *slot += x;
        } else {
            *slot += x * c;
        }
        if *slot == 0u32 {
            out.remove(&id);
        }
    }
}

pub fn apply_e(b: &dyn Basis, k: usize, v: &FormalVector) -> Result<FormalVector> {
    Engine::new(b).apply(Gen::E(k), v)
}

pub fn apply_f(b: &dyn Basis, k: usize, v: &FormalVector) -> Result<FormalVector> {
    Engine::new(b).apply(Gen::F(k), v)
}

pub fn apply_h(b: &dyn Basis, k: usize, v: &FormalVector) -> Result<FormalVector> {
    Engine::new(b).apply(Gen::H(k), v)
}

pub fn apply_ekk(b: &dyn Basis, k: usize, v: &FormalVector) -> Result<FormalVector> {
    Engine::new(b).apply(Gen::Diag(k), v)
}

#[allow(non_snake_case)]
pub fn apply_Eij(b: &dyn Basis, i: usize, j: usize, v: &FormalVector) -> Result<FormalVector> {
    Engine::new(b).apply(Gen::unit(i, j), v)
}

/// Basis members within max-norm `radius` of the seed, sorted.
pub fn enumerate_ball(b: &BasisSpec, radius: u32) -> Vec<Tableau> {
    let n = b.seed.n();
    // Rows from the top down, so relations to fixed entries prune early.
    let mut order: Vec<Position> = lower_positions(n).collect();
    order.sort_by(|p, q| q.row.cmp(&p.row).then(p.col.cmp(&q.col)));
    let rank: BTreeMap<Position, usize> = order.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut checks: Vec<Vec<_>> = vec![Vec::new(); order.len()];
    for r in b.relations.iter() {
        let last = [r.from, r.to].iter().filter_map(|p| rank.get(p).copied()).max();
        if let Some(i) = last {
            checks[i].push(*r);
        }
    }
    let mut out = Vec::new();
    let r = radius as i64;
    fn go(
        cur: &Tableau,
        depth: usize,
        order: &[Position],
        checks: &[Vec<crate::relations::Relation>],
        r: i64,
        out: &mut Vec<Tableau>,
    ) {
        if depth == order.len() {
            out.push(cur.clone());
            return;
        }
        for d in -r..=r {
            let next = cur.shifted(order[depth], d);
            if checks[depth].iter().all(|rel| rel.holds(&next)) {
                go(&next, depth + 1, order, checks, r, out);
            }
        }
    }
    go(&b.seed, 0, &order, &checks, r, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::relations::{sample_realization, Relation};
    use crate::tableau::enumerate_standard_int;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t2(a: i64, b: i64, c: i64) -> Tableau {
        Tableau::from_int_rows(&[&[a, b], &[c]]).unwrap()
    }

    fn s2() -> BasisSpec {
        BasisSpec::new(RelationSet::standard(2), t2(2, 0, 1)).unwrap()
    }

    #[test]
    fn membership() {
        let b = s2();
        assert!(in_basis(&b, &t2(2, 0, 1)));
        assert!(in_basis(&b, &t2(2, 0, 2)));
        assert!(!in_basis(&b, &t2(2, 0, 3)));
        assert!(!in_basis(&b, &t2(3, 0, 1)));
    }

    #[test]
    fn coefficients_of_gl2() {
        let b = s2();
        let t = t2(2, 0, 1);
        assert_eq!(coeff_e(&b, 1, 1, &t).unwrap(), q(1));
        assert_eq!(coeff_h(&b, 1, &t), q(-1));
        assert_eq!(coeff_e(&b, 1, 1, &t2(2, 0, 5)).unwrap(), q(0));
    }

    #[test]
    fn gl2_raising() {
        let b = s2();
        assert_eq!(apply_e(&b, 1, &FormalVector::basis(t2(2, 0, 1))).unwrap(), FormalVector::basis(t2(2, 0, 2)));
        assert!(apply_e(&b, 1, &FormalVector::basis(t2(2, 0, 2))).unwrap().is_zero());
        assert_eq!(e_coefficient(&t2(2, 0, 2), 1, 1).unwrap(), q(0));
        assert_eq!(apply_e(&b, 1, &FormalVector::basis(t2(2, 0, 3))), Err(Error::NotInBasis));
        let h = apply_h(&b, 1, &FormalVector::basis(t2(2, 0, 2))).unwrap();
        assert_eq!(h, FormalVector::basis(t2(2, 0, 2)).scaled(&q(1)));
    }

    #[test]
    fn phi_partial_sums() {
        let b = s2();
        let up = ShiftVector::delta(2, Position::new(1, 1)).unwrap();
        let down = -&up;
        assert!(phi(&b, &t2(2, 0, 1), &[]));
        assert!(!phi(&b, &t2(2, 0, 3), &[]));
        assert!(phi(&b, &t2(2, 0, 1), &[up.clone(), down.clone()]));
        // (2,0|2) -> (2,0|3) -> (2,0|2) leaves the basis halfway.
        assert!(!phi(&b, &t2(2, 0, 2), &[up, down]));
    }

    #[test]
    fn phi_factorizes_over_independent_shifts() {
        let c = RelationSet::new(3, [Relation::ge((3, 1), (2, 1))]);
        let seed = Tableau::from_int_rows(&[&[2, 7, 11], &[2, 4], &[0]]).unwrap();
        let b = BasisSpec::new(c, seed.clone()).unwrap();
        for d1 in -2..=2 {
            for d2 in -2..=2 {
                let z1 = ShiftVector::delta(3, Position::new(2, 1)).unwrap().scaled(d1);
                let z2 = ShiftVector::delta(3, Position::new(1, 1)).unwrap().scaled(d2);
                let both = phi(&b, &seed, &[&z1 + &z2]);
                assert_eq!(both, phi(&b, &seed, &[z1]) && phi(&b, &seed, &[z2]));
            }
        }
    }

    #[test]
    fn balls() {
        let b = s2();
        assert_eq!(enumerate_ball(&b, 0), vec![t2(2, 0, 1)]);
        assert_eq!(enumerate_ball(&b, 1), vec![t2(2, 0, 1), t2(2, 0, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = sample_realization(&RelationSet::empty(2), 1, &mut rng).unwrap();
        let gb = BasisSpec::new(RelationSet::empty(2), g).unwrap();
        assert_eq!(enumerate_ball(&gb, 1).len(), 3);
    }

    fn brute_ball(b: &BasisSpec, r: i64) -> Vec<Tableau> {
        let ps: Vec<Position> = lower_positions(b.seed().n()).collect();
        let mut out = Vec::new();
        let width = (2 * r + 1) as usize;
        for code in 0..width.pow(ps.len() as u32) {
            let mut t = b.seed().clone();
            let mut x = code;
            for p in &ps {
                t = t.shifted(*p, (x % width) as i64 - r);
                x /= width;
            }
            if in_basis(b, &t) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn ball_matches_brute_force() {
        let seed = Tableau::from_int_rows(&[&[3, 1, -1], &[2, 0], &[1]]).unwrap();
        let b = BasisSpec::new(RelationSet::standard(3), seed).unwrap();
        assert_eq!(enumerate_ball(&b, 2), brute_ball(&b, 2));
        let all = enumerate_standard_int(&[3, 1, -1]);
        let big = enumerate_ball(&b, 4);
        assert_eq!(big.len(), all.len());
    }

    #[test]
    fn e13_is_the_commutator() {
        let seed = Tableau::from_int_rows(&[&[2, 0, -2], &[1, -1], &[0]]).unwrap();
        let b = BasisSpec::new(RelationSet::standard(3), seed).unwrap();
        let mut eng = Engine::new(&b);
        for t in enumerate_standard_int(&[2, 0, -2]) {
            let v = FormalVector::basis(t);
            let direct = eng.apply(Gen::unit(1, 3), &v).unwrap();
            let ab = eng.apply_word(&[Gen::E(1), Gen::E(2)], &v).unwrap();
            let ba = eng.apply_word(&[Gen::E(2), Gen::E(1)], &v).unwrap();
            assert_eq!(direct, &ab - &ba);
        }
        assert!(eng.apply(Gen::unit(3, 1), &FormalVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn generator_names() {
        assert_eq!("e2".parse::<Gen>().unwrap(), Gen::E(2));
        assert_eq!("E12".parse::<Gen>().unwrap(), Gen::E(1));
        assert_eq!("E3,1".parse::<Gen>().unwrap(), Gen::Unit(3, 1));
        assert_eq!("E22".parse::<Gen>().unwrap(), Gen::Diag(2));
        assert!("x1".parse::<Gen>().is_err());
    }

    #[test]
    fn formal_vector_json_round_trip() {
        let v = FormalVector::from_terms([(t2(2, 0, 1), ratio(3, 2)), (t2(2, 0, 2), q(-1))]);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"coeff\":\"3/2\""));
        let back: FormalVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    fn arb_vec() -> impl Strategy<Value = FormalVector> {
        let all = enumerate_standard_int(&[2, 0, -2]);
        proptest::collection::vec((0..all.len(), -5i64..5), 0..6).prop_map(move |ts| {
            FormalVector::from_terms(ts.into_iter().map(|(i, c)| (all[i].clone(), q(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn generators_are_linear(u in arb_vec(), v in arb_vec(), a in -3i64..3, b in -3i64..3, g in 0usize..6) {
            let seed = Tableau::from_int_rows(&[&[2, 0, -2], &[1, -1], &[0]]).unwrap();
            let basis = BasisSpec::new(RelationSet::standard(3), seed).unwrap();
            let gen = [Gen::E(1), Gen::E(2), Gen::F(1), Gen::F(2), Gen::H(1), Gen::unit(3, 1)][g];
            let mut eng = Engine::new(&basis);
            let mut lhs_in = u.scaled(&q(a));
            lhs_in.add_scaled(&v, &q(b));
            let lhs = eng.apply(gen, &lhs_in).unwrap();
            let mut rhs = eng.apply(gen, &u).unwrap().scaled(&q(a));
            rhs.add_scaled(&eng.apply(gen, &v).unwrap(), &q(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

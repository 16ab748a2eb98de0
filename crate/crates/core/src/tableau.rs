//! Gelfand-Tsetlin tableaux with anchored entries.
//!
//! Every entry is `anchor + offset`, where anchors are rationals whose pairwise
//! differences are never integers. Two entries therefore differ by an integer
//! exactly when they share an anchor, and all comparisons are exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_integer, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    /// Row-major index starting at the single entry of row 1.
    pub fn index(self) -> usize {
        self.row * (self.row - 1) / 2 + self.col - 1
    }

    pub fn from_index(i: usize) -> Self {
        let mut row = 1;
        while row * (row + 1) / 2 <= i {
            row += 1;
        }
        Position::new(row, i - row * (row - 1) / 2 + 1)
    }

    pub fn is_valid(self, n: usize) -> bool {
        self.row >= 1 && self.row <= n && self.col >= 1 && self.col <= self.row
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

pub fn shape_size(n: usize) -> usize {
    n * (n + 1) / 2
}

/// All positions of a height-`n` tableau, row 1 first.
pub fn positions(n: usize) -> impl Iterator<Item = Position> {
    (1..=n).flat_map(|r| (1..=r).map(move |c| Position::new(r, c)))
}

/// Positions of rows `1..n`, the ones a basis shift may move.
pub fn lower_positions(n: usize) -> impl Iterator<Item = Position> {
    positions(n.saturating_sub(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnchorId(pub u32);

impl AnchorId {
    pub const INTEGRAL: AnchorId = AnchorId(0);
}

/// Named anchors. Id 0 is always the integral class `"0"` with value 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AnchorTable {
    names: Vec<String>,
    values: Vec<Q>,
}

impl Default for AnchorTable {
    fn default() -> Self {
        Self::new()
    }
}

impl AnchorTable {
    pub fn new() -> Self {
        AnchorTable { names: vec!["0".into()], values: vec![Q::zero()] }
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Q)>,
        S: Into<String>,
    {
        let mut t = AnchorTable::new();
        for (name, v) in pairs {
            t.insert(name, v)?;
        }
        Ok(t)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: Q) -> Result<AnchorId> {
        let name = name.into();
        if name == "0" {
            if value.is_zero() {
                return Ok(AnchorId::INTEGRAL);
            }
            return Err(Error::Anchor("0".into(), fmt_q(&value)));
        }
        if self.id(&name).is_some() {
            return Err(Error::Shape(format!("duplicate anchor {name}")));
        }
        for (other, v) in self.names.iter().zip(&self.values) {
            if is_integer(&(v - &value)) {
                return Err(Error::Anchor(other.clone(), name));
            }
        }
        self.names.push(name);
        self.values.push(value);
        Ok(AnchorId(self.names.len() as u32 - 1))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, name: &str) -> Option<AnchorId> {
        self.names.iter().position(|n| n == name).map(|i| AnchorId(i as u32))
    }

    pub fn name(&self, id: AnchorId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn value(&self, id: AnchorId) -> &Q {
        &self.values[id.0 as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (AnchorId, &str, &Q)> {
        self.names
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(i, (n, v))| (AnchorId(i as u32), n.as_str(), v))
    }

    /// The anchor whose class contains `v`, if any.
    pub fn class_of(&self, v: &Q) -> Option<AnchorId> {
        self.values
            .iter()
            .position(|a| is_integer(&(v - a)))
            .map(|i| AnchorId(i as u32))
    }

    /// Same names, new values (the integral anchor keeps value 0).
    pub fn reassigned(&self, values: &[Q]) -> Result<Self> {
        if values.len() + 1 != self.len() {
            return Err(Error::Shape(format!(
                "expected {} anchor values, got {}",
                self.len() - 1,
                values.len()
            )));
        }
        let mut t = AnchorTable::new();
        for (name, v) in self.names[1..].iter().zip(values) {
            t.insert(name.clone(), v.clone())?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub anchor: AnchorId,
    pub offset: BigInt,
}

impl Entry {
    pub fn new(anchor: AnchorId, offset: impl Into<BigInt>) -> Self {
        Entry { anchor, offset: offset.into() }
    }

    pub fn int(v: i64) -> Self {
        Entry { anchor: AnchorId::INTEGRAL, offset: BigInt::from(v) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryDiff {
    Integer(BigInt),
    NonInteger(Q),
}

impl EntryDiff {
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            EntryDiff::Integer(k) => Some(k),
            EntryDiff::NonInteger(_) => None,
        }
    }
}

/// A height-`n` triangular array. Entries are stored row-major from row 1.
#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    anchors: Arc<AnchorTable>,
    entries: Vec<Entry>,
}

impl PartialEq for Tableau {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tableau {}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.entries.cmp(&other.entries))
            .then_with(|| {
                if Arc::ptr_eq(&self.anchors, &other.anchors) {
                    Ordering::Equal
                } else {
                    self.anchors.cmp(&other.anchors)
                }
            })
    }
}

impl Hash for Tableau {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl Tableau {
    /// Builds a tableau from a full position map.
    pub fn new(n: usize, entries: BTreeMap<Position, Entry>, anchors: Arc<AnchorTable>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Shape("height must be positive".into()));
        }
        if let Some(p) = entries.keys().find(|p| !p.is_valid(n)) {
            return Err(Error::Shape(format!("position {p} outside height {n}")));
        }
        if entries.len() != shape_size(n) {
            let missing = positions(n).find(|p| !entries.contains_key(p)).unwrap();
            return Err(Error::Shape(format!("missing position {missing}")));
        }
        let entries: Vec<Entry> = entries.into_values().collect();
        Self::from_flat(n, entries, anchors)
    }

    /// Rows are given top first, as in the usual staircase picture.
    pub fn from_rows(rows: Vec<Vec<Entry>>, anchors: Arc<AnchorTable>) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(shape_size(n));
        for (i, row) in rows.into_iter().rev().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            flat.extend(row);
        }
        Self::from_flat(n, flat, anchors)
    }

    /// Integer tableau from rows given top first.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| Entry::int(v)).collect()).collect();
        Self::from_rows(rows, Arc::new(AnchorTable::new()))
    }

    fn from_flat(n: usize, entries: Vec<Entry>, anchors: Arc<AnchorTable>) -> Result<Self> {
        if n < 1 || entries.len() != shape_size(n) {
            return Err(Error::Shape("wrong number of entries".into()));
        }
        if let Some(e) = entries.iter().find(|e| e.anchor.0 as usize >= anchors.len()) {
            return Err(Error::UnknownAnchor(format!("#{}", e.anchor.0)));
        }
        Ok(Tableau { n, anchors, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn anchors(&self) -> &Arc<AnchorTable> {
        &self.anchors
    }

    pub fn entry(&self, p: Position) -> &Entry {
        &self.entries[p.index()]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entries of row `k`, column 1 first.
    pub fn row(&self, k: usize) -> &[Entry] {
        let start = k * (k - 1) / 2;
        &self.entries[start..start + k]
    }

    pub fn top_row(&self) -> &[Entry] {
        self.row(self.n)
    }

    pub fn value(&self, p: Position) -> Q {
        self.entry_value(self.entry(p))
    }

    pub fn entry_value(&self, e: &Entry) -> Q {
        self.anchors.value(e.anchor) + qi(&e.offset)
    }

    /// Exact values of all entries, indexed by [`Position::index`].
    pub fn values(&self) -> Vec<Q> {
        self.entries.iter().map(|e| self.entry_value(e)).collect()
    }

    pub fn row_values(&self, k: usize) -> Vec<Q> {
        self.row(k).iter().map(|e| self.entry_value(e)).collect()
    }

    pub fn entry_diff(&self, p: Position, q: Position) -> EntryDiff {
        let (a, b) = (self.entry(p), self.entry(q));
        if a.anchor == b.anchor {
            EntryDiff::Integer(&a.offset - &b.offset)
        } else {
            EntryDiff::NonInteger(self.entry_value(a) - self.entry_value(b))
        }
    }

    /// `l_p - l_q` when it is an integer.
    pub fn int_diff(&self, p: Position, q: Position) -> Option<BigInt> {
        let (a, b) = (self.entry(p), self.entry(q));
        (a.anchor == b.anchor).then(|| &a.offset - &b.offset)
    }

    pub fn is_standard(&self) -> bool {
        for k in 2..=self.n {
            for i in 1..k {
                let upper = Position::new(k, i);
                let lower = Position::new(k - 1, i);
                let right = Position::new(k, i + 1);
                match self.int_diff(upper, lower) {
                    Some(d) if !d.is_negative() => {}
                    _ => return false,
                }
                match self.int_diff(lower, right) {
                    Some(d) if d.is_positive() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// No repeated entries in rows `1..n`.
    pub fn is_noncritical(&self) -> bool {
        (1..self.n).all(|k| {
            let row = self.row(k);
            (0..k).all(|i| (i + 1..k).all(|j| row[i] != row[j]))
        })
    }

    pub fn shift(&self, z: &ShiftVector) -> Tableau {
        assert_eq!(z.n, self.n, "shift vector height mismatch");
        let mut t = self.clone();
        for (p, d) in &z.z {
            t.entries[p.index()].offset += d;
        }
        t
    }

    /// `self + d·δ^p`.
    pub fn shifted(&self, p: Position, d: i64) -> Tableau {
        let mut t = self.clone();
        t.entries[p.index()].offset += d;
        t
    }

    /// The shift taking `self` to `other`, if they differ by one.
    pub fn shift_to(&self, other: &Tableau) -> Option<ShiftVector> {
        if self.n != other.n {
            return None;
        }
        let mut z = BTreeMap::new();
        for p in positions(self.n) {
            let (a, b) = (self.entry(p), other.entry(p));
            if a.anchor != b.anchor {
                return None;
            }
            let d = &b.offset - &a.offset;
            if !d.is_zero() {
                if p.row == self.n {
                    return None;
                }
                z.insert(p, d);
            }
        }
        Some(ShiftVector { n: self.n, z })
    }

    pub fn apply_permutation(&self, sigma: &GroupElement) -> Tableau {
        assert_eq!(sigma.n(), self.n, "group element height mismatch");
        let mut entries = self.entries.clone();
        for p in positions(self.n) {
            entries[sigma.apply(p).index()] = self.entries[p.index()].clone();
        }
        Tableau { n: self.n, anchors: self.anchors.clone(), entries }
    }

    /// The same entries read against a different anchor table.
    pub fn with_anchors(&self, anchors: Arc<AnchorTable>) -> Result<Tableau> {
        Self::from_flat(self.n, self.entries.clone(), anchors)
    }

    pub fn replace_entry(&self, p: Position, e: Entry) -> Tableau {
        let mut t = self.clone();
        t.entries[p.index()] = e;
        t
    }

    pub fn format_entry(&self, e: &Entry) -> String {
        if e.anchor == AnchorId::INTEGRAL {
            return e.offset.to_string();
        }
        let name = self.anchors.name(e.anchor);
        match e.offset.sign() {
            num_bigint::Sign::NoSign => name.to_string(),
            num_bigint::Sign::Plus => format!("{name}+{}", e.offset),
            num_bigint::Sign::Minus => format!("{name}{}", e.offset),
        }
    }

    /// One-line form `(top | ... | bottom)`.
    pub fn compact(&self) -> String {
        let rows: Vec<String> = (1..=self.n)
            .rev()
            .map(|k| self.row(k).iter().map(|e| self.format_entry(e)).collect::<Vec<_>>().join(","))
            .collect();
        format!("({})", rows.join(" | "))
    }
}

impl Tableau {
    /// Parses `{"n", "anchors", "rows"}`. A non-integral rational literal joins the
    /// anchor whose class contains it, or becomes a new anchor named after itself.
    pub fn from_json(v: &serde_json::Value) -> Result<Tableau> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("tableau must be a JSON object".into()))?;
        let rows = obj
            .get("rows")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::Parse("tableau needs a \"rows\" array".into()))?;
        if let Some(n) = obj.get("n") {
            if n.as_u64() != Some(rows.len() as u64) {
                return Err(Error::Shape(format!("\"n\" is {n} but {} rows are given", rows.len())));
            }
        }
        let mut table = AnchorTable::new();
        if let Some(a) = obj.get("anchors") {
            let a = a.as_object().ok_or_else(|| Error::Parse("\"anchors\" must be an object".into()))?;
            for (name, val) in a {
                table.insert(name.clone(), crate::rational::serde_q::from_json(val)?)?;
            }
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Parse("each row must be an array".into()))?;
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                out.push(parse_entry(e, &mut table)?);
            }
            parsed.push(out);
        }
        Tableau::from_rows(parsed, Arc::new(table))
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let mut anchors = Map::new();
        for (id, name, v) in self.anchors.iter() {
            if id != AnchorId::INTEGRAL {
                anchors.insert(name.to_string(), Value::String(fmt_q(v)));
            }
        }
        let rows: Vec<Value> = (1..=self.n)
            .rev()
            .map(|k| {
                Value::Array(
                    self.row(k)
                        .iter()
                        .map(|e| {
                            let off = int_json(&e.offset);
                            if e.anchor == AnchorId::INTEGRAL {
                                off
                            } else {
                                json!({"anchor": self.anchors.name(e.anchor), "offset": off})
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"n": self.n, "anchors": anchors, "rows": rows})
    }
}

fn int_json(v: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::String(v.to_string()),
    }
}

fn parse_int(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap_or_default())),
        serde_json::Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected integer offset, found {other}"))),
    }
}

fn parse_entry(e: &serde_json::Value, table: &mut AnchorTable) -> Result<Entry> {
    if let Some(obj) = e.as_object() {
        let name = obj
            .get("anchor")
            .and_then(|a| a.as_str())
            .ok_or_else(|| Error::Parse("anchored entry needs an \"anchor\" name".into()))?;
        let id = table.id(name).ok_or_else(|| Error::UnknownAnchor(name.to_string()))?;
        let offset = match obj.get("offset") {
            Some(o) => parse_int(o)?,
            None => BigInt::zero(),
        };
        return Ok(Entry::new(id, offset));
    }
    let v = crate::rational::serde_q::from_json(e)?;
    if is_integer(&v) {
        return Ok(Entry::new(AnchorId::INTEGRAL, v.to_integer()));
    }
    let id = match table.class_of(&v) {
        Some(id) => id,
        None => table.insert(fmt_q(&v), v.clone())?,
    };
    let off = &v - table.value(id);
    Ok(Entry::new(id, off.to_integer()))
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Tableau::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Tableau {
    /// Staircase layout, top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (1..=self.n)
            .rev()
            .map(|k| self.row(k).iter().map(|e| self.format_entry(e)).collect())
            .collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let pad = " ".repeat(i * (w + 1) / 2);
            let line: Vec<String> = row.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "{pad}{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// An integer shift supported on rows `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftVector {
    n: usize,
    z: BTreeMap<Position, BigInt>,
}

impl ShiftVector {
    pub fn zero(n: usize) -> Self {
        ShiftVector { n, z: BTreeMap::new() }
    }

    pub fn new(n: usize, z: BTreeMap<Position, BigInt>) -> Result<Self> {
        for p in z.keys() {
            if !p.is_valid(n) || p.row == n {
                return Err(Error::Shape(format!("shift at {p} outside rows 1..{}", n - 1)));
            }
        }
        let z = z.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(ShiftVector { n, z })
    }

    pub fn delta(n: usize, p: Position) -> Result<Self> {
        Self::new(n, BTreeMap::from([(p, BigInt::from(1))]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: Position) -> BigInt {
        self.z.get(&p).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Position, &BigInt)> {
        self.z.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_empty()
    }

    pub fn max_norm(&self) -> BigInt {
        self.z.values().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn scaled(&self, c: i64) -> Self {
        let z = self.z.iter().map(|(p, v)| (*p, v * c)).filter(|(_, v)| !v.is_zero()).collect();
        ShiftVector { n: self.n, z }
    }
}

impl std::ops::Add for &ShiftVector {
    type Output = ShiftVector;

    fn add(self, rhs: &ShiftVector) -> ShiftVector {
        assert_eq!(self.n, rhs.n);
        let mut z = self.z.clone();
        for (p, v) in &rhs.z {
            *z.entry(*p).or_default() += v;
        }
        z.retain(|_, v| !v.is_zero());
        ShiftVector { n: self.n, z }
    }
}

impl std::ops::Neg for &ShiftVector {
    type Output = ShiftVector;

    fn neg(self) -> ShiftVector {
        self.scaled(-1)
    }
}

/// An element of `S_n × ... × S_1`; `rows[k-1][j-1]` is the image of column `j` in row `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rows: Vec<Vec<usize>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { rows: (1..=n).map(|k| (1..=k).collect()).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            let k = i + 1;
            let mut seen = vec![false; k + 1];
            if r.len() != k {
                return Err(Error::Shape(format!("row {k} permutation has length {}", r.len())));
            }
            for &c in r {
                if c < 1 || c > k || seen[c] {
                    return Err(Error::Shape(format!("row {k} is not a permutation")));
                }
                seen[c] = true;
            }
        }
        Ok(GroupElement { rows })
    }

    /// Transposition of columns `i` and `j` in row `k`.
    pub fn swap(n: usize, k: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.rows[k - 1].swap(i - 1, j - 1);
        g
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, k: usize) -> &[usize] {
        &self.rows[k - 1]
    }

    pub fn apply(&self, p: Position) -> Position {
        Position::new(p.row, self.rows[p.row - 1][p.col - 1])
    }

    pub fn inverse(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut inv = vec![0; r.len()];
                for (j, &c) in r.iter().enumerate() {
                    inv[c - 1] = j + 1;
                }
                inv
            })
            .collect();
        GroupElement { rows }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| b.iter().map(|&c| a[c - 1]).collect())
            .collect();
        GroupElement { rows }
    }

    /// Every element of the group, in a fixed order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for k in 1..=n {
            let perms = permutations(k);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Vec<usize>>| {
                    perms.iter().map(move |p| {
                        let mut r = prefix.clone();
                        r.push(p.clone());
                        r
                    })
                })
                .collect();
        }
        out.into_iter().map(|rows| GroupElement { rows }).collect()
    }
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (1..=k).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All standard tableaux with the given top row.
///
/// The top row must lie in a single integral class; otherwise the interlacing
/// conditions cannot hold and the request is rejected.
pub fn enumerate_standard(top_row: &[Entry], anchors: Arc<AnchorTable>) -> Result<Vec<Tableau>> {
    let n = top_row.len();
    if n == 0 {
        return Err(Error::Shape("empty top row".into()));
    }
    let anchor = top_row[0].anchor;
    if top_row.iter().any(|e| e.anchor != anchor) {
        return Err(Error::InfiniteEnumeration("top row spans several integral classes".into()));
    }
    let top: Vec<BigInt> = top_row.iter().map(|e| e.offset.clone()).collect();
    let mut rows_rev = vec![top];
    let mut out = Vec::new();
    fill_rows(n, &mut rows_rev, &mut |rows| {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|v| Entry::new(anchor, v.clone())).collect())
            .collect();
        out.push(Tableau::from_rows(rows, anchors.clone()).expect("shape is complete"));
    });
    Ok(out)
}

fn fill_rows(n: usize, rows: &mut Vec<Vec<BigInt>>, emit: &mut dyn FnMut(&[Vec<BigInt>])) {
    let above = rows.last().unwrap().clone();
    let k = above.len() - 1;
    if k == 0 {
        emit(rows);
        return;
    }
    // l_{k,i} ranges over (l_{k+1,i+1}, l_{k+1,i}].
    let mut row = vec![BigInt::zero(); k];
    fn choose(
        i: usize,
        above: &[BigInt],
        row: &mut Vec<BigInt>,
        rows: &mut Vec<Vec<BigInt>>,
        n: usize,
        emit: &mut dyn FnMut(&[Vec<BigInt>]),
    ) {
        if i == row.len() {
            rows.push(row.clone());
            fill_rows(n, rows, emit);
            rows.pop();
            return;
        }
        let mut v: BigInt = &above[i + 1] + 1;
        while v <= above[i] {
            row[i] = v.clone();
            choose(i + 1, above, row, rows, n, emit);
            v += 1;
        }
    }
    choose(0, &above, &mut row, rows, n, emit);
}

/// Standard tableaux for an integer top row.
pub fn enumerate_standard_int(top: &[i64]) -> Vec<Tableau> {
    let row: Vec<Entry> = top.iter().map(|&v| Entry::int(v)).collect();
    enumerate_standard(&row, Arc::new(AnchorTable::new())).expect("integral top row")
}

//! The Gelfand-Tsetlin subalgebra: the generators `c_mk`, their expected
//! eigenvalues `γ_mk`, and fingerprints built from them.

use std::collections::BTreeMap;

use num_traits::{One, Pow, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::action::{Basis, BasisSpec, Engine, FormalVector, Gen};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};
use crate::tableau::Tableau;

/// `γ_mk(l) = Σ_i (l_i + m - 1)^k Π_{j≠i} (1 - 1/(l_i - l_j))`.
pub fn gamma_value(m: usize, k: usize, row: &[Q]) -> Result<Q> {
    if row.len() != m || k == 0 {
        return Err(Error::Shape(format!("γ_{m}{k} needs a row of length {m} and k ≥ 1")));
    }
    let shift = q(m as i64 - 1);
    let mut total = Q::zero();
    for (i, x) in row.iter().enumerate() {
        let mut term: Q = Pow::pow(x + &shift, k as u32);
        for (j, y) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = x - y;
            if d.is_zero() {
                return Err(Error::SingularRow(m));
            }
            term *= Q::one() - d.recip();
        }
        total += term;
    }
    Ok(total)
}

/// The `m^k` index words `E_{i1 i2} E_{i2 i3} ... E_{ik i1}` in lexicographic order of the tuple.
pub fn cmk_expression(m: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut tuple = vec![1usize; k];
    if m == 0 || k == 0 {
        return out;
    }
    loop {
        out.push((0..k).map(|s| (tuple[s], tuple[(s + 1) % k])).collect());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if tuple[pos] < m {
                tuple[pos] += 1;
                for t in &mut tuple[pos + 1..] {
                    *t = 1;
                }
                break;
            }
        }
    }
}

pub fn cmk_words(m: usize, k: usize) -> Vec<Vec<Gen>> {
    cmk_expression(m, k).into_iter().map(|w| w.into_iter().map(|(i, j)| Gen::unit(i, j)).collect()).collect()
}

fn check_budget(n: usize, m: usize, k: usize) -> Result<()> {
    if m == 0 || k == 0 || k > m || m > n {
        return Err(Error::Shape(format!("c_{m}{k} needs 1 ≤ k ≤ m ≤ {n}")));
    }
    if n > 4 || k > 4 {
        return Err(Error::BudgetExceeded(format!("c_{m}{k} for n = {n} is beyond n ≤ 4, k ≤ 4")));
    }
    Ok(())
}

pub fn apply_cmk(b: &dyn Basis, m: usize, k: usize, t: &Tableau) -> Result<FormalVector> {
    check_budget(b.n(), m, k)?;
    Engine::new(b).apply_cmk(m, k, t)
}

/// `c_mk t - γ_mk(row m of t)·t`; zero when the eigenvalue formula holds.
pub fn gamma_defect(eng: &mut Engine, m: usize, k: usize, t: &Tableau) -> Result<FormalVector> {
    check_budget(eng.n(), m, k)?;
    let lhs = eng.apply_cmk(m, k, t)?;
    let g = gamma_value(m, k, &t.row_values(m))?;
    Ok(&lhs - &FormalVector::basis(t.clone()).scaled(&g))
}

pub fn check_gamma_action(b: &dyn Basis, t: &Tableau, m: usize, k: usize) -> Result<(bool, FormalVector)> {
    let d = gamma_defect(&mut Engine::new(b), m, k, t)?;
    Ok((d.is_zero(), d))
}

/// The values `γ_mk` per row, together with the row multisets. Rows where `γ`
/// is singular carry no values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenFingerprint {
    pub gamma: BTreeMap<(usize, usize), Q>,
    pub row_multisets: Vec<Vec<Q>>,
}

impl EigenFingerprint {
    pub fn singular_rows(&self) -> Vec<usize> {
        (1..=self.row_multisets.len()).filter(|m| !self.gamma.contains_key(&(*m, 1))).collect()
    }
}

impl Serialize for EigenFingerprint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Gamma<'a>(&'a BTreeMap<(usize, usize), Q>);
        impl Serialize for Gamma<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for ((m, k), v) in self.0 {
                    map.serialize_entry(&format!("{m},{k}"), &fmt_q(v))?;
                }
                map.end()
            }
        }
        let rows: Vec<Vec<String>> = self.row_multisets.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("gamma", &Gamma(&self.gamma))?;
        map.serialize_entry("row_multisets", &rows)?;
        map.end()
    }
}

pub fn fingerprint(t: &Tableau) -> EigenFingerprint {
    let mut gamma = BTreeMap::new();
    let mut row_multisets = Vec::new();
    for m in 1..=t.n() {
        let row = t.row_values(m);
        let mut sorted = row.clone();
        sorted.sort();
        row_multisets.push(sorted);
        let vals: Result<Vec<Q>> = (1..=m).map(|k| gamma_value(m, k, &row)).collect();
        if let Ok(vals) = vals {
            for (k, v) in vals.into_iter().enumerate() {
                gamma.insert((m, k + 1), v);
            }
        }
    }
    EigenFingerprint { gamma, row_multisets }
}

/// Compares `γ` values row by row, falling back to row multisets on singular rows.
pub fn fingerprints_equal(a: &EigenFingerprint, b: &EigenFingerprint) -> bool {
    if a.row_multisets.len() != b.row_multisets.len() {
        return false;
    }
    (1..=a.row_multisets.len()).all(|m| {
        let ga: Vec<_> = (1..=m).map(|k| a.gamma.get(&(m, k))).collect();
        let gb: Vec<_> = (1..=m).map(|k| b.gamma.get(&(m, k))).collect();
        if ga.iter().chain(&gb).all(Option::is_some) {
            ga == gb
        } else {
            a.row_multisets[m - 1] == b.row_multisets[m - 1]
        }
    })
}

pub fn multiplicity_one_check(b: &BasisSpec, radius: u32) -> bool {
    let ball = crate::action::enumerate_ball(b, radius);
    distinct_fingerprints(&ball)
}

pub fn distinct_fingerprints(tabs: &[Tableau]) -> bool {
    let fps: Vec<EigenFingerprint> = tabs.iter().map(fingerprint).collect();
    (0..fps.len()).all(|i| (i + 1..fps.len()).all(|j| !fingerprints_equal(&fps[i], &fps[j])))
}

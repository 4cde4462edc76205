//! Loader for the standard-form table shipped in `data/standard_forms.toml`.

use std::sync::OnceLock;

use serde::Deserialize;

use super::Family;
use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};

const TABLE_SOURCE: &str = include_str!("../../data/standard_forms.toml");

#[derive(Debug, Deserialize)]
struct RawTable {
    form: Vec<RawForm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    family: String,
    param: Option<char>,
    min: Option<i64>,
    a: Vec<String>,
    b: Vec<String>,
    c: Vec<String>,
    sets: Vec<RawSets>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSets {
    k: Option<String>,
    s: Vec<String>,
}

/// One row of the table, possibly depending on a parameter.
#[derive(Debug)]
pub struct FormRow {
    pub index: usize,
    family: String,
    param: Option<char>,
    min: i64,
    a: Vec<String>,
    b: Vec<String>,
    c: Vec<String>,
    sets: Vec<RawSets>,
}

/// A table row evaluated at a parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableInstance {
    /// 0-based row in table order.
    pub row: usize,
    pub family: Family,
    /// The reduced triple `(a, b, c)` with `a` in the first slot.
    pub key: DimVector,
    /// `S_1, ..., S_a` as sorted 1-based indices.
    pub ssets: Vec<Vec<usize>>,
}

pub struct Table {
    rows: Vec<FormRow>,
}

/// Evaluates an affine expression such as `2m+3-k`.
pub(crate) fn eval_affine(expr: &str, vars: &[(char, i64)]) -> Result<i64> {
    let bad = || Error::Parse(format!("bad table expression {expr:?}"));
    let s: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut total = 0i64;
    let mut i = 0;
    while i < s.len() {
        let sign = match s[i] {
            '+' => {
                i += 1;
                1
            }
            '-' => {
                i += 1;
                -1
            }
            _ if i == 0 => 1,
            _ => return Err(bad()),
        };
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(s[start..i].iter().collect::<String>().parse().map_err(|_| bad())?)
        } else {
            None
        };
        let term = if i < s.len() && s[i].is_ascii_alphabetic() {
            let v = s[i];
            i += 1;
            let value = vars.iter().find(|(n, _)| *n == v).map(|&(_, x)| x).ok_or_else(bad)?;
            coeff.unwrap_or(1) * value
        } else {
            coeff.ok_or_else(bad)?
        };
        total += sign * term;
    }
    Ok(total)
}

fn eval_range(expr: &str, vars: &[(char, i64)]) -> Result<std::ops::RangeInclusive<i64>> {
    match expr.split_once("..") {
        Some((lo, hi)) => Ok(eval_affine(lo, vars)?..=eval_affine(hi, vars)?),
        None => {
            let v = eval_affine(expr, vars)?;
            Ok(v..=v)
        }
    }
}

/// Expands a part list, where `x^(e)` stands for `e` copies of `x`.
fn eval_parts(parts: &[String], vars: &[(char, i64)]) -> Result<Composition> {
    let mut out = Vec::new();
    for p in parts {
        let (value, count) = match p.split_once('^') {
            Some((v, e)) => {
                let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                (eval_affine(v, vars)?, eval_affine(e, vars)?)
            }
            None => (eval_affine(p, vars)?, 1),
        };
        let value = u32::try_from(value).map_err(|_| Error::Parse(format!("negative part in {p:?}")))?;
        for _ in 0..count {
            out.push(value);
        }
    }
    Ok(Composition::new(out))
}

impl FormRow {
    pub fn param(&self) -> Option<char> {
        self.param
    }

    pub fn min_param(&self) -> i64 {
        self.min
    }

    /// Weight of the row at parameter value `t`.
    pub fn weight_at(&self, t: i64) -> Result<u64> {
        let vars = self.vars(t);
        Ok(eval_parts(&self.a, &vars)?.weight())
    }

    fn vars(&self, t: i64) -> Vec<(char, i64)> {
        self.param.map(|p| vec![(p, t)]).unwrap_or_default()
    }

    fn family_at(&self, t: i64) -> Result<Family> {
        let t = t as u32;
        Ok(match self.family.as_str() {
            "point" => Family::Point,
            "nonspherical" => Family::NonSpherical,
            "four_two" => Family::FourTwo,
            "odd" => Family::Odd { m: t },
            "even" => Family::Even { m: t },
            "hook" => Family::Hook { n: t },
            other => return Err(Error::Parse(format!("unknown family {other:?} in table"))),
        })
    }

    pub fn instantiate(&self, t: i64) -> Result<TableInstance> {
        if self.param.is_some() && t < self.min {
            return Err(Error::IndexOutOfRange(format!("parameter {t} below {}", self.min)));
        }
        let vars = self.vars(t);
        let key = DimVector::triple(
            eval_parts(&self.a, &vars)?,
            eval_parts(&self.b, &vars)?,
            eval_parts(&self.c, &vars)?,
        )?;
        let n = key.weight() as i64;
        let mut ssets = Vec::new();
        for group in &self.sets {
            let ks = match &group.k {
                Some(k) => eval_range(k, &vars)?,
                None => 1..=1,
            };
            for k in ks {
                let mut kv = vars.clone();
                kv.push(('k', k));
                let mut set = Vec::new();
                for e in &group.s {
                    for x in eval_range(e, &kv)? {
                        if !(1..=n).contains(&x) {
                            return Err(Error::Invariant(format!(
                                "table row {} lists index {x} outside 1..{n}",
                                self.index + 1
                            )));
                        }
                        set.push(x as usize);
                    }
                }
                set.sort_unstable();
                set.dedup();
                ssets.push(set);
            }
        }
        let a1 = key.comp(0).parts()[0] as usize;
        if ssets.len() != a1 {
            return Err(Error::Invariant(format!(
                "table row {} has {} subsets for a_1 = {a1}",
                self.index + 1,
                ssets.len()
            )));
        }
        Ok(TableInstance { row: self.index, family: self.family_at(t)?, key, ssets })
    }
}

impl Table {
    fn load() -> Result<Self> {
        let raw: RawTable =
            toml::from_str(TABLE_SOURCE).map_err(|e| Error::Parse(format!("standard-form table: {e}")))?;
        let rows = raw
            .form
            .into_iter()
            .enumerate()
            .map(|(index, f)| FormRow {
                index,
                family: f.family,
                param: f.param,
                min: f.min.unwrap_or(0),
                a: f.a,
                b: f.b,
                c: f.c,
                sets: f.sets,
            })
            .collect();
        Ok(Table { rows })
    }

    pub fn rows(&self) -> &[FormRow] {
        &self.rows
    }

    /// Every row instantiated at every parameter value with weight at most
    /// `max_weight`, in table order and then by parameter.
    pub fn instances(&self, max_weight: u64) -> Result<Vec<TableInstance>> {
        let mut out = Vec::new();
        for row in &self.rows {
            match row.param {
                None => {
                    if row.weight_at(0)? <= max_weight {
                        out.push(row.instantiate(0)?);
                    }
                }
                Some(_) => {
                    let mut t = row.min;
                    while row.weight_at(t)? <= max_weight {
                        out.push(row.instantiate(t)?);
                        t += 1;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The first row (in table order) whose instance has the given reduced key.
    pub fn lookup(&self, key: &DimVector) -> Result<Option<TableInstance>> {
        let w = key.weight();
        for row in &self.rows {
            let params: Vec<i64> = match row.param {
                None => vec![0],
                Some(_) => (row.min..=w as i64).collect(),
            };
            for t in params {
                if row.weight_at(t)? != w {
                    continue;
                }
                let inst = row.instantiate(t)?;
                if &inst.key == key {
                    return Ok(Some(inst));
                }
            }
        }
        Ok(None)
    }
}

/// The shared, parsed table.
pub fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| Table::load().expect("bundled standard-form table parses"))
}

//! Dimensions of Hom spaces between flag objects.
//!
//! [`hom_dim_linalg`] solves the flag-preservation conditions directly;
//! [`hom_dim_formula`] evaluates the closed rank formula for a standard-form
//! source. The two are independent and are compared throughout the tests.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::catalog::{lookup, PiEntry, StandardForm};
use crate::composition::DimVector;
use crate::error::{Error, Result};
use crate::exactlin::{rank, Field, QuotientMap, Rationals, Subspace};
use crate::object::FlagObject;

fn check_compatible<F: Field>(src: &FlagObject<F>, tgt: &FlagObject<F>) -> Result<()> {
    if src.field() != tgt.field() {
        return Err(Error::FieldMismatch);
    }
    if src.lengths() != tgt.lengths() {
        return Err(Error::ShapeMismatch(format!(
            "lengths {:?} vs {:?}",
            src.lengths(),
            tgt.lengths()
        )));
    }
    Ok(())
}

/// `dim Hom(src, tgt)` by solving for all linear maps `V -> V'` that send
/// every flag member of `src` into the corresponding member of `tgt`.
///
/// A map is a matrix `X` acting on row vectors (`v -> v X`); the condition
/// `u X ∈ U'` becomes `<u X, w> = 0` for `w` in the annihilator of `U'`.
pub fn hom_dim_linalg<F: Field>(src: &FlagObject<F>, tgt: &FlagObject<F>) -> Result<usize> {
    check_compatible(src, tgt)?;
    let field = src.field();
    let (n1, n2) = (src.dim(), tgt.dim());
    if n1 == 0 || n2 == 0 {
        return Ok(0);
    }
    let unknowns = n1 * n2;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (fs, ft) in src.flags().iter().zip(tgt.flags()) {
        let mut prev: Option<&Subspace<F>> = None;
        for (u, w) in fs.members().iter().zip(ft.members()) {
            // Repeated source members add nothing beyond their first occurrence.
            if prev == Some(u) {
                continue;
            }
            prev = Some(u);
            if u.is_zero() || w.dim() == n2 {
                continue;
            }
            let ann = w.annihilator();
            for ub in u.basis() {
                for a in ann.basis() {
                    let mut row = vec![field.zero(); unknowns];
                    for (k, uk) in ub.iter().enumerate() {
                        if field.is_zero(uk) {
                            continue;
                        }
                        for (j, aj) in a.iter().enumerate() {
                            if !field.is_zero(aj) {
                                row[k * n2 + j] = field.mul(uk, aj);
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(unknowns - rank(&field, &rows, unknowns))
}

fn meet_all<F: Field>(start: Subspace<F>, parts: impl IntoIterator<Item = Subspace<F>>) -> Result<Subspace<F>> {
    parts.into_iter().try_fold(start, |acc, s| acc.intersect(&s))
}

/// `dim Hom(F', tgt)` for the standard-form source `F'` given by `sf`, whose
/// role `s` sits in slot `roles[s]` of `tgt`.
pub fn hom_dim_formula<F: Field>(sf: &StandardForm, roles: [usize; 3], tgt: &FlagObject<F>) -> Result<usize> {
    if tgt.flags().len() != 3 {
        return Err(Error::ShapeMismatch("target must be a triple of flags".into()));
    }
    let comps = [&sf.a, &sf.b, &sf.c];
    for s in 0..3 {
        if tgt.flag(roles[s]).len() != comps[s].len() {
            return Err(Error::ShapeMismatch(format!(
                "slot {} has length {}, source role needs {}",
                roles[s],
                tgt.flag(roles[s]).len(),
                comps[s].len()
            )));
        }
    }
    if sf.kset.len() > 2 {
        return Err(Error::OverlapTooLarge(sf.kset.len()));
    }
    let field = tgt.field();
    let n = tgt.dim();
    if n == 0 {
        return Ok(0);
    }
    let (fa, fb, fc) = (tgt.flag(roles[0]), tgt.flag(roles[1]), tgt.flag(roles[2]));
    let a_low = fa.member(sf.a_first());
    let a_top = fa.member(sf.a_last());

    let d: Vec<Subspace<F>> = sf
        .delta
        .iter()
        .map(|&(i, j)| {
            let x = fb.member(i).intersect(&fc.member(j))?;
            if a_top.dim() == n {
                Ok(x)
            } else {
                x.intersect(&a_top)
            }
        })
        .collect::<Result<_>>()?;
    let k = &sf.kset;
    let e: Vec<Subspace<F>> = sf
        .ssets
        .iter()
        .map(|s| {
            s.iter()
                .filter(|l| !k.contains(l))
                .try_fold(Subspace::zero(field, n), |acc, &l| acc.sum(&d[l - 1]))
        })
        .collect::<Result<_>>()?;

    let pi = QuotientMap::new(a_low);
    let qdim = pi.target_dim();
    let whole = Subspace::full(field, qdim);
    let dbar = |l: usize| pi.project(&d[l - 1]);
    let ebar: Vec<Subspace<F>> = e.iter().map(|x| pi.project(x)).collect::<Result<_>>()?;

    let mut total: i64 = d.iter().map(|x| x.dim() as i64).sum();
    total -= ebar.iter().map(|x| x.dim() as i64).sum::<i64>();
    match k.as_slice() {
        [] => {}
        &[mu] => {
            let dm = dbar(mu)?;
            total -= dm.dim() as i64;
            let containing = sf.ssets.iter().zip(&ebar).filter(|(s, _)| s.contains(&mu)).map(|(_, x)| x.clone());
            total += meet_all(dm, containing)?.dim() as i64;
        }
        &[mu, nu] => {
            let (dm, dn) = (dbar(mu)?, dbar(nu)?);
            total -= (dm.dim() + dn.dim()) as i64;
            let only = |x: usize, y: usize| {
                sf.ssets
                    .iter()
                    .zip(&ebar)
                    .filter(move |(s, _)| s.contains(&x) && !s.contains(&y))
                    .map(|(_, e)| e.clone())
            };
            let xs = meet_all(dm, only(mu, nu))?;
            let ys = meet_all(dn, only(nu, mu))?;
            let both = sf
                .ssets
                .iter()
                .zip(&ebar)
                .filter(|(s, _)| s.contains(&mu) && s.contains(&nu))
                .map(|(_, e)| e.clone());
            let zs = meet_all(whole, both)?;
            total += xs.intersect(&ys)?.dim() as i64;
            total += zs.intersect(&xs.sum(&ys)?)?.dim() as i64;
        }
        _ => unreachable!("checked above"),
    }
    usize::try_from(total).map_err(|_| Error::Invariant(format!("negative Hom dimension {total}")))
}

/// Which evaluation paths produced a Hom dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomPath {
    Formula,
    Linalg,
}

impl HomPath {
    pub fn name(&self) -> &'static str {
        match self {
            HomPath::Formula => "formula",
            HomPath::Linalg => "linalg",
        }
    }
}

fn hom_cache() -> &'static Mutex<HashMap<(DimVector, DimVector), usize>> {
    static CACHE: OnceLock<Mutex<HashMap<(DimVector, DimVector), usize>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `<I_d, I_e>` over the rationals, by the closed formula; memoized.
pub fn hom_indecomposables(d: &PiEntry, e: &PiEntry) -> Result<usize> {
    let key = (d.dim.clone(), e.dim.clone());
    if let Some(&v) = hom_cache().lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    if !d.dim.same_shape(&e.dim) {
        return Err(Error::ShapeMismatch(format!("{} vs {}", d.dim, e.dim)));
    }
    let v = hom_dim_formula(&d.standard_form()?, d.roles, &e.realize(Rationals)?)?;
    hom_cache().lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// Looks up two catalog keys and returns `<I_d, I_e>`.
pub fn hom_between_keys(d: &DimVector, e: &DimVector) -> Result<usize> {
    let find = |x: &DimVector| lookup(x)?.ok_or_else(|| Error::NotInCatalog(x.to_string()));
    hom_indecomposables(&find(d)?, &find(e)?)
}

/// `table[i][j] = <I_{entries[i]}, I_{entries[j]}>` over the rationals.
pub fn hom_table(entries: &[PiEntry]) -> Result<Vec<Vec<u64>>> {
    entries
        .par_iter()
        .map(|d| entries.iter().map(|e| hom_indecomposables(d, e).map(|v| v as u64)).collect())
        .collect()
}

/// `sum_{d,e} <I_d, I_e> m_d m_e` for a multiplicity vector indexed like `table`.
pub fn gram_hom(mults: &[u64], table: &[Vec<u64>]) -> Result<u64> {
    if table.len() != mults.len() || table.iter().any(|r| r.len() != mults.len()) {
        return Err(Error::ShapeMismatch("table does not cover the family".into()));
    }
    let mut total = 0u64;
    for (i, &mi) in mults.iter().enumerate() {
        if mi == 0 {
            continue;
        }
        for (j, &mj) in mults.iter().enumerate() {
            total += table[i][j] * mi * mj;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::composition::Composition;
    use crate::object::Flag;

    fn dv(parts: &[&[u32]]) -> DimVector {
        DimVector::from_parts(parts).unwrap()
    }

    fn entry(parts: &[&[u32]]) -> PiEntry {
        lookup(&dv(parts)).unwrap().unwrap()
    }

    #[test]
    fn four_two_is_schur() {
        let e = entry(&[&[4, 2], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]]);
        let x = e.realize(Rationals).unwrap();
        assert_eq!(hom_dim_linalg(&x, &x).unwrap(), 1);
        assert_eq!(hom_dim_formula(&e.standard_form().unwrap(), e.roles, &x).unwrap(), 1);
    }

    #[test]
    fn equal_complete_flags_give_borel() {
        let q = Rationals;
        let b = Flag::coordinate(q, &Composition::ones(2), false);
        let x = FlagObject::new(q, 2, vec![b.clone(), b]).unwrap();
        assert_eq!(hom_dim_linalg(&x, &x).unwrap(), 3);
        let z = FlagObject::zero(q, &[2, 2]);
        assert_eq!(hom_dim_linalg(&z, &x).unwrap(), 0);
        assert_eq!(hom_dim_linalg(&x, &z).unwrap(), 0);
    }

    #[test]
    fn table_is_asymmetric() {
        let unit = entry(&[&[1, 0], &[1, 0], &[0, 1]]);
        let big = entry(&[&[1, 1], &[1, 1], &[1, 1]]);
        let ab = hom_indecomposables(&unit, &big).unwrap();
        let ba = hom_indecomposables(&big, &unit).unwrap();
        assert_ne!(ab, ba);
        let t = hom_table(&[unit, big]).unwrap();
        assert_eq!(t[0][0], 1);
        assert_eq!(t[1][1], 1);
    }

    #[test]
    fn formula_against_zero_target() {
        let e = entry(&[&[1, 1], &[1, 1], &[1, 1]]);
        let z = FlagObject::zero(Rationals, &[2, 2, 2]);
        assert_eq!(hom_dim_formula(&e.standard_form().unwrap(), e.roles, &z).unwrap(), 0);
    }

    #[test]
    fn gram_examples() {
        let t = vec![vec![1]];
        assert_eq!(gram_hom(&[1], &t).unwrap(), 1);
        assert_eq!(gram_hom(&[4], &t).unwrap(), 16);
        assert!(gram_hom(&[1, 1], &t).is_err());
    }
}

//! Orbits of finite-type triple flag varieties.
//!
//! An orbit is labelled by a [`MultiplicityFamily`]: how many copies of each
//! indecomposable the corresponding object decomposes into. The rank order
//! compares the vectors `d -> <I_d, F_M>`; it is always implied by the
//! degeneration order and agrees with it for Dynkin targets.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{lookup, pi_catalog, PiEntry};
use crate::classify::{classify_triple, Classification};
use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::homcalc::{gram_hom, hom_indecomposables, hom_table};
use crate::exactlin::Subspace;
use crate::object::{Flag, FlagObject};

/// Multiplicities of indecomposables, listed in catalog order, zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicityFamily {
    pub terms: Vec<(DimVector, u64)>,
}

impl MultiplicityFamily {
    /// Merges repeated vectors, drops zero multiplicities and sorts the terms
    /// by weight and then by parts.
    pub fn new(terms: Vec<(DimVector, u64)>) -> Self {
        let mut merged: Vec<(DimVector, u64)> = Vec::new();
        let mut terms = terms;
        terms.sort_by(|(x, _), (y, _)| (x.weight(), x.flat()).cmp(&(y.weight(), y.flat())));
        for (d, m) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == d => *acc += m,
                _ => merged.push((d, m)),
            }
        }
        merged.retain(|(_, m)| *m > 0);
        MultiplicityFamily { terms: merged }
    }

    /// `sum m_d d`, or `None` for the empty family.
    pub fn total(&self) -> Result<Option<DimVector>> {
        let mut acc: Option<DimVector> = None;
        for (d, m) in &self.terms {
            let part = d.scale(u32::try_from(*m).map_err(|_| Error::Overflow("multiplicity"))?);
            acc = Some(match acc {
                None => part,
                Some(a) => a.add(&part)?,
            });
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(d, m)| json!({ "dim": d, "mult": m }))
                .collect(),
        )
    }

    fn label(&self) -> String {
        self.terms
            .iter()
            .map(|(d, m)| if *m == 1 { d.to_string() } else { format!("{m}x{d}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn require_finite(target: &DimVector) -> Result<Classification> {
    let c = classify_triple(target)?;
    if let Some(w) = c.witness.clone() {
        return Err(Error::InfiniteType(Box::new(w)));
    }
    Ok(c)
}

/// Dense multiplicity vectors (indexed like `catalog`) summing to `target`.
fn enumerate_dense(target: &DimVector, catalog: &[PiEntry]) -> Vec<Vec<u64>> {
    let mut order: Vec<usize> = (0..catalog.len()).collect();
    order.sort_by(|&x, &y| {
        let (dx, dy) = (&catalog[x].dim, &catalog[y].dim);
        dy.weight().cmp(&dx.weight()).then_with(|| dx.flat().cmp(&dy.flat()))
    });
    let flats: Vec<Vec<u32>> = order.iter().map(|&i| catalog[i].dim.flat()).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u64; catalog.len()];
    let mut dead: HashSet<(usize, Vec<u32>)> = HashSet::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        pos: usize,
        residual: &mut Vec<u32>,
        order: &[usize],
        flats: &[Vec<u32>],
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        dead: &mut HashSet<(usize, Vec<u32>)>,
    ) -> bool {
        if residual.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return true;
        }
        if pos == order.len() || dead.contains(&(pos, residual.clone())) {
            return false;
        }
        let d = &flats[pos];
        let max = d
            .iter()
            .zip(residual.iter())
            .filter(|(&x, _)| x > 0)
            .map(|(&x, &r)| r / x)
            .min()
            .unwrap_or(0);
        let mut found = false;
        for m in (0..=max).rev() {
            for (r, &x) in residual.iter_mut().zip(d) {
                *r -= x * m;
            }
            cur[order[pos]] = u64::from(m);
            found |= dfs(pos + 1, residual, order, flats, cur, out, dead);
            for (r, &x) in residual.iter_mut().zip(d) {
                *r += x * m;
            }
        }
        cur[order[pos]] = 0;
        if !found {
            dead.insert((pos, residual.clone()));
        }
        found
    }

    let mut residual = target.flat();
    dfs(0, &mut residual, &order, &flats, &mut cur, &mut out, &mut dead);
    out
}

fn to_family(dense: &[u64], catalog: &[PiEntry]) -> MultiplicityFamily {
    MultiplicityFamily::new(
        dense
            .iter()
            .zip(catalog)
            .filter(|(&m, _)| m > 0)
            .map(|(&m, e)| (e.dim.clone(), m))
            .collect(),
    )
}

/// All orbits of a finite-type triple, in depth-first order (heavier
/// indecomposables first, larger multiplicities first).
pub fn enumerate_orbits(target: &DimVector) -> Result<Vec<MultiplicityFamily>> {
    require_finite(target)?;
    let catalog = pi_catalog(target)?;
    Ok(enumerate_dense(target, &catalog).iter().map(|m| to_family(m, &catalog)).collect())
}

fn entry_for(d: &DimVector) -> Result<PiEntry> {
    lookup(d)?.ok_or_else(|| Error::NotInCatalog(d.to_string()))
}

/// Block-diagonal direct sum of the standard-form indecomposables.
pub fn orbit_representative<F: Field>(m: &MultiplicityFamily, field: F) -> Result<FlagObject<F>> {
    let lengths = m
        .terms
        .first()
        .map(|(d, _)| d.lengths())
        .ok_or_else(|| Error::InvalidObject("empty multiplicity family".into()))?;
    let mut acc = FlagObject::zero(field, &lengths);
    for (d, mult) in &m.terms {
        let x = entry_for(d)?.realize(field)?;
        for _ in 0..*mult {
            acc = acc.direct_sum(&x)?;
        }
    }
    Ok(acc)
}

/// `<F_M, F_M> - Q(target)`.
pub fn codim(m: &MultiplicityFamily) -> Result<u64> {
    let target = m.total()?.ok_or_else(|| Error::InvalidObject("empty multiplicity family".into()))?;
    let entries: Vec<PiEntry> = m.terms.iter().map(|(d, _)| entry_for(d)).collect::<Result<_>>()?;
    let table = hom_table(&entries)?;
    let mults: Vec<u64> = m.terms.iter().map(|(_, x)| *x).collect();
    signed_codim(gram_hom(&mults, &table)?, &target)
}

fn signed_codim(gram: u64, target: &DimVector) -> Result<u64> {
    let c = i128::from(gram) - i128::from(target.tits_q()?);
    u64::try_from(c).map_err(|_| Error::Invariant(format!("negative codimension {c} for {target}")))
}

/// `<I_d, F_M>` for every `d` in `catalog`.
pub fn rank_vector(m: &MultiplicityFamily, catalog: &[PiEntry]) -> Result<Vec<u64>> {
    let entries: Vec<PiEntry> = m.terms.iter().map(|(d, _)| entry_for(d)).collect::<Result<_>>()?;
    catalog
        .iter()
        .map(|d| {
            entries.iter().zip(&m.terms).try_fold(0u64, |acc, (e, (_, mult))| {
                Ok(acc + hom_indecomposables(d, e)? as u64 * mult)
            })
        })
        .collect()
}

/// Whether `<I_d, F_{M1}> >= <I_d, F_{M2}>` for every `d` in `catalog`.
pub fn hom_order_leq(m1: &MultiplicityFamily, m2: &MultiplicityFamily, catalog: &[PiEntry]) -> Result<bool> {
    if m1.total()? != m2.total()? {
        return Err(Error::ShapeMismatch("families have different targets".into()));
    }
    let (r1, r2) = (rank_vector(m1, catalog)?, rank_vector(m2, catalog)?);
    Ok(r1.iter().zip(&r2).all(|(a, b)| a >= b))
}

/// Orbits of one target together with the data needed to compare them.
pub struct OrbitSpace {
    pub target: DimVector,
    pub classification: Classification,
    pub catalog: Vec<PiEntry>,
    dense: Vec<Vec<u64>>,
    table: OnceLock<Vec<Vec<u64>>>,
    ranks: OnceLock<Vec<Vec<u64>>>,
}

impl OrbitSpace {
    pub fn new(target: &DimVector) -> Result<Self> {
        let classification = require_finite(target)?;
        let catalog = pi_catalog(target)?;
        let dense = enumerate_dense(target, &catalog);
        Ok(OrbitSpace {
            target: target.clone(),
            classification,
            catalog,
            dense,
            table: OnceLock::new(),
            ranks: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.dense.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dense.is_empty()
    }

    pub fn multiplicities(&self, i: usize) -> &[u64] {
        &self.dense[i]
    }

    pub fn family(&self, i: usize) -> MultiplicityFamily {
        to_family(&self.dense[i], &self.catalog)
    }

    pub fn families(&self) -> Vec<MultiplicityFamily> {
        (0..self.len()).map(|i| self.family(i)).collect()
    }

    pub fn index_of(&self, m: &MultiplicityFamily) -> Option<usize> {
        let m = MultiplicityFamily::new(m.terms.clone());
        (0..self.len()).find(|&i| self.family(i) == m)
    }

    /// `table[i][j] = <I_{catalog[i]}, I_{catalog[j]}>`.
    pub fn table(&self) -> Result<&Vec<Vec<u64>>> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = hom_table(&self.catalog)?;
        Ok(self.table.get_or_init(|| t))
    }

    /// Rank vectors `(<I_d, F_M>)_d` of all orbits.
    pub fn ranks(&self) -> Result<&Vec<Vec<u64>>> {
        if let Some(r) = self.ranks.get() {
            return Ok(r);
        }
        let table = self.table()?;
        let r = self
            .dense
            .par_iter()
            .map(|m| {
                table
                    .iter()
                    .map(|row| row.iter().zip(m).map(|(t, x)| t * x).sum())
                    .collect()
            })
            .collect();
        Ok(self.ranks.get_or_init(|| r))
    }

    pub fn codim(&self, i: usize) -> Result<u64> {
        signed_codim(gram_hom(&self.dense[i], self.table()?)?, &self.target)
    }

    pub fn codims(&self) -> Result<Vec<u64>> {
        (0..self.len()).map(|i| self.codim(i)).collect()
    }

    pub fn leq(&self, i: usize, j: usize) -> Result<bool> {
        let r = self.ranks()?;
        Ok(r[i].iter().zip(&r[j]).all(|(a, b)| a >= b))
    }

    pub fn representative<F: Field>(&self, i: usize, field: F) -> Result<FlagObject<F>> {
        orbit_representative(&self.family(i), field)
    }

    /// Cover relations of the rank order, from the more degenerate orbit to
    /// the less degenerate one.
    pub fn hasse(&self) -> Result<Hasse> {
        let n = self.len();
        let ranks = self.ranks()?;
        let mut seen = HashSet::new();
        for r in ranks {
            if !seen.insert(r) {
                return Err(Error::Invariant("two orbits share a rank vector".into()));
            }
        }
        let less: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| i != j && ranks[i].iter().zip(&ranks[j]).all(|(a, b)| a >= b))
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        Ok(Hasse {
            target: self.target.clone(),
            nodes: self.families(),
            codims: self.codims()?,
            edges,
            dynkin: self.classification.is_dynkin(),
        })
    }
}

/// The Hasse diagram of the rank order on the orbits of one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hasse {
    pub target: DimVector,
    pub nodes: Vec<MultiplicityFamily>,
    pub codims: Vec<u64>,
    pub edges: Vec<(usize, usize)>,
    /// When false, the rank order is only known to contain the degeneration order.
    pub dynkin: bool,
}

/// Enumerates the orbits of `target` and builds their Hasse diagram.
pub fn hasse(target: &DimVector) -> Result<Hasse> {
    OrbitSpace::new(target)?.hasse()
}

impl Hasse {
    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target,
            "order": "hom-rank",
            "dynkin": self.dynkin,
            "nodes": self.nodes.iter().zip(&self.codims).enumerate().map(|(i, (m, c))| json!({
                "id": i,
                "family": m.to_json(),
                "codim": c,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph hasse {{");
        let _ = writeln!(s, "  label=\"hom-rank order on {}{}\";", self.target, if self.dynkin { "" } else { " (non-Dynkin)" });
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, (m, c)) in self.nodes.iter().zip(&self.codims).enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\\ncodim {c}\"];", m.label());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// An orbit of a pair of flags: a matrix with row sums `b` and column sums `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypeAOrbit {
    pub matrix: Vec<Vec<u64>>,
}

fn margins(matrix: &[Vec<u64>]) -> Result<(Composition, Composition)> {
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch("ragged matrix".into()));
    }
    let to_u32 = |x: u64| u32::try_from(x).map_err(|_| Error::Overflow("margin"));
    let rows = matrix.iter().map(|r| to_u32(r.iter().sum())).collect::<Result<_>>()?;
    let colsum = (0..cols).map(|j| to_u32(matrix.iter().map(|r| r[j]).sum())).collect::<Result<_>>()?;
    Ok((Composition::new(rows), Composition::new(colsum)))
}

fn indicator(len: usize, pos: &[usize]) -> Composition {
    let mut v = vec![0u32; len];
    for &p in pos {
        v[p - 1] += 1;
    }
    Composition::new(v)
}

/// All non-negative integer matrices with row sums `b` and column sums `c`.
pub fn contingency_tables(b: &Composition, c: &Composition) -> Vec<Vec<Vec<u64>>> {
    let (q, r) = (b.len(), c.len());
    let mut out = Vec::new();
    let mut m = vec![vec![0u64; r]; q];
    let mut colleft: Vec<u64> = c.parts().iter().map(|&x| u64::from(x)).collect();
    fn fill(
        i: usize,
        j: usize,
        rowleft: u64,
        b: &Composition,
        colleft: &mut Vec<u64>,
        m: &mut Vec<Vec<u64>>,
        out: &mut Vec<Vec<Vec<u64>>>,
    ) {
        let (q, r) = (m.len(), colleft.len());
        if i == q {
            if colleft.iter().all(|&x| x == 0) {
                out.push(m.clone());
            }
            return;
        }
        if j == r - 1 {
            if rowleft <= colleft[j] {
                m[i][j] = rowleft;
                colleft[j] -= rowleft;
                let next = if i + 1 < q { u64::from(b.parts()[i + 1]) } else { 0 };
                fill(i + 1, 0, next, b, colleft, m, out);
                colleft[j] += rowleft;
                m[i][j] = 0;
            }
            return;
        }
        for v in (0..=rowleft.min(colleft[j])).rev() {
            m[i][j] = v;
            colleft[j] -= v;
            fill(i, j + 1, rowleft - v, b, colleft, m, out);
            colleft[j] += v;
        }
        m[i][j] = 0;
    }
    if q > 0 && r > 0 && b.weight() == c.weight() {
        fill(0, 0, u64::from(b.parts()[0]), b, &mut colleft, &mut m, &mut out);
    }
    out
}

impl TypeAOrbit {
    pub fn margins(&self) -> Result<(Composition, Composition)> {
        margins(&self.matrix)
    }

    /// The family `sum m_ij I_ij` in the triple `((n), b, c)`.
    pub fn to_family(&self) -> Result<MultiplicityFamily> {
        let (b, c) = self.margins()?;
        let mut terms = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    let d = DimVector::triple(Composition::trivial(1), indicator(b.len(), &[i + 1]), indicator(c.len(), &[j + 1]))?;
                    terms.push((d, m));
                }
            }
        }
        Ok(MultiplicityFamily::new(terms))
    }

    /// The pair of coordinate flags attached to the matrix, with the trivial
    /// flag in the first slot.
    pub fn explicit_representative<F: Field>(&self, field: F) -> Result<FlagObject<F>> {
        let (labels, b, c) = explicit_pair(field, &self.matrix)?;
        let a = Flag::new(vec![Subspace::full(field, labels.len())], labels.len())?;
        FlagObject::new(field, labels.len(), vec![a, b, c])
    }

    pub fn from_family(m: &MultiplicityFamily) -> Result<Self> {
        let (_, first) = m.terms.first().map(|(d, x)| (x, d)).ok_or_else(|| Error::InvalidObject("empty family".into()))?;
        let (q, r) = (first.comp(1).len(), first.comp(2).len());
        let mut matrix = vec![vec![0u64; r]; q];
        for (d, mult) in &m.terms {
            if d.weight() != 1 || d.comp(0).len() != 1 {
                return Err(Error::InvalidObject(format!("{d} is not a two-flag unit")));
            }
            let i = d.comp(1).first_nonzero().expect("weight one");
            let j = d.comp(2).first_nonzero().expect("weight one");
            matrix[i][j] += mult;
        }
        Ok(TypeAOrbit { matrix })
    }
}

/// The basis `e_ijk` (`k <= m_ij`) in `(i, j, k)` order, with `B_i` spanned by
/// the vectors whose first index is at most `i` and `C_j` by those whose second
/// index is at most `j`. Returns the labels `(i, j)` (1-based) of the basis.
fn explicit_pair<F: Field>(field: F, matrix: &[Vec<u64>]) -> Result<(Vec<(usize, usize)>, Flag<F>, Flag<F>)> {
    let mut labels = Vec::new();
    for (i, row) in matrix.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            labels.extend(std::iter::repeat_n((i + 1, j + 1), m as usize));
        }
    }
    let n = labels.len();
    let r = matrix.first().map_or(0, Vec::len);
    let member = |pick: &dyn Fn(&(usize, usize)) -> bool| {
        Subspace::coordinate(field, n, labels.iter().enumerate().filter(|(_, l)| pick(l)).map(|(x, _)| x))
    };
    let b = Flag::new((1..=matrix.len()).map(|i| member(&|l| l.0 <= i)).collect(), n)?;
    let c = Flag::new((1..=r).map(|j| member(&|l| l.1 <= j)).collect(), n)?;
    Ok((labels, b, c))
}

fn partial_sum(matrix: &[Vec<u64>], i: usize, j: usize) -> Result<u64> {
    let q = matrix.len();
    let r = matrix.first().map_or(0, Vec::len);
    if i > q || j > r {
        return Err(Error::IndexOutOfRange(format!("({i},{j}) outside {q}x{r}")));
    }
    Ok(matrix[..i].iter().map(|row| row[..j].iter().sum::<u64>()).sum())
}

/// `<I_ij, F_M> = sum_{k <= i, l <= j} m_kl` (1-based).
pub fn type_a_ranks(m: &TypeAOrbit, i: usize, j: usize) -> Result<u64> {
    partial_sum(&m.matrix, i, j)
}

fn inversion_sum(matrix: &[Vec<u64>]) -> u64 {
    let mut total = 0;
    for (i, row) in matrix.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate() {
            if mij == 0 || i == 0 || j == 0 {
                continue;
            }
            total += mij * partial_sum(matrix, i, j).expect("in range");
        }
    }
    total
}

/// `sum_{k < i, l < j} m_ij m_kl`.
pub fn type_a_codim(m: &TypeAOrbit) -> u64 {
    inversion_sum(&m.matrix)
}

/// An orbit of two flags and a line: a staircase `delta` and a matrix that is
/// positive on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypeSOrbit {
    /// `(i_1, j_1), ..., (i_t, j_t)`, 1-based, `i` increasing and `j` decreasing.
    pub delta: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<u64>>,
}

/// Whether `delta` is a non-empty staircase inside a `q x r` box.
pub fn is_staircase(delta: &[(usize, usize)], q: usize, r: usize) -> bool {
    !delta.is_empty()
        && delta.iter().all(|&(i, j)| (1..=q).contains(&i) && (1..=r).contains(&j))
        && delta.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1)
}

/// `{(i_1, j_2), (i_2, j_3), ..., (i_{t-1}, j_t)}`.
pub fn in_delta(delta: &[(usize, usize)]) -> Vec<(usize, usize)> {
    delta.windows(2).map(|w| (w[0].0, w[1].1)).collect()
}

/// Every `(k, l)` in `d1` is dominated by some `(i, j)` in `d2`.
pub fn delta_leq(d1: &[(usize, usize)], d2: &[(usize, usize)]) -> bool {
    d1.iter().all(|&(k, l)| d2.iter().any(|&(i, j)| k <= i && l <= j))
}

/// A rank query against a two-flags-and-a-line orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeSQuery {
    Unit(usize, usize),
    Delta(Vec<(usize, usize)>),
}

/// All staircases in a `q x r` box.
pub fn staircases(q: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    fn rec(i0: usize, jmax: usize, q: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        for i in i0..=q {
            for j in 1..=jmax {
                cur.push((i, j));
                out.push(cur.clone());
                if j > 1 {
                    rec(i + 1, j - 1, q, cur, out);
                }
                cur.pop();
            }
        }
    }
    rec(1, r, q, &mut Vec::new(), &mut out);
    out
}

impl TypeSOrbit {
    pub fn new(delta: Vec<(usize, usize)>, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let q = matrix.len();
        let r = matrix.first().map_or(0, Vec::len);
        if !is_staircase(&delta, q, r) {
            return Err(Error::InvalidObject(format!("{delta:?} is not a staircase in a {q}x{r} box")));
        }
        if delta.iter().any(|&(i, j)| matrix[i - 1][j - 1] == 0) {
            return Err(Error::InvalidObject("matrix must be positive on the staircase".into()));
        }
        Ok(TypeSOrbit { delta, matrix })
    }

    /// All orbits with `a = (1, n-1)` and the given `b`, `c`.
    pub fn enumerate(b: &Composition, c: &Composition) -> Vec<TypeSOrbit> {
        let tables = contingency_tables(b, c);
        let mut out = Vec::new();
        for delta in staircases(b.len(), c.len()) {
            for m in &tables {
                if let Ok(o) = TypeSOrbit::new(delta.clone(), m.clone()) {
                    out.push(o);
                }
            }
        }
        out
    }

    /// The family `I_delta + sum m'_ij I_ij` with `m' = m - [delta]`.
    pub fn to_family(&self) -> Result<MultiplicityFamily> {
        let (b, c) = margins(&self.matrix)?;
        let t = self.delta.len();
        let is: Vec<usize> = self.delta.iter().map(|&(i, _)| i).collect();
        let js: Vec<usize> = self.delta.iter().map(|&(_, j)| j).collect();
        let head = DimVector::triple(Composition::new(vec![1, t as u32 - 1]), indicator(b.len(), &is), indicator(c.len(), &js))?;
        let mut terms = vec![(head, 1)];
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                let m = m - u64::from(self.delta.contains(&(i + 1, j + 1)));
                if m > 0 {
                    let d = DimVector::triple(Composition::new(vec![0, 1]), indicator(b.len(), &[i + 1]), indicator(c.len(), &[j + 1]))?;
                    terms.push((d, m));
                }
            }
        }
        Ok(MultiplicityFamily::new(terms))
    }

    /// The coordinate flags of the matrix together with the line spanned by
    /// `sum_{(i,j) in delta} e_ij1`.
    pub fn explicit_representative<F: Field>(&self, field: F) -> Result<FlagObject<F>> {
        let (labels, b, c) = explicit_pair(field, &self.matrix)?;
        let n = labels.len();
        let mut v = vec![field.zero(); n];
        for p in &self.delta {
            let x = labels.iter().position(|l| l == p).expect("matrix is positive on delta");
            v[x] = field.one();
        }
        let line = Subspace::span(field, n, vec![v])?;
        let a = Flag::new(vec![line, Subspace::full(field, n)], n)?;
        FlagObject::new(field, n, vec![a, b, c])
    }

    pub fn from_family(m: &MultiplicityFamily) -> Result<Self> {
        let heads: Vec<&DimVector> = m.terms.iter().map(|(d, _)| d).filter(|d| d.comp(0).parts()[0] == 1).collect();
        let [head] = heads.as_slice() else {
            return Err(Error::InvalidObject("family needs exactly one summand meeting the line".into()));
        };
        let pos = |c: &Composition| -> Vec<usize> {
            c.parts().iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i + 1).collect()
        };
        let is = pos(head.comp(1));
        let mut js = pos(head.comp(2));
        js.reverse();
        let delta: Vec<(usize, usize)> = is.into_iter().zip(js).collect();
        let (q, r) = (head.comp(1).len(), head.comp(2).len());
        let mut matrix = vec![vec![0u64; r]; q];
        for &(i, j) in &delta {
            matrix[i - 1][j - 1] += 1;
        }
        for (d, mult) in &m.terms {
            if d == *head {
                continue;
            }
            if d.weight() != 1 {
                return Err(Error::InvalidObject(format!("{d} is not a unit")));
            }
            let i = d.comp(1).first_nonzero().expect("weight one");
            let j = d.comp(2).first_nonzero().expect("weight one");
            matrix[i][j] += mult;
        }
        TypeSOrbit::new(delta, matrix)
    }
}

pub fn type_s_ranks(o: &TypeSOrbit, query: &TypeSQuery) -> Result<u64> {
    match query {
        TypeSQuery::Unit(i, j) => partial_sum(&o.matrix, *i, *j),
        TypeSQuery::Delta(d2) => {
            let q = o.matrix.len();
            let r = o.matrix.first().map_or(0, Vec::len);
            if !is_staircase(d2, q, r) {
                return Err(Error::IndexOutOfRange(format!("{d2:?} is not a staircase in a {q}x{r} box")));
            }
            let mut total = u64::from(delta_leq(&o.delta, d2));
            for (i, j) in in_delta(d2) {
                total += partial_sum(&o.matrix, i, j)?;
            }
            Ok(total)
        }
    }
}

/// `sum_{k < i, l < j} m_ij m_kl + sum_{{(i,j)} not <= delta} m_ij`.
pub fn type_s_codim(o: &TypeSOrbit) -> u64 {
    let mut total = inversion_sum(&o.matrix);
    for (i, row) in o.matrix.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if !delta_leq(&[(i + 1, j + 1)], &o.delta) {
                total += m;
            }
        }
    }
    total
}

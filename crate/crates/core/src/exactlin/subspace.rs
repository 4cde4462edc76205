use serde_json::Value;

use super::{rref, Field};
use crate::error::{Error, Result};

/// A subspace of `field^ambient`, stored canonically as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors `e_i` (0-based) for `i` in `indices`.
    pub fn coordinate(field: F, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().filter(|&i| i < ambient).collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { field, ambient, rows, pivots: idx }
    }

    /// Span of arbitrary vectors.
    pub fn span(field: F, ambient: usize, mut vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(v.len(), ambient));
        }
        let pivots = rref(&field, &mut vectors, ambient);
        Ok(Subspace { field, ambient, rows: vectors, pivots })
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span(self.field, self.ambient, rows)
    }

    /// Zassenhaus: reduce `[u | u]` stacked over `[w | 0]`; the rows whose
    /// left half vanishes carry a basis of the intersection on the right.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, n));
        }
        if self.dim() == n {
            return Ok(other.clone());
        }
        if other.dim() == n {
            return Ok(self.clone());
        }
        let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.rows {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for w in &other.rows {
            let mut r = w.clone();
            r.extend(std::iter::repeat(f.zero()).take(n));
            rows.push(r);
        }
        let pivots = rref(f, &mut rows, 2 * n);
        let meet: Vec<Vec<F::Elem>> = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        let out = Subspace::span(self.field, n, meet)?;
        debug_assert_eq!(
            out.dim() + self.sum(other).map(|s| s.dim()).unwrap_or(0),
            self.dim() + other.dim()
        );
        Ok(out)
    }

    /// `dim((self + a) / a)`.
    pub fn quotient_image_dim(&self, a: &Self) -> Result<usize> {
        Ok(self.sum(a)?.dim() - a.dim())
    }

    /// Reduces `v` modulo this subspace; the result vanishes on pivot columns.
    pub fn reduce_vector(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let factor = out[p].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        v.len() == self.ambient && self.reduce_vector(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.check(other).is_ok() && other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// `{x : <u, x> = 0 for all u in self}`, the kernel of the basis matrix.
    pub fn annihilator(&self) -> Self {
        let f = &self.field;
        let n = self.ambient;
        let mut is_pivot = vec![None; n];
        for (i, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut rows = Vec::with_capacity(n - self.dim());
        for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = f.neg(&row[free]);
            }
            rows.push(v);
        }
        Subspace::span(self.field, n, rows).expect("annihilator rows have the ambient length")
    }

    /// Image under the linear map `v -> v M`, where `m` has `ambient` rows.
    pub fn image(&self, m: &[Vec<F::Elem>], target_ambient: usize) -> Result<Self> {
        if m.len() != self.ambient {
            return Err(Error::AmbientMismatch(m.len(), self.ambient));
        }
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![f.zero(); target_ambient];
                for (x, mrow) in r.iter().zip(m) {
                    if f.is_zero(x) {
                        continue;
                    }
                    for (o, y) in out.iter_mut().zip(mrow) {
                        *o = f.add(o, &f.mul(x, y));
                    }
                }
                out
            })
            .collect();
        Subspace::span(self.field, target_ambient, rows)
    }

    /// Embeds into a larger ambient space at coordinate offset `offset`.
    pub fn embed(&self, ambient: usize, offset: usize) -> Self {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![f.zero(); ambient];
                v[offset..offset + self.ambient].clone_from_slice(r);
                v
            })
            .collect();
        Subspace {
            field: self.field,
            ambient,
            rows,
            pivots: self.pivots.iter().map(|p| p + offset).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| self.field.elem_to_json(x)).collect()))
                .collect(),
        )
    }

    pub fn from_json(field: F, ambient: usize, v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("subspace basis must be an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("basis row must be an array".into()))?
                    .iter()
                    .map(|x| field.elem_from_json(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, ambient, rows)
    }
}

/// The projection `V -> V/A`, realized on the coordinate patch of the
/// non-pivot columns of `A`'s echelon basis.
#[derive(Clone, Debug)]
pub struct QuotientMap<F: Field> {
    kernel: Subspace<F>,
    free: Vec<usize>,
}

impl<F: Field> QuotientMap<F> {
    pub fn new(kernel: Subspace<F>) -> Self {
        let free = (0..kernel.ambient).filter(|c| !kernel.pivots.contains(c)).collect();
        QuotientMap { kernel, free }
    }

    pub fn target_dim(&self) -> usize {
        self.free.len()
    }

    pub fn project_vector(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.kernel.reduce_vector(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn project(&self, u: &Subspace<F>) -> Result<Subspace<F>> {
        self.kernel.check(u)?;
        let rows = u.rows.iter().map(|r| self.project_vector(r)).collect();
        Subspace::span(u.field, self.free.len(), rows)
    }
}

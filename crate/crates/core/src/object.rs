//! Explicit flag objects `(V; A, B, C, ...)` over an exact field.

use serde_json::{json, Value};

use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldSpec, PrimeField, Rationals, Subspace};

/// A flag `0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_p = V`, stored as `F_1..F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag<F: Field> {
    members: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    /// Checks nesting and that the last member is the whole space.
    pub fn new(members: Vec<Subspace<F>>, ambient: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidObject("a flag needs at least one member".into()));
        }
        for m in &members {
            if m.ambient() != ambient {
                return Err(Error::AmbientMismatch(m.ambient(), ambient));
            }
        }
        for w in members.windows(2) {
            if !w[1].contains(&w[0]) {
                return Err(Error::InvalidObject("flag members are not nested".into()));
            }
        }
        if members.last().map(Subspace::dim) != Some(ambient) {
            return Err(Error::InvalidObject("last flag member must be the whole space".into()));
        }
        Ok(Flag { members })
    }

    /// The coordinate flag whose `i`-th member is spanned by the first
    /// `j_1 + ... + j_i` basis vectors, or the last ones when `from_end`.
    pub fn coordinate(field: F, jumps: &Composition, from_end: bool) -> Self {
        let n = jumps.weight() as usize;
        let members = jumps.prefix_sums()[1..]
            .iter()
            .map(|&s| {
                let s = s as usize;
                if from_end {
                    Subspace::coordinate(field, n, n - s..n)
                } else {
                    Subspace::coordinate(field, n, 0..s)
                }
            })
            .collect();
        Flag { members }
    }

    pub fn members(&self) -> &[Subspace<F>] {
        &self.members
    }

    /// `F_i` for `i = 0..=p` (1-based, `F_0 = 0`).
    pub fn member(&self, i: usize) -> Subspace<F> {
        if i == 0 {
            let top = &self.members[self.members.len() - 1];
            Subspace::zero(top.field(), top.ambient())
        } else {
            self.members[i - 1].clone()
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn jumps(&self) -> Composition {
        let mut prev = 0;
        Composition::new(
            self.members
                .iter()
                .map(|m| {
                    let d = m.dim();
                    let j = (d - prev) as u32;
                    prev = d;
                    j
                })
                .collect(),
        )
    }

    /// Members up to a change of basis given by `v -> v M`.
    pub fn transform(&self, m: &[Vec<F::Elem>]) -> Result<Self> {
        let n = m.len();
        Ok(Flag { members: self.members.iter().map(|s| s.image(m, n)).collect::<Result<_>>()? })
    }
}

/// A vector space `field^dim` with a tuple of flags in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagObject<F: Field> {
    field: F,
    dim: usize,
    flags: Vec<Flag<F>>,
}

impl<F: Field> FlagObject<F> {
    pub fn new(field: F, dim: usize, flags: Vec<Flag<F>>) -> Result<Self> {
        if flags.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for f in &flags {
            let top = f.members.last().expect("flags are non-empty");
            if top.ambient() != dim || top.field() != field {
                return Err(Error::InvalidObject("flag does not live in the object's space".into()));
            }
        }
        Ok(FlagObject { field, dim, flags })
    }

    /// The zero object with the given composition lengths.
    pub fn zero(field: F, lengths: &[usize]) -> Self {
        let flags = lengths
            .iter()
            .map(|&p| Flag { members: vec![Subspace::zero(field, 0); p.max(1)] })
            .collect();
        FlagObject { field, dim: 0, flags }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flags(&self) -> &[Flag<F>] {
        &self.flags
    }

    pub fn flag(&self, i: usize) -> &Flag<F> {
        &self.flags[i]
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.flags.iter().map(Flag::len).collect()
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::new(self.flags.iter().map(Flag::jumps).collect())
            .expect("every flag ends at the whole space")
    }

    /// Block-diagonal direct sum: `self` on the first coordinates.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.lengths() != other.lengths() {
            return Err(Error::ShapeMismatch(format!(
                "lengths {:?} vs {:?}",
                self.lengths(),
                other.lengths()
            )));
        }
        let n = self.dim + other.dim;
        let flags = self
            .flags
            .iter()
            .zip(&other.flags)
            .map(|(f, g)| Flag {
                members: f
                    .members
                    .iter()
                    .zip(&g.members)
                    .map(|(x, y)| {
                        x.embed(n, 0)
                            .sum(&y.embed(n, self.dim))
                            .expect("embedded subspaces share the ambient space")
                    })
                    .collect(),
            })
            .collect();
        Ok(FlagObject { field: self.field, dim: n, flags })
    }

    /// Slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        FlagObject {
            field: self.field,
            dim: self.dim,
            flags: perm.iter().map(|&i| self.flags[i].clone()).collect(),
        }
    }

    /// Applies the change of basis `v -> v M` to every flag.
    pub fn transform(&self, m: &[Vec<F::Elem>]) -> Result<Self> {
        if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
            return Err(Error::AmbientMismatch(m.len(), self.dim));
        }
        let flags = self.flags.iter().map(|f| f.transform(m)).collect::<Result<_>>()?;
        Ok(FlagObject { field: self.field, dim: self.dim, flags })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.spec().to_string(),
            "dim": self.dim,
            "flags": self.flags.iter().map(|f| json!({
                "jumps": f.jumps(),
                "members": f.members.iter().map(Subspace::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: F, v: &Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("object needs an integer \"dim\"".into()))? as usize;
        let flags = v
            .get("flags")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("object needs a \"flags\" array".into()))?;
        let flags = flags
            .iter()
            .map(|f| {
                let members = f
                    .get("members")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("flag needs a \"members\" array".into()))?
                    .iter()
                    .map(|m| Subspace::from_json(field, dim, m))
                    .collect::<Result<Vec<_>>>()?;
                let flag = Flag::new(members, dim)?;
                if let Some(j) = f.get("jumps") {
                    let j: Composition = serde_json::from_value(j.clone())
                        .map_err(|e| Error::Parse(format!("bad jumps: {e}")))?;
                    if j != flag.jumps() {
                        return Err(Error::InvalidObject(format!(
                            "declared jumps {j} disagree with members {}",
                            flag.jumps()
                        )));
                    }
                }
                Ok(flag)
            })
            .collect::<Result<Vec<_>>>()?;
        FlagObject::new(field, dim, flags)
    }
}

/// A flag object over a field chosen at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyFlagObject {
    Rational(FlagObject<Rationals>),
    Prime(FlagObject<PrimeField>),
}

impl AnyFlagObject {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyFlagObject::Rational(_) => FieldSpec::Rationals,
            AnyFlagObject::Prime(o) => o.field().spec(),
        }
    }

    pub fn dim_vector(&self) -> DimVector {
        match self {
            AnyFlagObject::Rational(o) => o.dim_vector(),
            AnyFlagObject::Prime(o) => o.dim_vector(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyFlagObject::Rational(o) => o.to_json(),
            AnyFlagObject::Prime(o) => o.to_json(),
        }
    }

    /// Reads `{"field": "Q" | p, "dim": n, "flags": [...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let spec = match v.get("field") {
            None => FieldSpec::Rationals,
            Some(Value::String(s)) => FieldSpec::parse(s.trim_start_matches("F_"))?,
            Some(Value::Number(n)) => FieldSpec::parse(&n.to_string())?,
            Some(other) => return Err(Error::Parse(format!("bad field {other}"))),
        };
        match spec {
            FieldSpec::Rationals => Ok(AnyFlagObject::Rational(FlagObject::from_json(Rationals, v)?)),
            FieldSpec::Prime(p) => Ok(AnyFlagObject::Prime(FlagObject::from_json(PrimeField::new(p)?, v)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(field: Rationals, n: usize, from_end: bool) -> Flag<Rationals> {
        Flag::coordinate(field, &Composition::ones(n), from_end)
    }

    #[test]
    fn coordinate_flags_and_jumps() {
        let q = Rationals;
        let b = Flag::coordinate(q, &Composition::new(vec![1, 0, 2]), false);
        assert_eq!(b.jumps(), Composition::new(vec![1, 0, 2]));
        assert_eq!(b.member(1), b.member(2));
        assert_eq!(b.member(0).dim(), 0);
        let c = complete(q, 3, true);
        assert_eq!(c.member(1), Subspace::coordinate(q, 3, [2]));
    }

    #[test]
    fn direct_sum_dimension_vector() {
        let q = Rationals;
        let x = FlagObject::new(q, 2, vec![complete(q, 2, false), complete(q, 2, true)]).unwrap();
        let s = x.direct_sum(&x).unwrap();
        assert_eq!(s.dim_vector(), DimVector::from_parts(&[&[2, 2], &[2, 2]]).unwrap());
        let z = FlagObject::zero(q, &[2, 2]);
        assert_eq!(x.direct_sum(&z).unwrap(), x);
    }

    #[test]
    fn rejects_bad_flags() {
        let q = Rationals;
        let e1 = Subspace::coordinate(q, 2, [0]);
        let e2 = Subspace::coordinate(q, 2, [1]);
        assert!(Flag::new(vec![e1.clone(), e2], 2).is_err());
        assert!(Flag::new(vec![e1], 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = Rationals;
        let x = FlagObject::new(q, 2, vec![complete(q, 2, false), complete(q, 2, true)]).unwrap();
        let back = AnyFlagObject::from_json(&x.to_json()).unwrap();
        assert_eq!(back, AnyFlagObject::Rational(x));
    }
}

//! Compositions, dimension vectors and the Tits quadratic form.
//!
//! A [`Composition`] lists the dimension jumps of a flag; zero parts are kept
//! because they are part of the shape `(p_1, ..., p_k)` of the ambient
//! semigroup. A [`DimVector`] is a tuple of compositions of one common weight.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    /// The composition `(n)` with a single part.
    pub fn trivial(n: u32) -> Self {
        Composition(vec![n])
    }

    /// `(1, 1, ..., 1)` with `n` parts.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn norm_sq(&self) -> u128 {
        self.0.iter().map(|&x| u128::from(x) * u128::from(x)).sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Minimum of the non-zero parts.
    pub fn min_nonzero(&self) -> Option<u32> {
        self.0.iter().copied().filter(|&x| x != 0).min()
    }

    /// One non-zero part (the flag variety is a point).
    pub fn is_trivial(&self) -> bool {
        self.nonzero_count() == 1
    }

    /// Drops zero parts, keeping order.
    pub fn reduce(&self) -> Composition {
        Composition(self.0.iter().copied().filter(|&x| x != 0).collect())
    }

    /// The partition obtained by dropping zeros and sorting weakly decreasing.
    pub fn plus(&self) -> Composition {
        let mut parts: Vec<u32> = self.0.iter().copied().filter(|&x| x != 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition(parts)
    }

    /// Prefix sums `b_1 + ... + b_i` for `i = 0..=len`.
    pub fn prefix_sums(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut acc = 0u64;
        out.push(0);
        for &x in &self.0 {
            acc += u64::from(x);
            out.push(acc);
        }
        out
    }

    /// Index (0-based) of the first non-zero part.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&x| x != 0)
    }

    pub fn le(&self, other: &Composition) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All compositions `x` of the same length with `x <= self` part-wise and
    /// `|x| = w`, in lexicographic order.
    pub fn sub_compositions(&self, w: u64) -> Vec<Composition> {
        let mut out = Vec::new();
        let caps = &self.0;
        let mut suffix = vec![0u64; caps.len() + 1];
        for i in (0..caps.len()).rev() {
            suffix[i] = suffix[i + 1] + u64::from(caps[i]);
        }
        let mut cur = vec![0u32; caps.len()];
        fn rec(
            i: usize,
            left: u64,
            caps: &[u32],
            suffix: &[u64],
            cur: &mut Vec<u32>,
            out: &mut Vec<Composition>,
        ) {
            if i == caps.len() {
                if left == 0 {
                    out.push(Composition(cur.clone()));
                }
                return;
            }
            let rest = suffix[i + 1];
            let lo = left.saturating_sub(rest);
            let hi = left.min(u64::from(caps[i]));
            for v in lo..=hi {
                cur[i] = v as u32;
                rec(i + 1, left - v, caps, suffix, cur, out);
            }
            cur[i] = 0;
        }
        if w <= suffix[0] {
            rec(0, w, caps, &suffix, &mut cur, &mut out);
        }
        out
    }
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Composition(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A tuple of compositions with one common weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Composition>", into = "Vec<Composition>")]
pub struct DimVector {
    comps: Vec<Composition>,
    weight: u64,
}

impl TryFrom<Vec<Composition>> for DimVector {
    type Error = Error;

    fn try_from(comps: Vec<Composition>) -> Result<Self> {
        DimVector::new(comps)
    }
}

impl From<DimVector> for Vec<Composition> {
    fn from(d: DimVector) -> Self {
        d.comps
    }
}

impl DimVector {
    pub fn new(comps: Vec<Composition>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let weights: Vec<u64> = comps.iter().map(Composition::weight).collect();
        if weights.iter().any(|&w| w != weights[0]) {
            return Err(Error::UnequalWeights(weights));
        }
        Ok(DimVector { weight: weights[0], comps })
    }

    /// Convenience constructor from nested slices.
    pub fn from_parts(parts: &[&[u32]]) -> Result<Self> {
        DimVector::new(parts.iter().map(|p| Composition::new(p.to_vec())).collect())
    }

    pub fn triple(a: Composition, b: Composition, c: Composition) -> Result<Self> {
        DimVector::new(vec![a, b, c])
    }

    /// Parses the JSON array-of-arrays form.
    pub fn parse_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn zero_like(&self) -> DimVector {
        DimVector {
            comps: self.comps.iter().map(|c| Composition(vec![0; c.len()])).collect(),
            weight: 0,
        }
    }

    pub fn comps(&self) -> &[Composition] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Composition {
        &self.comps[i]
    }

    pub fn k(&self) -> usize {
        self.comps.len()
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.weight == 0
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.comps.iter().map(Composition::len).collect()
    }

    pub fn reduced(&self) -> DimVector {
        DimVector {
            comps: self.comps.iter().map(Composition::reduce).collect(),
            weight: self.weight,
        }
    }

    /// Parts of all compositions concatenated; the lexicographic key used for
    /// every deterministic ordering in this crate.
    pub fn flat(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.0.iter().copied()).collect()
    }

    pub fn same_shape(&self, other: &DimVector) -> bool {
        self.lengths() == other.lengths()
    }

    fn check_shape(&self, other: &DimVector) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "lengths {:?} vs {:?}",
                self.lengths(),
                other.lengths()
            )))
        }
    }

    /// Part-wise comparison.
    pub fn le(&self, other: &DimVector) -> bool {
        self.same_shape(other) && self.comps.iter().zip(&other.comps).all(|(a, b)| a.le(b))
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        let comps: Vec<Composition> = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| Composition(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
            .collect();
        DimVector::new(comps).ok()
    }

    pub fn add(&self, other: &DimVector) -> Result<DimVector> {
        self.check_shape(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| Composition(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
            .collect();
        DimVector::new(comps)
    }

    pub fn scale(&self, m: u32) -> DimVector {
        DimVector {
            comps: self
                .comps
                .iter()
                .map(|c| Composition(c.0.iter().map(|x| x * m).collect()))
                .collect(),
            weight: self.weight * u64::from(m),
        }
    }

    /// Reorders the compositions: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> DimVector {
        DimVector {
            comps: perm.iter().map(|&i| self.comps[i].clone()).collect(),
            weight: self.weight,
        }
    }

    /// `2 Q(d) = sum |a_i|^2 - (k - 2) n^2`.
    pub fn twice_tits_q(&self) -> Result<i128> {
        let norms: u128 = self.comps.iter().map(Composition::norm_sq).sum();
        let n = i128::from(self.weight);
        let k = self.comps.len() as i128;
        let norms = i128::try_from(norms).map_err(|_| Error::Overflow("tits form"))?;
        n.checked_mul(n)
            .and_then(|n2| n2.checked_mul(k - 2))
            .and_then(|t| norms.checked_sub(t))
            .ok_or(Error::Overflow("tits form"))
    }

    /// The Tits quadratic form.
    pub fn tits_q(&self) -> Result<i64> {
        let twice = self.twice_tits_q()?;
        if twice % 2 != 0 {
            return Err(Error::Invariant(format!("2Q({self}) = {twice} is odd")));
        }
        i64::try_from(twice / 2).map_err(|_| Error::Overflow("tits form"))
    }

    /// Whether `d2` is a summand of `self`: non-zero and `self - d2` is again a
    /// dimension vector.
    pub fn is_summand(&self, d2: &DimVector) -> Result<bool> {
        self.check_shape(d2)?;
        if d2.is_zero() {
            return Ok(false);
        }
        Ok(self.checked_sub(d2).is_some())
    }
}

impl PartialOrd for DimVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DimVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lengths()
            .cmp(&other.lengths())
            .then_with(|| self.flat().cmp(&other.flat()))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Every summand of `d`, optionally capped part-wise by `bound`, in
/// lexicographic order of the concatenated parts.
pub fn enumerate_summands(d: &DimVector, bound: Option<&DimVector>) -> Result<Vec<DimVector>> {
    let caps: Vec<Vec<u32>> = match bound {
        None => d.comps.iter().map(|c| c.0.clone()).collect(),
        Some(b) => {
            d.check_shape(b)?;
            d.comps
                .iter()
                .zip(&b.comps)
                .map(|(c, bc)| c.0.iter().zip(&bc.0).map(|(x, y)| *x.min(y)).collect())
                .collect()
        }
    };
    let mut suffix: Vec<Vec<u64>> = Vec::with_capacity(caps.len());
    for c in &caps {
        let mut s = vec![0u64; c.len() + 1];
        for i in (0..c.len()).rev() {
            s[i] = s[i + 1] + u64::from(c[i]);
        }
        suffix.push(s);
    }
    let max_w = suffix.iter().map(|s| s[0]).min().unwrap_or(0);
    let mut cur: Vec<Vec<u32>> = caps.iter().map(|c| vec![0; c.len()]).collect();
    let mut out = Vec::new();
    // The first composition fixes the weight; every later one must match it.
    summand_dfs(0, 0, 0, None, max_w, &caps, &suffix, &mut cur, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn summand_dfs(
    comp: usize,
    pos: usize,
    acc: u64,
    target: Option<u64>,
    max_w: u64,
    caps: &[Vec<u32>],
    suffix: &[Vec<u64>],
    cur: &mut Vec<Vec<u32>>,
    out: &mut Vec<DimVector>,
) {
    if comp == caps.len() {
        let w = target.unwrap_or(0);
        if w > 0 {
            let comps = cur.iter().map(|c| Composition(c.clone())).collect();
            out.push(DimVector { comps, weight: w });
        }
        return;
    }
    if pos == caps[comp].len() {
        let w = target.unwrap_or(acc);
        if acc != w || w > max_w {
            return;
        }
        summand_dfs(comp + 1, 0, 0, Some(w), max_w, caps, suffix, cur, out);
        return;
    }
    let cap = u64::from(caps[comp][pos]);
    let rest = suffix[comp][pos + 1];
    let (lo, hi) = match target {
        Some(w) => {
            if acc > w {
                return;
            }
            (w.saturating_sub(acc + rest), cap.min(w - acc))
        }
        None => (0, cap.min(max_w.saturating_sub(acc))),
    };
    if lo > hi {
        return;
    }
    for v in lo..=hi {
        cur[comp][pos] = v as u32;
        summand_dfs(comp, pos + 1, acc + v, target, max_w, caps, suffix, cur, out);
    }
    cur[comp][pos] = 0;
}

/// All compositions of `n` into exactly `len` positive parts, in
/// lexicographic order.
pub fn positive_compositions(n: u32, len: usize) -> Vec<Composition> {
    fn rec(n: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if len == 1 {
            cur.push(n);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for first in 1..=n.saturating_sub(len as u32 - 1) {
            cur.push(first);
            rec(n - first, len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 && n as usize >= len {
        rec(n, len, &mut Vec::new(), &mut out);
    }
    out
}

/// Every reduced triple `(a, b, c)` with `1 <= n <= max_weight` and
/// `len(a), len(b), len(c)` at most `max_lengths`, ordered by weight, then
/// lengths, then parts.
pub fn reduced_triples(max_weight: u32, max_lengths: [usize; 3]) -> Vec<DimVector> {
    let mut out = Vec::new();
    for n in 1..=max_weight {
        let by_slot: Vec<Vec<Composition>> = max_lengths
            .iter()
            .map(|&m| (1..=m).flat_map(|len| positive_compositions(n, len)).collect())
            .collect();
        for a in &by_slot[0] {
            for b in &by_slot[1] {
                for c in &by_slot[2] {
                    out.push(DimVector { comps: vec![a.clone(), b.clone(), c.clone()], weight: u64::from(n) });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(parts: &[&[u32]]) -> DimVector {
        DimVector::from_parts(parts).unwrap()
    }

    #[test]
    fn tits_form_spot_values() {
        assert_eq!(dv(&[&[1], &[1], &[1]]).tits_q().unwrap(), 1);
        assert_eq!(dv(&[&[3, 3], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]]).tits_q().unwrap(), 0);
        assert_eq!(dv(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]]).tits_q().unwrap(), 0);
        assert_eq!(dv(&[&[2, 2], &[1, 1, 1, 1], &[1, 1, 1, 1]]).tits_q().unwrap(), 0);
    }

    #[test]
    fn unequal_weights_rejected() {
        let e = DimVector::from_parts(&[&[1, 1], &[1]]).unwrap_err();
        assert_eq!(e, Error::UnequalWeights(vec![2, 1]));
        assert_eq!(DimVector::new(vec![]).unwrap_err(), Error::EmptyTuple);
    }

    #[test]
    fn summand_check_examples() {
        let d = dv(&[&[3, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]);
        let d2 = dv(&[&[2, 2], &[1, 1, 1, 1], &[1, 1, 1, 1]]);
        assert!(!d.is_summand(&d2).unwrap());

        let d = dv(&[&[1, 1], &[1, 1], &[1, 1]]);
        assert!(d.is_summand(&dv(&[&[1, 0], &[1, 0], &[1, 0]])).unwrap());
        // d - d is zero, which is fine, but d itself is a summand only via the
        // zero remainder; the zero vector is never a summand.
        assert!(!d.is_summand(&d.zero_like()).unwrap());

        let other = dv(&[&[1], &[1], &[1]]);
        assert!(matches!(d.is_summand(&other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn summands_of_small_vectors() {
        let d = dv(&[&[1, 1], &[1, 1], &[1, 1]]);
        let s = enumerate_summands(&d, None).unwrap();
        assert_eq!(s.len(), 9);
        assert_eq!(s.last().unwrap(), &d);
        let flats: Vec<_> = s.iter().map(DimVector::flat).collect();
        let mut sorted = flats.clone();
        sorted.sort();
        assert_eq!(flats, sorted);

        let one = dv(&[&[1], &[1], &[1]]);
        assert_eq!(enumerate_summands(&one, None).unwrap(), vec![one.clone()]);

        let two = dv(&[&[2], &[2], &[2]]);
        assert_eq!(enumerate_summands(&two, None).unwrap(), vec![one, two]);
    }

    #[test]
    fn summands_respect_bound() {
        let d = dv(&[&[2, 1], &[3], &[1, 2]]);
        let bound = dv(&[&[1, 1], &[2], &[1, 1]]);
        let s = enumerate_summands(&d, Some(&bound)).unwrap();
        assert!(s.iter().all(|x| x.le(&bound)));
        assert_eq!(s.iter().filter(|x| x.weight() == 1).count(), 4);
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn reduce_and_plus() {
        let a = Composition::new(vec![0, 2, 1, 0, 3, 2]);
        assert_eq!(a.plus(), Composition::new(vec![3, 2, 2, 1]));
        assert_eq!(a.reduce(), Composition::new(vec![2, 1, 3, 2]));
        assert_eq!(a.min_nonzero(), Some(1));
        assert!(Composition::new(vec![0, 4, 0]).is_trivial());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let d = DimVector::parse_json("[[3,1],[1,1,1,1],[1,1,1,1]]").unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), "[[3,1],[1,1,1,1],[1,1,1,1]]");
        assert!(matches!(DimVector::parse_json("[[1,2],[3]"), Err(Error::Parse(_))));
        assert!(matches!(DimVector::parse_json("[[1,2],[4]]"), Err(Error::Parse(_))));
    }

    #[test]
    fn sweep_sizes() {
        assert_eq!(positive_compositions(4, 2).len(), 3);
        assert!(positive_compositions(2, 3).is_empty());
        // n = 1: one triple; n = 2: 2 * 2 * 2 triples.
        assert_eq!(reduced_triples(2, [2, 4, 6]).len(), 1 + 8);
        assert!(reduced_triples(3, [1, 1, 1]).iter().all(|d| d.lengths() == vec![1, 1, 1]));
    }
}

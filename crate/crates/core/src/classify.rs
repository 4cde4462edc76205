//! Finite-type classification of tuples of compositions.
//!
//! A triple is classified by the numbers of non-zero parts of its three
//! compositions. When no finite class matches, a summand whose reduced form is
//! one of the affine imaginary roots is returned as a certificate.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};

/// A finite-type class, with the parameters of its defining inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A { q: usize, r: usize },
    D { k: usize },
    E6,
    E7,
    E8,
    /// `E^{(a)}_k`.
    Ea { k: usize },
    /// `E^{(b)}_k`.
    Eb { k: usize },
    S { q: usize, r: usize },
}

impl TypeLabel {
    /// Whether the three-armed graph of this class is a Dynkin graph, i.e. the
    /// class puts no restriction on the parts.
    pub fn is_dynkin(&self) -> bool {
        matches!(self, TypeLabel::A { .. } | TypeLabel::D { .. } | TypeLabel::E6 | TypeLabel::E7 | TypeLabel::E8)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A { q, r } => write!(f, "A_{{{q},{r}}}"),
            TypeLabel::D { k } => write!(f, "D_{{{k}}}"),
            TypeLabel::E6 => write!(f, "E_6"),
            TypeLabel::E7 => write!(f, "E_7"),
            TypeLabel::E8 => write!(f, "E_8"),
            TypeLabel::Ea { k } => write!(f, "E^{{(a)}}_{{{k}}}"),
            TypeLabel::Eb { k } => write!(f, "E^{{(b)}}_{{{k}}}"),
            TypeLabel::S { q, r } => write!(f, "S_{{{q},{r}}}"),
        }
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The minimal imaginary roots used as certificates of infinite type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffinePattern {
    /// `{(1,1,1), (1,1,1), (1,1,1)}`
    E6,
    /// `{(2,2), (1,1,1,1), (1,1,1,1)}`
    E7,
    /// `{(3,3), (2,2,2), (1,1,1,1,1,1)}`
    E8,
    /// `((1,1), (1,1), (1,1), (1,1))`
    Quadruple,
}

impl AffinePattern {
    pub const TRIPLES: [AffinePattern; 3] = [AffinePattern::E6, AffinePattern::E7, AffinePattern::E8];

    /// `(part value, number of parts)` for each composition of the pattern.
    pub fn shape(&self) -> &'static [(u32, usize)] {
        match self {
            AffinePattern::E6 => &[(1, 3), (1, 3), (1, 3)],
            AffinePattern::E7 => &[(2, 2), (1, 4), (1, 4)],
            AffinePattern::E8 => &[(3, 2), (2, 3), (1, 6)],
            AffinePattern::Quadruple => &[(1, 2), (1, 2), (1, 2), (1, 2)],
        }
    }

    pub fn weight(&self) -> u64 {
        let (v, c) = self.shape()[0];
        u64::from(v) * c as u64
    }

    pub fn name(&self) -> &'static str {
        match self {
            AffinePattern::E6 => "affine E6",
            AffinePattern::E7 => "affine E7",
            AffinePattern::E8 => "affine E8",
            AffinePattern::Quadruple => "quadruple",
        }
    }

    /// Whether `d.reduced()` equals this pattern up to reordering the slots.
    pub fn matches(&self, d: &DimVector) -> bool {
        let shape = self.shape();
        if d.k() != shape.len() {
            return false;
        }
        let mut got: Vec<(u32, usize)> = Vec::new();
        for c in d.comps() {
            let r = c.reduce();
            let Some(&v) = r.parts().first() else { return false };
            if r.parts().iter().any(|&x| x != v) {
                return false;
            }
            got.push((v, r.len()));
        }
        let mut want = shape.to_vec();
        got.sort_unstable();
        want.sort_unstable();
        got == want
    }
}

impl Serialize for AffinePattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A summand certifying infinite type.
///
/// `summand` lives on the compositions of the input at positions `slots`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteWitness {
    pub summand: DimVector,
    pub slots: Vec<usize>,
    pub pattern: AffinePattern,
    pub tits_q: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub finite: bool,
    /// Non-zero part counts `p <= q <= r` of the classified triple.
    pub counts: [usize; 3],
    /// All matching classes in the listed order; the first is the display label.
    pub labels: Vec<TypeLabel>,
    pub witness: Option<InfiniteWitness>,
}

impl Classification {
    pub fn label(&self) -> Option<TypeLabel> {
        self.labels.first().copied()
    }

    /// True when every matching class is Dynkin.
    pub fn is_dynkin(&self) -> bool {
        self.finite && self.labels.iter().any(TypeLabel::is_dynkin)
    }
}

/// Result of classifying an arbitrary tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleClassification {
    /// The padded triple that was classified, if at most three factors are
    /// non-trivial.
    pub triple: Option<DimVector>,
    /// For each slot of `triple`, the input slot it came from (`None` for padding).
    pub origin: Vec<Option<usize>>,
    pub result: Classification,
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn labels_for(d: &DimVector) -> (Vec<TypeLabel>, [usize; 3]) {
    let counts: Vec<usize> = d.comps().iter().map(Composition::nonzero_count).collect();
    let mut sorted = [counts[0], counts[1], counts[2]];
    sorted.sort_unstable();
    let [p, q, r] = sorted;
    let mut labels = Vec::new();
    for perm in PERMS {
        if [counts[perm[0]], counts[perm[1]], counts[perm[2]]] != sorted {
            continue;
        }
        let (a, b) = (d.comp(perm[0]), d.comp(perm[1]));
        if p == 1 {
            labels.push(TypeLabel::A { q, r });
        }
        if p == 2 && q == 2 {
            labels.push(TypeLabel::D { k: r + 2 });
        }
        if (p, q, r) == (2, 3, 3) {
            labels.push(TypeLabel::E6);
        }
        if (p, q, r) == (2, 3, 4) {
            labels.push(TypeLabel::E7);
        }
        if (p, q, r) == (2, 3, 5) {
            labels.push(TypeLabel::E8);
        }
        if p == 2 && q == 3 && r >= 3 && a.min_nonzero() == Some(2) {
            labels.push(TypeLabel::Ea { k: r + 3 });
        }
        if p == 2 && q == 3 && r >= 3 && b.min_nonzero() == Some(1) {
            labels.push(TypeLabel::Eb { k: r + 3 });
        }
        if p == 2 && q >= 2 && a.min_nonzero() == Some(1) {
            labels.push(TypeLabel::S { q, r });
        }
    }
    // The derived `Ord` follows the listed order of the classes.
    labels.sort_unstable();
    labels.dedup();
    (labels, sorted)
}

/// Lexicographically smallest way to place `count` parts equal to `value`
/// inside `cap`: the last eligible positions.
fn place(cap: &Composition, value: u32, count: usize) -> Option<Composition> {
    let eligible: Vec<usize> = (0..cap.len()).filter(|&i| cap.parts()[i] >= value).collect();
    if eligible.len() < count {
        return None;
    }
    let mut parts = vec![0u32; cap.len()];
    for &i in &eligible[eligible.len() - count..] {
        parts[i] = value;
    }
    Some(Composition::new(parts))
}

/// Smallest affine summand by `(weight, flattened parts)`.
pub fn find_affine_witness(d: &DimVector) -> Option<InfiniteWitness> {
    if d.k() != 3 {
        return None;
    }
    let mut best: Option<DimVector> = None;
    let mut best_pattern = AffinePattern::E6;
    for pattern in AffinePattern::TRIPLES {
        if pattern.weight() > d.weight() {
            continue;
        }
        if best.as_ref().is_some_and(|b| b.weight() < pattern.weight()) {
            break;
        }
        let shape = pattern.shape();
        for perm in PERMS {
            let comps: Option<Vec<Composition>> = (0..3)
                .map(|slot| {
                    let (v, c) = shape[perm[slot]];
                    place(d.comp(slot), v, c)
                })
                .collect();
            let Some(comps) = comps else { continue };
            let cand = DimVector::new(comps).expect("pattern compositions share a weight");
            if best.as_ref().map_or(true, |b| cand.flat() < b.flat()) {
                best = Some(cand);
                best_pattern = pattern;
            }
        }
    }
    best.map(|summand| InfiniteWitness {
        tits_q: summand.tits_q().unwrap_or(0),
        summand,
        slots: vec![0, 1, 2],
        pattern: best_pattern,
    })
}

/// Classifies a triple of compositions.
pub fn classify_triple(d: &DimVector) -> Result<Classification> {
    if d.k() != 3 {
        return Err(Error::ShapeMismatch(format!("expected 3 compositions, got {}", d.k())));
    }
    if d.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let (labels, counts) = labels_for(d);
    if !labels.is_empty() {
        return Ok(Classification { finite: true, counts, labels, witness: None });
    }
    let witness = find_affine_witness(d)
        .ok_or_else(|| Error::Invariant(format!("no affine summand found for infinite-type {d}")))?;
    Ok(Classification { finite: false, counts, labels, witness: Some(witness) })
}

/// Classifies a tuple of any length by discarding trivial factors and padding
/// back to a triple.
pub fn classify_tuple(d: &DimVector) -> Result<TupleClassification> {
    if d.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let n = u32::try_from(d.weight()).map_err(|_| Error::Overflow("weight"))?;
    let nontrivial: Vec<usize> = (0..d.k()).filter(|&i| !d.comp(i).is_trivial()).collect();
    if nontrivial.len() > 3 {
        let slots = nontrivial[..4].to_vec();
        let comps = slots
            .iter()
            .map(|&i| place(d.comp(i), 1, 2).expect("non-trivial composition has two non-zero parts"))
            .collect();
        let summand = DimVector::new(comps)?;
        let witness = InfiniteWitness {
            tits_q: summand.tits_q()?,
            summand,
            slots,
            pattern: AffinePattern::Quadruple,
        };
        let mut counts: Vec<usize> = nontrivial.iter().map(|&i| d.comp(i).nonzero_count()).collect();
        counts.sort_unstable();
        return Ok(TupleClassification {
            triple: None,
            origin: Vec::new(),
            result: Classification {
                finite: false,
                counts: [counts[0], counts[1], counts[2]],
                labels: Vec::new(),
                witness: Some(witness),
            },
        });
    }
    let mut origin: Vec<Option<usize>> = nontrivial.iter().map(|&i| Some(i)).collect();
    let mut comps: Vec<Composition> = nontrivial.iter().map(|&i| d.comp(i).clone()).collect();
    while comps.len() < 3 {
        comps.push(Composition::trivial(n));
        origin.push(None);
    }
    let triple = DimVector::new(comps)?;
    let mut result = classify_triple(&triple)?;
    if let Some(w) = result.witness.as_mut() {
        w.slots = origin.iter().map(|o| o.expect("infinite triples have no padding")).collect();
    }
    Ok(TupleClassification { triple: Some(triple), origin, result })
}

/// Minimal `|x|^2` over sub-compositions `x <= cap` of weight `w`, by filling
/// the currently smallest part first.
fn min_norm_sq(cap: &Composition, w: u64) -> Option<u128> {
    if w > cap.weight() {
        return None;
    }
    let mut x = vec![0u64; cap.len()];
    for _ in 0..w {
        let i = (0..cap.len())
            .filter(|&i| x[i] < u64::from(cap.parts()[i]))
            .min_by_key(|&i| x[i])?;
        x[i] += 1;
    }
    Some(x.iter().map(|&v| u128::from(v) * u128::from(v)).sum())
}

/// Whether every summand `d'` of `d` has `Q(d') >= 1`.
///
/// The Tits form is separable across the compositions, so for each weight
/// the minimum over all summands is the sum of per-composition minima.
pub fn finite_by_summand_criterion(d: &DimVector, cap: u64) -> Result<bool> {
    if d.weight() > cap {
        return Err(Error::CapExceeded { weight: d.weight(), cap });
    }
    let k = d.k() as i128;
    for w in 1..=d.weight() {
        let mut total: i128 = 0;
        for c in d.comps() {
            let m = min_norm_sq(c, w).ok_or_else(|| Error::Invariant("summand weight exceeds composition".into()))?;
            total += i128::try_from(m).map_err(|_| Error::Overflow("tits form"))?;
        }
        let w = i128::from(w);
        if total - (k - 2) * w * w < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::enumerate_summands;

    fn dv(parts: &[&[u32]]) -> DimVector {
        DimVector::from_parts(parts).unwrap()
    }

    #[test]
    fn named_examples() {
        let c = classify_triple(&dv(&[&[3, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]])).unwrap();
        assert!(c.finite);
        assert_eq!(c.labels, vec![TypeLabel::S { q: 4, r: 4 }]);

        let c = classify_triple(&dv(&[&[2, 2], &[1, 1, 2], &[1, 1, 1, 1]])).unwrap();
        assert!(c.finite);
        assert_eq!(c.counts, [2, 3, 4]);
        assert_eq!(c.labels, vec![TypeLabel::E7, TypeLabel::Ea { k: 7 }, TypeLabel::Eb { k: 7 }]);

        let d = dv(&[&[3, 3], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]]);
        let c = classify_triple(&d).unwrap();
        assert!(!c.finite);
        let w = c.witness.unwrap();
        assert_eq!(w.summand, d);
        assert_eq!(w.pattern, AffinePattern::E8);
    }

    #[test]
    fn tuples() {
        let c = classify_tuple(&dv(&[&[1, 2], &[1, 2], &[3]])).unwrap();
        assert!(c.result.finite);
        assert_eq!(c.result.label(), Some(TypeLabel::A { q: 2, r: 2 }));

        let c = classify_tuple(&dv(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]])).unwrap();
        assert!(!c.result.finite);
        let w = c.result.witness.unwrap();
        assert_eq!(w.pattern, AffinePattern::Quadruple);
        assert_eq!(w.tits_q, 0);

        let c = classify_tuple(&dv(&[&[2, 1]])).unwrap();
        assert_eq!(c.result.label(), Some(TypeLabel::A { q: 1, r: 2 }));

        assert_eq!(classify_tuple(&dv(&[&[0], &[0], &[0]])).unwrap_err(), Error::ZeroWeight);
    }

    #[test]
    fn label_strings() {
        assert_eq!(TypeLabel::S { q: 4, r: 4 }.to_string(), "S_{4,4}");
        assert_eq!(TypeLabel::Ea { k: 9 }.to_string(), "E^{(a)}_{9}");
        assert_eq!(TypeLabel::D { k: 5 }.to_string(), "D_{5}");
    }

    #[test]
    fn overlapping_labels_all_reported() {
        // (2,3,3) with min(a) = 2 and min(b) = 1.
        let c = classify_triple(&dv(&[&[2, 2], &[1, 1, 2], &[2, 1, 1]])).unwrap();
        assert_eq!(
            c.labels,
            vec![TypeLabel::E6, TypeLabel::Ea { k: 6 }, TypeLabel::Eb { k: 6 }]
        );
    }

    #[test]
    fn summand_criterion_examples() {
        assert!(finite_by_summand_criterion(&dv(&[&[3, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]), 12).unwrap());
        assert!(!finite_by_summand_criterion(&dv(&[&[2, 2], &[1, 1, 1, 1], &[1, 1, 1, 1]]), 12).unwrap());
        assert!(finite_by_summand_criterion(&dv(&[&[1], &[1], &[1]]), 12).unwrap());
        assert!(matches!(
            finite_by_summand_criterion(&dv(&[&[13], &[13], &[13]]), 12),
            Err(Error::CapExceeded { weight: 13, cap: 12 })
        ));
    }

    #[test]
    fn separable_minimum_matches_exhaustive_scan() {
        let cases = [
            dv(&[&[2, 1], &[1, 1, 1], &[1, 1, 1]]),
            dv(&[&[2, 2], &[1, 1, 1, 1], &[1, 1, 1, 1]]),
            dv(&[&[3, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]),
            dv(&[&[1, 2, 1], &[2, 2], &[1, 1, 2]]),
            dv(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]]),
        ];
        for d in cases {
            let brute = enumerate_summands(&d, None)
                .unwrap()
                .iter()
                .all(|s| s.tits_q().unwrap() >= 1);
            assert_eq!(finite_by_summand_criterion(&d, 12).unwrap(), brute, "{d}");
        }
    }
}

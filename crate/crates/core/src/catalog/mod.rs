//! The catalog of indecomposable dimension vectors and their standard forms.
//!
//! Every entry is realized by a standard-form object: two coordinate flags
//! (prefix spans for `b`, suffix spans for `c`) and a first member `A_1`
//! spanned by 0/1 vectors read off a bundled table.

mod table;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::object::{Flag, FlagObject};

pub use table::{table, FormRow, Table, TableInstance};

/// The six families of indecomposable dimension vectors, by their unordered
/// partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `{(1), (1), (1)}`
    Point,
    /// `{(3,3), (2,2,2), (2,1,1,1,1)}`, the only non-spherical family.
    NonSpherical,
    /// `{(4,2), (2,2,2), (1^6)}`
    FourTwo,
    /// `{(m+1,m), (m,m,1), (1^(2m+1))}`, `m >= 2`
    Odd { m: u32 },
    /// `{(m,m), (m,m-1,1), (1^(2m))}`, `m >= 2`
    Even { m: u32 },
    /// `{(n-1,1), (1^n), (1^n)}`, `n >= 2`
    Hook { n: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Point => write!(f, "{{(1),(1),(1)}}"),
            Family::NonSpherical => write!(f, "{{(3^2),(2^3),(2,1^4)}}"),
            Family::FourTwo => write!(f, "{{(4,2),(2^3),(1^6)}}"),
            Family::Odd { m } => write!(f, "{{(m+1,m),(m,m,1),(1^(2m+1))}} m={m}"),
            Family::Even { m } => write!(f, "{{(m,m),(m,m-1,1),(1^(2m))}} m={m}"),
            Family::Hook { n } => write!(f, "{{(n-1,1),(1^n),(1^n)}} n={n}"),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One indecomposable dimension vector together with its table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiEntry {
    pub dim: DimVector,
    pub instance: TableInstance,
    /// `roles[s]` is the slot of `dim` playing standard role `s` (A, B, C).
    pub roles: [usize; 3],
}

/// Combinatorial data of a standard-form object.
///
/// All indices are 1-based. `delta[l-1] = (i_l, j_l)` refers to positions in
/// the (possibly zero-padded) compositions `b` and `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    pub n: usize,
    pub a: Composition,
    pub b: Composition,
    pub c: Composition,
    pub delta: Vec<(usize, usize)>,
    pub ssets: Vec<Vec<usize>>,
    pub kset: Vec<usize>,
}

const ROLE_ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Finds the table row for `dim`, mapping a composition with at most two
/// non-zero parts to role A (slots tried in order), then trying the other two
/// slots in natural and swapped order.
pub fn lookup(dim: &DimVector) -> Result<Option<PiEntry>> {
    if dim.k() != 3 || dim.is_zero() {
        return Ok(None);
    }
    let red = dim.reduced();
    for roles in ROLE_ORDERS {
        if dim.comp(roles[0]).nonzero_count() > 2 {
            continue;
        }
        let key = red.permuted(&roles);
        if let Some(instance) = table().lookup(&key)? {
            return Ok(Some(PiEntry { dim: dim.clone(), instance, roles }));
        }
    }
    Ok(None)
}

/// Ways to pad `reduced` with zeros to `len` parts while staying under `cap`.
fn paddings(reduced: &Composition, len: usize, cap: &Composition) -> Vec<Composition> {
    let parts = reduced.parts();
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(
        i: usize,
        pos: usize,
        parts: &[u32],
        cap: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Composition>,
    ) {
        if i == parts.len() {
            out.push(Composition::new(cur.clone()));
            return;
        }
        let room = cap.len() - (parts.len() - i);
        for p in pos..=room {
            if parts[i] <= cap[p] {
                cur[p] = parts[i];
                rec(i + 1, p + 1, parts, cap, cur, out);
                cur[p] = 0;
            }
        }
    }
    if parts.len() <= len {
        rec(0, 0, parts, cap.parts(), &mut cur, &mut out);
    }
    out
}

/// Every indecomposable dimension vector with the lengths of `bound` that is
/// part-wise at most `bound`, sorted by weight and then lexicographically.
pub fn pi_catalog(bound: &DimVector) -> Result<Vec<PiEntry>> {
    pi_catalog_up_to(bound, bound.weight())
}

/// [`pi_catalog`] restricted to entries of weight at most `max_weight`.
pub fn pi_catalog_up_to(bound: &DimVector, max_weight: u64) -> Result<Vec<PiEntry>> {
    if bound.k() != 3 {
        return Err(Error::ShapeMismatch(format!("catalog needs a triple, got {} compositions", bound.k())));
    }
    let lengths = bound.lengths();
    let mut dims: BTreeSet<(u64, Vec<u32>)> = BTreeSet::new();
    let mut found = Vec::new();
    for inst in table().instances(max_weight.min(bound.weight()))? {
        for roles in ROLE_ORDERS {
            // Slot roles[s] receives the key's composition s.
            let mut per_slot: Vec<Vec<Composition>> = vec![Vec::new(); 3];
            for s in 0..3 {
                let slot = roles[s];
                per_slot[slot] = paddings(inst.key.comp(s), lengths[slot], bound.comp(slot));
            }
            for x in &per_slot[0] {
                for y in &per_slot[1] {
                    for z in &per_slot[2] {
                        let d = DimVector::triple(x.clone(), y.clone(), z.clone())?;
                        if dims.insert((d.weight(), d.flat())) {
                            found.push(d);
                        }
                    }
                }
            }
        }
    }
    found.sort_by_key(|d| (d.weight(), d.flat()));
    found
        .into_iter()
        .map(|d| {
            lookup(&d)?.ok_or_else(|| Error::Invariant(format!("generated {d} has no table row")))
        })
        .collect()
}

impl StandardForm {
    /// Builds the standard form of a table instance placed in padded
    /// compositions `(a, b, c)` whose reductions equal the instance key.
    pub fn new(instance: &TableInstance, a: Composition, b: Composition, c: Composition) -> Result<Self> {
        let n = instance.key.weight() as usize;
        let pb = b.prefix_sums();
        let pc = c.prefix_sums();
        let first_reaching = |ps: &[u64], t: usize| -> usize {
            ps.iter().position(|&s| s as usize >= t).expect("prefix sums reach n")
        };
        let delta = (1..=n)
            .map(|l| (first_reaching(&pb, l), first_reaching(&pc, n + 1 - l)))
            .collect();
        let mut kset = BTreeSet::new();
        for (x, s) in instance.ssets.iter().enumerate() {
            for t in &instance.ssets[x + 1..] {
                kset.extend(s.iter().filter(|l| t.contains(l)).copied());
            }
        }
        let kset: Vec<usize> = kset.into_iter().collect();
        if kset.len() > 2 {
            return Err(Error::OverlapTooLarge(kset.len()));
        }
        Ok(StandardForm { n, a, b, c, delta, ssets: instance.ssets.clone(), kset })
    }

    /// The form of a table instance without zero padding.
    pub fn unpadded(instance: &TableInstance) -> Result<Self> {
        let k = &instance.key;
        StandardForm::new(instance, k.comp(0).clone(), k.comp(1).clone(), k.comp(2).clone())
    }

    /// 1-based position of the first non-zero part of `a`.
    pub fn a_first(&self) -> usize {
        self.a.first_nonzero().expect("non-zero weight") + 1
    }

    /// 1-based position of the last non-zero part of `a`.
    pub fn a_last(&self) -> usize {
        self.a.parts().iter().rposition(|&x| x != 0).expect("non-zero weight") + 1
    }

    /// The subspace `A_1` spanned by the vectors `sum_{l in S_k} e_l`.
    pub fn a_one<F: Field>(&self, field: F) -> Result<Subspace<F>> {
        let rows = self
            .ssets
            .iter()
            .map(|s| {
                let mut v = vec![field.zero(); self.n];
                for &l in s {
                    v[l - 1] = field.one();
                }
                v
            })
            .collect();
        Subspace::span(field, self.n, rows)
    }

    /// The object in standard role order `(A, B, C)`.
    pub fn realize<F: Field>(&self, field: F) -> Result<FlagObject<F>> {
        let n = self.n;
        let a1 = self.a_one(field)?;
        let first = u64::from(self.a.parts()[self.a_first() - 1]);
        if a1.dim() as u64 != first {
            return Err(Error::Invariant(format!(
                "subsets span a space of dimension {} instead of {first}",
                a1.dim()
            )));
        }
        let members = self
            .a
            .prefix_sums()
            .into_iter()
            .skip(1)
            .map(|s| {
                if s == 0 {
                    Subspace::zero(field, n)
                } else if s as usize == n {
                    Subspace::full(field, n)
                } else {
                    a1.clone()
                }
            })
            .collect();
        let flags = vec![
            Flag::new(members, n)?,
            Flag::coordinate(field, &self.b, false),
            Flag::coordinate(field, &self.c, true),
        ];
        FlagObject::new(field, n, flags)
    }

    /// Blocks of the reduced `b` from the left and `c` from the right:
    /// `(b_block[l], c_block[l])` for `l = 1..=n` (index 0 unused).
    fn blocks(&self) -> (Vec<usize>, Vec<usize>) {
        let mut bb = vec![0; self.n + 1];
        let mut cb = vec![0; self.n + 1];
        let mut l = 1;
        for (i, &x) in self.b.reduce().parts().iter().enumerate() {
            for _ in 0..x {
                bb[l] = i;
                l += 1;
            }
        }
        let mut l = self.n;
        for (j, &x) in self.c.reduce().parts().iter().enumerate() {
            for _ in 0..x {
                cb[l] = j;
                l -= 1;
            }
        }
        (bb, cb)
    }

    /// Decides Schurness from the subsets alone, when every subset has at
    /// least two elements, they cover `1..=n`, and all pairwise intersections
    /// equal one common index `mu`.
    pub fn schur_check_combinatorial(&self) -> Result<bool> {
        let n = self.n;
        let sets = &self.ssets;
        if sets.iter().any(|s| s.len() < 2) {
            return Err(Error::Inapplicable("a subset has fewer than two elements".into()));
        }
        let covered: BTreeSet<usize> = sets.iter().flatten().copied().collect();
        if covered.len() != n {
            return Err(Error::Inapplicable("the subsets do not cover every index".into()));
        }
        let mu = if sets.len() == 1 {
            sets[0][0]
        } else {
            let mut common: Option<usize> = None;
            for (x, s) in sets.iter().enumerate() {
                for t in &sets[x + 1..] {
                    let inter: Vec<usize> = s.iter().filter(|l| t.contains(l)).copied().collect();
                    if inter.len() != 1 || common.is_some_and(|c| c != inter[0]) {
                        return Err(Error::Inapplicable(format!(
                            "pairwise intersections are not one common index (|K| = {})",
                            self.kset.len()
                        )));
                    }
                    common = Some(inter[0]);
                }
            }
            common.expect("at least two subsets")
        };
        let mut primed: Vec<Vec<usize>> = vec![vec![mu]];
        primed.extend(sets.iter().map(|s| s.iter().copied().filter(|&l| l != mu).collect()));

        let (bb, cb) = self.blocks();
        let b_sep = |l: usize, s: &[usize]| !s.iter().any(|&x| x < l && bb[x] == bb[l]);
        let c_sep = |l: usize, s: &[usize]| !s.iter().any(|&x| x > l && cb[x] == cb[l]);
        let bc_sep = |l: usize, s: &[usize]| b_sep(l, s) && c_sep(l, s);

        for s in &primed {
            for (x, &l) in s.iter().enumerate() {
                for &m in &s[x + 1..] {
                    if bb[l] == bb[m] || cb[l] == cb[m] {
                        return Ok(false);
                    }
                }
            }
        }
        for (j, sj) in primed.iter().enumerate() {
            for (k, sk) in primed.iter().enumerate() {
                if j == k {
                    continue;
                }
                if !sj.iter().all(|&l| b_sep(l, sk) || c_sep(l, sk)) {
                    return Ok(false);
                }
                if !sj.iter().any(|&l| bc_sep(l, sk)) {
                    return Ok(false);
                }
            }
        }
        for (j, sj) in primed.iter().enumerate() {
            let mut parent: Vec<usize> = (0..sj.len()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            for (k, sk) in primed.iter().enumerate() {
                if k == j {
                    continue;
                }
                let sep: Vec<usize> = (0..sj.len()).filter(|&x| bc_sep(sj[x], sk)).collect();
                for w in sep.windows(2) {
                    let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    parent[ra] = rb;
                }
            }
            let root = find(&mut parent, 0);
            if (1..sj.len()).any(|x| find(&mut parent, x) != root) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PiEntry {
    pub fn family(&self) -> Family {
        self.instance.family
    }

    /// The composition in standard role `s`.
    pub fn role_comp(&self, s: usize) -> &Composition {
        self.dim.comp(self.roles[s])
    }

    pub fn standard_form(&self) -> Result<StandardForm> {
        StandardForm::new(
            &self.instance,
            self.role_comp(0).clone(),
            self.role_comp(1).clone(),
            self.role_comp(2).clone(),
        )
    }

    /// Permutation taking a standard-role object back to the slots of `dim`.
    pub fn inverse_roles(&self) -> [usize; 3] {
        let mut inv = [0; 3];
        for (s, &slot) in self.roles.iter().enumerate() {
            inv[slot] = s;
        }
        inv
    }

    pub fn realize<F: Field>(&self, field: F) -> Result<FlagObject<F>> {
        Ok(self.standard_form()?.realize(field)?.permuted(&self.inverse_roles()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn dv(parts: &[&[u32]]) -> DimVector {
        DimVector::from_parts(parts).unwrap()
    }

    #[test]
    fn catalog_two_two_two() {
        let cat = pi_catalog(&dv(&[&[1, 1], &[1, 1], &[1, 1]])).unwrap();
        assert_eq!(cat.len(), 9);
        assert_eq!(cat.iter().filter(|e| e.dim.weight() == 1).count(), 8);
        assert_eq!(cat[8].dim, dv(&[&[1, 1], &[1, 1], &[1, 1]]));
        assert_eq!(cat[8].family(), Family::Hook { n: 2 });
    }

    #[test]
    fn catalog_single_parts() {
        let cat = pi_catalog(&dv(&[&[6], &[6], &[6]])).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].dim, dv(&[&[1], &[1], &[1]]));
    }

    #[test]
    fn catalog_contains_both_orderings() {
        // A part-wise bound admitting both orderings of the two-part composition.
        let cat = pi_catalog(&dv(&[&[6, 6], &[4, 4, 4], &[2, 2, 2, 2, 2, 2]])).unwrap();
        let dims: Vec<_> = cat.iter().map(|e| e.dim.clone()).collect();
        assert!(dims.contains(&dv(&[&[4, 2], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]])));
        assert!(dims.contains(&dv(&[&[2, 4], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]])));
        assert!(cat.iter().all(|e| e.dim.tits_q().unwrap() == 1));
    }

    #[test]
    fn standard_form_examples() {
        let e = lookup(&dv(&[&[4, 2], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]])).unwrap().unwrap();
        let sf = e.standard_form().unwrap();
        assert_eq!(sf.ssets, vec![vec![1, 5], vec![2, 3], vec![2, 5, 6], vec![4, 5]]);
        assert_eq!(sf.kset, vec![2, 5]);

        let e = lookup(&dv(&[&[1], &[1], &[1]])).unwrap().unwrap();
        let sf = e.standard_form().unwrap();
        assert_eq!(sf.ssets, vec![vec![1]]);
        assert_eq!(sf.delta, vec![(1, 1)]);
    }

    #[test]
    fn realize_hook_two() {
        let e = lookup(&dv(&[&[1, 1], &[1, 1], &[1, 1]])).unwrap().unwrap();
        let q = Rationals;
        let x = e.realize(q).unwrap();
        assert_eq!(x.flag(1).member(1), Subspace::coordinate(q, 2, [0]));
        assert_eq!(x.flag(2).member(1), Subspace::coordinate(q, 2, [1]));
        let diag = Subspace::span(q, 2, vec![vec![q.one(), q.one()]]).unwrap();
        assert_eq!(x.flag(0).member(1), diag);
    }

    #[test]
    fn realize_respects_roles_and_padding() {
        let d = dv(&[&[1, 1, 1], &[0, 2, 1], &[1, 0, 1, 1]]);
        let e = lookup(&d).unwrap().unwrap();
        let x = e.realize(Rationals).unwrap();
        assert_eq!(x.dim_vector(), d);

        let unit = dv(&[&[1, 0], &[0, 1], &[1, 0]]);
        let x = lookup(&unit).unwrap().unwrap().realize(Rationals).unwrap();
        assert_eq!(x.dim_vector(), unit);
        assert_eq!(x.flag(1).member(1).dim(), 0);
    }

    #[test]
    fn combinatorial_schur_examples() {
        let e = lookup(&dv(&[&[2, 3], &[2, 2, 1], &[1, 1, 1, 1, 1]])).unwrap().unwrap();
        assert!(e.standard_form().unwrap().schur_check_combinatorial().unwrap());

        let e = lookup(&dv(&[&[3, 3], &[2, 2, 2], &[2, 1, 1, 1, 1]])).unwrap().unwrap();
        assert!(matches!(
            e.standard_form().unwrap().schur_check_combinatorial(),
            Err(Error::Inapplicable(_))
        ));

        let e = lookup(&dv(&[&[1, 4], &[1; 5], &[1; 5]])).unwrap().unwrap();
        assert!(e.standard_form().unwrap().schur_check_combinatorial().unwrap());
    }
}

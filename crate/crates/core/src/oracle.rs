//! Brute-force orbit census over a small prime field.
//!
//! Every tuple of flags in `F_q^n` is enumerated and the tuples are merged
//! under a generating set of `GL_n(F_q)` with a union-find. The result is
//! independent of the catalog and of the Hom formulas, so it serves as a check
//! on both.

use std::collections::HashMap;

use serde::Serialize;

use crate::composition::{Composition, DimVector};
use crate::error::{Error, Result};
use crate::exactlin::{PrimeField, Subspace};
use crate::object::FlagObject;
use crate::orbits::OrbitSpace;

/// Default bound on `(number of flag tuples) * n^2`.
pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "MULTIFLAG_BUDGET";

/// The budget from [`BUDGET_ENV`], or [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// `[n]_q! / prod [a_i]_q!`: the number of flags with jumps `a` in `F_q^n`.
pub fn gaussian_multinomial(a: &Composition, q: u32) -> Result<u128> {
    let q = u128::from(q);
    let qint = |k: u64| -> Result<u128> {
        (0..k).try_fold(0u128, |acc, i| {
            let p = q.checked_pow(i as u32).ok_or(Error::Overflow("q-integer"))?;
            acc.checked_add(p).ok_or(Error::Overflow("q-integer"))
        })
    };
    let mut result = 1u128;
    let mut done = 0u64;
    for &part in a.parts() {
        // Multiply by the Gaussian binomial [done + part, part] incrementally.
        for i in 1..=u64::from(part) {
            done += 1;
            result = result.checked_mul(qint(done)?).ok_or(Error::Overflow("Gaussian multinomial"))?;
            result /= qint(i)?;
        }
    }
    Ok(result)
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u32) -> Result<u128> {
    let q = u128::from(q);
    let qn = q.checked_pow(n as u32).ok_or(Error::Overflow("|GL_n|"))?;
    (0..n).try_fold(1u128, |acc, i| acc.checked_mul(qn - q.pow(i as u32)).ok_or(Error::Overflow("|GL_n|")))
}

/// `prod_s |Fl(a_s)| * n^2`, the work estimate compared against the budget.
pub fn estimate_work(target: &DimVector, q: u32) -> Result<u128> {
    let n = target.weight() as u128;
    target
        .comps()
        .iter()
        .try_fold(n * n, |acc, a| acc.checked_mul(gaussian_multinomial(a, q)?).ok_or(Error::Overflow("census size")))
}

fn all_subspaces(field: PrimeField, n: usize, k: usize) -> Vec<Subspace<PrimeField>> {
    let q = field.modulus();
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            choose(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    choose(0, n, k, &mut Vec::new(), &mut pivots);
    for piv in pivots {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = (q as usize).pow(free.len() as u32);
        for mut code in 0..count {
            let mut rows = vec![vec![0u32; n]; k];
            for (r, &p) in piv.iter().enumerate() {
                rows[r][p] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = (code % q as usize) as u32;
                code /= q as usize;
            }
            out.push(Subspace::span(field, n, rows).expect("rows have the ambient length"));
        }
    }
    out
}

struct FlagVariety {
    flags: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Union-find over tuples of flags, merged under generators of `GL_n(F_q)`.
pub struct Census {
    field: PrimeField,
    target: DimVector,
    subspaces: Vec<Subspace<PrimeField>>,
    sub_index: HashMap<Subspace<PrimeField>, usize>,
    varieties: Vec<FlagVariety>,
    /// Fully compressed: `parent[x]` is the root of `x`.
    parent: Vec<u32>,
    roots: Vec<u32>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

fn generators(field: PrimeField, n: usize) -> Vec<Vec<Vec<u32>>> {
    let id = |n: usize| -> Vec<Vec<u32>> {
        (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
    };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = id(n);
                m[i][j] = 1;
                gens.push(m);
            }
        }
    }
    let g = field.primitive_root();
    if n > 0 && g != 1 {
        let mut m = id(n);
        m[0][0] = g;
        gens.push(m);
    }
    gens
}

impl Census {
    /// Runs the census for `target` over `F_q`, refusing work above `budget`.
    pub fn run(target: &DimVector, q: u32, budget: u128) -> Result<Self> {
        let field = PrimeField::new(q)?;
        if target.weight() == 0 {
            return Err(Error::ZeroWeight);
        }
        let estimated = estimate_work(target, q)?;
        if estimated > budget {
            return Err(Error::BudgetExceeded { estimated, budget });
        }
        let n = target.weight() as usize;

        let mut subspaces = Vec::new();
        let mut by_dim = Vec::new();
        for k in 0..=n {
            let start = subspaces.len();
            subspaces.extend(all_subspaces(field, n, k));
            by_dim.push(start..subspaces.len());
        }
        let sub_index: HashMap<Subspace<PrimeField>, usize> =
            subspaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let mut varieties = Vec::new();
        for a in target.comps() {
            let dims: Vec<usize> = a.prefix_sums()[1..].iter().map(|&x| x as usize).collect();
            let mut flags = Vec::new();
            let mut cur = Vec::new();
            Self::chains(&subspaces, &by_dim, &dims, &mut cur, &mut flags);
            let expected = gaussian_multinomial(a, q)?;
            if flags.len() as u128 != expected {
                return Err(Error::Invariant(format!(
                    "enumerated {} flags of type {a}, expected {expected}",
                    flags.len()
                )));
            }
            let index = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
            varieties.push(FlagVariety { flags, index });
        }

        let total: usize = varieties.iter().map(|v| v.flags.len()).product();
        let total_u32 = u32::try_from(total).map_err(|_| Error::Overflow("census size"))?;
        let mut parent: Vec<u32> = (0..total_u32).collect();

        for g in generators(field, n) {
            let sub_perm: Vec<usize> = subspaces
                .iter()
                .map(|s| sub_index[&s.image(&g, n).expect("square generator")])
                .collect();
            let flag_perms: Vec<Vec<usize>> = varieties
                .iter()
                .map(|v| {
                    v.flags
                        .iter()
                        .map(|f| v.index[&f.iter().map(|&s| sub_perm[s]).collect::<Vec<_>>()])
                        .collect()
                })
                .collect();
            for x in 0..total {
                let mut rest = x;
                let mut y = 0usize;
                let mut stride = 1usize;
                for (v, perm) in varieties.iter().zip(&flag_perms) {
                    let len = v.flags.len();
                    y += perm[rest % len] * stride;
                    rest /= len;
                    stride *= len;
                }
                let (rx, ry) = (find(&mut parent, x as u32), find(&mut parent, y as u32));
                if rx != ry {
                    parent[rx.max(ry) as usize] = rx.min(ry);
                }
            }
        }
        for x in 0..total_u32 {
            parent[x as usize] = find(&mut parent, x);
        }
        let roots: Vec<u32> = (0..total_u32).filter(|&x| parent[x as usize] == x).collect();
        Ok(Census { field, target: target.clone(), subspaces, sub_index, varieties, parent, roots })
    }

    fn chains(
        subspaces: &[Subspace<PrimeField>],
        by_dim: &[std::ops::Range<usize>],
        dims: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == dims.len() {
            out.push(cur.clone());
            return;
        }
        for s in by_dim[dims[i]].clone() {
            if cur.last().is_none_or(|&p| subspaces[s].contains(&subspaces[p])) {
                cur.push(s);
                Self::chains(subspaces, by_dim, dims, cur, out);
                cur.pop();
            }
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.roots.len()
    }

    /// Orbit sizes, ordered by the smallest tuple index in each orbit.
    pub fn orbit_sizes(&self) -> Vec<u128> {
        let mut sizes: HashMap<u32, u128> = HashMap::new();
        for &r in &self.parent {
            *sizes.entry(r).or_default() += 1;
        }
        self.roots.iter().map(|r| sizes[r]).collect()
    }

    /// Position (in [`Census::orbit_sizes`] order) of the orbit containing `obj`.
    pub fn orbit_of(&self, obj: &FlagObject<PrimeField>) -> Result<usize> {
        if obj.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if obj.dim_vector() != self.target {
            return Err(Error::ShapeMismatch(format!("{} is not {}", obj.dim_vector(), self.target)));
        }
        let mut x = 0usize;
        let mut stride = 1usize;
        for (flag, v) in obj.flags().iter().zip(&self.varieties) {
            let ids: Vec<usize> = flag.members().iter().map(|m| self.sub_index[m]).collect();
            x += v.index[&ids] * stride;
            stride *= v.flags.len();
        }
        let root = self.parent[x];
        Ok(self.roots.binary_search(&root).expect("every root is listed"))
    }

    pub fn report(&self) -> Result<CensusReport> {
        let n = self.target.weight() as usize;
        let q = self.field.modulus();
        let flag_counts: Vec<u128> = self.varieties.iter().map(|v| v.flags.len() as u128).collect();
        let expected_total = self
            .target
            .comps()
            .iter()
            .try_fold(1u128, |acc, a| Ok::<_, Error>(acc * gaussian_multinomial(a, q)?))?;
        let orbit_sizes = self.orbit_sizes();
        let group_order = gl_order(n, q)?;
        Ok(CensusReport {
            target: self.target.clone(),
            q,
            orbits: self.orbit_count(),
            flag_counts,
            total: orbit_sizes.iter().sum(),
            expected_total,
            group_order,
            sizes_divide_group_order: orbit_sizes.iter().all(|s| group_order % s == 0),
            orbit_sizes,
        })
    }

    pub fn subspace_count(&self) -> usize {
        self.subspaces.len()
    }
}

/// Summary of a census run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub target: DimVector,
    pub q: u32,
    pub orbits: usize,
    pub flag_counts: Vec<u128>,
    pub orbit_sizes: Vec<u128>,
    /// Sum of the orbit sizes.
    pub total: u128,
    /// Product of Gaussian multinomials.
    pub expected_total: u128,
    pub group_order: u128,
    pub sizes_divide_group_order: bool,
}

impl CensusReport {
    pub fn consistent(&self) -> bool {
        self.total == self.expected_total && self.sizes_divide_group_order
    }
}

/// Counts orbits of `target` over `F_q`.
pub fn census(target: &DimVector, q: u32, budget: u128) -> Result<CensusReport> {
    Census::run(target, q, budget)?.report()
}

/// How the enumerated families land on the census orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub census: CensusReport,
    pub families: usize,
    /// `assignment[i]` is the census orbit of the representative of family `i`.
    pub assignment: Vec<usize>,
    pub bijective: bool,
}

/// Realizes every orbit representative over `F_q` and locates it in the census.
pub fn match_orbits(target: &DimVector, q: u32, budget: u128) -> Result<MatchReport> {
    let space = OrbitSpace::new(target)?;
    let census = Census::run(target, q, budget)?;
    let field = PrimeField::new(q)?;
    let assignment: Vec<usize> = (0..space.len())
        .map(|i| census.orbit_of(&space.representative(i, field)?))
        .collect::<Result<_>>()?;
    let mut seen = assignment.clone();
    seen.sort_unstable();
    seen.dedup();
    let bijective = seen.len() == assignment.len() && assignment.len() == census.orbit_count();
    Ok(MatchReport { census: census.report()?, families: space.len(), assignment, bijective })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(parts: &[&[u32]]) -> DimVector {
        DimVector::from_parts(parts).unwrap()
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_multinomial(&Composition::new(vec![1, 1]), 2).unwrap(), 3);
        assert_eq!(gaussian_multinomial(&Composition::ones(3), 3).unwrap(), 52);
        assert_eq!(gaussian_multinomial(&Composition::new(vec![2, 2]), 2).unwrap(), 35);
        assert_eq!(gaussian_multinomial(&Composition::new(vec![0, 3, 0]), 5).unwrap(), 1);
        assert_eq!(gl_order(2, 2).unwrap(), 6);
        assert_eq!(gl_order(3, 3).unwrap(), 26 * 24 * 18);
    }

    #[test]
    fn subspace_counts() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(all_subspaces(f, 3, 1).len(), 13);
        assert_eq!(all_subspaces(f, 4, 2).len(), 130);
        assert_eq!(all_subspaces(f, 2, 0).len(), 1);
    }

    #[test]
    fn census_counts() {
        for q in [2, 3] {
            let r = census(&dv(&[&[1, 1], &[1, 1], &[1, 1]]), q, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.orbits, 5);
            assert!(r.consistent());
            let r = census(&dv(&[&[3], &[1, 1, 1], &[1, 1, 1]]), q, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.orbits, 6);
            let r = census(&dv(&[&[1, 1], &[1, 1], &[2, 0]]), q, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.orbits, 2);
        }
    }

    #[test]
    fn budget_refusal() {
        let e = census(&dv(&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]), 3, 1000).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn matching_small() {
        let m = match_orbits(&dv(&[&[1, 1], &[1, 1], &[1, 1]]), 2, DEFAULT_BUDGET).unwrap();
        assert!(m.bijective);
    }
}

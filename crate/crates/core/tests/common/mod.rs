//! Random flag objects and catalog sources shared by the integration tests.
#![allow(dead_code)]

use multiflag::catalog::table;
use multiflag::exactlin::{Field, Subspace};
use multiflag::{lookup, Composition, DimVector, Flag, FlagObject, PiEntry};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random composition of `n` into `len` parts, zeros allowed.
pub fn random_composition<R: Rng>(rng: &mut R, n: u32, len: usize) -> Composition {
    let mut parts = vec![0u32; len];
    for _ in 0..n {
        parts[rng.gen_range(0..len)] += 1;
    }
    Composition::new(parts)
}

/// A random element, biased towards `0` and `±1` so that intersections are
/// often non-generic.
pub fn random_elem<F: Field, R: Rng>(field: F, rng: &mut R) -> F::Elem {
    match rng.gen_range(0..10) {
        0..=4 => field.zero(),
        5..=6 => field.one(),
        7 => field.from_i64(-1),
        _ => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_invertible<F: Field, R: Rng>(field: F, rng: &mut R, n: usize) -> Vec<Vec<F::Elem>> {
    loop {
        let m: Vec<Vec<F::Elem>> = (0..n).map(|_| (0..n).map(|_| random_elem(field, rng)).collect()).collect();
        if Subspace::span(field, n, m.clone()).expect("square").dim() == n {
            return m;
        }
    }
}

/// A flag with the given jumps spanned by initial rows of a random basis.
pub fn random_flag<F: Field, R: Rng>(field: F, rng: &mut R, jumps: &Composition) -> Flag<F> {
    let n = jumps.weight() as usize;
    let basis = random_invertible(field, rng, n);
    let members = jumps.prefix_sums()[1..]
        .iter()
        .map(|&s| Subspace::span(field, n, basis[..s as usize].to_vec()).expect("rows fit"))
        .collect();
    Flag::new(members, n).expect("initial spans of a basis are nested")
}

/// Independent random flags of the given lengths in a space of dimension `n`.
pub fn random_object<F: Field, R: Rng>(field: F, rng: &mut R, n: u32, lengths: &[usize]) -> FlagObject<F> {
    if n == 0 {
        return FlagObject::zero(field, lengths);
    }
    let flags = lengths
        .iter()
        .map(|&len| {
            let jumps = random_composition(rng, n, len);
            random_flag(field, rng, &jumps)
        })
        .collect();
    FlagObject::new(field, n as usize, flags).expect("flags share the space")
}

/// A random catalog entry of weight at most `max_weight` with the given
/// composition lengths: a table key in a random slot order, zero-padded at
/// random positions.
pub fn random_entry_with_lengths<R: Rng>(rng: &mut R, max_weight: u64, lengths: &[usize]) -> PiEntry {
    let instances = table().instances(max_weight).expect("table instantiates");
    loop {
        let inst = instances.choose(rng).expect("non-empty table");
        let mut comps: Vec<Composition> = inst.key.comps().to_vec();
        comps.shuffle(rng);
        if comps.iter().zip(lengths).any(|(c, &l)| c.len() > l) {
            continue;
        }
        let padded = comps
            .iter()
            .zip(lengths)
            .map(|(c, &l)| {
                let mut slots: Vec<usize> = rand::seq::index::sample(rng, l, c.len()).into_vec();
                slots.sort_unstable();
                let mut parts = vec![0u32; l];
                for (&slot, &p) in slots.iter().zip(c.parts()) {
                    parts[slot] = p;
                }
                Composition::new(parts)
            })
            .collect();
        let d = DimVector::new(padded).expect("same weight");
        return lookup(&d).expect("lookup succeeds").expect("padded table keys are in the catalog");
    }
}

/// A direct sum of catalog indecomposables, moved by a random change of basis.
pub fn random_sum_of_indecomposables<F: Field, R: Rng>(
    field: F,
    rng: &mut R,
    n: u32,
    lengths: &[usize],
) -> FlagObject<F> {
    let mut acc = FlagObject::zero(field, lengths);
    let mut left = n;
    while left > 0 {
        let e = random_entry_with_lengths(rng, u64::from(left), lengths);
        acc = acc.direct_sum(&e.realize(field).expect("catalog entries realize")).expect("same lengths");
        left -= e.dim.weight() as u32;
    }
    let m = random_invertible(field, rng, n as usize);
    acc.transform(&m).expect("square change of basis")
}

/// Either kind of random target, chosen at random.
pub fn random_target<F: Field, R: Rng>(field: F, rng: &mut R, max_dim: u32, lengths: &[usize]) -> FlagObject<F> {
    let n = rng.gen_range(0..=max_dim);
    if n > 0 && rng.gen_bool(0.5) {
        random_sum_of_indecomposables(field, rng, n, lengths)
    } else {
        random_object(field, rng, n, lengths)
    }
}

/// A random catalog entry of weight at most `max_weight`, in a random slot
/// order and with up to one zero part inserted into each composition.
pub fn random_source<R: Rng>(rng: &mut R, max_weight: u64) -> PiEntry {
    let instances = table().instances(max_weight).expect("table instantiates");
    let inst = instances.choose(rng).expect("non-empty table");
    let mut comps: Vec<Composition> = inst.key.comps().to_vec();
    comps.shuffle(rng);
    let comps = comps
        .into_iter()
        .map(|c| {
            let mut parts = c.parts().to_vec();
            if rng.gen_bool(0.4) {
                let at = rng.gen_range(0..=parts.len());
                parts.insert(at, 0);
            }
            Composition::new(parts)
        })
        .collect();
    let d = DimVector::new(comps).expect("same weight");
    lookup(&d).expect("lookup succeeds").expect("padded table keys are in the catalog")
}

use multiflag::exactlin::{PrimeField, Rationals};
use multiflag::oracle::{census, Census, DEFAULT_BUDGET};
use multiflag::orbits::{TypeAOrbit, TypeSOrbit};
use multiflag::{classify_triple, hom_dim_linalg, reduced_triples, Composition, DimVector, Error, OrbitSpace};
use rayon::prelude::*;

fn finite_targets(max_weight: u32, lengths: [usize; 3]) -> Vec<DimVector> {
    reduced_triples(max_weight, lengths)
        .into_iter()
        .filter(|d| classify_triple(d).unwrap().finite)
        .collect()
}

#[test]
fn gram_matches_endomorphisms_of_representatives() {
    let targets = finite_targets(5, [2, 4, 6]);
    targets.par_iter().for_each(|d| {
        let space = OrbitSpace::new(d).unwrap();
        let table = space.table().unwrap();
        for i in 0..space.len() {
            let rep = space.representative(i, Rationals).unwrap();
            assert_eq!(rep.dim_vector(), *d);
            let gram = multiflag::gram_hom(space.multiplicities(i), table).unwrap();
            assert_eq!(gram, hom_dim_linalg(&rep, &rep).unwrap() as u64, "{d}, family {i}");
        }
    });
}

#[test]
fn counts_match_census_for_small_targets() {
    // Every finite triple with n <= 3 and lengths at most (2,3,3), over F_2 and F_3.
    for d in finite_targets(3, [2, 3, 3]) {
        let space = OrbitSpace::new(&d).unwrap();
        for q in [2, 3] {
            let r = census(&d, q, DEFAULT_BUDGET).unwrap();
            assert!(r.consistent(), "{d} over F_{q}");
            assert_eq!(r.orbits, space.len(), "{d} over F_{q}");
        }
    }
}

#[test]
fn infinite_type_census_grows_with_q() {
    // Four lines in the plane: the cross-ratio gives more orbits as q grows.
    let d = DimVector::from_parts(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]]).unwrap();
    let small = census(&d, 2, DEFAULT_BUDGET).unwrap();
    let large = census(&d, 3, DEFAULT_BUDGET).unwrap();
    assert!(small.consistent() && large.consistent());
    assert!(large.orbits > small.orbits, "{} vs {}", small.orbits, large.orbits);
    assert!(matches!(
        OrbitSpace::new(&DimVector::from_parts(&[&[2, 2], &[1, 1, 1, 1], &[1, 1, 1, 1]]).unwrap()),
        Err(Error::InfiniteType(_))
    ));
}

#[test]
fn explicit_representatives_land_in_the_same_orbit() {
    let f = PrimeField::new(2).unwrap();
    for n in 1..=3u32 {
        for b in (1..=n as usize).flat_map(|l| multiflag::positive_compositions(n, l)) {
            for c in (1..=n as usize).flat_map(|l| multiflag::positive_compositions(n, l)) {
                let a = DimVector::triple(Composition::trivial(n), b.clone(), c.clone()).unwrap();
                let space = OrbitSpace::new(&a).unwrap();
                let cen = Census::run(&a, 2, DEFAULT_BUDGET).unwrap();
                for i in 0..space.len() {
                    let orbit = TypeAOrbit::from_family(&space.family(i)).unwrap();
                    let x = orbit.explicit_representative(f).unwrap();
                    let y = space.representative(i, f).unwrap();
                    assert_eq!(cen.orbit_of(&x).unwrap(), cen.orbit_of(&y).unwrap(), "{a}, {:?}", orbit.matrix);
                }
                if n < 2 {
                    continue;
                }
                let s = DimVector::triple(Composition::new(vec![1, n - 1]), b.clone(), c.clone()).unwrap();
                let cen = Census::run(&s, 2, DEFAULT_BUDGET).unwrap();
                for o in TypeSOrbit::enumerate(&b, &c) {
                    let x = o.explicit_representative(f).unwrap();
                    let y = multiflag::orbit_representative(&o.to_family().unwrap(), f).unwrap();
                    assert_eq!(cen.orbit_of(&x).unwrap(), cen.orbit_of(&y).unwrap(), "{s}, {:?}", o.delta);
                }
            }
        }
    }
}

#[test]
fn hasse_edges_decrease_codimension() {
    for d in finite_targets(4, [2, 3, 4]) {
        let h = OrbitSpace::new(&d).unwrap().hasse().unwrap();
        for &(u, v) in &h.edges {
            assert!(h.codims[u] > h.codims[v], "{d}: edge {u} -> {v}");
        }
        assert_eq!(h.codims.iter().filter(|&&c| c == 0).count(), 1, "{d}");
    }
}

#[test]
fn hasse_output_formats() {
    let d = DimVector::from_parts(&[&[2], &[1, 1], &[1, 1]]).unwrap();
    let h = multiflag::hasse(&d).unwrap();
    let json = h.to_json();
    assert_eq!(json["order"], "hom-rank");
    assert_eq!(json["dynkin"], true);
    assert_eq!(json["edges"].as_array().unwrap().len(), 1);
    let dot = h.to_dot();
    assert!(dot.starts_with("digraph hasse {"));
    assert!(dot.contains("codim 1") && dot.contains("codim 0"));
    let s = multiflag::hasse(&DimVector::from_parts(&[&[3, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]).unwrap()).unwrap();
    assert!(!s.dynkin);
}

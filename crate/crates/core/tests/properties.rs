use multiflag::exactlin::{PrimeField, QuotientMap, Subspace};
use multiflag::{classify_triple, enumerate_summands, Composition, DimVector};
use proptest::prelude::*;

const N: usize = 5;

fn field() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn subspace() -> impl Strategy<Value = Subspace<PrimeField>> {
    prop::collection::vec(prop::collection::vec(0u32..5, N), 0..=N)
        .prop_map(|rows| Subspace::span(field(), N, rows).unwrap())
}

fn triple() -> impl Strategy<Value = DimVector> {
    (1u32..=7, 1usize..=2, 1usize..=4, 1usize..=6, any::<u64>()).prop_map(|(n, p, q, r, seed)| {
        let mut s = seed;
        let mut comp = |len: usize| {
            let mut parts = vec![0u32; len];
            for _ in 0..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                parts[(s >> 33) as usize % len] += 1;
            }
            Composition::new(parts)
        };
        let (a, b, c) = (comp(p), comp(q), comp(r));
        DimVector::triple(a, b, c).unwrap()
    })
}

proptest! {
    #[test]
    fn dimension_formula(u in subspace(), w in subspace()) {
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(u.contains(&i) && w.contains(&i));
        prop_assert!(s.contains(&u) && s.contains(&w));
    }

    #[test]
    fn annihilator_is_an_involution(u in subspace()) {
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim(), N - u.dim());
        prop_assert_eq!(ann.annihilator(), u);
    }

    #[test]
    fn quotient_dimensions(u in subspace(), w in subspace()) {
        let q = QuotientMap::new(u.clone());
        prop_assert_eq!(q.target_dim(), N - u.dim());
        prop_assert_eq!(q.project(&w).unwrap().dim(), u.sum(&w).unwrap().dim() - u.dim());
    }

    #[test]
    fn classification_ignores_slot_order_and_zero_parts(d in triple()) {
        let base = classify_triple(&d).unwrap();
        for p in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let c = classify_triple(&d.permuted(&p)).unwrap();
            prop_assert_eq!(c.finite, base.finite);
            prop_assert_eq!(&c.labels, &base.labels);
        }
        let reduced = classify_triple(&d.reduced()).unwrap();
        prop_assert_eq!(reduced.finite, base.finite);
    }

    #[test]
    fn summands_of_finite_triples_are_finite(d in triple()) {
        prop_assume!(d.weight() <= 5);
        if classify_triple(&d).unwrap().finite {
            for s in enumerate_summands(&d, None).unwrap() {
                prop_assert!(s.tits_q().unwrap() >= 1, "{} has Q <= 0", s);
                prop_assert!(classify_triple(&s).unwrap().finite);
            }
        }
    }
}

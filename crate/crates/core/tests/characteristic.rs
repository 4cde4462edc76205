//! Hom dimensions of standard-form objects do not depend on the field.

use multiflag::catalog::{table, StandardForm};
use multiflag::exactlin::{PrimeField, Rationals};
use multiflag::{hom_dim_formula, hom_dim_linalg, pi_catalog, DimVector};

#[test]
fn table_rows_are_schur_in_small_characteristic() {
    for p in [2, 3, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        for inst in table().instances(12).unwrap() {
            let sf = StandardForm::unpadded(&inst).unwrap();
            let x = sf.realize(f).unwrap();
            assert_eq!(x.dim_vector(), inst.key, "p = {p}");
            assert_eq!(hom_dim_linalg(&x, &x).unwrap(), 1, "p = {p}, {}", inst.key);
            assert_eq!(hom_dim_formula(&sf, [0, 1, 2], &x).unwrap(), 1, "p = {p}, {}", inst.key);
        }
    }
}

#[test]
fn hom_tables_agree_across_fields() {
    let bound = DimVector::from_parts(&[&[3, 3], &[2, 2, 2], &[1, 1, 1, 1, 1, 1]]).unwrap();
    let catalog = pi_catalog(&bound).unwrap();
    let over_q: Vec<_> = catalog.iter().map(|e| e.realize(Rationals).unwrap()).collect();
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        let over_p: Vec<_> = catalog.iter().map(|e| e.realize(f).unwrap()).collect();
        for (i, (xq, xp)) in over_q.iter().zip(&over_p).enumerate().step_by(3) {
            for (yq, yp) in over_q.iter().zip(&over_p) {
                assert_eq!(
                    hom_dim_linalg(xq, yq).unwrap(),
                    hom_dim_linalg(xp, yp).unwrap(),
                    "p = {p}, source {}",
                    catalog[i].dim
                );
            }
        }
    }
}

use multiflag::catalog::{table, StandardForm};
use multiflag::exactlin::Rationals;
use multiflag::{hom_dim_formula, hom_dim_linalg, Error};

#[test]
fn every_table_instance_is_schur() {
    for inst in table().instances(12).unwrap() {
        let sf = StandardForm::unpadded(&inst).unwrap();
        let x = sf.realize(Rationals).unwrap();
        assert_eq!(x.dim_vector(), inst.key);
        let lin = hom_dim_linalg(&x, &x).unwrap();
        let formula = hom_dim_formula(&sf, [0, 1, 2], &x).unwrap();
        assert_eq!((lin, formula), (1, 1), "row {} {}", inst.row + 1, inst.key);
        match sf.schur_check_combinatorial() {
            Ok(ok) => assert!(ok, "row {} {}", inst.row + 1, inst.key),
            Err(Error::Inapplicable(why)) => assert!(matches!(inst.key.weight(), 1 | 6), "row {} {}: {why}", inst.row + 1, inst.key),
            Err(e) => panic!("{e}"),
        }
    }
}

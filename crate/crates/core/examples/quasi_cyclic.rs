//! A quasi-cyclic alternant code and the fold of its dual along σ.
use goppa_fold::field::{Field, SubfieldView};
use goppa_fold::folding::{predict_fold_alternant, verify_alternant_fold};
use goppa_fold::code::CodeKind;
use goppa_fold::invariant::AffineMap;
use goppa_fold::symmetry::{build_qc_instance, check_automorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 8, None)?;
    let view = SubfieldView::new(&f, 1)?;
    let a = f.element_of_order(5).expect("5 divides 255");
    let map = AffineMap::new(&f, a, f.elem(17)?)?;
    for d in 0..5 {
        let (spec, sigma) = build_qc_instance(&f, &map, 40, 4, d, 2024 + d)?;
        let code = spec.code(&view)?;
        assert!(check_automorphism(&code, &sigma.perm));
        let CodeKind::Alternant { multiplier, .. } = &spec.kind else { unreachable!() };
        let pred = predict_fold_alternant(&f, 4, &spec.support, multiplier, &map)?;
        let report = verify_alternant_fold(&view, &spec, &map)?;
        println!(
            "d = {d}: [{}, {}] -> [{}, {}], t = 4 -> r = {}, e = {}, verdict {}",
            report.n, report.k, report.n_folded, report.k_folded, pred.degree, pred.exponent, report.verdict
        );
    }
    Ok(())
}

//! Perturbed predictions must be rejected.
use goppa_fold::field::{Field, SubfieldView};
use goppa_fold::folding::{corrupt_spec, fold_dual, predict_fold_group, prediction_matches, Corruption};
use goppa_fold::invariant::AffineMap;
use goppa_fold::symmetry::{build_qc_instance, GroupSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 8, None)?;
    let view = SubfieldView::new(&f, 1)?;
    let map = AffineMap::new(&f, f.element_of_order(5).expect("5 divides 255"), f.elem(3)?)?;
    let (spec, _) = build_qc_instance(&f, &map, 24, 12, 2, 7)?;
    let group = GroupSpec::cyclic(map);
    let (_, folded) = fold_dual(&view, &spec, &group)?;
    let (predicted, _, _) = predict_fold_group(&f, &spec, &group)?;
    println!("honest prediction accepted: {}", prediction_matches(&view, &folded, &predicted)?);
    for kind in Corruption::ALL {
        match corrupt_spec(&view, &predicted, kind, 1) {
            Some(bad) => println!("{kind:?}: accepted {}", prediction_matches(&view, &folded, &bad)?),
            None => println!("{kind:?}: not applicable"),
        }
    }
    Ok(())
}

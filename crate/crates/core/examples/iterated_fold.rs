//! Folding one generator at a time, lifting each to the previous orbits.
use goppa_fold::code::code_equal;
use goppa_fold::field::{Elem, Field, SubfieldView};
use goppa_fold::folding::{fold_dual, fold_group_iterative, predict_fold_group, prediction_matches};
use goppa_fold::symmetry::{build_qm_alternant, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(3, 4, None)?;
    let view = SubfieldView::new(&f, 1)?;
    let shifts = [Elem(1), Elem(3)];
    let (spec, group) = build_qm_alternant(&f, &shifts, 7, 12, 5, true)?;
    let (dual, once) = fold_dual(&view, &spec, &group)?;
    let gens: Vec<Permutation> = group.induced(&f, &spec.support)?.into_iter().map(|p| p.perm).collect();
    let (iterated, lifts) = fold_group_iterative(&dual, &gens)?;
    for (i, l) in lifts.iter().enumerate() {
        println!("generator {i}: lifted to {} positions, order {}", l.perm.len(), l.order);
    }
    println!("iterated fold equals one-shot fold: {}", code_equal(&iterated, &once)?);
    let (predicted, maps, _) = predict_fold_group(&f, &spec, &group)?;
    let used: Vec<String> = maps.iter().map(|m| m.b().to_string()).collect();
    println!("shifts used along the way: {}", used.join(", "));
    println!("prediction [{}] matches: {}", predicted.len(), prediction_matches(&view, &once, &predicted)?);
    Ok(())
}

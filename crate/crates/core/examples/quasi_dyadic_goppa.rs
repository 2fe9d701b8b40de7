//! A quasi-dyadic Goppa code folded along its translation group.
use goppa_fold::code::CodeKind;
use goppa_fold::field::{Elem, Field, SubfieldView};
use goppa_fold::folding::verify_group_goppa_fold;
use goppa_fold::poly::Poly;
use goppa_fold::symmetry::build_qm_goppa;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 8, None)?;
    let view = SubfieldView::new(&f, 1)?;
    let shifts = [Elem(1), Elem(2), Elem(4)];
    let q = Poly::new(vec![Elem(29), Elem(3), Elem::ONE]);
    let (spec, group) = build_qm_goppa(&f, &shifts, 24, &q, 7)?;
    let report = verify_group_goppa_fold(&view, &spec, &group)?;
    let CodeKind::Goppa { polynomial } = &report.predicted.kind else { unreachable!() };
    println!("G(x, Γ): [{}, {}], deg Γ = {}", report.n, report.k, report.degree);
    println!("folded: [{}, {}], deg γ = {}, γ = Q: {}", report.n_folded, report.k_folded, report.folded_degree, polynomial == &q);
    println!("verdict {}, iterated agrees {:?}, degree law {:?}", report.verdict, report.iterated_agrees, report.degree_law);
    Ok(())
}

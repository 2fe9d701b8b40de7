//! Generalized Reed-Solomon, alternant and Goppa codes, and their duals.
use goppa_fold::code::{alternant_code, goppa_code, grs_code, CodeSpec};
use goppa_fold::field::{Elem, Field, SubfieldView};
use goppa_fold::poly::Poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 4, None)?;
    let x: Vec<Elem> = f.elements().collect();
    let y = vec![Elem::ONE; x.len()];
    let view = SubfieldView::new(&f, 1)?;

    let grs = grs_code(&f, 5, &x, &y)?;
    println!("GRS over GF(16): [{}, {}], dual dimension {}", grs.len(), grs.dim(), grs.dual().dim());

    let alt = alternant_code(3, &x, &y, &view)?;
    println!("binary alternant code of degree 3: [{}, {}]", alt.len(), alt.dim());

    let gamma = Poly::new(vec![Elem(2), Elem::ONE, Elem::ONE]);
    let support: Vec<Elem> = x.iter().copied().filter(|&u| !gamma.eval(&f, u).is_zero()).collect();
    let goppa = goppa_code(&support, &gamma, &view)?;
    println!("binary Goppa code with Γ = z^2 + z + g: [{}, {}]", goppa.len(), goppa.dim());

    let spec = CodeSpec::goppa(support, gamma);
    let dual = spec.dual(&view)?;
    println!("dual through the trace: dimension {}, orthogonal: {}", dual.dim(), dual.dual() == spec.code(&view)?);
    Ok(())
}

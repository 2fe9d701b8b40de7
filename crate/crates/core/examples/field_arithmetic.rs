//! Arithmetic in GF(2^4) and the trace down to GF(2).
use goppa_fold::field::{Field, SubfieldView};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 4, None)?;
    println!("GF(2^4) with modulus coefficients {:?}", f.modulus());
    let g = f.primitive_element();
    let a = f.pow(g, 3);
    let b = f.add(a, g);
    println!("g = {g}, g^3 = {a}, g^3 + g = {b}, (g^3 + g)^-1 = {}", f.inv(b)?);
    println!("order of g^3: {}", f.element_order(a)?);

    let view = SubfieldView::new(&f, 1)?;
    let traces: Vec<String> = f.elements().map(|e| view.trace(e).to_string()).collect();
    println!("trace to GF(2): {}", traces.join(" "));

    let gf4 = SubfieldView::new(&f, 2)?;
    println!("GF(4) inside GF(16): {:?}", gf4.elements());
    Ok(())
}

//! Polynomials satisfying Γ(az + b) = α Γ(z), built and taken apart again.
use goppa_fold::field::{Elem, Field};
use goppa_fold::invariant::{build_invariant_poly, decompose_invariant, invariant_generator, solve_alpha, AffineMap};
use goppa_fold::poly::Poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(2, 6, None)?;
    let a = f.element_of_order(7).expect("7 divides 63");
    let map = AffineMap::new(&f, a, Elem(5))?;
    println!("σ(z) = {a}·z + 5, order {}, fixed point {:?}", map.order(), map.fixed_point());
    println!("generator R = {:?}", invariant_generator(&f, &map));

    let q = Poly::new(vec![Elem(3), Elem::ONE]);
    for d in 0..3 {
        let gamma = build_invariant_poly(&f, &q, &map, d)?;
        let alpha = solve_alpha(&f, &gamma, &map).expect("invariant by construction");
        let (d2, q2) = decompose_invariant(&f, &gamma, &map, alpha)?;
        println!("d = {d}: deg Γ = {:?}, α = {alpha}, recovered d = {d2}, Q recovered: {}", gamma.degree(), q2 == q);
    }

    // translations: Γ = Q(z^2 + z) over GF(2^5) is irreducible for Q = w + 1
    let f = Field::new(2, 5, None)?;
    let shift = AffineMap::shift(&f, Elem::ONE)?;
    let gamma = build_invariant_poly(&f, &Poly::new(vec![Elem::ONE, Elem::ONE]), &shift, 0)?;
    let roots = f.elements().filter(|&u| gamma.eval(&f, u).is_zero()).count();
    println!("Q(z^2 + z) with Q = w + 1: {:?}, roots in GF(32): {roots}", gamma);
    Ok(())
}

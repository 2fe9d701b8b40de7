//! Polynomials satisfying Γ(az+b) = αΓ(z) for an affine map z -> az+b.
//!
//! Every such polynomial is `Q(R(z))` times a fixed power of `z - z0`, where
//! `R` is the single generator of the ring of σ-invariant polynomials:
//! `z^p - b^(p-1) z` for a translation, `(z - z0)^ℓ` otherwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, Field, FieldError};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("affine map z -> 0*z + b is not invertible")]
    ZeroScale,
    #[error("the identity map has no invariant generator")]
    IdentityMap,
    #[error("exponent d = {d} is outside [0, {ell})")]
    ExponentOutOfRange { d: u64, ell: u64 },
    #[error("translations only admit alpha = 1 (d = 0), got d = {0}")]
    TranslationExponent(u64),
    #[error("polynomial does not satisfy the functional equation")]
    NotInvariant,
    #[error("alpha is not a power of a")]
    AlphaNotPower,
    #[error("decomposition left a non-constant remainder")]
    Decomposition,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The map z -> a z + b with a != 0, excluding the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    a: Elem,
    b: Elem,
    order: u64,
    fixed_point: Option<Elem>,
}

impl AffineMap {
    pub fn new(field: &Field, a: Elem, b: Elem) -> Result<AffineMap, InvariantError> {
        if a.is_zero() {
            return Err(InvariantError::ZeroScale);
        }
        if a == Elem::ONE {
            if b.is_zero() {
                return Err(InvariantError::IdentityMap);
            }
            return Ok(AffineMap { a, b, order: field.characteristic() as u64, fixed_point: None });
        }
        let order = field.element_order(a)?;
        let z0 = field.div(b, field.sub(Elem::ONE, a))?;
        Ok(AffineMap { a, b, order, fixed_point: Some(z0) })
    }

    /// z -> z + b.
    pub fn shift(field: &Field, b: Elem) -> Result<AffineMap, InvariantError> {
        AffineMap::new(field, Elem::ONE, b)
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    /// Order of the map under composition.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The finite fixed point b/(1-a); `None` for translations (fixed point at infinity).
    pub fn fixed_point(&self) -> Option<Elem> {
        self.fixed_point
    }

    pub fn is_translation(&self) -> bool {
        self.a == Elem::ONE
    }

    pub fn apply(&self, field: &Field, z: Elem) -> Elem {
        field.add(field.mul(self.a, z), self.b)
    }

    /// σ^k(z).
    pub fn apply_n(&self, field: &Field, z: Elem, k: u64) -> Elem {
        (0..k % self.order).fold(z, |acc, _| self.apply(field, acc))
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(vec![self.b, self.a])
    }

    /// The d in [0, ℓ) with α = a^d.
    pub fn exponent_of(&self, field: &Field, alpha: Elem) -> Result<u64, InvariantError> {
        if self.is_translation() {
            return if alpha == Elem::ONE { Ok(0) } else { Err(InvariantError::AlphaNotPower) };
        }
        field
            .discrete_log_in_cyclic(alpha, self.a, self.order)
            .map_err(|_| InvariantError::AlphaNotPower)
    }

    /// α = a^d, checked against the admissible range.
    pub fn alpha_for(&self, field: &Field, d: u64) -> Result<Elem, InvariantError> {
        if self.is_translation() {
            if d != 0 {
                return Err(InvariantError::TranslationExponent(d));
            }
            return Ok(Elem::ONE);
        }
        if d >= self.order {
            return Err(InvariantError::ExponentOutOfRange { d, ell: self.order });
        }
        Ok(field.pow(self.a, d))
    }
}

/// Monic generator R of the invariant ring: z^p - b^(p-1) z for a translation,
/// (z - z0)^ℓ otherwise.
pub fn invariant_generator(field: &Field, map: &AffineMap) -> Poly {
    match map.fixed_point {
        None => {
            let p = field.characteristic() as usize;
            let c = field.neg(field.pow(map.b, p as u64 - 1));
            Poly::monomial(Elem::ONE, p).add(field, &Poly::monomial(c, 1))
        }
        Some(z0) => Poly::linear_root(field, z0).pow(field, map.order),
    }
}

/// Γ(az+b) == α Γ(z), coefficient-wise.
pub fn check_functional_eq(field: &Field, gamma: &Poly, map: &AffineMap, alpha: Elem) -> bool {
    gamma.compose_affine(field, map.a, map.b) == gamma.scale(field, alpha)
}

/// The unique α with Γ(az+b) = αΓ(z), if one exists. Comparing leading
/// coefficients forces α = a^deg Γ.
pub fn solve_alpha(field: &Field, gamma: &Poly, map: &AffineMap) -> Option<Elem> {
    let deg = gamma.degree()?;
    let alpha = field.pow(map.a, deg as u64);
    check_functional_eq(field, gamma, map, alpha).then_some(alpha)
}

/// Γ = Q(z^p - b^(p-1) z) for a translation, Γ = (z - z0)^d Q((z - z0)^ℓ)
/// otherwise. The result satisfies Γ(σ(z)) = a^d Γ(z).
pub fn build_invariant_poly(field: &Field, q: &Poly, map: &AffineMap, d: u64) -> Result<Poly, InvariantError> {
    map.alpha_for(field, d)?;
    let r = invariant_generator(field, map);
    let inner = q.compose(field, &r);
    Ok(match map.fixed_point {
        None => inner,
        Some(z0) => Poly::linear_root(field, z0).pow(field, d).mul(field, &inner),
    })
}

/// Inverse of [`build_invariant_poly`]: recovers (d, Q) from an invariant P
/// by dividing out (z - z0)^d and then dividing repeatedly by the generator,
/// collecting the constant remainders as the coefficients of Q.
pub fn decompose_invariant(
    field: &Field,
    p: &Poly,
    map: &AffineMap,
    alpha: Elem,
) -> Result<(u64, Poly), InvariantError> {
    if !check_functional_eq(field, p, map, alpha) {
        return Err(InvariantError::NotInvariant);
    }
    let d = map.exponent_of(field, alpha)?;
    let mut rest = p.clone();
    if let Some(z0) = map.fixed_point {
        let lin = Poly::linear_root(field, z0);
        for _ in 0..d {
            let (quot, rem) = rest.divmod(field, &lin).expect("nonzero divisor");
            if !rem.is_zero() {
                return Err(InvariantError::Decomposition);
            }
            rest = quot;
        }
    }
    let r = invariant_generator(field, map);
    let mut coeffs = Vec::new();
    while !rest.is_zero() {
        let (quot, rem) = rest.divmod(field, &r).expect("nonzero divisor");
        if rem.degree().is_some_and(|deg| deg > 0) {
            return Err(InvariantError::Decomposition);
        }
        coeffs.push(rem.coeff(0));
        rest = quot;
    }
    Ok((d, Poly::new(coeffs)))
}

/// S(P) = Σ_{i<ℓ} α^i P(σ^i(z)) with α = a^d. The result satisfies
/// S(P)(σ(z)) = α^{-1} S(P)(z).
pub fn symmetrize(field: &Field, p: &Poly, map: &AffineMap, d: u64) -> Result<Poly, InvariantError> {
    let alpha = map.alpha_for(field, d)?;
    let mut acc = Poly::zero();
    let mut weight = Elem::ONE;
    // σ^i(z) = a_i z + b_i
    let (mut ai, mut bi) = (Elem::ONE, Elem::ZERO);
    for _ in 0..map.order {
        let term = p.compose_affine(field, ai, bi).scale(field, weight);
        acc = acc.add(field, &term);
        weight = field.mul(weight, alpha);
        ai = field.mul(map.a, ai);
        bi = map.apply(field, bi);
    }
    Ok(acc)
}

/// Describes I^{σ,α}_{≤t}: polynomials of degree at most `bound` with
/// P(σ(z)) = αP(z). A negative bound denotes the zero space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantSpaceSpec {
    pub map: AffineMap,
    pub alpha: Elem,
    pub bound: i64,
}

/// Basis {build_invariant_poly(w^k, σ, d)} of I^{σ,α}_{≤t}.
pub fn invariant_space_basis(field: &Field, spec: &InvariantSpaceSpec) -> Result<Vec<Poly>, InvariantError> {
    let d = spec.map.exponent_of(field, spec.alpha)?;
    let step = if spec.map.is_translation() { field.characteristic() as i64 } else { spec.map.order as i64 };
    if spec.bound < d as i64 {
        return Ok(Vec::new());
    }
    let top = (spec.bound - d as i64).div_euclid(step);
    (0..=top as usize)
        .map(|k| build_invariant_poly(field, &Poly::monomial(Elem::ONE, k), &spec.map, d))
        .collect()
}

/// Basis of the predicted image S(F_{≤t}[z]) of [`symmetrize`] with weight a^d.
///
/// Translation: I^σ_{≤⌊(t-p+1)/p⌋p}. Otherwise the monomial (z-z0)^j survives
/// iff j + d ≡ 0 mod ℓ, so the image is (z - z0)^e P((z - z0)^ℓ) with
/// e = (ℓ - d) mod ℓ and deg P ≤ ⌊(t - e)/ℓ⌋.
pub fn symmetrized_image_basis(field: &Field, map: &AffineMap, d: u64, t: i64) -> Result<Vec<Poly>, InvariantError> {
    map.alpha_for(field, d)?;
    match map.fixed_point {
        None => {
            let p = field.characteristic() as i64;
            if t < 0 {
                return Ok(Vec::new());
            }
            let bound = (t - p + 1).div_euclid(p) * p;
            invariant_space_basis(field, &InvariantSpaceSpec { map: *map, alpha: Elem::ONE, bound })
        }
        Some(z0) => {
            let ell = map.order as i64;
            let e = (ell - d as i64).rem_euclid(ell);
            if t < e {
                return Ok(Vec::new());
            }
            let lin = Poly::linear_root(field, z0);
            let prefactor = lin.pow(field, e as u64);
            let gen = lin.pow(field, ell as u64);
            Ok((0..=((t - e) / ell) as u64)
                .map(|k| prefactor.mul(field, &gen.pow(field, k)))
                .collect())
        }
    }
}

/// Σ_{s=1}^{p-1} s^k mod p: p - 1 when (p - 1) | k, zero otherwise.
pub fn power_sum_residue(p: u64, k: u64) -> u64 {
    if k.is_multiple_of(p - 1) {
        p - 1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn affine_map_invariants() {
        let f = gf4();
        let w = f.z();
        assert_eq!(AffineMap::new(&f, Elem::ONE, Elem::ZERO), Err(InvariantError::IdentityMap));
        assert_eq!(AffineMap::new(&f, Elem::ZERO, Elem::ONE), Err(InvariantError::ZeroScale));
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        assert_eq!(shift.order(), 2);
        assert_eq!(shift.fixed_point(), None);
        let rot = AffineMap::new(&f, w, Elem::ONE).unwrap();
        assert_eq!(rot.order(), 3);
        let z0 = rot.fixed_point().unwrap();
        assert_eq!(rot.apply(&f, z0), z0);
    }

    #[test]
    fn generators() {
        let f = Field::new(2, 4, None).unwrap();
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        assert_eq!(invariant_generator(&f, &shift), Poly::from_indices(&[0, 1, 1]));
        let g4 = gf4();
        let rot = AffineMap::new(&g4, g4.z(), Elem::ZERO).unwrap();
        assert_eq!(invariant_generator(&g4, &rot), Poly::monomial(Elem::ONE, 3));
    }

    #[test]
    fn functional_equation_examples() {
        let f = gf4();
        let w = f.z();
        let rot = AffineMap::new(&f, w, Elem::ZERO).unwrap();
        assert!(check_functional_eq(&f, &Poly::monomial(Elem::ONE, 3), &rot, Elem::ONE));
        assert!(check_functional_eq(&f, &Poly::x(), &rot, w));
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        assert!(!check_functional_eq(&f, &Poly::from_indices(&[1, 1]), &shift, Elem::ONE));
        assert_eq!(solve_alpha(&f, &Poly::monomial(Elem::ONE, 3), &rot), Some(Elem::ONE));
        assert_eq!(solve_alpha(&f, &Poly::from_indices(&[1, 1]), &shift), None);
    }

    #[test]
    fn build_examples() {
        let f = Field::new(2, 5, None).unwrap();
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        let q = Poly::from_indices(&[1, 1]);
        assert_eq!(build_invariant_poly(&f, &q, &shift, 0).unwrap(), Poly::from_indices(&[1, 1, 1]));
        assert_eq!(build_invariant_poly(&f, &Poly::one(), &shift, 0).unwrap(), Poly::one());
        assert_eq!(
            build_invariant_poly(&f, &q, &shift, 1),
            Err(InvariantError::TranslationExponent(1))
        );

        let g16 = Field::new(2, 4, None).unwrap();
        let a = g16.element_of_order(5).unwrap();
        let rot = AffineMap::new(&g16, a, Elem::ZERO).unwrap();
        let gamma = build_invariant_poly(&g16, &Poly::x(), &rot, 2).unwrap();
        assert_eq!(gamma, Poly::monomial(Elem::ONE, 7));
        assert!(check_functional_eq(&g16, &gamma, &rot, g16.pow(a, 2)));
    }

    #[test]
    fn decompose_examples() {
        let f = Field::new(2, 5, None).unwrap();
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        let p = Poly::from_indices(&[1, 1, 1]);
        assert_eq!(decompose_invariant(&f, &p, &shift, Elem::ONE).unwrap(), (0, Poly::from_indices(&[1, 1])));
        let r = invariant_generator(&f, &shift);
        assert_eq!(decompose_invariant(&f, &r, &shift, Elem::ONE).unwrap(), (0, Poly::x()));

        let g4 = gf4();
        let w = g4.z();
        let rot = AffineMap::new(&g4, w, Elem::ZERO).unwrap();
        assert_eq!(decompose_invariant(&g4, &Poly::x(), &rot, w).unwrap(), (1, Poly::one()));
        assert_eq!(
            decompose_invariant(&g4, &Poly::x(), &rot, Elem::ONE),
            Err(InvariantError::NotInvariant)
        );
    }

    #[test]
    fn symmetrize_examples() {
        for p in [2u32, 3, 5, 7] {
            let f = Field::prime(p).unwrap();
            let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
            let s = symmetrize(&f, &Poly::monomial(Elem::ONE, 2 * p as usize - 1), &shift, 0).unwrap();
            assert_eq!(s.degree(), Some(p as usize));
            let c = symmetrize(&f, &Poly::constant(Elem(1)), &shift, 0).unwrap();
            assert!(c.is_zero());
        }
        let g16 = Field::new(2, 4, None).unwrap();
        let a = g16.element_of_order(5).unwrap();
        let rot = AffineMap::new(&g16, a, Elem::ZERO).unwrap();
        // d + t = 1 + 2 is not a multiple of 5
        assert!(symmetrize(&g16, &Poly::monomial(Elem::ONE, 2), &rot, 1).unwrap().is_zero());
        assert!(!symmetrize(&g16, &Poly::monomial(Elem::ONE, 4), &rot, 1).unwrap().is_zero());
    }

    #[test]
    fn basis_dimensions() {
        let f = gf4();
        let shift = AffineMap::shift(&f, Elem::ONE).unwrap();
        let basis = invariant_space_basis(&f, &InvariantSpaceSpec { map: shift, alpha: Elem::ONE, bound: 4 }).unwrap();
        let r = Poly::from_indices(&[0, 1, 1]);
        assert_eq!(basis, vec![Poly::one(), r.clone(), r.mul(&f, &r)]);
        assert!(invariant_space_basis(&f, &InvariantSpaceSpec { map: shift, alpha: Elem::ONE, bound: -1 })
            .unwrap()
            .is_empty());
        let w = f.z();
        let rot = AffineMap::new(&f, w, Elem::ONE).unwrap();
        let z0 = rot.fixed_point().unwrap();
        let basis = invariant_space_basis(&f, &InvariantSpaceSpec { map: rot, alpha: w, bound: 1 }).unwrap();
        assert_eq!(basis, vec![Poly::linear_root(&f, z0)]);
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_residue(5, 2), 0);
        assert_eq!(power_sum_residue(5, 4), 4);
        assert_eq!(power_sum_residue(2, 1), 1);
    }
}

//! Dense univariate polynomials over a [`Field`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Coefficient `i` is the coefficient of z^i. Always normalized: a nonzero
/// polynomial has a nonzero last coefficient and the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    /// The identity polynomial z.
    pub fn x() -> Poly {
        Poly::monomial(Elem::ONE, 1)
    }

    pub fn monomial(c: Elem, k: usize) -> Poly {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// z - c.
    pub fn linear_root(field: &Field, c: Elem) -> Poly {
        Poly::new(vec![field.neg(c), Elem::ONE])
    }

    pub fn from_indices(indices: &[u32]) -> Poly {
        Poly::new(indices.iter().map(|&i| Elem(i)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, field: &Field, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, field: &Field, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    pub fn divmod(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = field.inv(divisor.leading()).expect("normalized leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = field.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = field.sub(rem[shift + k], field.mul(c, dk));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// self(inner(z)).
    pub fn compose(&self, field: &Field, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(field, inner).add(field, &Poly::constant(c)))
    }

    /// self(a z + b).
    pub fn compose_affine(&self, field: &Field, a: Elem, b: Elem) -> Poly {
        self.compose(field, &Poly::new(vec![b, a]))
    }

    pub fn monic(&self, field: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(field, inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_over_gf2() {
        let f = Field::new(2, 1, None).unwrap();
        let a = Poly::from_indices(&[1, 0, 1]);
        let b = Poly::from_indices(&[1, 1]);
        let (q, r) = a.divmod(&f, &b).unwrap();
        assert_eq!(q, Poly::from_indices(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.divmod(&f, &Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn eval_cube_of_omega() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let cube = Poly::monomial(Elem::ONE, 3);
        assert_eq!(cube.eval(&f, f.z()), Elem::ONE);
    }

    #[test]
    fn compose_with_identity_and_pointwise() {
        let f = Field::new(3, 2, None).unwrap();
        let p = Poly::from_indices(&[4, 0, 7, 1]);
        assert_eq!(p.compose(&f, &Poly::x()), p);
        let q = Poly::from_indices(&[2, 5, 1]);
        let pq = p.compose(&f, &q);
        for x in f.elements() {
            assert_eq!(pq.eval(&f, x), p.eval(&f, q.eval(&f, x)));
        }
    }

    #[test]
    fn degree_sentinel_and_normalization() {
        assert_eq!(Poly::new(vec![Elem(0), Elem(0)]).degree(), None);
        assert_eq!(Poly::from_indices(&[3, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn divmod_reconstructs() {
        let f = Field::new(2, 4, None).unwrap();
        let a = Poly::from_indices(&[3, 7, 0, 12, 5, 9, 1]);
        let b = Poly::from_indices(&[6, 0, 11]);
        let (q, r) = a.divmod(&f, &b).unwrap();
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
    }
}

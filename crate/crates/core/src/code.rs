//! Linear codes in canonical form, and the GRS / alternant / Goppa family.
//!
//! A code over the subfield GF(q) is stored with its generator entries in the
//! canonical copy of GF(q) inside GF(q^m). Reduced row echelon forms computed
//! over the big field then coincide with those over GF(q), so one canonical
//! form serves both.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, Field, FieldError, SubfieldView};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("support and multiplier lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("support entries {0} and {1} coincide")]
    RepeatedSupport(usize, usize),
    #[error("multiplier entry {0} is zero")]
    ZeroMultiplier(usize),
    #[error("GRS parameters need 1 <= k < n <= field size (k = {k}, n = {n}, size = {size})")]
    BadDimension { k: usize, n: usize, size: u32 },
    #[error("Goppa polynomial vanishes at support position {0}")]
    GoppaRoot(usize),
    #[error("Goppa polynomial is zero")]
    ZeroGoppa,
    #[error("codes have different lengths ({0} vs {1})")]
    LengthDiffers(usize, usize),
    #[error("not a permutation of {0} positions")]
    BadPermutation(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A linear code, held as its reduced row echelon generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    pub fn from_generator(mut gen: Matrix) -> LinearCode {
        let pivots = gen.rref();
        LinearCode { gen, pivots }
    }

    pub fn from_rows(field: &Field, n: usize, rows: &[Vec<Elem>]) -> LinearCode {
        LinearCode::from_generator(Matrix::from_rows(field, n, rows))
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode { gen: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        LinearCode { gen: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dual(&self) -> LinearCode {
        let k = self.gen.kernel();
        LinearCode::from_generator(k)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.len() {
            return false;
        }
        // reduce v against the echelon rows
        let f = self.field();
        let mut w = v.to_vec();
        for (row, &pc) in self.gen.row_iter().zip(&self.pivots) {
            let c = w[pc];
            if !c.is_zero() {
                f.sub_scaled_row(&mut w, row, c);
            }
        }
        w.iter().all(|e| e.is_zero())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.len() == other.len()
            && self.gen.row_iter().all(|r| other.contains(r))
    }

    /// Every entry of the generator lies in the subfield.
    pub fn is_over(&self, view: &SubfieldView) -> bool {
        self.gen.row_iter().flatten().all(|&e| view.contains(e))
    }
}

/// Canonical-form equality of two codes.
pub fn code_equal(c1: &LinearCode, c2: &LinearCode) -> Result<bool, CodeError> {
    c1.field().same(c2.field())?;
    if c1.len() != c2.len() {
        return Err(CodeError::LengthDiffers(c1.len(), c2.len()));
    }
    Ok(c1 == c2)
}

/// x^σ = (x_{σ(0)}, ..., x_{σ(n-1)}).
pub fn permute_vector<T: Copy>(v: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&i| v[i]).collect()
}

/// Applies the coordinate permutation to every generator row and
/// re-canonicalizes.
pub fn permute_code(code: &LinearCode, perm: &[usize]) -> Result<LinearCode, CodeError> {
    let n = code.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(CodeError::BadPermutation(n));
    }
    let rows: Vec<Vec<Elem>> = code.gen.row_iter().map(|r| permute_vector(r, perm)).collect();
    Ok(LinearCode::from_rows(code.field(), n, &rows))
}

pub(crate) fn check_support(field: &Field, x: &[Elem]) -> Result<(), CodeError> {
    let mut seen = vec![usize::MAX; field.size() as usize];
    for (i, &xi) in x.iter().enumerate() {
        field.elem(xi.0 as u64)?;
        let slot = &mut seen[xi.0 as usize];
        if *slot != usize::MAX {
            return Err(CodeError::RepeatedSupport(*slot, i));
        }
        *slot = i;
    }
    Ok(())
}

fn check_pair(field: &Field, x: &[Elem], y: &[Elem]) -> Result<(), CodeError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(x.len(), y.len()));
    }
    check_support(field, x)?;
    if let Some(i) = y.iter().position(|e| e.is_zero()) {
        return Err(CodeError::ZeroMultiplier(i));
    }
    for &e in y {
        field.elem(e.0 as u64)?;
    }
    Ok(())
}

/// Rows (y_j x_j^i)_j for i < k. No rank condition is imposed.
pub fn evaluation_matrix(field: &Field, k: usize, x: &[Elem], y: &[Elem]) -> Matrix {
    let n = x.len();
    let mut m = Matrix::zeros(field, k, n);
    for j in 0..n {
        let mut v = y[j];
        for i in 0..k {
            m.set(i, j, v);
            v = field.mul(v, x[j]);
        }
    }
    m
}

/// GRS_k(x, y) = {(y_j P(x_j))_j : deg P < k}.
pub fn grs_code(field: &Field, k: usize, x: &[Elem], y: &[Elem]) -> Result<LinearCode, CodeError> {
    check_pair(field, x, y)?;
    let n = x.len();
    if k < 1 || k >= n || n > field.size() as usize {
        return Err(CodeError::BadDimension { k, n, size: field.size() });
    }
    Ok(LinearCode::from_generator(evaluation_matrix(field, k, x, y)))
}

/// A multiplier z with GRS_k(x, y)^⊥ = GRS_{n-k}(x, z), namely
/// z_i = 1 / (y_i Π_{j≠i} (x_i - x_j)).
pub fn grs_dual_multiplier(field: &Field, k: usize, x: &[Elem], y: &[Elem]) -> Result<Vec<Elem>, CodeError> {
    check_pair(field, x, y)?;
    let n = x.len();
    if k < 1 || k >= n || n > field.size() as usize {
        return Err(CodeError::BadDimension { k, n, size: field.size() });
    }
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(i, (&xi, &yi))| {
            let prod = x
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(yi, |acc, (_, &xj)| field.mul(acc, field.sub(xi, xj)));
            Ok(field.inv(prod)?)
        })
        .collect()
}

/// {c ∈ GF(q)^n : H c^T = 0} for a matrix H over the big field.
///
/// Each unknown c_j is written over the subfield's GF(p)-basis and every
/// big-field equation is expanded into its GF(p) digit equations.
pub fn subfield_kernel(h: &Matrix, view: &SubfieldView) -> LinearCode {
    let f = view.field();
    let n = h.cols();
    let s = view.basis().len();
    let big = f.degree() as usize;
    let mut system = Matrix::zeros(f, h.rows() * big, n * s);
    for r in 0..h.rows() {
        for j in 0..n {
            let hj = h.get(r, j);
            if hj.is_zero() {
                continue;
            }
            for (u, &e) in view.basis().iter().enumerate() {
                let prod = f.mul(hj, e);
                for d in 0..big {
                    let digit = f.digit(prod, d);
                    if digit != 0 {
                        system.set(r * big + d, j * s + u, Elem(digit));
                    }
                }
            }
        }
    }
    let ker = system.kernel();
    let rows: Vec<Vec<Elem>> = ker
        .row_iter()
        .map(|coords| {
            (0..n)
                .map(|j| {
                    view.basis()
                        .iter()
                        .enumerate()
                        .fold(Elem::ZERO, |acc, (u, &e)| f.add(acc, f.mul(coords[j * s + u], e)))
                })
                .collect()
        })
        .collect();
    LinearCode::from_rows(f, n, &rows)
}

/// C ∩ GF(q)^n.
pub fn subfield_subcode(code: &LinearCode, view: &SubfieldView) -> Result<LinearCode, CodeError> {
    code.field().same(view.field())?;
    let parity = code.dual();
    Ok(subfield_kernel(parity.generator(), view))
}

/// GF(q)-span of coordinate-wise traces of the codewords of C.
///
/// C is spanned over GF(p) by the products e·g for g a generator row and e
/// running over the polynomial basis of the big field; trace is GF(q)-linear.
pub fn trace_code(code: &LinearCode, view: &SubfieldView) -> Result<LinearCode, CodeError> {
    let f = view.field();
    code.field().same(f)?;
    let n = code.len();
    let big = f.degree();
    let p = f.characteristic();
    let mut rows = Vec::with_capacity(code.dim() * big as usize);
    for g in code.generator().row_iter() {
        for u in 0..big {
            let e = Elem(p.pow(u));
            rows.push(g.iter().map(|&c| view.trace(f.mul(e, c))).collect::<Vec<_>>());
        }
    }
    Ok(LinearCode::from_rows(f, n, &rows))
}

/// A_r(x, y) = GRS_r(x, y)^⊥ ∩ GF(q)^n. Degree 0 gives the full space.
pub fn alternant_code(r: usize, x: &[Elem], y: &[Elem], view: &SubfieldView) -> Result<LinearCode, CodeError> {
    let f = view.field();
    check_pair(f, x, y)?;
    if r == 0 {
        return Ok(LinearCode::full(f, x.len()));
    }
    Ok(subfield_kernel(&evaluation_matrix(f, r, x, y), view))
}

/// A_r(x, y)^⊥ computed as the trace code of GRS_r(x, y).
pub fn alternant_dual(r: usize, x: &[Elem], y: &[Elem], view: &SubfieldView) -> Result<LinearCode, CodeError> {
    let f = view.field();
    check_pair(f, x, y)?;
    if r == 0 {
        return Ok(LinearCode::zero(f, x.len()));
    }
    let grs = LinearCode::from_generator(evaluation_matrix(f, r, x, y));
    trace_code(&grs, view)
}

/// y_i = 1/Γ(x_i).
pub fn goppa_multiplier(field: &Field, x: &[Elem], gamma: &Poly) -> Result<Vec<Elem>, CodeError> {
    if gamma.is_zero() {
        return Err(CodeError::ZeroGoppa);
    }
    x.iter()
        .enumerate()
        .map(|(i, &xi)| field.inv(gamma.eval(field, xi)).map_err(|_| CodeError::GoppaRoot(i)))
        .collect()
}

/// G(x, Γ) = A_{deg Γ}(x, 1/Γ(x)).
pub fn goppa_code(x: &[Elem], gamma: &Poly, view: &SubfieldView) -> Result<LinearCode, CodeError> {
    let y = goppa_multiplier(view.field(), x, gamma)?;
    alternant_code(gamma.degree().unwrap_or(0), x, &y, view)
}

/// G(x, Γ)^⊥ via the trace path.
pub fn goppa_dual(x: &[Elem], gamma: &Poly, view: &SubfieldView) -> Result<LinearCode, CodeError> {
    let y = goppa_multiplier(view.field(), x, gamma)?;
    alternant_dual(gamma.degree().unwrap_or(0), x, &y, view)
}

/// Which member of the family a [`CodeSpec`] describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CodeKind {
    Grs { dimension: usize, multiplier: Vec<Elem> },
    Alternant { degree: usize, multiplier: Vec<Elem> },
    Goppa { polynomial: Poly },
}

/// Algebraic description from which a code is expanded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub support: Vec<Elem>,
    #[serde(flatten)]
    pub kind: CodeKind,
}

impl CodeSpec {
    pub fn alternant(support: Vec<Elem>, degree: usize, multiplier: Vec<Elem>) -> CodeSpec {
        CodeSpec { support, kind: CodeKind::Alternant { degree, multiplier } }
    }

    pub fn goppa(support: Vec<Elem>, polynomial: Poly) -> CodeSpec {
        CodeSpec { support, kind: CodeKind::Goppa { polynomial } }
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// k for GRS, r for alternant, deg Γ for Goppa.
    pub fn degree(&self) -> usize {
        match &self.kind {
            CodeKind::Grs { dimension, .. } => *dimension,
            CodeKind::Alternant { degree, .. } => *degree,
            CodeKind::Goppa { polynomial } => polynomial.degree().unwrap_or(0),
        }
    }

    /// The explicit multiplier (1/Γ(x_i) for Goppa codes).
    pub fn multiplier(&self, field: &Field) -> Result<Vec<Elem>, CodeError> {
        match &self.kind {
            CodeKind::Grs { multiplier, .. } | CodeKind::Alternant { multiplier, .. } => Ok(multiplier.clone()),
            CodeKind::Goppa { polynomial } => goppa_multiplier(field, &self.support, polynomial),
        }
    }

    pub fn validate(&self, field: &Field) -> Result<(), CodeError> {
        let y = self.multiplier(field)?;
        check_pair(field, &self.support, &y)
    }

    /// The code itself: GRS over the big field, otherwise over GF(q).
    pub fn code(&self, view: &SubfieldView) -> Result<LinearCode, CodeError> {
        let f = view.field();
        match &self.kind {
            CodeKind::Grs { dimension, multiplier } => grs_code(f, *dimension, &self.support, multiplier),
            CodeKind::Alternant { degree, multiplier } => alternant_code(*degree, &self.support, multiplier, view),
            CodeKind::Goppa { polynomial } => goppa_code(&self.support, polynomial, view),
        }
    }

    /// The dual, via the trace path for alternant and Goppa codes.
    pub fn dual(&self, view: &SubfieldView) -> Result<LinearCode, CodeError> {
        let f = view.field();
        match &self.kind {
            CodeKind::Grs { dimension, multiplier } => Ok(grs_code(f, *dimension, &self.support, multiplier)?.dual()),
            CodeKind::Alternant { degree, multiplier } => alternant_dual(*degree, &self.support, multiplier, view),
            CodeKind::Goppa { polynomial } => goppa_dual(&self.support, polynomial, view),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn grs_small_example() {
        let f = gf4();
        let w = f.z();
        let x = [Elem(0), Elem(1), w];
        let y = [Elem(1); 3];
        let c = grs_code(&f, 2, &x, &y).unwrap();
        let expected = LinearCode::from_rows(&f, 3, &[vec![Elem(1); 3], vec![Elem(0), Elem(1), w]]);
        assert_eq!(c, expected);
        assert_eq!(c.dim(), 2);
        let k1 = grs_code(&f, 1, &x, &y).unwrap();
        assert_eq!(k1, LinearCode::from_rows(&f, 3, &[y.to_vec()]));
    }

    #[test]
    fn grs_rejects_bad_parameters() {
        let f = gf4();
        let x = [Elem(0), Elem(1), Elem(2)];
        assert_eq!(grs_code(&f, 3, &x, &[Elem(1); 3]), Err(CodeError::BadDimension { k: 3, n: 3, size: 4 }));
        assert_eq!(grs_code(&f, 1, &[Elem(0), Elem(0)], &[Elem(1); 2]), Err(CodeError::RepeatedSupport(0, 1)));
        assert_eq!(grs_code(&f, 1, &x, &[Elem(1), Elem(0), Elem(1)]), Err(CodeError::ZeroMultiplier(1)));
    }

    #[test]
    fn dual_multiplier_tiny_example() {
        let f = Field::prime(2).unwrap();
        let z = grs_dual_multiplier(&f, 1, &[Elem(0), Elem(1)], &[Elem(1), Elem(1)]).unwrap();
        assert_eq!(z, vec![Elem(1), Elem(1)]);
    }

    #[test]
    fn subfield_subcode_examples() {
        let f = gf4();
        let view = SubfieldView::new(&f, 1).unwrap();
        let full = LinearCode::full(&f, 3);
        assert_eq!(subfield_subcode(&full, &view).unwrap(), LinearCode::full(&f, 3));
        let w = f.z();
        let c = LinearCode::from_rows(&f, 2, &[vec![w, w]]);
        let sub = subfield_subcode(&c, &view).unwrap();
        assert_eq!(sub, LinearCode::from_rows(&f, 2, &[vec![Elem(1), Elem(1)]]));
    }

    #[test]
    fn trace_code_trivial_cases() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        assert_eq!(trace_code(&LinearCode::zero(&f, 5), &view).unwrap().dim(), 0);
        let trivial = SubfieldView::trivial(&f);
        let c = LinearCode::from_rows(&f, 3, &[vec![Elem(3), Elem(9), Elem(1)]]);
        assert_eq!(trace_code(&c, &trivial).unwrap(), c);
    }

    #[test]
    fn goppa_conventions() {
        let f = Field::new(2, 4, None).unwrap();
        let view = SubfieldView::new(&f, 1).unwrap();
        let x: Vec<Elem> = (1..10).map(Elem).collect();
        let c = goppa_code(&x, &Poly::constant(Elem(5)), &view).unwrap();
        assert_eq!(c, LinearCode::full(&f, 9));
        let inv: Vec<Elem> = x.iter().map(|&e| f.inv(e).unwrap()).collect();
        assert_eq!(
            goppa_code(&x, &Poly::x(), &view).unwrap(),
            alternant_code(1, &x, &inv, &view).unwrap()
        );
        let with_zero: Vec<Elem> = (0..5).map(Elem).collect();
        assert_eq!(goppa_code(&with_zero, &Poly::x(), &view), Err(CodeError::GoppaRoot(0)));
    }

    #[test]
    fn permutation_checks() {
        let f = gf4();
        let c = LinearCode::from_rows(&f, 3, &[vec![Elem(1), Elem(2), Elem(0)]]);
        assert_eq!(permute_code(&c, &[0, 1, 2]).unwrap(), c);
        let swapped = permute_code(&c, &[1, 0, 2]).unwrap();
        assert_eq!(permute_code(&swapped, &[1, 0, 2]).unwrap(), c);
        assert_eq!(permute_code(&c, &[0, 0, 2]), Err(CodeError::BadPermutation(3)));
        assert!(matches!(code_equal(&c, &LinearCode::zero(&f, 4)), Err(CodeError::LengthDiffers(3, 4))));
    }
}

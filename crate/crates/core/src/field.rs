//! Arithmetic in GF(p^m) and its subfields.
//!
//! Elements are residue polynomials of degree < m over GF(p), packed into a
//! single integer as little-endian base-p digits: the element
//! `c_0 + c_1 z + ... + c_{m-1} z^{m-1}` has index `c_0 + c_1 p + ... `.
//! The prime subfield GF(p) is therefore exactly the indices `0..p`.
//!
//! Fields with at most 2^20 elements carry log/antilog and Zech tables keyed
//! by the smallest primitive element; larger fields fall back to schoolbook
//! polynomial arithmetic modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field size for which lookup tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field size {p}^{m} does not fit in 32 bits")]
    TooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("element {0} is not a power of {1}")]
    NotInSubgroup(u32, u32),
    #[error("element index {0} out of range for a field of size {1}")]
    OutOfRange(u64, u64),
    #[error("subfield degree {s} does not divide {m}")]
    BadSubfield { s: u32, m: u32 },
    #[error("field contexts differ")]
    Mismatch,
}

/// A field element, stored as its little-endian base-p digit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_ZECH: u32 = u32::MAX;

#[derive(Debug)]
struct Tables {
    generator: u32,
    // exp has length 2N so that exp[la + lb] needs no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

#[derive(Debug)]
struct FieldInner {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    size: u32,
    digit_weights: Vec<u32>,
    order_factors: Vec<u64>,
    tables: Option<Tables>,
}

/// Context of a finite field GF(p^m). Cheap to clone, immutable once built.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.degree, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial is used, where candidates are
    /// ordered by the base-p index of their non-leading coefficients.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let size = (p as u64)
            .checked_pow(m)
            .filter(|s| *s <= u32::MAX as u64)
            .ok_or(FieldError::TooLarge { p, m })?;
        let modulus = match modulus {
            Some(coeffs) => {
                let coeffs: Vec<u32> = coeffs.to_vec();
                if coeffs.len() != m as usize + 1
                    || coeffs[m as usize] != 1
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(FieldError::BadModulus { expected: m, got: coeffs });
                }
                if !fp::is_irreducible(&coeffs, p) {
                    return Err(FieldError::Reducible(coeffs));
                }
                coeffs
            }
            None => fp::smallest_irreducible(p, m).ok_or(FieldError::NoIrreducible(m))?,
        };
        let mut digit_weights = Vec::with_capacity(m as usize);
        let mut w = 1u32;
        for i in 0..m {
            digit_weights.push(w);
            if i + 1 < m {
                w *= p;
            }
        }
        let mut inner = FieldInner {
            p,
            degree: m,
            modulus,
            size: size as u32,
            digit_weights,
            order_factors: prime_factors(size - 1),
            tables: None,
        };
        if size <= TABLE_LIMIT && size > 2 {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// GF(p) itself.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Absolute extension degree over GF(p).
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Order of the multiplicative group.
    pub fn mult_order(&self) -> u64 {
        self.0.size as u64 - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn same(&self, other: &Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }

    pub fn elem(&self, index: u64) -> Result<Elem, FieldError> {
        if index < self.0.size as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(FieldError::OutOfRange(index, self.0.size as u64))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.size).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.0.size).map(Elem)
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.0.p;
        Elem(
            digits
                .iter()
                .zip(&self.0.digit_weights)
                .map(|(&d, &w)| (d % p) * w)
                .sum(),
        )
    }

    /// Digit `i` of the residue representation, i.e. the coefficient of z^i.
    pub fn digit(&self, a: Elem, i: usize) -> u32 {
        (a.0 / self.0.digit_weights[i]) % self.0.p
    }

    /// The class of `z` modulo the defining polynomial.
    pub fn z(&self) -> Elem {
        if self.0.degree == 1 {
            // z is congruent to -c_0 modulo a linear modulus z + c_0
            self.neg(Elem(self.0.modulus[0]))
        } else {
            Elem(self.0.p)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &inner.tables {
            let n = inner.size - 1;
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let k = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[k as usize];
            if z == NO_ZECH {
                return Elem::ZERO;
            }
            return Elem(t.exp[(la + z) as usize]);
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        for &w in &self.0.digit_weights {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        for &w in &self.0.digit_weights {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.0.tables {
            return Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let m = self.0.degree as usize;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let modulus = &self.0.modulus;
        for top in (m..2 * m).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // subtract c * z^(top-m) * modulus
            for (k, &mk) in modulus.iter().enumerate() {
                let idx = top - m + k;
                prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&d| d as u32).collect();
        self.from_digits(&digits)
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let n = self.mult_order();
            let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return Elem(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = Elem::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        if let Some(t) = &self.0.tables {
            let n = self.mult_order() as u32;
            let l = t.log[a.0 as usize];
            return Ok(Elem(t.exp[((n - l) % n) as usize]));
        }
        Ok(self.pow(a, self.mult_order() - 1))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// w -> w^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// `dst[j] -= f * src[j]` for all j.
    pub fn sub_scaled_row(&self, dst: &mut [Elem], src: &[Elem], f: Elem) {
        if f.0 == 0 {
            return;
        }
        let inner = &*self.0;
        match (&inner.tables, inner.p) {
            (Some(t), 2) => {
                let lf = t.log[f.0 as usize] as usize;
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 ^= t.exp[lf + t.log[s.0 as usize] as usize];
                    }
                }
            }
            _ => {
                let nf = self.neg(f);
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        *d = self.add(*d, self.mul(nf, *s));
                    }
                }
            }
        }
    }

    pub fn scale_row(&self, row: &mut [Elem], f: Elem) {
        for x in row.iter_mut() {
            *x = self.mul(*x, f);
        }
    }

    /// Smallest primitive element by index.
    pub fn primitive_element(&self) -> Elem {
        if let Some(t) = &self.0.tables {
            return Elem(t.generator);
        }
        if self.0.size == 2 {
            return Elem::ONE;
        }
        (2..self.0.size)
            .map(Elem)
            .find(|&g| self.order_of_nonzero(g) == self.mult_order())
            .expect("a finite field always has a primitive element")
    }

    fn order_of_nonzero(&self, a: Elem) -> u64 {
        let mut ord = self.mult_order();
        for &f in &self.0.order_factors {
            while ord.is_multiple_of(f) && self.pow(a, ord / f) == Elem::ONE {
                ord /= f;
            }
        }
        ord
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Result<u64, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroOrder);
        }
        Ok(self.order_of_nonzero(a))
    }

    /// Some element of multiplicative order exactly `ell`, if `ell` divides
    /// the group order.
    pub fn element_of_order(&self, ell: u64) -> Option<Elem> {
        if ell == 0 || !self.mult_order().is_multiple_of(ell) {
            return None;
        }
        Some(self.pow(self.primitive_element(), self.mult_order() / ell))
    }

    /// The unique `d` in `[0, ell)` with `base^d = target`, where `ell` is
    /// the order of `base`.
    pub fn discrete_log_in_cyclic(&self, target: Elem, base: Elem, ell: u64) -> Result<u64, FieldError> {
        let mut acc = Elem::ONE;
        for d in 0..ell {
            if acc == target {
                return Ok(d);
            }
            acc = self.mul(acc, base);
        }
        Err(FieldError::NotInSubgroup(target.0, base.0))
    }
}

fn build_tables(inner: &FieldInner) -> Tables {
    // a throwaway context without tables to search for the generator
    let plain = Field(Arc::new(FieldInner {
        p: inner.p,
        degree: inner.degree,
        modulus: inner.modulus.clone(),
        size: inner.size,
        digit_weights: inner.digit_weights.clone(),
        order_factors: inner.order_factors.clone(),
        tables: None,
    }));
    let g = plain.primitive_element();
    let n = inner.size as usize - 1;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; inner.size as usize];
    let mut acc = Elem::ONE;
    for i in 0..n {
        exp[i] = acc.0;
        exp[i + n] = acc.0;
        log[acc.0 as usize] = i as u32;
        acc = plain.mul_slow(acc, g);
    }
    let mut zech = vec![NO_ZECH; n];
    for (k, z) in zech.iter_mut().enumerate() {
        let s = plain.add_digits(Elem::ONE, Elem(exp[k]));
        if s.0 != 0 {
            *z = log[s.0 as usize];
        }
    }
    Tables { generator: g.0, exp, log, zech }
}

/// The subfield GF(q), q = p^s, seen inside GF(q^m).
#[derive(Clone, Debug)]
pub struct SubfieldView {
    field: Field,
    s: u32,
    q: u32,
    m: u32,
    basis: Vec<Elem>,
}

impl SubfieldView {
    /// Realizes GF(p^s) as the fixed field of w -> w^(p^s); the GF(p)-basis
    /// is the canonical (reduced echelon) basis of the kernel of that map
    /// minus the identity.
    pub fn new(field: &Field, s: u32) -> Result<SubfieldView, FieldError> {
        let big = field.degree();
        if s == 0 || !big.is_multiple_of(s) {
            return Err(FieldError::BadSubfield { s, m: big });
        }
        let q = field.characteristic().pow(s);
        let mm = big as usize;
        // column u of the linear map is the digit vector of (z^u)^q - z^u
        let images: Vec<Vec<u32>> = (0..mm)
            .map(|u| {
                let e = Elem(field.0.digit_weights[u]);
                field.digits(field.sub(field.pow(e, q as u64), e))
            })
            .collect();
        let p = field.characteristic();
        let rows: Vec<Vec<u32>> = (0..mm).map(|r| images.iter().map(|col| col[r]).collect()).collect();
        let kernel = fp::kernel(&rows, mm, p);
        let basis: Vec<Elem> = kernel.iter().map(|v| field.from_digits(v)).collect();
        debug_assert_eq!(basis.len(), s as usize);
        Ok(SubfieldView { field: field.clone(), s, q, m: big / s, basis })
    }

    /// The whole field viewed over itself.
    pub fn trivial(field: &Field) -> SubfieldView {
        SubfieldView::new(field, field.degree()).expect("s = m always divides m")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Size of the subfield.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of the big field over the subfield.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// log_p of the subfield size.
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn contains(&self, z: Elem) -> bool {
        self.field.pow(z, self.q as u64) == z
    }

    /// All subfield elements: GF(p)-combinations of the basis, in the order
    /// of their coordinate vectors.
    pub fn elements(&self) -> Vec<Elem> {
        let p = self.field.characteristic();
        let total = self.q as u64;
        (0..total)
            .map(|mut idx| {
                let mut acc = Elem::ZERO;
                for &b in &self.basis {
                    let c = (idx % p as u64) as i64;
                    idx /= p as u64;
                    acc = self.field.add(acc, self.field.mul(self.field.from_int(c), b));
                }
                acc
            })
            .collect()
    }

    /// Relative trace z + z^q + ... + z^(q^(m-1)).
    pub fn trace(&self, z: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut w = z;
        for _ in 0..self.m {
            acc = self.field.add(acc, w);
            w = self.field.pow(w, self.q as u64);
        }
        acc
    }
}

/// Dense polynomials over GF(p) with `u32` coefficients, used for modulus
/// selection and the subfield basis solve.
pub(crate) mod fp {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime and small: Fermat
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = c * bi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&prod, f, p)
    }

    fn pow_mod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, f, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Ben-Or test: f of degree m is irreducible iff gcd(f, z^(p^k) - z) = 1
    /// for every k <= m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let mut h = vec![0u32, 1];
        for _ in 1..=m / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    pub fn smallest_irreducible(p: u32, m: u32) -> Option<Vec<u32>> {
        let count = (p as u64).pow(m);
        (0..count).find_map(|mut idx| {
            let mut f: Vec<u32> = (0..m)
                .map(|_| {
                    let d = (idx % p as u64) as u32;
                    idx /= p as u64;
                    d
                })
                .collect();
            f.push(1);
            is_irreducible(&f, p).then_some(f)
        })
    }

    /// Canonical basis of the right kernel of a matrix over GF(p).
    pub fn kernel(rows: &[Vec<u32>], cols: usize, p: u32) -> Vec<Vec<u32>> {
        let mut a: Vec<Vec<u32>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            let inv = inv_mod(a[r][c], p) as u64;
            for v in a[r].iter_mut() {
                *v = (*v as u64 * inv % p as u64) as u32;
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c] as u64;
                    for (dst, &src) in row.iter_mut().zip(&pivot) {
                        let sub = f * src as u64 % p as u64;
                        *dst = ((*dst as u64 + p as u64 - sub) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[row][fc]) % p;
                }
                v
            })
            .collect();
        // reduced echelon form of the basis makes it canonical
        let n = basis.len();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..n).find(|&i| basis[i][c] != 0) else { continue };
            basis.swap(r, piv);
            let inv = inv_mod(basis[r][c], p) as u64;
            for v in basis[r].iter_mut() {
                *v = (*v as u64 * inv % p as u64) as u32;
            }
            let pivot = basis[r].clone();
            for (i, row) in basis.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c] as u64;
                    for (dst, &src) in row.iter_mut().zip(&pivot) {
                        let sub = f * src as u64 % p as u64;
                        *dst = ((*dst as u64 + p as u64 - sub) % p as u64) as u32;
                    }
                }
            }
            r += 1;
        }
        basis
    }
}

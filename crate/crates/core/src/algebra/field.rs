//! Prime and extension finite fields `F_{p^k}`.
//!
//! Elements are stored as a raw index `Σ c_i p^i` over the polynomial basis
//! `1, x, …, x^{k-1}`, so the representation is independent of how products
//! are computed. Fields up to order 2^16 get exp/log tables built from the
//! direct polynomial arithmetic; larger fields multiply directly. Both paths
//! produce identical results.

use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 20;

const TABLE_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1 << 10;

/// A raw field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    add_table: Option<Vec<u16>>,
}

/// Descriptor of `F_{p^k}`; cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p(), self.k(), self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (low-to-high coefficients).
pub(crate) fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1);
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - lead) * mi % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 || poly[deg] != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = v;
            for _ in 0..d {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if poly_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `k` over `F_p`, ordering the
/// candidates lexicographically by their low-to-high coefficient list.
fn first_irreducible(p: u32, k: u32) -> Option<Vec<u32>> {
    let count = (p as u64).pow(k);
    for v in 0..count {
        // c_0 is the most significant digit of v, so v counts in lexicographic order.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut x = v;
        for i in (0..k as usize).rev() {
            coeffs[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[k as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return Some(coeffs);
        }
    }
    None
}

impl Field {
    /// Builds `F_{p^k}` with the deterministic lexicographically-first modulus.
    pub fn new(p: u32, k: u32) -> Result<Field, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p));
        }
        if k == 0 {
            return Err(AlgebraError::BadDegree);
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= MAX_ORDER);
        let Some(order) = order else {
            return Err(AlgebraError::FieldTooLarge { p, k });
        };
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            first_irreducible(p, k).ok_or(AlgebraError::NoIrreducible { p, k })?
        };
        Ok(Self::build(p, k, order as u32, modulus, true))
    }

    /// Builds a field over an explicit monic modulus, checking irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p));
        }
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::BadDegree);
        }
        let k = modulus.len() as u32 - 1;
        let order = (p as u64)
            .checked_pow(k)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(AlgebraError::FieldTooLarge { p, k })?;
        if k > 1 && !is_irreducible(&modulus, p) {
            return Err(AlgebraError::ReducibleModulus);
        }
        Ok(Self::build(p, k, order as u32, modulus, true))
    }

    /// Builds a "field" over an arbitrary monic modulus without any check.
    /// Arithmetic is direct (no tables); a reducible modulus yields a ring with
    /// zero divisors. Used to exercise the self-test against broken setups.
    pub fn with_modulus_unchecked(p: u32, modulus: Vec<u32>) -> Field {
        let k = modulus.len() as u32 - 1;
        let order = p.pow(k);
        Self::build(p, k, order, modulus, false)
    }

    fn build(p: u32, k: u32, order: u32, modulus: Vec<u32>, tables: bool) -> Field {
        let mut inner = Inner {
            p,
            k,
            order,
            modulus,
            tables: None,
            add_table: None,
        };
        if p != 2 && k > 1 && order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = add_digits(p, k, a, b) as u16;
                }
            }
            inner.add_table = Some(t);
        }
        if tables && order <= TABLE_LIMIT {
            inner.tables = build_tables(&inner);
        }
        Field(Arc::new(inner))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Modulus coefficients, low-to-high (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Element from its index `Σ c_i p^i`.
    pub fn elem(&self, index: u32) -> Result<Gf, AlgebraError> {
        if index < self.order() {
            Ok(Gf(index))
        } else {
            Err(AlgebraError::ElementOutOfRange(index))
        }
    }

    /// Image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, v: i64) -> Gf {
        Gf(v.rem_euclid(self.p() as i64) as u32)
    }

    /// Element from polynomial-basis coefficients (low-to-high).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf, AlgebraError> {
        if coeffs.len() > self.k() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(AlgebraError::BadCoefficients);
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.p() + c;
        }
        Ok(Gf(v))
    }

    /// Polynomial-basis coefficients of `a`, always of length `k`.
    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k() as usize);
        let mut x = a.0;
        for _ in 0..self.k() {
            out.push(x % self.p());
            x /= self.p();
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order()).map(Gf)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let inner = &*self.0;
        if inner.k == 1 {
            let s = a.0 + b.0;
            Gf(if s >= inner.p { s - inner.p } else { s })
        } else if inner.p == 2 {
            Gf(a.0 ^ b.0)
        } else if let Some(t) = &inner.add_table {
            Gf(t[(a.0 * inner.order + b.0) as usize] as u32)
        } else {
            Gf(add_digits(inner.p, inner.k, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        let inner = &*self.0;
        if inner.p == 2 || a.0 == 0 {
            return a;
        }
        if inner.k == 1 {
            return Gf(inner.p - a.0);
        }
        let mut out = 0;
        let mut scale = 1;
        let mut x = a.0;
        for _ in 0..inner.k {
            let d = x % inner.p;
            out += ((inner.p - d) % inner.p) * scale;
            scale *= inner.p;
            x /= inner.p;
        }
        Gf(out)
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let inner = &*self.0;
        if inner.k == 1 {
            return Gf(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        match &inner.tables {
            Some(t) => Gf(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Gf(mul_direct(inner, a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero (or for a non-unit when the
    /// modulus is reducible).
    pub fn try_inv(&self, a: Gf) -> Option<Gf> {
        if a.is_zero() {
            return None;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let l = t.log[a.0 as usize];
            let e = if l == 0 { 0 } else { inner.order - 1 - l };
            return Some(Gf(t.exp[e as usize]));
        }
        // a^{q-2}, then confirm (the check matters only for unchecked moduli).
        let cand = self.pow(a, inner.order as u64 - 2);
        (self.mul(a, cand) == Gf::ONE).then_some(cand)
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero; callers on checked paths use [`Field::try_inv`].
    #[inline]
    pub fn inv(&self, a: Gf) -> Gf {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf, AlgebraError> {
        let bi = self.try_inv(b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Gf, mut e: u64) -> Gf {
        let mut base = a;
        let mut acc = Gf::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `dst[i] += factor * src[i]` over the whole slice.
    #[inline]
    pub fn axpy(&self, dst: &mut [Gf], factor: Gf, src: &[Gf]) {
        debug_assert_eq!(dst.len(), src.len());
        if factor.is_zero() {
            return;
        }
        let inner = &*self.0;
        match (&inner.tables, inner.p == 2) {
            (Some(t), true) => {
                let lf = t.log[factor.0 as usize];
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 ^= t.exp[(lf + t.log[s.0 as usize]) as usize];
                    }
                }
            }
            _ => {
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        *d = self.add(*d, self.mul(factor, *s));
                    }
                }
            }
        }
    }

    /// Multiply every entry of `v` by `factor` in place.
    pub fn scale(&self, v: &mut [Gf], factor: Gf) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    pub fn dot(&self, a: &[Gf], b: &[Gf]) -> Gf {
        a.iter()
            .zip(b)
            .fold(Gf::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Textual form: the integer itself for prime fields, otherwise the
    /// comma-separated low-to-high coefficient tuple.
    pub fn format_elem(&self, a: Gf) -> String {
        if self.k() == 1 {
            a.0.to_string()
        } else {
            self.coeffs(a)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`Field::format_elem`]. Tuples shorter than `k` are padded with zeros.
    pub fn parse_elem(&self, s: &str) -> Result<Gf, AlgebraError> {
        let parts: Result<Vec<u32>, _> = s.trim().split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| AlgebraError::Parse(s.to_string()))?;
        if self.k() == 1 {
            if parts.len() != 1 || parts[0] >= self.p() {
                return Err(AlgebraError::Parse(s.to_string()));
            }
            return Ok(Gf(parts[0]));
        }
        self.from_coeffs(&parts).map_err(|_| AlgebraError::Parse(s.to_string()))
    }
}

fn add_digits(p: u32, k: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..k {
        out += ((a % p + b % p) % p) * scale;
        scale *= p;
        a /= p;
        b /= p;
    }
    out
}

/// Schoolbook product of the two coefficient polynomials reduced by the modulus.
fn mul_direct(inner: &Inner, a: u32, b: u32) -> u32 {
    let (p, k) = (inner.p, inner.k as usize);
    let digits = |mut x: u32| {
        let mut d = vec![0u32; k];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let prod: Vec<u32> = prod.iter().map(|&c| (c % p as u64) as u32).collect();
    let r = poly_rem(&prod, &inner.modulus, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_tables(inner: &Inner) -> Option<Tables> {
    let q = inner.order;
    if q == 2 {
        return Some(Tables {
            exp: vec![1, 1],
            log: vec![0, 0],
        });
    }
    let mul = |a: u32, b: u32| {
        if inner.k == 1 {
            ((a as u64 * b as u64) % inner.p as u64) as u32
        } else {
            mul_direct(inner, a, b)
        }
    };
    let factors = prime_factors(q as u64 - 1);
    let pow = |mut base: u32, mut e: u64| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q).find(|&g| factors.iter().all(|&r| pow(g, (q as u64 - 1) / r) != 1))?;
    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..(q - 1) {
        exp[i as usize] = x;
        exp[(i + q - 1) as usize] = x;
        log[x as usize] = i;
        x = mul(x, generator);
    }
    Some(Tables { exp, log })
}

/// A field element bundled with its field, for checked arithmetic at API boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: Gf,
}

impl FieldElem {
    pub fn new(field: &Field, value: Gf) -> Result<Self, AlgebraError> {
        field.elem(value.0)?;
        Ok(FieldElem {
            field: field.clone(),
            value,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Gf {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    fn wrap(&self, value: Gf) -> Self {
        FieldElem {
            field: self.field.clone(),
            value,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let v = self.field.try_inv(self.value).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.wrap(v))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

macro_rules! elem_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldElem {
            type Output = FieldElem;

            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field element operation failed")
            }
        }
    };
}

elem_op!(Add, add, checked_add);
elem_op!(Sub, sub, checked_sub);
elem_op!(Mul, mul, checked_mul);
elem_op!(Div, div, checked_div);

//! Arithmetic in finite fields of odd order `q = p^e`.
//!
//! Elements are coded as integers in `[0, q)`: the coefficient vector
//! `(c_0, .., c_{e-1})` of the reduced polynomial representative maps to
//! `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. Index order is therefore the canonical
//! enumeration order, with the prime subfield occupying `0..p`.
//!
//! Multiplication goes through exp/log tables built from a primitive element,
//! so every operation is a handful of table lookups.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Largest field order accepted; tables are linear in `q`.
pub const MAX_ORDER: u64 = 1 << 24;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroExponent,
    #[error("modulus {coeffs:?} is reducible over F_{p}")]
    ReducibleModulus { coeffs: Vec<u32>, p: u32 },
    #[error("no built-in irreducible polynomial for q = {p}^{e}; pass one explicitly")]
    NoBuiltinModulus { p: u32, e: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero is neither a square nor a non-square")]
    ZeroInput,
    #[error("index {0} is not an element of the field")]
    OutOfRange(u32),
}

/// An element of some [`Field`], coded by its canonical index.
///
/// The code is only meaningful together with the field that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Quadratic character of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

/// Irreducible moduli (Conway polynomials) for every odd non-prime `q <= 128`,
/// coefficients listed constant term first.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (11, 2, &[2, 7, 1]),
    (5, 3, &[3, 3, 0, 1]),
];

/// Built-in modulus for `p^e`, if one is tabulated.
pub fn builtin_modulus(p: u32, e: u32) -> Option<&'static [u32]> {
    BUILTIN_MODULI
        .iter()
        .find(|(bp, be, _)| *bp == p && *be == e)
        .map(|(_, _, m)| *m)
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, constant term first; empty for prime fields.
    modulus: Vec<u32>,
    xi: Elem,
    generator: Elem,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field `F_q` with `q` odd. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .field("xi", &self.0.xi)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split `q` into `(p, e)` with `p` an odd prime.
pub fn factor_prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 3 || q % 2 == 0 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 3;
    while p * p <= q && q % p != 0 {
        p += 2;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

/// Build `F_{p^e}`. For `e > 1` the modulus defaults to the built-in table.
pub fn make_field(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if p == 2 {
        return Err(FieldError::EvenCharacteristic);
    }
    if e == 0 {
        return Err(FieldError::ZeroExponent);
    }
    let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER);
    let q = match q {
        Some(q) => q as u32,
        None => return Err(FieldError::TooLarge((p as u64).saturating_pow(e))),
    };
    let modulus = if e == 1 {
        Vec::new()
    } else {
        let raw: Vec<u32> = match modulus {
            Some(m) => m.to_vec(),
            None => builtin_modulus(p, e)
                .ok_or(FieldError::NoBuiltinModulus { p, e })?
                .to_vec(),
        };
        let monic = normalize_modulus(&raw, p, e)?;
        if !poly::is_irreducible(&monic, p) {
            return Err(FieldError::ReducibleModulus { coeffs: monic, p });
        }
        monic
    };
    Ok(Field(Arc::new(Inner::build(p, e, q, modulus))))
}

fn normalize_modulus(raw: &[u32], p: u32, e: u32) -> Result<Vec<u32>, FieldError> {
    let mut m: Vec<u32> = raw.iter().map(|c| c % p).collect();
    while m.last() == Some(&0) {
        m.pop();
    }
    if m.len() != e as usize + 1 {
        return Err(FieldError::InvalidModulus(format!(
            "expected degree {e}, got {} coefficients {:?}",
            raw.len(),
            raw
        )));
    }
    let lead = *m.last().unwrap();
    let inv = poly::inv_mod(lead, p);
    for c in m.iter_mut() {
        *c = (*c as u64 * inv as u64 % p as u64) as u32;
    }
    Ok(m)
}

impl Inner {
    fn build(p: u32, e: u32, q: u32, modulus: Vec<u32>) -> Inner {
        let raw = RawArith { p, e, q, modulus: &modulus };
        let generator = raw.find_primitive();
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = raw.mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        let neg = (0..q).map(|a| raw.neg(a)).collect();
        let add = (e > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = raw.add(a, b);
                }
            }
            t
        });
        // Euler's criterion through the exp table: the odd powers of g.
        let xi = (1..q)
            .find(|&a| log[a as usize] % 2 == 1)
            .map(Elem)
            .expect("odd field has non-squares");
        Inner {
            p,
            e,
            q,
            modulus,
            xi,
            generator: Elem(generator),
            exp,
            log,
            neg,
            add,
        }
    }
}

/// Slow digit-level arithmetic used while the tables are being built.
struct RawArith<'a> {
    p: u32,
    e: u32,
    q: u32,
    modulus: &'a [u32],
}

impl RawArith<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let da = poly::digits(a, self.p, self.e);
        let db = poly::digits(b, self.p, self.e);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        poly::undigits(&sum, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = poly::digits(a, self.p, self.e)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        poly::undigits(&d, self.p)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let da = poly::digits(a, self.p, self.e);
        let db = poly::digits(b, self.p, self.e);
        poly::undigits(&poly::mul_mod(&da, &db, self.modulus, self.p), self.p)
    }

    fn pow(&self, mut base: u32, mut n: u64) -> u32 {
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> u32 {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.pow(g, order / r) != 1))
            .expect("multiplicative group of a field is cyclic")
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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
    /// Build the field of order `q`, inferring `p` and `e`.
    pub fn with_order(q: u64, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        let (p, e) = factor_prime_power(q)?;
        make_field(p, e, modulus)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// The stored modulus (monic, constant first), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.0.e > 1).then_some(self.0.modulus.as_slice())
    }

    /// The fixed non-square: the first one in canonical order.
    #[inline]
    pub fn xi(&self) -> Elem {
        self.0.xi
    }

    /// The primitive element the exp/log tables are built on.
    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    pub fn element(&self, index: u32) -> Result<Elem, FieldError> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(FieldError::OutOfRange(index))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        poly::digits(x.0, self.0.p, self.0.e)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, FieldError> {
        if coeffs.len() > self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FieldError::InvalidModulus(format!(
                "{coeffs:?} is not a reduced coefficient vector"
            )));
        }
        Ok(Elem(poly::undigits(coeffs, self.0.p)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.add {
            Some(t) => Elem(t[(a.0 * inner.q + b.0) as usize]),
            None => {
                let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
                for _ in 0..inner.e {
                    out += (x % inner.p + y % inner.p) % inner.p * place;
                    x /= inner.p;
                    y /= inner.p;
                    place *= inner.p;
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        Elem(inner.exp[(inner.log[a.index()] + inner.log[b.index()]) as usize])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let inner = &*self.0;
        let n = inner.q - 1;
        Some(Elem(inner.exp[((n - inner.log[a.index()]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let k = (inner.log[a.index()] as u64 * (n % order)) % order;
        Elem(inner.exp[k as usize])
    }

    /// Euler's criterion: `x^((q-1)/2) = 1`. Zero is rejected.
    pub fn is_square(&self, x: Elem) -> Result<bool, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        Ok(self.pow(x, (self.0.q as u64 - 1) / 2) == Elem::ONE)
    }

    #[inline]
    pub fn square_class(&self, x: Elem) -> SquareClass {
        if x.is_zero() {
            SquareClass::Zero
        } else if self.0.log[x.index()] % 2 == 0 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }

    /// A square root of `x`, if one exists.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(Elem::ZERO);
        }
        let l = self.0.log[x.index()];
        (l % 2 == 0).then(|| Elem(self.0.exp[(l / 2) as usize]))
    }

    pub fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// Human-readable form: an integer for prime fields, a polynomial in `t` otherwise.
    pub fn display(&self, x: Elem) -> String {
        if self.0.e == 1 {
            return x.0.to_string();
        }
        let c = self.coeffs(x);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

/// An element bundled with its field, for checked arithmetic across API boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<FieldElement, FieldError> {
        field.element(value.0)?;
        Ok(field.wrap(value))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_square(&self) -> Result<bool, FieldError> {
        self.field.is_square(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.display(self.value))
    }
}

/// Checked binary arithmetic on bundled elements.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    if a.field != b.field {
        return Err(FieldError::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value)?,
    };
    Ok(f.wrap(value))
}

/// Sizes of `(Sq-1) ∩ Sq`, `(Sq-1) ∩ Nsq`, `(Nsq-1) ∩ Sq`, `(Nsq-1) ∩ Nsq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCounts {
    pub sq_sq: usize,
    pub sq_nsq: usize,
    pub nsq_sq: usize,
    pub nsq_nsq: usize,
}

impl ShiftCounts {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.sq_sq, self.sq_nsq, self.nsq_sq, self.nsq_nsq)
    }

    /// Closed forms for the congruence class of `q` modulo 4.
    pub fn expected(q: u32) -> ShiftCounts {
        let q = q as usize;
        if q % 4 == 1 {
            ShiftCounts {
                sq_sq: (q - 5) / 4,
                sq_nsq: (q - 1) / 4,
                nsq_sq: (q - 1) / 4,
                nsq_nsq: (q - 1) / 4,
            }
        } else {
            ShiftCounts {
                sq_sq: (q - 3) / 4,
                sq_nsq: (q - 3) / 4,
                nsq_sq: (q + 1) / 4,
                nsq_nsq: (q - 3) / 4,
            }
        }
    }
}

/// Count the square classes of `s - 1` as `s` runs over squares and non-squares.
pub fn square_shift_counts(field: &Field) -> ShiftCounts {
    let mut counts = ShiftCounts {
        sq_sq: 0,
        sq_nsq: 0,
        nsq_sq: 0,
        nsq_nsq: 0,
    };
    let one = field.one();
    for s in field.units() {
        let shifted = field.square_class(field.sub(s, one));
        match (field.square_class(s), shifted) {
            (SquareClass::Square, SquareClass::Square) => counts.sq_sq += 1,
            (SquareClass::Square, SquareClass::NonSquare) => counts.sq_nsq += 1,
            (SquareClass::NonSquare, SquareClass::Square) => counts.nsq_sq += 1,
            (SquareClass::NonSquare, SquareClass::NonSquare) => counts.nsq_nsq += 1,
            _ => {}
        }
    }
    counts
}

/// Dense polynomials over `F_p`, coefficient vectors constant term first.
pub mod poly {
    pub fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(e as usize);
        for _ in 0..e {
            out.push(x % p);
            x /= p;
        }
        out
    }

    pub fn undigits(d: &[u32], p: u32) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut acc, mut base, mut n) = (1u64, a as u64 % p as u64, p as u64 - 2);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            n >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let deg = m.len() - 1;
        let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let p64 = p as u64;
        while r.len() > deg {
            let lead = r.pop().unwrap() % p64;
            if lead != 0 {
                let off = r.len() - deg;
                for (i, &mc) in m[..deg].iter().enumerate() {
                    r[off + i] = (r[off + i] + p64 - lead * mc as u64 % p64) % p64;
                }
            }
        }
        r.resize(deg, 0);
        r.into_iter().map(|c| (c % p64) as u32).collect()
    }

    /// Product of two reduced polynomials modulo the monic `m`.
    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem_monic(&prod, m, p)
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut divisor = digits(low as u32, p, d as u32);
                divisor.push(1);
                if rem_monic(m, &divisor, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_by_enumeration(f: &Field) -> Vec<bool> {
        let mut sq = vec![false; f.q() as usize];
        for x in f.units() {
            sq[f.mul(x, x).index()] = true;
        }
        sq
    }

    #[test]
    fn xi_is_first_non_square() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(f5.xi(), Elem(2));
        assert_eq!(f5.q(), 5);
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(f7.xi(), Elem(3));
    }

    #[test]
    fn explicit_modulus_for_f9() {
        let f9 = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.q(), 9);
        // t * t = -1 = 2
        let t = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(t, t), Elem(2));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(2, 3, None).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(
            make_field(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus { coeffs: vec![2, 0, 1], p: 3 }
        );
        assert_eq!(
            make_field(13, 2, None).unwrap_err(),
            FieldError::NoBuiltinModulus { p: 13, e: 2 }
        );
        assert!(matches!(
            make_field(3, 2, Some(&[1, 1])),
            Err(FieldError::InvalidModulus(_))
        ));
        assert_eq!(Field::with_order(4, None).unwrap_err(), FieldError::NotPrimePower(4));
        assert_eq!(Field::with_order(15, None).unwrap_err(), FieldError::NotPrimePower(15));
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for &(p, e, m) in BUILTIN_MODULI {
            assert!(poly::is_irreducible(m, p), "{p}^{e}");
            assert!(make_field(p, e, None).is_ok());
        }
        // x^4 + 1 over F_3 factors into quadratics without having a root.
        assert!(!poly::is_irreducible(&[1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(f5.mul(Elem(3), Elem(4)), Elem(2));
        let f7 = make_field(7, 1, None).unwrap();
        let three = f7.wrap(Elem(3));
        let zero = f7.wrap(Elem(0));
        assert_eq!(field_arith(&three, &zero, ArithOp::Div), Err(FieldError::DivisionByZero));
        let other = f5.wrap(Elem(1));
        assert_eq!(field_arith(&three, &other, ArithOp::Add), Err(FieldError::FieldMismatch));
        assert_eq!(
            field_arith(&three, &f7.wrap(Elem(5)), ArithOp::Sub).unwrap().value(),
            Elem(5)
        );
    }

    #[test]
    fn is_square_matches_enumeration() {
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(f7.is_square(Elem(2)), Ok(true));
        assert_eq!(f7.is_square(Elem(3)), Ok(false));
        assert_eq!(f7.is_square(Elem(0)), Err(FieldError::ZeroInput));
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125] {
            let f = Field::with_order(q, None).unwrap();
            assert_eq!(f.is_square(f.one()), Ok(true));
            let sq = squares_by_enumeration(&f);
            let mut count = 0;
            for x in f.units() {
                let s = f.is_square(x).unwrap();
                assert_eq!(s, sq[x.index()], "q={q} x={x}");
                assert_eq!(s, f.square_class(x) == SquareClass::Square);
                assert_ne!(s, f.is_square(f.mul(f.xi(), x)).unwrap());
                count += s as u32;
            }
            assert_eq!(count, (f.q() - 1) / 2);
        }
    }

    #[test]
    fn shift_counts() {
        let f = |q| Field::with_order(q, None).unwrap();
        assert_eq!(square_shift_counts(&f(13)).as_tuple(), (2, 3, 3, 3));
        assert_eq!(square_shift_counts(&f(7)).as_tuple(), (1, 1, 2, 1));
        assert_eq!(square_shift_counts(&f(5)).as_tuple(), (0, 1, 1, 1));
        for q in [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 49, 81, 121, 125] {
            let field = f(q);
            assert_eq!(square_shift_counts(&field), ShiftCounts::expected(q as u32), "q={q}");
        }
    }

    #[test]
    fn sqrt_and_inverse() {
        for q in [3u64, 9, 25, 27, 31] {
            let f = Field::with_order(q, None).unwrap();
            for x in f.units() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
                let s = f.square(x);
                let r = f.sqrt(s).unwrap();
                assert_eq!(f.square(r), s);
                assert_eq!(f.add(x, f.neg(x)), f.zero());
            }
            assert_eq!(f.sqrt(f.xi()), None);
        }
    }

    #[test]
    fn display_and_coeffs() {
        let f9 = make_field(3, 2, Some(&[1, 0, 1])).unwrap();
        let x = f9.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(f9.display(x), "t+2");
        assert_eq!(f9.coeffs(x), vec![2, 1]);
        assert_eq!(f9.wrap(x).to_string(), "t+2");
        assert_eq!(f9.from_int(-1), Elem(2));
    }
}

//! Finite fields GF(p^e) in a polynomial basis.
//!
//! Elements are addressed by a compact integer code: the coefficient list
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` (constant first) is stored as the base-p
//! number `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Ordering codes numerically is the
//! lexicographic order of coefficient lists read from the top degree down, and it
//! is the enumeration order used everywhere in the crate.

use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// Largest field order for which full addition and multiplication tables are cached.
const TABLE_LIMIT: u64 = 1024;

#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    trace: Vec<u32>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// GF(p^e). `modulus` holds e+1 coefficients, constant first, of a monic
    /// irreducible polynomial; it must be absent or empty when e = 1.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u128);
        let q = q.ok_or_else(|| Error::FieldTooLarge(format!("{p}^{e}")))? as u32;
        let p32 = p as u32;
        let modulus = if e == 1 {
            if modulus.is_some_and(|m| !m.is_empty()) {
                return Err(Error::InvalidModulus(
                    "a prime field takes no modulus".into(),
                ));
            }
            Vec::new()
        } else {
            let m = modulus.ok_or(Error::MissingModulus)?;
            if m.len() != e as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients, got {}",
                    e + 1,
                    m.len()
                )));
            }
            let m: Vec<u32> = m.iter().map(|&c| (c % p) as u32).collect();
            if m[e as usize] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !poly_irreducible(&m, p32) {
                return Err(Error::ReduciblePolynomial(p));
            }
            m
        };
        let mut data = FieldData {
            p: p32,
            e,
            q,
            modulus,
            tables: None,
            trace: Vec::new(),
        };
        if (q as u64) <= TABLE_LIMIT {
            data.tables = Some(build_tables(&data));
        }
        if (q as u64) <= 1 << 16 {
            data.trace = (0..q).map(|a| data.slow_trace(a)).collect();
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant first; empty for a prime field.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Codes of all elements in enumeration order.
    pub fn codes(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    /// Codes of the nonzero elements in enumeration order.
    pub fn nonzero_codes(&self) -> std::ops::Range<u32> {
        1..self.0.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.codes().map(move |c| FieldElement {
            field: self.clone(),
            code: c,
        })
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.0.q {
            return Err(Error::InvalidElement(format!("code {code} out of range")));
        }
        Ok(FieldElement {
            field: self.clone(),
            code,
        })
    }

    /// Element from polynomial coefficients (constant first), reduced mod p and mod the modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        let p = self.0.p as i64;
        let mut poly: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p) as u32).collect();
        self.0.reduce(&mut poly);
        FieldElement {
            field: self.clone(),
            code: self.0.encode(&poly),
        }
    }

    pub fn coeffs(&self, code: u32) -> Vec<u32> {
        self.0.decode(code)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.e == 1 {
            return ((a as u64 + b as u64) % d.p as u64) as u32;
        }
        match &d.tables {
            Some(t) => t.add[(a * d.q + b) as usize],
            None => d.slow_add(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d = &*self.0;
        if d.e == 1 {
            return if a == 0 { 0 } else { d.p - a };
        }
        let c: Vec<u32> = d.decode(a).iter().map(|&x| (d.p - x) % d.p).collect();
        d.encode(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.e == 1 {
            return ((a as u64 * b as u64) % d.p as u64) as u32;
        }
        match &d.tables {
            Some(t) => t.mul[(a * d.q + b) as usize],
            None => d.slow_mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        if let Some(t) = &d.tables {
            return Ok(t.inv[a as usize]);
        }
        // a^(q-2)
        Ok(self.pow(a, d.q as u64 - 2))
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Absolute trace to GF(p), returned as an integer in 0..p.
    pub fn trace(&self, a: u32) -> u32 {
        match self.0.trace.get(a as usize) {
            Some(&t) => t,
            None => self.0.slow_trace(a),
        }
    }

    /// The additive character θ(a) = ζ_p^{trace(a)}.
    pub fn theta(&self, a: u32) -> CycNumber {
        CycNumber::root_of_unity(self.0.p, self.trace(a) as i64)
    }

    /// Human-readable form of an element: an integer for prime fields, a polynomial in x otherwise.
    pub fn format(&self, code: u32) -> String {
        if self.0.e == 1 {
            return code.to_string();
        }
        let c = self.0.decode(code);
        let mut terms = Vec::new();
        for (k, &ck) in c.iter().enumerate().rev() {
            if ck == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            terms.push(match (ck, k) {
                (_, 0) => ck.to_string(),
                (1, _) => mono,
                _ => format!("{ck}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl FieldData {
    fn decode(&self, mut code: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.e as usize];
        for slot in c.iter_mut() {
            *slot = code % self.p;
            code /= self.p;
        }
        c
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0u32, |acc, &x| acc * self.p + x)
    }

    /// Reduce a coefficient vector modulo the field modulus, leaving exactly e coefficients.
    fn reduce(&self, poly: &mut Vec<u32>) {
        let e = self.e as usize;
        if self.e == 1 {
            poly.resize(1, 0);
            return;
        }
        let p = self.p as u64;
        while poly.len() > e {
            let top = poly.pop().unwrap() as u64;
            if top == 0 {
                continue;
            }
            let shift = poly.len() - e;
            for k in 0..e {
                let sub = top * self.modulus[k] as u64 % p;
                let slot = &mut poly[shift + k];
                *slot = ((*slot as u64 + p - sub) % p) as u32;
            }
        }
        poly.resize(e, 0);
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + u as u64 * v as u64) % p) as u32;
            }
        }
        self.reduce(&mut prod);
        self.encode(&prod)
    }

    fn slow_pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn slow_trace(&self, a: u32) -> u32 {
        if self.e == 1 {
            return a;
        }
        let mut t = 0u32;
        let mut x = a;
        for _ in 0..self.e {
            t = self.slow_add(t, x);
            x = self.slow_pow(x, self.p as u64);
        }
        debug_assert!(t < self.p, "trace must land in the prime field");
        t
    }
}

fn build_tables(d: &FieldData) -> Tables {
    let q = d.q as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    for a in 0..d.q {
        for b in 0..d.q {
            let i = a as usize * q + b as usize;
            if d.e == 1 {
                add[i] = (a + b) % d.p;
                mul[i] = ((a as u64 * b as u64) % d.p as u64) as u32;
            } else {
                add[i] = d.slow_add(a, b);
                mul[i] = d.slow_mul(a, b);
            }
        }
    }
    let one = 1u32;
    let mut inv = vec![0u32; q];
    for a in 1..d.q {
        inv[a as usize] = (1..d.q)
            .find(|&b| mul[a as usize * q + b as usize] == one)
            .expect("nonzero elements of a field are invertible");
    }
    Tables { add, mul, inv }
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p); coefficient lists are constant first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let p = p as u64;
    while r.len() > db {
        let top = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - db;
        if top != 0 {
            for (k, &bk) in b.iter().enumerate() {
                let slot = &mut r[shift + k];
                *slot = ((*slot as u64 + p - top * bk as u64 % p) % p) as u32;
            }
        }
        r.pop();
    }
    r
}

/// Trial factorization: a monic polynomial of degree e is irreducible iff no monic
/// polynomial of degree 1..=e/2 divides it.
fn poly_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if poly_rem(m, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.e, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A field element bound to its field; arithmetic between different fields is an error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, code: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn trace(&self) -> u32 {
        self.field.trace(self.code)
    }

    pub fn theta(&self) -> CycNumber {
        self.field.theta(self.code)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 2, None).unwrap_err(), Error::MissingModulus);
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReduciblePolynomial(2)
        );
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn prime_field_basics() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        let g = Field::prime(3).unwrap();
        assert_eq!(g.inv(2).unwrap(), 2);
        assert_eq!(g.codes().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(g.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf4_arithmetic_and_trace() {
        let f = gf4();
        let x = f.from_coeffs(&[0, 1]);
        let xx = x.mul(&x).unwrap();
        assert_eq!(xx.coeffs(), vec![1, 1]);
        assert_eq!(x.trace(), 1);
        assert_eq!(f.trace(0), 0);
        assert_eq!(f.format(xx.code()), "x+1");
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Field::prime(2).unwrap().element(1).unwrap();
        let b = Field::prime(3).unwrap().element(1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        let f = Field::new(3, 2, Some(&[2, 2, 1])).unwrap();
        for a in f.codes() {
            for b in f.codes() {
                assert_eq!(f.mul(a, b), f.0.slow_mul(a, b));
                assert_eq!(f.add(a, b), f.0.slow_add(a, b));
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}

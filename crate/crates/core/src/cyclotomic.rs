//! Exact arithmetic in the cyclotomic field ℚ(ζ_p).
//!
//! A [`CycNumber`] stores p−1 rational coordinates in the power basis
//! 1, ζ, …, ζ^{p−2}. Products are folded with ζ^p = 1 and then
//! ζ^{p−1} = −(1 + ζ + … + ζ^{p−2}), so coordinate equality is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    p: u32,
    coords: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(p: u32) -> CycNumber {
        assert!(p >= 2, "cyclotomic prime must be at least 2");
        CycNumber {
            p,
            coords: vec![BigRational::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u32) -> CycNumber {
        CycNumber::from_integer(p, 1)
    }

    pub fn from_integer(p: u32, n: i64) -> CycNumber {
        CycNumber::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(p: u32, n: BigInt) -> CycNumber {
        CycNumber::from_rational(p, BigRational::from_integer(n))
    }

    pub fn from_rational(p: u32, r: BigRational) -> CycNumber {
        let mut z = CycNumber::zero(p);
        z.coords[0] = r;
        z
    }

    /// Build from explicit power-basis coordinates (length p−1).
    pub fn from_coords(p: u32, coords: Vec<BigRational>) -> Result<CycNumber> {
        if p < 2 || coords.len() != p as usize - 1 {
            return Err(Error::Parse(format!(
                "expected {} coordinates for p = {p}",
                p.saturating_sub(1)
            )));
        }
        Ok(CycNumber { p, coords })
    }

    /// ζ_p^k for any integer k.
    pub fn root_of_unity(p: u32, k: i64) -> CycNumber {
        let k = k.rem_euclid(p as i64) as usize;
        let mut z = CycNumber::zero(p);
        if k == p as usize - 1 {
            for c in z.coords.iter_mut() {
                *c = -BigRational::one();
            }
        } else {
            z.coords[k] = BigRational::one();
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this number lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn same_prime(&self, other: &CycNumber) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(&self, other: &CycNumber) -> Result<CycNumber> {
        self.same_prime(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNumber { p: self.p, coords })
    }

    pub fn checked_sub(&self, other: &CycNumber) -> Result<CycNumber> {
        self.same_prime(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycNumber { p: self.p, coords })
    }

    pub fn checked_mul(&self, other: &CycNumber) -> Result<CycNumber> {
        self.same_prime(other)?;
        let p = self.p as usize;
        // Product in ℚ[x]/(x^p − 1), then fold the ζ^{p−1} coordinate.
        let mut acc = vec![BigRational::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        Ok(CycNumber::fold(self.p, acc))
    }

    /// Reduce a length-p group-ring vector to the power basis.
    fn fold(p: u32, mut acc: Vec<BigRational>) -> CycNumber {
        let top = acc.pop().expect("length p");
        if !top.is_zero() {
            for c in acc.iter_mut() {
                *c -= &top;
            }
        }
        CycNumber { p, coords: acc }
    }

    pub fn scale(&self, r: &BigRational) -> CycNumber {
        CycNumber {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^{p−1}.
    pub fn conj(&self) -> CycNumber {
        self.galois(self.p as i64 - 1)
    }

    /// The automorphism ζ ↦ ζ^k, for k prime to p.
    pub fn galois(&self, k: i64) -> CycNumber {
        let p = self.p as usize;
        let k = k.rem_euclid(p as i64) as usize;
        assert!(k != 0, "galois exponent must be prime to p");
        let mut acc = vec![BigRational::zero(); p];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc[(i * k) % p] += c;
            }
        }
        CycNumber::fold(self.p, acc)
    }

    /// Multiplicative inverse via the norm: x⁻¹ = (∏_{k≠1} σ_k(x)) / N(x).
    pub fn inv(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut others = CycNumber::one(self.p);
        for k in 2..self.p as i64 {
            others = &others * &self.galois(k);
        }
        let norm = &others * self;
        let n = norm
            .as_rational()
            .expect("the norm of a cyclotomic number is rational")
            .clone();
        Ok(others.scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &CycNumber) -> Result<CycNumber> {
        self.same_prime(other)?;
        if let Some(r) = other.as_rational() {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale(&r.recip()));
        }
        self.checked_mul(&other.inv()?)
    }

    /// Integral group-ring form, when every coordinate is an integer that fits in i128.
    pub fn to_root_sum(&self) -> Option<RootSum> {
        let mut coeffs = Vec::with_capacity(self.p as usize);
        for c in &self.coords {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer().to_i128()?);
        }
        coeffs.push(0);
        Some(RootSum { coeffs })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "a", "-a" or "a/b" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl CycNumber {
    /// Coordinates as strings, the form used in JSON output.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }

    /// Render with a chosen symbol for ζ, e.g. `z` or `\zeta_3`.
    pub fn render(&self, zeta: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let mono = match k {
                0 => String::new(),
                1 => zeta.to_string(),
                _ => format!("{zeta}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&mag);
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z"))
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.p, self.render("z"))
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &'a CycNumber) -> CycNumber {
        self.checked_add(rhs).expect("cyclotomic prime mismatch")
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &'a CycNumber) -> CycNumber {
        self.checked_sub(rhs).expect("cyclotomic prime mismatch")
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &'a CycNumber) -> CycNumber {
        self.checked_mul(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

/// An element Σ c_k ζ^k of ℤ[ζ_p] kept in the unreduced group-ring basis
/// (length p, integer coefficients). Used as a fast accumulator; convert with
/// [`RootSum::to_cyc`] for comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    coeffs: Vec<i128>,
}

impl RootSum {
    pub fn zero(p: u32) -> RootSum {
        RootSum {
            coeffs: vec![0; p as usize],
        }
    }

    pub fn monomial(p: u32, mult: i128, k: u32) -> RootSum {
        let mut r = RootSum::zero(p);
        r.coeffs[(k % p) as usize] = mult;
        r
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn is_zero_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add_root(&mut self, k: u32, mult: i128) {
        let p = self.coeffs.len();
        self.coeffs[k as usize % p] += mult;
    }

    pub fn add_assign(&mut self, other: &RootSum) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// self += a · conj(b), or None on overflow.
    pub fn add_product_conj(&mut self, a: &RootSum, b: &RootSum) -> Option<()> {
        let p = self.coeffs.len();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let slot = &mut self.coeffs[(i + p - j) % p];
                *slot = slot.checked_add(x.checked_mul(y)?)?;
            }
        }
        Some(())
    }

    pub fn sub_assign(&mut self, other: &RootSum) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    /// Canonical representative: shift by a multiple of 1+ζ+…+ζ^{p−1} so the top coefficient is 0.
    /// Two root sums are equal as numbers exactly when their normalized forms agree.
    pub fn normalized(&self) -> RootSum {
        let top = *self.coeffs.last().unwrap();
        RootSum {
            coeffs: self.coeffs.iter().map(|&c| c - top).collect(),
        }
    }

    pub fn scaled(&self, k: i128) -> RootSum {
        RootSum {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Product in ℤ[ζ_p], or None on overflow.
    pub fn checked_mul(&self, other: &RootSum) -> Option<RootSum> {
        let p = self.coeffs.len();
        let mut out = RootSum::zero(p as u32);
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let slot = &mut out.coeffs[(i + j) % p];
                *slot = slot.checked_add(x.checked_mul(y)?)?;
            }
        }
        Some(out)
    }

    pub fn to_cyc(&self) -> CycNumber {
        let p = self.coeffs.len() as u32;
        let acc = self
            .coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycNumber::fold(p, acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(p, k)
    }

    #[test]
    fn cyclotomic_relation() {
        let s = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
        assert_eq!(z(3, 1).conj(), z(3, 2));
        assert_eq!(&z(2, 1) * &z(2, 1), CycNumber::one(2));
        assert_eq!(z(2, 1), CycNumber::from_integer(2, -1));
    }

    #[test]
    fn prime_mismatch() {
        assert_eq!(
            z(2, 1).checked_add(&z(3, 1)),
            Err(Error::PrimeMismatch(2, 3))
        );
    }

    #[test]
    fn inverse_and_division() {
        for p in [2u32, 3, 5, 7] {
            let x = &(&z(p, 1) + &CycNumber::from_integer(p, 3)) + &z(p, 2);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one(), "p = {p}");
        }
        assert_eq!(CycNumber::zero(3).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_sum_round_trip() {
        let mut r = RootSum::zero(5);
        r.add_root(4, 3);
        r.add_root(1, -2);
        let c = r.to_cyc();
        let expected = &z(5, 4).scale(&BigRational::from_integer(3.into()))
            - &z(5, 1).scale(&BigRational::from_integer(2.into()));
        assert_eq!(c, expected);
        assert_eq!(c.to_root_sum().unwrap().to_cyc(), c);
    }

    #[test]
    fn rendering() {
        let x = &CycNumber::from_integer(3, 2) - &z(3, 1);
        assert_eq!(x.to_string(), "2-z");
        assert_eq!(CycNumber::zero(5).to_string(), "0");
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
    }
}

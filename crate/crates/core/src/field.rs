//! Exact arithmetic in small finite fields `GF(p^m)`.
//!
//! A field is described by a [`FieldSpec`]: the characteristic `p`, the
//! extension degree `m` and a monic irreducible modulus of degree `m` over
//! `F_p`. Elements are dense coefficient vectors of polynomials of degree
//! below `m`, reduced modulo that modulus.
//!
//! [`field_build`] picks the lexicographically smallest monic irreducible
//! modulus (coefficient lists compared from the constant term upwards), so
//! `field_build(p, m)` always describes the same concrete field and
//! serialized elements stay portable.
//!
//! ```
//! use agcodes::field::field_build;
//!
//! let f49 = field_build(7, 2).unwrap();
//! assert_eq!(f49.to_string(), "q=7^2;mod=1,0,1");
//! let x = f49.from_index(7);
//! assert_eq!(x * x, -f49.one());
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::arith::is_prime;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// Largest field order that may be built or enumerated.
pub const FIELD_BUDGET: u64 = 1 << 20;

/// Fields up to this order take square roots by exhaustive scan.
const SQRT_SCAN_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree {0} outside 1..=4")]
    DegreeOutOfRange(u32),
    #[error("no monic irreducible polynomial of degree {m} over F_{p}")]
    NoIrreducibleFound { p: u32, m: u32 },
    #[error("field order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: u64, budget: u64 },
    #[error("modulus is not irreducible over F_{0}")]
    NotIrreducible(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("square roots are only supported in odd characteristic")]
    EvenCharUnsupported,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A concrete finite field `F_p[x] / (modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: u8,
    /// Low coefficients `c0..c(m-1)` of the monic modulus.
    modulus: [u32; MAX_DEGREE],
}

/// Builds `GF(p^m)` with the lexicographically smallest monic irreducible modulus.
pub fn field_build(p: u64, m: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if !(1..=MAX_DEGREE as u32).contains(&m) {
        return Err(FieldError::DegreeOutOfRange(m));
    }
    let order = p.checked_pow(m).unwrap_or(u64::MAX);
    if order > FIELD_BUDGET {
        return Err(FieldError::BudgetExceeded {
            order,
            budget: FIELD_BUDGET,
        });
    }
    let p = p as u32;
    let m_us = m as usize;
    // odometer over [c0, .., c(m-1)] with c(m-1) varying fastest
    let mut low = vec![0u32; m_us];
    loop {
        let mut full = low.clone();
        full.push(1);
        if poly_is_irreducible(p, &full) {
            let mut modulus = [0u32; MAX_DEGREE];
            modulus[..m_us].copy_from_slice(&low);
            return Ok(FieldSpec {
                p,
                m: m as u8,
                modulus,
            });
        }
        let mut i = m_us;
        loop {
            if i == 0 {
                return Err(FieldError::NoIrreducibleFound { p, m });
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

/// Builds the field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec, FieldError> {
    let (p, m) = crate::arith::prime_power(q).ok_or(FieldError::NonPrime(q))?;
    field_build(p, m)
}

impl FieldSpec {
    /// A field with an explicitly chosen modulus (`coeffs` low-to-high, monic, degree `m`).
    pub fn with_modulus(p: u64, coeffs: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        let m = coeffs.len().saturating_sub(1);
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m as u32));
        }
        let order = p.pow(m as u32);
        if order > FIELD_BUDGET {
            return Err(FieldError::BudgetExceeded {
                order,
                budget: FIELD_BUDGET,
            });
        }
        let p = p as u32;
        if coeffs[m] != 1 || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::Parse(
                "modulus must be monic with coefficients below p".into(),
            ));
        }
        if !poly_is_irreducible(p, coeffs) {
            return Err(FieldError::NotIrreducible(p));
        }
        let mut modulus = [0u32; MAX_DEGREE];
        modulus[..m].copy_from_slice(&coeffs[..m]);
        Ok(FieldSpec {
            p,
            m: m as u8,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m as u32
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    /// Full modulus coefficient list, low-to-high, ending in the leading 1.
    pub fn modulus(&self) -> Vec<u32> {
        let mut v = self.modulus[..self.m as usize].to_vec();
        v.push(1);
        v
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element from a coefficient list (low-to-high); coefficients are reduced mod `p`.
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.m as usize {
            return Err(FieldError::Parse(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.m
            )));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u32;
        }
        Ok(e)
    }

    /// The element at position `index` of the enumeration order
    /// (`index = c0 + c1 p + c2 p^2 + ...`).
    pub fn from_index(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.order());
        let mut e = self.zero();
        let mut rest = index;
        for c in e.coeffs.iter_mut().take(self.m as usize) {
            *c = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
        }
        e
    }

    /// Parses `c0,c1,...` (missing high coefficients are zero).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| FieldError::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coeffs)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}^{};mod=", self.p, self.m)?;
        let modulus = self.modulus();
        for (i, c) in modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `q=p^m;mod=c0,..,cm`, or `q=p^m` / `q=N` alone for the default modulus.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(format!("bad field spec {s:?}"));
        let mut parts = s.trim().split(';');
        let q_part = parts.next().ok_or_else(bad)?.trim();
        let q_val = q_part.strip_prefix("q=").ok_or_else(bad)?;
        let (p, m) = match q_val.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = q_val.trim().parse::<u64>().map_err(|_| bad())?;
                crate::arith::prime_power(q).ok_or(FieldError::NonPrime(q))?
            }
        };
        match parts.next() {
            None => field_build(p, m),
            Some(mod_part) => {
                if parts.next().is_some() {
                    return Err(bad());
                }
                let coeffs = mod_part
                    .trim()
                    .strip_prefix("mod=")
                    .ok_or_else(bad)?
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.len() != m as usize + 1 {
                    return Err(bad());
                }
                FieldSpec::with_modulus(p, &coeffs)
            }
        }
    }
}

/// Lists every element of the field in enumeration order: `0, 1, .., p-1, x, 1+x, ..`.
pub fn enumerate_field(spec: &FieldSpec) -> Result<Vec<FieldElement>, FieldError> {
    let order = spec.order();
    if order > FIELD_BUDGET {
        return Err(FieldError::BudgetExceeded {
            order,
            budget: FIELD_BUDGET,
        });
    }
    Ok((0..order).map(|i| spec.from_index(i)).collect())
}

/// An element of a [`FieldSpec`]. Carries its field, so values are self-contained.
///
/// The arithmetic operators panic when the operands live in different
/// fields; the `try_*` methods report [`FieldError::SpecMismatch`] instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.spec.m as usize]
    }

    /// Position in the enumeration order of the field.
    pub fn index(&self) -> u64 {
        self.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.spec.p as u64 + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn in_prime_field(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    pub fn try_add(self, rhs: Self) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        let p = self.spec.p;
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        Ok(out)
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        self.try_add(-rhs)
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        Ok(FieldElement {
            spec: self.spec,
            coeffs: mul_reduce(&self.spec, &self.coeffs, &rhs.coeffs),
        })
    }

    pub fn try_div(self, rhs: Self) -> Result<Self, FieldError> {
        self.check(&rhs)?;
        Ok(self * rhs.inv()?)
    }

    /// Multiplicative inverse, `a^(q-2)`.
    pub fn inv(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    /// Square-and-multiply exponentiation; `a^0 = 1` for every `a`.
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Signed exponent; negative powers go through the inverse.
    pub fn pow_signed(self, e: i64) -> Result<Self, FieldError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(self) -> Self {
        self.pow(self.spec.p as u64)
    }

    /// Euler's criterion: `a = 0` or `a^((q-1)/2) = 1`.
    pub fn is_square(self) -> Result<bool, FieldError> {
        if self.spec.p == 2 {
            return Err(FieldError::EvenCharUnsupported);
        }
        Ok(self.is_zero() || self.pow((self.spec.order() - 1) / 2).is_one())
    }

    /// Some `r` with `r^2 = a`, or `None` for non-squares.
    pub fn sqrt(self) -> Result<Option<Self>, FieldError> {
        if !self.is_square()? {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(self));
        }
        let q = self.spec.order();
        if q <= SQRT_SCAN_LIMIT {
            return Ok((1..q)
                .map(|i| self.spec.from_index(i))
                .find(|r| *r * *r == self));
        }
        Ok(Some(tonelli_shanks(self)))
    }
}

fn tonelli_shanks(a: FieldElement) -> FieldElement {
    let spec = a.spec;
    let q = spec.order();
    let mut t = q - 1;
    let mut s = 0u32;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let minus_one = -spec.one();
    let z = (2..q)
        .map(|i| spec.from_index(i))
        .find(|z| z.pow((q - 1) / 2) == minus_one)
        .expect("odd-order field has a non-residue");
    let mut c = z.pow(t);
    let mut x = a.pow(t.div_ceil(2));
    let mut b = a.pow(t);
    let mut r = s;
    while !b.is_one() {
        let mut i = 0;
        let mut b2 = b;
        while !b2.is_one() {
            b2 = b2 * b2;
            i += 1;
        }
        let mut g = c;
        for _ in 0..(r - i - 1) {
            g = g * g;
        }
        x = x * g;
        c = g * g;
        b = b * c;
        r = i;
    }
    x
}

fn mul_reduce(spec: &FieldSpec, a: &[u32; MAX_DEGREE], b: &[u32; MAX_DEGREE]) -> [u32; MAX_DEGREE] {
    let m = spec.m as usize;
    let p = spec.p as u64;
    let mut out = [0u32; MAX_DEGREE];
    if m == 1 {
        out[0] = ((a[0] as u64 * b[0] as u64) % p) as u32;
        return out;
    }
    let mut prod = [0u64; 2 * MAX_DEGREE - 1];
    for i in 0..m {
        if a[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] += a[i] as u64 * b[j] as u64;
        }
    }
    for c in prod.iter_mut() {
        *c %= p;
    }
    // x^m = -(c0 + c1 x + .. + c(m-1) x^(m-1))
    for d in (m..2 * m - 1).rev() {
        let top = prod[d];
        if top == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..m {
            let sub = (spec.modulus[i] as u64 * top) % p;
            prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
        }
    }
    for i in 0..m {
        out[i] = prod[i] as u32;
    }
    out
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field mismatch in add")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("field mismatch in sub")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field mismatch in mul")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.spec.p;
        let mut out = self;
        for c in out.coeffs.iter_mut() {
            if *c != 0 {
                *c = p - *c;
            }
        }
        out
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Square roots of every field element, indexed by enumeration position.
///
/// Point counting asks "is `c` a square, and of what" once per abscissa;
/// a table built by squaring every element answers that in O(1).
#[derive(Debug, Clone)]
pub struct SqrtTable {
    roots: Vec<Option<FieldElement>>,
}

impl SqrtTable {
    pub fn new(spec: &FieldSpec) -> Result<Self, FieldError> {
        if spec.characteristic() == 2 {
            return Err(FieldError::EvenCharUnsupported);
        }
        let elems = enumerate_field(spec)?;
        let mut roots = vec![None; elems.len()];
        for r in elems {
            let sq = (r * r).index() as usize;
            if roots[sq].is_none() {
                roots[sq] = Some(r);
            }
        }
        Ok(SqrtTable { roots })
    }

    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        self.roots[a.index() as usize]
    }

    /// `1 + chi(a)`: the number of `y` with `y^2 = a`.
    pub fn root_count(&self, a: FieldElement) -> u64 {
        match self.roots[a.index() as usize] {
            None => 0,
            Some(r) if r.is_zero() => 1,
            Some(_) => 2,
        }
    }
}

/// The inclusion `F_(p^k) -> F_(p^K)` for `k | K`, fixed by sending the
/// generator `x` of the small field to the first root (in enumeration
/// order) of its modulus inside the large field.
#[derive(Debug, Clone, Copy)]
pub struct Embedding {
    small: FieldSpec,
    large: FieldSpec,
    image_of_x: FieldElement,
}

impl Embedding {
    pub fn new(small: &FieldSpec, large: &FieldSpec) -> Result<Self, FieldError> {
        if small.p != large.p || !large.m.is_multiple_of(small.m) {
            return Err(FieldError::SpecMismatch);
        }
        let modulus = small.modulus();
        let image_of_x = enumerate_field(large)?
            .into_iter()
            .find(|&r| {
                modulus
                    .iter()
                    .rev()
                    .fold(large.zero(), |acc, &c| acc * r + large.from_int(c as i64))
                    .is_zero()
            })
            .ok_or(FieldError::NotIrreducible(small.p))?;
        Ok(Embedding {
            small: *small,
            large: *large,
            image_of_x,
        })
    }

    pub fn source(&self) -> &FieldSpec {
        &self.small
    }

    pub fn target(&self) -> &FieldSpec {
        &self.large
    }

    pub fn apply(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.spec != self.small {
            return Err(FieldError::SpecMismatch);
        }
        Ok(a.coeffs().iter().rev().fold(self.large.zero(), |acc, &c| {
            acc * self.image_of_x + self.large.from_int(c as i64)
        }))
    }
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p64 = p as u64;
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let lead = *r.last().unwrap() as u64;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (bc as u64 * lead) % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

/// Irreducibility over `F_p` by trial division with every monic polynomial
/// of degree at most half the degree of `f` (`f` monic, low-to-high).
fn poly_is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            let r = poly_rem(p, f, &divisor);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

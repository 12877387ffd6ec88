//! Elliptic curves `y^2 = x^3 + Ax + B` over `F_q` with `char >= 5`.
//!
//! The group law is the chord-and-tangent construction written with affine
//! slopes: `(y2 - y1)/(x2 - x1)` for a chord, `(3x^2 + A)/(2y)` for a
//! tangent, and the point at infinity whenever the line is vertical.
//!
//! Point counts come from exhaustive enumeration of `F_q`, so everything
//! here is limited to desk-scale fields.
//!
//! ```
//! use agcodes::elliptic::{curve_new, enumerate_points, j_invariant, add, ECPoint};
//! use agcodes::field::field_build;
//!
//! let f5 = field_build(5, 1).unwrap();
//! let e = curve_new(f5, f5.from_int(1), f5.zero()).unwrap();
//! assert_eq!(j_invariant(&e), f5.from_int(1728));
//! assert_eq!(enumerate_points(&e).unwrap().len(), 4);
//!
//! let p = ECPoint::affine(f5.zero(), f5.zero());
//! let q = ECPoint::affine(f5.from_int(2), f5.zero());
//! assert_eq!(add(&e, &p, &q).unwrap(), ECPoint::affine(f5.from_int(3), f5.zero()));
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_factors;
use crate::field::{enumerate_field, Embedding, FieldElement, FieldError, FieldSpec, SqrtTable};

/// Largest field over which points are enumerated.
pub const POINT_BUDGET: u64 = 1 << 16;

/// Largest field over which the group structure is computed.
pub const GROUP_BUDGET: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("characteristic {0} not supported (need p >= 5)")]
    BadCharacteristic(u32),
    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("field of order {order} exceeds the budget {budget}")]
    BudgetExceeded { order: u64, budget: u64 },
    #[error("singular input: need b != 0 and a^2 != 4b")]
    SingularInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn check_characteristic(field: &FieldSpec) -> Result<(), EllipticError> {
    let p = field.characteristic();
    if p < 5 {
        Err(EllipticError::BadCharacteristic(p))
    } else {
        Ok(())
    }
}

fn check_budget(field: &FieldSpec, budget: u64) -> Result<(), EllipticError> {
    if field.order() > budget {
        Err(EllipticError::BudgetExceeded {
            order: field.order(),
            budget,
        })
    } else {
        Ok(())
    }
}

/// `y^2 = x^3 + Ax + B`, smooth, over a field of characteristic at least 5.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WeierstrassCurve {
    field: FieldSpec,
    a: FieldElement,
    b: FieldElement,
}

pub fn curve_new(
    field: FieldSpec,
    a: FieldElement,
    b: FieldElement,
) -> Result<WeierstrassCurve, EllipticError> {
    check_characteristic(&field)?;
    if *a.spec() != field || *b.spec() != field {
        return Err(FieldError::SpecMismatch.into());
    }
    let curve = WeierstrassCurve { field, a, b };
    if curve.discriminant().is_zero() {
        return Err(EllipticError::SingularCurve);
    }
    Ok(curve)
}

impl WeierstrassCurve {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    /// `4A^3 + 27B^2`; zero exactly for singular cubics.
    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        f.from_int(4) * self.a.pow(3) + f.from_int(27) * self.b * self.b
    }

    /// `x^3 + Ax + B`.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        (x * x + self.a) * x + self.b
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => {
                x.spec() == &self.field && y.spec() == &self.field && *y * *y == self.rhs(*x)
            }
        }
    }

    fn check_point(&self, p: &ECPoint) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::PointNotOnCurve(p.to_string()))
        }
    }

    /// Same curve over a larger field of the same characteristic.
    pub fn base_change(&self, emb: &Embedding) -> Result<WeierstrassCurve, EllipticError> {
        curve_new(*emb.target(), emb.apply(self.a)?, emb.apply(self.b)?)
    }
}

impl fmt::Display for WeierstrassCurve {
    /// `E[q=7;A=1;B=1]` over prime fields, `E[q=7^2;mod=1,0,1;A=..;B=..]` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "E[q={};A={};B={}]", self.field.order(), self.a, self.b)
        } else {
            write!(f, "E[{};A={};B={}]", self.field, self.a, self.b)
        }
    }
}

impl FromStr for WeierstrassCurve {
    type Err = EllipticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EllipticError::Parse(format!("bad curve spec {s:?}"));
        let body = s
            .trim()
            .strip_prefix("E[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut field_parts = Vec::new();
        let (mut a, mut b) = (None, None);
        for token in body.split(';') {
            let token = token.trim();
            if let Some(v) = token.strip_prefix("A=") {
                a = Some(v);
            } else if let Some(v) = token.strip_prefix("B=") {
                b = Some(v);
            } else if token.starts_with("q=") || token.starts_with("mod=") {
                field_parts.push(token);
            } else {
                return Err(bad());
            }
        }
        let field: FieldSpec = field_parts.join(";").parse()?;
        let a = field.parse_element(a.ok_or_else(bad)?)?;
        let b = field.parse_element(b.ok_or_else(bad)?)?;
        curve_new(field, a, b)
    }
}

/// A projective point: the neutral element `O`, or an affine `(x, y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ECPoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl ECPoint {
    pub fn affine(x: FieldElement, y: FieldElement) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    /// Parses `O` or `(x,y)`; over `F_(p^m)` each coordinate spans `m` comma-separated numbers.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self, EllipticError> {
        let s = s.trim();
        if s == "O" {
            return Ok(ECPoint::Infinity);
        }
        let bad = || EllipticError::Parse(format!("bad point {s:?}"));
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        let m = field.degree() as usize;
        if parts.len() != 2 * m {
            return Err(bad());
        }
        let x = field.parse_element(&parts[..m].join(","))?;
        let y = field.parse_element(&parts[m..].join(","))?;
        Ok(ECPoint::affine(x, y))
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => f.write_str("O"),
            ECPoint::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

/// `1728 * 4A^3 / (4A^3 + 27B^2)`.
pub fn j_invariant(curve: &WeierstrassCurve) -> FieldElement {
    let f = &curve.field;
    let num = f.from_int(4) * curve.a.pow(3);
    let den = curve.discriminant().inv().expect("smooth curve");
    f.from_int(1728) * num * den
}

pub fn neg(curve: &WeierstrassCurve, p: &ECPoint) -> Result<ECPoint, EllipticError> {
    curve.check_point(p)?;
    Ok(neg_unchecked(p))
}

fn neg_unchecked(p: &ECPoint) -> ECPoint {
    match *p {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => ECPoint::affine(x, -y),
    }
}

/// Chord-and-tangent addition.
pub fn add(curve: &WeierstrassCurve, p: &ECPoint, q: &ECPoint) -> Result<ECPoint, EllipticError> {
    curve.check_point(p)?;
    curve.check_point(q)?;
    Ok(add_unchecked(curve, p, q))
}

fn add_unchecked(curve: &WeierstrassCurve, p: &ECPoint, q: &ECPoint) -> ECPoint {
    let (x1, y1, x2, y2) = match (*p, *q) {
        (ECPoint::Infinity, _) => return *q,
        (_, ECPoint::Infinity) => return *p,
        (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let f = &curve.field;
    let slope = if x1 == x2 {
        if y1 == -y2 {
            // vertical chord, or tangent at a 2-torsion point
            return ECPoint::Infinity;
        }
        (f.from_int(3) * x1 * x1 + curve.a) * (f.from_int(2) * y1).inv().expect("y1 != 0")
    } else {
        (y2 - y1) * (x2 - x1).inv().expect("x1 != x2")
    };
    let x3 = slope * slope - x1 - x2;
    let y3 = slope * (x1 - x3) - y1;
    ECPoint::affine(x3, y3)
}

/// `[n]P` by double-and-add; negative `n` goes through `-P`.
pub fn scalar_mul(curve: &WeierstrassCurve, n: i64, p: &ECPoint) -> Result<ECPoint, EllipticError> {
    curve.check_point(p)?;
    Ok(scalar_mul_unchecked(curve, n, p))
}

fn scalar_mul_unchecked(curve: &WeierstrassCurve, n: i64, p: &ECPoint) -> ECPoint {
    let mut base = if n < 0 { neg_unchecked(p) } else { *p };
    let mut k = n.unsigned_abs();
    let mut acc = ECPoint::Infinity;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_unchecked(curve, &acc, &base);
        }
        base = add_unchecked(curve, &base, &base);
        k >>= 1;
    }
    acc
}

/// Reusable point counter for many curves over one field.
pub struct PointCounter {
    field: FieldSpec,
    elements: Vec<FieldElement>,
    roots: SqrtTable,
}

impl PointCounter {
    pub fn new(field: &FieldSpec) -> Result<Self, EllipticError> {
        check_characteristic(field)?;
        check_budget(field, POINT_BUDGET)?;
        Ok(PointCounter {
            field: *field,
            elements: enumerate_field(field)?,
            roots: SqrtTable::new(field)?,
        })
    }

    /// `#E(F_q)`, including the point at infinity.
    pub fn count(&self, curve: &WeierstrassCurve) -> Result<u64, EllipticError> {
        if curve.field != self.field {
            return Err(FieldError::SpecMismatch.into());
        }
        Ok(1 + self
            .elements
            .iter()
            .map(|&x| self.roots.root_count(curve.rhs(x)))
            .sum::<u64>())
    }

    /// `O` first, then affine points by `x`, then by `y`, both in field enumeration order.
    pub fn points(&self, curve: &WeierstrassCurve) -> Result<Vec<ECPoint>, EllipticError> {
        if curve.field != self.field {
            return Err(FieldError::SpecMismatch.into());
        }
        let mut out = vec![ECPoint::Infinity];
        for &x in &self.elements {
            if let Some(r) = self.roots.sqrt(curve.rhs(x)) {
                if r.is_zero() {
                    out.push(ECPoint::affine(x, r));
                } else {
                    let (lo, hi) = if r.index() < (-r).index() {
                        (r, -r)
                    } else {
                        (-r, r)
                    };
                    out.push(ECPoint::affine(x, lo));
                    out.push(ECPoint::affine(x, hi));
                }
            }
        }
        Ok(out)
    }
}

/// All rational points, `O` first (see [`PointCounter::points`] for the order).
pub fn enumerate_points(curve: &WeierstrassCurve) -> Result<Vec<ECPoint>, EllipticError> {
    PointCounter::new(&curve.field)?.points(curve)
}

pub fn count_points(curve: &WeierstrassCurve) -> Result<u64, EllipticError> {
    PointCounter::new(&curve.field)?.count(curve)
}

/// `t = q + 1 - #E(F_q)`.
pub fn frobenius_trace(curve: &WeierstrassCurve) -> Result<i64, EllipticError> {
    Ok(curve.field.order() as i64 + 1 - count_points(curve)? as i64)
}

/// Supersingular iff `p` divides the Frobenius trace (valid for `p >= 5`).
pub fn is_supersingular(curve: &WeierstrassCurve) -> Result<bool, EllipticError> {
    let t = frobenius_trace(curve)?;
    Ok(t % curve.field.characteristic() as i64 == 0)
}

/// `E(F_q) = Z/n1 x Z/n2` with `n1 | n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub n1: u64,
    pub n2: u64,
    #[serde(rename = "N")]
    pub order: u64,
}

/// Order of `P` in a group of order `group_order`.
pub fn point_order(
    curve: &WeierstrassCurve,
    p: &ECPoint,
    group_order: u64,
) -> Result<u64, EllipticError> {
    curve.check_point(p)?;
    let mut ord = group_order;
    for l in prime_factors(group_order) {
        while ord.is_multiple_of(l)
            && scalar_mul_unchecked(curve, (ord / l) as i64, p).is_infinity()
        {
            ord /= l;
        }
    }
    Ok(ord)
}

/// The exponent `n2` is the largest element order; `n1 = N / n2`.
pub fn group_structure(curve: &WeierstrassCurve) -> Result<GroupStructure, EllipticError> {
    check_budget(&curve.field, GROUP_BUDGET)?;
    let points = enumerate_points(curve)?;
    let order = points.len() as u64;
    let mut n2 = 1;
    for p in &points {
        n2 = n2.max(point_order(curve, p, order)?);
        if n2 == order {
            break;
        }
    }
    let n1 = order / n2;
    debug_assert_eq!(n2 % n1, 0);
    Ok(GroupStructure { n1, n2, order })
}

/// `#{P in E(F_q) : [m]P = O}`.
pub fn m_torsion_count(curve: &WeierstrassCurve, m: u64) -> Result<u64, EllipticError> {
    if m == 0 {
        return Err(EllipticError::InvalidArgument("m must be positive".into()));
    }
    Ok(enumerate_points(curve)?
        .iter()
        .filter(|p| scalar_mul_unchecked(curve, m as i64, p).is_infinity())
        .count() as u64)
}

/// The curve `y^2 = x^3 + A^p x + B^p`.
pub fn frobenius_curve(curve: &WeierstrassCurve) -> WeierstrassCurve {
    WeierstrassCurve {
        field: curve.field,
        a: curve.a.frobenius(),
        b: curve.b.frobenius(),
    }
}

/// `(x, y) -> (x^p, y^p)`, landing on [`frobenius_curve`]; `O -> O`.
pub fn frobenius_map(p: &ECPoint) -> ECPoint {
    match *p {
        ECPoint::Infinity => ECPoint::Infinity,
        ECPoint::Affine { x, y } => ECPoint::affine(x.frobenius(), y.frobenius()),
    }
}

/// A curve with the given j-invariant.
///
/// For `j0 != 0, 1728` this starts from `y^2 + xy = x^3 - 36/(j0-1728) x - 1/(j0-1728)`
/// and removes the `xy` and `x^2` terms by `y -> y - x/2`, `x -> x - 1/12`.
/// The special values give `y^2 = x^3 + 1` and `y^2 = x^3 + x`.
pub fn curve_from_j(field: FieldSpec, j0: FieldElement) -> Result<WeierstrassCurve, EllipticError> {
    check_characteristic(&field)?;
    if *j0.spec() != field {
        return Err(FieldError::SpecMismatch.into());
    }
    let c = |n: i64| field.from_int(n);
    if j0.is_zero() {
        return curve_new(field, c(0), c(1));
    }
    if j0 == c(1728) {
        return curve_new(field, c(1), c(0));
    }
    let t = (j0 - c(1728)).inv()?;
    let a4 = -(c(36) * t);
    let a6 = -t;
    let a = a4 - c(48).inv()?;
    let b = a6 - a4 * c(12).inv()? + c(864).inv()?;
    curve_new(field, a, b)
}

/// `y^2 = x^3 + ax^2 + bx`, the model carrying the rational 2-torsion point `(0,0)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoTorsionCurve {
    pub field: FieldSpec,
    pub a: FieldElement,
    pub b: FieldElement,
}

impl TwoTorsionCurve {
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        ((x + self.a) * x + self.b) * x
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => *y * *y == self.rhs(*x),
        }
    }

    /// All rational points, `O` first.
    pub fn points(&self) -> Result<Vec<ECPoint>, EllipticError> {
        check_budget(&self.field, POINT_BUDGET)?;
        let roots = SqrtTable::new(&self.field)?;
        let mut out = vec![ECPoint::Infinity];
        for x in enumerate_field(&self.field)? {
            if let Some(r) = roots.sqrt(self.rhs(x)) {
                out.push(ECPoint::affine(x, r));
                if !r.is_zero() {
                    out.push(ECPoint::affine(x, -r));
                }
            }
        }
        Ok(out)
    }

    /// Isomorphic short Weierstrass model via `x -> x - a/3`.
    pub fn short_model(&self) -> Result<WeierstrassCurve, EllipticError> {
        let f = &self.field;
        let third = f.from_int(3).inv()?;
        let a = self.b - self.a * self.a * third;
        let b = f.from_int(2) * self.a.pow(3) * f.from_int(27).inv()? - self.a * self.b * third;
        curve_new(*f, a, b)
    }

    /// Image of a point under the isomorphism onto [`Self::short_model`].
    pub fn to_short(&self, p: &ECPoint) -> ECPoint {
        match *p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => {
                let shift = self.a * self.field.from_int(3).inv().expect("char >= 5");
                ECPoint::affine(x + shift, y)
            }
        }
    }
}

/// The degree-2 isogeny with kernel `{O, (0,0)}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoIsogeny {
    pub source: TwoTorsionCurve,
    pub target: TwoTorsionCurve,
}

/// From `y^2 = x^3 + ax^2 + bx` to `y^2 = x^3 - 2ax^2 + (a^2 - 4b)x`.
pub fn two_isogeny(
    field: FieldSpec,
    a: FieldElement,
    b: FieldElement,
) -> Result<TwoIsogeny, EllipticError> {
    check_characteristic(&field)?;
    if *a.spec() != field || *b.spec() != field {
        return Err(FieldError::SpecMismatch.into());
    }
    if b.is_zero() || a * a == field.from_int(4) * b {
        return Err(EllipticError::SingularInput);
    }
    Ok(TwoIsogeny {
        source: TwoTorsionCurve { field, a, b },
        target: TwoTorsionCurve {
            field,
            a: -(field.from_int(2) * a),
            b: a * a - field.from_int(4) * b,
        },
    })
}

impl TwoIsogeny {
    /// `(x, y) -> (y^2/x^2, y(b - x^2)/x^2)`; `O` and `(0,0)` go to `O`.
    pub fn apply(&self, p: &ECPoint) -> Result<ECPoint, EllipticError> {
        if !self.source.contains(p) {
            return Err(EllipticError::PointNotOnCurve(p.to_string()));
        }
        match *p {
            ECPoint::Infinity => Ok(ECPoint::Infinity),
            ECPoint::Affine { x, .. } if x.is_zero() => Ok(ECPoint::Infinity),
            ECPoint::Affine { x, y } => {
                let x2 = x * x;
                let inv = x2.inv()?;
                Ok(ECPoint::affine(y * y * inv, y * (self.source.b - x2) * inv))
            }
        }
    }
}

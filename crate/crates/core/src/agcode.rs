//! Algebraic-geometry codes from one-point divisors.
//!
//! Two carriers are supported, each with an explicit basis of the
//! Riemann–Roch space `L(m P)`:
//!
//! * the projective line, `P = P_inf`: the polynomials `1, x, .., x^m`;
//! * an elliptic curve, `P = O_E`: the monomials `x^i y^j` with `j <= 1`
//!   and `2i + 3j <= m`, since `x` and `y` have poles of order 2 and 3 at `O_E`.
//!
//! Evaluating such a basis at `n > m` affine rational points gives a
//! generator matrix of dimension `m + 1 - g` (for `m > 2g - 2`) and minimum
//! distance at least `n - m`.
//!
//! ```
//! use agcodes::agcode::{ag_params, Carrier, EvalConfig, OnePointDivisor};
//! use agcodes::elliptic::curve_new;
//! use agcodes::field::field_build;
//!
//! let f7 = field_build(7, 1).unwrap();
//! let e = curve_new(f7, f7.from_int(1), f7.from_int(1)).unwrap();
//! let carrier = Carrier::Elliptic(e);
//! let eval = EvalConfig::all_affine(&carrier).unwrap();
//! let g = OnePointDivisor::new(carrier, 2);
//! let params = ag_params(&g, &eval).unwrap();
//! assert_eq!((params.n, params.k, params.g), (4, 2, 1));
//! assert!(params.d >= params.n - 2);
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::arith::isqrt;
use crate::code::{min_distance_bruteforce, CodeError, LinearCode, MIN_DISTANCE_BUDGET};
use crate::elliptic::{enumerate_points, ECPoint, EllipticError, WeierstrassCurve};
use crate::field::{enumerate_field, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AgError {
    #[error("deg G = {deg} must be smaller than the number of evaluation points n = {n}")]
    DegreeTooLarge { deg: u64, n: usize },
    #[error("evaluation points must be pairwise distinct")]
    DuplicatePoint,
    #[error("the point at infinity is the divisor's support and cannot be evaluated")]
    PointAtInfinityInEvalSet,
    #[error("evaluation point {0} does not lie on the carrier")]
    PointNotOnCarrier(String),
    #[error("evaluation points and divisor live on different carriers")]
    CarrierMismatch,
    #[error("inconsistent ramification data: {0}")]
    InconsistentRamification(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The curve a one-point divisor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    ProjectiveLine(FieldSpec),
    Elliptic(WeierstrassCurve),
}

impl Carrier {
    pub fn field(&self) -> &FieldSpec {
        match self {
            Carrier::ProjectiveLine(f) => f,
            Carrier::Elliptic(e) => e.field(),
        }
    }

    pub fn genus(&self) -> u64 {
        match self {
            Carrier::ProjectiveLine(_) => 0,
            Carrier::Elliptic(_) => 1,
        }
    }
}

/// `G = m P`, where `P` is `P_inf` on the line and `O_E` on an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OnePointDivisor {
    pub carrier: Carrier,
    pub m: u64,
}

impl OnePointDivisor {
    pub fn new(carrier: Carrier, m: u64) -> Self {
        OnePointDivisor { carrier, m }
    }

    pub fn degree(&self) -> u64 {
        self.m
    }
}

/// The function `x^x_exp * y^y_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub x_exp: u64,
    pub y_exp: u64,
}

impl Monomial {
    /// Pole order at the divisor's point.
    pub fn pole_order(&self, carrier: &Carrier) -> u64 {
        match carrier {
            Carrier::ProjectiveLine(_) => self.x_exp,
            Carrier::Elliptic(_) => 2 * self.x_exp + 3 * self.y_exp,
        }
    }
}

/// Monomial basis of `L(G)`, sorted by pole order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRBasis {
    pub monomials: Vec<Monomial>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

pub fn rr_basis(divisor: &OnePointDivisor) -> RRBasis {
    let m = divisor.m;
    let monomials = match divisor.carrier {
        Carrier::ProjectiveLine(_) => (0..=m).map(|i| Monomial { x_exp: i, y_exp: 0 }).collect(),
        Carrier::Elliptic(_) => {
            let mut v: Vec<Monomial> = (0..=m / 2)
                .flat_map(|i| {
                    (0..=1u64)
                        .filter(move |&j| 2 * i + 3 * j <= m)
                        .map(move |j| Monomial { x_exp: i, y_exp: j })
                })
                .collect();
            v.sort_by_key(|mono| 2 * mono.x_exp + 3 * mono.y_exp);
            v
        }
    };
    RRBasis { monomials }
}

/// A rational point of a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPoint {
    /// The affine point `x = t` of the projective line.
    Line(FieldElement),
    /// The point at infinity of the projective line.
    LineInfinity,
    Curve(ECPoint),
}

impl std::fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalPoint::Line(t) => write!(f, "{t}"),
            EvalPoint::LineInfinity => f.write_str("inf"),
            EvalPoint::Curve(p) => write!(f, "{p}"),
        }
    }
}

/// Ordered, distinct, affine evaluation points on a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalConfig {
    carrier: Carrier,
    points: Vec<EvalPoint>,
}

impl EvalConfig {
    pub fn new(carrier: Carrier, points: Vec<EvalPoint>) -> Result<Self, AgError> {
        for (i, p) in points.iter().enumerate() {
            match (&carrier, p) {
                (_, EvalPoint::LineInfinity | EvalPoint::Curve(ECPoint::Infinity)) => {
                    return Err(AgError::PointAtInfinityInEvalSet)
                }
                (Carrier::ProjectiveLine(f), EvalPoint::Line(t)) if t.spec() == f => {}
                (Carrier::Elliptic(e), EvalPoint::Curve(q)) if e.contains(q) => {}
                _ => return Err(AgError::PointNotOnCarrier(p.to_string())),
            }
            if points[..i].contains(p) {
                return Err(AgError::DuplicatePoint);
            }
        }
        Ok(EvalConfig { carrier, points })
    }

    /// Affine points of the line at the given abscissas.
    pub fn on_line(field: FieldSpec, xs: &[FieldElement]) -> Result<Self, AgError> {
        EvalConfig::new(
            Carrier::ProjectiveLine(field),
            xs.iter().map(|&t| EvalPoint::Line(t)).collect(),
        )
    }

    /// Every affine rational point, ordered by `x` then `y` in field enumeration order.
    pub fn all_affine(carrier: &Carrier) -> Result<Self, AgError> {
        let points = match carrier {
            Carrier::ProjectiveLine(f) => enumerate_field(f)?
                .into_iter()
                .map(EvalPoint::Line)
                .collect(),
            Carrier::Elliptic(e) => enumerate_points(e)?
                .into_iter()
                .filter(|p| !p.is_infinity())
                .map(EvalPoint::Curve)
                .collect(),
        };
        EvalConfig::new(*carrier, points)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn points(&self) -> &[EvalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn evaluate(mono: &Monomial, point: &EvalPoint) -> FieldElement {
    match *point {
        EvalPoint::Line(t) => t.pow(mono.x_exp),
        EvalPoint::Curve(ECPoint::Affine { x, y }) => x.pow(mono.x_exp) * y.pow(mono.y_exp),
        _ => unreachable!("EvalConfig holds affine points only"),
    }
}

/// `C_L(X, P, G)`: the basis of `L(G)` evaluated at the points of `eval`.
pub fn ag_code(divisor: &OnePointDivisor, eval: &EvalConfig) -> Result<LinearCode, AgError> {
    if divisor.carrier != eval.carrier {
        return Err(AgError::CarrierMismatch);
    }
    if divisor.degree() >= eval.len() as u64 {
        return Err(AgError::DegreeTooLarge {
            deg: divisor.degree(),
            n: eval.len(),
        });
    }
    let gen = rr_basis(divisor)
        .monomials
        .iter()
        .map(|mono| eval.points.iter().map(|p| evaluate(mono, p)).collect())
        .collect();
    Ok(LinearCode::new(*divisor.carrier.field(), gen)?)
}

/// Parameters of an AG code with its geometric data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AgParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    pub g: u64,
    #[serde(rename = "degG")]
    pub deg_g: u64,
}

impl AgParams {
    /// `n + 1 - k - d`; at most `g` whenever `d` is exact.
    pub fn singleton_defect(&self) -> i64 {
        self.n as i64 + 1 - self.k as i64 - self.d as i64
    }
}

/// `k` by rank; `d` by brute force when `q^k` fits the budget, else the bound `n - deg G`.
pub fn ag_params(divisor: &OnePointDivisor, eval: &EvalConfig) -> Result<AgParams, AgError> {
    let code = ag_code(divisor, eval)?;
    let n = code.len();
    let (d, d_exact) = if code.codeword_count() <= MIN_DISTANCE_BUDGET {
        (min_distance_bruteforce(&code)?, true)
    } else {
        (n - divisor.degree() as usize, false)
    };
    Ok(AgParams {
        n,
        k: code.dimension(),
        d,
        d_exact,
        g: divisor.carrier.genus(),
        deg_g: divisor.degree(),
    })
}

/// `(d-1)(d-2)/2`.
pub fn genus_smooth_plane(degree: u64) -> Result<u64, AgError> {
    if degree == 0 {
        return Err(AgError::InvalidArgument(
            "plane curve degree must be at least 1".into(),
        ));
    }
    Ok((degree - 1) * (degree.saturating_sub(2)) / 2)
}

/// `floor(q + 1 + 2g sqrt(q))`, computed exactly as `q + 1 + isqrt(4 g^2 q)`.
pub fn weil_bound(q: u64, g: u64) -> u64 {
    q + 1 + isqrt(4 * g * g * q)
}

/// Solves `2g_X - 2 = deg (2g_Y - 2) + sum (e - 1)` for `g_X`.
pub fn riemann_hurwitz_genus(degree: u64, g_base: u64, ram: &[u64]) -> Result<u64, AgError> {
    if degree == 0 {
        return Err(AgError::InconsistentRamification(
            "degree must be at least 1".into(),
        ));
    }
    if let Some(&e) = ram.iter().find(|&&e| e < 2 || e > degree) {
        return Err(AgError::InconsistentRamification(format!(
            "ramification index {e} outside 2..={degree}"
        )));
    }
    let contribution: i64 = ram.iter().map(|&e| e as i64 - 1).sum();
    let rhs = degree as i64 * (2 * g_base as i64 - 2) + contribution + 2;
    if rhs % 2 != 0 || rhs < 0 {
        return Err(AgError::InconsistentRamification(format!(
            "2 g_X = {rhs} has no nonnegative integer solution"
        )));
    }
    Ok((rhs / 2) as u64)
}

//! Arithmetic behind the asymptotic point count of modular curves: the
//! genus of `X_0(l)` and its ramification over `X_0(1)`, supersingular
//! j-invariants over `F_(p^2)`, and the ratio of rational points to genus.
//!
//! ```
//! use agcodes::modular::{genus_x0, ihara_table};
//! use num_rational::Ratio;
//!
//! assert_eq!(genus_x0(11).unwrap(), 1);
//! let rows = ihara_table(7, &[11, 23, 47]).unwrap();
//! assert!(rows.iter().all(|r| r.ratio == Ratio::from_integer(6)));
//! ```

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::agcode::{riemann_hurwitz_genus, AgError};
use crate::arith::is_prime;
use crate::elliptic::{curve_from_j, EllipticError, PointCounter};
use crate::field::{enumerate_field, field_build, FieldElement, FieldError};

/// Largest characteristic accepted by [`count_supersingular_classes`].
pub const SUPERSINGULAR_MAX_P: u64 = 100;

/// Largest `p` or `l` accepted, keeping `(l + 1)(p - 1)` inside `i64`.
pub const MODULAR_MAX: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("{0} exceeds the supported size 2^31")]
    TooLarge(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("l = {0} must exceed 3")]
    EllTooSmall(u64),
    #[error("p = {0} must be at least 5")]
    PrimeTooSmall(u64),
    #[error("p and l must differ (both {0})")]
    EqualPrimes(u64),
    #[error("l = {0} is not congruent to 11 mod 12")]
    CongruenceViolation(u64),
    #[error("p = {p} exceeds the scan budget p <= {max}")]
    BudgetExceeded { p: u64, max: u64 },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ag(#[from] AgError),
}

fn check_ell(ell: u64) -> Result<(), ModularError> {
    if ell > MODULAR_MAX {
        return Err(ModularError::TooLarge(ell));
    }
    if !is_prime(ell) {
        return Err(ModularError::NotPrime(ell));
    }
    if ell <= 3 {
        return Err(ModularError::EllTooSmall(ell));
    }
    Ok(())
}

fn check_p(p: u64) -> Result<(), ModularError> {
    if p > MODULAR_MAX {
        return Err(ModularError::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(ModularError::NotPrime(p));
    }
    if p < 5 {
        return Err(ModularError::PrimeTooSmall(p));
    }
    Ok(())
}

/// Genus of `X_0(l)` for a prime `l > 3`, by residue of `l` mod 12.
pub fn genus_x0(ell: u64) -> Result<u64, ModularError> {
    check_ell(ell)?;
    Ok(match ell % 12 {
        // (l - 1)/12 - 1, which is 0 for l = 13
        1 => (ell - 1) / 12 - 1,
        5 => (ell - 5) / 12,
        7 => (ell - 7) / 12,
        11 => (ell + 1) / 12,
        _ => unreachable!("primes above 3 are 1, 5, 7 or 11 mod 12"),
    })
}

/// Ramification of `pi : X_0(l) -> X_0(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct X0Data {
    pub ell: u64,
    pub genus: u64,
    /// `deg pi = l + 1`, the number of lines in `E[l]`.
    pub degree: u64,
    /// Points of index 2 above `j = 1728`.
    pub nu2: u64,
    /// Points of index 3 above `j = 0`.
    pub nu3: u64,
    pub unramified_over_1728: u64,
    pub unramified_over_0: u64,
    /// Ramification indices of the two cusps, summing to `l + 1`.
    pub cusp_indices: (u64, u64),
}

impl X0Data {
    /// Every ramification index >= 2 of `pi`, as fed to Riemann–Hurwitz.
    pub fn ramification_indices(&self) -> Vec<u64> {
        let mut ram = vec![2; self.nu2 as usize];
        ram.extend(std::iter::repeat_n(3, self.nu3 as usize));
        ram.extend(
            [self.cusp_indices.0, self.cusp_indices.1]
                .into_iter()
                .filter(|&e| e >= 2),
        );
        ram
    }

    /// Genus recomputed from the ramification profile.
    pub fn riemann_hurwitz_genus(&self) -> Result<u64, ModularError> {
        Ok(riemann_hurwitz_genus(
            self.degree,
            0,
            &self.ramification_indices(),
        )?)
    }
}

/// Ramification profile of `X_0(l) -> X_0(1)`; the cusps are reported as `(l, 1)`.
pub fn x0_ramification(ell: u64) -> Result<X0Data, ModularError> {
    let genus = genus_x0(ell)?;
    // an order-4 automorphism fixes 2 lines iff F_l has 4th roots of unity
    let (nu2, unramified_over_1728) = if ell % 4 == 1 {
        ((ell - 1) / 2, 2)
    } else {
        (ell.div_ceil(2), 0)
    };
    let (nu3, unramified_over_0) = if ell % 3 == 1 {
        ((ell - 1) / 3, 2)
    } else {
        ((ell + 1) / 3, 0)
    };
    Ok(X0Data {
        ell,
        genus,
        degree: ell + 1,
        nu2,
        nu3,
        unramified_over_1728,
        unramified_over_0,
        cusp_indices: (ell, 1),
    })
}

/// `floor(p/12) + {0, 1, 1, 2}` for `p = 1, 5, 7, 11 mod 12`.
pub fn supersingular_count_formula(p: u64) -> Result<u64, ModularError> {
    check_p(p)?;
    let extra = match p % 12 {
        1 => 0,
        5 | 7 => 1,
        11 => 2,
        _ => unreachable!("primes above 3 are 1, 5, 7 or 11 mod 12"),
    };
    Ok(p / 12 + extra)
}

/// Supersingular j-invariants found by scanning `F_(p^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularScan {
    pub p: u64,
    /// In field enumeration order.
    pub j_invariants: Vec<FieldElement>,
}

impl SupersingularScan {
    pub fn count(&self) -> u64 {
        self.j_invariants.len() as u64
    }

    pub fn contains_j(&self, j: i64) -> bool {
        self.j_invariants.iter().any(|x| *x == x.spec().from_int(j))
    }
}

/// For every `j0` in `F_(p^2)`, builds a curve with that j-invariant and tests
/// whether `p` divides its trace. Each class is counted once through its `j`.
pub fn count_supersingular_classes(p: u64) -> Result<SupersingularScan, ModularError> {
    check_p(p)?;
    if p > SUPERSINGULAR_MAX_P {
        return Err(ModularError::BudgetExceeded {
            p,
            max: SUPERSINGULAR_MAX_P,
        });
    }
    let field = field_build(p, 2)?;
    let q = field.order() as i64;
    let counter = PointCounter::new(&field)?;
    let mut j_invariants = Vec::new();
    for j0 in enumerate_field(&field)? {
        let curve = curve_from_j(field, j0)?;
        let trace = q + 1 - counter.count(&curve)? as i64;
        if trace % p as i64 == 0 {
            j_invariants.push(j0);
        }
    }
    Ok(SupersingularScan { p, j_invariants })
}

/// `(l + 1)(p - 1)/12`, exact.
pub fn ss_lower_bound(p: u64, ell: u64) -> Result<Ratio<i64>, ModularError> {
    check_p(p)?;
    check_ell(ell)?;
    if p == ell {
        return Err(ModularError::EqualPrimes(p));
    }
    Ok(Ratio::new((ell as i64 + 1) * (p as i64 - 1), 12))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IharaRow {
    pub ell: u64,
    pub genus: u64,
    pub ss_lower_bound: Ratio<i64>,
    /// `ss_lower_bound / genus`.
    pub ratio: Ratio<i64>,
}

/// Rows for `X_0(l)`, `l = 11 mod 12`, over `F_(p^2)`; every ratio equals `p - 1`.
pub fn ihara_table(p: u64, ells: &[u64]) -> Result<Vec<IharaRow>, ModularError> {
    ells.iter()
        .map(|&ell| {
            check_ell(ell)?;
            if ell % 12 != 11 {
                return Err(ModularError::CongruenceViolation(ell));
            }
            let bound = ss_lower_bound(p, ell)?;
            let genus = genus_x0(ell)?;
            Ok(IharaRow {
                ell,
                genus,
                ss_lower_bound: bound,
                ratio: bound / Ratio::from_integer(genus as i64),
            })
        })
        .collect()
}

/// The first `count` primes `l = 11 mod 12` other than `exclude`.
pub fn primes_11_mod_12(count: usize, exclude: u64) -> Vec<u64> {
    (11u64..)
        .step_by(12)
        .filter(|&l| l != exclude && is_prime(l))
        .take(count)
        .collect()
}

fn ratio_str(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub const IHARA_HEADER: &str = "ell,genus,lower_bound,ratio";

/// CSV with header `ell,genus,lower_bound,ratio`, rationals as `num/den`.
pub fn ihara_table_csv(rows: &[IharaRow]) -> String {
    let mut out = String::from(IHARA_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.ell,
            r.genus,
            ratio_str(&r.ss_lower_bound),
            ratio_str(&r.ratio)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(genus_x0(11).unwrap(), 1);
        assert_eq!(genus_x0(13).unwrap(), 0);
        assert_eq!(genus_x0(23).unwrap(), 2);
        assert_eq!(genus_x0(37).unwrap(), 2);
        assert_eq!(genus_x0(5).unwrap(), 0);
        assert_eq!(genus_x0(7).unwrap(), 0);
        assert_eq!(genus_x0(3), Err(ModularError::EllTooSmall(3)));
        assert_eq!(genus_x0(15), Err(ModularError::NotPrime(15)));
    }

    #[test]
    fn ramification_profiles() {
        let d = x0_ramification(11).unwrap();
        assert_eq!(
            (d.degree, d.nu2, d.nu3, d.cusp_indices),
            (12, 6, 4, (11, 1))
        );
        assert_eq!(d.riemann_hurwitz_genus().unwrap(), 1);

        let d = x0_ramification(5).unwrap();
        assert_eq!(d.riemann_hurwitz_genus().unwrap(), 0);

        let d = x0_ramification(13).unwrap();
        assert_eq!((d.unramified_over_1728, d.unramified_over_0), (2, 2));
        assert_eq!((d.nu2, d.nu3), (6, 4));
        assert_eq!(d.riemann_hurwitz_genus().unwrap(), 0);
        assert_eq!(d.genus, 0);
    }

    #[test]
    fn fibres_have_full_degree() {
        for ell in (5..200).filter(|&l| is_prime(l)) {
            let d = x0_ramification(ell).unwrap();
            assert_eq!(2 * d.nu2 + d.unramified_over_1728, d.degree);
            assert_eq!(3 * d.nu3 + d.unramified_over_0, d.degree);
            assert_eq!(d.cusp_indices.0 + d.cusp_indices.1, d.degree);
        }
    }

    #[test]
    fn supersingular_small_primes() {
        let s = count_supersingular_classes(11).unwrap();
        assert_eq!(s.count(), 2);
        assert!(s.contains_j(0) && s.contains_j(1728));
        let s = count_supersingular_classes(13).unwrap();
        assert_eq!(s.count(), 1);
        let s = count_supersingular_classes(5).unwrap();
        assert_eq!(s.count(), 1);
        assert!(s.contains_j(0));
        assert_eq!(
            count_supersingular_classes(4),
            Err(ModularError::NotPrime(4))
        );
        assert_eq!(
            count_supersingular_classes(3),
            Err(ModularError::PrimeTooSmall(3))
        );
        assert!(matches!(
            count_supersingular_classes(101),
            Err(ModularError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(ss_lower_bound(7, 11).unwrap(), Ratio::from_integer(6));
        assert_eq!(ss_lower_bound(13, 11).unwrap(), Ratio::from_integer(12));
        assert_eq!(ss_lower_bound(7, 13).unwrap(), Ratio::from_integer(7));
        assert_eq!(ss_lower_bound(5, 7).unwrap(), Ratio::new(8, 3));
        assert_eq!(ss_lower_bound(11, 11), Err(ModularError::EqualPrimes(11)));
        assert_eq!(ss_lower_bound(9, 11), Err(ModularError::NotPrime(9)));
    }

    #[test]
    fn ihara_rows() {
        let rows = ihara_table(7, &[11]).unwrap();
        assert_eq!(rows[0].genus, 1);
        assert_eq!(rows[0].ss_lower_bound, Ratio::from_integer(6));
        assert_eq!(rows[0].ratio, Ratio::from_integer(6));
        let rows = ihara_table(13, &[11]).unwrap();
        assert_eq!(rows[0].ratio, Ratio::from_integer(12));
        assert_eq!(
            ihara_table(7, &[13]),
            Err(ModularError::CongruenceViolation(13))
        );
        assert_eq!(ihara_table(11, &[11]), Err(ModularError::EqualPrimes(11)));
    }

    #[test]
    fn ihara_csv() {
        let rows = ihara_table(7, &[11, 23]).unwrap();
        assert_eq!(
            ihara_table_csv(&rows),
            "ell,genus,lower_bound,ratio\n11,1,6/1,6/1\n23,2,12/1,6/1\n"
        );
    }

    #[test]
    fn first_primes_11_mod_12() {
        assert_eq!(primes_11_mod_12(4, 7), vec![11, 23, 47, 59]);
        assert_eq!(primes_11_mod_12(4, 11), vec![23, 47, 59, 71]);
    }
}

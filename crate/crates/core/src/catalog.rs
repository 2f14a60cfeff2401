//! Worked examples with known invariants.
//!
//! Units: `π` is the atomic symbol `pi`, so `π²` is the monomial `pi^2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::exactalg::{Monomial, Rational, SymbolicReal, SymbolicSign};
use crate::monodromy::MappingClassRep;
use crate::orbits::DeRhamClass;
use crate::seifert::{diagonal_isotropy, IsotropyData, SeifertError};
use crate::spaces::SpacePresentation;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("HamiltonianAction: k = 0 gives a Hamiltonian action")]
    HamiltonianAction,
    #[error("NotCoprime: gcd({k}, {l}) != 1")]
    NotCoprime { k: i64, l: i64 },
    #[error("NonPositiveArea: {name} = {value} is not known to be positive")]
    NonPositiveArea { name: &'static str, value: String },
    #[error("PeriodsNotDiscrete: {first} and {second} are rationally independent")]
    PeriodsNotDiscrete { first: String, second: String },
    #[error("PeriodGeneratorMismatch: periods are generated by {expected}, got tau = {given}")]
    PeriodGeneratorMismatch { expected: String, given: String },
    #[error("PeriodsUndetermined: cannot compute a generator of ({first})Z + ({second})Z")]
    PeriodsUndetermined { first: String, second: String },
    #[error("NotRepresentable: {0}")]
    NotRepresentable(String),
    #[error("UnknownEntry: {0} (known: t2xs2, t2xt2, kodaira-thurston, t4-family)")]
    UnknownEntry(String),
    #[error("BadParameter: {0}")]
    BadParameter(String),
}

/// Areas `A, B` and velocities `k, ℓ` of a diagonal circle action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalParams {
    pub a: SymbolicReal,
    pub b: SymbolicReal,
    pub k: i64,
    pub l: i64,
}

impl DiagonalParams {
    pub fn new(a: SymbolicReal, b: SymbolicReal, k: i64, l: i64) -> Self {
        DiagonalParams { a, b, k, l }
    }

    fn check(&self) -> Result<(), CatalogError> {
        for (name, v) in [("A", &self.a), ("B", &self.b)] {
            if v.sign() != SymbolicSign::Positive {
                return Err(CatalogError::NonPositiveArea {
                    name,
                    value: v.to_string(),
                });
            }
        }
        if self.k.gcd(&self.l) != 1 {
            return Err(CatalogError::NotCoprime { k: self.k, l: self.l });
        }
        Ok(())
    }

    /// `k > 0`, `0 ≤ ℓ < k`, using the flips `(p, q) ↦ (−p, −q)` and
    /// `(h, θ) ↦ (−h, −θ)` and the fact that only `±ℓ mod k` matters.
    pub fn normalized(&self) -> Result<DiagonalParams, CatalogError> {
        if self.k == 0 {
            return Err(CatalogError::HamiltonianAction);
        }
        self.check()?;
        let k = self.k.abs();
        Ok(DiagonalParams {
            a: self.a.clone(),
            b: self.b.clone(),
            k,
            l: self.l.mod_floor(&k),
        })
    }
}

fn inv_two_pi() -> SymbolicReal {
    SymbolicReal::term(Rational::new(1.into(), 2.into()), Monomial::power("pi", -1))
}

fn two_pi() -> SymbolicReal {
    SymbolicReal::term(Rational::from_integer(2.into()), Monomial::symbol("pi"))
}

fn seifert(e: SeifertError) -> CatalogError {
    match e {
        SeifertError::NotCoprime { k, l } => CatalogError::NotCoprime { k, l },
        SeifertError::InvalidVelocity { .. } => CatalogError::HamiltonianAction,
        other => CatalogError::BadParameter(other.to_string()),
    }
}

/// `(T² × S², A dp∧dq + B/(4π) dh∧dθ)` with velocities `k/2π` and `ℓ`.
pub fn torus_times_sphere(params: &DiagonalParams) -> Result<SpacePresentation, CatalogError> {
    let p = params.normalized()?;
    let k = BigInt::from(p.k);
    let tau = p.a.scale_int(&k) * inv_two_pi();
    let c_dh = (two_pi() * p.b.clone()).scale(&Rational::new(1.into(), k));
    let isotropy = diagonal_isotropy(p.k, p.l).map_err(seifert)?;
    Ok(SpacePresentation::with_zero_classes(
        tau,
        c_dh,
        0,
        isotropy,
        MappingClassRep::IdentityClass,
    ))
}

/// Whether two diagonal actions on `T² × S²` are equivariantly symplectomorphic:
/// equal `k`, `ℓ ≡ ±ℓ′ (mod k)`, equal areas.
pub fn torus_sphere_equivalent(p: &DiagonalParams, q: &DiagonalParams) -> Result<bool, CatalogError> {
    let (p, q) = (p.normalized()?, q.normalized()?);
    let k = p.k;
    let same_class = (p.l - q.l).mod_floor(&k) == 0 || (p.l + q.l).mod_floor(&k) == 0;
    Ok(p.k == q.k && same_class && p.a == q.a && p.b == q.b)
}

/// Positive generator of `xZ + yZ`, when it can be determined.
pub fn period_generator(x: &SymbolicReal, y: &SymbolicReal) -> Result<SymbolicReal, CatalogError> {
    let abs = |v: &SymbolicReal| if v.sign() == SymbolicSign::Negative { -v } else { v.clone() };
    if y.is_zero() {
        return Ok(abs(x));
    }
    if x.is_zero() {
        return Ok(abs(y));
    }
    let undetermined = || CatalogError::PeriodsUndetermined {
        first: x.to_string(),
        second: y.to_string(),
    };
    let ratio = y.checked_div(x).ok_or_else(undetermined)?;
    match ratio.as_rational() {
        // xZ + (p/q)xZ = (x/q)(qZ + pZ) = (x/q)Z
        Some(r) => Ok(abs(&x.scale(&Rational::new(1.into(), r.denom().clone())))),
        None if ratio.as_single_term().is_some() => Err(CatalogError::PeriodsNotDiscrete {
            first: x.to_string(),
            second: y.to_string(),
        }),
        None => Err(undetermined()),
    }
}

/// Periods `Ak/2π` and `Bℓ/2π` of the diagonal action on `T² × T²`.
pub fn torus_torus_periods(params: &DiagonalParams) -> (SymbolicReal, SymbolicReal) {
    (
        params.a.scale_int(&BigInt::from(params.k)) * inv_two_pi(),
        params.b.scale_int(&BigInt::from(params.l)) * inv_two_pi(),
    )
}

/// `(T² × T², A dp₁∧dq₁ + B dp₂∧dq₂)` with velocities `k/2π`, `ℓ/2π`.
/// `tau` must generate the group of periods; it is checked when the
/// generator can be computed.
pub fn torus_times_torus(params: &DiagonalParams, tau: &SymbolicReal) -> Result<SpacePresentation, CatalogError> {
    if params.k == 0 && params.l == 0 {
        return Err(CatalogError::HamiltonianAction);
    }
    params.check()?;
    let (x, y) = torus_torus_periods(params);
    match period_generator(&x, &y) {
        Ok(expected) if &expected != tau => {
            return Err(CatalogError::PeriodGeneratorMismatch {
                expected: expected.to_string(),
                given: tau.to_string(),
            })
        }
        Ok(_) | Err(CatalogError::PeriodsUndetermined { .. }) => {}
        Err(e) => return Err(e),
    }
    let c_dh = (params.a.clone() * params.b.clone())
        .checked_div(tau)
        .ok_or_else(|| CatalogError::NotRepresentable(format!("A*B/tau with tau = {tau}")))?;
    Ok(SpacePresentation::with_zero_classes(
        tau.clone(),
        c_dh,
        1,
        IsotropyData::empty(),
        MappingClassRep::IdentityClass,
    ))
}

/// The Kodaira–Thurston manifold with the circle rotating `q₁`.
pub fn kodaira_thurston() -> SpacePresentation {
    SpacePresentation::with_zero_classes(
        inv_two_pi(),
        two_pi(),
        1,
        IsotropyData::empty(),
        MappingClassRep::torus_linear([[1, 1], [0, 1]]),
    )
}

/// `(T⁴, dp₁∧dq₁ + dp₂∧dq₂ + A dp₁∧dq₂ + B dp₁∧dp₂)` rotating `q₁`, with de
/// Rham class `(A, B)` relative to the standard torus.
pub fn t4_family(a: SymbolicReal, b: SymbolicReal) -> SpacePresentation {
    let mut p = SpacePresentation::with_zero_classes(
        inv_two_pi(),
        two_pi(),
        1,
        IsotropyData::empty(),
        MappingClassRep::IdentityClass,
    );
    p.derham = DeRhamClass::new(vec![a, b]);
    p
}

pub const ENTRY_NAMES: [&str; 4] = ["t2xs2", "t2xt2", "kodaira-thurston", "t4-family"];

fn symbolic_param(params: &BTreeMap<String, String>, key: &str, default: &str) -> Result<SymbolicReal, CatalogError> {
    let raw = params.get(key).map(String::as_str).unwrap_or(default);
    raw.parse()
        .map_err(|e| CatalogError::BadParameter(format!("{key} = {raw}: {e}")))
}

fn int_param(params: &BTreeMap<String, String>, key: &str, default: i64) -> Result<i64, CatalogError> {
    match params.get(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| CatalogError::BadParameter(format!("{key} = {raw} is not an integer"))),
    }
}

/// Looks up an entry by name. Parameters (all optional):
/// - `t2xs2`: `A` (default `2*pi`), `B` (`4*pi`), `k` (1), `l` (0);
/// - `t2xt2`: `A` (`2*pi`), `B` (`2*pi`), `k` (1), `l` (1), `tau` (the computed generator);
/// - `t4-family`: `A` (0), `B` (0).
pub fn entry(name: &str, params: &BTreeMap<String, String>) -> Result<SpacePresentation, CatalogError> {
    let allowed: &[&str] = match name {
        "t2xs2" => &["A", "B", "k", "l"],
        "t2xt2" => &["A", "B", "k", "l", "tau"],
        "kodaira-thurston" => &[],
        "t4-family" => &["A", "B"],
        other => return Err(CatalogError::UnknownEntry(other.to_string())),
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CatalogError::BadParameter(format!("{name} takes no parameter {k}")));
    }
    match name {
        "t2xs2" => torus_times_sphere(&DiagonalParams::new(
            symbolic_param(params, "A", "2*pi")?,
            symbolic_param(params, "B", "4*pi")?,
            int_param(params, "k", 1)?,
            int_param(params, "l", 0)?,
        )),
        "t2xt2" => {
            let d = DiagonalParams::new(
                symbolic_param(params, "A", "2*pi")?,
                symbolic_param(params, "B", "2*pi")?,
                int_param(params, "k", 1)?,
                int_param(params, "l", 1)?,
            );
            let tau = match params.get("tau") {
                Some(_) => symbolic_param(params, "tau", "")?,
                None => {
                    let (x, y) = torus_torus_periods(&d);
                    period_generator(&x, &y)?
                }
            };
            torus_times_torus(&d, &tau)
        }
        "kodaira-thurston" => Ok(kodaira_thurston()),
        _ => Ok(t4_family(symbolic_param(params, "A", "0")?, symbolic_param(params, "B", "0")?)),
    }
}

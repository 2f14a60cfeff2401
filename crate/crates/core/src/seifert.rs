//! Coprime residue classes, isotropy data and Seifert invariants of level
//! sets.
//!
//! A level set carries the Seifert invariant `{g; (1, b), (n₁, a₁), …}` with
//! Euler number `e = −b − Σ aⱼ/nⱼ`. Constancy of the Duistermaat–Heckman
//! measure forces `e = 0`, hence the realizability constraint
//! `Σ aⱼ/nⱼ ∈ Z` on the isotropy data.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::Rational;

/// The isotropy representation `(n, a)` of an orbit with stabilizer `Z_n`:
/// `n > 1`, `0 < a < n`, `gcd(n, a) = 1`.
///
/// Construction through [`CoprimeResidueClass::new`] enforces the
/// invariant; values read from documents are checked by
/// [`validate_isotropy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoprimeResidueClass {
    pub n: i64,
    pub a: i64,
}

impl CoprimeResidueClass {
    pub fn new(n: i64, a: i64) -> Result<Self, SeifertError> {
        let c = CoprimeResidueClass { n, a };
        match c.violation() {
            Some(v) => Err(SeifertError::InvalidIsotropy(vec![v])),
            None => Ok(c),
        }
    }

    fn violation(&self) -> Option<IsotropyViolation> {
        if self.n <= 1 || self.a <= 0 || self.a >= self.n {
            Some(IsotropyViolation::OutOfRange { n: self.n, a: self.a })
        } else if self.n.gcd(&self.a) != 1 {
            Some(IsotropyViolation::NonCoprime { n: self.n, a: self.a })
        } else {
            None
        }
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(self.a.into(), self.n.into())
    }
}

impl fmt::Display for CoprimeResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.a)
    }
}

/// Unordered multiset of coprime residue classes, stored sorted by `(n, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropyData(Vec<CoprimeResidueClass>);

impl IsotropyData {
    pub fn empty() -> Self {
        IsotropyData(Vec::new())
    }

    pub fn new<I: IntoIterator<Item = CoprimeResidueClass>>(classes: I) -> Self {
        let mut v: Vec<_> = classes.into_iter().collect();
        v.sort();
        IsotropyData(v)
    }

    /// Builds from raw `(n, a)` pairs without checking them.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(n, a)| CoprimeResidueClass { n, a }))
    }

    pub fn classes(&self) -> &[CoprimeResidueClass] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ aⱼ / nⱼ`, exact.
    pub fn ratio_sum(&self) -> Rational {
        self.0
            .iter()
            .filter(|c| c.n != 0)
            .fold(Rational::zero(), |acc, c| acc + c.ratio())
    }
}

impl fmt::Display for IsotropyData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IsotropyViolation {
    #[error("OutOfRange: ({n}, {a}) needs n > 1 and 0 < a < n")]
    OutOfRange { n: i64, a: i64 },
    #[error("NonCoprime: gcd({n}, {a}) != 1")]
    NonCoprime { n: i64, a: i64 },
    #[error("SumNotInteger: sum of a/n is {sum}")]
    SumNotInteger { sum: Rational },
}

impl IsotropyViolation {
    pub fn code(&self) -> &'static str {
        match self {
            IsotropyViolation::OutOfRange { .. } => "OutOfRange",
            IsotropyViolation::NonCoprime { .. } => "NonCoprime",
            IsotropyViolation::SumNotInteger { .. } => "SumNotInteger",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("invalid isotropy data: {}", join(.0))]
    InvalidIsotropy(Vec<IsotropyViolation>),
    #[error("NotCoprime: gcd({k}, {l}) != 1")]
    NotCoprime { k: i64, l: i64 },
    #[error("InvalidVelocity: k = {k} must be positive")]
    InvalidVelocity { k: i64 },
}

fn join(v: &[IsotropyViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Checks every class and the integrality of `Σ aⱼ/nⱼ`.
pub fn validate_isotropy(d: &IsotropyData) -> Result<(), Vec<IsotropyViolation>> {
    let mut violations: Vec<_> = d.0.iter().filter_map(|c| c.violation()).collect();
    if violations.is_empty() {
        let sum = d.ratio_sum();
        if !sum.is_integer() {
            violations.push(IsotropyViolation::SumNotInteger { sum });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// `{g; (1, b), (n₁, a₁), …, (n_k, a_k)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertInvariant {
    pub genus: u32,
    pub b: BigInt,
    pub exceptional: IsotropyData,
}

impl fmt::Display for SeifertInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}; (1, {})", self.genus, self.b)?;
        for c in self.exceptional.classes() {
            write!(f, ", {c}")?;
        }
        write!(f, "}}")
    }
}

/// `e = −b − Σ aⱼ/nⱼ`.
pub fn euler_number(s: &SeifertInvariant) -> Rational {
    -Rational::from_integer(s.b.clone()) - s.exceptional.ratio_sum()
}

/// The level-set invariant with `b = −Σ aⱼ/nⱼ`, the unique choice with
/// Euler number zero.
pub fn zero_euler_seifert(genus: u32, d: &IsotropyData) -> Result<SeifertInvariant, SeifertError> {
    validate_isotropy(d).map_err(SeifertError::InvalidIsotropy)?;
    Ok(SeifertInvariant {
        genus,
        b: -d.ratio_sum().to_integer(),
        exceptional: d.clone(),
    })
}

/// Isotropy data of the diagonal action on `T² × S²` rotating the torus
/// with velocity `k/2π` and the sphere with velocity `ℓ`: empty for `k = 1`,
/// otherwise `{(k, m), (k, k − m)}` with `m = ℓ mod k`.
pub fn diagonal_isotropy(k: i64, l: i64) -> Result<IsotropyData, SeifertError> {
    if k <= 0 {
        return Err(SeifertError::InvalidVelocity { k });
    }
    if l < 0 || k.gcd(&l) != 1 {
        return Err(SeifertError::NotCoprime { k, l });
    }
    if k == 1 {
        return Ok(IsotropyData::empty());
    }
    let m = l.mod_floor(&k);
    Ok(IsotropyData::new([
        CoprimeResidueClass { n: k, a: m },
        CoprimeResidueClass { n: k, a: k - m },
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seifert(genus: u32, b: i64, pairs: &[(i64, i64)]) -> SeifertInvariant {
        SeifertInvariant {
            genus,
            b: b.into(),
            exceptional: IsotropyData::from_pairs(pairs),
        }
    }

    #[test]
    fn euler_number_examples() {
        assert!(euler_number(&seifert(0, 0, &[])).is_zero());
        assert!(euler_number(&seifert(0, -1, &[(2, 1), (2, 1)])).is_zero());
        assert_eq!(
            euler_number(&seifert(1, 2, &[(3, 1)])),
            Rational::new((-7).into(), 3.into())
        );
    }

    #[test]
    fn validate_examples() {
        assert!(validate_isotropy(&IsotropyData::empty()).is_ok());
        assert!(validate_isotropy(&IsotropyData::from_pairs(&[(5, 2), (5, 3)])).is_ok());
        let err = validate_isotropy(&IsotropyData::from_pairs(&[(3, 1)])).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].code(), "SumNotInteger");
        let err = validate_isotropy(&IsotropyData::from_pairs(&[(4, 2), (1, 0), (3, 5), (3, 1)])).unwrap_err();
        let codes: Vec<_> = err.iter().map(IsotropyViolation::code).collect();
        assert_eq!(codes, vec!["OutOfRange", "OutOfRange", "NonCoprime"]);
    }

    #[test]
    fn zero_euler_examples() {
        let s = zero_euler_seifert(0, &IsotropyData::empty()).unwrap();
        assert_eq!(s.b, BigInt::zero());
        let s = zero_euler_seifert(0, &IsotropyData::from_pairs(&[(5, 2), (5, 3)])).unwrap();
        assert_eq!(s.b, BigInt::from(-1));
        assert!(euler_number(&s).is_zero());
        let s = zero_euler_seifert(2, &IsotropyData::from_pairs(&[(2, 1), (3, 2), (6, 5)])).unwrap();
        assert_eq!(s.b, BigInt::from(-2));
        assert!(euler_number(&s).is_zero());
        assert_eq!(s.to_string(), "{2; (1, -2), (2, 1), (3, 2), (6, 5)}");
        assert!(matches!(
            zero_euler_seifert(0, &IsotropyData::from_pairs(&[(4, 1)])),
            Err(SeifertError::InvalidIsotropy(_))
        ));
    }

    #[test]
    fn diagonal_examples() {
        assert!(diagonal_isotropy(1, 0).unwrap().is_empty());
        assert_eq!(
            diagonal_isotropy(5, 2).unwrap(),
            IsotropyData::from_pairs(&[(5, 2), (5, 3)])
        );
        assert_eq!(
            diagonal_isotropy(2, 1).unwrap(),
            IsotropyData::from_pairs(&[(2, 1), (2, 1)])
        );
        assert_eq!(diagonal_isotropy(4, 2), Err(SeifertError::NotCoprime { k: 4, l: 2 }));
        assert_eq!(diagonal_isotropy(0, 1), Err(SeifertError::InvalidVelocity { k: 0 }));
    }

    fn complementary_pairs() -> impl Strategy<Value = IsotropyData> {
        prop::collection::vec((2i64..40, 1i64..40), 0..6).prop_map(|raw| {
            let mut classes = Vec::new();
            for (n, a) in raw {
                let a = 1 + a % (n - 1);
                if n.gcd(&a) == 1 {
                    classes.push(CoprimeResidueClass { n, a });
                    classes.push(CoprimeResidueClass { n, a: n - a });
                }
            }
            IsotropyData::new(classes)
        })
    }

    proptest! {
        #[test]
        fn zero_euler_always_has_euler_zero(d in complementary_pairs(), g in 0u32..5) {
            let s = zero_euler_seifert(g, &d).unwrap();
            prop_assert!(euler_number(&s).is_zero());
        }

        #[test]
        fn diagonal_isotropy_is_valid(k in 1i64..200, l in 0i64..200) {
            prop_assume!(k.gcd(&l) == 1);
            prop_assert!(validate_isotropy(&diagonal_isotropy(k, l).unwrap()).is_ok());
        }

        #[test]
        fn euler_number_ignores_order(mut pairs in prop::collection::vec((2i64..20, 1i64..19), 0..6), b in -5i64..5) {
            pairs.retain(|(n, a)| a < n);
            let s1 = seifert(0, b, &pairs);
            pairs.reverse();
            let s2 = SeifertInvariant {
                genus: 0,
                b: b.into(),
                exceptional: IsotropyData(pairs.iter().map(|&(n, a)| CoprimeResidueClass { n, a }).collect()),
            };
            prop_assert_eq!(euler_number(&s1), euler_number(&s2));
        }
    }
}

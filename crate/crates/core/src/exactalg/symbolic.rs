//! Exact real numbers of the form `Σ qᵢ · mᵢ` with rational `qᵢ` and
//! Laurent monomials `mᵢ` in named positive symbols.
//!
//! Distinct monomials are treated as linearly independent over `Q`. This is
//! exact for `π` (transcendental, so `…, π⁻¹, 1, π, π², …` are independent)
//! and is the defining assumption for fresh symbols such as `A`, `B` or `r`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::smith::{solve_integer, IntegerSolution};
use super::{ExactAlgError, IntMatrix};

pub type Rational = BigRational;

/// A product of symbols with nonzero integer exponents; the empty product
/// is the constant monomial `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<String, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn symbol(name: &str) -> Self {
        Self::power(name, 1)
    }

    pub fn power(name: &str, exp: i32) -> Self {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(s, &e)| (s.as_str(), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            let v = out.get(s).copied().unwrap_or(0) + e;
            if v == 0 {
                out.remove(s);
            } else {
                out.insert(s.clone(), v);
            }
        }
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }
}

impl fmt::Display for Monomial {
    /// `1`, `pi`, `pi^2`, `A*pi^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, &e)| if e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl FromStr for Monomial {
    type Err = ExactAlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<i32>()
                        .map_err(|_| ExactAlgError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor.trim(), 1),
            };
            if !is_symbol(name) {
                return Err(ExactAlgError::Parse(format!("bad symbol `{name}`")));
            }
            m = m.mul(&Monomial::power(name, exp));
        }
        Ok(m)
    }
}

/// Sign of a symbolic value when every symbol is taken to be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolicSign {
    Zero,
    Positive,
    Negative,
    /// Coefficients of mixed sign: not decidable without numeric values.
    Undecidable,
}

/// Coefficient ring for span membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanRing {
    Z,
    Q,
}

/// An exact `Q`-linear combination of monomials. No zero coefficients are
/// stored, so the empty map is `0` and equality is coefficientwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicReal(BTreeMap<Monomial, Rational>);

impl SymbolicReal {
    pub fn zero() -> Self {
        SymbolicReal(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(q, Monomial::one())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(num.into(), den.into()))
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Rational::one(), Monomial::symbol(name))
    }

    pub fn pi() -> Self {
        Self::symbol("pi")
    }

    pub fn term(coeff: Rational, monomial: Monomial) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert(monomial, coeff);
        }
        SymbolicReal(m)
    }

    /// Builds a value from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = SymbolicReal::zero();
        for (m, q) in terms {
            out.add_term(m, q);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.0.entry(m).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The value as a rational number, if it has no symbolic part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some((q, m))` when the value is a single nonzero term `q · m`.
    pub fn as_single_term(&self) -> Option<(&Rational, &Monomial)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(m, q)| (q, m))
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return SymbolicReal::zero();
        }
        SymbolicReal(self.0.iter().map(|(m, c)| (m.clone(), c * q)).collect())
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&Rational::from_integer(n.clone()))
    }

    /// Division by a single-term value; `None` for zero or multi-term divisors.
    pub fn checked_div(&self, divisor: &SymbolicReal) -> Option<Self> {
        let (q, m) = divisor.as_single_term()?;
        let inv = SymbolicReal::term(q.recip(), m.inverse());
        Some(self * &inv)
    }

    pub fn sign(&self) -> SymbolicSign {
        if self.0.is_empty() {
            return SymbolicSign::Zero;
        }
        if self.0.values().all(Signed::is_positive) {
            SymbolicSign::Positive
        } else if self.0.values().all(Signed::is_negative) {
            SymbolicSign::Negative
        } else {
            SymbolicSign::Undecidable
        }
    }

    /// Decides whether `self` lies in the `ring`-span of `generators`.
    pub fn in_span(&self, generators: &[SymbolicReal], ring: SpanRing) -> bool {
        if self.is_zero() {
            return true;
        }
        match ring {
            SpanRing::Q => {
                let basis = monomial_basis(std::iter::once(self).chain(generators));
                let g = coefficient_rows(generators, &basis);
                let mut gx = g.clone();
                gx.push(coefficient_vector(self, &basis));
                rational_rank(&g) == rational_rank(&gx)
            }
            SpanRing::Z => integer_combination(self, generators).is_some(),
        }
    }
}

fn monomial_basis<'a, I: IntoIterator<Item = &'a SymbolicReal>>(values: I) -> Vec<Monomial> {
    let set: BTreeSet<&Monomial> = values.into_iter().flat_map(|v| v.monomials()).collect();
    set.into_iter().cloned().collect()
}

fn coefficient_vector(x: &SymbolicReal, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| x.coefficient(m)).collect()
}

fn coefficient_rows(values: &[SymbolicReal], basis: &[Monomial]) -> Vec<Vec<Rational>> {
    values.iter().map(|v| coefficient_vector(v, basis)).collect()
}

/// Rank over `Q` of a list of row vectors.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let prow = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &prow[c];
                for (x, y) in row[c..cols].iter_mut().zip(&prow[c..cols]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Integer coefficients `k` with `Σ kᵢ · generators[i] = x`, as the full
/// affine solution lattice, or `None` if `x` is outside the `Z`-span.
pub fn integer_combination(x: &SymbolicReal, generators: &[SymbolicReal]) -> Option<IntegerSolution> {
    let basis = monomial_basis(std::iter::once(x).chain(generators));
    // Common denominator turns the system into an integer one.
    let mut den = BigInt::one();
    for v in std::iter::once(x).chain(generators) {
        for (_, q) in v.terms() {
            den = den.lcm(q.denom());
        }
    }
    let scale = |q: Rational| -> BigInt { (q * Rational::from_integer(den.clone())).to_integer() };
    let mut entries = Vec::with_capacity(basis.len() * generators.len());
    for m in &basis {
        for g in generators {
            entries.push(scale(g.coefficient(m)));
        }
    }
    let g = IntMatrix::new(basis.len(), generators.len(), entries).expect("shape");
    let rhs: Vec<BigInt> = basis.iter().map(|m| scale(x.coefficient(m))).collect();
    solve_integer(&g, &rhs)
}

impl fmt::Display for SymbolicReal {
    /// `0`, `3/2`, `2*pi`, `1/2*pi^-1`, `A - 3*B + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.0.iter().enumerate() {
            let neg = q.is_negative();
            let abs = q.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

/// Splits `s` at top-level `+`/`-` signs (not those opening an exponent),
/// returning `(negated, chunk)` pairs.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut negated = false;
    let mut prev: Option<char> = None;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && prev != Some('^') {
            if prev.is_none() {
                negated = c == '-';
            } else {
                out.push((negated, &s[start..i]));
                negated = c == '-';
            }
            start = i + 1;
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    out.push((negated, &s[start..]));
    out
}

impl FromStr for SymbolicReal {
    type Err = ExactAlgError;

    /// Parses sums of products such as `2*pi`, `1/2*pi^-1` or `A - 3*B + 1`.
    /// Each product is `*`-separated rationals (`p` or `p/q`) and symbol
    /// powers (`x` or `x^e`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactAlgError::Parse(format!("cannot parse symbolic value `{s}`"));
        let mut out = SymbolicReal::zero();
        for (negated, chunk) in split_terms(s.trim()) {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(err());
            }
            let mut coeff = Rational::one();
            let mut mono = Monomial::one();
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if let Some(q) = parse_rational(factor) {
                    coeff *= q;
                } else {
                    mono = mono.mul(&factor.parse::<Monomial>().map_err(|_| err())?);
                }
            }
            out.add_term(mono, if negated { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Add for &SymbolicReal {
    type Output = SymbolicReal;

    fn add(self, rhs: &SymbolicReal) -> SymbolicReal {
        let mut out = self.clone();
        for (m, q) in &rhs.0 {
            out.add_term(m.clone(), q.clone());
        }
        out
    }
}

impl Add for SymbolicReal {
    type Output = SymbolicReal;

    fn add(self, rhs: SymbolicReal) -> SymbolicReal {
        &self + &rhs
    }
}

impl Sub for &SymbolicReal {
    type Output = SymbolicReal;

    fn sub(self, rhs: &SymbolicReal) -> SymbolicReal {
        self + &(-rhs)
    }
}

impl Sub for SymbolicReal {
    type Output = SymbolicReal;

    fn sub(self, rhs: SymbolicReal) -> SymbolicReal {
        &self - &rhs
    }
}

impl Neg for &SymbolicReal {
    type Output = SymbolicReal;

    fn neg(self) -> SymbolicReal {
        SymbolicReal(self.0.iter().map(|(m, q)| (m.clone(), -q)).collect())
    }
}

impl Neg for SymbolicReal {
    type Output = SymbolicReal;

    fn neg(self) -> SymbolicReal {
        -&self
    }
}

impl Mul for &SymbolicReal {
    type Output = SymbolicReal;

    fn mul(self, rhs: &SymbolicReal) -> SymbolicReal {
        let mut out = SymbolicReal::zero();
        for (m1, q1) in &self.0 {
            for (m2, q2) in &rhs.0 {
                out.add_term(m1.mul(m2), q1 * q2);
            }
        }
        out
    }
}

impl Mul for SymbolicReal {
    type Output = SymbolicReal;

    fn mul(self, rhs: SymbolicReal) -> SymbolicReal {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> SymbolicReal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["0", "3/2", "2*pi", "1/2*pi^-1", "-A + 1", "8*pi^2", "A*B*pi^-1"] {
            let v = sym(s);
            assert_eq!(sym(&v.to_string()), v, "{s}");
        }
        assert_eq!(sym("pi * 2 - pi"), SymbolicReal::pi());
        assert_eq!(sym("pi^-1*pi"), SymbolicReal::one());
        assert_eq!(sym("2*x^-2 - 1").to_string(), "-1 + 2*x^-2");
        assert!("".parse::<SymbolicReal>().is_err());
        assert!("2*".parse::<SymbolicReal>().is_err());
        assert!("1/0".parse::<SymbolicReal>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = sym("2*pi");
        let b = sym("4*pi");
        let prod = &a * &b;
        assert_eq!(prod, sym("8*pi^2"));
        let k = SymbolicReal::from_integer(5);
        assert_eq!(prod.checked_div(&k).unwrap(), sym("8/5*pi^2"));
        assert!(prod.checked_div(&sym("pi + 1")).is_none());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn signs() {
        assert_eq!(sym("0").sign(), SymbolicSign::Zero);
        assert_eq!(sym("1/2*pi^-1").sign(), SymbolicSign::Positive);
        assert_eq!(sym("-A - B").sign(), SymbolicSign::Negative);
        assert_eq!(sym("pi - 3").sign(), SymbolicSign::Undecidable);
    }

    #[test]
    fn span_membership() {
        let gens = [sym("1"), sym("c"), sym("tau")];
        assert!(SymbolicReal::zero().in_span(&gens, SpanRing::Z));
        assert!(!sym("r").in_span(&gens, SpanRing::Q));
        assert!(sym("3/2*pi").in_span(&[SymbolicReal::pi()], SpanRing::Q));
        assert!(!sym("3/2*pi").in_span(&[SymbolicReal::pi()], SpanRing::Z));
        assert!(sym("3*pi").in_span(&[sym("2*pi"), sym("5*pi")], SpanRing::Z));
        assert!(!sym("1").in_span(&[sym("2"), sym("4")], SpanRing::Z));
        assert!(sym("1/2").in_span(&[sym("3/2"), sym("1")], SpanRing::Z));
        assert!(sym("pi + 2").in_span(&[sym("pi + 1"), sym("1")], SpanRing::Z));
        assert!(!sym("pi").in_span(&[sym("pi + 1")], SpanRing::Q));
        assert!(!sym("x").in_span(&[], SpanRing::Q));
    }
}

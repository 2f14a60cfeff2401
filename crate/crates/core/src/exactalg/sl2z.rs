//! Conjugacy classification in `SL₂(Z)`.
//!
//! Every class has a canonical form:
//! - elliptic (`|trace| < 2` or `±I`): one of the ten finite-order classes;
//! - parabolic (`|trace| = 2`, not `±I`): `±[[1, n], [0, 1]]`, `n ≠ 0`;
//! - hyperbolic (`|trace| > 2`): `±` a positive word in
//!   `R = [[1, 1], [0, 1]]` and `L = [[1, 0], [1, 1]]`, up to rotation.
//!
//! Elliptic and parabolic classes are read off the invariant binary
//! quadratic form `Q_M(x, y) = det[v, M v] = c x² + (d − a) x y − b y²`,
//! which satisfies `Q_{P M P⁻¹}(P v) = Q_M(v)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactAlgError, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RlLetter {
    L,
    R,
}

impl RlLetter {
    pub fn matrix(self) -> Mat2 {
        match self {
            RlLetter::R => Mat2::from_i64(1, 1, 0, 1),
            RlLetter::L => Mat2::from_i64(1, 0, 1, 1),
        }
    }
}

/// A cyclic word over `{L, R}` stored in its lexicographically least
/// rotation (`L < R`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Vec<RlLetter>);

impl CyclicWord {
    pub fn new(mut letters: Vec<RlLetter>) -> Self {
        let n = letters.len();
        if n > 0 {
            let best = (0..n)
                .min_by(|&i, &j| {
                    letters[i..]
                        .iter()
                        .chain(&letters[..i])
                        .cmp(letters[j..].iter().chain(&letters[..j]))
                })
                .unwrap_or(0);
            letters.rotate_left(best);
        }
        CyclicWord(letters)
    }

    pub fn letters(&self) -> &[RlLetter] {
        &self.0
    }

    /// The product of the letters, left to right.
    pub fn product(&self) -> Mat2 {
        self.0
            .iter()
            .fold(Mat2::identity(), |acc, l| acc.mul(&l.matrix()))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == RlLetter::R { 'R' } else { 'L' })?;
        }
        Ok(())
    }
}

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self, ExactAlgError> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(ExactAlgError::NotTwoByTwo {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Mat2 {
            a: m[(0, 0)].clone(),
            b: m[(0, 1)].clone(),
            c: m[(1, 0)].clone(),
            d: m[(1, 1)].clone(),
        })
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            2,
            2,
            vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()],
        )
        .expect("2x2")
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `P⁻¹ · self · P` for `det P = 1`.
    pub fn conjugate_by(&self, p: &Mat2) -> Mat2 {
        p.inverse_sl2().mul(self).mul(p)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    fn is_minus_identity(&self) -> bool {
        self.neg().is_identity()
    }
}

/// Complete conjugacy invariant of an element of `SL₂(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sl2zCanonicalForm {
    /// Finite order `1, 2, 3, 4` or `6`, with a fixed class representative.
    Elliptic { order: u8, representative: IntMatrix },
    /// Conjugate to `sign · [[1, shear], [0, 1]]`, `shear ≠ 0`.
    Parabolic { sign: i8, shear: BigInt },
    /// Conjugate to `sign · w` for the positive cyclic word `w`.
    Hyperbolic { sign: i8, word: CyclicWord },
}

impl Sl2zCanonicalForm {
    /// A matrix in the class this form names.
    pub fn representative(&self) -> IntMatrix {
        match self {
            Sl2zCanonicalForm::Elliptic { representative, .. } => representative.clone(),
            Sl2zCanonicalForm::Parabolic { sign, shear } => {
                let s = BigInt::from(*sign);
                Mat2 {
                    a: s.clone(),
                    b: &s * shear,
                    c: BigInt::zero(),
                    d: s,
                }
                .to_matrix()
            }
            Sl2zCanonicalForm::Hyperbolic { sign, word } => {
                let p = word.product();
                if *sign < 0 { p.neg() } else { p }.to_matrix()
            }
        }
    }

    pub fn trace(&self) -> BigInt {
        self.representative().trace()
    }
}

impl fmt::Display for Sl2zCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &i8| if *s < 0 { "-" } else { "+" };
        match self {
            Sl2zCanonicalForm::Elliptic {
                order,
                representative,
            } => write!(f, "elliptic(order {order}, {representative})"),
            Sl2zCanonicalForm::Parabolic { sign: s, shear } => {
                write!(f, "parabolic({}, shear {shear})", sign(s))
            }
            Sl2zCanonicalForm::Hyperbolic { sign: s, word } => {
                write!(f, "hyperbolic({}, {word})", sign(s))
            }
        }
    }
}

fn elliptic(order: u8, a: i64, b: i64, c: i64, d: i64) -> Sl2zCanonicalForm {
    Sl2zCanonicalForm::Elliptic {
        order,
        representative: Mat2::from_i64(a, b, c, d).to_matrix(),
    }
}

pub fn sl2z_canonical_form(m: &IntMatrix) -> Result<Sl2zCanonicalForm, ExactAlgError> {
    let m = Mat2::from_matrix(m)?;
    let det = m.det();
    if !det.is_one() {
        return Err(ExactAlgError::NotUnimodular { determinant: det });
    }
    if m.is_identity() {
        return Ok(elliptic(1, 1, 0, 0, 1));
    }
    if m.is_minus_identity() {
        return Ok(elliptic(2, -1, 0, 0, -1));
    }
    let t = m.trace();
    let abs_t = t.abs();
    let two = BigInt::from(2);
    if abs_t < two {
        // c ≠ 0 since |trace| < 2; its sign is the sign of the definite form Q_M.
        let positive = m.c.is_positive();
        let t = i64::try_from(&t).expect("|trace| < 2");
        return Ok(match (t, positive) {
            (0, true) => elliptic(4, 0, -1, 1, 0),
            (0, false) => elliptic(4, 0, 1, -1, 0),
            (1, true) => elliptic(6, 1, -1, 1, 0),
            (1, false) => elliptic(6, 0, 1, -1, 1),
            (-1, true) => elliptic(3, -1, -1, 1, 0),
            (-1, false) => elliptic(3, 0, 1, -1, -1),
            _ => unreachable!(),
        });
    }
    let sign: i8 = if t.is_positive() { 1 } else { -1 };
    let n = if sign < 0 { m.neg() } else { m };
    if abs_t == two {
        // Q_N = −shear · ℓ² for a primitive linear form ℓ.
        let g = n.c.gcd(&(&n.d - &n.a)).gcd(&n.b);
        let shear = if !n.c.is_zero() {
            if n.c.is_positive() {
                -g
            } else {
                g
            }
        } else if n.b.is_positive() {
            g
        } else {
            -g
        };
        return Ok(Sl2zCanonicalForm::Parabolic { sign, shear });
    }
    let (positive, _) = positive_conjugate(&n);
    Ok(Sl2zCanonicalForm::Hyperbolic {
        sign,
        word: CyclicWord::new(factor_positive(&positive)),
    })
}

/// For `trace > 2`, returns `(N', P)` with `N' = P⁻¹ N P` having all
/// entries positive.
///
/// Works on `Q_N = (A, B, C) = (c, d − a, −b)`: `N'` is positive exactly
/// when `A > 0 > C`. While `A` and `C` share a sign, a shear `R^k` or `L^k`
/// reduces `|B|` below the smaller of `|A|`, `|C|`; a positive discriminant
/// then forces the other outer coefficient to shrink by a factor of four,
/// so `min(|A|, |C|)` strictly decreases.
pub fn positive_conjugate(n: &Mat2) -> (Mat2, Mat2) {
    debug_assert!(n.trace() > BigInt::from(2));
    let mut cur = n.clone();
    let mut p = Mat2::identity();
    let two = BigInt::from(2);
    loop {
        let a_form = cur.c.clone();
        let c_form = -&cur.b;
        if a_form.is_positive() && c_form.is_negative() {
            return (cur, p);
        }
        if a_form.is_negative() && c_form.is_positive() {
            let s = Mat2::from_i64(0, -1, 1, 0);
            cur = cur.conjugate_by(&s);
            p = p.mul(&s);
            continue;
        }
        let b_form = &cur.d - &cur.a;
        let step = if a_form.abs() <= c_form.abs() {
            // x → x + k y with |B + 2Ak| ≤ |A|.
            let k = round_div(&-&b_form, &(&two * &a_form));
            Mat2 {
                a: BigInt::one(),
                b: k,
                c: BigInt::zero(),
                d: BigInt::one(),
            }
        } else {
            // y → y + k x with |B + 2Ck| ≤ |C|.
            let k = round_div(&-&b_form, &(&two * &c_form));
            Mat2 {
                a: BigInt::one(),
                b: BigInt::zero(),
                c: k,
                d: BigInt::one(),
            }
        };
        cur = cur.conjugate_by(&step);
        p = p.mul(&step);
    }
}

/// Nearest integer to `num / den`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// Writes a nonnegative determinant-one matrix as a word in `R` and `L`.
pub fn factor_positive(m: &Mat2) -> Vec<RlLetter> {
    let mut cur = m.clone();
    let mut rev = Vec::new();
    while !cur.is_identity() {
        if cur.a >= cur.b && cur.c >= cur.d {
            // cur = cur' · L with cur' = cur · L⁻¹
            cur = Mat2 {
                a: &cur.a - &cur.b,
                b: cur.b.clone(),
                c: &cur.c - &cur.d,
                d: cur.d.clone(),
            };
            rev.push(RlLetter::L);
        } else {
            cur = Mat2 {
                a: cur.a.clone(),
                b: &cur.b - &cur.a,
                c: cur.c.clone(),
                d: &cur.d - &cur.c,
            };
            rev.push(RlLetter::R);
        }
    }
    rev.reverse();
    rev
}

//! Orbits of the fibration and de Rham classes under the symmetry groups of
//! a fixed model space.
//!
//! Complete contexts:
//! - trivial quotient `H¹/image(f₁ − I)` (every class is the zero class);
//! - genus 1, free, identity monodromy (`SL₂(Z)` acting on `Z²`, resp. on
//!   `R²` modulo the period lattice `c_DH·Z + τ·Z`);
//! - genus 1, free, monodromy conjugate to `[[1, 1], [0, 1]]` (fibration only).
//!
//! Everything else answers [`Verdict::Undecided`] unless the classes are equal.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{
    integer_combination, sl2z_canonical_form, smith_normal_form, Cokernel, IntMatrix, Mat2,
    SpanRing, Sl2zCanonicalForm, SymbolicReal,
};
use crate::monodromy::{induced_h1, LabeledSurface, MappingClassRep, MonodromyError, Verdict};
use crate::seifert::IsotropyData;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("ContextMismatch: {0}")]
    ContextMismatch(String),
    #[error("NotUnimodular: ad - bc = {determinant}")]
    NotUnimodular { determinant: BigInt },
}

impl From<MonodromyError> for OrbitError {
    fn from(e: MonodromyError) -> Self {
        OrbitError::ContextMismatch(e.to_string())
    }
}

/// Limits for the searches that back up the exact procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of `R^±1`, `L^±1` letters in a searched `SL₂(Z)` word.
    pub word_length: usize,
    /// Bound on integer shifts and on vector entries visited by searches.
    pub shift: u64,
    /// Residue pairs enumerated by the exact de Rham decision before it gives
    /// way to the bounded search.
    pub residue_pairs: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            word_length: 12,
            shift: 50,
            residue_pairs: 1_000_000,
        }
    }
}

impl SearchBudget {
    /// Same bound for word length and shifts.
    pub fn uniform(b: u64) -> Self {
        SearchBudget {
            word_length: b as usize,
            shift: b,
            ..SearchBudget::default()
        }
    }
}

/// An element of `H¹(Σ_g, Z)/image(f₁ − I)` in the canonical cokernel basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibrationClass {
    pub coords: Vec<BigInt>,
}

impl FibrationClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        FibrationClass { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        FibrationClass::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        FibrationClass::new(vec![BigInt::zero(); len])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for FibrationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An element of `H¹(Σ_g, R)/image(f₁ − I)`; torsion dies over `R`, so only
/// the free coordinates are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeRhamClass {
    pub coords: Vec<SymbolicReal>,
}

impl DeRhamClass {
    pub fn new(coords: Vec<SymbolicReal>) -> Self {
        DeRhamClass { coords }
    }

    pub fn zero(len: usize) -> Self {
        DeRhamClass::new(vec![SymbolicReal::zero(); len])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(SymbolicReal::is_zero)
    }
}

impl fmt::Display for DeRhamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which orbit description applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitRegime {
    TrivialQuotient,
    TorusIdentity,
    TorusKodaira,
    General,
}

/// The surface and monodromy the classes live over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitContext {
    pub surface: LabeledSurface,
    pub monodromy: MappingClassRep,
}

impl OrbitContext {
    pub fn new(genus: u32, isotropy: IsotropyData, monodromy: MappingClassRep) -> Self {
        OrbitContext {
            surface: LabeledSurface::new(genus, isotropy),
            monodromy,
        }
    }

    pub fn f1_minus_identity(&self) -> IntMatrix {
        let f1 = induced_h1(&self.monodromy, &self.surface);
        &f1 - &IntMatrix::identity(f1.rows())
    }

    pub fn cokernel(&self) -> Cokernel {
        Cokernel::new(&self.f1_minus_identity())
    }

    pub fn regime(&self) -> Result<OrbitRegime, OrbitError> {
        self.monodromy.validate(&self.surface)?;
        let coker = self.cokernel();
        if coker.structure().is_trivial() {
            return Ok(OrbitRegime::TrivialQuotient);
        }
        if self.surface.genus != 1 || !self.surface.labels.is_empty() {
            return Ok(OrbitRegime::General);
        }
        let f1 = induced_h1(&self.monodromy, &self.surface);
        if f1.is_identity() {
            return Ok(OrbitRegime::TorusIdentity);
        }
        let kodaira = Sl2zCanonicalForm::Parabolic {
            sign: 1,
            shear: BigInt::one(),
        };
        match sl2z_canonical_form(&f1) {
            Ok(form) if form == kodaira => Ok(OrbitRegime::TorusKodaira),
            _ => Ok(OrbitRegime::General),
        }
    }

    /// Checks length and torsion ranges of a fibration class.
    pub fn check_fibration(&self, c: &FibrationClass) -> Result<(), OrbitError> {
        let coker = self.cokernel();
        let s = coker.structure();
        if c.coords.len() != s.generator_count() {
            return Err(OrbitError::ContextMismatch(format!(
                "fibration class has {} coordinates, quotient {s} needs {}",
                c.coords.len(),
                s.generator_count()
            )));
        }
        if coker.normalize(&c.coords) != c.coords {
            return Err(OrbitError::ContextMismatch(format!(
                "fibration class {c} has torsion coordinates outside [0, d) for {s}"
            )));
        }
        Ok(())
    }

    pub fn check_derham(&self, x: &DeRhamClass) -> Result<(), OrbitError> {
        let free = self.cokernel().structure().free_rank;
        if x.coords.len() != free {
            return Err(OrbitError::ContextMismatch(format!(
                "de Rham class has {} coordinates, quotient has free rank {free}",
                x.coords.len()
            )));
        }
        Ok(())
    }
}

/// Result of canonicalizing a fibration class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibrationCanonical {
    Canonical(FibrationClass),
    Undecided(String),
}

pub fn fibration_orbit_canonical(
    c: &FibrationClass,
    ctx: &OrbitContext,
) -> Result<FibrationCanonical, OrbitError> {
    let regime = ctx.regime()?;
    ctx.check_fibration(c)?;
    Ok(match regime {
        OrbitRegime::TrivialQuotient => FibrationCanonical::Canonical(FibrationClass::zero(0)),
        OrbitRegime::TorusIdentity => {
            let g = c.coords[0].gcd(&c.coords[1]);
            FibrationCanonical::Canonical(FibrationClass::new(vec![g, BigInt::zero()]))
        }
        OrbitRegime::TorusKodaira => {
            FibrationCanonical::Canonical(FibrationClass::new(vec![c.coords[0].abs()]))
        }
        OrbitRegime::General => FibrationCanonical::Undecided(format!(
            "no orbit description for fibration classes over genus {} with {} marked points and monodromy {}",
            ctx.surface.genus,
            ctx.surface.marked_points(),
            ctx.monodromy
        )),
    })
}

pub fn fibration_orbit_verdict(
    c1: &FibrationClass,
    c2: &FibrationClass,
    ctx: &OrbitContext,
) -> Result<Verdict, OrbitError> {
    let k1 = fibration_orbit_canonical(c1, ctx)?;
    let k2 = fibration_orbit_canonical(c2, ctx)?;
    Ok(match (k1, k2) {
        (FibrationCanonical::Canonical(a), FibrationCanonical::Canonical(b)) => {
            if a == b {
                Verdict::Equivalent
            } else {
                let (x, y) = if a <= b { (a, b) } else { (b, a) };
                Verdict::Distinct(format!("canonical fibration representatives differ: {x} vs {y}"))
            }
        }
        (FibrationCanonical::Undecided(reason), _) | (_, FibrationCanonical::Undecided(reason)) => {
            if c1 == c2 {
                Verdict::Equivalent
            } else {
                Verdict::Undecided(reason)
            }
        }
    })
}

/// `(x, y) · g` for a row vector.
pub fn act_row(v: &[BigInt; 2], g: &Mat2) -> [BigInt; 2] {
    [&v[0] * &g.a + &v[1] * &g.c, &v[0] * &g.b + &v[1] * &g.d]
}

fn search_letters() -> [Mat2; 5] {
    [
        Mat2::from_i64(1, 1, 0, 1),
        Mat2::from_i64(1, -1, 0, 1),
        Mat2::from_i64(1, 0, 1, 1),
        Mat2::from_i64(1, 0, -1, 1),
        Mat2::from_i64(0, -1, 1, 0),
    ]
}

/// Breadth-first search for `g ∈ SL₂(Z)` with `from · g = to`, walking over
/// vectors whose entries stay within `budget.shift`. Deterministic: the
/// first shortest word in the letter order `R, R⁻¹, L, L⁻¹, S` wins.
pub fn fibration_connecting_matrix(
    from: &[BigInt; 2],
    to: &[BigInt; 2],
    budget: &SearchBudget,
) -> Option<Mat2> {
    let bound = BigInt::from(budget.shift);
    let letters = search_letters();
    let mut seen: HashMap<[BigInt; 2], Mat2> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(from.clone(), Mat2::identity());
    queue.push_back(from.clone());
    while let Some(v) = queue.pop_front() {
        let g = seen[&v].clone();
        if &v == to {
            return Some(g);
        }
        for l in &letters {
            let w = act_row(&v, l);
            if w.iter().any(|x| x.abs() > bound) || seen.contains_key(&w) {
                continue;
            }
            seen.insert(w.clone(), g.mul(l));
            queue.push_back(w);
        }
    }
    None
}

/// Parameters of a symmetry of the genus-1 identity model acting on de Rham
/// classes: `g = [[a, b], [c, d]] ∈ SL₂(Z)` and integer shifts `e, f, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeRhamAction {
    pub g: Mat2,
    pub e: BigInt,
    pub f: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl DeRhamAction {
    pub fn identity() -> Self {
        DeRhamAction {
            g: Mat2::identity(),
            e: BigInt::zero(),
            f: BigInt::zero(),
            y: BigInt::zero(),
            z: BigInt::zero(),
        }
    }

    pub fn from_i64(abcd: [i64; 4], efyz: [i64; 4]) -> Self {
        let [a, b, c, d] = abcd;
        let [e, f, y, z] = efyz.map(BigInt::from);
        DeRhamAction {
            g: Mat2::from_i64(a, b, c, d),
            e,
            f,
            y,
            z,
        }
    }

    /// The `c_DH` shift vector `(ec − af, ed − bf)`.
    pub fn dh_shift(&self) -> [BigInt; 2] {
        let g = &self.g;
        [
            &self.e * &g.c - &g.a * &self.f,
            &self.e * &g.d - &g.b * &self.f,
        ]
    }

    /// Parameters with the given `g`, `c_DH` shift `(u, v)` and `τ` shift.
    pub fn from_shifts(g: Mat2, u: &BigInt, v: &BigInt, y: BigInt, z: BigInt) -> Self {
        // [[c, −a], [d, −b]] has inverse [[−b, a], [−d, c]].
        let e = -&g.b * u + &g.a * v;
        let f = -&g.d * u + &g.c * v;
        DeRhamAction { g, e, f, y, z }
    }

    /// The action of `self` followed by `next`.
    pub fn then(&self, next: &DeRhamAction) -> DeRhamAction {
        let g = self.g.mul(&next.g);
        let [u1, v1] = act_row(&self.dh_shift(), &next.g);
        let [u2, v2] = next.dh_shift();
        let [y1, z1] = act_row(&[self.y.clone(), self.z.clone()], &next.g);
        DeRhamAction::from_shifts(g, &(u1 + u2), &(v1 + v2), y1 + &next.y, z1 + &next.z)
    }
}

impl fmt::Display for DeRhamAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g = {}, e = {}, f = {}, y = {}, z = {}",
            self.g.to_matrix(),
            self.e,
            self.f,
            self.y,
            self.z
        )
    }
}

/// `s′ = sa + tc + c_DH(ec − af) + yτ`, `t′ = sb + td + c_DH(ed − bf) + zτ`.
pub fn derham_action(
    s: &SymbolicReal,
    t: &SymbolicReal,
    p: &DeRhamAction,
    c_dh: &SymbolicReal,
    tau: &SymbolicReal,
) -> Result<(SymbolicReal, SymbolicReal), OrbitError> {
    let det = p.g.det();
    if !det.is_one() {
        return Err(OrbitError::NotUnimodular { determinant: det });
    }
    let g = &p.g;
    let [u, v] = p.dh_shift();
    let s2 = s.scale_int(&g.a) + t.scale_int(&g.c) + c_dh.scale_int(&u) + tau.scale_int(&p.y);
    let t2 = s.scale_int(&g.b) + t.scale_int(&g.d) + c_dh.scale_int(&v) + tau.scale_int(&p.z);
    Ok((s2, t2))
}

/// Outcome of comparing de Rham classes, with a connecting action when found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamDecision {
    pub verdict: Verdict,
    pub witness: Option<DeRhamAction>,
}

impl DeRhamDecision {
    fn plain(verdict: Verdict) -> Self {
        DeRhamDecision { verdict, witness: None }
    }
}

pub fn derham_orbit_verdict(
    x: &DeRhamClass,
    x2: &DeRhamClass,
    c_dh: &SymbolicReal,
    tau: &SymbolicReal,
    ctx: &OrbitContext,
    budget: &SearchBudget,
) -> Result<DeRhamDecision, OrbitError> {
    let regime = ctx.regime()?;
    ctx.check_derham(x)?;
    ctx.check_derham(x2)?;
    if x == x2 {
        let witness = (regime == OrbitRegime::TorusIdentity).then(DeRhamAction::identity);
        return Ok(DeRhamDecision {
            verdict: Verdict::Equivalent,
            witness,
        });
    }
    match regime {
        OrbitRegime::TrivialQuotient => Ok(DeRhamDecision::plain(Verdict::Equivalent)),
        OrbitRegime::TorusIdentity => Ok(torus_identity_decision(x, x2, c_dh, tau, budget)),
        OrbitRegime::TorusKodaira | OrbitRegime::General => Ok(DeRhamDecision::plain(Verdict::Undecided(
            format!(
                "no orbit description for de Rham classes over genus {} with monodromy {}",
                ctx.surface.genus, ctx.monodromy
            ),
        ))),
    }
}

fn module_description(s: &SymbolicReal, t: &SymbolicReal) -> String {
    format!("<{s}, {t}>")
}

/// Exact decision for `(s, t) ~ (s′, t′)` modulo `SL₂(Z)` and `Λ = c_DH·Z + τ·Z`.
///
/// The symmetries act by `(s, t) ↦ (s, t)·g + λ` with `λ ∈ Λ²`, since
/// `(ec − af, ed − bf)` runs over all of `Z²`. Solving the first coordinate
/// equation over `Z` leaves the first column of `g` in a coset `p + K` of a
/// lattice `K ⊂ Z²`; the second column lies in `q + K` for the same `K`.
/// What remains is whether `det = 1` is attained on `(p + K) × (q + K)`.
fn torus_identity_decision(
    x: &DeRhamClass,
    x2: &DeRhamClass,
    c_dh: &SymbolicReal,
    tau: &SymbolicReal,
    budget: &SearchBudget,
) -> DeRhamDecision {
    let (s, t) = (&x.coords[0], &x.coords[1]);
    let (s2, t2) = (&x2.coords[0], &x2.coords[1]);

    let gens1 = [s.clone(), t.clone(), c_dh.clone(), tau.clone()];
    let gens2 = [s2.clone(), t2.clone(), c_dh.clone(), tau.clone()];
    let covered = |a: &[SymbolicReal], gens: &[SymbolicReal]| a.iter().all(|v| v.in_span(gens, SpanRing::Z));
    if !covered(&gens2[..2], &gens1) || !covered(&gens1[..2], &gens2) {
        let (m1, m2) = (module_description(s, t), module_description(s2, t2));
        let (a, b) = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
        return DeRhamDecision::plain(Verdict::Distinct(format!(
            "the Z-modules generated together with c_DH and tau differ: {a} vs {b}"
        )));
    }
    let no_matrix = || {
        DeRhamDecision::plain(Verdict::Distinct(
            "no SL2(Z) matrix relates the classes modulo c_DH*Z + tau*Z".to_string(),
        ))
    };
    let (Some(sol1), Some(sol2)) = (integer_combination(s2, &gens1), integer_combination(t2, &gens1)) else {
        return no_matrix();
    };
    let p = [sol1.particular[0].clone(), sol1.particular[1].clone()];
    let q = [sol2.particular[0].clone(), sol2.particular[1].clone()];
    let lattice = ColumnLattice::new(&sol1.kernel);

    let found = match lattice.basis.len() {
        0 => (det2(&p, &q).is_one()).then(|| column_matrix(&p, &q)),
        1 => rank_one_solution(&p, &q, &lattice.basis[0]),
        _ => match lattice.rank_two_solution(&p, &q, budget.residue_pairs) {
            Some(found) => found,
            None => {
                return bounded_search(s, t, s2, t2, c_dh, tau, &p, &q, &lattice, budget);
            }
        },
    };
    match found {
        Some(g) => DeRhamDecision {
            verdict: Verdict::Equivalent,
            witness: Some(complete_action(g, s, t, s2, t2, c_dh, tau)),
        },
        None => no_matrix(),
    }
}

fn det2(x: &[BigInt; 2], y: &[BigInt; 2]) -> BigInt {
    &x[0] * &y[1] - &y[0] * &x[1]
}

fn column_matrix(x: &[BigInt; 2], y: &[BigInt; 2]) -> Mat2 {
    Mat2 {
        a: x[0].clone(),
        b: y[0].clone(),
        c: x[1].clone(),
        d: y[1].clone(),
    }
}

/// `(p + i·w, q + j·w)` with determinant 1: linear in `i, j` since `det(w, w) = 0`.
fn rank_one_solution(p: &[BigInt; 2], q: &[BigInt; 2], w: &[BigInt; 2]) -> Option<Mat2> {
    let alpha = det2(w, q);
    let beta = det2(p, w);
    let rhs = BigInt::one() - det2(p, q);
    let eg = alpha.extended_gcd(&beta);
    let (i, j) = if eg.gcd.is_zero() {
        if !rhs.is_zero() {
            return None;
        }
        (BigInt::zero(), BigInt::zero())
    } else {
        if !rhs.is_multiple_of(&eg.gcd) {
            return None;
        }
        let k = &rhs / &eg.gcd;
        (eg.x * &k, eg.y * &k)
    };
    let x = [&p[0] + &i * &w[0], &p[1] + &i * &w[1]];
    let y = [&q[0] + &j * &w[0], &q[1] + &j * &w[1]];
    Some(column_matrix(&x, &y))
}

/// The lattice spanned by the first two coordinates of kernel vectors.
struct ColumnLattice {
    basis: Vec<[BigInt; 2]>,
    /// Invariant factors and the unimodular change of basis `U⁻¹` with
    /// `K = U⁻¹ · diag(d)·Z²`.
    factors: Vec<BigInt>,
    u_inv: IntMatrix,
    u: IntMatrix,
}

impl ColumnLattice {
    fn new(kernel: &[Vec<BigInt>]) -> Self {
        let mut entries = Vec::with_capacity(2 * kernel.len());
        for row in 0..2 {
            for v in kernel {
                entries.push(v[row].clone());
            }
        }
        let m = IntMatrix::new(2, kernel.len(), entries).expect("shape");
        let snf = smith_normal_form(&m);
        let factors: Vec<BigInt> = snf.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
        let u_inv = snf.u_inverse().clone();
        let basis = factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let col = u_inv.column(i);
                [&col[0] * d, &col[1] * d]
            })
            .collect();
        ColumnLattice {
            basis,
            factors,
            u_inv,
            u: snf.u,
        }
    }

    fn contains(&self, v: &[BigInt; 2]) -> bool {
        let y = self.u.apply(v);
        y.iter().enumerate().all(|(i, yi)| match self.factors.get(i) {
            Some(d) => yi.is_multiple_of(d),
            None => yi.is_zero(),
        })
    }

    /// `Some(answer)` when the residue enumeration fits in `cap`.
    fn rank_two_solution(&self, p: &[BigInt; 2], q: &[BigInt; 2], cap: u64) -> Option<Option<Mat2>> {
        let (d0, d1) = (&self.factors[0], &self.factors[1]);
        let m = d1.clone(); // d0 | d1, so m·Z² ⊂ K
        let (n0, n1) = (&m / d0, &m / d1);
        let count = &n0 * &n1;
        if count.clone() * &count > BigInt::from(cap) {
            return None;
        }
        let residues = |base: &[BigInt; 2]| -> Vec<[BigInt; 2]> {
            let mut out = Vec::new();
            let mut i = BigInt::zero();
            while i < n0 {
                let mut j = BigInt::zero();
                while j < n1 {
                    let k = self.u_inv.apply(&[&i * d0, &j * d1]);
                    out.push([(&base[0] + &k[0]).mod_floor(&m), (&base[1] + &k[1]).mod_floor(&m)]);
                    j += 1;
                }
                i += 1;
            }
            out
        };
        let (xs, ys) = (residues(p), residues(q));
        for x in &xs {
            for y in &ys {
                if (det2(x, y) - 1i32).is_multiple_of(&m) {
                    return Some(Some(lift_sl2(&column_matrix(x, y), &m)));
                }
            }
        }
        Some(None)
    }
}

/// A matrix in `SL₂(Z)` congruent to `g` modulo `m`, given `det g ≡ 1 (mod m)`.
pub fn lift_sl2(g: &Mat2, m: &BigInt) -> Mat2 {
    let r = |x: &BigInt| x.mod_floor(m);
    let (a, b) = (r(&g.a), r(&g.b));
    let c = if r(&g.c).is_zero() { m.clone() } else { r(&g.c) };
    let mut d = r(&g.d);
    while !c.gcd(&d).is_one() {
        d += m;
    }
    // a'·d − b'·c = 1
    let eg = d.extended_gcd(&c);
    let (a1, b1) = (eg.x, -eg.y);
    let t = (&b - &b1) * &a1 - (&a - &a1) * &b1;
    let lifted = Mat2 {
        a: &a1 + &t * &c,
        b: &b1 + &t * &d,
        c,
        d,
    };
    debug_assert!(lifted.det().is_one());
    lifted
}

/// Fills in the shifts once `g` is known to work.
fn complete_action(
    g: Mat2,
    s: &SymbolicReal,
    t: &SymbolicReal,
    s2: &SymbolicReal,
    t2: &SymbolicReal,
    c_dh: &SymbolicReal,
    tau: &SymbolicReal,
) -> DeRhamAction {
    let [gs, gt] = [
        s.scale_int(&g.a) + t.scale_int(&g.c),
        s.scale_int(&g.b) + t.scale_int(&g.d),
    ];
    let lattice = [c_dh.clone(), tau.clone()];
    let r1 = integer_combination(&(s2 - &gs), &lattice).expect("first shift in the period lattice");
    let r2 = integer_combination(&(t2 - &gt), &lattice).expect("second shift in the period lattice");
    let [u, y] = [r1.particular[0].clone(), r1.particular[1].clone()];
    let [v, z] = [r2.particular[0].clone(), r2.particular[1].clone()];
    DeRhamAction::from_shifts(g, &u, &v, y, z)
}

#[allow(clippy::too_many_arguments)]
fn bounded_search(
    s: &SymbolicReal,
    t: &SymbolicReal,
    s2: &SymbolicReal,
    t2: &SymbolicReal,
    c_dh: &SymbolicReal,
    tau: &SymbolicReal,
    p: &[BigInt; 2],
    q: &[BigInt; 2],
    lattice: &ColumnLattice,
    budget: &SearchBudget,
) -> DeRhamDecision {
    let letters = &search_letters()[..4];
    let bound = BigInt::from(budget.shift);
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![Mat2::identity()];
    seen.insert(Mat2::identity());
    for depth in 0..=budget.word_length {
        for g in &frontier {
            let x = [&g.a - &p[0], &g.c - &p[1]];
            let y = [&g.b - &q[0], &g.d - &q[1]];
            if lattice.contains(&x) && lattice.contains(&y) {
                let action = complete_action(g.clone(), s, t, s2, t2, c_dh, tau);
                let shifts = [&action.e, &action.f, &action.y, &action.z];
                if shifts.iter().all(|v| v.abs() <= bound) {
                    return DeRhamDecision {
                        verdict: Verdict::Equivalent,
                        witness: Some(action),
                    };
                }
            }
        }
        if depth == budget.word_length {
            break;
        }
        let mut next = Vec::new();
        for g in &frontier {
            for l in letters {
                let h = g.mul(l);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    DeRhamDecision::plain(Verdict::Undecided(format!(
        "residue enumeration too large and no connecting action within {} letters and shifts up to {}",
        budget.word_length, budget.shift
    )))
}

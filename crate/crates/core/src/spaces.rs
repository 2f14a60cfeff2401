//! Presentations of four-dimensional circle-valued Hamiltonian `S¹`-spaces by
//! their seven invariants, validation, canonical models and the
//! isomorphism decision.

use std::fmt;

use thiserror::Error;

use crate::exactalg::{SymbolicReal, SymbolicSign};
use crate::monodromy::{
    complete_invariant, conjugacy_verdict, induced_h1, LabeledSurface, MappingClassRep,
    MonodromyInvariant, Verdict,
};
use crate::orbits::{
    derham_orbit_verdict, fibration_orbit_canonical, DeRhamAction, DeRhamClass,
    FibrationCanonical, FibrationClass, OrbitContext, OrbitRegime, SearchBudget,
};
use crate::seifert::{validate_isotropy, zero_euler_seifert, IsotropyData, IsotropyViolation, SeifertInvariant};
use crate::torusbundle::{condition_one_holds, quotient_cohomology};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpacePresentation {
    /// Positive generator of the group of periods `P = τZ`.
    pub tau: SymbolicReal,
    /// Duistermaat–Heckman constant.
    pub c_dh: SymbolicReal,
    pub genus: u32,
    pub isotropy: IsotropyData,
    pub monodromy: MappingClassRep,
    pub fibration: FibrationClass,
    pub derham: DeRhamClass,
}

impl SpacePresentation {
    /// A presentation with zero fibration and de Rham classes of the right
    /// length for the monodromy. The lengths are only meaningful when the
    /// monodromy fits the surface.
    pub fn with_zero_classes(
        tau: SymbolicReal,
        c_dh: SymbolicReal,
        genus: u32,
        isotropy: IsotropyData,
        monodromy: MappingClassRep,
    ) -> Self {
        let ctx = OrbitContext::new(genus, isotropy.clone(), monodromy.clone());
        let s = ctx.cokernel().structure().clone();
        SpacePresentation {
            tau,
            c_dh,
            genus,
            isotropy,
            monodromy,
            fibration: FibrationClass::zero(s.generator_count()),
            derham: DeRhamClass::zero(s.free_rank),
        }
    }

    pub fn surface(&self) -> LabeledSurface {
        LabeledSurface::new(self.genus, self.isotropy.clone())
    }

    pub fn orbit_context(&self) -> OrbitContext {
        OrbitContext::new(self.genus, self.isotropy.clone(), self.monodromy.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationViolation {
    #[error("NonPositive: {field} = {value} is not positive")]
    NonPositive { field: &'static str, value: String },
    #[error("PositivityUndecidable: sign of {field} = {value} is not determined")]
    PositivityUndecidable { field: &'static str, value: String },
    #[error("{0}")]
    Isotropy(IsotropyViolation),
    #[error("RepSurfaceMismatch: {0}")]
    Monodromy(String),
    #[error("ContextMismatch: {0}")]
    ClassShape(String),
    #[error("TrivialityViolated: {invariant} class must be zero when b1 = 1")]
    TrivialityViolated { invariant: &'static str },
}

impl PresentationViolation {
    pub fn code(&self) -> &'static str {
        match self {
            PresentationViolation::NonPositive { .. } => "NonPositive",
            PresentationViolation::PositivityUndecidable { .. } => "PositivityUndecidable",
            PresentationViolation::Isotropy(v) => v.code(),
            PresentationViolation::Monodromy(_) => "RepSurfaceMismatch",
            PresentationViolation::ClassShape(_) => "ContextMismatch",
            PresentationViolation::TrivialityViolated { .. } => "TrivialityViolated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpacesError {
    #[error("InvalidPresentation: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidPresentation(Vec<PresentationViolation>),
}

fn check_positive(field: &'static str, v: &SymbolicReal, out: &mut Vec<PresentationViolation>) {
    match v.sign() {
        SymbolicSign::Positive => {}
        SymbolicSign::Undecidable => out.push(PresentationViolation::PositivityUndecidable {
            field,
            value: v.to_string(),
        }),
        SymbolicSign::Zero | SymbolicSign::Negative => out.push(PresentationViolation::NonPositive {
            field,
            value: v.to_string(),
        }),
    }
}

/// Every violated constraint, in a fixed order.
pub fn validate(p: &SpacePresentation) -> Result<(), Vec<PresentationViolation>> {
    let mut out = Vec::new();
    check_positive("tau", &p.tau, &mut out);
    check_positive("c_dh", &p.c_dh, &mut out);
    if let Err(vs) = validate_isotropy(&p.isotropy) {
        out.extend(vs.into_iter().map(PresentationViolation::Isotropy));
    }
    match p.monodromy.validate(&p.surface()) {
        Err(e) => out.push(PresentationViolation::Monodromy(e.to_string().replacen("RepSurfaceMismatch: ", "", 1))),
        Ok(()) => {
            let ctx = p.orbit_context();
            let shape = |r: Result<(), crate::orbits::OrbitError>| {
                r.err().map(|e| PresentationViolation::ClassShape(e.to_string().replacen("ContextMismatch: ", "", 1)))
            };
            let fib = shape(ctx.check_fibration(&p.fibration));
            let dr = shape(ctx.check_derham(&p.derham));
            let shapes_ok = fib.is_none() && dr.is_none();
            out.extend(fib);
            out.extend(dr);
            let f1 = induced_h1(&p.monodromy, &p.surface());
            if shapes_ok && condition_one_holds(&f1).unwrap_or(false) {
                if !p.fibration.is_zero() {
                    out.push(PresentationViolation::TrivialityViolated { invariant: "fibration" });
                }
                if !p.derham.is_zero() {
                    out.push(PresentationViolation::TrivialityViolated { invariant: "derham" });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn require_valid(p: &SpacePresentation) -> Result<(), SpacesError> {
    validate(p).map_err(SpacesError::InvalidPresentation)
}

/// The seven invariants in comparison order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Tau,
    CDh,
    Genus,
    Isotropy,
    Monodromy,
    Fibration,
    DeRham,
}

impl Invariant {
    pub const ALL: [Invariant; 7] = [
        Invariant::Tau,
        Invariant::CDh,
        Invariant::Genus,
        Invariant::Isotropy,
        Invariant::Monodromy,
        Invariant::Fibration,
        Invariant::DeRham,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Tau => "tau",
            Invariant::CDh => "c_dh",
            Invariant::Genus => "genus",
            Invariant::Isotropy => "isotropy",
            Invariant::Monodromy => "monodromy",
            Invariant::Fibration => "fibration",
            Invariant::DeRham => "derham",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`compare`]: the verdict, the invariant it hinges on, and a
/// connecting de Rham action when one was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    pub invariant: Option<Invariant>,
    pub derham_witness: Option<DeRhamAction>,
}

fn exact<T: PartialEq + fmt::Display>(x: &T, y: &T) -> Verdict {
    if x == y {
        return Verdict::Equivalent;
    }
    let (a, b) = (x.to_string(), y.to_string());
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    Verdict::Distinct(format!("{a} vs {b}"))
}

/// Whether orbit classes over the two presentations share a coordinate
/// system, given conjugate monodromies.
fn same_basis(p: &SpacePresentation, q: &SpacePresentation) -> bool {
    induced_h1(&p.monodromy, &p.surface()) == induced_h1(&q.monodromy, &q.surface())
        && p.monodromy.permutation(&p.surface()) == q.monodromy.permutation(&q.surface())
}

fn compare_fibration(p: &SpacePresentation, q: &SpacePresentation) -> Verdict {
    if p.fibration.is_zero() && q.fibration.is_zero() {
        return Verdict::Equivalent;
    }
    let (cp, cq) = (p.orbit_context(), q.orbit_context());
    let (Ok(kp), Ok(kq)) = (fibration_orbit_canonical(&p.fibration, &cp), fibration_orbit_canonical(&q.fibration, &cq)) else {
        return Verdict::Undecided("fibration classes do not fit their contexts".into());
    };
    match (kp, kq) {
        (FibrationCanonical::Canonical(a), FibrationCanonical::Canonical(b)) => exact(&a, &b),
        (FibrationCanonical::Undecided(r), _) | (_, FibrationCanonical::Undecided(r)) => {
            if same_basis(p, q) && p.fibration == q.fibration {
                Verdict::Equivalent
            } else {
                Verdict::Undecided(r)
            }
        }
    }
}

fn compare_derham(p: &SpacePresentation, q: &SpacePresentation, budget: &SearchBudget) -> (Verdict, Option<DeRhamAction>) {
    if p.derham.is_zero() && q.derham.is_zero() {
        return (Verdict::Equivalent, None);
    }
    let ctx = p.orbit_context();
    let regime = ctx.regime().unwrap_or(OrbitRegime::General);
    let shared = same_basis(p, q) || regime == OrbitRegime::TorusIdentity;
    if !shared {
        return (
            Verdict::Undecided("de Rham classes are written over different monodromy representatives".into()),
            None,
        );
    }
    if p.derham == q.derham {
        return (Verdict::Equivalent, None);
    }
    if regime == OrbitRegime::TorusIdentity && !(p.fibration.is_zero() && q.fibration.is_zero()) {
        return (
            Verdict::Undecided("de Rham orbits are only described over the zero fibration class".into()),
            None,
        );
    }
    match derham_orbit_verdict(&p.derham, &q.derham, &p.c_dh, &p.tau, &ctx, budget) {
        Ok(d) => (d.verdict, d.witness),
        Err(e) => (Verdict::Undecided(e.to_string()), None),
    }
}

/// Compares all seven invariants in order. The first Distinct wins;
/// otherwise the first Undecided; otherwise Equivalent.
pub fn compare(p: &SpacePresentation, q: &SpacePresentation, budget: &SearchBudget) -> Result<Comparison, SpacesError> {
    require_valid(p)?;
    require_valid(q)?;
    let mut undecided: Option<(Invariant, String)> = None;
    let mut witness = None;
    let mut monodromy_equivalent = false;
    for inv in Invariant::ALL {
        let verdict = match inv {
            Invariant::Tau => exact(&p.tau, &q.tau),
            Invariant::CDh => exact(&p.c_dh, &q.c_dh),
            Invariant::Genus => exact(&p.genus, &q.genus),
            Invariant::Isotropy => exact(&p.isotropy, &q.isotropy),
            Invariant::Monodromy => {
                let v = conjugacy_verdict(&p.monodromy, &q.monodromy, &p.surface())
                    .unwrap_or_else(|e| Verdict::Undecided(e.to_string()));
                monodromy_equivalent = v.is_equivalent();
                v
            }
            _ if !monodromy_equivalent => Verdict::Undecided("monodromy not known to be conjugate".into()),
            Invariant::Fibration => compare_fibration(p, q),
            Invariant::DeRham => {
                let (v, w) = compare_derham(p, q, budget);
                witness = w;
                v
            }
        };
        match verdict {
            Verdict::Equivalent => {}
            Verdict::Distinct(w) => {
                return Ok(Comparison {
                    verdict: Verdict::Distinct(format!("{inv}: {w}")),
                    invariant: Some(inv),
                    derham_witness: None,
                })
            }
            Verdict::Undecided(r) => {
                undecided.get_or_insert((inv, r));
            }
        }
    }
    Ok(match undecided {
        Some((inv, r)) => Comparison {
            verdict: Verdict::Undecided(format!("{inv}: {r}")),
            invariant: Some(inv),
            derham_witness: None,
        },
        None => Comparison {
            verdict: Verdict::Equivalent,
            invariant: None,
            derham_witness: witness,
        },
    })
}

/// [`compare`] with the default search budget, verdict only.
pub fn isomorphic_verdict(p: &SpacePresentation, q: &SpacePresentation) -> Result<Verdict, SpacesError> {
    compare(p, q, &SearchBudget::default()).map(|c| c.verdict)
}

/// `(b₁, b₂)` of the quotient `M/S¹`.
pub fn quotient_betti(p: &SpacePresentation) -> Result<(usize, usize), SpacesError> {
    require_valid(p)?;
    let c = quotient_cohomology(&induced_h1(&p.monodromy, &p.surface()))
        .expect("validated monodromy is symplectic");
    Ok((c.b1, c.b2))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonodromyDigest {
    Canonical(MonodromyInvariant),
    Raw(MappingClassRep),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassDigest<T> {
    Zero,
    Canonical(T),
    /// Coordinates that only make sense relative to this representative.
    Relative(MappingClassRep, T),
}

/// Canonicalized invariants: equal digests give an Equivalent verdict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantDigest {
    pub tau: SymbolicReal,
    pub c_dh: SymbolicReal,
    pub genus: u32,
    pub isotropy: IsotropyData,
    pub monodromy: MonodromyDigest,
    pub fibration: ClassDigest<FibrationClass>,
    pub derham: ClassDigest<DeRhamClass>,
}

pub fn digest(p: &SpacePresentation) -> Result<InvariantDigest, SpacesError> {
    require_valid(p)?;
    let surface = p.surface();
    let monodromy = match complete_invariant(&p.monodromy, &surface).expect("validated") {
        Some(inv) => MonodromyDigest::Canonical(inv),
        None => MonodromyDigest::Raw(p.monodromy.clone()),
    };
    let ctx = p.orbit_context();
    let fibration = if p.fibration.is_zero() {
        ClassDigest::Zero
    } else {
        match fibration_orbit_canonical(&p.fibration, &ctx).expect("validated") {
            FibrationCanonical::Canonical(c) => ClassDigest::Canonical(c),
            FibrationCanonical::Undecided(_) => ClassDigest::Relative(p.monodromy.clone(), p.fibration.clone()),
        }
    };
    let derham = if p.derham.is_zero() {
        ClassDigest::Zero
    } else if ctx.regime().expect("validated") == OrbitRegime::TorusIdentity {
        ClassDigest::Canonical(p.derham.clone())
    } else {
        ClassDigest::Relative(p.monodromy.clone(), p.derham.clone())
    };
    Ok(InvariantDigest {
        tau: p.tau.clone(),
        c_dh: p.c_dh.clone(),
        genus: p.genus,
        isotropy: p.isotropy.clone(),
        monodromy,
        fibration,
        derham,
    })
}

impl fmt::Display for MonodromyDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyDigest::Canonical(inv) => write!(f, "{inv}"),
            MonodromyDigest::Raw(rep) => write!(f, "{rep}"),
        }
    }
}

impl<T: fmt::Display> fmt::Display for ClassDigest<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassDigest::Zero => write!(f, "0"),
            ClassDigest::Canonical(c) => write!(f, "{c}"),
            ClassDigest::Relative(rep, c) => write!(f, "{c} relative to {rep}"),
        }
    }
}

/// Construction data behind a model space: the Seifert invariant of every
/// level set and the gluing map of the quotient mapping torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelWitness {
    pub level_set: SeifertInvariant,
    pub gluing: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpace {
    pub presentation: SpacePresentation,
    pub witness: ModelWitness,
}

/// The model with the given invariants, if they are realizable.
pub fn model_space(
    tau: SymbolicReal,
    c_dh: SymbolicReal,
    genus: u32,
    isotropy: IsotropyData,
    monodromy: MappingClassRep,
    fibration: FibrationClass,
    derham: DeRhamClass,
) -> Result<ModelSpace, SpacesError> {
    let presentation = SpacePresentation {
        tau,
        c_dh,
        genus,
        isotropy,
        monodromy,
        fibration,
        derham,
    };
    require_valid(&presentation)?;
    Ok(ModelSpace {
        witness: model_witness(&presentation),
        presentation,
    })
}

pub fn model_witness(p: &SpacePresentation) -> ModelWitness {
    let level_set = zero_euler_seifert(p.genus, &p.isotropy).expect("validated isotropy");
    let gluing = format!(
        "M/S1 = Sigma_{} x [0, {}] / (x, {}) ~ (f(x), 0), f = {}",
        p.genus, p.tau, p.tau, p.monodromy
    );
    ModelWitness { level_set, gluing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{IntMatrix, Rational};
    use crate::seifert::euler_number;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn int(n: i64) -> SymbolicReal {
        SymbolicReal::from_integer(n)
    }

    fn sphere(isotropy: IsotropyData) -> SpacePresentation {
        SpacePresentation::with_zero_classes(int(1), int(1), 0, isotropy, MappingClassRep::IdentityClass)
    }

    fn torus(monodromy: MappingClassRep) -> SpacePresentation {
        SpacePresentation::with_zero_classes(int(1), int(2), 1, IsotropyData::empty(), monodromy)
    }

    fn codes(p: &SpacePresentation) -> Vec<&'static str> {
        validate(p).err().unwrap_or_default().iter().map(|v| v.code()).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&torus(MappingClassRep::torus_linear([[1, 1], [0, 1]]))).is_ok());
        assert_eq!(codes(&sphere(IsotropyData::from_pairs(&[(3, 1)]))), ["SumNotInteger"]);

        let mut p = torus(MappingClassRep::torus_linear([[2, 1], [1, 1]]));
        assert!(validate(&p).is_ok());
        // b1 = 1 but −I has torsion cokernel, so a nonzero class is representable.
        p.monodromy = MappingClassRep::torus_linear([[-1, 0], [0, -1]]);
        p.fibration = FibrationClass::from_i64(&[1, 0]);
        assert_eq!(codes(&p), ["TrivialityViolated"]);

        let mut p = sphere(IsotropyData::empty());
        p.tau = SymbolicReal::symbol("x") - int(1);
        p.c_dh = int(-2);
        assert_eq!(codes(&p), ["PositivityUndecidable", "NonPositive"]);

        let mut p = torus(MappingClassRep::IdentityClass);
        p.fibration = FibrationClass::from_i64(&[1]);
        assert_eq!(codes(&p), ["ContextMismatch"]);

        let p = sphere(IsotropyData::from_pairs(&[(2, 1), (2, 1)]));
        let mut q = p.clone();
        q.monodromy = MappingClassRep::torus_linear([[1, 1], [0, 1]]);
        assert_eq!(codes(&q), ["RepSurfaceMismatch"]);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(quotient_betti(&sphere(IsotropyData::from_pairs(&[(2, 1), (2, 1)]))).unwrap(), (1, 1));
        assert_eq!(quotient_betti(&torus(MappingClassRep::torus_linear([[1, 1], [0, 1]]))).unwrap(), (2, 2));
        assert_eq!(quotient_betti(&torus(MappingClassRep::IdentityClass)).unwrap(), (3, 3));
    }

    #[test]
    fn verdict_order_and_names() {
        let p = torus(MappingClassRep::IdentityClass);
        assert_eq!(isomorphic_verdict(&p, &p).unwrap(), Verdict::Equivalent);

        let mut q = p.clone();
        q.c_dh = int(3);
        q.monodromy = MappingClassRep::torus_linear([[1, 1], [0, 1]]);
        q.fibration = FibrationClass::zero(1);
        q.derham = DeRhamClass::zero(1);
        let c = compare(&p, &q, &SearchBudget::default()).unwrap();
        assert_eq!(c.invariant, Some(Invariant::CDh));

        let mut q = p.clone();
        q.fibration = FibrationClass::from_i64(&[2, 4]);
        let mut r = p.clone();
        r.fibration = FibrationClass::from_i64(&[-2, 0]);
        assert_eq!(isomorphic_verdict(&q, &r).unwrap(), Verdict::Equivalent);
        r.fibration = FibrationClass::from_i64(&[3, 0]);
        let c = compare(&q, &r, &SearchBudget::default()).unwrap();
        assert_eq!(c.invariant, Some(Invariant::Fibration));
        assert!(c.verdict.is_distinct());

        let invalid = sphere(IsotropyData::from_pairs(&[(3, 1)]));
        assert!(isomorphic_verdict(&invalid, &invalid).is_err());
    }

    #[test]
    fn undecided_names_the_invariant() {
        let surface_genus = 2;
        let h1 = crate::exactalg::symplectic::elementary_generators(2)[0].clone();
        let mk = |m: IntMatrix| {
            SpacePresentation::with_zero_classes(
                int(1),
                int(1),
                surface_genus,
                IsotropyData::empty(),
                MappingClassRep::HomologyPermutation { perm: vec![], h1: m },
            )
        };
        let p = mk(h1.clone());
        let g = crate::exactalg::symplectic::elementary_generators(2)[1].clone();
        let ginv = crate::exactalg::symplectic::symplectic_inverse(&g);
        let q = mk(&(&g * &h1) * &ginv);
        let c = compare(&p, &q, &SearchBudget::default()).unwrap();
        if p == q {
            assert!(c.verdict.is_equivalent());
        } else {
            assert!(c.verdict.is_undecided(), "{}", c.verdict);
            assert_eq!(c.invariant, Some(Invariant::Monodromy));
        }
    }

    #[test]
    fn derham_comparison_uses_witness() {
        let mut p = SpacePresentation::with_zero_classes(
            int(1),
            int(1),
            1,
            IsotropyData::empty(),
            MappingClassRep::IdentityClass,
        );
        p.derham = DeRhamClass::new(vec![int(1), SymbolicReal::symbol("r")]);
        let mut q = p.clone();
        q.derham = DeRhamClass::new(vec![SymbolicReal::symbol("r"), int(1)]);
        let c = compare(&p, &q, &SearchBudget::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        assert!(c.derham_witness.is_some());

        // A nonzero fibration class leaves the de Rham orbit undescribed.
        p.fibration = FibrationClass::from_i64(&[1, 0]);
        q.fibration = FibrationClass::from_i64(&[1, 0]);
        let c = compare(&p, &q, &SearchBudget::default()).unwrap();
        assert_eq!(c.invariant, Some(Invariant::DeRham));
        assert!(c.verdict.is_undecided());
    }

    #[test]
    fn model_examples() {
        let m = model_space(
            int(1),
            int(1),
            0,
            IsotropyData::empty(),
            MappingClassRep::IdentityClass,
            FibrationClass::zero(0),
            DeRhamClass::zero(0),
        )
        .unwrap();
        assert_eq!(m.witness.level_set.to_string(), "{0; (1, 0)}");
        let err = model_space(
            int(1),
            int(1),
            0,
            IsotropyData::from_pairs(&[(4, 1)]),
            MappingClassRep::IdentityClass,
            FibrationClass::zero(0),
            DeRhamClass::zero(0),
        )
        .unwrap_err();
        let SpacesError::InvalidPresentation(v) = err;
        assert_eq!(v[0].code(), "SumNotInteger");

        let d = IsotropyData::from_pairs(&[(5, 2), (5, 3), (3, 1), (3, 2)]);
        let m = model_space(int(1), int(1), 2, d, MappingClassRep::IdentityClass, FibrationClass::zero(4), DeRhamClass::zero(4))
            .unwrap();
        assert_eq!(euler_number(&m.witness.level_set), Rational::zero());
    }

    fn sl2_small() -> impl Strategy<Value = [[i64; 2]; 2]> {
        prop::sample::select(vec![
            [[1, 0], [0, 1]],
            [[1, 1], [0, 1]],
            [[1, 0], [-1, 1]],
            [[1, -1], [0, 1]],
            [[2, 1], [1, 1]],
            [[1, 1], [1, 2]],
            [[0, -1], [1, 0]],
            [[-1, 0], [0, -1]],
            [[1, 2], [0, 1]],
        ])
    }

    fn torus_presentation() -> impl Strategy<Value = SpacePresentation> {
        (sl2_small(), 1i64..=3, 1i64..=3, -4i64..=4, -4i64..=4).prop_map(|(m, tau, c, x, y)| {
            let mut p = SpacePresentation::with_zero_classes(
                int(tau),
                int(c),
                1,
                IsotropyData::empty(),
                MappingClassRep::torus_linear(m),
            );
            let n = p.fibration.coords.len();
            let s = p.orbit_context().cokernel();
            if n > 0 && !condition_one_holds(&IntMatrix::from_rows(&m)).unwrap() {
                let raw: Vec<_> = [x, y][..n.min(2)].iter().map(|&v| num_bigint::BigInt::from(v)).collect();
                p.fibration = FibrationClass::new(s.normalize(&raw));
            }
            if !p.derham.coords.is_empty() && p.fibration.is_zero() {
                p.derham.coords[0] = int(x) + SymbolicReal::symbol("r").scale_int(&num_bigint::BigInt::from(y));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn verdict_symmetric_and_reflexive(p in torus_presentation(), q in torus_presentation()) {
            prop_assert!(validate(&p).is_ok(), "{:?}", validate(&p));
            prop_assert_eq!(isomorphic_verdict(&p, &p).unwrap(), Verdict::Equivalent);
            let v1 = compare(&p, &q, &SearchBudget::default()).unwrap();
            let v2 = compare(&q, &p, &SearchBudget::default()).unwrap();
            prop_assert_eq!(v1.verdict, v2.verdict);
            prop_assert_eq!(v1.invariant, v2.invariant);
        }

        #[test]
        fn equal_digests_are_equivalent(p in torus_presentation(), q in torus_presentation()) {
            if digest(&p).unwrap() == digest(&q).unwrap() {
                prop_assert_eq!(isomorphic_verdict(&p, &q).unwrap(), Verdict::Equivalent);
            }
        }

        #[test]
        fn betti_one_forces_zero_classes(p in torus_presentation()) {
            if quotient_betti(&p).unwrap() == (1, 1) {
                prop_assert!(p.fibration.is_zero() && p.derham.is_zero());
            }
        }
    }
}

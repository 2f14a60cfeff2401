//! Monodromy of the quotient mapping torus: representations of mapping
//! classes of a labeled surface and a three-valued conjugacy decision.
//!
//! The decision is complete where the mapping class group is understood
//! through a faithful finite description:
//! - genus 1 with at most one marked point, where `mcg ≅ SL₂(Z)`;
//! - genus 0 with at most three marked points, where `mcg` is the group of
//!   label-preserving permutations of the points.
//!
//! Elsewhere only necessary conditions are checked, and the answer is
//! [`Verdict::Undecided`] when they all agree but the representations differ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    cokernel_structure, sl2z_canonical_form, symplectic::is_symplectic, AbelianGroupStructure,
    IntMatrix, Sl2zCanonicalForm,
};
use crate::seifert::{CoprimeResidueClass, IsotropyData};

/// `Σ_{g, C₁, …, C_k}`: a closed oriented surface with one marked point per
/// label. Marked points are indexed in the sorted order of `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSurface {
    pub genus: u32,
    pub labels: IsotropyData,
}

impl LabeledSurface {
    pub fn new(genus: u32, labels: IsotropyData) -> Self {
        LabeledSurface { genus, labels }
    }

    pub fn marked_points(&self) -> usize {
        self.labels.len()
    }

    /// Dimension of `H¹(Σ_g)`.
    pub fn h1_rank(&self) -> usize {
        2 * self.genus as usize
    }
}

/// A representation of a mapping class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MappingClassRep {
    IdentityClass,
    /// A linear map of `T² = R²/Z²`, `(p, q) ↦ (αp + βq, γp + δq)` stored as
    /// `[[α, β], [γ, δ]]`. Genus 1 without marked points only.
    TorusLinear(IntMatrix),
    /// Permutation of the marked points (point `i` goes to `perm[i]`) and the
    /// induced map on `H¹(Σ_g)` in a symplectic basis.
    HomologyPermutation { perm: Vec<usize>, h1: IntMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("RepSurfaceMismatch: {0}")]
    RepSurfaceMismatch(String),
}

fn mismatch(msg: impl Into<String>) -> MonodromyError {
    MonodromyError::RepSurfaceMismatch(msg.into())
}

impl MappingClassRep {
    pub fn torus_linear(rows: [[i64; 2]; 2]) -> Self {
        MappingClassRep::TorusLinear(IntMatrix::from_rows(&rows))
    }

    /// Checks that the representation makes sense on `surface`.
    pub fn validate(&self, surface: &LabeledSurface) -> Result<(), MonodromyError> {
        match self {
            MappingClassRep::IdentityClass => Ok(()),
            MappingClassRep::TorusLinear(m) => {
                if surface.genus != 1 || !surface.labels.is_empty() {
                    return Err(mismatch(format!(
                        "torus-linear monodromy needs genus 1 without marked points, surface has genus {} and {} marked points",
                        surface.genus,
                        surface.marked_points()
                    )));
                }
                if m.rows() != 2 || m.cols() != 2 || !m.determinant().is_ok_and(|d| d.is_one()) {
                    return Err(mismatch(format!("torus-linear matrix {m} is not in SL2(Z)")));
                }
                Ok(())
            }
            MappingClassRep::HomologyPermutation { perm, h1 } => {
                let k = surface.marked_points();
                if perm.len() != k {
                    return Err(mismatch(format!(
                        "permutation has {} entries, surface has {k} marked points",
                        perm.len()
                    )));
                }
                let mut seen = vec![false; k];
                for &p in perm {
                    if p >= k || seen[p] {
                        return Err(mismatch(format!("{perm:?} is not a permutation")));
                    }
                    seen[p] = true;
                }
                let labels = surface.labels.classes();
                if let Some(i) = (0..k).find(|&i| labels[i] != labels[perm[i]]) {
                    return Err(mismatch(format!(
                        "point {i} labeled {} is sent to point {} labeled {}",
                        labels[i], perm[i], labels[perm[i]]
                    )));
                }
                let n = surface.h1_rank();
                if h1.rows() != n || h1.cols() != n {
                    return Err(mismatch(format!(
                        "h1 is {}x{}, genus {} needs {n}x{n}",
                        h1.rows(),
                        h1.cols(),
                        surface.genus
                    )));
                }
                if !is_symplectic(h1) {
                    return Err(mismatch(format!("h1 {h1} does not preserve the intersection form")));
                }
                Ok(())
            }
        }
    }

    /// The permutation of marked points; identity for the non-permuting variants.
    pub fn permutation(&self, surface: &LabeledSurface) -> Vec<usize> {
        match self {
            MappingClassRep::HomologyPermutation { perm, .. } => perm.clone(),
            _ => (0..surface.marked_points()).collect(),
        }
    }
}

impl fmt::Display for MappingClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingClassRep::IdentityClass => write!(f, "identity"),
            MappingClassRep::TorusLinear(m) => write!(f, "torus-linear {m}"),
            MappingClassRep::HomologyPermutation { perm, h1 } => {
                write!(f, "homology-permutation perm={perm:?} h1={h1}")
            }
        }
    }
}

/// The map `f₁` induced on `H¹(Σ_g)`, a `2g × 2g` matrix.
pub fn induced_h1(rep: &MappingClassRep, surface: &LabeledSurface) -> IntMatrix {
    match rep {
        MappingClassRep::IdentityClass => IntMatrix::identity(surface.h1_rank()),
        MappingClassRep::TorusLinear(m) => m.clone(),
        MappingClassRep::HomologyPermutation { h1, .. } => h1.clone(),
    }
}

/// Outcome of an equivalence question that may be beyond reach.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    /// Carries the separating witness.
    Distinct(String),
    /// Carries why no decision was reached.
    Undecided(String),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Verdict::Undecided(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Distinct(_) => "distinct",
            Verdict::Undecided(_) => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent => write!(f, "equivalent"),
            Verdict::Distinct(w) => write!(f, "distinct: {w}"),
            Verdict::Undecided(r) => write!(f, "undecided: {r}"),
        }
    }
}

/// Sorted cycle lengths of a permutation, grouped by the label of the points.
pub type CycleTypes = BTreeMap<CoprimeResidueClass, Vec<usize>>;

pub fn cycle_types(perm: &[usize], labels: &IsotropyData) -> CycleTypes {
    let mut out: CycleTypes = BTreeMap::new();
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.entry(labels.classes()[start]).or_default().push(len);
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    out
}

/// Characteristic polynomial `det(xI − A)`, coefficients from `x⁰` up,
/// by Faddeev–LeVerrier (all divisions exact over `Z`).
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let am = a * &m;
        coeffs[n - k] = -am.trace() / BigInt::from(k);
    }
    coeffs
}

/// Invariant factors of `h1 − λI` for `λ ∈ {−1, 0, 1}`.
fn smith_signature(h1: &IntMatrix) -> Vec<AbelianGroupStructure> {
    [-1i64, 0, 1]
        .iter()
        .map(|&l| {
            let mut m = h1.clone();
            for i in 0..m.rows() {
                m[(i, i)] -= BigInt::from(l);
            }
            cokernel_structure(&m)
        })
        .collect()
}

/// The complete invariant of a class where one is available.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonodromyInvariant {
    Sl2(Sl2zCanonicalForm),
    Permutation(CycleTypes),
}

impl fmt::Display for MonodromyInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyInvariant::Sl2(form) => write!(f, "{form}"),
            MonodromyInvariant::Permutation(types) => {
                let parts: Vec<String> = types
                    .iter()
                    .map(|(label, cycles)| format!("{label}: {cycles:?}"))
                    .collect();
                write!(f, "cycle types {{{}}}", parts.join(", "))
            }
        }
    }
}

/// `Some` exactly on the fragment where conjugacy is decided completely.
pub fn complete_invariant(
    rep: &MappingClassRep,
    surface: &LabeledSurface,
) -> Result<Option<MonodromyInvariant>, MonodromyError> {
    rep.validate(surface)?;
    if surface.genus == 1 && surface.marked_points() <= 1 {
        let form = sl2z_canonical_form(&induced_h1(rep, surface))
            .map_err(|e| mismatch(format!("monodromy not in SL2(Z): {e}")))?;
        return Ok(Some(MonodromyInvariant::Sl2(form)));
    }
    if surface.genus == 0 && surface.marked_points() <= 3 {
        return Ok(Some(MonodromyInvariant::Permutation(cycle_types(
            &rep.permutation(surface),
            &surface.labels,
        ))));
    }
    Ok(None)
}

fn ordered_pair<T: fmt::Display>(x: &T, y: &T) -> (String, String) {
    let (a, b) = (x.to_string(), y.to_string());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Decides whether `alpha` and `beta` are conjugate in the mapping class
/// group of `surface`.
pub fn conjugacy_verdict(
    alpha: &MappingClassRep,
    beta: &MappingClassRep,
    surface: &LabeledSurface,
) -> Result<Verdict, MonodromyError> {
    let ia = complete_invariant(alpha, surface)?;
    let ib = complete_invariant(beta, surface)?;
    if let (Some(ia), Some(ib)) = (ia, ib) {
        return Ok(if ia == ib {
            Verdict::Equivalent
        } else {
            let (x, y) = ordered_pair(&ia, &ib);
            Verdict::Distinct(format!("complete invariants differ: {x} vs {y}"))
        });
    }

    let (pa, pb) = (alpha.permutation(surface), beta.permutation(surface));
    let (ca, cb) = (cycle_types(&pa, &surface.labels), cycle_types(&pb, &surface.labels));
    if ca != cb {
        let (x, y) = ordered_pair(
            &MonodromyInvariant::Permutation(ca),
            &MonodromyInvariant::Permutation(cb),
        );
        return Ok(Verdict::Distinct(format!("per-label {x} vs {y}")));
    }
    let (ha, hb) = (induced_h1(alpha, surface), induced_h1(beta, surface));
    let (cpa, cpb) = (characteristic_polynomial(&ha), characteristic_polynomial(&hb));
    if cpa != cpb {
        let (x, y) = ordered_pair(&format!("{cpa:?}"), &format!("{cpb:?}"));
        return Ok(Verdict::Distinct(format!(
            "characteristic polynomials of h1 differ: {x} vs {y}"
        )));
    }
    let (sa, sb) = (smith_signature(&ha), smith_signature(&hb));
    if let Some(k) = (0..3).find(|&k| sa[k] != sb[k]) {
        let lambda = k as i64 - 1;
        let (x, y) = ordered_pair(&sa[k], &sb[k]);
        return Ok(Verdict::Distinct(format!(
            "cokernels of h1 - ({lambda})I differ: {x} vs {y}"
        )));
    }
    if pa == pb && ha == hb {
        return Ok(Verdict::Equivalent);
    }
    Ok(Verdict::Undecided(format!(
        "genus {} with {} marked points is outside the decidable fragment and all necessary invariants agree",
        surface.genus,
        surface.marked_points()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::symplectic::{random_symplectic, standard_form};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn torus() -> LabeledSurface {
        LabeledSurface::new(1, IsotropyData::empty())
    }

    #[test]
    fn identity_pair_is_equivalent() {
        for g in 0..4 {
            let s = LabeledSurface::new(g, IsotropyData::empty());
            let v = conjugacy_verdict(&MappingClassRep::IdentityClass, &MappingClassRep::IdentityClass, &s);
            assert_eq!(v.unwrap(), Verdict::Equivalent);
        }
    }

    #[test]
    fn torus_linear_examples() {
        let s = torus();
        let r = MappingClassRep::torus_linear([[1, 1], [0, 1]]);
        let r_inv = MappingClassRep::torus_linear([[1, -1], [0, 1]]);
        assert!(conjugacy_verdict(&r, &r_inv, &s).unwrap().is_distinct());
        let rl = MappingClassRep::torus_linear([[2, 1], [1, 1]]);
        let lr = MappingClassRep::torus_linear([[1, 1], [1, 2]]);
        assert_eq!(conjugacy_verdict(&rl, &lr, &s).unwrap(), Verdict::Equivalent);
        // Identity vs the identity matrix.
        let id = MappingClassRep::torus_linear([[1, 0], [0, 1]]);
        assert_eq!(
            conjugacy_verdict(&id, &MappingClassRep::IdentityClass, &s).unwrap(),
            Verdict::Equivalent
        );
    }

    #[test]
    fn induced_h1_examples() {
        let s2 = LabeledSurface::new(2, IsotropyData::empty());
        assert!(induced_h1(&MappingClassRep::IdentityClass, &s2).is_identity());
        assert_eq!(induced_h1(&MappingClassRep::IdentityClass, &s2).rows(), 4);
        // f(p, q) = (p + q, q)
        let kt = MappingClassRep::torus_linear([[1, 1], [0, 1]]);
        assert_eq!(induced_h1(&kt, &torus()), IntMatrix::from_rows(&[[1, 1], [0, 1]]));
        let rot = MappingClassRep::torus_linear([[0, -1], [1, 0]]);
        assert_eq!(induced_h1(&rot, &torus()), IntMatrix::from_rows(&[[0, -1], [1, 0]]));
    }

    #[test]
    fn surface_mismatch_is_reported() {
        let labeled = LabeledSurface::new(1, IsotropyData::from_pairs(&[(2, 1), (2, 1)]));
        let r = MappingClassRep::torus_linear([[1, 1], [0, 1]]);
        assert!(conjugacy_verdict(&r, &r, &labeled).is_err());
        let s0 = LabeledSurface::new(0, IsotropyData::from_pairs(&[(2, 1), (3, 1)]));
        let bad = MappingClassRep::HomologyPermutation {
            perm: vec![1, 0],
            h1: IntMatrix::zeros(0, 0),
        };
        assert!(bad.validate(&s0).is_err());
        let not_sp = MappingClassRep::HomologyPermutation {
            perm: vec![],
            h1: IntMatrix::from_rows(&[[2, 0], [0, 1]]),
        };
        assert!(not_sp.validate(&torus()).is_err());
    }

    #[test]
    fn sphere_with_few_points_is_decided_by_permutations() {
        let s = LabeledSurface::new(0, IsotropyData::from_pairs(&[(2, 1), (2, 1), (2, 1)]));
        let swap01 = MappingClassRep::HomologyPermutation {
            perm: vec![1, 0, 2],
            h1: IntMatrix::zeros(0, 0),
        };
        let swap12 = MappingClassRep::HomologyPermutation {
            perm: vec![0, 2, 1],
            h1: IntMatrix::zeros(0, 0),
        };
        let cycle = MappingClassRep::HomologyPermutation {
            perm: vec![1, 2, 0],
            h1: IntMatrix::zeros(0, 0),
        };
        assert_eq!(conjugacy_verdict(&swap01, &swap12, &s).unwrap(), Verdict::Equivalent);
        assert!(conjugacy_verdict(&swap01, &cycle, &s).unwrap().is_distinct());
        assert!(conjugacy_verdict(&MappingClassRep::IdentityClass, &cycle, &s)
            .unwrap()
            .is_distinct());
    }

    #[test]
    fn higher_genus_is_partial() {
        let s = LabeledSurface::new(2, IsotropyData::empty());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = random_symplectic(&mut rng, 2, 8);
        let p = random_symplectic(&mut rng, 2, 6);
        let p_inv = crate::exactalg::symplectic::symplectic_inverse(&p);
        let b = &(&p * &a) * &p_inv;
        let ra = MappingClassRep::HomologyPermutation { perm: vec![], h1: a.clone() };
        let rb = MappingClassRep::HomologyPermutation { perm: vec![], h1: b.clone() };
        let v = conjugacy_verdict(&ra, &rb, &s).unwrap();
        if a == b {
            assert_eq!(v, Verdict::Equivalent);
        } else {
            assert!(v.is_undecided(), "{v}");
        }
        let j = MappingClassRep::HomologyPermutation { perm: vec![], h1: standard_form(2) };
        let v = conjugacy_verdict(&MappingClassRep::IdentityClass, &j, &s).unwrap();
        assert!(v.is_distinct(), "{v}");
    }

    #[test]
    fn characteristic_polynomial_examples() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let to_i = |v: Vec<BigInt>| v.into_iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(characteristic_polynomial(&m)), vec![1, -3, 1]);
        assert_eq!(to_i(characteristic_polynomial(&IntMatrix::identity(3))), vec![-1, 3, -3, 1]);
        assert_eq!(to_i(characteristic_polynomial(&IntMatrix::zeros(0, 0))), vec![1]);
    }

    fn sl2_entries() -> impl Strategy<Value = IntMatrix> {
        (-6i64..=6, -6i64..=6, -6i64..=6).prop_filter_map("det 1", |(a, b, c)| {
            // Solve a·d − b·c = 1 for d.
            if a == 0 {
                return (b * c == -1).then(|| IntMatrix::from_rows(&[[0, b], [c, 1]]));
            }
            let num = 1 + b * c;
            (num % a == 0).then(|| IntMatrix::from_rows(&[[a, b], [c, num / a]]))
        })
    }

    proptest! {
        #[test]
        fn torus_verdict_symmetric_and_decided(a in sl2_entries(), b in sl2_entries()) {
            let s = torus();
            let (ra, rb) = (MappingClassRep::TorusLinear(a), MappingClassRep::TorusLinear(b));
            let v1 = conjugacy_verdict(&ra, &rb, &s).unwrap();
            let v2 = conjugacy_verdict(&rb, &ra, &s).unwrap();
            prop_assert_eq!(&v1, &v2);
            prop_assert!(!v1.is_undecided());
            prop_assert_eq!(conjugacy_verdict(&ra, &ra, &s).unwrap(), Verdict::Equivalent);
        }

        #[test]
        fn genus_two_verdict_symmetric_and_reflexive(seed in any::<u64>()) {
            let s = LabeledSurface::new(2, IsotropyData::empty());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = MappingClassRep::HomologyPermutation { perm: vec![], h1: random_symplectic(&mut rng, 2, 6) };
            let b = MappingClassRep::HomologyPermutation { perm: vec![], h1: random_symplectic(&mut rng, 2, 6) };
            prop_assert_eq!(conjugacy_verdict(&a, &b, &s).unwrap(), conjugacy_verdict(&b, &a, &s).unwrap());
            prop_assert_eq!(conjugacy_verdict(&a, &a, &s).unwrap(), Verdict::Equivalent);
        }
    }
}

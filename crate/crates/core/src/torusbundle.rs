//! Cohomology of the quotient mapping torus `M_f = Σ_g × [0, 1] / (x, 1) ~ (f(x), 0)`.
//!
//! Mayer–Vietoris gives `H¹(M_f) ≅ ker(f₁ − I) ⊕ Z` and a short exact sequence
//! `0 → coker(f₁ − I) → H²(M_f) → ker(f₂ − I) ≅ Z → 0`, which splits.

use std::fmt;

use thiserror::Error;

use crate::exactalg::symplectic::is_symplectic;
use crate::exactalg::{cokernel_structure, kernel_rank, AbelianGroupStructure, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TorusBundleError {
    #[error("NotSymplectic: {0} does not preserve the intersection form")]
    NotSymplectic(IntMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientCohomology {
    pub h1: AbelianGroupStructure,
    pub h2: AbelianGroupStructure,
    pub b1: usize,
    pub b2: usize,
}

impl fmt::Display for QuotientCohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H1 = {}, H2 = {}", self.h1, self.h2)
    }
}

/// `f₁ − I`.
pub fn minus_identity(f1: &IntMatrix) -> IntMatrix {
    f1 - &IntMatrix::identity(f1.rows())
}

fn check(f1: &IntMatrix) -> Result<(), TorusBundleError> {
    if is_symplectic(f1) {
        Ok(())
    } else {
        Err(TorusBundleError::NotSymplectic(f1.clone()))
    }
}

pub fn quotient_cohomology(f1: &IntMatrix) -> Result<QuotientCohomology, TorusBundleError> {
    check(f1)?;
    let a = minus_identity(f1);
    let h1 = AbelianGroupStructure::free(kernel_rank(&a) + 1);
    let h2 = cokernel_structure(&a).plus_free(1);
    Ok(QuotientCohomology {
        b1: h1.free_rank,
        b2: h2.free_rank,
        h1,
        h2,
    })
}

/// Whether `ker(f₁ − I) = 0`, equivalently `b₁ = 1`, equivalently `b₂ = 1`.
pub fn condition_one_holds(f1: &IntMatrix) -> Result<bool, TorusBundleError> {
    check(f1)?;
    Ok(kernel_rank(&minus_identity(f1)) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::symplectic::{random_symplectic, symplectic_inverse};
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn torus_examples() {
        let id = quotient_cohomology(&IntMatrix::identity(2)).unwrap();
        assert_eq!((id.b1, id.b2), (3, 3));
        assert!(id.h2.torsion.is_empty());

        let kt = quotient_cohomology(&IntMatrix::from_rows(&[[1, 1], [0, 1]])).unwrap();
        assert_eq!((kt.b1, kt.b2), (2, 2));
        assert_eq!(kt.h2, AbelianGroupStructure::free(2));

        let hyp = quotient_cohomology(&IntMatrix::from_rows(&[[1, 1], [1, 2]])).unwrap();
        assert_eq!((hyp.b1, hyp.b2), (1, 1));
        assert!(condition_one_holds(&IntMatrix::from_rows(&[[1, 1], [1, 2]])).unwrap());
    }

    #[test]
    fn torsion_shows_up_in_h2() {
        // [[-1, 0], [0, -1]] − I = −2I
        let c = quotient_cohomology(&IntMatrix::from_rows(&[[-1, 0], [0, -1]])).unwrap();
        assert_eq!(c.h2.to_string(), "Z + Z/2 + Z/2");
        assert_eq!(c.b1, 1);
    }

    #[test]
    fn condition_one_examples() {
        assert!(!condition_one_holds(&IntMatrix::identity(2)).unwrap());
        assert!(!condition_one_holds(&IntMatrix::identity(6)).unwrap());
        assert!(condition_one_holds(&IntMatrix::zeros(0, 0)).unwrap());
        assert!(!condition_one_holds(&IntMatrix::from_rows(&[[1, 1], [0, 1]])).unwrap());
        let g0 = quotient_cohomology(&IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!((g0.b1, g0.b2), (1, 1));
    }

    #[test]
    fn rejects_non_symplectic() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 1]]);
        assert!(matches!(quotient_cohomology(&m), Err(TorusBundleError::NotSymplectic(_))));
        assert!(condition_one_holds(&m).is_err());
    }

    proptest! {
        #[test]
        fn betti_one_equivalences(seed in any::<u64>(), genus in 1usize..=3) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f1 = random_symplectic(&mut rng, genus, 10);
            let c = quotient_cohomology(&f1).unwrap();
            let k = kernel_rank(&minus_identity(&f1));
            prop_assert_eq!(c.b1, k + 1);
            prop_assert_eq!(c.b1 == 1, c.b2 == 1);
            prop_assert_eq!(c.b1 == 1, condition_one_holds(&f1).unwrap());
            prop_assert!(c.h1.torsion.is_empty());

            let p = random_symplectic(&mut rng, genus, 8);
            let conj = &(&p * &f1) * &symplectic_inverse(&p);
            prop_assert_eq!(quotient_cohomology(&conj).unwrap(), c);
        }
    }
}

//! Exact invariants of symplectic circle actions on closed 4-manifolds with
//! circle-valued moment maps, and decisions on when two of them agree.
//!
//! A space is described by a [`spaces::SpacePresentation`]. [`spaces::compare`]
//! returns [`monodromy::Verdict::Equivalent`], `Distinct` with the separating
//! invariant, or `Undecided` when the question leaves the decidable fragment.
//!
//! ```
//! use circle_actions::catalog::kodaira_thurston;
//! use circle_actions::orbits::SearchBudget;
//! use circle_actions::spaces::compare;
//!
//! let kt = kodaira_thurston();
//! let c = compare(&kt, &kt, &SearchBudget::default()).unwrap();
//! assert!(c.verdict.is_equivalent());
//! ```

pub mod exactalg;
pub mod seifert;
pub mod monodromy;
pub mod torusbundle;
pub mod orbits;
pub mod spaces;
pub mod catalog;
pub mod document;

// Runs the guide's snippets as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/sl2z.md")]
    mod sl2z {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/comparing.md")]
    mod comparing {}
    #[doc = include_str!("../../../book/src/catalog-cli.md")]
    mod catalog_cli {}
}

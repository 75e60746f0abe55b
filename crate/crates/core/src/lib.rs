//! Exact invariants of quadratic forms over `Q` and of the orthogonal objects
//! built from them.
//!
//! Degree-1 classes in `H^*(G_Q, Z/2)` are square classes, degree-2 classes
//! are even sets of places, and cup products are Hilbert symbols. On top of
//! that sit Hasse-Witt invariants of rational forms, trace forms of étale
//! algebras, Stiefel-Whitney obstructions to Pin lifts of permutation
//! representations, and middle-cohomology invariants of complete
//! intersections.
//!
//! ```
//! use hasse_witt::{cup, lifting_decisions, EtaleAlgebra, SquareClass};
//!
//! let f: EtaleAlgebra = "-1,1,0,0,1".parse()?; // x^4 + x - 1
//! let report = lifting_decisions(&f)?;
//! assert!(!report.lift_solvable && report.lift_delta_solvable);
//! assert_eq!(report.w2_trace, cup(&SquareClass::from_integer(2)?, &f.disc_class()));
//! # Ok::<(), hasse_witt::Error>(())
//! ```

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod etale;
pub mod forms;
pub mod modp;
pub mod motive;
pub mod obstructions;
pub mod poly;

pub use arith::{factor, is_prime, legendre, squarefree_part, Factorization, Integer, Rational};
pub use cohomology::{cup, hilbert_symbol, CohClass2, Place, SquareClass, TotalWittClass};
pub use error::{Error, Result};
pub use etale::{trace_form_report, trace_gram, EtaleAlgebra, RealSignature, TraceFormReport};
pub use forms::{isometric, FormInvariants, QuadraticForm, Signature};
pub use motive::{motive_report, CompleteIntersectionSpec, MotiveReport, SymbolicClass};
pub use obstructions::{
    delta_comparison, jehanne_local, lifting_decisions, sw2_character_sum, CharacterSum,
    DecompositionType, DeltaPair, LiftReport,
};
pub use poly::Polynomial;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/square_classes.md")]
    mod square_classes {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/trace_forms.md")]
    mod trace_forms {}
    #[doc = include_str!("../../../book/src/embedding.md")]
    mod embedding {}
    #[doc = include_str!("../../../book/src/complete_intersections.md")]
    mod complete_intersections {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Exact computations on zero-dimensional dynamical systems.
//!
//! The library realizes homeomorphisms of totally disconnected compact
//! spaces as primitive substitution subshifts (and finite disjoint unions
//! of them) and computes, in exact arithmetic, the objects attached to
//! them: languages, word frequencies under the ergodic measures, the
//! Boolean algebra of clopen sets, the comparability relation between
//! clopen sets, the ordered group of integer-valued continuous functions
//! modulo infinitesimals, and finite Hopf-equivalence maps.
//!
//! Everything that feeds a decision is computed over arbitrary-precision
//! rationals or real algebraic numbers with decidable sign; floating
//! point never enters a comparison.
//!
//! Entry points:
//!
//! - [`algebra`]: real algebraic numbers as elements of `Q[x]/(q)`
//!   evaluated at an isolated root, with exact sign, arithmetic, and
//!   decimal rendering.
//! - [`systems`]: substitutions, subshift components, disjoint unions,
//!   languages, and exact word frequencies.
//! - [`clopen`]: windowed cylinder representations of clopen sets and
//!   their measure vectors.
//! - [`compare`]: the comparability relation and searches for
//!   incomparable pairs.
//! - [`group`]: the ordered group, its positive cone, the stepwise
//!   sign procedure, and membership in the set of clopen classes.
//! - [`hopf`]: finite piecewise-shift bijections between clopen sets.
//! - [`config`] and [`cli`]: system definition files and the batch
//!   command front end.

pub mod algebra;
pub mod cli;
pub mod clopen;
pub mod compare;
pub mod config;
pub mod group;
pub mod hopf;
pub mod systems;

pub use algebra::{AlgebraicContext, IntPoly, RatPoly, RealAlgebraic};
pub use clopen::{ClopenSet, MeasureVector};
pub use compare::{Verdict, VerdictKind};
pub use group::{Decomposition, GroupElement, SignClass};
pub use hopf::{HopfMap, MapMode};
pub use systems::{Substitution, SubshiftComponent, SystemSpace};

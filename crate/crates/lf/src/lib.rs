//! Proof kernel and batch proof checker for the intensional higher-order
//! logic LF and its extensions LF_ι and LF_ε.
//!
//! The crate is organised in layers:
//!
//! - [`types`], [`term`], [`reduce`]: the simply typed term language
//!   (two base types `e` and `t`, the inclusion constants `⊆_σ`, and the
//!   description/choice constants `ι_σ`/`ε_σ`), capture-avoiding
//!   substitution, α-equivalence and β-normalisation.
//! - [`defs`]: the table of defined notations (`⊤`, `∀`, `¬`, `=`, numerals,
//!   …) together with schema instantiation. Defined notation always expands
//!   to core terms; the kernel never sees an abbreviation.
//! - [`kernel`]: sequents, derivations and the inference rules. A
//!   [`kernel::Derivation`] can only be built through the rule constructors,
//!   so holding one is proof that the sequent is derivable.
//! - [`theory`]: named rule systems (`LF`, `LF-R.n`, `LF_iota`, …) and
//!   [`theory::check_theorem`], which re-validates a derivation bottom-up
//!   and discharges remaining assumptions against the theory's axioms.
//! - [`extensions`]: the ι/ε axiom schemas and the default-value terms `†_σ`.
//! - [`notation`]: concrete syntax — lexer, parser, elaborator (type
//!   decoration inference) and pretty-printer.
//! - [`library`]: derived rules (modus ponens, conditional proof, the
//!   natural-deduction kit, …) and the catalog of machine-checked theorems.
//! - [`script`]: the line-oriented proof-script format and batch runner
//!   used by the `lf` command-line tool.

pub mod defs;
pub mod extensions;
pub mod kernel;
pub mod library;
pub mod notation;
pub mod reduce;
pub mod term;
pub mod theory;
pub mod types;

pub use kernel::{Derivation, KernelError, RuleId, Sequent};
pub use term::{Constant, Term, Variable};
pub use theory::Theory;
pub use types::Type;

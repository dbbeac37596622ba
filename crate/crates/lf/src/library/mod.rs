//! Derived rules and the catalog of machine-checked theorems.
//!
//! Everything here is built exclusively through the kernel's rule
//! constructors; a builder returning a [`Derivation`] has already passed
//! every side condition. The catalog entries replay the written proofs
//! of the basic metatheorems at representative types, each checkable
//! under the minimal rule set its statement names.

mod classes;
mod derived;
mod helpers;
mod modal;
mod numerals;
mod refute;

pub use derived::*;
pub use helpers::{top_theorem, to_context, weaken_chain};
pub use modal::subst_equiv;
pub use numerals::{chain_numeral, numeral_is_nat};
pub use refute::henkin_inconsistency;

use thiserror::Error;

use crate::kernel::{Derivation, KernelError};
use crate::term::Term;
use crate::theory::{self, Theory};
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("unknown derived rule `{0}`")]
    UnknownRule(String),
    #[error("unknown library theorem `{0}`")]
    UnknownTheorem(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, LibraryError>;

/// A catalog entry: a named theorem, the weakest built-in theory it is
/// checkable in, and a builder for its derivation.
pub struct LibraryEntry {
    pub name: &'static str,
    pub theory: fn() -> Theory,
    pub build: fn() -> Result<Derivation>,
    pub summary: &'static str,
}

/// The theorem catalog. Entries are instantiated at representative types
/// (type-indexed statements at σ = e, vector statements at length one).
pub fn catalog() -> Vec<LibraryEntry> {
    vec![
        LibraryEntry {
            name: "peirce",
            theory: theory::lf,
            build: || modal::peirce(),
            summary: "((p→q)→p)→p, universally closed",
        },
        LibraryEntry {
            name: "double_neg_elim",
            theory: theory::lf,
            build: || modal::double_neg_elim_thm(),
            summary: "¬¬p→p, universally closed",
        },
        LibraryEntry {
            name: "de_morgan",
            theory: theory::lf,
            build: || modal::de_morgan(),
            summary: "¬(p∨q) ↔ ¬p∧¬q, universally closed",
        },
        LibraryEntry {
            name: "distribution",
            theory: theory::lf,
            build: || modal::distribution(),
            summary: "p∧(q∨r) ↔ (p∧q)∨(p∧r), universally closed",
        },
        LibraryEntry {
            name: "eq_refl",
            theory: theory::lf,
            build: || derived::eq_refl(Type::E),
            summary: "∀x^e. x = x",
        },
        LibraryEntry {
            name: "leibniz",
            theory: theory::lf,
            build: || modal::leibniz_default(),
            summary: "∀x y^e.(x=y → Fx → Fy) for a property variable F",
        },
        LibraryEntry {
            name: "s4_K",
            theory: theory::lf,
            build: || modal::s4_k(),
            summary: "∀p q.(□(p→q) → □p → □q)",
        },
        LibraryEntry {
            name: "s4_T",
            theory: theory::lf,
            build: || modal::s4_t(),
            summary: "∀p.(□p → p)",
        },
        LibraryEntry {
            name: "s4_4",
            theory: theory::lf,
            build: || modal::s4_4(),
            summary: "∀p.(□p → □□p)",
        },
        LibraryEntry {
            name: "s5_axiom",
            theory: theory::lf,
            build: || modal::s5_axiom(),
            summary: "∀p.(¬□p → □¬□p)",
        },
        LibraryEntry {
            name: "nec_identity",
            theory: theory::lf,
            build: || modal::nec_identity(Type::E),
            summary: "∀x y^e.(x=y → □(x=y))",
        },
        LibraryEntry {
            name: "nec_distinctness",
            theory: theory::lf,
            build: || modal::nec_distinctness(Type::E),
            summary: "∀x y^e.(x≠y → □(x≠y))",
        },
        LibraryEntry {
            name: "barcan_len1",
            theory: theory::lf,
            build: || modal::barcan_len1(Type::E),
            summary: "∀X^{et}.((∀z.□Xz) → □∀z.Xz)",
        },
        LibraryEntry {
            name: "converse_barcan_len1",
            theory: theory::lf,
            build: || modal::converse_barcan_len1(Type::E),
            summary: "∀X^{et}.(□∀z.Xz → ∀z.□Xz)",
        },
        LibraryEntry {
            name: "prop_intensionalism",
            theory: theory::lf,
            build: || modal::prop_intensionalism(),
            summary: "∀p q.(□(p↔q) → p=q)",
        },
        LibraryEntry {
            name: "property_intensionalism_len1",
            theory: theory::lf,
            build: || modal::property_intensionalism_len1(Type::E),
            summary: "∀F G^{et}.(□∀z.(Fz↔Gz) → F=G)",
        },
        LibraryEntry {
            name: "refute_extensionality",
            theory: theory::lf,
            build: || refute::refute_extensionality(),
            summary: "∃p q.((p↔q) ∧ p≠q)",
        },
        LibraryEntry {
            name: "henkin_inconsistency",
            theory: theory::henkin_1950,
            build: || refute::henkin_inconsistency(),
            summary: "⊥ from the extensionality rule with side assumptions",
        },
        LibraryEntry {
            name: "class_comprehension_iota",
            theory: theory::lf_iota,
            build: || classes::class_comprehension_iota(Type::E),
            summary: "∀X^{et}.∃Y.(class Y ∧ ∀z.(Xz↔Yz)), via the description function",
        },
        LibraryEntry {
            name: "class_extensionality",
            theory: theory::lf,
            build: || classes::class_extensionality(Type::E),
            summary: "classes are extensional",
        },
        LibraryEntry {
            name: "alpha_iff_top_iota",
            theory: theory::lf_iota,
            build: || classes::alpha_iff_top(),
            summary: "α ↔ ⊤ under D_ι (the slingshot's provable half)",
        },
    ]
}

/// Builds a catalog entry by name.
pub fn library_theorem(name: &str) -> Result<Derivation> {
    let canonical = name.trim();
    // tolerate the ι suffix spelled out
    let canonical = canonical
        .replace('ι', "iota")
        .replace("_ι", "_iota");
    catalog()
        .into_iter()
        .find(|e| e.name == canonical)
        .ok_or_else(|| LibraryError::UnknownTheorem(name.to_string()))
        .and_then(|e| (e.build)())
}

/// The named derived rules, dispatched for the proof-script runner.
/// `premises` supplies the rule's derivation arguments and `terms`/`vars`
/// its term and variable parameters; see each arm for the exact shape.
pub fn derived_rule(
    name: &str,
    premises: &[Derivation],
    terms: &[Term],
    vars: &[crate::term::Variable],
) -> Result<Derivation> {
    let need = |n: usize, t: usize, v: usize| -> Result<()> {
        if premises.len() == n && terms.len() == t && vars.len() == v {
            Ok(())
        } else {
            Err(LibraryError::Kernel(KernelError::ShapeMismatch(format!(
                "`{name}` takes {n} premise(s), {t} term(s), {v} variable(s); got {}/{}/{}",
                premises.len(),
                terms.len(),
                vars.len()
            ))))
        }
    };
    match name {
        "mp" | "modus_ponens" => {
            need(2, 0, 0)?;
            derived::modus_ponens(&premises[0], &premises[1])
        }
        "cp" | "conditional_proof" => {
            need(1, 0, 0)?;
            derived::conditional_proof(&premises[0])
        }
        "and_intro" => {
            need(2, 0, 0)?;
            derived::and_intro(&premises[0], &premises[1])
        }
        "and_elim_l" => {
            need(1, 0, 0)?;
            derived::and_elim_l(&premises[0])
        }
        "and_elim_r" => {
            need(1, 0, 0)?;
            derived::and_elim_r(&premises[0])
        }
        "or_intro_l" => {
            need(1, 1, 0)?;
            derived::or_intro_l(&premises[0], terms[0].clone())
        }
        "or_intro_r" => {
            need(1, 1, 0)?;
            derived::or_intro_r(&premises[0], terms[0].clone())
        }
        "or_elim" => {
            need(3, 0, 0)?;
            derived::or_elim(&premises[0], &premises[1], &premises[2])
        }
        "ex_falso" => {
            need(1, 1, 0)?;
            derived::ex_falso(&premises[0], terms[0].clone())
        }
        "neg_intro" => {
            need(1, 0, 0)?;
            derived::neg_intro(&premises[0])
        }
        "neg_elim" => {
            need(2, 1, 0)?;
            derived::neg_elim(&premises[0], &premises[1], terms[0].clone())
        }
        "neg_elim_classical" => {
            need(1, 0, 0)?;
            derived::neg_elim_classical(&premises[0])
        }
        "iff_intro" => {
            need(2, 0, 0)?;
            derived::iff_intro(&premises[0], &premises[1])
        }
        "iff_elim" => {
            need(2, 0, 0)?;
            derived::iff_elim(&premises[0], &premises[1])
        }
        "forall_intro" => {
            need(1, 0, 1)?;
            derived::forall_intro(&premises[0], vars[0].clone())
        }
        "forall_elim" => {
            need(1, 1, 0)?;
            derived::forall_elim(&premises[0], terms[0].clone())
        }
        "exists_intro" => {
            need(1, 2, 0)?;
            derived::exists_intro(&premises[0], terms[0].clone(), terms[1].clone())
        }
        "exists_elim" => {
            need(2, 0, 1)?;
            derived::exists_elim(&premises[0], &premises[1], vars[0].clone())
        }
        "necessitation" => {
            need(1, 0, 0)?;
            derived::necessitation(&premises[0])
        }
        "eq_refl" => {
            need(0, 1, 0)?;
            derived::refl_term(&[], terms[0].clone())
        }
        "eq_sym" => {
            need(1, 0, 0)?;
            derived::eq_sym(&premises[0])
        }
        "eq_trans" => {
            need(2, 0, 0)?;
            derived::eq_trans(&premises[0], &premises[1])
        }
        "leibniz" => {
            need(0, 1, 2)?;
            modal::leibniz(terms[0].clone(), vars[0].clone(), vars[1].clone())
        }
        "subst_equiv" => {
            need(2, 1, 1)?;
            let (fwd, _bwd) = modal::subst_equiv(
                &premises[0],
                &premises[1],
                &terms[0],
                &vars[0],
            )?;
            Ok(fwd)
        }
        other => Err(LibraryError::UnknownRule(other.to_string())),
    }
}

//! Named rule systems and theorem checking.
//!
//! `LF+X` keeps LF's rules and admits the sentences of `X` as undischarged
//! assumptions; `LF−R.n` drops rule n. The built-in registry also carries
//! the systems of the comparison sections: Church's and Henkin's systems,
//! HFE, Classicism, and the modalized-function-extensionality variant of
//! LF.

use std::collections::HashSet;
use std::fmt;

use crate::extensions::{AxiomSchema, SchemaName};
use crate::kernel::{Derivation, KernelError, RuleId};
use crate::notation::NotationGuard;
use crate::term::Term;

pub use crate::kernel::RuleId as Rule;

/// A named system: enabled rules, axiom schemas, extra axiom sentences and
/// the notation guard level.
#[derive(Debug, Clone)]
pub struct Theory {
    name: String,
    enabled: HashSet<RuleId>,
    schemas: Vec<SchemaName>,
    extra_axioms: Vec<Term>,
    guard: NotationGuard,
}

impl Theory {
    pub fn new(
        name: impl Into<String>,
        rules: impl IntoIterator<Item = RuleId>,
        schemas: Vec<SchemaName>,
        guard: NotationGuard,
    ) -> Theory {
        Theory {
            name: name.into(),
            enabled: rules.into_iter().collect(),
            schemas,
            extra_axioms: Vec::new(),
            guard,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn guard(&self) -> NotationGuard {
        self.guard
    }

    pub fn enabled(&self, rule: RuleId) -> bool {
        self.enabled.contains(&rule)
    }

    /// Enabled rules in display order.
    pub fn rules(&self) -> Vec<RuleId> {
        RuleId::ALL
            .iter()
            .copied()
            .filter(|r| self.enabled(*r))
            .collect()
    }

    pub fn schemas(&self) -> &[SchemaName] {
        &self.schemas
    }

    pub fn extra_axioms(&self) -> &[Term] {
        &self.extra_axioms
    }

    /// `LF−R.n`-style weakening of this theory.
    pub fn without_rule(&self, rule: RuleId) -> Theory {
        let mut t = self.clone();
        t.enabled.remove(&rule);
        if let Some(n) = rule.number() {
            t.name = format!("{}-R.{n}", t.name);
        } else {
            t.name = format!("{}-{rule}", t.name);
        }
        t
    }

    /// `LF+X`-style extension with a single axiom sentence.
    pub fn with_axiom(&self, sentence: Term) -> Theory {
        let mut t = self.clone();
        t.extra_axioms.push(sentence);
        if !t.name.ends_with("+X") {
            t.name = format!("{}+X", t.name);
        }
        t
    }

    /// True if the formula is (α-equal to) an axiom of this theory:
    /// either one of the extra sentences, or an instance of an enabled
    /// schema at some index type.
    pub fn is_axiom(&self, formula: &Term) -> bool {
        self.extra_axioms.iter().any(|a| a.alpha_eq(formula))
            || self
                .schemas
                .iter()
                .any(|s| AxiomSchema(*s).match_instance(formula).is_some())
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn all_numbered() -> Vec<RuleId> {
    RuleId::NUMBERED.to_vec()
}

/// The base system LF: rules R.1–R.9 and no axioms.
pub fn lf() -> Theory {
    Theory::new("LF", all_numbered(), vec![], NotationGuard::Core)
}

/// `LF_ι = LF + D_ι`.
pub fn lf_iota() -> Theory {
    Theory::new(
        "LF_iota",
        all_numbered(),
        vec![SchemaName::DIota1, SchemaName::DIota2],
        NotationGuard::Iota,
    )
}

/// `LF_ε = LF + D_ι + C_ε`.
pub fn lf_epsilon() -> Theory {
    Theory::new(
        "LF_epsilon",
        all_numbered(),
        vec![
            SchemaName::DIota1,
            SchemaName::DIota2,
            SchemaName::CEps1,
            SchemaName::CEps2,
        ],
        NotationGuard::Epsilon,
    )
}

/// Church's 1940 system: LF_ε minus Intensionality, with Potential
/// Infinity replaced by actual infinity for ℕ_e.
pub fn church_1940() -> Theory {
    Theory::new(
        "Church-1940",
        [
            RuleId::R1Structural,
            RuleId::R2Beta,
            RuleId::R3UniversalInstantiation,
            RuleId::R4UniversalGeneralization,
            RuleId::R5NegationElimination,
            RuleId::R7FunctionExtensionality,
            RuleId::R8Choice,
            RuleId::VActualInfinityE,
        ],
        vec![
            SchemaName::DIota1,
            SchemaName::DIota2,
            SchemaName::CEps1,
            SchemaName::CEps2,
        ],
        NotationGuard::Epsilon,
    )
}

/// Henkin's 1950 system as registered here: Church's system plus the rule
/// of extensionality, and with Potential Infinity at both base types kept
/// enabled. Keeping R.9 is what lets the checker demonstrate that
/// extensionality with side assumptions collapses: the bundled ⊢⊥
/// derivation is accepted by exactly this registry entry.
pub fn henkin_1950() -> Theory {
    Theory::new(
        "Henkin-1950",
        [
            RuleId::R1Structural,
            RuleId::R2Beta,
            RuleId::R3UniversalInstantiation,
            RuleId::R4UniversalGeneralization,
            RuleId::R5NegationElimination,
            RuleId::R7FunctionExtensionality,
            RuleId::R8Choice,
            RuleId::R9PotentialInfinity,
            RuleId::VActualInfinityE,
            RuleId::VHenkinExt,
        ],
        vec![
            SchemaName::DIota1,
            SchemaName::DIota2,
            SchemaName::CEps1,
            SchemaName::CEps2,
        ],
        NotationGuard::Epsilon,
    )
}

/// Bacon's HFE: LF minus Choice and Potential Infinity.
pub fn hfe() -> Theory {
    Theory::new(
        "HFE",
        [
            RuleId::R1Structural,
            RuleId::R2Beta,
            RuleId::R3UniversalInstantiation,
            RuleId::R4UniversalGeneralization,
            RuleId::R5NegationElimination,
            RuleId::R6Intensionality,
            RuleId::R7FunctionExtensionality,
        ],
        vec![],
        NotationGuard::Core,
    )
}

/// Classicism: HFE minus Function Extensionality, with Intensionality
/// strengthened to the substitution rule.
pub fn classicism() -> Theory {
    Theory::new(
        "Classicism",
        [
            RuleId::R1Structural,
            RuleId::R2Beta,
            RuleId::R3UniversalInstantiation,
            RuleId::R4UniversalGeneralization,
            RuleId::R5NegationElimination,
            RuleId::VClassicismSubst,
        ],
        vec![],
        NotationGuard::Core,
    )
}

/// LF with Function Extensionality replaced by its modalized form.
pub fn modal_funext_lf() -> Theory {
    Theory::new(
        "ModalFunExt-LF",
        [
            RuleId::R1Structural,
            RuleId::R2Beta,
            RuleId::R3UniversalInstantiation,
            RuleId::R4UniversalGeneralization,
            RuleId::R5NegationElimination,
            RuleId::R6Intensionality,
            RuleId::VModalFunExt,
            RuleId::R8Choice,
            RuleId::R9PotentialInfinity,
        ],
        vec![],
        NotationGuard::Core,
    )
}

/// Every built-in system, in listing order: LF, LF−R.n (n = 1…9), LF_ι,
/// LF_ε, Church-1940, Henkin-1950, HFE, Classicism, ModalFunExt-LF.
pub fn builtin_theories() -> Vec<Theory> {
    let mut out = vec![lf()];
    for r in RuleId::NUMBERED {
        out.push(lf().without_rule(r));
    }
    out.extend([
        lf_iota(),
        lf_epsilon(),
        church_1940(),
        henkin_1950(),
        hfe(),
        classicism(),
        modal_funext_lf(),
    ]);
    out
}

/// Looks a system up by name. Matching is case-insensitive and tolerates
/// `lf-r8` for `LF-R.8`.
pub fn lookup_theory(name: &str) -> Option<Theory> {
    let norm = |s: &str| {
        s.chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase()
    };
    let wanted = norm(name);
    builtin_theories().into_iter().find(|t| norm(t.name()) == wanted)
}

/// A successfully checked derivation: the proved sentence, with every
/// remaining assumption discharged against the theory's axioms.
#[derive(Debug, Clone)]
pub struct CheckedTheorem {
    pub theorem: Term,
    pub discharged: usize,
}

/// Re-validates every node bottom-up, requires every rule to be enabled in
/// `theory`, and requires every remaining assumption to be an axiom of
/// `theory`.
pub fn check_theorem(theory: &Theory, d: &Derivation) -> Result<CheckedTheorem, KernelError> {
    d.revalidate(&mut |node| {
        let id = node.rule().id();
        if theory.enabled(id) {
            Ok(())
        } else {
            Err(KernelError::RuleDisabled(id))
        }
    })?;
    for a in d.assumptions() {
        if !theory.is_axiom(a) {
            return Err(KernelError::UndischargedAssumption(
                crate::notation::print(a, &crate::notation::PrintOpts::default()),
            ));
        }
    }
    Ok(CheckedTheorem {
        theorem: d.formula().clone(),
        discharged: d.assumptions().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defs;
    use crate::term::Variable;
    use crate::types::Type;

    #[test]
    fn registry_contents() {
        let names: Vec<String> = builtin_theories()
            .iter()
            .map(|t| t.name().to_string())
            .collect();
        for expected in [
            "LF",
            "LF-R.1",
            "LF-R.9",
            "LF_iota",
            "LF_epsilon",
            "Church-1940",
            "Henkin-1950",
            "HFE",
            "Classicism",
            "ModalFunExt-LF",
        ] {
            assert!(names.iter().any(|n| n == expected), "{expected} missing");
        }
        assert!(lookup_theory("lf-r8").is_some());
        assert!(lookup_theory("LF_IOTA").is_some());
        assert!(lookup_theory("nonsense").is_none());
    }

    #[test]
    fn rule_sets() {
        assert!(lf().enabled(RuleId::R5NegationElimination));
        assert!(!lf().enabled(RuleId::VHenkinExt));
        assert!(!lf().without_rule(RuleId::R8Choice).enabled(RuleId::R8Choice));
        assert!(!church_1940().enabled(RuleId::R6Intensionality));
        assert!(!church_1940().enabled(RuleId::R9PotentialInfinity));
        assert!(church_1940().enabled(RuleId::VActualInfinityE));
        assert!(henkin_1950().enabled(RuleId::VHenkinExt));
        assert!(henkin_1950().enabled(RuleId::R9PotentialInfinity));
        assert!(!hfe().enabled(RuleId::R8Choice));
        assert!(!hfe().enabled(RuleId::R9PotentialInfinity));
        assert!(!classicism().enabled(RuleId::R6Intensionality));
        assert!(classicism().enabled(RuleId::VClassicismSubst));
        assert!(!modal_funext_lf().enabled(RuleId::R7FunctionExtensionality));
        assert!(modal_funext_lf().enabled(RuleId::VModalFunExt));
    }

    #[test]
    fn axiom_matching() {
        let t = lf_iota();
        let d1_at_e = crate::extensions::AxiomSchema(SchemaName::DIota1).generate(&Type::E);
        assert!(t.is_axiom(&d1_at_e));
        let c1_at_e = crate::extensions::AxiomSchema(SchemaName::CEps1).generate(&Type::E);
        assert!(!t.is_axiom(&c1_at_e));
        assert!(lf_epsilon().is_axiom(&c1_at_e));
        let p = Term::var(Variable::fresh0('p', Type::T));
        assert!(!t.is_axiom(&p));
        assert!(lf().with_axiom(p.clone()).is_axiom(&p));
    }

    #[test]
    fn check_gates_rules_and_assumptions() {
        let p = Term::var(Variable::fresh0('p', Type::T));
        let d = Derivation::hypothesis(vec![], p.clone()).unwrap(); // [p] ⊢ p
        let err = check_theorem(&lf(), &d).unwrap_err();
        assert!(matches!(err, KernelError::UndischargedAssumption(_)));
        let ok = check_theorem(&lf().with_axiom(p.clone()), &d).unwrap();
        assert!(ok.theorem.alpha_eq(&p));
        // rule gating: intensionality disabled in Church-1940
        let eqd = Derivation::intensionality(d.clone(), d.clone()).unwrap();
        let err = check_theorem(&church_1940(), &eqd).unwrap_err();
        assert_eq!(err, KernelError::RuleDisabled(RuleId::R6Intensionality));
        // ⊢ p = p has no assumptions left, so plain LF accepts it
        let checked = check_theorem(&lf(), &eqd).unwrap();
        assert!(checked.theorem.alpha_eq(&defs::mk_eq(p.clone(), p)));
    }
}

//! The ι and ε extension theories: default values `†_σ` and the axiom
//! schemas D_ι / C_ε.

use thiserror::Error;

use crate::defs;
use crate::term::{Term, Variable};
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("theory has no extension axioms")]
    NoExtension,
}

/// The default value at each type, by structural recursion:
/// `†_e = ι λx.⊥`, `†_t = ⊥`, `†_{στ} = λx^σ.†_τ`.
pub fn dagger(sigma: &Type) -> Term {
    match sigma {
        Type::E => {
            let x = Variable::fresh0('x', Type::E);
            defs::mk_iota_binder(x, defs::bot())
        }
        Type::T => defs::bot(),
        Type::Fun(d, c) => {
            let x = Variable::fresh0('x', (**d).clone());
            Term::abs(x, dagger(c))
        }
    }
}

/// Names of the type-indexed axiom schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemaName {
    /// `∀X^{σt}.(∃!X → X(ιX))`
    DIota1,
    /// `∀X^{σt}.(¬∃!X → ιX = †)`
    DIota2,
    /// `∀X^{σt}.(∃X → X(εX))`
    CEps1,
    /// `∀X^{σt}.(¬∃X → εX = †)`
    CEps2,
}

impl SchemaName {
    pub fn label(self) -> &'static str {
        match self {
            SchemaName::DIota1 => "D_iota.1",
            SchemaName::DIota2 => "D_iota.2",
            SchemaName::CEps1 => "C_eps.1",
            SchemaName::CEps2 => "C_eps.2",
        }
    }
}

/// An axiom schema: a generator from the index type σ to a closed sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomSchema(pub SchemaName);

impl AxiomSchema {
    /// The sentence at index σ.
    pub fn generate(&self, sigma: &Type) -> Term {
        let x = Variable::fresh0('X', Type::property_of(sigma.clone()));
        let xt = Term::var(x.clone());
        let app = |f: Term, a: Term| Term::app(f, a).expect("axiom schema is well-typed");
        match self.0 {
            SchemaName::DIota1 => {
                let uniq = app(defs::exists_unique(sigma.clone()), xt.clone());
                let inst = app(xt.clone(), app(defs::iota(sigma.clone()), xt.clone()));
                defs::mk_forall(x, defs::mk_imp(uniq, inst))
            }
            SchemaName::DIota2 => {
                let uniq = app(defs::exists_unique(sigma.clone()), xt.clone());
                let lhs = app(defs::iota(sigma.clone()), xt.clone());
                defs::mk_forall(
                    x,
                    defs::mk_imp(defs::mk_neg(uniq), defs::mk_eq(lhs, dagger(sigma))),
                )
            }
            SchemaName::CEps1 => {
                let some = app(defs::exists(sigma.clone()), xt.clone());
                let inst = app(xt.clone(), app(defs::epsilon(sigma.clone()), xt.clone()));
                defs::mk_forall(x, defs::mk_imp(some, inst))
            }
            SchemaName::CEps2 => {
                let some = app(defs::exists(sigma.clone()), xt.clone());
                let lhs = app(defs::epsilon(sigma.clone()), xt.clone());
                defs::mk_forall(
                    x,
                    defs::mk_imp(defs::mk_neg(some), defs::mk_eq(lhs, dagger(sigma))),
                )
            }
        }
    }

    /// If `formula` is an instance of this schema at some σ, returns it.
    /// The candidate σ is read off the quantifier structure, so matching
    /// an infinite schema needs one generation and one α-comparison.
    pub fn match_instance(&self, formula: &Term) -> Option<Type> {
        use crate::term::TermKind;
        let TermKind::App(_, arg) = formula.kind() else {
            return None;
        };
        let TermKind::Abs(x, _) = arg.kind() else {
            return None;
        };
        let sigma = x.ty.domain()?.clone();
        if self.generate(&sigma).alpha_eq(formula) {
            Some(sigma)
        } else {
            None
        }
    }
}

/// The schema set for a theory's extension level, per the definitions of
/// LF_ι (D_ι) and LF_ε (D_ι + C_ε).
pub fn extension_axioms(schemas: &[SchemaName]) -> Result<Vec<AxiomSchema>, ExtensionError> {
    if schemas.is_empty() {
        return Err(ExtensionError::NoExtension);
    }
    Ok(schemas.iter().map(|s| AxiomSchema(*s)).collect())
}

/// Slingshot-style ι-term `ι λq.((p→q=⊤) ∧ (¬p→q=⊥))` over a given
/// formula `p`; used only as a negative-test payload.
pub fn slingshot_iota_term(p: &Term) -> Term {
    use crate::defs::{bot, mk_and, mk_eq, mk_imp, mk_iota_binder, mk_neg, top};
    let q = crate::term::fresh_variable('q', &Type::T, &[p], &[]);
    let qv = Term::var(q.clone());
    let body = mk_and(
        mk_imp(p.clone(), mk_eq(qv.clone(), top())),
        mk_imp(mk_neg(p.clone()), mk_eq(qv, bot())),
    );
    mk_iota_binder(q, body)
}

/// The class-abstract slingshot variant `{q : (p→q=⊤) ∧ (¬p→q=⊥)}`.
pub fn slingshot_class_term(p: &Term) -> Term {
    use crate::defs::{bot, mk_and, mk_class_abs, mk_eq, mk_imp, mk_neg, top};
    let q = crate::term::fresh_variable('q', &Type::T, &[p], &[]);
    let qv = Term::var(q.clone());
    let body = mk_and(
        mk_imp(p.clone(), mk_eq(qv.clone(), top())),
        mk_imp(mk_neg(p.clone()), mk_eq(qv, bot())),
    );
    mk_class_abs(q, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dagger_types() {
        assert!(dagger(&Type::T).alpha_eq(&defs::bot()));
        let et = Type::property_of(Type::E);
        // †_{et} = λx^e.⊥
        let d = dagger(&et);
        assert_eq!(*d.ty(), et);
        // exhaustively: † is closed and of type σ for all σ up to depth 4
        fn all_types(depth: usize) -> Vec<Type> {
            let mut out = vec![Type::E, Type::T];
            if depth > 0 {
                let sub = all_types(depth - 1);
                for d in &sub {
                    for c in &sub {
                        let t = Type::fun(d.clone(), c.clone());
                        if t.depth() <= depth {
                            out.push(t);
                        }
                    }
                }
            }
            out
        }
        for sigma in all_types(4) {
            let d = dagger(&sigma);
            assert!(d.is_closed(), "†_{sigma} not closed");
            assert_eq!(*d.ty(), sigma);
        }
    }

    #[test]
    fn axiom_generation_and_matching() {
        for schema in [
            AxiomSchema(SchemaName::DIota1),
            AxiomSchema(SchemaName::DIota2),
            AxiomSchema(SchemaName::CEps1),
            AxiomSchema(SchemaName::CEps2),
        ] {
            for sigma in [Type::E, Type::T, Type::property_of(Type::E)] {
                let sentence = schema.generate(&sigma);
                assert!(sentence.is_closed());
                assert!(sentence.is_formula());
                assert_eq!(schema.match_instance(&sentence), Some(sigma));
            }
        }
        // cross-matching fails
        let d1 = AxiomSchema(SchemaName::DIota1).generate(&Type::E);
        assert_eq!(AxiomSchema(SchemaName::DIota2).match_instance(&d1), None);
    }

    #[test]
    fn no_extension_for_core() {
        assert_eq!(extension_axioms(&[]), Err(ExtensionError::NoExtension));
        let axs = extension_axioms(&[SchemaName::DIota1, SchemaName::DIota2]).unwrap();
        assert_eq!(axs.len(), 2);
    }
}

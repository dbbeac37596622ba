//! Numerals that `ℕ` can certify.
//!
//! `ℕ_σ n` unfolds to "every property of numerals containing 0 and closed
//! under +1 contains n", so the numerals derivable by k uses of the
//! closure hypothesis are exactly the successor chains
//! `((0+1)+1)…+1`. The surface numerals `1+(1+…)` denote the same counts
//! but are different terms; the derivations here use the chains.

use crate::defs;
use crate::kernel::Derivation;
use crate::term::{fresh_variable, Term, Variable};
use crate::types::Type;

use super::helpers::app;
use super::Result;

/// The left-nested successor numeral `((0+1)+1)…+1` with `k` ones.
pub fn chain_numeral(k: u32, sigma: Type) -> Term {
    let mut t = defs::zero(sigma.clone());
    for _ in 0..k {
        t = defs::mk_plus(t, defs::one(sigma.clone()));
    }
    t
}

/// `⊢ ℕ_σ (chain k)`: unfold ℕ and apply the closure hypothesis k times.
pub fn numeral_is_nat(k: u32, sigma: Type) -> Result<Derivation> {
    let num_ty = Type::fun(Type::property_of(sigma.clone()), Type::T);
    let x = fresh_variable('X', &Type::property_of(num_ty.clone()), &[], &[]);
    let xt = Term::var(x.clone());
    let y = fresh_variable('y', &num_ty, &[], &[x.clone()]);
    let closure = Term::abs(
        y.clone(),
        app(
            xt.clone(),
            defs::mk_plus(Term::var(y.clone()), defs::one(sigma.clone())),
        ),
    );
    let h_zero = app(xt.clone(), defs::zero(sigma.clone()));
    let h_closed = defs::mk_include(xt.clone(), closure);
    let ctx = vec![h_zero.clone(), h_closed.clone()];

    let mut cur = super::helpers::assume(&ctx, &h_zero)?;
    for i in 1..=k {
        let incl = super::helpers::assume(&ctx, &h_closed)?;
        let stepped = Derivation::universal_instantiation(incl, cur)?;
        cur = Derivation::beta_rule(
            stepped,
            app(xt.clone(), chain_numeral(i, sigma.clone())),
        )?;
    }
    let cp1 = super::derived::conditional_proof(&cur)?;
    let cp2 = super::derived::conditional_proof(&cp1)?;
    let all = super::derived::forall_intro(&cp2, x)?;
    Ok(Derivation::beta_rule(
        all,
        app(defs::nat(sigma.clone()), chain_numeral(k, sigma)),
    )?)
}

/// The numeral statement fed to R.9: `⊥ ≠ ∃ (chain k)`.
pub fn potential_infinity_statement(k: u32, sigma: Type) -> Term {
    let n = chain_numeral(k, sigma.clone());
    defs::mk_neq(
        defs::bot(),
        app(defs::exists(Type::property_of(sigma)), n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KernelError;
    use crate::theory::{check_theorem, lf, RuleId};

    #[test]
    fn nat_chain_zero_and_small() {
        for k in 0..=4 {
            for sigma in [Type::E, Type::T] {
                let d = numeral_is_nat(k, sigma.clone()).unwrap();
                assert!(d.assumptions().is_empty());
                let expected = app(defs::nat(sigma.clone()), chain_numeral(k, sigma));
                assert!(d.formula().alpha_eq(&expected));
                // only R.1–R.4 are used
                let m = lf()
                    .without_rule(RuleId::R5NegationElimination)
                    .without_rule(RuleId::R6Intensionality)
                    .without_rule(RuleId::R7FunctionExtensionality)
                    .without_rule(RuleId::R8Choice)
                    .without_rule(RuleId::R9PotentialInfinity);
                check_theorem(&m, &d).unwrap();
            }
        }
    }

    #[test]
    fn feeds_potential_infinity() {
        let d = numeral_is_nat(3, Type::T).unwrap();
        let out = Derivation::potential_infinity(d).unwrap();
        assert!(out
            .formula()
            .alpha_eq(&potential_infinity_statement(3, Type::T)));
        // and actual infinity at e, per the Church-style variant
        let de = numeral_is_nat(2, Type::E).unwrap();
        let oute = Derivation::actual_infinity_e(de.clone()).unwrap();
        assert!(oute.formula().is_formula());
        // but not at t
        let dt = numeral_is_nat(2, Type::T).unwrap();
        assert!(matches!(
            Derivation::actual_infinity_e(dt),
            Err(KernelError::TypeRestriction(_))
        ));
        check_theorem(&lf(), &out).unwrap();
    }
}

//! β-reduction and β-equivalence.
//!
//! Terms `(λx.A)B` and `[B/x]A` are immediately β-equivalent; the full
//! relation is the congruence closure under any number of replacements in
//! either direction. Because the terms are simply typed, reduction is
//! strongly normalising and confluent, so the relation is decided by
//! comparing β-normal forms up to α.

use thiserror::Error;

use crate::term::{Term, TermError, TermKind};

/// Step budget for normalisation. Well-typed terms at the scales this
/// crate works with stay far below it; the cap exists so a defect cannot
/// loop.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("reduction step budget exhausted")]
    FuelExhausted,
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Contracts the leftmost-outermost redex, if any.
fn step(term: &Term) -> Option<Term> {
    match term.kind() {
        TermKind::Var(_) | TermKind::Con(_) => None,
        TermKind::App(f, a) => {
            if let TermKind::Abs(x, body) = f.kind() {
                return Some(body.substitute(x, a).expect("redex is well-typed"));
            }
            if let Some(nf) = step(f) {
                return Some(Term::app(nf, a.clone()).expect("reduction preserves typing"));
            }
            step(a).map(|na| Term::app(f.clone(), na).expect("reduction preserves typing"))
        }
        TermKind::Abs(x, b) => step(b).map(|nb| Term::abs(x.clone(), nb)),
    }
}

/// β-normal form by leftmost-outermost contraction.
pub fn beta_normal_form(term: &Term) -> Result<Term, ReduceError> {
    beta_normal_form_fueled(term, DEFAULT_FUEL)
}

pub fn beta_normal_form_fueled(term: &Term, mut fuel: u64) -> Result<Term, ReduceError> {
    let mut cur = term.clone();
    while let Some(next) = step(&cur) {
        if fuel == 0 {
            return Err(ReduceError::FuelExhausted);
        }
        fuel -= 1;
        cur = next;
    }
    Ok(cur)
}

pub fn is_beta_normal(term: &Term) -> bool {
    step(term).is_none()
}

/// Decides `A ∼β B`. Errors if the types differ.
pub fn beta_equivalent(a: &Term, b: &Term) -> Result<bool, ReduceError> {
    if a.ty() != b.ty() {
        return Err(ReduceError::Term(TermError::TypeMismatch {
            expected: a.ty().clone(),
            got: b.ty().clone(),
        }));
    }
    if a.alpha_eq(b) {
        return Ok(true);
    }
    Ok(beta_normal_form(a)?.alpha_eq(&beta_normal_form(b)?))
}

/// Contracts redexes at the head spine only, until the head of the term is
/// not an abstraction. `((λm.λn.λX. body) a) b) c` unfolds to
/// `body[a,b,c]` while leaving every redex inside `body` intact. This is
/// the workhorse for exposing the outer structure of a defined notation
/// (`∃…`, `…∧…`) without normalising its arguments.
pub fn head_unfold(term: &Term) -> Term {
    let mut cur = term.clone();
    loop {
        // Find the spine: cur = h a1 ... an.
        let mut spine = Vec::new();
        let mut head = cur.clone();
        while let TermKind::App(f, a) = head.kind() {
            spine.push(a.clone());
            head = f.clone();
        }
        let TermKind::Abs(x, body) = head.kind() else {
            return cur;
        };
        // Contract the innermost spine application: (λx.body) applied to
        // the last-pushed argument. A bare abstraction has no head redex.
        let Some(arg) = spine.pop() else {
            return cur;
        };
        let mut new = body.substitute(x, &arg).expect("redex is well-typed");
        for a in spine.into_iter().rev() {
            new = Term::app(new, a).expect("spine reapplication is well-typed");
        }
        cur = new;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Variable;
    use crate::types::Type;

    fn v(letter: char, ty: Type) -> Variable {
        Variable::fresh0(letter, ty)
    }

    #[test]
    fn identity_redex() {
        let x = v('x', Type::E);
        let y = v('y', Type::E);
        let t = Term::app(
            Term::abs(x.clone(), Term::var(x.clone())),
            Term::var(y.clone()),
        )
        .unwrap();
        assert_eq!(beta_normal_form(&t).unwrap(), Term::var(y.clone()));
        assert!(beta_equivalent(&t, &Term::var(y)).unwrap());
    }

    #[test]
    fn normal_term_is_fixpoint() {
        let x = v('x', Type::E);
        let t = Term::abs(x.clone(), Term::var(x));
        assert!(is_beta_normal(&t));
        assert_eq!(beta_normal_form(&t).unwrap(), t);
    }

    #[test]
    fn inner_redex() {
        // λx.x ~β λx.(λz.z)x
        let x = v('x', Type::E);
        let z = v('z', Type::E);
        let lhs = Term::abs(x.clone(), Term::var(x.clone()));
        let rhs = Term::abs(
            x.clone(),
            Term::app(
                Term::abs(z.clone(), Term::var(z)),
                Term::var(x.clone()),
            )
            .unwrap(),
        );
        assert!(beta_equivalent(&lhs, &rhs).unwrap());
    }

    #[test]
    fn type_mismatch_rejected() {
        let x = v('x', Type::E);
        let p = v('p', Type::T);
        assert!(beta_equivalent(&Term::var(x), &Term::var(p)).is_err());
    }

    #[test]
    fn head_unfold_leaves_arguments() {
        // (λx. h x) R with R = (λz.z)w head-unfolds to h R: the head is a
        // variable after one contraction, and R's redex survives intact.
        let e = Type::E;
        let x = v('x', e.clone());
        let z = v('z', e.clone());
        let w = v('w', e.clone());
        let h = v('h', Type::fun(e.clone(), e.clone()));
        let r = Term::app(Term::abs(z.clone(), Term::var(z)), Term::var(w)).unwrap();
        let t = Term::app(
            Term::abs(
                x.clone(),
                Term::app(Term::var(h.clone()), Term::var(x.clone())).unwrap(),
            ),
            r.clone(),
        )
        .unwrap();
        let hu = head_unfold(&t);
        let expected = Term::app(Term::var(h), r).unwrap();
        assert_eq!(hu, expected);
        assert!(!is_beta_normal(&hu));
    }
}

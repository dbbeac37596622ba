//! Context bookkeeping on top of the structural rules.

use crate::defs;
use crate::kernel::{Derivation, KernelError};
use crate::term::{Term, Variable};
use crate::types::Type;

use super::Result;

/// `⊢ ⊤`, from hypothesis and Universal Generalization.
pub fn top_theorem() -> Derivation {
    let p = Variable::fresh0('p', Type::T);
    let q = Variable::fresh0('q', Type::T);
    let id = Term::abs(p.clone(), Term::var(p));
    let idq = Term::app(id, Term::var(q.clone())).expect("(λp.p)q is well-typed");
    let hyp = Derivation::hypothesis(vec![], idq).expect("hypothesis");
    Derivation::universal_generalization(hyp, q).expect("q is fresh")
}

/// Appends assumptions on the right, in order.
pub fn weaken_chain(
    mut d: Derivation,
    formulas: impl IntoIterator<Item = Term>,
) -> Result<Derivation> {
    for f in formulas {
        d = Derivation::weakening(d, f)?;
    }
    Ok(d)
}

fn move_right(mut d: Derivation, from: usize, to: usize) -> Result<Derivation> {
    debug_assert!(from <= to);
    for k in from..to {
        d = Derivation::exchange(d, k)?;
    }
    Ok(d)
}

fn move_left(mut d: Derivation, from: usize, to: usize) -> Result<Derivation> {
    debug_assert!(to <= from);
    for k in (to..from).rev() {
        d = Derivation::exchange(d, k)?;
    }
    Ok(d)
}

fn count_alpha(haystack: &[Term], needle: &Term) -> usize {
    haystack.iter().filter(|t| t.alpha_eq(needle)).count()
}

/// Converts `d`'s context to exactly `target` (up to α at each position)
/// by weakening, exchange and contraction. Valid whenever every current
/// assumption also occurs in `target`.
pub fn to_context(mut d: Derivation, target: &[Term]) -> Result<Derivation> {
    for a in d.assumptions() {
        if count_alpha(target, a) == 0 {
            return Err(KernelError::ShapeMismatch(
                "context conversion would need to drop an assumption".into(),
            )
            .into());
        }
    }
    // Remove surplus duplicates.
    loop {
        let ctx = d.assumptions().to_vec();
        let surplus = ctx.iter().enumerate().find_map(|(i, a)| {
            if count_alpha(&ctx, a) > count_alpha(target, a) {
                // find a second occurrence
                ctx.iter()
                    .enumerate()
                    .skip(i + 1)
                    .find(|(_, b)| b.alpha_eq(a))
                    .map(|(j, _)| (i, j))
            } else {
                None
            }
        });
        let Some((i, j)) = surplus else { break };
        let n = d.assumptions().len();
        d = move_right(d, j, n - 1)?;
        d = move_right(d, i, n - 2)?;
        d = Derivation::contraction(d)?;
    }
    // Add what is missing, using the exact instances from `target`.
    for t in target {
        while count_alpha(d.assumptions(), t) < count_alpha(target, t) {
            d = Derivation::weakening(d, t.clone())?;
        }
    }
    // Sort into target order.
    for i in 0..target.len() {
        let ctx = d.assumptions().to_vec();
        if ctx[i].alpha_eq(&target[i]) {
            continue;
        }
        let j = ctx
            .iter()
            .enumerate()
            .skip(i + 1)
            .find(|(_, a)| a.alpha_eq(&target[i]))
            .map(|(j, _)| j)
            .ok_or_else(|| {
                KernelError::ShapeMismatch("context conversion lost an assumption".into())
            })?;
        d = move_left(d, j, i)?;
    }
    Ok(d)
}

/// Replaces the assumption at `index` by a β-equivalent formula.
/// R.2 only rewrites conclusions, so this routes through hypothesis, R.2
/// and cut.
pub fn beta_assumption(d: Derivation, index: usize, new: Term) -> Result<Derivation> {
    let ctx = d.assumptions().to_vec();
    if index >= ctx.len() {
        return Err(KernelError::ShapeMismatch("assumption index out of range".into()).into());
    }
    let mut target = ctx.clone();
    target[index] = new.clone();
    let n = ctx.len();
    // move the assumption to the end
    let moved = move_right(d, index, n - 1)?;
    let mut others = ctx.clone();
    let old = others.remove(index);
    let _ = old;
    // others, new ⊢ new  →β  others, new ⊢ old
    let h = Derivation::hypothesis(others, new)?;
    let b = Derivation::beta_rule(h, moved.assumptions()[n - 1].clone())?;
    let cut = Derivation::cut(b, moved)?;
    to_context(cut, &target)
}

/// `Γ ⊢ ⊤` for any context of formulas.
pub fn top_in(context: &[Term]) -> Result<Derivation> {
    weaken_chain(top_theorem(), context.iter().cloned())
}

/// Shorthand: `Γ, P ⊢ P`.
pub fn hyp(context: &[Term], formula: Term) -> Result<Derivation> {
    Ok(Derivation::hypothesis(context.to_vec(), formula)?)
}

/// Shorthand: `Γ ⊢ P` when `P` is α-present in `Γ` — hypothesis followed
/// by context conversion.
pub fn assume(context: &[Term], formula: &Term) -> Result<Derivation> {
    if !context.iter().any(|a| a.alpha_eq(formula)) {
        return Err(KernelError::ShapeMismatch(
            "assume: formula not among the assumptions".into(),
        )
        .into());
    }
    let mut shorter = context.to_vec();
    // find the last occurrence and use Γ',P ⊢ P then restore the order
    let pos = context
        .iter()
        .rposition(|a| a.alpha_eq(formula))
        .expect("checked above");
    shorter.remove(pos);
    let h = Derivation::hypothesis(shorter, context[pos].clone())?;
    to_context(h, context)
}

pub(crate) fn app(f: Term, a: Term) -> Term {
    Term::app(f, a).expect("library terms are well-typed")
}

/// Fresh variable of the given letter/type avoiding everything in sight.
pub(crate) fn fresh_for(letter: char, ty: &Type, terms: &[&Term]) -> Variable {
    crate::term::fresh_variable(letter, ty, terms, &[])
}

/// All formulas of a derivation's sequent, for freshness computations.
pub(crate) fn sequent_terms(d: &Derivation) -> Vec<Term> {
    let mut out = d.assumptions().to_vec();
    out.push(d.formula().clone());
    out
}

pub(crate) fn bot_is(t: &Term) -> bool {
    t.alpha_eq(&defs::bot())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defs::{bot, mk_neg, top};

    fn p() -> Term {
        Term::var(Variable::fresh0('p', Type::T))
    }
    fn q() -> Term {
        Term::var(Variable::fresh0('q', Type::T))
    }
    fn r() -> Term {
        Term::var(Variable::fresh0('r', Type::T))
    }

    #[test]
    fn top_thm() {
        let t = top_theorem();
        assert!(t.assumptions().is_empty());
        assert!(t.formula().alpha_eq(&top()));
    }

    #[test]
    fn context_conversion() {
        // [p] ⊢ p  converted to  [q, p, r] ⊢ p
        let d = Derivation::hypothesis(vec![], p()).unwrap();
        let out = to_context(d, &[q(), p(), r()]).unwrap();
        assert_eq!(out.assumptions().len(), 3);
        assert!(out.assumptions()[0].alpha_eq(&q()));
        assert!(out.formula().alpha_eq(&p()));
        // dedup: [p, q, p] ⊢ p → [q, p] ⊢ p
        let d = Derivation::hypothesis(vec![p(), q()], p()).unwrap();
        let out = to_context(d, &[q(), p()]).unwrap();
        assert_eq!(out.assumptions().len(), 2);
        // dropping is refused
        let d = Derivation::hypothesis(vec![q()], p()).unwrap();
        assert!(to_context(d, &[p()]).is_err());
    }

    #[test]
    fn assumption_beta() {
        // [(λx.⊥) p-ish] rewritten to [⊥]
        let x = Variable::fresh0('x', Type::T);
        let redex = Term::app(Term::abs(x, bot()), p()).unwrap();
        let d = Derivation::hypothesis(vec![q(), redex.clone()], r()).unwrap(); // q, redex, r ⊢ r
        let out = beta_assumption(d, 1, bot()).unwrap();
        assert!(out.assumptions()[1].alpha_eq(&bot()));
        assert_eq!(out.assumptions().len(), 3);
        assert!(out.formula().alpha_eq(&r()));
    }

    #[test]
    fn assume_anywhere() {
        let ctx = vec![p(), q(), r()];
        let d = assume(&ctx, &q()).unwrap();
        assert_eq!(d.assumptions(), &ctx[..]);
        assert!(d.formula().alpha_eq(&q()));
        assert!(assume(&ctx, &mk_neg(p())).is_err());
    }
}

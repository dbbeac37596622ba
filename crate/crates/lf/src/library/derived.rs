//! The derived rule kit: Modus Ponens and Conditional Proof (replaying
//! the written four- and six-step trees), the classical
//! natural-deduction rules, equality reasoning and quantifier rules.

use crate::defs;
use crate::kernel::{Derivation, KernelError};
use crate::term::{Term, TermKind, Variable};
use crate::types::Type;

use super::helpers::{
    app, assume, beta_assumption, fresh_for, hyp, sequent_terms, to_context, top_in, top_theorem,
    weaken_chain,
};
use super::{LibraryError, Result};

fn shape(msg: impl Into<String>) -> LibraryError {
    KernelError::ShapeMismatch(msg.into()).into()
}

fn fresh_pair(letter1: char, letter2: char, avoid: &[Term]) -> (Variable, Variable) {
    let refs: Vec<&Term> = avoid.iter().collect();
    let a = fresh_for(letter1, &Type::T, &refs);
    let mut b = fresh_for(letter2, &Type::T, &refs);
    if b.letter == a.letter && b.primes == a.primes {
        b = b.primed();
    }
    (a, b)
}

/// Decomposes `P → Q` in its verbatim definitional form.
pub(crate) fn match_imp(t: &Term) -> Option<(&Term, &Term)> {
    if let TermKind::App(pq, q) = t.kind() {
        if let TermKind::App(c, p) = pq.kind() {
            if c.alpha_eq(&defs::imp()) {
                return Some((p, q));
            }
        }
    }
    None
}

fn match_binop(t: &Term, op: &Term) -> Option<(Term, Term)> {
    if let TermKind::App(pq, q) = t.kind() {
        if let TermKind::App(c, p) = pq.kind() {
            if c.alpha_eq(op) {
                return Some((p.clone(), q.clone()));
            }
        }
    }
    None
}

pub(crate) fn match_and(t: &Term) -> Option<(Term, Term)> {
    match_binop(t, &defs::and_())
}

pub(crate) fn match_or(t: &Term) -> Option<(Term, Term)> {
    match_binop(t, &defs::or_())
}

pub(crate) fn match_iff(t: &Term) -> Option<(Term, Term)> {
    match_binop(t, &defs::iff())
}

pub(crate) fn match_neg(t: &Term) -> Option<Term> {
    if let TermKind::App(c, p) = t.kind() {
        if c.alpha_eq(&defs::neg()) {
            return Some(p.clone());
        }
    }
    None
}

pub(crate) fn match_eq_parts(t: &Term) -> Option<(Type, Term, Term)> {
    if let TermKind::App(el, rhs) = t.kind() {
        if let TermKind::App(e, lhs) = el.kind() {
            let sigma = lhs.ty().clone();
            if e.alpha_eq(&defs::eq(sigma.clone())) {
                return Some((sigma, lhs.clone(), rhs.clone()));
            }
        }
    }
    None
}

/// `∀_σ M` decomposed.
pub(crate) fn match_forall(t: &Term) -> Option<(Type, Term)> {
    if let TermKind::App(q, m) = t.kind() {
        if let Some(sigma) = m.ty().domain() {
            if q.alpha_eq(&defs::forall(sigma.clone())) {
                return Some((sigma.clone(), m.clone()));
            }
        }
    }
    None
}

pub(crate) fn match_exists(t: &Term) -> Option<(Type, Term)> {
    if let TermKind::App(q, m) = t.kind() {
        if let Some(sigma) = m.ty().domain() {
            if q.alpha_eq(&defs::exists(sigma.clone())) {
                return Some((sigma.clone(), m.clone()));
            }
        }
    }
    None
}

/// Modus Ponens: from `Γ ⊢ P` and `Γ ⊢ P→Q`, conclude `Γ ⊢ Q` by the
/// four-step tree (β, unfold →, Universal Instantiation, β).
pub fn modus_ponens(d_p: &Derivation, d_imp: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_imp(d_imp.formula()) else {
        return Err(shape("modus ponens needs Γ ⊢ P → Q as second premise"));
    };
    let (p, q) = (p.clone(), q.clone());
    if d_p.assumptions().len() != d_imp.assumptions().len()
        || !d_p
            .assumptions()
            .iter()
            .zip(d_imp.assumptions())
            .all(|(a, b)| a.alpha_eq(b))
    {
        return Err(KernelError::ContextMismatch.into());
    }
    let mut avoid = sequent_terms(d_p);
    avoid.extend(sequent_terms(d_imp));
    let (pv, rv) = fresh_pair('p', 'r', &avoid);
    let lam_p = Term::abs(rv.clone(), p.clone());
    let lam_q = Term::abs(rv.clone(), q.clone());
    let t1 = Derivation::beta_rule(d_p.clone(), app(lam_p.clone(), Term::var(pv.clone())))?;
    let t2 = Derivation::beta_rule(d_imp.clone(), defs::mk_include(lam_p, lam_q))?;
    let t3 = Derivation::universal_instantiation(t2, t1)?;
    Ok(Derivation::beta_rule(t3, q)?)
}

/// Conditional Proof: from `Γ, P ⊢ Q` conclude `Γ ⊢ P → Q` by the
/// written tree (hypothesis, β, cut, β, Universal Generalization,
/// fold →).
pub fn conditional_proof(d: &Derivation) -> Result<Derivation> {
    let Some(p) = d.assumptions().last().cloned() else {
        return Err(shape("conditional proof needs Γ, P ⊢ Q"));
    };
    let q = d.formula().clone();
    let gamma = d.assumptions()[..d.assumptions().len() - 1].to_vec();
    let avoid = sequent_terms(d);
    let (pv, rv) = fresh_pair('p', 'r', &avoid);
    let lam_p = Term::abs(rv.clone(), p.clone());
    let lam_q = Term::abs(rv.clone(), q.clone());
    let lam_p_p = app(lam_p.clone(), Term::var(pv.clone()));
    let h = Derivation::hypothesis(gamma.clone(), lam_p_p.clone())?;
    let b1 = Derivation::beta_rule(h, p.clone())?;
    let cut = Derivation::cut(b1, d.clone())?;
    let mut target = gamma.clone();
    target.push(lam_p_p);
    let narrowed = to_context(cut, &target)?;
    let b2 = Derivation::beta_rule(narrowed, app(lam_q.clone(), Term::var(pv.clone())))?;
    let ug = Derivation::universal_generalization(b2, pv)?;
    Ok(Derivation::beta_rule(ug, defs::mk_imp(p, q))?)
}

/// From `Γ ⊢ ⊥` conclude `Γ ⊢ P`, by R.3 on the expansion of ⊥.
pub fn ex_falso(d: &Derivation, target: Term) -> Result<Derivation> {
    if !d.formula().alpha_eq(&defs::bot()) {
        return Err(shape("ex falso needs Γ ⊢ ⊥"));
    }
    if !target.is_formula() {
        return Err(shape("ex falso target must be a formula"));
    }
    // [⊥] ⊢ target
    let bot = defs::bot();
    let h = Derivation::hypothesis(vec![], bot.clone())?;
    let w = Derivation::weakening(top_theorem(), bot.clone())?;
    let pv = fresh_for('p', &Type::T, &[&target]);
    let konst = Term::abs(pv.clone(), defs::top());
    let b = Derivation::beta_rule(w, app(konst, target.clone()))?;
    let ui = Derivation::universal_instantiation(h, b)?;
    let fin = Derivation::beta_rule(ui, target)?;
    Ok(Derivation::cut(d.clone(), fin)?)
}

/// From `Γ, P ⊢ ⊥` conclude `Γ ⊢ ¬P`.
pub fn neg_intro(d: &Derivation) -> Result<Derivation> {
    if !d.formula().alpha_eq(&defs::bot()) {
        return Err(shape("negation introduction needs Γ, P ⊢ ⊥"));
    }
    let Some(p) = d.assumptions().last().cloned() else {
        return Err(shape("negation introduction needs Γ, P ⊢ ⊥"));
    };
    let cp = conditional_proof(d)?;
    Ok(Derivation::beta_rule(cp, defs::mk_neg(p))?)
}

/// From `Γ ⊢ ¬P` and `Γ ⊢ P` conclude `Γ ⊢ target` (anything follows).
pub fn neg_elim(d_neg: &Derivation, d_p: &Derivation, target: Term) -> Result<Derivation> {
    let Some(p) = match_neg(d_neg.formula()) else {
        return Err(shape("negation elimination needs Γ ⊢ ¬P"));
    };
    let as_imp = Derivation::beta_rule(
        d_neg.clone(),
        defs::mk_imp(p, defs::bot()),
    )?;
    let bottom = modus_ponens(d_p, &as_imp)?;
    if target.alpha_eq(&defs::bot()) {
        return Ok(bottom);
    }
    ex_falso(&bottom, target)
}

/// From `Γ ⊢ ¬¬P` conclude `Γ ⊢ P` (uses R.5).
pub fn neg_elim_classical(d: &Derivation) -> Result<Derivation> {
    let Some(np) = match_neg(d.formula()) else {
        return Err(shape("classical negation elimination needs Γ ⊢ ¬¬P"));
    };
    let Some(p) = match_neg(&np) else {
        return Err(shape("classical negation elimination needs Γ ⊢ ¬¬P"));
    };
    let w = Derivation::weakening(d.clone(), defs::mk_neg(p.clone()))?;
    let mut ctx = d.assumptions().to_vec();
    ctx.push(defs::mk_neg(p.clone()));
    let h = assume(&ctx, &defs::mk_neg(p.clone()))?;
    let with_p = neg_elim(&w, &h, p)?;
    Ok(Derivation::negation_elimination(with_p)?)
}

/// From `Γ, ¬P ⊢ ⊥` conclude `Γ ⊢ P` (reductio, uses R.5).
pub fn reductio(d: &Derivation) -> Result<Derivation> {
    let Some(np) = d.assumptions().last() else {
        return Err(shape("reductio needs Γ, ¬P ⊢ ⊥"));
    };
    let Some(p) = match_neg(np) else {
        return Err(shape("reductio's last assumption must be a negation"));
    };
    let to_p = ex_falso(d, p)?;
    Ok(Derivation::negation_elimination(to_p)?)
}

/// `Γ ⊢ P ∨ ¬P`.
pub fn excluded_middle(context: &[Term], p: Term) -> Result<Derivation> {
    let np = defs::mk_neg(p.clone());
    let h = hyp(context, np.clone())?;
    let cp = conditional_proof(&h)?;
    Ok(Derivation::beta_rule(cp, defs::mk_or(p, np))?)
}

/// From `Γ ⊢ P` and `Γ ⊢ Q` conclude `Γ ⊢ P ∧ Q`.
pub fn and_intro(d_p: &Derivation, d_q: &Derivation) -> Result<Derivation> {
    let p = d_p.formula().clone();
    let q = d_q.formula().clone();
    let gamma = d_p.assumptions().to_vec();
    // H := ¬¬P → ¬Q; from H and P, Q a contradiction follows.
    let h_formula = defs::mk_imp(
        defs::mk_neg(defs::mk_neg(p.clone())),
        defs::mk_neg(q.clone()),
    );
    let mut ctx_h = gamma.clone();
    ctx_h.push(h_formula.clone());
    let w_p = Derivation::weakening(d_p.clone(), h_formula.clone())?;
    let w_q = Derivation::weakening(d_q.clone(), h_formula.clone())?;
    // Γ, H, ¬P ⊢ ⊥ gives Γ, H ⊢ ¬¬P
    let np = defs::mk_neg(p.clone());
    let h_np = hyp(&ctx_h, np.clone())?;
    let w_p2 = Derivation::weakening(w_p, np)?;
    let falsum = neg_elim(&h_np, &w_p2, defs::bot())?;
    let nn_p = neg_intro(&falsum)?;
    let h_h = assume(&ctx_h, &h_formula)?;
    let n_q = modus_ponens(&nn_p, &h_h)?;
    let z = neg_elim(&n_q, &w_q, defs::bot())?;
    let ni = neg_intro(&z)?;
    Ok(Derivation::beta_rule(ni, defs::mk_and(p, q))?)
}

/// From `Γ ⊢ P ∧ Q` conclude `Γ ⊢ P`.
pub fn and_elim_l(d: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_and(d.formula()) else {
        return Err(shape("conjunction elimination needs Γ ⊢ P ∧ Q"));
    };
    and_elim(d, &p, &q, true)
}

/// From `Γ ⊢ P ∧ Q` conclude `Γ ⊢ Q`.
pub fn and_elim_r(d: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_and(d.formula()) else {
        return Err(shape("conjunction elimination needs Γ ⊢ P ∧ Q"));
    };
    and_elim(d, &p, &q, false)
}

fn and_elim(d: &Derivation, p: &Term, q: &Term, left: bool) -> Result<Derivation> {
    let target = if left { p.clone() } else { q.clone() };
    let nt = defs::mk_neg(target.clone());
    let mut ctx = d.assumptions().to_vec();
    ctx.push(nt.clone());
    // Γ, ¬T ⊢ ¬(¬¬P → ¬Q)
    let w = Derivation::weakening(d.clone(), nt.clone())?;
    let h_def = defs::mk_imp(
        defs::mk_neg(defs::mk_neg(p.clone())),
        defs::mk_neg(q.clone()),
    );
    let b = Derivation::beta_rule(w, defs::mk_neg(h_def.clone()))?;
    // Γ, ¬T ⊢ ¬¬P → ¬Q from the hypothesis ¬T
    let h_ctx = {
        let mut c = ctx.clone();
        c.push(defs::mk_neg(defs::mk_neg(p.clone())));
        c
    };
    let imp = if left {
        // from ¬P (= ¬T) and ¬¬P anything follows
        let nn_p = assume(&h_ctx, &defs::mk_neg(defs::mk_neg(p.clone())))?;
        let n_p = assume(&h_ctx, &nt)?;
        let nq = neg_elim(&nn_p, &n_p, defs::mk_neg(q.clone()))?;
        conditional_proof(&nq)?
    } else {
        // ¬Q (= ¬T) is available outright
        let n_q = assume(&h_ctx, &nt)?;
        conditional_proof(&n_q)?
    };
    let z = neg_elim(&b, &imp, target)?;
    Ok(Derivation::negation_elimination(z)?)
}

/// From `Γ ⊢ P` conclude `Γ ⊢ P ∨ Q`.
pub fn or_intro_l(d: &Derivation, q: Term) -> Result<Derivation> {
    let p = d.formula().clone();
    let np = defs::mk_neg(p.clone());
    let w = Derivation::weakening(d.clone(), np.clone())?;
    let mut ctx = d.assumptions().to_vec();
    ctx.push(np);
    let h = assume(&ctx, ctx.last().expect("just pushed"))?;
    let qd = neg_elim(&h, &w, q.clone())?;
    let cp = conditional_proof(&qd)?;
    Ok(Derivation::beta_rule(cp, defs::mk_or(p, q))?)
}

/// From `Γ ⊢ Q` conclude `Γ ⊢ P ∨ Q`.
pub fn or_intro_r(d: &Derivation, p: Term) -> Result<Derivation> {
    let q = d.formula().clone();
    let w = Derivation::weakening(d.clone(), defs::mk_neg(p.clone()))?;
    let cp = conditional_proof(&w)?;
    Ok(Derivation::beta_rule(cp, defs::mk_or(p, q))?)
}

/// From `Γ ⊢ P ∨ Q`, `Γ, P ⊢ R`, `Γ, Q ⊢ R` conclude `Γ ⊢ R` (uses R.5).
pub fn or_elim(d_or: &Derivation, d_l: &Derivation, d_r: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_or(d_or.formula()) else {
        return Err(shape("disjunction elimination needs Γ ⊢ P ∨ Q"));
    };
    let r = d_l.formula().clone();
    if !d_r.formula().alpha_eq(&r) {
        return Err(shape("disjunction elimination branches prove different formulas"));
    }
    let gamma = d_or.assumptions().to_vec();
    let nr = defs::mk_neg(r.clone());
    let mut ctx = gamma.clone();
    ctx.push(nr.clone());
    let cp_l = conditional_proof(d_l)?; // Γ ⊢ P → R
    let cp_r = conditional_proof(d_r)?; // Γ ⊢ Q → R
    let w_or = Derivation::weakening(d_or.clone(), nr.clone())?;
    let w_l = Derivation::weakening(cp_l, nr.clone())?;
    let w_r = Derivation::weakening(cp_r, nr.clone())?;
    // Γ, ¬R ⊢ ¬P
    let np = {
        let mut c2 = ctx.clone();
        c2.push(p.clone());
        let hp = hyp(&ctx, p.clone())?;
        let w_l2 = Derivation::weakening(w_l, p.clone())?;
        let rr = modus_ponens(&hp, &w_l2)?;
        let hnr = assume(&c2, &nr)?;
        let falsum = neg_elim(&hnr, &rr, defs::bot())?;
        neg_intro(&falsum)?
    };
    let b_or = Derivation::beta_rule(w_or, defs::mk_imp(defs::mk_neg(p.clone()), q.clone()))?;
    let qd = modus_ponens(&np, &b_or)?;
    let rd = modus_ponens(&qd, &w_r)?;
    Ok(Derivation::negation_elimination(rd)?)
}

/// From `Γ ⊢ P → Q` and `Γ ⊢ Q → P` conclude `Γ ⊢ P ↔ Q`.
pub fn iff_intro(d_fwd: &Derivation, d_bwd: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_imp(d_fwd.formula()) else {
        return Err(shape("iff introduction needs Γ ⊢ P → Q"));
    };
    let (p, q) = (p.clone(), q.clone());
    let both = and_intro(d_fwd, d_bwd)?;
    Ok(Derivation::beta_rule(both, defs::mk_iff(p, q))?)
}

/// From `Γ ⊢ P ↔ Q` extract `Γ ⊢ P → Q`.
pub fn iff_forward(d: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_iff(d.formula()) else {
        return Err(shape("iff elimination needs Γ ⊢ P ↔ Q"));
    };
    let as_and = Derivation::beta_rule(
        d.clone(),
        defs::mk_and(
            defs::mk_imp(p.clone(), q.clone()),
            defs::mk_imp(q, p),
        ),
    )?;
    and_elim_l(&as_and)
}

/// From `Γ ⊢ P ↔ Q` extract `Γ ⊢ Q → P`.
pub fn iff_backward(d: &Derivation) -> Result<Derivation> {
    let Some((p, q)) = match_iff(d.formula()) else {
        return Err(shape("iff elimination needs Γ ⊢ P ↔ Q"));
    };
    let as_and = Derivation::beta_rule(
        d.clone(),
        defs::mk_and(
            defs::mk_imp(p.clone(), q.clone()),
            defs::mk_imp(q, p),
        ),
    )?;
    and_elim_r(&as_and)
}

/// Biconditional modus ponens: from `Γ ⊢ P ↔ Q` and `Γ ⊢ P`, `Γ ⊢ Q`.
pub fn iff_elim(d_iff: &Derivation, d_p: &Derivation) -> Result<Derivation> {
    let fwd = iff_forward(d_iff)?;
    modus_ponens(d_p, &fwd)
}

// ---------------------------------------------------------------- equality

/// `Γ ⊢ a = a`.
pub fn refl_term(context: &[Term], a: Term) -> Result<Derivation> {
    let sigma = a.ty().clone();
    let prop = Type::property_of(sigma);
    let z = fresh_for('Z', &prop, &[&a]);
    let lza = Term::abs(z.clone(), app(Term::var(z.clone()), a.clone()));
    let mut avoid: Vec<&Term> = context.iter().collect();
    avoid.push(&a);
    let w = crate::term::fresh_variable('W', &prop, &avoid, &[z.clone()]);
    let h = Derivation::hypothesis(
        context.to_vec(),
        app(lza.clone(), Term::var(w.clone())),
    )?;
    let ug = Derivation::universal_generalization(h, w)?;
    Ok(Derivation::beta_rule(ug, defs::mk_eq(a.clone(), a))?)
}

/// `∀x^σ. x = x`.
pub fn eq_refl(sigma: Type) -> Result<Derivation> {
    let x = Variable::fresh0('x', sigma);
    let refl = refl_term(&[], Term::var(x.clone()))?;
    forall_intro(&refl, x)
}

/// Leibniz transport: from `Γ ⊢ a = b` and `Γ ⊢ X` with `X ∼β C a`,
/// conclude `Γ ⊢ C b` (unreduced application).
pub fn eq_subst(d_eq: &Derivation, c: &Term, d_ca: &Derivation) -> Result<Derivation> {
    let Some((sigma, a, b)) = match_eq_parts(d_eq.formula()) else {
        return Err(shape("equality substitution needs Γ ⊢ a = b"));
    };
    let prop = Type::property_of(sigma);
    if *c.ty() != prop {
        return Err(KernelError::TypeMismatch {
            expected: prop,
            got: c.ty().clone(),
        }
        .into());
    }
    let z = fresh_for('Z', c.ty(), &[&a, &b, c]);
    let lza = Term::abs(z.clone(), app(Term::var(z.clone()), a.clone()));
    let lzb = Term::abs(z.clone(), app(Term::var(z.clone()), b.clone()));
    let incl = Derivation::beta_rule(d_eq.clone(), defs::mk_include(lza.clone(), lzb.clone()))?;
    let inst = Derivation::beta_rule(d_ca.clone(), app(lza, c.clone()))?;
    let ui = Derivation::universal_instantiation(incl, inst)?;
    Ok(Derivation::beta_rule(ui, app(lzb, c.clone()))?)
}

/// As [`eq_subst`], with a final β step to `target`.
pub fn eq_subst_to(
    d_eq: &Derivation,
    c: &Term,
    d_ca: &Derivation,
    target: Term,
) -> Result<Derivation> {
    let raw = eq_subst(d_eq, c, d_ca)?;
    Ok(Derivation::beta_rule(raw, target)?)
}

/// From `Γ ⊢ a = b` conclude `Γ ⊢ b = a`.
pub fn eq_sym(d: &Derivation) -> Result<Derivation> {
    let Some((sigma, a, b)) = match_eq_parts(d.formula()) else {
        return Err(shape("symmetry needs Γ ⊢ a = b"));
    };
    let s = fresh_for('s', &sigma, &[&a, &b]);
    let c = Term::abs(s.clone(), defs::mk_eq(Term::var(s), a.clone()));
    let refl = refl_term(d.assumptions(), a.clone())?;
    eq_subst_to(d, &c, &refl, defs::mk_eq(b, a))
}

/// From `Γ ⊢ a = b` and `Γ ⊢ b = c` conclude `Γ ⊢ a = c`.
pub fn eq_trans(d_ab: &Derivation, d_bc: &Derivation) -> Result<Derivation> {
    let Some((sigma, a, _b)) = match_eq_parts(d_ab.formula()) else {
        return Err(shape("transitivity needs Γ ⊢ a = b"));
    };
    let Some((_, _, c_term)) = match_eq_parts(d_bc.formula()) else {
        return Err(shape("transitivity needs Γ ⊢ b = c"));
    };
    let s = fresh_for('s', &sigma, &[&a, &c_term]);
    let ctx = Term::abs(s.clone(), defs::mk_eq(a.clone(), Term::var(s)));
    eq_subst_to(d_bc, &ctx, d_ab, defs::mk_eq(a, c_term))
}

// -------------------------------------------------------------- quantifiers

/// From `Γ ⊢ P` conclude `Γ ⊢ ∀x.P`, `x` not free in `Γ`.
pub fn forall_intro(d: &Derivation, x: Variable) -> Result<Derivation> {
    let p = d.formula().clone();
    let sigma = x.ty.clone();
    let y = Variable::fresh0('y', sigma.clone());
    let triv = Term::abs(y, defs::top());
    let w = Derivation::weakening(d.clone(), app(triv.clone(), Term::var(x.clone())))?;
    let b = Derivation::beta_rule(
        w,
        app(Term::abs(x.clone(), p.clone()), Term::var(x.clone())),
    )?;
    let ug = Derivation::universal_generalization(b, x.clone())?;
    Ok(Derivation::beta_rule(ug, defs::mk_forall(x, p))?)
}

/// From `Γ ⊢ ∀_σ M` conclude `Γ ⊢ [a/x]body` when `M = λx.body`, or
/// `Γ ⊢ M a` otherwise.
pub fn forall_elim(d: &Derivation, a: Term) -> Result<Derivation> {
    let raw = forall_elim_raw(d, a)?;
    if let TermKind::App(m, arg) = raw.formula().clone().kind() {
        if let TermKind::Abs(x, body) = m.kind() {
            let reduced = body
                .substitute(x, arg)
                .expect("instantiation is well-typed");
            return Ok(Derivation::beta_rule(raw, reduced)?);
        }
    }
    Ok(raw)
}

/// From `Γ ⊢ ∀_σ M` conclude `Γ ⊢ M a` (unreduced).
pub fn forall_elim_raw(d: &Derivation, a: Term) -> Result<Derivation> {
    let Some((sigma, m)) = match_forall(d.formula()) else {
        return Err(shape("∀-elimination needs Γ ⊢ ∀_σ M"));
    };
    if *a.ty() != sigma {
        return Err(KernelError::TypeMismatch {
            expected: sigma,
            got: a.ty().clone(),
        }
        .into());
    }
    let y = fresh_for('y', &sigma, &[&m, &a]);
    let triv = Term::abs(y, defs::top());
    let b1 = Derivation::beta_rule(d.clone(), defs::mk_include(triv.clone(), m.clone()))?;
    let t = top_in(d.assumptions())?;
    let b2 = Derivation::beta_rule(t, app(triv, a.clone()))?;
    let ui = Derivation::universal_instantiation(b1, b2)?;
    Ok(ui)
}

/// From `Γ ⊢ X` with `X ∼β M a`, conclude `Γ ⊢ ∃_σ M`.
pub fn exists_intro(d: &Derivation, m: Term, a: Term) -> Result<Derivation> {
    let Some(sigma) = m.ty().domain().cloned() else {
        return Err(shape("∃-introduction needs a property as witness predicate"));
    };
    if *m.ty() != Type::property_of(sigma.clone()) {
        return Err(shape("∃-introduction predicate must be σ → t"));
    }
    let yv = fresh_for('y', &sigma, &[&m, &a]);
    let u = defs::mk_forall(
        yv.clone(),
        defs::mk_neg(app(m.clone(), Term::var(yv.clone()))),
    );
    let mut ctx = d.assumptions().to_vec();
    ctx.push(u.clone());
    let h_u = hyp(d.assumptions(), u.clone())?;
    let fe = forall_elim(&h_u, a.clone())?; // Γ,U ⊢ ¬(M a)
    let w = Derivation::weakening(d.clone(), u)?;
    let bx = Derivation::beta_rule(w, app(m.clone(), a))?;
    let z = neg_elim(&fe, &bx, defs::bot())?;
    let ni = neg_intro(&z)?;
    Ok(Derivation::beta_rule(
        ni,
        app(defs::exists(sigma), m),
    )?)
}

/// From `Γ ⊢ ∃_σ M` and `Γ, M z ⊢ Q` conclude `Γ ⊢ Q`, `z` fresh for
/// `M`, `Q` and `Γ` (uses R.5).
pub fn exists_elim(d_ex: &Derivation, d_body: &Derivation, z: Variable) -> Result<Derivation> {
    let Some((sigma, m)) = match_exists(d_ex.formula()) else {
        return Err(shape("∃-elimination needs Γ ⊢ ∃_σ M"));
    };
    if z.ty != sigma {
        return Err(KernelError::TypeMismatch {
            expected: sigma,
            got: z.ty.clone(),
        }
        .into());
    }
    let q = d_body.formula().clone();
    let expected_last = app(m.clone(), Term::var(z.clone()));
    match d_body.assumptions().last() {
        Some(last) if last.alpha_eq(&expected_last) => {}
        _ => {
            return Err(shape(
                "∃-elimination's second premise must end with the assumption M z",
            ))
        }
    }
    if m.is_free(&z) || q.is_free(&z) {
        return Err(KernelError::FreshnessViolation {
            var: z,
            place: "M or Q".into(),
        }
        .into());
    }
    for (i, a) in d_ex.assumptions().iter().enumerate() {
        if a.is_free(&z) {
            return Err(KernelError::FreshnessViolation {
                var: z,
                place: format!("context formula {i}"),
            }
            .into());
        }
    }
    let gamma = d_ex.assumptions().to_vec();
    let nq = defs::mk_neg(q.clone());
    let mut ctx = gamma.clone();
    ctx.push(nq.clone());
    let cp = conditional_proof(d_body)?; // Γ ⊢ M z → Q
    let w_imp = Derivation::weakening(cp, nq.clone())?;
    // Γ, ¬Q ⊢ ¬(M z)
    let n_mz = {
        let mut c2 = ctx.clone();
        c2.push(expected_last.clone());
        let h_mz = hyp(&ctx, expected_last.clone())?;
        let w_imp2 = Derivation::weakening(w_imp, expected_last)?;
        let qd = modus_ponens(&h_mz, &w_imp2)?;
        let h_nq = assume(&c2, &nq)?;
        let falsum = neg_elim(&h_nq, &qd, defs::bot())?;
        neg_intro(&falsum)?
    };
    let all = forall_intro(&n_mz, z)?; // Γ, ¬Q ⊢ ∀z.¬(M z)
    let w_ex = Derivation::weakening(d_ex.clone(), nq)?;
    let b_ex = Derivation::beta_rule(w_ex, defs::mk_neg(all.formula().clone()))?;
    let z2 = neg_elim(&b_ex, &all, q)?;
    Ok(Derivation::negation_elimination(z2)?)
}

/// From `⊢ P` (no assumptions) conclude `⊢ □P`, via Intensionality
/// between `P` and `⊤`.
pub fn necessitation(d: &Derivation) -> Result<Derivation> {
    if !d.assumptions().is_empty() {
        return Err(shape("necessitation needs a theorem (empty context)"));
    }
    let p = d.formula().clone();
    let w = Derivation::weakening(d.clone(), defs::top())?;
    let t = Derivation::weakening(top_theorem(), p)?;
    Ok(Derivation::intensionality(w, t)?)
}

/// `⊢ (⊤ → B) = B`.
pub fn imp_top_identity(b: Term) -> Result<Derivation> {
    let impf = defs::mk_imp(defs::top(), b.clone());
    let fwd = {
        let h = Derivation::hypothesis(vec![], impf.clone())?;
        let t = Derivation::weakening(top_theorem(), impf.clone())?;
        modus_ponens(&t, &h)?
    };
    let bwd = {
        let h = Derivation::hypothesis(vec![], b.clone())?;
        let w = Derivation::weakening(h, defs::top())?;
        conditional_proof(&w)?
    };
    Ok(Derivation::intensionality(fwd, bwd)?)
}

/// K-style transport: from `Γ ⊢ □(A → B)` and `Γ ⊢ □A`, `Γ ⊢ □B`.
pub fn box_mp(d_imp: &Derivation, d_a: &Derivation) -> Result<Derivation> {
    let Some((_, lhs, ab)) = match_eq_parts(d_imp.formula()) else {
        return Err(shape("box modus ponens needs Γ ⊢ □(A → B)"));
    };
    if !lhs.alpha_eq(&defs::top()) {
        return Err(shape("box modus ponens needs Γ ⊢ □(A → B)"));
    }
    let Some((a, b)) = match_imp(&ab) else {
        return Err(shape("box modus ponens needs Γ ⊢ □(A → B)"));
    };
    let (a, b) = (a.clone(), b.clone());
    let sym_a = eq_sym(d_a)?; // Γ ⊢ A = ⊤
    let s = fresh_for('s', &Type::T, &[&a, &b]);
    let c1 = Term::abs(
        s.clone(),
        defs::mk_box(defs::mk_imp(Term::var(s.clone()), b.clone())),
    );
    let st = eq_subst_to(
        &sym_a,
        &c1,
        d_imp,
        defs::mk_box(defs::mk_imp(defs::top(), b.clone())),
    )?;
    let ident = imp_top_identity(b.clone())?;
    let ident_g = weaken_chain(ident, d_imp.assumptions().iter().cloned())?;
    let ident_g = to_context(ident_g, d_imp.assumptions())?;
    eq_trans(&st, &ident_g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{check_theorem, lf};

    fn pv() -> Term {
        Term::var(Variable::fresh0('p', Type::T))
    }
    fn qv() -> Term {
        Term::var(Variable::fresh0('q', Type::T))
    }

    #[test]
    fn mp_basics() {
        // ⊢ ⊤ and ⊢ ⊤ → ⊤ give ⊢ ⊤
        let t = top_theorem();
        let imp_tt = {
            let h = Derivation::hypothesis(vec![], defs::top()).unwrap();
            conditional_proof(&h).unwrap()
        };
        let out = modus_ponens(&t, &imp_tt).unwrap();
        assert!(out.formula().alpha_eq(&defs::top()));
        assert!(out.assumptions().is_empty());
        // context mismatch is rejected
        let with_ctx = Derivation::weakening(t, pv()).unwrap();
        assert!(matches!(
            modus_ponens(&with_ctx, &imp_tt),
            Err(LibraryError::Kernel(KernelError::ContextMismatch))
        ));
    }

    #[test]
    fn cp_discharges() {
        // [p] ⊢ p gives ⊢ p → p
        let h = Derivation::hypothesis(vec![], pv()).unwrap();
        let out = conditional_proof(&h).unwrap();
        assert!(out.assumptions().is_empty());
        assert!(out.formula().alpha_eq(&defs::mk_imp(pv(), pv())));
        check_theorem(&lf(), &out).unwrap_err(); // p free is fine; no assumptions...
    }

    #[test]
    fn cp_with_colliding_names() {
        // the statement mentions p and r, which collide with the letters
        // CP prefers; the builder must re-choose
        let p = pv();
        let r = Term::var(Variable::fresh0('r', Type::T));
        let conj = defs::mk_and(p.clone(), r.clone());
        let h = Derivation::hypothesis(vec![], conj.clone()).unwrap();
        let out = conditional_proof(&h).unwrap();
        assert!(out.formula().alpha_eq(&defs::mk_imp(conj.clone(), conj)));
    }

    #[test]
    fn prop_kit() {
        let p = pv();
        let q = qv();
        // and
        let hp = Derivation::hypothesis(vec![], p.clone()).unwrap();
        let hp = Derivation::weakening(hp, q.clone()).unwrap(); // p, q ⊢ p
        let hq = Derivation::hypothesis(vec![p.clone()], q.clone()).unwrap(); // p, q ⊢ q
        let both = and_intro(&hp, &hq).unwrap();
        assert!(both.formula().alpha_eq(&defs::mk_and(p.clone(), q.clone())));
        let l = and_elim_l(&both).unwrap();
        assert!(l.formula().alpha_eq(&p));
        let r = and_elim_r(&both).unwrap();
        assert!(r.formula().alpha_eq(&q));
        // or
        let oi = or_intro_l(&hp, q.clone()).unwrap();
        assert!(oi.formula().alpha_eq(&defs::mk_or(p.clone(), q.clone())));
        // iff
        let fwd = {
            let h = Derivation::hypothesis(vec![], p.clone()).unwrap();
            conditional_proof(&h).unwrap()
        };
        let iff = iff_intro(&fwd, &fwd).unwrap();
        assert!(iff.formula().alpha_eq(&defs::mk_iff(p.clone(), p.clone())));
        let back = iff_elim(&iff, &Derivation::hypothesis(vec![], p.clone()).unwrap());
        // [p] contexts differ from ⊢ contexts
        assert!(back.is_err());
    }

    #[test]
    fn ex_falso_and_reductio() {
        let p = pv();
        let h_bot = Derivation::hypothesis(vec![], defs::bot()).unwrap();
        let any = ex_falso(&h_bot, p.clone()).unwrap();
        assert!(any.formula().alpha_eq(&p));
        assert_eq!(any.assumptions().len(), 1);
        // reductio: [¬¬p, ¬p] ⊢ ⊥ → [¬¬p] ⊢ p
        let nnp = defs::mk_neg(defs::mk_neg(p.clone()));
        let h1 = Derivation::hypothesis(vec![], nnp.clone()).unwrap();
        let w = Derivation::weakening(h1, defs::mk_neg(p.clone())).unwrap();
        let ctx = vec![nnp.clone(), defs::mk_neg(p.clone())];
        let h2 = assume(&ctx, &defs::mk_neg(p.clone())).unwrap();
        let falsum = neg_elim(&w, &h2, defs::bot()).unwrap();
        let out = reductio(&falsum).unwrap();
        assert!(out.formula().alpha_eq(&p));
        assert_eq!(out.assumptions(), &[nnp][..]);
    }

    #[test]
    fn equality_kit() {
        let a = Term::var(Variable::fresh0('a', Type::E));
        let b = Term::var(Variable::fresh0('b', Type::E));
        let refl = refl_term(&[], a.clone()).unwrap();
        assert!(refl.formula().alpha_eq(&defs::mk_eq(a.clone(), a.clone())));
        // from a=b (hypothesis) derive b=a and a=a→a=b chains
        let eq_ab = Derivation::hypothesis(vec![], defs::mk_eq(a.clone(), b.clone())).unwrap();
        let sym = eq_sym(&eq_ab).unwrap();
        assert!(sym.formula().alpha_eq(&defs::mk_eq(b.clone(), a.clone())));
        let trans = eq_trans(&eq_ab, &sym).unwrap();
        assert!(trans.formula().alpha_eq(&defs::mk_eq(a.clone(), a)));
    }

    #[test]
    fn quantifier_kit() {
        let x = Variable::fresh0('x', Type::E);
        let refl = refl_term(&[], Term::var(x.clone())).unwrap();
        let all = forall_intro(&refl, x.clone()).unwrap();
        let y = Term::var(Variable::fresh0('y', Type::E));
        let inst = forall_elim(&all, y.clone()).unwrap();
        assert!(inst.formula().alpha_eq(&defs::mk_eq(y.clone(), y.clone())));
        // ∃ intro/elim round trip: from y=y conclude ∃x.x=x, then eliminate
        let m = Term::abs(
            x.clone(),
            defs::mk_eq(Term::var(x.clone()), Term::var(x.clone())),
        );
        let ex = exists_intro(&inst, m.clone(), y).unwrap();
        let z = Variable::fresh0('z', Type::E);
        let body = {
            let mz = app(m.clone(), Term::var(z.clone()));
            let h = Derivation::hypothesis(vec![], mz).unwrap();
            // Γ, Mz ⊢ ⊤
            let t = Derivation::weakening(top_theorem(), h.assumptions()[0].clone()).unwrap();
            t
        };
        let out = exists_elim(&ex, &body, z).unwrap();
        assert!(out.formula().alpha_eq(&defs::top()));
        assert!(out.assumptions().is_empty());
    }

    #[test]
    fn necessitation_and_k() {
        let t = top_theorem();
        let boxed = necessitation(&t).unwrap();
        assert!(boxed.formula().alpha_eq(&defs::mk_box(defs::top())));
        // premise with assumptions is refused
        let h = Derivation::hypothesis(vec![], pv()).unwrap();
        assert!(necessitation(&h).is_err());
        // box_mp: □(⊤→⊤) and □⊤ give □⊤
        let imp_tt = {
            let h = Derivation::hypothesis(vec![], defs::top()).unwrap();
            let w = Derivation::weakening(h, defs::top()).unwrap();
            conditional_proof(&w).unwrap()
        };
        let boxed_imp = necessitation(&imp_tt).unwrap();
        let out = box_mp(&boxed_imp, &boxed).unwrap();
        assert!(out.formula().alpha_eq(&defs::mk_box(defs::top())));
    }

    #[test]
    fn excluded_middle_builds() {
        let p = pv();
        let em = excluded_middle(&[], p.clone()).unwrap();
        assert!(em
            .formula()
            .alpha_eq(&defs::mk_or(p.clone(), defs::mk_neg(p))));
    }
}

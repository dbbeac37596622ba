//! The metatheorem derivations: classical benchmark tautologies, the
//! logic of identity, S4/S5, necessity of identity and distinctness, the
//! Barcan formula and its converse, modal intensionality, and the full
//! intensional substitution property.

use crate::defs;
use crate::kernel::{Derivation, KernelError};
use crate::term::{Term, TermKind, Variable};
use crate::types::Type;

use super::derived::*;
use super::helpers::{app, assume, beta_assumption, fresh_for, hyp, to_context, weaken_chain};
use super::{LibraryError, Result};

fn shape(msg: impl Into<String>) -> LibraryError {
    KernelError::ShapeMismatch(msg.into()).into()
}

fn tvar(letter: char) -> Variable {
    Variable::fresh0(letter, Type::T)
}

fn v(letter: char, ty: Type) -> Variable {
    Variable::fresh0(letter, ty)
}

/// `⊢ ∀p q.(((p→q)→p)→p)` — Peirce's law, closed by R.5.
pub fn peirce() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let q = Term::var(tvar('q'));
    let h_formula = defs::mk_imp(defs::mk_imp(p.clone(), q.clone()), p.clone());
    let np = defs::mk_neg(p.clone());
    let ctx = vec![h_formula.clone(), np.clone()];
    // Γ, p ⊢ q from ¬p and p
    let inner = {
        let mut c2 = ctx.clone();
        c2.push(p.clone());
        let hp = hyp(&ctx, p.clone())?;
        let hnp = assume(&c2, &np)?;
        let qd = neg_elim(&hnp, &hp, q.clone())?;
        conditional_proof(&qd)? // Γ ⊢ p → q
    };
    let hh = assume(&ctx, &h_formula)?;
    let pd = modus_ponens(&inner, &hh)?; // [H, ¬p] ⊢ p
    let closed = Derivation::negation_elimination(pd)?; // [H] ⊢ p
    let cp = conditional_proof(&closed)?;
    let all_q = forall_intro(&cp, tvar('q'))?;
    forall_intro(&all_q, tvar('p'))
}

/// `⊢ ∀p.(¬¬p → p)`.
pub fn double_neg_elim_thm() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let nnp = defs::mk_neg(defs::mk_neg(p.clone()));
    let h = hyp(&[], nnp)?;
    let pd = neg_elim_classical(&h)?;
    let cp = conditional_proof(&pd)?;
    forall_intro(&cp, tvar('p'))
}

/// `⊢ ∀p q.(¬(p∨q) ↔ ¬p ∧ ¬q)`.
pub fn de_morgan() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let q = Term::var(tvar('q'));
    let disj = defs::mk_or(p.clone(), q.clone());
    let ndisj = defs::mk_neg(disj.clone());
    let conj = defs::mk_and(defs::mk_neg(p.clone()), defs::mk_neg(q.clone()));
    let fwd = {
        let ctx = vec![ndisj.clone()];
        let np = {
            let mut c2 = ctx.clone();
            c2.push(p.clone());
            let hp = hyp(&ctx, p.clone())?;
            let oi = or_intro_l(&hp, q.clone())?;
            let hn = assume(&c2, &ndisj)?;
            let falsum = neg_elim(&hn, &oi, defs::bot())?;
            neg_intro(&falsum)?
        };
        let nq = {
            let mut c2 = ctx.clone();
            c2.push(q.clone());
            let hq = hyp(&ctx, q.clone())?;
            let oi = or_intro_r(&hq, p.clone())?;
            let hn = assume(&c2, &ndisj)?;
            let falsum = neg_elim(&hn, &oi, defs::bot())?;
            neg_intro(&falsum)?
        };
        conditional_proof(&and_intro(&np, &nq)?)?
    };
    let bwd = {
        let ctx = vec![conj.clone()];
        let mut c2 = ctx.clone();
        c2.push(disj.clone());
        let h_or = hyp(&ctx, disj.clone())?;
        let case = |side_p: bool| -> Result<Derivation> {
            let case_f = if side_p { p.clone() } else { q.clone() };
            let mut c3 = c2.clone();
            c3.push(case_f.clone());
            let cj = assume(&c3, &conj)?;
            let n = if side_p {
                and_elim_l(&cj)?
            } else {
                and_elim_r(&cj)?
            };
            let hp = assume(&c3, &case_f)?;
            neg_elim(&n, &hp, defs::bot())
        };
        let falsum = or_elim(&h_or, &case(true)?, &case(false)?)?;
        let ni = neg_intro(&falsum)?;
        conditional_proof(&ni)?
    };
    let iff = iff_intro(&fwd, &bwd)?;
    let all_q = forall_intro(&iff, tvar('q'))?;
    forall_intro(&all_q, tvar('p'))
}

/// `⊢ ∀p q r.(p ∧ (q∨r) ↔ (p∧q) ∨ (p∧r))`.
pub fn distribution() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let q = Term::var(tvar('q'));
    let r = Term::var(tvar('r'));
    let lhs = defs::mk_and(p.clone(), defs::mk_or(q.clone(), r.clone()));
    let rhs = defs::mk_or(
        defs::mk_and(p.clone(), q.clone()),
        defs::mk_and(p.clone(), r.clone()),
    );
    let fwd = {
        let ctx = vec![lhs.clone()];
        let h = assume(&ctx, &lhs)?;
        let pd = and_elim_l(&h)?;
        let od = and_elim_r(&h)?;
        let case = |left: bool| -> Result<Derivation> {
            let case_f = if left { q.clone() } else { r.clone() };
            let mut c2 = ctx.clone();
            c2.push(case_f.clone());
            let pd2 = assume(&c2, &lhs).and_then(|d| and_elim_l(&d))?;
            let cd = assume(&c2, &case_f)?;
            let both = and_intro(&pd2, &cd)?;
            if left {
                or_intro_l(&both, defs::mk_and(p.clone(), r.clone()))
            } else {
                or_intro_r(&both, defs::mk_and(p.clone(), q.clone()))
            }
        };
        let _ = pd;
        let out = or_elim(&od, &case(true)?, &case(false)?)?;
        conditional_proof(&out)?
    };
    let bwd = {
        let ctx = vec![rhs.clone()];
        let h = assume(&ctx, &rhs)?;
        let case = |left: bool| -> Result<Derivation> {
            let case_f = if left {
                defs::mk_and(p.clone(), q.clone())
            } else {
                defs::mk_and(p.clone(), r.clone())
            };
            let mut c2 = ctx.clone();
            c2.push(case_f.clone());
            let cj = assume(&c2, &case_f)?;
            let pd = and_elim_l(&cj)?;
            let sd = and_elim_r(&cj)?;
            let or_d = if left {
                or_intro_l(&sd, r.clone())?
            } else {
                or_intro_r(&sd, q.clone())?
            };
            and_intro(&pd, &or_d)
        };
        let out = or_elim(&h, &case(true)?, &case(false)?)?;
        conditional_proof(&out)?
    };
    let iff = iff_intro(&fwd, &bwd)?;
    let d = forall_intro(&iff, tvar('r'))?;
    let d = forall_intro(&d, tvar('q'))?;
    forall_intro(&d, tvar('p'))
}

/// Leibniz' law `⊢ ∀x y^σ.(x=y → P → [y/x]P)` for a schematic formula P.
pub fn leibniz(p_formula: Term, x: Variable, y: Variable) -> Result<Derivation> {
    if !p_formula.is_formula() {
        return Err(shape("leibniz needs a formula parameter"));
    }
    if x.ty != y.ty {
        return Err(KernelError::TypeMismatch {
            expected: x.ty.clone(),
            got: y.ty.clone(),
        }
        .into());
    }
    let eq = defs::mk_eq(Term::var(x.clone()), Term::var(y.clone()));
    let ctx = vec![eq.clone(), p_formula.clone()];
    let d_eq = assume(&ctx, &eq)?;
    let d_p = assume(&ctx, &p_formula)?;
    let c = Term::abs(x.clone(), p_formula.clone());
    let substituted = p_formula
        .substitute(&x, &Term::var(y.clone()))
        .expect("same type");
    let moved = eq_subst_to(&d_eq, &c, &d_p, substituted)?;
    let cp1 = conditional_proof(&moved)?;
    let cp2 = conditional_proof(&cp1)?;
    let all_y = forall_intro(&cp2, y)?;
    forall_intro(&all_y, x)
}

/// The catalog instance of Leibniz' law: `P := F x` with `F` a free
/// property variable, at σ = e.
pub fn leibniz_default() -> Result<Derivation> {
    let x = v('x', Type::E);
    let y = v('y', Type::E);
    let f = v('F', Type::property_of(Type::E));
    let p = app(Term::var(f), Term::var(x.clone()));
    leibniz(p, x, y)
}

// ------------------------------------------------------------- identities

/// `⊢ p = (p ∧ ⊤)`.
fn pptop(p: &Term) -> Result<Derivation> {
    let fwd = {
        let ctx = vec![p.clone()];
        let hp = assume(&ctx, p)?;
        let t = weaken_chain(super::helpers::top_theorem(), [p.clone()])?;
        and_intro(&hp, &t)?
    };
    let bwd = {
        let conj = defs::mk_and(p.clone(), defs::top());
        let h = hyp(&[], conj)?;
        and_elim_l(&h)?
    };
    Ok(Derivation::intensionality(fwd, bwd)?)
}

/// `⊢ (p ∧ q) = (p ∧ (p → q))`.
fn pq_imp_identity(p: &Term, q: &Term) -> Result<Derivation> {
    let conj = defs::mk_and(p.clone(), q.clone());
    let conj_imp = defs::mk_and(p.clone(), defs::mk_imp(p.clone(), q.clone()));
    let fwd = {
        let ctx = vec![conj.clone()];
        let h = assume(&ctx, &conj)?;
        let a = and_elim_l(&h)?;
        let b = and_elim_r(&h)?;
        let c = conditional_proof(&Derivation::weakening(b, p.clone())?)?;
        and_intro(&a, &c)?
    };
    let bwd = {
        let ctx = vec![conj_imp.clone()];
        let h = assume(&ctx, &conj_imp)?;
        let a = and_elim_l(&h)?;
        let f = and_elim_r(&h)?;
        let qd = modus_ponens(&a, &f)?;
        and_intro(&a, &qd)?
    };
    Ok(Derivation::intensionality(fwd, bwd)?)
}

/// `⊢ (p ∧ (p ↔ q)) = (p ∧ (p → q))`.
fn and_iff_imp_identity(p: &Term, q: &Term) -> Result<Derivation> {
    let with_iff = defs::mk_and(p.clone(), defs::mk_iff(p.clone(), q.clone()));
    let with_imp = defs::mk_and(p.clone(), defs::mk_imp(p.clone(), q.clone()));
    let fwd = {
        let ctx = vec![with_iff.clone()];
        let h = assume(&ctx, &with_iff)?;
        let a = and_elim_l(&h)?;
        let e = and_elim_r(&h)?;
        and_intro(&a, &iff_forward(&e)?)?
    };
    let bwd = {
        let ctx = vec![with_imp.clone()];
        let h = assume(&ctx, &with_imp)?;
        let a = and_elim_l(&h)?;
        let f = and_elim_r(&h)?;
        let back = {
            let mut c2 = ctx.clone();
            c2.push(q.clone());
            let p2 = assume(&c2, &with_imp).and_then(|d| and_elim_l(&d))?;
            conditional_proof(&p2)?
        };
        and_intro(&a, &iff_intro(&f, &back)?)?
    };
    Ok(Derivation::intensionality(fwd, bwd)?)
}

/// `⊢ (p ↔ q) = (q ↔ p)`.
fn iff_comm_identity(p: &Term, q: &Term) -> Result<Derivation> {
    let pq = defs::mk_iff(p.clone(), q.clone());
    let qp = defs::mk_iff(q.clone(), p.clone());
    let swap = |from: &Term| -> Result<Derivation> {
        let h = hyp(&[], from.clone())?;
        iff_intro(&iff_backward(&h)?, &iff_forward(&h)?)
    };
    Ok(Derivation::intensionality(swap(&pq)?, swap(&qp)?)?)
}

/// `⊢ (p ∧ q) = (q ∧ p)`.
fn and_comm_identity(p: &Term, q: &Term) -> Result<Derivation> {
    let swap = |a: &Term, b: &Term| -> Result<Derivation> {
        let conj = defs::mk_and(a.clone(), b.clone());
        let h = hyp(&[], conj)?;
        and_intro(&and_elim_r(&h)?, &and_elim_l(&h)?)
    };
    Ok(Derivation::intensionality(swap(p, q)?, swap(q, p)?)?)
}

// ------------------------------------------------------------------ modal

/// `⊢ ∀p q.(□(p→q) → □p → □q)` — the K axiom.
pub fn s4_k() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let q = Term::var(tvar('q'));
    let b_imp = defs::mk_box(defs::mk_imp(p.clone(), q.clone()));
    let b_p = defs::mk_box(p.clone());
    let ctx = vec![b_imp.clone(), b_p.clone()];
    let d1 = assume(&ctx, &b_imp)?;
    let d2 = assume(&ctx, &b_p)?;
    let out = box_mp(&d1, &d2)?;
    let cp1 = conditional_proof(&out)?;
    let cp2 = conditional_proof(&cp1)?;
    let all_q = forall_intro(&cp2, tvar('q'))?;
    forall_intro(&all_q, tvar('p'))
}

/// `⊢ ∀p.(□p → p)` — the T axiom.
pub fn s4_t() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let b_p = defs::mk_box(p.clone());
    let ctx = vec![b_p.clone()];
    let h = assume(&ctx, &b_p)?; // ⊤ = p
    let s = fresh_for('s', &Type::T, &[&p]);
    let id = Term::abs(s.clone(), Term::var(s));
    let t = super::helpers::top_in(&ctx)?;
    let t_as = Derivation::beta_rule(t, app(id.clone(), defs::top()))?;
    let raw = eq_subst(&h, &id, &t_as)?;
    let pd = Derivation::beta_rule(raw, p.clone())?;
    let cp = conditional_proof(&pd)?;
    forall_intro(&cp, tvar('p'))
}

/// `⊢ ∀p.(□p → □□p)` — the 4 axiom.
pub fn s4_4() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let b_p = defs::mk_box(p.clone());
    let ctx = vec![b_p.clone()];
    let h = assume(&ctx, &b_p)?; // ⊤ = p
    let nec_refl = necessitation(&refl_term(&[], defs::top())?)?; // ⊢ ⊤ = (⊤ = ⊤)
    let w = weaken_chain(nec_refl, ctx.iter().cloned())?;
    let s = fresh_for('s', &Type::T, &[&p]);
    let c = Term::abs(
        s.clone(),
        defs::mk_box(defs::mk_eq(defs::top(), Term::var(s))),
    );
    let out = eq_subst_to(&h, &c, &w, defs::mk_box(b_p.clone()))?;
    let cp = conditional_proof(&out)?;
    forall_intro(&cp, tvar('p'))
}

/// `⊢ ¬(⊥ = ⊤)` and `⊢ ¬(⊤ = ⊥)`.
fn distinct_constants(bot_first: bool) -> Result<Derivation> {
    let (a, b) = if bot_first {
        (defs::bot(), defs::top())
    } else {
        (defs::top(), defs::bot())
    };
    let eq = defs::mk_eq(a.clone(), b.clone());
    let ctx = vec![eq.clone()];
    let h = assume(&ctx, &eq)?;
    // orient so the left side is ⊤
    let top_eq = if bot_first { eq_sym(&h)? } else { h };
    let s = fresh_for('s', &Type::T, &[]);
    let id = Term::abs(s.clone(), Term::var(s));
    let t = super::helpers::top_in(&ctx)?;
    let t_as = Derivation::beta_rule(t, app(id.clone(), defs::top()))?;
    let raw = eq_subst(&top_eq, &id, &t_as)?;
    let falsum = Derivation::beta_rule(raw, defs::bot())?;
    neg_intro(&falsum)
}

/// `⊢ ∀p.(¬□p → □¬□p)` — the 5 axiom, by Choice applied to the relation
/// mapping every non-⊤ proposition to ⊥ and ⊤ to ⊤.
pub fn s5_axiom() -> Result<Derivation> {
    // R := λp'q'.((¬□p' → q'=⊥) ∧ (□p' → q'=⊤))
    let pp = tvar('p').primed();
    let qq = tvar('q').primed();
    let box_pp = defs::mk_box(Term::var(pp.clone()));
    let r_body = defs::mk_and(
        defs::mk_imp(
            defs::mk_neg(box_pp.clone()),
            defs::mk_eq(Term::var(qq.clone()), defs::bot()),
        ),
        defs::mk_imp(
            box_pp.clone(),
            defs::mk_eq(Term::var(qq.clone()), defs::top()),
        ),
    );
    let relation = Term::abss([pp.clone(), qq.clone()], r_body);
    let premise = choice_premise_by_cases(&relation, &pp, &qq, &box_pp)?;
    let f = v('f', Type::fun(Type::T, Type::T));
    let ch = Derivation::choice(premise, f.clone())?;

    // eliminate the existential with a fresh function variable g
    let g = v('g', Type::fun(Type::T, Type::T));
    let TermKind::App(_, m_ch) = ch.formula().kind() else {
        return Err(shape("choice conclusion shape"));
    };
    let m_ch = m_ch.clone();
    let ca_app = app(m_ch.clone(), Term::var(g.clone()));
    let ca_red = {
        let TermKind::Abs(fv, body) = m_ch.kind() else {
            return Err(shape("choice conclusion shape"));
        };
        body.substitute(fv, &Term::var(g.clone())).expect("same type")
    };

    let p = Term::var(tvar('p'));
    let box_p = defs::mk_box(p.clone());
    let nbox_p = defs::mk_neg(box_p.clone());
    let gamma = vec![ca_red.clone(), nbox_p.clone()];

    let g_at = |arg: &Term| app(Term::var(g.clone()), arg.clone());

    // instantiate the choice assumption at p and at ⊤
    let inst = |at: &Term, gamma: &[Term]| -> Result<Derivation> {
        let ca = assume(gamma, &ca_red)?;
        let fa = forall_elim(&ca, at.clone())?;
        let target = defs::mk_and(
            defs::mk_imp(
                defs::mk_neg(defs::mk_box(at.clone())),
                defs::mk_eq(g_at(at), defs::bot()),
            ),
            defs::mk_imp(
                defs::mk_box(at.clone()),
                defs::mk_eq(g_at(at), defs::top()),
            ),
        );
        Ok(Derivation::beta_rule(fa, target)?)
    };

    let at_p = inst(&p, &gamma)?;
    let gp_bot = {
        let c1 = and_elim_l(&at_p)?;
        let hn = assume(&gamma, &nbox_p)?;
        modus_ponens(&hn, &c1)?
    }; // Γ ⊢ g p = ⊥
    let gtop_top = {
        let at_t = inst(&defs::top(), &gamma)?;
        let c2 = and_elim_r(&at_t)?;
        let refl = refl_term(&gamma, defs::top())?; // □⊤ is ⊤ = ⊤
        modus_ponens(&refl, &c2)?
    }; // Γ ⊢ g ⊤ = ⊤

    // T0: ⊢ ¬(gp = g⊤) → ¬□p   (contrapositive of congruence)
    let t0 = {
        let ne = defs::mk_neg(defs::mk_eq(g_at(&p), g_at(&defs::top())));
        let ctx0 = vec![ne.clone(), box_p.clone()];
        let h_eq = assume(&ctx0, &box_p)?; // ⊤ = p
        let s = fresh_for('s', &Type::T, &[&p]);
        let c = Term::abs(
            s.clone(),
            defs::mk_eq(g_at(&Term::var(s.clone())), g_at(&defs::top())),
        );
        let refl = refl_term(&ctx0, g_at(&defs::top()))?;
        let moved = eq_subst_to(
            &h_eq,
            &c,
            &refl,
            defs::mk_eq(g_at(&p), g_at(&defs::top())),
        )?;
        let hne = assume(&ctx0, &ne)?;
        let falsum = neg_elim(&hne, &moved, defs::bot())?;
        let ni = neg_intro(&falsum)?; // [¬(gp=g⊤)] ⊢ ¬□p
        conditional_proof(&ni)?
    };
    let t1 = necessitation(&t0)?;
    let w_t1 = {
        let w = weaken_chain(t1, gamma.iter().cloned())?;
        to_context(w, &gamma)?
    };

    // Γ ⊢ □¬(gp = g⊤): rewrite inside □¬(⊥ = ⊤)
    let boxed_ne = {
        let n0 = necessitation(&distinct_constants(true)?)?; // ⊢ □¬(⊥=⊤)
        let w0 = to_context(weaken_chain(n0, gamma.iter().cloned())?, &gamma)?;
        let s = fresh_for('s', &Type::T, &[&p]);
        // ⊥ := g p
        let c1 = Term::abs(
            s.clone(),
            defs::mk_box(defs::mk_neg(defs::mk_eq(Term::var(s.clone()), defs::top()))),
        );
        let sym1 = eq_sym(&gp_bot)?; // ⊥ = g p
        let step1 = eq_subst_to(
            &sym1,
            &c1,
            &w0,
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&p), defs::top()))),
        )?;
        // ⊤ := g ⊤
        let c2 = Term::abs(
            s.clone(),
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&p), Term::var(s.clone())))),
        );
        let sym2 = eq_sym(&gtop_top)?; // ⊤ = g ⊤
        eq_subst_to(
            &sym2,
            &c2,
            &step1,
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&p), g_at(&defs::top())))),
        )?
    };

    let boxed_goal = box_mp(&w_t1, &boxed_ne)?; // Γ ⊢ □¬□p
    let cp = conditional_proof(&boxed_goal)?; // [CA] ⊢ ¬□p → □¬□p
    let all_p = forall_intro(&cp, tvar('p'))?; // [CA] ⊢ ∀p.(…)
    let restored = beta_assumption(all_p, 0, ca_app)?;
    exists_elim(&ch, &restored, g)
}

/// Builds `⊢ ∀p'.∃q'. R p' q'` for the S5/distinctness relations by
/// excluded middle on the case formula, with the given witnesses.
fn choice_premise_by_cases(
    relation: &Term,
    bound_x: &Variable,
    bound_y: &Variable,
    case_formula: &Term,
) -> Result<Derivation> {
    // predicate M := λq'. R p' q' (unreduced body, as R.8 expects)
    let m = Term::abs(
        bound_y.clone(),
        app(
            app(relation.clone(), Term::var(bound_x.clone())),
            Term::var(bound_y.clone()),
        ),
    );
    let reduced_at = |w: &Term| -> Term {
        let TermKind::Abs(x1, b1) = relation.kind() else {
            unreachable!("relation is a double abstraction")
        };
        let TermKind::Abs(y1, b2) = b1.kind() else {
            unreachable!("relation is a double abstraction")
        };
        let step1 = b2.substitute(y1, w).expect("typed");
        step1.substitute(x1, &Term::var(bound_x.clone())).expect("typed")
    };
    let case = |positive: bool| -> Result<Derivation> {
        let hypo = if positive {
            case_formula.clone()
        } else {
            defs::mk_neg(case_formula.clone())
        };
        let ctx = vec![hypo.clone()];
        let witness = if positive { defs::top() } else { defs::bot() };
        // both conjuncts of R p' witness
        let (lhs_i, rhs_i) = {
            let red = reduced_at(&witness);
            let Some((l, r)) = super::derived::match_and(&red) else {
                return Err(shape("relation instance must be a conjunction"));
            };
            (l, r)
        };
        // one conjunct follows from the hypothesis by reflexivity, the
        // other vacuously from the contradiction with the hypothesis
        let prove_imp = |imp: &Term| -> Result<Derivation> {
            let Some((ante, cons)) = super::derived::match_imp(imp) else {
                return Err(shape("relation conjunct must be an implication"));
            };
            let (ante, cons) = (ante.clone(), cons.clone());
            let mut c2 = ctx.clone();
            c2.push(ante.clone());
            let agrees = ante.alpha_eq(&hypo);
            let inner = if agrees {
                // consequent is `witness = witness`
                let Some((_, l, _)) = super::derived::match_eq_parts(&cons) else {
                    return Err(shape("relation consequent must be an identity"));
                };
                refl_term(&c2, l)?
            } else {
                // antecedent contradicts the hypothesis
                let (neg_d, pos_d) = if positive {
                    (assume(&c2, &ante)?, assume(&c2, case_formula)?)
                } else {
                    (assume(&c2, &hypo)?, assume(&c2, &ante)?)
                };
                neg_elim(&neg_d, &pos_d, cons.clone())?
            };
            conditional_proof(&inner)
        };
        let both = and_intro(&prove_imp(&lhs_i)?, &prove_imp(&rhs_i)?)?;
        exists_intro(&both, m.clone(), witness)
    };
    let em = excluded_middle(&[], case_formula.clone())?;
    let by_cases = or_elim(&em, &case(true)?, &case(false)?)?;
    let all = forall_intro(&by_cases, bound_x.clone())?;
    // expose the R.8 pattern ∀x.∃y.(R x) y
    let pattern = defs::mk_forall(
        bound_x.clone(),
        app(
            defs::exists(bound_y.ty.clone()),
            m.clone(),
        ),
    );
    Ok(Derivation::beta_rule(all, pattern)?)
}

/// `⊢ ∀x y^σ.(x=y → □(x=y))`.
pub fn nec_identity(sigma: Type) -> Result<Derivation> {
    let x = v('x', sigma.clone());
    let y = v('y', sigma.clone());
    let eq = defs::mk_eq(Term::var(x.clone()), Term::var(y.clone()));
    let ctx = vec![eq.clone()];
    let boxed_refl = necessitation(&refl_term(&[], Term::var(x.clone()))?)?;
    let w = weaken_chain(boxed_refl, ctx.iter().cloned())?;
    let h = assume(&ctx, &eq)?;
    let s = fresh_for('s', &sigma, &[&Term::var(x.clone()), &Term::var(y.clone())]);
    let c = Term::abs(
        s.clone(),
        defs::mk_box(defs::mk_eq(Term::var(x.clone()), Term::var(s.clone()))),
    );
    let out = eq_subst_to(&h, &c, &w, defs::mk_box(eq.clone()))?;
    let cp = conditional_proof(&out)?;
    let all_y = forall_intro(&cp, y)?;
    forall_intro(&all_y, x)
}

/// `⊢ ∀x y^σ.(x≠y → □(x≠y))`, using Choice as in S5.
pub fn nec_distinctness(sigma: Type) -> Result<Derivation> {
    let x = v('x', sigma.clone());
    let y = v('y', sigma.clone());
    let xt = Term::var(x.clone());
    let yt = Term::var(y.clone());

    // R := λz1^σ z2^t.((z1=x → z2=⊤) ∧ (¬(z1=x) → z2=⊥))
    let z1 = {
        let mut z = v('z', sigma.clone());
        while z == x || z == y {
            z = z.primed();
        }
        z
    };
    let z2 = tvar('w');
    let z1_eq_x = defs::mk_eq(Term::var(z1.clone()), xt.clone());
    let r_body = defs::mk_and(
        defs::mk_imp(
            z1_eq_x.clone(),
            defs::mk_eq(Term::var(z2.clone()), defs::top()),
        ),
        defs::mk_imp(
            defs::mk_neg(z1_eq_x),
            defs::mk_eq(Term::var(z2.clone()), defs::bot()),
        ),
    );
    let relation = Term::abss([z1.clone(), z2.clone()], r_body);
    let case_formula = defs::mk_eq(Term::var(z1.clone()), xt.clone());
    let premise = choice_premise_by_cases(&relation, &z1, &z2, &case_formula)?;
    let f = {
        let mut f = v('f', Type::fun(sigma.clone(), Type::T));
        while relation.is_free(&f) {
            f = f.primed();
        }
        f
    };
    let ch = Derivation::choice(premise, f)?;

    let g = {
        let mut g = v('g', Type::fun(sigma.clone(), Type::T));
        while relation.is_free(&g) {
            g = g.primed();
        }
        g
    };
    let TermKind::App(_, m_ch) = ch.formula().kind() else {
        return Err(shape("choice conclusion shape"));
    };
    let m_ch = m_ch.clone();
    let ca_app = app(m_ch.clone(), Term::var(g.clone()));
    let ca_red = {
        let TermKind::Abs(fv, body) = m_ch.kind() else {
            return Err(shape("choice conclusion shape"));
        };
        body.substitute(fv, &Term::var(g.clone())).expect("same type")
    };

    let neq = defs::mk_neg(defs::mk_eq(xt.clone(), yt.clone()));
    let gamma = vec![ca_red.clone(), neq.clone()];
    let g_at = |arg: &Term| app(Term::var(g.clone()), arg.clone());

    let inst = |at: &Term| -> Result<Derivation> {
        let ca = assume(&gamma, &ca_red)?;
        let fa = forall_elim(&ca, at.clone())?;
        let target = defs::mk_and(
            defs::mk_imp(
                defs::mk_eq(at.clone(), xt.clone()),
                defs::mk_eq(g_at(at), defs::top()),
            ),
            defs::mk_imp(
                defs::mk_neg(defs::mk_eq(at.clone(), xt.clone())),
                defs::mk_eq(g_at(at), defs::bot()),
            ),
        );
        Ok(Derivation::beta_rule(fa, target)?)
    };

    let gx_top = {
        let at_x = inst(&xt)?;
        let c = and_elim_l(&at_x)?;
        let refl = refl_term(&gamma, xt.clone())?;
        modus_ponens(&refl, &c)?
    };
    let gy_bot = {
        let at_y = inst(&yt)?;
        let c = and_elim_r(&at_y)?;
        // ¬(y = x) from ¬(x = y)
        let n_yx = {
            let eq_yx = defs::mk_eq(yt.clone(), xt.clone());
            let mut c2 = gamma.clone();
            c2.push(eq_yx.clone());
            let h = assume(&c2, &eq_yx)?;
            let sym = eq_sym(&h)?;
            let hn = assume(&c2, &neq)?;
            let falsum = neg_elim(&hn, &sym, defs::bot())?;
            neg_intro(&falsum)?
        };
        modus_ponens(&n_yx, &c)?
    };

    // T0: ⊢ ¬(gx = gy) → ¬(x = y)
    let t0 = {
        let ne = defs::mk_neg(defs::mk_eq(g_at(&xt), g_at(&yt)));
        let eq_xy = defs::mk_eq(xt.clone(), yt.clone());
        let ctx0 = vec![ne.clone(), eq_xy.clone()];
        let h_eq = assume(&ctx0, &eq_xy)?;
        let s = fresh_for('s', &sigma, &[&xt, &yt]);
        let c = Term::abs(
            s.clone(),
            defs::mk_eq(g_at(&xt), g_at(&Term::var(s.clone()))),
        );
        let refl = refl_term(&ctx0, g_at(&xt))?;
        let moved = eq_subst_to(&h_eq, &c, &refl, defs::mk_eq(g_at(&xt), g_at(&yt)))?;
        let hne = assume(&ctx0, &ne)?;
        let falsum = neg_elim(&hne, &moved, defs::bot())?;
        conditional_proof(&neg_intro(&falsum)?)?
    };
    let t1 = necessitation(&t0)?;
    let w_t1 = to_context(weaken_chain(t1, gamma.iter().cloned())?, &gamma)?;

    // Γ ⊢ □¬(gx = gy) from □¬(⊤ = ⊥)
    let boxed_ne = {
        let n0 = necessitation(&distinct_constants(false)?)?; // ⊢ □¬(⊤=⊥)
        let w0 = to_context(weaken_chain(n0, gamma.iter().cloned())?, &gamma)?;
        let s = fresh_for('s', &Type::T, &[&xt, &yt]);
        let c1 = Term::abs(
            s.clone(),
            defs::mk_box(defs::mk_neg(defs::mk_eq(Term::var(s.clone()), defs::bot()))),
        );
        let sym1 = eq_sym(&gx_top)?; // ⊤ = g x
        let step1 = eq_subst_to(
            &sym1,
            &c1,
            &w0,
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&xt), defs::bot()))),
        )?;
        let c2 = Term::abs(
            s.clone(),
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&xt), Term::var(s.clone())))),
        );
        let sym2 = eq_sym(&gy_bot)?; // ⊥ = g y
        eq_subst_to(
            &sym2,
            &c2,
            &step1,
            defs::mk_box(defs::mk_neg(defs::mk_eq(g_at(&xt), g_at(&yt)))),
        )?
    };

    let boxed = box_mp(&w_t1, &boxed_ne)?; // Γ ⊢ □¬(x=y)
    let cp = conditional_proof(&boxed)?; // [CA] ⊢ ¬(x=y) → □¬(x=y)
    // restate with ≠
    let stated = Derivation::beta_rule(
        cp,
        defs::mk_imp(
            defs::mk_neq(xt.clone(), yt.clone()),
            defs::mk_box(defs::mk_neq(xt.clone(), yt.clone())),
        ),
    )?;
    let restored = beta_assumption(stated, 0, ca_app)?;
    let closed = exists_elim(&ch, &restored, g)?;
    let all_y = forall_intro(&closed, y)?;
    forall_intro(&all_y, x)
}

/// `⊢ ∀X^{σt}.((∀z.□Xz) → □∀z.Xz)` — the Barcan formula at length one.
pub fn barcan_len1(sigma: Type) -> Result<Derivation> {
    let cap_x = v('X', Type::property_of(sigma.clone()));
    let z = v('z', sigma.clone());
    let xt = Term::var(cap_x.clone());
    let x_at = |w: &Term| app(xt.clone(), w.clone());
    let ante = defs::mk_forall(z.clone(), defs::mk_box(x_at(&Term::var(z.clone()))));
    let ctx = vec![ante.clone()];
    let w_var = {
        let mut w = v('w', sigma.clone());
        while w == z {
            w = w.primed();
        }
        w
    };
    let fe = forall_elim(&assume(&ctx, &ante)?, Term::var(w_var.clone()))?; // □(X w)
    let sym = eq_sym(&fe)?; // X w = ⊤
    let y = v('y', sigma.clone());
    let triv = Term::abs(y, defs::top());
    let b = Derivation::beta_rule(
        sym,
        defs::mk_eq(x_at(&Term::var(w_var.clone())), app(triv.clone(), Term::var(w_var.clone()))),
    )?;
    let r7 = Derivation::function_extensionality(b, w_var)?; // X = λy.⊤
    let sym_r7 = eq_sym(&r7)?; // λy.⊤ = X
    // ⊢ □∀z.(λy.⊤)z
    let nec_triv = {
        let t0 = super::helpers::top_theorem();
        let b0 = Derivation::beta_rule(t0, app(triv.clone(), Term::var(z.clone())))?;
        let f0 = forall_intro(&b0, z.clone())?;
        necessitation(&f0)?
    };
    let w0 = to_context(weaken_chain(nec_triv, ctx.iter().cloned())?, &ctx)?;
    let cap_f = {
        let mut f = v('F', Type::property_of(sigma.clone()));
        while f == cap_x {
            f = f.primed();
        }
        f
    };
    let c = Term::abs(
        cap_f.clone(),
        defs::mk_box(defs::mk_forall(
            z.clone(),
            app(Term::var(cap_f.clone()), Term::var(z.clone())),
        )),
    );
    let goal = defs::mk_box(defs::mk_forall(z.clone(), x_at(&Term::var(z.clone()))));
    let out = eq_subst_to(&sym_r7, &c, &w0, goal)?;
    let cp = conditional_proof(&out)?;
    forall_intro(&cp, cap_x)
}

/// `⊢ ∀X^{σt}.(□∀z.Xz → ∀z.□Xz)` — the converse Barcan formula.
pub fn converse_barcan_len1(sigma: Type) -> Result<Derivation> {
    let cap_x = v('X', Type::property_of(sigma.clone()));
    let z = v('z', sigma.clone());
    let xt = Term::var(cap_x.clone());
    let xz = app(xt.clone(), Term::var(z.clone()));
    let all = defs::mk_forall(z.clone(), xz.clone());
    let boxed_all = defs::mk_box(all.clone());
    let ctx = vec![boxed_all.clone()];
    let h = assume(&ctx, &boxed_all)?; // ⊤ = ∀z.Xz
    // identity (∀z.Xz) = (Xz ∧ ∀z.Xz), with the outer z free
    let ident = {
        let fwd = {
            let c0 = vec![all.clone()];
            let a = assume(&c0, &all)?;
            let fe = forall_elim(&a, Term::var(z.clone()))?;
            and_intro(&fe, &a)?
        };
        let bwd = {
            let conj = defs::mk_and(xz.clone(), all.clone());
            let h0 = hyp(&[], conj)?;
            and_elim_r(&h0)?
        };
        Derivation::intensionality(fwd, bwd)?
    };
    let w_ident = to_context(weaken_chain(ident, ctx.iter().cloned())?, &ctx)?;
    let t = eq_trans(&h, &w_ident)?; // ⊤ = (Xz ∧ ∀z.Xz), i.e. □(Xz ∧ ∀z.Xz)
    // □((Xz ∧ ∀z.Xz) → Xz) by necessitation
    let boxed_elim = {
        let conj = defs::mk_and(xz.clone(), all.clone());
        let h0 = hyp(&[], conj)?;
        let el = and_elim_l(&h0)?;
        necessitation(&conditional_proof(&el)?)?
    };
    let w_elim = to_context(weaken_chain(boxed_elim, ctx.iter().cloned())?, &ctx)?;
    let boxed_xz = box_mp(&w_elim, &t)?; // Γ ⊢ □Xz
    let all_z = forall_intro(&boxed_xz, z)?; // Γ ⊢ ∀z.□Xz
    let cp = conditional_proof(&all_z)?;
    forall_intro(&cp, cap_x)
}

/// `⊢ ∀p q.(□(p↔q) → p = q)` — propositional intensionalism.
pub fn prop_intensionalism() -> Result<Derivation> {
    let p = Term::var(tvar('p'));
    let q = Term::var(tvar('q'));
    let iff_pq = defs::mk_iff(p.clone(), q.clone());
    let boxed = defs::mk_box(iff_pq.clone());
    let ctx = vec![boxed.clone()];
    let h = assume(&ctx, &boxed)?; // ⊤ = (p ↔ q)
    let into = |d: Derivation| -> Result<Derivation> {
        to_context(weaken_chain(d, ctx.iter().cloned())?, &ctx)
    };

    let half = |a: &Term, b: &Term, top_eq_iff: &Derivation| -> Result<Derivation> {
        // from ⊤ = (a ↔ b) derive a = (a ∧ b)
        let i1 = into(pptop(a)?)?; // a = (a ∧ ⊤)
        let s = fresh_for('s', &Type::T, &[a, b]);
        let c = Term::abs(
            s.clone(),
            defs::mk_eq(a.clone(), defs::mk_and(a.clone(), Term::var(s.clone()))),
        );
        let st = eq_subst_to(
            top_eq_iff,
            &c,
            &i1,
            defs::mk_eq(
                a.clone(),
                defs::mk_and(a.clone(), defs::mk_iff(a.clone(), b.clone())),
            ),
        )?; // a = (a ∧ (a ↔ b))
        let i2 = into(and_iff_imp_identity(a, b)?)?;
        let t1 = eq_trans(&st, &i2)?; // a = (a ∧ (a → b))
        let i3 = into(eq_sym(&pq_imp_identity(a, b)?)?)?; // (a ∧ (a→b)) = (a ∧ b)
        eq_trans(&t1, &i3)
    };

    let p_half = half(&p, &q, &h)?; // p = (p ∧ q)
    let q_half = {
        let comm = into(iff_comm_identity(&p, &q)?)?; // (p↔q) = (q↔p)
        let t = eq_trans(&h, &comm)?; // ⊤ = (q ↔ p)
        let qh = half(&q, &p, &t)?; // q = (q ∧ p)
        let andc = into(and_comm_identity(&q, &p)?)?; // (q∧p) = (p∧q)
        eq_trans(&qh, &andc)?
    }; // q = (p ∧ q)
    let out = eq_trans(&p_half, &eq_sym(&q_half)?)?; // p = q
    let cp = conditional_proof(&out)?;
    let all_q = forall_intro(&cp, tvar('q'))?;
    forall_intro(&all_q, tvar('p'))
}

/// `⊢ ∀F G^{σt}.(□∀z.(Fz ↔ Gz) → F = G)` — property intensionalism at
/// vector length one. (`F ≡ G` in formula position reads as the
/// pointwise biconditional under a universal quantifier.)
pub fn property_intensionalism_len1(sigma: Type) -> Result<Derivation> {
    let f = v('F', Type::property_of(sigma.clone()));
    let g = v('G', Type::property_of(sigma.clone()));
    let z = v('z', sigma.clone());
    let fz = app(Term::var(f.clone()), Term::var(z.clone()));
    let gz = app(Term::var(g.clone()), Term::var(z.clone()));
    let pointwise = defs::mk_forall(z.clone(), defs::mk_iff(fz.clone(), gz.clone()));
    let boxed = defs::mk_box(pointwise.clone());
    let ctx = vec![boxed.clone()];
    // converse Barcan instantiated at M := λz.(Fz ↔ Gz)
    let m = Term::abs(z.clone(), defs::mk_iff(fz.clone(), gz.clone()));
    let cb = converse_barcan_len1(sigma.clone())?;
    let cb_inst = forall_elim(&cb, m.clone())?;
    let cb_shaped = Derivation::beta_rule(
        cb_inst,
        defs::mk_imp(
            boxed.clone(),
            defs::mk_forall(z.clone(), defs::mk_box(defs::mk_iff(fz.clone(), gz.clone()))),
        ),
    )?;
    let w_cb = to_context(weaken_chain(cb_shaped, ctx.iter().cloned())?, &ctx)?;
    let h = assume(&ctx, &boxed)?;
    let all_boxed = modus_ponens(&h, &w_cb)?; // Γ ⊢ ∀z.□(Fz ↔ Gz)
    let w_var = {
        let mut w = v('w', sigma.clone());
        while w == z {
            w = w.primed();
        }
        w
    };
    let at_w = forall_elim(&all_boxed, Term::var(w_var.clone()))?; // □(Fw ↔ Gw)
    let pi = prop_intensionalism()?;
    let fw = app(Term::var(f.clone()), Term::var(w_var.clone()));
    let gw = app(Term::var(g.clone()), Term::var(w_var.clone()));
    let pi_inst = forall_elim(&forall_elim(&pi, fw.clone())?, gw.clone())?;
    let w_pi = to_context(weaken_chain(pi_inst, ctx.iter().cloned())?, &ctx)?;
    let eq_w = modus_ponens(&at_w, &w_pi)?; // Γ ⊢ Fw = Gw
    let r7 = Derivation::function_extensionality(eq_w, w_var)?; // Γ ⊢ F = G
    let cp = conditional_proof(&r7)?;
    let all_g = forall_intro(&cp, g)?;
    forall_intro(&all_g, f)
}

/// Full intensional substitution. From `P ⊢ Q` and `Q ⊢ P` and a
/// substitution context `c` with hole `h` (capture permitted), derives
/// both `c[P] ⊢ c[Q]` and `c[Q] ⊢ c[P]` via λ-closure, Intensionality,
/// Function Extensionality and Leibniz transport.
pub fn subst_equiv(
    d_fwd: &Derivation,
    d_bwd: &Derivation,
    c: &Term,
    hole: &Variable,
) -> Result<(Derivation, Derivation)> {
    if !c.is_formula() || hole.ty != Type::T {
        return Err(shape("substitution context must be a formula with a t-typed hole"));
    }
    let int = Derivation::intensionality(d_fwd.clone(), d_bwd.clone())?;
    let (p, q) = {
        let Some((_, p, q)) = match_eq_parts(int.formula()) else {
            return Err(shape("intensionality conclusion shape"));
        };
        (p, q)
    };
    // λ-close over the free variables of P and Q, in a fixed order
    let mut xs: Vec<Variable> = Vec::new();
    for t in [&p, &q] {
        for fv in t.free_vars() {
            if !xs.contains(&fv) {
                xs.push(fv);
            }
        }
    }
    xs.sort_by_key(|w| (w.letter, w.primes, w.ty.full_notation()));
    let mut closed = int;
    for x in xs.iter().rev() {
        let Some((_, l, r)) = match_eq_parts(closed.formula()) else {
            return Err(shape("closure invariant"));
        };
        let (l, r) = (l.clone(), r.clone());
        let staged = Derivation::beta_rule(
            closed,
            defs::mk_eq(
                app(Term::abs(x.clone(), l.clone()), Term::var(x.clone())),
                app(Term::abs(x.clone(), r.clone()), Term::var(x.clone())),
            ),
        )?;
        closed = Derivation::function_extensionality(staged, x.clone())?;
    }
    let Some((_, a_term, b_term)) = match_eq_parts(closed.formula()) else {
        return Err(shape("closure invariant"));
    };
    let (a_term, b_term) = (a_term.clone(), b_term.clone());

    // D := λf. c{h := f x⃗}, f fresh for every variable occurring in c
    let mut spellings: Vec<(char, u32)> = Vec::new();
    collect_spellings(c, &mut spellings);
    for x in &xs {
        spellings.push((x.letter, x.primes));
    }
    let mut fv = Variable::fresh0('f', a_term.ty().clone());
    while spellings.contains(&(fv.letter, fv.primes)) {
        fv = fv.primed();
    }
    let applied = xs
        .iter()
        .fold(Term::var(fv.clone()), |acc, x| app(acc, Term::var(x.clone())));
    let d_ctx = Term::abs(fv, c.graft(hole, &applied).expect("hole is t-typed"));

    let transport = |from: &Term, to: &Term, eq_d: &Derivation| -> Result<Derivation> {
        let cp_from = c.graft(hole, from).expect("hole is t-typed");
        let cp_to = c.graft(hole, to).expect("hole is t-typed");
        let hyp0 = Derivation::hypothesis(vec![], cp_from.clone())?;
        let (eq_lhs, _) = {
            let Some((_, l, r)) = match_eq_parts(eq_d.formula()) else {
                return Err(shape("transport needs an identity"));
            };
            (l.clone(), r.clone())
        };
        let staged = Derivation::beta_rule(hyp0, app(d_ctx.clone(), eq_lhs))?;
        let w_eq = weaken_chain(eq_d.clone(), [cp_from])?;
        let moved = eq_subst(&w_eq, &d_ctx, &staged)?;
        Ok(Derivation::beta_rule(moved, cp_to)?)
    };
    let fwd = transport(&p, &q, &closed)?;
    let back = {
        let sym = eq_sym(&closed)?;
        transport(&q, &p, &sym)?
    };
    let _ = b_term;
    let _ = a_term;
    Ok((fwd, back))
}

fn collect_spellings(t: &Term, out: &mut Vec<(char, u32)>) {
    match t.kind() {
        TermKind::Var(v) => out.push((v.letter, v.primes)),
        TermKind::Con(_) => {}
        TermKind::App(f, a) => {
            collect_spellings(f, out);
            collect_spellings(a, out);
        }
        TermKind::Abs(v, b) => {
            out.push((v.letter, v.primes));
            collect_spellings(b, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{check_theorem, lf, RuleId};

    #[test]
    fn classical_benchmarks() {
        for build in [peirce, double_neg_elim_thm, de_morgan, distribution] {
            let d = build().unwrap();
            assert!(d.assumptions().is_empty());
            check_theorem(&lf(), &d).unwrap();
            // classical propositional logic needs nothing beyond R.1–R.5
            let minimal = lf()
                .without_rule(RuleId::R6Intensionality)
                .without_rule(RuleId::R7FunctionExtensionality)
                .without_rule(RuleId::R8Choice)
                .without_rule(RuleId::R9PotentialInfinity);
            check_theorem(&minimal, &d).unwrap();
        }
    }

    #[test]
    fn leibniz_and_refl() {
        let d = leibniz_default().unwrap();
        check_theorem(&lf(), &d).unwrap();
        let minimal = lf()
            .without_rule(RuleId::R5NegationElimination)
            .without_rule(RuleId::R6Intensionality)
            .without_rule(RuleId::R7FunctionExtensionality)
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        check_theorem(&minimal, &d).unwrap();
        let r = super::super::derived::eq_refl(Type::E).unwrap();
        check_theorem(&minimal, &r).unwrap();
    }

    #[test]
    fn s4_axioms() {
        for build in [s4_k, s4_t, s4_4] {
            let d = build().unwrap();
            check_theorem(&lf(), &d).unwrap();
            // within R.1–R.7
            let m = lf()
                .without_rule(RuleId::R8Choice)
                .without_rule(RuleId::R9PotentialInfinity);
            check_theorem(&m, &d).unwrap();
        }
    }

    #[test]
    fn s5_needs_choice() {
        let d = s5_axiom().unwrap();
        check_theorem(&lf(), &d).unwrap();
        let err = check_theorem(&lf().without_rule(RuleId::R8Choice), &d).unwrap_err();
        assert_eq!(err, KernelError::RuleDisabled(RuleId::R8Choice));
    }

    #[test]
    fn necessity_of_identity_and_distinctness() {
        let d = nec_identity(Type::E).unwrap();
        // R.1–R.4 + R.6 suffice
        let m = lf()
            .without_rule(RuleId::R5NegationElimination)
            .without_rule(RuleId::R7FunctionExtensionality)
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        check_theorem(&m, &d).unwrap();
        let d2 = nec_distinctness(Type::E).unwrap();
        let m2 = lf()
            .without_rule(RuleId::R7FunctionExtensionality)
            .without_rule(RuleId::R9PotentialInfinity);
        check_theorem(&m2, &d2).unwrap();
    }

    #[test]
    fn barcan_both_ways() {
        let m = lf()
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        check_theorem(&m, &barcan_len1(Type::E).unwrap()).unwrap();
        check_theorem(&m, &converse_barcan_len1(Type::E).unwrap()).unwrap();
    }

    #[test]
    fn intensionalism() {
        let m = lf()
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        let d = prop_intensionalism().unwrap();
        check_theorem(&m, &d).unwrap();
        let err = check_theorem(&lf().without_rule(RuleId::R6Intensionality), &d).unwrap_err();
        assert_eq!(err, KernelError::RuleDisabled(RuleId::R6Intensionality));
        check_theorem(&m, &property_intensionalism_len1(Type::E).unwrap()).unwrap();
    }

    #[test]
    fn subst_equiv_with_capture() {
        // P := p ∧ q, Q := q ∧ p are inter-derivable; the context binds p.
        let p = Term::var(tvar('p'));
        let q = Term::var(tvar('q'));
        let pq = defs::mk_and(p.clone(), q.clone());
        let qp = defs::mk_and(q.clone(), p.clone());
        let fwd = {
            let h = hyp(&[], pq.clone()).unwrap();
            and_intro(&and_elim_r(&h).unwrap(), &and_elim_l(&h).unwrap()).unwrap()
        };
        let bwd = {
            let h = hyp(&[], qp.clone()).unwrap();
            and_intro(&and_elim_r(&h).unwrap(), &and_elim_l(&h).unwrap()).unwrap()
        };
        let hole = v('h', Type::T);
        let cap_x = v('X', Type::property_of(Type::T));
        // context: ∀p.(h ∨ X p) — grafting p ∧ q under ∀p captures p
        let ctx_term = defs::mk_forall(
            tvar('p'),
            defs::mk_or(
                Term::var(hole.clone()),
                app(Term::var(cap_x), p.clone()),
            ),
        );
        let (l, r) = subst_equiv(&fwd, &bwd, &ctx_term, &hole).unwrap();
        let m = lf()
            .without_rule(RuleId::R5NegationElimination)
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        // sequents with assumptions cannot be "checked" as theorems; they
        // must at least re-validate rule-wise under R.1–R.4 + R.6 + R.7
        let gate = |d: &Derivation| {
            d.revalidate(&mut |node| {
                if m.enabled(node.rule().id()) {
                    Ok(())
                } else {
                    Err(KernelError::RuleDisabled(node.rule().id()))
                }
            })
            .unwrap();
        };
        gate(&l);
        gate(&r);
        let expected_l = ctx_term.graft(&hole, &pq).unwrap();
        let expected_r = ctx_term.graft(&hole, &qp).unwrap();
        assert!(l.assumptions()[0].alpha_eq(&expected_l));
        assert!(l.formula().alpha_eq(&expected_r));
        assert!(r.assumptions()[0].alpha_eq(&expected_r));
        assert!(r.formula().alpha_eq(&expected_l));
    }
}

//! The refutation of extensionality, and the collapse it forces on
//! Henkin's rule: assuming every material equivalence is an identity,
//! there are at most two propositions, contradicting Potential Infinity
//! at type t.

use crate::defs;
use crate::kernel::{Derivation, KernelError};
use crate::term::{fresh_variable, Term, TermKind, Variable};
use crate::types::Type;

use super::derived::*;
use super::helpers::{app, assume, beta_assumption, to_context, top_in, weaken_chain};
use super::numerals::{chain_numeral, numeral_is_nat};
use super::{LibraryError, Result};

fn shape(msg: impl Into<String>) -> LibraryError {
    KernelError::ShapeMismatch(msg.into()).into()
}

fn tvar(letter: char) -> Variable {
    Variable::fresh0(letter, Type::T)
}

/// `∀p q.((p↔q) → p=q)` as a term.
fn ext_sentence() -> Term {
    let p = tvar('p');
    let q = tvar('q');
    defs::mk_forall(
        p.clone(),
        defs::mk_forall(
            q.clone(),
            defs::mk_imp(
                defs::mk_iff(Term::var(p.clone()), Term::var(q.clone())),
                defs::mk_eq(Term::var(p.clone()), Term::var(q.clone())),
            ),
        ),
    )
}

/// `∀p.((p → p=⊤) ∧ (¬p → p=⊥))` as a term.
fn twoprops_sentence() -> Term {
    let p = tvar('p');
    let pt = Term::var(p.clone());
    defs::mk_forall(
        p.clone(),
        defs::mk_and(
            defs::mk_imp(pt.clone(), defs::mk_eq(pt.clone(), defs::top())),
            defs::mk_imp(defs::mk_neg(pt.clone()), defs::mk_eq(pt.clone(), defs::bot())),
        ),
    )
}

/// From `Θ ⊢ ∀pq.((p↔q)→p=q)` derive `Θ ⊢ ∀p.((p→p=⊤) ∧ (¬p→p=⊥))`.
fn twoprops_from_ext(d_ext: &Derivation) -> Result<Derivation> {
    let theta = d_ext.assumptions().to_vec();
    let s = fresh_variable('s', &Type::T, &theta.iter().collect::<Vec<_>>(), &[]);
    let st = Term::var(s.clone());

    // s → s = ⊤
    let a_part = {
        let mut ctx = theta.clone();
        ctx.push(st.clone());
        let w = Derivation::weakening(d_ext.clone(), st.clone())?;
        let inst = forall_elim(&forall_elim(&w, st.clone())?, defs::top())?;
        let fwd = {
            let mut c = ctx.clone();
            c.push(st.clone());
            conditional_proof(&top_in(&c)?)?
        };
        let bwd = {
            let mut c = ctx.clone();
            c.push(defs::top());
            let sd = assume(&c, &st)?;
            conditional_proof(&sd)?
        };
        let ii = iff_intro(&fwd, &bwd)?;
        let eq = modus_ponens(&ii, &inst)?;
        conditional_proof(&eq)?
    };

    // ¬s → s = ⊥
    let b_part = {
        let ns = defs::mk_neg(st.clone());
        let mut ctx = theta.clone();
        ctx.push(ns.clone());
        let w = Derivation::weakening(d_ext.clone(), ns.clone())?;
        let inst = forall_elim(&forall_elim(&w, st.clone())?, defs::bot())?;
        let fwd = {
            let mut c = ctx.clone();
            c.push(st.clone());
            let hn = assume(&c, &ns)?;
            let hs = assume(&c, &st)?;
            let falsum = neg_elim(&hn, &hs, defs::bot())?;
            conditional_proof(&falsum)?
        };
        let bwd = {
            let mut c = ctx.clone();
            c.push(defs::bot());
            let hb = assume(&c, &defs::bot())?;
            let sd = ex_falso(&hb, st.clone())?;
            conditional_proof(&sd)?
        };
        let ii = iff_intro(&fwd, &bwd)?;
        let eq = modus_ponens(&ii, &inst)?;
        conditional_proof(&eq)?
    };

    let both = and_intro(&a_part, &b_part)?;
    forall_intro(&both, s)
}

/// `Γ ⊢ a=⊤ ∨ a=⊥` from the two-propositions lemma present in `d_tp`.
fn value_cases(d_tp: &Derivation, a: &Term) -> Result<Derivation> {
    let gamma = d_tp.assumptions().to_vec();
    let inst = forall_elim(d_tp, a.clone())?;
    let eq_top = defs::mk_eq(a.clone(), defs::top());
    let eq_bot = defs::mk_eq(a.clone(), defs::bot());
    let em = excluded_middle(&gamma, a.clone())?;
    let pos = {
        let mut c = gamma.clone();
        c.push(a.clone());
        let w = Derivation::weakening(inst.clone(), a.clone())?;
        let l = and_elim_l(&w)?;
        let ha = assume(&c, a)?;
        let eq = modus_ponens(&ha, &l)?;
        or_intro_l(&eq, eq_bot.clone())?
    };
    let neg = {
        let na = defs::mk_neg(a.clone());
        let mut c = gamma.clone();
        c.push(na.clone());
        let w = Derivation::weakening(inst, na.clone())?;
        let r = and_elim_r(&w)?;
        let hn = assume(&c, &na)?;
        let eq = modus_ponens(&hn, &r)?;
        or_intro_r(&eq, eq_top)?
    };
    or_elim(&em, &pos, &neg)
}

// --- surgical one-step unfoldings of the numeral machinery ---

/// `(m + n) X` one definitional step out: `∃Y.(Y⊆X ∧ (mY ∧ n(X∖Y)))`.
fn plus_unfold(m: &Term, n: &Term, x: &Term) -> Term {
    let sigma_prop = x.ty().clone();
    let y = fresh_variable('Y', &sigma_prop, &[m, n, x], &[]);
    let yt = Term::var(y.clone());
    defs::mk_exists(
        y.clone(),
        defs::mk_and(
            defs::mk_include(yt.clone(), x.clone()),
            defs::mk_and(
                app(m.clone(), yt.clone()),
                app(n.clone(), defs::mk_setminus1(x.clone(), yt)),
            ),
        ),
    )
}

/// `1 V` one step out: `∃u.(Vu ∧ ∀z.(Vz → u=z))`.
fn one_unfold(v: &Term) -> Term {
    let sigma = v.ty().domain().expect("property").clone();
    let y = fresh_variable('u', &sigma, &[v], &[]);
    let z = fresh_variable('z', &sigma, &[v], &[y.clone()]);
    defs::mk_exists(
        y.clone(),
        defs::mk_and(
            app(v.clone(), Term::var(y.clone())),
            defs::mk_forall(
                z.clone(),
                defs::mk_imp(
                    app(v.clone(), Term::var(z.clone())),
                    defs::mk_eq(Term::var(y.clone()), Term::var(z.clone())),
                ),
            ),
        ),
    )
}

/// `(X ∖ Y) w` one step out: `Xw ∧ ¬Yw`.
fn setminus_unfold(x: &Term, y: &Term, w: &Term) -> Term {
    defs::mk_and(
        app(x.clone(), w.clone()),
        defs::mk_neg(app(y.clone(), w.clone())),
    )
}

/// `M z` for `M = λv.body`.
fn instantiate_abs(m: &Term, z: &Variable) -> Result<Term> {
    let TermKind::Abs(v, body) = m.kind() else {
        return Err(shape("expected an abstraction to instantiate"));
    };
    Ok(body.substitute(v, &Term::var(z.clone())).expect("typed"))
}

/// Opens `Γ ⊢ ∃_σ M` with a fresh witness `z`: runs `inner` in the
/// context extended by the converted assumption, then discharges the
/// witness. `unfolded` must be β-equivalent to `M z`.
fn open_exists(
    d_ex: &Derivation,
    z: &Variable,
    unfolded: Term,
    inner: impl FnOnce(&[Term]) -> Result<Derivation>,
) -> Result<Derivation> {
    let Some((_, m)) = match_exists(d_ex.formula()) else {
        return Err(shape("open_exists needs an existential"));
    };
    let mut ctx = d_ex.assumptions().to_vec();
    ctx.push(unfolded);
    let body = inner(&ctx)?;
    let restored = beta_assumption(body, ctx.len() - 1, app(m, Term::var(z.clone())))?;
    exists_elim(d_ex, &restored, z.clone())
}

/// `Γ ⊢ ¬(x = y)` given `Γ ⊢ prop x` and `Γ ⊢ ¬(prop y)`.
fn distinct_by(
    gamma: &[Term],
    prop: &Term,
    x: &Term,
    y: &Term,
    d_px: &Derivation,
    d_npy: &Derivation,
) -> Result<Derivation> {
    let eq = defs::mk_eq(x.clone(), y.clone());
    let mut c = gamma.to_vec();
    c.push(eq.clone());
    let h = assume(&c, &eq)?;
    let w_px = Derivation::weakening(d_px.clone(), eq.clone())?;
    let moved = eq_subst(&h, prop, &w_px)?; // Γ, x=y ⊢ prop y
    let w_npy = Derivation::weakening(d_npy.clone(), eq)?;
    let falsum = neg_elim(&w_npy, &moved, defs::bot())?;
    neg_intro(&falsum)
}

/// `Γ ⊢ ⊥` from `x=v`, `y=v` and `¬(x=y)`.
fn pair_clash(d_eq1: &Derivation, d_eq2: &Derivation, d_neq: &Derivation) -> Result<Derivation> {
    let sym2 = eq_sym(d_eq2)?;
    let tr = eq_trans(d_eq1, &sym2)?;
    neg_elim(d_neq, &tr, defs::bot())
}

/// Everything the innermost context knows about the three witnesses.
struct Witnesses {
    xt: Term,
    y1t: Term,
    y2t: Term,
    y3t: Term,
    at: Term,
    bt: Term,
    ct: Term,
    asm2: Term,
    asm3: Term,
    asm4: Term,
    asm5: Term,
    asm7: Term,
}

/// From `Θ ⊢ twoprops`, derive `Θ ⊢ ¬∃(chain 3)` — no property has
/// exactly three propositional instances once every proposition is ⊤
/// or ⊥.
fn no_three(d_tp: &Derivation) -> Result<Derivation> {
    let theta = d_tp.assumptions().to_vec();
    let theta_refs: Vec<&Term> = theta.iter().collect();
    let prop_t = Type::property_of(Type::T);
    let chain3 = chain_numeral(3, Type::T);
    let chain2 = chain_numeral(2, Type::T);
    let chain1 = chain_numeral(1, Type::T);
    let e3 = app(defs::exists(prop_t.clone()), chain3.clone());

    let mut gamma1 = theta.clone();
    gamma1.push(e3.clone());
    let d_e3 = assume(&gamma1, &e3)?;

    let xv = fresh_variable('X', &prop_t, &theta_refs, &[]);
    let y1 = fresh_variable('Y', &prop_t, &theta_refs, &[xv.clone()]);
    let y2 = y1.primed();
    let y3 = y2.primed();
    let av = fresh_variable('a', &Type::T, &theta_refs, &[]);
    let bv = fresh_variable('b', &Type::T, &theta_refs, &[]);
    let cv = fresh_variable('c', &Type::T, &theta_refs, &[]);

    let xt = Term::var(xv.clone());
    let y1t = Term::var(y1.clone());
    let y2t = Term::var(y2.clone());
    let y3t = Term::var(y3.clone());

    let asm1 = plus_unfold(&chain2, &defs::one(Type::T), &xt);
    let falsum = open_exists(&d_e3, &xv, asm1.clone(), |ctx1| {
        let d1 = assume(ctx1, &asm1)?;
        let Some((_, m1)) = match_exists(d1.formula()) else {
            return Err(shape("level-1 unfolding"));
        };
        let asm2 = instantiate_abs(&m1, &y1)?;
        open_exists(&d1, &y1, asm2.clone(), |ctx2| {
            // 1(X∖Y1): open with witness c
            let sm1 = defs::mk_setminus1(xt.clone(), y1t.clone());
            let ones = {
                let d = assume(ctx2, &asm2)?;
                and_elim_r(&and_elim_r(&d)?)?
            };
            let u3 = Derivation::beta_rule(ones, one_unfold(&sm1))?;
            let Some((_, m3)) = match_exists(u3.formula()) else {
                return Err(shape("level-3 unfolding"));
            };
            let asm3 = instantiate_abs(&m3, &cv)?;
            open_exists(&u3, &cv, asm3.clone(), |ctx3| {
                // chain2 Y1: open with witness Y2
                let d2 = {
                    let d = assume(ctx3, &asm2)?;
                    and_elim_l(&and_elim_r(&d)?)?
                };
                let u2 =
                    Derivation::beta_rule(d2, plus_unfold(&chain1, &defs::one(Type::T), &y1t))?;
                let Some((_, m4)) = match_exists(u2.formula()) else {
                    return Err(shape("level-4 unfolding"));
                };
                let asm4 = instantiate_abs(&m4, &y2)?;
                open_exists(&u2, &y2, asm4.clone(), |ctx4| {
                    // 1(Y1∖Y2): open with witness b
                    let sm2 = defs::mk_setminus1(y1t.clone(), y2t.clone());
                    let ones_b = {
                        let d = assume(ctx4, &asm4)?;
                        and_elim_r(&and_elim_r(&d)?)?
                    };
                    let u5 = Derivation::beta_rule(ones_b, one_unfold(&sm2))?;
                    let Some((_, m5)) = match_exists(u5.formula()) else {
                        return Err(shape("level-5 unfolding"));
                    };
                    let asm5 = instantiate_abs(&m5, &bv)?;
                    open_exists(&u5, &bv, asm5.clone(), |ctx5| {
                        // chain1 Y2: open with witness Y3
                        let d3 = {
                            let d = assume(ctx5, &asm4)?;
                            and_elim_l(&and_elim_r(&d)?)?
                        };
                        let u6 = Derivation::beta_rule(
                            d3,
                            plus_unfold(&defs::zero(Type::T), &defs::one(Type::T), &y2t),
                        )?;
                        let Some((_, m6)) = match_exists(u6.formula()) else {
                            return Err(shape("level-6 unfolding"));
                        };
                        let asm6 = instantiate_abs(&m6, &y3)?;
                        open_exists(&u6, &y3, asm6.clone(), |ctx6| {
                            // 1(Y2∖Y3): open with witness a
                            let sm3 = defs::mk_setminus1(y2t.clone(), y3t.clone());
                            let ones_a = {
                                let d = assume(ctx6, &asm6)?;
                                and_elim_r(&and_elim_r(&d)?)?
                            };
                            let u7 = Derivation::beta_rule(ones_a, one_unfold(&sm3))?;
                            let Some((_, m7)) = match_exists(u7.formula()) else {
                                return Err(shape("level-7 unfolding"));
                            };
                            let asm7 = instantiate_abs(&m7, &av)?;
                            open_exists(&u7, &av, asm7.clone(), |ctx7| {
                                let w = Witnesses {
                                    xt: xt.clone(),
                                    y1t: y1t.clone(),
                                    y2t: y2t.clone(),
                                    y3t: y3t.clone(),
                                    at: Term::var(av.clone()),
                                    bt: Term::var(bv.clone()),
                                    ct: Term::var(cv.clone()),
                                    asm2: asm2.clone(),
                                    asm3: asm3.clone(),
                                    asm4: asm4.clone(),
                                    asm5: asm5.clone(),
                                    asm7: asm7.clone(),
                                };
                                innermost(ctx7, d_tp, &w)
                            })
                        })
                    })
                })
            })
        })
    })?;
    // falsum: Θ, ∃(chain3) ⊢ ⊥
    neg_intro(&falsum)
}

/// Inside all seven witnesses: extract memberships, derive pairwise
/// distinctness, and clash the eight value assignments.
fn innermost(ctx: &[Term], d_tp: &Derivation, w: &Witnesses) -> Result<Derivation> {
    // a ∈ Y2 (and a ∉ Y3, unused): from asm7's first conjunct
    let a_in_sm3 = {
        let d = assume(ctx, &w.asm7)?;
        let m = and_elim_l(&d)?;
        Derivation::beta_rule(m, setminus_unfold(&w.y2t, &w.y3t, &w.at))?
    };
    let a_in_y2 = and_elim_l(&a_in_sm3)?;
    // b ∈ Y1, b ∉ Y2
    let b_in_sm2 = {
        let d = assume(ctx, &w.asm5)?;
        let m = and_elim_l(&d)?;
        Derivation::beta_rule(m, setminus_unfold(&w.y1t, &w.y2t, &w.bt))?
    };
    let b_in_y1 = and_elim_l(&b_in_sm2)?;
    let b_not_y2 = and_elim_r(&b_in_sm2)?;
    // c ∈ X, c ∉ Y1
    let c_in_sm1 = {
        let d = assume(ctx, &w.asm3)?;
        let m = and_elim_l(&d)?;
        Derivation::beta_rule(m, setminus_unfold(&w.xt, &w.y1t, &w.ct))?
    };
    let c_not_y1 = and_elim_r(&c_in_sm1)?;
    // a ∈ Y1 via Y2 ⊆ Y1
    let y2_in_y1 = {
        let d = assume(ctx, &w.asm4)?;
        and_elim_l(&d)?
    };
    let a_in_y1 = Derivation::universal_instantiation(y2_in_y1, a_in_y2.clone())?;

    // pairwise distinctness
    let nab = distinct_by(ctx, &w.y2t, &w.at, &w.bt, &a_in_y2, &b_not_y2)?;
    let nac = distinct_by(ctx, &w.y1t, &w.at, &w.ct, &a_in_y1, &c_not_y1)?;
    let nbc = distinct_by(ctx, &w.y1t, &w.bt, &w.ct, &b_in_y1, &c_not_y1)?;

    // eight-way case split on the values of a, b, c
    let tp_here = to_context(d_tp.clone(), ctx)?;
    let va = value_cases(&tp_here, &w.at)?;
    let branch_a = |a_case: Term| -> Result<Derivation> {
        let mut c_a = ctx.to_vec();
        c_a.push(a_case.clone());
        let d_a = assume(&c_a, &a_case)?;
        let tp_a = to_context(d_tp.clone(), &c_a)?;
        let vb = value_cases(&tp_a, &w.bt)?;
        let branch_b = |b_case: Term| -> Result<Derivation> {
            let mut c_b = c_a.clone();
            c_b.push(b_case.clone());
            let d_b = assume(&c_b, &b_case)?;
            let d_a2 = to_context(d_a.clone(), &c_b)?;
            let (_, _, a_val) =
                match_eq_parts(d_a2.formula()).ok_or_else(|| shape("value case shape"))?;
            let (_, _, b_val) =
                match_eq_parts(d_b.formula()).ok_or_else(|| shape("value case shape"))?;
            if a_val.alpha_eq(&b_val) {
                let neq = to_context(nab.clone(), &c_b)?;
                return pair_clash(&d_a2, &d_b, &neq);
            }
            let tp_b = to_context(d_tp.clone(), &c_b)?;
            let vc = value_cases(&tp_b, &w.ct)?;
            let branch_c = |c_case: Term| -> Result<Derivation> {
                let mut c_c = c_b.clone();
                c_c.push(c_case.clone());
                let d_c = assume(&c_c, &c_case)?;
                let (_, _, c_val) =
                    match_eq_parts(d_c.formula()).ok_or_else(|| shape("value case shape"))?;
                if a_val.alpha_eq(&c_val) {
                    let d_a3 = to_context(d_a2.clone(), &c_c)?;
                    let neq = to_context(nac.clone(), &c_c)?;
                    pair_clash(&d_a3, &d_c, &neq)
                } else {
                    let d_b2 = to_context(d_b.clone(), &c_c)?;
                    let neq = to_context(nbc.clone(), &c_c)?;
                    pair_clash(&d_b2, &d_c, &neq)
                }
            };
            let l = branch_c(defs::mk_eq(w.ct.clone(), defs::top()))?;
            let r = branch_c(defs::mk_eq(w.ct.clone(), defs::bot()))?;
            or_elim(&vc, &l, &r)
        };
        let l = branch_b(defs::mk_eq(w.bt.clone(), defs::top()))?;
        let r = branch_b(defs::mk_eq(w.bt.clone(), defs::bot()))?;
        or_elim(&vb, &l, &r)
    };
    let l = branch_a(defs::mk_eq(w.at.clone(), defs::top()))?;
    let r = branch_a(defs::mk_eq(w.at.clone(), defs::bot()))?;
    or_elim(&va, &l, &r)
}

/// From `Θ ⊢ twoprops` and `Θ ⊢ ¬∃(chain 3)`: `Θ ⊢ ⊥ = ∃(chain 3)`.
fn bot_is_exists3(d_tp: &Derivation, d_ne: &Derivation) -> Result<Derivation> {
    let chain3 = chain_numeral(3, Type::T);
    let e3 = app(defs::exists(Type::property_of(Type::T)), chain3);
    let inst = forall_elim(d_tp, e3)?;
    let r = and_elim_r(&inst)?;
    let eq = modus_ponens(d_ne, &r)?;
    eq_sym(&eq)
}

/// `⊢ ∃p q.((p↔q) ∧ p≠q)` — the denial of propositional extensionality,
/// from R.1–R.5 and R.9.
pub fn refute_extensionality() -> Result<Derivation> {
    let p = tvar('p');
    let q = tvar('q');
    let pt = Term::var(p.clone());
    let qt = Term::var(q.clone());
    let m_q = Term::abs(
        q.clone(),
        defs::mk_and(
            defs::mk_iff(pt.clone(), qt.clone()),
            defs::mk_neq(pt.clone(), qt.clone()),
        ),
    );
    let inner = app(defs::exists(Type::T), m_q.clone());
    let m_p = Term::abs(p.clone(), inner.clone());
    let goal = app(defs::exists(Type::T), m_p.clone());
    let ng = defs::mk_neg(goal.clone());
    let ctx = vec![ng.clone()];

    // [¬G] ⊢ ∀pq.((p↔q)→p=q): if some equivalent pair were distinct, G
    // would follow at once.
    let ext = {
        let iff_pq = defs::mk_iff(pt.clone(), qt.clone());
        let n_eq = defs::mk_neg(defs::mk_eq(pt.clone(), qt.clone()));
        let mut c3 = ctx.clone();
        c3.push(iff_pq.clone());
        c3.push(n_eq.clone());
        let conj = {
            let ii = assume(&c3, &iff_pq)?;
            let ne = assume(&c3, &n_eq)?;
            let as_neq = Derivation::beta_rule(ne, defs::mk_neq(pt.clone(), qt.clone()))?;
            and_intro(&ii, &as_neq)?
        };
        let ei_q = exists_intro(&conj, m_q.clone(), qt.clone())?;
        let ei_p = exists_intro(&ei_q, m_p.clone(), pt.clone())?;
        let hng = assume(&c3, &ng)?;
        let falsum = neg_elim(&hng, &ei_p, defs::bot())?;
        let to_eq = ex_falso(&falsum, defs::mk_eq(pt.clone(), qt.clone()))?;
        let closed = Derivation::negation_elimination(to_eq)?;
        let cp = conditional_proof(&closed)?;
        let all_q = forall_intro(&cp, q.clone())?;
        forall_intro(&all_q, p.clone())?
    };
    debug_assert!(ext.formula().alpha_eq(&ext_sentence()));

    let tp = twoprops_from_ext(&ext)?;
    let ne3 = no_three(&tp)?;
    let be = bot_is_exists3(&tp, &ne3)?;
    let nat3 = numeral_is_nat(3, Type::T)?;
    let w_nat = to_context(weaken_chain(nat3, ctx.iter().cloned())?, &ctx)?;
    let r9 = Derivation::potential_infinity(w_nat)?;
    let chain3 = chain_numeral(3, Type::T);
    let e3 = app(defs::exists(Type::property_of(Type::T)), chain3);
    let as_neg = Derivation::beta_rule(r9, defs::mk_neg(defs::mk_eq(defs::bot(), e3)))?;
    let falsum = neg_elim(&as_neg, &be, defs::bot())?;
    let to_goal = ex_falso(&falsum, goal)?;
    Ok(Derivation::negation_elimination(to_goal)?)
}

/// `⊢ ⊥` in Henkin-1950: the extensionality rule (with side assumptions)
/// proves `∀pq.((p↔q)→p=q)`, which collapses the propositions against
/// Potential Infinity at t.
pub fn henkin_inconsistency() -> Result<Derivation> {
    let p = tvar('p');
    let q = tvar('q');
    let pt = Term::var(p.clone());
    let qt = Term::var(q.clone());
    let iff_pq = defs::mk_iff(pt.clone(), qt.clone());
    let gamma = vec![iff_pq.clone()];
    let fwd = {
        let mut c = gamma.clone();
        c.push(pt.clone());
        let d_iff = assume(&c, &iff_pq)?;
        let f = iff_forward(&d_iff)?;
        let hp = assume(&c, &pt)?;
        modus_ponens(&hp, &f)?
    };
    let bwd = {
        let mut c = gamma.clone();
        c.push(qt.clone());
        let d_iff = assume(&c, &iff_pq)?;
        let b = iff_backward(&d_iff)?;
        let hq = assume(&c, &qt)?;
        modus_ponens(&hq, &b)?
    };
    let he = Derivation::henkin_extensionality(fwd, bwd)?; // [p↔q] ⊢ p=q
    let cp = conditional_proof(&he)?;
    let all_q = forall_intro(&cp, q)?;
    let ext = forall_intro(&all_q, p)?;

    let tp = twoprops_from_ext(&ext)?;
    let ne3 = no_three(&tp)?;
    let be = bot_is_exists3(&tp, &ne3)?;
    let nat3 = numeral_is_nat(3, Type::T)?;
    let r9 = Derivation::potential_infinity(nat3)?;
    let chain3 = chain_numeral(3, Type::T);
    let e3 = app(defs::exists(Type::property_of(Type::T)), chain3);
    let as_neg = Derivation::beta_rule(r9, defs::mk_neg(defs::mk_eq(defs::bot(), e3)))?;
    neg_elim(&as_neg, &be, defs::bot())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{check_theorem, henkin_1950, lf, RuleId};

    #[test]
    fn twoprops_pipeline() {
        let ext = ext_sentence();
        let h = Derivation::hypothesis(vec![], ext).unwrap();
        let tp = twoprops_from_ext(&h).unwrap();
        assert!(tp.formula().alpha_eq(&twoprops_sentence()));
        assert_eq!(tp.assumptions().len(), 1);
    }

    #[test]
    fn refutation_checks_under_minimal_rules() {
        let d = refute_extensionality().unwrap();
        assert!(d.assumptions().is_empty());
        // R.1–R.5 plus R.9 only
        let minimal = lf()
            .without_rule(RuleId::R6Intensionality)
            .without_rule(RuleId::R7FunctionExtensionality)
            .without_rule(RuleId::R8Choice);
        check_theorem(&minimal, &d).unwrap();
        // and fails without Potential Infinity
        let err =
            check_theorem(&lf().without_rule(RuleId::R9PotentialInfinity), &d).unwrap_err();
        assert_eq!(err, KernelError::RuleDisabled(RuleId::R9PotentialInfinity));
    }

    #[test]
    fn henkin_bot() {
        let d = henkin_inconsistency().unwrap();
        assert!(d.assumptions().is_empty());
        assert!(d.formula().alpha_eq(&defs::bot()));
        check_theorem(&henkin_1950(), &d).unwrap();
        // plain LF rejects the Henkin rule
        let err = check_theorem(&lf(), &d).unwrap_err();
        assert_eq!(err, KernelError::RuleDisabled(RuleId::VHenkinExt));
    }
}

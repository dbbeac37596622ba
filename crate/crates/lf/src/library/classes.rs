//! Theorems about the description function: the actuality function's
//! specification under D_ι, the provable half of the slingshot (`α↔⊤`),
//! class comprehension via ι, and class extensionality.

use crate::defs;
use crate::extensions::{AxiomSchema, SchemaName};
use crate::kernel::{Derivation, KernelError};
use crate::term::{fresh_variable, Term, Variable};
use crate::types::Type;

use super::derived::*;
use super::helpers::{app, assume, to_context, top_in, weaken_chain};
use super::{LibraryError, Result};

fn shape(msg: impl Into<String>) -> LibraryError {
    KernelError::ShapeMismatch(msg.into()).into()
}

/// The D_ι.1 instance at index t, the only axiom these theorems need.
pub fn diota1_at_t() -> Term {
    AxiomSchema(SchemaName::DIota1).generate(&Type::T)
}

/// `λq.((φ → q=⊤) ∧ (¬φ → q=⊥))` — the property whose unique instance
/// is φ's truth value.
fn truth_value_property(phi: &Term) -> Term {
    let q = fresh_variable('q', &Type::T, &[phi], &[]);
    let qt = Term::var(q.clone());
    Term::abs(
        q,
        defs::mk_and(
            defs::mk_imp(phi.clone(), defs::mk_eq(qt.clone(), defs::top())),
            defs::mk_imp(defs::mk_neg(phi.clone()), defs::mk_eq(qt, defs::bot())),
        ),
    )
}

/// `∃u.(Pu ∧ ∀z.(Pz → u=z))` — `1 P` one step out.
fn one_unfold(p: &Term) -> (Term, Term, Variable, Variable) {
    let u = fresh_variable('u', &Type::T, &[p], &[]);
    let z = fresh_variable('z', &Type::T, &[p], &[u.clone()]);
    let uniq = defs::mk_forall(
        z.clone(),
        defs::mk_imp(
            app(p.clone(), Term::var(z.clone())),
            defs::mk_eq(Term::var(u.clone()), Term::var(z.clone())),
        ),
    );
    let m = Term::abs(
        u.clone(),
        defs::mk_and(app(p.clone(), Term::var(u.clone())), uniq.clone()),
    );
    (app(defs::exists(Type::T), m.clone()), m, u, z)
}

/// `Γ ⊢ ∃! P_φ` — the truth-value property is uniquely instantiated,
/// by cases on φ.
fn unique_truth_value(gamma: &[Term], phi: &Term) -> Result<Derivation> {
    let p_phi = truth_value_property(phi);
    let (_, m_one, _u, z) = one_unfold(&p_phi);
    let case = |positive: bool| -> Result<Derivation> {
        let hypo = if positive {
            phi.clone()
        } else {
            defs::mk_neg(phi.clone())
        };
        let witness = if positive { defs::top() } else { defs::bot() };
        let mut ctx = gamma.to_vec();
        ctx.push(hypo.clone());
        // P_φ witness, reduced: (φ → w=⊤) ∧ (¬φ → w=⊥)
        let left_imp = {
            let mut c2 = ctx.clone();
            c2.push(phi.clone());
            let inner = if positive {
                refl_term(&c2, witness.clone())?
            } else {
                let hn = assume(&c2, &hypo)?;
                let hp = assume(&c2, phi)?;
                neg_elim(&hn, &hp, defs::mk_eq(witness.clone(), defs::top()))?
            };
            conditional_proof(&inner)?
        };
        let right_imp = {
            let nphi = defs::mk_neg(phi.clone());
            let mut c2 = ctx.clone();
            c2.push(nphi.clone());
            let inner = if positive {
                let hn = assume(&c2, &nphi)?;
                let hp = assume(&c2, phi)?;
                neg_elim(&hn, &hp, defs::mk_eq(witness.clone(), defs::bot()))?
            } else {
                refl_term(&c2, witness.clone())?
            };
            conditional_proof(&inner)?
        };
        let instance = and_intro(&left_imp, &right_imp)?;
        let at_witness = Derivation::beta_rule(instance, app(p_phi.clone(), witness.clone()))?;
        // uniqueness: ∀z.(P_φ z → w = z)
        let uniq = {
            let pz = app(p_phi.clone(), Term::var(z.clone()));
            let mut c2 = ctx.clone();
            c2.push(pz.clone());
            let d = assume(&c2, &pz)?;
            let reduced = Derivation::beta_rule(
                d,
                defs::mk_and(
                    defs::mk_imp(
                        phi.clone(),
                        defs::mk_eq(Term::var(z.clone()), defs::top()),
                    ),
                    defs::mk_imp(
                        defs::mk_neg(phi.clone()),
                        defs::mk_eq(Term::var(z.clone()), defs::bot()),
                    ),
                ),
            )?;
            let z_val = if positive {
                let l = and_elim_l(&reduced)?;
                let hp = assume(&c2, phi)?;
                modus_ponens(&hp, &l)?
            } else {
                let r = and_elim_r(&reduced)?;
                let hn = assume(&c2, &hypo)?;
                modus_ponens(&hn, &r)?
            }; // z = w
            let sym = eq_sym(&z_val)?; // w = z
            let cp = conditional_proof(&sym)?;
            forall_intro(&cp, z.clone())?
        };
        let both = and_intro(&at_witness, &uniq)?;
        let ei = exists_intro(&both, m_one.clone(), witness)?;
        Ok(Derivation::beta_rule(
            ei,
            app(defs::one(Type::T), p_phi.clone()),
        )?)
    };
    let em = excluded_middle(gamma, phi.clone())?;
    or_elim(&em, &case(true)?, &case(false)?)
}

/// With the D_ι.1-at-t instance in `gamma`, derives
/// `Γ ⊢ (φ → ιP_φ = ⊤) ∧ (¬φ → ιP_φ = ⊥)`.
fn actuality_spec(gamma: &[Term], phi: &Term) -> Result<Derivation> {
    let ax = diota1_at_t();
    if !gamma.iter().any(|a| a.alpha_eq(&ax)) {
        return Err(shape("actuality_spec needs the D_ι.1 instance at t among the assumptions"));
    }
    let p_phi = truth_value_property(phi);
    let uniq = unique_truth_value(gamma, phi)?;
    let ax_d = assume(gamma, &ax)?;
    let inst = forall_elim(&ax_d, p_phi.clone())?; // ∃!P_φ → P_φ(ιP_φ)
    let applied = modus_ponens(&uniq, &inst)?; // P_φ(ιP_φ)
    let iota_p = app(defs::iota(Type::T), p_phi.clone());
    Ok(Derivation::beta_rule(
        applied,
        defs::mk_and(
            defs::mk_imp(phi.clone(), defs::mk_eq(iota_p.clone(), defs::top())),
            defs::mk_imp(defs::mk_neg(phi.clone()), defs::mk_eq(iota_p, defs::bot())),
        ),
    )?)
}

/// `Γ ⊢ φ ↔ target` where `target ∼β ιP_φ` (e.g. `@φ` or `Y₀ z`), with
/// the D_ι.1-at-t instance among the assumptions.
fn phi_iff_iota(gamma: &[Term], phi: &Term, target: &Term) -> Result<Derivation> {
    let p_phi = truth_value_property(phi);
    let iota_p = app(defs::iota(Type::T), p_phi.clone());
    let spec = actuality_spec(gamma, phi)?;
    let fwd = {
        let mut c = gamma.to_vec();
        c.push(phi.clone());
        let w_spec = Derivation::weakening(spec.clone(), phi.clone())?;
        let l = and_elim_l(&w_spec)?;
        let hp = assume(&c, phi)?;
        let eq = modus_ponens(&hp, &l)?; // ιP = ⊤
        let sym = eq_sym(&eq)?; // ⊤ = ιP
        let s = fresh_variable('s', &Type::T, &[phi], &[]);
        let id = Term::abs(s.clone(), Term::var(s));
        let t = top_in(&c)?;
        let t_as = Derivation::beta_rule(t, app(id.clone(), defs::top()))?;
        let raw = eq_subst(&sym, &id, &t_as)?;
        let to_target = Derivation::beta_rule(raw, target.clone())?;
        conditional_proof(&to_target)?
    };
    let bwd = {
        let mut c = gamma.to_vec();
        c.push(target.clone());
        let d = assume(&c, target)?;
        let as_iota = Derivation::beta_rule(d, iota_p.clone())?;
        let w_spec = Derivation::weakening(spec, target.clone())?;
        let em = excluded_middle(&c, phi.clone())?;
        let pos = {
            let mut c2 = c.clone();
            c2.push(phi.clone());
            assume(&c2, phi)?
        };
        let neg = {
            let nphi = defs::mk_neg(phi.clone());
            let mut c2 = c.clone();
            c2.push(nphi.clone());
            let r = and_elim_r(&Derivation::weakening(w_spec, nphi.clone())?)?;
            let hn = assume(&c2, &nphi)?;
            let eq = modus_ponens(&hn, &r)?; // ιP = ⊥
            let s = fresh_variable('s', &Type::T, &[phi], &[]);
            let id = Term::abs(s.clone(), Term::var(s));
            let w_iota = Derivation::weakening(as_iota.clone(), nphi)?;
            let prop = Derivation::beta_rule(w_iota, app(id.clone(), iota_p.clone()))?;
            let raw = eq_subst(&eq, &id, &prop)?;
            let falsum = Derivation::beta_rule(raw, defs::bot())?;
            ex_falso(&falsum, phi.clone())?
        };
        let out = or_elim(&em, &pos, &neg)?;
        conditional_proof(&out)?
    };
    iff_intro(&fwd, &bwd)
}

/// `[D_ι.1@t] ⊢ α ↔ ⊤` — the provable half of the slingshot.
pub fn alpha_iff_top() -> Result<Derivation> {
    let ax = diota1_at_t();
    let alpha = defs::alpha_sentence();
    let fwd = {
        let mut c = vec![ax.clone()];
        c.push(alpha.clone());
        conditional_proof(&top_in(&c)?)?
    };
    let bwd = {
        let gamma = vec![ax.clone(), defs::top()];
        let p = fresh_variable('p', &Type::T, &[], &[]);
        let pt = Term::var(p.clone());
        let at_p = app(defs::actuality(), pt.clone());
        let iff = phi_iff_iota(&gamma, &pt, &at_p)?;
        let all = forall_intro(&iff, p)?; // ∀p.(p ↔ @p) = α
        conditional_proof(&all)?
    };
    iff_intro(&fwd, &bwd)
}

/// `[D_ι.1@t] ⊢ ∀X^{σt}.∃Y.(class Y ∧ ∀z.(Xz ↔ Yz))` — every property is
/// coextensive with the class `λw. ι λq.((Xw→q=⊤)∧(¬Xw→q=⊥))`.
pub fn class_comprehension_iota(sigma: Type) -> Result<Derivation> {
    let ax = diota1_at_t();
    let gamma = vec![ax.clone()];
    let cap_x = fresh_variable('X', &Type::property_of(sigma.clone()), &[], &[]);
    let xt = Term::var(cap_x.clone());
    let w = fresh_variable('w', &sigma, &[&xt], &[]);
    let xw = app(xt.clone(), Term::var(w.clone()));
    let y0 = Term::abs(
        w.clone(),
        app(defs::iota(Type::T), truth_value_property(&xw)),
    );

    // (a) class(Y₀): ∀w.(Y₀w=⊤ ∨ Y₀w=⊥)
    let class_part = {
        let spec = actuality_spec(&gamma, &xw)?;
        let iota_p = app(defs::iota(Type::T), truth_value_property(&xw));
        let em = excluded_middle(&gamma, xw.clone())?;
        let pos = {
            let mut c = gamma.clone();
            c.push(xw.clone());
            let l = and_elim_l(&Derivation::weakening(spec.clone(), xw.clone())?)?;
            let hp = assume(&c, &xw)?;
            let eq = modus_ponens(&hp, &l)?;
            or_intro_l(&eq, defs::mk_eq(iota_p.clone(), defs::bot()))?
        };
        let neg = {
            let nxw = defs::mk_neg(xw.clone());
            let mut c = gamma.clone();
            c.push(nxw.clone());
            let r = and_elim_r(&Derivation::weakening(spec, nxw.clone())?)?;
            let hn = assume(&c, &nxw)?;
            let eq = modus_ponens(&hn, &r)?;
            or_intro_r(&eq, defs::mk_eq(iota_p.clone(), defs::top()))?
        };
        let cases = or_elim(&em, &pos, &neg)?;
        let y0w = app(y0.clone(), Term::var(w.clone()));
        let folded = Derivation::beta_rule(
            cases,
            defs::mk_or(
                defs::mk_eq(y0w.clone(), defs::top()),
                defs::mk_eq(y0w, defs::bot()),
            ),
        )?;
        let all = forall_intro(&folded, w.clone())?;
        Derivation::beta_rule(all, app(defs::class(sigma.clone()), y0.clone()))?
    };

    // (b) ∀z.(Xz ↔ Y₀z)
    let pointwise = {
        let z = fresh_variable('z', &sigma, &[&xt], &[w.clone()]);
        let xz = app(xt.clone(), Term::var(z.clone()));
        let y0z = app(y0.clone(), Term::var(z.clone()));
        let iff = phi_iff_iota(&gamma, &xz, &y0z)?;
        forall_intro(&iff, z)?
    };

    let both = and_intro(&class_part, &pointwise)?;
    // ∃Y.(class Y ∧ ∀z.(Xz ↔ Yz))
    let cap_y = fresh_variable('Y', &Type::property_of(sigma.clone()), &[&xt], &[cap_x.clone()]);
    let z2 = fresh_variable('z', &sigma, &[&xt], &[cap_y.clone()]);
    let m = Term::abs(
        cap_y.clone(),
        defs::mk_and(
            app(defs::class(sigma.clone()), Term::var(cap_y.clone())),
            defs::mk_forall(
                z2.clone(),
                defs::mk_iff(
                    app(xt.clone(), Term::var(z2.clone())),
                    app(Term::var(cap_y.clone()), Term::var(z2.clone())),
                ),
            ),
        ),
    );
    let ei = exists_intro(&both, m, y0)?;
    forall_intro(&ei, cap_x)
}

/// `⊢ ∀X.(class X → ∀Y.(class Y → ((∀z.(Xz↔Yz)) → X=Y)))` — classes are
/// extensional, immediately from Function Extensionality.
pub fn class_extensionality(sigma: Type) -> Result<Derivation> {
    let cap_x = fresh_variable('X', &Type::property_of(sigma.clone()), &[], &[]);
    let cap_y = {
        let y = fresh_variable('Y', &Type::property_of(sigma.clone()), &[], &[cap_x.clone()]);
        y
    };
    let xt = Term::var(cap_x.clone());
    let yt = Term::var(cap_y.clone());
    let z = fresh_variable('z', &sigma, &[], &[]);
    let cls_x = app(defs::class(sigma.clone()), xt.clone());
    let cls_y = app(defs::class(sigma.clone()), yt.clone());
    let pointwise = defs::mk_forall(
        z.clone(),
        defs::mk_iff(
            app(xt.clone(), Term::var(z.clone())),
            app(yt.clone(), Term::var(z.clone())),
        ),
    );
    let gamma = vec![cls_x.clone(), cls_y.clone(), pointwise.clone()];
    let w = fresh_variable('w', &sigma, &[], &[z.clone()]);
    let wt = Term::var(w.clone());
    let xw = app(xt.clone(), wt.clone());
    let yw = app(yt.clone(), wt.clone());

    let values = |cls: &Term, of: &Term, ctx: &[Term]| -> Result<Derivation> {
        let d = assume(ctx, cls)?;
        let yv = fresh_variable('y', &sigma, &[of], &[w.clone()]);
        let unfolded = Derivation::beta_rule(
            d,
            defs::mk_forall(
                yv.clone(),
                defs::mk_or(
                    defs::mk_eq(app(of.clone(), Term::var(yv.clone())), defs::top()),
                    defs::mk_eq(app(of.clone(), Term::var(yv.clone())), defs::bot()),
                ),
            ),
        )?;
        forall_elim(&unfolded, wt.clone())
    };

    // value case analysis for Xw and Yw, deriving Xw = Yw in each leaf
    let vx = values(&cls_x, &xt, &gamma)?;
    let use_prop = |d_eq_sym: &Derivation, target_ctx: &[Term]| -> Result<Derivation> {
        // from ⊤ = φ conclude φ
        let s = fresh_variable('s', &Type::T, &[], &[]);
        let id = Term::abs(s.clone(), Term::var(s));
        let t = top_in(target_ctx)?;
        let t_as = Derivation::beta_rule(t, app(id.clone(), defs::top()))?;
        let raw = eq_subst(d_eq_sym, &id, &t_as)?;
        let Some((_, _, phi)) = match_eq_parts(d_eq_sym.formula()) else {
            return Err(shape("use_prop needs ⊤ = φ"));
        };
        Ok(Derivation::beta_rule(raw, phi)?)
    };
    let to_false = |d_prop: &Derivation, d_eq_bot: &Derivation| -> Result<Derivation> {
        // from φ and φ = ⊥ derive ⊥
        let s = fresh_variable('s', &Type::T, &[], &[]);
        let id = Term::abs(s.clone(), Term::var(s));
        let as_id = Derivation::beta_rule(
            d_prop.clone(),
            app(id.clone(), d_prop.formula().clone()),
        )?;
        let raw = eq_subst(d_eq_bot, &id, &as_id)?;
        Ok(Derivation::beta_rule(raw, defs::bot())?)
    };

    let branch_x = |x_case: Term| -> Result<Derivation> {
        let mut c_x = gamma.clone();
        c_x.push(x_case.clone());
        let d_x = assume(&c_x, &x_case)?;
        let vy = values(&cls_y, &yt, &c_x)?;
        let branch_y = |y_case: Term| -> Result<Derivation> {
            let mut c_y = c_x.clone();
            c_y.push(y_case.clone());
            let d_y = assume(&c_y, &y_case)?;
            let d_x2 = to_context(d_x.clone(), &c_y)?;
            let (_, _, x_val) =
                match_eq_parts(d_x2.formula()).ok_or_else(|| shape("value case"))?;
            let (_, _, y_val) =
                match_eq_parts(d_y.formula()).ok_or_else(|| shape("value case"))?;
            if x_val.alpha_eq(&y_val) {
                // Xw = v and Yw = v给 give Xw = Yw
                let sym = eq_sym(&d_y)?;
                return eq_trans(&d_x2, &sym);
            }
            // mixed values: one of Xw/Yw is true, transported through the
            // biconditional the other must be true as well — contradiction
            let iff_w = {
                let pw = assume(&c_y, &pointwise)?;
                forall_elim(&pw, wt.clone())?
            };
            let x_is_top = x_val.alpha_eq(&defs::top());
            let falsum = if x_is_top {
                let xd = use_prop(&eq_sym(&d_x2)?, &c_y)?; // Xw
                let yd = iff_elim(&iff_w, &xd)?; // Yw
                to_false(&yd, &d_y)?
            } else {
                let ydp = use_prop(&eq_sym(&d_y)?, &c_y)?; // Yw
                let back = iff_backward(&iff_w)?;
                let xd = modus_ponens(&ydp, &back)?; // Xw
                to_false(&xd, &d_x2)?
            };
            ex_falso(&falsum, defs::mk_eq(xw.clone(), yw.clone()))
        };
        let l = branch_y(defs::mk_eq(yw.clone(), defs::top()))?;
        let r = branch_y(defs::mk_eq(yw.clone(), defs::bot()))?;
        or_elim(&vy, &l, &r)
    };
    let l = branch_x(defs::mk_eq(xw.clone(), defs::top()))?;
    let r = branch_x(defs::mk_eq(xw.clone(), defs::bot()))?;
    let eq_w = or_elim(&vx, &l, &r)?; // Γ ⊢ Xw = Yw
    let ext = Derivation::function_extensionality(eq_w, w)?; // Γ ⊢ X = Y
    let cp1 = conditional_proof(&ext)?; // [clsX, clsY] ⊢ pointwise → X=Y
    let cp2 = conditional_proof(&cp1)?; // [clsX] ⊢ clsY → …
    let all_y = forall_intro(&cp2, cap_y)?;
    let cp3 = conditional_proof(&all_y)?;
    forall_intro(&cp3, cap_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{check_theorem, lf, lf_iota, RuleId};

    #[test]
    fn alpha_equivalence_checks_in_lf_iota() {
        let d = alpha_iff_top().unwrap();
        assert_eq!(d.assumptions().len(), 1);
        let checked = check_theorem(&lf_iota(), &d).unwrap();
        assert!(checked
            .theorem
            .alpha_eq(&defs::mk_iff(defs::alpha_sentence(), defs::top())));
        // under plain LF the axiom is an undischarged assumption
        let err = check_theorem(&lf(), &d).unwrap_err();
        assert!(matches!(err, KernelError::UndischargedAssumption(_)));
    }

    #[test]
    fn comprehension_and_extensionality() {
        let d = class_comprehension_iota(Type::E).unwrap();
        check_theorem(&lf_iota(), &d).unwrap();
        let e = class_extensionality(Type::E).unwrap();
        check_theorem(&lf(), &e).unwrap();
        // within R.1–R.5 + R.7
        let minimal = lf()
            .without_rule(RuleId::R6Intensionality)
            .without_rule(RuleId::R8Choice)
            .without_rule(RuleId::R9PotentialInfinity);
        check_theorem(&minimal, &e).unwrap();
    }

    #[test]
    fn no_catalog_route_to_slingshot_identity() {
        // ⊢ p = @p must not be the statement of any catalog entry
        let p = Term::var(Variable::fresh0('p', Type::T));
        let collapse = defs::mk_eq(p.clone(), app(defs::actuality(), p));
        for entry in super::super::catalog() {
            let d = (entry.build)().unwrap();
            assert!(
                !d.formula().alpha_eq(&collapse),
                "{} proves the slingshot identity",
                entry.name
            );
        }
    }
}

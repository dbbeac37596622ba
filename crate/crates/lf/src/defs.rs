//! The table of defined notations.
//!
//! Every abbreviation rewrites to a core term built from variables, `⊆_σ`
//! (plus `ι_σ`/`ε_σ` under the extension theories), application and
//! abstraction. Expansion happens during elaboration; the kernel and the
//! proof library construct these terms directly through the builders
//! below, so a printed `¬P` and a kernel-made `¬P` are the same term.
//!
//! Type-indexed entries (`∀_σ`, `=_σ`, …) take a single type parameter;
//! `≡` and `∖` take a type vector and expand to iterated abstractions.

use crate::notation::{NotationError, NotationGuard};
use crate::term::{fresh_variable, Constant, Term, Variable};
use crate::types::Type;

fn v(letter: char, ty: Type) -> Variable {
    Variable::fresh0(letter, ty)
}

fn app(f: Term, a: Term) -> Term {
    Term::app(f, a).expect("definition expansion is well-typed")
}

/// `⊆_σ` as a term.
pub fn include(sigma: Type) -> Term {
    Term::con(Constant::Include(sigma))
}

/// `F ⊆ G`, with σ read off from the operands.
pub fn mk_include(f: Term, g: Term) -> Term {
    let sigma = f
        .ty()
        .domain()
        .expect("⊆ operand must be a property")
        .clone();
    app(app(include(sigma), f), g)
}

/// `⊤ ⇝ (λp.p) ⊆ (λp.p)`
pub fn top() -> Term {
    let p = v('p', Type::T);
    let id = Term::abs(p.clone(), Term::var(p));
    mk_include(id.clone(), id)
}

/// `⊥ ⇝ (λp.⊤) ⊆ (λp.p)`
pub fn bot() -> Term {
    let p = v('p', Type::T);
    let konst = Term::abs(p.clone(), top());
    let id = Term::abs(p.clone(), Term::var(p));
    mk_include(konst, id)
}

/// `∀_σ ⇝ λX^{σt}. ((λy^σ.⊤) ⊆ X)`
pub fn forall(sigma: Type) -> Term {
    let x = v('X', Type::property_of(sigma.clone()));
    let y = v('y', sigma);
    let triv = Term::abs(y, top());
    Term::abs(x.clone(), mk_include(triv, Term::var(x)))
}

/// `∀x^σ. body`
pub fn mk_forall(x: Variable, body: Term) -> Term {
    let sigma = x.ty.clone();
    app(forall(sigma), Term::abs(x, body))
}

/// `¬ ⇝ λp. ((λr^t.p) ⊆ (λr^t.⊥))`
pub fn neg() -> Term {
    let p = v('p', Type::T);
    let r = v('r', Type::T);
    Term::abs(
        p.clone(),
        mk_include(Term::abs(r.clone(), Term::var(p)), Term::abs(r, bot())),
    )
}

pub fn mk_neg(p: Term) -> Term {
    app(neg(), p)
}

/// `∃_σ ⇝ λX^{σt}. ¬∀y^σ. ¬Xy`
pub fn exists(sigma: Type) -> Term {
    let x = v('X', Type::property_of(sigma.clone()));
    let y = v('y', sigma);
    let body = mk_neg(mk_forall(
        y.clone(),
        mk_neg(app(Term::var(x.clone()), Term::var(y))),
    ));
    Term::abs(x, body)
}

pub fn mk_exists(x: Variable, body: Term) -> Term {
    let sigma = x.ty.clone();
    app(exists(sigma), Term::abs(x, body))
}

/// `→ ⇝ λpq. ((λr^t.p) ⊆ (λr^t.q))`
pub fn imp() -> Term {
    let p = v('p', Type::T);
    let q = v('q', Type::T);
    let r = v('r', Type::T);
    Term::abss(
        [p.clone(), q.clone()],
        mk_include(
            Term::abs(r.clone(), Term::var(p)),
            Term::abs(r, Term::var(q)),
        ),
    )
}

pub fn mk_imp(a: Term, b: Term) -> Term {
    app(app(imp(), a), b)
}

/// `∨ ⇝ λpq. (¬p → q)`
pub fn or_() -> Term {
    let p = v('p', Type::T);
    let q = v('q', Type::T);
    Term::abss(
        [p.clone(), q.clone()],
        mk_imp(mk_neg(Term::var(p)), Term::var(q)),
    )
}

pub fn mk_or(a: Term, b: Term) -> Term {
    app(app(or_(), a), b)
}

/// `∧ ⇝ λpq. ¬(¬p ∨ ¬q)`
pub fn and_() -> Term {
    let p = v('p', Type::T);
    let q = v('q', Type::T);
    Term::abss(
        [p.clone(), q.clone()],
        mk_neg(mk_or(mk_neg(Term::var(p)), mk_neg(Term::var(q)))),
    )
}

pub fn mk_and(a: Term, b: Term) -> Term {
    app(app(and_(), a), b)
}

/// `↔ ⇝ λpq. ((p→q) ∧ (q→p))`
pub fn iff() -> Term {
    let p = v('p', Type::T);
    let q = v('q', Type::T);
    Term::abss(
        [p.clone(), q.clone()],
        mk_and(
            mk_imp(Term::var(p.clone()), Term::var(q.clone())),
            mk_imp(Term::var(q), Term::var(p)),
        ),
    )
}

pub fn mk_iff(a: Term, b: Term) -> Term {
    app(app(iff(), a), b)
}

/// `=_σ ⇝ λxy^σ. ((λZ.Zx) ⊆ (λZ.Zy))`
pub fn eq(sigma: Type) -> Term {
    let x = v('x', sigma.clone());
    let y = v('y', sigma.clone());
    let z = v('Z', Type::property_of(sigma));
    let lx = Term::abs(z.clone(), app(Term::var(z.clone()), Term::var(x.clone())));
    let ly = Term::abs(z.clone(), app(Term::var(z), Term::var(y.clone())));
    Term::abss([x, y], mk_include(lx, ly))
}

/// `a =_σ b`, σ read off from `a`.
pub fn mk_eq(a: Term, b: Term) -> Term {
    let sigma = a.ty().clone();
    app(app(eq(sigma), a), b)
}

/// `≠_σ ⇝ λxy. ¬(x = y)`
pub fn neq(sigma: Type) -> Term {
    let x = v('x', sigma.clone());
    let y = v('y', sigma.clone());
    Term::abss(
        [x.clone(), y.clone()],
        mk_neg(app(app(eq(sigma), Term::var(x)), Term::var(y))),
    )
}

pub fn mk_neq(a: Term, b: Term) -> Term {
    let sigma = a.ty().clone();
    app(app(neq(sigma), a), b)
}

/// `□ ⇝ =⊤` — the partial application `(=_t ⊤)`, so `□P` is the identity
/// `⊤ = P` written postfix.
pub fn box_() -> Term {
    app(eq(Type::T), top())
}

pub fn mk_box(p: Term) -> Term {
    app(box_(), p)
}

/// `◇ ⇝ ≠⊥`
pub fn dia() -> Term {
    app(neq(Type::T), bot())
}

pub fn mk_dia(p: Term) -> Term {
    app(dia(), p)
}

/// `≡_{σ⃗t} ⇝ λXY^{σ⃗t}z⃗. (Xz⃗ ↔ Yz⃗)`
pub fn equiv(sigmas: &[Type]) -> Term {
    let pred_ty = sigmas
        .iter()
        .rev()
        .fold(Type::T, |acc, s| Type::fun(s.clone(), acc));
    let x = v('X', pred_ty.clone());
    let y = v('Y', pred_ty);
    let zs: Vec<Variable> = sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| Variable::new('z', i as u32, s.clone()))
        .collect();
    let apply_all = |h: &Variable| {
        zs.iter()
            .fold(Term::var(h.clone()), |acc, z| app(acc, Term::var(z.clone())))
    };
    let body = mk_iff(apply_all(&x), apply_all(&y));
    Term::abss([x, y].into_iter().chain(zs), body)
}

/// `∖_{σ⃗t} ⇝ λXY^{σ⃗t}z⃗. (Xz⃗ ∧ ¬Yz⃗)`
pub fn setminus(sigmas: &[Type]) -> Term {
    let pred_ty = sigmas
        .iter()
        .rev()
        .fold(Type::T, |acc, s| Type::fun(s.clone(), acc));
    let x = v('X', pred_ty.clone());
    let y = v('Y', pred_ty);
    let zs: Vec<Variable> = sigmas
        .iter()
        .enumerate()
        .map(|(i, s)| Variable::new('z', i as u32, s.clone()))
        .collect();
    let apply_all = |h: &Variable| {
        zs.iter()
            .fold(Term::var(h.clone()), |acc, z| app(acc, Term::var(z.clone())))
    };
    let body = mk_and(apply_all(&x), mk_neg(apply_all(&y)));
    Term::abss([x, y].into_iter().chain(zs), body)
}

/// `X ∖ Y` at vector length one.
pub fn mk_setminus1(x: Term, y: Term) -> Term {
    let sigma = x
        .ty()
        .domain()
        .expect("∖ operand must be a property")
        .clone();
    app(app(setminus(std::slice::from_ref(&sigma)), x), y)
}

/// `0_σ ⇝ λX^{σt}. ¬∃X`
pub fn zero(sigma: Type) -> Term {
    let x = v('X', Type::property_of(sigma.clone()));
    Term::abs(x.clone(), mk_neg(app(exists(sigma), Term::var(x))))
}

/// `1_σ ⇝ λX^{σt}. ∃y.(Xy ∧ ∀z.(Xz → y=z))`
pub fn one(sigma: Type) -> Term {
    let x = v('X', Type::property_of(sigma.clone()));
    let y = v('y', sigma.clone());
    let z = v('z', sigma.clone());
    let uniq = mk_forall(
        z.clone(),
        mk_imp(
            app(Term::var(x.clone()), Term::var(z.clone())),
            app(app(eq(sigma), Term::var(y.clone())), Term::var(z)),
        ),
    );
    let body = mk_exists(
        y.clone(),
        mk_and(app(Term::var(x.clone()), Term::var(y)), uniq),
    );
    Term::abs(x, body)
}

/// `+_σ ⇝ λmn^{⟨σt⟩t}X^{σt}. ∃Y.(Y⊆X ∧ mY ∧ n(X∖Y))`
pub fn plus(sigma: Type) -> Term {
    let num_ty = Type::fun(Type::property_of(sigma.clone()), Type::T);
    let m = v('m', num_ty.clone());
    let n = v('n', num_ty);
    let x = v('X', Type::property_of(sigma.clone()));
    let y = v('Y', Type::property_of(sigma.clone()));
    let body = mk_exists(
        y.clone(),
        mk_and(
            mk_include(Term::var(y.clone()), Term::var(x.clone())),
            mk_and(
                app(Term::var(m.clone()), Term::var(y.clone())),
                app(
                    Term::var(n.clone()),
                    mk_setminus1(Term::var(x.clone()), Term::var(y.clone())),
                ),
            ),
        ),
    );
    let _ = sigma;
    Term::abss([m, n, x], body)
}

/// `a +_σ b` for numeral-typed operands.
pub fn mk_plus(a: Term, b: Term) -> Term {
    let sigma = a
        .ty()
        .domain()
        .and_then(|p| p.domain())
        .expect("+ operand must be numeral-typed")
        .clone();
    app(app(plus(sigma), a), b)
}

/// `ℕ_σ ⇝ λn^{⟨σt⟩t}. ∀X.(X0 → (X ⊆ λy.X(y+1)) → Xn)`
pub fn nat(sigma: Type) -> Term {
    let num_ty = Type::fun(Type::property_of(sigma.clone()), Type::T);
    let n = v('n', num_ty.clone());
    let x = v('X', Type::property_of(num_ty.clone()));
    let y = v('y', num_ty);
    let closure = Term::abs(
        y.clone(),
        app(
            Term::var(x.clone()),
            mk_plus(Term::var(y), one(sigma.clone())),
        ),
    );
    let body = mk_forall(
        x.clone(),
        mk_imp(
            app(Term::var(x.clone()), zero(sigma)),
            mk_imp(
                mk_include(Term::var(x.clone()), closure),
                app(Term::var(x), Term::var(n.clone())),
            ),
        ),
    );
    Term::abs(n, body)
}

/// The surface numeral `k_σ`: `0`, `1`, or a right-associated sum
/// `1+(1+…+1)`.
pub fn surface_numeral(k: u32, sigma: Type) -> Term {
    match k {
        0 => zero(sigma),
        1 => one(sigma),
        _ => mk_plus(one(sigma.clone()), surface_numeral(k - 1, sigma)),
    }
}

/// `class_σ ⇝ λX^{σt}. ∀y.(Xy=⊤ ∨ Xy=⊥)` — a class is a {⊤,⊥}-valued
/// function.
pub fn class(sigma: Type) -> Term {
    let x = v('X', Type::property_of(sigma.clone()));
    let y = v('y', sigma);
    let xy = |x: &Variable, y: &Variable| app(Term::var(x.clone()), Term::var(y.clone()));
    let body = mk_forall(
        y.clone(),
        mk_or(
            app(app(eq(Type::T), xy(&x, &y)), top()),
            app(app(eq(Type::T), xy(&x, &y)), bot()),
        ),
    );
    Term::abs(x, body)
}

/// `∃!_σ` — unique existence, identified with `1_σ`.
pub fn exists_unique(sigma: Type) -> Term {
    one(sigma)
}

/// `ι_σ` as a term (requires an ι-level theory).
pub fn iota(sigma: Type) -> Term {
    Term::con(Constant::Iota(sigma))
}

/// `ε_σ` as a term (requires the ε-level theory).
pub fn epsilon(sigma: Type) -> Term {
    Term::con(Constant::Epsilon(sigma))
}

/// `(ι x^σ. P) ⇝ ι_σ λx^σ.P`
pub fn mk_iota_binder(x: Variable, body: Term) -> Term {
    let sigma = x.ty.clone();
    app(iota(sigma), Term::abs(x, body))
}

pub fn mk_epsilon_binder(x: Variable, body: Term) -> Term {
    let sigma = x.ty.clone();
    app(epsilon(sigma), Term::abs(x, body))
}

/// `@ ⇝ λp. ι q.((p→q=⊤) ∧ (¬p→q=⊥))` — maps every truth to ⊤ and every
/// falsehood to ⊥.
pub fn actuality() -> Term {
    let p = v('p', Type::T);
    let q = v('q', Type::T);
    let body = mk_and(
        mk_imp(
            Term::var(p.clone()),
            app(app(eq(Type::T), Term::var(q.clone())), top()),
        ),
        mk_imp(
            mk_neg(Term::var(p.clone())),
            app(app(eq(Type::T), Term::var(q.clone())), bot()),
        ),
    );
    Term::abs(p, mk_iota_binder(q, body))
}

/// `α ⇝ ∀p.(p ↔ @p)`
pub fn alpha_sentence() -> Term {
    let p = v('p', Type::T);
    mk_forall(
        p.clone(),
        mk_iff(Term::var(p.clone()), app(actuality(), Term::var(p))),
    )
}

/// Class abstraction `{x^σ : P}`: the class whose members are exactly the
/// instances of `λx.P`. Expands to
/// `ι λX.(class_σ X ∧ ∀z.(Xz ↔ (λx.P)z))`.
pub fn mk_class_abs(x: Variable, body: Term) -> Term {
    let sigma = x.ty.clone();
    let pred = Term::abs(x, body);
    let cap = fresh_variable('X', &Type::property_of(sigma.clone()), &[&pred], &[]);
    let z = fresh_variable('z', &sigma, &[&pred], &[cap.clone()]);
    let pointwise = mk_forall(
        z.clone(),
        mk_iff(
            app(Term::var(cap.clone()), Term::var(z.clone())),
            app(pred, Term::var(z)),
        ),
    );
    let spec = mk_and(app(class(sigma.clone()), Term::var(cap.clone())), pointwise);
    app(iota(Type::property_of(sigma)), Term::abs(cap, spec))
}

/// A type argument for [`instantiate_def`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeArg {
    Single(Type),
    Vector(Vec<Type>),
}

/// Parameter shape of a definition-table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    Single,
    Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixity {
    Atom,
    Prefix,
    Infix,
    Binder,
}

pub struct DefEntry {
    pub name: &'static str,
    pub ascii: &'static [&'static str],
    pub params: ParamKind,
    pub fixity: Fixity,
    pub guard: NotationGuard,
}

/// The entries of the definition table, in dependency order. `⊆` is a
/// primitive constant rather than an abbreviation, but it is listed so
/// the surface syntax can resolve it uniformly.
pub const TABLE: &[DefEntry] = &[
    DefEntry { name: "⊆", ascii: &["sub", "<="], params: ParamKind::Single, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "⊤", ascii: &["top"], params: ParamKind::None, fixity: Fixity::Atom, guard: NotationGuard::Core },
    DefEntry { name: "∀", ascii: &["forall"], params: ParamKind::Single, fixity: Fixity::Binder, guard: NotationGuard::Core },
    DefEntry { name: "⊥", ascii: &["bot"], params: ParamKind::None, fixity: Fixity::Atom, guard: NotationGuard::Core },
    DefEntry { name: "¬", ascii: &["not"], params: ParamKind::None, fixity: Fixity::Prefix, guard: NotationGuard::Core },
    DefEntry { name: "∃", ascii: &["exists"], params: ParamKind::Single, fixity: Fixity::Binder, guard: NotationGuard::Core },
    DefEntry { name: "→", ascii: &["->"], params: ParamKind::None, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "∨", ascii: &["or"], params: ParamKind::None, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "∧", ascii: &["and"], params: ParamKind::None, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "↔", ascii: &["<->"], params: ParamKind::None, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "≡", ascii: &["equiv"], params: ParamKind::Vector, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "=", ascii: &["="], params: ParamKind::Single, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "≠", ascii: &["!="], params: ParamKind::Single, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "□", ascii: &["box"], params: ParamKind::None, fixity: Fixity::Prefix, guard: NotationGuard::Core },
    DefEntry { name: "◇", ascii: &["dia"], params: ParamKind::None, fixity: Fixity::Prefix, guard: NotationGuard::Core },
    DefEntry { name: "0", ascii: &["0"], params: ParamKind::Single, fixity: Fixity::Atom, guard: NotationGuard::Core },
    DefEntry { name: "1", ascii: &["1"], params: ParamKind::Single, fixity: Fixity::Atom, guard: NotationGuard::Core },
    DefEntry { name: "∖", ascii: &["setminus"], params: ParamKind::Vector, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "+", ascii: &["+"], params: ParamKind::Single, fixity: Fixity::Infix, guard: NotationGuard::Core },
    DefEntry { name: "ℕ", ascii: &["Nat"], params: ParamKind::Single, fixity: Fixity::Prefix, guard: NotationGuard::Core },
    DefEntry { name: "class", ascii: &["class"], params: ParamKind::Single, fixity: Fixity::Prefix, guard: NotationGuard::Core },
    DefEntry { name: "∃!", ascii: &["exists!"], params: ParamKind::Single, fixity: Fixity::Binder, guard: NotationGuard::Core },
    DefEntry { name: "@", ascii: &["@"], params: ParamKind::None, fixity: Fixity::Prefix, guard: NotationGuard::Iota },
    DefEntry { name: "α", ascii: &["alpha"], params: ParamKind::None, fixity: Fixity::Atom, guard: NotationGuard::Iota },
    DefEntry { name: "†", ascii: &["dagger"], params: ParamKind::Single, fixity: Fixity::Atom, guard: NotationGuard::Iota },
    DefEntry { name: "ι", ascii: &["iota"], params: ParamKind::Single, fixity: Fixity::Binder, guard: NotationGuard::Iota },
    DefEntry { name: "ε", ascii: &["eps"], params: ParamKind::Single, fixity: Fixity::Binder, guard: NotationGuard::Epsilon },
];

pub fn lookup(name: &str) -> Option<&'static DefEntry> {
    TABLE
        .iter()
        .find(|e| e.name == name || e.ascii.contains(&name))
}

/// Instantiates a table entry at concrete types. Numerals beyond 1 are
/// handled by the parser (they sugar to sums), not here.
pub fn instantiate_def(
    name: &str,
    args: &[TypeArg],
    guard: NotationGuard,
) -> Result<Term, NotationError> {
    let entry = lookup(name).ok_or_else(|| NotationError::UnknownNotation(name.to_string()))?;
    let arity_err = || NotationError::ArityMismatch {
        name: entry.name.to_string(),
        expected: match entry.params {
            ParamKind::None => 0,
            _ => 1,
        },
        got: args.len(),
    };
    let term = match entry.params {
        ParamKind::None => {
            if !args.is_empty() {
                return Err(arity_err());
            }
            match entry.name {
                "⊤" => top(),
                "⊥" => bot(),
                "¬" => neg(),
                "→" => imp(),
                "∨" => or_(),
                "∧" => and_(),
                "↔" => iff(),
                "□" => box_(),
                "◇" => dia(),
                "@" => actuality(),
                "α" => alpha_sentence(),
                _ => unreachable!("nullary entry {}", entry.name),
            }
        }
        ParamKind::Single => {
            let [TypeArg::Single(sigma)] = args else {
                return Err(arity_err());
            };
            let sigma = sigma.clone();
            match entry.name {
                "⊆" => include(sigma),
                "∀" => forall(sigma),
                "∃" => exists(sigma),
                "=" => eq(sigma),
                "≠" => neq(sigma),
                "0" => zero(sigma),
                "1" => one(sigma),
                "+" => plus(sigma),
                "ℕ" => nat(sigma),
                "class" => class(sigma),
                "∃!" => exists_unique(sigma),
                "†" => crate::extensions::dagger(&sigma),
                "ι" => iota(sigma),
                "ε" => epsilon(sigma),
                _ => unreachable!("unary entry {}", entry.name),
            }
        }
        ParamKind::Vector => {
            let [TypeArg::Vector(sigmas)] = args else {
                return Err(arity_err());
            };
            match entry.name {
                "≡" => equiv(sigmas),
                "∖" => setminus(sigmas),
                _ => unreachable!("vector entry {}", entry.name),
            }
        }
    };
    check_guard(&term, guard)?;
    Ok(term)
}

/// Rejects terms mentioning `ι`/`ε` beyond what the guard level allows.
pub fn check_guard(term: &Term, guard: NotationGuard) -> Result<(), NotationError> {
    if guard < NotationGuard::Epsilon && term.uses_epsilon() {
        return Err(NotationError::GuardViolation {
            needs: NotationGuard::Epsilon,
            have: guard,
        });
    }
    if guard < NotationGuard::Iota && term.uses_iota() {
        return Err(NotationError::GuardViolation {
            needs: NotationGuard::Iota,
            have: guard,
        });
    }
    Ok(())
}

/// Replaces every `ι_σ` by its ε-definition
/// `ε λf.∀X.((∃!X → X(fX)) ∧ (¬∃!X → fX = †_σ))`, with `†_e` read as
/// `ε λx.⊥`. Off by default; `ι` stays primitive to keep descriptions
/// conceptually apart from Choice.
pub fn eliminate_iota(term: &Term) -> Term {
    use crate::term::TermKind;
    match term.kind() {
        TermKind::Con(Constant::Iota(sigma)) => iota_via_epsilon(sigma),
        TermKind::Con(_) | TermKind::Var(_) => term.clone(),
        TermKind::App(f, a) => app(eliminate_iota(f), eliminate_iota(a)),
        TermKind::Abs(x, b) => Term::abs(x.clone(), eliminate_iota(b)),
    }
}

fn dagger_via_epsilon(sigma: &Type) -> Term {
    match sigma {
        Type::E => {
            let x = v('x', Type::E);
            mk_epsilon_binder(x, bot())
        }
        Type::T => bot(),
        Type::Fun(d, c) => {
            let x = v('x', (**d).clone());
            Term::abs(x, dagger_via_epsilon(c))
        }
    }
}

fn iota_via_epsilon(sigma: &Type) -> Term {
    let f = v('f', Type::fun(Type::property_of(sigma.clone()), sigma.clone()));
    let x = v('X', Type::property_of(sigma.clone()));
    let fx = app(Term::var(f.clone()), Term::var(x.clone()));
    let uniq = app(exists_unique(sigma.clone()), Term::var(x.clone()));
    let body = mk_and(
        mk_imp(uniq.clone(), app(Term::var(x.clone()), fx.clone())),
        mk_imp(
            mk_neg(uniq),
            app(app(eq(sigma.clone()), fx), dagger_via_epsilon(sigma)),
        ),
    );
    mk_epsilon_binder(f, mk_forall(x, body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::beta_normal_form;

    #[test]
    fn expansions_are_closed_and_typed() {
        let ty_cases: Vec<Term> = vec![
            top(),
            bot(),
            neg(),
            imp(),
            or_(),
            and_(),
            iff(),
            box_(),
            dia(),
        ];
        for t in &ty_cases {
            assert!(t.is_closed(), "{t:?} has free variables");
            assert_eq!(t.recompute_type(), *t.ty());
        }
        assert_eq!(*top().ty(), Type::T);
        assert_eq!(neg().ty().to_string(), "tt");
        assert_eq!(imp().ty().to_string(), "ttt");
        assert_eq!(box_().ty().to_string(), "tt");
    }

    #[test]
    fn schema_types_across_indices() {
        for sigma in [Type::E, Type::T, Type::property_of(Type::E)] {
            let p = Type::property_of(sigma.clone());
            assert_eq!(*forall(sigma.clone()).ty(), Type::fun(p.clone(), Type::T));
            assert_eq!(*exists(sigma.clone()).ty(), Type::fun(p.clone(), Type::T));
            assert_eq!(
                *eq(sigma.clone()).ty(),
                Type::fun(sigma.clone(), Type::fun(sigma.clone(), Type::T))
            );
            let num = Type::fun(p.clone(), Type::T);
            assert_eq!(
                *plus(sigma.clone()).ty(),
                Type::fun(num.clone(), Type::fun(num.clone(), num.clone()))
            );
            assert_eq!(*nat(sigma.clone()).ty(), Type::fun(num, Type::T));
            assert!(one(sigma.clone()).is_closed());
            assert!(zero(sigma).is_closed());
        }
    }

    #[test]
    fn equiv_at_vector_e() {
        // ≡ at σ⃗ = (e): λXY^{et}z. (Xz ↔ Yz)
        let t = equiv(&[Type::E]);
        let et = Type::property_of(Type::E);
        assert_eq!(
            *t.ty(),
            Type::fun(et.clone(), Type::fun(et.clone(), et))
        );
        assert!(t.is_closed());
    }

    #[test]
    fn numerals() {
        let three = surface_numeral(3, Type::T);
        // right-associated 1+(1+1)
        let expected = mk_plus(one(Type::T), mk_plus(one(Type::T), one(Type::T)));
        assert!(three.alpha_eq(&expected));
        assert_eq!(three.ty().to_string(), "⟨tt⟩t");
        assert!(beta_normal_form(&three).is_ok());
    }

    #[test]
    fn guard_checks() {
        let err = instantiate_def("@", &[], NotationGuard::Core).unwrap_err();
        assert!(matches!(err, NotationError::GuardViolation { .. }));
        assert!(instantiate_def("@", &[], NotationGuard::Iota).is_ok());
        // †_t = ⊥ has no ι in it, so it is fine even at core level.
        assert!(instantiate_def("†", &[TypeArg::Single(Type::T)], NotationGuard::Core).is_ok());
        let err =
            instantiate_def("†", &[TypeArg::Single(Type::E)], NotationGuard::Core).unwrap_err();
        assert!(matches!(err, NotationError::GuardViolation { .. }));
        let err = instantiate_def("nope", &[], NotationGuard::Core).unwrap_err();
        assert!(matches!(err, NotationError::UnknownNotation(_)));
        let err = instantiate_def("∀", &[], NotationGuard::Core).unwrap_err();
        assert!(matches!(err, NotationError::ArityMismatch { .. }));
    }

    #[test]
    fn iota_elimination_is_epsilon_only() {
        let a = alpha_sentence();
        assert!(a.uses_iota());
        let e = eliminate_iota(&a);
        assert!(!e.uses_iota());
        assert!(e.uses_epsilon());
        assert_eq!(e.recompute_type(), Type::T);
    }
}

//! The term language: variables, constants, application and abstraction.
//!
//! Terms are immutable and intrinsically typed: every [`Term`] caches its
//! type at construction, and ill-typed applications are rejected when
//! built. Sharing is via `Arc`, so cloning a term or a context is cheap
//! and terms may be used freely from multiple threads.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::types::Type;

/// Errors raised while constructing or transforming terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    /// Application of a term of the first type to one of the second.
    #[error("ill-typed application: cannot apply a term of type {fun} to one of type {arg}")]
    IllTypedApplication { fun: Type, arg: Type },
    /// Substitution of a term whose type differs from the variable's.
    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch { expected: Type, got: Type },
}

/// A variable: a roman letter, a prime count and a type. Two variables are
/// identical iff all three components match.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub letter: char,
    pub primes: u32,
    pub ty: Type,
}

impl Variable {
    pub fn new(letter: char, primes: u32, ty: Type) -> Variable {
        debug_assert!(letter.is_ascii_alphabetic());
        Variable { letter, primes, ty }
    }

    pub fn fresh0(letter: char, ty: Type) -> Variable {
        Variable::new(letter, 0, ty)
    }

    /// The same letter and type with one more prime.
    pub fn primed(&self) -> Variable {
        Variable::new(self.letter, self.primes + 1, self.ty.clone())
    }

    /// Same letter and prime count, printed without its type.
    pub fn spelling(&self) -> String {
        let mut s = String::new();
        s.push(self.letter);
        for _ in 0..self.primes {
            s.push('\'');
        }
        s
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.spelling(), self.ty)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The primitive constants of the language.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Constant {
    /// `⊆_σ : ⟨⟨σt⟩⟨⟨σt⟩t⟩⟩`, pronounced "every"/"is included in".
    Include(Type),
    /// `ι_σ : ⟨⟨σt⟩σ⟩`, the description function (LF_ι and above).
    Iota(Type),
    /// `ε_σ : ⟨⟨σt⟩σ⟩`, the choice function (LF_ε).
    Epsilon(Type),
}

impl Constant {
    pub fn ty(&self) -> Type {
        match self {
            Constant::Include(s) => {
                let p = Type::property_of(s.clone());
                Type::fun(p.clone(), Type::fun(p, Type::T))
            }
            Constant::Iota(s) | Constant::Epsilon(s) => {
                Type::fun(Type::property_of(s.clone()), s.clone())
            }
        }
    }

    pub fn index(&self) -> &Type {
        match self {
            Constant::Include(s) | Constant::Iota(s) | Constant::Epsilon(s) => s,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Include(s) => write!(f, "⊆_{s}"),
            Constant::Iota(s) => write!(f, "ι_{s}"),
            Constant::Epsilon(s) => write!(f, "ε_{s}"),
        }
    }
}

impl fmt::Debug for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(PartialEq, Eq)]
pub enum TermKind {
    Var(Variable),
    Con(Constant),
    App(Term, Term),
    Abs(Variable, Term),
}

struct TermNode {
    kind: TermKind,
    ty: Type,
}

/// An intrinsically typed term. Structural equality (`==`) distinguishes
/// bound-variable names; use [`Term::alpha_eq`] wherever the logic calls
/// for identity of formulae.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Term {}

impl Term {
    pub fn var(v: Variable) -> Term {
        let ty = v.ty.clone();
        Term(Arc::new(TermNode {
            kind: TermKind::Var(v),
            ty,
        }))
    }

    pub fn con(c: Constant) -> Term {
        let ty = c.ty();
        Term(Arc::new(TermNode {
            kind: TermKind::Con(c),
            ty,
        }))
    }

    /// Function application; fails unless `fun` has type `⟨στ⟩` and `arg`
    /// has type `σ`.
    pub fn app(fun: Term, arg: Term) -> Result<Term, TermError> {
        match fun.ty() {
            Type::Fun(d, c) if **d == *arg.ty() => {
                let ty = (**c).clone();
                Ok(Term(Arc::new(TermNode {
                    kind: TermKind::App(fun, arg),
                    ty,
                })))
            }
            _ => Err(TermError::IllTypedApplication {
                fun: fun.ty().clone(),
                arg: arg.ty().clone(),
            }),
        }
    }

    /// Iterated application `f a₁ … aₙ`.
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, TermError> {
        let mut t = fun;
        for a in args {
            t = Term::app(t, a)?;
        }
        Ok(t)
    }

    pub fn abs(bound: Variable, body: Term) -> Term {
        let ty = Type::fun(bound.ty.clone(), body.ty().clone());
        Term(Arc::new(TermNode {
            kind: TermKind::Abs(bound, body),
            ty,
        }))
    }

    /// Iterated abstraction `λx₁…xₙ. body`.
    pub fn abss(bound: impl IntoIterator<Item = Variable>, body: Term) -> Term {
        let vars: Vec<_> = bound.into_iter().collect();
        let mut t = body;
        for v in vars.into_iter().rev() {
            t = Term::abs(v, t);
        }
        t
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// The cached type assigned by the formation rules.
    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    pub fn is_formula(&self) -> bool {
        *self.ty() == Type::T
    }

    /// Recomputes the type from the structure, bypassing the cache.
    /// Used by tests to witness the cache invariant.
    pub fn recompute_type(&self) -> Type {
        match self.kind() {
            TermKind::Var(v) => v.ty.clone(),
            TermKind::Con(c) => c.ty(),
            TermKind::App(f, _) => f
                .recompute_type()
                .codomain()
                .expect("application of non-function")
                .clone(),
            TermKind::Abs(v, b) => Type::fun(v.ty.clone(), b.recompute_type()),
        }
    }

    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) | TermKind::Con(_) => 1,
            TermKind::App(f, a) => 1 + f.size() + a.size(),
            TermKind::Abs(_, b) => 1 + b.size(),
        }
    }

    /// The set of free variables.
    pub fn free_vars(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Variable>, out: &mut Vec<Variable>) {
        match self.kind() {
            TermKind::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            TermKind::Con(_) => {}
            TermKind::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            TermKind::Abs(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, v: &Variable) -> bool {
        match self.kind() {
            TermKind::Var(w) => w == v,
            TermKind::Con(_) => false,
            TermKind::App(f, a) => f.is_free(v) || a.is_free(v),
            TermKind::Abs(w, b) => w != v && b.is_free(v),
        }
    }

    /// A term with no free variables is an expression; a closed formula is
    /// a sentence.
    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// α-equivalence: equality up to consistent renaming of bound
    /// variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn go(a: &Term, b: &Term, la: &mut Vec<Variable>, lb: &mut Vec<Variable>) -> bool {
            if a.ty() != b.ty() {
                return false;
            }
            match (a.kind(), b.kind()) {
                (TermKind::Var(x), TermKind::Var(y)) => {
                    let ia = la.iter().rposition(|v| v == x);
                    let ib = lb.iter().rposition(|v| v == y);
                    match (ia, ib) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (TermKind::Con(c), TermKind::Con(d)) => c == d,
                (TermKind::App(f, x), TermKind::App(g, y)) => {
                    go(f, g, la, lb) && go(x, y, la, lb)
                }
                (TermKind::Abs(x, s), TermKind::Abs(y, u)) => {
                    if x.ty != y.ty {
                        return false;
                    }
                    la.push(x.clone());
                    lb.push(y.clone());
                    let r = go(s, u, la, lb);
                    la.pop();
                    lb.pop();
                    r
                }
                _ => false,
            }
        }
        self == other || go(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Capture-avoiding substitution `[B/x]A`. Bound variables that would
    /// capture a free variable of `replacement` are renamed by priming to
    /// the least prime count avoiding every variable in scope.
    pub fn substitute(&self, x: &Variable, replacement: &Term) -> Result<Term, TermError> {
        if replacement.ty() != &x.ty {
            return Err(TermError::TypeMismatch {
                expected: x.ty.clone(),
                got: replacement.ty().clone(),
            });
        }
        Ok(self.subst_unchecked(x, replacement))
    }

    fn subst_unchecked(&self, x: &Variable, n: &Term) -> Term {
        match self.kind() {
            TermKind::Var(v) => {
                if v == x {
                    n.clone()
                } else {
                    self.clone()
                }
            }
            TermKind::Con(_) => self.clone(),
            TermKind::App(f, a) => {
                if !self.is_free(x) {
                    return self.clone();
                }
                let nf = f.subst_unchecked(x, n);
                let na = a.subst_unchecked(x, n);
                Term::app(nf, na).expect("substitution preserves typing")
            }
            TermKind::Abs(v, b) => {
                if v == x || !self.is_free(x) {
                    self.clone()
                } else if n.is_free(v) {
                    // Rename the binder before descending.
                    let mut fresh = v.primed();
                    while n.is_free(&fresh) || b.is_free(&fresh) || fresh == *x {
                        fresh = fresh.primed();
                    }
                    let renamed = b.subst_unchecked(v, &Term::var(fresh.clone()));
                    Term::abs(fresh, renamed.subst_unchecked(x, n))
                } else {
                    Term::abs(v.clone(), b.subst_unchecked(x, n))
                }
            }
        }
    }

    /// Replaces every free occurrence of `hole` by `filler` without any
    /// renaming — capture is deliberate. Used by the Classicism
    /// substitution rule and the substitution-context tests.
    pub fn graft(&self, hole: &Variable, filler: &Term) -> Result<Term, TermError> {
        if filler.ty() != &hole.ty {
            return Err(TermError::TypeMismatch {
                expected: hole.ty.clone(),
                got: filler.ty().clone(),
            });
        }
        Ok(self.graft_unchecked(hole, filler))
    }

    fn graft_unchecked(&self, hole: &Variable, filler: &Term) -> Term {
        match self.kind() {
            TermKind::Var(v) => {
                if v == hole {
                    filler.clone()
                } else {
                    self.clone()
                }
            }
            TermKind::Con(_) => self.clone(),
            TermKind::App(f, a) => Term::app(
                f.graft_unchecked(hole, filler),
                a.graft_unchecked(hole, filler),
            )
            .expect("grafting preserves typing"),
            TermKind::Abs(v, b) => {
                if v == hole {
                    self.clone()
                } else {
                    Term::abs(v.clone(), b.graft_unchecked(hole, filler))
                }
            }
        }
    }

    /// True if the term mentions `ι` (resp. `ε`) anywhere; used to gate
    /// terms on the active theory.
    pub fn uses_iota(&self) -> bool {
        match self.kind() {
            TermKind::Con(Constant::Iota(_)) => true,
            TermKind::Con(_) | TermKind::Var(_) => false,
            TermKind::App(f, a) => f.uses_iota() || a.uses_iota(),
            TermKind::Abs(_, b) => b.uses_iota(),
        }
    }

    pub fn uses_epsilon(&self) -> bool {
        match self.kind() {
            TermKind::Con(Constant::Epsilon(_)) => true,
            TermKind::Con(_) | TermKind::Var(_) => false,
            TermKind::App(f, a) => f.uses_epsilon() || a.uses_epsilon(),
            TermKind::Abs(_, b) => b.uses_epsilon(),
        }
    }
}

/// Picks a variable with the given letter and type whose spelling is fresh
/// for every term in `avoid` (and distinct from every variable in
/// `avoid_vars`), by priming. Freshness is judged on spelling alone so the
/// result cannot be confused with any variable of another type either.
pub fn fresh_variable(
    letter: char,
    ty: &Type,
    avoid: &[&Term],
    avoid_vars: &[Variable],
) -> Variable {
    let clashes = |v: &Variable| {
        avoid
            .iter()
            .flat_map(|t| t.free_vars())
            .chain(avoid_vars.iter().cloned())
            .any(|w| w.letter == v.letter && w.primes == v.primes)
    };
    let mut v = Variable::fresh0(letter, ty.clone());
    while clashes(&v) {
        v = v.primed();
    }
    v
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Var(v) => write!(f, "{v}"),
            TermKind::Con(c) => write!(f, "{c}"),
            TermKind::App(g, a) => write!(f, "({g:?} {a:?})"),
            TermKind::Abs(v, b) => write!(f, "(λ{v}. {b:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(letter: char, ty: Type) -> Variable {
        Variable::fresh0(letter, ty)
    }

    #[test]
    fn include_constant_type() {
        let c = Constant::Include(Type::E);
        assert_eq!(c.ty().full_notation(), "⟨⟨et⟩⟨⟨et⟩t⟩⟩");
        let i = Constant::Iota(Type::E);
        assert_eq!(i.ty().full_notation(), "⟨⟨et⟩e⟩");
    }

    #[test]
    fn application_typing() {
        let x = v('x', Type::E);
        let id = Term::abs(x.clone(), Term::var(x.clone()));
        assert_eq!(id.ty().to_string(), "ee");
        let app = Term::app(id.clone(), Term::var(v('y', Type::E))).unwrap();
        assert_eq!(*app.ty(), Type::E);
        let err = Term::app(id, Term::var(v('p', Type::T))).unwrap_err();
        assert!(matches!(err, TermError::IllTypedApplication { .. }));
    }

    #[test]
    fn free_vars_abs_removes_bound() {
        let x = v('x', Type::E);
        let f = v('f', Type::fun(Type::E, Type::E));
        assert_eq!(Term::var(x.clone()).free_vars(), vec![x.clone()]);
        assert!(Term::abs(x.clone(), Term::var(x.clone())).free_vars().is_empty());
        let t = Term::app(Term::var(f.clone()), Term::var(x.clone())).unwrap();
        let fv = t.free_vars();
        assert!(fv.contains(&f) && fv.contains(&x) && fv.len() == 2);
    }

    #[test]
    fn alpha_cases() {
        let x = v('x', Type::E);
        let y = v('y', Type::E);
        let xt = v('x', Type::T);
        let lx = Term::abs(x.clone(), Term::var(x.clone()));
        let ly = Term::abs(y.clone(), Term::var(y.clone()));
        let lt = Term::abs(xt.clone(), Term::var(xt));
        assert!(lx.alpha_eq(&ly));
        assert!(!lx.alpha_eq(&lt)); // types differ
        // free vs bound: λx.y vs λy.y
        let lfree = Term::abs(x.clone(), Term::var(y.clone()));
        assert!(!lfree.alpha_eq(&ly));
    }

    #[test]
    fn substitution_basics() {
        let x = v('x', Type::E);
        let y = v('y', Type::E);
        // [y/x]x = y
        let s = Term::var(x.clone()).substitute(&x, &Term::var(y.clone())).unwrap();
        assert_eq!(s, Term::var(y.clone()));
        // bound occurrence untouched: [y/x](λx.x) = λx.x
        let lx = Term::abs(x.clone(), Term::var(x.clone()));
        assert_eq!(lx.substitute(&x, &Term::var(y.clone())).unwrap(), lx);
        // capture forces rename: [y/x](λy.x) = λy'.y
        let lyx = Term::abs(y.clone(), Term::var(x.clone()));
        let out = lyx.substitute(&x, &Term::var(y.clone())).unwrap();
        let expected = Term::abs(y.primed(), Term::var(y.clone()));
        assert_eq!(out, expected);
        // type mismatch rejected
        let p = v('p', Type::T);
        let err = Term::var(x.clone()).substitute(&x, &Term::var(p)).unwrap_err();
        assert!(matches!(err, TermError::TypeMismatch { .. }));
    }

    #[test]
    fn graft_permits_capture() {
        let x = v('x', Type::E);
        let h = v('h', Type::T);
        let p = v('p', Type::T);
        // λx. h with h := (p applied to nothing, containing x? use x=x-ish)
        // filler mentions x, which the abstraction captures.
        let ctx = Term::abs(x.clone(), Term::var(h.clone()));
        let filler = Term::app(
            Term::abs(x.clone(), Term::var(p.clone())),
            Term::var(x.clone()),
        )
        .unwrap();
        let grafted = ctx.graft(&h, &filler).unwrap();
        // the free x of the filler is now bound: no free x remains
        assert!(!grafted.is_free(&x));
    }
}

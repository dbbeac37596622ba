//! Pretty-printing with minimal parentheses and abbreviation folding.
//!
//! The printer renders a ladder of candidates (fewest decorations first)
//! and returns the first one that re-parses and re-elaborates to an
//! α-equal term, so printed output is always faithful. Folding recognises
//! the verbatim expansion of each defined notation; β-reduced terms print
//! in their `⊆`/`λ` form.

use crate::defs;
use crate::term::{Constant, Term, TermKind, Variable};
use crate::types::Type;

use super::elaborate::{elaborate, ElaborationDefaults};
use super::parse::parse;
use super::NotationGuard;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecorationMode {
    /// No type decorations at all.
    None,
    /// Decorate binder variables only.
    Binders,
    /// Decorate every variable occurrence.
    Full,
}

#[derive(Debug, Clone)]
pub struct PrintOpts {
    /// Fixed decoration verbosity, or `None` to pick the least that
    /// round-trips.
    pub decorations: Option<DecorationMode>,
    /// Print `_σ` subscripts on folded notation (`=_e`, `∀_e`, …).
    pub subscript_ops: bool,
    /// Parenthesise every application, infix and binder.
    pub full_parens: bool,
    /// Fold definitional expansions back to their names.
    pub fold: bool,
    /// ASCII aliases instead of Unicode symbols.
    pub ascii: bool,
}

impl Default for PrintOpts {
    fn default() -> Self {
        PrintOpts {
            decorations: None,
            subscript_ops: false,
            full_parens: false,
            fold: true,
            ascii: false,
        }
    }
}

/// Symbol table for the two output alphabets.
#[derive(Debug, Clone, Copy)]
pub struct Symbols {
    pub ascii: bool,
}

impl Symbols {
    fn name(&self, unicode: &str) -> &'static str {
        let table: &[(&str, &str, &str)] = &[
            ("λ", "λ", "\\"),
            ("¬", "¬", "not "),
            ("∀", "∀", "forall "),
            ("∃", "∃", "exists "),
            ("∃!", "∃!", "exists! "),
            ("ι", "ι ", "iota "),
            ("ε", "ε ", "eps "),
            ("□", "□", "box "),
            ("◇", "◇", "dia "),
            ("⊤", "⊤", "top"),
            ("⊥", "⊥", "bot"),
            ("α", "α", "alpha"),
            ("→", "→", "->"),
            ("∧", "∧", "and"),
            ("∨", "∨", "or"),
            ("↔", "↔", "<->"),
            ("=", "=", "="),
            ("≠", "≠", "!="),
            ("⊆", "⊆", "sub"),
            ("≡", "≡", "equiv"),
            ("∖", "∖", "setminus"),
            ("+", "+", "+"),
            ("ℕ", "ℕ", "Nat"),
            ("class", "class", "class"),
            ("@", "@", "@"),
            ("0", "0", "0"),
            ("1", "1", "1"),
        ];
        for (key, uni, asc) in table {
            if *key == unicode {
                return if self.ascii { asc } else { uni };
            }
        }
        unreachable!("unmapped symbol {unicode}")
    }

    fn ty(&self, t: &Type) -> String {
        if self.ascii {
            t.minimal_notation_ascii()
        } else {
            t.to_string()
        }
    }
}

#[derive(Debug, Clone)]
enum Sub {
    None,
    Single(Type),
    Vector(Vec<Type>),
}

/// One structural layer of a term, as the printer sees it.
enum View<'t> {
    /// A standalone notation name (`⊤`, `∀` …), possibly subscripted;
    /// `section` marks infix names that need `(…)` in prefix position.
    Atom { name: &'static str, sub: Sub, section: bool },
    Prefix { name: &'static str, arg: &'t Term },
    Infix {
        name: &'static str,
        sub: Sub,
        lhs: &'t Term,
        rhs: &'t Term,
        level: u8,
        chain: bool,
    },
    Quant { name: &'static str, var: Variable, body: &'t Term },
    ClassAbs { var: Variable, body: &'t Term },
    Lam { var: Variable, body: &'t Term },
    App { fun: &'t Term, arg: &'t Term },
    Var(&'t Variable),
}

fn peel_property_chain(ty: &Type) -> Option<Vec<Type>> {
    let mut sigmas = Vec::new();
    let mut cur = ty;
    loop {
        match cur {
            Type::T => {
                return if sigmas.is_empty() { None } else { Some(sigmas) };
            }
            Type::Fun(d, c) => {
                sigmas.push((**d).clone());
                cur = c;
            }
            Type::E => return None,
        }
    }
}

/// If `t` is α-equal to a defined constant's expansion, name it.
fn atom_fold(t: &Term) -> Option<(&'static str, Sub, bool)> {
    let size = t.size();
    let check = |candidate: Term, name: &'static str, sub: Sub, section: bool| {
        if candidate.size() == size && candidate.alpha_eq(t) {
            Some((name, sub, section))
        } else {
            None
        }
    };
    match t.ty() {
        Type::T => check(defs::top(), "⊤", Sub::None, false)
            .or_else(|| check(defs::bot(), "⊥", Sub::None, false))
            .or_else(|| {
                if t.uses_iota() {
                    check(defs::alpha_sentence(), "α", Sub::None, false)
                } else {
                    None
                }
            }),
        ty => {
            // tt-shaped operators
            if *ty == Type::fun(Type::T, Type::T) {
                return check(defs::neg(), "¬", Sub::None, false)
                    .or_else(|| check(defs::box_(), "□", Sub::None, false))
                    .or_else(|| check(defs::dia(), "◇", Sub::None, false))
                    .or_else(|| {
                        if t.uses_iota() {
                            check(defs::actuality(), "@", Sub::None, false)
                        } else {
                            None
                        }
                    });
            }
            if *ty == Type::fun(Type::T, Type::fun(Type::T, Type::T)) {
                if let Some(hit) = check(defs::imp(), "→", Sub::None, true)
                    .or_else(|| check(defs::or_(), "∨", Sub::None, true))
                    .or_else(|| check(defs::and_(), "∧", Sub::None, true))
                    .or_else(|| check(defs::iff(), "↔", Sub::None, true))
                {
                    return Some(hit);
                }
            }
            // ⟨⟨σt⟩t⟩: quantifiers, numerals 0/1, class
            if let Type::Fun(dom, cod) = ty {
                if **cod == Type::T {
                    if let Type::Fun(sigma, t1) = &**dom {
                        if **t1 == Type::T {
                            let s = (**sigma).clone();
                            if let Some(hit) = check(defs::forall(s.clone()), "∀", Sub::Single(s.clone()), false)
                                .or_else(|| check(defs::exists(s.clone()), "∃", Sub::Single(s.clone()), false))
                                .or_else(|| check(defs::zero(s.clone()), "0", Sub::Single(s.clone()), false))
                                .or_else(|| check(defs::one(s.clone()), "1", Sub::Single(s.clone()), false))
                                .or_else(|| check(defs::class(s.clone()), "class", Sub::Single(s.clone()), false))
                            {
                                return Some(hit);
                            }
                        }
                    }
                }
            }
            // σ → σ → t: equality and its negation
            if let (Some(d), Some(Type::Fun(d2, c2))) = (ty.domain(), ty.codomain()) {
                if *d == **d2 && **c2 == Type::T {
                    let s = d.clone();
                    if let Some(hit) = check(defs::eq(s.clone()), "=", Sub::Single(s.clone()), true)
                        .or_else(|| check(defs::neq(s.clone()), "≠", Sub::Single(s.clone()), true))
                    {
                        return Some(hit);
                    }
                }
            }
            // numeral sum / ℕ
            if let Some(Type::Fun(prop, t1)) = ty.domain() {
                if let (Some(s), Type::T) = (prop.domain(), &**t1) {
                    let num = Type::fun(Type::property_of(s.clone()), Type::T);
                    if *ty == Type::fun(num.clone(), Type::fun(num.clone(), num.clone())) {
                        if let Some(hit) =
                            check(defs::plus(s.clone()), "+", Sub::Single(s.clone()), true)
                        {
                            return Some(hit);
                        }
                    }
                    if *ty == Type::fun(num, Type::T) {
                        if let Some(hit) =
                            check(defs::nat(s.clone()), "ℕ", Sub::Single(s.clone()), false)
                        {
                            return Some(hit);
                        }
                    }
                }
            }
            // ≡ / ∖ at some index vector
            if let (Some(p), Some(rest)) = (ty.domain(), ty.codomain()) {
                if *rest == Type::fun(p.clone(), p.clone()) {
                    if let Some(sigmas) = peel_property_chain(p) {
                        if let Some(hit) = check(
                            defs::equiv(&sigmas),
                            "≡",
                            Sub::Vector(sigmas.clone()),
                            true,
                        )
                        .or_else(|| {
                            check(defs::setminus(&sigmas), "∖", Sub::Vector(sigmas.clone()), true)
                        }) {
                            return Some(hit);
                        }
                    }
                }
            }
            None
        }
    }
}

/// Matches `ι λX.(class_σ X ∧ ∀z.(Xz ↔ (λx.P)z))` and recovers `{x : P}`.
fn class_abs_fold(t: &Term) -> Option<(Variable, &Term)> {
    let TermKind::App(iota_part, spec_abs) = t.kind() else {
        return None;
    };
    let TermKind::Con(Constant::Iota(_)) = iota_part.kind() else {
        return None;
    };
    let TermKind::Abs(_, spec) = spec_abs.kind() else {
        return None;
    };
    // second conjunct → ∀z.(Xz ↔ (λx.P)z)
    let TermKind::App(_, pointwise) = spec.kind() else {
        return None;
    };
    let TermKind::App(_, pw_abs) = pointwise.kind() else {
        return None;
    };
    let TermKind::Abs(_, iff_body) = pw_abs.kind() else {
        return None;
    };
    let TermKind::App(_, rhs) = iff_body.kind() else {
        return None;
    };
    let TermKind::App(pred, _) = rhs.kind() else {
        return None;
    };
    let TermKind::Abs(x, p) = pred.kind() else {
        return None;
    };
    let rebuilt = defs::mk_class_abs(x.clone(), p.clone());
    if rebuilt.alpha_eq(t) {
        Some((x.clone(), p))
    } else {
        None
    }
}

fn view<'t>(t: &'t Term, fold: bool) -> View<'t> {
    if fold {
        if let Some((name, sub, section)) = atom_fold(t) {
            return View::Atom { name, sub, section };
        }
        if t.uses_iota() {
            if let Some((var, body)) = class_abs_fold(t) {
                return View::ClassAbs { var, body };
            }
        }
        // binary operator applications
        if let TermKind::App(fg, rhs) = t.kind() {
            if let TermKind::App(c, lhs) = fg.kind() {
                if let Some((name, sub, _)) = atom_fold(c) {
                    // □/◇ are partial `=`/`≠` applications and fold first:
                    // ⊤ = B prints as □B only when lhs is ⊤ itself.
                    match name {
                        "=" if lhs.alpha_eq(&defs::top()) && *lhs.ty() == Type::T => {
                            return View::Prefix { name: "□", arg: rhs }
                        }
                        "≠" if lhs.alpha_eq(&defs::bot()) && *lhs.ty() == Type::T => {
                            return View::Prefix { name: "◇", arg: rhs }
                        }
                        "→" => {
                            return View::Infix { name, sub, lhs, rhs, level: 2, chain: false }
                        }
                        "∨" => {
                            return View::Infix { name, sub, lhs, rhs, level: 3, chain: true }
                        }
                        "∧" => {
                            return View::Infix { name, sub, lhs, rhs, level: 4, chain: true }
                        }
                        "↔" => {
                            return View::Infix { name, sub, lhs, rhs, level: 1, chain: false }
                        }
                        "=" | "≠" | "≡" => {
                            return View::Infix { name, sub, lhs, rhs, level: 5, chain: false }
                        }
                        "+" => {
                            return View::Infix { name, sub, lhs, rhs, level: 6, chain: true }
                        }
                        "∖" => {
                            return View::Infix { name, sub, lhs, rhs, level: 6, chain: false }
                        }
                        _ => {}
                    }
                }
            }
        }
        // prefix operators and binder-style folds
        if let TermKind::App(c, m) = t.kind() {
            match c.kind() {
                TermKind::Con(Constant::Iota(_)) => {
                    if let TermKind::Abs(x, body) = m.kind() {
                        return View::Quant { name: "ι", var: x.clone(), body };
                    }
                }
                TermKind::Con(Constant::Epsilon(_)) => {
                    if let TermKind::Abs(x, body) = m.kind() {
                        return View::Quant { name: "ε", var: x.clone(), body };
                    }
                }
                _ => {}
            }
            if let Some((name, _sub, _)) = atom_fold(c) {
                match name {
                    "¬" | "@" => return View::Prefix { name, arg: m },
                    "□" | "◇" => return View::Prefix { name, arg: m },
                    "∀" | "∃" => {
                        if let TermKind::Abs(x, body) = m.kind() {
                            return View::Quant { name, var: x.clone(), body };
                        }
                    }
                    "1" => {
                        if let TermKind::Abs(x, body) = m.kind() {
                            return View::Quant { name: "∃!", var: x.clone(), body };
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    // `F ⊆ G` is primitive syntax, printed infix whether or not defined
    // notation is being folded.
    if let TermKind::App(fg, rhs) = t.kind() {
        if let TermKind::App(c, lhs) = fg.kind() {
            if let TermKind::Con(Constant::Include(s)) = c.kind() {
                return View::Infix {
                    name: "⊆",
                    sub: Sub::Single(s.clone()),
                    lhs,
                    rhs,
                    level: 5,
                    chain: false,
                };
            }
        }
    }
    match t.kind() {
        TermKind::Var(v) => View::Var(v),
        TermKind::Con(c) => {
            let (name, sub, section) = match c {
                Constant::Include(s) => ("⊆", Sub::Single(s.clone()), true),
                Constant::Iota(s) => ("ι", Sub::Single(s.clone()), false),
                Constant::Epsilon(s) => ("ε", Sub::Single(s.clone()), false),
            };
            View::Atom { name, sub, section }
        }
        TermKind::App(fun, arg) => View::App { fun, arg },
        TermKind::Abs(v, body) => View::Lam { var: v.clone(), body },
    }
}

struct Renderer {
    deco: DecorationMode,
    subscript_ops: bool,
    subscript_atoms: bool,
    full_parens: bool,
    fold: bool,
    flat_apps: bool,
    sym: Symbols,
}

impl Renderer {
    fn subscript(&self, sub: &Sub, atom: bool, force: bool) -> String {
        let enabled = if atom {
            self.subscript_atoms
        } else {
            self.subscript_ops
        };
        if !(enabled || force) {
            return String::new();
        }
        match sub {
            Sub::None => String::new(),
            Sub::Single(t) => {
                let ty = self.sym.ty(t);
                if t.is_base() {
                    format!("_{ty}")
                } else {
                    format!("_{{{ty}}}")
                }
            }
            Sub::Vector(ts) => {
                let inner: Vec<String> = ts.iter().map(|t| self.sym.ty(t)).collect();
                format!("_{{{}}}", inner.join(","))
            }
        }
    }

    fn var_occurrence(&self, v: &Variable) -> String {
        match self.deco {
            DecorationMode::Full => format!("{}^{}", v.spelling(), self.sym.ty(&v.ty)),
            _ => v.spelling(),
        }
    }

    fn var_binder(&self, v: &Variable) -> String {
        match self.deco {
            DecorationMode::None => v.spelling(),
            _ => format!("{}^{}", v.spelling(), self.sym.ty(&v.ty)),
        }
    }

    fn wrap(&self, need: bool, s: String) -> String {
        if need {
            format!("({s})")
        } else {
            s
        }
    }

    fn binder_symbol(&self, name: &str) -> String {
        let s = self.sym.name(if name == "λ" { "λ" } else { name });
        // Unicode binders sit flush against the variable; ASCII words
        // carry their own trailing space.
        s.to_string()
    }

    fn render(&self, t: &Term, min: u8) -> String {
        match view(t, self.fold) {
            View::Atom { name, sub, section } => {
                let body = format!(
                    "{}{}",
                    self.sym.name(name).trim_end(),
                    self.subscript(&sub, !section, section || always_subscripted(name))
                );
                if section {
                    format!("({body})")
                } else {
                    body
                }
            }
            View::Var(v) => self.var_occurrence(v),
            View::Prefix { name, arg } => {
                let s = format!("{}{}", self.sym.name(name), self.render(arg, 8));
                self.wrap(self.full_parens || min > 7, s)
            }
            View::Infix { name, sub, lhs, rhs, level, chain } => {
                let lmin = level + 1;
                let rmin = if chain && !self.full_parens { level } else { level + 1 };
                let s = format!(
                    "{} {}{} {}",
                    self.render(lhs, lmin),
                    self.sym.name(name),
                    self.subscript(&sub, false, false),
                    self.render(rhs, rmin)
                );
                self.wrap(self.full_parens || min > level, s)
            }
            View::Quant { name, var, body } => {
                // collect a run of identical binders
                let mut vars = vec![var];
                let mut tail = body;
                loop {
                    match view(tail, self.fold) {
                        View::Quant { name: n2, var: v2, body: b2 } if n2 == name => {
                            vars.push(v2);
                            tail = b2;
                        }
                        _ => break,
                    }
                }
                let shown: Vec<String> = vars.iter().map(|v| self.var_binder(v)).collect();
                let s = format!(
                    "{}{}. {}",
                    self.binder_symbol(name),
                    shown.join(" "),
                    self.render(tail, 0)
                );
                self.wrap(self.full_parens || min > 0, s)
            }
            View::Lam { var, body } => {
                let mut vars = vec![var];
                let mut tail = body;
                loop {
                    match view(tail, self.fold) {
                        View::Lam { var: v2, body: b2 } => {
                            vars.push(v2);
                            tail = b2;
                        }
                        _ => break,
                    }
                }
                let shown: Vec<String> = vars.iter().map(|v| self.var_binder(v)).collect();
                let s = format!(
                    "{}{}. {}",
                    self.sym.name("λ"),
                    shown.join(" "),
                    self.render(tail, 0)
                );
                self.wrap(self.full_parens || min > 0, s)
            }
            View::ClassAbs { var, body } => {
                format!("{{{} : {}}}", self.var_binder(&var), self.render(body, 0))
            }
            View::App { fun, arg } => {
                let amin = if self.flat_apps && !self.full_parens { 7 } else { 8 };
                let s = format!("{} {}", self.render(fun, 7), self.render(arg, amin));
                self.wrap(self.full_parens || min > 7, s)
            }
        }
    }
}

/// Names whose bare occurrence cannot be re-elaborated without an index.
fn always_subscripted(name: &str) -> bool {
    matches!(name, "ι" | "ε") // bare constants only; binder forms carry types
}

/// Renders a term. The result re-parses and re-elaborates to an α-equal
/// term; decorations are kept minimal unless pinned in `opts`.
pub fn print(term: &Term, opts: &PrintOpts) -> String {
    let modes: Vec<DecorationMode> = match opts.decorations {
        Some(m) => vec![m],
        None => vec![
            DecorationMode::None,
            DecorationMode::Binders,
            DecorationMode::Full,
        ],
    };
    let mut seen: Vec<String> = Vec::new();
    let defaults = ElaborationDefaults::default();
    for mode in &modes {
        for (flat, subs_ops, subs_atoms) in [
            (true, opts.subscript_ops, false),
            (false, opts.subscript_ops, false),
            (false, true, false),
            (false, true, true),
        ] {
            let r = Renderer {
                deco: *mode,
                subscript_ops: subs_ops,
                subscript_atoms: subs_atoms,
                full_parens: opts.full_parens,
                fold: opts.fold,
                flat_apps: flat,
                sym: Symbols { ascii: opts.ascii },
            };
            let s = r.render(term, 0);
            if seen.contains(&s) {
                continue;
            }
            seen.push(s.clone());
            if verifies(&s, term, &defaults) {
                return s;
            }
        }
    }
    // Fully explicit fallback.
    let r = Renderer {
        deco: DecorationMode::Full,
        subscript_ops: true,
        subscript_atoms: true,
        full_parens: true,
        fold: opts.fold,
        flat_apps: false,
        sym: Symbols { ascii: opts.ascii },
    };
    r.render(term, 0)
}

fn verifies(s: &str, term: &Term, defaults: &ElaborationDefaults) -> bool {
    match parse(s) {
        Ok(surface) => match elaborate(&surface, defaults, NotationGuard::Epsilon) {
            Ok(t) => t.alpha_eq(term),
            Err(_) => false,
        },
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse;
    use super::*;
    use crate::term::fresh_variable;

    fn read(text: &str) -> Term {
        elaborate(
            &parse(text).unwrap(),
            &ElaborationDefaults::default(),
            NotationGuard::Epsilon,
        )
        .unwrap()
    }

    #[test]
    fn paper_display_parenthesis_restoration() {
        let t = read("λp. f p → q");
        assert_eq!(print(&t, &PrintOpts::default()), "λp. f p → q");
        let full = PrintOpts {
            full_parens: true,
            decorations: Some(DecorationMode::None),
            ..PrintOpts::default()
        };
        assert_eq!(print(&t, &full), "(λp. ((f p) → q))");
    }

    #[test]
    fn paper_display_decoration() {
        let t = read("λx^e. f f x");
        let opts = PrintOpts {
            decorations: Some(DecorationMode::Full),
            ..PrintOpts::default()
        };
        assert_eq!(print(&t, &opts), "λx^e. f^ee f^ee x^e");
    }

    #[test]
    fn folding_basics() {
        assert_eq!(print(&defs::top(), &PrintOpts::default()), "⊤");
        assert_eq!(print(&defs::bot(), &PrintOpts::default()), "⊥");
        let t = read("¬(p ∧ q)");
        assert_eq!(print(&t, &PrintOpts::default()), "¬(p ∧ q)");
        let b = read("□(p → q)");
        assert_eq!(print(&b, &PrintOpts::default()), "□(p → q)");
    }

    #[test]
    fn expand_style_output() {
        let opts = PrintOpts {
            decorations: Some(DecorationMode::Binders),
            subscript_ops: true,
            fold: false,
            ..PrintOpts::default()
        };
        assert_eq!(print(&defs::top(), &opts), "(λp^t. p) ⊆_t (λp^t. p)");
    }

    #[test]
    fn ascii_mode() {
        let t = read("∀x^e. x = x");
        let opts = PrintOpts {
            ascii: true,
            ..PrintOpts::default()
        };
        let s = print(&t, &opts);
        assert!(s.starts_with("forall"), "{s}");
        assert!(!s.contains('∀'));
        // re-parses
        assert!(read(&s).alpha_eq(&t));
    }

    #[test]
    fn roundtrip_assorted() {
        for text in [
            "⊤",
            "⊥",
            "λp. f p → q",
            "∀x^e. x = x",
            "∃p. p ∧ ¬p",
            "□p → p",
            "ℕ_t (1 + 1 + 1)",
            "∀X∈F. X x^e",
            "p ∨ q ∨ r",
            "x^e ≠ y",
            "{x^e : ⊥}",
            "ι q. q ∧ p",
            "(λp. p) q",
        ] {
            let t = read(text);
            let printed = print(&t, &PrintOpts::default());
            let back = read(&printed);
            assert!(back.alpha_eq(&t), "{text} → {printed} failed round-trip");
        }
    }

    #[test]
    fn numeral_chain_prints_as_sum() {
        // A bare numeral has no context to pin σ, so the printer falls
        // back to subscripted sums.
        let three = defs::surface_numeral(3, Type::T);
        let s = print(&three, &PrintOpts::default());
        assert_eq!(s, "1 +_t 1 +_t 1");
        assert!(read(&s).alpha_eq(&three));
    }

    #[test]
    fn partial_inclusion_section() {
        // App(⊆_e, F) has no infix rendering; a section is used.
        let f = Term::var(fresh_variable('F', &Type::property_of(Type::E), &[], &[]));
        let partial = Term::app(defs::include(Type::E), f).unwrap();
        let s = print(&partial, &PrintOpts::default());
        let back = read(&s);
        assert!(back.alpha_eq(&partial), "{s}");
    }
}

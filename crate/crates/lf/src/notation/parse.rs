//! Surface-term parser.
//!
//! Scope conventions: binders take widest possible scope; Boolean
//! connectives are next (`↔` loosest, then `→`, `∨`, `∧`); other infix
//! (`=`, `≠`, `⊆`, `≡`, then `+`, `∖`) binds tighter; prefix application
//! is tightest. Only `∧`, `∨` and `+` may be chained without parentheses.
//! Application sequences are kept flat here; the elaborator picks the
//! unique well-typed grouping.

use crate::types::Type;

use super::lex::{lex, Span, Tok, TokKind};
use super::NotationError;

pub use super::lex::parse_type;

#[derive(Debug, Clone, PartialEq)]
pub enum BinderKind {
    Lambda,
    Forall,
    Exists,
    ExistsUnique,
    Iota,
    Epsilon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundVar {
    pub letter: char,
    pub primes: u32,
    pub deco: Option<Type>,
    pub span: Span,
}

/// Parse tree mirroring the written text: type decorations optional,
/// application grouping unresolved, abbreviations unexpanded. Every node
/// records its source span.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceTerm {
    Var {
        letter: char,
        primes: u32,
        deco: Option<Type>,
        span: Span,
    },
    /// A notation occurrence, canonically spelled (`∀`, `=`, `⊆`, …).
    Notation {
        name: String,
        subscript: Option<Vec<Type>>,
        span: Span,
    },
    Numeral {
        value: u32,
        sigma: Option<Type>,
        span: Span,
    },
    /// Flat juxtaposition `f a b …`; grouping is type-driven.
    Seq { items: Vec<SurfaceTerm>, span: Span },
    Infix {
        op: String,
        subscript: Option<Vec<Type>>,
        lhs: Box<SurfaceTerm>,
        rhs: Box<SurfaceTerm>,
        span: Span,
    },
    Binder {
        kind: BinderKind,
        vars: Vec<BoundVar>,
        /// `∀x∈F. P` carries the bound `F`.
        bound: Option<Box<SurfaceTerm>>,
        body: Box<SurfaceTerm>,
        span: Span,
    },
    /// Class abstraction `{x^σ : P}`.
    ClassAbs {
        var: BoundVar,
        body: Box<SurfaceTerm>,
        span: Span,
    },
}

impl SurfaceTerm {
    pub fn span(&self) -> Span {
        match self {
            SurfaceTerm::Var { span, .. }
            | SurfaceTerm::Notation { span, .. }
            | SurfaceTerm::Numeral { span, .. }
            | SurfaceTerm::Seq { span, .. }
            | SurfaceTerm::Infix { span, .. }
            | SurfaceTerm::Binder { span, .. }
            | SurfaceTerm::ClassAbs { span, .. } => *span,
        }
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    src_len: usize,
}

const BOOL_OPS: [(&str, u8); 4] = [("↔", 1), ("→", 2), ("∨", 3), ("∧", 4)];
const CMP_OPS: [&str; 4] = ["=", "≠", "⊆", "≡"];
const SUM_OPS: [&str; 2] = ["+", "∖"];
/// Operators that may chain unparenthesised (they provably associate).
const ASSOCIABLE: [&str; 3] = ["∧", "∨", "+"];

fn is_infix_name(name: &str) -> bool {
    BOOL_OPS.iter().any(|(o, _)| *o == name)
        || CMP_OPS.contains(&name)
        || SUM_OPS.contains(&name)
}

impl Parser {
    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, n: usize) -> Option<&TokKind> {
        self.toks.get(self.pos + n).map(|t| &t.kind)
    }

    fn span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(Span::new(self.src_len, self.src_len))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> NotationError {
        NotationError::SyntaxError {
            span: self.span(),
            message: message.into(),
        }
    }

    fn expect_dot(&mut self) -> Result<(), NotationError> {
        match self.peek() {
            Some(TokKind::Dot) => {
                self.bump();
                Ok(())
            }
            _ => Err(self.err("expected `.` after binder variables")),
        }
    }

    /// Is the token at offset `n` the start of an atom?
    fn starts_atom(&self, n: usize) -> bool {
        match self.peek_at(n) {
            Some(TokKind::Name { name, .. }) => !is_infix_name(name),
            Some(
                TokKind::Ident { .. }
                | TokKind::Number { .. }
                | TokKind::LParen
                | TokKind::LBrace
                | TokKind::Lambda,
            ) => true,
            _ => false,
        }
    }

    /// A `Name` token opens a binder form iff it is a binder-capable
    /// notation, has no subscript, and is followed by a variable.
    fn starts_binder(&self) -> bool {
        match self.peek() {
            Some(TokKind::Lambda) => true,
            Some(TokKind::Name { name, subscript }) => {
                subscript.is_none()
                    && matches!(name.as_str(), "∀" | "∃" | "∃!" | "ι" | "ε")
                    && matches!(self.peek_at(1), Some(TokKind::Ident { .. }))
            }
            _ => false,
        }
    }

    fn parse_term(&mut self) -> Result<SurfaceTerm, NotationError> {
        if self.starts_binder() {
            return self.parse_binder();
        }
        self.parse_level(0)
    }

    fn parse_binder(&mut self) -> Result<SurfaceTerm, NotationError> {
        let open = self.bump().expect("binder token");
        let kind = match &open.kind {
            TokKind::Lambda => BinderKind::Lambda,
            TokKind::Name { name, .. } => match name.as_str() {
                "∀" => BinderKind::Forall,
                "∃" => BinderKind::Exists,
                "∃!" => BinderKind::ExistsUnique,
                "ι" => BinderKind::Iota,
                "ε" => BinderKind::Epsilon,
                other => return Err(self.err(format!("`{other}` is not a binder"))),
            },
            _ => unreachable!("starts_binder checked"),
        };
        let mut vars = Vec::new();
        while let Some(TokKind::Ident { letter, primes, deco }) = self.peek() {
            let (letter, primes, deco) = (*letter, *primes, deco.clone());
            let span = self.span();
            self.bump();
            vars.push(BoundVar {
                letter,
                primes,
                deco,
                span,
            });
        }
        if vars.is_empty() {
            return Err(self.err("expected at least one bound variable"));
        }
        // A trailing decoration distributes over the undecorated group
        // immediately before it: `λxy^σ.…` binds both at σ.
        let mut distributed = vars.clone();
        let mut carry: Option<Type> = None;
        for bv in distributed.iter_mut().rev() {
            match (&bv.deco, &carry) {
                (Some(d), _) => carry = Some(d.clone()),
                (None, Some(d)) => bv.deco = Some(d.clone()),
                (None, None) => {}
            }
        }
        let bound = if matches!(self.peek(), Some(TokKind::Member)) {
            if !matches!(kind, BinderKind::Forall | BinderKind::Exists) {
                return Err(self.err("`∈` bounds are only for ∀ and ∃"));
            }
            self.bump();
            Some(Box::new(self.parse_atom()?))
        } else {
            None
        };
        self.expect_dot()?;
        let body = self.parse_term()?;
        let span = open.span.join(body.span());
        Ok(SurfaceTerm::Binder {
            kind,
            vars: distributed,
            bound,
            body: Box::new(body),
            span,
        })
    }

    /// Levels: 0 = start of Boolean tier, then cmp (5), sums (6).
    fn parse_level(&mut self, level: u8) -> Result<SurfaceTerm, NotationError> {
        if level < BOOL_OPS.len() as u8 {
            let (op, _) = BOOL_OPS[level as usize];
            let lhs = self.parse_level(level + 1)?;
            if let Some(TokKind::Name { name, subscript }) = self.peek() {
                if name == op {
                    let subscript = subscript.clone();
                    let op = name.clone();
                    self.bump();
                    let rhs = if ASSOCIABLE.contains(&op.as_str()) {
                        // right-associated chain
                        self.parse_level(level)?
                    } else {
                        self.parse_level(level + 1)?
                    };
                    // a second occurrence of a non-associable operator at
                    // the same level needs parentheses
                    if !ASSOCIABLE.contains(&op.as_str()) {
                        if let Some(TokKind::Name { name: next, .. }) = self.peek() {
                            if *next == op {
                                return Err(self.err(format!(
                                    "`{op}` does not associate; use parentheses"
                                )));
                            }
                        }
                    }
                    let span = lhs.span().join(rhs.span());
                    return Ok(SurfaceTerm::Infix {
                        op,
                        subscript,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                        span,
                    });
                }
            }
            return Ok(lhs);
        }
        if level == 4 {
            // comparison tier: single use only
            let lhs = self.parse_level(5)?;
            if let Some(TokKind::Name { name, subscript }) = self.peek() {
                if CMP_OPS.contains(&name.as_str()) {
                    let op = name.clone();
                    let subscript = subscript.clone();
                    self.bump();
                    let rhs = self.parse_level(5)?;
                    if let Some(TokKind::Name { name: next, .. }) = self.peek() {
                        if CMP_OPS.contains(&next.as_str()) {
                            return Err(self.err(format!(
                                "`{next}` after `{op}` needs parentheses"
                            )));
                        }
                    }
                    let span = lhs.span().join(rhs.span());
                    return Ok(SurfaceTerm::Infix {
                        op,
                        subscript,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                        span,
                    });
                }
            }
            return Ok(lhs);
        }
        if level == 5 {
            let lhs = self.parse_appseq()?;
            if let Some(TokKind::Name { name, subscript }) = self.peek() {
                if SUM_OPS.contains(&name.as_str()) {
                    let op = name.clone();
                    let subscript = subscript.clone();
                    self.bump();
                    let rhs = if op == "+" {
                        self.parse_level(level)? // chains, right-associated
                    } else {
                        self.parse_appseq()?
                    };
                    if op != "+" {
                        if let Some(TokKind::Name { name: next, .. }) = self.peek() {
                            if SUM_OPS.contains(&next.as_str()) {
                                return Err(self.err(format!(
                                    "`{next}` after `{op}` needs parentheses"
                                )));
                            }
                        }
                    }
                    let span = lhs.span().join(rhs.span());
                    return Ok(SurfaceTerm::Infix {
                        op,
                        subscript,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                        span,
                    });
                }
            }
            return Ok(lhs);
        }
        unreachable!("levels above sums are handled by parse_appseq")
    }

    fn parse_appseq(&mut self) -> Result<SurfaceTerm, NotationError> {
        let mut items = Vec::new();
        loop {
            if self.starts_binder() {
                // A binder in argument position takes the rest of the
                // current subterm: it is the final item.
                items.push(self.parse_binder()?);
                break;
            }
            if self.starts_atom(0) {
                items.push(self.parse_atom()?);
            } else {
                break;
            }
        }
        match items.len() {
            0 => Err(self.err("expected a term")),
            1 => Ok(items.pop().expect("one item")),
            _ => {
                let span = items
                    .first()
                    .expect("nonempty")
                    .span()
                    .join(items.last().expect("nonempty").span());
                Ok(SurfaceTerm::Seq { items, span })
            }
        }
    }

    fn parse_atom(&mut self) -> Result<SurfaceTerm, NotationError> {
        match self.peek().cloned() {
            Some(TokKind::LParen) => {
                // `(⊆_e)`-style sections let an infix constant appear in
                // prefix position.
                if let (Some(TokKind::Name { name, subscript }), Some(TokKind::RParen)) =
                    (self.peek_at(1), self.peek_at(2))
                {
                    let is_infix = BOOL_OPS.iter().any(|(o, _)| *o == *name)
                        || CMP_OPS.contains(&name.as_str())
                        || SUM_OPS.contains(&name.as_str());
                    if is_infix {
                        let name = name.clone();
                        let subscript = subscript.clone();
                        let open = self.span();
                        self.bump();
                        self.bump();
                        let close = self.span();
                        self.bump();
                        return Ok(SurfaceTerm::Notation {
                            name,
                            subscript,
                            span: open.join(close),
                        });
                    }
                }
                self.bump();
                let t = self.parse_term()?;
                match self.peek() {
                    Some(TokKind::RParen) => {
                        self.bump();
                        Ok(t)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(TokKind::LBrace) => {
                let open = self.span();
                self.bump();
                let Some(TokKind::Ident { letter, primes, deco }) = self.peek().cloned() else {
                    return Err(self.err("expected a variable after `{`"));
                };
                let vspan = self.span();
                self.bump();
                match self.peek() {
                    Some(TokKind::Colon) => {
                        self.bump();
                    }
                    _ => return Err(self.err("expected `:` in class abstraction")),
                }
                let body = self.parse_term()?;
                match self.peek() {
                    Some(TokKind::RBrace) => {
                        let close = self.span();
                        self.bump();
                        Ok(SurfaceTerm::ClassAbs {
                            var: BoundVar {
                                letter,
                                primes,
                                deco,
                                span: vspan,
                            },
                            body: Box::new(body),
                            span: open.join(close),
                        })
                    }
                    _ => Err(self.err("expected `}` closing class abstraction")),
                }
            }
            Some(TokKind::Ident { letter, primes, deco }) => {
                let span = self.span();
                self.bump();
                Ok(SurfaceTerm::Var {
                    letter,
                    primes,
                    deco,
                    span,
                })
            }
            Some(TokKind::Number { value, subscript }) => {
                let span = self.span();
                self.bump();
                let sigma = match subscript {
                    None => None,
                    Some(tys) if tys.len() == 1 => Some(tys.into_iter().next().expect("one")),
                    Some(_) => {
                        return Err(self.err("numerals take a single type subscript"))
                    }
                };
                Ok(SurfaceTerm::Numeral { value, sigma, span })
            }
            Some(TokKind::Name { name, subscript }) => {
                let span = self.span();
                // Infix operators are not atoms.
                if BOOL_OPS.iter().any(|(o, _)| *o == name)
                    || CMP_OPS.contains(&name.as_str())
                    || SUM_OPS.contains(&name.as_str())
                {
                    return Err(self.err(format!("`{name}` is an infix operator here")));
                }
                self.bump();
                Ok(SurfaceTerm::Notation {
                    name,
                    subscript,
                    span,
                })
            }
            Some(TokKind::Lambda) => self.parse_binder(),
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parses one term.
pub fn parse(text: &str) -> Result<SurfaceTerm, NotationError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        src_len: text.len(),
    };
    let t = p.parse_term()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses `Γ ⊢ P`: comma-separated assumption terms, a turnstile (`⊢` or
/// `|-`), and a conclusion term.
pub fn parse_sequent(text: &str) -> Result<(Vec<SurfaceTerm>, SurfaceTerm), NotationError> {
    let toks = lex(text)?;
    // split at top level on Turnstile
    let turnstile = toks
        .iter()
        .position(|t| matches!(t.kind, TokKind::Turnstile))
        .ok_or_else(|| NotationError::SyntaxError {
            span: Span::new(0, text.len()),
            message: "expected `⊢` in sequent".into(),
        })?;
    let mut assumptions = Vec::new();
    let head = &toks[..turnstile];
    if !head.is_empty() {
        // split on top-level commas (commas inside parens/braces stay)
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, t) in head.iter().enumerate() {
            match t.kind {
                TokKind::LParen | TokKind::LBrace => depth += 1,
                TokKind::RParen | TokKind::RBrace => depth = depth.saturating_sub(1),
                TokKind::Comma if depth == 0 => {
                    assumptions.push(head[start..i].to_vec());
                    start = i + 1;
                }
                _ => {}
            }
        }
        assumptions.push(head[start..].to_vec());
    }
    let parse_slice = |slice: &[Tok]| -> Result<SurfaceTerm, NotationError> {
        let mut p = Parser {
            toks: slice.to_vec(),
            pos: 0,
            src_len: text.len(),
        };
        let t = p.parse_term()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input in sequent formula"));
        }
        Ok(t)
    };
    let assumptions = assumptions
        .iter()
        .map(|s| parse_slice(s))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = parse_slice(&toks[turnstile + 1..])?;
    Ok((assumptions, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binder_takes_widest_scope() {
        // λp. f p → q parses as λp.((f p) → q)
        let t = parse("λp. f p → q").unwrap();
        let SurfaceTerm::Binder { kind, body, .. } = t else {
            panic!("expected binder");
        };
        assert_eq!(kind, BinderKind::Lambda);
        assert!(matches!(*body, SurfaceTerm::Infix { ref op, .. } if op == "→"));
    }

    #[test]
    fn infix_tiers() {
        // = binds tighter than →
        let t = parse("p → x = y").unwrap();
        assert!(matches!(t, SurfaceTerm::Infix { ref op, .. } if op == "→"));
        // ∧ chains
        assert!(parse("p ∧ q ∧ r").is_ok());
        assert!(parse("1 + 1 + 1").is_ok());
        // → must not chain
        assert!(parse("p -> q -> r").is_err());
        // mixed comparisons need parens
        assert!(parse("x = y ⊆ z").is_err());
    }

    #[test]
    fn binder_variants() {
        assert!(parse("∀x y^e. x = y").is_ok());
        assert!(parse("exists! x^e. ⊤").is_ok());
        assert!(parse("∀X∈F. X").is_ok());
        assert!(parse("{x^e : ⊥}").is_ok());
        assert!(parse("ι q. q").is_ok());
        // subscripted quantifier is an atom, not a binder
        let t = parse("∀_e M").unwrap();
        assert!(matches!(t, SurfaceTerm::Seq { .. }));
    }

    #[test]
    fn sequents() {
        let (assms, _concl) = parse_sequent("p, p → q ⊢ q").unwrap();
        assert_eq!(assms.len(), 2);
        let (assms, _concl) = parse_sequent("|- ⊤").unwrap();
        assert!(assms.is_empty());
        assert!(parse_sequent("p, q").is_err());
    }

    #[test]
    fn errors_carry_spans() {
        let err = parse("λ. x").unwrap_err();
        assert!(matches!(err, NotationError::SyntaxError { .. }));
        let err = parse("(p").unwrap_err();
        assert!(matches!(err, NotationError::SyntaxError { .. }));
    }
}

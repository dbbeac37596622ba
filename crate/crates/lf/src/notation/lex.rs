//! Tokenizer for the term and proof-script surface syntax. Unicode
//! symbols and their ASCII aliases lex to the same tokens.

use std::fmt;

use crate::types::Type;

use super::NotationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Lambda,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Turnstile,
    /// `∈` / `in` — bounded-quantifier membership.
    Member,
    /// A single roman letter with primes and an optional `^type`
    /// decoration.
    Ident {
        letter: char,
        primes: u32,
        deco: Option<Type>,
    },
    /// A notation name (canonical spelling) with an optional type
    /// subscript `_σ` or `_{σ,…}`.
    Name {
        name: String,
        subscript: Option<Vec<Type>>,
    },
    /// A numeral with an optional `_σ` subscript.
    Number {
        value: u32,
        subscript: Option<Vec<Type>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tok {
    pub kind: TokKind,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn peek2(&self) -> Option<char> {
        self.chars.get(self.pos + 1).map(|(_, c)| *c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or(self.src.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> NotationError {
        let here = self.offset();
        NotationError::SyntaxError {
            span: Span::new(here, (here + 1).min(self.src.len().max(here + 1))),
            message: message.into(),
        }
    }
}

fn is_prime(c: char) -> bool {
    c == '\'' || c == '′'
}

/// Multi-letter words that are notation, not runs of variables.
const WORDS: &[&str] = &[
    "forall", "exists", "not", "and", "or", "box", "dia", "Nat", "top", "bot", "class", "sub",
    "lam", "iota", "eps", "alpha", "dagger", "equiv", "setminus", "in",
];

fn parse_type_atoms(cur: &mut Cursor) -> Result<Option<Type>, NotationError> {
    // A type is a nonempty sequence of atoms folded to the right.
    let mut atoms: Vec<Type> = Vec::new();
    loop {
        match cur.peek() {
            Some('e') => {
                cur.bump();
                atoms.push(Type::E);
            }
            Some('t') => {
                cur.bump();
                atoms.push(Type::T);
            }
            Some('⟨') | Some('<') => {
                let close = if cur.peek() == Some('⟨') { '⟩' } else { '>' };
                cur.bump();
                let inner = parse_type_atoms(cur)?
                    .ok_or_else(|| cur.err("empty type brackets"))?;
                if !cur.eat(close) {
                    return Err(cur.err(format!("expected `{close}` closing a type")));
                }
                atoms.push(inner);
            }
            _ => break,
        }
    }
    if atoms.is_empty() {
        return Ok(None);
    }
    let mut it = atoms.into_iter().rev();
    let last = it.next().expect("nonempty");
    Ok(Some(it.fold(last, |acc, a| Type::fun(a, acc))))
}

/// Parses a standalone type expression, e.g. `ttt`, `⟨et⟩t`, `<et>t`.
pub fn parse_type(text: &str) -> Result<Type, NotationError> {
    let mut cur = Cursor::new(text.trim());
    let ty = parse_type_atoms(&mut cur)?
        .ok_or_else(|| cur.err("expected a type"))?;
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input after type"));
    }
    Ok(ty)
}

fn lex_subscript(cur: &mut Cursor) -> Result<Option<Vec<Type>>, NotationError> {
    if !cur.eat('_') {
        return Ok(None);
    }
    if cur.eat('{') {
        let mut tys = Vec::new();
        loop {
            let ty = parse_type_atoms(cur)?
                .ok_or_else(|| cur.err("expected a type in subscript"))?;
            tys.push(ty);
            if cur.eat(',') {
                // allow spaces after commas
                while cur.peek() == Some(' ') {
                    cur.bump();
                }
                continue;
            }
            break;
        }
        if !cur.eat('}') {
            return Err(cur.err("expected `}` closing a type-vector subscript"));
        }
        Ok(Some(tys))
    } else {
        let ty = parse_type_atoms(cur)?
            .ok_or_else(|| cur.err("expected a type after `_`"))?;
        Ok(Some(vec![ty]))
    }
}

fn lex_decoration(cur: &mut Cursor) -> Result<Option<Type>, NotationError> {
    if !cur.eat('^') {
        return Ok(None);
    }
    if cur.eat('{') {
        let ty = parse_type_atoms(cur)?
            .ok_or_else(|| cur.err("expected a type after `^`"))?;
        if !cur.eat('}') {
            return Err(cur.err("expected `}` closing a type decoration"));
        }
        Ok(Some(ty))
    } else {
        let ty = parse_type_atoms(cur)?
            .ok_or_else(|| cur.err("expected a type after `^`"))?;
        Ok(Some(ty))
    }
}

pub fn lex(src: &str) -> Result<Vec<Tok>, NotationError> {
    let mut cur = Cursor::new(src);
    let mut out = Vec::new();
    loop {
        while matches!(cur.peek(), Some(c) if c.is_whitespace()) {
            cur.bump();
        }
        if cur.peek() == Some('#') {
            while !matches!(cur.peek(), None | Some('\n')) {
                cur.bump();
            }
            continue;
        }
        let start = cur.offset();
        let Some(c) = cur.peek() else { break };
        let mut push = |cur: &Cursor, kind: TokKind| {
            out.push(Tok {
                kind,
                span: Span::new(start, cur.offset()),
            });
        };
        match c {
            'λ' => {
                cur.bump();
                push(&cur, TokKind::Lambda);
            }
            '\\' => {
                cur.bump();
                push(&cur, TokKind::Lambda);
            }
            '.' => {
                cur.bump();
                push(&cur, TokKind::Dot);
            }
            '(' => {
                cur.bump();
                push(&cur, TokKind::LParen);
            }
            ')' => {
                cur.bump();
                push(&cur, TokKind::RParen);
            }
            '{' => {
                cur.bump();
                push(&cur, TokKind::LBrace);
            }
            '}' => {
                cur.bump();
                push(&cur, TokKind::RBrace);
            }
            ':' => {
                cur.bump();
                push(&cur, TokKind::Colon);
            }
            ',' => {
                cur.bump();
                push(&cur, TokKind::Comma);
            }
            '⊢' => {
                cur.bump();
                push(&cur, TokKind::Turnstile);
            }
            '∈' => {
                cur.bump();
                push(&cur, TokKind::Member);
            }
            '|' if cur.peek2() == Some('-') => {
                cur.bump();
                cur.bump();
                push(&cur, TokKind::Turnstile);
            }
            '-' if cur.peek2() == Some('>') => {
                cur.bump();
                cur.bump();
                push(
                    &cur,
                    TokKind::Name {
                        name: "→".into(),
                        subscript: None,
                    },
                );
            }
            '<' if cur.peek2() == Some('-') => {
                cur.bump();
                cur.bump();
                if !cur.eat('>') {
                    return Err(cur.err("expected `>` to finish `<->`"));
                }
                push(
                    &cur,
                    TokKind::Name {
                        name: "↔".into(),
                        subscript: None,
                    },
                );
            }
            '<' if cur.peek2() == Some('=') => {
                cur.bump();
                cur.bump();
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Name { name: "⊆".into(), subscript });
            }
            '!' if cur.peek2() == Some('=') => {
                cur.bump();
                cur.bump();
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Name { name: "≠".into(), subscript });
            }
            '=' => {
                cur.bump();
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Name { name: "=".into(), subscript });
            }
            '+' => {
                cur.bump();
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Name { name: "+".into(), subscript });
            }
            '@' => {
                cur.bump();
                push(
                    &cur,
                    TokKind::Name {
                        name: "@".into(),
                        subscript: None,
                    },
                );
            }
            '∀' | '∃' | '¬' | '∧' | '∨' | '→' | '↔' | '≠' | '⊆' | '≡' | '□' | '◇'
            | '⊤' | '⊥' | 'ℕ' | 'ι' | 'ε' | 'α' | '†' | '∖' => {
                cur.bump();
                let mut name = c.to_string();
                if c == '∃' && cur.eat('!') {
                    name = "∃!".into();
                }
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Name { name, subscript });
            }
            c if c.is_ascii_digit() => {
                let mut value: u32 = 0;
                while let Some(d) = cur.peek().and_then(|c| c.to_digit(10)) {
                    cur.bump();
                    value = value.saturating_mul(10).saturating_add(d);
                }
                let subscript = lex_subscript(&mut cur)?;
                push(&cur, TokKind::Number { value, subscript });
            }
            c if c.is_ascii_alphabetic() => {
                // Try a reserved word first (longest match), else a
                // single-letter identifier.
                let rest: String = cur.chars[cur.pos..].iter().map(|(_, c)| c).collect();
                let word = WORDS
                    .iter()
                    .filter(|w| {
                        rest.starts_with(**w)
                            && !rest[w.len()..]
                                .chars()
                                .next()
                                .is_some_and(|c| c.is_ascii_alphanumeric())
                    })
                    .max_by_key(|w| w.len());
                if let Some(word) = word {
                    for _ in 0..word.len() {
                        cur.bump();
                    }
                    match *word {
                        "lam" => push(&cur, TokKind::Lambda),
                        "in" => push(&cur, TokKind::Member),
                        w => {
                            let mut name = match w {
                                "forall" => "∀".to_string(),
                                "exists" => {
                                    if cur.eat('!') {
                                        "∃!".to_string()
                                    } else {
                                        "∃".to_string()
                                    }
                                }
                                "not" => "¬".to_string(),
                                "and" => "∧".to_string(),
                                "or" => "∨".to_string(),
                                "box" => "□".to_string(),
                                "dia" => "◇".to_string(),
                                "Nat" => "ℕ".to_string(),
                                "top" => "⊤".to_string(),
                                "bot" => "⊥".to_string(),
                                "sub" => "⊆".to_string(),
                                "iota" => "ι".to_string(),
                                "eps" => "ε".to_string(),
                                "alpha" => "α".to_string(),
                                "dagger" => "†".to_string(),
                                "equiv" => "≡".to_string(),
                                "setminus" => "∖".to_string(),
                                other => other.to_string(),
                            };
                            if name == "∃" && cur.eat('!') {
                                name = "∃!".to_string();
                            }
                            let subscript = lex_subscript(&mut cur)?;
                            push(&cur, TokKind::Name { name, subscript });
                        }
                    }
                } else {
                    let letter = cur.bump().expect("peeked");
                    let mut primes = 0;
                    while matches!(cur.peek(), Some(c) if is_prime(c)) {
                        cur.bump();
                        primes += 1;
                    }
                    let deco = lex_decoration(&mut cur)?;
                    push(&cur, TokKind::Ident { letter, primes, deco });
                }
            }
            other => {
                return Err(cur.err(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_parsing() {
        assert_eq!(
            parse_type("ttt").unwrap(),
            Type::fun(Type::T, Type::fun(Type::T, Type::T))
        );
        assert_eq!(parse_type("⟨et⟩t").unwrap(), parse_type("<et>t").unwrap());
        assert_eq!(
            parse_type("⟨t⟨tt⟩⟩").unwrap().to_string(),
            "ttt"
        );
        assert!(parse_type("").is_err());
        assert!(parse_type("⟨e").is_err());
    }

    #[test]
    fn idents_and_words() {
        let toks = lex("λx^e. f f x").unwrap();
        assert!(matches!(toks[0].kind, TokKind::Lambda));
        assert!(
            matches!(&toks[1].kind, TokKind::Ident { letter: 'x', primes: 0, deco: Some(t) } if *t == Type::E)
        );
        assert!(matches!(toks[2].kind, TokKind::Dot));
        assert_eq!(toks.len(), 6);

        let toks = lex("forall x in F . p' -> q").unwrap();
        assert!(matches!(&toks[0].kind, TokKind::Name { name, .. } if name == "∀"));
        assert!(matches!(toks[2].kind, TokKind::Member));
        assert!(
            matches!(&toks[5].kind, TokKind::Ident { letter: 'p', primes: 1, .. })
        );
    }

    #[test]
    fn subscripts() {
        let toks = lex("sub_t =_e equiv_{e,t} 3_t 0").unwrap();
        match &toks[0].kind {
            TokKind::Name { name, subscript } => {
                assert_eq!(name, "⊆");
                assert_eq!(subscript.as_deref(), Some(&[Type::T][..]));
            }
            other => panic!("unexpected {other:?}"),
        }
        match &toks[2].kind {
            TokKind::Name { name, subscript } => {
                assert_eq!(name, "≡");
                assert_eq!(subscript.as_ref().unwrap().len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(&toks[3].kind, TokKind::Number { value: 3, subscript: Some(_) }));
        assert!(matches!(&toks[4].kind, TokKind::Number { value: 0, subscript: None }));
    }

    #[test]
    fn exists_bang_and_arrows() {
        let toks = lex("exists! x . <-> -> != |-").unwrap();
        assert!(matches!(&toks[0].kind, TokKind::Name { name, .. } if name == "∃!"));
        let toks2 = lex("∃!x. ⊤").unwrap();
        assert!(matches!(&toks2[0].kind, TokKind::Name { name, .. } if name == "∃!"));
        assert!(toks.iter().any(|t| matches!(&t.kind, TokKind::Turnstile)));
    }
}

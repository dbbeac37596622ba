//! Simple types over the base types `e` and `t`.

use std::fmt;
use std::sync::Arc;

/// A simple type: one of the base types `e`/`t`, or a function type
/// `⟨στ⟩`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Type {
    /// The type of individuals.
    E,
    /// The type of formulae and sentences.
    T,
    /// `⟨στ⟩`, "functions from σ to τ".
    Fun(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn fun(domain: Type, codomain: Type) -> Type {
        Type::Fun(Arc::new(domain), Arc::new(codomain))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Type::E | Type::T)
    }

    pub fn domain(&self) -> Option<&Type> {
        match self {
            Type::Fun(d, _) => Some(d),
            _ => None,
        }
    }

    pub fn codomain(&self) -> Option<&Type> {
        match self {
            Type::Fun(_, c) => Some(c),
            _ => None,
        }
    }

    /// The type of a property of σ-things: `⟨σt⟩`.
    pub fn property_of(sigma: Type) -> Type {
        Type::fun(sigma, Type::T)
    }

    /// Nesting depth: base types have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::E | Type::T => 0,
            Type::Fun(d, c) => 1 + d.depth().max(c.depth()),
        }
    }

    /// Rendering with every pair of angle brackets shown, e.g. `⟨t⟨tt⟩⟩`.
    pub fn full_notation(&self) -> String {
        match self {
            Type::E => "e".to_string(),
            Type::T => "t".to_string(),
            Type::Fun(d, c) => format!("⟨{}{}⟩", d.full_notation(), c.full_notation()),
        }
    }

    /// ASCII variant of [`Type::full_notation`], using `<`/`>`.
    pub fn full_notation_ascii(&self) -> String {
        match self {
            Type::E => "e".to_string(),
            Type::T => "t".to_string(),
            Type::Fun(d, c) => {
                format!("<{}{}>", d.full_notation_ascii(), c.full_notation_ascii())
            }
        }
    }

    fn fmt_minimal(&self, f: &mut fmt::Formatter<'_>, ascii: bool) -> fmt::Result {
        // Complex types associate to the right, so only a complex domain
        // needs brackets: ⟨t⟨tt⟩⟩ prints as "ttt", ⟨⟨et⟩t⟩ as "⟨et⟩t".
        match self {
            Type::E => write!(f, "e"),
            Type::T => write!(f, "t"),
            Type::Fun(d, c) => {
                if d.is_base() {
                    d.fmt_minimal(f, ascii)?;
                } else if ascii {
                    write!(f, "<{}>", MinimalAscii(d))?;
                } else {
                    write!(f, "⟨{}⟩", Minimal(d))?;
                }
                c.fmt_minimal(f, ascii)
            }
        }
    }

    /// Minimal-bracket ASCII rendering (`<et>t` style).
    pub fn minimal_notation_ascii(&self) -> String {
        format!("{}", MinimalAscii(self))
    }
}

struct Minimal<'a>(&'a Type);
impl fmt::Display for Minimal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_minimal(f, false)
    }
}

struct MinimalAscii<'a>(&'a Type);
impl fmt::Display for MinimalAscii<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_minimal(f, true)
    }
}

impl fmt::Display for Type {
    /// Displays with minimal brackets under the right-association
    /// convention (`ttt` means `⟨t⟨tt⟩⟩`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_minimal(f, false)
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_right_association() {
        let ttt = Type::fun(Type::T, Type::fun(Type::T, Type::T));
        assert_eq!(ttt.to_string(), "ttt");
        assert_eq!(ttt.full_notation(), "⟨t⟨tt⟩⟩");

        let et_t = Type::fun(Type::fun(Type::E, Type::T), Type::T);
        assert_eq!(et_t.to_string(), "⟨et⟩t");
        assert_eq!(et_t.full_notation(), "⟨⟨et⟩t⟩");
    }

    #[test]
    fn include_type_display() {
        // type of ⊆_e
        let et = Type::property_of(Type::E);
        let incl = Type::fun(et.clone(), Type::fun(et, Type::T));
        assert_eq!(incl.full_notation(), "⟨⟨et⟩⟨⟨et⟩t⟩⟩");
        assert_eq!(incl.to_string(), "⟨et⟩⟨et⟩t");
    }
}

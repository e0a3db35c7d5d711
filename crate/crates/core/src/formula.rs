//! Propositional formulas over subspace atoms and their text syntax.
//!
//! The ASCII grammar, loosest binding first:
//!
//! ```text
//! disj  := conj ('|' conj)*
//! conj  := unary ('&' unary)*
//! unary := '!' unary | '(' disj ')' | 'T' | 'F' | ident
//! ident := [A-Za-z0-9_.+-]+
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::Subspace;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub label: String,
    pub subspace: Subspace,
    /// Restricts block lookup to this block of a structure.
    pub block: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Atom(Atom),
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    Top,
    Bottom,
}

impl Formula {
    pub fn atom(label: impl Into<String>, subspace: Subspace) -> Self {
        Formula::Atom(Atom {
            label: label.into(),
            subspace,
            block: None,
        })
    }

    pub fn atom_in(label: impl Into<String>, subspace: Subspace, block: usize) -> Self {
        Formula::Atom(Atom {
            label: label.into(),
            subspace,
            block: Some(block),
        })
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::Conj(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Disj(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Neg(Box::new(self))
    }

    /// Ambient dimension shared by the atoms, if there are any.
    pub fn ambient_dim(&self) -> Option<usize> {
        let mut found = None;
        self.visit_atoms(&mut |a| {
            found.get_or_insert(a.subspace.ambient_dim());
        });
        found
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Conj(l, r) | Formula::Disj(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
            Formula::Neg(x) => x.visit_atoms(f),
            Formula::Top | Formula::Bottom => {}
        }
    }

    /// Lattice notation: `⊓`, `⊔`, `¬`, `⊤`, `⊥`.
    pub fn render_lattice(&self) -> String {
        self.render(&Symbols {
            and: " ⊓ ",
            or: " ⊔ ",
            not: "¬",
            top: "⊤",
            bottom: "⊥",
        })
    }

    /// The ASCII input syntax; parses back to the same tree.
    pub fn render_ascii(&self) -> String {
        self.render(&Symbols {
            and: " & ",
            or: " | ",
            not: "!",
            top: "T",
            bottom: "F",
        })
    }

    fn render(&self, sym: &Symbols) -> String {
        let child = |f: &Formula| match f {
            Formula::Conj(..) | Formula::Disj(..) => format!("({})", f.render(sym)),
            _ => f.render(sym),
        };
        match self {
            Formula::Atom(a) => a.label.clone(),
            Formula::Conj(l, r) => format!("{}{}{}", child(l), sym.and, child(r)),
            Formula::Disj(l, r) => format!("{}{}{}", child(l), sym.or, child(r)),
            Formula::Neg(x) => format!("{}{}", sym.not, child(x)),
            Formula::Top => sym.top.to_string(),
            Formula::Bottom => sym.bottom.to_string(),
        }
    }
}

struct Symbols {
    and: &'static str,
    or: &'static str,
    not: &'static str,
    top: &'static str,
    bottom: &'static str,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    And,
    Or,
    Not,
    Open,
    Close,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '+' | '-')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let column = i + 1;
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '&' => {
                chars.next();
                tokens.push((column, Token::And));
            }
            '|' => {
                chars.next();
                tokens.push((column, Token::Or));
            }
            '!' => {
                chars.next();
                tokens.push((column, Token::Not));
            }
            '(' => {
                chars.next();
                tokens.push((column, Token::Open));
            }
            ')' => {
                chars.next();
                tokens.push((column, Token::Close));
            }
            c if is_ident_char(c) => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    ident.push(c);
                    chars.next();
                }
                tokens.push((column, Token::Ident(ident)));
            }
            other => {
                return Err(Error::FormulaParse {
                    column,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a, R> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    resolve: &'a R,
}

impl<R: Fn(&str) -> Option<Subspace>> Parser<'_, R> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::FormulaParse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            f = f.or(self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::Open) => {
                self.pos += 1;
                let f = self.disj()?;
                if self.peek() != Some(&Token::Close) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(f)
            }
            Some(Token::Ident(name)) => {
                let f = match name.as_str() {
                    "T" => Formula::Top,
                    "F" => Formula::Bottom,
                    _ => match (self.resolve)(&name) {
                        Some(s) => Formula::atom(name.clone(), s),
                        None => return Err(Error::UnknownIdentifier(name)),
                    },
                };
                self.pos += 1;
                Ok(f)
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of formula"),
        }
    }
}

/// Parses `text`, resolving each identifier to a subspace through `resolve`.
pub fn parse_formula(text: &str, resolve: &impl Fn(&str) -> Option<Subspace>) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len() + 1,
        resolve,
    };
    let f = parser.disj()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(f)
}

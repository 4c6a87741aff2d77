//! The line-oriented model file format.
//!
//! ```text
//! model "example"
//! even x1 : 6
//! even x2 : 8
//! odd y1 : 29 = x1^5 + x1*x2^3
//! odd y3 : 33            # closed generator
//! ```
//!
//! Expressions use `+ - * / ^`, integer literals and parentheses; `/` only
//! divides by a nonzero constant. `#` starts a comment.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Degree, Element, Generator, GeneratorSet, Rational};
use crate::error::{Error, Result};
use crate::model::{check_degree, SullivanModel};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().map_err(|_| format!("bad number `{text}`"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    space: &'a Arc<GeneratorSet>,
}

/// Parse failures that are not plain syntax errors carry their own variant.
enum ExprError {
    Syntax(String),
    Other(Error),
}

impl From<Error> for ExprError {
    fn from(e: Error) -> Self {
        ExprError::Other(e)
    }
}

type ExprResult<T> = std::result::Result<T, ExprError>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> ExprResult<Element> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> ExprResult<Element> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = match d.degree() {
                    Degree::Homogeneous(0) => d.constant_term(),
                    _ => return Err(ExprError::Syntax("division by a non-constant".into())),
                };
                if c.is_zero() {
                    return Err(ExprError::Syntax("division by zero".into()));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> ExprResult<Element> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ExprError::Syntax("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(ExprError::Syntax("expected an integer exponent after `^`".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> ExprResult<Element> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Element::constant(self.space, Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Element::var(self.space, &name)?)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError::Syntax("missing `)`".into()));
                }
                Ok(e)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(t) => Err(ExprError::Syntax(format!("unexpected `{}`", show(&t)))),
            None => Err(ExprError::Syntax("unexpected end of expression".into())),
        }
    }
}

fn show(t: &Token) -> String {
    match t {
        Token::Num(n) => n.to_string(),
        Token::Ident(s) => s.clone(),
        Token::Op(c) => c.to_string(),
    }
}

fn parse_expr(space: &Arc<GeneratorSet>, text: &str) -> ExprResult<Element> {
    let tokens = tokenize(text).map_err(ExprError::Syntax)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        space,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ExprError::Syntax(format!(
            "unexpected `{}`",
            show(&p.tokens[p.pos])
        )));
    }
    Ok(e)
}

/// Parses an element in the canonical text form over `space`.
pub fn parse_element(space: &Arc<GeneratorSet>, text: &str) -> Result<Element> {
    parse_expr(space, text).map_err(|e| match e {
        ExprError::Syntax(message) => Error::Syntax { line: 1, message },
        ExprError::Other(e) => e,
    })
}

struct Decl<'a> {
    line: usize,
    name: String,
    expr: Option<&'a str>,
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Syntax { message, .. } => Error::Syntax { line, message },
        other => Error::Syntax {
            line,
            message: other.to_string(),
        },
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses and validates a model file. Every failure, including validation
/// errors, is reported against the offending line.
pub fn parse_model(text: &str) -> Result<SullivanModel> {
    let mut name = String::from("model");
    let mut gens = Vec::new();
    let mut decls = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line,
            message: message.to_string(),
        };
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "model" => {
                let quoted = rest
                    .strip_prefix('"')
                    .and_then(|r| r.strip_suffix('"'))
                    .filter(|r| !r.contains('"'))
                    .ok_or_else(|| syntax("expected model \"<name>\""))?;
                name = quoted.to_string();
            }
            "even" | "odd" => {
                let (head, expr) = match rest.split_once('=') {
                    Some((h, e)) => (h, Some(e.trim())),
                    None => (rest, None),
                };
                let (id, degree) = head
                    .split_once(':')
                    .ok_or_else(|| syntax("expected `<id> : <degree>`"))?;
                let id = id.trim();
                if !is_ident(id) {
                    return Err(syntax(&format!("invalid generator name `{id}`")));
                }
                let degree: u32 = degree
                    .trim()
                    .parse()
                    .map_err(|_| syntax(&format!("invalid degree `{}`", degree.trim())))?;
                let even = keyword == "even";
                if even != degree.is_multiple_of(2) {
                    return Err(syntax(&format!(
                        "`{id}` is declared {keyword} but has degree {degree}"
                    )));
                }
                if even && expr.is_some() {
                    return Err(syntax("even generators are closed in this format"));
                }
                gens.push(Generator::new(id, degree));
                decls.push(Decl {
                    line,
                    name: id.to_string(),
                    expr,
                });
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let space = GeneratorSet::new(gens).map_err(|e| {
        let bad = match &e {
            Error::DegreeTooSmall { name, .. } | Error::DuplicateGenerator(name) => Some(name.clone()),
            _ => None,
        };
        let line = decls
            .iter()
            .rev()
            .find(|d| Some(&d.name) == bad.as_ref())
            .map_or(0, |d| d.line);
        at_line(line, e)
    })?;
    let mut assignments = Vec::new();
    for d in &decls {
        if let Some(expr) = d.expr {
            let image = parse_expr(&space, expr).map_err(|e| match e {
                ExprError::Syntax(message) => Error::Syntax { line: d.line, message },
                ExprError::Other(e) => at_line(d.line, e),
            })?;
            let g = space.get(space.index_of(&d.name).unwrap());
            check_degree(g, &image).map_err(|e| at_line(d.line, e))?;
            assignments.push((d.name.as_str(), image));
        }
    }
    let model = SullivanModel::new(name, space, assignments)?;
    model.validate().map_err(|e| {
        let culprit = match &e {
            Error::NotMinimal(g) | Error::DifferentialNotSquareZero(g) => Some(g.clone()),
            Error::DegreeMismatch { generator, .. } => Some(generator.clone()),
            _ => None,
        };
        let line = decls
            .iter()
            .find(|d| Some(&d.name) == culprit.as_ref())
            .map_or(0, |d| d.line);
        at_line(line, e)
    })?;
    Ok(model)
}

/// Renders a model in the file format; `parse_model` reads it back to an
/// identical model.
pub fn render_model(m: &SullivanModel) -> String {
    let mut out = format!("model \"{}\"\n", m.name());
    for (i, g) in m.generators().iter().enumerate() {
        let kind = if g.is_even() { "even" } else { "odd" };
        out.push_str(&format!("{kind} {} : {}", g.name(), g.degree()));
        if !m.image(i).is_zero() {
            out.push_str(&format!(" = {}", m.image(i)));
        }
        out.push('\n');
    }
    out
}

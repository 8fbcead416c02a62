//! A small matrix-expression language for invariant and generator labels such
//! as `C M1 + M1 C`, `K3 C K3^2 - K3^2 C K3` or `tr(C^2 M1)`.
//!
//! Atoms are `C` (the argument), `I` (identity) and the member labels of a
//! structural set; `^n` repeats an atom.

use crate::error::{Error, Result};
use crate::tensor::Mat3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    C,
    Member(usize),
}

/// Ordered product of factors; the empty product is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Product(pub Vec<Factor>);

#[derive(Debug, Clone, PartialEq)]
pub struct LinComb(pub Vec<(f64, Product)>);

/// Trace of a single product.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceExpr(pub Product);

impl Product {
    pub fn eval(&self, c: &Mat3, members: &[Mat3]) -> Mat3 {
        self.0.iter().fold(Mat3::IDENTITY, |acc, f| {
            acc * match f {
                Factor::C => *c,
                Factor::Member(m) => members[*m],
            }
        })
    }

    /// Replaces `Member(m)` with `Member(p[m])`.
    pub fn substitute(&self, p: &[usize]) -> Product {
        Product(
            self.0
                .iter()
                .map(|f| match f {
                    Factor::C => Factor::C,
                    Factor::Member(m) => Factor::Member(p[*m]),
                })
                .collect(),
        )
    }
}

impl LinComb {
    pub fn eval(&self, c: &Mat3, members: &[Mat3]) -> Mat3 {
        self.0
            .iter()
            .fold(Mat3::ZERO, |acc, (k, p)| acc + *k * p.eval(c, members))
    }

    pub fn substitute(&self, p: &[usize]) -> LinComb {
        LinComb(self.0.iter().map(|(k, x)| (*k, x.substitute(p))).collect())
    }
}

impl TraceExpr {
    pub fn eval(&self, c: &Mat3, members: &[Mat3]) -> f64 {
        self.0.eval(c, members).trace()
    }

    pub fn substitute(&self, p: &[usize]) -> TraceExpr {
        TraceExpr(self.0.substitute(p))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Pow(u32),
    Plus,
    Minus,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut chars = s.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            '^' => {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let n: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
                if n == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{s}`")));
                }
                out.push(Tok::Pow(n));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(d) = chars
                    .peek()
                    .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
                {
                    name.push(*d);
                    chars.next();
                }
                out.push(Tok::Name(name));
            }
            other => return Err(Error::Parse(format!("unexpected `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    members: &'a [String],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn atom(&mut self, name: &str) -> Result<Vec<Factor>> {
        let base = if name == "C" {
            vec![Factor::C]
        } else if name == "I" && !self.members.iter().any(|m| m == "I") {
            vec![]
        } else if let Some(m) = self.members.iter().position(|m| m == name) {
            vec![Factor::Member(m)]
        } else {
            return Err(self.err(&format!("unknown symbol `{name}`")));
        };
        let mut reps = 1;
        if let Some(Tok::Pow(n)) = self.peek() {
            reps = *n as usize;
            self.pos += 1;
        }
        Ok(base.repeat(reps))
    }

    fn product(&mut self) -> Result<Product> {
        let mut factors = vec![];
        let mut any = false;
        while let Some(Tok::Name(n)) = self.peek().cloned() {
            self.pos += 1;
            factors.extend(self.atom(&n)?);
            any = true;
        }
        if !any {
            return Err(self.err("expected a factor"));
        }
        Ok(Product(factors))
    }

    fn lincomb(&mut self) -> Result<LinComb> {
        let mut terms = vec![];
        let mut sign = 1.0;
        if self.peek() == Some(&Tok::Minus) {
            sign = -1.0;
            self.pos += 1;
        }
        loop {
            terms.push((sign, self.product()?));
            match self.peek() {
                Some(Tok::Plus) => sign = 1.0,
                Some(Tok::Minus) => sign = -1.0,
                None => break,
                Some(_) => return Err(self.err("unexpected token")),
            }
            self.pos += 1;
        }
        Ok(LinComb(terms))
    }
}

/// Parses a signed sum of products over `C`, `I` and `members`.
pub fn parse_lincomb(s: &str, members: &[String]) -> Result<LinComb> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
        members,
        src: s,
    };
    p.lincomb()
}

/// Parses `tr X` (a single atom) or `tr(X Y …)`.
pub fn parse_trace(s: &str, members: &[String]) -> Result<TraceExpr> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
        members,
        src: s,
    };
    if p.peek() != Some(&Tok::Name("tr".into())) {
        return Err(p.err("expected `tr`"));
    }
    p.pos += 1;
    let prod = if p.peek() == Some(&Tok::Open) {
        p.pos += 1;
        let prod = p.product()?;
        if p.peek() != Some(&Tok::Close) {
            return Err(p.err("expected `)`"));
        }
        p.pos += 1;
        prod
    } else {
        match p.peek().cloned() {
            Some(Tok::Name(n)) => {
                p.pos += 1;
                Product(p.atom(&n)?)
            }
            _ => return Err(p.err("expected a factor")),
        }
    };
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(TraceExpr(prod))
}

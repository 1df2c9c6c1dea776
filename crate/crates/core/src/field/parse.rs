//! Parser for field-element text: integers, q, t, k, s, r, + - * / ^ and parentheses.
//! Other identifiers are kept in the tree so callers can give them meaning.

use num_bigint::BigInt;

use super::elem::FieldElem;
use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
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
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| FieldError::Parse(src.to_string()))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character '{}' in \"{}\"", c, src)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> FieldError {
        FieldError::Parse(format!("{} at token {} in \"{}\"", what, self.pos, self.src))
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, FieldError> {
        let mut lhs = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, FieldError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(self.unary()?.into()))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, FieldError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let neg = if self.peek_op() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = match self.toks.get(self.pos) {
                Some(Tok::Int(n)) => i32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected integer exponent")),
            };
            self.pos += 1;
            return Ok(Expr::Pow(base.into(), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, FieldError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected operand")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, FieldError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Evaluate in F, mapping the symbols q, t, k, s, r.
pub fn eval_expr(e: &Expr) -> Result<FieldElem, FieldError> {
    Ok(match e {
        Expr::Int(n) => FieldElem::from_poly(super::poly::BasePoly::constant(n.clone())),
        Expr::Ident(s) => match s.as_str() {
            "q" => FieldElem::q(),
            "t" => FieldElem::t(),
            "k" => FieldElem::k(),
            "s" => FieldElem::s(),
            "r" => FieldElem::r(),
            other => return Err(FieldError::Parse(format!("unknown symbol '{}'", other))),
        },
        Expr::Neg(x) => eval_expr(x)?.neg_ref(),
        Expr::Add(a, b) => eval_expr(a)?.add_ref(&eval_expr(b)?),
        Expr::Sub(a, b) => eval_expr(a)?.sub_ref(&eval_expr(b)?),
        Expr::Mul(a, b) => eval_expr(a)?.mul_ref(&eval_expr(b)?),
        Expr::Div(a, b) => eval_expr(a)?.div_ref(&eval_expr(b)?)?,
        Expr::Pow(a, n) => eval_expr(a)?.pow(*n)?,
    })
}

impl std::str::FromStr for FieldElem {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        eval_expr(&parse_expr(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let x: FieldElem = "-q^2 + 2*t/k".parse().unwrap();
        let y = FieldElem::q().pow(2).unwrap().neg_ref().add_ref(&FieldElem::t().scale_int(2).div_ref(&FieldElem::k()).unwrap());
        assert_eq!(x, y);
    }

    #[test]
    fn negative_exponent() {
        let x: FieldElem = "q^-2".parse().unwrap();
        assert_eq!(x, FieldElem::q().pow(-2).unwrap());
    }

    #[test]
    fn canonical_round_trip() {
        let x: FieldElem = "t*q*k/s + 1/(q-1)".parse().unwrap();
        let y: FieldElem = x.to_string().parse().unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_garbage() {
        assert!("q +".parse::<FieldElem>().is_err());
        assert!("q $ 2".parse::<FieldElem>().is_err());
        assert!("z".parse::<FieldElem>().is_err());
    }
}

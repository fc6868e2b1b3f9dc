//! Recursive-descent parser for the scalar expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-')? atom ('^' NAT)?
//! atom   := RATIONAL | NAT | IDENT | '(' expr ')'
//! RATIONAL := NAT '/' NAT
//! ```
//!
//! Whitespace is insignificant; there is no implicit multiplication.

use super::{ParamSpace, Rat, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub(crate) struct Lexer {
    tokens: Vec<Token>,
    pos: usize,
}

impl Lexer {
    pub fn new(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let (tline, tcol) = (line, col);
            let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
                let c = chars.next().unwrap();
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                c
            };
            if c.is_whitespace() {
                bump(&mut chars);
                continue;
            }
            let kind = match c {
                '+' => {
                    bump(&mut chars);
                    TokenKind::Plus
                }
                '-' => {
                    bump(&mut chars);
                    TokenKind::Minus
                }
                '*' => {
                    bump(&mut chars);
                    TokenKind::Star
                }
                '^' => {
                    bump(&mut chars);
                    TokenKind::Caret
                }
                '/' => {
                    bump(&mut chars);
                    TokenKind::Slash
                }
                '(' => {
                    bump(&mut chars);
                    TokenKind::LParen
                }
                ')' => {
                    bump(&mut chars);
                    TokenKind::RParen
                }
                d if d.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(bump(&mut chars));
                        } else {
                            break;
                        }
                    }
                    TokenKind::Nat(s.parse::<BigInt>().unwrap())
                }
                a if a.is_ascii_alphabetic() => {
                    let mut s = String::new();
                    while let Some(&a) = chars.peek() {
                        if a.is_ascii_alphanumeric() || a == '_' {
                            s.push(bump(&mut chars));
                        } else {
                            break;
                        }
                    }
                    TokenKind::Ident(s)
                }
                other => {
                    return Err(Error::Syntax {
                        line: tline,
                        col: tcol,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            tokens.push(Token {
                kind,
                line: tline,
                col: tcol,
            });
        }
        tokens.push(Token {
            kind: TokenKind::Eof,
            line,
            col,
        });
        Ok(Lexer { tokens, pos: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token> {
        let t = self.next();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(Error::Syntax {
                line: t.line,
                col: t.col,
                msg: format!("expected {what}"),
            })
        }
    }
}

struct Parser<'a> {
    lex: Lexer,
    space: &'a Arc<ParamSpace>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek().kind {
                TokenKind::Plus => {
                    self.lex.next();
                    acc = &acc + &self.term()?;
                }
                TokenKind::Minus => {
                    self.lex.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while self.lex.peek().kind == TokenKind::Star {
            self.lex.next();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        let neg = if self.lex.peek().kind == TokenKind::Minus {
            self.lex.next();
            true
        } else {
            false
        };
        let mut val = self.atom()?;
        if self.lex.peek().kind == TokenKind::Caret {
            self.lex.next();
            let t = self.lex.next();
            let exp = match t.kind {
                TokenKind::Nat(n) => u32::try_from(&n).map_err(|_| Error::Syntax {
                    line: t.line,
                    col: t.col,
                    msg: "exponent too large".to_string(),
                })?,
                _ => {
                    return Err(Error::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: "exponent must be a nonnegative integer literal".to_string(),
                    })
                }
            };
            val = val.pow(exp);
        }
        Ok(if neg { -&val } else { val })
    }

    fn atom(&mut self) -> Result<Scalar> {
        let t = self.lex.next();
        match t.kind {
            TokenKind::Nat(n) => {
                // RATIONAL := NAT '/' NAT
                if self.lex.peek().kind == TokenKind::Slash {
                    self.lex.next();
                    let d = self.lex.next();
                    match d.kind {
                        TokenKind::Nat(den) => {
                            if den == BigInt::from(0) {
                                return Err(Error::Syntax {
                                    line: d.line,
                                    col: d.col,
                                    msg: "zero denominator".to_string(),
                                });
                            }
                            Ok(Scalar::from_rat(self.space, Rat::new(n, den)))
                        }
                        _ => Err(Error::Syntax {
                            line: d.line,
                            col: d.col,
                            msg: "expected denominator".to_string(),
                        }),
                    }
                } else {
                    Ok(Scalar::from_rat(self.space, Rat::from(n)))
                }
            }
            TokenKind::Ident(name) => match Scalar::param(self.space, &name) {
                Some(s) => Ok(s),
                None => Err(Error::UnknownIdentifier {
                    name,
                    line: t.line,
                    col: t.col,
                }),
            },
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.lex.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(Error::Syntax {
                line: t.line,
                col: t.col,
                msg: "expected a number, identifier or `(`".to_string(),
            }),
        }
    }
}

/// Value of a subexpression in a linear combination: a coefficient and at
/// most one basis vector factor.
struct CombValue {
    coef: Scalar,
    basis: Option<usize>,
}

struct CombParser<'a> {
    lex: Lexer,
    space: &'a Arc<ParamSpace>,
    dim: usize,
}

impl<'a> CombParser<'a> {
    fn expr(&mut self, acc: &mut [Scalar]) -> Result<()> {
        self.accumulate(acc, false)?;
        loop {
            match self.lex.peek().kind {
                TokenKind::Plus => {
                    self.lex.next();
                    self.accumulate(acc, false)?;
                }
                TokenKind::Minus => {
                    self.lex.next();
                    self.accumulate(acc, true)?;
                }
                _ => return Ok(()),
            }
        }
    }

    fn accumulate(&mut self, acc: &mut [Scalar], negate: bool) -> Result<()> {
        let t_pos = (self.lex.peek().line, self.lex.peek().col);
        let v = self.term()?;
        let k = v.basis.ok_or_else(|| Error::Syntax {
            line: t_pos.0,
            col: t_pos.1,
            msg: "combination term without a basis vector".to_string(),
        })?;
        let coef = if negate { -&v.coef } else { v.coef };
        acc[k] = &acc[k] + &coef;
        Ok(())
    }

    fn term(&mut self) -> Result<CombValue> {
        let mut acc = self.factor()?;
        while self.lex.peek().kind == TokenKind::Star {
            let t = self.lex.next();
            let rhs = self.factor()?;
            acc = match (acc.basis, rhs.basis) {
                (Some(_), Some(_)) => {
                    return Err(Error::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: "product of two basis vectors".to_string(),
                    })
                }
                (b, None) => CombValue {
                    coef: &acc.coef * &rhs.coef,
                    basis: b,
                },
                (None, b) => CombValue {
                    coef: &acc.coef * &rhs.coef,
                    basis: b,
                },
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CombValue> {
        let neg = if self.lex.peek().kind == TokenKind::Minus {
            self.lex.next();
            true
        } else {
            false
        };
        let mut val = self.atom()?;
        if self.lex.peek().kind == TokenKind::Caret {
            let t = self.lex.next();
            if val.basis.is_some() {
                return Err(Error::Syntax {
                    line: t.line,
                    col: t.col,
                    msg: "basis vectors cannot be raised to a power".to_string(),
                });
            }
            let e = self.lex.next();
            match e.kind {
                TokenKind::Nat(n) => {
                    let exp = u32::try_from(&n).map_err(|_| Error::Syntax {
                        line: e.line,
                        col: e.col,
                        msg: "exponent too large".to_string(),
                    })?;
                    val.coef = val.coef.pow(exp);
                }
                _ => {
                    return Err(Error::Syntax {
                        line: e.line,
                        col: e.col,
                        msg: "exponent must be a nonnegative integer literal".to_string(),
                    })
                }
            }
        }
        if neg {
            val.coef = -&val.coef;
        }
        Ok(val)
    }

    fn atom(&mut self) -> Result<CombValue> {
        let t = self.lex.next();
        let scalar = |s: Scalar| CombValue {
            coef: s,
            basis: None,
        };
        match t.kind {
            TokenKind::Nat(n) => {
                if self.lex.peek().kind == TokenKind::Slash {
                    self.lex.next();
                    let d = self.lex.next();
                    match d.kind {
                        TokenKind::Nat(den) if den != BigInt::from(0) => Ok(scalar(
                            Scalar::from_rat(self.space, Rat::new(n, den)),
                        )),
                        TokenKind::Nat(_) => Err(Error::Syntax {
                            line: d.line,
                            col: d.col,
                            msg: "zero denominator".to_string(),
                        }),
                        _ => Err(Error::Syntax {
                            line: d.line,
                            col: d.col,
                            msg: "expected denominator".to_string(),
                        }),
                    }
                } else {
                    Ok(scalar(Scalar::from_rat(self.space, Rat::from(n))))
                }
            }
            TokenKind::Ident(name) => {
                if let Some(rest) = name.strip_prefix('e') {
                    if let Ok(k) = rest.parse::<usize>() {
                        if k == 0 || k > self.dim {
                            return Err(Error::Syntax {
                                line: t.line,
                                col: t.col,
                                msg: format!("basis index out of range: e{k}"),
                            });
                        }
                        return Ok(CombValue {
                            coef: Scalar::one(self.space),
                            basis: Some(k - 1),
                        });
                    }
                }
                match Scalar::param(self.space, &name) {
                    Some(s) => Ok(scalar(s)),
                    None => Err(Error::UnknownIdentifier {
                        name,
                        line: t.line,
                        col: t.col,
                    }),
                }
            }
            TokenKind::LParen => {
                // parenthesized subexpressions are pure scalars
                let mut p = Parser {
                    lex: Lexer {
                        tokens: Vec::new(),
                        pos: 0,
                    },
                    space: self.space,
                };
                std::mem::swap(&mut p.lex, &mut self.lex);
                let inner = p.expr();
                std::mem::swap(&mut p.lex, &mut self.lex);
                let inner = inner?;
                self.lex.expect(TokenKind::RParen, "`)`")?;
                Ok(scalar(inner))
            }
            _ => Err(Error::Syntax {
                line: t.line,
                col: t.col,
                msg: "expected a number, identifier or `(`".to_string(),
            }),
        }
    }
}

/// Parse a linear combination of basis vectors `e1..e<dim>` with scalar
/// expression coefficients; returns the component vector.
pub(crate) fn parse_combination(
    text: &str,
    space: &Arc<ParamSpace>,
    dim: usize,
) -> Result<Vec<Scalar>> {
    let mut p = CombParser {
        lex: Lexer::new(text)?,
        space,
        dim,
    };
    let mut acc = vec![Scalar::zero(space); dim];
    p.expr(&mut acc)?;
    let t = p.lex.peek();
    if t.kind != TokenKind::Eof {
        return Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: "trailing input".to_string(),
        });
    }
    Ok(acc)
}

/// Parse an expression over the given parameter space.
pub fn parse_expr(text: &str, space: &Arc<ParamSpace>) -> Result<Scalar> {
    let mut p = Parser {
        lex: Lexer::new(text)?,
        space,
    };
    let val = p.expr()?;
    let t = p.lex.peek();
    if t.kind != TokenKind::Eof {
        return Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: "trailing input".to_string(),
        });
    }
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use std::collections::BTreeMap;

    fn space6() -> Arc<ParamSpace> {
        ParamSpace::new(["l1", "l2", "l3", "l4", "m1", "m2"]).unwrap()
    }

    #[test]
    fn single_term() {
        let sp = space6();
        let s = parse_expr("2*m1", &sp).unwrap();
        assert_eq!(s, Scalar::param(&sp, "m1").unwrap().scale(&rat(2, 1)));
    }

    #[test]
    fn negated_sum_of_squares() {
        // hand-built term map oracle for -(l1^2 + l2^2 - l3^2 - l4^2)
        let sp = space6();
        let s = parse_expr("-(l1^2 + l2^2 - l3^2 - l4^2)", &sp).unwrap();
        let l = |n: &str| Scalar::param(&sp, n).unwrap();
        let oracle = &(&(-&l("l1").pow(2)) - &l("l2").pow(2)) + &(&l("l3").pow(2) + &l("l4").pow(2));
        assert_eq!(s, oracle);
    }

    #[test]
    fn rational_fold() {
        let sp = space6();
        let s = parse_expr("1/2 * (3 - 1)", &sp).unwrap();
        assert_eq!(s, Scalar::one(&sp));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let sp = space6();
        match parse_expr("l1 + ", &sp) {
            Err(Error::Syntax { line: 1, col, .. }) => assert_eq!(col, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_expr("l1 + zz", &sp) {
            Err(Error::UnknownIdentifier { name, .. }) => assert_eq!(name, "zz"),
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        assert!(parse_expr("l1^m1", &sp).is_err());
        assert!(parse_expr("1/0", &sp).is_err());
        assert!(parse_expr("2 l1", &sp).is_err(), "no implicit multiplication");
    }

    #[test]
    fn print_parse_round_trip() {
        let sp = space6();
        for text in [
            "2*m1 - 3/2*l1^2*m2 + l3*l4",
            "-(l1^2 + l2^2 - l3^2 - l4^2)",
            "0",
            "m1^2 - m2^2",
        ] {
            let s = parse_expr(text, &sp).unwrap();
            let round = parse_expr(&s.to_string(), &sp).unwrap();
            assert_eq!(s, round);
        }
    }

    #[test]
    fn eval_after_parse_is_homomorphic() {
        let sp = space6();
        let a = parse_expr("m1^2 - m2^2 + l1*l3", &sp).unwrap();
        let b = parse_expr("2*m1 + l2", &sp).unwrap();
        let mut assign = BTreeMap::new();
        for (n, v) in [("l1", 2), ("l2", -1), ("l3", 3), ("l4", 0), ("m1", 1), ("m2", 5)] {
            assign.insert(n.to_string(), rat(v, 1));
        }
        let lhs = (&a * &b).eval_rat(&assign).unwrap();
        let rhs = a.eval_rat(&assign).unwrap() * b.eval_rat(&assign).unwrap();
        assert_eq!(lhs, rhs);
    }
}

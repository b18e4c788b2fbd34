use super::ast::Expr;
use super::lexer::{tokenize, Tok, Token};
use super::SyntaxError;

/// Deep enough for any hand-written transform, shallow enough for the stack.
const MAX_DEPTH: usize = 256;

const OPERAND: &[&str] = &["identifier", "number", "`(`", "`<->`"];

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.at + 1).min(self.tokens.len() - 1)].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn enter(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(SyntaxError {
                position: self.pos(),
                expected: vec![format!("at most {MAX_DEPTH} levels of nesting")],
                found: self.peek().describe(),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = if add { Expr::add(lhs, rhs) } else { Expr::sub(lhs, rhs) };
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        if let (Tok::Number(lambda), Tok::Times) = (self.peek(), self.peek2()) {
            let lambda = *lambda;
            self.bump();
            self.bump();
            self.enter()?;
            let inner = self.term()?;
            self.depth -= 1;
            return Ok(Expr::scale(lambda, inner));
        }
        self.unary()
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::neg(inner));
        }
        self.atom()
    }

    fn gray(&mut self) -> Result<f64, SyntaxError> {
        match *self.peek() {
            Tok::Number(v) if v > -1.0 && v < 1.0 => {
                self.bump();
                Ok(v)
            }
            Tok::Number(_) => Err(self.error(&["gray level strictly inside (-1, 1)"])),
            _ => Err(self.error(&["number"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(match self.peek() {
                    Tok::PosSuffix => {
                        self.bump();
                        Expr::PosPart(name)
                    }
                    Tok::NegSuffix => {
                        self.bump();
                        Expr::NegPart(name)
                    }
                    _ => Expr::Var(name),
                })
            }
            Tok::Number(_) => Ok(Expr::Gray(self.gray()?)),
            Tok::LParen => {
                self.bump();
                if matches!((self.peek(), self.peek2()), (Tok::Number(_), Tok::Comma)) {
                    let r = self.gray()?;
                    self.expect(Tok::Comma, &["`,`"])?;
                    let g = self.gray()?;
                    self.expect(Tok::Comma, &["`,`"])?;
                    let b = self.gray()?;
                    self.expect(Tok::RParen, &["`)`"])?;
                    return Ok(Expr::Color([r, g, b]));
                }
                let inner = self.expr()?;
                self.expect(Tok::RParen, &["`<+>`", "`<->`", "`)`"])?;
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        at: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        let mut expected = vec!["`<+>`", "`<->`", "end of input"];
        if matches!(p.peek(), Tok::Times) {
            expected.insert(0, "`<x>` only after a number");
        }
        return Err(p.error(&expected));
    }
    Ok(e)
}

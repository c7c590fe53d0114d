use super::{ExprError, Node};

const FUNCTIONS: [&str; 4] = ["sqrt", "exp", "log", "abs"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

pub(super) fn valid_varname(name: &str) -> bool {
    let b = name.as_bytes();
    !b.is_empty()
        && is_ident_start(b[0])
        && b.iter().all(|&c| is_ident_char(c))
        && !FUNCTIONS.contains(&name)
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let b = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if i < b.len() && b[i] == b'.' {
                    i += 1;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i == start + 1 && b[start] == b'.' {
                    return Err(ExprError::Syntax {
                        pos: start,
                        message: "expected digits in numeric literal".into(),
                    });
                }
                if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                    let mut j = i + 1;
                    if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                        j += 1;
                    }
                    if j < b.len() && b[j].is_ascii_digit() {
                        i = j;
                        while i < b.len() && b[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ExprError::Syntax {
                    pos: start,
                    message: format!("invalid numeric literal `{text}`"),
                })?;
                if !value.is_finite() {
                    return Err(ExprError::Syntax {
                        pos: start,
                        message: format!("numeric literal `{text}` out of range"),
                    });
                }
                toks.push((Tok::Num(value), start));
                continue;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < b.len() && is_ident_char(b[i]) {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(ExprError::Syntax {
                    pos: i,
                    message: format!("unexpected character `{}`", &src[i..].chars().next().unwrap()),
                });
            }
        };
        toks.push((tok, i));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    var: &'a str,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ExprError::Syntax { pos: self.here(), message: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // Unary minus binds tighter than * and /, looser than ^.
    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else {
            self.factor()
        }
    }

    // Right-associative power; the exponent may carry its own leading minus,
    // so `x^-2` reads as `x^(-2)` while `-x^2` reads as `-(x^2)`.
    fn factor(&mut self) -> Result<Node, ExprError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exponent = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                Node::Neg(Box::new(self.factor()?))
            } else {
                self.factor()?
            };
            Ok(Node::Pow(Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Node, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Node::Const(v)),
            Some(Tok::Ident(name)) => {
                if name == self.var {
                    Ok(Node::Var)
                } else if FUNCTIONS.contains(&name.as_str()) {
                    self.expect(Tok::LParen, &format!("`(` after function `{name}`"))?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "closing `)`")?;
                    let arg = Box::new(arg);
                    Ok(match name.as_str() {
                        "sqrt" => Node::Sqrt(arg),
                        "exp" => Node::Exp(arg),
                        "log" => Node::Log(arg),
                        _ => Node::Abs(arg),
                    })
                } else {
                    Err(ExprError::UnknownIdentifier { pos, name })
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            _ => Err(ExprError::Syntax {
                pos,
                message: "expected a number, variable, function call or `(`".into(),
            }),
        }
    }
}

pub(super) fn parse_tree(source: &str, varname: &str) -> Result<Node, ExprError> {
    let toks = lex(source)?;
    if toks.is_empty() {
        return Err(ExprError::Syntax { pos: 0, message: "empty expression".into() });
    }
    let mut parser = Parser { toks, pos: 0, var: varname, end: source.len() };
    let root = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(ExprError::Syntax {
            pos: parser.here(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(root)
}

//! Arithmetic expression mini-language for problem definitions.
//!
//! Grammar (usual precedence, `^` right-associative and binding tighter
//! than unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?
//! atom   := number | 'pi' | 'x' | 't' | 'y' | func '(' expr ')' | '(' expr ')'
//! func   := sqrt | sin | cos | exp | ln | abs | gamma
//! ```

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    T,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::T => "t",
            Var::Y => "y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
    Exp,
    Ln,
    Abs,
    Gamma,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Parse error with a 1-based position.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

impl Expr {
    /// Evaluate with the given variable bindings.
    pub fn eval(&self, x: f64, t: f64, y: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Pi => std::f64::consts::PI,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::T) => t,
            Expr::Var(Var::Y) => y,
            Expr::Neg(e) => -e.eval(x, t, y),
            Expr::Bin(op, a, b) => {
                let (va, vb) = (a.eval(x, t, y), b.eval(x, t, y));
                match op {
                    BinOp::Add => va + vb,
                    BinOp::Sub => va - vb,
                    BinOp::Mul => va * vb,
                    BinOp::Div => va / vb,
                    BinOp::Pow => va.powf(vb),
                }
            }
            Expr::Call(f, e) => {
                let v = e.eval(x, t, y);
                match f {
                    Func::Sqrt => v.sqrt(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Ln => v.ln(),
                    Func::Abs => v.abs(),
                    Func::Gamma => fide_core::gamma(v),
                }
            }
        }
    }

    /// Record every variable the expression mentions.
    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Expr::Neg(e) | Expr::Call(_, e) => e.collect_vars(out),
            Expr::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Num(_) | Expr::Pi => {}
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }
}

// fully parenthesized printing keeps parse(print(e)) structurally equal to e
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Var(v) => write!(f, "{}", v.name()),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str, line: usize) -> Result<Vec<(Token, usize)>, ParseError> {
        let mut lx = Lexer { src: src.as_bytes(), pos: 0, line };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            if lx.pos >= lx.src.len() {
                break;
            }
            let col = lx.pos + 1;
            let c = lx.src[lx.pos];
            let token = match c {
                b'+' => {
                    lx.pos += 1;
                    Token::Plus
                }
                b'-' => {
                    lx.pos += 1;
                    Token::Minus
                }
                b'*' => {
                    lx.pos += 1;
                    Token::Star
                }
                b'/' => {
                    lx.pos += 1;
                    Token::Slash
                }
                b'^' => {
                    lx.pos += 1;
                    Token::Caret
                }
                b'(' => {
                    lx.pos += 1;
                    Token::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Token::RParen
                }
                b'0'..=b'9' | b'.' => lx.number(col)?,
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => lx.ident(),
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character '{}'", other as char),
                    })
                }
            };
            out.push((token, col));
        }
        Ok(out)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self, col: usize) -> Result<Token, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && matches!(self.src[self.pos], b'0'..=b'9' | b'.') {
            self.pos += 1;
        }
        // exponent part
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let mut peek = self.pos + 1;
            if peek < self.src.len() && matches!(self.src[peek], b'+' | b'-') {
                peek += 1;
            }
            if peek < self.src.len() && self.src[peek].is_ascii_digit() {
                self.pos = peek;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map(Token::Num).map_err(|_| ParseError {
            line: self.line,
            col,
            message: format!("malformed number '{text}'"),
        })
    }

    fn ident(&mut self) -> Token {
        let start = self.pos;
        while self.pos < self.src.len()
            && matches!(self.src[self.pos], b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')
        {
            self.pos += 1;
        }
        Token::Ident(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

/// Parse an expression; `line` annotates error positions for multi-line
/// sources.
pub fn parse_expression_at(src: &str, line: usize) -> Result<Expr, ParseError> {
    let tokens = Lexer::tokenize(src, line)?;
    if tokens.is_empty() {
        return Err(ParseError { line, col: 1, message: "empty expression".into() });
    }
    let end_col = src.len() + 1;
    let mut p = Parser { tokens, pos: 0, line, end_col };
    let e = p.expr()?;
    if let Some((_, col)) = p.peek_with_col() {
        return Err(p.error(col, "unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_expression(src: &str) -> Result<Expr, ParseError> {
    parse_expression_at(src, 1)
}

impl Parser {
    fn error(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col, message: msg.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn peek_with_col(&self) -> Option<(&Token, usize)> {
        self.tokens.get(self.pos).map(|(t, c)| (t, *c))
    }

    fn advance(&mut self) -> Option<(Token, usize)> {
        let item = self.tokens.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn current_col(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek() {
            let op = match op {
                Token::Plus => BinOp::Add,
                Token::Minus => BinOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(op) = self.peek() {
            let op = match op {
                Token::Star => BinOp::Mul,
                Token::Slash => BinOp::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            let exponent = self.factor()?; // right-associative
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.current_col();
        match self.advance() {
            Some((Token::Num(v), _)) => Ok(Expr::Num(v)),
            Some((Token::LParen, _)) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some((Token::RParen, _)) => Ok(inner),
                    _ => Err(self.error(self.end_col.min(self.current_col()), "missing ')'")),
                }
            }
            Some((Token::Ident(name), _)) => self.ident_atom(&name, col),
            Some((tok, c)) => Err(self.error(c, format!("unexpected token {tok:?}"))),
            None => Err(self.error(self.end_col, "unexpected end of expression")),
        }
    }

    fn ident_atom(&mut self, name: &str, col: usize) -> Result<Expr, ParseError> {
        match name {
            "x" => return Ok(Expr::Var(Var::X)),
            "t" => return Ok(Expr::Var(Var::T)),
            "y" => return Ok(Expr::Var(Var::Y)),
            "pi" => return Ok(Expr::Pi),
            _ => {}
        }
        let func = match name {
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "abs" => Func::Abs,
            "gamma" => Func::Gamma,
            other => return Err(self.error(col, format!("unknown identifier '{other}'"))),
        };
        match self.advance() {
            Some((Token::LParen, _)) => {}
            _ => return Err(self.error(col, format!("function '{name}' needs '(...)' "))),
        }
        let arg = self.expr()?;
        match self.advance() {
            Some((Token::RParen, _)) => Ok(Expr::Call(func, Box::new(arg))),
            _ => Err(self.error(self.current_col(), "missing ')'")),
        }
    }
}

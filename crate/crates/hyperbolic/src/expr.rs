//! Recursive-descent parser and evaluator for the expression dialect used
//! by the command-line front end.
//!
//! Grammar (with `^` binding tighter than unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' int)?
//! atom   := number | var | 'i' | func '(' expr (',' int)? ')' | '(' expr ')'
//! ```
//!
//! Functions: `exp`, `cosh`, `sinh`, `conj`, `sqrt` (optional branch 1..4),
//! plus `cos` and `sin`, which are defined on the real subring only and
//! exist for curve components. `i` is a keyword atom, so `2i` is written
//! `2*i`. Number literals are decimal doubles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, CurveError};
use crate::diff::Field2;
use crate::number::{HNumber, NumberError};
use crate::roots::{self, RootsError};
use crate::specfun::{self, SeriesConfig, SeriesError};

/// Parse failure with a byte offset and the tokens that were expected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" | "))]
pub struct SyntaxError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<String>,
}

/// Evaluation failure tagged with the offending sub-expression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{kind} in `{at}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    /// Printed form of the sub-expression that failed.
    pub at: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalErrorKind {
    #[error("{0}")]
    Number(#[from] NumberError),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Roots(#[from] RootsError),
    #[error("function is defined on the real subring only")]
    RealOnly,
    #[error("expression does not evaluate to a real number")]
    NotReal,
}

/// Function names accepted by the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Cosh,
    Sinh,
    Conj,
    Sqrt,
    Cos,
    Sin,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Conj => "conj",
            Func::Sqrt => "sqrt",
            Func::Cos => "cos",
            Func::Sin => "sin",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "cosh" => Func::Cosh,
            "sinh" => Func::Sinh,
            "conj" => Func::Conj,
            "sqrt" => Func::Sqrt,
            "cos" => Func::Cos,
            "sin" => Func::Sin,
            _ => return None,
        })
    }
}

/// Parsed expression tree over one bound variable.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Const(HNumber),
    Var,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i32),
    Call(Func, Box<ExprAst>, Option<u8>),
}

#[derive(Clone, Debug, PartialEq)]
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
    Comma,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(v) => write!(f, "number {v}"),
            Token::Ident(s) => write!(f, "identifier {s:?}"),
            Token::Plus => write!(f, "'+'"),
            Token::Minus => write!(f, "'-'"),
            Token::Star => write!(f, "'*'"),
            Token::Slash => write!(f, "'/'"),
            Token::Caret => write!(f, "'^'"),
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::Comma => write!(f, "','"),
            Token::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Token, usize)>, SyntaxError> {
        let mut lex = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lex.next_token()?;
            let end = tok == Token::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn next_token(&mut self) -> Result<(Token, usize), SyntaxError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let at = self.pos;
        if self.pos >= bytes.len() {
            return Ok((Token::End, at));
        }
        let c = bytes[self.pos];
        let single = match c {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((tok, at));
        }
        if c.is_ascii_digit() || c == b'.' {
            let start = self.pos;
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
                self.pos += 1;
            }
            // Optional exponent part.
            if self.pos < bytes.len() && matches!(bytes[self.pos], b'e' | b'E') {
                let mut probe = self.pos + 1;
                if probe < bytes.len() && matches!(bytes[probe], b'+' | b'-') {
                    probe += 1;
                }
                if probe < bytes.len() && bytes[probe].is_ascii_digit() {
                    self.pos = probe;
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                }
            }
            let text = &self.src[start..self.pos];
            let value = text.parse::<f64>().map_err(|_| SyntaxError {
                offset: start,
                found: format!("{text:?}"),
                expected: vec!["number".into()],
            })?;
            return Ok((Token::Num(value), at));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((Token::Ident(self.src[start..self.pos].to_string()), at));
        }
        Err(SyntaxError {
            offset: at,
            found: format!("{:?}", &self.src[at..at + 1]),
            expected: vec!["operator".into(), "number".into(), "identifier".into()],
        })
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
    var: String,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.cursor].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.cursor].0.clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, expected: &str) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[expected]))
        }
    }

    fn unexpected(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Token::Slash => {
                    self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, SyntaxError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, SyntaxError> {
        let base = self.atom()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let exponent = self.int_literal("integer exponent")?;
            return Ok(ExprAst::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn int_literal(&mut self, what: &str) -> Result<i32, SyntaxError> {
        let negative = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Token::Num(v) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => {
                self.bump();
                Ok(if negative { -(v as i32) } else { v as i32 })
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, SyntaxError> {
        match self.peek().clone() {
            Token::Num(v) => {
                self.bump();
                Ok(ExprAst::Const(HNumber::from_real(v)))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Token::Ident(name) => {
                if name == "i" {
                    self.bump();
                    return Ok(ExprAst::Const(HNumber::I));
                }
                if name == self.var {
                    self.bump();
                    return Ok(ExprAst::Var);
                }
                if let Some(func) = Func::from_name(&name) {
                    self.bump();
                    self.expect(Token::LParen, "'('")?;
                    let arg = self.expr()?;
                    let branch = if *self.peek() == Token::Comma {
                        self.bump();
                        let b = self.int_literal("branch 1..4")?;
                        if !(1..=4).contains(&b) {
                            return Err(self.unexpected(&["branch 1..4"]));
                        }
                        Some(b as u8)
                    } else {
                        None
                    };
                    if branch.is_some() && func != Func::Sqrt {
                        return Err(self.unexpected(&["')' (only sqrt takes a branch)"]));
                    }
                    self.expect(Token::RParen, "')'")?;
                    return Ok(ExprAst::Call(func, Box::new(arg), branch));
                }
                Err(self.unexpected(&[
                    &format!("variable {:?}", self.var),
                    "'i'",
                    "function name",
                ]))
            }
            _ => Err(self.unexpected(&["number", "'('", "identifier", "'-'"])),
        }
    }
}

/// Parses `src` as an expression in the named variable.
pub fn parse(src: &str, var: &str) -> Result<ExprAst, SyntaxError> {
    let tokens = Lexer::tokens(src)?;
    let mut parser = Parser { tokens, cursor: 0, var: var.to_string() };
    let ast = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected(&["end of input", "operator"]));
    }
    Ok(ast)
}

/// Operator precedence tier used by the printer.
fn tier(ast: &ExprAst) -> u8 {
    match ast {
        ExprAst::Add(..) | ExprAst::Sub(..) => 0,
        ExprAst::Mul(..) | ExprAst::Div(..) => 1,
        ExprAst::Neg(..) => 2,
        ExprAst::Pow(..) => 3,
        ExprAst::Const(..) | ExprAst::Var | ExprAst::Call(..) => 4,
    }
}

/// Prints with the variable name the AST was parsed against.
pub struct DisplayWith<'a> {
    ast: &'a ExprAst,
    var: &'a str,
}

impl ExprAst {
    pub fn display<'a>(&'a self, var: &'a str) -> DisplayWith<'a> {
        DisplayWith { ast: self, var }
    }
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(
            f: &mut fmt::Formatter<'_>,
            ast: &ExprAst,
            var: &str,
            min_tier: u8,
        ) -> fmt::Result {
            if tier(ast) < min_tier {
                write!(f, "(")?;
                walk(f, ast, var)?;
                write!(f, ")")
            } else {
                walk(f, ast, var)
            }
        }
        fn walk(f: &mut fmt::Formatter<'_>, ast: &ExprAst, var: &str) -> fmt::Result {
            match ast {
                ExprAst::Const(z) => {
                    // Negative or composite constants need parens to relex.
                    if z.im == 0.0 && z.re >= 0.0 {
                        write!(f, "{}", z.re)
                    } else if *z == HNumber::I {
                        write!(f, "i")
                    } else {
                        write!(f, "({z})")
                    }
                }
                ExprAst::Var => write!(f, "{var}"),
                ExprAst::Neg(inner) => {
                    write!(f, "-")?;
                    child(f, inner, var, 2)
                }
                ExprAst::Add(a, b) => {
                    child(f, a, var, 0)?;
                    write!(f, " + ")?;
                    child(f, b, var, 1)
                }
                ExprAst::Sub(a, b) => {
                    child(f, a, var, 0)?;
                    write!(f, " - ")?;
                    child(f, b, var, 1)
                }
                ExprAst::Mul(a, b) => {
                    child(f, a, var, 1)?;
                    write!(f, "*")?;
                    child(f, b, var, 2)
                }
                ExprAst::Div(a, b) => {
                    child(f, a, var, 1)?;
                    write!(f, "/")?;
                    child(f, b, var, 2)
                }
                ExprAst::Pow(base, e) => {
                    child(f, base, var, 4)?;
                    write!(f, "^{e}")
                }
                ExprAst::Call(func, arg, branch) => {
                    write!(f, "{}(", func.name())?;
                    walk(f, arg, var)?;
                    if let Some(b) = branch {
                        write!(f, ", {b}")?;
                    }
                    write!(f, ")")
                }
            }
        }
        walk(f, self.ast, self.var)
    }
}

fn fail<T>(kind: impl Into<EvalErrorKind>, ast: &ExprAst) -> Result<T, EvalError> {
    Err(EvalError { kind: kind.into(), at: ast.display("z").to_string() })
}

/// Strict recursive evaluation over the ring.
pub fn eval_hyperbolic(
    ast: &ExprAst,
    binding: HNumber,
    cfg: &SeriesConfig,
) -> Result<HNumber, EvalError> {
    match ast {
        ExprAst::Const(z) => Ok(*z),
        ExprAst::Var => Ok(binding),
        ExprAst::Neg(a) => Ok(-eval_hyperbolic(a, binding, cfg)?),
        ExprAst::Add(a, b) => {
            Ok(eval_hyperbolic(a, binding, cfg)? + eval_hyperbolic(b, binding, cfg)?)
        }
        ExprAst::Sub(a, b) => {
            Ok(eval_hyperbolic(a, binding, cfg)? - eval_hyperbolic(b, binding, cfg)?)
        }
        ExprAst::Mul(a, b) => {
            Ok(eval_hyperbolic(a, binding, cfg)? * eval_hyperbolic(b, binding, cfg)?)
        }
        ExprAst::Div(a, b) => {
            let num = eval_hyperbolic(a, binding, cfg)?;
            let den = eval_hyperbolic(b, binding, cfg)?;
            match num.div(den) {
                Ok(v) => Ok(v),
                Err(e) => fail(e, ast),
            }
        }
        ExprAst::Pow(base, e) => {
            let b = eval_hyperbolic(base, binding, cfg)?;
            match b.powi(*e) {
                Ok(v) => Ok(v),
                Err(e) => fail(e, ast),
            }
        }
        ExprAst::Call(func, arg, branch) => {
            let a = eval_hyperbolic(arg, binding, cfg)?;
            match func {
                Func::Exp => specfun::exp(a, cfg).or_else(|e| fail(e, ast)),
                Func::Cosh => specfun::cosh(a, cfg).or_else(|e| fail(e, ast)),
                Func::Sinh => specfun::sinh(a, cfg).or_else(|e| fail(e, ast)),
                Func::Conj => Ok(a.conj()),
                Func::Sqrt => {
                    let sheet = branch.unwrap_or(1);
                    roots::sqrt_branch(a, sheet).or_else(|e| fail(e, ast))
                }
                Func::Cos | Func::Sin => {
                    if a.im != 0.0 {
                        return fail(EvalErrorKind::RealOnly, ast);
                    }
                    let v = if *func == Func::Cos { a.re.cos() } else { a.re.sin() };
                    Ok(HNumber::from_real(v))
                }
            }
        }
    }
}

/// Evaluates an expression in a real variable; the result must stay on the
/// real subring.
pub fn eval_real(ast: &ExprAst, binding: f64) -> Result<f64, EvalError> {
    let v = eval_hyperbolic(ast, HNumber::from_real(binding), &SeriesConfig::default())?;
    if v.im != 0.0 {
        return fail(EvalErrorKind::NotReal, ast);
    }
    Ok(v.re)
}

/// Builds a field from an expression in `z`; evaluation errors become
/// out-of-domain values.
pub fn field_from_expr(ast: &ExprAst, cfg: SeriesConfig) -> Field2 {
    let ast = ast.clone();
    Field2::from_fallible_map(move |z| eval_hyperbolic(&ast, z, &cfg))
}

/// One bound of a curve's parameter interval: a number or `"inf"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Finite(f64),
    Named(String),
}

impl Bound {
    fn value(&self) -> Result<f64, CurveSpecError> {
        match self {
            Bound::Finite(v) => Ok(*v),
            Bound::Named(s) => match s.trim() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                other => Err(CurveSpecError::BadBound(other.to_string())),
            },
        }
    }
}

/// JSON description of a parametric curve with expression components.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSpec {
    /// Expression for x(t) in the variable `t`.
    pub x: String,
    /// Expression for y(t) in the variable `t`.
    pub y: String,
    /// Parameter interval; `"-inf"` / `"inf"` mark improper ends.
    pub t: (Bound, Bound),
    #[serde(default)]
    pub singular_ts: Vec<f64>,
    #[serde(default)]
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveSpecError {
    #[error("bad curve JSON: {0}")]
    Json(String),
    #[error("component {which}: {err}")]
    Component { which: &'static str, err: SyntaxError },
    #[error("bad parameter bound {0:?}")]
    BadBound(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<CurveSpec, CurveSpecError> {
        serde_json::from_str(text).map_err(|e| CurveSpecError::Json(e.to_string()))
    }

    /// Compiles the component expressions into a [`Curve`].
    pub fn build(&self) -> Result<Curve, CurveSpecError> {
        let x_ast = parse(&self.x, "t")
            .map_err(|err| CurveSpecError::Component { which: "x", err })?;
        let y_ast = parse(&self.y, "t")
            .map_err(|err| CurveSpecError::Component { which: "y", err })?;
        let span = (self.t.0.value()?, self.t.1.value()?);
        let xf = move |t: f64| eval_real(&x_ast, t).unwrap_or(f64::NAN);
        let yf = move |t: f64| eval_real(&y_ast, t).unwrap_or(f64::NAN);
        Ok(Curve::with_options(xf, yf, None, None, span, self.singular_ts.clone(), self.closed)?)
    }
}

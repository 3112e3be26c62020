//! Expression DSL for field components.
//!
//! ```text
//! program   := stmt ((';' | newline) stmt)*
//! stmt      := ('F1' | 'F2' | 'F3') '=' expr
//! expr      := term (('+' | '-') term)*
//! term      := unary (('*' | '/') unary)*
//! unary     := ('-' | '+') unary | power
//! power     := atom ('^' unary)?            right-associative
//! atom      := number | number 'i' | 'i' | 't' | ident
//!            | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! Unary minus binds looser than `^`, so `-t^2 = -(t^2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Values with magnitude above this are reported as singular.
pub const SINGULAR_MAGNITUDE: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Coth,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Coth => "coth",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn apply(self, z: C64) -> C64 {
        match self {
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Tan => z.sin() / z.cos(),
            Func::Cot => z.cos() / z.sin(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
            Func::Tanh => z.sinh() / z.cosh(),
            Func::Coth => z.cosh() / z.sinh(),
            Func::Exp => z.exp(),
            Func::Ln => z.ln(),
            Func::Sqrt => z.sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprNode {
    Number(f64),
    /// Imaginary literal `x·i`.
    Imaginary(f64),
    Time,
    Param(String),
    Neg(Box<ExprNode>),
    Call(Func, Box<ExprNode>),
    Binary(BinOp, Box<ExprNode>, Box<ExprNode>),
}

impl ExprNode {
    pub fn zero() -> Self {
        ExprNode::Number(0.0)
    }

    pub fn parse(text: &str) -> Result<ExprNode> {
        let mut p = Parser::new(text)?;
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    /// Parameter names referenced by the tree.
    pub fn params(&self, out: &mut Vec<String>) {
        match self {
            ExprNode::Param(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            ExprNode::Neg(a) | ExprNode::Call(_, a) => a.params(out),
            ExprNode::Binary(_, a, b) => {
                a.params(out);
                b.params(out);
            }
            _ => {}
        }
    }

    /// Evaluates at time `t`. Non-finite results and magnitudes above
    /// [`SINGULAR_MAGNITUDE`] are singularity errors.
    pub fn eval(&self, t: f64, params: &BTreeMap<String, C64>) -> Result<C64> {
        let v = self.eval_raw(t, params)?;
        if !v.is_finite() || v.norm() > SINGULAR_MAGNITUDE {
            return Err(Error::singular(t, format!("expression `{self}` evaluates to {v}")));
        }
        Ok(v)
    }

    fn eval_raw(&self, t: f64, params: &BTreeMap<String, C64>) -> Result<C64> {
        Ok(match self {
            ExprNode::Number(x) => C64::new(*x, 0.0),
            ExprNode::Imaginary(x) => C64::new(0.0, *x),
            ExprNode::Time => C64::new(t, 0.0),
            ExprNode::Param(name) => {
                *params.get(name).ok_or_else(|| Error::UnknownIdentifier(name.clone()))?
            }
            ExprNode::Neg(a) => {
                // `+ 0.0` clears signed zeros so `sqrt(-4)` lands on the principal branch.
                let v = -a.eval_raw(t, params)?;
                C64::new(v.re + 0.0, v.im + 0.0)
            }
            ExprNode::Call(f, a) => f.apply(a.eval_raw(t, params)?),
            ExprNode::Binary(op, a, b) => {
                let (x, y) = (a.eval_raw(t, params)?, b.eval_raw(t, params)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => pow(x, y),
                }
            }
        })
    }
}

fn pow(x: C64, y: C64) -> C64 {
    if y.im == 0.0 && y.re.fract() == 0.0 && y.re.abs() <= 64.0 {
        return x.powi(y.re as i32);
    }
    if x == C64::new(0.0, 0.0) {
        return if y.re > 0.0 { x } else { C64::new(f64::INFINITY, 0.0) };
    }
    x.powc(y)
}

/// Fully parenthesised so that printing and re-parsing reproduces the tree.
impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Number(x) => write!(f, "{x:?}"),
            ExprNode::Imaginary(x) => write!(f, "{x:?}i"),
            ExprNode::Time => write!(f, "t"),
            ExprNode::Param(p) => write!(f, "{p}"),
            ExprNode::Neg(a) => write!(f, "(-{a})"),
            ExprNode::Call(func, a) => write!(f, "{}({a})", func.name()),
            ExprNode::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// The three component trees of a program; omitted components are zero.
pub fn parse_program(text: &str) -> Result<[ExprNode; 3]> {
    let mut p = Parser::new(text)?;
    let mut out: [Option<ExprNode>; 3] = [None, None, None];
    loop {
        while p.peek() == &Tok::Sep {
            p.bump();
        }
        if p.peek() == &Tok::End {
            break;
        }
        let (line, col) = p.pos();
        let k = match p.bump() {
            Tok::Ident(name) => match name.as_str() {
                "F1" => 0,
                "F2" => 1,
                "F3" => 2,
                _ => return Err(syntax(line, col, format!("expected F1, F2 or F3, found `{name}`"))),
            },
            other => return Err(syntax(line, col, format!("expected F1, F2 or F3, found {other}"))),
        };
        if out[k].is_some() {
            return Err(syntax(line, col, format!("component F{} assigned twice", k + 1)));
        }
        p.expect(&Tok::Eq)?;
        out[k] = Some(p.expr()?);
        match p.peek() {
            Tok::Sep | Tok::End => {}
            other => {
                let (line, col) = p.pos();
                return Err(syntax(line, col, format!("unexpected {other} after expression")));
            }
        }
    }
    Ok(out.map(|e| e.unwrap_or_else(ExprNode::zero)))
}

/// Prints a program in the form accepted by [`parse_program`].
pub fn print_program(components: &[ExprNode; 3]) -> String {
    components
        .iter()
        .enumerate()
        .map(|(k, e)| format!("F{} = {e}", k + 1))
        .collect::<Vec<_>>()
        .join("; ")
}

fn syntax(line: usize, col: usize, msg: String) -> Error {
    Error::Syntax { line, col, msg }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Eq,
    Sep,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Imag(x) => write!(f, "imaginary literal {x}i"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Op(c) => write!(f, "`{c}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Sep => write!(f, "statement separator"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match ch {
            '\n' => {
                toks.push((Tok::Sep, l0, c0));
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => advance(1, &mut i),
            ';' => {
                toks.push((Tok::Sep, l0, c0));
                advance(1, &mut i);
            }
            '+' | '-' | '*' | '/' | '^' => {
                toks.push((Tok::Op(ch), l0, c0));
                advance(1, &mut i);
            }
            '(' => {
                toks.push((Tok::LParen, l0, c0));
                advance(1, &mut i);
            }
            ')' => {
                toks.push((Tok::RParen, l0, c0));
                advance(1, &mut i);
            }
            '=' => {
                toks.push((Tok::Eq, l0, c0));
                advance(1, &mut i);
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                // exponent only when digits follow, so `2e` stays an error
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let s: String = chars[start..j].iter().collect();
                let x: f64 = s
                    .parse()
                    .map_err(|_| syntax(l0, c0, format!("malformed number `{s}`")))?;
                let imag = j < chars.len()
                    && chars[j] == 'i'
                    && !chars.get(j + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_');
                if imag {
                    j += 1;
                    toks.push((Tok::Imag(x), l0, c0));
                } else {
                    toks.push((Tok::Num(x), l0, c0));
                }
                advance(j - start, &mut i);
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                toks.push((Tok::Ident(chars[start..j].iter().collect()), l0, c0));
                advance(j - start, &mut i);
            }
            other => return Err(syntax(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    toks.push((Tok::End, line, col));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn pos(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.pos];
        (l, c)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<()> {
        let (line, col) = self.pos();
        let got = self.bump();
        if &got == want {
            Ok(())
        } else {
            Err(syntax(line, col, format!("expected {want}, found {got}")))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.peek() == &Tok::End {
            Ok(())
        } else {
            let (line, col) = self.pos();
            Err(syntax(line, col, format!("unexpected trailing {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<ExprNode> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = ExprNode::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprNode> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = ExprNode::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprNode> {
        match *self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(ExprNode::Neg(Box::new(self.unary()?)))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExprNode> {
        let base = self.atom()?;
        if self.peek() == &Tok::Op('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(ExprNode::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprNode> {
        let (line, col) = self.pos();
        match self.bump() {
            Tok::Num(x) => Ok(ExprNode::Number(x)),
            Tok::Imag(x) => Ok(ExprNode::Imaginary(x)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if self.peek() == &Tok::LParen {
                    let func = Func::from_name(&name).ok_or_else(|| Error::UnknownFunction(name.clone()))?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    return Ok(ExprNode::Call(func, Box::new(arg)));
                }
                Ok(match name.as_str() {
                    "t" => ExprNode::Time,
                    "i" => ExprNode::Imaginary(1.0),
                    _ => ExprNode::Param(name),
                })
            }
            other => Err(syntax(line, col, format!("expected an operand, found {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, t: f64) -> C64 {
        ExprNode::parse(s).unwrap().eval(t, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1 + 2*3", 0.0), C64::new(7.0, 0.0));
        assert_eq!(ev("2^3^2", 0.0), C64::new(512.0, 0.0));
        assert_eq!(ev("-2^2", 0.0), C64::new(-4.0, 0.0));
        assert_eq!(ev("2^-1", 0.0), C64::new(0.5, 0.0));
        assert_eq!(ev("8/2/2", 0.0), C64::new(2.0, 0.0));
        assert_eq!(ev("1+2i", 0.0), C64::new(1.0, 2.0));
        assert_eq!(ev("i*i", 0.0), C64::new(-1.0, 0.0));
        assert_eq!(ev("3*t - t", 2.0), C64::new(4.0, 0.0));
        assert_eq!(ev("1.5e-1", 0.0), C64::new(0.15, 0.0));
        assert!((ev("sqrt(-4)", 0.0) - C64::new(0.0, 2.0)).norm() < 1e-15);
        assert!((ev("coth(1)", 0.0).re - 1.0 / 1f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn program_defaults_and_errors() {
        let p = parse_program("F3 = 2*t").unwrap();
        assert_eq!(p[0], ExprNode::zero());
        assert_eq!(p[2].eval(1.5, &BTreeMap::new()).unwrap(), C64::new(3.0, 0.0));

        let p = parse_program("F1 = a\nF3 = b*t + c/t;").unwrap();
        let mut names = vec![];
        p.iter().for_each(|e| e.params(&mut names));
        assert_eq!(names, ["a", "b", "c"]);

        match parse_program("F1 = 1 +\nF2 = )") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 9)),
            r => panic!("{r:?}"),
        }
        match parse_program("F1 = 1\nF2 = 2 * )") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 10)),
            r => panic!("{r:?}"),
        }
        assert!(matches!(parse_program("F1 = foo(t)"), Err(Error::UnknownFunction(f)) if f == "foo"));
        assert!(matches!(parse_program("F4 = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("F1 = 1 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("F1 = 1; F1 = 2"), Err(Error::Syntax { .. })));
        let e = ExprNode::parse("q*t").unwrap();
        assert!(matches!(e.eval(1.0, &BTreeMap::new()), Err(Error::UnknownIdentifier(q)) if q == "q"));
    }

    #[test]
    fn singularities_are_reported() {
        let e = ExprNode::parse("cot(t)").unwrap();
        assert!(matches!(e.eval(0.0, &BTreeMap::new()), Err(Error::Singularity { t, .. }) if t == 0.0));
        let e = ExprNode::parse("1/(t - 1)").unwrap();
        assert!(matches!(e.eval(1.0 + 1e-14, &BTreeMap::new()), Err(Error::Singularity { .. })));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["-t^2 + 3*sin(2*t)/(1 - t)", "a^b^c", "-(-t)", "2.5i*t - 1e-7", "exp(i*w*t)"] {
            let a = ExprNode::parse(s).unwrap();
            let b = ExprNode::parse(&a.to_string()).unwrap();
            assert_eq!(a, b, "{s} -> {a}");
        }
    }
}

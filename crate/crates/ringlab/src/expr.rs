//! Textual constructor expressions.
//!
//! The grammar is deliberately tiny: every expression is a constructor name
//! applied to a parenthesized, comma-separated argument list. Arguments are
//! nested expressions, integer literals (element indices or sizes) or one
//! of the named twist maps (`alpha0`, `id`).
//!
//! ```text
//! expr := NAME '(' arg (',' arg)* ')'
//! arg  := expr | INT | NAME
//! ```
//!
//! `parse` and `print` are mutually inverse on canonical forms: printing an
//! AST and parsing the result gives the same AST back, and the printed form
//! is what rings built from expressions carry as their name.

use std::fmt;
use thiserror::Error;

/// Endomorphism chosen by name in `skew_trivial(E, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaName {
    /// Kill every coefficient above degree zero; only defined on rings
    /// built by `truncpoly`.
    Alpha0,
    /// The identity map, defined on any ring.
    Id,
}

impl fmt::Display for AlphaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphaName::Alpha0 => "alpha0",
            AlphaName::Id => "id",
        })
    }
}

/// Abstract syntax of a ring constructor expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    /// Integers mod n.
    Zmod(u64),
    /// Full k-by-k matrices over the component ring.
    M(u32, Box<RingExpr>),
    /// Upper triangular k-by-k matrices.
    U(u32, Box<RingExpr>),
    /// Upper triangular k-by-k matrices with constant diagonal.
    D(u32, Box<RingExpr>),
    /// 3x3 matrices a*I + b*e12 + c*e13.
    S1(Box<RingExpr>),
    /// 3x3 matrices a*I + c*e13 + b*e23.
    S2(Box<RingExpr>),
    /// The 3x3 subring cut out by a-d = s*c and d-f = t*e; the two leading
    /// integers are element indices of central elements s and t.
    H(u64, u64, Box<RingExpr>),
    /// Ideal extension pairs (r, k) over Z_m with (r1,k1)(r2,k2) =
    /// (r1*r2 + k1*r2 + k2*r1, k1*k2).
    Dorroh(Box<RingExpr>, u64),
    /// Pairs (f, g) with (f,g)(h,t) = (f*h, alpha(f)*t + g*h).
    SkewTrivial(Box<RingExpr>, AlphaName),
    /// Polynomials of degree below d with x^d = 0.
    TruncPoly(Box<RingExpr>, u32),
    /// Direct product with componentwise operations.
    Prod(Box<RingExpr>, Box<RingExpr>),
    /// Corner ring e*R*e for the idempotent with the given index.
    Corner(Box<RingExpr>, u64),
    /// Quotient by the ideal generated by the listed element indices.
    Quot(Box<RingExpr>, Vec<u64>),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Zmod({n})"),
            RingExpr::M(k, e) => write!(f, "M({k}, {e})"),
            RingExpr::U(k, e) => write!(f, "U({k}, {e})"),
            RingExpr::D(k, e) => write!(f, "D({k}, {e})"),
            RingExpr::S1(e) => write!(f, "S1({e})"),
            RingExpr::S2(e) => write!(f, "S2({e})"),
            RingExpr::H(s, t, e) => write!(f, "H({s}, {t}, {e})"),
            RingExpr::Dorroh(e, m) => write!(f, "dorroh({e}, {m})"),
            RingExpr::SkewTrivial(e, a) => write!(f, "skew_trivial({e}, {a})"),
            RingExpr::TruncPoly(e, d) => write!(f, "truncpoly({e}, {d})"),
            RingExpr::Prod(a, b) => write!(f, "prod({a}, {b})"),
            RingExpr::Corner(e, i) => write!(f, "corner({e}, {i})"),
            RingExpr::Quot(e, gens) => {
                write!(f, "quot({e}")?;
                for g in gens {
                    write!(f, ", {g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            chars: src.char_indices().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let next = self.chars.next();
        if let Some((_, c)) = next {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        next
    }

    /// Next token plus its starting position, or `None` at end of input.
    fn next_tok(&mut self) -> Result<Option<(Tok, usize, usize)>, ParseError> {
        loop {
            match self.chars.peek() {
                Some(&(_, c)) if c.is_whitespace() => {
                    self.bump();
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let Some(&(start, c)) = self.chars.peek() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            c if c.is_ascii_digit() => {
                let mut end = start;
                while let Some(&(i, d)) = self.chars.peek() {
                    if d.is_ascii_digit() {
                        end = i + d.len_utf8();
                        self.bump();
                    } else {
                        break;
                    }
                }
                let text = &self.src[start..end];
                let n = text
                    .parse::<u64>()
                    .map_err(|_| self.err(format!("integer literal `{text}` out of range")))?;
                Tok::Int(n)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = start;
                while let Some(&(i, d)) = self.chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Name(self.src[start..end].to_string())
            }
            other => return Err(self.err(format!("unexpected character `{other}`"))),
        };
        Ok(Some((tok, line, col)))
    }
}

/// Parsed argument before arity checking.
#[derive(Debug)]
enum Arg {
    Expr(RingExpr),
    Int(u64),
    Name(String),
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<(Tok, usize, usize)>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next_tok()?;
        Ok(Parser { lexer, lookahead })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lookahead.as_ref().map(|(t, _, _)| t)
    }

    fn pos(&self) -> (usize, usize) {
        match &self.lookahead {
            Some((_, l, c)) => (*l, *c),
            None => (self.lexer.line, self.lexer.col),
        }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.pos();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> Result<Option<(Tok, usize, usize)>, ParseError> {
        let out = self.lookahead.take();
        self.lookahead = self.lexer.next_tok()?;
        Ok(out)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.advance()? {
            Some((t, _, _)) if t == want => Ok(()),
            Some((t, line, col)) => Err(ParseError {
                line,
                col,
                message: format!("expected {what}, found {t:?}"),
            }),
            None => Err(self.err_here(format!("expected {what}, found end of input"))),
        }
    }

    fn parse_arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some((Tok::Int(n), _, _)) = self.advance()? else {
                    unreachable!()
                };
                Ok(Arg::Int(n))
            }
            Some(Tok::Name(_)) => {
                let Some((Tok::Name(name), line, col)) = self.advance()? else {
                    unreachable!()
                };
                if matches!(self.peek(), Some(Tok::LParen)) {
                    Ok(Arg::Expr(self.parse_call(name, line, col)?))
                } else {
                    Ok(Arg::Name(name))
                }
            }
            _ => Err(self.err_here("expected an argument")),
        }
    }

    fn parse_call(&mut self, name: String, line: usize, col: usize) -> Result<RingExpr, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if !matches!(self.peek(), Some(Tok::RParen)) {
            loop {
                args.push(self.parse_arg()?);
                if matches!(self.peek(), Some(Tok::Comma)) {
                    self.advance()?;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        let fail = |message: String| ParseError { line, col, message };
        let arity = |n: usize, args: &[Arg]| -> Result<(), ParseError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(fail(format!(
                    "`{name}` takes {n} argument(s), found {}",
                    args.len()
                )))
            }
        };
        fn int(name: &str, which: &str, a: &Arg, line: usize, col: usize) -> Result<u64, ParseError> {
            match a {
                Arg::Int(n) => Ok(*n),
                _ => Err(ParseError {
                    line,
                    col,
                    message: format!("`{name}` wants an integer for {which}"),
                }),
            }
        }
        fn sub(name: &str, which: &str, a: Arg, line: usize, col: usize) -> Result<RingExpr, ParseError> {
            match a {
                Arg::Expr(e) => Ok(e),
                _ => Err(ParseError {
                    line,
                    col,
                    message: format!("`{name}` wants a ring expression for {which}"),
                }),
            }
        }
        let expr = match name.as_str() {
            "Zmod" => {
                arity(1, &args)?;
                RingExpr::Zmod(int(&name, "the modulus", &args[0], line, col)?)
            }
            "M" | "U" | "D" => {
                arity(2, &args)?;
                let k = int(&name, "the matrix size", &args[0], line, col)?;
                if k == 0 || k > 8 {
                    return Err(fail(format!("matrix size {k} is not in 1..=8")));
                }
                let mut it = args.into_iter();
                it.next();
                let e = Box::new(sub(&name, "the entry ring", it.next().unwrap(), line, col)?);
                match name.as_str() {
                    "M" => RingExpr::M(k as u32, e),
                    "U" => RingExpr::U(k as u32, e),
                    _ => RingExpr::D(k as u32, e),
                }
            }
            "S1" | "S2" => {
                arity(1, &args)?;
                let e = Box::new(sub(
                    &name,
                    "the entry ring",
                    args.into_iter().next().unwrap(),
                    line,
                    col,
                )?);
                if name == "S1" {
                    RingExpr::S1(e)
                } else {
                    RingExpr::S2(e)
                }
            }
            "H" => {
                arity(3, &args)?;
                let s = int(&name, "s", &args[0], line, col)?;
                let t = int(&name, "t", &args[1], line, col)?;
                let mut it = args.into_iter();
                it.next();
                it.next();
                RingExpr::H(
                    s,
                    t,
                    Box::new(sub(&name, "the entry ring", it.next().unwrap(), line, col)?),
                )
            }
            "dorroh" => {
                arity(2, &args)?;
                let m = int(&name, "the integer modulus", &args[1], line, col)?;
                let e = Box::new(sub(&name, "the base ring", args.into_iter().next().unwrap(), line, col)?);
                RingExpr::Dorroh(e, m)
            }
            "skew_trivial" => {
                arity(2, &args)?;
                let mut it = args.into_iter();
                let e = Box::new(sub(&name, "the base ring", it.next().unwrap(), line, col)?);
                let alpha = match it.next().unwrap() {
                    Arg::Name(n) if n == "alpha0" => AlphaName::Alpha0,
                    Arg::Name(n) if n == "id" => AlphaName::Id,
                    other => {
                        return Err(fail(format!(
                            "`skew_trivial` wants `alpha0` or `id` as the twist, found {other:?}"
                        )))
                    }
                };
                RingExpr::SkewTrivial(e, alpha)
            }
            "truncpoly" => {
                arity(2, &args)?;
                let d = int(&name, "the truncation degree", &args[1], line, col)?;
                if d == 0 || d > 16 {
                    return Err(fail(format!("truncation degree {d} is not in 1..=16")));
                }
                let e = Box::new(sub(&name, "the coefficient ring", args.into_iter().next().unwrap(), line, col)?);
                RingExpr::TruncPoly(e, d as u32)
            }
            "prod" => {
                arity(2, &args)?;
                let mut it = args.into_iter();
                let a = Box::new(sub(&name, "the first factor", it.next().unwrap(), line, col)?);
                let b = Box::new(sub(&name, "the second factor", it.next().unwrap(), line, col)?);
                RingExpr::Prod(a, b)
            }
            "corner" => {
                arity(2, &args)?;
                let i = int(&name, "the idempotent index", &args[1], line, col)?;
                let e = Box::new(sub(&name, "the ambient ring", args.into_iter().next().unwrap(), line, col)?);
                RingExpr::Corner(e, i)
            }
            "quot" => {
                if args.is_empty() {
                    return Err(fail("`quot` takes a ring and generator indices".into()));
                }
                let mut it = args.into_iter();
                let e = Box::new(sub(&name, "the ambient ring", it.next().unwrap(), line, col)?);
                let mut gens = Vec::new();
                for a in it {
                    gens.push(int(&name, "a generator index", &a, line, col)?);
                }
                RingExpr::Quot(e, gens)
            }
            other => return Err(fail(format!("unknown constructor `{other}`"))),
        };
        Ok(expr)
    }

    fn parse_expr(&mut self) -> Result<RingExpr, ParseError> {
        match self.advance()? {
            Some((Tok::Name(name), line, col)) => self.parse_call(name, line, col),
            Some((t, line, col)) => Err(ParseError {
                line,
                col,
                message: format!("expected a constructor name, found {t:?}"),
            }),
            None => Err(self.err_here("expected a constructor name, found end of input")),
        }
    }
}

/// Parse a constructor expression. Trailing garbage is an error.
pub fn parse(src: &str) -> Result<RingExpr, ParseError> {
    let mut p = Parser::new(src)?;
    let expr = p.parse_expr()?;
    if let Some((t, line, col)) = p.lookahead {
        return Err(ParseError {
            line,
            col,
            message: format!("unexpected trailing {t:?}"),
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_catalog_shapes() {
        let cases = [
            "Zmod(7)",
            "M(2, Zmod(2))",
            "U(2, Zmod(2))",
            "D(3, Zmod(2))",
            "S1(Zmod(2))",
            "S2(Zmod(2))",
            "H(0, 1, Zmod(2))",
            "dorroh(Zmod(2), 2)",
            "skew_trivial(truncpoly(Zmod(2), 3), alpha0)",
            "skew_trivial(Zmod(4), id)",
            "prod(Zmod(2), M(2, Zmod(2)))",
            "corner(U(2, Zmod(2)), 4)",
            "quot(D(3, Zmod(2)), 2, 3)",
        ];
        for src in cases {
            let e = parse(src).unwrap_or_else(|err| panic!("{src}: {err}"));
            assert_eq!(e.to_string(), src, "print is canonical for {src}");
        }
    }

    #[test]
    fn print_then_parse_is_identity() {
        let e = parse("skew_trivial(truncpoly(Zmod(2), 3), alpha0)").unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        let e = parse("quot(M(2, Zmod(4)), 1)").unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn whitespace_is_free() {
        assert_eq!(
            parse("  M ( 2 ,\n  Zmod( 2 ) )  ").unwrap(),
            parse("M(2, Zmod(2))").unwrap()
        );
    }

    #[test]
    fn errors_carry_line_and_column() {
        let err = parse("M(2, Zmod(2)").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("expected"), "{err}");

        let err = parse("M(2,\n  Wat(3))").unwrap_err();
        assert_eq!(err.line, 2, "{err}");
        assert_eq!(err.col, 3, "{err}");
        assert!(err.message.contains("unknown constructor"), "{err}");

        let err = parse("Zmod(2) Zmod(3)").unwrap_err();
        assert!(err.message.contains("trailing"), "{err}");

        let err = parse("Zmod(x)").unwrap_err();
        assert!(err.message.contains("integer"), "{err}");

        let err = parse("skew_trivial(Zmod(2), beta)").unwrap_err();
        assert!(err.message.contains("alpha0"), "{err}");
    }

    #[test]
    fn arity_is_checked() {
        assert!(parse("M(Zmod(2))").is_err());
        assert!(parse("Zmod()").is_err());
        assert!(parse("H(0, Zmod(2))").is_err());
        assert!(parse("prod(Zmod(2))").is_err());
    }
}

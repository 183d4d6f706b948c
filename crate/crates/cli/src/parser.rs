//! Text format for linear systems.
//!
//! ```text
//! # comment
//! vars = 4; unknowns = 1;
//! eq: y[4,4] = 0;
//! eq: y[3,4] - y[2,2];
//! eq: 1/2*z2[1] + z1[] = 0
//! ```
//!
//! A jet is a name followed by the 1-based variables it is differentiated
//! by; trailing digits in the name select the unknown (`z2` is unknown 2).

use std::fmt::Write as _;

use spencer_core::jetspace::{JetCoordinate, MultiIndex};
use spencer_core::pdesystem::{CoordinateChange, Equation, LinearSystem};
use spencer_core::ratlinalg::{Field, Matrix, Rational};
use spencer_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: variable {index} out of range 1..={n}")]
    VariableOutOfRange { line: usize, col: usize, index: usize, n: usize },
    #[error("{line}:{col}: unknown {index} out of range 1..={m}")]
    UnknownOutOfRange { line: usize, col: usize, index: usize, m: usize },
    #[error("{line}:{col}: {what} declared twice with different values ({first} and {second})")]
    Redeclared { line: usize, col: usize, what: &'static str, first: usize, second: usize },
    #[error(transparent)]
    System(#[from] CoreError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| syntax(ln + 1, col, format!("integer {s} is too large")))?;
                out.push(Token { tok: Tok::Int(v), line: ln + 1, col });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: ln + 1, col });
            } else if "=;:+-*/[],".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line: ln + 1, col });
                i += 1;
            } else {
                return Err(syntax(ln + 1, col, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, message: message.into() }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct SystemDocument {
    pub n: usize,
    pub m: usize,
    /// Letters of the first jet name, used when printing.
    pub symbol: String,
    pub sources: Vec<String>,
    pub system: LinearSystem,
}

/// Terms of one equation with the line and column where it starts.
type RawEquation = (Vec<(RawJet, Rational)>, usize, usize);

struct RawJet {
    unknown: usize,
    vars: Vec<usize>,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(syntax(l, c, message))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn at_statement_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if (s == "vars" || s == "unknowns" || s == "eq")
            && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Sym('=' | ':'))))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.int()?;
        let den = if self.eat('/') {
            let d = self.int()?;
            if d == 0 {
                return self.fail("zero denominator");
            }
            d
        } else {
            1
        };
        Ok(Rational::new(num.into(), den.into()))
    }

    fn jet(&mut self, symbol: &mut Option<String>) -> Result<RawJet, ParseError> {
        let (line, col) = self.here();
        let name = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.fail("expected a jet such as y[1,2]"),
        };
        self.pos += 1;
        let letters: String = name.trim_end_matches(|c: char| c.is_ascii_digit()).to_string();
        let digits = &name[letters.len()..];
        if letters.is_empty() {
            return Err(syntax(line, col, "jet name must start with a letter"));
        }
        let stem = symbol.get_or_insert_with(|| letters.clone());
        if *stem != letters {
            return Err(syntax(line, col, format!("every jet must use the name `{stem}`, found `{letters}`")));
        }
        let unknown = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| syntax(line, col, "bad unknown index"))? };
        self.expect('[')?;
        let mut vars = Vec::new();
        if !self.eat(']') {
            loop {
                vars.push(self.int()? as usize);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(RawJet { unknown, vars, line, col })
    }

    fn expr(&mut self, symbol: &mut Option<String>) -> Result<Vec<(RawJet, Rational)>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let c = if matches!(self.peek(), Some(Tok::Int(_))) {
                let c = self.rational()?;
                self.expect('*')?;
                c
            } else {
                Rational::from_integer(1.into())
            };
            let jet = self.jet(symbol)?;
            terms.push((jet, if negative { -c } else { c }));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }
}

pub fn parse(text: &str) -> Result<SystemDocument, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map_or((1, 1), |t| (t.line, t.col + 1));
    let mut p = Parser { toks, pos: 0, end };
    let mut n: Option<(usize, (usize, usize))> = None;
    let mut m: Option<(usize, (usize, usize))> = None;
    let mut symbol: Option<String> = None;
    let mut raw: Vec<RawEquation> = Vec::new();
    let mut sources = Vec::new();
    while p.pos < p.toks.len() {
        let (line, col) = p.here();
        let kw = match p.peek() {
            Some(Tok::Ident(s)) if p.at_statement_start() => s.clone(),
            _ => return p.fail("expected 'vars =', 'unknowns =' or 'eq:'"),
        };
        p.pos += 1;
        match kw.as_str() {
            "vars" | "unknowns" => {
                p.expect('=')?;
                let v = p.int()? as usize;
                let (slot, what) = if kw == "vars" { (&mut n, "vars") } else { (&mut m, "unknowns") };
                if let Some((first, _)) = *slot {
                    if first != v {
                        return Err(ParseError::Redeclared { line, col, what, first, second: v });
                    }
                }
                *slot = Some((v, (line, col)));
            }
            _ => {
                p.expect(':')?;
                let start = p.pos;
                let terms = p.expr(&mut symbol)?;
                if p.eat('=') {
                    match p.int() {
                        Ok(0) => {}
                        _ => {
                            p.pos -= 1;
                            return p.fail("right-hand side must be 0");
                        }
                    }
                }
                sources.push(source_text(&p.toks[start..p.pos]));
                raw.push((terms, line, col));
            }
        }
        p.eat(';');
        if p.pos < p.toks.len() && !p.at_statement_start() {
            return p.fail("expected ';' or a new statement");
        }
    }
    let max_var = raw.iter().flat_map(|(t, ..)| t.iter().flat_map(|(j, _)| j.vars.iter().copied())).max().unwrap_or(0);
    let max_unknown = raw.iter().flat_map(|(t, ..)| t.iter().map(|(j, _)| j.unknown)).max().unwrap_or(1);
    let n = n.map_or(max_var.max(1), |v| v.0);
    let m = m.map_or(max_unknown, |v| v.0);
    let mut equations = Vec::new();
    for (terms, line, col) in raw {
        let mut jets = Vec::new();
        for (j, c) in terms {
            if let Some(&bad) = j.vars.iter().find(|&&v| v == 0 || v > n) {
                return Err(ParseError::VariableOutOfRange { line: j.line, col: j.col, index: bad, n });
            }
            if j.unknown == 0 || j.unknown > m {
                return Err(ParseError::UnknownOutOfRange { line: j.line, col: j.col, index: j.unknown, m });
            }
            let index = MultiIndex::from_derivatives(n, &j.vars)?;
            jets.push((JetCoordinate::new(j.unknown - 1, index), c));
        }
        match Equation::new(jets) {
            Ok(eq) => equations.push(eq),
            Err(CoreError::EmptyEquation) => return Err(syntax(line, col, "equation cancels to 0")),
            Err(e) => return Err(e.into()),
        }
    }
    let symbol = symbol.unwrap_or_else(|| "y".to_string());
    let system = LinearSystem::new(n, m, equations)?.with_display(&symbol, 0);
    Ok(SystemDocument { n, m, symbol, sources, system })
}

fn source_text(toks: &[Token]) -> String {
    let mut s = String::new();
    for t in toks {
        match &t.tok {
            Tok::Ident(x) => s.push_str(x),
            Tok::Int(v) => s.push_str(&v.to_string()),
            Tok::Sym(c @ ('+' | '-' | '=')) => {
                let _ = write!(s, " {c} ");
            }
            Tok::Sym(c) => s.push(*c),
        }
    }
    s.trim().to_string()
}

/// Prints a jet in input syntax, e.g. `y[1,3]` or `z2[]`.
pub fn jet_source(jet: &JetCoordinate, symbol: &str, m: usize) -> String {
    let vars: Vec<String> = jet.index.derivatives().iter().map(|v| v.to_string()).collect();
    let name = if m == 1 { symbol.to_string() } else { format!("{symbol}{}", jet.unknown + 1) };
    format!("{name}[{}]", vars.join(","))
}

/// Prints a system so that [`parse`] reads it back unchanged.
pub fn render(sys: &LinearSystem) -> String {
    let mut out = format!("vars = {}; unknowns = {};\n", sys.n(), sys.m());
    for eq in sys.equations() {
        let mut line = String::new();
        for (k, (jet, c)) in eq.terms().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => line.push('-'),
                (0, false) => {}
                (_, true) => line.push_str(" - "),
                (_, false) => line.push_str(" + "),
            }
            if !abs.is_one() {
                let _ = write!(line, "{abs}*");
            }
            line.push_str(&jet_source(jet, sys.symbol(), sys.m()));
        }
        let _ = writeln!(out, "eq: {line} = 0;");
    }
    out
}

/// Reads a frame written as rows separated by `;`, entries by `,`, for
/// example `1,-1,0;0,1,0;0,0,1`. Entries may be fractions `a/b`.
pub fn parse_frame(text: &str) -> Result<CoordinateChange, ParseError> {
    let mut rows = Vec::new();
    for (r, row) in text.split(';').enumerate() {
        let mut entries = Vec::new();
        for cell in row.split(',') {
            let cell = cell.trim();
            let value: Rational = cell.parse().map_err(|_| syntax(1, r + 1, format!("bad frame entry `{cell}`")))?;
            entries.push(value);
        }
        rows.push(entries);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(syntax(1, 1, format!("frame must be square with {n} rows")));
    }
    Ok(CoordinateChange::new(Matrix::from_rows(rows))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flagship_system() {
        let doc = parse("vars=4; unknowns=1; eq: y[4,4]=0; eq: y[3,4]-y[2,2]=0; eq: y[3,3]=0; eq: y[2,4]-y[1,1]=0").unwrap();
        assert_eq!((doc.n, doc.m, doc.system.equations().len()), (4, 1, 4));
        let labels: Vec<String> = doc.system.equations().iter().map(|e| doc.system.render_equation(e)).collect();
        assert_eq!(labels, ["y_{44}", "y_{34} - y_{22}", "y_{33}", "y_{24} - y_{11}"]);
        assert_eq!(doc.sources[1], "y[3,4] - y[2,2] = 0");
    }

    #[test]
    fn rational_coefficient() {
        let doc = parse("vars = 2\neq: 1/2*y[1] = 0").unwrap();
        let eq = &doc.system.equations()[0];
        let (_, c) = eq.terms().next().unwrap();
        assert_eq!(*c, Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn out_of_range_variable() {
        let err = parse("vars=3; eq: y[5]").unwrap_err();
        assert_eq!(err, ParseError::VariableOutOfRange { line: 1, col: 13, index: 5, n: 3 });
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("vars=2;\neq: y[1] + * y[2]").unwrap_err() {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 12)),
            e => panic!("{e}"),
        }
        assert!(matches!(parse("vars=2; vars=3;"), Err(ParseError::Redeclared { .. })));
        assert!(matches!(parse("eq: y[1] = 1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("unknowns=1; eq: y2[1]"), Err(ParseError::UnknownOutOfRange { .. })));
    }

    #[test]
    fn several_unknowns_and_order_zero() {
        let doc = parse("# companion-like\nvars=2; unknowns=2\neq: z1[1] - z2[]\neq: -z2[2,1] + 3*z1[]").unwrap();
        assert_eq!(doc.symbol, "z");
        assert_eq!(doc.system.render_equation(&doc.system.equations()[0]), "z^1_{1} - z^2");
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "vars=3; eq: y[3,3,3] - y[1,1]; eq: y[2,2] - y[1,3]",
            "vars=2; unknowns=2; eq: 2/3*z1[1] - z2[]; eq: z2[2,2] + z1[1,2]",
            "vars=3",
        ] {
            let a = parse(text).unwrap();
            let b = parse(&render(&a.system)).unwrap();
            assert_eq!(a.system.equations(), b.system.equations());
            assert_eq!((a.n, a.m), (b.n, b.m));
        }
    }

    #[test]
    fn frames() {
        let f = parse_frame("1,-1,0; 0,1,0; 0,0,1").unwrap();
        assert_eq!(f.n(), 3);
        assert!(parse_frame("1,2;2,4").is_err());
        assert!(parse_frame("1,0;0").is_err());
        assert!(parse_frame("1/2,0;0,x").is_err());
        assert!(parse_frame("1/2,0;0,3").is_ok());
    }

    #[test]
    fn one_name_stem_per_file() {
        match parse("eq: u[1] + v[2]") {
            Err(ParseError::Syntax { line, col, message }) => {
                assert_eq!((line, col), (1, 12));
                assert!(message.contains("`u`"));
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(parse("eq: z1[1] - z2[]").is_ok());
    }
}

//! Element expressions: sums of products of scalars, `q`, `z<j>^<int>`
//! and `x<i>^<nat>` in written order.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{Atom, Word};
use crate::base::BaseElement;
use crate::field::Scalar;
use crate::order::SignedIndex;

/// A parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// What names an expression may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scope {
    pub t: usize,
    pub s: usize,
    pub allow_q: bool,
}

impl Scope {
    pub fn scalars(allow_q: bool) -> Self {
        Scope { t: 0, s: 0, allow_q }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    Z(usize),
    X(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Q => write!(f, "`q`"),
            Tok::Z(j) => write!(f, "`z{j}`"),
            Tok::X(i) => write!(f, "`x{i}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    let digits = |k: &mut usize| {
        let start = *k;
        while *k < chars.len() && chars[*k].is_ascii_digit() {
            *k += 1;
        }
        chars[start..*k].iter().collect::<String>()
    };
    while k < chars.len() {
        let c = chars[k];
        let col = col0 + k;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            toks.push((tok, col));
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let d = digits(&mut k);
            toks.push((Tok::Int(d.parse().expect("digits")), col));
            continue;
        }
        if c == 'q' || c == 'z' || c == 'x' {
            k += 1;
            let d = digits(&mut k);
            if k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                return Err(ParseError::new(line, col, "unknown identifier"));
            }
            let tok = match (c, d.as_str()) {
                ('q', "") => Tok::Q,
                ('q', _) => return Err(ParseError::new(line, col, "unknown identifier")),
                (_, "") => {
                    return Err(ParseError::new(line, col, format!("`{c}` needs an index, e.g. `{c}1`")))
                }
                (_, d) => {
                    let idx: usize = d
                        .parse()
                        .map_err(|_| ParseError::new(line, col, "index too large"))?;
                    if idx == 0 {
                        return Err(ParseError::new(line, col, "indices start at 1"));
                    }
                    if c == 'z' {
                        Tok::Z(idx)
                    } else {
                        Tok::X(idx)
                    }
                }
            };
            toks.push((tok, col));
            continue;
        }
        return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
    }
    toks.push((Tok::End, col0 + chars.len()));
    Ok(Lexer { toks })
}

/// A formal sum of words.
type Value = Vec<Word>;

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    scope: Scope,
}

const MAX_POWER: i64 = 256;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc.extend(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc.extend(negate(self.term()?));
                }
                _ => return Ok(collect(acc)),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = product(&acc, &rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let col = self.col();
                    let rhs = self.unary()?;
                    let inv = invert(&rhs).map_err(|m| self.err(col, m))?;
                    acc = product(&acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(negate(self.unary()?))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let k = self.exponent()?;
        if k.abs() > MAX_POWER {
            return Err(self.err(col, format!("exponent {k} exceeds {MAX_POWER}")));
        }
        if let Some((c, e)) = base_monomial(&base) {
            let c = c.pow(k).map_err(|_| self.err(col, "division by zero"))?;
            return Ok(vec![monomial_word(c, e.map(|e| scale_exponent(&e, k)))]);
        }
        let factor = if k >= 0 {
            base
        } else {
            invert(&base).map_err(|m| self.err(col, m))?
        };
        let mut out = vec![Word::scalar(Scalar::one())];
        for _ in 0..k.unsigned_abs() {
            out = product(&out, &factor);
        }
        Ok(collect(out))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let col = self.col();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let k = match self.bump() {
            Tok::Int(n) => i64::try_from(n).map_err(|_| self.err(col, "exponent too large"))?,
            other => return Err(self.err(col, format!("expected an integer exponent, found {other}"))),
        };
        if paren {
            self.expect_rparen()?;
        }
        Ok(if negative { -k } else { k })
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::RParen => Ok(()),
            other => Err(self.err(col, format!("expected `)`, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Int(n) => Ok(vec![Word::scalar(Scalar::from_bigint(n))]),
            Tok::Q => {
                if !self.scope.allow_q {
                    return Err(self.err(col, "`q` is not available over the field `rational`"));
                }
                Ok(vec![Word::scalar(Scalar::q())])
            }
            Tok::Z(j) => {
                if j > self.scope.t {
                    return Err(self.err(col, format!("unknown generator `z{j}` (base has {} variables)", self.scope.t)));
                }
                let z = BaseElement::variable_power(self.scope.t, j - 1, 1);
                Ok(vec![Word::new(Scalar::one(), vec![Atom::Base(z)])])
            }
            Tok::X(i) => {
                if i > self.scope.s {
                    return Err(self.err(col, format!("unknown generator `x{i}` (there are {} generators)", self.scope.s)));
                }
                Ok(vec![Word::gens(&[i - 1])])
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect_rparen()?;
                Ok(v)
            }
            other => Err(self.err(col, format!("unexpected {other}"))),
        }
    }
}

/// Merges words with identical factors.
fn collect(v: Value) -> Value {
    let mut out: Value = Vec::with_capacity(v.len());
    for w in v {
        match out.iter_mut().find(|o| o.atoms == w.atoms) {
            Some(o) => o.prefactor = &o.prefactor + &w.prefactor,
            None => out.push(w),
        }
    }
    out.retain(|w| !w.prefactor.is_zero());
    out
}

fn negate(v: Value) -> Value {
    v.into_iter()
        .map(|w| Word::new(-&w.prefactor, w.atoms))
        .collect()
}

fn product(a: &Value, b: &Value) -> Value {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.concat(y)))
        .filter(|w| !w.prefactor.is_zero())
        .collect()
}

/// The scalar a value denotes, if it has no base or generator factors.
fn as_scalar(v: &Value) -> Option<Scalar> {
    v.iter()
        .try_fold(Scalar::zero(), |acc, w| w.atoms.is_empty().then(|| &acc + &w.prefactor))
}

/// `c · z^β` as `(c, Some(β))`, or `(c, None)` for a bare scalar.
fn base_monomial(v: &Value) -> Option<(Scalar, Option<SignedIndex>)> {
    if let Some(c) = as_scalar(v) {
        return Some((c, None));
    }
    let [w] = v.as_slice() else { return None };
    let mut c = w.prefactor.clone();
    let mut exponent: Option<SignedIndex> = None;
    for a in &w.atoms {
        let Atom::Base(b) = a else { return None };
        let mut terms = b.terms();
        let (Some((e, k)), None) = (terms.next(), terms.next()) else {
            return None;
        };
        c = &c * k;
        exponent = Some(match exponent {
            None => e.clone(),
            Some(acc) => acc.add(e),
        });
    }
    Some((c, exponent))
}

fn scale_exponent(e: &SignedIndex, k: i64) -> SignedIndex {
    SignedIndex::new(e.entries().iter().map(|&x| x * k).collect())
}

fn monomial_word(c: Scalar, e: Option<SignedIndex>) -> Word {
    let atoms = match e {
        Some(e) if !e.is_zero() => vec![Atom::Base(BaseElement::monomial(e, Scalar::one()))],
        _ => Vec::new(),
    };
    Word::new(c, atoms)
}

/// Inverse of a nonzero scalar or of `c · z^β`.
fn invert(v: &Value) -> Result<Value, String> {
    if v.iter().any(|w| w.atoms.iter().any(|a| matches!(a, Atom::Gen(_)))) {
        return Err("x-generators are not invertible".into());
    }
    let (c, e) = base_monomial(v).ok_or("only scalars and monomials in z can be inverted")?;
    let inv = c.inv().map_err(|_| "division by zero".to_string())?;
    Ok(vec![monomial_word(inv, e.map(|e| e.neg()))])
}

/// Parses `text` (found at `line`, starting at column `col0`) as a sum of
/// words.
pub fn parse_words_at(text: &str, scope: Scope, line: usize, col0: usize) -> Result<Vec<Word>, ParseError> {
    let lexer = lex(text, line, col0)?;
    if lexer.toks.len() == 1 {
        return Err(ParseError::new(line, col0, "empty expression"));
    }
    let mut p = Parser {
        toks: &lexer.toks,
        pos: 0,
        line,
        scope,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(p.col(), format!("unexpected {}", p.peek())));
    }
    Ok(v)
}

pub fn parse_words(text: &str, scope: Scope) -> Result<Vec<Word>, ParseError> {
    parse_words_at(text, scope, 1, 1)
}

pub fn parse_scalar_at(text: &str, allow_q: bool, line: usize, col0: usize) -> Result<Scalar, ParseError> {
    let v = parse_words_at(text, Scope::scalars(allow_q), line, col0)?;
    as_scalar(&v).ok_or_else(|| ParseError::new(line, col0, "expected a scalar"))
}

pub fn parse_scalar(text: &str, allow_q: bool) -> Result<Scalar, ParseError> {
    parse_scalar_at(text, allow_q, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope() -> Scope {
        Scope { t: 1, s: 2, allow_q: true }
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q/(-1 + q^2)", true).unwrap().to_string(), "q/(-1 + q^2)");
        assert_eq!(parse_scalar("1/(2*q)", true).unwrap().to_string(), "1/(2*q)");
        assert_eq!(parse_scalar("-3/6", false).unwrap().to_string(), "-1/2");
        assert_eq!(parse_scalar("q^-2", true).unwrap(), Scalar::q_pow(-2));
        assert_eq!(parse_scalar("1/q^2", true).unwrap(), Scalar::q_pow(-2));
        assert_eq!(parse_scalar("(q - q^-1)", true).unwrap().to_string(), "(-1 + q^2)/q");
        assert!(parse_scalar("q", false).is_err());
        assert!(parse_scalar("1/0", false).is_err());
    }

    #[test]
    fn words_in_written_order() {
        let w = parse_words("x2*x1", scope()).unwrap();
        assert_eq!(w, vec![Word::gens(&[1, 0])]);
        let w = parse_words("(q+1) * z1^-2 * x2 * x1^3", scope()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].atoms.len(), 5);
        assert_eq!(parse_words("z1^-2", scope()).unwrap().len(), 1);
        assert_eq!(w[0].prefactor.to_string(), "1 + q");
        let pure = parse_words("(q - q^-1) * z1", scope()).unwrap();
        assert!(pure.iter().all(Word::is_pure_base));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_words("x1^-1", scope()).unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(e.message.contains("not invertible"));
        let e = parse_words("x1 + x3", scope()).unwrap_err();
        assert_eq!(e.col, 6);
        let e = parse_words("x1 * (z1 + 1)^-1", scope()).unwrap_err();
        assert!(e.message.contains("monomials"), "{}", e.message);
        let e = parse_words("x1 +", scope()).unwrap_err();
        assert!(e.message.contains("end of input"));
        let e = parse_words("2 $ 3", scope()).unwrap_err();
        assert_eq!(e.col, 3);
        assert!(parse_words("", scope()).is_err());
        assert!(parse_words("y1", scope()).is_err());
        assert!(parse_words("x0", scope()).is_err());
    }
}

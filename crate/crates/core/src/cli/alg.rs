//! The line-oriented `.alg` presentation format.
//!
//! ```text
//! # quantum plane
//! field rational_q
//! gens 2
//! q x2 x1 = q
//! ```
//!
//! Keywords: `field rational|rational_q`, `base <t>`, `gens <s>`,
//! `grading <n>`, `order lex [(p…)] | deglex [(w…)] | matrix (row) … [then
//! <order>]`, `deg x<i> = (a1,…,an)`, `q x<j> x<i> = <scalar>`,
//! `comm x<i> z<j> = <scalar>`, `tail x<j> x<i> = <expression>`. Missing
//! `q`/`comm` entries are 1, missing tails are 0, and missing degrees are
//! unit vectors (which needs `grading` = `gens`). Tails are written in
//! standard form: scalar, then `z` factors, then `x` factors with
//! nondecreasing indices.

use std::fmt;

use thiserror::Error;

use super::expr::{parse_scalar_at, parse_words_at, ParseError, Scope};
use crate::algebra::{make_presentation, AlgebraError, Atom, Element, Presentation, PresentationData, Word};
use crate::base::BaseElement;
use crate::field::FieldKind;
use crate::order::{AdmissibleOrder, MultiIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("syntax error at {0}")]
    Syntax(ParseError),
    #[error("invalid presentation: {0}")]
    Semantic(AlgebraError),
}

impl From<ParseError> for AlgError {
    fn from(e: ParseError) -> Self {
        AlgError::Syntax(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("order {0:?} has no textual form")]
    UnsupportedOrder(AdmissibleOrder),
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]`.
    col0: usize,
}

impl Cursor {
    fn new(text: &str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col0,
        }
    }

    fn col(&self) -> usize {
        self.col0 + self.pos
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let col = self.col();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| ParseError::new(self.line, col, format!("expected an integer, found `{s}`")))
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        let col = self.col();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| ParseError::new(self.line, col, "expected a natural number"))
    }

    /// `(a, b, …)`
    fn tuple(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
    }

    /// `x<i>` or `z<j>` with the given prefix; returns the 0-based index.
    fn generator(&mut self, prefix: char, count: usize) -> Result<usize, ParseError> {
        self.skip_ws();
        let col = self.col();
        let w = self.word();
        let idx = w
            .strip_prefix(prefix)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| ParseError::new(self.line, col, format!("expected `{prefix}<index>`, found `{w}`")))?;
        if idx > count {
            return Err(ParseError::new(
                self.line,
                col,
                format!("unknown generator `{prefix}{idx}` (only {count} declared)"),
            ));
        }
        Ok(idx - 1)
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let col = self.col();
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        (s, col)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// Parses an order spec; `n` is the grading rank.
fn parse_order(cur: &mut Cursor, n: usize) -> Result<AdmissibleOrder, ParseError> {
    let col = {
        cur.skip_ws();
        cur.col()
    };
    match cur.word().as_str() {
        "lex" => {
            if cur.peek() == Some('(') {
                let p = cur.tuple()?;
                let priority = p
                    .iter()
                    .map(|&k| usize::try_from(k - 1).map_err(|_| cur.err("lex priorities are 1-based")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AdmissibleOrder::Lex { priority })
            } else {
                Ok(AdmissibleOrder::lex(n))
            }
        }
        "deglex" => {
            if cur.peek() == Some('(') {
                let w = cur.tuple()?;
                let weights = w
                    .iter()
                    .map(|&k| u64::try_from(k).map_err(|_| cur.err("weights must be nonnegative")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AdmissibleOrder::DegThenLex { weights })
            } else {
                Ok(AdmissibleOrder::deglex(n))
            }
        }
        "matrix" => {
            let mut rows = Vec::new();
            while cur.peek() == Some('(') {
                rows.push(cur.tuple()?);
            }
            if rows.is_empty() {
                return Err(cur.err("expected matrix rows `(a, b, …)`"));
            }
            let inner_rank = rows[0].len();
            let save = cur.pos;
            let inner = if cur.word() == "then" {
                parse_order(cur, inner_rank)?
            } else {
                cur.pos = save;
                AdmissibleOrder::lex(inner_rank)
            };
            Ok(AdmissibleOrder::matrix_then_lex(rows, inner))
        }
        other => Err(ParseError::new(
            cur.line,
            col,
            format!("unknown order `{other}` (expected lex, deglex or matrix)"),
        )),
    }
}

fn words_to_standard(words: Vec<Word>, t: usize, s: usize) -> Result<Element, String> {
    let mut out = Element::zero(t, s);
    for w in words {
        let mut base = BaseElement::constant(t, w.prefactor);
        let mut gamma = vec![0u32; s];
        let mut last_gen = 0;
        let mut seen_gen = false;
        for a in w.atoms {
            match a {
                Atom::Base(b) if !seen_gen => base = base.mul(&b),
                Atom::Base(_) => return Err("tails must be in standard form: z factors before x factors".into()),
                Atom::Gen(i) => {
                    if seen_gen && i < last_gen {
                        return Err("tails must be in standard form: x factors with nondecreasing indices".into());
                    }
                    seen_gen = true;
                    last_gen = i;
                    gamma[i] += 1;
                }
            }
        }
        out.add_term(MultiIndex::new(gamma), base);
    }
    Ok(out)
}

struct Line {
    number: usize,
    keyword: String,
    cursor: Cursor,
}

fn split_lines(text: &str) -> Vec<Line> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut cursor = Cursor::new(content, k + 1, 1);
        let keyword = cursor.word();
        out.push(Line {
            number: k + 1,
            keyword,
            cursor,
        });
    }
    out
}

#[derive(Default)]
struct Header {
    field: Option<FieldKind>,
    t: Option<usize>,
    s: Option<usize>,
    n: Option<usize>,
}

/// Parses the file into raw data without validating it.
pub fn parse_presentation_data(text: &str) -> Result<PresentationData, ParseError> {
    let mut lines = split_lines(text);
    let mut h = Header::default();
    // pass 1: sizes and field
    for line in lines.iter_mut() {
        let dup = |what: &str| ParseError::new(line.number, 1, format!("duplicate `{what}` line"));
        match line.keyword.as_str() {
            "field" => {
                if h.field.is_some() {
                    return Err(dup("field"));
                }
                line.cursor.skip_ws();
                let col = line.cursor.col();
                h.field = Some(match line.cursor.word().as_str() {
                    "rational" => FieldKind::Rational,
                    "rational_q" => FieldKind::RationalFunction,
                    other => {
                        return Err(ParseError::new(
                            line.number,
                            col,
                            format!("unknown field `{other}` (expected rational or rational_q)"),
                        ))
                    }
                });
                line.cursor.finish()?;
            }
            "base" | "gens" | "grading" => {
                let slot = match line.keyword.as_str() {
                    "base" => &mut h.t,
                    "gens" => &mut h.s,
                    _ => &mut h.n,
                };
                if slot.is_some() {
                    return Err(dup(&line.keyword));
                }
                *slot = Some(line.cursor.nat()?);
                line.cursor.finish()?;
            }
            "order" | "deg" | "q" | "comm" | "tail" => {}
            other => {
                return Err(ParseError::new(line.number, 1, format!("unknown keyword `{other}`")));
            }
        }
    }
    let field = h.field.unwrap_or(FieldKind::RationalFunction);
    let allow_q = field == FieldKind::RationalFunction;
    let t = h.t.unwrap_or(0);
    let s = h
        .s
        .ok_or_else(|| ParseError::new(1, 1, "missing `gens` line"))?;
    let n = h.n.unwrap_or(s);

    // pass 2: order and degrees
    let mut order = None;
    let mut degrees: Vec<Option<MultiIndex>> = vec![None; s];
    for line in lines.iter_mut() {
        match line.keyword.as_str() {
            "order" => {
                if order.is_some() {
                    return Err(ParseError::new(line.number, 1, "duplicate `order` line"));
                }
                order = Some(parse_order(&mut line.cursor, n)?);
                line.cursor.finish()?;
            }
            "deg" => {
                let i = line.cursor.generator('x', s)?;
                line.cursor.expect('=')?;
                let col = line.cursor.col();
                let row = line.cursor.tuple()?;
                line.cursor.finish()?;
                if row.len() != n {
                    return Err(ParseError::new(
                        line.number,
                        col,
                        format!("degree has {} entries, grading rank is {n}", row.len()),
                    ));
                }
                let entries = row
                    .iter()
                    .map(|&a| u32::try_from(a).map_err(|_| ParseError::new(line.number, col, "degrees are natural numbers")))
                    .collect::<Result<Vec<_>, _>>()?;
                if degrees[i].replace(MultiIndex::new(entries)).is_some() {
                    return Err(ParseError::new(line.number, 1, format!("duplicate `deg x{}` line", i + 1)));
                }
            }
            _ => {}
        }
    }
    let degrees = degrees
        .into_iter()
        .enumerate()
        .map(|(i, d)| match d {
            Some(d) => Ok(d),
            None if n == s => Ok(MultiIndex::unit(n, i)),
            None => Err(ParseError::new(
                1,
                1,
                format!("missing `deg x{}` (defaults need grading = gens)", i + 1),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut data = PresentationData::new(field, t, s, n)
        .with_order(order.unwrap_or_else(|| AdmissibleOrder::deglex(n)))
        .with_degrees(degrees);

    // pass 3: relations
    let mut seen = std::collections::BTreeSet::new();
    for line in lines.iter_mut() {
        let kw = line.keyword.clone();
        if !matches!(kw.as_str(), "q" | "comm" | "tail") {
            continue;
        }
        line.cursor.skip_ws();
        let start = line.cursor.col();
        let first = line.cursor.generator('x', s)?;
        let second = if kw == "comm" {
            line.cursor.generator('z', t)?
        } else {
            line.cursor.generator('x', s)?
        };
        if kw != "comm" && first <= second {
            return Err(ParseError::new(
                line.number,
                start,
                format!("`{kw} x{} x{}`: relation expects j > i", first + 1, second + 1),
            ));
        }
        if !seen.insert((kw.clone(), first, second)) {
            return Err(ParseError::new(line.number, 1, format!("duplicate `{kw}` line")));
        }
        line.cursor.expect('=')?;
        let (rest, col) = line.cursor.rest();
        match kw.as_str() {
            "q" => {
                let v = parse_scalar_at(&rest, allow_q, line.number, col)?;
                data.q.insert((first, second), v);
            }
            "comm" => {
                let v = parse_scalar_at(&rest, allow_q, line.number, col)?;
                data.comm[first][second] = v;
            }
            _ => {
                let words = parse_words_at(&rest, Scope { t, s, allow_q }, line.number, col)?;
                let tail = words_to_standard(words, t, s).map_err(|m| ParseError::new(line.number, col, m))?;
                data.tails.insert((first, second), tail);
            }
        }
    }
    Ok(data)
}

pub fn parse_presentation(text: &str) -> Result<Presentation, AlgError> {
    let data = parse_presentation_data(text)?;
    make_presentation(data).map_err(AlgError::Semantic)
}

fn tuple_text<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn order_text(order: &AdmissibleOrder) -> Result<String, EmitError> {
    match order {
        AdmissibleOrder::Lex { priority } => {
            if priority.iter().enumerate().all(|(k, &p)| k == p) {
                Ok("lex".into())
            } else {
                let one_based: Vec<usize> = priority.iter().map(|p| p + 1).collect();
                Ok(format!("lex {}", tuple_text(&one_based)))
            }
        }
        AdmissibleOrder::DegThenLex { weights } => {
            if weights.iter().all(|&w| w == 1) {
                Ok("deglex".into())
            } else {
                Ok(format!("deglex {}", tuple_text(weights)))
            }
        }
        AdmissibleOrder::MatrixThenLex { matrix, inner } => {
            let rows: Vec<String> = matrix.iter().map(|r| tuple_text(r)).collect();
            let inner_rank = inner.rank();
            let mut out = format!("matrix {}", rows.join(" "));
            if **inner != AdmissibleOrder::lex(inner_rank) {
                out.push_str(&format!(" then {}", order_text(inner)?));
            }
            Ok(out)
        }
        other => Err(EmitError::UnsupportedOrder(other.clone())),
    }
}

/// Writes every datum explicitly; [`parse_presentation`] reads it back to
/// an equal presentation.
pub fn emit(pres: &PresentationData) -> Result<String, EmitError> {
    let mut out = String::new();
    let mut push = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    push(format!("field {}", pres.field.keyword()));
    push(format!("base {}", pres.t));
    push(format!("gens {}", pres.s));
    push(format!("grading {}", pres.n));
    push(format!("order {}", order_text(&pres.order)?));
    for (i, d) in pres.degrees.iter().enumerate() {
        push(format!("deg x{} = {}", i + 1, tuple_text(d.entries())));
    }
    for j in 0..pres.s {
        for i in 0..j {
            push(format!("q x{} x{} = {}", j + 1, i + 1, pres.q_value(j, i)));
        }
    }
    for (i, row) in pres.comm.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            push(format!("comm x{} z{} = {}", i + 1, j + 1, v));
        }
    }
    for (&(j, i), tail) in &pres.tails {
        push(format!("tail x{} x{} = {}", j + 1, i + 1, render_standard(tail)));
    }
    Ok(out)
}

/// Renders an element in written standard form, independent of any order.
fn render_standard(e: &Element) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (gamma, coeff) in e.terms() {
        let gens: Vec<String> = gamma
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
            .collect();
        for (beta, c) in coeff.terms() {
            let term = crate::base::render_term(c, &crate::base::laurent_factors(beta), &gens);
            crate::base::write_joined(&mut out, &term, first).expect("write to string");
            first = false;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use crate::presets::{all_default_presets, broken_three_generator, quantum_plane, uq_sl2};

    const PLANE: &str = "# quantum plane\nfield rational_q\nbase 0\ngens 2\norder deglex\nq x2 x1 = q\n";

    #[test]
    fn plane_from_defaults() {
        assert_eq!(parse_presentation(PLANE).unwrap(), quantum_plane(Scalar::q()).unwrap());
    }

    #[test]
    fn round_trip_presets() {
        let mut all: Vec<Presentation> = all_default_presets().into_iter().map(|(_, p)| p).collect();
        all.push(broken_three_generator().unwrap());
        for p in all {
            let text = emit(p.data()).unwrap();
            assert_eq!(parse_presentation(&text).unwrap(), p, "{text}");
        }
    }

    #[test]
    fn uq_sl2_text() {
        let text = emit(uq_sl2().unwrap().data()).unwrap();
        assert!(text.contains("comm x2 z1 = 1/q^2\n"), "{text}");
        assert!(text.contains("tail x2 x1 = (-q/(-1 + q^2))*z1^-1 + (q/(-1 + q^2))*z1\n"), "{text}");
    }

    #[test]
    fn tail_bound_is_semantic() {
        let text = format!("{PLANE}tail x2 x1 = x1*x2\n");
        let err = parse_presentation(&text).unwrap_err();
        assert!(matches!(err, AlgError::Semantic(AlgebraError::TailBound { .. })));
        assert!(err.to_string().contains("degree bound"));
    }

    #[test]
    fn wrong_index_order() {
        let err = parse_presentation("gens 2\nq x1 x2 = q\n").unwrap_err();
        let AlgError::Syntax(e) = err else { panic!() };
        assert_eq!((e.line, e.col), (2, 3));
        assert!(e.message.contains("expects j > i"));
    }

    #[test]
    fn positions_in_values() {
        let AlgError::Syntax(e) = parse_presentation("gens 2\nq x2 x1 = q + $\n").unwrap_err() else {
            panic!()
        };
        assert_eq!((e.line, e.col), (2, 15));
        let AlgError::Syntax(e) = parse_presentation("field rational\ngens 2\nq x2 x1 = q\n").unwrap_err() else {
            panic!()
        };
        assert_eq!((e.line, e.col), (3, 11));
    }

    #[test]
    fn matrix_orders() {
        let text = "field rational\ngens 2\norder matrix (1,1) (0,1) then deglex (2,1)\n";
        let p = parse_presentation(text).unwrap();
        let text = emit(p.data()).unwrap();
        assert!(text.contains("order matrix (1,1) (0,1) then deglex (2,1)\n"), "{text}");
        let again = parse_presentation(&text).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn malformed_lines() {
        for bad in [
            "gens 2\nfoo 3\n",
            "gens 2\ngens 3\n",
            "field reals\ngens 1\n",
            "gens 2\ndeg x1 = (1,0,0)\n",
            "gens 2\ngrading 3\n",
            "gens 2\ntail x2 x1 = x2*x1\n",
            "gens 2\nq x3 x1 = 1\n",
            "base 1\ngens 1\ncomm x1 z2 = 1\n",
            "gens 2\norder spiral\n",
            "base 1\n",
        ] {
            assert!(matches!(parse_presentation(bad), Err(AlgError::Syntax(_))), "{bad}");
        }
    }

    #[test]
    fn zero_q_is_kept_in_raw_data() {
        let data = parse_presentation_data("gens 2\nq x2 x1 = 0\n").unwrap();
        assert!(data.q[&(1, 0)].is_zero());
        assert!(matches!(
            parse_presentation("gens 2\nq x2 x1 = 0\n"),
            Err(AlgError::Semantic(AlgebraError::ZeroUnit { .. }))
        ));
    }
}

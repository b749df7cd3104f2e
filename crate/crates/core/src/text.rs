//! Textual form of multivectors.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := coeff ('*' blade)? | blade
//! coeff := real | '(' real ',' real ')'
//! blade := 'e' index ('*' 'e' index)*
//! ```
//!
//! Blade indices are 1-based and strictly increasing. A parenthesised
//! coefficient `(a,b)` is the complex number `a + bi`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::multivector::Multivector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    InvalidNumber(String),
    NonIncreasingIndex { previous: usize, index: usize },
    IndexOutOfRange { index: usize, dim: usize },
    DimensionTooLarge(usize),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number {s:?}"),
            ParseErrorKind::NonIncreasingIndex { previous, index } => write!(
                f,
                "blade indices must be strictly increasing (e{index} after e{previous})"
            ),
            ParseErrorKind::IndexOutOfRange { index, dim } => {
                write!(f, "generator e{index} is out of range for dimension {dim}")
            }
            ParseErrorKind::DimensionTooLarge(dim) => {
                write!(f, "dimension {dim} is not supported")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, position: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { position, kind })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(self.pos, ParseErrorKind::UnexpectedChar(c)),
            None => self.err(self.pos, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn real(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'+' || bytes[end] == b'-') {
            end += 1;
        }
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            // exponent only if followed by an optionally signed digit
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                end = k;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
            }
        }
        let text = &self.src[start..end];
        if text.is_empty() {
            return match self.peek() {
                Some(c) => self.err(start, ParseErrorKind::UnexpectedChar(c)),
                None => self.err(start, ParseErrorKind::UnexpectedEnd),
            };
        }
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => {
                self.pos = end;
                Ok(x)
            }
            _ => self.err(start, ParseErrorKind::InvalidNumber(text.to_owned())),
        }
    }

    fn coeff(&mut self) -> Result<Complex64, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let re = self.real()?;
            self.expect(',')?;
            let im = self.real()?;
            self.expect(')')?;
            Ok(Complex64::new(re, im))
        } else {
            Ok(Complex64::new(self.real()?, 0.0))
        }
    }

    fn generator(&mut self) -> Result<usize, ParseError> {
        self.expect('e')?;
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return match self.peek() {
                Some(c) => self.err(start, ParseErrorKind::UnexpectedChar(c)),
                None => self.err(start, ParseErrorKind::UnexpectedEnd),
            };
        }
        let text = &self.src[start..start + digits];
        self.pos += digits;
        let index: usize = text
            .parse()
            .or_else(|_| self.err(start, ParseErrorKind::InvalidNumber(text.to_owned())))?;
        if index == 0 || index > self.dim {
            return self.err(
                start,
                ParseErrorKind::IndexOutOfRange {
                    index,
                    dim: self.dim,
                },
            );
        }
        Ok(index)
    }

    fn blade(&mut self) -> Result<u32, ParseError> {
        let mut previous = self.generator()?;
        let mut mask = 1u32 << (previous - 1);
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                return Ok(mask);
            }
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let index = self.generator()?;
            if index <= previous {
                return self.err(at, ParseErrorKind::NonIncreasingIndex { previous, index });
            }
            mask |= 1 << (index - 1);
            previous = index;
        }
    }

    fn term(&mut self) -> Result<(u32, Complex64), ParseError> {
        self.skip_ws();
        if self.peek() == Some('e') {
            return Ok((self.blade()?, Complex64::new(1.0, 0.0)));
        }
        let c = self.coeff()?;
        self.skip_ws();
        if self.peek() == Some('*') {
            self.pos += 1;
            Ok((self.blade()?, c))
        } else {
            Ok((0, c))
        }
    }

    fn expr(&mut self) -> Result<Vec<(u32, Complex64)>, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                None => return Ok(terms),
                Some('+') => 1.0,
                Some('-') => -1.0,
                Some(c) => return self.err(self.pos, ParseErrorKind::UnexpectedChar(c)),
            };
            self.pos += 1;
            let (mask, c) = self.term()?;
            terms.push((mask, c * sign));
        }
    }
}

/// Parses `text` as an element of `C(R^dim)`.
pub fn parse_multivector(text: &str, dim: usize) -> Result<Multivector, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        dim,
    };
    let terms = p.expr()?;
    Multivector::from_terms(dim, terms).map_err(|_| ParseError {
        position: 0,
        kind: ParseErrorKind::DimensionTooLarge(dim),
    })
}

fn blade_text(mask: u32) -> String {
    crate::blade::mask_indices(mask)
        .iter()
        .map(|i| format!("e{i}"))
        .collect::<Vec<_>>()
        .join("*")
}

fn ordered_terms(m: &Multivector) -> Vec<(u32, Complex64)> {
    let mut terms: Vec<_> = m.raw_terms().collect();
    terms.sort_by_key(|&(mask, _)| (mask.count_ones(), crate::blade::mask_indices(mask)));
    terms
}

fn render(terms: &[(u32, Complex64)], num: impl Fn(f64) -> String) -> String {
    if terms.is_empty() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (k, &(mask, c)) in terms.iter().enumerate() {
        let first = k == 0;
        let blade = (mask != 0).then(|| blade_text(mask));
        let coeff = if c.im != 0.0 {
            if !first {
                out.push_str(" + ");
            }
            format!("({},{})", num(c.re), num(c.im))
        } else {
            let mut re = c.re;
            if !first {
                if re.is_sign_negative() {
                    out.push_str(" - ");
                    re = -re;
                } else {
                    out.push_str(" + ");
                }
            }
            if re == 1.0 && blade.is_some() {
                out.push_str(blade.as_deref().unwrap_or_default());
                continue;
            }
            num(re)
        };
        out.push_str(&coeff);
        if let Some(b) = blade {
            out.push('*');
            out.push_str(&b);
        }
    }
    out
}

/// Exact textual form: `parse_multivector(&format_multivector(m), m.dim())`
/// reproduces `m` bit for bit.
pub fn format_multivector(m: &Multivector) -> String {
    render(&ordered_terms(m), |x| format!("{x}"))
}

/// Rounds to `digits` significant digits; magnitudes below `1e-12` become 0.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    s.parse().unwrap_or(x)
}

/// Display form with 12 significant digits; coefficients that round to zero
/// are dropped.
pub fn format_multivector_rounded(m: &Multivector) -> String {
    let terms: Vec<_> = ordered_terms(m)
        .into_iter()
        .map(|(mask, c)| {
            (
                mask,
                Complex64::new(round_significant(c.re, 12), round_significant(c.im, 12)),
            )
        })
        .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
        .collect();
    render(&terms, format_real)
}

/// Prints a real with 12 significant digits, values below `1e-12` as 0.
pub fn format_real(x: f64) -> String {
    let r = round_significant(x, 12);
    if r == 0.0 {
        "0".to_owned()
    } else {
        format!("{r}")
    }
}

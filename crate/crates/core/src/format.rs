//! Text and JSON forms of polynomials and quaternions.
//!
//! Text form: a sum of terms `X^k (w,x,y,z)` joined by `+`/`-`, with the
//! shorthands `X^k` for a unit coefficient, bare `i`, `j`, `k` units, and
//! plain numbers. JSON form: an array of 4-element arrays `[[w,x,y,z], ...]`
//! indexed by degree. `parse_qpoly` accepts both and round-trips with the
//! `Display` output of [`QPoly`].

use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::quat::{self, Quaternion};

pub(crate) fn write_qpoly(f: &mut fmt::Formatter<'_>, p: &QPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for k in (0..=p.degree().expect("nonzero")).rev() {
        let a = p.coeff(k);
        if a.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{a}")?,
            1 => write!(f, "X {a}")?,
            _ => write!(f, "X^{k} {a}")?,
        }
    }
    Ok(())
}

/// Renders in the canonical text form (same as `Display`).
pub fn format_qpoly(p: &QPoly) -> String {
    p.to_string()
}

/// Renders the JSON array-of-arrays form.
pub fn qpoly_to_json(p: &QPoly) -> String {
    serde_json::to_string(p).expect("polynomial serialization cannot fail")
}

/// Parses either the term syntax or the JSON array format.
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    let trimmed_start = text.len() - text.trim_start().len();
    if text.trim_start().starts_with('[') {
        let coeffs: Vec<[f64; 4]> = serde_json::from_str(text.trim())
            .map_err(|e| Error::parse(trimmed_start + e.column().saturating_sub(1), e.to_string()))?;
        return Ok(QPoly::from_coeffs(
            coeffs
                .into_iter()
                .map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
                .collect(),
        ));
    }
    Parser::new(text).poly()
}

/// Parses a single quaternion: a `(w,x,y,z)` tuple, a number, or a unit.
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let sign = p.take_sign();
    let q = p.coefficient()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(p.pos, "trailing input after quaternion"));
    }
    Ok(q * sign)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::parse(self.pos, format!("expected '{}'", want as char))),
        }
    }

    fn take_sign(&mut self) -> f64 {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        }
    }

    fn poly(&mut self) -> Result<QPoly> {
        self.skip_ws();
        if self.at_end() {
            return Err(Error::parse(self.pos, "empty polynomial"));
        }
        let mut acc = QPoly::zero();
        let mut sign = self.take_sign();
        loop {
            self.skip_ws();
            let (degree, coeff) = self.term()?;
            acc = acc.add(&QPoly::monomial(degree, coeff * sign));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1.0;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1.0;
                }
                Some(b) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("expected '+', '-' or end of input, found '{}'", b as char),
                    ))
                }
            }
        }
        Ok(acc)
    }

    /// One term: `X^k [coeff]` or a bare coefficient.
    fn term(&mut self) -> Result<(usize, Quaternion)> {
        if self.peek() == Some(b'X') {
            self.pos += 1;
            let degree = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.unsigned_int()?
            } else {
                1
            };
            self.skip_ws();
            // coefficient is optional after a power of X
            match self.peek() {
                Some(b'(') | Some(b'i') | Some(b'j') | Some(b'k') => {
                    Ok((degree, self.coefficient()?))
                }
                Some(b) if b.is_ascii_digit() || b == b'.' => Ok((degree, self.coefficient()?)),
                _ => Ok((degree, quat::ONE)),
            }
        } else {
            Ok((0, self.coefficient()?))
        }
    }

    /// A coefficient atom: tuple, number (optionally glued to a unit), or unit.
    fn coefficient(&mut self) -> Result<Quaternion> {
        match self.peek() {
            Some(b'(') => self.tuple(),
            Some(b'i') => {
                self.pos += 1;
                Ok(quat::I)
            }
            Some(b'j') => {
                self.pos += 1;
                Ok(quat::J)
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(quat::K)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let value = self.number()?;
                match self.peek() {
                    Some(b'i') => {
                        self.pos += 1;
                        Ok(quat::I * value)
                    }
                    Some(b'j') => {
                        self.pos += 1;
                        Ok(quat::J * value)
                    }
                    Some(b'k') => {
                        self.pos += 1;
                        Ok(quat::K * value)
                    }
                    _ => Ok(Quaternion::real(value)),
                }
            }
            _ => Err(Error::parse(
                self.pos,
                "expected a coefficient: (w,x,y,z), a number, or i/j/k",
            )),
        }
    }

    fn tuple(&mut self) -> Result<Quaternion> {
        self.expect(b'(')?;
        let mut c = [0.0; 4];
        for (idx, slot) in c.iter_mut().enumerate() {
            self.skip_ws();
            let sign = self.take_sign();
            *slot = sign * self.number()?;
            self.skip_ws();
            if idx < 3 {
                self.expect(b',')?;
            }
        }
        self.expect(b')')?;
        Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.') {
            self.pos += 1;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        text.parse::<f64>()
            .map_err(|_| Error::parse(start, format!("invalid number '{text}'")))
    }

    fn unsigned_int(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected an exponent"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        text.parse::<usize>()
            .map_err(|_| Error::parse(start, format!("exponent '{text}' out of range")))
    }

}

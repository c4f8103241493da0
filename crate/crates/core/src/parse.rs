//! Text grammar for monomials, ideals, and parametrized polynomials.
//!
//! Variables are written `x1, x2, ...`; a monomial is a `*`-separated list
//! of powers such as `x1^2*x2`, an ideal is a bracketed list such as
//! `[x1, x2^4]`, and a sequence of ideals is `;`-separated. The ambient
//! variable count is inferred from the largest index that occurs anywhere
//! in the input, so `[x1]; [x1, x2^2]` lives in two variables throughout.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, ParseError, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Monomial before the ambient arity is known: (variable index, exponent).
type RawMonomial = Vec<(usize, u32)>;

/// One parsed term of a parametrized polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTerm {
    /// Rational coefficient, sign included.
    pub coeff: BigRational,
    /// Exponents of the declared parameters, in declaration order.
    pub params: Vec<u32>,
    /// The monomial in the `x` variables.
    pub monomial: Monomial,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&alloc::format!("expected '{}'", b as char)))
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail(&self, msg: &str) -> Error {
        Error::Parse(ParseError { pos: self.pos, msg: msg.to_string() })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected a number"));
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| self.fail("number too large"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start || self.bytes[start].is_ascii_digit() {
            return Err(self.fail("expected an identifier"));
        }
        Ok(core::str::from_utf8(&self.bytes[start..self.pos]).unwrap().to_string())
    }

    /// `x<k>` with positive `k`, or the literal constant `1`.
    fn raw_monomial(&mut self) -> Result<RawMonomial> {
        let mut factors = RawMonomial::new();
        loop {
            match self.peek() {
                Some(b'1') => {
                    self.pos += 1;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.uint()?;
                    if idx == 0 {
                        return Err(self.fail("variable indices start at 1"));
                    }
                    let exp = if self.eat(b'^') { self.uint()? } else { 1 };
                    if exp > u32::MAX as u64 {
                        return Err(self.fail("exponent too large"));
                    }
                    factors.push((idx as usize - 1, exp as u32));
                }
                _ => return Err(self.fail("expected a monomial factor")),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(factors)
    }
}

fn build_monomial(raw: &RawMonomial, nvars: usize) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for &(i, e) in raw {
        exps[i] += e;
    }
    Monomial::new(exps)
}

fn max_index(raw: &RawMonomial) -> usize {
    raw.iter().map(|&(i, _)| i + 1).max().unwrap_or(0)
}

/// Parse a single monomial such as `x1^2*x2`; the arity is the largest
/// index seen unless a larger `min_vars` is requested.
pub fn parse_monomial(input: &str, min_vars: usize) -> Result<Monomial> {
    let mut c = Cursor::new(input);
    let raw = c.raw_monomial()?;
    if !c.at_end() {
        return Err(c.fail("trailing input after monomial"));
    }
    Ok(build_monomial(&raw, max_index(&raw).max(min_vars)))
}

fn raw_ideal(c: &mut Cursor) -> Result<Vec<RawMonomial>> {
    c.expect(b'[')?;
    let mut gens = Vec::new();
    if !c.eat(b']') {
        loop {
            gens.push(c.raw_monomial()?);
            if c.eat(b']') {
                break;
            }
            c.expect(b',')?;
        }
    }
    Ok(gens)
}

/// Parse one bracketed ideal, e.g. `[x1, x2^4]`.
pub fn parse_ideal(input: &str, min_vars: usize) -> Result<MonomialIdeal> {
    let mut c = Cursor::new(input);
    let gens = raw_ideal(&mut c)?;
    if !c.at_end() {
        return Err(c.fail("trailing input after ideal"));
    }
    let nvars = gens.iter().map(max_index).max().unwrap_or(0).max(min_vars);
    MonomialIdeal::new(nvars, gens.iter().map(|g| build_monomial(g, nvars)).collect())
}

/// Parse a `;`-separated sequence of ideals sharing one inferred ambient
/// variable count.
pub fn parse_ideal_sequence(input: &str) -> Result<Vec<MonomialIdeal>> {
    let mut c = Cursor::new(input);
    let mut raw_seq = Vec::new();
    loop {
        raw_seq.push(raw_ideal(&mut c)?);
        if !c.eat(b';') {
            break;
        }
    }
    if !c.at_end() {
        return Err(c.fail("trailing input after ideal sequence"));
    }
    let nvars = raw_seq
        .iter()
        .flat_map(|gens| gens.iter().map(max_index))
        .max()
        .unwrap_or(0);
    if nvars == 0 {
        return Err(Error::Parse(ParseError {
            pos: 0,
            msg: "no variables occur in the input".to_string(),
        }));
    }
    raw_seq
        .into_iter()
        .map(|gens| {
            MonomialIdeal::new(nvars, gens.iter().map(|g| build_monomial(g, nvars)).collect())
        })
        .collect()
}

/// Parse a polynomial whose coefficients may involve the named parameters,
/// e.g. `a*x1*x2 + 3/2*x2^2 - b^2*x1` with `params = ["a", "b"]`.
///
/// Returns the terms unchanged, without collecting like monomials; callers
/// assemble them into whatever coefficient ring they work over.
pub fn parse_parametrized_poly(input: &str, params: &[&str]) -> Result<Vec<ParsedTerm>> {
    let mut c = Cursor::new(input);
    let mut terms = Vec::new();
    let mut negate = false;
    if c.eat(b'-') {
        negate = true;
    } else {
        let _ = c.eat(b'+');
    }
    loop {
        let term = parse_term(&mut c, params, negate)?;
        terms.push(term);
        match c.peek() {
            Some(b'+') => {
                c.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                c.pos += 1;
                negate = true;
            }
            None => break,
            _ => return Err(c.fail("expected '+', '-', or end of input")),
        }
    }
    let nvars = terms.iter().map(|t| t.monomial.nvars()).max().unwrap_or(0);
    for t in terms.iter_mut() {
        let mut exps = t.monomial.exps().to_vec();
        exps.resize(nvars, 0);
        t.monomial = Monomial::new(exps);
    }
    Ok(terms)
}

fn parse_term(c: &mut Cursor, params: &[&str], negate: bool) -> Result<ParsedTerm> {
    let mut coeff = BigRational::from_integer(BigInt::from(if negate { -1 } else { 1 }));
    let mut param_exps = vec![0u32; params.len()];
    let mut raw = RawMonomial::new();
    loop {
        match c.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = c.uint()?;
                let den = if c.eat(b'/') { c.uint()? } else { 1 };
                if den == 0 {
                    return Err(c.fail("zero denominator"));
                }
                coeff *= BigRational::new(BigInt::from(num), BigInt::from(den));
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let save = c.pos;
                let name = c.ident()?;
                let exp = if c.eat(b'^') { c.uint()? as u32 } else { 1 };
                if let Some(rest) = name.strip_prefix('x') {
                    if let Ok(idx) = rest.parse::<usize>() {
                        if idx == 0 {
                            return Err(c.fail("variable indices start at 1"));
                        }
                        raw.push((idx - 1, exp));
                        if !c.eat(b'*') {
                            break;
                        }
                        continue;
                    }
                }
                match params.iter().position(|p| *p == name) {
                    Some(k) => param_exps[k] += exp,
                    None => {
                        c.pos = save;
                        return Err(c.fail("unknown parameter name"));
                    }
                }
            }
            _ => return Err(c.fail("expected a coefficient, parameter, or variable")),
        }
        if !c.eat(b'*') {
            break;
        }
    }
    let nvars = max_index(&raw);
    Ok(ParsedTerm { coeff, params: param_exps, monomial: build_monomial(&raw, nvars) })
}

//! Ring specification grammar.
//!
//! ```text
//! expr  := term ('*' term)*
//! term  := '(' expr ')' | 'Z' int [ '[x]/(' poly ')' ] | 'GF(' int [ '^' int ] ')'
//! poly  := ['+'|'-'] mono (('+'|'-') mono)*
//! mono  := int ['*'] ['x' ['^' int]] | 'x' ['^' int]
//! ```
//!
//! Whitespace is ignored. Products are flattened, so `(Z2*Z3)*Z4` and
//! `Z2*Z3*Z4` denote the same spec.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{self, format_poly, is_prime, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingExpr {
    Zmod(u32),
    Gf { p: u32, k: u32 },
    /// `Z_m[x]/(f)`, coefficients reduced mod `m`, constant term first.
    Quotient { modulus: u32, poly: Vec<u32> },
    Product(Vec<RingExpr>),
}

impl RingExpr {
    /// Cardinality, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            RingExpr::Zmod(n) => Some(*n as u64),
            RingExpr::Gf { p, k } => (*p as u64).checked_pow(*k),
            RingExpr::Quotient { modulus, poly } => (*modulus as u64).checked_pow(poly.len() as u32 - 1),
            RingExpr::Product(fs) => fs.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingExpr::Zmod(n) => ring::make_zmod(*n),
            RingExpr::Gf { p, k } => ring::make_gf(*p, *k),
            RingExpr::Quotient { modulus, poly } => ring::make_poly_quotient(&ring::make_zmod(*modulus)?, poly),
            RingExpr::Product(fs) => {
                let rings = fs.iter().map(RingExpr::build).collect::<Result<Vec<_>>>()?;
                ring::direct_product(&rings)
            }
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z{n}"),
            RingExpr::Gf { p, k } => write!(f, "GF({})", (*p as u64).pow(*k)),
            RingExpr::Quotient { modulus, poly } => write!(f, "Z{modulus}[x]/({})", format_poly(poly, "x")),
            RingExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// A parsed specification. `Display` gives the canonical text, which parses
/// back to the same expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub expr: RingExpr,
}

impl RingSpec {
    pub fn label(&self) -> String {
        self.expr.to_string()
    }

    /// Builds the ring after checking its order against `max_order`.
    pub fn build(&self, max_order: usize) -> Result<FiniteRing> {
        match self.expr.order() {
            Some(o) if o <= max_order as u64 => self.expr.build(),
            o => Err(Error::ResourceLimit {
                stage: "ring construction",
                what: "ring order",
                value: o.map_or(usize::MAX, |o| o.min(usize::MAX as u64) as usize),
                bound: max_order,
            }),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring_spec(s)
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser::new(text);
    let expr = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?}")));
    }
    Ok(RingSpec { expr })
}

/// Parses a polynomial in `x` over `Z_m`, e.g. `2+2x+x^2` or `2-x^2`.
/// Coefficients come back reduced mod `m`, constant term first, with
/// trailing zeros removed.
pub fn parse_poly(text: &str, modulus: u32) -> Result<Vec<u32>> {
    let mut p = Parser::new(text);
    let terms = p.poly()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?} in polynomial")));
    }
    Ok(reduce_poly(&terms, modulus))
}

fn reduce_poly(terms: &[(i64, usize)], m: u32) -> Vec<u32> {
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for &(coef, d) in terms {
        c[d] = (c[d] + coef).rem_euclid(m as i64);
    }
    let mut out: Vec<u32> = c.into_iter().map(|x| x as u32).collect();
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        Parser { chars, i: 0, len: src.len(), _src: src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |c| c.0)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos(), msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => Err(self.error(format!("expected {c:?}, found {got:?}"))),
                None => Err(self.error(format!("expected {c:?}, found end of input"))),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let save = self.i;
        for w in word.chars() {
            if self.chars.get(self.i).map(|c| c.1) != Some(w) {
                self.i = save;
                return false;
            }
            self.i += 1;
        }
        true
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.i;
        let mut v: u64 = 0;
        while let Some(d) = self.chars.get(self.i).and_then(|c| c.1.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("integer too large"))?;
            self.i += 1;
        }
        if self.i == start {
            return Err(self.error("expected an integer"));
        }
        Ok(v)
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let at = self.pos();
        let v = self.int()?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: at, msg: format!("{what} {v} out of range") })
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let mut factors = Vec::new();
        loop {
            match self.term()? {
                RingExpr::Product(inner) => factors.extend(inner),
                t => factors.push(t),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { RingExpr::Product(factors) })
    }

    fn term(&mut self) -> Result<RingExpr> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.keyword("GF") {
            return self.gf();
        }
        if self.keyword("Z") {
            let at = self.pos();
            let n = self.small("modulus")?;
            if n < 2 {
                return Err(Error::Syntax { pos: at, msg: format!("Z{n} is not a ring of order >= 2") });
            }
            if self.eat('[') {
                self.expect('x')?;
                self.expect(']')?;
                self.expect('/')?;
                self.expect('(')?;
                let at = self.pos();
                let terms = self.poly()?;
                self.expect(')')?;
                let poly = reduce_poly(&terms, n);
                if poly.len() < 2 {
                    return Err(Error::Syntax { pos: at, msg: "quotient polynomial must have degree >= 1".into() });
                }
                if *poly.last().unwrap() != 1 {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: format!("quotient polynomial {} is not monic over Z{n}", format_poly(&poly, "x")),
                    });
                }
                return Ok(RingExpr::Quotient { modulus: n, poly });
            }
            return Ok(RingExpr::Zmod(n));
        }
        match self.peek() {
            Some(c) => Err(self.error(format!("expected a ring, found {c:?}"))),
            None => Err(self.error("expected a ring, found end of input")),
        }
    }

    fn gf(&mut self) -> Result<RingExpr> {
        self.expect('(')?;
        let at = self.pos();
        let base = self.small("field order")?;
        let (p, k) = if self.eat('^') {
            let k = self.small("exponent")?;
            if !is_prime(base) {
                return Err(Error::Syntax { pos: at, msg: format!("GF({base}^{k}) needs a prime base") });
            }
            if k == 0 {
                return Err(Error::Syntax { pos: at, msg: "GF exponent must be at least 1".into() });
            }
            (base, k)
        } else {
            prime_power(base).ok_or_else(|| Error::Syntax {
                pos: at,
                msg: format!("GF({base}) needs a prime power order"),
            })?
        };
        if (p as u64).checked_pow(k).is_none_or(|q| q > u32::MAX as u64) {
            return Err(Error::Syntax { pos: at, msg: "field order out of range".into() });
        }
        self.expect(')')?;
        Ok(RingExpr::Gf { p, k })
    }

    fn poly(&mut self) -> Result<Vec<(i64, usize)>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (c, d) = self.mono()?;
            terms.push((sign * c, d));
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
        }
        Ok(terms)
    }

    fn mono(&mut self) -> Result<(i64, usize)> {
        let coef = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let at = self.pos();
            let v = self.int()?;
            let v = i64::try_from(v).map_err(|_| Error::Syntax { pos: at, msg: "coefficient too large".into() })?;
            self.eat('*');
            Some(v)
        } else {
            None
        };
        if self.eat('x') {
            let d = if self.eat('^') { self.small("degree")? as usize } else { 1 };
            if d > 64 {
                return Err(self.error("degree too large"));
            }
            Ok((coef.unwrap_or(1), d))
        } else {
            match coef {
                Some(c) => Ok((c, 0)),
                None => Err(self.error("expected a term")),
            }
        }
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

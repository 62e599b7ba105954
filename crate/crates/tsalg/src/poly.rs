//! Sparse multivariate polynomials over `F_p` in canonical form.
//!
//! Terms are kept in graded lexicographic order for the declared variable
//! order, so the text rendering of a polynomial is canonical: two polynomials
//! are equal iff their renderings are byte-equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::{ExtElem, ExtField, PrimeField};

/// A power product. No zero exponents are stored; the empty map is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: BTreeMap<usize, u32>,
    total_degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
            total_degree: 0,
        }
    }

    pub fn var(index: usize) -> Self {
        Monomial::from_exps([(index, 1)].into_iter().collect())
    }

    pub fn from_exps(mut exps: BTreeMap<usize, u32>) -> Self {
        exps.retain(|_, e| *e > 0);
        let total_degree = exps.values().sum();
        Monomial { exps, total_degree }
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    pub fn exps(&self) -> &BTreeMap<usize, u32> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps,
            total_degree: self.total_degree + other.total_degree,
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.keys().next_back().copied()
    }
}

impl Ord for Monomial {
    /// Graded lex: first by total degree, ties broken lexicographically with
    /// earlier variables weighing more.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree.cmp(&other.total_degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // the one that still has a factor in an earlier variable is larger
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((&va, &ea)), Some((&vb, &eb))) => {
                    if va != vb {
                        // smaller variable index present means larger in lex
                        return vb.cmp(&va);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over `F_p`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(field: PrimeField) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        let mut p = Polynomial::zero(field);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(field: PrimeField) -> Self {
        Polynomial::constant(field, 1)
    }

    pub fn var(field: PrimeField, index: usize) -> Self {
        let mut p = Polynomial::zero(field);
        p.terms.insert(Monomial::var(index), 1);
        p
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u64) -> Self {
        let mut p = Polynomial::zero(field);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&Monomial::one())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = self.field.reduce(c);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            // remove the key we just zeroed
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == 0)
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(*c));
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let c = self.field.reduce(c);
        let mut out = Polynomial::zero(self.field);
        if c == 0 {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(*v, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The sum of the terms of total degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            if m.total_degree() == d {
                out.terms.insert(m.clone(), *c);
            }
        }
        out
    }

    /// The unique algebra-homomorphism extension of `var -> images[var]`.
    /// Every variable occurring in `self` must have an image.
    pub fn substitute(&self, images: &BTreeMap<usize, Polynomial>) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.field, *c);
            for (&v, &e) in m.exps() {
                let img = images.get(&v).ok_or(Error::MissingImage(v))?;
                term = term.mul(&img.pow(e));
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Value at a point with coordinates in `F_{p^k}`.
    pub fn evaluate_point(&self, point: &[ExtElem], ext: &ExtField) -> Result<ExtElem, Error> {
        if ext.p() != self.field.p() {
            return Err(Error::CharMismatch {
                poly: self.field.p(),
                point: ext.p(),
            });
        }
        if let Some(v) = self.max_var() {
            if v >= point.len() {
                return Err(Error::PointDimension {
                    expected: v + 1,
                    got: point.len(),
                });
            }
        }
        let mut acc = ext.zero();
        for (m, c) in &self.terms {
            let mut term = ext.from_base(*c);
            for (&v, &e) in m.exps() {
                term = ext.mul(&term, &ext.pow(&point[v], e as u64));
            }
            acc = ext.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Canonical text form using the given variable names; parseable by
    /// [`parse_poly`] with the same declarations.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if m.is_one() || *c != 1 {
                factors.push(c.to_string());
            }
            for (&v, &e) in m.exps() {
                let name = vars
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| format!("_{}", v));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

// --- parsing ---

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: PrimeField,
}

/// Parse an expression over the declared variables: `+ - * ^`, unsigned
/// integer literals, parentheses; whitespace is ignored.
pub fn parse_poly(text: &str, vars: &[String], field: PrimeField) -> Result<Polynomial, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: format!("unexpected character `{}`", p.src[p.pos] as char),
        });
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Polynomial, Error> {
        // optional leading sign
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent { pos: self.pos });
            }
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected `)`".to_string(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Polynomial::constant(self.field, self.field.reduce(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(idx) => Ok(Polynomial::var(self.field, idx)),
                    None => Err(Error::UndeclaredVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(c) => Err(Error::Parse {
                pos: self.pos,
                msg: format!("unexpected character `{}`", c as char),
            }),
            None => Err(Error::Parse {
                pos: self.pos,
                msg: "unexpected end of input".to_string(),
            }),
        }
    }

    fn uint(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected an integer".to_string(),
            });
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer literal too large".to_string(),
            })
    }
}

/// All monomials of total degree exactly `d` in `nvars` variables,
/// in descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = vec![0; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
        let n = current.len();
        if var == n {
            if remaining == 0 {
                let exps = current
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                out.push(Monomial::from_exps(exps));
            }
            return;
        }
        if var == n - 1 {
            current[var] = remaining;
            rec(out, current, var + 1, 0);
            current[var] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[var] = e;
            rec(out, current, var + 1, remaining - e);
            current[var] = 0;
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(&mut out, &mut current, 0, d);
    out
}

/// All monomials of total degree at most `d`, descending degree first.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        out.extend(monomials_of_degree(nvars, k));
    }
    out
}

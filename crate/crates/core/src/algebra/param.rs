//! Polynomials over the rationals in the perturbation parameters `p_ijk`, `q_ijk`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::frac::{frac_string, Coeff, Frac};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    P,
    Q,
}

/// `(i, j)` exponent pairs of the cubic perturbation monomials `x^i y^j`,
/// `1 <= i + j <= 3`, in the fixed alphabet order.
pub const SLOTS: [(u32, u32); 9] =
    [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

pub const PARAM_COUNT: usize = 54;

/// One of the 54 perturbation coefficients. Lower index sorts first in the
/// lexicographic part of the monomial order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(u8);

impl Param {
    pub fn new(kind: Kind, i: u32, j: u32, k: u32) -> Option<Param> {
        if !(1..=3).contains(&k) {
            return None;
        }
        let slot = SLOTS.iter().position(|&s| s == (i, j))?;
        let base = match kind {
            Kind::P => 0,
            Kind::Q => 27,
        };
        Some(Param((base + (k as usize - 1) * 9 + slot) as u8))
    }

    pub fn p(i: u32, j: u32, k: u32) -> Param {
        Param::new(Kind::P, i, j, k).expect("p index out of range")
    }

    pub fn q(i: u32, j: u32, k: u32) -> Param {
        Param::new(Kind::Q, i, j, k).expect("q index out of range")
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(idx: usize) -> Option<Param> {
        (idx < PARAM_COUNT).then_some(Param(idx as u8))
    }

    pub fn all() -> impl Iterator<Item = Param> {
        (0..PARAM_COUNT as u8).map(Param)
    }

    pub fn kind(self) -> Kind {
        if self.0 < 27 {
            Kind::P
        } else {
            Kind::Q
        }
    }

    /// `(i, j, k)`.
    pub fn indices(self) -> (u32, u32, u32) {
        let r = self.0 as usize % 27;
        let (i, j) = SLOTS[r % 9];
        (i, j, (r / 9) as u32 + 1)
    }

    pub fn name(self) -> String {
        let (i, j, k) = self.indices();
        let c = match self.kind() {
            Kind::P => 'p',
            Kind::Q => 'q',
        };
        format!("{c}_{i}{j}{k}")
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    /// Accepts `p_121` and `p121`.
    fn from_str(s: &str) -> Result<Param> {
        let err = || Error::Parse(format!("unknown parameter '{s}'"));
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('p') => Kind::P,
            Some('q') => Kind::Q,
            _ => return Err(err()),
        };
        let digits: String = chars.as_str().trim_start_matches('_').to_string();
        if digits.len() != 3 || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let d: Vec<u32> = digits.chars().map(|c| c.to_digit(10).unwrap()).collect();
        Param::new(kind, d[0], d[1], d[2]).ok_or_else(err)
    }
}

/// Sparse exponent vector, sorted by parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Param, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(p: Param) -> Monomial {
        let mut v = SmallVec::new();
        v.push((p, 1));
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Param, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Param, u32); 4]> = SmallVec::new();
        let mut j = 0;
        let b = &other.0;
        for &(p, e) in &self.0 {
            while j < b.len() && b[j].0 < p {
                return None;
            }
            if j < b.len() && b[j].0 == p {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((p, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((p, e));
            }
        }
        (j == b.len()).then_some(Monomial(out))
    }

    /// Removes `p` from the monomial, returning its exponent.
    fn split(&self, p: Param) -> (u32, Monomial) {
        let mut rest = self.clone();
        let e = match rest.0.iter().position(|&(q, _)| q == p) {
            Some(pos) => rest.0.remove(pos).1,
            None => 0,
        };
        (e, rest)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// lowest-indexed parameter decides.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            if a[k].0 != b[k].0 {
                // the monomial carrying the earlier parameter is larger
                return if a[k].0 < b[k].0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            match a[k].1.cmp(&b[k].1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(p, e)| if e == 1 { p.name() } else { format!("{}^{}", p.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Multivariate polynomial over [`Frac`] with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Frac>,
}

impl ParamPoly {
    pub fn zero() -> ParamPoly {
        ParamPoly::default()
    }

    pub fn one() -> ParamPoly {
        ParamPoly::constant(Frac::one())
    }

    pub fn constant(c: Frac) -> ParamPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(p: Param) -> ParamPoly {
        ParamPoly::term(Monomial::var(p), Frac::one())
    }

    pub fn term(m: Monomial, c: Frac) -> ParamPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Frac)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Frac)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Frac> {
        match self.terms.len() {
            0 => Some(Frac::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.keys().map(|m| m.exponent(p)).max().unwrap_or(0)
    }

    /// Highest total degree in the listed parameters over all terms.
    pub fn degree_in_set(&self, set: &[Param]) -> u32 {
        self.terms
            .keys()
            .map(|m| set.iter().map(|&p| m.exponent(p)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v: Vec<Param> = self.terms.keys().flat_map(|m| m.factors().map(|(p, _)| p)).collect();
        v.sort();
        v.dedup();
        v
    }

    fn add_term(&mut self, m: Monomial, c: Frac) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Frac) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, p: Param) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(p);
            if e > 0 {
                let reduced = if e > 1 { rest.mul(&Monomial(SmallVec::from_slice(&[(p, e - 1)]))) } else { rest };
                out.add_term(reduced, c * Frac::from_integer(e.into()));
            }
        }
        out
    }

    /// Coefficient of `p^e` viewed as a polynomial in `p`.
    pub fn coefficient_of(&self, p: Param, e: u32) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let (f, rest) = m.split(p);
            if f == e {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Substitutes exact values for a subset of parameters.
    pub fn eval_partial(&self, values: &BTreeMap<Param, Frac>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest: SmallVec<[(Param, u32); 4]> = SmallVec::new();
            for (p, e) in m.factors() {
                match values.get(&p) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest.push((p, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Exact value when every parameter present is assigned.
    pub fn eval(&self, values: &BTreeMap<Param, Frac>) -> Result<Frac> {
        let partial = self.eval_partial(values);
        partial
            .as_constant()
            .ok_or_else(|| Error::Unassigned(partial.params().first().map(|p| p.name()).unwrap_or_default()))
    }

    pub fn eval_f64(&self, values: &BTreeMap<Param, f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = super::frac::to_f64(c);
            for (p, e) in m.factors() {
                let v = values.get(&p).ok_or_else(|| Error::Unassigned(p.name()))?;
                t *= v.powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for parameters.
    pub fn compose(&self, subs: &BTreeMap<Param, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            let mut rest: SmallVec<[(Param, u32); 4]> = SmallVec::new();
            for (p, e) in m.factors() {
                match subs.get(&p) {
                    Some(s) => t = &t * &s.pow(e),
                    None => rest.push((p, e)),
                }
            }
            out = &out + &(&t * &ParamPoly::term(Monomial(rest), Frac::one()));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = d.leading_term()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let t = ParamPoly::term(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl Coeff for ParamPoly {
    fn ring_zero() -> Self {
        ParamPoly::zero()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, by: &Frac) -> Self {
        self.scale(by)
    }
}

impl From<Frac> for ParamPoly {
    fn from(c: Frac) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<Param> for ParamPoly {
    fn from(p: Param) -> Self {
        ParamPoly::var(p)
    }
}

impl<'a> Add<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: &'a ParamPoly) -> ParamPoly { (&self).$f(rhs) }
        }
        impl $tr<ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c < &Frac::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                f.write_str(&frac_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", frac_string(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    /// Parses expressions such as `-(1/3)*p_121 + q_031^2*(2*q_021 + p_111)`.
    fn from_str(s: &str) -> Result<ParamPoly> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens: &tokens, pos: 0 };
        let e = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in '{s}'")));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Var(Param),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
        } else if c == 'p' || c == 'q' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Var(text.parse()?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ParamPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc * rhs;
            } else {
                let c = rhs
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ParamPoly> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ParamPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ParamPoly::constant(Frac::from_integer(n)))
            }
            Some(Tok::Var(p)) => {
                self.pos += 1;
                Ok(ParamPoly::var(p))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Shorthand used throughout the tests and formula tables.
pub fn poly(s: &str) -> ParamPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal '{s}': {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::frac;
    use proptest::prelude::*;

    #[test]
    fn alphabet_has_54_distinct_names() {
        let names: std::collections::BTreeSet<String> = Param::all().map(Param::name).collect();
        assert_eq!(names.len(), 54);
        for p in Param::all() {
            assert_eq!(p.name().parse::<Param>().unwrap(), p);
        }
        assert!("p_041".parse::<Param>().is_err());
        assert!("q_004".parse::<Param>().is_err());
    }

    #[test]
    fn graded_lex_puts_higher_degree_first() {
        let a = poly("p_101^2");
        let b = poly("p_101*q_011");
        let c = poly("p_101");
        let s = &(&a + &b) + &c;
        let order: Vec<String> = s.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, vec!["p_101^2", "p_101*q_011", "p_101"]);
    }

    #[test]
    fn parse_and_print() {
        let e = poly("-(1/3)*p_121 + 2*q_031^2 - 4");
        assert_eq!(e.to_string(), "2*q_031^2 - 1/3*p_121 - 4");
        let z = poly("(p_101 + q_011) - q_011 - p_101");
        assert!(z.is_zero());
    }

    #[test]
    fn exact_division() {
        let a = poly("p_101 + 2*q_021");
        let b = poly("p_031 - q_011^2 + 3");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn derivative_and_coefficients() {
        let e = poly("3*p_101^2*q_011 + p_101 - 7");
        assert_eq!(e.derivative(Param::p(1, 0, 1)), poly("6*p_101*q_011 + 1"));
        assert_eq!(e.coefficient_of(Param::p(1, 0, 1), 2), poly("3*q_011"));
        let mut vals = BTreeMap::new();
        vals.insert(Param::p(1, 0, 1), frac(1, 2));
        assert_eq!(e.eval_partial(&vals), poly("3/4*q_011 + 1/2 - 7"));
    }

    fn arb_poly() -> impl Strategy<Value = ParamPoly> {
        prop::collection::vec((0usize..6, 0u32..3, -5i64..6), 0..6).prop_map(|terms| {
            let mut acc = ParamPoly::zero();
            for (v, e, c) in terms {
                let p = Param::from_index(v * 7).unwrap();
                acc = &acc + &ParamPoly::var(p).pow(e).scale(&frac(c, 1));
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a - &b) + &b - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}

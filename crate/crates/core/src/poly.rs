//! Exact multivariate polynomials with integer coefficients and a canonical text form.
//!
//! # Canonical grammar
//!
//! ```text
//! poly     := "0" | term (sep term)*
//! sep      := " + " | " - "
//! term     := ["-"] coeff? monomial        (coeff omitted when it is 1)
//!           | ["-"] coeff                  (constant term)
//! monomial := (var ["^" exp])+             (exponent omitted when it is 1)
//! var      := letters digits*              e.g. q1, s2, t1, z
//! ```
//!
//! Variables within a monomial are ordered `q1 < q2 < … < s1 < s2 < t1 < t2 < z`,
//! other names after these. Monomials are printed by descending total degree,
//! ties broken by descending lexicographic exponent vector. The leading sign is
//! written without a space (`-3z + 1`).
//!
//! A [`NestedPoly`] is an integer combination of `z^{P}` where each `P` is a
//! canonical [`MultiPoly`] string:
//!
//! ```text
//! nested := "0" | nterm (sep nterm)*
//! nterm  := ["-"] mult? "z^{" poly "}"
//! ```
//!
//! Terms are printed in descending byte order of the exponent string. The
//! parsers accept any term order and optional `*` between factors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{PrimInt, Signed};

use crate::error::Error;

/// Integer types usable as polynomial coefficients.
pub trait Coefficient:
    PrimInt + Signed + fmt::Display + fmt::Debug + FromStr + Hash + Default + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: PrimInt + Signed + fmt::Display + fmt::Debug + FromStr + Hash + Default + Send + Sync + 'static
{
}

fn coeff_from<C: Coefficient>(v: u64) -> C {
    C::from(v).expect("coefficient overflow")
}

/// A variable name. Ordered `q* < s* < t* < z < others`, numeric suffixes compared as numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_var_name(&name), "invalid variable name {:?}", name);
        Self(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn key(&self) -> (u8, &str, Option<u64>) {
        let split = self.0.find(|c: char| c.is_ascii_digit()).unwrap_or(self.0.len());
        let (prefix, suffix) = self.0.split_at(split);
        let class = match prefix {
            "q" => 0,
            "s" => 1,
            "t" => 2,
            "z" => 3,
            _ => 4,
        };
        (class, prefix, suffix.parse().ok())
    }
}

fn is_var_name(name: &str) -> bool {
    let letters = name.chars().take_while(|c| c.is_ascii_alphabetic()).count();
    letters > 0 && name[letters..].chars().all(|c| c.is_ascii_digit())
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// Builds a monomial from `(name, exponent)` pairs; zero exponents are dropped
    /// and repeated variables multiply.
    pub fn new<S: AsRef<str>>(factors: &[(S, u32)]) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (name, e) in factors {
            *map.entry(Var::new(name.as_ref())).or_default() += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.iter().find(|(v, _)| v.name() == var).map_or(0, |&(_, e)| e)
    }

    /// Drops every factor whose variable satisfies `pred`, i.e. sets it to 1.
    fn without(&self, pred: impl Fn(&Var) -> bool) -> Self {
        Self(self.0.iter().filter(|(v, _)| !pred(v)).cloned().collect())
    }

    /// Lexicographic comparison of exponent vectors over the variable order.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `self` has a positive exponent where `other` has zero
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in &self.0 {
            f.write_str(v.name())?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients. No zero coefficients are stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn from_term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `coeff · Π name^exp`.
    pub fn monomial<S: AsRef<str>>(factors: &[(S, u32)], coeff: C) -> Self {
        Self::from_term(Monomial::new(factors), coeff)
    }

    /// Generating function of a multiset of exponents: `{0,0,1}` becomes `z + 2`.
    pub fn from_multiset(var: &str, exponents: impl IntoIterator<Item = u32>) -> Self {
        let mut p = Self::zero();
        for e in exponents {
            p.add_term(Monomial::new(&[(var, e)]), C::one());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).copied().unwrap_or_else(C::zero)
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, C)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Value with every variable set to 1: the sum of the coefficients.
    pub fn eval_ones(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, &c| acc + c)
    }

    /// Sets every variable selected by `pred` to 1.
    pub fn set_to_one(&self, pred: impl Fn(&Var) -> bool) -> Self {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            out.add_term(m.without(&pred), c);
        }
        out
    }

    /// Replaces each variable name by `rename(name)`.
    pub fn rename_vars(&self, rename: impl Fn(&str) -> String) -> Self {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let factors: Vec<(String, u32)> = m.0.iter().map(|(v, e)| (rename(v.name()), *e)).collect();
            out.add_term(Monomial::new(&factors), c);
        }
        out
    }

    /// The canonical text form; see the module documentation.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn write_signed<C: Coefficient>(f: &mut fmt::Formatter<'_>, first: bool, c: C) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-"),
        (true, false) => Ok(()),
        (false, true) => f.write_str(" - "),
        (false, false) => f.write_str(" + "),
    }
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            write_signed(f, i == 0, c)?;
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}", a)?;
                }
                write!(f, "{}", m)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> AddAssign<&MultiPoly<C>> for MultiPoly<C> {
    fn add_assign(&mut self, rhs: &MultiPoly<C>) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl<C: Coefficient> SubAssign<&MultiPoly<C>> for MultiPoly<C> {
    fn sub_assign(&mut self, rhs: &MultiPoly<C>) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<C: Coefficient> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(mut self, rhs: Self) -> MultiPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(mut self, rhs: Self) -> MultiPoly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

/// Splits `text` into signed terms at top-level `+`/`-`, ignoring braces.
fn split_terms(text: &str) -> Result<Vec<(bool, &str)>, Error> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = text.as_bytes();
    let mut seen_content = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::PolyParse(format!("unbalanced braces in {:?}", text)));
                }
            }
            b'+' | b'-' if depth == 0 => {
                let piece = text[start..i].trim();
                if piece.is_empty() {
                    if seen_content {
                        return Err(Error::PolyParse(format!("empty term in {:?}", text)));
                    }
                } else {
                    out.push((negative, piece));
                }
                seen_content = true;
                negative = b == b'-';
                start = i + 1;
                continue;
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            seen_content = true;
        }
    }
    if depth != 0 {
        return Err(Error::PolyParse(format!("unbalanced braces in {:?}", text)));
    }
    let piece = text[start..].trim();
    if piece.is_empty() {
        return Err(Error::PolyParse(format!("dangling sign or empty input in {:?}", text)));
    }
    out.push((negative, piece));
    Ok(out)
}

/// Leading decimal digits of `s`, and the rest.
fn take_digits(s: &str) -> (&str, &str) {
    let k = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    s.split_at(k)
}

fn parse_count<C: Coefficient>(digits: &str, whole: &str) -> Result<C, Error> {
    let v: u64 = digits.parse().map_err(|_| Error::PolyParse(format!("bad number in {:?}", whole)))?;
    C::from(v).ok_or_else(|| Error::PolyParse(format!("coefficient too large in {:?}", whole)))
}

fn parse_term<C: Coefficient>(term: &str) -> Result<(Monomial, C), Error> {
    let bad = || Error::PolyParse(format!("bad term {:?}", term));
    let (digits, mut rest) = take_digits(term.trim());
    let coeff = if digits.is_empty() { C::one() } else { parse_count(digits, term)? };
    let mut factors: Vec<(String, u32)> = Vec::new();
    loop {
        rest = rest.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let letters = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        if letters == 0 {
            return Err(bad());
        }
        let (num, after) = take_digits(&rest[letters..]);
        let name = &rest[..letters + num.len()];
        rest = after;
        let exp = if let Some(r) = rest.strip_prefix('^') {
            let (e, after) = take_digits(r);
            rest = after;
            e.parse::<u32>().map_err(|_| bad())?
        } else {
            1
        };
        factors.push((name.to_string(), exp));
    }
    if digits.is_empty() && factors.is_empty() {
        return Err(bad());
    }
    Ok((Monomial::new(&factors), coeff))
}

impl<C: Coefficient> FromStr for MultiPoly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Self::zero();
        for (negative, term) in split_terms(s)? {
            let (m, c) = parse_term::<C>(term)?;
            p.add_term(m, if negative { -c } else { c });
        }
        Ok(p)
    }
}

/// A formal integer combination of `z^{P}` with polynomial exponents `P`, keyed
/// by the canonical string of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedPoly<C> {
    terms: BTreeMap<String, (MultiPoly<C>, C)>,
}

impl<C: Coefficient> Default for NestedPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> NestedPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Adds `mult · z^{exponent}`.
    pub fn add_term(&mut self, exponent: &MultiPoly<C>, mult: C) {
        if mult.is_zero() {
            return;
        }
        let key = exponent.canonical_string();
        let remove = {
            let entry = self.terms.entry(key.clone()).or_insert_with(|| (exponent.clone(), C::zero()));
            entry.1 = entry.1 + mult;
            entry.1.is_zero()
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity of `z^{exponent}`.
    pub fn multiplicity(&self, exponent: &MultiPoly<C>) -> C {
        self.terms.get(&exponent.canonical_string()).map_or_else(C::zero, |t| t.1)
    }

    /// `(exponent, multiplicity)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiPoly<C>, C)> {
        self.terms.values().rev().map(|(p, c)| (p, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Value at `z = 1`: the sum of the multiplicities.
    pub fn eval_z_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, t| acc + t.1)
    }

    /// Sets every variable in every exponent to 1, giving a polynomial in `var`.
    pub fn collapse_exponents(&self, var: &str) -> MultiPoly<C> {
        let mut out = MultiPoly::zero();
        for (p, c) in self.terms.values() {
            let e = p.eval_ones().to_u32().expect("collapsed exponent must be a small nonnegative integer");
            out.add_term(Monomial::new(&[(var, e)]), *c);
        }
        out
    }

    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl<C: Coefficient> fmt::Display for NestedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (key, (_, c))) in self.terms.iter().rev().enumerate() {
            write_signed(f, i == 0, *c)?;
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}", a)?;
            }
            write!(f, "z^{{{}}}", key)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> AddAssign<&NestedPoly<C>> for NestedPoly<C> {
    fn add_assign(&mut self, rhs: &NestedPoly<C>) {
        for (p, c) in rhs.terms.values() {
            self.add_term(p, *c);
        }
    }
}

impl<C: Coefficient> SubAssign<&NestedPoly<C>> for NestedPoly<C> {
    fn sub_assign(&mut self, rhs: &NestedPoly<C>) {
        for (p, c) in rhs.terms.values() {
            self.add_term(p, -*c);
        }
    }
}

impl<C: Coefficient> Sub for &NestedPoly<C> {
    type Output = NestedPoly<C>;
    fn sub(self, rhs: Self) -> NestedPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> FromStr for NestedPoly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = Self::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for (negative, term) in split_terms(s)? {
            let bad = || Error::PolyParse(format!("bad nested term {:?}", term));
            let (digits, rest) = take_digits(term);
            let mult: C = if digits.is_empty() { C::one() } else { parse_count(digits, term)? };
            let rest = rest.trim_start_matches(|c: char| c == '*' || c.is_whitespace());
            let exponent: MultiPoly<C> = if rest.is_empty() {
                MultiPoly::zero()
            } else if rest == "z" {
                MultiPoly::constant(C::one())
            } else {
                let inner = rest.strip_prefix("z^").ok_or_else(bad)?;
                match inner.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                    Some(body) => body.parse()?,
                    None => MultiPoly::constant(parse_count(inner, term)?),
                }
            };
            out.add_term(&exponent, if negative { -mult } else { mult });
        }
        Ok(out)
    }
}

/// Convenience for counts coming out of the labeling search.
pub fn count<C: Coefficient>(v: usize) -> C {
    coeff_from(v as u64)
}

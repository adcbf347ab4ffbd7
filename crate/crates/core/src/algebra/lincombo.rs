use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::sign::Sign;

/// Finitely supported integer combination of basis elements. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinCombo<B: Ord> {
    terms: BTreeMap<B, BigInt>,
}

impl<B: Ord> Default for LinCombo<B> {
    fn default() -> Self {
        LinCombo { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinCombo<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, BigInt::one())
    }

    pub fn term(b: B, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero();
        x.add_term(b, c);
        x
    }

    pub fn add_term(&mut self, b: B, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_signed(&mut self, b: B, c: &BigInt, s: Sign) {
        match s {
            Sign::Plus => self.add_term(b, c.clone()),
            Sign::Minus => self.add_term(b, -c),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        for (b, k) in &other.terms {
            self.add_term(b.clone(), k * c);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn pop_first(&mut self) -> Option<(B, BigInt)> {
        self.terms.pop_first()
    }

    /// Applies a linear map given on basis elements.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinCombo<C>) -> LinCombo<C> {
        let mut out = LinCombo::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }
}

impl<B: Ord> LinCombo<B> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> BigInt {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }
}

impl<B: Ord + Clone> FromIterator<(B, BigInt)> for LinCombo<B> {
    fn from_iter<I: IntoIterator<Item = (B, BigInt)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> core::ops::Add for &LinCombo<B> {
    type Output = LinCombo<B>;
    fn add(self, rhs: &LinCombo<B>) -> LinCombo<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl<B: Ord + Clone> core::ops::Sub for &LinCombo<B> {
    type Output = LinCombo<B>;
    fn sub(self, rhs: &LinCombo<B>) -> LinCombo<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

/// One `coeff * element` line per term (`0` for the zero combination).
pub fn render_lincombo<B: Ord>(x: &LinCombo<B>, render: impl Fn(&B) -> String) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let lines: Vec<String> = x.iter().map(|(b, c)| alloc::format!("{c} * {}", render(b))).collect();
    lines.join("\n")
}

/// Parses lines `coeff * element` (a bare `element` has coefficient 1, a
/// line `0` contributes nothing). Each element parser returns a signed
/// basis element so that canonicalization signs are kept.
pub fn parse_terms<B>(text: &str, mut element: impl FnMut(&str) -> Result<(B, BigInt)>) -> Result<Vec<(B, BigInt)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split('\n') {
        let start = offset;
        offset += line.len() + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed == "0" {
            continue;
        }
        let (coeff, rest) = match split_coefficient(trimmed) {
            Some((c, rest)) => {
                let c = BigInt::from_str(c).map_err(|_| crate::Error::Syntax {
                    pos: start + line.len() - line.trim_start().len(),
                    msg: String::from("bad coefficient"),
                })?;
                (c, rest)
            }
            None => (BigInt::one(), trimmed),
        };
        let lead = line.len() - line.trim_start().len() + (trimmed.len() - rest.len());
        let (b, s) = element(rest).map_err(|e| shift(e, start + lead))?;
        out.push((b, coeff * s));
    }
    Ok(out)
}

fn shift(e: crate::Error, by: usize) -> crate::Error {
    match e {
        crate::Error::Syntax { pos, msg } => crate::Error::Syntax { pos: pos + by, msg },
        other => other,
    }
}

fn split_coefficient(line: &str) -> Option<(&str, &str)> {
    let star = line.find('*')?;
    let c = line[..star].trim();
    let body = c.strip_prefix(['-', '+']).unwrap_or(c);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((c, line[star + 1..].trim_start()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut x = LinCombo::basis(3u8);
        x.add_term(3u8, -1);
        assert!(x.is_zero());
        x.add_term(1u8, 0);
        assert!(x.is_zero());
    }

    #[test]
    fn arithmetic() {
        let a: LinCombo<u8> = [(1, BigInt::from(2)), (2, BigInt::from(1))].into_iter().collect();
        let b = LinCombo::term(2u8, -1);
        let s = &a + &b;
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&1), BigInt::from(2));
        assert_eq!((&a - &a), LinCombo::zero());
    }

    #[test]
    fn lines() {
        let terms = parse_terms("2 * a\n-1*b\nc\n0\n", |s| Ok((String::from(s), BigInt::one()))).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[1], (String::from("b"), BigInt::from(-1)));
        assert_eq!(terms[2].1, BigInt::one());
    }
}

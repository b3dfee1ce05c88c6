//! Sparse polynomials with terms kept in decreasing monomial order.

use std::fmt;

use crate::algebra::{Arith, Field, FieldElement};
use crate::error::Error;
use crate::monomial::{default_names, Monomial, MonomialOrder};

/// A polynomial whose terms are sorted decreasingly under the ordering it
/// was built with. Every coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: Vec::new() }
    }

    /// The single term `c * m`.
    pub fn term(m: Monomial, c: FieldElement) -> Polynomial {
        let nvars = m.nvars();
        if c.is_zero() {
            Polynomial::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// The constant polynomial `1`.
    pub fn one(field: &Field, nvars: usize) -> Polynomial {
        Polynomial::term(Monomial::one(nvars), field.one())
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        mut terms: Vec<(Monomial, FieldElement)>,
        ord: &MonomialOrder,
    ) -> Result<Polynomial, Error> {
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableCount { expected: nvars, found: m.nvars() });
            }
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = Arith::new(c.field()).add(lc, &c)?;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial { nvars, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial; panics on the zero polynomial.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &FieldElement {
        &self.terms[0].1
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&FieldElement> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    /// `t * self`; the term order is preserved by multiplicativity.
    pub fn mul_monomial(&self, t: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.mul(t), c.clone())).collect() }
    }

    pub fn scale(&self, c: &FieldElement, arith: &Arith) -> Result<Polynomial, Error> {
        if c.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let terms: Result<Vec<_>, Error> = self.terms.iter().map(|(m, a)| Ok((m.clone(), arith.mul(a, c)?))).collect();
        Ok(Polynomial { nvars: self.nvars, terms: terms? })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, arith: &Arith) -> Result<Polynomial, Error> {
        if self.is_zero() || self.lc().is_one() {
            return Ok(self.clone());
        }
        let inv = arith.inv(self.lc())?;
        self.scale(&inv, arith)
    }

    /// `self - c * other`.
    pub fn sub_scaled(
        &self,
        c: &FieldElement,
        other: &Polynomial,
        ord: &MonomialOrder,
        arith: &Arith,
    ) -> Result<Polynomial, Error> {
        if c.is_zero() || other.is_zero() {
            return Ok(self.clone());
        }
        let neg = arith.neg(c)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ord.compare(&a.0, &b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match pick {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, b) = &other.terms[j];
                    out.push((m.clone(), arith.mul(&neg, b)?));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let prod = arith.mul(&neg, &other.terms[j].1)?;
                    let s = arith.add(a, &prod)?;
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Polynomial { nvars: self.nvars, terms: out })
    }

    /// Re-sorts the terms for another ordering.
    pub fn reorder(&self, ord: &MonomialOrder) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial { nvars: self.nvars, terms }
    }

    /// Renders as `x*y - y - 1`.
    pub fn render(&self, names: &[String]) -> String {
        self.render_with(|m| m.render(names), true)
    }

    /// Renders with a custom monomial printer; `omit_one` prints the
    /// constant monomial as a bare coefficient.
    pub fn render_with(&self, show: impl Fn(&Monomial) -> String, omit_one: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (mag == "1", omit_one && m.is_one()) {
                (_, true) => s.push_str(&mag),
                (true, false) => s.push_str(&show(m)),
                (false, false) => {
                    s.push_str(&mag);
                    s.push('*');
                    s.push_str(&show(m));
                }
            }
        }
        s
    }

    /// Parses text such as `x^2*y - 3*x + 1/2`.
    pub fn parse(s: &str, ord: &MonomialOrder, field: &Field) -> Result<Polynomial, Error> {
        let names = ord.names();
        let n = names.len();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            let after_caret = cur.ends_with('^');
            if (ch == '+' || ch == '-') && !after_caret {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(Error::Parse(format!("dangling sign in `{s}`")));
                    }
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        pieces.push((neg, cur));
        let arith = Arith::new(field.clone());
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = field.one();
            let mut mono = Monomial::one(n);
            for factor in piece.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff = arith.mul(&coeff, &field.parse_element(factor)?)?;
                } else {
                    mono = mono.mul(&Monomial::parse(factor, names)?);
                }
            }
            if neg {
                coeff = arith.neg(&coeff)?;
            }
            terms.push((mono, coeff));
        }
        Polynomial::from_terms(n, terms, ord)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

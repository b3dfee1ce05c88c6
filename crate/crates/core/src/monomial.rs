//! Monomials, monomial orderings and ordered enumeration of monomials.
//!
//! Exponent vectors are indexed by variable name in natural order, so with
//! variables `x, y` the monomial `x^i*y^j` has exponents `[i, j]`, matching
//! the table index `(i, j)`. The ordering's precedence decides which
//! variable is largest.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::Error;

/// A monomial given by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    /// The `i`-th variable in `n` variables.
    pub fn var(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[i] = 1;
        m
    }

    pub fn new(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn try_quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    /// `self / divisor`; fails when `divisor` does not divide `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial, Error> {
        divisor
            .try_quotient(self)
            .ok_or_else(|| Error::NotDivisible { divisor: divisor.to_string(), dividend: self.to_string() })
    }

    /// All divisors of `self`, in no particular order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.nvars())];
        for (i, &e) in self.0.iter().enumerate() {
            let base = out.len();
            for k in 1..=e {
                for j in 0..base {
                    let mut m = out[j].clone();
                    m.0[i] = k;
                    out.push(m);
                }
            }
        }
        out
    }

    /// Renders `self` as `x^a*y^b` with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `x^a*y^b` (or `1`) against the given variable names.
    pub fn parse(s: &str, names: &[String]) -> Result<Monomial, Error> {
        let mut m = Monomial::one(names.len());
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            if name == "1" {
                continue;
            }
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in `{s}`")))?;
            m.0[i] += exp;
        }
        Ok(m)
    }
}

/// Default variable names: `x, y, z` for up to three variables, else `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Drl,
    Lex,
    /// Weighted degree, ties broken by DRL. Weights are indexed by variable.
    Weight(Vec<u32>),
}

/// A monomial ordering on a fixed set of named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Variable indices from largest to smallest.
    precedence: Vec<usize>,
    names: Vec<String>,
}

fn natural_key(s: &str) -> (String, u64) {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(s.len() - digits);
    (head.to_string(), tail.parse().unwrap_or(0))
}

impl MonomialOrder {
    /// DRL with `x1 > x2 > ... > xn` and default names.
    pub fn drl(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Drl, precedence: (0..n).collect(), names: default_names(n) }
    }

    /// LEX with `x1 > x2 > ... > xn` and default names.
    pub fn lex(n: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, precedence: (0..n).collect(), names: default_names(n) }
    }

    /// Weighted degree with DRL tie-break; `weights[i]` belongs to variable `i`.
    pub fn weight(weights: Vec<u32>) -> MonomialOrder {
        let n = weights.len();
        MonomialOrder { kind: OrderKind::Weight(weights), precedence: (0..n).collect(), names: default_names(n) }
    }

    /// Parses `drl:y<x`, `lex:z<y<x` or `weight:1,2:y<x`.
    ///
    /// Variables are listed from smallest to largest; for weights, the
    /// weights follow the same listing.
    pub fn parse(spec: &str) -> Result<MonomialOrder, Error> {
        let bad = |msg: &str| Error::Parse(format!("invalid ordering `{spec}`: {msg}"));
        let mut parts = spec.trim().split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let (weights, vars) = match kind.as_str() {
            "drl" | "lex" => (None, parts.next().ok_or_else(|| bad("missing variables"))?),
            "weight" => {
                let w = parts.next().ok_or_else(|| bad("missing weights"))?;
                let w: Result<Vec<u32>, _> = w.split(',').map(|x| x.trim().parse::<u32>()).collect();
                let w = w.map_err(|_| bad("weights must be positive integers"))?;
                if w.contains(&0) {
                    return Err(bad("weights must be positive"));
                }
                (Some(w), parts.next().ok_or_else(|| bad("missing variables"))?)
            }
            _ => return Err(bad("unknown kind")),
        };
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let listed: Vec<String> = vars.split('<').map(|v| v.trim().to_string()).collect();
        if listed.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
            return Err(bad("bad variable name"));
        }
        let mut names = listed.clone();
        names.sort_by_key(|n| natural_key(n));
        names.dedup();
        if names.len() != listed.len() {
            return Err(bad("repeated variable"));
        }
        let index = |v: &String| names.iter().position(|n| n == v).expect("listed name");
        let precedence: Vec<usize> = listed.iter().rev().map(index).collect();
        let kind = match (kind.as_str(), weights) {
            ("drl", _) => OrderKind::Drl,
            ("lex", _) => OrderKind::Lex,
            (_, Some(w)) => {
                if w.len() != listed.len() {
                    return Err(bad("one weight per variable"));
                }
                let mut by_var = vec![0; names.len()];
                for (v, wt) in listed.iter().zip(&w) {
                    by_var[index(v)] = *wt;
                }
                OrderKind::Weight(by_var)
            }
            _ => unreachable!(),
        };
        Ok(MonomialOrder { kind, precedence, names })
    }

    /// The spec string of this ordering.
    pub fn spec(&self) -> String {
        let listed: Vec<&str> = self.precedence.iter().rev().map(|&i| self.names[i].as_str()).collect();
        match &self.kind {
            OrderKind::Drl => format!("drl:{}", listed.join("<")),
            OrderKind::Lex => format!("lex:{}", listed.join("<")),
            OrderKind::Weight(w) => {
                let ws: Vec<String> = self.precedence.iter().rev().map(|&i| w[i].to_string()).collect();
                format!("weight:{}:{}", ws.join(","), listed.join("<"))
            }
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Variable indices from largest to smallest.
    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// True for DRL and weight orderings (finite down-sets).
    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self.kind, OrderKind::Lex)
    }

    pub fn render(&self, m: &Monomial) -> String {
        m.render(&self.names)
    }

    pub fn parse_monomial(&self, s: &str) -> Result<Monomial, Error> {
        Monomial::parse(s, &self.names)
    }

    fn weighted_degree(&self, m: &Monomial) -> u64 {
        match &self.kind {
            OrderKind::Weight(w) => m.exps().iter().zip(w).map(|(e, w)| *e as u64 * *w as u64).sum(),
            _ => m.degree() as u64,
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.precedence {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn revlex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in self.precedence.iter().rev() {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match &self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::Drl => a.degree().cmp(&b.degree()).then_with(|| self.revlex_cmp(a, b)),
            OrderKind::Weight(_) => self
                .weighted_degree(a)
                .cmp(&self.weighted_degree(b))
                .then_with(|| a.degree().cmp(&b.degree()))
                .then_with(|| self.revlex_cmp(a, b)),
        }
    }

    pub fn less(&self, a: &Monomial, b: &Monomial) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    /// The larger of two monomials.
    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.less(a, b) {
            b
        } else {
            a
        }
    }

    pub fn sort(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.compare(a, b));
    }

    /// Total-degree bound enclosing every monomial `<= stop` for degree-compatible orders.
    fn degree_bound(&self, stop: &Monomial) -> u32 {
        match &self.kind {
            OrderKind::Weight(w) => {
                let wmin = *w.iter().min().unwrap_or(&1) as u64;
                (self.weighted_degree(stop) / wmin) as u32
            }
            _ => stop.degree(),
        }
    }

    /// All monomials `m <= stop` (and of degree at most `degree_cap`) in increasing order.
    pub fn enumerate(&self, stop: &Monomial, degree_cap: Option<u32>) -> Result<Vec<Monomial>, Error> {
        let bound = match (self.is_degree_compatible(), degree_cap) {
            (true, Some(c)) => self.degree_bound(stop).min(c),
            (true, None) => self.degree_bound(stop),
            (false, Some(c)) => c,
            (false, None) => return Err(Error::NeedsDegreeCap),
        };
        let mut out: Vec<Monomial> = monomials_up_to(self.nvars(), bound)
            .into_iter()
            .filter(|m| self.compare(m, stop) != Ordering::Greater)
            .collect();
        self.sort(&mut out);
        Ok(out)
    }

    /// The least monomial greater than `m`, or `None` past the degree cap.
    pub fn successor(&self, m: &Monomial, degree_cap: Option<u32>) -> Result<Option<Monomial>, Error> {
        let bound = match (&self.kind, degree_cap) {
            (OrderKind::Lex, None) => return Err(Error::NeedsDegreeCap),
            (OrderKind::Lex, Some(c)) => c,
            (OrderKind::Drl, cap) => cap.map_or(m.degree() + 1, |c| c.min(m.degree() + 1)),
            (OrderKind::Weight(w), cap) => {
                let wmax = *w.iter().max().unwrap_or(&1) as u64;
                let wmin = *w.iter().min().unwrap_or(&1) as u64;
                let b = ((self.weighted_degree(m) + wmax) / wmin) as u32;
                cap.map_or(b, |c| c.min(b))
            }
        };
        Ok(monomials_up_to(self.nvars(), bound)
            .into_iter()
            .filter(|c| self.less(m, c))
            .min_by(|a, b| self.compare(a, b)))
    }
}

/// All monomials in `n` variables of total degree at most `bound`.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == n {
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, bound, &mut vec![0; n], &mut out);
    out
}

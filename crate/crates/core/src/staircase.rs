//! Staircases: divisor-closed monomial sets, their borders, and the edge
//! representation used by the BMS family.

use std::collections::HashSet;

use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// A finite divisor-closed set of monomials, stored by its maximal elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    nvars: usize,
    generators: Vec<Monomial>,
    elements: HashSet<Monomial>,
}

/// Keeps the elements of `ms` not dividing another element, deduplicated.
fn maximal(ms: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for m in ms {
        if out.iter().any(|g| m.divides(g)) {
            continue;
        }
        out.retain(|g| !g.divides(m));
        out.push(m.clone());
    }
    out.sort();
    out
}

impl Staircase {
    pub fn empty(nvars: usize) -> Staircase {
        Staircase { nvars, generators: Vec::new(), elements: HashSet::new() }
    }

    /// Divisor closure of `ms`.
    pub fn stabilize(nvars: usize, ms: &[Monomial]) -> Staircase {
        let generators = maximal(ms);
        let mut elements = HashSet::new();
        for g in &generators {
            elements.extend(g.divisors());
        }
        Staircase { nvars, generators, elements }
    }

    /// Staircase of the ratios of an edge.
    pub fn from_edge(nvars: usize, entries: &[EdgeEntry]) -> Staircase {
        let ratios: Vec<Monomial> = entries.iter().map(|e| e.ratio.clone()).collect();
        Staircase::stabilize(nvars, &ratios)
    }

    /// Monomials divisible by no element of `lms`; `None` when that set is infinite.
    pub fn complement_of(nvars: usize, lms: &[Monomial]) -> Option<Staircase> {
        let mut bound = 0;
        for i in 0..nvars {
            let pure = lms
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.exps()[i])
                .min()?;
            bound += pure;
        }
        let inside: Vec<Monomial> =
            monomials_up_to(nvars, bound).into_iter().filter(|m| !lms.iter().any(|l| l.divides(m))).collect();
        Some(Staircase::stabilize(nvars, &inside))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Maximal elements under divisibility, in exponent order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.contains(m)
    }

    /// All elements, increasing under `ord`.
    pub fn sorted(&self, ord: &MonomialOrder) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.elements.iter().cloned().collect();
        ord.sort(&mut v);
        v
    }

    /// The largest element under `ord`.
    pub fn max(&self, ord: &MonomialOrder) -> Option<Monomial> {
        self.elements.iter().max_by(|a, b| ord.compare(a, b)).cloned()
    }

    /// Largest total degree of an element.
    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Minimal monomials outside the staircase; `{1}` for the empty staircase.
    pub fn border(&self) -> Vec<Monomial> {
        if self.elements.is_empty() {
            return vec![Monomial::one(self.nvars)];
        }
        let mut out: HashSet<Monomial> = HashSet::new();
        for s in &self.elements {
            for i in 0..self.nvars {
                let c = s.mul(&Monomial::var(self.nvars, i));
                if self.elements.contains(&c) || out.contains(&c) {
                    continue;
                }
                let minimal = (0..self.nvars).all(|j| {
                    c.exps()[j] == 0 || {
                        let mut e = c.exps().to_vec();
                        e[j] -= 1;
                        self.elements.contains(&Monomial::new(&e))
                    }
                });
                if minimal {
                    out.insert(c);
                }
            }
        }
        let mut v: Vec<Monomial> = out.into_iter().collect();
        v.sort();
        v
    }

    /// Size of the divisor closure of `self ∪ extra`, without building it.
    pub fn size_with(&self, extra: &[Monomial]) -> usize {
        let mut added: HashSet<Monomial> = HashSet::new();
        for m in extra {
            if self.elements.contains(m) {
                continue;
            }
            for t in m.divisors() {
                if !self.elements.contains(&t) {
                    added.insert(t);
                }
            }
        }
        self.elements.len() + added.len()
    }
}

/// An edge element `[h, fail(h)/LM(h)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEntry {
    /// The failed relation, scaled so that its bracket at `ratio` is 1.
    pub relation: Polynomial,
    pub ratio: Monomial,
    pub fail: Monomial,
}

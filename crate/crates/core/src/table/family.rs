//! Benchmark families of tables with prescribed leading monomials.
//!
//! Each table is a weighted sum of point evaluations,
//! `u_i = sum_j c_j * p_j^i`, whose ideal of relations is the vanishing
//! ideal of the points. The point configuration fixes the leading monomials:
//! a grid for Rectangle, points on the coordinate axes for L-shape, generic
//! points for Simplex, and points with distinct last coordinates for Shape.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Arith, Field, FieldElement};
use crate::asfglm::asfglm;
use crate::error::Error;
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::staircase::Staircase;
use crate::table::TableOracle;

const RETRIES: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Rectangle,
    Lshape,
    Simplex,
    Shape,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] =
        [FamilyKind::Rectangle, FamilyKind::Lshape, FamilyKind::Simplex, FamilyKind::Shape];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Rectangle => "rectangle",
            FamilyKind::Lshape => "lshape",
            FamilyKind::Simplex => "simplex",
            FamilyKind::Shape => "shape",
        }
    }

    /// DRL for all families except Shape, which uses LEX.
    pub fn order(&self, nvars: usize) -> MonomialOrder {
        match self {
            FamilyKind::Shape => MonomialOrder::lex(nvars),
            _ => MonomialOrder::drl(nvars),
        }
    }

    /// Expected leading monomials of the ideal of relations.
    pub fn leading_monomials(&self, nvars: usize, d: u32) -> Vec<Monomial> {
        let pure = |i: usize, e: u32| {
            let mut v = vec![0; nvars];
            v[i] = e;
            Monomial::new(&v)
        };
        let mut out = match self {
            FamilyKind::Rectangle => {
                let mut v = vec![pure(0, d)];
                if nvars >= 2 {
                    v.push(pure(1, d / 2));
                }
                if nvars >= 3 {
                    v.push(pure(2, d.div_ceil(3)));
                }
                v
            }
            FamilyKind::Lshape => {
                let mut v: Vec<Monomial> = (0..nvars).map(|i| pure(i, d)).collect();
                for i in 0..nvars {
                    for j in i + 1..nvars {
                        v.push(pure(i, 1).mul(&pure(j, 1)));
                    }
                }
                v
            }
            FamilyKind::Simplex => monomials_up_to(nvars, d).into_iter().filter(|m| m.degree() == d).collect(),
            FamilyKind::Shape => {
                let mut v = vec![pure(nvars - 1, d)];
                v.extend((0..nvars - 1).map(|i| pure(i, 1)));
                v
            }
        };
        self.order(nvars).sort(&mut out);
        out
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyKind, Error> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}` (rectangle, lshape, simplex, shape)")))
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generated benchmark table with its known answer.
#[derive(Clone, Debug)]
pub struct Family {
    pub kind: FamilyKind,
    pub d: u32,
    pub oracle: TableOracle,
    pub order: MonomialOrder,
    pub expected_lms: Vec<Monomial>,
    pub staircase: Staircase,
    /// The seed that produced a verified table.
    pub seed: u64,
}

struct Sampler<'a> {
    rng: ChaCha8Rng,
    field: &'a Field,
}

impl Sampler<'_> {
    fn range(&self) -> u64 {
        match self.field {
            Field::Prime(p) => *p,
            Field::Rational => 1 << 20,
        }
    }

    /// `count` distinct field elements, nonzero if asked.
    fn distinct(&mut self, count: usize, nonzero: bool) -> Vec<FieldElement> {
        let lo = u64::from(nonzero);
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.rng.gen_range(lo..self.range());
            if seen.insert(v) {
                out.push(self.field.from_i64(v as i64));
            }
        }
        out
    }

    fn any(&mut self, nonzero: bool) -> FieldElement {
        let lo = u64::from(nonzero);
        let v = self.rng.gen_range(lo..self.range());
        self.field.from_i64(v as i64)
    }
}

fn points(kind: FamilyKind, nvars: usize, d: u32, s: &mut Sampler) -> Vec<Vec<FieldElement>> {
    let zero = s.field.zero();
    match kind {
        FamilyKind::Rectangle => {
            let sides: Vec<u32> = [d, d / 2, d.div_ceil(3)][..nvars].to_vec();
            let coords: Vec<Vec<FieldElement>> = sides.iter().map(|&k| s.distinct(k as usize, false)).collect();
            let mut out: Vec<Vec<FieldElement>> = vec![Vec::new()];
            for axis in &coords {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        axis.iter().map(move |c| {
                            let mut q = p.clone();
                            q.push(c.clone());
                            q
                        })
                    })
                    .collect();
            }
            out
        }
        FamilyKind::Lshape => {
            let mut out = vec![vec![zero.clone(); nvars]];
            for i in 0..nvars {
                for c in s.distinct(d as usize - 1, true) {
                    let mut p = vec![zero.clone(); nvars];
                    p[i] = c;
                    out.push(p);
                }
            }
            out
        }
        FamilyKind::Simplex => {
            let count = monomials_up_to(nvars, d - 1).len();
            (0..count).map(|_| (0..nvars).map(|_| s.any(false)).collect()).collect()
        }
        FamilyKind::Shape => {
            let last = s.distinct(d as usize, false);
            last.into_iter()
                .map(|c| {
                    let mut p: Vec<FieldElement> = (0..nvars - 1).map(|_| s.any(false)).collect();
                    p.push(c);
                    p
                })
                .collect()
        }
    }
}

fn power(arith: &Arith, a: &FieldElement, mut e: u32) -> FieldElement {
    let mut base = a.clone();
    let mut acc = arith.field().one();
    while e > 0 {
        if e & 1 == 1 {
            acc = arith.mul(&acc, &base).expect("same field");
        }
        base = arith.mul(&base, &base).expect("same field");
        e >>= 1;
    }
    acc
}

fn point_table(nvars: usize, field: &Field, pts: Vec<Vec<FieldElement>>, weights: Vec<FieldElement>) -> TableOracle {
    let k = field.clone();
    TableOracle::from_rule(nvars, field.clone(), move |m: &Monomial| {
        let arith = Arith::new(k.clone());
        let mut acc = k.zero();
        for (p, c) in pts.iter().zip(&weights) {
            let mut term = c.clone();
            for (x, &e) in p.iter().zip(m.exps()) {
                if e > 0 {
                    term = arith.mul(&term, &power(&arith, x, e)).expect("same field");
                }
            }
            acc = arith.add(&acc, &term).expect("same field");
        }
        acc
    })
}

/// A table of the given family whose relations have exactly the family's
/// leading monomials.
///
/// The table is checked by running asFGLM with the true staircase size;
/// on a mismatch the next seed is tried, up to ten seeds.
pub fn family(kind: FamilyKind, nvars: usize, d: u32, field: &Field, seed: u64) -> Result<Family, Error> {
    if !(2..=3).contains(&nvars) || d < 2 {
        return Err(Error::Parse(format!("family {kind} needs 2 or 3 variables and d >= 2")));
    }
    let order = kind.order(nvars);
    let expected_lms = kind.leading_monomials(nvars, d);
    let staircase = Staircase::complement_of(nvars, &expected_lms).expect("families are zero-dimensional");
    if let Field::Prime(p) = field {
        if *p <= staircase.size() as u64 + 2 {
            return Err(Error::Parse(format!("the field is too small for staircase size {}", staircase.size())));
        }
    }
    for attempt in 0..RETRIES {
        let used = seed.wrapping_add(attempt as u64);
        let mut sampler = Sampler { rng: ChaCha8Rng::seed_from_u64(used), field };
        let pts = points(kind, nvars, d, &mut sampler);
        let weights: Vec<FieldElement> = (0..pts.len()).map(|_| sampler.any(true)).collect();
        let oracle = point_table(nvars, field, pts, weights);
        let mut probe = oracle.fresh();
        let ok = match asfglm(&mut probe, &order, staircase.size()) {
            Ok(res) => res.leading_monomials() == expected_lms,
            Err(_) => false,
        };
        if ok {
            return Ok(Family { kind, d, oracle, order, expected_lms, staircase, seed: used });
        }
    }
    Err(Error::FamilyExhausted { family: kind.to_string(), retries: RETRIES })
}

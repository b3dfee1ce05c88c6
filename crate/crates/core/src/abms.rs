//! Adaptive BMS: BMS that skips a relation test whenever a failure would
//! push the staircase past a given size bound `d`.

use crate::algebra::Arith;
use crate::bms::{bms_with, BmsConfig};
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::result::GuessResult;
use crate::table::TableOracle;

pub use crate::bms::{should_skip, SkipReason};

/// Runs adaptive BMS with staircase bound `d` up to `stop`. For LEX the
/// visited degree is capped at `2d - 1` unless `degree_cap` is given.
pub fn abms(
    table: &mut TableOracle,
    ord: &MonomialOrder,
    d: usize,
    stop: &Monomial,
    degree_cap: Option<u32>,
) -> Result<GuessResult, Error> {
    run(table, ord, d, stop, degree_cap, false, false)
}

/// Adaptive BMS inter-reducing the relations after every step.
pub fn abms_reduced(
    table: &mut TableOracle,
    ord: &MonomialOrder,
    d: usize,
    stop: &Monomial,
    degree_cap: Option<u32>,
) -> Result<GuessResult, Error> {
    run(table, ord, d, stop, degree_cap, true, false)
}

/// [`abms`] with the step log recorded in the result.
pub fn abms_traced(
    table: &mut TableOracle,
    ord: &MonomialOrder,
    d: usize,
    stop: &Monomial,
    degree_cap: Option<u32>,
) -> Result<GuessResult, Error> {
    run(table, ord, d, stop, degree_cap, false, true)
}

fn run(
    table: &mut TableOracle,
    ord: &MonomialOrder,
    d: usize,
    stop: &Monomial,
    degree_cap: Option<u32>,
    reduce_each_step: bool,
    trace: bool,
) -> Result<GuessResult, Error> {
    if d == 0 {
        return Err(Error::Parse("the staircase bound must be at least 1".into()));
    }
    bms_with(table, ord, stop, &BmsConfig { bound: Some(d), degree_cap, reduce_each_step, trace })
}

/// Fully reduces relations with pairwise non-dividing leading monomials:
/// afterwards no term of a relation is divisible by another leading monomial.
pub fn inter_reduce(polys: &[Polynomial], ord: &MonomialOrder, arith: &Arith) -> Result<Vec<Polynomial>, Error> {
    let mut out = Vec::with_capacity(polys.len());
    for (i, g) in polys.iter().enumerate() {
        let mut cur = g.clone();
        let mut k = 1;
        while k < cur.len() {
            let (m, c) = cur.terms()[k].clone();
            let reducer = polys.iter().enumerate().find(|(j, h)| *j != i && h.lm().divides(&m));
            match reducer {
                Some((_, h)) => {
                    let t = h.lm().try_quotient(&m).expect("divides");
                    let coef = arith.div(&c, h.lc())?;
                    cur = cur.sub_scaled(&coef, &h.mul_monomial(&t), ord, arith)?;
                    // Terms above position k are untouched, so resume there.
                }
                None => k += 1,
            }
        }
        out.push(cur);
    }
    Ok(out)
}

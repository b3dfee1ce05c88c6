use std::collections::HashMap;

use crate::algebra::{Arith, Field, FieldElement};
use crate::error::Error;
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::staircase::Staircase;
use crate::table::TableOracle;

/// Computes terms outside the staircase by reducing them with the relations.
#[derive(Clone)]
pub(crate) struct GbFiller {
    relations: Vec<Polynomial>,
    memo: HashMap<Monomial, FieldElement>,
    field: Field,
}

impl GbFiller {
    pub(crate) fn value(&mut self, m: &Monomial) -> Result<FieldElement, Error> {
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        let g = self
            .relations
            .iter()
            .find(|g| g.lm().divides(m))
            .cloned()
            .ok_or_else(|| Error::MissingIndex(format!("{:?}", m.exps())))?;
        let shift = m.quotient(g.lm())?;
        let arith = Arith::new(self.field.clone());
        let mut acc = self.field.zero();
        for (t, c) in &g.terms()[1..] {
            let u = self.value(&t.mul(&shift))?;
            acc = arith.add(&acc, &arith.mul(c, &u)?)?;
        }
        let v = arith.neg(&arith.div(&acc, g.lc())?)?;
        self.memo.insert(m.clone(), v.clone());
        Ok(v)
    }
}

/// A total table whose terms satisfy the given relations.
///
/// Terms on the staircase of the leading monomials are taken from
/// `staircase_values`; every other term follows from a relation whose
/// leading monomial divides its index. The relations are then checked at
/// every shift of degree at most `2 * (max staircase degree) + 2`.
pub fn from_gb(
    relations: &[Polynomial],
    staircase_values: HashMap<Monomial, FieldElement>,
    ord: &MonomialOrder,
    field: &Field,
) -> Result<TableOracle, Error> {
    let nvars = ord.nvars();
    let relations: Vec<Polynomial> = relations.iter().map(|g| g.reorder(ord)).collect();
    if relations.iter().any(|g| g.is_zero()) {
        return Err(Error::Parse("zero relation".into()));
    }
    for g in &relations {
        if g.nvars() != nvars {
            return Err(Error::VariableCount { expected: nvars, found: g.nvars() });
        }
    }
    let lms: Vec<Monomial> = relations.iter().map(|g| g.lm().clone()).collect();
    for (i, a) in lms.iter().enumerate() {
        for (j, b) in lms.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(Error::Parse(format!(
                    "leading monomials {} and {} are not an antichain",
                    ord.render(a),
                    ord.render(b)
                )));
            }
        }
    }
    let stair = Staircase::complement_of(nvars, &lms)
        .ok_or_else(|| Error::Parse("the relations do not define a finite staircase".into()))?;
    for s in stair.sorted(ord) {
        if !staircase_values.contains_key(&s) {
            return Err(Error::Parse(format!("missing staircase value at {}", ord.render(&s))));
        }
    }
    if let Some(extra) = staircase_values.keys().find(|k| !stair.contains(k)) {
        return Err(Error::Parse(format!("value given outside the staircase at {}", ord.render(extra))));
    }
    let mut filler = GbFiller { relations: relations.clone(), memo: staircase_values, field: field.clone() };
    let arith = Arith::new(field.clone());
    let window = 2 * stair.max_degree() + 2;
    for v in monomials_up_to(nvars, window) {
        for g in &relations {
            let mut acc = field.zero();
            for (t, c) in g.terms() {
                acc = arith.add(&acc, &arith.mul(c, &filler.value(&t.mul(&v))?)?)?;
            }
            if !acc.is_zero() {
                return Err(Error::Inconsistent { index: ord.render(&g.lm().mul(&v)) });
            }
        }
    }
    Ok(TableOracle::from_filler(nvars, field.clone(), filler))
}

//! Adaptive Scalar-FGLM and its tweaked variant.
//!
//! Candidate monomials are visited in increasing order. A candidate `t`
//! joins the staircase `S` when the bordered matrix `H_{S+t,S+t}` stays
//! invertible; otherwise the kernel vector gives a relation with leading
//! monomial `t`. Once `#S` reaches the bound `d`, every remaining candidate
//! is closed by solving `H_{S,S} alpha + H_{S,{t}} = 0`.

use crate::algebra::Arith;
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::multihankel::BorderedLdl;
use crate::result::{GuessResult, Relation};
use crate::staircase::Staircase;
use crate::table::TableOracle;

#[derive(Clone, Copy, Debug)]
enum Mode {
    Bounded { d: usize, tweaked: bool },
    Unbounded { max_size: usize },
}

/// Candidates kept sorted increasingly and free of duplicates.
struct Candidates<'a> {
    ord: &'a MonomialOrder,
    items: Vec<Monomial>,
}

impl Candidates<'_> {
    fn insert(&mut self, m: Monomial) {
        if let Err(pos) = self.items.binary_search_by(|x| self.ord.compare(x, &m)) {
            self.items.insert(pos, m);
        }
    }

    fn pop_min(&mut self) -> Option<Monomial> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items.remove(0))
        }
    }

    fn remove_multiples(&mut self, of: &Monomial) {
        self.items.retain(|m| !of.divides(m));
    }
}

/// Runs asFGLM with staircase bound `d`.
pub fn asfglm(table: &mut TableOracle, ord: &MonomialOrder, d: usize) -> Result<GuessResult, Error> {
    run(table, ord, Mode::Bounded { d, tweaked: false })
}

/// Tweaked asFGLM: a relation found after reaching the bound is kept only
/// if it also annihilates the row of its own leading monomial.
pub fn asfglm_tweaked(table: &mut TableOracle, ord: &MonomialOrder, d: usize) -> Result<GuessResult, Error> {
    run(table, ord, Mode::Bounded { d, tweaked: true })
}

/// asFGLM without a staircase bound: every relation comes from a rank
/// defect. Stops with an error once `#S` exceeds `max_size`.
pub fn no_bound_mode(table: &mut TableOracle, ord: &MonomialOrder, max_size: usize) -> Result<GuessResult, Error> {
    run(table, ord, Mode::Unbounded { max_size })
}

fn run(table: &mut TableOracle, ord: &MonomialOrder, mode: Mode) -> Result<GuessResult, Error> {
    if ord.nvars() != table.nvars() {
        return Err(Error::VariableCount { expected: table.nvars(), found: ord.nvars() });
    }
    let n = ord.nvars();
    let arith = Arith::new(table.field().clone());
    let algorithm = match mode {
        Mode::Bounded { tweaked: false, .. } => "asfglm",
        Mode::Bounded { tweaked: true, .. } => "asfglm-tweaked",
        Mode::Unbounded { .. } => "asfglm-nobound",
    };
    let mut cands = Candidates { ord, items: vec![Monomial::one(n)] };
    let mut ldl = BorderedLdl::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut trace: Vec<String> = Vec::new();
    let finish = |table: &TableOracle, ldl: &BorderedLdl, relations: Vec<Relation>, trace: Vec<String>| GuessResult {
        algorithm: algorithm.to_string(),
        field: table.field().clone(),
        order: ord.clone(),
        relations,
        staircase: Staircase::stabilize(n, ldl.labels()),
        queries: table.queries(),
        ops: arith.ops(),
        trace,
        skip_stats: None,
    };

    while let Some(t) = cands.pop_min() {
        let border = ldl.border(table, &t, true, &arith)?;
        if border.is_full_rank() {
            ldl.accept(border);
            trace.push(format!(
                "H_(S+{0},S+{0}) is full rank: S = {{{1}}}",
                ord.render(&t),
                render_list(ord, ldl.labels())
            ));
            for i in 0..n {
                cands.insert(t.mul(&Monomial::var(n, i)));
            }
            for r in &relations {
                cands.remove_multiples(r.lm());
            }
            match mode {
                Mode::Bounded { d, tweaked } if ldl.len() >= d => {
                    trace.push(format!("#S = {} reaches the bound, closing the remaining candidates", ldl.len()));
                    while let Some(t2) = cands.pop_min() {
                        let border = ldl.border(table, &t2, false, &arith)?;
                        let g = ldl.relation(&border, ord, &arith)?;
                        let keep = !tweaked || table.bracket(&g, &t2, &arith)?.is_zero();
                        if keep {
                            trace.push(format!("{} found with shift S", g.render(ord.names())));
                            let mut r = Relation::new(g);
                            r.shift_set = Some(ldl.labels().to_vec());
                            relations.push(r);
                        } else {
                            trace.push(format!("{} rejected by its extra row", g.render(ord.names())));
                        }
                        cands.remove_multiples(&t2);
                    }
                    return Ok(finish(table, &ldl, relations, trace));
                }
                Mode::Unbounded { max_size } if ldl.len() > max_size => {
                    return Err(Error::SafeguardExceeded { limit: max_size });
                }
                _ => {}
            }
        } else {
            let g = ldl.relation(&border, ord, &arith)?;
            trace.push(format!("H_(S+{0},S+{0}) is not full rank: {1} found", ord.render(&t), g.render(ord.names())));
            let mut shift = ldl.labels().to_vec();
            shift.push(t.clone());
            let mut r = Relation::new(g);
            r.shift_set = Some(shift);
            relations.push(r);
            cands.remove_multiples(&t);
        }
    }
    let partial = finish(table, &ldl, relations, trace);
    match mode {
        Mode::Bounded { .. } => Err(Error::RunSfglm(Box::new(partial))),
        Mode::Unbounded { .. } => Ok(partial),
    }
}

fn render_list(ord: &MonomialOrder, ms: &[Monomial]) -> String {
    ms.iter().map(|m| ord.render(m)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::poly::Polynomial;
    use crate::table::builtin;

    fn shifts(ord: &MonomialOrder, r: &Relation) -> Vec<String> {
        r.shift_set.as_ref().unwrap().iter().map(|m| ord.render(m)).collect()
    }

    #[test]
    fn geometric_times_linear() {
        let ord = MonomialOrder::drl(2);
        let mut t = builtin("pow23", None).unwrap();
        let res = asfglm(&mut t, &ord, 2).unwrap();
        assert_eq!(res.relation_strings(), ["y - 3", "x^2 - 4*x + 4"]);
        assert_eq!(shifts(&ord, &res.relations[0]), ["1", "y"]);
        assert_eq!(shifts(&ord, &res.relations[1]), ["1", "x"]);
        let tw = asfglm_tweaked(&mut builtin("pow23", None).unwrap(), &ord, 2).unwrap();
        assert_eq!(tw.relation_strings(), res.relation_strings());
    }

    #[test]
    fn unbounded_finds_larger_shift() {
        let ord = MonomialOrder::drl(2);
        let res = no_bound_mode(&mut builtin("pow23", None).unwrap(), &ord, 50).unwrap();
        assert_eq!(res.relation_strings(), ["y - 3", "x^2 - 4*x + 4"]);
        assert_eq!(shifts(&ord, &res.relations[1]), ["1", "x", "x^2"]);
        let fib = no_bound_mode(&mut builtin("fib2d", None).unwrap(), &ord, 50).unwrap();
        assert_eq!(fib.relation_strings(), ["y - 1", "x^2 - x - 1"]);
        let fact = no_bound_mode(&mut builtin("factorial", None).unwrap(), &ord, 10);
        assert!(matches!(fact, Err(Error::SafeguardExceeded { limit: 10 })));
    }

    #[test]
    fn f11_wrong_guess() {
        let ord = MonomialOrder::drl(2);
        let mut t = builtin("f11", None).unwrap();
        let res = asfglm(&mut t, &ord, 4).unwrap();
        let want: Vec<Polynomial> = ["y^2 - y", "x*y - x - y + 1", "x^3 + 3*x^2 + 10*x + y + 4"]
            .iter()
            .map(|s| Polynomial::parse(s, &ord, &Field::Prime(11)).unwrap())
            .collect();
        let got: Vec<Polynomial> = res.relations.iter().map(|r| r.poly.clone()).collect();
        assert_eq!(got, want);
        assert_eq!(shifts(&ord, &res.relations[2]), ["1", "y", "x", "x^2"]);
    }

    #[test]
    fn shape_position_lex() {
        let ord = MonomialOrder::lex(3);
        let res = asfglm(&mut builtin("fib3d", None).unwrap(), &ord, 2).unwrap();
        let mut rels = res.relation_strings();
        rels.sort();
        assert_eq!(rels, ["x - 3*z - 2", "y - 1", "z^2 - z - 1"]);
    }

    #[test]
    fn zero_table_runs_out_of_candidates() {
        let ord = MonomialOrder::drl(2);
        match asfglm_tweaked(&mut builtin("zero", Some(Field::Prime(11))).unwrap(), &ord, 1) {
            Err(Error::RunSfglm(partial)) => {
                assert_eq!(partial.relation_strings(), ["1"]);
                assert!(partial.staircase.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tweaked_rejects_short_bound() {
        // With d = 1 the closing relation for x is x - 4, which fails on its
        // own row since [x (x - 4)] = 12 - 16 != 0.
        let ord = MonomialOrder::drl(2);
        let plain = asfglm(&mut builtin("pow23", None).unwrap(), &ord, 1).unwrap();
        assert_eq!(plain.relation_strings(), ["y - 3", "x - 4"]);
        let tw = asfglm_tweaked(&mut builtin("pow23", None).unwrap(), &ord, 1).unwrap();
        assert_eq!(tw.relation_strings(), ["y - 3"]);
    }
}

//! Relations and the result of a guessing run.

use serde_json::{json, Value};

use crate::algebra::{Field, OpCounter};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::staircase::Staircase;

/// A guessed relation with its validation bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub poly: Polynomial,
    /// Largest shift `v` with `v * LM` inside the visited range (BMS family).
    /// `None` when no shift was in range.
    pub shift: Option<Monomial>,
    /// Shifts at which the relation was verified (asFGLM).
    pub shift_set: Option<Vec<Monomial>>,
    /// First monomial where the relation failed; `None` if it never did.
    pub fail: Option<Monomial>,
    /// Visited monomials at which testing this relation was skipped.
    pub skipped_shifts: Vec<Monomial>,
}

impl Relation {
    pub fn new(poly: Polynomial) -> Relation {
        Relation { poly, shift: None, shift_set: None, fail: None, skipped_shifts: Vec::new() }
    }

    pub fn lm(&self) -> &Monomial {
        self.poly.lm()
    }
}

/// Skip statistics of an adaptive BMS run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkipStats {
    pub skipped_tests: usize,
    /// Monomials where every applicable relation was skipped, in visiting order.
    pub fully_skipped_monomials: Vec<Monomial>,
}

/// Output of `bms`, `abms` or `asfglm`.
#[derive(Clone, Debug)]
pub struct GuessResult {
    pub algorithm: String,
    pub field: Field,
    pub order: MonomialOrder,
    pub relations: Vec<Relation>,
    pub staircase: Staircase,
    pub queries: usize,
    pub ops: OpCounter,
    pub trace: Vec<String>,
    pub skip_stats: Option<SkipStats>,
}

impl GuessResult {
    /// Leading monomials of the relations, sorted increasingly.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.relations.iter().map(|r| r.lm().clone()).collect();
        self.order.sort(&mut v);
        v
    }

    /// Relations rendered as text, in output order.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.poly.render(self.order.names())).collect()
    }

    /// JSON form; `failure` names an error the run ended with, if any.
    pub fn to_json(&self, failure: Option<&str>) -> Value {
        let ord = &self.order;
        let mono = |m: &Monomial| json!({ "exponents": m.exps(), "text": ord.render(m) });
        let relations: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<Value> = r.poly.terms().iter().map(|(m, c)| json!([m.exps(), c.to_string()])).collect();
                json!({
                    "poly": r.poly.render(ord.names()),
                    "terms": terms,
                    "lm": mono(r.lm()),
                    "shift": r.shift.as_ref().map(mono),
                    "shift_set": r.shift_set.as_ref().map(|s| s.iter().map(mono).collect::<Vec<_>>()),
                    "fail": r.fail.as_ref().map(mono),
                    "skipped_shifts": r.skipped_shifts.iter().map(mono).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut out = json!({
            "algorithm": self.algorithm,
            "field": self.field.spec(),
            "order": ord.spec(),
            "relations": relations,
            "staircase": self.staircase.sorted(ord).iter().map(|m| ord.render(m)).collect::<Vec<_>>(),
            "staircase_size": self.staircase.size(),
            "queries": self.queries,
            "ops": {
                "multiplications": self.ops.multiplications,
                "additions": self.ops.additions,
                "divisions": self.ops.divisions,
                "total": self.ops.total(),
            },
            "failure": failure,
        });
        if let Some(s) = &self.skip_stats {
            out["skipped_tests"] = json!(s.skipped_tests);
            out["fully_skipped_monomials"] =
                json!(s.fully_skipped_monomials.iter().map(|m| ord.render(m)).collect::<Vec<_>>());
        }
        out
    }
}

//! Sequence oracles.
//!
//! A [`TableOracle`] hands out sequence terms `u_i` and remembers every index
//! it was asked for; the number of distinct indices is the query count of a
//! run.

mod builtin;
mod family;
mod gb;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Arith, Field, FieldElement};
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

pub use builtin::{builtin, BUILTINS};
pub use family::{family, Family, FamilyKind};
pub use gb::from_gb;

type Rule = Arc<dyn Fn(&Monomial) -> FieldElement + Send + Sync>;

#[derive(Clone)]
enum Source {
    Explicit(HashMap<Monomial, FieldElement>),
    Rule(Rule),
    Gb(gb::GbFiller),
}

/// A memoizing sequence source.
#[derive(Clone)]
pub struct TableOracle {
    nvars: usize,
    field: Field,
    source: Source,
    cache: HashMap<Monomial, FieldElement>,
}

impl fmt::Debug for TableOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.source {
            Source::Explicit(_) => "explicit",
            Source::Rule(_) => "rule",
            Source::Gb(_) => "gb",
        };
        f.debug_struct("TableOracle")
            .field("nvars", &self.nvars)
            .field("field", &self.field)
            .field("source", &kind)
            .field("queries", &self.cache.len())
            .finish()
    }
}

impl TableOracle {
    /// A table known only on the given indices.
    pub fn explicit(nvars: usize, field: Field, entries: HashMap<Monomial, FieldElement>) -> TableOracle {
        TableOracle { nvars, field, source: Source::Explicit(entries), cache: HashMap::new() }
    }

    /// A total table given by a closed-form rule.
    pub fn from_rule(
        nvars: usize,
        field: Field,
        rule: impl Fn(&Monomial) -> FieldElement + Send + Sync + 'static,
    ) -> TableOracle {
        TableOracle { nvars, field, source: Source::Rule(Arc::new(rule)), cache: HashMap::new() }
    }

    pub(crate) fn from_filler(nvars: usize, field: Field, filler: gb::GbFiller) -> TableOracle {
        TableOracle { nvars, field, source: Source::Gb(filler), cache: HashMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// A copy of this table with an empty cache.
    pub fn fresh(&self) -> TableOracle {
        TableOracle { cache: HashMap::new(), ..self.clone() }
    }

    /// Number of distinct indices queried so far.
    pub fn queries(&self) -> usize {
        self.cache.len()
    }

    /// The indices queried so far, in no particular order.
    pub fn queried(&self) -> impl Iterator<Item = &Monomial> {
        self.cache.keys()
    }

    /// `u_idx`.
    pub fn query(&mut self, idx: &Monomial) -> Result<FieldElement, Error> {
        if idx.nvars() != self.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: idx.nvars() });
        }
        if let Some(v) = self.cache.get(idx) {
            return Ok(v.clone());
        }
        let v = match &mut self.source {
            Source::Explicit(map) => {
                map.get(idx).cloned().ok_or_else(|| Error::MissingIndex(format!("{:?}", idx.exps())))?
            }
            Source::Rule(rule) => rule(idx),
            Source::Gb(filler) => filler.value(idx)?,
        };
        self.cache.insert(idx.clone(), v.clone());
        Ok(v)
    }

    /// The bracket `[shift * f]`: the sum of `c * u_{m * shift}` over the terms of `f`.
    pub fn bracket(&mut self, f: &Polynomial, shift: &Monomial, arith: &Arith) -> Result<FieldElement, Error> {
        let mut acc: Option<FieldElement> = None;
        for (m, c) in f.terms() {
            let u = self.query(&m.mul(shift))?;
            let p = arith.mul(c, &u)?;
            acc = Some(match acc {
                None => p,
                Some(a) => arith.add(&a, &p)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.field.zero()))
    }

    /// The terms `u_{i,j,0,..}` for `i < rows`, `j < cols`, row by row.
    pub fn grid(&mut self, rows: u32, cols: u32) -> Result<Vec<Vec<FieldElement>>, Error> {
        let mut out = Vec::new();
        for i in 0..rows {
            let mut row = Vec::new();
            for j in 0..cols {
                let mut e = vec![0; self.nvars];
                e[0] = i;
                if self.nvars > 1 {
                    e[1] = j;
                }
                row.push(self.query(&Monomial::new(&e))?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Parses an explicit table file:
/// `{"nvars": n, "field": "fp:11", "entries": [[[i, j], "value"], ...]}`.
pub fn explicit_from_json(text: &str) -> Result<TableOracle, Error> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let nvars = json_nvars(&v)?;
    let field = json_field(&v)?;
    let entries = json_entries(&v, "entries", nvars, &field)?;
    Ok(TableOracle::explicit(nvars, field, entries))
}

/// Parses a table defined by a Gröbner basis and its staircase values:
/// `{"nvars", "field", "order", "relations": [...], "staircase_values": [...]}`.
pub fn gb_from_json(text: &str) -> Result<(TableOracle, MonomialOrder, Vec<Polynomial>), Error> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let nvars = json_nvars(&v)?;
    let field = json_field(&v)?;
    let order = v["order"]
        .as_str()
        .ok_or_else(|| Error::Parse("missing string field `order`".into()))
        .and_then(MonomialOrder::parse)?;
    if order.nvars() != nvars {
        return Err(Error::VariableCount { expected: nvars, found: order.nvars() });
    }
    let rels = v["relations"].as_array().ok_or_else(|| Error::Parse("missing array `relations`".into()))?;
    let relations: Result<Vec<Polynomial>, Error> = rels
        .iter()
        .map(|r| {
            let s = r.as_str().ok_or_else(|| Error::Parse("relations must be strings".into()))?;
            Polynomial::parse(s, &order, &field)
        })
        .collect();
    let relations = relations?;
    let values = json_entries(&v, "staircase_values", nvars, &field)?;
    let table = from_gb(&relations, values, &order, &field)?;
    Ok((table, order, relations))
}

/// Whether a JSON table text describes a Gröbner-basis table.
pub fn json_is_gb(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text).map(|v| v.get("relations").is_some()).unwrap_or(false)
}

fn json_nvars(v: &serde_json::Value) -> Result<usize, Error> {
    v["nvars"].as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse("missing integer field `nvars`".into()))
}

fn json_field(v: &serde_json::Value) -> Result<Field, Error> {
    v["field"].as_str().ok_or_else(|| Error::Parse("missing string field `field`".into()))?.parse()
}

fn json_entries(
    v: &serde_json::Value,
    key: &str,
    nvars: usize,
    field: &Field,
) -> Result<HashMap<Monomial, FieldElement>, Error> {
    let arr = v[key].as_array().ok_or_else(|| Error::Parse(format!("missing array `{key}`")))?;
    let mut out = HashMap::new();
    for (k, e) in arr.iter().enumerate() {
        let bad = || Error::Parse(format!("`{key}` entry {k}: expected [[exponents], \"value\"]"));
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
        let exps: Option<Vec<u32>> =
            pair[0].as_array().ok_or_else(bad)?.iter().map(|x| x.as_u64().map(|x| x as u32)).collect();
        let exps = exps.ok_or_else(bad)?;
        if exps.len() != nvars {
            return Err(Error::VariableCount { expected: nvars, found: exps.len() });
        }
        let value = match &pair[1] {
            serde_json::Value::String(s) => field.parse_element(s)?,
            serde_json::Value::Number(n) => field.parse_element(&n.to_string())?,
            _ => return Err(bad()),
        };
        out.insert(Monomial::new(&exps), value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn binomial_queries() {
        let mut t = builtin("binomial", None).unwrap();
        assert_eq!(t.query(&m(&[3, 0])).unwrap().to_string(), "1");
        assert_eq!(t.query(&m(&[4, 1])).unwrap().to_string(), "4");
        assert_eq!(t.queries(), 2);
        t.query(&m(&[4, 1])).unwrap();
        assert_eq!(t.queries(), 2);
    }

    #[test]
    fn delta_queries() {
        let mut t = builtin("delta", None).unwrap();
        assert!(t.query(&m(&[4, 1])).unwrap().is_one());
        assert!(t.query(&m(&[2, 3])).unwrap().is_zero());
    }

    #[test]
    fn brackets() {
        let ord = MonomialOrder::drl(2);
        let arith = Arith::new(Field::Rational);
        let mut t = builtin("binomial", None).unwrap();
        let p = |s: &str| Polynomial::parse(s, &ord, &Field::Rational).unwrap();
        let one = Monomial::one(2);
        assert!(t.bracket(&p("x*y - y - 1"), &one, &arith).unwrap().is_zero());
        assert!(t.bracket(&p("1"), &one, &arith).unwrap().is_one());
        assert!(t.bracket(&p("x^3 - 2*x^2 + x"), &m(&[0, 2]), &arith).unwrap().is_one());
        let ops = arith.ops();
        assert_eq!((ops.multiplications, ops.additions), (7, 4));
    }

    #[test]
    fn explicit_tables() {
        let text = r#"{"nvars": 2, "field": "fp:11", "entries": [[[0,0], "1"], [[1,0], "-1"], [[0,1], "1/2"]]}"#;
        let mut t = explicit_from_json(text).unwrap();
        assert_eq!(t.query(&m(&[1, 0])).unwrap().to_string(), "10");
        assert_eq!(t.query(&m(&[0, 1])).unwrap().to_string(), "6");
        match t.query(&m(&[5, 5])) {
            Err(Error::MissingIndex(s)) => assert!(s.contains('5')),
            other => panic!("unexpected {other:?}"),
        }
        let err = explicit_from_json("{\"nvars\": 2,\n \"field\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}

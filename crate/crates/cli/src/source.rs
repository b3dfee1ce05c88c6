//! Table sources named on the command line.

use std::fs;

use linrec::bench::DEFAULT_PRIME;
use linrec::table::{explicit_from_json, gb_from_json, json_is_gb};
use linrec::{builtin, family, Error, FamilyKind, Field, Monomial, MonomialOrder, Staircase, TableOracle};

/// A loaded table with whatever is known about its ideal of relations.
pub struct Loaded {
    pub table: TableOracle,
    /// Ordering implied by the source, if any.
    pub order: Option<MonomialOrder>,
    /// True staircase and leading monomials, when the source knows them.
    pub known: Option<(Staircase, Vec<Monomial>)>,
}

/// Parses `builtin:<name>`, `family:<name>:<dim>:<d>[:<seed>]` or a JSON file path.
pub fn load(spec: &str, field: Option<&Field>, seed: u64) -> Result<Loaded, Error> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let table = builtin(name, field.cloned())?;
        return Ok(Loaded { table, order: None, known: None });
    }
    if let Some(rest) = spec.strip_prefix("family:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Parse(format!("expected family:<name>:<dim>:<d>[:<seed>], got `{spec}`")));
        }
        let kind: FamilyKind = parts[0].parse()?;
        let num = |s: &str, what: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad {what} `{s}`")));
        let nvars = num(parts[1], "dimension")? as usize;
        let d = num(parts[2], "d")? as u32;
        let seed = match parts.get(3) {
            Some(s) => num(s, "seed")?,
            None => seed,
        };
        let field = field.cloned().unwrap_or(Field::Prime(DEFAULT_PRIME));
        let fam = family(kind, nvars, d, &field, seed)?;
        return Ok(Loaded {
            table: fam.oracle,
            order: Some(fam.order),
            known: Some((fam.staircase, fam.expected_lms)),
        });
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let in_file = |e: Error| match e {
        Error::Parse(msg) => Error::Parse(format!("{spec}: {msg}")),
        other => other,
    };
    if json_is_gb(&text) {
        let (table, order, relations) = gb_from_json(&text).map_err(in_file)?;
        let lms: Vec<Monomial> = relations.iter().map(|g| g.lm().clone()).collect();
        let known = Staircase::complement_of(order.nvars(), &lms).map(|s| (s, lms));
        check_field(field, table.field())?;
        Ok(Loaded { table, order: Some(order), known })
    } else {
        let table = explicit_from_json(&text).map_err(in_file)?;
        check_field(field, table.field())?;
        Ok(Loaded { table, order: None, known: None })
    }
}

fn check_field(asked: Option<&Field>, found: &Field) -> Result<(), Error> {
    match asked {
        Some(f) if f != found => {
            Err(Error::Parse(format!("--field {} conflicts with the file's field {}", f.spec(), found.spec())))
        }
        _ => Ok(()),
    }
}

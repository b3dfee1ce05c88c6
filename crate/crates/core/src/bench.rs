//! Benchmark cells over the table families: distinct queries, basic
//! operations and staircase sizes, written as CSV.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::abms::abms;
use crate::algebra::Field;
use crate::asfglm::asfglm;
use crate::bms::{bms, stopping_bound};
use crate::error::Error;
use crate::monomial::Monomial;
use crate::result::GuessResult;
use crate::staircase::Staircase;
use crate::table::{family, Family, FamilyKind};

/// Default benchmark field.
pub const DEFAULT_PRIME: u64 = 65521;

pub const CSV_HEADER: &str =
    "family,nvars,d,algorithm,field,seed,staircase_size,queries,basic_ops,queries_per_S,ops_per_S3,ops_per_query,lms_ok,wall_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bms,
    Abms,
    Asfglm,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Bms => "bms",
            Algorithm::Abms => "abms",
            Algorithm::Asfglm => "asfglm",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm, Error> {
        match s {
            "bms" => Ok(Algorithm::Bms),
            "abms" => Ok(Algorithm::Abms),
            "asfglm" => Ok(Algorithm::Asfglm),
            _ => Err(Error::Parse(format!("unknown algorithm `{s}` (bms, abms, asfglm)"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One measured cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub family: FamilyKind,
    pub nvars: usize,
    pub d: u32,
    pub algorithm: Algorithm,
    pub field: Field,
    pub seed: u64,
    pub staircase_size: usize,
    pub queries: usize,
    pub basic_ops: u64,
    /// Whether the guessed leading monomials match the family's.
    pub lms_ok: bool,
    pub wall_ms: u128,
}

impl BenchRecord {
    pub fn queries_per_s(&self) -> f64 {
        self.queries as f64 / self.staircase_size as f64
    }

    pub fn ops_per_s3(&self) -> f64 {
        self.basic_ops as f64 / (self.staircase_size as f64).powi(3)
    }

    pub fn ops_per_query(&self) -> f64 {
        self.basic_ops as f64 / self.queries as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{}",
            self.family,
            self.nvars,
            self.d,
            self.algorithm,
            self.field.spec(),
            self.seed,
            self.staircase_size,
            self.queries,
            self.basic_ops,
            self.queries_per_s(),
            self.ops_per_s3(),
            self.ops_per_query(),
            self.lms_ok,
            self.wall_ms
        )
    }
}

/// Runs `algo` on a family table. aBMS gets the true staircase size as its
/// bound and [`stopping_bound`] as its stop monomial; BMS gets the same stop.
pub fn run_algorithm(fam: &Family, algo: Algorithm) -> Result<GuessResult, Error> {
    let mut table = fam.oracle.fresh();
    let size = fam.staircase.size();
    let stop = stopping_bound(&fam.staircase, &fam.expected_lms, &fam.order);
    match algo {
        Algorithm::Asfglm => asfglm(&mut table, &fam.order, size),
        Algorithm::Abms => abms(&mut table, &fam.order, size, &stop, None),
        Algorithm::Bms => bms(&mut table, &fam.order, &stop),
    }
}

/// Builds the family table and measures one algorithm on it.
pub fn run_cell(
    kind: FamilyKind,
    nvars: usize,
    d: u32,
    algo: Algorithm,
    field: &Field,
    seed: u64,
) -> Result<BenchRecord, Error> {
    let fam = family(kind, nvars, d, field, seed)?;
    let start = Instant::now();
    let res = run_algorithm(&fam, algo)?;
    let wall_ms = start.elapsed().as_millis();
    Ok(BenchRecord {
        family: kind,
        nvars,
        d,
        algorithm: algo,
        field: field.clone(),
        seed: fam.seed,
        staircase_size: fam.staircase.size(),
        queries: res.queries,
        basic_ops: res.ops.total(),
        lms_ok: res.leading_monomials() == fam.expected_lms,
        wall_ms,
    })
}

/// Query-count bounds for a staircase `S` and leading monomials `LM`,
/// with `S+ = S ∪ LM`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryBounds {
    /// `#(S + S+)`, the fewest queries aBMS can make.
    pub abms_lower: usize,
    /// `C(n + d_S + d_max, n)` with `d_max = max(d_S, d_G)`.
    pub abms_upper: u128,
    /// `#(S + S)`.
    pub asfglm_lower: usize,
    /// `#(S+ + S+)`; asFGLM makes strictly fewer queries.
    pub asfglm_upper: usize,
}

fn sumset(a: &[Monomial], b: &[Monomial]) -> usize {
    let mut out = HashSet::new();
    for s in a {
        for t in b {
            out.insert(s.mul(t));
        }
    }
    out.len()
}

pub fn query_bounds(staircase: &Staircase, lms: &[Monomial]) -> QueryBounds {
    let n = staircase.nvars();
    let elems: Vec<Monomial> =
        staircase.generators().iter().flat_map(|g| g.divisors()).collect::<HashSet<_>>().into_iter().collect();
    let mut plus = elems.clone();
    plus.extend(lms.iter().cloned());
    let d_s = staircase.max_degree() as u128;
    let d_g = lms.iter().map(|m| m.degree()).max().unwrap_or(0) as u128;
    let top = n as u128 + d_s + d_s.max(d_g);
    let mut binom: u128 = 1;
    for k in 0..n as u128 {
        binom = binom * (top - k) / (k + 1);
    }
    QueryBounds {
        abms_lower: sumset(&elems, &plus),
        abms_upper: binom,
        asfglm_lower: sumset(&elems, &elems),
        asfglm_upper: sumset(&plus, &plus),
    }
}

/// A cross product of benchmark cells.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub families: Vec<FamilyKind>,
    pub nvars: usize,
    pub dmin: u32,
    pub dmax: u32,
    pub algorithms: Vec<Algorithm>,
    pub field: Field,
    pub seed: u64,
}

/// A cell of a sweep, or the error that prevented measuring it.
pub type CellOutcome = Result<BenchRecord, (FamilyKind, u32, Algorithm, Error)>;

impl SweepSpec {
    /// Cells in output order: family, then d, then algorithm.
    pub fn cells(&self) -> Vec<(FamilyKind, u32, Algorithm)> {
        let mut out = Vec::new();
        for &f in &self.families {
            for d in self.dmin..=self.dmax {
                for &a in &self.algorithms {
                    out.push((f, d, a));
                }
            }
        }
        out
    }

    pub fn run_one(&self, (kind, d, algo): (FamilyKind, u32, Algorithm)) -> CellOutcome {
        run_cell(kind, self.nvars, d, algo, &self.field, self.seed).map_err(|e| (kind, d, algo, e))
    }
}

/// Runs every cell sequentially.
pub fn run_sweep(spec: &SweepSpec) -> Vec<CellOutcome> {
    spec.cells().into_iter().map(|c| spec.run_one(c)).collect()
}

/// CSV text for measured records, header first.
pub fn to_csv<'a>(records: impl IntoIterator<Item = &'a BenchRecord>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    #[test]
    fn shape_cells() {
        let a = run_cell(FamilyKind::Shape, 2, 4, Algorithm::Asfglm, &fp(), 0).unwrap();
        let b = run_cell(FamilyKind::Shape, 2, 4, Algorithm::Abms, &fp(), 0).unwrap();
        assert_eq!((a.staircase_size, b.queries), (4, 14));
        assert!(a.lms_ok && b.lms_ok);
    }

    #[test]
    fn simplex_cells_agree() {
        for algo in [Algorithm::Asfglm, Algorithm::Abms] {
            let r = run_cell(FamilyKind::Simplex, 2, 4, algo, &fp(), 0).unwrap();
            assert_eq!((r.staircase_size, r.queries), (10, 36), "{algo}");
        }
    }

    #[test]
    fn csv_row_layout() {
        let r = BenchRecord {
            family: FamilyKind::Rectangle,
            nvars: 2,
            d: 4,
            algorithm: Algorithm::Asfglm,
            field: fp(),
            seed: 3,
            staircase_size: 8,
            queries: 25,
            basic_ops: 1024,
            lms_ok: true,
            wall_ms: 7,
        };
        assert_eq!(r.csv_row(), "rectangle,2,4,asfglm,fp:65521,3,8,25,1024,3.125000,2.000000,40.960000,true,7");
        let csv = to_csv([&r]);
        assert_eq!(csv.lines().next(), Some(CSV_HEADER));
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(CSV_HEADER.split(',').count(), r.csv_row().split(',').count());
    }

    #[test]
    fn bounds_for_a_square() {
        // S = {1, x, y, xy}, LM = {x^2, y^2}.
        let s = Staircase::stabilize(2, &[Monomial::new(&[1, 1])]);
        let lms = [Monomial::new(&[2, 0]), Monomial::new(&[0, 2])];
        let b = query_bounds(&s, &lms);
        assert_eq!(b, QueryBounds { abms_lower: 13, abms_upper: 15, asfglm_lower: 9, asfglm_upper: 15 });
    }

    #[test]
    fn sweep_order_and_names() {
        let spec = SweepSpec {
            families: vec![FamilyKind::Shape],
            nvars: 2,
            dmin: 2,
            dmax: 3,
            algorithms: vec![Algorithm::Asfglm, Algorithm::Abms],
            field: fp(),
            seed: 0,
        };
        let cells = spec.cells();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[1], (FamilyKind::Shape, 2, Algorithm::Abms));
        assert!(run_sweep(&spec).iter().all(|c| c.as_ref().is_ok_and(|r| r.lms_ok)));
        assert_eq!("abms".parse::<Algorithm>().unwrap(), Algorithm::Abms);
        assert!("sfglm".parse::<Algorithm>().is_err());
    }
}

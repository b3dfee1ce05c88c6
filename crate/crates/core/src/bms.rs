//! The Berlekamp-Massey-Sakata algorithm in its linear-algebra form.
//!
//! Monomials `m` are visited in increasing order. Each relation `g` whose
//! leading monomial divides `m` is tested by the bracket `[m/LM(g) * g]`.
//! Failing relations enter the edge `S` with their ratio `m/LM(g)`; the
//! staircase is the divisor closure of the ratios and the new relations sit
//! on its border. The adaptive variant in [`crate::abms`] reuses this engine.

use crate::abms::inter_reduce;
use crate::algebra::{Arith, FieldElement};
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::result::{GuessResult, Relation, SkipStats};
use crate::staircase::{EdgeEntry, Staircase};
use crate::table::TableOracle;

/// Knobs of the shared engine.
#[derive(Clone, Debug, Default)]
pub struct BmsConfig {
    /// Staircase size bound `d` enabling the skip criterion.
    pub bound: Option<usize>,
    /// Highest total degree visited; required for LEX.
    pub degree_cap: Option<u32>,
    /// Inter-reduce the relations after every step.
    pub reduce_each_step: bool,
    /// Record a step log.
    pub trace: bool,
}

/// Why a test was skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// The relation was already skipped at this divisor of `m`.
    History(Monomial),
    /// A failure would raise the staircase size to this value.
    Size(usize),
}

/// A relation being built, with the monomials where its test was skipped.
#[derive(Clone, Debug)]
struct Live {
    poly: Polynomial,
    skipped: Vec<Monomial>,
}

/// Runs BMS up to `stop`. The ordering must be degree-compatible.
pub fn bms(table: &mut TableOracle, ord: &MonomialOrder, stop: &Monomial) -> Result<GuessResult, Error> {
    bms_with(table, ord, stop, &BmsConfig::default())
}

/// Runs BMS with explicit options. Without a bound this is plain BMS.
pub fn bms_with(
    table: &mut TableOracle,
    ord: &MonomialOrder,
    stop: &Monomial,
    cfg: &BmsConfig,
) -> Result<GuessResult, Error> {
    if cfg.bound.is_none() && !ord.is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    if ord.nvars() != table.nvars() {
        return Err(Error::VariableCount { expected: table.nvars(), found: ord.nvars() });
    }
    Engine::new(table, ord, cfg).run(stop)
}

/// Skip test of the adaptive variant for a relation with leading monomial
/// `lm` at the visited monomial `m`, given the current staircase and the
/// monomials where the relation was skipped before.
pub fn should_skip(
    staircase: &Staircase,
    lm: &Monomial,
    skipped: &[Monomial],
    m: &Monomial,
    d: usize,
) -> Option<SkipReason> {
    if let Some(s) = skipped.iter().find(|s| s.divides(m)) {
        return Some(SkipReason::History(s.clone()));
    }
    let v = lm.try_quotient(m)?;
    if staircase.contains(&v) {
        return None;
    }
    let size = staircase.size_with(&[lm.clone(), v]);
    (size > d).then_some(SkipReason::Size(size))
}

/// `f1 - (e1/e2) f2` with `e_i = [v * f_i]`: a relation failing strictly
/// later than both inputs when they fail with the same ratio `v`.
pub fn combine(
    table: &mut TableOracle,
    f1: &Polynomial,
    f2: &Polynomial,
    v: &Monomial,
    ord: &MonomialOrder,
    arith: &Arith,
) -> Result<Polynomial, Error> {
    let e1 = table.bracket(f1, v, arith)?;
    let e2 = table.bracket(f2, v, arith)?;
    if e2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c = arith.div(&e1, &e2)?;
    let out = f1.sub_scaled(&c, f2, ord, arith)?;
    if out.is_zero() {
        return Err(Error::ZeroCombination);
    }
    Ok(out)
}

/// The monomial `s_max * max(g_max, s_max)` after which BMS has recovered
/// the staircase and the relations of a zero-dimensional target.
pub fn stopping_bound(staircase: &Staircase, lms: &[Monomial], ord: &MonomialOrder) -> Monomial {
    let n = ord.nvars();
    let s_max = staircase.max(ord).unwrap_or_else(|| Monomial::one(n));
    let g_max = lms.iter().cloned().reduce(|a, b| ord.max(&a, &b).clone()).unwrap_or_else(|| Monomial::one(n));
    s_max.mul(ord.max(&g_max, &s_max))
}

struct Engine<'a> {
    table: &'a mut TableOracle,
    ord: &'a MonomialOrder,
    cfg: &'a BmsConfig,
    arith: Arith,
    n: usize,
    g: Vec<Live>,
    edge: Vec<EdgeEntry>,
    staircase: Staircase,
    trace: Vec<String>,
    stats: SkipStats,
}

impl<'a> Engine<'a> {
    fn new(table: &'a mut TableOracle, ord: &'a MonomialOrder, cfg: &'a BmsConfig) -> Engine<'a> {
        let n = ord.nvars();
        let field = table.field().clone();
        Engine {
            table,
            ord,
            cfg,
            arith: Arith::new(field.clone()),
            n,
            g: vec![Live { poly: Polynomial::one(&field, n), skipped: Vec::new() }],
            edge: Vec::new(),
            staircase: Staircase::empty(n),
            trace: Vec::new(),
            stats: SkipStats::default(),
        }
    }

    fn show(&self, m: &Monomial) -> String {
        self.ord.render(m)
    }

    fn show_poly(&self, p: &Polynomial) -> String {
        p.render(self.ord.names())
    }

    fn bracket_text(&self, p: &Polynomial, v: &Monomial) -> String {
        p.render_with(
            |t| {
                let idx: Vec<String> = t.mul(v).exps().iter().map(|e| e.to_string()).collect();
                format!("u_{{{}}}", idx.join(","))
            },
            false,
        )
    }

    fn edge_text(entries: &[EdgeEntry], ord: &MonomialOrder) -> String {
        let items: Vec<String> =
            entries.iter().map(|e| format!("[{}, {}]", e.relation.render(ord.names()), ord.render(&e.ratio))).collect();
        format!("{{{}}}", items.join(", "))
    }

    fn log(&mut self, line: String) {
        if self.cfg.trace {
            self.trace.push(line);
        }
    }

    fn run(mut self, stop: &Monomial) -> Result<GuessResult, Error> {
        let cap = match (self.cfg.degree_cap, self.cfg.bound) {
            (Some(c), _) => Some(c),
            (None, Some(d)) if !self.ord.is_degree_compatible() => Some(2 * d as u32 - 1),
            _ => None,
        };
        let visit = self.ord.enumerate(stop, cap)?;
        for m in &visit {
            self.step(m)?;
        }
        self.finish(&visit)
    }

    fn step(&mut self, m: &Monomial) -> Result<(), Error> {
        if self.cfg.trace {
            self.trace.push(format!("For the monomial {}", self.show(m)));
        }
        let mut fails: Vec<Option<FieldElement>> = vec![None; self.g.len()];
        let mut candidates = self.edge.clone();
        let (mut applicable, mut skipped_here) = (0, 0);
        for i in 0..self.g.len() {
            let lm = self.g[i].poly.lm().clone();
            let Some(v) = lm.try_quotient(m) else {
                if self.cfg.trace {
                    let line = format!(
                        "  Nothing must be done for the relation g{} = {}.",
                        i + 1,
                        self.show_poly(&self.g[i].poly)
                    );
                    self.trace.push(line);
                }
                continue;
            };
            applicable += 1;
            if let Some(d) = self.cfg.bound {
                if let Some(reason) = should_skip(&self.staircase, &lm, &self.g[i].skipped, m, d) {
                    if self.cfg.trace {
                        let line = match &reason {
                            SkipReason::History(s) => {
                                format!("  We did not test g{} in {}. We skip testing g{}.", i + 1, self.show(s), i + 1)
                            }
                            SkipReason::Size(size) => format!(
                                "  Should the relation g{} = {} fail in {}, we would have to add {} and {} in the staircase, raising its size to {}. We skip testing g{}.",
                                i + 1,
                                self.show_poly(&self.g[i].poly),
                                self.show(m),
                                self.show(&lm),
                                self.show(&v),
                                size,
                                i + 1
                            ),
                        };
                        self.trace.push(line);
                    }
                    self.g[i].skipped.push(m.clone());
                    skipped_here += 1;
                    self.stats.skipped_tests += 1;
                    continue;
                }
            }
            let e = self.table.bracket(&self.g[i].poly, &v, &self.arith)?;
            if self.cfg.trace {
                let verdict = if e.is_zero() { "succeeds" } else { "fails" };
                let line = format!(
                    "  The relation g{} = {} {} since [{}] = {}.",
                    i + 1,
                    self.show_poly(&self.g[i].poly),
                    verdict,
                    self.bracket_text(&self.g[i].poly, &v),
                    e
                );
                self.trace.push(line);
            }
            if !e.is_zero() {
                let inv = self.arith.inv(&e)?;
                candidates.push(EdgeEntry {
                    relation: self.g[i].poly.scale(&inv, &self.arith)?,
                    ratio: v,
                    fail: m.clone(),
                });
            }
            fails[i] = Some(e);
        }
        if applicable > 0 && skipped_here == applicable {
            self.stats.fully_skipped_monomials.push(m.clone());
        }
        if fails.iter().all(|e| e.as_ref().is_none_or(FieldElement::is_zero)) {
            return Ok(());
        }
        if self.cfg.trace {
            let line = format!("  Thus S' = {}.", Self::edge_text(&candidates, self.ord));
            self.trace.push(line);
        }
        let new_edge = self.reduce_edge(candidates);
        let new_staircase = Staircase::from_edge(self.n, &new_edge);
        let mut border = new_staircase.border();
        self.ord.sort(&mut border);
        if self.cfg.trace {
            let lms: Vec<String> = border.iter().map(|b| self.show(b)).collect();
            let line =
                format!("  S' is set to {} and G' = {{{}}}.", Self::edge_text(&new_edge, self.ord), lms.join(", "));
            self.trace.push(line);
        }
        let mut next = Vec::with_capacity(border.len());
        for b in &border {
            next.push(self.update(b, m, &fails)?);
        }
        if self.cfg.reduce_each_step {
            let polys: Vec<Polynomial> = next.iter().map(|l: &Live| l.poly.clone()).collect();
            let reduced = inter_reduce(&polys, self.ord, &self.arith)?;
            for (l, p) in next.iter_mut().zip(reduced) {
                l.poly = p;
            }
        }
        self.g = next;
        self.edge = new_edge;
        self.staircase = new_staircase;
        if self.cfg.trace {
            let gs: Vec<String> = self.g.iter().map(|l| self.show_poly(&l.poly)).collect();
            let line =
                format!("  We update G := {{{}}} and S := {}.", gs.join(", "), Self::edge_text(&self.edge, self.ord));
            self.trace.push(line);
        }
        Ok(())
    }

    /// Keeps, for each maximal ratio, the entry with the smallest leading
    /// monomial; ratios dividing another ratio are dropped.
    fn reduce_edge(&self, candidates: Vec<EdgeEntry>) -> Vec<EdgeEntry> {
        let mut out: Vec<EdgeEntry> = Vec::new();
        for c in &candidates {
            let dominated = candidates.iter().any(|o| o.ratio != c.ratio && c.ratio.divides(&o.ratio));
            if dominated {
                continue;
            }
            match out.iter_mut().find(|o| o.ratio == c.ratio) {
                Some(o) => {
                    if self.ord.less(c.relation.lm(), o.relation.lm()) {
                        *o = c.clone();
                    }
                }
                None => out.push(c.clone()),
            }
        }
        out.sort_by(|a, b| self.ord.compare(&a.ratio, &b.ratio));
        out
    }

    /// The relation of the new set with leading monomial `b`.
    fn update(&mut self, b: &Monomial, m: &Monomial, fails: &[Option<FieldElement>]) -> Result<Live, Error> {
        let (i, src) = self
            .g
            .iter()
            .enumerate()
            .filter(|(_, l)| l.poly.lm().divides(b))
            .min_by(|x, y| self.ord.compare(x.1.poly.lm(), y.1.poly.lm()))
            .expect("every border monomial is a multiple of an old leading monomial");
        let t = src.poly.lm().try_quotient(b).expect("divides");
        let translated = Live { poly: src.poly.mul_monomial(&t), skipped: src.skipped.clone() };
        let tested_failure = fails[i].as_ref().filter(|e| !e.is_zero());
        let mut line = None;
        let out = match (src.poly.lm().divides(m), b.try_quotient(m), tested_failure) {
            (false, _, _) => {
                if self.cfg.trace {
                    line = Some(format!(
                        "  For the relation g' = {}, {} does not divide {} thus g' = {}.",
                        self.show(b),
                        self.show(src.poly.lm()),
                        self.show(m),
                        self.show_poly(&translated.poly)
                    ));
                }
                translated
            }
            (true, Some(w), Some(e)) => {
                let h =
                    self.edge.iter().filter(|h| w.divides(&h.ratio)).max_by(|x, y| self.ord.compare(&x.fail, &y.fail));
                match h {
                    Some(h) => {
                        let mult = w.try_quotient(&h.ratio).expect("divides");
                        let poly =
                            translated.poly.sub_scaled(e, &h.relation.mul_monomial(&mult), self.ord, &self.arith)?;
                        if self.cfg.trace {
                            line = Some(format!(
                                "  For the relation g' = {}, {} divides {} and {} divides the ratio of {}, hence g' = {}.",
                                self.show(b),
                                self.show(b),
                                self.show(m),
                                self.show(&w),
                                self.show_poly(&h.relation),
                                self.show_poly(&poly)
                            ));
                        }
                        Live { poly, skipped: Vec::new() }
                    }
                    None => translated,
                }
            }
            _ => translated,
        };
        if let Some(l) = line {
            self.trace.push(l);
        }
        Ok(out)
    }

    fn finish(mut self, visit: &[Monomial]) -> Result<GuessResult, Error> {
        let mut relations = Vec::with_capacity(self.g.len());
        for live in &self.g {
            let lm = live.poly.lm();
            let last = visit.iter().rev().find(|m| lm.divides(m));
            let mut r = Relation::new(live.poly.monic(&self.arith)?);
            r.shift = last.map(|m| lm.try_quotient(m).expect("divides"));
            r.skipped_shifts = live.skipped.clone();
            relations.push(r);
        }
        let algorithm = match (self.cfg.bound, self.cfg.reduce_each_step) {
            (None, _) => "bms",
            (Some(_), false) => "abms",
            (Some(_), true) => "abms-reduced",
        };
        let staircase = Staircase::from_edge(self.n, &self.edge);
        let plural = if relations.len() == 1 { "" } else { "s" };
        self.log(format!("The algorithm returns {} relation{plural}.", relations.len()));
        Ok(GuessResult {
            algorithm: algorithm.to_string(),
            field: self.table.field().clone(),
            order: self.ord.clone(),
            relations,
            staircase,
            queries: self.table.queries(),
            ops: self.arith.ops(),
            trace: self.trace,
            skip_stats: self.cfg.bound.map(|_| self.stats),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::table::builtin;

    fn drl() -> MonomialOrder {
        MonomialOrder::parse("drl:y<x").unwrap()
    }

    fn mono(s: &str) -> Monomial {
        drl().parse_monomial(s).unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(s, &drl(), &Field::Rational).unwrap()
    }

    fn shifts(r: &GuessResult) -> Vec<String> {
        r.relations.iter().map(|g| r.order.render(g.shift.as_ref().unwrap())).collect()
    }

    #[test]
    fn binomial_to_x3() {
        let r = bms(&mut builtin("binomial", None).unwrap(), &drl(), &mono("x^3")).unwrap();
        assert_eq!(r.relation_strings(), ["y^2", "x*y - y - 1", "x^2 - 2*x + 1"]);
        assert_eq!(shifts(&r), ["x", "x", "x"]);
        assert!(r.skip_stats.is_none());
    }

    #[test]
    fn binomial_to_x5() {
        let r = bms(&mut builtin("binomial", None).unwrap(), &drl(), &mono("x^5")).unwrap();
        assert_eq!(r.relation_strings(), ["x*y - y - 1", "y^3", "x^3 - 3*x^2 + 3*x - 1"]);
        assert_eq!(shifts(&r), ["x^3", "x^2", "x^2"]);
        assert_eq!(r.staircase.size(), 5);
    }

    #[test]
    fn zero_table_keeps_one() {
        let r = bms(&mut builtin("zero", None).unwrap(), &drl(), &mono("x^2*y")).unwrap();
        assert_eq!(r.relation_strings(), ["1"]);
        assert!(r.staircase.is_empty());
        assert_eq!(r.relations[0].shift.as_ref(), Some(&mono("x^2*y")));
    }

    #[test]
    fn lex_is_rejected() {
        let lex = MonomialOrder::lex(2);
        let res = bms(&mut builtin("binomial", None).unwrap(), &lex, &Monomial::new(&[1, 0]));
        assert!(matches!(res, Err(Error::NotDegreeCompatible)));
    }

    #[test]
    fn combination_examples() {
        let arith = Arith::new(Field::Rational);
        let mut t = builtin("binomial", None).unwrap();
        let x = mono("x");
        let g = combine(&mut t, &poly("x*y - 1"), &poly("y"), &x, &drl(), &arith).unwrap();
        assert_eq!(g, poly("x*y - y - 1"));
        let g = combine(&mut t, &poly("x^2 - x"), &poly("x - 1"), &mono("y"), &drl(), &arith).unwrap();
        assert_eq!(g, poly("x^2 - 2*x + 1"));
        let same = combine(&mut t, &poly("x - 1"), &poly("x - 1"), &mono("y"), &drl(), &arith);
        assert!(matches!(same, Err(Error::ZeroCombination)));
        // [x * y^2] = C(1, 2) = 0.
        let zero = combine(&mut t, &poly("x"), &poly("y^2"), &x, &drl(), &arith);
        assert!(matches!(zero, Err(Error::DivisionByZero)));
    }

    #[test]
    fn stopping_bounds() {
        let ord = drl();
        // <x^p, y^q> with q > p: y^(2q-1) if p = 1, else x^(2p-2) y^(2q-2).
        for (p, q) in [(1u32, 2u32), (1, 4), (2, 3), (3, 5)] {
            let lms = [Monomial::new(&[p, 0]), Monomial::new(&[0, q])];
            let s = Staircase::complement_of(2, &lms).unwrap();
            let want = if p == 1 { Monomial::new(&[0, 2 * q - 1]) } else { Monomial::new(&[2 * p - 2, 2 * q - 2]) };
            assert_eq!(stopping_bound(&s, &lms, &ord), want, "p={p} q={q}");
        }
        let lex = MonomialOrder::lex(2);
        let lms = [Monomial::new(&[0, 5]), Monomial::new(&[1, 0])];
        let s = Staircase::complement_of(2, &lms).unwrap();
        assert_eq!(stopping_bound(&s, &lms, &drl()), Monomial::new(&[0, 9]));
        assert_eq!(stopping_bound(&s, &lms, &lex), Monomial::new(&[1, 4]));
    }

    #[test]
    fn trace_follows_the_worked_example() {
        let cfg = BmsConfig { trace: true, ..BmsConfig::default() };
        let r = bms_with(&mut builtin("binomial", None).unwrap(), &drl(), &mono("x^5"), &cfg).unwrap();
        let at = r.trace.iter().position(|l| l == "For the monomial x^3*y^2").unwrap();
        assert_eq!(
            r.trace[at + 1],
            "  The relation g1 = x*y - y - 1 succeeds since [u_{3,2} - u_{2,2} - u_{2,1}] = 0."
        );
        assert_eq!(r.trace[at + 2], "  Nothing must be done for the relation g2 = y^3.");
        assert_eq!(
            r.trace[at + 3],
            "  The relation g3 = x^3 - 2*x^2 + x fails since [u_{3,2} - 2*u_{2,2} + u_{1,2}] = 1."
        );
        assert!(r.trace.iter().any(|l| l.contains("hence g' = x^3 - 3*x^2 + 3*x - 1")));
    }
}

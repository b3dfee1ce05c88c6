//! Multi-Hankel matrices `H_{U,T} = (u_{a*b})_{a in U, b in T}` and the
//! linear algebra asFGLM runs on them.
//!
//! [`BorderedLdl`] keeps an `L D L^T` factorization of `H_{S,S}` and tests a
//! bordered matrix `H_{S+t,S+t}` with one triangular solve, so growing `S`
//! one monomial at a time costs `O(#S^2)` per step.

use crate::algebra::{Arith, FieldElement};
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::table::TableOracle;

/// A matrix with rows and columns labelled by monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHankel {
    rows: Vec<Monomial>,
    cols: Vec<Monomial>,
    entries: Vec<Vec<FieldElement>>,
}

impl MultiHankel {
    /// Queries `u_{a*b}` for every row label `a` and column label `b`.
    pub fn build(t: &mut TableOracle, rows: &[Monomial], cols: &[Monomial]) -> Result<MultiHankel, Error> {
        let mut entries = Vec::with_capacity(rows.len());
        for a in rows {
            let row: Result<Vec<FieldElement>, Error> = cols.iter().map(|b| t.query(&a.mul(b))).collect();
            entries.push(row?);
        }
        Ok(MultiHankel { rows: rows.to_vec(), cols: cols.to_vec(), entries })
    }

    pub fn rows(&self) -> &[Monomial] {
        &self.rows
    }

    pub fn cols(&self) -> &[Monomial] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r][c]
    }

    pub fn transpose(&self) -> MultiHankel {
        let entries =
            (0..self.cols.len()).map(|c| (0..self.rows.len()).map(|r| self.entries[r][c].clone()).collect()).collect();
        MultiHankel { rows: self.cols.clone(), cols: self.rows.clone(), entries }
    }

    /// Rank by Gaussian elimination, pivoting on the first nonzero entry.
    pub fn rank(&self, arith: &Arith) -> Result<usize, Error> {
        let mut m = self.entries.clone();
        let (nr, nc) = (self.rows.len(), self.cols.len());
        let mut rank = 0;
        for c in 0..nc {
            let Some(p) = (rank..nr).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in rank + 1..nr {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = arith.div(&m[r][c], &m[rank][c])?;
                for k in c..nc {
                    let prod = arith.mul(&f, &m[rank][k])?;
                    m[r][k] = arith.sub(&m[r][k], &prod)?;
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Whether a square matrix is invertible; the empty matrix is.
    pub fn is_full_rank(&self, arith: &Arith) -> Result<bool, Error> {
        Ok(self.rows.len() == self.cols.len() && self.rank(arith)? == self.rows.len())
    }
}

/// The relation `target + sum_s alpha_s s` with `H_{S,S} alpha + H_{S,{target}} = 0`,
/// solved from scratch.
pub fn solve_relation(
    t: &mut TableOracle,
    s: &[Monomial],
    target: &Monomial,
    ord: &MonomialOrder,
    arith: &Arith,
) -> Result<Polynomial, Error> {
    let h = MultiHankel::build(t, s, s)?;
    let b = MultiHankel::build(t, s, std::slice::from_ref(target))?;
    let n = s.len();
    let mut m: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = h.entries[r].clone();
        row.push(arith.neg(&b.entries[r][0])?);
        m.push(row);
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::Singular)?;
        m.swap(c, p);
        let inv = arith.inv(&m[c][c])?;
        for k in c..=n {
            m[c][k] = arith.mul(&m[c][k], &inv)?;
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..=n {
                let prod = arith.mul(&f, &m[c][k])?;
                m[r][k] = arith.sub(&m[r][k], &prod)?;
            }
        }
    }
    let mut terms = vec![(target.clone(), arith.field().one())];
    terms.extend(s.iter().zip(&m).map(|(mono, row)| (mono.clone(), row[n].clone())));
    Polynomial::from_terms(target.nvars(), terms, ord)
}

/// Whether the row `row` of the multi-Hankel matrix annihilates `relation`,
/// i.e. `[row * relation] = 0`.
pub fn check_relation_row(
    t: &mut TableOracle,
    relation: &Polynomial,
    row: &Monomial,
    arith: &Arith,
) -> Result<bool, Error> {
    Ok(t.bracket(relation, row, arith)?.is_zero())
}

/// Result of eliminating a new border column against the factorization.
#[derive(Clone, Debug)]
pub struct Border {
    pub label: Monomial,
    /// `D^{-1} L^{-1} b`.
    w: Vec<FieldElement>,
    /// Schur complement `u_{t^2} - b^T A^{-1} b`, if the corner was queried.
    pub sigma: Option<FieldElement>,
}

impl Border {
    /// Whether the bordered matrix is invertible.
    pub fn is_full_rank(&self) -> bool {
        self.sigma.as_ref().is_some_and(|s| !s.is_zero())
    }
}

/// `L D L^T` factorization of a symmetric `H_{S,S}` with invertible leading minors.
#[derive(Clone, Debug, Default)]
pub struct BorderedLdl {
    labels: Vec<Monomial>,
    /// Strictly lower part of the unit triangular factor, row by row.
    lower: Vec<Vec<FieldElement>>,
    diag: Vec<FieldElement>,
}

impl BorderedLdl {
    pub fn new() -> BorderedLdl {
        BorderedLdl::default()
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Eliminates the column `H_{S,{t}}`; with `corner`, also the entry `u_{t^2}`.
    pub fn border(&self, table: &mut TableOracle, t: &Monomial, corner: bool, arith: &Arith) -> Result<Border, Error> {
        let n = self.labels.len();
        let b: Vec<FieldElement> = self.labels.iter().map(|s| table.query(&s.mul(t))).collect::<Result<_, _>>()?;
        let mut z: Vec<FieldElement> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = b[i].clone();
            for j in 0..i {
                let prod = arith.mul(&self.lower[i][j], &z[j])?;
                acc = arith.sub(&acc, &prod)?;
            }
            z.push(acc);
        }
        let w: Vec<FieldElement> = z.iter().zip(&self.diag).map(|(a, d)| arith.div(a, d)).collect::<Result<_, _>>()?;
        let sigma = if corner {
            let mut acc = table.query(&t.mul(t))?;
            for (a, b) in w.iter().zip(&z) {
                let prod = arith.mul(a, b)?;
                acc = arith.sub(&acc, &prod)?;
            }
            Some(acc)
        } else {
            None
        };
        Ok(Border { label: t.clone(), w, sigma })
    }

    /// Appends a full-rank border to the factorization.
    pub fn accept(&mut self, border: Border) {
        let sigma = border.sigma.clone().expect("accepted borders carry their corner");
        debug_assert!(!sigma.is_zero());
        self.labels.push(border.label);
        self.lower.push(border.w);
        self.diag.push(sigma);
    }

    /// The relation `t + sum_s alpha_s s` with `H_{S,S} alpha = -H_{S,{t}}`.
    pub fn relation(&self, border: &Border, ord: &MonomialOrder, arith: &Arith) -> Result<Polynomial, Error> {
        let n = self.labels.len();
        let mut alpha: Vec<FieldElement> = vec![arith.field().zero(); n];
        for i in (0..n).rev() {
            let mut acc = arith.neg(&border.w[i])?;
            for j in i + 1..n {
                let prod = arith.mul(&self.lower[j][i], &alpha[j])?;
                acc = arith.sub(&acc, &prod)?;
            }
            alpha[i] = acc;
        }
        let mut terms = vec![(border.label.clone(), arith.field().one())];
        terms.extend(self.labels.iter().cloned().zip(alpha));
        Polynomial::from_terms(border.label.nvars(), terms, ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::table::builtin;
    use proptest::prelude::*;

    fn mons(ord: &MonomialOrder, list: &[&str]) -> Vec<Monomial> {
        list.iter().map(|s| ord.parse_monomial(s).unwrap()).collect()
    }

    #[test]
    fn example_matrices() {
        let ord = MonomialOrder::drl(2);
        let arith = Arith::new(Field::Rational);
        let mut t = builtin("pow23", None).unwrap();
        let y = mons(&ord, &["1", "y"]);
        let h = MultiHankel::build(&mut t, &y, &y).unwrap();
        let text: Vec<String> =
            (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| h.entry(r, c).to_string()).collect();
        assert_eq!(text, ["1", "3", "3", "9"]);
        assert!(!h.is_full_rank(&arith).unwrap());
        let x = mons(&ord, &["1", "x"]);
        let h = MultiHankel::build(&mut t, &x, &x).unwrap();
        let text: Vec<String> =
            (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| h.entry(r, c).to_string()).collect();
        assert_eq!(text, ["1", "4", "4", "12"]);
        assert!(h.is_full_rank(&arith).unwrap());
        let empty = MultiHankel::build(&mut t, &[], &[]).unwrap();
        assert!(empty.is_full_rank(&arith).unwrap());
        let one = mons(&ord, &["1"]);
        assert!(MultiHankel::build(&mut t, &one, &one).unwrap().entry(0, 0).is_one());
    }

    #[test]
    fn solving_relations() {
        let ord = MonomialOrder::drl(2);
        let arith = Arith::new(Field::Rational);
        let mut t = builtin("pow23", None).unwrap();
        let r = solve_relation(&mut t, &mons(&ord, &["1"]), &mons(&ord, &["y"])[0], &ord, &arith).unwrap();
        assert_eq!(r.to_string(), "y - 3");
        let r = solve_relation(&mut t, &mons(&ord, &["1", "x"]), &mons(&ord, &["x^2"])[0], &ord, &arith).unwrap();
        assert_eq!(r.to_string(), "x^2 - 4*x + 4");
        assert!(check_relation_row(
            &mut t,
            &Polynomial::parse("y - 3", &ord, &Field::Rational).unwrap(),
            &mons(&ord, &["y"])[0],
            &arith
        )
        .unwrap());

        let f = Field::Prime(11);
        let arith = Arith::new(f.clone());
        let mut t = builtin("f11", None).unwrap();
        let r = solve_relation(&mut t, &mons(&ord, &["1", "y", "x", "x^2"]), &mons(&ord, &["x^3"])[0], &ord, &arith)
            .unwrap();
        assert_eq!(r.to_string(), "x^3 + 3*x^2 + 10*x + y + 4");
        let g = Polynomial::parse("x*y - x - y + 1", &ord, &f).unwrap();
        assert!(check_relation_row(&mut t, &g, &mons(&ord, &["x*y"])[0], &arith).unwrap());
        assert_eq!(t.bracket(&g, &mons(&ord, &["x^2"])[0], &arith).unwrap(), f.from_i64(4));
        assert!(!check_relation_row(&mut t, &g, &mons(&ord, &["x^2"])[0], &arith).unwrap());
    }

    #[test]
    fn singular_solve_is_an_error() {
        let ord = MonomialOrder::drl(2);
        let arith = Arith::new(Field::Rational);
        let mut t = builtin("pow23", None).unwrap();
        let s = mons(&ord, &["1", "y"]);
        assert!(matches!(solve_relation(&mut t, &s, &mons(&ord, &["x"])[0], &ord, &arith), Err(Error::Singular)));
    }

    fn random_table(seed: u64) -> TableOracle {
        let p = 10007u64;
        TableOracle::from_rule(2, Field::Prime(p), move |m: &Monomial| {
            let h = (m.exps()[0] as u64 * 7919 + m.exps()[1] as u64 * 104729 + seed).wrapping_mul(2654435761) % 97;
            Field::Prime(p).from_i64((h % 5) as i64)
        })
    }

    proptest! {
        #[test]
        fn transpose_symmetry(seed in 0u64..1000, a in 1usize..5, b in 1usize..5) {
            let ord = MonomialOrder::drl(2);
            let all = ord.enumerate(&Monomial::new(&[3, 0]), None).unwrap();
            let mut t = random_table(seed);
            let h1 = MultiHankel::build(&mut t, &all[..a], &all[a..a + b]).unwrap();
            let h2 = MultiHankel::build(&mut t, &all[a..a + b], &all[..a]).unwrap();
            prop_assert_eq!(h1.transpose(), h2);
        }

        #[test]
        fn incremental_agrees_with_scratch(seed in 0u64..5000) {
            let ord = MonomialOrder::drl(2);
            let arith = Arith::new(Field::Prime(10007));
            let mut t = random_table(seed);
            let labels = ord.enumerate(&Monomial::new(&[0, 3]), None).unwrap();
            let mut ldl = BorderedLdl::new();
            for m in &labels {
                let border = ldl.border(&mut t, m, true, &arith).unwrap();
                let mut trial: Vec<Monomial> = ldl.labels().to_vec();
                trial.push(m.clone());
                let h = MultiHankel::build(&mut t, &trial, &trial).unwrap();
                prop_assert_eq!(border.is_full_rank(), h.is_full_rank(&arith).unwrap());
                if border.is_full_rank() {
                    ldl.accept(border);
                } else {
                    let g = ldl.relation(&border, &ord, &arith).unwrap();
                    let scratch = solve_relation(&mut t, ldl.labels(), m, &ord, &arith).unwrap();
                    prop_assert_eq!(&g, &scratch);
                    for s in trial.iter() {
                        prop_assert!(t.bracket(&g, s, &arith).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Field;
use crate::error::Error;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::table::{from_gb, TableOracle};

/// Names accepted by [`builtin`], with a one-line description each.
pub const BUILTINS: &[(&str, &str)] = &[
    ("binomial", "u_{i,j} = C(i, j)"),
    ("delta", "u_{4,1} = 1, every other term 0"),
    ("pow23", "u_{i,j} = 2^i 3^j (i + 1)"),
    ("f11", "over F_11, from <y^2 - y, x^2*y - x*y, x^4 - 6x^3 + 11x^2 - 6x>"),
    ("circle", "u_{i,j} = i^2 + j^2 - 1"),
    ("fib2d", "u_{i,j} = F_{i+1}"),
    ("fib3d", "u_{i,j,k} = F_{4i+k+1}"),
    ("factorial", "u_{i,j} = i!"),
    ("zero", "u_{i,j} = 0"),
];

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// A built-in table; `field` defaults to the table's natural field.
pub fn builtin(name: &str, field: Option<Field>) -> Result<TableOracle, Error> {
    let natural = if name == "f11" { Field::Prime(11) } else { Field::Rational };
    let k = field.unwrap_or(natural);
    let rule = |nvars: usize, f: fn(&[u32]) -> BigInt| {
        let k = k.clone();
        TableOracle::from_rule(nvars, k.clone(), move |m: &Monomial| k.from_bigint(&f(m.exps())))
    };
    Ok(match name {
        "binomial" => rule(2, |e| binomial(e[0], e[1])),
        "delta" => rule(2, |e| BigInt::from(u8::from(e == [4, 1]))),
        "pow23" => rule(2, |e| BigInt::from(2).pow(e[0]) * BigInt::from(3).pow(e[1]) * (e[0] + 1)),
        "circle" => rule(2, |e| BigInt::from(e[0]).pow(2) + BigInt::from(e[1]).pow(2) - 1),
        "fib2d" => rule(2, |e| fibonacci(e[0] + 1)),
        "fib3d" => rule(3, |e| fibonacci(4 * e[0] + e[2] + 1)),
        "factorial" => rule(2, |e| (1..=e[0]).fold(BigInt::one(), |a, t| a * t)),
        "zero" => rule(2, |_| BigInt::zero()),
        "f11" => {
            let ord = MonomialOrder::drl(2);
            let rels: Result<Vec<Polynomial>, Error> = ["y^2 - y", "x^2*y - x*y", "x^4 - 6*x^3 + 11*x^2 - 6*x"]
                .iter()
                .map(|s| Polynomial::parse(s, &ord, &k))
                .collect();
            let values: HashMap<Monomial, _> = [("1", 1), ("y", 2), ("x", 3), ("x*y", 4), ("x^2", 3), ("x^3", -1)]
                .iter()
                .map(|(m, v)| Ok((ord.parse_monomial(m)?, k.from_i64(*v))))
                .collect::<Result<_, Error>>()?;
            from_gb(&rels?, values, &ord, &k)?
        }
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_3d() {
        let mut t = builtin("fib3d", None).unwrap();
        assert!(t.query(&Monomial::new(&[0, 0, 0])).unwrap().is_one());
        assert_eq!(t.query(&Monomial::new(&[1, 0, 0])).unwrap().to_string(), "5");
        assert_eq!(t.query(&Monomial::new(&[1, 7, 2])).unwrap().to_string(), "13");
    }

    #[test]
    fn circle_and_friends() {
        let mut t = builtin("circle", None).unwrap();
        assert!(t.query(&Monomial::new(&[1, 1])).unwrap().is_one());
        let mut p = builtin("pow23", None).unwrap();
        assert_eq!(p.query(&Monomial::new(&[1, 1])).unwrap().to_string(), "12");
        let mut f = builtin("factorial", Some(Field::Prime(65521))).unwrap();
        assert_eq!(f.query(&Monomial::new(&[5, 3])).unwrap().to_string(), "120");
        assert!(matches!(builtin("nope", None), Err(Error::UnknownBuiltin(_))));
        assert_eq!(builtin("f11", None).unwrap().field(), &Field::Prime(11));
    }

    #[test]
    fn binomials_by_pascal() {
        let mut row = vec![BigInt::one()];
        for n in 0..12u32 {
            for (k, c) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as u32), c);
            }
            let mut next = vec![BigInt::one()];
            next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigInt::one());
            row = next;
        }
    }
}

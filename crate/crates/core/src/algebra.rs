//! Exact coefficient fields and operation counting.
//!
//! Two fields are supported: a prime field `F_p` and the rationals. Every
//! arithmetic operation performed by an algorithm goes through an [`Arith`]
//! context, which owns the [`OpCounter`] of that run.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The prime field with the given characteristic.
    Prime(u64),
    /// The field of rational numbers.
    Rational,
}

/// An element of a [`Field`].
///
/// Prime-field residues carry their modulus so that mixing fields is caught.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Prime { residue: u64, modulus: u64 },
    Rational(BigRational),
}

/// Counts of field operations performed during one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub multiplications: u64,
    pub additions: u64,
    pub divisions: u64,
}

impl OpCounter {
    /// Total number of basic operations.
    pub fn total(&self) -> u64 {
        self.multiplications + self.additions + self.divisions
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Field {
    /// The prime field `F_p`; fails if `p` is not prime.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    /// Maps an integer into the field.
    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                let residue = u64::try_from(r).expect("residue fits in u64");
                FieldElement::Prime { residue, modulus: *p }
            }
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// Parses a decimal integer or a `num/den` fraction into the field.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid field element `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let value = self.from_bigint(&num);
        match den {
            None => Ok(value),
            Some(d) => {
                let den = BigInt::from_str(d).map_err(|_| bad())?;
                let den = self.from_bigint(&den);
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Arith::new(self.clone()).div(&value, &den)
            }
        }
    }

    /// Spec string of the field: `fp:<p>` or `q`.
    pub fn spec(&self) -> String {
        match self {
            Field::Prime(p) => format!("fp:{p}"),
            Field::Rational => "q".to_string(),
        }
    }

    fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (Field::Prime(p), FieldElement::Prime { residue, modulus }) => p == modulus && residue < p,
            (Field::Rational, FieldElement::Rational(_)) => true,
            _ => false,
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field, Error> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("invalid field spec `{s}`")))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(format!("invalid field spec `{s}` (expected fp:<p> or q)"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Prime { residue, .. } => *residue == 0,
            FieldElement::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Prime { residue, .. } => *residue == 1,
            FieldElement::Rational(q) => q.is_one(),
        }
    }

    /// The field this element belongs to.
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
            FieldElement::Rational(_) => Field::Rational,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Prime { .. } => false,
            FieldElement::Rational(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Prime { residue, .. } => write!(f, "{residue}"),
            FieldElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

/// Arithmetic context of one run: the active field and its operation counter.
#[derive(Debug)]
pub struct Arith {
    field: Field,
    ops: Cell<OpCounter>,
}

impl Arith {
    pub fn new(field: Field) -> Arith {
        Arith { field, ops: Cell::new(OpCounter::default()) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Current counter values.
    pub fn ops(&self) -> OpCounter {
        self.ops.get()
    }

    /// Resets the counter; call only between runs.
    pub fn reset(&self) {
        self.ops.set(OpCounter::default());
    }

    fn bump(&self, f: impl FnOnce(&mut OpCounter)) {
        let mut c = self.ops.get();
        f(&mut c);
        self.ops.set(c);
    }

    fn check(&self, a: &FieldElement) -> Result<(), Error> {
        if self.field.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedFields { expected: self.field.spec(), found: a.field().spec() })
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        self.check(a)?;
        self.check(b)?;
        self.bump(|c| c.additions += 1);
        Ok(match (a, b) {
            (FieldElement::Prime { residue: x, modulus: p }, FieldElement::Prime { residue: y, .. }) => {
                FieldElement::Prime { residue: ((*x as u128 + *y as u128) % *p as u128) as u64, modulus: *p }
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            _ => unreachable!("checked above"),
        })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        self.check(a)?;
        self.check(b)?;
        self.bump(|c| c.additions += 1);
        Ok(match (a, b) {
            (FieldElement::Prime { residue: x, modulus: p }, FieldElement::Prime { residue: y, .. }) => {
                FieldElement::Prime { residue: if x >= y { x - y } else { p - (y - x) }, modulus: *p }
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x - y),
            _ => unreachable!("checked above"),
        })
    }

    /// Negation, counted as an addition.
    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        self.check(a)?;
        self.bump(|c| c.additions += 1);
        Ok(match a {
            FieldElement::Prime { residue, modulus } => {
                FieldElement::Prime { residue: if *residue == 0 { 0 } else { modulus - residue }, modulus: *modulus }
            }
            FieldElement::Rational(x) => FieldElement::Rational(-x),
        })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        self.check(a)?;
        self.check(b)?;
        self.bump(|c| c.multiplications += 1);
        Ok(match (a, b) {
            (FieldElement::Prime { residue: x, modulus: p }, FieldElement::Prime { residue: y, .. }) => {
                FieldElement::Prime { residue: mul_mod(*x, *y, *p), modulus: *p }
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
            _ => unreachable!("checked above"),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        self.check(a)?;
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.bump(|c| c.divisions += 1);
        Ok(match (a, b) {
            (FieldElement::Prime { residue: x, modulus: p }, FieldElement::Prime { residue: y, .. }) => {
                FieldElement::Prime { residue: mul_mod(*x, pow_mod(*y, p - 2, *p), *p), modulus: *p }
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x / y),
            _ => unreachable!("checked above"),
        })
    }

    /// Multiplicative inverse, counted as one division.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        let one = self.field.one();
        self.div(&one, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f11() -> Arith {
        Arith::new(Field::Prime(11))
    }

    #[test]
    fn prime_field_examples() {
        let a = f11();
        let k = a.field().clone();
        assert_eq!(a.add(&k.from_i64(10), &k.from_i64(4)).unwrap(), k.from_i64(3));
        assert_eq!(a.div(&k.from_i64(3), &k.from_i64(4)).unwrap(), k.from_i64(9));
        assert_eq!(a.ops(), OpCounter { multiplications: 0, additions: 1, divisions: 1 });
    }

    #[test]
    fn inverse_by_search() {
        let a = f11();
        let k = a.field().clone();
        for x in 1..11 {
            let inv = a.inv(&k.from_i64(x)).unwrap();
            let brute = (1..11).find(|y| (x * y) % 11 == 1).unwrap();
            assert_eq!(inv, k.from_i64(brute));
        }
    }

    #[test]
    fn rational_inverse_pair() {
        let a = Arith::new(Field::Rational);
        let third = Field::Rational.parse_element("1/3").unwrap();
        assert_eq!(a.mul(&third, &Field::Rational.from_i64(3)).unwrap(), Field::Rational.one());
        assert_eq!(Field::Rational.parse_element("2/-4").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn errors() {
        let a = f11();
        let k = a.field().clone();
        assert!(matches!(a.div(&k.one(), &k.zero()), Err(Error::DivisionByZero)));
        let q = Field::Rational.one();
        assert!(matches!(a.add(&k.one(), &q), Err(Error::MixedFields { .. })));
        let other = Field::Prime(13).one();
        assert!(matches!(a.mul(&k.one(), &other), Err(Error::MixedFields { .. })));
        assert!("fp:12".parse::<Field>().is_err());
        assert_eq!("fp:65521".parse::<Field>().unwrap(), Field::Prime(65521));
    }

    #[test]
    fn negative_literals_reduce() {
        assert_eq!(Field::Prime(11).parse_element("-1").unwrap(), Field::Prime(11).from_i64(10));
        assert_eq!(Field::Prime(11).parse_element("1/2").unwrap(), Field::Prime(11).from_i64(6));
    }

    #[test]
    fn primality() {
        let sieve: Vec<u64> = (0..200).filter(|n| (2..*n).all(|d| n % d != 0) && *n > 1).collect();
        let mr: Vec<u64> = (0..200).filter(|n| is_prime(*n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime(65521));
        assert!(is_prime(18446744073709551557));
    }

    fn elems(field: Field) -> impl Strategy<Value = FieldElement> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| match &field {
            Field::Prime(_) => field.from_i64(n * 7919 + d),
            Field::Rational => FieldElement::Rational(BigRational::new(n.into(), d.into())),
        })
    }

    fn axioms(a: &Arith, x: &FieldElement, y: &FieldElement, z: &FieldElement) {
        let xy_z = a.mul(&a.mul(x, y).unwrap(), z).unwrap();
        let x_yz = a.mul(x, &a.mul(y, z).unwrap()).unwrap();
        assert_eq!(xy_z, x_yz);
        let lhs = a.mul(x, &a.add(y, z).unwrap()).unwrap();
        let rhs = a.add(&a.mul(x, y).unwrap(), &a.mul(x, z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(a.add(x, &a.neg(x).unwrap()).unwrap().is_zero());
        assert_eq!(a.sub(x, y).unwrap(), a.add(x, &a.neg(y).unwrap()).unwrap());
        if !x.is_zero() {
            assert!(a.mul(x, &a.inv(x).unwrap()).unwrap().is_one());
        }
    }

    proptest! {
        #[test]
        fn prime_field_axioms(x in elems(Field::Prime(65521)), y in elems(Field::Prime(65521)), z in elems(Field::Prime(65521))) {
            axioms(&Arith::new(Field::Prime(65521)), &x, &y, &z);
        }

        #[test]
        fn rational_field_axioms(x in elems(Field::Rational), y in elems(Field::Rational), z in elems(Field::Rational)) {
            axioms(&Arith::new(Field::Rational), &x, &y, &z);
        }
    }
}

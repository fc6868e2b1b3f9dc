//! Exact scalar arithmetic: multivariate polynomials over the rationals.
//!
//! Every scalar quantity in the library (structure constants, metric
//! entries, curvature components, scalar curvatures, norms) is a [`Scalar`]:
//! a canonical-form polynomial with `BigRational` coefficients over a shared
//! [`ParamSpace`]. Rationals are the degree-0 case. Zero testing is
//! structural emptiness of the term map, so every identity the library
//! checks is decided exactly.

mod parse;

pub use parse::parse_expr;
pub(crate) use parse::parse_combination;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Ordered list of distinct parameter identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpace {
    names: Vec<String>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ParamSpace {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::InvalidParamName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateParamName(n.clone()));
            }
        }
        Ok(Arc::new(ParamSpace { names }))
    }

    /// Space with no parameters; scalars over it are plain rationals.
    pub fn empty() -> Arc<Self> {
        Arc::new(ParamSpace { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector: one nonnegative exponent per parameter.
type Expts = Vec<u32>;

/// Canonical-form multivariate polynomial over the rationals.
///
/// Invariants: no zero coefficients are stored and exponent vectors are
/// unique, so the zero polynomial is the empty map and equality is
/// structural.
#[derive(Debug, Clone)]
pub struct Scalar {
    space: Arc<ParamSpace>,
    terms: BTreeMap<Expts, Rat>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.space.names == other.space.names && self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero(space: &Arc<ParamSpace>) -> Self {
        Scalar {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<ParamSpace>) -> Self {
        Self::from_rat(space, Rat::one())
    }

    pub fn from_rat(space: &Arc<ParamSpace>, r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(vec![0; space.len()], r);
        }
        Scalar {
            space: space.clone(),
            terms,
        }
    }

    pub fn from_int(space: &Arc<ParamSpace>, n: i64) -> Self {
        Self::from_rat(space, Rat::from(BigInt::from(n)))
    }

    /// The parameter with the given index as a degree-1 monomial.
    pub fn var(space: &Arc<ParamSpace>, idx: usize) -> Self {
        assert!(idx < space.len(), "parameter index out of range");
        let mut e = vec![0; space.len()];
        e[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Rat::one());
        Scalar {
            space: space.clone(),
            terms,
        }
    }

    pub fn param(space: &Arc<ParamSpace>, name: &str) -> Option<Self> {
        space.index_of(name).map(|i| Self::var(space, i))
    }

    pub fn space(&self) -> &Arc<ParamSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    /// The value as a rational, when the polynomial is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_space(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space.names == other.space.names {
            Ok(())
        } else {
            Err(Error::ParamSpaceMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_space(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(Scalar {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_space(other)?;
        let mut terms: BTreeMap<Expts, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Expts = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        Ok(Scalar {
            space: self.space.clone(),
            terms,
        })
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero(&self.space);
        }
        Scalar {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * r))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(&self.space);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute rationals for parameters. The assignment must cover every
    /// parameter that actually appears; the result is a constant polynomial
    /// in the same space.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Result<Scalar> {
        let mut values: Vec<Option<&Rat>> = vec![None; self.space.len()];
        for (name, v) in assignment {
            if let Some(i) = self.space.index_of(name) {
                values[i] = Some(v);
            }
        }
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let v = values[i]
                    .ok_or_else(|| Error::MissingParameter(self.space.names[i].clone()))?;
                for _ in 0..exp {
                    term *= v;
                }
            }
            total += term;
        }
        Ok(Scalar::from_rat(&self.space, total))
    }

    /// Evaluate to a rational; the assignment must cover every appearing
    /// parameter.
    pub fn eval_rat(&self, assignment: &BTreeMap<String, Rat>) -> Result<Rat> {
        Ok(self.eval(assignment)?.as_rat().unwrap())
    }

    /// Terms in descending graded lexicographic order.
    fn sorted_terms(&self) -> Vec<(&Expts, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        v
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("parameter space mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("parameter space mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

fn fmt_rat_abs(r: &Rat) -> String {
    let n = r.numer().abs();
    if r.denom().is_one() {
        format!("{n}")
    } else {
        format!("{n}/{}", r.denom())
    }
}

/// Canonical printing: descending graded lexicographic monomial order,
/// `parse_expr(print(a)) == a` for every scalar.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let coeff = fmt_rat_abs(c);
            let monomial_empty = e.iter().all(|&x| x == 0);
            if coeff != "1" || monomial_empty {
                factors.push(coeff);
            }
            for (idx, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(self.space.names[idx].clone()),
                    _ => factors.push(format!("{}^{}", self.space.names[idx], exp)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space6() -> Arc<ParamSpace> {
        ParamSpace::new(["l1", "l2", "l3", "l4", "m1", "m2"]).unwrap()
    }

    fn p(sp: &Arc<ParamSpace>, name: &str) -> Scalar {
        Scalar::param(sp, name).unwrap()
    }

    #[test]
    fn param_space_rejects_bad_names() {
        assert!(matches!(
            ParamSpace::new(["1abc"]),
            Err(Error::InvalidParamName(_))
        ));
        assert!(matches!(
            ParamSpace::new(["a", "a"]),
            Err(Error::DuplicateParamName(_))
        ));
        assert!(matches!(
            ParamSpace::new([""]),
            Err(Error::InvalidParamName(_))
        ));
    }

    #[test]
    fn additive_identity_and_inverse() {
        let sp = space6();
        let x = p(&sp, "l1");
        assert_eq!(&Scalar::zero(&sp) + &x, x);
        // (m1^2 - m2^2) + (m2^2 - m1^2) = 0
        let m1 = p(&sp, "m1");
        let m2 = p(&sp, "m2");
        let a = &m1.pow(2) - &m2.pow(2);
        let b = &m2.pow(2) - &m1.pow(2);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn add_collects_terms() {
        // (l1 + m1) + (l1 - m1) = 2*l1, confirmed against a hand-built term map
        let sp = space6();
        let l1 = p(&sp, "l1");
        let m1 = p(&sp, "m1");
        let sum = &(&l1 + &m1) + &(&l1 - &m1);
        let expected = l1.scale(&rat(2, 1));
        assert_eq!(sum, expected);
        let mut map = BTreeMap::new();
        map.insert(vec![1, 0, 0, 0, 0, 0], rat(2, 1));
        assert_eq!(sum.terms, map);
    }

    #[test]
    fn multiplicative_identity_and_signs() {
        let sp = space6();
        let x = p(&sp, "l3");
        assert_eq!(&Scalar::one(&sp) * &x, x);
        let l1 = p(&sp, "l1");
        assert_eq!(&(-&l1) * &(-&l1), l1.pow(2));
    }

    #[test]
    fn distribute_and_collect() {
        // (m1+m2)*(m1-m2) = m1^2 - m2^2, against a brute-force term expansion
        let sp = space6();
        let m1 = p(&sp, "m1");
        let m2 = p(&sp, "m2");
        let prod = &(&m1 + &m2) * &(&m1 - &m2);
        let oracle = &(&(&m1 * &m1) + &(&m2 * &m1)) - &(&(&m1 * &m2) + &(&m2 * &m2));
        assert_eq!(prod, oracle);
        assert_eq!(prod, &m1.pow(2) - &m2.pow(2));
    }

    #[test]
    fn degree_adds_under_mul() {
        let sp = space6();
        let a = &p(&sp, "l1") + &p(&sp, "m2");
        let b = p(&sp, "m1").pow(2);
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = Scalar::one(&ParamSpace::new(["x"]).unwrap());
        let b = Scalar::one(&ParamSpace::new(["y"]).unwrap());
        assert_eq!(a.checked_add(&b), Err(Error::ParamSpaceMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::ParamSpaceMismatch));
    }

    #[test]
    fn eval_substitutes() {
        let sp = space6();
        let m1 = p(&sp, "m1");
        let m2 = p(&sp, "m2");
        let a = &m1.pow(2) - &m2.pow(2);
        let mut assign = BTreeMap::new();
        assign.insert("m1".to_string(), rat(1, 1));
        assign.insert("m2".to_string(), rat(0, 1));
        assert_eq!(a.eval_rat(&assign).unwrap(), rat(1, 1));
        // -8*(m1^2 - m2^2) at (1, 0) = -8
        let norm = a.scale(&rat(-8, 1));
        assert_eq!(norm.eval_rat(&assign).unwrap(), rat(-8, 1));
        assert_eq!(
            Scalar::zero(&sp).eval_rat(&assign).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn eval_missing_parameter() {
        let sp = space6();
        let a = p(&sp, "l1");
        let assign = BTreeMap::new();
        assert_eq!(
            a.eval(&assign),
            Err(Error::MissingParameter("l1".to_string()))
        );
        // parameters that do not appear need no assignment
        assert!(Scalar::one(&sp).eval(&assign).is_ok());
    }

    #[test]
    fn display_canonical_order() {
        let sp = space6();
        let l1 = p(&sp, "l1");
        let m2 = p(&sp, "m2");
        let s = &(&l1.pow(2) - &m2.pow(2)) + &Scalar::from_int(&sp, 3);
        assert_eq!(s.to_string(), "l1^2 - m2^2 + 3");
        assert_eq!(Scalar::zero(&sp).to_string(), "0");
        assert_eq!(Scalar::from_rat(&sp, rat(-3, 2)).to_string(), "-3/2");
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::chart::Chart;
use super::poly::{self, Monomial, Poly};
use crate::error::{Error, Result};

/// Exact rational function `num / den` over Q.
///
/// Stored with integer polynomials: `num` and `den` are coprime in Z[x],
/// their joint integer content is 1 and the graded-lex leading coefficient of
/// `den` is positive. This makes structural equality coincide with equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarExpr({:?} / {:?})", self.num, self.den)
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        ScalarExpr {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalize_unit(
            Poly::constant(q.numer().clone()),
            Poly::constant(q.denom().clone()),
        )
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    pub fn var(i: usize) -> Self {
        ScalarExpr {
            num: Poly::var(i),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::normalize_unit(p, Poly::one())
    }

    /// Canonical form of `num / den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() || num.is_constant() {
            return Ok(Self::normalize_unit(num, den));
        }
        let g = poly::gcd(&num, &den);
        if g.is_constant() {
            return Ok(Self::normalize_unit(num, den));
        }
        let n = num.exact_div(&g).expect("gcd divides numerator");
        let d = den.exact_div(&g).expect("gcd divides denominator");
        Ok(Self::normalize_unit(n, d))
    }

    /// Removes the joint integer content and fixes the sign; assumes the two
    /// polynomials are already coprime up to integer factors.
    fn normalize_unit(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let c = num.content();
        let c = num_integer::Integer::gcd(&c, &den.content());
        let (mut n, mut d) = if c.is_one() {
            (num, den)
        } else {
            (num.div_int_exact(&c), den.div_int_exact(&c))
        };
        if !d.leading_is_positive() {
            n = n.neg();
            d = d.neg();
        }
        ScalarExpr { num: n, den: d }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value when the expression is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.constant_term().cloned().unwrap_or_else(BigInt::zero);
        let d = self.den.constant_term().cloned().unwrap_or_else(BigInt::one);
        Some(BigRational::new(n, d))
    }

    /// One more than the largest variable index occurring.
    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }

    pub fn neg(&self) -> Self {
        ScalarExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let n = self.num.add(&other.num);
            return Self::from_parts(n, self.den.clone()).unwrap();
        }
        if self.den.is_constant() && other.den.is_constant() {
            let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalize_unit(n, self.den.mul(&other.den));
        }
        if self.den.is_constant() || other.den.is_constant() {
            // a/c + b/q with c constant: the sum is already reduced up to units.
            let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalize_unit(n, self.den.mul(&other.den));
        }
        let g = poly::gcd(&self.den, &other.den);
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = other.den.exact_div(&g).unwrap();
        let n = self.num.mul(&d2).add(&other.num.mul(&d1));
        if n.is_zero() {
            return Self::zero();
        }
        // gcd(n, d1*d2*g) = gcd(n, g)
        let h = poly::gcd(&n, &g);
        let n = n.exact_div(&h).unwrap();
        let g2 = g.exact_div(&h).unwrap();
        Self::normalize_unit(n, d1.mul(&d2).mul(&g2))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = poly::gcd(&self.num, &other.den);
        let g2 = poly::gcd(&other.num, &self.den);
        let reduce = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).unwrap()
            }
        };
        let n = reduce(&self.num, &g1).mul(&reduce(&other.num, &g2));
        let d = reduce(&self.den, &g2).mul(&reduce(&other.den, &g1));
        Self::normalize_unit(n, d)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    pub fn pow(&self, e: u32) -> Self {
        ScalarExpr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .renormalized()
    }

    fn renormalized(self) -> Self {
        Self::normalize_unit(self.num, self.den)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let dn = self.num.derivative(i);
        if self.den.is_constant() {
            return Self::normalize_unit(dn, self.den.clone());
        }
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::from_parts(dn, self.den.clone()).unwrap();
        }
        // (n' d - n d') / d^2; since gcd(n, d) = 1 any common factor with d^2
        // divides d, so reduce against d first.
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        if top.is_zero() {
            return Self::zero();
        }
        let g = poly::gcd(&top, &self.den);
        let top = top.exact_div(&g).unwrap();
        let d1 = self.den.exact_div(&g).unwrap();
        Self::from_parts(top, d1.mul(&self.den)).unwrap()
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() < self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for an expression in {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            let coords: Vec<String> = point.iter().map(|q| q.to_string()).collect();
            return Err(Error::SingularPoint(format!("({})", coords.join(", "))));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitutes rational functions for the variables.
    pub fn compose(&self, subs: &[ScalarExpr]) -> Result<Self> {
        let eval = |p: &Poly| -> ScalarExpr {
            let mut acc = ScalarExpr::zero();
            for (m, c) in p.terms() {
                let mut t = ScalarExpr::from_bigint(c.clone());
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        t = t.mul(&subs[i].pow(e));
                    }
                }
                acc = acc.add(&t);
            }
            acc
        };
        eval(&self.num).div(&eval(&self.den))
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> Display<'a> {
        Display { e: self, names: chart.names() }
    }

    pub fn display_names<'a>(&'a self, names: &'a [String]) -> Display<'a> {
        Display { e: self, names }
    }

    pub fn to_string_in(&self, chart: &Chart) -> String {
        self.display(chart).to_string()
    }
}

/// Canonical printer: terms in descending graded-lex order, integer
/// coefficients, `^` exponents and at most one `/`.
pub struct Display<'a> {
    e: &'a ScalarExpr,
    names: &'a [String],
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("x{i}"))
}

fn write_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(names, i)),
            _ => parts.push(format!("{}^{}", var_name(names, i), e)),
        }
    }
    parts.join("*")
}

pub(crate) fn write_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let term = if m.is_one() {
            c.to_string()
        } else if c.is_one() {
            write_monomial(m, names)
        } else if (-c).is_one() {
            format!("-{}", write_monomial(m, names))
        } else {
            format!("{}*{}", c, write_monomial(m, names))
        };
        if k > 0 && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = write_poly(&self.e.num, self.names);
        if self.e.den.is_one() {
            return f.write_str(&num);
        }
        let num = if self.e.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = write_poly(&self.e.den, self.names);
        let bare = self.e.den.is_constant()
            || (self.e.den.is_monomial()
                && self.e.den.leading_coeff().is_one()
                && self.e.den.vars().len() == 1);
        if bare {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                ScalarExpr::$m(self, rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

impl From<i64> for ScalarExpr {
    fn from(c: i64) -> Self {
        ScalarExpr::from_int(c)
    }
}

impl From<&BigRational> for ScalarExpr {
    fn from(q: &BigRational) -> Self {
        ScalarExpr::from_rational(q)
    }
}

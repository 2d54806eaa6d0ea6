//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are identified by index. Exponent vectors carry no trailing zeros,
//! so polynomials in different numbers of variables interoperate freely.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial(v)
    }

    pub fn from_exponents(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(short.0.iter()) {
            *a += *b;
        }
        Monomial(v)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (a, b) in v.iter_mut().zip(other.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial::from_exponents(v))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let v = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (*a).min(*b))
            .collect();
        Monomial::from_exponents(v)
    }

    fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Monomial::from_exponents(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over the integers. Terms are kept in ascending monomial order;
/// no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{}{:?}", c, m.0))
            .collect();
        write!(f, "Poly[{}]", parts.join(" + "))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Option<&BigInt> {
        self.terms.get(&Monomial::one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// One more than the largest variable index appearing.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.contains_var(i)).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut r = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_int_exact(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    debug_assert!((a % c).is_zero());
                    (m.clone(), a / c)
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact quotient `self / other` in Z[x], or `None` when `other` does not divide.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if other.is_monomial() {
            let (m, c) = other.leading().unwrap();
            let mut q = Poly::zero();
            for (k, a) in &self.terms {
                let km = k.div(m)?;
                let (qa, rem) = a.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                q.terms.insert(km, qa);
            }
            return Some(q);
        }
        let (lm, lc) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&lm)?;
            let (qc, rem) = rc.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&other.mul_monomial(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                r.add_term(m.with_exp(i, e - 1), c * BigInt::from(e));
            }
        }
        r
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = bigint_to_f64(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[i].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes polynomials for variables: variable `i` becomes `subs[i]`.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&subs[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficient of `x_i^k`, as a polynomial free of `x_i`.
    pub fn coeff_in(&self, i: usize, k: u32) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(i) == k {
                r.terms.insert(m.with_exp(i, 0), c.clone());
            }
        }
        r
    }

    /// All nonzero coefficients with respect to `x_i`, keyed by exponent.
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(i))
                .or_default()
                .terms
                .insert(m.with_exp(i, 0), c.clone());
        }
        out
    }

    /// Greatest common monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn leading_is_positive(&self) -> bool {
        self.leading().map_or(true, |(_, c)| c.is_positive())
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Pseudo-remainder of `a` by `b` viewed as univariate polynomials in `x_v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lc = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let shift = Monomial::var_pow(v, dr - db);
        r = r.mul(&lc).sub(&lr.mul(b).mul_monomial(&shift, &BigInt::one()));
    }
    r
}

/// Normalizes sign so the leading coefficient is positive.
fn positive(p: Poly) -> Poly {
    if p.leading_is_positive() {
        p
    } else {
        p.neg()
    }
}

/// Greatest common divisor in Z[x], with nonnegative content and positive
/// leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    if a == b {
        return positive(a.clone());
    }

    // Split off monomial and integer content; the remainder has neither.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let a1 = a.exact_div(&Poly::monomial(ma, ca)).unwrap();
    let b1 = b.exact_div(&Poly::monomial(mb, cb)).unwrap();
    let core = gcd_primitive(&a1, &b1);
    positive(core.mul(&Poly::monomial(mg, cg)))
}

/// Gcd of polynomials with unit integer content and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.exact_div(b).is_some() {
        return positive(b.clone());
    }
    if b.exact_div(a).is_some() {
        return positive(a.clone());
    }

    let va = a.vars();
    let vb = b.vars();
    // A variable present in only one operand: gcd with every coefficient.
    for (p, q, vp, vq) in [(a, b, &va, &vb), (b, a, &vb, &va)] {
        if let Some(&v) = vp.iter().find(|v| !vq.contains(v)) {
            let mut g = q.clone();
            for c in p.coeffs_in(v).values() {
                g = gcd(&g, c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return positive(g);
        }
    }

    // Same variable set: primitive PRS in the variable of lowest degree.
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .unwrap();
    if let Some(g) = heu_gcd(a, b, v) {
        return g;
    }
    let (ca, pa) = split_content(a, v);
    let (cb, pb) = split_content(b, v);
    let c = gcd(&ca, &cb);
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if r1.degree_in(v) == 0 {
            // Nonzero remainder free of v: the primitive parts are coprime in v.
            return positive(c);
        }
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            return positive(c.mul(&r1));
        }
        r0 = r1;
        r1 = split_content(&r, v).1;
    }
}

/// Heuristic gcd of Char, Geddes and Gonnet: evaluate `x_v` at a large
/// integer, take the gcd of the images, and lift it back in base xi. A lift is
/// only accepted once it divides both operands, which makes it the gcd.
fn heu_gcd(a: &Poly, b: &Poly, v: usize) -> Option<Poly> {
    let norm = |p: &Poly| p.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let deg = u64::from(a.degree_in(v).max(b.degree_in(v)));
    let mut xi: BigInt = norm(a).min(norm(b)) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > 4096 {
            return None;
        }
        let (ea, eb) = (eval_at(a, v, &xi), eval_at(b, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let lifted = lift(&gcd(&ea, &eb), v, &xi);
            let c = lifted.content();
            if !c.is_zero() {
                let g = positive(lifted.div_int_exact(&c));
                if a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// `p` with `x_v` replaced by the integer `xi`.
fn eval_at(p: &Poly, v: usize, xi: &BigInt) -> Poly {
    let mut r = Poly::zero();
    for (m, c) in &p.terms {
        r.add_term(m.with_exp(v, 0), c * num_traits::pow(xi.clone(), m.exp(v) as usize));
    }
    r
}

/// Inverse of `eval_at` on small coefficients: symmetric base-xi digits.
fn lift(g: &Poly, v: usize, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut r = Poly::zero();
    for (m, c) in &g.terms {
        let mut c = c.clone();
        let mut e = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            c = (&c - &d) / xi;
            if !d.is_zero() {
                r.add_term(m.with_exp(v, e), d);
            }
            e += 1;
        }
    }
    r
}

/// Content and primitive part of `p` with respect to `x_v`.
fn split_content(p: &Poly, v: usize) -> (Poly, Poly) {
    let coeffs = p.coeffs_in(v);
    let mut g = Poly::zero();
    for c in coeffs.values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return (Poly::one(), p.clone());
    }
    let g = if p.coeff_in(v, p.degree_in(v)).leading_is_positive() {
        g
    } else {
        g.neg()
    };
    let pp = p.exact_div(&g).expect("content divides");
    (g, pp)
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    positive(a.exact_div(&g).expect("gcd divides").mul(b))
}

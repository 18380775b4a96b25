//! Laurent polynomials with integer coefficients, and the tropical
//! semifield of monomials `u^r` with exponents in a real quadratic field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::ops::DivRem;
use dashu_ratio::RBig;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::matrix::Int;

/// Exponent vector of a Laurent monomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[i64]>);

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let v: Option<Vec<i64>> =
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a.checked_add(*b)).collect();
        v.map(Monomial::new).ok_or(Error::ExponentOverflow)
    }

    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial> {
        let v: Option<Vec<i64>> =
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a.checked_sub(*b)).collect();
        v.map(Monomial::new).ok_or(Error::ExponentOverflow)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer Laurent polynomial in `nvars` variables.
///
/// Terms are stored with nonzero coefficients in decreasing graded-lex order
/// of monomials, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: Vec<(Monomial, Int)>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<Int>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        LaurentPolynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Monomial::new(e), Int::ONE)
    }

    pub fn monomial(m: Monomial, c: Int) -> Self {
        let nvars = m.0.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        LaurentPolynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Self {
        let mut acc: FxHashMap<Monomial, Int> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            *acc.entry(m).or_insert(Int::ZERO) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<Monomial, Int>) -> Self {
        let mut terms: Vec<(Monomial, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        LaurentPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Int)> {
        self.terms.first()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Shape(format!(
                "variable counts differ: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPolynomial { nvars: self.nvars, terms: out }
    }

    /// Product by a single term; the term order is preserved.
    fn mul_term(&self, m: &Monomial, c: &Int) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.checked_mul(m)?, tc * c));
        }
        Ok(LaurentPolynomial { nvars: self.nvars, terms })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, Int> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()) * 2);
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.checked_mul(bm)?;
                *acc.entry(m).or_insert(Int::ZERO) += ac * bc;
            }
        }
        Ok(Self::from_map(self.nvars, acc))
    }

    pub fn try_pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Monomial divisors shift exponents. Otherwise the leading term of the
    /// remainder is eliminated repeatedly; the invariant
    /// `remainder = self - quotient * divisor` certifies the result once the
    /// remainder vanishes. Candidate quotient terms are confined to the box
    /// of exponents any true quotient must occupy, which guarantees
    /// termination when no quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (dm, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (q, r) = c.clone().div_rem(dc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                terms.push((m.checked_div(dm)?, q));
            }
            return Ok(LaurentPolynomial { nvars: self.nvars, terms });
        }
        let (amin, amax) = self.exponent_box();
        let (bmin, bmax) = divisor.exponent_box();
        let mut qmin = Vec::with_capacity(self.nvars);
        let mut qmax = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let lo = amin[i].checked_sub(bmin[i]).ok_or(Error::ExponentOverflow)?;
            let hi = amax[i].checked_sub(bmax[i]).ok_or(Error::ExponentOverflow)?;
            if lo > hi {
                return Err(Error::NotDivisible);
            }
            qmin.push(lo);
            qmax.push(hi);
        }
        let (lm, lc) = &divisor.terms[0];
        let mut rem: BTreeMap<Monomial, Int> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.last_key_value() {
            let tm = rm.checked_div(lm)?;
            let inside = tm.0.iter().enumerate().all(|(i, &e)| e >= qmin[i] && e <= qmax[i]);
            if !inside {
                return Err(Error::NotDivisible);
            }
            let (tc, r) = rc.clone().div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (dm, dc) in &divisor.terms {
                let key = tm.checked_mul(dm)?;
                let delta = &tc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((tm, tc));
        }
        Ok(LaurentPolynomial { nvars: self.nvars, terms: quotient })
    }

    /// Componentwise minimum and maximum exponents over the support.
    pub fn exponent_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.nvars];
        let mut hi = vec![i64::MIN; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
        (lo, hi)
    }

    /// Substitutes variables: `x_i` becomes `x_{f(i)}` in `nvars` variables,
    /// or `1` when `f(i)` is `None`.
    pub fn map_variables(&self, nvars: usize, f: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let targets: Vec<Option<usize>> = (0..self.nvars).map(f).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0i64; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(t) = targets[i] {
                    e[t] = e[t].checked_add(x).ok_or(Error::ExponentOverflow)?;
                }
            }
            terms.push((Monomial::new(e), c.clone()));
        }
        Ok(Self::from_terms(nvars, terms))
    }

    /// Parses the rendering grammar, e.g. `3*x1^2*x2^-1 + 1`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        Parser { s: text.as_bytes(), pos: 0, nvars }.polynomial()
    }
}

/// Global total order: fewer terms first, then term-by-term comparison in
/// the stored order (monomial, then coefficient).
impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .len()
            .cmp(&other.terms.len())
            .then_with(|| {
                for (a, b) in self.terms.iter().zip(other.terms.iter()) {
                    let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.nvars.cmp(&other.nvars))
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.try_add(rhs).expect("Laurent addition")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self.try_sub(rhs).expect("Laurent subtraction")
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.try_mul(rhs).expect("Laurent multiplication")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < Int::ZERO;
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = if neg { -c.clone() } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{} at byte {}", what, self.pos))
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn polynomial(mut self) -> Result<LaurentPolynomial> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
            self.pos += 1;
        }
        Ok(LaurentPolynomial::from_terms(self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Int)> {
        let mut exps = vec![0i64; self.nvars];
        let mut coeff = Int::ONE;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let idx: usize = self.digits()?.parse().map_err(|_| self.err("bad index"))?;
                    if idx == 0 || idx > self.nvars {
                        return Err(Error::Parse(format!("variable x{idx} out of range")));
                    }
                    let mut e = 1i64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = self.peek() == Some(b'-');
                        if neg {
                            self.pos += 1;
                        }
                        e = self.digits()?.parse().map_err(|_| self.err("bad exponent"))?;
                        if neg {
                            e = -e;
                        }
                    }
                    exps[idx - 1] = exps[idx - 1].checked_add(e).ok_or(Error::ExponentOverflow)?;
                }
                Some(d) if d.is_ascii_digit() => {
                    let v: Int = self.digits()?.parse().map_err(|_| self.err("bad integer"))?;
                    coeff *= v;
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }
}

/// Exact element `p + q sqrt(delta)` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: RBig,
    q: RBig,
    delta: Int,
}

impl QuadraticNumber {
    pub fn new(p: RBig, q: RBig, delta: Int) -> Self {
        assert!(delta >= Int::ZERO, "negative discriminant");
        if delta.is_zero() || q.is_zero() {
            return QuadraticNumber { p, q: RBig::ZERO, delta: Int::ZERO };
        }
        QuadraticNumber { p, q, delta }
    }

    pub fn rational(p: RBig) -> Self {
        Self::new(p, RBig::ZERO, Int::ZERO)
    }

    pub fn integer(p: i64) -> Self {
        Self::rational(RBig::from(p))
    }

    pub fn p(&self) -> &RBig {
        &self.p
    }

    pub fn q(&self) -> &RBig {
        &self.q
    }

    pub fn delta(&self) -> &Int {
        &self.delta
    }

    fn common_delta(&self, other: &Self) -> Int {
        if self.q.is_zero() {
            return other.delta.clone();
        }
        if other.q.is_zero() {
            return self.delta.clone();
        }
        assert_eq!(self.delta, other.delta, "mixing quadratic fields");
        self.delta.clone()
    }

    /// Sign of the value, decided exactly.
    pub fn signum(&self) -> i8 {
        let sp = rsign(&self.p);
        let sq = rsign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p^2 with q^2 delta
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * RBig::from(self.delta.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().value() + self.q.to_f64().value() * self.delta.to_f64().value().sqrt()
    }

    pub fn scale(&self, k: &RBig) -> Self {
        Self::new(&self.p * k, &self.q * k, self.delta.clone())
    }

    /// The root `((bc - 2) + sqrt((bc - 2)^2 - 4)) / 2` of
    /// `l^2 - (bc - 2) l + 1 = 0`.
    pub fn lambda(b: u64, c: u64) -> Self {
        let s = Int::from(b) * Int::from(c) - Int::from(2);
        let delta = &s * &s - Int::from(4);
        let half = RBig::from_parts(Int::ONE, 2u8.into());
        Self::new(RBig::from(s) * &half, half, delta)
    }
}

fn rsign(x: &RBig) -> i8 {
    match x.numerator().cmp(&Int::ZERO) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: Self) -> QuadraticNumber {
        let d = self.common_delta(rhs);
        QuadraticNumber::new(&self.p + &rhs.p, &self.q + &rhs.q, d)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> QuadraticNumber {
        let d = self.common_delta(rhs);
        QuadraticNumber::new(&self.p - &rhs.p, &self.q - &rhs.q, d)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> QuadraticNumber {
        let d = self.common_delta(rhs);
        let dr = RBig::from(d.clone());
        let p = &self.p * &rhs.p + &self.q * &rhs.q * dr;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        QuadraticNumber::new(p, q, d)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-self.p.clone(), -self.q.clone(), self.delta.clone())
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.delta)
        }
    }
}

/// Tropical monomial `u^r`: product adds exponents, `⊕` takes the maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalMonomial {
    pub exponent: QuadraticNumber,
}

impl TropicalMonomial {
    pub fn new(exponent: QuadraticNumber) -> Self {
        TropicalMonomial { exponent }
    }

    pub fn one() -> Self {
        Self::new(QuadraticNumber::integer(0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.exponent + &other.exponent)
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(&self.exponent - &other.exponent)
    }

    pub fn oplus(&self, other: &Self) -> Self {
        if self.exponent >= other.exponent {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.exponent.scale(&RBig::from(k)))
    }
}

impl fmt::Display for TropicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^({})", self.exponent)
    }
}

/// Images `psi(z_1), ..., psi(z_steps)` of the rank-2 cluster variables under
/// the tropical map used to certify infinite type when `bc >= 4`.
pub fn tropical_orbit(b: u64, c: u64, steps: usize) -> Result<Vec<TropicalMonomial>> {
    let bc = b
        .checked_mul(c)
        .ok_or_else(|| Error::Precondition("b*c overflows".into()))?;
    if bc <= 3 {
        return Err(Error::NoWitness(bc));
    }
    let (z1, z2) = if bc == 4 {
        (QuadraticNumber::integer(1), QuadraticNumber::integer(b as i64))
    } else {
        let lambda = QuadraticNumber::lambda(b, c);
        (QuadraticNumber::integer(c as i64), &lambda + &QuadraticNumber::integer(1))
    };
    let mut out = vec![TropicalMonomial::new(z1), TropicalMonomial::new(z2)];
    out.truncate(steps);
    while out.len() < steps {
        let t = out.len(); // computing z_{t+1} from z_t and z_{t-1} (1-based)
        let e = if t % 2 == 0 { c } else { b } as i64;
        let next = out[t - 1].pow(e).oplus(&TropicalMonomial::one()).div(&out[t - 2]);
        out.push(next);
    }
    Ok(out)
}

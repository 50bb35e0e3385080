//! Sparse Laurent polynomials with big-integer coefficients, q-binomial
//! coefficients, and the two-histogram generating function `H_{n,m}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::statistics::{DValue, DistributionTable};

/// Finite sum of monomials `c * x_1^{e_1} ... x_k^{e_k}` with integer
/// (possibly negative) exponents. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigInt::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn monomial(exponents: Vec<i64>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c.into());
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Univariate polynomial from a dense coefficient list, lowest degree
    /// first, shifted so that `coeffs[0]` multiplies `q^offset`.
    pub fn from_dense(coeffs: &[BigInt], offset: i64) -> Self {
        let mut p = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![offset + i as i64], c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[i64]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, c: BigInt) {
        assert_eq!(
            exponents.len(),
            self.arity,
            "exponent vector has the wrong number of variables"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shifted(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Self {
            arity: self.arity,
            terms,
        }
    }

    /// Rewrites every exponent vector with `f`, combining terms that collide.
    pub fn map_exponents<F>(&self, arity: usize, mut f: F) -> Self
    where
        F: FnMut(&[i64]) -> Vec<i64>,
    {
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        Self {
            arity: self.arity,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Terms sorted by total degree, then lexicographically by exponent.
    pub fn sorted_terms(&self) -> Vec<(&[i64], &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        });
        terms
    }

    /// Renders in the canonical sorted-monomial text form with the given
    /// variable names, e.g. `1 + 2*x^2*y^-1 - q`.
    pub fn display_with<'a>(&'a self, vars: &'a [&'a str]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }

    pub fn to_json(&self, vars: &[&str]) -> PolynomialJson {
        PolynomialJson {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: e.to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }
}

/// JSON export shape: coefficients are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: String,
}

struct PolyDisplay<'a> {
    poly: &'a LaurentPolynomial,
    vars: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.write_terms(f, self.vars)
    }
}

impl LaurentPolynomial {
    fn write_terms(&self, f: &mut fmt::Formatter<'_>, vars: &[&str]) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, coef)) in terms.into_iter().enumerate() {
            let magnitude = coef.abs();
            match (i, coef.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            for (k, &e) in exps.iter().enumerate() {
                let name = vars.get(k).copied().unwrap_or("?");
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.write_terms(f, &refs)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

/// Per-variable exponent ranges `(lo, hi)` of a nonzero polynomial.
fn exponent_box(p: &LaurentPolynomial) -> Vec<(i64, i64)> {
    let mut bounds = vec![(i64::MAX, i64::MIN); p.arity];
    for e in p.terms.keys() {
        for (b, &x) in bounds.iter_mut().zip(e) {
            *b = (b.0.min(x), b.1.max(x));
        }
    }
    bounds
}

fn small_coefficients(p: &LaurentPolynomial) -> Option<(Vec<i64>, u128)> {
    let mut coeffs = Vec::with_capacity(p.len());
    let mut mass = 0u128;
    for c in p.terms.values() {
        let v = c.to_i64()?;
        mass = mass.checked_add(v.unsigned_abs() as u128)?;
        coeffs.push(v);
    }
    Some((coeffs, mass))
}

/// Product accumulated in a dense `i128` array over the bounding box of the
/// result. Returns `None` when the box is sparse or the coefficients could
/// overflow, leaving the general path to handle it.
fn dense_product(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    if a.is_zero() || b.is_zero() {
        return Some(LaurentPolynomial::zero(a.arity));
    }
    let (ca, mass_a) = small_coefficients(a)?;
    let (cb, mass_b) = small_coefficients(b)?;
    if mass_a.checked_mul(mass_b)? > i128::MAX as u128 {
        return None;
    }
    let (box_a, box_b) = (exponent_box(a), exponent_box(b));
    let lo: Vec<i64> = box_a.iter().zip(&box_b).map(|(x, y)| x.0 + y.0).collect();
    let dims: Vec<usize> = box_a
        .iter()
        .zip(&box_b)
        .map(|(x, y)| (x.1 - x.0 + y.1 - y.0 + 1) as usize)
        .collect();
    let cells = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))?;
    let pairs = a.len().saturating_mul(b.len());
    if cells > (1 << 22).max(pairs.saturating_mul(4)) {
        return None;
    }
    let offset = |e: &[i64], base: &[(i64, i64)]| {
        e.iter()
            .zip(base)
            .zip(&dims)
            .fold(0usize, |acc, ((&x, b), &d)| acc * d + (x - b.0) as usize)
    };
    let ia: Vec<usize> = a.terms.keys().map(|e| offset(e, &box_a)).collect();
    let ib: Vec<usize> = b.terms.keys().map(|e| offset(e, &box_b)).collect();
    let mut acc = vec![0i128; cells];
    for (&i, &x) in ia.iter().zip(&ca) {
        for (&j, &y) in ib.iter().zip(&cb) {
            acc[i + j] += x as i128 * y as i128;
        }
    }
    let mut terms = BTreeMap::new();
    for (index, &c) in acc.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut e = vec![0i64; a.arity];
        let mut rest = index;
        for k in (0..a.arity).rev() {
            e[k] = lo[k] + (rest % dims[k]) as i64;
            rest /= dims[k];
        }
        terms.insert(e, BigInt::from(c));
    }
    Some(LaurentPolynomial {
        arity: a.arity,
        terms,
    })
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.arity, rhs.arity);
        if let Some(out) = dense_product(self, rhs) {
            return out;
        }
        let mut out = LaurentPolynomial::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPolynomial {
            arity: self.arity,
            terms,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Dense coefficients of the Gaussian binomial `[a choose b]_q`, built with
/// `[i, j] = [i-1, j-1] + q^j [i-1, j]`. Every coefficient is at most
/// `binom(a, b)`, so machine integers suffice whenever that fits.
fn qbin_dense(a: usize, b: usize) -> Vec<BigInt> {
    if crate::compositions::binomial(a, b).bits() < 127 {
        pascal::<u128>(a, b).into_iter().map(BigInt::from).collect()
    } else {
        pascal::<BigInt>(a, b)
    }
}

fn pascal<T>(a: usize, b: usize) -> Vec<T>
where
    T: Clone + Zero + One + for<'x> std::ops::AddAssign<&'x T>,
{
    // row[j] holds [i choose j] for the current i
    let mut row: Vec<Vec<T>> = vec![vec![T::one()]];
    for i in 1..=a {
        let top = i.min(b);
        let mut next: Vec<Vec<T>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let degree = j * (i - j);
            let mut coeffs = vec![T::zero(); degree + 1];
            if j >= 1 {
                for (k, c) in row[j - 1].iter().enumerate() {
                    coeffs[k] += c;
                }
            }
            if j < row.len() && j < i {
                for (k, c) in row[j].iter().enumerate() {
                    coeffs[k + j] += c;
                }
            }
            next.push(coeffs);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// The Gaussian binomial `[a choose b]_q`, a polynomial in one variable whose
/// `q^w` coefficient counts Young diagrams of size `w` in a `b x (a-b)` box.
pub fn qbin_bracket(a: usize, b: usize) -> Result<LaurentPolynomial> {
    if b > a {
        return Err(Error::BinomialRange { a, b });
    }
    Ok(LaurentPolynomial::from_dense(&qbin_dense(a, b.min(a - b)), 0))
}

/// Symmetric quantum integer `(a)_q = q^{-(a-1)} + q^{-(a-3)} + ... + q^{a-1}`.
pub fn quantum_integer(a: usize) -> LaurentPolynomial {
    let top = a as i64 - 1;
    LaurentPolynomial::from_terms(1, (0..a as i64).map(|k| (vec![-top + 2 * k], 1)))
}

/// The centered binomial `(a choose b)_q = (a)_q! / ((b)_q! (a-b)_q!)`,
/// computed by exact division of the quantum factorials.
pub fn qbin_paren(a: usize, b: usize) -> Result<LaurentPolynomial> {
    if b > a {
        return Err(Error::BinomialRange { a, b });
    }
    let b = b.min(a - b);
    let mut numerator = LaurentPolynomial::one(1);
    for i in (a - b + 1)..=a {
        numerator = &numerator * &quantum_integer(i);
    }
    let mut denominator = LaurentPolynomial::one(1);
    for i in 1..=b {
        denominator = &denominator * &quantum_integer(i);
    }
    Ok(divide_univariate(&numerator, &denominator)
        .expect("quantum factorial quotient is a Laurent polynomial"))
}

/// Exact division of univariate Laurent polynomials whose divisor has
/// leading coefficient 1. Returns `None` if the division leaves a remainder.
fn divide_univariate(
    num: &LaurentPolynomial,
    den: &LaurentPolynomial,
) -> Option<LaurentPolynomial> {
    let dense = |p: &LaurentPolynomial| -> (i64, Vec<BigInt>) {
        let lo = p.terms().map(|(e, _)| e[0]).min().unwrap_or(0);
        let hi = p.terms().map(|(e, _)| e[0]).max().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in p.terms() {
            v[(e[0] - lo) as usize] = c.clone();
        }
        (lo, v)
    };
    let (nlo, mut nv) = dense(num);
    let (dlo, dv) = dense(den);
    if !dv.last()?.is_one() || nv.len() < dv.len() {
        return None;
    }
    let qlen = nv.len() - dv.len() + 1;
    let mut quotient = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = nv[k + dv.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in dv.iter().enumerate() {
            nv[k + i] -= &c * dc;
        }
        quotient[k] = c;
    }
    nv.iter()
        .all(Zero::is_zero)
        .then(|| LaurentPolynomial::from_dense(&quotient, nlo - dlo))
}

/// Power series in `t` truncated after `t^tmax`, with Laurent-polynomial
/// coefficients in the remaining variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeriesTruncated {
    coeffs: Vec<LaurentPolynomial>,
}

impl PowerSeriesTruncated {
    pub fn zero(arity: usize, tmax: usize) -> Self {
        Self {
            coeffs: vec![LaurentPolynomial::zero(arity); tmax + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPolynomial>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 term");
        Self { coeffs }
    }

    /// `1 / (1 - t)` truncated: every coefficient is 1.
    pub fn geometric(arity: usize, tmax: usize) -> Self {
        Self {
            coeffs: vec![LaurentPolynomial::one(arity); tmax + 1],
        }
    }

    pub fn tmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn arity(&self) -> usize {
        self.coeffs[0].arity()
    }

    pub fn coeff(&self, s: usize) -> &LaurentPolynomial {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[LaurentPolynomial] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Self
    where
        F: Fn(&LaurentPolynomial, &LaurentPolynomial) -> LaurentPolynomial,
    {
        assert_eq!(self.tmax(), other.tmax());
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.tmax(), other.tmax());
        let tmax = self.tmax();
        let mut out = Self::zero(self.arity(), tmax);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=tmax - i].iter().enumerate() {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    /// Divides by `1 - x^monomial * t`: the quotient `Q` satisfies
    /// `Q_j = P_j + x^monomial * Q_{j-1}`.
    pub fn div_one_minus(&self, monomial: &[i64]) -> Self {
        let mut coeffs: Vec<LaurentPolynomial> = Vec::with_capacity(self.coeffs.len());
        for (j, p) in self.coeffs.iter().enumerate() {
            let q = if j == 0 {
                p.clone()
            } else {
                p + &coeffs[j - 1].shifted(monomial)
            };
            coeffs.push(q);
        }
        Self { coeffs }
    }
}

/// Variable names of the generating function's coefficient polynomials.
pub const GENFUN_VARS: [&str; 3] = ["q", "x", "y"];

/// `H_{n,m}(q, x, y, t)` truncated at `t^tmax`: the `q^e x^a y^b t^s`
/// coefficient counts pairs in `C(s, n) x C(s, m)` with EMC `e` and weighted
/// totals `a` and `b`.
///
/// Built on the `(n, m)` grid from
/// `H_{n,m} = (H_{n-1,m} + H_{n,m-1} - H_{n-1,m-1}) / (1 - q^{|n-m|} x^{n-1} y^{m-1} t)`
/// with `H_{1,1} = 1/(1-t)` and `H_{0,m} = H_{n,0} = 0`.
pub fn genfun_h(n: usize, m: usize, tmax: usize) -> PowerSeriesTruncated {
    let zero = PowerSeriesTruncated::zero(3, tmax);
    if n == 0 || m == 0 {
        return zero;
    }
    let mut grid: Vec<Vec<PowerSeriesTruncated>> = vec![vec![zero.clone(); m + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=m {
            grid[i][j] = if i == 1 && j == 1 {
                PowerSeriesTruncated::geometric(3, tmax)
            } else {
                let numerator = grid[i - 1][j].add(&grid[i][j - 1]).sub(&grid[i - 1][j - 1]);
                let monomial = [i.abs_diff(j) as i64, i as i64 - 1, j as i64 - 1];
                numerator.div_one_minus(&monomial)
            };
        }
    }
    grid.swap_remove(n).swap_remove(m)
}

/// EMC-versus-D table for pairs in `C(s, n)^2`, read off the `t^s`
/// coefficient of `H_{n,n}` after substituting `x = z`, `y = 1/z`.
pub fn distribution_from_genfun(s: usize, n: usize) -> DistributionTable {
    let h = genfun_h(n, n, s);
    let mut table = DistributionTable::new(2, s, n);
    for (e, c) in h.coeff(s).terms() {
        let count = c
            .to_biguint()
            .expect("generating function coefficients are counts");
        table.add(DValue::new(vec![e[1] - e[2]]), Some(e[0] as u64), count);
    }
    table
}

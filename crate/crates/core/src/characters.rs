//! Weighted-difference distributions as `sl_d` weight diagrams.
//!
//! The distribution of `D`-values over `C(s, n)^d` is the product of `d`
//! q-binomials `[s+n-1 choose s]`, the `i`-th in the variable `x_i`, with
//! `x_d = (x_1 ... x_{d-1})^{-1}`. Exponent vectors are coordinates in the
//! basis of simple roots `sigma_1, ..., sigma_{d-1}`, and the coordinates
//! `[w_1, ..., w_{d-1}, 0]` of a `D`-value map to `sum w_i sigma_i`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Enumeration;
use crate::qseries::{qbin_bracket, LaurentPolynomial};
use crate::statistics::{tabulate, DValue, DistributionTable};

/// Integer coordinates with respect to the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootLatticeVector(Vec<i64>);

impl RootLatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<DValue> for RootLatticeVector {
    fn from(d: DValue) -> Self {
        Self(d.coords().to_vec())
    }
}

impl From<RootLatticeVector> for DValue {
    fn from(w: RootLatticeVector) -> Self {
        DValue::new(w.0)
    }
}

/// Character of `V = (Sym^s C^n)^{(x) d}` in the variables
/// `x_1, ..., x_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPolynomial {
    d: usize,
    poly: LaurentPolynomial,
}

impl CharacterPolynomial {
    pub fn new(d: usize, poly: LaurentPolynomial) -> Result<Self> {
        if d < 2 || poly.arity() != d - 1 {
            return Err(Error::WrongArity {
                expected: d.saturating_sub(1),
                found: poly.arity(),
            });
        }
        Ok(Self { d, poly })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn polynomial(&self) -> &LaurentPolynomial {
        &self.poly
    }

    pub fn multiplicity(&self, weight: &[i64]) -> BigInt {
        self.poly.coefficient(weight)
    }

    pub fn weights(&self) -> impl Iterator<Item = (RootLatticeVector, &BigInt)> {
        self.poly
            .terms()
            .map(|(e, c)| (RootLatticeVector(e.to_vec()), c))
    }

    /// Whether the coefficient map equals the `D`-only counts of `table`.
    pub fn matches_table(&self, table: &DistributionTable) -> bool {
        if table.d() != self.d {
            return false;
        }
        let agrees = |t: &DistributionTable| {
            t.len() == self.poly.len()
                && t.entries().all(|(key, count)| {
                    self.poly.coefficient(key.d_value.coords()) == BigInt::from(count.clone())
                })
        };
        if table.entries().all(|(key, _)| key.emc.is_none()) {
            agrees(table)
        } else {
            agrees(&table.marginal_d())
        }
    }
}

/// `prod_{i=1}^d [s+n-1 choose s]_{x_i}` with `x_d = (x_1 ... x_{d-1})^{-1}`.
///
/// The substitution is applied to each factor before multiplying, which
/// gives the same product in `d - 1` variables as substituting afterwards.
pub fn virtual_character(s: usize, n: usize, d: usize) -> Result<CharacterPolynomial> {
    if n == 0 {
        return Err(Error::NoBins);
    }
    if d < 2 {
        return Err(Error::TooFewArguments { min: 2, got: d });
    }
    let base = qbin_bracket(s + n - 1, s)?;
    let vars = d - 1;
    let mut product = LaurentPolynomial::one(vars);
    for factor in 0..d {
        let embedded = base.map_exponents(vars, |e| {
            if factor < vars {
                let mut v = vec![0; vars];
                v[factor] = e[0];
                v
            } else {
                vec![-e[0]; vars]
            }
        });
        product = &product * &embedded;
    }
    Ok(CharacterPolynomial { d, poly: product })
}

/// Exhaustive `D`-value counts over `C(s, n)^d`.
pub fn d_distribution_bruteforce(s: usize, n: usize, d: usize) -> Result<DistributionTable> {
    d_distribution_bruteforce_with(s, n, d, &Enumeration::default())
}

pub fn d_distribution_bruteforce_with(
    s: usize,
    n: usize,
    d: usize,
    config: &Enumeration,
) -> Result<DistributionTable> {
    tabulate(s, n, d, false, config)
}

/// Signed multiplicities of irreducible `sl_3` representations, keyed by
/// highest weight in simple-root coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualDecomposition {
    multiplicities: BTreeMap<RootLatticeVector, BigInt>,
}

impl VirtualDecomposition {
    pub fn multiplicity(&self, weight: &[i64]) -> BigInt {
        self.multiplicities
            .get(&RootLatticeVector(weight.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootLatticeVector, &BigInt)> {
        self.multiplicities.iter()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

/// `(1 - x_1^{-1})(1 - x_2^{-1})(1 - (x_1 x_2)^{-1})`.
pub fn weyl_denominator_sl3() -> LaurentPolynomial {
    let factor = |e: Vec<i64>| {
        LaurentPolynomial::from_terms(2, vec![(vec![0, 0], BigInt::from(1)), (e, BigInt::from(-1))])
    };
    &(&factor(vec![-1, 0]) * &factor(vec![0, -1])) * &factor(vec![-1, -1])
}

/// `w_1 sigma_1 + w_2 sigma_2` is dominant iff both fundamental-weight
/// coordinates `2 w_1 - w_2` and `2 w_2 - w_1` are nonnegative.
pub fn is_dominant_sl3(w: &[i64]) -> bool {
    2 * w[0] - w[1] >= 0 && 2 * w[1] - w[0] >= 0
}

/// Multiplies an `sl_3` character by the Weyl denominator and keeps the
/// dominant terms; each is a highest weight with its signed multiplicity.
pub fn decompose_sl3(ch: &CharacterPolynomial) -> Result<VirtualDecomposition> {
    if ch.d != 3 {
        return Err(Error::WrongArity {
            expected: 2,
            found: ch.d - 1,
        });
    }
    let product = &ch.poly * &weyl_denominator_sl3();
    let multiplicities = product
        .terms()
        .filter(|(e, c)| is_dominant_sl3(e) && !c.is_zero())
        .map(|(e, c)| (RootLatticeVector(e.to_vec()), c.clone()))
        .collect();
    Ok(VirtualDecomposition { multiplicities })
}

/// Plane position of `w_1 sigma_1 + w_2 sigma_2` with unit-length `sigma_1`
/// at 0 degrees and `sigma_2` at 120 degrees.
pub fn cartesian_sl3(w: &[i64]) -> (f64, f64) {
    let (a, b) = (w[0] as f64, w[1] as f64);
    (a - 0.5 * b, b * 3f64.sqrt() / 2.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightRow {
    pub coords: Vec<i64>,
    pub count: BigInt,
    /// Present only for `d = 3`.
    pub cartesian: Option<(f64, f64)>,
}

fn weight_row(d: usize, coords: Vec<i64>, count: BigInt) -> WeightRow {
    let cartesian = (d == 3).then(|| cartesian_sl3(&coords));
    WeightRow {
        coords,
        count,
        cartesian,
    }
}

pub fn weight_rows_from_character(ch: &CharacterPolynomial) -> Vec<WeightRow> {
    ch.poly
        .terms()
        .map(|(e, c)| weight_row(ch.d, e.to_vec(), c.clone()))
        .collect()
}

/// One row per `D`-value, summing over EMC when the table has it.
pub fn weight_rows_from_table(table: &DistributionTable) -> Vec<WeightRow> {
    table
        .marginal_d()
        .entries()
        .map(|(k, c)| weight_row(table.d(), k.d_value.coords().to_vec(), BigInt::from(c.clone())))
        .collect()
}

pub fn weight_rows_from_decomposition(dec: &VirtualDecomposition) -> Vec<WeightRow> {
    dec.iter()
        .map(|(w, m)| weight_row(3, w.coords().to_vec(), m.clone()))
        .collect()
}

//! Weighted totals and differences, plane-partition counts, and exhaustive
//! EMC-versus-weighted-difference tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::compositions::{
    binomial, common_shape, composition_count, diagrams_in_box, enumerate, Composition,
};
use crate::emc::{symdiff_padded, PaddedDiagram};
use crate::error::{Error, Result};
use crate::par::{fold_tuples, Enumeration};

/// A tuple of integers modulo the all-ones vector, stored as the
/// `(d-1)`-tuple obtained by subtracting the last coordinate from every
/// coordinate and dropping it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DValue(Vec<i64>);

impl DValue {
    /// Wraps an already-canonical `(d-1)`-tuple.
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    /// Canonical class of `[w_1, ..., w_d]`.
    pub fn from_totals(totals: &[i64]) -> Self {
        match totals.split_last() {
            Some((&last, rest)) => Self(rest.iter().map(|w| w - last).collect()),
            None => Self(Vec::new()),
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|w| -w).collect())
    }
}

impl fmt::Display for DValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for w in &self.0 {
            write!(f, "{w},")?;
        }
        f.write_str("0]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableKey {
    pub d_value: DValue,
    /// `None` for tables that record only the weighted difference.
    pub emc: Option<u64>,
}

/// Exact tuple counts keyed by weighted difference and, optionally, EMC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    d: usize,
    s: usize,
    n: usize,
    entries: BTreeMap<TableKey, BigUint>,
}

impl DistributionTable {
    pub fn new(d: usize, s: usize, n: usize) -> Self {
        Self {
            d,
            s,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, d_value: DValue, emc: Option<u64>, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry(TableKey { d_value, emc }).or_default() += count;
    }

    pub fn get(&self, d_value: &DValue, emc: Option<u64>) -> BigUint {
        self.entries
            .get(&TableKey {
                d_value: d_value.clone(),
                emc,
            })
            .cloned()
            .unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Sums out the EMC coordinate.
    pub fn marginal_d(&self) -> DistributionTable {
        let mut out = DistributionTable::new(self.d, self.s, self.n);
        for (k, c) in &self.entries {
            out.add(k.d_value.clone(), None, c.clone());
        }
        out
    }

    /// Compares the counts only, ignoring the `(s, n)` metadata.
    pub fn same_counts(&self, other: &DistributionTable) -> bool {
        self.d == other.d && self.entries == other.entries
    }
}

pub fn weighted_total(c: &Composition) -> u64 {
    c.weighted_total() as u64
}

/// `[T(a_1), ..., T(a_d)]` in canonical form; for two compositions the single
/// coordinate is `T(a) - T(b)`.
pub fn weighted_difference(tuple: &[Composition]) -> Result<DValue> {
    if tuple.len() < 2 {
        return Err(Error::TooFewArguments {
            min: 2,
            got: tuple.len(),
        });
    }
    common_shape(tuple)?;
    let totals: Vec<i64> = tuple.iter().map(|c| c.weighted_total() as i64).collect();
    Ok(DValue::from_totals(&totals))
}

/// Number of plane partitions in an `x x y x z` box,
/// `prod_{i,j,k} (i+j+k-1)/(i+j+k-2)`, with numerator and denominator
/// accumulated separately and divided once.
pub fn pp_box(x: usize, y: usize, z: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=x {
        for j in 1..=y {
            for k in 1..=z {
                num *= i + j + k - 1;
                den *= i + j + k - 2;
            }
        }
    }
    num / den
}

/// `PP(x, y, 2) = (x+1)...(x+y) * (x+2)...(x+y+1) / (y! (y+1)!)`.
pub fn pp_2(x: usize, y: usize) -> BigUint {
    let mut num = BigUint::one();
    for k in (x + 1)..=(x + y) {
        num *= k;
    }
    for k in (x + 2)..=(x + y + 1) {
        num *= k;
    }
    let mut den = BigUint::one();
    for k in 1..=y {
        den *= k;
    }
    for k in 1..=(y + 1) {
        den *= k;
    }
    num / den
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Proportion of ordered pairs in `C(s, n)^2` with `EMC = |D|`:
/// `2(s+n)/(n(s+1)) - (n-1)!/((s+1)...(s+n-1))`.
pub fn proportion_emc_eq_absd(s: usize, n: usize) -> Result<BigRational> {
    if s == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "proportion needs s, n >= 1 (got s={s}, n={n})"
        )));
    }
    let first = ratio(2 * (s + n), n * (s + 1));
    let mut fact = BigInt::one();
    for k in 1..n {
        fact *= k;
    }
    let mut rising = BigInt::one();
    for k in (s + 1)..(s + n) {
        rising *= k;
    }
    Ok(first - BigRational::new(fact, rising))
}

/// The same proportion through plane partitions:
/// `(2 PP(s, n-1, 2) - |C(s,n)|) / |C(s,n)|^2`.
pub fn proportion_via_plane_partitions(s: usize, n: usize) -> BigRational {
    let size = BigInt::from(binomial(s + n - 1, n - 1));
    let pairs = BigInt::from(2u32) * BigInt::from(pp_2(s, n - 1)) - &size;
    BigRational::new(pairs, &size * &size)
}

/// `(s-1)(n-2)`: from this weighted difference on, every pair has
/// `EMC = D`.
pub fn tail_threshold(s: usize, n: usize) -> i64 {
    (s as i64 - 1) * (n as i64 - 2)
}

/// `sum over diagrams g in Y(s, n-1) of cor(g) (cor(g) - 1)`, the number of
/// ordered equal-size pairs whose symmetric difference is two cells.
pub fn count_emc2_d0(s: usize, n: usize) -> BigUint {
    diagrams_in_box(s, n)
        .map(|g| {
            let c = g.corners();
            BigUint::from(c * c.saturating_sub(1))
        })
        .sum()
}

/// Largest packed key space counted in a flat array rather than a hash map.
const DENSE_KEYS: u128 = 1 << 22;

/// Exhaustive count over `C(s, n)^d`. Keys are packed into a single integer
/// while counting and unpacked into a [`DistributionTable`] at the end.
pub(crate) fn tabulate(
    s: usize,
    n: usize,
    d: usize,
    with_emc: bool,
    config: &Enumeration,
) -> Result<DistributionTable> {
    if n == 0 {
        return Err(Error::NoBins);
    }
    if d < 2 {
        return Err(Error::TooFewArguments { min: 2, got: d });
    }
    let radix = composition_count(s, n);
    let total = config.check(radix, d)?;
    let comps: Vec<Composition> = enumerate(s, n).collect();
    let totals: Vec<i64> = comps.iter().map(|c| c.weighted_total() as i64).collect();
    let padded: Vec<PaddedDiagram> = comps.iter().map(PaddedDiagram::new).collect();

    let cols = n - 1;
    let span = (s * cols) as i64;
    let base = (2 * span + 1) as u128;
    let emc_levels = if with_emc {
        (s * cols * (d / 2) + 1) as u128
    } else {
        1
    };
    let key_space = (0..d - 1)
        .try_fold(emc_levels, |acc, _| acc.checked_mul(base))
        .ok_or_else(|| {
            Error::InvalidParameter(format!("key space for s={s}, n={n}, d={d} is too large"))
        })?;

    let pack = |tuple: &[usize], scratch: &mut Vec<usize>| -> u128 {
        let last = totals[tuple[d - 1]];
        let mut key = 0u128;
        for &i in tuple[..d - 1].iter().rev() {
            key = key * base + (totals[i] - last + span) as u128;
        }
        if with_emc {
            key * emc_levels + symdiff_padded(&padded, tuple, s, cols, scratch) as u128
        } else {
            key
        }
    };

    let counts: Vec<(u128, u64)> = if key_space <= DENSE_KEYS.min(4 * total + 1024) {
        let width = key_space as usize;
        fold_tuples(
            radix as usize,
            d,
            total,
            config.strategy,
            || (vec![0u64; width], Vec::new()),
            |(acc, scratch), tuple| acc[pack(tuple, scratch) as usize] += 1,
            |(mut a, scratch), (b, _)| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                (a, scratch)
            },
        )
        .0
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k as u128, c))
        .collect()
    } else {
        fold_tuples(
            radix as usize,
            d,
            total,
            config.strategy,
            || (HashMap::<u128, u64>::new(), Vec::new()),
            |(acc, scratch), tuple| {
                *acc.entry(pack(tuple, scratch)).or_default() += 1;
            },
            |(mut a, scratch), (b, _)| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                (a, scratch)
            },
        )
        .0
        .into_iter()
        .collect()
    };

    let mut table = DistributionTable::new(d, s, n);
    for (mut key, count) in counts {
        let emc = with_emc.then(|| {
            let e = (key % emc_levels) as u64;
            key /= emc_levels;
            e
        });
        let coords = (0..d - 1)
            .map(|_| {
                let w = (key % base) as i64 - span;
                key /= base;
                w
            })
            .collect();
        table.add(DValue::new(coords), emc, BigUint::from(count));
    }
    Ok(table)
}

/// Exhaustive `(D, EMC) -> count` table over `C(s, n)^d`.
pub fn emc_vs_d_table(s: usize, n: usize, d: usize) -> Result<DistributionTable> {
    emc_vs_d_table_with(s, n, d, &Enumeration::default())
}

pub fn emc_vs_d_table_with(
    s: usize,
    n: usize,
    d: usize,
    config: &Enumeration,
) -> Result<DistributionTable> {
    tabulate(s, n, d, true, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(entries: &[usize]) -> Composition {
        Composition::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn weighted_totals() {
        assert_eq!(weighted_total(&comp(&[5, 0, 5])), 10);
        assert_eq!(weighted_total(&comp(&[4, 0, 0, 0])), 0);
        assert_eq!(weighted_total(&comp(&[0, 0, 0, 4])), 12);
    }

    #[test]
    fn weighted_differences() {
        let d = weighted_difference(&[comp(&[5, 5, 0]), comp(&[0, 5, 5])]).unwrap();
        assert_eq!(d.coords(), &[-10]);
        let c = comp(&[1, 1, 1]);
        assert!(weighted_difference(&[c.clone(), c.clone(), c]).unwrap().is_zero());
        assert_eq!(DValue::from_totals(&[1, 1, 0]).coords(), &[1, 1]);
        assert_eq!(DValue::from_totals(&[5, 2, 1, 3]).coords(), &[2, -1, -2]);
        assert!(weighted_difference(&[comp(&[1, 0]), comp(&[1, 0, 0])]).is_err());
        assert!(weighted_difference(&[comp(&[1, 0])]).is_err());
    }

    #[test]
    fn plane_partition_counts() {
        assert_eq!(pp_box(1, 1, 1), 2u32.into());
        assert_eq!(pp_box(1, 1, 2), 3u32.into());
        assert_eq!(pp_box(2, 2, 2), 20u32.into());
        assert_eq!(pp_box(0, 4, 4), 1u32.into());
        assert_eq!(pp_2(1, 1), 3u32.into());
        assert_eq!(pp_2(7, 0), 1u32.into());
        assert_eq!(pp_2(3, 2), pp_box(3, 2, 2));
    }

    #[test]
    fn proportions() {
        assert_eq!(proportion_emc_eq_absd(3, 3).unwrap(), ratio(9, 10));
        for s in 1..6 {
            assert_eq!(proportion_emc_eq_absd(s, 1).unwrap(), BigRational::one());
        }
        assert_eq!(proportion_via_plane_partitions(3, 3), ratio(9, 10));
        assert!(proportion_emc_eq_absd(0, 3).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(tail_threshold(3, 4), 4);
        assert_eq!(tail_threshold(7, 2), 0);
        assert_eq!(tail_threshold(1, 9), 0);
    }

    #[test]
    fn corner_sums() {
        assert_eq!(count_emc2_d0(1, 2), 0u32.into());
        assert_eq!(count_emc2_d0(2, 3), 2u32.into());
    }

    #[test]
    fn smallest_table() {
        let t = emc_vs_d_table(1, 2, 2).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(&DValue::new(vec![0]), Some(0)), 2u32.into());
        assert_eq!(t.get(&DValue::new(vec![1]), Some(1)), 1u32.into());
        assert_eq!(t.get(&DValue::new(vec![-1]), Some(1)), 1u32.into());
        assert_eq!(t.marginal_d().get(&DValue::new(vec![0]), None), 2u32.into());
    }

    #[test]
    fn table_budget() {
        let tight = Enumeration::default().with_budget(10);
        assert!(matches!(
            emc_vs_d_table_with(2, 3, 2, &tight),
            Err(Error::BudgetExceeded { required: 36, .. })
        ));
        assert!(emc_vs_d_table(1, 2, 1).is_err());
    }
}

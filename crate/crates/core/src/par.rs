//! Exhaustive traversal of `radix^arity` index tuples, split into fixed-size
//! chunks. With the `parallel` feature the chunks are folded on the rayon
//! pool; without it (or with [`Strategy::Sequential`]) they run in order on
//! the calling thread. Callers must supply an order-independent merge, so
//! both strategies produce identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default cap on the number of tuples an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

const CHUNK: u128 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Rayon work-stealing over chunks. Falls back to sequential when the
    /// crate is built without the `parallel` feature.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for Enumeration {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::default(),
        }
    }
}

impl Enumeration {
    pub fn sequential() -> Self {
        Self {
            strategy: Strategy::Sequential,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Number of tuples in `radix^arity`, or an error past the budget.
    pub fn check(&self, radix: u128, arity: usize) -> Result<u128> {
        let required = (0..arity).try_fold(1u128, |acc, _| acc.checked_mul(radix));
        match required {
            Some(r) if r <= self.budget => Ok(r),
            Some(r) => Err(Error::BudgetExceeded {
                required: r,
                budget: self.budget,
            }),
            None => Err(Error::BudgetExceeded {
                required: u128::MAX,
                budget: self.budget,
            }),
        }
    }
}

/// Folds `visit` over every tuple in `{0..radix}^arity` (most significant
/// index first). `total` must equal `radix^arity`.
pub(crate) fn fold_tuples<A, I, V, M>(
    radix: usize,
    arity: usize,
    total: u128,
    strategy: Strategy,
    identity: I,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[usize]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    let run_chunk = |mut acc: A, chunk: u128| -> A {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut digits = decode(start, radix, arity);
        for _ in start..end {
            visit(&mut acc, &digits);
            increment(&mut digits, radix);
        }
        acc
    };
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..chunks as u64)
            .into_par_iter()
            .fold(&identity, |acc, c| run_chunk(acc, c as u128))
            .reduce(&identity, &merge),
        _ => (0..chunks).fold(identity(), run_chunk),
    }
}

fn decode(mut index: u128, radix: usize, arity: usize) -> Vec<usize> {
    let mut digits = vec![0; arity];
    for slot in digits.iter_mut().rev() {
        *slot = (index % radix as u128) as usize;
        index /= radix as u128;
    }
    digits
}

fn increment(digits: &mut [usize], radix: usize) {
    for slot in digits.iter_mut().rev() {
        *slot += 1;
        if *slot < radix {
            return;
        }
        *slot = 0;
    }
}

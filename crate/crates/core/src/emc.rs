//! The earth mover's coefficient of a tuple of compositions.
//!
//! Four independent routes are provided:
//!
//! * [`emc_rsk`]: sort-and-pair cost summed over the columns of the word
//!   matrix (the support of an optimal transport array is the set of its
//!   columns).
//! * [`unimodal_symdiff`]: cellwise `min(k, d - k)` over the Young diagrams,
//!   where `k` counts the diagrams containing the cell. This is the
//!   production route behind [`emc`].
//! * [`emc_transport_oracle`]: exhaustive search over integer transport
//!   arrays, for small instances only.
//! * [`emc_prefix_oracle`]: the classical prefix-sum formula, two histograms
//!   only.
//!
//! Bins are 0-indexed throughout. The cost is translation invariant so this
//! does not change any optimum.

use serde::Serialize;

use crate::compositions::{common_shape, Composition, Word, YoungDiagram};
use crate::error::{Error, Result};

/// L1 distance from `x` to the main diagonal `{(t, ..., t)}`: after sorting,
/// the sum of `x[d-1-i] - x[i]` for `i < d/2`.
pub fn cost(x: &[usize]) -> u64 {
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    sorted_cost(&sorted)
}

fn sorted_cost(sorted: &[usize]) -> u64 {
    let d = sorted.len();
    (0..d / 2)
        .map(|i| (sorted[d - 1 - i] - sorted[i]) as u64)
        .sum()
}

/// `min_t sum_i |x_i - t|` by scanning every integer `t` in `[min x, max x]`.
pub fn cost_median_oracle(x: &[usize]) -> u64 {
    let (Some(&lo), Some(&hi)) = (x.iter().min(), x.iter().max()) else {
        return 0;
    };
    (lo..=hi)
        .map(|t| x.iter().map(|&xi| xi.abs_diff(t) as u64).sum::<u64>())
        .min()
        .unwrap_or(0)
}

/// `d x s` matrix whose `i`-th row is the word of the `i`-th composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMatrix {
    rows: Vec<Word>,
    s: usize,
}

impl WordMatrix {
    pub fn new(tuple: &[Composition]) -> Result<Self> {
        let (s, _) = common_shape(tuple)?;
        Ok(Self {
            rows: tuple.iter().map(Composition::word).collect(),
            s,
        })
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// Column `j` as a position vector in `[n]^d`.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().map(|w| w.symbols()[j]).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.s).map(|j| self.column(j))
    }
}

/// One column of the word matrix together with its cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnCost {
    pub column: Vec<usize>,
    pub cost: u64,
}

fn check_tuple(tuple: &[Composition]) -> Result<(usize, usize)> {
    if tuple.len() < 2 {
        return Err(Error::TooFewArguments {
            min: 2,
            got: tuple.len(),
        });
    }
    let (s, n) = common_shape(tuple)?;
    let half = tuple.len() / 2;
    // EMC <= s * (n - 1) * floor(d / 2)
    s.checked_mul(n - 1)
        .and_then(|v| v.checked_mul(half))
        .filter(|&v| u64::try_from(v).is_ok())
        .ok_or(Error::Overflow {
            s,
            cols: n - 1,
            half,
        })?;
    Ok((s, n))
}

/// Per-column costs of the word matrix; their sum is the EMC.
pub fn rsk_trace(tuple: &[Composition]) -> Result<Vec<ColumnCost>> {
    check_tuple(tuple)?;
    let matrix = WordMatrix::new(tuple)?;
    Ok(matrix
        .columns()
        .map(|column| {
            let cost = cost(&column);
            ColumnCost { column, cost }
        })
        .collect())
}

pub fn emc_rsk(tuple: &[Composition]) -> Result<u64> {
    Ok(rsk_trace(tuple)?.iter().map(|c| c.cost).sum())
}

fn check_diagrams(diagrams: &[YoungDiagram]) -> Result<(usize, usize)> {
    let first = diagrams.first().ok_or(Error::TooFewArguments { min: 1, got: 0 })?;
    let (rows, cols) = (first.max_rows(), first.max_cols());
    for d in &diagrams[1..] {
        if d.max_rows() != rows || d.max_cols() != cols {
            return Err(Error::BoxMismatch(rows, cols, d.max_rows(), d.max_cols()));
        }
    }
    Ok((rows, cols))
}

/// Cellwise `sum min(k, d - k)` over the common bounding box, where `k` is
/// the number of diagrams containing the cell.
pub fn unimodal_symdiff(diagrams: &[YoungDiagram]) -> Result<u64> {
    let (rows, cols) = check_diagrams(diagrams)?;
    let d = diagrams.len();
    let mut at_least = vec![0usize; cols + 1];
    let mut total = 0u64;
    for r in 0..rows {
        // at_least[c] = number of diagrams whose row r has length exactly c,
        // then turned into a suffix count of lengths > c.
        at_least.iter_mut().for_each(|v| *v = 0);
        for diagram in diagrams {
            at_least[diagram.row(r)] += 1;
        }
        let mut longer = 0;
        for c in (0..cols).rev() {
            longer += at_least[c + 1];
            total += longer.min(d - longer) as u64;
        }
    }
    Ok(total)
}

/// Containment counts and `min(k, d - k)` weights for every cell of the
/// union of the diagrams, row by row from the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellGrid {
    pub counts: Vec<Vec<usize>>,
    pub weights: Vec<Vec<usize>>,
}

impl CellGrid {
    pub fn total(&self) -> u64 {
        self.weights.iter().flatten().map(|&w| w as u64).sum()
    }
}

pub fn symdiff_grid(diagrams: &[YoungDiagram]) -> Result<CellGrid> {
    check_diagrams(diagrams)?;
    let d = diagrams.len();
    let height = diagrams.iter().map(|g| g.rows().len()).max().unwrap_or(0);
    let mut counts = Vec::with_capacity(height);
    let mut weights = Vec::with_capacity(height);
    for r in 0..height {
        let width = diagrams.iter().map(|g| g.row(r)).max().unwrap_or(0);
        let row: Vec<usize> = (0..width)
            .map(|c| diagrams.iter().filter(|g| g.contains_cell(r, c)).count())
            .collect();
        weights.push(row.iter().map(|&k| k.min(d - k)).collect());
        counts.push(row);
    }
    Ok(CellGrid { counts, weights })
}

/// Earth mover's coefficient of a tuple of at least two compositions sharing
/// `s` and `n`.
pub fn emc(tuple: &[Composition]) -> Result<u64> {
    check_tuple(tuple)?;
    let diagrams: Vec<YoungDiagram> = tuple.iter().map(Composition::diagram).collect();
    unimodal_symdiff(&diagrams)
}

/// Two-histogram transport cost `sum_j |sum_{i <= j} (a_i - b_i)|`.
pub fn emc_prefix_oracle(a: &Composition, b: &Composition) -> Result<u64> {
    common_shape(&[a.clone(), b.clone()])?;
    let mut running: i128 = 0;
    let mut total: u64 = 0;
    for (&x, &y) in a.entries().iter().zip(b.entries()) {
        running += x as i128 - y as i128;
        total += running.unsigned_abs() as u64;
    }
    Ok(total)
}

/// Largest `n^d` the transport oracle accepts.
pub const TRANSPORT_MAX_CELLS: usize = 64;
/// Largest `s` the transport oracle accepts.
pub const TRANSPORT_MAX_S: usize = 10;

/// Exact optimum of the transport problem over nonnegative integer arrays
/// `J` on `[n]^d` whose coordinate hyperplane sums are the given
/// compositions, found by exhaustive branch-and-bound.
///
/// Refuses instances with `n^d > 64` or `s > 10`.
pub fn emc_transport_oracle(tuple: &[Composition]) -> Result<u64> {
    let (s, n) = check_tuple(tuple)?;
    let d = tuple.len();
    let cells = n
        .checked_pow(d as u32)
        .filter(|&c| c <= TRANSPORT_MAX_CELLS);
    if cells.is_none() {
        return Err(Error::InstanceTooLarge {
            reason: format!("n^d = {n}^{d} exceeds {TRANSPORT_MAX_CELLS} cells"),
        });
    }
    if s > TRANSPORT_MAX_S {
        return Err(Error::InstanceTooLarge {
            reason: format!("s = {s} exceeds {TRANSPORT_MAX_S}"),
        });
    }
    let mut search = TransportSearch {
        remaining: tuple.iter().map(|c| c.entries().to_vec()).collect(),
        d,
        n,
        best: u64::MAX,
    };
    let mut last = vec![0; d];
    search.place(s, 0, &mut last);
    Ok(search.best)
}

/// Places the unit masses of `J` one at a time, in lexicographically
/// nondecreasing cell order, so every array is visited once.
struct TransportSearch {
    remaining: Vec<Vec<usize>>,
    d: usize,
    n: usize,
    best: u64,
}

impl TransportSearch {
    fn place(&mut self, left: usize, cost_so_far: u64, last: &mut Vec<usize>) {
        if cost_so_far >= self.best {
            return;
        }
        if left == 0 {
            self.best = cost_so_far;
            return;
        }
        // Cells are visited in lexicographic order, so the first coordinate
        // of the next unit is forced to the smallest unspent bin of the first
        // marginal.
        let Some(first) = self.remaining[0].iter().position(|&r| r > 0) else {
            return;
        };
        if first < last[0] {
            return;
        }
        let tight = first == last[0];
        let mut cell = vec![0; self.d];
        cell[0] = first;
        self.choose(1, tight, &mut cell, left, cost_so_far, last);
    }

    fn choose(
        &mut self,
        axis: usize,
        tight: bool,
        cell: &mut Vec<usize>,
        left: usize,
        cost_so_far: u64,
        last: &mut Vec<usize>,
    ) {
        if axis == self.d {
            for (i, &v) in cell.iter().enumerate() {
                if self.remaining[i][v] == 0 {
                    return;
                }
            }
            for (i, &v) in cell.iter().enumerate() {
                self.remaining[i][v] -= 1;
            }
            let previous = std::mem::replace(last, cell.clone());
            self.place(left - 1, cost_so_far + cost(cell), last);
            *last = previous;
            for (i, &v) in cell.iter().enumerate() {
                self.remaining[i][v] += 1;
            }
            return;
        }
        let start = if tight { last[axis] } else { 0 };
        for v in start..self.n {
            if self.remaining[axis][v] == 0 {
                continue;
            }
            cell[axis] = v;
            self.choose(axis + 1, tight && v == last[axis], cell, left, cost_so_far, last);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    Rsk,
    #[default]
    Symdiff,
    Transport,
    Prefix,
}

pub fn emc_with(method: Method, tuple: &[Composition]) -> Result<u64> {
    match method {
        Method::Rsk => emc_rsk(tuple),
        Method::Symdiff => emc(tuple),
        Method::Transport => emc_transport_oracle(tuple),
        Method::Prefix => match tuple {
            [a, b] => emc_prefix_oracle(a, b),
            _ => Err(Error::InvalidParameter(format!(
                "the prefix method compares exactly two compositions, got {}",
                tuple.len()
            ))),
        },
    }
}

/// Precomputed padded rows for fast repeated symmetric-difference
/// evaluation during enumeration.
#[derive(Clone, Debug)]
pub(crate) struct PaddedDiagram {
    pub rows: Vec<usize>,
}

impl PaddedDiagram {
    pub fn new(c: &Composition) -> Self {
        let d = c.diagram();
        Self {
            rows: (0..c.s()).map(|r| d.row(r)).collect(),
        }
    }
}

/// Same quantity as [`unimodal_symdiff`] for the diagrams `all[i]`,
/// `i in tuple`, sharing an `s x cols` box. Reuses `scratch` across calls.
pub(crate) fn symdiff_padded(
    all: &[PaddedDiagram],
    tuple: &[usize],
    s: usize,
    cols: usize,
    scratch: &mut Vec<usize>,
) -> u64 {
    let d = tuple.len();
    scratch.clear();
    scratch.resize(cols + 1, 0);
    let mut total = 0u64;
    for r in 0..s {
        scratch.iter_mut().for_each(|v| *v = 0);
        for &i in tuple {
            scratch[all[i].rows[r]] += 1;
        }
        let mut longer = 0;
        for c in (0..cols).rev() {
            longer += scratch[c + 1];
            total += longer.min(d - longer) as u64;
        }
    }
    total
}

//! Compositions (integer histograms), their words, and the Young diagrams
//! they correspond to.
//!
//! A composition in `C(s, n)` is an `n`-tuple of nonnegative integers summing
//! to `s`. Its word lists bin `i` exactly `entries[i]` times in increasing
//! order, and its Young diagram has those word entries as row lengths read
//! from the bottom up. The diagram fits inside an `s x (n-1)` box, and every
//! diagram in that box arises from exactly one composition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    entries: Vec<usize>,
    total: usize,
}

impl Composition {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NoBins);
        }
        let total = entries.iter().sum();
        Ok(Self { entries, total })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of data points `s`.
    pub fn s(&self) -> usize {
        self.total
    }

    /// Number of bins `n`.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn word(&self) -> Word {
        let mut symbols = Vec::with_capacity(self.total);
        for (bin, &count) in self.entries.iter().enumerate() {
            symbols.extend(std::iter::repeat_n(bin, count));
        }
        Word {
            symbols,
            n: self.n(),
        }
    }

    /// The Young diagram whose ascending row lengths are the word.
    pub fn diagram(&self) -> YoungDiagram {
        let mut rows = Vec::with_capacity(self.total);
        for (bin, &count) in self.entries.iter().enumerate().rev() {
            if bin == 0 {
                break;
            }
            rows.extend(std::iter::repeat_n(bin, count));
        }
        YoungDiagram {
            rows,
            max_rows: self.total,
            max_cols: self.n() - 1,
        }
    }

    /// Weighted total `sum_i i * a_i`, which is also the diagram's cell count.
    pub fn weighted_total(&self) -> usize {
        self.entries.iter().enumerate().map(|(i, &a)| i * a).sum()
    }

    /// Appends empty bins up to `n`. The word, and hence the diagram's cells,
    /// are unchanged.
    pub fn padded_to(&self, n: usize) -> Composition {
        let mut entries = self.entries.clone();
        if entries.len() < n {
            entries.resize(n, 0);
        }
        Composition {
            entries,
            total: self.total,
        }
    }

    pub fn all(s: usize, n: usize) -> Compositions {
        enumerate(s, n)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses comma-separated decimal entries, e.g. `4,1,1,0,0`. Whitespace
    /// around entries is ignored.
    fn from_str(input: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: input.to_string(),
            reason,
        };
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(parse_err("empty composition".into()));
        }
        let entries = trimmed
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<usize>()
                    .map_err(|e| parse_err(format!("entry {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(entries)
    }
}

/// Parses a `;`-separated list of compositions, e.g.
/// `4,1,1,0,0; 3,0,0,0,3`.
pub fn parse_tuple(input: &str) -> Result<Vec<Composition>> {
    input
        .split(';')
        .filter(|part| !part.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Checks that every composition lies in the same `C(s, n)` and returns `(s, n)`.
pub fn common_shape(tuple: &[Composition]) -> Result<(usize, usize)> {
    let first = tuple.first().ok_or(Error::TooFewArguments { min: 1, got: 0 })?;
    let (s, n) = (first.s(), first.n());
    for c in &tuple[1..] {
        if c.s() != s || c.n() != n {
            return Err(Error::ShapeMismatch {
                s,
                n,
                found_s: c.s(),
                found_n: c.n(),
            });
        }
    }
    Ok((s, n))
}

/// Weakly increasing sequence of bin indices, one per data point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<usize>,
    n: usize,
}

impl Word {
    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }
}

/// A Young diagram inside a `max_rows x max_cols` bounding box.
///
/// Only nonzero row lengths are stored (top to bottom); missing rows are
/// implicitly empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<usize>,
    max_rows: usize,
    max_cols: usize,
}

impl YoungDiagram {
    /// Builds a diagram from row lengths. Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>, max_rows: usize, max_cols: usize) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(rows));
        }
        if rows.len() > max_rows || rows.first().is_some_and(|&r| r > max_cols) {
            return Err(Error::OutsideBox {
                rows,
                max_rows,
                max_cols,
            });
        }
        Ok(Self {
            rows,
            max_rows,
            max_cols,
        })
    }

    pub fn empty(max_rows: usize, max_cols: usize) -> Self {
        Self {
            rows: Vec::new(),
            max_rows,
            max_cols,
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn max_rows(&self) -> usize {
        self.max_rows
    }

    pub fn max_cols(&self) -> usize {
        self.max_cols
    }

    /// Length of row `r` (0 = top), zero past the last stored row.
    pub fn row(&self, r: usize) -> usize {
        self.rows.get(r).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col < self.row(row)
    }

    /// Whether every cell of `other` lies in `self`.
    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(o, s)| o <= s)
    }

    /// Inverse of [`Composition::diagram`] for the box `s x (n-1)`.
    pub fn to_composition(&self, s: usize, n: usize) -> Result<Composition> {
        if n == 0 {
            return Err(Error::NoBins);
        }
        if self.rows.len() > s || self.row(0) > n - 1 {
            return Err(Error::OutsideBox {
                rows: self.rows.clone(),
                max_rows: s,
                max_cols: n - 1,
            });
        }
        let mut entries = vec![0; n];
        entries[0] = s - self.rows.len();
        for &r in &self.rows {
            entries[r] += 1;
        }
        Composition::new(entries)
    }

    /// Reflection across the main diagonal; the box is transposed too.
    pub fn conjugate(&self) -> YoungDiagram {
        let width = self.row(0);
        let rows = (0..width)
            .map(|c| self.rows.iter().take_while(|&&r| r > c).count())
            .collect();
        YoungDiagram {
            rows,
            max_rows: self.max_cols,
            max_cols: self.max_rows,
        }
    }

    /// Number of removable cells, i.e. the number of distinct row lengths.
    pub fn corners(&self) -> usize {
        let mut distinct = self.rows.clone();
        distinct.dedup();
        distinct.len()
    }

    fn check_same_box(&self, other: &YoungDiagram) -> Result<()> {
        if self.max_rows != other.max_rows || self.max_cols != other.max_cols {
            return Err(Error::BoxMismatch(
                self.max_rows,
                self.max_cols,
                other.max_rows,
                other.max_cols,
            ));
        }
        Ok(())
    }

    /// Union of the two cell sets (least upper bound in Young's lattice).
    pub fn join(&self, other: &YoungDiagram) -> Result<YoungDiagram> {
        self.check_same_box(other)?;
        let len = self.rows.len().max(other.rows.len());
        let rows = (0..len).map(|r| self.row(r).max(other.row(r))).collect();
        Ok(YoungDiagram {
            rows,
            max_rows: self.max_rows,
            max_cols: self.max_cols,
        })
    }

    /// Intersection of the two cell sets (greatest lower bound).
    pub fn meet(&self, other: &YoungDiagram) -> Result<YoungDiagram> {
        self.check_same_box(other)?;
        let len = self.rows.len().min(other.rows.len());
        let mut rows: Vec<usize> = (0..len).map(|r| self.row(r).min(other.row(r))).collect();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(YoungDiagram {
            rows,
            max_rows: self.max_rows,
            max_cols: self.max_cols,
        })
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Iterator over `C(s, n)` in ascending lexicographic order of entries,
/// starting at `(0, ..., 0, s)` and ending at `(s, 0, ..., 0)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<usize>>,
    s: usize,
}

pub fn enumerate(s: usize, n: usize) -> Compositions {
    let next = (n > 0).then(|| {
        let mut first = vec![0; n];
        first[n - 1] = s;
        first
    });
    Compositions { next, s }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let n = current.len();
        // Bump the rightmost position that still has mass to its right, then
        // push the leftover mass to the last bin.
        let mut successor = current.clone();
        let mut suffix = successor[n - 1];
        let mut j = n - 1;
        while j > 0 {
            j -= 1;
            if suffix > 0 {
                successor[j] += 1;
                for e in &mut successor[j + 1..] {
                    *e = 0;
                }
                successor[n - 1] = suffix - 1;
                self.next = Some(successor);
                break;
            }
            suffix += successor[j];
        }
        Some(Composition {
            entries: current,
            total: self.s,
        })
    }
}

pub fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `|C(s, n)| = binom(s + n - 1, s)`, saturating at `u128::MAX`.
pub fn composition_count(s: usize, n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let b = s.min(n - 1);
    let a = s + n - 1;
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays integral at every step
        match acc.checked_mul((a - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// All diagrams of `Y(s, n - 1)`, in the enumeration order of `C(s, n)`.
pub fn diagrams_in_box(s: usize, n: usize) -> impl Iterator<Item = YoungDiagram> {
    enumerate(s, n).map(|c| c.diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(entries: &[usize]) -> Composition {
        Composition::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(comp(&[3, 2, 0, 3, 1]).word().symbols(), &[0, 0, 0, 1, 1, 3, 3, 3, 4]);
        assert_eq!(comp(&[4, 0, 0]).word().symbols(), &[0, 0, 0, 0]);
        assert_eq!(comp(&[4, 1, 1, 0, 0]).word().symbols(), &[0, 0, 0, 0, 1, 2]);
    }

    #[test]
    fn diagrams() {
        assert_eq!(comp(&[3, 2, 0, 3, 1]).diagram().rows(), &[4, 3, 3, 3, 1, 1]);
        assert_eq!(comp(&[0, 0, 0, 3]).diagram().rows(), &[3, 3, 3]);
        assert_eq!(
            comp(&[2, 0, 2, 4, 0, 0, 0, 1]).diagram().rows(),
            &[7, 3, 3, 3, 3, 2, 2]
        );
    }

    #[test]
    fn diagram_rows_read_upward_give_the_word() {
        let c = comp(&[1, 0, 2, 1]);
        let d = c.diagram();
        let upward: Vec<usize> = (0..c.s()).rev().map(|r| d.row(r)).collect();
        assert_eq!(upward, c.word().symbols());
    }

    #[test]
    fn back_to_compositions() {
        let d = YoungDiagram::new(vec![4, 3, 3, 3, 1, 1], 9, 4).unwrap();
        assert_eq!(d.to_composition(9, 5).unwrap(), comp(&[3, 2, 0, 3, 1]));
        assert_eq!(YoungDiagram::empty(3, 3).to_composition(3, 4).unwrap(), comp(&[3, 0, 0, 0]));
        let d = YoungDiagram::new(vec![2, 1], 6, 4).unwrap();
        assert_eq!(d.to_composition(6, 5).unwrap(), comp(&[4, 1, 1, 0, 0]));
    }

    #[test]
    fn to_composition_rejects_oversized() {
        let d = YoungDiagram::new(vec![3, 1], 5, 5).unwrap();
        assert!(matches!(d.to_composition(5, 3), Err(Error::OutsideBox { .. })));
        assert!(matches!(d.to_composition(1, 5), Err(Error::OutsideBox { .. })));
    }

    #[test]
    fn diagram_validation() {
        assert!(matches!(
            YoungDiagram::new(vec![1, 2], 3, 3),
            Err(Error::NotWeaklyDecreasing(_))
        ));
        assert!(YoungDiagram::new(vec![4], 3, 3).is_err());
        assert_eq!(YoungDiagram::new(vec![2, 0, 0], 3, 3).unwrap().rows(), &[2]);
    }

    #[test]
    fn conjugates() {
        let d = YoungDiagram::new(vec![4, 3, 3, 3, 1, 1], 9, 4).unwrap();
        let c = d.conjugate();
        assert_eq!(c.rows(), &[6, 4, 4, 1]);
        assert_eq!((c.max_rows(), c.max_cols()), (4, 9));
        assert_eq!(c.conjugate(), d);
        assert!(YoungDiagram::empty(2, 3).conjugate().is_empty());
        let hook = YoungDiagram::new(vec![5], 1, 5).unwrap();
        assert_eq!(hook.conjugate().rows(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn corner_counts() {
        let d = YoungDiagram::new(vec![4, 3, 3, 3, 1, 1], 9, 4).unwrap();
        assert_eq!(d.corners(), 3);
        assert_eq!(YoungDiagram::empty(1, 1).corners(), 0);
        assert_eq!(YoungDiagram::new(vec![5, 5, 5], 3, 5).unwrap().corners(), 1);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let small: Vec<_> = enumerate(1, 2).collect();
        assert_eq!(small, vec![comp(&[0, 1]), comp(&[1, 0])]);
        assert_eq!(enumerate(2, 3).count(), 6);
        assert_eq!(enumerate(6, 5).count(), 210);
        let all: Vec<_> = enumerate(3, 4).collect();
        assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(enumerate(0, 3).collect::<Vec<_>>(), vec![comp(&[0, 0, 0])]);
        let single: Vec<_> = enumerate(4, 1).collect();
        assert_eq!(single, vec![comp(&[4])]);
        assert!(single[0].diagram().is_empty());
        assert_eq!(enumerate(3, 0).count(), 0);
        assert!(matches!(Composition::new(vec![]), Err(Error::NoBins)));
    }

    #[test]
    fn lattice_operations() {
        let a = YoungDiagram::new(vec![2, 1], 3, 2).unwrap();
        let b = YoungDiagram::new(vec![1, 1, 1], 3, 2).unwrap();
        assert_eq!(a.join(&b).unwrap().rows(), &[2, 1, 1]);
        assert_eq!(a.meet(&b).unwrap().rows(), &[1, 1]);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.meet(&a).unwrap(), a);
        let e = YoungDiagram::empty(3, 2);
        assert_eq!(e.join(&b).unwrap(), b);
        assert_eq!(e.meet(&b).unwrap(), e);
        let other_box = YoungDiagram::empty(2, 2);
        assert!(matches!(a.join(&other_box), Err(Error::BoxMismatch(..))));
        assert!(a.meet(&other_box).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(" 4, 1 ,1,0,0 ".parse::<Composition>().unwrap(), comp(&[4, 1, 1, 0, 0]));
        let tuple = parse_tuple("4,1,1,0,0;3,0,0,0,3").unwrap();
        assert_eq!(tuple.len(), 2);
        assert!("4,x".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
        assert!("1,-2".parse::<Composition>().is_err());
        assert_eq!(comp(&[4, 1, 1, 0, 0]).to_string(), "4,1,1,0,0");
    }

    #[test]
    fn counting() {
        assert_eq!(composition_count(6, 5), 210);
        assert_eq!(composition_count(0, 1), 1);
        assert_eq!(binomial(10, 4), BigUint::from(210u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(composition_count(200, 200), u128::MAX);
    }
}

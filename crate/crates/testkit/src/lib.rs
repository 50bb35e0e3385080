//! Brute-force oracles for the test suites. Nothing here is used by the
//! library itself; each function recomputes a quantity from its definition.

use std::collections::{BTreeMap, HashSet};

use emc_core::compositions::{enumerate, Composition, YoungDiagram};
use emc_core::emc::emc;
use emc_core::qseries::LaurentPolynomial;
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;

/// Plane partitions in an `x x y` grid with entries in `0..=z`, weakly
/// decreasing along rows and columns, counted by depth-first filling.
pub fn plane_partitions(x: usize, y: usize, z: usize) -> u64 {
    fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, y: usize, z: usize) -> u64 {
        if y == 0 || cell == grid.len() * y {
            return 1;
        }
        let (r, c) = (cell / y, cell % y);
        let mut cap = z;
        if r > 0 {
            cap = cap.min(grid[r - 1][c]);
        }
        if c > 0 {
            cap = cap.min(grid[r][c - 1]);
        }
        let mut total = 0;
        for v in 0..=cap {
            grid[r][c] = v;
            total += fill(grid, cell + 1, y, z);
        }
        total
    }
    let mut grid = vec![vec![0; y]; x];
    fill(&mut grid, 0, y, z)
}

/// Number of cells whose removal leaves a valid Young diagram.
pub fn removable_cells(d: &YoungDiagram) -> usize {
    let rows = d.rows();
    (0..rows.len())
        .filter(|&r| {
            let mut shrunk = rows.to_vec();
            shrunk[r] -= 1;
            shrunk.windows(2).all(|w| w[0] >= w[1])
        })
        .count()
}

/// Cell set of a diagram as `(row, col)` pairs.
pub fn cells(d: &YoungDiagram) -> HashSet<(usize, usize)> {
    d.rows()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect()
}

/// `|A xor B|` from explicit cell sets.
pub fn set_symmetric_difference(a: &YoungDiagram, b: &YoungDiagram) -> usize {
    cells(a).symmetric_difference(&cells(b)).count()
}

/// Uniform composition in `C(s, n)` by stars and bars.
pub fn random_composition<R: Rng>(rng: &mut R, s: usize, n: usize) -> Composition {
    let slots = s + n - 1;
    let mut bars: Vec<usize> = sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut entries = Vec::with_capacity(n);
    let mut prev = 0;
    for b in bars {
        entries.push(b - prev);
        prev = b + 1;
    }
    entries.push(slots - prev);
    Composition::new(entries).expect("n >= 1")
}

/// Coefficient of `t^s` in `H_{n,m}`, by enumerating `C(s,n) x C(s,m)` and
/// computing each EMC after padding both compositions to a common length.
pub fn genfun_coefficient_bruteforce(n: usize, m: usize, s: usize) -> LaurentPolynomial {
    let width = n.max(m);
    let mut poly = LaurentPolynomial::zero(3);
    for a in enumerate(s, n) {
        for b in enumerate(s, m) {
            let e = emc(&[a.padded_to(width), b.padded_to(width)]).expect("same shape");
            poly.add_term(
                vec![e as i64, a.weighted_total() as i64, b.weighted_total() as i64],
                BigInt::from(1),
            );
        }
    }
    poly
}

/// Elements of the Weyl group of `sl_3` acting on simple-root coordinates,
/// as integer matrices with their signs.
fn weyl_group_sl3() -> Vec<([[i64; 2]; 2], i64)> {
    // s1: sigma_1 -> -sigma_1, sigma_2 -> sigma_1 + sigma_2
    // s2: sigma_1 -> sigma_1 + sigma_2, sigma_2 -> -sigma_2
    let s1 = [[-1, 1], [0, 1]];
    let s2 = [[1, 0], [1, -1]];
    let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        c
    };
    let mut group = vec![([[1, 0], [0, 1]], 1)];
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (g, sign) in frontier {
            for s in [s1, s2] {
                let h = mul(s, g);
                if !group.iter().any(|(k, _)| *k == h) {
                    group.push((h, -sign));
                    next.push((h, -sign));
                }
            }
        }
        frontier = next;
    }
    group
}

fn apply(m: [[i64; 2]; 2], w: [i64; 2]) -> [i64; 2] {
    [m[0][0] * w[0] + m[0][1] * w[1], m[1][0] * w[0] + m[1][1] * w[1]]
}

/// Divides by `1 - e^{-root}` using `Q[v] = sum_{k >= 0} P[v + k root]`,
/// panicking if the division is not exact.
fn divide_by_one_minus_inverse(p: &LaurentPolynomial, root: [i64; 2]) -> LaurentPolynomial {
    let support: Vec<[i64; 2]> = p.terms().map(|(e, _)| [e[0], e[1]]).collect();
    let reach = support
        .iter()
        .flat_map(|v| v.iter().map(|c| c.abs()))
        .max()
        .unwrap_or(0)
        * 2
        + 2;
    let mut quotient = LaurentPolynomial::zero(2);
    let mut seen = HashSet::new();
    for u in &support {
        for k in 0..=reach {
            let v = [u[0] - k * root[0], u[1] - k * root[1]];
            if !seen.insert(v) {
                continue;
            }
            let mut c = BigInt::from(0);
            for j in 0..=2 * reach {
                c += p.coefficient(&[v[0] + j * root[0], v[1] + j * root[1]]);
            }
            quotient.add_term(v.to_vec(), c);
        }
    }
    let factor = LaurentPolynomial::from_terms(
        2,
        vec![(vec![0, 0], 1), (vec![-root[0], -root[1]], -1)],
    );
    assert_eq!(&quotient * &factor, *p, "inexact Weyl denominator division");
    quotient
}

/// Character of the irreducible `sl_3` representation with highest weight
/// `w_1 sigma_1 + w_2 sigma_2`, by the Weyl character formula
/// `sum_w sign(w) e^{w(lambda + rho) - rho} / prod_{alpha > 0} (1 - e^{-alpha})`.
pub fn weyl_character_sl3(highest: [i64; 2]) -> LaurentPolynomial {
    let rho = [1, 1];
    let shifted = [highest[0] + rho[0], highest[1] + rho[1]];
    let mut alternant = LaurentPolynomial::zero(2);
    for (g, sign) in weyl_group_sl3() {
        let w = apply(g, shifted);
        alternant.add_term(vec![w[0] - rho[0], w[1] - rho[1]], BigInt::from(sign));
    }
    let mut ch = alternant;
    for root in [[1, 0], [0, 1], [1, 1]] {
        ch = divide_by_one_minus_inverse(&ch, root);
    }
    ch
}

/// Coefficient of `t^2` in `H_{3,3}` as printed: 36 pairs of diagrams in a
/// `2 x 2` box, by symmetric difference (`q`) and sizes (`x`, `y`).
pub fn printed_h3_t2() -> LaurentPolynomial {
    let terms: &[(i64, i64, i64, i64)] = &[
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 2),
        (0, 3, 3, 1),
        (0, 4, 4, 1),
        (1, 1, 0, 1),
        (1, 0, 1, 1),
        (1, 2, 1, 2),
        (1, 1, 2, 2),
        (1, 3, 2, 2),
        (1, 2, 3, 2),
        (1, 4, 3, 1),
        (1, 3, 4, 1),
        (2, 2, 0, 2),
        (2, 3, 1, 1),
        (2, 0, 2, 2),
        (2, 2, 2, 2),
        (2, 4, 2, 2),
        (2, 1, 3, 1),
        (2, 2, 4, 2),
        (3, 3, 0, 1),
        (3, 4, 1, 1),
        (3, 0, 3, 1),
        (3, 1, 4, 1),
        (4, 4, 0, 1),
        (4, 0, 4, 1),
    ];
    LaurentPolynomial::from_terms(3, terms.iter().map(|&(q, x, y, c)| (vec![q, x, y], c)))
}

/// Counts of a coefficient map, for readable failure messages.
pub fn coefficient_map(p: &LaurentPolynomial) -> BTreeMap<Vec<i64>, BigInt> {
    p.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect()
}

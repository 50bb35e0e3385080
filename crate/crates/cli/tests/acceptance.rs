//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock
//! limits. Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use emc_core::characters::{d_distribution_bruteforce_with, decompose_sl3, virtual_character};
use emc_core::compositions::{binomial, enumerate, parse_tuple, Composition};
use emc_core::emc::{
    cost, cost_median_oracle, emc_prefix_oracle, emc_rsk, emc_transport_oracle,
    rsk_trace, unimodal_symdiff,
};
use emc_core::par::Enumeration;
use emc_core::qseries::{genfun_h, LaurentPolynomial, PowerSeriesTruncated};
use emc_core::statistics::{
    count_emc2_d0, emc_vs_d_table, pp_2, pp_box, proportion_emc_eq_absd, tail_threshold, DValue,
};
use emc_core::emc;
use emc_testkit::{
    genfun_coefficient_bruteforce, plane_partitions, printed_h3_t2, random_composition,
    weyl_character_sl3,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Name, check and wall-clock limit in seconds.
type Criterion = (&'static str, fn() -> Check, Option<u64>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const INTRO: &str = "2,0,2,4,0,0,0,1;0,5,1,0,2,1,0,0";
const FOUR_WAY: &str = "4,1,1,0,0;3,0,0,0,3;0,4,2,0,0;1,1,2,1,1";

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_emc-cli"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "emc-cli {args:?} exited with {}", out.status);
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn last_line(text: &str) -> &str {
    text.lines().last().unwrap_or("")
}

fn tuples(s: usize, n: usize, d: usize) -> Vec<Vec<Composition>> {
    let all: Vec<Composition> = enumerate(s, n).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t| {
                all.iter().map(move |c| {
                    let mut next = t.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn symdiff_of(t: &[Composition]) -> u64 {
    let diagrams: Vec<_> = t.iter().map(Composition::diagram).collect();
    unimodal_symdiff(&diagrams).unwrap()
}

fn intro_pair() -> Check {
    let t = parse_tuple(INTRO).map_err(|e| e.to_string())?;
    let values = [
        symdiff_of(&t),
        emc_rsk(&t).unwrap(),
        emc_prefix_oracle(&t[0], &t[1]).unwrap(),
        emc_transport_oracle(&t).unwrap(),
    ];
    ensure!(values == [11; 4], "symdiff/rsk/prefix/transport gave {values:?}");
    for method in ["symdiff", "rsk", "prefix", "transport"] {
        let printed = cli(&["emc", "--tuple", INTRO, "--method", method])?;
        ensure!(printed.trim() == "11", "CLI --method {method} printed {printed:?}");
    }
    Ok("11 by symdiff, rsk, prefix and transport (library and CLI)".into())
}

fn four_way_trace() -> Check {
    let t = parse_tuple(FOUR_WAY).map_err(|e| e.to_string())?;
    let costs: Vec<u64> = rsk_trace(&t).unwrap().iter().map(|c| c.cost).collect();
    ensure!(costs == [1, 2, 3, 5, 4, 4], "column costs {costs:?}");
    ensure!(emc(&t).unwrap() == 19, "symdiff disagrees");
    let printed = cli(&["emc", "--tuple", FOUR_WAY, "--method", "rsk", "--explain"])?;
    let shown: Vec<&str> = printed
        .lines()
        .filter_map(|l| l.rsplit_once(" cost ").map(|(_, c)| c))
        .collect();
    ensure!(shown == ["1", "2", "3", "5", "4", "4"], "--explain showed {shown:?}");
    ensure!(last_line(&printed) == "19", "--explain ended with {:?}", last_line(&printed));
    Ok("19 with column costs 1,2,3,5,4,4 under --explain".into())
}

fn cost_oracle() -> Check {
    ensure!(cost(&[7, 4, 5, 4, 1]) == 7, "cost(7,4,5,4,1) = {}", cost(&[7, 4, 5, 4, 1]));
    let mut checked = 0u64;
    for n in 1..=6usize {
        for d in 1..=5u32 {
            for index in 0..n.pow(d) {
                let x: Vec<usize> = (0..d).map(|k| index / n.pow(k) % n).collect();
                ensure!(cost(&x) == cost_median_oracle(&x), "mismatch at {x:?}");
                checked += 1;
            }
        }
    }
    Ok(format!("cost(7,4,5,4,1) = 7; {checked} vectors match the median search"))
}

fn rsk_equals_symdiff() -> Check {
    let mut exhaustive = 0usize;
    for (s, n, d) in [(3, 3, 2), (2, 3, 3), (2, 2, 4)] {
        for t in tuples(s, n, d) {
            ensure!(emc_rsk(&t).unwrap() == symdiff_of(&t), "mismatch at {t:?}");
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let samples = 10_000;
    for _ in 0..samples {
        let s = rng.gen_range(0..=8);
        let n = rng.gen_range(1..=8);
        let d = rng.gen_range(2..=5);
        let t: Vec<Composition> = (0..d).map(|_| random_composition(&mut rng, s, n)).collect();
        ensure!(emc_rsk(&t).unwrap() == symdiff_of(&t), "mismatch at {t:?}");
    }
    Ok(format!("{exhaustive} exhaustive + {samples} random tuples agree"))
}

fn proportion_counts() -> Check {
    for s in 1..=5 {
        for n in 1..=5 {
            let all: Vec<Composition> = enumerate(s, n).collect();
            let mut hits = 0u64;
            for a in &all {
                for b in &all {
                    let gap = a.weighted_total().abs_diff(b.weighted_total()) as u64;
                    hits += (emc(&[a.clone(), b.clone()]).unwrap() == gap) as u64;
                }
            }
            let size = BigInt::from(binomial(s + n - 1, n - 1));
            let expected = proportion_emc_eq_absd(s, n).unwrap() * BigRational::from(&size * &size);
            ensure!(
                expected == BigRational::from(BigInt::from(hits)),
                "s={s} n={n}: counted {hits}, formula {expected}"
            );
        }
    }
    for s in [1_000usize, 10_000] {
        for n in 2..=10 {
            let f = proportion_emc_eq_absd(s, n).unwrap();
            let limit = BigRational::new(2.into(), n.into());
            let deviation = ((f - &limit) / limit).abs();
            ensure!(
                deviation <= BigRational::new(10.into(), s.into()),
                "s={s} n={n}: relative deviation {deviation}"
            );
        }
    }
    Ok("exact counts for 1 <= s,n <= 5; within 10/s of 2/n at s = 1e3, 1e4".into())
}

fn plane_partition_checks() -> Check {
    for x in 0..=8 {
        for y in 0..=8 {
            ensure!(pp_2(x, y) == pp_box(x, y, 2), "pp_2({x},{y})");
        }
    }
    for x in 0..=3 {
        for y in 0..=3 {
            for z in 0..=3 {
                ensure!(
                    pp_box(x, y, z) == BigUint::from(plane_partitions(x, y, z)),
                    "pp_box({x},{y},{z})"
                );
            }
        }
    }
    Ok("pp_2 = pp_box(.,.,2) for x,y <= 8; pp_box = enumeration for x,y,z <= 3".into())
}

fn generating_function() -> Check {
    let mut numerator = vec![LaurentPolynomial::zero(3); 9];
    numerator[0] = LaurentPolynomial::one(3);
    numerator[2] = LaurentPolynomial::monomial(vec![2, 1, 1], -1);
    let closed = [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 0, 1]]
        .iter()
        .fold(PowerSeriesTruncated::from_coeffs(numerator), |acc, m| acc.div_one_minus(m));
    ensure!(genfun_h(2, 2, 8) == closed, "H_2 differs from its closed form");
    ensure!(*genfun_h(3, 3, 2).coeff(2) == printed_h3_t2(), "H_3 t^2 coefficient differs");
    for n in 1..=4 {
        for m in 1..=4 {
            let h = genfun_h(n, m, 4);
            for s in 0..=4 {
                ensure!(
                    *h.coeff(s) == genfun_coefficient_bruteforce(n, m, s),
                    "n={n} m={m} s={s}"
                );
            }
        }
    }
    Ok("H_2 closed form through t^8; H_3 t^2 term-for-term; n,m,s <= 4 enumerated".into())
}

fn character_matches_enumeration() -> Check {
    let budget = 1_000_000u128;
    let config = Enumeration::default().with_budget(budget);
    let mut cases = 0;
    let mut visited = 0u128;
    for d in 2..=20usize {
        for s in 1.. {
            let mut any = false;
            for n in 2.. {
                let size = binomial(s + n - 1, s);
                if size.pow(d as u32) > BigUint::from(budget) {
                    break;
                }
                any = true;
                let ch = virtual_character(s, n, d).unwrap();
                let table = d_distribution_bruteforce_with(s, n, d, &config).unwrap();
                ensure!(ch.matches_table(&table), "s={s} n={n} d={d}");
                cases += 1;
                visited += u128::try_from(size.pow(d as u32)).unwrap();
            }
            if !any {
                break;
            }
        }
    }
    let ch = virtual_character(1, 2, 3).unwrap();
    let mut counts: Vec<BigInt> = ch.weights().map(|(_, c)| c.clone()).collect();
    counts.sort();
    let expected: Vec<BigInt> = [1, 1, 1, 1, 1, 1, 2].map(BigInt::from).to_vec();
    ensure!(counts == expected, "hexagon counts {counts:?}");
    ensure!(ch.multiplicity(&[0, 0]) == BigInt::from(2), "origin count");
    Ok(format!("{cases} cases ({visited} tuples) match; hexagon + origin 2"))
}

fn hermite_duality() -> Check {
    for s in 1..=5 {
        for n in 1..=5 {
            let left = emc_vs_d_table(s, n, 2).unwrap();
            let right = emc_vs_d_table(n - 1, s + 1, 2).unwrap();
            ensure!(left.same_counts(&right), "tables differ at s={s} n={n}");
            ensure!(
                virtual_character(s, n, 3).unwrap() == virtual_character(n - 1, s + 1, 3).unwrap(),
                "characters differ at s={s} n={n}"
            );
        }
    }
    Ok("tables (d=2) and characters (d=3) agree for s,n <= 5".into())
}

fn sl3_decomposition() -> Check {
    for n in 1..=5usize {
        let dec = decompose_sl3(&virtual_character(1, n, 3).unwrap()).unwrap();
        let top = n as i64 - 1;
        ensure!(
            dec.len() == 1 && dec.multiplicity(&[top, top]) == BigInt::from(1),
            "s=1 n={n}: {dec:?}"
        );
    }
    for s in 0..=3 {
        for n in 1..=4 {
            let ch = virtual_character(s, n, 3).unwrap();
            let mut rebuilt = LaurentPolynomial::zero(2);
            for (w, m) in decompose_sl3(&ch).unwrap().iter() {
                let c = w.coords();
                rebuilt = &rebuilt + &weyl_character_sl3([c[0], c[1]]).scaled(m);
            }
            ensure!(&rebuilt == ch.polynomial(), "round trip fails at s={s} n={n}");
        }
    }
    Ok("s=1 gives one highest weight (n-1)(1,1); Weyl round trip for s <= 3, n <= 4".into())
}

fn plot_facts() -> Check {
    let mut points = 0;
    for s in 1..=5 {
        for n in 1..=5 {
            let table = emc_vs_d_table(s, n, 2).unwrap();
            for (key, _) in table.entries() {
                let d = key.d_value.coords()[0];
                let e = key.emc.unwrap();
                ensure!(e >= d.unsigned_abs(), "EMC < |D| at s={s} n={n}");
                ensure!((e as i64 - d) % 2 == 0, "parity at s={s} n={n}");
                if d >= tail_threshold(s, n) {
                    ensure!(e == d as u64, "tail at s={s} n={n} D={d} EMC={e}");
                }
                points += 1;
            }
            let origin = DValue::new(vec![0]);
            ensure!(table.get(&origin, Some(0)) == binomial(s + n - 1, s), "(0,0) at s={s} n={n}");
            ensure!(table.get(&origin, Some(2)) == count_emc2_d0(s, n), "(0,2) at s={s} n={n}");
        }
    }
    Ok(format!("{points} populated points checked for s,n <= 5"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("intro example, four methods", intro_pair, Some(1)),
        ("four-way example and trace", four_way_trace, Some(1)),
        ("cost vs median search", cost_oracle, Some(30)),
        ("RSK = unimodal symmetric difference", rsk_equals_symdiff, Some(60)),
        ("EMC = |D| proportion", proportion_counts, Some(60)),
        ("plane partition counts", plane_partition_checks, Some(30)),
        ("generating function", generating_function, Some(60)),
        ("character = D-distribution", character_matches_enumeration, Some(120)),
        ("Hermite duality", hermite_duality, None),
        ("sl3 decomposition", sl3_decomposition, Some(60)),
        ("structural plot facts", plot_facts, None),
    ];
    // Warm the binary so the first timed criterion does not pay for it.
    let _ = cli(&["--version"]);
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > Duration::from_secs(l));
        let budget = limit.map(|l| format!(" < {l}s")).unwrap_or_default();
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} criterion {:>2}: {name} [{:.2}s{budget}] {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

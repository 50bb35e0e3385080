use emc_core::characters::{
    decompose_sl3, virtual_character, weight_rows_from_character, weight_rows_from_decomposition,
};
use emc_core::compositions::{composition_count, enumerate, parse_tuple, Composition};
use emc_core::emc::{
    cost, emc_rsk, emc_transport_oracle, emc_with, rsk_trace, symdiff_grid, unimodal_symdiff, Method,
    TRANSPORT_MAX_CELLS, TRANSPORT_MAX_S,
};
use emc_core::par::{Enumeration, Strategy};
use emc_core::qseries::{distribution_from_genfun, genfun_h, GENFUN_VARS};
use emc_core::statistics::{emc_vs_d_table_with, proportion_emc_eq_absd, DValue};
use emc_core::{emc, Error};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{self, Out};
use crate::{
    BudgetArgs, CharacterArgs, Command, DecomposeArgs, DistributionArgs, EmcArgs, EnumerateArgs,
    Failure, GenfunArgs, InspectArgs, MethodArg, SelftestArgs, ShapeArgs, TableFormat, TextFormat,
};

type Outcome = Result<(), Failure>;

pub fn run(command: Command, out: Out) -> Outcome {
    match command {
        Command::Emc(a) => emc_cmd(a, out),
        Command::Distribution(a) => distribution(a, out),
        Command::Genfun(a) => genfun(a, out),
        Command::Character(a) => character(a, out),
        Command::Decompose(a) => decompose(a, out),
        Command::Proportion(a) => proportion(a, out),
        Command::Enumerate(a) => enumerate_cmd(a, out),
        Command::Inspect(a) => inspect(a, out),
        Command::Cost(a) => {
            writeln!(out, "{}", cost(&a.x))?;
            Ok(())
        }
        Command::Dvalue(a) => {
            need(!a.totals.is_empty(), "--totals needs at least one value")?;
            writeln!(out, "{}", DValue::from_totals(&a.totals))?;
            Ok(())
        }
        Command::Selftest(a) => selftest(a, out),
    }
}

fn inspect(a: InspectArgs, out: Out) -> Outcome {
    let c: Composition = a.composition.parse()?;
    let g = c.diagram();
    let word: Vec<String> = c.word().symbols().iter().map(|x| x.to_string()).collect();
    writeln!(out, "word: ({})", word.join(","))?;
    writeln!(out, "diagram: {g}")?;
    writeln!(out, "conjugate: {}", g.conjugate())?;
    writeln!(out, "corners: {}", g.corners())?;
    writeln!(out, "weighted total: {}", c.weighted_total())?;
    Ok(())
}

fn need(cond: bool, message: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Failure::Usage(message.to_string()))
    }
}

fn print_json(value: serde_json::Value, out: Out) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, &value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn emc_cmd(a: EmcArgs, out: Out) -> Outcome {
    let tuple = parse_tuple(&a.tuple)?;
    let method = match a.method {
        MethodArg::Rsk => Method::Rsk,
        MethodArg::Symdiff => Method::Symdiff,
        MethodArg::Transport => Method::Transport,
        MethodArg::Prefix => Method::Prefix,
    };
    if a.explain {
        match method {
            Method::Rsk => output::rsk_explain(&rsk_trace(&tuple)?, out)?,
            Method::Symdiff => {
                let diagrams: Vec<_> = tuple.iter().map(Composition::diagram).collect();
                emc(&tuple)?;
                output::grid_explain(&symdiff_grid(&diagrams)?, out)?;
            }
            _ => {}
        }
    }
    writeln!(out, "{}", emc_with(method, &tuple)?)?;
    Ok(())
}

fn enumeration(b: &BudgetArgs) -> Enumeration {
    let strategy = if b.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    Enumeration {
        budget: b.budget,
        strategy,
    }
}

fn distribution(a: DistributionArgs, out: Out) -> Outcome {
    need(a.n >= 1, "--n must be at least 1")?;
    need(a.d >= 2, "--d must be at least 2")?;
    let config = enumeration(&a.budget);
    let table = if a.genfun {
        need(a.d == 2, "--genfun only produces d = 2 tables")?;
        config.check(composition_count(a.s, a.n), 2)?;
        distribution_from_genfun(a.s, a.n)
    } else {
        emc_vs_d_table_with(a.s, a.n, a.d, &config)?
    };
    match a.format {
        TableFormat::Csv => output::table_csv(&table, out)?,
        TableFormat::Json => print_json(output::table_json(&table), out)?,
    }
    Ok(())
}

fn genfun(a: GenfunArgs, out: Out) -> Outcome {
    let tmax = a.tmax.max(a.coeff_of_t.unwrap_or(0));
    let radix = ((tmax + 1) * a.n.max(a.m).max(1)) as u128;
    Enumeration::default().check(radix, 3)?;
    let h = genfun_h(a.n, a.m, tmax);
    let degrees: Vec<usize> = match a.coeff_of_t {
        Some(s) => vec![s],
        None => (0..=tmax).collect(),
    };
    match a.format {
        TextFormat::Text => {
            for s in degrees {
                let poly = h.coeff(s).display_with(&GENFUN_VARS).to_string();
                if a.coeff_of_t.is_some() {
                    writeln!(out, "{poly}")?;
                } else {
                    writeln!(out, "t^{s}: {poly}")?;
                }
            }
        }
        TextFormat::Json => {
            let coeffs: Vec<_> = degrees
                .iter()
                .map(|&s| json!({ "t": s, "poly": h.coeff(s).to_json(&GENFUN_VARS) }))
                .collect();
            print_json(json!({ "n": a.n, "m": a.m, "coefficients": coeffs }), out)?;
        }
    }
    Ok(())
}

/// Rough bound on the number of weights, `(d s (n-1) + 1)^(d-1)`.
fn character_guard(s: usize, n: usize, d: usize) -> Outcome {
    let span = d as u128 * s as u128 * n.saturating_sub(1) as u128 + 1;
    Enumeration::default().check(span, d - 1)?;
    Ok(())
}

fn character(a: CharacterArgs, out: Out) -> Outcome {
    need(a.n >= 1, "--n must be at least 1")?;
    need(a.d >= 2, "--d must be at least 2")?;
    need(!a.cartesian || a.d == 3, "--cartesian needs --d 3")?;
    character_guard(a.s, a.n, a.d)?;
    let ch = virtual_character(a.s, a.n, a.d)?;
    let rows = weight_rows_from_character(&ch);
    match a.format {
        TableFormat::Csv => output::weights_csv(&rows, a.d, "count", a.cartesian, out)?,
        TableFormat::Json => print_json(output::weights_json(&rows, a.d, "count", a.cartesian), out)?,
    }
    Ok(())
}

fn decompose(a: DecomposeArgs, out: Out) -> Outcome {
    need(a.n >= 1, "--n must be at least 1")?;
    character_guard(a.s, a.n, 3)?;
    let dec = decompose_sl3(&virtual_character(a.s, a.n, 3)?)?;
    let rows = weight_rows_from_decomposition(&dec);
    match a.format {
        TableFormat::Csv => output::weights_csv(&rows, 3, "mult", a.cartesian, out)?,
        TableFormat::Json => print_json(output::weights_json(&rows, 3, "mult", a.cartesian), out)?,
    }
    Ok(())
}

fn proportion(a: ShapeArgs, out: Out) -> Outcome {
    let p = proportion_emc_eq_absd(a.s, a.n)?;
    writeln!(out, "{p}")?;
    writeln!(out, "{:.12}", p.to_f64().unwrap_or(f64::NAN))?;
    Ok(())
}

fn enumerate_cmd(a: EnumerateArgs, out: Out) -> Outcome {
    need(a.n >= 1, "--n must be at least 1")?;
    let required = composition_count(a.s, a.n);
    if required > a.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: a.budget,
        }
        .into());
    }
    for c in enumerate(a.s, a.n) {
        writeln!(out, "{c}\t{}", c.diagram())?;
    }
    Ok(())
}

fn random_composition(rng: &mut ChaCha8Rng, s: usize, n: usize) -> Composition {
    let mut entries = vec![0; n];
    for _ in 0..s {
        entries[rng.gen_range(0..n)] += 1;
    }
    Composition::new(entries).expect("n >= 1")
}

fn selftest(a: SelftestArgs, out: Out) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut transport_checks = 0;
    for i in 0..a.samples {
        let s = rng.gen_range(0..=8);
        let n = rng.gen_range(1..=8);
        let d = rng.gen_range(2..=5);
        let tuple: Vec<Composition> = (0..d).map(|_| random_composition(&mut rng, s, n)).collect();
        let diagrams: Vec<_> = tuple.iter().map(Composition::diagram).collect();
        let reference = unimodal_symdiff(&diagrams)?;
        let mut results = vec![("rsk", emc_rsk(&tuple)?)];
        if d == 2 {
            results.push(("prefix", emc_with(Method::Prefix, &tuple)?));
        }
        let cells = n.checked_pow(d as u32).unwrap_or(usize::MAX);
        if cells <= TRANSPORT_MAX_CELLS && s <= TRANSPORT_MAX_S {
            results.push(("transport", emc_transport_oracle(&tuple)?));
            transport_checks += 1;
        }
        for (name, value) in results {
            if value != reference {
                let text: Vec<String> = tuple.iter().map(|c| c.to_string()).collect();
                return Err(Failure::Check(format!(
                    "sample {i}: {name} gives {value}, symdiff gives {reference} for {}",
                    text.join(";")
                )));
            }
        }
    }
    writeln!(
        out,
        "ok: {} random tuples (seed {}), {} also checked by transport search",
        a.samples, a.seed, transport_checks
    )?;
    Ok(())
}

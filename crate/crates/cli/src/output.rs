//! CSV, JSON and text rendering. Counts are always decimal strings in JSON.

use std::io::Write;

use emc_core::characters::WeightRow;
use emc_core::emc::{CellGrid, ColumnCost};
use emc_core::statistics::DistributionTable;
use serde_json::{json, Value};

pub type Out<'a> = &'a mut dyn Write;

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn table_csv(table: &DistributionTable, out: Out) -> std::io::Result<()> {
    let d = table.d();
    let header = if d == 2 {
        "D".to_string()
    } else {
        (1..d).map(|i| format!("w{i}")).collect::<Vec<_>>().join(",")
    };
    writeln!(out, "{header},EMC,count")?;
    for (key, count) in table.entries() {
        let emc = key.emc.map(|e| e.to_string()).unwrap_or_default();
        writeln!(out, "{},{emc},{count}", join(key.d_value.coords()))?;
    }
    Ok(())
}

pub fn table_json(table: &DistributionTable) -> Value {
    let entries: Vec<Value> = table
        .entries()
        .map(|(key, count)| {
            json!({
                "d_value": key.d_value.coords(),
                "emc": key.emc,
                "count": count.to_string(),
            })
        })
        .collect();
    json!({
        "d": table.d(),
        "s": table.s(),
        "n": table.n(),
        "total": table.total().to_string(),
        "entries": entries,
    })
}

pub fn weights_csv(rows: &[WeightRow], d: usize, label: &str, cartesian: bool, out: Out) -> std::io::Result<()> {
    let mut header: Vec<String> = (1..d).map(|i| format!("w{i}")).collect();
    header.push(label.to_string());
    if cartesian {
        header.extend(["px".to_string(), "py".to_string()]);
    }
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        write!(out, "{},{}", join(&row.coords), row.count)?;
        if let (true, Some((px, py))) = (cartesian, row.cartesian) {
            write!(out, ",{},{}", fixed(px), fixed(py))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn weights_json(rows: &[WeightRow], d: usize, label: &str, cartesian: bool) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut v = json!({ "w": row.coords, label: row.count.to_string() });
            if let (true, Some((px, py))) = (cartesian, row.cartesian) {
                v["px"] = json!(round(px));
                v["py"] = json!(round(py));
            }
            v
        })
        .collect();
    json!({ "d": d, "rows": rows })
}

/// Six decimals, with `-0` folded to `0` so output is stable.
fn fixed(x: f64) -> String {
    format!("{:.6}", round(x))
}

fn round(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn rsk_explain(trace: &[ColumnCost], out: Out) -> std::io::Result<()> {
    for (j, c) in trace.iter().enumerate() {
        writeln!(out, "column {}: ({}) cost {}", j + 1, join(&c.column), c.cost)?;
    }
    Ok(())
}

pub fn grid_explain(grid: &CellGrid, out: Out) -> std::io::Result<()> {
    writeln!(out, "containment counts:")?;
    for row in &grid.counts {
        writeln!(out, "  {}", row.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "))?;
    }
    writeln!(out, "cell weights:")?;
    for row in &grid.weights {
        writeln!(out, "  {}", row.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "))?;
    }
    Ok(())
}

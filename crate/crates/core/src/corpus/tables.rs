//! Probability table file:
//!
//! ```text
//! gbparse-tables v1
//! mode flat
//! default 1.00000000000
//! schema <id> <count> <probability>
//! theta <word> <grid-identity> <count> <probability>
//! ```
//!
//! Probabilities are linear with 12 significant digits. On read they are
//! checked for normalization and against the counts, and the tables are rebuilt
//! from the counts so a write/read cycle is exact.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::GridIdentity;
use crate::theta::{GridStat, ThetaTable};
use crate::xbar::{EstimationMode, SchemaCounts, SchemaId, SchemaTable};

pub const TABLES_HEADER: &str = "gbparse-tables v1";

const SUM_TOLERANCE: f64 = 1e-6;
const ENTRY_TOLERANCE: f64 = 1e-9;

/// `p` in fixed notation with 12 significant digits.
pub fn format_probability(p: f64) -> String {
    if p == 0.0 || !p.is_finite() {
        return format!("{}", p);
    }
    let sci = format!("{:.11e}", p);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (11 - exp).max(0) as usize;
    format!("{:.*}", decimals, p)
}

pub fn write_tables(schema: &SchemaTable, theta: &ThetaTable) -> String {
    let mut out = String::new();
    out.push_str(TABLES_HEADER);
    out.push('\n');
    out.push_str(&format!("mode {}\n", schema.mode().as_str()));
    out.push_str(&format!(
        "default {}\n",
        format_probability(theta.default_probability())
    ));
    for (s, n) in schema.counts().iter() {
        out.push_str(&format!(
            "schema {} {} {}\n",
            s,
            n,
            format_probability(schema.probability(s))
        ));
    }
    for (word, grids) in theta.heads() {
        for (grid, stat) in grids {
            out.push_str(&format!(
                "theta {} {} {} {}\n",
                word,
                grid,
                stat.count,
                format_probability(stat.probability)
            ));
        }
    }
    out
}

fn number<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::load(line, format!("bad {} '{}'", what, s)))
}

pub fn read_tables(text: &str) -> Result<(SchemaTable, ThetaTable)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, h)) if h.trim() == TABLES_HEADER => {}
        Some((_, h)) if h.starts_with("gbparse-tables") => {
            return Err(Error::load(
                1,
                format!("unsupported table version '{}', expected '{}'", h.trim(), TABLES_HEADER),
            ))
        }
        _ => return Err(Error::load(1, format!("missing header '{}'", TABLES_HEADER))),
    }

    let mut mode = None;
    let mut default = None;
    let mut schema_rows: BTreeMap<SchemaId, (usize, u64, f64)> = BTreeMap::new();
    let mut theta_rows: BTreeMap<String, BTreeMap<GridIdentity, (usize, u64, f64)>> =
        BTreeMap::new();
    let mut last_line = 1;

    for (line, raw) in lines {
        last_line = line;
        let f: Vec<&str> = raw.split_whitespace().collect();
        match f.as_slice() {
            [] => continue,
            ["mode", m] => {
                mode = Some(m.parse::<EstimationMode>().map_err(|e| Error::load(line, e))?)
            }
            ["default", p] => default = Some(number::<f64>(p, line, "probability")?),
            ["schema", id, count, p] => {
                let id = number::<u8>(id, line, "schema id")?;
                let id = SchemaId::new(id)
                    .ok_or_else(|| Error::load(line, format!("schema id {} outside 1..5", id)))?;
                let row = (line, number(count, line, "count")?, number(p, line, "probability")?);
                if schema_rows.insert(id, row).is_some() {
                    return Err(Error::load(line, format!("schema {} listed twice", id)));
                }
            }
            ["theta", word, grid, count, p] => {
                let grid: GridIdentity = grid.parse().map_err(|e| Error::load(line, e))?;
                let row = (line, number(count, line, "count")?, number(p, line, "probability")?);
                if theta_rows
                    .entry(word.to_string())
                    .or_default()
                    .insert(grid.clone(), row)
                    .is_some()
                {
                    return Err(Error::load(
                        line,
                        format!("theta {} {} listed twice", word, grid),
                    ));
                }
            }
            _ => return Err(Error::load(line, format!("unrecognized line '{}'", raw))),
        }
    }

    let mode = mode.ok_or_else(|| Error::load(last_line, "missing 'mode' line"))?;
    let default = default.ok_or_else(|| Error::load(last_line, "missing 'default' line"))?;
    if !(default > 0.0 && default <= 1.0) {
        return Err(Error::load(last_line, "default probability outside (0, 1]"));
    }
    if let Some(s) = SchemaId::ALL.iter().find(|s| !schema_rows.contains_key(s)) {
        return Err(Error::load(last_line, format!("missing schema {}", s)));
    }

    let counts: SchemaCounts = schema_rows.iter().map(|(&s, &(_, n, _))| (s, n)).collect();
    let schema = SchemaTable::estimate(mode, counts).map_err(|e| Error::load(last_line, e.to_string()))?;

    // normalization of what the file states, per class
    let classes: Vec<Vec<SchemaId>> = match mode {
        EstimationMode::Flat => vec![SchemaId::ALL.to_vec()],
        EstimationMode::MotherConditioned => (0..3)
            .map(|c| SchemaId::ALL.iter().copied().filter(|s| s.mother_class() == c).collect())
            .collect(),
    };
    for class in &classes {
        if class.iter().all(|s| schema_rows[s].1 == 0) {
            continue;
        }
        let sum: f64 = class.iter().map(|s| schema_rows[s].2).sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            let line = class.iter().map(|s| schema_rows[s].0).max().unwrap();
            return Err(Error::load(
                line,
                format!("schema probabilities sum to {}, not 1", sum),
            ));
        }
    }
    for (s, &(line, _, p)) in &schema_rows {
        if (p - schema.probability(*s)).abs() > ENTRY_TOLERANCE {
            return Err(Error::load(
                line,
                format!("schema {} probability {} disagrees with its count", s, p),
            ));
        }
    }

    let mut heads: BTreeMap<String, BTreeMap<GridIdentity, GridStat>> = BTreeMap::new();
    for (word, rows) in &theta_rows {
        let first = rows.values().map(|r| r.0).min().unwrap();
        let sum: f64 = rows.values().map(|r| r.2).sum();
        let total: u64 = rows.values().map(|r| r.1).sum();
        if total > 0 && (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::load(
                first,
                format!("grid probabilities of '{}' sum to {}, not 1", word, sum),
            ));
        }
        let mut grids = BTreeMap::new();
        for (grid, &(line, count, p)) in rows {
            let expected = if total > 0 {
                count as f64 / total as f64
            } else {
                0.0
            };
            if (p - expected).abs() > ENTRY_TOLERANCE {
                return Err(Error::load(
                    line,
                    format!("probability {} of {} {} disagrees with its count", p, word, grid),
                ));
            }
            grids.insert(
                grid.clone(),
                GridStat {
                    count,
                    probability: expected,
                },
            );
        }
        heads.insert(word.clone(), grids);
    }
    Ok((schema, ThetaTable::from_parts(heads, default)))
}

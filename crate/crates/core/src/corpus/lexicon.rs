//! Lexicon text format: one record per line, tab-separated
//!
//! ```text
//! word  category  spec  grid  [count]
//! ```
//!
//! `spec` is `+` or `-`; `grid` is `-` for the empty grid or roles such as
//! `agent/ext:N;theme/int:N`. Records sharing word and category merge into one
//! entry. Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};
use crate::model::{Feature, LexicalEntry, Lexicon, ThetaGrid, ThetaRole};

fn parse_grid(field: &str) -> std::result::Result<ThetaGrid, String> {
    let field = field.trim();
    if field.is_empty() || field == "-" {
        return Ok(ThetaGrid::empty());
    }
    let roles = field
        .split(';')
        .map(|r| r.trim().parse::<ThetaRole>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ThetaGrid::new(roles)
}

pub fn read_lexicon(text: &str) -> Result<Lexicon> {
    let mut lexicon = Lexicon::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if !(fields.len() == 4 || fields.len() == 5) {
            return Err(Error::load(
                line,
                format!("expected 4 or 5 tab-separated fields, found {}", fields.len()),
            ));
        }
        let word = fields[0].trim();
        if word.is_empty() || word.chars().any(char::is_whitespace) {
            return Err(Error::load(line, format!("bad word form '{}'", fields[0])));
        }
        let category = fields[1].trim().parse().map_err(|e| Error::load(line, e))?;
        let spec = Feature::from_symbol(fields[2].trim())
            .ok_or_else(|| Error::load(line, format!("SPEC '{}' is not + or -", fields[2])))?;
        let mut grid = parse_grid(fields[3]).map_err(|e| Error::load(line, e))?;
        if let Some(count) = fields.get(4).map(|c| c.trim()).filter(|c| !c.is_empty()) {
            let count = count
                .parse::<u64>()
                .map_err(|_| Error::load(line, format!("bad count '{}'", count)))?;
            grid = grid.with_count(count);
        }
        let entry =
            LexicalEntry::new(word, category, spec, vec![grid]).map_err(|e| Error::load(line, e))?;
        lexicon
            .insert(entry)
            .map_err(|e| Error::load(line, format!("duplicate record: {}", e)))?;
    }
    Ok(lexicon)
}

pub fn write_lexicon(lexicon: &Lexicon) -> String {
    let mut out = String::new();
    for entry in lexicon.entries() {
        for grid in entry.grids() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}",
                entry.word, entry.category, entry.spec_required, grid
            ));
            if let Some(c) = grid.count {
                out.push_str(&format!("\t{}", c));
            }
            out.push('\n');
        }
    }
    out
}

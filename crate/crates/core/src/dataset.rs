//! Box-score CSV ingestion and output.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::basketball::{BoxScoreLine, Position};
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 23] = [
    "player_id", "position", "games", "Min", "Pts", "P2", "P2A", "P3", "P3A", "FT", "FTA", "FG", "FGA", "ORB", "DRB",
    "AST", "STL", "BLK", "BLKR", "TOV", "PF", "PFR", "PM",
];

/// Parses a header-first, comma-separated box-score table. Column order is
/// free; extra columns are ignored. Reported rows are 1-based file lines.
pub fn parse_boxscore_csv(bytes: &[u8]) -> Result<Vec<BoxScoreLine>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        row: 0,
        column: String::new(),
        message: format!("input is not UTF-8: {e}"),
    })?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let index: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let mut cols = [0usize; COLUMNS.len()];
    for (slot, name) in cols.iter_mut().zip(COLUMNS) {
        *slot = *index.get(name).ok_or_else(|| Error::MissingColumn(name.to_string()))?;
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let cell = |c: usize| record.get(cols[c]).unwrap_or("");
        let num = |c: usize| -> Result<f64> {
            let raw = cell(c);
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    row,
                    column: COLUMNS[c].to_string(),
                    message: format!("`{raw}` is not a finite number"),
                })
        };
        let player_id = cell(0).to_string();
        if player_id.is_empty() {
            return Err(Error::Parse {
                row,
                column: "player_id".into(),
                message: "empty player id".into(),
            });
        }
        let position: Position = cell(1).parse().map_err(|_| Error::Parse {
            row,
            column: "position".into(),
            message: format!("`{}` is not one of PG, SG, F, PF, C", cell(1)),
        })?;
        let games = cell(2).parse::<u32>().map_err(|_| Error::Parse {
            row,
            column: "games".into(),
            message: format!("`{}` is not a nonnegative integer", cell(2)),
        })?;
        let line = BoxScoreLine {
            player_id,
            position,
            games,
            Min: num(3)?,
            Pts: num(4)?,
            P2: num(5)?,
            P2A: num(6)?,
            P3: num(7)?,
            P3A: num(8)?,
            FT: num(9)?,
            FTA: num(10)?,
            FG: num(11)?,
            FGA: num(12)?,
            ORB: num(13)?,
            DRB: num(14)?,
            AST: num(15)?,
            STL: num(16)?,
            BLK: num(17)?,
            BLKR: num(18)?,
            TOV: num(19)?,
            PF: num(20)?,
            PFR: num(21)?,
            PM: num(22)?,
        };
        line.validate().map_err(|e| Error::Validation {
            row,
            message: match e {
                Error::InvalidInput(m) => m,
                other => other.to_string(),
            },
        })?;
        if !seen.insert(line.player_id.clone()) {
            return Err(Error::Duplicate { row, id: line.player_id });
        }
        out.push(line);
    }
    Ok(out)
}

pub fn read_boxscore_csv(path: impl AsRef<Path>) -> Result<Vec<BoxScoreLine>> {
    let bytes = std::fs::read(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_boxscore_csv(&bytes)
}

/// Canonical CSV: fixed column order, shortest round-trip decimals.
pub fn write_boxscore_csv(lines: &[BoxScoreLine]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(COLUMNS).map_err(csv_error)?;
    for l in lines {
        let mut rec = vec![l.player_id.clone(), l.position.code().to_string(), l.games.to_string()];
        rec.extend(l.nonnegative_fields().iter().map(|(_, v)| v.to_string()));
        rec.push(l.PM.to_string());
        debug_assert_eq!(rec.len(), COLUMNS.len());
        w.write_record(&rec).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        row,
        column: String::new(),
        message: e.to_string(),
    }
}

//! Checkpoint tables: exact π(xᵢ) on a grid, used to bracket π(x)
//! between grid points. Persisted as UTF-8 CSV with header `x,pi`.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{prime_count_pass, DEFAULT_SEGMENT};
use crate::error::{Error, Result};

/// One band of the build plan: grid points `from, from+spacing, ..., to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacingBand {
    pub from: u64,
    pub to: u64,
    pub spacing: u64,
}

#[derive(Debug, Clone)]
pub struct CheckpointTable {
    entries: Vec<(u64, u64)>, // (x, pi(x)), strictly ascending in both
}

/// Exact π at every grid point of the plan, computed in one sieve pass.
/// Bands must be contiguous (`to == next.from`) and ascending, and each
/// spacing must divide its band length.
pub fn build_checkpoints(plan: &[SpacingBand]) -> Result<CheckpointTable> {
    if plan.is_empty() {
        return Err(Error::domain("empty spacing plan"));
    }
    for (i, b) in plan.iter().enumerate() {
        if b.from >= b.to || b.spacing == 0 {
            return Err(Error::domain(format!("bad band {:?}", b)));
        }
        if (b.to - b.from) % b.spacing != 0 {
            return Err(Error::domain(format!(
                "spacing {} does not divide band length {}",
                b.spacing,
                b.to - b.from
            )));
        }
        if i + 1 < plan.len() && plan[i + 1].from != b.to {
            return Err(Error::domain("plan bands must be contiguous and ascending"));
        }
    }
    let mut grid: Vec<u64> = Vec::new();
    for b in plan {
        let mut x = b.from;
        while x < b.to {
            grid.push(x);
            x += b.spacing;
        }
    }
    grid.push(plan.last().unwrap().to);
    grid.dedup();
    let hi = *grid.last().unwrap();
    let pass = prime_count_pass(hi, &grid, false, DEFAULT_SEGMENT)?;
    let entries: Vec<(u64, u64)> = grid.into_iter().zip(pass.pi).collect();
    Ok(CheckpointTable { entries })
}

impl CheckpointTable {
    pub fn from_entries(entries: Vec<(u64, u64)>) -> Result<Self> {
        validate(&entries)?;
        Ok(CheckpointTable { entries })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn x_min(&self) -> u64 {
        self.entries.first().map(|e| e.0).unwrap_or(0)
    }

    pub fn x_max(&self) -> u64 {
        self.entries.last().map(|e| e.0).unwrap_or(0)
    }

    pub fn covers(&self, x: u64) -> bool {
        x >= self.x_min() && x <= self.x_max()
    }

    /// Bracket π(x) from the two checkpoints around x.
    pub fn pi_interval(&self, x: u64) -> Result<(u64, u64)> {
        if !self.covers(x) {
            return Err(Error::Coverage { needed: x, lo: self.x_min(), hi: self.x_max() });
        }
        let i = self.entries.partition_point(|&(xi, _)| xi <= x);
        let (x_lo, pi_lo) = self.entries[i - 1];
        if x_lo == x {
            return Ok((pi_lo, pi_lo));
        }
        let (_, pi_hi) = self.entries[i];
        Ok((pi_lo, pi_hi))
    }

    /// Neighbouring checkpoint at or below x.
    pub fn floor_entry(&self, x: u64) -> Result<(u64, u64)> {
        if !self.covers(x) {
            return Err(Error::Coverage { needed: x, lo: self.x_min(), hi: self.x_max() });
        }
        let i = self.entries.partition_point(|&(xi, _)| xi <= x);
        Ok(self.entries[i - 1])
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "x,pi")?;
        for (x, pi) in &self.entries {
            writeln!(f, "{},{}", x, pi)?;
        }
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let f = BufReader::new(std::fs::File::open(path)?);
        let mut entries = Vec::new();
        let mut lines = f.lines().enumerate();
        match lines.next() {
            Some((_, Ok(h))) if h.trim() == "x,pi" => {}
            Some((_, Ok(h))) => {
                return Err(Error::Parse { line: 1, msg: format!("expected header 'x,pi', got '{h}'") })
            }
            Some((_, Err(e))) => return Err(e.into()),
            None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
        }
        for (i, line) in lines {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let (xs, ps) = t.split_once(',').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected 'x,pi' pair, got '{t}'"),
            })?;
            let x: u64 = xs.trim().parse().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("bad x '{xs}': {e}"),
            })?;
            let p: u64 = ps.trim().parse().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("bad pi '{ps}': {e}"),
            })?;
            entries.push((x, p));
        }
        validate(&entries)?;
        Ok(CheckpointTable { entries })
    }
}

fn validate(entries: &[(u64, u64)]) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::Validation { line: None, msg: "no checkpoint entries".into() });
    }
    for (i, w) in entries.windows(2).enumerate() {
        let ((x0, p0), (x1, p1)) = (w[0], w[1]);
        if x1 <= x0 {
            return Err(Error::Validation {
                line: Some(i + 3),
                msg: format!("x not strictly ascending: {x0} then {x1}"),
            });
        }
        if p1 < p0 {
            return Err(Error::Validation {
                line: Some(i + 3),
                msg: format!("pi not monotone: {p0} then {p1}"),
            });
        }
        if p1 - p0 > x1 - x0 {
            return Err(Error::Validation {
                line: Some(i + 3),
                msg: format!("pi gain {} exceeds span {} (density bound)", p1 - p0, x1 - x0),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_small_grid() {
        let t = build_checkpoints(&[SpacingBand { from: 100, to: 1000, spacing: 100 }]).unwrap();
        // π at 100, 200, ..., 1000
        let expect = [25u64, 46, 62, 78, 95, 109, 125, 139, 154, 168];
        let got: Vec<u64> = t.entries().iter().map(|e| e.1).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn single_entry_table() {
        let t = CheckpointTable::from_entries(vec![(100, 25)]).unwrap();
        assert_eq!(t.pi_interval(100).unwrap(), (25, 25));
        assert!(t.pi_interval(101).is_err());
    }

    #[test]
    fn round_trip_bit_exact() {
        let t = build_checkpoints(&[SpacingBand { from: 10, to: 110, spacing: 10 }]).unwrap();
        let dir = std::env::temp_dir().join("explicit_pnt_ckpt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.csv");
        t.save(&path).unwrap();
        let raw1 = std::fs::read(&path).unwrap();
        let t2 = CheckpointTable::load(&path).unwrap();
        assert_eq!(t.entries(), t2.entries());
        t2.save(&path).unwrap();
        let raw2 = std::fs::read(&path).unwrap();
        assert_eq!(raw1, raw2);
    }

    #[test]
    fn malformed_rejected() {
        let dir = std::env::temp_dir().join("explicit_pnt_ckpt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "x,pi\n10,4\nnope\n").unwrap();
        match CheckpointTable::load(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {:?}", other.map(|t| t.entries().len())),
        }
        std::fs::write(&path, "x,pi\n10,4\n9,5\n").unwrap();
        assert!(matches!(CheckpointTable::load(&path), Err(Error::Validation { .. })));
        // non-monotone pi
        std::fs::write(&path, "x,pi\n10,4\n20,3\n").unwrap();
        assert!(matches!(CheckpointTable::load(&path), Err(Error::Validation { .. })));
        // density violation: pi jump bigger than span
        std::fs::write(&path, "x,pi\n10,4\n12,9\n").unwrap();
        assert!(matches!(CheckpointTable::load(&path), Err(Error::Validation { .. })));
    }

    #[test]
    fn plan_validation() {
        assert!(build_checkpoints(&[]).is_err());
        assert!(build_checkpoints(&[SpacingBand { from: 10, to: 100, spacing: 7 }]).is_err());
        assert!(build_checkpoints(&[
            SpacingBand { from: 10, to: 100, spacing: 10 },
            SpacingBand { from: 200, to: 300, spacing: 10 },
        ])
        .is_err());
    }
}

//! On-disk trajectory format.
//!
//! `trajectory.ndrec` holds one line per checkpoint of space-separated `key=value`
//! pairs. When the checkpoint carries a field, `field_offset` is the byte offset
//! of its block in `fields.bin`, otherwise `-1`. A block is a little-endian `u64`
//! count followed by that many `(re, im)` pairs of little-endian `f64`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use num_complex::Complex64 as C64;

use super::model::ModelConfig;
use super::trajectory::{Checkpoint, Trajectory};
use crate::error::{Error, Result};
use crate::radial::{RadialField, RadialGrid};

pub const RECORD_FILE: &str = "trajectory.ndrec";
pub const FIELD_FILE: &str = "fields.bin";

pub struct TrajectoryWriter {
    records: BufWriter<File>,
    fields: BufWriter<File>,
    offset: u64,
}

impl TrajectoryWriter {
    pub fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            records: BufWriter::new(File::create(dir.join(RECORD_FILE))?),
            fields: BufWriter::new(File::create(dir.join(FIELD_FILE))?),
            offset: 0,
        })
    }

    pub fn append(&mut self, cp: &Checkpoint) -> Result<()> {
        let field_offset = match &cp.xi {
            Some(xi) => {
                let at = self.offset;
                write_field(&mut self.fields, xi)?;
                self.offset += 8 + 16 * xi.values().len() as u64;
                at as i64
            }
            None => -1,
        };
        writeln!(
            self.records,
            "t={} mass={} energy={} z_re={} z_im={} gxi_re={} gxi_im={} shell_mass={} shell_ok={} field_offset={}",
            cp.t,
            cp.mass,
            cp.energy,
            cp.z.re,
            cp.z.im,
            cp.g_xi.re,
            cp.g_xi.im,
            cp.shell_mass,
            cp.shell_ok,
            field_offset
        )?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.records.flush()?;
        self.fields.flush()?;
        Ok(())
    }
}

pub fn write_field(out: &mut impl Write, u: &RadialField) -> Result<()> {
    out.write_all(&(u.values().len() as u64).to_le_bytes())?;
    for v in u.values() {
        out.write_all(&v.re.to_le_bytes())?;
        out.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_field(input: &mut impl Read, grid: &RadialGrid) -> Result<RadialField> {
    let mut b8 = [0u8; 8];
    input.read_exact(&mut b8)?;
    let len = u64::from_le_bytes(b8) as usize;
    if len != grid.n() {
        return Err(Error::GridMismatch {
            expected_n: grid.n(),
            expected_r: grid.r_max(),
            got_n: len,
            got_r: f64::NAN,
        });
    }
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        input.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        input.read_exact(&mut b8)?;
        values.push(C64::new(re, f64::from_le_bytes(b8)));
    }
    RadialField::from_values(grid, values)
}

pub fn write_trajectory(dir: &Path, traj: &Trajectory) -> Result<()> {
    let mut w = TrajectoryWriter::create(dir)?;
    for cp in traj.checkpoints() {
        w.append(cp)?;
    }
    w.finish()
}

fn parse_record(line: &str, lineno: usize) -> Result<(Checkpoint, i64)> {
    let bad = |m: String| Error::InvalidArgument(format!("{RECORD_FILE}:{lineno}: {m}"));
    let mut t = None;
    let mut vals = [f64::NAN; 7];
    let mut shell_ok = None;
    let mut offset = None;
    for pair in line.split_whitespace() {
        let (k, v) = pair.split_once('=').ok_or_else(|| bad(format!("malformed `{pair}`")))?;
        let num = || v.parse::<f64>().map_err(|_| bad(format!("bad value for `{k}`")));
        match k {
            "t" => t = Some(num()?),
            "mass" => vals[0] = num()?,
            "energy" => vals[1] = num()?,
            "z_re" => vals[2] = num()?,
            "z_im" => vals[3] = num()?,
            "gxi_re" => vals[4] = num()?,
            "gxi_im" => vals[5] = num()?,
            "shell_mass" => vals[6] = num()?,
            "shell_ok" => shell_ok = Some(v.parse::<bool>().map_err(|_| bad("bad shell_ok".into()))?),
            "field_offset" => offset = Some(v.parse::<i64>().map_err(|_| bad("bad field_offset".into()))?),
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    let t = t.ok_or_else(|| bad("missing t".into()))?;
    if vals.iter().any(|v| v.is_nan()) {
        return Err(bad("missing scalar column".into()));
    }
    Ok((
        Checkpoint {
            t,
            mass: vals[0],
            energy: vals[1],
            z: C64::new(vals[2], vals[3]),
            g_xi: C64::new(vals[4], vals[5]),
            shell_mass: vals[6],
            shell_ok: shell_ok.ok_or_else(|| bad("missing shell_ok".into()))?,
            xi: None,
        },
        offset.ok_or_else(|| bad("missing field_offset".into()))?,
    ))
}

/// Load a trajectory written by [`write_trajectory`] or [`TrajectoryWriter`].
pub fn read_trajectory(dir: &Path, config: ModelConfig) -> Result<Trajectory> {
    let records = BufReader::new(File::open(dir.join(RECORD_FILE))?);
    let mut fields = BufReader::new(File::open(dir.join(FIELD_FILE))?);
    let mut checkpoints = Vec::new();
    for (i, line) in records.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (mut cp, offset) = parse_record(&line, i + 1)?;
        if offset >= 0 {
            fields.seek(SeekFrom::Start(offset as u64))?;
            cp.xi = Some(read_field(&mut fields, config.grid())?);
        }
        checkpoints.push(cp);
    }
    if checkpoints.is_empty() {
        return Err(Error::Insufficient("empty trajectory file".into()));
    }
    Ok(Trajectory::new(config, checkpoints))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, Coupling, SystemState};

    #[test]
    fn round_trip_is_bit_exact() {
        let grid = RadialGrid::new(255, 20.0).unwrap();
        let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0).unwrap(), 0.01, 0.3).unwrap();
        cfg.field_stride = 2;
        let xi = RadialField::sample(&grid, |r| 0.3 * (-r * r).exp()).unwrap();
        let traj = evolve(&SystemState::new(xi, C64::new(0.1, 0.05)).unwrap(), &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_trajectory(dir.path(), &traj).unwrap();
        let back = read_trajectory(dir.path(), cfg).unwrap();
        assert_eq!(back.checkpoints(), traj.checkpoints());
        assert!(back.checkpoints().iter().any(|c| c.xi.is_none()));
    }
}

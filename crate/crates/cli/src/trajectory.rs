//! `t,x,y,z` trajectory files.

use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use galinv_core::group::{Event, GalileanElement};
use galinv_core::linalg::Vec3;

pub const HEADER: [&str; 4] = ["t", "x", "y", "z"];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub ts: Vec<f64>,
    pub xs: Vec<Vec3<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn read_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).with_context(|| format!("{}: cannot open", path.display()))?;
        Self::read(file).with_context(|| path.display().to_string())
    }

    /// Parses and validates: exact header, four finite decimal fields per
    /// row, strictly increasing `t`. Errors carry the 1-based line number.
    pub fn read(input: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(input);
        let header = rdr.headers().map_err(|e| anyhow!("line 1: {e}"))?.clone();
        if header.iter().collect::<Vec<_>>() != HEADER {
            bail!("line 1: expected header `t,x,y,z`, found `{}`", header.iter().collect::<Vec<_>>().join(","));
        }
        let mut traj = Trajectory::default();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| match e.position() {
                Some(p) => anyhow!("line {}: {e}", p.line()),
                None => anyhow!("{e}"),
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            if rec.len() != 4 {
                bail!("line {line}: expected 4 fields, found {}", rec.len());
            }
            let mut v = [0.0; 4];
            for (k, field) in rec.iter().enumerate() {
                let x: f64 = field
                    .parse()
                    .map_err(|_| anyhow!("line {line}: field `{}` is not a number: `{field}`", HEADER[k]))?;
                if !x.is_finite() {
                    bail!("line {line}: field `{}` is not finite", HEADER[k]);
                }
                v[k] = x;
            }
            if let Some(&prev) = traj.ts.last() {
                if v[0] <= prev {
                    bail!("line {line}: t = {} does not increase (previous {prev})", v[0]);
                }
            }
            traj.ts.push(v[0]);
            traj.xs.push(Vec3::new(v[1], v[2], v[3]));
        }
        Ok(traj)
    }

    pub fn write(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{}", HEADER.join(","))?;
        for (t, x) in self.ts.iter().zip(&self.xs) {
            writeln!(out, "{t},{},{},{}", x[0], x[1], x[2])?;
        }
        Ok(())
    }

    /// Image of every event under `g`.
    pub fn transformed(&self, g: &GalileanElement<f64>) -> Self {
        let (ts, xs) = self
            .ts
            .iter()
            .zip(&self.xs)
            .map(|(&t, &x)| {
                let e = g.act(&Event::new(t, x));
                (e.t, e.x)
            })
            .unzip();
        Self { ts, xs }
    }
}

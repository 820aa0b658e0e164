//! Binary and CSV serialization of sinograms.
//!
//! Binary layout, little endian: `b"SINO"`, `u32` d, n_dirs, n_t, `f64`
//! t_max, n_dirs*d direction components, n_dirs weights, then n_t*n_dirs
//! values with `t` fastest.

use std::io::{Read, Write};

use crate::{DirectionSet, GridError, RadialGrid, Sinogram, SinogramKind, SphericalGrid};

const MAGIC: &[u8; 4] = b"SINO";

pub fn write_binary<W: Write>(g: &Sinogram, mut w: W) -> Result<(), GridError> {
    let grid = g.grid();
    w.write_all(MAGIC)?;
    for n in [grid.d(), grid.n_dirs(), grid.n_t()] {
        w.write_all(&(n as u32).to_le_bytes())?;
    }
    w.write_all(&grid.radial.t_max().to_le_bytes())?;
    for x in grid.directions.components().iter().chain(grid.directions.weights()).chain(g.values()) {
        w.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<Sinogram, GridError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(GridError::Format("bad magic".into()));
    }
    let mut u = [0u8; 4];
    let mut header = [0usize; 3];
    for h in header.iter_mut() {
        r.read_exact(&mut u)?;
        *h = u32::from_le_bytes(u) as usize;
    }
    let [d, n_dirs, n_t] = header;
    let mut read_f64s = |n: usize| -> Result<Vec<f64>, GridError> {
        let mut buf = vec![0u8; 8 * n];
        r.read_exact(&mut buf)?;
        Ok(buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect())
    };
    let t_max = read_f64s(1)?[0];
    let dirs = read_f64s(n_dirs * d)?;
    let weights = read_f64s(n_dirs)?;
    let values = read_f64s(n_t * n_dirs)?;
    let grid = SphericalGrid::new(RadialGrid::new(t_max, n_t)?, DirectionSet::from_parts(d, dirs, weights)?);
    Sinogram::new(grid, values, SinogramKind::Function)
}

/// One row per sample: `t,theta,value` for d = 2 and `t,xi1,..,xid,value` otherwise.
pub fn write_csv<W: Write>(g: &Sinogram, mut w: W) -> Result<(), GridError> {
    let grid = g.grid();
    let d = grid.d();
    if d == 2 {
        writeln!(w, "t,theta,value")?;
    } else {
        let cols: Vec<String> = (1..=d).map(|k| format!("xi{k}")).collect();
        writeln!(w, "t,{},value", cols.join(","))?;
    }
    for (j, xi) in grid.directions.iter().enumerate() {
        let angle = if d == 2 { vec![xi[1].atan2(xi[0])] } else { xi.to_vec() };
        let angle: Vec<String> = angle.iter().map(|a| a.to_string()).collect();
        let angle = angle.join(",");
        for i in 0..grid.n_t() {
            writeln!(w, "{},{},{}", grid.radial.t(i), angle, g.get(i, j))?;
        }
    }
    Ok(())
}

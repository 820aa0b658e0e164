//! 8-bit binary PGM export of sinograms: one row per `t` sample, one column
//! per direction, min-max scaled. The scale goes to a sidecar text file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hyperspherical_grid::Sinogram;

/// Min and max of the mapped values; gray level `255 (v - min) / (max - min)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgmScale {
    pub min: f64,
    pub max: f64,
}

pub fn encode(g: &Sinogram) -> (Vec<u8>, PgmScale) {
    let grid = g.grid();
    let (min, max) = g.values().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = max - min;
    let mut bytes = format!("P5\n{} {}\n255\n", grid.n_dirs(), grid.n_t()).into_bytes();
    for i in 0..grid.n_t() {
        for j in 0..grid.n_dirs() {
            let level = if range > 0.0 { (255.0 * (g.get(i, j) - min) / range).round() } else { 0.0 };
            bytes.push(level.clamp(0.0, 255.0) as u8);
        }
    }
    (bytes, PgmScale { min, max })
}

/// Sidecar path: `<path>.scale`.
pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".scale");
    PathBuf::from(s)
}

pub fn write(g: &Sinogram, path: &Path) -> std::io::Result<PgmScale> {
    let (bytes, scale) = encode(g);
    fs::write(path, bytes)?;
    let mut f = fs::File::create(sidecar(path))?;
    writeln!(f, "min {:e}", scale.min)?;
    writeln!(f, "max {:e}", scale.max)?;
    Ok(scale)
}

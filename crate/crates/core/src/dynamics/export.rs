use std::path::Path;

use crate::scalar::Real;

use super::{densities, DynamicsError, GridWavefunction, OverlapPoint};

pub const SNAPSHOT_COLUMNS: [&str; 7] = ["x", "re_psi", "im_psi", "re_p_pt", "im_p_pt", "re_j_pt", "im_j_pt"];
pub const OVERLAP_COLUMNS: [&str; 3] = ["t", "re_s", "im_s"];

fn io_err(e: impl std::fmt::Display) -> DynamicsError {
    DynamicsError::Io(e.to_string())
}

// Shortest round-trip formatting: deterministic and lossless.
fn num<T: Real>(v: T) -> String {
    format!("{v:e}")
}

/// One CSV row per grid point with `ψ`, `P_PT` and `J_PT`.
pub fn write_snapshot_csv<T: Real>(path: &Path, psi: &GridWavefunction<T>) -> Result<(), DynamicsError> {
    let d = densities(psi);
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(SNAPSHOT_COLUMNS).map_err(io_err)?;
    for (i, z) in psi.samples().iter().enumerate() {
        let (p, j) = (d.p_pt[i], d.j_pt[i]);
        w.write_record([
            num(psi.grid().x(i)),
            num(z.re),
            num(z.im),
            num(p.re),
            num(p.im),
            num(j.re),
            num(j.im),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_overlap_csv<T: Real>(path: &Path, series: &[OverlapPoint<T>]) -> Result<(), DynamicsError> {
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(OVERLAP_COLUMNS).map_err(io_err)?;
    for p in series {
        w.write_record([num(p.t), num(p.value.re), num(p.value.im)])
            .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

//! CSV emission. Column sets are fixed:
//! Loschmidt `t,re,im,sigma_re,sigma_im,rate,n_kept,n_total`;
//! correlators `q,t,re,im`; topological index `t,nu_raw,nu`.

use std::io::Write;

use crate::grid::NecfGrid;
use crate::pipeline::LoschmidtPoint;
use crate::topo::TopoIndex;
use crate::Result;

pub fn write_loschmidt_csv(out: impl Write, points: &[LoschmidtPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "re", "im", "sigma_re", "sigma_im", "rate", "n_kept", "n_total"])?;
    for p in points {
        let e = &p.estimate;
        w.write_record([
            p.t.to_string(),
            e.value.re.to_string(),
            e.value.im.to_string(),
            e.sigma_re.to_string(),
            e.sigma_im.to_string(),
            p.rate.to_string(),
            e.n_kept.to_string(),
            e.n_total.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_necf_csv(out: impl Write, grid: &NecfGrid) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "t", "re", "im"])?;
    for (i, q) in grid.momenta.iter().enumerate() {
        for (k, t) in grid.times.iter().enumerate() {
            let g = grid.values[i][k];
            w.write_record([q.to_string(), t.to_string(), g.re.to_string(), g.im.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_nu_csv(out: impl Write, rows: &[TopoIndex]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "nu_raw", "nu"])?;
    for r in rows {
        w.write_record([r.t.to_string(), r.raw.to_string(), r.nu.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

//! CSV time series: one row per (recorded step, spatial cell), every number
//! with 17 significant digits.

use std::io::{self, Write};

use polybgk_core::solver::StepRecord;

pub const CSV_HEADER: &str =
    "t,x,rho,ux,uy,uz,T_tr,T_int,T_total,H,mass_defect,momentum_defect,energy_defect,linf_q_norm";

pub fn write_csv<W: Write>(mut w: W, records: &[StepRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        for c in &r.cells {
            let m = &c.fields;
            let row = [
                r.t,
                c.x,
                m.rho,
                m.u[0],
                m.u[1],
                m.u[2],
                m.t_tr,
                m.t_int,
                m.t_total,
                c.entropy,
                c.defect.mass(),
                c.defect.momentum(),
                c.defect.energy(),
                c.norm,
            ];
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
    }
    w.flush()
}

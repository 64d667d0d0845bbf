//! CSV output. Floats are written as `{:.16e}` (17 significant digits), so a
//! given run always produces the same bytes and values re-read exactly.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::mcsim::{ApproxLaw, DensityQuantity, Histogram};
use crate::outage::OutageCurve;
use crate::Real;

pub const OUTAGE_HEADER: &str = "threshold_db,strategy,ue,mode,p_out,ci_low,ci_high,source";
pub const COMPARE_HEADER: &str = "threshold_db,strategy,ue,mode,p_analytic,p_empirical,ci_low,ci_high,abs_gap,rel_gap";
pub const DENSITY_HEADER: &str = "quantity,bin_low,bin_high,x,empirical_density,approx_density";

struct F<T>(T);

impl<T: Real> std::fmt::Display for F<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

pub fn write_outage_csv<T: Real, W: Write>(mut w: W, curves: &[OutageCurve<T>]) -> io::Result<()> {
    writeln!(w, "{OUTAGE_HEADER}")?;
    for c in curves {
        for p in &c.points {
            write!(
                w,
                "{},{},{},{},{},",
                F(p.threshold_db),
                c.strategy.name(),
                c.ue.number(),
                c.mode.name(),
                F(p.p_out)
            )?;
            match p.interval {
                Some((lo, hi)) => write!(w, "{},{}", F(lo), F(hi))?,
                None => write!(w, ",")?,
            }
            writeln!(w, ",{}", c.source.name())?;
        }
    }
    Ok(())
}

/// One parsed row of an outage CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageRow {
    pub threshold_db: f64,
    pub strategy: String,
    pub ue: u8,
    pub mode: String,
    pub p_out: f64,
    pub interval: Option<(f64, f64)>,
    pub source: String,
}

pub fn read_outage_csv<R: BufRead>(r: R) -> Result<Vec<OutageRow>> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(|e| Error::Config(e.to_string()))?
        .unwrap_or_default();
    if header != OUTAGE_HEADER {
        return Err(Error::Config(format!("unexpected header `{header}`")));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::Config(e.to_string()))?;
        let bad = |what: &str| Error::Config(format!("row {}: {what}", i + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(bad("expected 8 fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(&format!("bad number `{s}`")));
        let interval = match (f[5], f[6]) {
            ("", "") => None,
            (lo, hi) => Some((num(lo)?, num(hi)?)),
        };
        rows.push(OutageRow {
            threshold_db: num(f[0])?,
            strategy: f[1].to_string(),
            ue: f[2].parse().map_err(|_| bad("bad UE"))?,
            mode: f[3].to_string(),
            p_out: num(f[4])?,
            interval,
            source: f[7].to_string(),
        });
    }
    Ok(rows)
}

/// Joins analytic and empirical curves point by point. Curves must pair up
/// on strategy, UE, mode and thresholds.
pub fn write_compare_csv<T: Real, W: Write>(mut w: W, pairs: &[(OutageCurve<T>, OutageCurve<T>)]) -> Result<()> {
    let io = |e: io::Error| Error::Config(e.to_string());
    writeln!(w, "{COMPARE_HEADER}").map_err(io)?;
    for (a, e) in pairs {
        if (a.strategy, a.ue, a.mode) != (e.strategy, e.ue, e.mode) || a.points.len() != e.points.len() {
            return Err(Error::Config("compare: curves do not pair up".into()));
        }
        for (pa, pe) in a.points.iter().zip(&e.points) {
            if pa.threshold_db != pe.threshold_db {
                return Err(Error::Config("compare: threshold grids differ".into()));
            }
            let (lo, hi) = pe.interval.unwrap_or((pe.p_out, pe.p_out));
            let gap = (pa.p_out - pe.p_out).abs();
            write!(
                w,
                "{},{},{},{},{},{},{},{},{},",
                F(pa.threshold_db),
                a.strategy.name(),
                a.ue.number(),
                a.mode.name(),
                F(pa.p_out),
                F(pe.p_out),
                F(lo),
                F(hi),
                F(gap)
            )
            .map_err(io)?;
            // relative gap undefined against a zero analytic value
            if pa.p_out > T::zero() {
                write!(w, "{}", F(gap / pa.p_out)).map_err(io)?;
            }
            writeln!(w).map_err(io)?;
        }
    }
    Ok(())
}

pub fn write_density_csv<T: Real, W: Write>(
    mut w: W,
    sections: &[(DensityQuantity, Histogram<T>, ApproxLaw<T>)],
) -> io::Result<()> {
    writeln!(w, "{DENSITY_HEADER}")?;
    for (q, h, law) in sections {
        for ((edge, x), d) in h.bin_edges.windows(2).zip(h.centers()).zip(&h.density) {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                q.name(),
                F(edge[0]),
                F(edge[1]),
                F(x),
                F(*d),
                F(law.pdf(x))
            )?;
        }
    }
    Ok(())
}

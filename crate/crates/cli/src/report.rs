//! Serializable results of each subcommand and their CSV layouts.

use std::f64::consts::PI;

use hubbard_swap::dynamics::{FidelityTrace, LabeledLevel};
use hubbard_swap::scan::{PeakRecord, SweepCurve, TableRow};
use serde::{Deserialize, Serialize};

use crate::format::{format_g, CsvTable};
use crate::verify::VerifyReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub index: usize,
    pub eigenvalue: f64,
    /// `+1` or `-1` under the end-to-end mirror.
    pub parity: i8,
    pub block_l: u32,
    pub overlap_sq: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n_sites: usize,
    pub onsite_u: f64,
    pub hopping_sign: i8,
    pub levels: Vec<LevelRow>,
}

impl SpectrumReport {
    pub fn new(n_sites: usize, onsite_u: f64, hopping_sign: i8, levels: &[LabeledLevel]) -> Self {
        let levels = levels
            .iter()
            .enumerate()
            .map(|(index, l)| LevelRow {
                index,
                eigenvalue: l.eigenvalue,
                parity: l.parity.as_i8(),
                block_l: l.block_l,
                overlap_sq: l.overlap_sq,
            })
            .collect();
        Self { n_sites, onsite_u, hopping_sign, levels }
    }

    pub fn csv(&self) -> CsvTable {
        let mut t = CsvTable::new(vec!["index", "eigenvalue", "parity", "block_L", "overlap_sq"]);
        for l in &self.levels {
            t.push(vec![
                l.index.to_string(),
                format_g(l.eigenvalue),
                l.parity.to_string(),
                l.block_l.to_string(),
                format_g(l.overlap_sq),
            ]);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub n_sites: usize,
    pub onsite_u: f64,
    pub samples: Vec<TraceSample>,
}

impl From<&FidelityTrace> for TraceReport {
    fn from(trace: &FidelityTrace) -> Self {
        Self {
            n_sites: trace.n_sites,
            onsite_u: trace.onsite_u,
            samples: trace.samples.iter().map(|&(t, f)| TraceSample { t, f }).collect(),
        }
    }
}

impl TraceReport {
    pub fn csv(&self) -> CsvTable {
        let mut t = CsvTable::new(vec!["t", "F"]);
        for s in &self.samples {
            t.push(vec![format_g(s.t), format_g(s.f)]);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub u: f64,
    pub f_max: f64,
    pub t_r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_sites: usize,
    pub t_max: f64,
    pub points: Vec<SweepRow>,
}

impl From<&SweepCurve> for SweepReport {
    fn from(c: &SweepCurve) -> Self {
        Self {
            n_sites: c.n_sites,
            t_max: c.t_max,
            points: c.points.iter().map(|p| SweepRow { u: p.u, f_max: p.f_max, t_r: p.t_r }).collect(),
        }
    }
}

impl SweepReport {
    pub fn csv(&self) -> CsvTable {
        let mut t = CsvTable::new(vec!["U", "F_max", "T_r"]);
        for p in &self.points {
            t.push(vec![format_g(p.u), format_g(p.f_max), format_g(p.t_r)]);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakRow {
    pub n: usize,
    pub u_star: f64,
    pub f_max: f64,
    pub t_r: f64,
    /// `pi (n + 1) / 2`.
    pub t_r_law: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeaksReport {
    pub n_sites: usize,
    pub t_max: f64,
    pub peaks: Vec<PeakRow>,
}

impl PeaksReport {
    pub fn new(n_sites: usize, t_max: f64, peaks: &[PeakRecord]) -> Self {
        let peaks = peaks
            .iter()
            .map(|p| PeakRow {
                n: p.n,
                u_star: p.u_star,
                f_max: p.f_max,
                t_r: p.t_r,
                t_r_law: 0.5 * PI * (p.n as f64 + 1.0),
            })
            .collect();
        Self { n_sites, t_max, peaks }
    }

    pub fn csv(&self) -> CsvTable {
        let mut t = CsvTable::new(vec!["n", "U", "F_max", "T_r", "T_r_law"]);
        for p in &self.peaks {
            t.push(vec![p.n.to_string(), format_g(p.u_star), format_g(p.f_max), format_g(p.t_r), format_g(p.t_r_law)]);
        }
        t
    }
}

/// One reference optimum against the reproduced one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n_sites: usize,
    pub peak: usize,
    pub u_ref: f64,
    pub f_max_ref: f64,
    pub t_r_ref: f64,
    pub u: Option<f64>,
    pub f_max: Option<f64>,
    pub t_r: Option<f64>,
    pub du: Option<f64>,
    pub df_max: Option<f64>,
    pub dt_r: Option<f64>,
    /// `F_max` and `T_r` evaluated at `u_ref`.
    pub f_max_at_u_ref: f64,
    pub t_r_at_u_ref: f64,
}

impl From<&TableRow> for ComparisonRow {
    fn from(row: &TableRow) -> Self {
        let r = row.reference;
        let o = row.optimized;
        let d = row.optimized_deviation();
        Self {
            n_sites: r.n_sites,
            peak: r.order,
            u_ref: r.u,
            f_max_ref: r.f_max,
            t_r_ref: r.t_r,
            u: o.map(|p| p.u_star),
            f_max: o.map(|p| p.f_max),
            t_r: o.map(|p| p.t_r),
            du: d.map(|d| d.0),
            df_max: d.map(|d| d.1),
            dt_r: d.map(|d| d.2),
            f_max_at_u_ref: row.at_reference_u.f_max,
            t_r_at_u_ref: row.at_reference_u.t_r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    pub fn new(rows: &[TableRow]) -> Self {
        Self { rows: rows.iter().map(ComparisonRow::from).collect() }
    }

    pub fn csv(&self) -> CsvTable {
        let opt = |x: Option<f64>| x.map(format_g).unwrap_or_default();
        let mut t = CsvTable::new(vec![
            "N", "peak", "U_ref", "F_max_ref", "T_r_ref", "U", "F_max", "T_r", "dU", "dF_max", "dT_r",
            "F_max_at_U_ref", "T_r_at_U_ref",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.n_sites.to_string(),
                r.peak.to_string(),
                format_g(r.u_ref),
                format_g(r.f_max_ref),
                format_g(r.t_r_ref),
                opt(r.u),
                opt(r.f_max),
                opt(r.t_r),
                opt(r.du),
                opt(r.df_max),
                opt(r.dt_r),
                format_g(r.f_max_at_u_ref),
                format_g(r.t_r_at_u_ref),
            ]);
        }
        t
    }
}

impl VerifyReport {
    pub fn csv(&self) -> CsvTable {
        let mut t = CsvTable::new(vec!["name", "measured", "bound", "comparison", "pass"]);
        for c in &self.checks {
            t.push(vec![
                c.name.clone(),
                format_g(c.measured),
                format_g(c.bound),
                c.comparison.as_str().to_string(),
                c.pass.to_string(),
            ]);
        }
        t
    }
}

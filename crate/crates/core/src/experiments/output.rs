//! Result records and their CSV / JSON files.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::EngineMode;
use super::metrics::{loglog_slope, mean, median, normalized_spread};
use crate::error::Result;

/// One solve of one problem with one engine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub engine: EngineMode,
    pub m: usize,
    #[serde(rename = "Dx")]
    pub dx: f64,
    pub seed: u64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_rbffd")]
    pub n_rbffd: usize,
    pub e_inf: f64,
    pub t_shape_s: f64,
    pub t_solve_s: f64,
    pub solver_status: String,
    pub iterations: usize,
    pub residual: f64,
    pub t_stencil_s: f64,
}

impl RunRecord {
    pub fn n_wls(&self) -> usize {
        self.n - self.n_rbffd
    }

    /// Share of RBF-FD nodes in percent.
    pub fn rbffd_percent(&self) -> f64 {
        100.0 * self.n_rbffd as f64 / self.n as f64
    }
}

/// Columns that hold wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 3] = ["t_shape_s", "t_solve_s", "t_stencil_s"];

pub fn write_runs_csv<W: Write>(records: &[RunRecord], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record([
        "problem", "engine", "m", "Dx", "seed", "N", "N_rbffd", "e_inf", "t_shape_s", "t_solve_s",
        "solver_status", "iterations", "residual", "t_stencil_s",
    ])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runs_csv<R: Read>(reader: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for rec in r.deserialize() {
        out.push(rec?);
    }
    Ok(out)
}

/// Statistics of all runs sharing problem, engine, order and `Dx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub problem: String,
    pub engine: EngineMode,
    pub m: usize,
    #[serde(rename = "Dx")]
    pub dx: f64,
    pub runs: usize,
    /// Runs whose error is not finite.
    pub failures: usize,
    pub mean_n: f64,
    pub mean_n_rbffd: f64,
    pub rbffd_percent: f64,
    pub median_e_inf: f64,
    pub normalized_spread: f64,
    pub mean_t_shape_s: f64,
    pub mean_t_solve_s: f64,
}

/// Log-log slope of median `e_inf` against `h = N^{-1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeSummary {
    pub problem: String,
    pub engine: EngineMode,
    pub m: usize,
    pub slope: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub groups: Vec<GroupSummary>,
    pub slopes: Vec<SlopeSummary>,
}

impl Aggregate {
    pub fn group(&self, engine: EngineMode, m: usize) -> impl Iterator<Item = &GroupSummary> {
        self.groups.iter().filter(move |g| g.engine == engine && g.m == m)
    }

    pub fn slope(&self, engine: EngineMode, m: usize) -> Option<f64> {
        self.slopes.iter().find(|s| s.engine == engine && s.m == m).map(|s| s.slope)
    }
}

/// Groups records by `(problem, engine, m, Dx)` in a fixed order: engine and
/// order ascending, `Dx` descending.
pub fn aggregate(records: &[RunRecord]) -> Aggregate {
    let mut groups: BTreeMap<(String, EngineMode, usize, std::cmp::Reverse<u64>), Vec<&RunRecord>> =
        BTreeMap::new();
    for r in records {
        let key = (r.problem.clone(), r.engine, r.m, std::cmp::Reverse(r.dx.to_bits()));
        groups.entry(key).or_default().push(r);
    }
    let groups: Vec<GroupSummary> = groups
        .into_iter()
        .map(|((problem, engine, m, _), runs)| {
            let e: Vec<f64> = runs.iter().map(|r| r.e_inf).collect();
            let n: Vec<f64> = runs.iter().map(|r| r.n as f64).collect();
            let nr: Vec<f64> = runs.iter().map(|r| r.n_rbffd as f64).collect();
            let (mn, mnr) = (mean(&n), mean(&nr));
            GroupSummary {
                problem,
                engine,
                m,
                dx: runs[0].dx,
                runs: runs.len(),
                failures: e.iter().filter(|v| !v.is_finite()).count(),
                mean_n: mn,
                mean_n_rbffd: mnr,
                rbffd_percent: 100.0 * mnr / mn,
                median_e_inf: median(&e),
                normalized_spread: normalized_spread(&e),
                mean_t_shape_s: mean(&runs.iter().map(|r| r.t_shape_s).collect::<Vec<_>>()),
                mean_t_solve_s: mean(&runs.iter().map(|r| r.t_solve_s).collect::<Vec<_>>()),
            }
        })
        .collect();

    let mut keys: Vec<(String, EngineMode, usize)> =
        groups.iter().map(|g| (g.problem.clone(), g.engine, g.m)).collect();
    keys.dedup();
    let slopes = keys
        .into_iter()
        .map(|(problem, engine, m)| {
            let sel: Vec<&GroupSummary> =
                groups.iter().filter(|g| g.problem == problem && g.engine == engine && g.m == m).collect();
            let h: Vec<f64> = sel.iter().map(|g| g.mean_n.powf(-0.5)).collect();
            let e: Vec<f64> = sel.iter().map(|g| g.median_e_inf).collect();
            SlopeSummary { problem, engine, m, slope: loglog_slope(&h, &e), points: sel.len() }
        })
        .collect();
    Aggregate { groups, slopes }
}

/// Writes `runs.csv` and `aggregate.json` into `dir`, creating it if needed.
pub fn emit_results(records: &[RunRecord], dir: &Path) -> Result<Aggregate> {
    fs::create_dir_all(dir)?;
    write_runs_csv(records, fs::File::create(dir.join("runs.csv"))?)?;
    let agg = aggregate(records);
    let json = serde_json::to_string_pretty(&agg)?;
    fs::write(dir.join("aggregate.json"), json)?;
    Ok(agg)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn record(engine: EngineMode, dx: f64, n: usize, e: f64) -> RunRecord {
        RunRecord {
            problem: "poisson2d".into(),
            engine,
            m: 2,
            dx,
            seed: 7,
            n,
            n_rbffd: n / 4,
            e_inf: e,
            t_shape_s: 0.5,
            t_solve_s: 0.25,
            solver_status: "converged".into(),
            iterations: 0,
            residual: 1e-16,
            t_stencil_s: 0.1,
        }
    }

    #[test]
    fn empty_set_is_header_only() {
        let mut buf = Vec::new();
        write_runs_csv(&[], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("problem,engine,m,Dx,seed,N,N_rbffd,e_inf,t_shape_s,t_solve_s,solver_status"));
    }

    #[test]
    fn single_record_roundtrips() {
        let recs = vec![record(EngineMode::Hybrid, 0.05, 1000, f64::NAN)];
        let mut buf = Vec::new();
        write_runs_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        let back = read_runs_csv(&buf[..]).unwrap();
        assert_eq!(back.len(), 1);
        assert!(back[0].e_inf.is_nan());
        let mut a = back[0].clone();
        let mut b = recs[0].clone();
        a.e_inf = 0.0;
        b.e_inf = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn aggregate_groups_and_slopes() {
        let mut recs = Vec::new();
        for (dx, n) in [(0.1, 100usize), (0.05, 400), (0.025, 1600)] {
            let h = (n as f64).powf(-0.5);
            for k in 0..5 {
                recs.push(record(EngineMode::Wls, dx, n, h * h * (1.0 + 0.01 * k as f64)));
            }
        }
        let agg = aggregate(&recs);
        assert_eq!(agg.groups.len(), 3);
        assert!(agg.groups[0].dx > agg.groups[2].dx);
        assert_eq!(agg.groups[0].runs, 5);
        assert!((agg.groups[0].rbffd_percent - 25.0).abs() < 1e-12);
        assert!((agg.slope(EngineMode::Wls, 2).unwrap() - 2.0).abs() < 1e-9);
    }
}

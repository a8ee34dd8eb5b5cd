//! Depth tables, closed-form comparison lines, infidelity estimates and CSV I/O.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::benchmarks::{build, fidelity_suite, BenchError, Benchmark, Family, FamilyOptions};
use crate::noise::{fidelity_product, FidelityTable, NoiseError};
use crate::schedule::{depth, split_fanouts, ExcludeRule};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown scheduler `{0}`")]
    UnknownScheduler(String),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheduler {
    Simultaneous,
    Serialized,
    Asap,
    FormulaCoarse,
    FormulaQram,
    FormulaQrom,
}

impl Scheduler {
    pub const ALL: [Scheduler; 6] = [
        Scheduler::Simultaneous,
        Scheduler::Serialized,
        Scheduler::Asap,
        Scheduler::FormulaCoarse,
        Scheduler::FormulaQram,
        Scheduler::FormulaQrom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheduler::Simultaneous => "simultaneous",
            Scheduler::Serialized => "serialized",
            Scheduler::Asap => "asap",
            Scheduler::FormulaCoarse => "formula:coarse",
            Scheduler::FormulaQram => "formula:qram",
            Scheduler::FormulaQrom => "formula:qrom",
        }
    }

    pub fn is_formula(self) -> bool {
        self.as_str().starts_with("formula:")
    }

    /// Comma-separated list.
    pub fn parse_list(s: &str) -> Result<Vec<Scheduler>, ReportError> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Scheduler {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, ReportError> {
        Scheduler::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| ReportError::UnknownScheduler(s.to_string()))
    }
}

impl fmt::Display for Scheduler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Scheduler {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Scheduler {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One line of a depth table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthRow {
    pub family: String,
    pub size: usize,
    pub scheduler: Scheduler,
    pub depth: usize,
    pub excluded: String,
}

/// Closed-form comparison lines; `None` where the line does not apply.
///
/// `formula:coarse` is `12k` for the SWAP test. `formula:qram` and
/// `formula:qrom` are `W·2^n` for the explicit and implicit memories.
pub fn formula_depth(
    family: Family,
    size: usize,
    scheduler: Scheduler,
    opts: &FamilyOptions,
) -> Option<usize> {
    match (scheduler, family) {
        (Scheduler::FormulaCoarse, Family::SwapTest) => Some(12 * size),
        (Scheduler::FormulaQram, Family::ExplicitMemory) => Some(1 << size),
        (Scheduler::FormulaQrom, Family::ImplicitMemory) => {
            let w = opts.bitwidth.unwrap_or_else(|| {
                crate::benchmarks::bit_width(
                    &opts
                        .data
                        .clone()
                        .unwrap_or_else(|| crate::benchmarks::first_primes(1 << size)),
                )
            });
            Some(w << size)
        }
        _ => None,
    }
}

fn executable_depth(b: &Benchmark, scheduler: Scheduler, exclude: &[ExcludeRule]) -> usize {
    let s = match scheduler {
        Scheduler::Simultaneous => b.simultaneous(),
        Scheduler::Serialized => b.serialized(),
        Scheduler::Asap => b.asap(),
        _ => unreachable!("formula schedulers have no schedule"),
    };
    depth(&s, exclude)
}

/// One row per (size, scheduler). `exclude = None` uses the family default.
pub fn depth_rows(
    family: Family,
    sizes: &[usize],
    schedulers: &[Scheduler],
    exclude: Option<&[ExcludeRule]>,
    opts: &FamilyOptions,
) -> Result<Vec<DepthRow>, ReportError> {
    let exclude = exclude.map_or_else(|| family.default_exclusions(), <[_]>::to_vec);
    let excluded = ExcludeRule::format_list(&exclude);
    let mut rows = Vec::new();
    for &size in sizes {
        let bench = if schedulers.iter().any(|s| !s.is_formula()) {
            Some(build(family, size, opts)?)
        } else {
            None
        };
        for &scheduler in schedulers {
            let d = if scheduler.is_formula() {
                formula_depth(family, size, scheduler, opts)
            } else {
                bench
                    .as_ref()
                    .map(|b| executable_depth(b, scheduler, &exclude))
            };
            if let Some(depth) = d {
                rows.push(DepthRow {
                    family: family.name(),
                    size,
                    scheduler,
                    depth,
                    excluded: excluded.clone(),
                });
            }
        }
    }
    Ok(rows)
}

/// Rows breaking `simultaneous ≤ asap ≤ serialized`, as `(family, size)`.
pub fn ordering_violations(rows: &[DepthRow]) -> Vec<(String, usize)> {
    let get = |f: &str, size: usize, s: Scheduler| {
        rows.iter()
            .find(|r| r.family == f && r.size == size && r.scheduler == s)
            .map(|r| r.depth)
    };
    let mut bad = Vec::new();
    for r in rows
        .iter()
        .filter(|r| r.scheduler == Scheduler::Simultaneous)
    {
        let sim = Some(r.depth);
        let asap = get(&r.family, r.size, Scheduler::Asap);
        let ser = get(&r.family, r.size, Scheduler::Serialized);
        let ok = match (asap, ser) {
            (Some(a), Some(s)) => sim <= Some(a) && a <= s,
            (Some(a), None) => sim <= Some(a),
            (None, Some(s)) => sim <= Some(s),
            (None, None) => true,
        };
        if !ok {
            bad.push((r.family.clone(), r.size));
        }
    }
    bad
}

/// Circuit fidelity estimates for one benchmark.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfidelityRow {
    pub benchmark: String,
    pub scenario: String,
    pub simultaneous_infidelity: f64,
    pub serial_infidelity: f64,
    /// `1 − simultaneous / serial`.
    pub reduction: f64,
}

/// Compares each benchmark's fan-out schedule with the same schedule where
/// every FANOUT is split into CNOTs.
pub fn infidelity_rows(
    suite: &[(String, Benchmark)],
    table: &FidelityTable,
) -> Result<Vec<InfidelityRow>, ReportError> {
    suite
        .iter()
        .map(|(name, b)| {
            let sim = 1.0 - fidelity_product(&b.schedule, table)?;
            let ser = 1.0 - fidelity_product(&split_fanouts(&b.schedule), table)?;
            Ok(InfidelityRow {
                benchmark: name.clone(),
                scenario: table.scenario.clone(),
                simultaneous_infidelity: sim,
                serial_infidelity: ser,
                reduction: 1.0 - sim / ser,
            })
        })
        .collect()
}

/// [`infidelity_rows`] over [`fidelity_suite`].
pub fn suite_infidelity(
    table: &FidelityTable,
    seed: u64,
) -> Result<Vec<InfidelityRow>, ReportError> {
    infidelity_rows(&fidelity_suite(seed)?, table)
}

/// Writes `rows` with a header line, preceded by `# comment` when given.
pub fn write_csv<T: Serialize, W: Write>(
    rows: &[T],
    mut out: W,
    comment: Option<&str>,
) -> Result<(), ReportError> {
    if let Some(c) = comment {
        writeln!(out, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows, skipping `#` comment lines.
pub fn read_csv<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>, ReportError> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<T>, _>>()?)
}

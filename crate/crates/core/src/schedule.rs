//! Moment scheduling, the commutation rules used for rewriting, the depth
//! metric and the fan-out alignment pass.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{Circuit, Gate, GateKind, GateName, GateRecord};

/// Gates with pairwise-disjoint qubits, executed in one step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Moment {
    pub gates: Vec<Gate>,
}

impl Moment {
    pub fn new(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn is_disjoint(&self) -> bool {
        let mut seen = Vec::new();
        for g in &self.gates {
            for &q in &g.qubits {
                if seen.contains(&q) {
                    return false;
                }
                seen.push(q);
            }
        }
        true
    }

    pub fn uses(&self, q: usize) -> bool {
        self.gates.iter().any(|g| g.acts_on(q))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScheduledCircuit {
    pub num_qubits: usize,
    pub moments: Vec<Moment>,
}

impl ScheduledCircuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            moments: Vec::new(),
        }
    }

    pub fn push(&mut self, gates: Vec<Gate>) {
        self.moments.push(Moment::new(gates));
    }

    /// Appends the moments of `other` after the current ones.
    pub fn append(&mut self, other: ScheduledCircuit) {
        self.num_qubits = self.num_qubits.max(other.num_qubits);
        self.moments.extend(other.moments);
    }

    /// Number of moments.
    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn gate_count(&self) -> usize {
        self.moments.iter().map(|m| m.gates.len()).sum()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.moments.iter().flat_map(|m| m.gates.iter())
    }

    /// Gates in moment order.
    pub fn flatten(&self) -> Circuit {
        Circuit::from_gates(self.num_qubits, self.gates().cloned().collect())
    }

    /// Indices of moments that reuse a qubit.
    pub fn overlapping_moments(&self) -> Vec<usize> {
        (0..self.moments.len())
            .filter(|&i| !self.moments[i].is_disjoint())
            .collect()
    }

    /// Circuit JSON v1 with an extra `moments` array.
    pub fn to_json(&self, label: &str) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            version: u32,
            num_qubits: usize,
            label: &'a str,
            gates: Vec<GateRecord>,
            moments: Vec<Vec<GateRecord>>,
        }
        let doc = Doc {
            version: 1,
            num_qubits: self.num_qubits,
            label,
            gates: self.gates().map(GateRecord::from_gate).collect(),
            moments: self
                .moments
                .iter()
                .map(|m| m.gates.iter().map(GateRecord::from_gate).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }
}

/// Gate kind, optionally restricted to one qubit, left out of depth counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExcludeRule {
    pub kind: GateName,
    pub qubit: Option<usize>,
}

impl ExcludeRule {
    pub fn kind(kind: GateName) -> Self {
        Self { kind, qubit: None }
    }

    pub fn on(kind: GateName, qubit: usize) -> Self {
        Self {
            kind,
            qubit: Some(qubit),
        }
    }

    pub fn matches(&self, gate: &Gate) -> bool {
        gate.name() == self.kind && self.qubit.is_none_or(|q| gate.qubits == [q])
    }

    /// Parses a comma-separated list such as `h@0,t`.
    pub fn parse_list(text: &str) -> Result<Vec<ExcludeRule>, String> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }

    pub fn format_list(rules: &[ExcludeRule]) -> String {
        rules
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl FromStr for ExcludeRule {
    type Err = String;

    /// `h` excludes every H; `h@0` only H gates on qubit 0.
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, qubit) = match s.split_once('@') {
            Some((n, q)) => (
                n,
                Some(
                    q.parse::<usize>()
                        .map_err(|_| format!("bad qubit in exclude rule `{s}`"))?,
                ),
            ),
            None => (s, None),
        };
        let kind = GateName::parse(name).ok_or_else(|| format!("unknown gate `{name}`"))?;
        Ok(Self { kind, qubit })
    }
}

impl fmt::Display for ExcludeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.qubit {
            Some(q) => write!(f, "{}@{q}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

/// Moments holding at least one gate that is neither excluded nor a measurement.
pub fn depth(s: &ScheduledCircuit, exclude: &[ExcludeRule]) -> usize {
    s.moments
        .iter()
        .filter(|m| {
            m.gates
                .iter()
                .any(|g| g.kind != GateKind::Measure && !exclude.iter().any(|r| r.matches(g)))
        })
        .count()
}

fn is_control_type(g: &Gate) -> bool {
    matches!(
        g.kind,
        GateKind::Cnot
            | GateKind::Fanout
            | GateKind::Ccx
            | GateKind::McxFanout(_)
            | GateKind::Cswap
    )
}

fn is_diagonal(g: &Gate) -> bool {
    g.name().is_diagonal()
}

/// Sound commutation test. True when the gates touch disjoint qubits, when both
/// are controlled gates overlapping only on controls, when a diagonal gate sits on
/// a pure control of the other, or when both are diagonal on the same qubit.
pub fn commutes(g1: &Gate, g2: &Gate) -> bool {
    let shared: Vec<usize> = g1
        .qubits
        .iter()
        .copied()
        .filter(|q| g2.acts_on(*q))
        .collect();
    if shared.is_empty() {
        return true;
    }
    if is_control_type(g1) && is_control_type(g2) {
        return shared
            .iter()
            .all(|q| g1.controls().contains(q) && g2.controls().contains(q));
    }
    for (d, c) in [(g1, g2), (g2, g1)] {
        if is_diagonal(d) && is_control_type(c) && c.controls().contains(&d.qubits[0]) {
            return true;
        }
    }
    is_diagonal(g1) && is_diagonal(g2)
}

/// Moment index of every gate under as-soon-as-possible placement.
fn asap_levels(gates: &[Gate], num_qubits: usize) -> (Vec<usize>, usize) {
    let width = gates
        .iter()
        .flat_map(|g| g.qubits.iter().map(|q| q + 1))
        .max()
        .unwrap_or(0)
        .max(num_qubits);
    let mut free = vec![0usize; width];
    let mut levels = Vec::with_capacity(gates.len());
    let mut depth = 0;
    for g in gates {
        let level = g.qubits.iter().map(|&q| free[q]).max().unwrap_or(0);
        for &q in &g.qubits {
            free[q] = level + 1;
        }
        depth = depth.max(level + 1);
        levels.push(level);
    }
    (levels, depth)
}

/// Places each gate in the first moment after every earlier gate sharing a qubit.
pub fn asap_schedule(c: &Circuit) -> ScheduledCircuit {
    let (levels, depth) = asap_levels(&c.gates, c.num_qubits);
    let mut moments = vec![Moment::default(); depth];
    for (g, &l) in c.gates.iter().zip(&levels) {
        moments[l].gates.push(g.clone());
    }
    ScheduledCircuit {
        num_qubits: c.num_qubits,
        moments,
    }
}

/// ASAP-schedules each block on its own and concatenates the results.
pub fn block_sequential_schedule(blocks: &[Circuit]) -> ScheduledCircuit {
    let mut out = ScheduledCircuit::new(blocks.iter().map(|b| b.num_qubits).max().unwrap_or(0));
    for b in blocks {
        out.append(asap_schedule(b));
    }
    out
}

fn is_fanout_like(g: &Gate) -> bool {
    matches!(g.kind, GateKind::Cnot | GateKind::Fanout)
}

fn asap_depth(gates: &[Gate], num_qubits: usize) -> usize {
    asap_levels(gates, num_qubits).1
}

fn asap_order(gates: Vec<Gate>, num_qubits: usize) -> Vec<Gate> {
    let (levels, _) = asap_levels(&gates, num_qubits);
    let mut idx: Vec<usize> = (0..gates.len()).collect();
    idx.sort_by_key(|&i| (levels[i], i));
    idx.into_iter().map(|i| gates[i].clone()).collect()
}

/// Moves whole moments earlier past moments they share no qubit with, merging
/// where possible. Gates never leave their moment, so template blocks keep
/// their internal layering.
pub fn pack_moments(s: &ScheduledCircuit) -> ScheduledCircuit {
    let mut ready = vec![0usize; s.num_qubits];
    let mut out: Vec<Vec<Gate>> = Vec::new();
    for m in &s.moments {
        let Some(level) = m
            .gates
            .iter()
            .flat_map(|g| &g.qubits)
            .map(|&q| ready[q])
            .max()
        else {
            continue;
        };
        for &q in m.gates.iter().flat_map(|g| &g.qubits) {
            ready[q] = level + 1;
        }
        if out.len() <= level {
            out.resize_with(level + 1, Vec::new);
        }
        out[level].extend(m.gates.iter().cloned());
    }
    let mut packed = ScheduledCircuit::new(s.num_qubits);
    for gates in out {
        packed.push(gates);
    }
    packed
}

/// Replaces every FANOUT with its CNOTs in target order, one moment each.
pub fn split_fanouts(s: &ScheduledCircuit) -> ScheduledCircuit {
    let mut out = ScheduledCircuit::new(s.num_qubits);
    for m in &s.moments {
        let (fanouts, rest): (Vec<&Gate>, Vec<&Gate>) =
            m.gates.iter().partition(|g| g.kind == GateKind::Fanout);
        let longest = fanouts.iter().map(|g| g.targets().len()).max().unwrap_or(0);
        if longest == 0 {
            out.push(m.gates.clone());
            continue;
        }
        for step in 0..longest {
            let mut gates: Vec<Gate> = fanouts
                .iter()
                .filter_map(|g| g.targets().get(step).map(|&t| Gate::cx(g.qubits[0], t)))
                .collect();
            if step == 0 {
                gates.extend(rest.iter().map(|&g| g.clone()));
            }
            out.push(gates);
        }
    }
    out
}

/// Merges CNOT/FANOUT gates that share a control into single fan-outs.
///
/// Gates are visited in ASAP order. For each CNOT/FANOUT, the scan moves left
/// past commuting gates and collects same-control partners with disjoint
/// targets. The leftmost partner whose merge does not raise the ASAP depth
/// absorbs the gate. The pass restarts after every merge until nothing changes.
pub fn fanout_align(c: &Circuit) -> Circuit {
    let n = c.num_qubits;
    let mut gates = c.gates.clone();
    'outer: loop {
        gates = asap_order(gates, n);
        let base = asap_depth(&gates, n);
        for j in 0..gates.len() {
            let g = &gates[j];
            if !is_fanout_like(g) {
                continue;
            }
            let control = g.qubits[0];
            let mut partners = Vec::new();
            for i in (0..j).rev() {
                let f = &gates[i];
                if is_fanout_like(f)
                    && f.qubits[0] == control
                    && !f.targets().iter().any(|t| g.targets().contains(t))
                {
                    partners.push(i);
                    continue;
                }
                if !commutes(f, g) {
                    break;
                }
            }
            for &i in partners.iter().rev() {
                let mut targets = gates[i].targets().to_vec();
                targets.extend_from_slice(gates[j].targets());
                let mut trial = gates.clone();
                trial[i] = Gate::fanout(control, &targets);
                trial.remove(j);
                if asap_depth(&trial, n) <= base {
                    gates = trial;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Circuit::from_gates(n, gates).with_label(c.label.clone())
}

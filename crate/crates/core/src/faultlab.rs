//! Fault injection and bisection localization on reversible networks.
//!
//! A [`SegmentExecutor`] stands in for hardware: it runs any contiguous gate
//! range with hidden faults. Localization feeds each half of a deviating
//! range its fault-free input state and recurses into the halves whose
//! output differs from the fault-free output.

use std::cell::Cell;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::circuit::{Circuit, Qubit};
use crate::error::{Error, Result};
use crate::sim::{run, trace, BasisState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaultSpec {
    /// Gate `index` is silently skipped.
    MissingGate(usize),
    /// `qubit` is flipped right after gate `after`.
    BitFlip { after: usize, qubit: Qubit },
}

impl FaultSpec {
    pub fn gate_index(&self) -> usize {
        match *self {
            FaultSpec::MissingGate(i) => i,
            FaultSpec::BitFlip { after, .. } => after,
        }
    }
}

impl fmt::Display for FaultSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FaultSpec::MissingGate(i) => write!(f, "missing {i}"),
            FaultSpec::BitFlip { after, qubit } => write!(f, "bitflip {after} {qubit}"),
        }
    }
}

impl FromStr for FaultSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad index `{t}`"));
        match parts.as_slice() {
            ["missing", i] => Ok(FaultSpec::MissingGate(num(i)?)),
            ["bitflip", i, q] => Ok(FaultSpec::BitFlip {
                after: num(i)?,
                qubit: num(q)?,
            }),
            _ => Err(format!(
                "expected `missing <i>` or `bitflip <i> <q>`, got `{s}`"
            )),
        }
    }
}

/// Parses one fault per non-empty line; `#` starts a comment.
pub fn parse_faults(text: &str) -> Result<Vec<FaultSpec>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        })
        .map(|(line, l)| l.parse().map_err(|msg| Error::Parse { line, msg }))
        .collect()
}

/// Runs gate ranges of a fixed circuit with injected faults, counting calls.
#[derive(Debug)]
pub struct SegmentExecutor {
    circuit: Circuit,
    skip: Vec<bool>,
    // flips[i] = qubits flipped after gate i
    flips: Vec<Vec<Qubit>>,
    calls: Cell<usize>,
}

impl SegmentExecutor {
    /// Applies gates `[lo, hi)` with the injected faults.
    pub fn run(&self, lo: usize, hi: usize, state: &BasisState) -> Result<BasisState> {
        if lo > hi || hi > self.circuit.len() {
            return Err(Error::Invalid(format!(
                "segment {lo}..{hi} outside 0..{}",
                self.circuit.len()
            )));
        }
        if state.width() != self.circuit.width() {
            return Err(Error::WidthMismatch {
                circuit: self.circuit.width(),
                state: state.width(),
            });
        }
        self.calls.set(self.calls.get() + 1);
        let mut s = state.clone();
        for i in lo..hi {
            if !self.skip[i] {
                s.apply(&self.circuit.gates()[i]);
            }
            for &q in &self.flips[i] {
                s.flip(q);
            }
        }
        Ok(s)
    }

    /// Segment runs so far.
    pub fn calls(&self) -> usize {
        self.calls.get()
    }

    pub fn reset_calls(&self) {
        self.calls.set(0);
    }

    pub fn gate_count(&self) -> usize {
        self.circuit.len()
    }
}

pub fn inject(circuit: &Circuit, faults: &[FaultSpec]) -> Result<SegmentExecutor> {
    circuit.check_reversible()?;
    let g = circuit.len();
    let mut skip = vec![false; g];
    let mut flips = vec![Vec::new(); g];
    for f in faults {
        if f.gate_index() >= g {
            return Err(Error::Invalid(format!("fault `{f}` beyond gate count {g}")));
        }
        match *f {
            FaultSpec::MissingGate(i) => skip[i] = true,
            FaultSpec::BitFlip { after, qubit } => {
                if qubit >= circuit.width() {
                    return Err(Error::QubitOutOfRange {
                        qubit,
                        width: circuit.width(),
                    });
                }
                flips[after].push(qubit);
            }
        }
    }
    Ok(SegmentExecutor {
        circuit: circuit.clone(),
        skip,
        flips,
        calls: Cell::new(0),
    })
}

/// True iff some vector's faulty output differs from the fault-free one.
pub fn fault_detect(
    exec: &SegmentExecutor,
    circuit: &Circuit,
    vectors: &[BasisState],
) -> Result<bool> {
    for v in vectors {
        if exec.run(0, circuit.len(), v)? != run(circuit, v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn segment_deviates(
    exec: &SegmentExecutor,
    golden_in: &[BasisState],
    golden_out: &[BasisState],
    lo: usize,
    hi: usize,
) -> Result<bool> {
    for (i, o) in golden_in.iter().zip(golden_out) {
        if &exec.run(lo, hi, i)? != o {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Upper bound on executor calls made by [`fault_localize`] for one fault.
pub fn call_bound(gates: usize, vectors: usize) -> usize {
    let rounds = gates.max(1).next_power_of_two().trailing_zeros() as usize;
    2 * vectors * (rounds + 1)
}

/// Gate ranges that deviate under bisection. With a single triggered fault
/// the result is exactly one single-gate range; with several faults every
/// flagged range is reported, not necessarily minimal.
pub fn fault_localize(
    exec: &SegmentExecutor,
    circuit: &Circuit,
    vectors: &[BasisState],
) -> Result<Vec<Range<usize>>> {
    let g = circuit.len();
    let golden = |k: &[usize]| -> Result<Vec<Vec<BasisState>>> {
        vectors.iter().map(|v| trace(circuit, v, k)).collect()
    };
    let ends = golden(&[0, g])?;
    let (inputs, outputs): (Vec<_>, Vec<_>) = ends
        .into_iter()
        .map(|t| (t[0].clone(), t[1].clone()))
        .unzip();
    if !segment_deviates(exec, &inputs, &outputs, 0, g)? {
        return Err(Error::Inconclusive);
    }
    let mut found = Vec::new();
    let mut pending = Vec::new();
    pending.push(0..g);
    while let Some(r) = pending.pop() {
        if r.len() <= 1 {
            found.push(r);
            continue;
        }
        let mid = r.start + r.len() / 2;
        let states = golden(&[r.start, mid, r.end])?;
        let at = |k: usize| states.iter().map(|t| t[k].clone()).collect::<Vec<_>>();
        let (s_lo, s_mid, s_hi) = (at(0), at(1), at(2));
        let left = segment_deviates(exec, &s_lo, &s_mid, r.start, mid)?;
        let right = segment_deviates(exec, &s_mid, &s_hi, mid, r.end)?;
        if !left && !right {
            // faults whose effects cancel across the split
            found.push(r);
            continue;
        }
        if right {
            pending.push(mid..r.end);
        }
        if left {
            pending.push(r.start..mid);
        }
    }
    found.sort_by_key(|r| r.start);
    Ok(found)
}

/// How many of `vectors` expose `fault` on its own at the circuit output.
pub fn trigger_count(circuit: &Circuit, fault: FaultSpec, vectors: &[BasisState]) -> Result<usize> {
    let exec = inject(circuit, &[fault])?;
    let mut hits = 0;
    for v in vectors {
        if exec.run(0, circuit.len(), v)? != run(circuit, v)? {
            hits += 1;
        }
    }
    Ok(hits)
}

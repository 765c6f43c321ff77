//! Gate-level intermediate representation.
//!
//! A [`Circuit`] is a declared width plus an ordered list of [`Gate`]s over
//! global qubit indices. The reversible subset is NOT / CNOT / Toffoli /
//! multi-controlled NOT; Hadamard, phase and measurement exist only for the
//! statevector backend. Registers are little-endian everywhere: element 0 of
//! a qubit slice is the least significant bit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Global qubit index.
pub type Qubit = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Not(Qubit),
    Cnot {
        control: Qubit,
        target: Qubit,
    },
    Toffoli {
        controls: [Qubit; 2],
        target: Qubit,
    },
    /// Three or more controls. Legal in the IR, lowered before counting.
    Mcx {
        controls: Vec<Qubit>,
        target: Qubit,
    },
    H(Qubit),
    Phase {
        angle: f64,
        target: Qubit,
    },
    Measure(Qubit),
}

impl Gate {
    pub fn x(target: Qubit) -> Self {
        Gate::Not(target)
    }

    pub fn cx(control: Qubit, target: Qubit) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn ccx(c0: Qubit, c1: Qubit, target: Qubit) -> Self {
        Gate::Toffoli {
            controls: [c0, c1],
            target,
        }
    }

    /// NOT on `target` conditioned on every qubit in `controls`, using the
    /// narrowest gate kind for the control count.
    pub fn controlled(controls: &[Qubit], target: Qubit) -> Self {
        match *controls {
            [] => Gate::Not(target),
            [c] => Gate::cx(c, target),
            [c0, c1] => Gate::ccx(c0, c1, target),
            _ => Gate::Mcx {
                controls: controls.to_vec(),
                target,
            },
        }
    }

    /// Adds `extra` controls to a reversible gate.
    pub(crate) fn with_controls(&self, extra: &[Qubit]) -> Self {
        if extra.is_empty() {
            return self.clone();
        }
        let mut controls = extra.to_vec();
        controls.extend(self.controls());
        Gate::controlled(&controls, self.target())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Gate::Not(_) => "NOT",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "TOFFOLI",
            Gate::Mcx { .. } => "MCX",
            Gate::H(_) => "H",
            Gate::Phase { .. } => "PHASE",
            Gate::Measure(_) => "MEASURE",
        }
    }

    pub fn target(&self) -> Qubit {
        match *self {
            Gate::Not(t) | Gate::H(t) | Gate::Measure(t) => t,
            Gate::Cnot { target, .. }
            | Gate::Toffoli { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Phase { target, .. } => target,
        }
    }

    pub fn controls(&self) -> &[Qubit] {
        match self {
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Toffoli { controls, .. } => controls,
            Gate::Mcx { controls, .. } => controls,
            _ => &[],
        }
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.controls()
            .iter()
            .copied()
            .chain(std::iter::once(self.target()))
    }

    pub fn touches(&self, q: Qubit) -> bool {
        self.qubits().any(|x| x == q)
    }

    pub fn is_reversible(&self) -> bool {
        matches!(
            self,
            Gate::Not(_) | Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. }
        )
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        if let Gate::Mcx { controls, .. } = self {
            if controls.len() < 3 {
                return Err(Error::ControlArity {
                    kind: "MCX",
                    expected: ">= 3",
                    got: controls.len(),
                });
            }
        }
        let qs: Vec<Qubit> = self.qubits().collect();
        for (i, &q) in qs.iter().enumerate() {
            if q >= width {
                return Err(Error::QubitOutOfRange { qubit: q, width });
            }
            if qs[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Not(t) => write!(f, "x {t}"),
            Gate::Cnot { control, target } => write!(f, "cx {control} {target}"),
            Gate::Toffoli { controls, target } => {
                write!(f, "ccx {} {} {target}", controls[0], controls[1])
            }
            Gate::Mcx { controls, target } => {
                f.write_str("mcx")?;
                for c in controls {
                    write!(f, " {c}")?;
                }
                write!(f, " {target}")
            }
            Gate::H(t) => write!(f, "h {t}"),
            Gate::Phase { angle, target } => write!(f, "p {angle} {target}"),
            Gate::Measure(t) => write!(f, "measure {t}"),
        }
    }
}

/// Anything that can receive a stream of gates: a gate buffer, a counter, a
/// simulator.
pub trait GateSink {
    fn push_gate(&mut self, gate: Gate);

    fn extend_gates<'a, I>(&mut self, gates: I)
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        for g in gates {
            self.push_gate(g.clone());
        }
    }
}

impl GateSink for Vec<Gate> {
    fn push_gate(&mut self, gate: Gate) {
        self.push(gate);
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    pub tag: Option<String>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            tag: None,
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(width)?;
        }
        Ok(Circuit {
            width,
            gates,
            tag: None,
        })
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn append(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Builder-style [`append`](Self::append).
    pub fn with_gate(mut self, gate: Gate) -> Result<Self> {
        self.append(gate)?;
        Ok(self)
    }

    pub fn is_reversible_pure(&self) -> bool {
        self.gates.iter().all(Gate::is_reversible)
    }

    pub fn has_mcx(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Mcx { .. }))
    }

    pub(crate) fn check_reversible(&self) -> Result<()> {
        match self.gates.iter().position(|g| !g.is_reversible()) {
            Some(index) => Err(Error::NotReversible {
                index,
                kind: self.gates[index].kind_name(),
            }),
            None => Ok(()),
        }
    }

    /// Gates in reverse order. Every reversible gate is self-inverse, so this
    /// is the functional inverse.
    pub fn reverse(&self) -> Result<Circuit> {
        self.check_reversible()?;
        Ok(Circuit {
            width: self.width,
            gates: self.gates.iter().rev().cloned().collect(),
            tag: self.tag.clone(),
        })
    }

    /// `self` followed by `other`. The result has the larger of both widths.
    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Circuit {
            width: self.width.max(other.width),
            gates,
            tag: self.tag.clone(),
        }
    }

    /// Distinct qubits touched by at least one gate.
    pub fn touched_qubits(&self) -> Vec<Qubit> {
        let mut seen = vec![false; self.width];
        for g in &self.gates {
            for q in g.qubits() {
                seen[q] = true;
            }
        }
        (0..self.width).filter(|&q| seen[q]).collect()
    }

    pub fn to_text(&self) -> Result<String> {
        self.check_reversible()?;
        Ok(self.to_string())
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        text.parse()
    }
}

impl GateSink for Circuit {
    /// Unchecked push; synthesis code validates once via [`Circuit::from_gates`].
    fn push_gate(&mut self, gate: Gate) {
        self.gates.push(gate);
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "width {}", self.width)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Circuit> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `width` header".into(),
        })?;
        let width = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["width", w] => parse_index(w, line)?,
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `width <w>`, got `{header}`"),
                })
            }
        };
        let mut circuit = Circuit::new(width);
        for (line, text) in lines {
            let mut words = text.split_whitespace();
            let op = words.next().unwrap_or_default();
            let args = words
                .map(|w| parse_index(w, line))
                .collect::<Result<Vec<_>>>()?;
            let arity = |n: usize| -> Result<()> {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Error::Parse {
                        line,
                        msg: format!("`{op}` takes {n} operands, got {}", args.len()),
                    })
                }
            };
            let gate = match op {
                "x" => {
                    arity(1)?;
                    Gate::x(args[0])
                }
                "cx" => {
                    arity(2)?;
                    Gate::cx(args[0], args[1])
                }
                "ccx" => {
                    arity(3)?;
                    Gate::ccx(args[0], args[1], args[2])
                }
                "mcx" => {
                    if args.len() < 4 {
                        return Err(Error::Parse {
                            line,
                            msg: "`mcx` needs at least 3 controls and a target".into(),
                        });
                    }
                    let (target, controls) = args.split_last().unwrap();
                    Gate::Mcx {
                        controls: controls.to_vec(),
                        target: *target,
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown gate `{other}`"),
                    })
                }
            };
            circuit.append(gate).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(circuit)
    }
}

fn parse_index(word: &str, line: usize) -> Result<usize> {
    word.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{word}` is not a qubit index"),
    })
}

/// Replaces every multi-controlled NOT by Toffoli gates, borrowing one dirty
/// qubit from `dirty_pool` per level of decomposition. A pool qubit is usable
/// for a gate as long as the gate does not touch it; its value is restored.
///
/// A 3-controlled NOT becomes exactly 4 Toffolis.
pub fn lower_multi_controlled(circuit: &Circuit, dirty_pool: &[Qubit]) -> Result<Circuit> {
    let mut out = Vec::with_capacity(circuit.len());
    lower_gates(circuit.gates(), dirty_pool, &mut out)?;
    let mut lowered = Circuit::from_gates(circuit.width, out)?;
    lowered.tag = circuit.tag.clone();
    Ok(lowered)
}

pub(crate) fn lower_gates<S: GateSink>(gates: &[Gate], pool: &[Qubit], out: &mut S) -> Result<()> {
    for g in gates {
        match g {
            Gate::Mcx { controls, target } => lower_mcx(controls, *target, pool, out)?,
            _ => out.push_gate(g.clone()),
        }
    }
    Ok(())
}

fn lower_mcx<S: GateSink>(
    controls: &[Qubit],
    target: Qubit,
    pool: &[Qubit],
    out: &mut S,
) -> Result<()> {
    if controls.len() <= 2 {
        out.push_gate(Gate::controlled(controls, target));
        return Ok(());
    }
    let dirty = pool
        .iter()
        .copied()
        .find(|q| *q != target && !controls.contains(q))
        .ok_or(Error::InsufficientDirty { need: 1, have: 0 })?;
    // t ^= c_hi·d, d ^= c_lo, t ^= c_hi·d, d ^= c_lo  =>  t ^= c_hi·c_lo
    let split = controls.len().div_ceil(2);
    let (low, high) = controls.split_at(split);
    let mut upper: Vec<Qubit> = high.to_vec();
    upper.push(dirty);
    let mut sub_pool: Vec<Qubit> = pool.to_vec();
    sub_pool.push(target);
    for _ in 0..2 {
        lower_mcx(&upper, target, &sub_pool, out)?;
        lower_mcx(low, dirty, &sub_pool, out)?;
    }
    Ok(())
}

/// Named little-endian registers plus clean and dirty ancilla pools, all
/// pairwise disjoint.
#[derive(Clone, Debug, Default)]
pub struct RegisterMap {
    registers: Vec<(String, Vec<Qubit>)>,
    clean: Vec<Qubit>,
    dirty: Vec<Qubit>,
    next: Qubit,
}

impl RegisterMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates `len` fresh consecutive qubits as a named register.
    pub fn alloc(&mut self, name: &str, len: usize) -> Vec<Qubit> {
        let qs: Vec<Qubit> = (self.next..self.next + len).collect();
        self.next += len;
        self.registers.push((name.to_owned(), qs.clone()));
        qs
    }

    pub fn alloc_clean(&mut self, len: usize) -> Vec<Qubit> {
        let qs: Vec<Qubit> = (self.next..self.next + len).collect();
        self.next += len;
        self.clean.extend(&qs);
        qs
    }

    pub fn alloc_dirty(&mut self, len: usize) -> Vec<Qubit> {
        let qs: Vec<Qubit> = (self.next..self.next + len).collect();
        self.next += len;
        self.dirty.extend(&qs);
        qs
    }

    pub fn get(&self, name: &str) -> Option<&[Qubit]> {
        self.registers
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q.as_slice())
    }

    pub fn clean(&self) -> &[Qubit] {
        &self.clean
    }

    pub fn dirty(&self) -> &[Qubit] {
        &self.dirty
    }

    pub fn width(&self) -> usize {
        self.next
    }

    /// Borrows up to `count` qubits from the named registers (declared idle by
    /// the caller) followed by the dirty pool, skipping anything in `exclude`.
    pub fn borrow_dirty(
        &self,
        from: &[&str],
        count: usize,
        exclude: &[Qubit],
    ) -> Result<Vec<Qubit>> {
        let mut out = Vec::with_capacity(count);
        for name in from {
            let reg = self
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("no register named `{name}`")))?;
            out.extend(reg.iter().copied().filter(|q| !exclude.contains(q)));
        }
        out.extend(self.dirty.iter().copied().filter(|q| !exclude.contains(q)));
        if out.len() < count {
            return Err(Error::InsufficientDirty {
                need: count,
                have: out.len(),
            });
        }
        out.truncate(count);
        Ok(out)
    }
}

/// Fails if any qubit appears twice across the given groups.
pub(crate) fn ensure_disjoint(groups: &[&[Qubit]]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for g in groups {
        for &q in *g {
            if !seen.insert(q) {
                return Err(Error::Overlap(q));
            }
        }
    }
    Ok(())
}

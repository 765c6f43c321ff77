//! Gate tallies, ASAP depth, T-count accounting and scaling studies.
//!
//! [`Meter`] is a [`GateSink`], so large circuits can be measured while they
//! are synthesized without ever being stored.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{AdderSpec, Mode};
use crate::circuit::{Circuit, Gate, GateSink, Qubit};
use crate::error::{Error, Result};
use crate::modarith::{multiplier_constants, ModMulSpec};
use crate::sim::BasisState;

/// T gates per Toffoli.
pub const T_PER_TOFFOLI: u64 = 7;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResourceReport {
    pub toffoli_count: u64,
    pub cnot_count: u64,
    pub not_count: u64,
    pub t_count: u64,
    pub depth: u64,
    pub width: u64,
}

impl ResourceReport {
    pub fn gate_count(&self) -> u64 {
        self.toffoli_count + self.cnot_count + self.not_count
    }
}

impl std::fmt::Display for ResourceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "toffoli={} cnot={} not={} t_count={} depth={} width={}",
            self.toffoli_count,
            self.cnot_count,
            self.not_count,
            self.t_count,
            self.depth,
            self.width
        )
    }
}

/// Streaming tally with greedy as-soon-as-possible layering.
#[derive(Clone, Debug, Default)]
pub struct Meter {
    not: u64,
    cnot: u64,
    toffoli: u64,
    mcx: u64,
    // layer of the last gate on each qubit; 0 = untouched
    layers: Vec<u32>,
    depth: u32,
}

impl Meter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multi-controlled NOTs seen so far; a report is only meaningful at 0.
    pub fn mcx_count(&self) -> u64 {
        self.mcx
    }

    #[inline]
    fn record(&mut self, gate: &Gate) {
        match gate {
            Gate::Not(_) => self.not += 1,
            Gate::Cnot { .. } => self.cnot += 1,
            Gate::Toffoli { .. } => self.toffoli += 1,
            Gate::Mcx { .. } => self.mcx += 1,
            Gate::H(_) | Gate::Phase { .. } | Gate::Measure(_) => {}
        }
        let top = gate.qubits().max().unwrap_or(0);
        if top >= self.layers.len() {
            self.layers.resize(top + 1, 0);
        }
        let layer = gate.qubits().map(|q| self.layers[q]).max().unwrap_or(0) + 1;
        for q in gate.qubits() {
            self.layers[q] = layer;
        }
        self.depth = self.depth.max(layer);
    }

    pub fn report(&self) -> ResourceReport {
        ResourceReport {
            toffoli_count: self.toffoli,
            cnot_count: self.cnot,
            not_count: self.not,
            t_count: T_PER_TOFFOLI * self.toffoli,
            depth: self.depth as u64,
            width: self.layers.iter().filter(|&&l| l > 0).count() as u64,
        }
    }
}

impl GateSink for Meter {
    fn push_gate(&mut self, gate: Gate) {
        self.record(&gate);
    }

    fn extend_gates<'a, I>(&mut self, gates: I)
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        for g in gates {
            self.record(g);
        }
    }
}

/// Forwards every gate to two sinks.
pub struct Tee<'a, A, B>(pub &'a mut A, pub &'a mut B);

impl<A: GateSink, B: GateSink> GateSink for Tee<'_, A, B> {
    fn push_gate(&mut self, gate: Gate) {
        self.0.extend_gates(std::iter::once(&gate));
        self.1.push_gate(gate);
    }

    fn extend_gates<'a, I>(&mut self, gates: I)
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        for g in gates {
            self.0.extend_gates(std::iter::once(g));
            self.1.extend_gates(std::iter::once(g));
        }
    }
}

/// Counts and depth of a reversible-pure circuit whose MCX gates are lowered.
pub fn report(circuit: &Circuit) -> Result<ResourceReport> {
    circuit.check_reversible()?;
    if let Some(i) = circuit
        .gates()
        .iter()
        .position(|g| matches!(g, Gate::Mcx { .. }))
    {
        return Err(Error::UnloweredMcx(i));
    }
    let mut m = Meter::new();
    m.extend_gates(circuit.gates());
    Ok(m.report())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Harness {
    /// Uncontrolled constant adder, parallel mode, all-ones constant.
    Adder,
    /// Controlled in-place modular multiplier.
    CtrlModmul,
}

impl FromStr for Harness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adder" => Ok(Harness::Adder),
            "modmul" | "ctrl_modmul" => Ok(Harness::CtrlModmul),
            other => Err(Error::Invalid(format!("unknown harness `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub toffoli_count: u64,
    pub depth: u64,
    /// Wall-clock seconds, informational only.
    pub wall_time: f64,
}

/// Layout of the adder harness: `x = 0..n`, `max(1, n/2)` dirty qubits after it.
pub fn adder_harness(n: usize) -> AdderSpec {
    let d = (n / 2).max(1);
    let ones = (BigUint::one() << n) - 1u8;
    AdderSpec::new((0..n).collect(), ones)
        .dirty((n..n + d).collect())
        .mode(Mode::Parallel)
}

/// Seeded `n`-bit odd modulus with its top bit set and a multiplier coprime
/// to it. Both are dense in ones on average, which keeps every recursive
/// carry step of the adders active.
pub fn modmul_constants(n: usize, seed: u64) -> (BigUint, BigUint) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32));
    let top = BigUint::one() << (n - 1);
    let modulus = loop {
        let m = (rng.gen_biguint((n - 1) as u64) | &top) | BigUint::one();
        if m >= BigUint::from(3u8) {
            break m;
        }
    };
    let a = loop {
        let a = rng.gen_biguint_range(&BigUint::from(2u8), &modulus);
        if a.gcd(&modulus).is_one() {
            break a;
        }
    };
    (modulus, a)
}

fn verification_failed(harness: &str, n: usize) -> Error {
    Error::Invalid(format!(
        "{harness} harness failed its verification run at n = {n}"
    ))
}

fn measure_adder(n: usize, seed: u64) -> Result<ResourceReport> {
    let spec = adder_harness(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let width = n + spec.effective_dirty().len();
    let input = BasisState::random(width, &mut rng);
    let circuit = crate::arith::const_adder(&spec)?;
    let mut meter = Meter::new();
    meter.extend_gates(circuit.gates());
    let out = crate::sim::run(&circuit, &input)?;
    let x: Vec<Qubit> = (0..n).collect();
    let modulus = BigUint::one() << n;
    let want = (input.read(&x) + spec.constant()) % modulus;
    let dirty_ok = (n..width).all(|q| out.get(q) == input.get(q));
    if out.read(&x) != want || !dirty_ok {
        return Err(verification_failed("adder", n));
    }
    Ok(meter.report())
}

fn measure_modmul(n: usize, seed: u64) -> Result<ResourceReport> {
    let (modulus, a) = modmul_constants(n, seed);
    let spec = ModMulSpec::new(modulus.clone(), a.clone(), true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ !(n as u64));
    let x = rng.gen_biguint_below(&modulus);
    let mut state = BasisState::zeros(spec.width());
    state.write(&spec.x, &x);
    let ctrl = spec.control.expect("controlled harness");
    state.set(ctrl, true);
    let mut meter = Meter::new();
    spec.emit_inplace(&mut Tee(&mut meter, &mut state))?;
    let ok = state.read(&spec.x) == (&a * &x) % &modulus
        && state.read(&spec.work) == BigUint::ZERO
        && !state.get(spec.indicator)
        && state.get(ctrl);
    if !ok {
        return Err(verification_failed("modmul", n));
    }
    Ok(meter.report())
}

/// Measures the harness at each size, verifying one random input per size.
/// Sizes run concurrently; rows come back in input order.
pub fn scaling_table(sizes: &[usize], harness: Harness, seed: u64) -> Result<Vec<ScalingRow>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("sizes must be strictly ascending".into()));
    }
    let min = match harness {
        Harness::Adder => 1,
        Harness::CtrlModmul => 2,
    };
    if let Some(&n) = sizes.iter().find(|&&n| n < min) {
        return Err(Error::Invalid(format!(
            "size {n} is below the harness minimum {min}"
        )));
    }
    sizes
        .par_iter()
        .map(|&n| {
            let start = Instant::now();
            let r = match harness {
                Harness::Adder => measure_adder(n, seed)?,
                Harness::CtrlModmul => measure_modmul(n, seed)?,
            };
            Ok(ScalingRow {
                n,
                toffoli_count: r.toffoli_count,
                depth: r.depth,
                wall_time: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,toffoli,depth,seconds";

pub fn to_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{:.3}",
            r.n, r.toffoli_count, r.depth, r.wall_time
        );
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    NLogN,
    N2LogN,
    N3LogN,
}

impl Model {
    pub fn eval(self, n: usize) -> f64 {
        let n = n as f64;
        let l = n.log2();
        match self {
            Model::NLogN => n * l,
            Model::N2LogN => n * n * l,
            Model::N3LogN => n * n * n * l,
        }
    }
}

/// Least-squares `k` in `count = k * model(n)` over the rows whose `n` is
/// within a factor 100 of the largest.
pub fn fit_leading_coefficient(rows: &[ScalingRow], model: Model) -> Result<f64> {
    if rows.len() < 3 {
        return Err(Error::TooFewRows {
            need: 3,
            got: rows.len(),
        });
    }
    let top = rows.iter().map(|r| r.n).max().unwrap_or(0) as f64;
    let (mut fc, mut ff) = (0.0, 0.0);
    for r in rows.iter().filter(|r| r.n as f64 * 100.0 > top) {
        let f = model.eval(r.n);
        fc += f * r.toffoli_count as f64;
        ff += f * f;
    }
    if ff == 0.0 {
        return Err(Error::Invalid(
            "model vanishes on every selected row".into(),
        ));
    }
    Ok(fc / ff)
}

/// Toffoli count of the `2n` controlled multipliers of a full period-finding
/// run, summed one multiplier at a time.
pub fn shor_toffoli_projection(n: usize, seed: u64) -> Result<u64> {
    let (modulus, a) = modmul_constants(n, seed);
    multiplier_constants(&a, &modulus, 2 * n)
        .into_par_iter()
        .map(|ai| {
            let spec = ModMulSpec::new(modulus.clone(), ai, true)?;
            let mut m = Meter::new();
            spec.emit_inplace(&mut m)?;
            Ok(m.report().toffoli_count)
        })
        .sum()
}

//! Computational-basis simulation of reversible-pure circuits.
//!
//! A basis state is a packed bit vector; applying a gate reads its controls
//! and flips at most one bit, so the cost per gate does not depend on width.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::circuit::{Circuit, Gate, GateSink, Qubit};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    width: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        BasisState {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Self {
        let mut s = Self::zeros(width);
        for w in &mut s.words {
            *w = rng.gen();
        }
        s.mask_tail();
        s
    }

    /// Parses a bit string where character `i` is qubit `i`.
    pub fn from_bit_str(bits: &str) -> Result<Self> {
        let mut s = Self::zeros(bits.len());
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => s.set(i, true),
                other => return Err(Error::Invalid(format!("bad bit character `{other}`"))),
            }
        }
        Ok(s)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.width)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, q: Qubit) -> bool {
        (self.words[q >> 6] >> (q & 63)) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, q: Qubit) {
        self.words[q >> 6] ^= 1 << (q & 63);
    }

    #[inline]
    pub fn set(&mut self, q: Qubit, v: bool) {
        if self.get(q) != v {
            self.flip(q);
        }
    }

    /// Reads `reg` as a little-endian unsigned integer.
    pub fn read(&self, reg: &[Qubit]) -> BigUint {
        let mut digits = vec![0u64; reg.len().div_ceil(64)];
        for (i, &q) in reg.iter().enumerate() {
            if self.get(q) {
                digits[i >> 6] |= 1 << (i & 63);
            }
        }
        BigUint::from_slice(
            &digits
                .iter()
                .flat_map(|d| [*d as u32, (*d >> 32) as u32])
                .collect::<Vec<_>>(),
        )
    }

    /// Writes the low `reg.len()` bits of `value` into `reg`.
    pub fn write(&mut self, reg: &[Qubit], value: &BigUint) {
        for (i, &q) in reg.iter().enumerate() {
            self.set(q, value.bit(i as u64));
        }
    }

    pub fn read_u64(&self, reg: &[Qubit]) -> u64 {
        assert!(reg.len() <= 64, "register wider than 64 bits");
        reg.iter()
            .enumerate()
            .fold(0, |acc, (i, &q)| acc | (self.get(q) as u64) << i)
    }

    pub fn write_u64(&mut self, reg: &[Qubit], value: u64) {
        for (i, &q) in reg.iter().enumerate() {
            self.set(q, i < 64 && (value >> i) & 1 == 1);
        }
    }

    /// Applies one reversible gate. Non-reversible gates are ignored; callers
    /// that accept arbitrary circuits go through [`run`].
    #[inline]
    pub fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::Not(t) => self.flip(t),
            Gate::Cnot { control, target } => {
                if self.get(control) {
                    self.flip(target)
                }
            }
            Gate::Toffoli { controls, target } => {
                if self.get(controls[0]) && self.get(controls[1]) {
                    self.flip(target)
                }
            }
            Gate::Mcx {
                ref controls,
                target,
            } => {
                if controls.iter().all(|&c| self.get(c)) {
                    self.flip(target)
                }
            }
            Gate::H(_) | Gate::Phase { .. } | Gate::Measure(_) => {}
        }
    }

    fn mask_tail(&mut self) {
        let rem = self.width % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.to_bit_string())
    }
}

impl GateSink for BasisState {
    fn push_gate(&mut self, gate: Gate) {
        self.apply(&gate);
    }

    fn extend_gates<'a, I>(&mut self, gates: I)
    where
        I: IntoIterator<Item = &'a Gate>,
    {
        for g in gates {
            self.apply(g);
        }
    }
}

fn check(circuit: &Circuit, state: &BasisState) -> Result<()> {
    if circuit.width() != state.width() {
        return Err(Error::WidthMismatch {
            circuit: circuit.width(),
            state: state.width(),
        });
    }
    circuit.check_reversible()
}

/// Applies every gate of `circuit` to `state` in order.
pub fn run(circuit: &Circuit, state: &BasisState) -> Result<BasisState> {
    check(circuit, state)?;
    let mut s = state.clone();
    s.extend_gates(circuit.gates());
    Ok(s)
}

/// Applies the gate range `[lo, hi)` of `circuit` to `state`.
pub fn run_range(
    circuit: &Circuit,
    lo: usize,
    hi: usize,
    state: &BasisState,
) -> Result<BasisState> {
    check(circuit, state)?;
    let mut s = state.clone();
    s.extend_gates(&circuit.gates()[lo..hi]);
    Ok(s)
}

/// States after the first `k` gates, for each `k` in `checkpoints`.
pub fn trace(
    circuit: &Circuit,
    state: &BasisState,
    checkpoints: &[usize],
) -> Result<Vec<BasisState>> {
    check(circuit, state)?;
    if checkpoints.windows(2).any(|w| w[0] > w[1])
        || checkpoints.last().is_some_and(|&k| k > circuit.len())
    {
        return Err(Error::BadCheckpoints);
    }
    let mut s = state.clone();
    let mut done = 0;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &k in checkpoints {
        s.extend_gates(&circuit.gates()[done..k]);
        done = k;
        out.push(s.clone());
    }
    Ok(out)
}

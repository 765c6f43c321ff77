//! Dense statevector simulation for small widths.
//!
//! Reversible gates permute amplitudes; `H`, `Phase` and `Measure` are the
//! only non-classical operations. Measurement draws from a caller-supplied
//! generator so runs are reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, Qubit};
use crate::error::{Error, Result};

pub const DEFAULT_WIDTH_CAP: usize = 26;
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

fn check_cap(width: usize, cap: usize) -> Result<()> {
    if width > cap {
        return Err(Error::WidthCap { width, cap });
    }
    Ok(())
}

#[inline]
fn controls_set(index: usize, controls: &[Qubit]) -> bool {
    controls.iter().all(|&c| index >> c & 1 == 1)
}

/// Image of basis index `i` under a reversible gate; non-reversible gates
/// map every index to itself.
#[inline]
pub(crate) fn permute_index(i: usize, gate: &Gate) -> usize {
    match *gate {
        Gate::Not(t) => i ^ 1 << t,
        Gate::Cnot { control, target } => i ^ (i >> control & 1) << target,
        Gate::Toffoli { controls, target } => {
            i ^ (i >> controls[0] & i >> controls[1] & 1) << target
        }
        Gate::Mcx {
            ref controls,
            target,
        } => {
            if controls_set(i, controls) {
                i ^ 1 << target
            } else {
                i
            }
        }
        Gate::H(_) | Gate::Phase { .. } | Gate::Measure(_) => i,
    }
}

impl StateVector {
    /// `|index>` on `width` qubits, subject to [`DEFAULT_WIDTH_CAP`].
    pub fn basis(width: usize, index: usize) -> Result<Self> {
        Self::basis_with_cap(width, index, DEFAULT_WIDTH_CAP)
    }

    pub fn basis_with_cap(width: usize, index: usize, cap: usize) -> Result<Self> {
        check_cap(width, cap)?;
        if index >> width != 0 {
            return Err(Error::Invalid(format!(
                "basis index {index} exceeds width {width}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amps })
    }

    /// Normalized state from explicit amplitudes; length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::Invalid(
                "amplitude count must be a power of two".into(),
            ));
        }
        let width = amps.len().trailing_zeros() as usize;
        check_cap(width, DEFAULT_WIDTH_CAP)?;
        let s = StateVector { width, amps };
        s.check_norm()?;
        Ok(s)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        Ok(())
    }

    /// Probability that qubit `q` reads 1.
    pub fn probability_one(&self, q: Qubit) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i >> q & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Applies a unitary gate. `Measure` is rejected; use [`Self::measure`].
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.width)?;
        match *gate {
            Gate::H(t) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let bit = 1 << t;
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = (a0 + a1) * s;
                    self.amps[i | bit] = (a0 - a1) * s;
                }
            }
            Gate::Phase { angle, target } => {
                let w = Complex64::from_polar(1.0, angle);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i >> target & 1 == 1 {
                        *a *= w;
                    }
                }
            }
            Gate::Measure(_) => {
                return Err(Error::Invalid("measurement needs a random source".into()));
            }
            _ => {
                let t = gate.target();
                for i in 0..self.amps.len() {
                    if i >> t & 1 == 0 {
                        let j = permute_index(i, gate);
                        if j != i {
                            self.amps.swap(i, j);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a reversible-pure gate block by moving each nonzero amplitude
    /// to its image; cost scales with the support, not with `2^width`.
    pub fn apply_permutation(&mut self, gates: &[Gate]) -> Result<()> {
        for (i, g) in gates.iter().enumerate() {
            if !g.is_reversible() {
                return Err(Error::NotReversible {
                    index: i,
                    kind: g.kind_name(),
                });
            }
            g.validate(self.width)?;
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut next = vec![zero; self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a != zero {
                let j = gates.iter().fold(i, permute_index);
                next[j] = a;
            }
        }
        self.amps = next;
        Ok(())
    }

    /// Sets the amplitudes inconsistent with qubit `q = value` to zero
    /// without renormalizing; returns the probability of that branch.
    pub(crate) fn project(&mut self, q: Qubit, value: bool) -> f64 {
        let mut p = 0.0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i >> q & 1 == 1) != value {
                *a = Complex64::new(0.0, 0.0);
            } else {
                p += a.norm_sqr();
            }
        }
        p
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// Born-rule measurement of qubit `q`; collapses and renormalizes.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: Qubit, rng: &mut R) -> Result<bool> {
        if q >= self.width {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        let p1 = self.probability_one(q);
        let outcome = rng.gen::<f64>() < p1;
        let p = self.project(q, outcome);
        self.scale(1.0 / p.sqrt());
        Ok(outcome)
    }

    /// Amplitude of basis state `index`.
    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }
}

/// Runs `circuit` on `state`, measuring with a generator seeded by `seed`.
/// Returns the final state and the measured bits in order.
pub fn sv_run(
    circuit: &Circuit,
    state: &StateVector,
    seed: u64,
) -> Result<(StateVector, Vec<bool>)> {
    if circuit.width() != state.width() {
        return Err(Error::WidthMismatch {
            circuit: circuit.width(),
            state: state.width(),
        });
    }
    state.check_norm()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = state.clone();
    let mut record = Vec::new();
    for g in circuit.gates() {
        match *g {
            Gate::Measure(q) => record.push(s.measure(q, &mut rng)?),
            _ => s.apply(g)?,
        }
    }
    Ok((s, record))
}

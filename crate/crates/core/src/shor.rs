//! Period finding with one recycled control qubit, and the factoring loop
//! around it.
//!
//! Iteration `i` conditions a multiplication by `a^(2^(2n-1-i)) mod N` on the
//! control, undoes the phase contributed by the bits already measured, and
//! measures bit `m_i` of `y` (least significant first). The live register is
//! `x`, work, indicator and control: `2n + 2` qubits.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Gate, Qubit};
use crate::error::{Error, Result};
use crate::modarith::{ctrl_modmul_inplace, multiplier_constants, register_width, ModMulSpec};
use crate::statevector::{StateVector, DEFAULT_WIDTH_CAP};

/// Outcome of one period-finding run.
#[derive(Clone, Debug, PartialEq)]
pub struct ShorRun {
    pub modulus: u64,
    pub a: u64,
    pub seed: u64,
    /// Qubits allocated by the simulation.
    pub width: usize,
    /// `m_0..m_{2n-1}`, least significant first.
    pub bits: Vec<bool>,
    /// Correction angle applied before each measurement.
    pub thetas: Vec<f64>,
    pub y: u64,
    pub r: Option<u64>,
    pub factors: Option<(u64, u64)>,
}

impl ShorRun {
    /// `i=<k> m=<bit> theta=<radians>` per iteration, then the summary line.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        for (i, (&m, &theta)) in self.bits.iter().zip(&self.thetas).enumerate() {
            let _ = writeln!(s, "i={i} m={} theta={theta}", m as u8);
        }
        let r = self.r.map_or("none".to_string(), |r| r.to_string());
        let _ = writeln!(
            s,
            "y={} r={r} factors={}",
            self.y,
            fmt_factors(self.factors)
        );
        s
    }
}

fn fmt_factors(f: Option<(u64, u64)>) -> String {
    f.map_or("none".to_string(), |(p, q)| format!("{p},{q}"))
}

fn pow_mod(a: u64, e: u64, n: u64) -> u64 {
    BigUint::from(a)
        .modpow(&BigUint::from(e), &BigUint::from(n))
        .try_into()
        .expect("residue fits in u64")
}

/// `theta_k = -pi * sum_{j<k} m_j 2^(j-k)`.
pub fn correction_angle(bits: &[bool]) -> f64 {
    let k = bits.len() as i32;
    -PI * bits
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(j, _)| 2f64.powi(j as i32 - k))
        .sum::<f64>()
}

/// Nontrivial factors from an even order `r`, when `a^(r/2) != -1 mod N`.
pub fn factors_from_order(modulus: u64, a: u64, r: u64) -> Option<(u64, u64)> {
    if r % 2 == 1 {
        return None;
    }
    let h = pow_mod(a, r / 2, modulus);
    if h == modulus - 1 {
        return None;
    }
    [h + modulus - 1, h + 1].into_iter().find_map(|v| {
        let p = v.gcd(&modulus);
        (p > 1 && p < modulus).then(|| {
            let q = modulus / p;
            (p.min(q), p.max(q))
        })
    })
}

/// Order candidate from the measured `y`: each convergent denominator
/// `d < N` of `y / q`, and its doublings below `N`, are tried in turn; the
/// first `r` with `a^r = 1 mod N` wins.
pub fn continued_fraction_order(y: u64, q: u64, modulus: u64, a: u64) -> Option<u64> {
    if y == 0 {
        return None;
    }
    let (mut num, mut den) = (y, q);
    // convergent denominators via k_i = a_i k_{i-1} + k_{i-2}
    let (mut k_prev, mut k) = (1u64, 0u64);
    while den != 0 {
        let ai = num / den;
        (num, den) = (den, num - ai * den);
        let next = ai.checked_mul(k)?.checked_add(k_prev)?;
        (k_prev, k) = (k, next);
        if k >= modulus {
            break;
        }
        let mut r = k;
        while r > 1 && r < modulus {
            if pow_mod(a, r, modulus) == 1 {
                return Some(r);
            }
            r *= 2;
        }
    }
    None
}

struct Machine {
    spec_template: ModMulSpec,
    multipliers: Vec<Vec<Gate>>,
    ctrl: Qubit,
    width: usize,
}

impl Machine {
    fn new(modulus: u64, a: u64) -> Result<Self> {
        if modulus < 3 || modulus.is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "N = {modulus} must be odd and at least 3"
            )));
        }
        if a < 2 || a >= modulus || a.gcd(&modulus) != 1 {
            return Err(Error::Invalid(format!(
                "a = {a} must lie in [2, N) and be coprime to N = {modulus}"
            )));
        }
        let big_n = BigUint::from(modulus);
        let n = register_width(&big_n);
        let spec_template = ModMulSpec::new(big_n.clone(), a, true)?;
        let width = spec_template.width();
        if width > DEFAULT_WIDTH_CAP {
            return Err(Error::WidthCap {
                width,
                cap: DEFAULT_WIDTH_CAP,
            });
        }
        let constants = multiplier_constants(&BigUint::from(a), &big_n, 2 * n);
        let mut cache: HashMap<BigUint, Vec<Gate>> = HashMap::new();
        let mut multipliers = Vec::with_capacity(2 * n);
        // iteration i uses a^(2^(2n-1-i))
        for c in constants.iter().rev() {
            if !cache.contains_key(c) {
                let spec = ModMulSpec {
                    a: c.clone(),
                    ..spec_template.clone()
                };
                cache.insert(c.clone(), ctrl_modmul_inplace(&spec)?.into_gates());
            }
            multipliers.push(cache[c].clone());
        }
        let ctrl = spec_template.control.expect("controlled layout");
        Ok(Machine {
            spec_template,
            multipliers,
            ctrl,
            width,
        })
    }

    fn initial_state(&self) -> Result<StateVector> {
        // work starts at |1>: the x register holds the running product
        StateVector::basis(self.width, 1 << self.spec_template.x[0])
    }

    /// Everything in iteration `i` before the measurement.
    fn prepare(&self, s: &mut StateVector, i: usize, theta: f64) -> Result<()> {
        s.apply(&Gate::H(self.ctrl))?;
        s.apply_permutation(&self.multipliers[i])?;
        s.apply(&Gate::Phase {
            angle: theta,
            target: self.ctrl,
        })?;
        s.apply(&Gate::H(self.ctrl))
    }

    fn rounds(&self) -> usize {
        self.multipliers.len()
    }
}

/// Qubits the period-finding simulation allocates for modulus `N`.
pub fn period_finding_width(modulus: u64) -> usize {
    2 * register_width(&BigUint::from(modulus)) + 2
}

fn run_with_rng<R: Rng>(modulus: u64, a: u64, seed: u64, rng: &mut R) -> Result<ShorRun> {
    let machine = Machine::new(modulus, a)?;
    let mut s = machine.initial_state()?;
    let mut bits = Vec::new();
    let mut thetas = Vec::new();
    for i in 0..machine.rounds() {
        let theta = correction_angle(&bits);
        machine.prepare(&mut s, i, theta)?;
        let m = s.measure(machine.ctrl, rng)?;
        if m {
            s.apply(&Gate::x(machine.ctrl))?;
        }
        bits.push(m);
        thetas.push(theta);
    }
    let y = bits
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
    let q = 1u64 << bits.len();
    let r = continued_fraction_order(y, q, modulus, a);
    let factors = r.and_then(|r| factors_from_order(modulus, a, r));
    Ok(ShorRun {
        modulus,
        a,
        seed,
        width: machine.width,
        bits,
        thetas,
        y,
        r,
        factors,
    })
}

/// One seeded period-finding run for `a` modulo `N`.
pub fn shor_period_finding(modulus: u64, a: u64, seed: u64) -> Result<ShorRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_with_rng(modulus, a, seed, &mut rng)
}

/// Exact distribution of `y`, found by following both outcomes of every
/// measurement. Branches below `1e-15` probability are dropped.
pub fn exact_outcome_distribution(modulus: u64, a: u64) -> Result<BTreeMap<u64, f64>> {
    let machine = Machine::new(modulus, a)?;
    let mut out = BTreeMap::new();
    let mut stack = vec![(machine.initial_state()?, Vec::<bool>::new(), 1.0f64)];
    while let Some((mut s, bits, p)) = stack.pop() {
        let i = bits.len();
        if i == machine.rounds() {
            let y = bits
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
            *out.entry(y).or_insert(0.0) += p;
            continue;
        }
        machine.prepare(&mut s, i, correction_angle(&bits))?;
        for m in [false, true] {
            let mut branch = s.clone();
            let pm = branch.project(machine.ctrl, m);
            if pm < 1e-15 {
                continue;
            }
            branch.scale(1.0 / pm.sqrt());
            if m {
                branch.apply(&Gate::x(machine.ctrl))?;
            }
            let mut next = bits.clone();
            next.push(m);
            stack.push((branch, next, p * pm));
        }
    }
    Ok(out)
}

/// Result of [`shor_factor`]: the transcript of every attempt and the pair
/// found, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorOutcome {
    pub factors: Option<(u64, u64)>,
    pub transcript: String,
    pub runs: Vec<ShorRun>,
}

fn perfect_power_root(n: u64) -> Option<u64> {
    (2..64u32).find_map(|k| {
        let r = (n as f64).powf(1.0 / k as f64).round() as u64;
        (r.saturating_sub(1)..=r + 1).find(|&b| b > 1 && b.checked_pow(k) == Some(n))
    })
}

/// Random bases, gcd shortcut, period finding and the even-order test, for at
/// most `attempts` bases. Every attempt is recorded in the transcript, which
/// ends with `factors=<p,q|none>`.
pub fn shor_factor(modulus: u64, attempts: usize, seed: u64) -> Result<FactorOutcome> {
    if modulus < 9 || modulus.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "N = {modulus} must be odd and at least 9"
        )));
    }
    if let Some(b) = perfect_power_root(modulus) {
        return Err(Error::Invalid(format!(
            "N = {modulus} is a perfect power of {b}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = String::new();
    let mut runs = Vec::new();
    for _ in 0..attempts {
        let a = rng.gen_range(2..modulus - 1);
        let g = a.gcd(&modulus);
        if g > 1 {
            let pair = (g.min(modulus / g), g.max(modulus / g));
            let _ = writeln!(
                transcript,
                "a={a} gcd={g} factors={}",
                fmt_factors(Some(pair))
            );
            return Ok(FactorOutcome {
                factors: Some(pair),
                transcript,
                runs,
            });
        }
        let _ = writeln!(transcript, "a={a}");
        let run = run_with_rng(modulus, a, seed, &mut rng)?;
        transcript.push_str(&run.transcript());
        let found = run.factors;
        runs.push(run);
        if found.is_some() {
            return Ok(FactorOutcome {
                factors: found,
                transcript,
                runs,
            });
        }
    }
    Ok(FactorOutcome {
        factors: None,
        transcript,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(continued_fraction_order(192, 256, 15, 7), Some(4));
        assert_eq!(continued_fraction_order(0, 256, 15, 7), None);
        assert_eq!(continued_fraction_order(128, 256, 15, 7), Some(4));
        assert_eq!(continued_fraction_order(64, 256, 15, 7), Some(4));
    }

    #[test]
    fn angles() {
        assert_eq!(correction_angle(&[]), 0.0);
        assert!((correction_angle(&[true]) + PI / 2.0).abs() < 1e-15);
        assert!((correction_angle(&[true, true]) + PI * 0.75).abs() < 1e-15);
        assert!((correction_angle(&[false, true]) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn order_to_factors() {
        assert_eq!(factors_from_order(15, 7, 4), Some((3, 5)));
        assert_eq!(factors_from_order(15, 7, 3), None);
        // 14^1 = -1 mod 15
        assert_eq!(factors_from_order(15, 14, 2), None);
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power_root(27), Some(3));
        assert_eq!(perfect_power_root(25), Some(5));
        assert_eq!(perfect_power_root(15), None);
        assert!(shor_factor(14, 3, 0).is_err());
        assert!(shor_factor(49, 3, 0).is_err());
    }

    #[test]
    fn order_two_distribution() {
        let d = exact_outcome_distribution(15, 4).unwrap();
        let support: Vec<u64> = d
            .iter()
            .filter(|(_, &p)| p > 1e-9)
            .map(|(&y, _)| y)
            .collect();
        assert_eq!(support, vec![0, 128]);
        for y in support {
            assert!((d[&y] - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = shor_period_finding(15, 7, 3).unwrap();
        let b = shor_period_finding(15, 7, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bits.len(), 8);
        assert!([0, 64, 128, 192].contains(&a.y));
        assert_eq!(period_finding_width(15), 10);
    }
}

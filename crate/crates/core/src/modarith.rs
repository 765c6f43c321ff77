//! Modular addition and the controlled in-place modular multiplier.
//!
//! The modular adder compares `b` against `N - a` into a clean indicator,
//! adds `a` or subtracts `N - a` under the indicator, then clears the
//! indicator with a second comparison. Controls are attached to the
//! comparators only; the additions are steered by the indicator.
//!
//! The multiplier accumulates `(a 2^i mod N)` into a work register for every
//! set bit `x_i`, swaps, and runs the accumulation for `a^-1` backwards so
//! that the work register returns to zero. Everything fits in `2n + 2`
//! qubits: `x`, work, indicator and the control.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{emit_compare, emit_const_add, Mode};
use crate::circuit::{ensure_disjoint, lower_gates, Circuit, Gate, GateSink, Qubit};
use crate::error::{Error, Result};

/// `b` with `(a * b) mod n = 1`.
pub fn mod_inverse(a: &BigUint, n: &BigUint) -> Result<BigUint> {
    if n <= &BigUint::one() {
        return Err(Error::Invalid("modulus must exceed 1".into()));
    }
    let (mut r0, mut r1) = (BigInt::from(n.clone()), BigInt::from(a % n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if !r0.is_one() {
        return Err(Error::NotInvertible {
            a: a.to_string(),
            modulus: n.to_string(),
            gcd: r0.to_string(),
        });
    }
    let n_signed = BigInt::from(n.clone());
    let inv = t0.mod_floor(&n_signed);
    debug_assert!(!inv.is_negative());
    Ok(inv.to_biguint().expect("non-negative"))
}

/// `a^(2^i) mod n` for `i = 0..count`, by repeated squaring.
pub fn multiplier_constants(a: &BigUint, n: &BigUint, count: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(count);
    let mut cur = a % n;
    for _ in 0..count {
        out.push(cur.clone());
        cur = (&cur * &cur) % n;
    }
    out
}

/// Register width for modulus `N`: `ceil(log2 N)`.
pub fn register_width(modulus: &BigUint) -> usize {
    (modulus - 1u8).bits() as usize
}

/// `b += a (mod N)` when every control is 1. `cmp_dirty` holds `n - 1`
/// borrowed qubits for the comparators, `add_dirty` at least one for the
/// additions. May emit 3-controlled NOTs when two controls are given.
#[allow(clippy::too_many_arguments)]
pub(crate) fn emit_mod_add(
    out: &mut Vec<Gate>,
    a: &BigUint,
    modulus: &BigUint,
    b: &[Qubit],
    ind: Qubit,
    cmp_dirty: &[Qubit],
    add_dirty: &[Qubit],
    ctrls: &[Qubit],
    mode: Mode,
) {
    let complement = modulus - a;
    emit_compare(out, &complement, b, cmp_dirty, ind, ctrls);
    emit_const_add(out, b, a, add_dirty, &[ind], mode);
    // ind now marks b + a < N; flip to mark the wrap-around case instead
    out.push(Gate::x(ind).with_controls(ctrls));
    let start = out.len();
    emit_const_add(out, b, &complement, add_dirty, &[ind], mode);
    out[start..].reverse();
    // wrapped  <=>  new b < a
    emit_compare(out, a, b, cmp_dirty, ind, ctrls);
}

fn add_budget(pool: &[Qubit], n: usize, mode: Mode) -> &[Qubit] {
    match mode {
        Mode::Serial => &pool[..1],
        Mode::Parallel => &pool[..(n / 2).clamp(1, pool.len())],
    }
}

/// Modular adder `b -> (a + b) mod N` with the indicator returned to 0.
/// Requires `b < N`; behavior on larger `b` is unspecified.
pub fn mod_adder(
    a: &BigUint,
    modulus: &BigUint,
    b: &[Qubit],
    indicator: Qubit,
    g: &[Qubit],
    ctrls: &[Qubit],
    mode: Mode,
) -> Result<Circuit> {
    if a >= modulus {
        return Err(Error::Invalid(format!(
            "a = {a} must be below N = {modulus}"
        )));
    }
    let n = b.len();
    if n < 2 || register_width(modulus) > n {
        return Err(Error::SizeMismatch(format!(
            "register of {n} qubits cannot hold residues mod {modulus}"
        )));
    }
    if ctrls.len() > 2 {
        return Err(Error::Invalid("at most two controls".into()));
    }
    let need = n - 1;
    if g.len() < need {
        return Err(Error::InsufficientDirty {
            need,
            have: g.len(),
        });
    }
    ensure_disjoint(&[b, &[indicator], g, ctrls])?;
    let mut raw = Vec::new();
    emit_mod_add(
        &mut raw,
        a,
        modulus,
        b,
        indicator,
        &g[..need],
        add_budget(g, n, mode),
        ctrls,
        mode,
    );
    let pool: Vec<Qubit> = g.iter().chain(b).copied().collect();
    let mut out = Vec::with_capacity(raw.len());
    lower_gates(&raw, &pool, &mut out)?;
    let width = b
        .iter()
        .chain(g)
        .chain(ctrls)
        .chain(std::iter::once(&indicator))
        .max()
        .map_or(0, |m| m + 1);
    Circuit::from_gates(width, out)
}

/// Layout and constants of a (controlled) modular multiplication by `a`.
#[derive(Clone, Debug)]
pub struct ModMulSpec {
    pub modulus: BigUint,
    pub a: BigUint,
    pub x: Vec<Qubit>,
    pub work: Vec<Qubit>,
    pub indicator: Qubit,
    pub control: Option<Qubit>,
    pub mode: Mode,
}

impl ModMulSpec {
    /// Standard packing: `x = 0..n`, work `= n..2n`, indicator `2n`, control
    /// `2n + 1` (when present).
    pub fn new(
        modulus: impl Into<BigUint>,
        a: impl Into<BigUint>,
        controlled: bool,
    ) -> Result<Self> {
        let modulus = modulus.into();
        let n = register_width(&modulus);
        let spec = ModMulSpec {
            a: a.into(),
            x: (0..n).collect(),
            work: (n..2 * n).collect(),
            indicator: 2 * n,
            control: controlled.then_some(2 * n + 1),
            mode: Mode::Parallel,
            modulus,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Qubits the circuit is laid out on: `2n + 2` with a control, else `2n + 1`.
    pub fn width(&self) -> usize {
        self.x
            .iter()
            .chain(&self.work)
            .chain(std::iter::once(&self.indicator))
            .chain(&self.control)
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.modulus < BigUint::from(3u8) || self.modulus.is_even() {
            return Err(Error::Invalid(format!(
                "modulus {} must be odd and at least 3",
                self.modulus
            )));
        }
        if self.a.is_zero() || self.a >= self.modulus {
            return Err(Error::Invalid(format!(
                "multiplier {} must satisfy 0 < a < N",
                self.a
            )));
        }
        let g = self.a.gcd(&self.modulus);
        if !g.is_one() {
            return Err(Error::NotInvertible {
                a: self.a.to_string(),
                modulus: self.modulus.to_string(),
                gcd: g.to_string(),
            });
        }
        if self.work.len() != n || register_width(&self.modulus) != n {
            return Err(Error::SizeMismatch(format!(
                "x and work must both have {} qubits",
                register_width(&self.modulus)
            )));
        }
        let ctrl: Vec<Qubit> = self.control.into_iter().collect();
        ensure_disjoint(&[&self.x, &self.work, &[self.indicator], &ctrl])
    }

    /// Gates of the `i`-th modular addition of `(factor 2^i) mod N`, MCX
    /// already lowered.
    fn mod_add_step(&self, factor: &BigUint, i: usize) -> Result<Vec<Gate>> {
        let n = self.n();
        let addend = (factor << i) % &self.modulus;
        let mut ctrls: Vec<Qubit> = self.control.into_iter().collect();
        ctrls.push(self.x[i]);
        // every x_j except the control x_i is idle during the comparison
        let cmp_dirty: Vec<Qubit> = self.x.iter().copied().filter(|&q| q != self.x[i]).collect();
        let add_dirty = add_budget(&self.x, n, self.mode);
        let mut raw = Vec::new();
        emit_mod_add(
            &mut raw,
            &addend,
            &self.modulus,
            &self.work,
            self.indicator,
            &cmp_dirty,
            add_dirty,
            &ctrls,
            self.mode,
        );
        let pool: Vec<Qubit> = self.x.iter().chain(&self.work).copied().collect();
        let mut out = Vec::with_capacity(raw.len() + 8);
        lower_gates(&raw, &pool, &mut out)?;
        Ok(out)
    }

    fn emit_forward<S: GateSink>(&self, factor: &BigUint, sink: &mut S) -> Result<()> {
        for i in 0..self.n() {
            let step = self.mod_add_step(factor, i)?;
            sink.extend_gates(&step);
        }
        Ok(())
    }

    fn emit_forward_reversed<S: GateSink>(&self, factor: &BigUint, sink: &mut S) -> Result<()> {
        for i in (0..self.n()).rev() {
            let step = self.mod_add_step(factor, i)?;
            sink.extend_gates(step.iter().rev());
        }
        Ok(())
    }

    fn emit_swap<S: GateSink>(&self, sink: &mut S) {
        for (&x, &w) in self.x.iter().zip(&self.work) {
            sink.push_gate(Gate::cx(w, x));
            match self.control {
                Some(c) => sink.push_gate(Gate::ccx(c, x, w)),
                None => sink.push_gate(Gate::cx(x, w)),
            }
            sink.push_gate(Gate::cx(w, x));
        }
    }

    /// Streams the in-place multiplier into `sink` without materializing it.
    pub fn emit_inplace<S: GateSink>(&self, sink: &mut S) -> Result<()> {
        self.validate()?;
        let inverse = mod_inverse(&self.a, &self.modulus)?;
        self.emit_forward(&self.a, sink)?;
        self.emit_swap(sink);
        self.emit_forward_reversed(&inverse, sink)
    }
}

/// `|x>|0> -> |x>|(a x) mod N>` (when the control is 1; identity otherwise).
pub fn modmul_forward(spec: &ModMulSpec) -> Result<Circuit> {
    spec.validate()?;
    let mut gates = Vec::new();
    spec.emit_forward(&spec.a, &mut gates)?;
    Circuit::from_gates(spec.width(), gates)
}

/// `|x>|0> -> |(a x) mod N>|0>` when the control is 1, exact identity when it
/// is 0. Compute, controlled swap, uncompute with `a^-1`.
pub fn ctrl_modmul_inplace(spec: &ModMulSpec) -> Result<Circuit> {
    let mut gates = Vec::new();
    spec.emit_inplace(&mut gates)?;
    Circuit::from_gates(spec.width(), gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, BasisState};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Independent inverse by exhaustive search.
    fn brute_inverse(a: u64, n: u64) -> Option<u64> {
        (1..n).find(|b| a * b % n == 1)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&big(7), &big(15)).unwrap(), big(13));
        assert_eq!(mod_inverse(&big(1), &big(15)).unwrap(), big(1));
        match mod_inverse(&big(3), &big(15)) {
            Err(Error::NotInvertible { gcd, .. }) => assert_eq!(gcd, "3"),
            other => panic!("{other:?}"),
        }
        for n in 2..60u64 {
            for a in 0..n {
                let got = mod_inverse(&big(a), &big(n))
                    .ok()
                    .map(|b| u64::try_from(b).unwrap());
                assert_eq!(got, brute_inverse(a, n), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn constants_by_squaring() {
        let got = multiplier_constants(&big(7), &big(15), 8);
        assert_eq!(got, [7, 4, 1, 1, 1, 1, 1, 1].map(big).to_vec());
        assert!(multiplier_constants(&big(1), &big(21), 10)
            .iter()
            .all(|c| c == &big(1)));
        let n = big(1_000_003 * 3);
        assert!(multiplier_constants(&big(2), &n, 40).iter().all(|c| c < &n));
    }

    #[test]
    fn mod_adder_examples() {
        // b = 0..4, ind = 4, g = 5..8
        let b: Vec<usize> = (0..4).collect();
        let g: Vec<usize> = (5..8).collect();
        let c = mod_adder(&big(7), &big(15), &b, 4, &g, &[], Mode::Serial).unwrap();
        for (bv, want) in [(11, 3), (2, 9)] {
            let mut s = BasisState::zeros(8);
            s.write_u64(&b, bv);
            let out = run(&c, &s).unwrap();
            assert_eq!(out.read_u64(&b), want);
            assert!(!out.get(4));
        }
        assert!(mod_adder(&big(15), &big(15), &b, 4, &g, &[], Mode::Serial).is_err());
        assert!(mod_adder(&big(1), &big(15), &b, 0, &g, &[], Mode::Serial).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ModMulSpec::new(15u32, 3u32, true).is_err());
        assert!(ModMulSpec::new(16u32, 3u32, true).is_err());
        assert!(ModMulSpec::new(15u32, 0u32, true).is_err());
        let s = ModMulSpec::new(15u32, 7u32, true).unwrap();
        assert_eq!(s.width(), 10);
        assert_eq!(ModMulSpec::new(15u32, 7u32, false).unwrap().width(), 9);
    }

    #[test]
    fn forward_examples() {
        let spec = ModMulSpec::new(15u32, 7u32, true).unwrap();
        let c = modmul_forward(&spec).unwrap();
        let ctrl = spec.control.unwrap();
        for (x, on, want) in [
            (9u64, true, 3u64),
            (0, true, 0),
            (9, false, 0),
            (14, false, 0),
        ] {
            let mut s = BasisState::zeros(spec.width());
            s.write_u64(&spec.x, x);
            s.set(ctrl, on);
            let out = run(&c, &s).unwrap();
            assert_eq!(out.read_u64(&spec.work), want);
            assert_eq!(out.read_u64(&spec.x), x);
            assert!(!out.get(spec.indicator));
        }
    }

    #[test]
    fn inplace_example() {
        let spec = ModMulSpec::new(15u32, 7u32, true).unwrap();
        let c = ctrl_modmul_inplace(&spec).unwrap();
        let mut s = BasisState::zeros(10);
        s.write_u64(&spec.x, 9);
        s.set(spec.control.unwrap(), true);
        let out = run(&c, &s).unwrap();
        assert_eq!(out.read_u64(&spec.x), 3);
        assert_eq!(out.read_u64(&spec.work), 0);
        assert!(!out.get(spec.indicator));
        assert_eq!(c.touched_qubits().len(), 2 * 4 + 2);
        assert!(!c.has_mcx());
    }
}

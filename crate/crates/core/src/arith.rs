//! Toffoli-network arithmetic on borrowed (dirty) qubits.
//!
//! * [`carry_circuit`]: carry-out of `a + c` for a classical constant `c`,
//!   propagated by toggling dirty qubits and uncomputed by replaying the
//!   toggle ladder in reverse.
//! * [`inplace_add`]: ancilla-free ripple adder `x += y (mod 2^n)`.
//! * [`incrementer`] / [`ctrl_incrementer`]: `x += 1` from two subtractions of
//!   a borrowed register, `x - g - ~g = x + 1`.
//! * [`const_adder`]: divide-and-conquer `a += c` with one dirty qubit, the
//!   carry of the low half being folded into the high half by a
//!   dirty-controlled incrementer sandwich.
//! * [`comparator`]: `t ^= [b < c]`, the carry circuit on complemented `b`.
//!
//! Gates that a classical constant bit would make trivial are never emitted,
//! so Toffoli counts depend on the bit pattern of the constant.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::circuit::{ensure_disjoint, Circuit, Gate, Qubit};
use crate::error::{Error, Result};

/// How many dirty qubits the constant adder may spread its recursion over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// A single borrowed qubit holds every carry.
    #[default]
    Serial,
    /// Up to `n/2` borrowed qubits so both halves of each split run side by
    /// side. With a single qubit the halves borrow each other instead.
    Parallel,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "serial" => Ok(Mode::Serial),
            "parallel" => Ok(Mode::Parallel),
            other => Err(Error::Invalid(format!("unknown mode `{other}`"))),
        }
    }
}

/// Parameters of a constant addition `target += constant (mod 2^n)`.
#[derive(Clone, Debug)]
pub struct AdderSpec {
    target: Vec<Qubit>,
    constant: BigUint,
    dirty: Vec<Qubit>,
    ctrls: Vec<Qubit>,
    mode: Mode,
    reduced: bool,
}

impl AdderSpec {
    /// The constant is reduced modulo `2^n`; see [`was_reduced`](Self::was_reduced).
    pub fn new(target: Vec<Qubit>, constant: impl Into<BigUint>) -> Self {
        let constant = constant.into();
        let reduced_c = low_bits(&constant, target.len());
        AdderSpec {
            reduced: reduced_c != constant,
            constant: reduced_c,
            target,
            dirty: Vec::new(),
            ctrls: Vec::new(),
            mode: Mode::Serial,
        }
    }

    pub fn dirty(mut self, dirty: Vec<Qubit>) -> Self {
        self.dirty = dirty;
        self
    }

    pub fn ctrls(mut self, ctrls: Vec<Qubit>) -> Self {
        self.ctrls = ctrls;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn n(&self) -> usize {
        self.target.len()
    }

    pub fn constant(&self) -> &BigUint {
        &self.constant
    }

    pub fn target(&self) -> &[Qubit] {
        &self.target
    }

    /// True when the constant given to [`new`](Self::new) was `>= 2^n`.
    pub fn was_reduced(&self) -> bool {
        self.reduced
    }

    /// The dirty qubits the synthesis will actually touch.
    pub fn effective_dirty(&self) -> &[Qubit] {
        let keep = match self.mode {
            Mode::Serial => 1,
            Mode::Parallel => (self.n() / 2).max(1),
        };
        &self.dirty[..keep.min(self.dirty.len())]
    }

    fn validate(&self) -> Result<()> {
        if self.target.is_empty() {
            return Err(Error::Invalid(
                "adder needs at least one target qubit".into(),
            ));
        }
        if self.dirty.is_empty() {
            return Err(Error::InsufficientDirty { need: 1, have: 0 });
        }
        if self.ctrls.len() > 2 {
            return Err(Error::Invalid("at most two controls".into()));
        }
        ensure_disjoint(&[&self.target, self.effective_dirty(), &self.ctrls])
    }
}

pub(crate) fn low_bits(c: &BigUint, n: usize) -> BigUint {
    c % (BigUint::one() << n)
}

fn width_of(groups: &[&[Qubit]]) -> usize {
    groups
        .iter()
        .flat_map(|g| g.iter())
        .max()
        .map_or(0, |m| m + 1)
}

fn check_ctrls(ctrls: &[Qubit]) -> Result<()> {
    if ctrls.len() > 2 {
        Err(Error::Invalid("at most two controls".into()))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Emitters. No validation: callers guarantee distinct, in-range qubits.

/// `t ^= carry_out(a + c)` when every control is 1. Uses `g[..n-1]`.
pub(crate) fn emit_carry(
    out: &mut Vec<Gate>,
    c: &BigUint,
    a: &[Qubit],
    g: &[Qubit],
    t: Qubit,
    ctrls: &[Qubit],
) {
    let n = a.len();
    if n == 0 || low_bits(c, n).is_zero() {
        return;
    }
    if n == 1 {
        out.push(Gate::cx(a[0], t).with_controls(ctrls));
        return;
    }
    // g[i - 1] toggles iff there is a carry out of bit i.
    let tog = |i: usize| g[i - 1];
    let top = n - 1;
    let mut ladder = Vec::with_capacity(4 * n);
    for i in (2..=top).rev() {
        if c.bit(i as u64) {
            ladder.push(Gate::cx(a[i], tog(i)));
            ladder.push(Gate::x(a[i]));
        }
        ladder.push(Gate::ccx(tog(i - 1), a[i], tog(i)));
    }
    if c.bit(1) {
        ladder.push(Gate::cx(a[1], tog(1)));
        ladder.push(Gate::x(a[1]));
    }
    // No g_0: the carry out of bit 0 is a_0 itself when c_0 = 1, else nothing.
    if c.bit(0) {
        ladder.push(Gate::ccx(a[0], a[1], tog(1)));
    }
    for (i, &ai) in a.iter().enumerate().take(top + 1).skip(2) {
        ladder.push(Gate::ccx(tog(i - 1), ai, tog(i)));
    }

    let target_gate = Gate::cx(tog(top), t).with_controls(ctrls);
    out.push(target_gate.clone());
    out.extend(ladder.iter().cloned());
    out.push(target_gate);
    out.extend(ladder.into_iter().rev());
}

/// Ripple adder `b += a` over `a.len()` bits with the carry-out toggled into
/// `z`; no other ancilla. `2m - 1` Toffolis.
fn emit_ripple(out: &mut Vec<Gate>, a: &[Qubit], b: &[Qubit], z: Qubit) {
    let m = a.len();
    if m == 0 {
        return;
    }
    if m == 1 {
        out.push(Gate::ccx(a[0], b[0], z));
        out.push(Gate::cx(a[0], b[0]));
        return;
    }
    for i in 1..m {
        out.push(Gate::cx(a[i], b[i]));
    }
    out.push(Gate::cx(a[m - 1], z));
    for i in (1..m.saturating_sub(1)).rev() {
        out.push(Gate::cx(a[i], a[i + 1]));
    }
    for i in 0..m - 1 {
        out.push(Gate::ccx(a[i], b[i], a[i + 1]));
    }
    out.push(Gate::ccx(a[m - 1], b[m - 1], z));
    for i in (1..m).rev() {
        out.push(Gate::cx(a[i], b[i]));
        out.push(Gate::ccx(a[i - 1], b[i - 1], a[i]));
    }
    for i in 1..m.saturating_sub(1) {
        out.push(Gate::cx(a[i], a[i + 1]));
    }
    for i in 0..m {
        out.push(Gate::cx(a[i], b[i]));
    }
}

/// `x += y (mod 2^k)` for `|y| = k` or `|y| = k - 1` (zero-extended). The
/// ripple adder runs on the low `k - 1` bits and its carry-out lands in the
/// top bit of `x`.
pub(crate) fn emit_add(out: &mut Vec<Gate>, x: &[Qubit], y: &[Qubit]) {
    let k = x.len();
    debug_assert!(y.len() == k || y.len() + 1 == k);
    if k == 0 {
        return;
    }
    if y.len() == k {
        out.push(Gate::cx(y[k - 1], x[k - 1]));
    }
    emit_ripple(out, &y[..k - 1], &x[..k - 1], x[k - 1]);
}

fn emit_sub(out: &mut Vec<Gate>, x: &[Qubit], y: &[Qubit]) {
    let start = out.len();
    emit_add(out, x, y);
    out[start..].reverse();
}

/// `x += 1` borrowing `g` (at least `|x| - 1` qubits, restored).
pub(crate) fn emit_increment(out: &mut Vec<Gate>, x: &[Qubit], g: &[Qubit]) {
    let k = x.len();
    if k == 0 {
        return;
    }
    let full = g.len() >= k;
    let g = if full { &g[..k] } else { &g[..k - 1] };
    for _ in 0..2 {
        // x - g - ~g = x + 1 (mod 2^|g|)
        emit_sub(out, x, g);
        out.extend(g.iter().map(|&q| Gate::x(q)));
    }
    if !full {
        // with |g| = k - 1 the two subtractions leave x + 1 - 2^(k-1)
        out.push(Gate::x(x[k - 1]));
    }
}

/// `x += ctrl`, running the incrementer on the joint register `(ctrl, x)`
/// with `ctrl` as least significant bit. Needs `|x|` borrowed qubits.
pub(crate) fn emit_ctrl_increment(out: &mut Vec<Gate>, x: &[Qubit], ctrl: Qubit, g: &[Qubit]) {
    match x.len() {
        0 => {}
        1 => out.push(Gate::cx(ctrl, x[0])),
        _ => {
            let mut joint = Vec::with_capacity(x.len() + 1);
            joint.push(ctrl);
            joint.extend_from_slice(x);
            emit_increment(out, &joint, g);
            out.push(Gate::x(ctrl));
        }
    }
}

/// `x += c (mod 2^n)` when all `ctrls` are 1. `dirty` is non-empty and
/// disjoint from `x` and `ctrls`.
pub(crate) fn emit_const_add(
    out: &mut Vec<Gate>,
    x: &[Qubit],
    c: &BigUint,
    dirty: &[Qubit],
    ctrls: &[Qubit],
    mode: Mode,
) {
    let n = x.len();
    if n == 0 || c.is_zero() {
        return;
    }
    if n == 1 {
        out.push(Gate::x(x[0]).with_controls(ctrls));
        return;
    }
    let split = n.div_ceil(2);
    let (xl, xh) = x.split_at(split);
    let cl = low_bits(c, split);
    let ch: BigUint = c >> split;
    let g = dirty[0];

    if !cl.is_zero() {
        // x_H += carry(x_L + c_L) with g in an unknown state:
        //   inc_g, invert_g, g ^= carry, inc_g, g ^= carry, invert_g
        let fanout = |out: &mut Vec<Gate>| out.extend(xh.iter().map(|&q| Gate::cx(g, q)));
        emit_ctrl_increment(out, xh, g, xl);
        fanout(out);
        emit_carry(out, &cl, xl, xh, g, ctrls);
        emit_ctrl_increment(out, xh, g, xl);
        emit_carry(out, &cl, xl, xh, g, ctrls);
        fanout(out);
    }

    match mode {
        Mode::Serial => {
            emit_const_add(out, xl, &cl, &[g], ctrls, mode);
            emit_const_add(out, xh, &ch, &[g], ctrls, mode);
        }
        Mode::Parallel if dirty.len() >= 2 => {
            let (dl, dh) = dirty.split_at(dirty.len().div_ceil(2));
            emit_const_add(out, xl, &cl, dl, ctrls, mode);
            emit_const_add(out, xh, &ch, dh, ctrls, mode);
        }
        Mode::Parallel => {
            emit_const_add(out, xl, &cl, xh, ctrls, mode);
            emit_const_add(out, xh, &ch, xl, ctrls, mode);
        }
    }
}

/// `t ^= [b < c]` when all `ctrls` are 1. Uses `g[..n-1]`.
pub(crate) fn emit_compare(
    out: &mut Vec<Gate>,
    c: &BigUint,
    b: &[Qubit],
    g: &[Qubit],
    t: Qubit,
    ctrls: &[Qubit],
) {
    let n = b.len();
    if c.is_zero() {
        return;
    }
    if c.bits() as usize > n {
        out.push(Gate::x(t).with_controls(ctrls));
        return;
    }
    // carry_out(~b + c) = 1  <=>  c > b
    out.extend(b.iter().map(|&q| Gate::x(q)));
    emit_carry(out, c, b, g, t, ctrls);
    out.extend(b.iter().map(|&q| Gate::x(q)));
}

// ---------------------------------------------------------------------------
// Validated public constructors.

/// Toggles `target` by the carry-out of `a + c` (when every control is 1).
/// `g` supplies `n - 1` dirty qubits; `a` and `g` are restored.
pub fn carry_circuit(
    c: &BigUint,
    a: &[Qubit],
    g: &[Qubit],
    target: Qubit,
    ctrls: &[Qubit],
) -> Result<Circuit> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Invalid(format!(
            "carry circuit needs n >= 2, got {n}"
        )));
    }
    check_ctrls(ctrls)?;
    if g.len() < n - 1 {
        return Err(Error::InsufficientDirty {
            need: n - 1,
            have: g.len(),
        });
    }
    let g = &g[..n - 1];
    ensure_disjoint(&[a, g, &[target], ctrls])?;
    let mut out = Vec::new();
    emit_carry(&mut out, &low_bits(c, n), a, g, target, ctrls);
    Circuit::from_gates(width_of(&[a, g, &[target], ctrls]), out)
}

/// `|x>|y> -> |x + y mod 2^n>|y>` with no ancilla.
pub fn inplace_add(x: &[Qubit], y: &[Qubit]) -> Result<Circuit> {
    if x.len() != y.len() {
        return Err(Error::SizeMismatch(format!(
            "x has {} qubits, y has {}",
            x.len(),
            y.len()
        )));
    }
    ensure_disjoint(&[x, y])?;
    let mut out = Vec::new();
    emit_add(&mut out, x, y);
    Circuit::from_gates(width_of(&[x, y]), out)
}

/// `|x>|g> -> |x + 1 mod 2^m>|g>` borrowing `|x|` dirty qubits.
pub fn incrementer(x: &[Qubit], g: &[Qubit]) -> Result<Circuit> {
    if g.len() < x.len() {
        return Err(Error::InsufficientDirty {
            need: x.len(),
            have: g.len(),
        });
    }
    let g = &g[..x.len()];
    ensure_disjoint(&[x, g])?;
    let mut out = Vec::new();
    emit_increment(&mut out, x, g);
    Circuit::from_gates(width_of(&[x, g]), out)
}

/// `x += 1` iff `ctrl` is 1. Needs `|x|` dirty qubits; `spare` tops up `g`
/// when it is one short.
pub fn ctrl_incrementer(
    x: &[Qubit],
    ctrl: Qubit,
    g: &[Qubit],
    spare: Option<Qubit>,
) -> Result<Circuit> {
    let m = x.len();
    let mut pool: Vec<Qubit> = g.iter().copied().take(m + 1).collect();
    if pool.len() < m + 1 {
        pool.extend(spare);
    }
    let need = if m <= 1 { 0 } else { m };
    if pool.len() < need {
        return Err(Error::InsufficientDirty {
            need,
            have: pool.len(),
        });
    }
    if m <= 1 {
        pool.clear();
    }
    ensure_disjoint(&[x, &[ctrl], &pool])?;
    let mut out = Vec::new();
    emit_ctrl_increment(&mut out, x, ctrl, &pool);
    Circuit::from_gates(width_of(&[x, &[ctrl], &pool]), out)
}

/// `a += c (mod 2^n)`, restoring every dirty qubit.
pub fn const_adder(spec: &AdderSpec) -> Result<Circuit> {
    spec.validate()?;
    let dirty = spec.effective_dirty();
    let mut out = Vec::new();
    emit_const_add(
        &mut out,
        &spec.target,
        &spec.constant,
        dirty,
        &spec.ctrls,
        spec.mode,
    );
    Circuit::from_gates(width_of(&[&spec.target, dirty, &spec.ctrls]), out)
}

/// [`const_adder`] that requires one or two controls.
pub fn ctrl_const_adder(spec: &AdderSpec) -> Result<Circuit> {
    if spec.ctrls.is_empty() {
        return Err(Error::Invalid(
            "controlled adder needs 1 or 2 controls".into(),
        ));
    }
    const_adder(spec)
}

/// `target ^= [b < c]` (when every control is 1); `b` and `g` restored.
pub fn comparator(
    c: &BigUint,
    b: &[Qubit],
    g: &[Qubit],
    target: Qubit,
    ctrls: &[Qubit],
) -> Result<Circuit> {
    let n = b.len();
    if n < 2 {
        return Err(Error::Invalid(format!("comparator needs n >= 2, got {n}")));
    }
    check_ctrls(ctrls)?;
    if g.len() < n - 1 {
        return Err(Error::InsufficientDirty {
            need: n - 1,
            have: g.len(),
        });
    }
    let g = &g[..n - 1];
    ensure_disjoint(&[b, g, &[target], ctrls])?;
    let mut out = Vec::new();
    emit_compare(&mut out, c, b, g, target, ctrls);
    Circuit::from_gates(width_of(&[b, g, &[target], ctrls]), out)
}

/// Toffoli count of [`carry_circuit`] for a constant with `c_0 = 1`.
pub fn carry_toffoli_formula(n: usize) -> usize {
    4 * (n - 2) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, BasisState};

    fn toffolis(c: &Circuit) -> usize {
        c.gates()
            .iter()
            .filter(|g| matches!(g, Gate::Toffoli { .. }))
            .count()
    }

    fn range(lo: usize, n: usize) -> Vec<usize> {
        (lo..lo + n).collect()
    }

    #[test]
    fn carry_examples() {
        // a = 0..4, g = 4..7, t = 7
        let a = range(0, 4);
        let g = range(4, 3);
        let c = carry_circuit(&BigUint::from(11u8), &a, &g, 7, &[]).unwrap();
        for (av, flips) in [(5, true), (4, false)] {
            for gv in 0..8 {
                let mut s = BasisState::zeros(8);
                s.write_u64(&a, av);
                s.write_u64(&g, gv);
                let out = run(&c, &s).unwrap();
                assert_eq!(out.get(7), flips);
                assert_eq!(out.read_u64(&a), av);
                assert_eq!(out.read_u64(&g), gv);
            }
        }
        let all_ones = carry_circuit(&BigUint::from(15u8), &a, &g, 7, &[]).unwrap();
        assert_eq!(toffolis(&all_ones), 10);
    }

    #[test]
    fn carry_exhaustive_n4() {
        let a = range(0, 4);
        let g = range(4, 3);
        for cv in 0u64..16 {
            let circ = carry_circuit(&BigUint::from(cv), &a, &g, 7, &[]).unwrap();
            for av in 0..16 {
                for gv in 0..8 {
                    for t in [false, true] {
                        let mut s = BasisState::zeros(8);
                        s.write_u64(&a, av);
                        s.write_u64(&g, gv);
                        s.set(7, t);
                        let out = run(&circ, &s).unwrap();
                        assert_eq!(out.get(7), t ^ (av + cv >= 16), "c={cv} a={av} g={gv}");
                        assert_eq!(out.read_u64(&a), av);
                        assert_eq!(out.read_u64(&g), gv);
                    }
                }
            }
        }
    }

    #[test]
    fn carry_errors() {
        let one = BigUint::one();
        assert!(carry_circuit(&one, &[0], &[], 1, &[]).is_err());
        assert!(matches!(
            carry_circuit(&one, &[0, 1, 2], &[3], 5, &[]),
            Err(Error::InsufficientDirty { need: 2, have: 1 })
        ));
        assert_eq!(
            carry_circuit(&one, &[0, 1], &[1], 5, &[]),
            Err(Error::Overlap(1))
        );
    }

    #[test]
    fn inplace_add_examples_and_exhaustive() {
        for n in 1..=5usize {
            let x = range(0, n);
            let y = range(n, n);
            let c = inplace_add(&x, &y).unwrap();
            if n >= 2 {
                assert_eq!(toffolis(&c), 2 * n - 3);
            }
            let sub = c.reverse().unwrap();
            let m = 1u64 << n;
            for xv in 0..m {
                for yv in 0..m {
                    let mut s = BasisState::zeros(2 * n);
                    s.write_u64(&x, xv);
                    s.write_u64(&y, yv);
                    let out = run(&c, &s).unwrap();
                    assert_eq!(out.read_u64(&x), (xv + yv) % m);
                    assert_eq!(out.read_u64(&y), yv);
                    let back = run(&sub, &s).unwrap();
                    assert_eq!(back.read_u64(&x), (xv + m - yv) % m);
                }
            }
        }
        assert!(inplace_add(&[0, 1], &[2]).is_err());
    }

    #[test]
    fn incrementer_cases() {
        let x = range(0, 3);
        let g = range(3, 3);
        let c = incrementer(&x, &g).unwrap();
        let mut s = BasisState::zeros(6);
        s.write_u64(&x, 7);
        s.write_u64(&g, 5);
        let out = run(&c, &s).unwrap();
        assert_eq!((out.read_u64(&x), out.read_u64(&g)), (0, 5));

        let x = range(0, 4);
        let g = range(4, 4);
        let c = incrementer(&x, &g).unwrap();
        for gv in 0..16 {
            let mut s = BasisState::zeros(8);
            s.write_u64(&g, gv);
            let out = run(&c, &s).unwrap();
            assert_eq!((out.read_u64(&x), out.read_u64(&g)), (1, gv));
        }

        let c = incrementer(&[0], &[1]).unwrap();
        assert!(run(&c, &BasisState::zeros(2)).unwrap().get(0));
        assert!(incrementer(&[0, 1], &[2]).is_err());
    }

    #[test]
    fn ctrl_incrementer_cases() {
        let x = range(0, 4);
        let g = range(5, 4);
        let c = ctrl_incrementer(&x, 4, &g, None).unwrap();
        for xv in 0..16 {
            for gv in 0..16 {
                for ctrl in [false, true] {
                    let mut s = BasisState::zeros(9);
                    s.write_u64(&x, xv);
                    s.write_u64(&g, gv);
                    s.set(4, ctrl);
                    let out = run(&c, &s).unwrap();
                    assert_eq!(out.read_u64(&x), (xv + ctrl as u64) % 16);
                    assert_eq!(out.read_u64(&g), gv);
                    assert_eq!(out.get(4), ctrl);
                }
            }
        }
        let x = range(0, 8);
        let g = range(9, 8);
        let c = ctrl_incrementer(&x, 8, &g, None).unwrap();
        // 2(2m - 1) for m borrowed qubits, within the 2(2(m+1) - 1) budget
        assert_eq!(toffolis(&c), 30);
        assert!(toffolis(&c) <= 2 * (2 * 9 - 1));
        assert!(ctrl_incrementer(&x, 8, &g[..7], None).is_err());
        assert!(ctrl_incrementer(&x, 8, &g[..7], Some(20)).is_ok());
    }

    #[test]
    fn const_adder_small() {
        let a = range(0, 4);
        let spec = AdderSpec::new(a.clone(), 11u32).dirty(vec![4]);
        let c = const_adder(&spec).unwrap();
        for gv in [false, true] {
            let mut s = BasisState::zeros(5);
            s.write_u64(&a, 5);
            s.set(4, gv);
            let out = run(&c, &s).unwrap();
            assert_eq!(out.read_u64(&a), 0);
            assert_eq!(out.get(4), gv);
        }
        let zero = const_adder(&AdderSpec::new(a.clone(), 0u32).dirty(vec![4])).unwrap();
        assert!(zero.is_empty());
        assert!(const_adder(&AdderSpec::new(a.clone(), 3u32)).is_err());
        let big = AdderSpec::new(a.clone(), 16u32 + 3).dirty(vec![4]);
        assert!(big.was_reduced());
        assert_eq!(big.constant(), &BigUint::from(3u8));
    }

    #[test]
    fn const_adder_toffoli_counts_all_ones() {
        // T(n) = 2 T(n/2) + 8n - 16, T(1) = 0
        for (n, expect) in [(2usize, 0usize), (4, 16), (8, 80), (16, 272)] {
            let a = range(0, n);
            let c = (BigUint::one() << n) - 1u8;
            let circ = const_adder(&AdderSpec::new(a, c).dirty(vec![n])).unwrap();
            assert_eq!(toffolis(&circ), expect, "n={n}");
        }
    }

    #[test]
    fn comparator_examples() {
        let b = range(0, 4);
        let g = range(4, 3);
        let c = comparator(&BigUint::from(8u8), &b, &g, 7, &[]).unwrap();
        for (bv, flips) in [(11, false), (3, true)] {
            let mut s = BasisState::zeros(8);
            s.write_u64(&b, bv);
            let out = run(&c, &s).unwrap();
            assert_eq!(out.get(7), flips);
            assert_eq!(out.read_u64(&b), bv);
        }
    }

    #[test]
    fn comparator_exhaustive_n5() {
        let b = range(0, 5);
        let g = range(5, 4);
        for cv in 0u64..32 {
            let circ = comparator(&BigUint::from(cv), &b, &g, 9, &[]).unwrap();
            for bv in 0..32 {
                let mut s = BasisState::zeros(10);
                s.write_u64(&b, bv);
                s.write_u64(&g, (bv * 7 + cv) % 16);
                let out = run(&circ, &s).unwrap();
                assert_eq!(out.get(9), bv < cv);
                assert_eq!(out.read_u64(&b), bv);
                assert_eq!(out.read_u64(&g), (bv * 7 + cv) % 16);
            }
        }
    }
}

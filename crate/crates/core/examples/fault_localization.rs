//! Locating a silently dropped gate in a 16-bit adder by bisection.
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toffoli_shor::arith::{const_adder, AdderSpec};
use toffoli_shor::faultlab::{call_bound, fault_detect, fault_localize, inject, FaultSpec};
use toffoli_shor::BasisState;

fn main() -> toffoli_shor::Result<()> {
    let n = 16;
    let circuit =
        const_adder(&AdderSpec::new((0..n).collect(), BigUint::from(0xBEEFu32)).dirty(vec![n]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let vectors: Vec<BasisState> = (0..32)
        .map(|_| BasisState::random(circuit.width(), &mut rng))
        .collect();
    for fault in [
        FaultSpec::MissingGate(123),
        FaultSpec::BitFlip {
            after: 400,
            qubit: 3,
        },
    ] {
        let exec = inject(&circuit, &[fault])?;
        println!(
            "{fault}: detected = {}",
            fault_detect(&exec, &circuit, &vectors)?
        );
        exec.reset_calls();
        let ranges = fault_localize(&exec, &circuit, &vectors)?;
        println!(
            "  localized to {ranges:?} with {} segment runs (bound {})",
            exec.calls(),
            call_bound(circuit.len(), vectors.len())
        );
    }
    Ok(())
}

//! Seeded statevector runs with measurement.
use toffoli_shor::statevector::{sv_run, StateVector};
use toffoli_shor::{Circuit, Gate};

fn main() -> toffoli_shor::Result<()> {
    // GHZ on three qubits, then measure all
    let gates = vec![
        Gate::H(0),
        Gate::cx(0, 1),
        Gate::cx(1, 2),
        Gate::Measure(0),
        Gate::Measure(1),
        Gate::Measure(2),
    ];
    let c = Circuit::from_gates(3, gates)?;
    for seed in 0..4 {
        let (state, bits) = sv_run(&c, &StateVector::basis(3, 0)?, seed)?;
        println!("seed {seed}: bits {bits:?}, norm {:.12}", state.norm());
    }
    Ok(())
}

//! Carry of a register plus a constant, computed with borrowed qubits.
use num_bigint::BigUint;
use toffoli_shor::arith::{carry_circuit, carry_toffoli_formula};
use toffoli_shor::resources::report;
use toffoli_shor::sim::run;
use toffoli_shor::BasisState;

fn main() -> toffoli_shor::Result<()> {
    let n = 6;
    let c = BigUint::from(45u32);
    let a: Vec<usize> = (0..n).collect();
    let g: Vec<usize> = (n..2 * n - 1).collect();
    let t = 2 * n - 1;
    let circuit = carry_circuit(&c, &a, &g, t, &[])?;
    println!("carry(n={n}, c={c}): {}", report(&circuit)?);
    println!(
        "all-ones formula at n={n}: {} Toffolis",
        carry_toffoli_formula(n)
    );

    for (x, dirty) in [(18u64, 0b10110u64), (19, 0b01001)] {
        let mut s = BasisState::zeros(circuit.width());
        s.write_u64(&a, x);
        s.write_u64(&g, dirty);
        let out = run(&circuit, &s)?;
        println!(
            "x={x:2} dirty={dirty:05b} -> target={} (x + 45 >= 64: {}), dirty after={:05b}",
            out.get(t) as u8,
            x + 45 >= 64,
            out.read_u64(&g)
        );
    }
    Ok(())
}

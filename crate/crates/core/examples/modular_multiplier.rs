//! Controlled in-place multiplication by 7 modulo 15 on 2n + 2 qubits.
use toffoli_shor::modarith::{ctrl_modmul_inplace, ModMulSpec};
use toffoli_shor::resources::report;
use toffoli_shor::sim::run;
use toffoli_shor::BasisState;

fn main() -> toffoli_shor::Result<()> {
    let spec = ModMulSpec::new(15u32, 7u32, true)?;
    let circuit = ctrl_modmul_inplace(&spec)?;
    let ctrl = spec.control.expect("controlled");
    println!("{}", report(&circuit)?);
    println!(
        "qubits touched: {} (n = {})",
        circuit.touched_qubits().len(),
        spec.n()
    );
    for on in [true, false] {
        let row: Vec<String> = (0..15u64)
            .map(|x| {
                let mut s = BasisState::zeros(circuit.width());
                s.write_u64(&spec.x, x);
                s.set(ctrl, on);
                run(&circuit, &s).map(|o| o.read_u64(&spec.x).to_string())
            })
            .collect::<Result<_, _>>()?;
        println!("ctrl={}: x -> {}", on as u8, row.join(" "));
    }
    Ok(())
}

//! In-place constant addition, serial and parallel recursion compared.
use num_bigint::BigUint;
use num_traits::One;
use toffoli_shor::arith::{const_adder, AdderSpec, Mode};
use toffoli_shor::resources::report;
use toffoli_shor::sim::run;
use toffoli_shor::BasisState;

fn main() -> toffoli_shor::Result<()> {
    let n = 64;
    let c: BigUint = (BigUint::one() << 63u32) + 12345u32;
    let x: Vec<usize> = (0..n).collect();
    for mode in [Mode::Serial, Mode::Parallel] {
        let spec = AdderSpec::new(x.clone(), c.clone())
            .dirty((n..n + n / 2).collect())
            .mode(mode);
        let circuit = const_adder(&spec)?;
        let mut s = BasisState::zeros(circuit.width());
        s.write(&x, &BigUint::from(u64::MAX - 7));
        let out = run(&circuit, &s)?;
        println!("{mode:?}: {}", report(&circuit)?);
        println!("  (2^64 - 8) + c mod 2^64 = {}", out.read(&x));
    }
    Ok(())
}

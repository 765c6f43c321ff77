//! Factoring with the one-control-qubit period finder.
use toffoli_shor::shor::{exact_outcome_distribution, shor_factor};

fn main() -> toffoli_shor::Result<()> {
    for (y, p) in exact_outcome_distribution(15, 7)?
        .into_iter()
        .filter(|(_, p)| *p > 1e-12)
    {
        println!("N=15 a=7: P(y={y:3}) = {p:.6}");
    }
    for modulus in [15, 21, 33] {
        let out = shor_factor(modulus, 10, 7)?;
        print!("{}", out.transcript);
        println!("N={modulus}: {:?}\n", out.factors);
    }
    Ok(())
}

//! Toffoli count and depth of the controlled multiplier, with the
//! leading coefficient fitted against n^2 log2 n.
use toffoli_shor::resources::{fit_leading_coefficient, scaling_table, to_csv, Harness, Model};

fn main() -> toffoli_shor::Result<()> {
    let sizes: Vec<usize> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').map(|t| t.parse().expect("size")).collect())
        .unwrap_or_else(|| vec![8, 16, 32, 64, 128]);
    let rows = scaling_table(&sizes, Harness::CtrlModmul, 0)?;
    print!("{}", to_csv(&rows));
    for r in &rows {
        println!(
            "n={:4}  toffoli / (32 n^2 log2 n) = {:.3}",
            r.n,
            r.toffoli_count as f64 / (32.0 * Model::N2LogN.eval(r.n))
        );
    }
    if rows.len() >= 3 {
        println!(
            "fitted k = {:.2}",
            fit_leading_coefficient(&rows, Model::N2LogN)?
        );
    }
    Ok(())
}

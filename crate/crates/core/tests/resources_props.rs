use toffoli_shor::arith;
use toffoli_shor::modarith::{ctrl_modmul_inplace, ModMulSpec};
use toffoli_shor::resources::{
    adder_harness, report, scaling_table, shor_toffoli_projection, to_csv, Harness, Meter, Model,
    CSV_HEADER,
};
use toffoli_shor::GateSink;

#[test]
fn reports_are_stable_and_consistent() {
    let spec = ModMulSpec::new(21u32, 5u32, true).unwrap();
    let c = ctrl_modmul_inplace(&spec).unwrap();
    let r1 = report(&c).unwrap();
    let r2 = report(&c.clone()).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(r1.t_count, 7 * r1.toffoli_count);
    assert!(r1.depth <= r1.gate_count());
    assert!(r1.width as usize <= c.width());
    let mut streamed = Meter::new();
    spec.emit_inplace(&mut streamed).unwrap();
    assert_eq!(streamed.report(), r1);
}

#[test]
fn adder_rows_match_unrolled_measurement() {
    let rows = scaling_table(&[8, 16, 32, 64], Harness::Adder, 0).unwrap();
    for r in rows {
        let c = arith::const_adder(&adder_harness(r.n)).unwrap();
        assert_eq!(
            r.toffoli_count as usize,
            c.gates()
                .iter()
                .filter(|g| matches!(g, toffoli_shor::Gate::Toffoli { .. }))
                .count()
        );
    }
}

#[test]
fn modmul_rows_increase_and_csv_is_ordered() {
    let sizes = [8, 16, 32, 64];
    let rows = scaling_table(&sizes, Harness::CtrlModmul, 2).unwrap();
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), sizes);
    assert!(rows
        .windows(2)
        .all(|w| w[0].toffoli_count < w[1].toffoli_count));
    let csv = to_csv(&rows);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    for (line, n) in lines.zip(sizes) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[0], n.to_string());
    }
}

#[test]
fn depth_per_toffoli_decreases_in_parallel_mode() {
    let rows = scaling_table(&[16, 32, 64, 128], Harness::CtrlModmul, 0).unwrap();
    let per: Vec<f64> = rows
        .iter()
        .map(|r| r.depth as f64 / r.toffoli_count as f64)
        .collect();
    assert!(per.windows(2).all(|w| w[1] < w[0]), "{per:?}");
}

#[test]
fn full_run_projection_at_64_bits() {
    let n = 64;
    let total = shor_toffoli_projection(n, 0).unwrap();
    let ratio = total as f64 / (64.0 * Model::N3LogN.eval(n));
    assert!((0.7..=1.3).contains(&ratio), "ratio {ratio}");
}

#[test]
fn adder_harness_depth_is_measured_on_the_streamed_gates() {
    let c = arith::const_adder(&adder_harness(32)).unwrap();
    let mut m = Meter::new();
    m.extend_gates(c.gates());
    assert_eq!(m.report(), report(&c).unwrap());
}

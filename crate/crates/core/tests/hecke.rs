use std::sync::OnceLock;

use heckeps::hecke::io::{read_arith_csv, read_tau_csv, write_arith_csv, write_tau_csv};
use heckeps::hecke::{
    build_arithmetic_tables, build_tau_table, build_tau_table_with, hecke_relation_check, ArithmeticTables,
    TauBuildOptions, TauTable, DISCRIMINANT_WEIGHT,
};
use num_integer::Integer;
use proptest::prelude::*;

const LIMIT: u64 = 20_000;

fn arith() -> &'static ArithmeticTables {
    static A: OnceLock<ArithmeticTables> = OnceLock::new();
    A.get_or_init(|| build_arithmetic_tables(2000).unwrap())
}

fn table() -> &'static TauTable {
    static T: OnceLock<TauTable> = OnceLock::new();
    T.get_or_init(|| build_tau_table(LIMIT).unwrap())
}

#[test]
fn known_values() {
    let t = table();
    let known =
        [(1, 1), (2, -24), (3, 252), (4, -1472), (5, 4830), (6, -6048), (7, -16744), (10, -115920), (11, 534612)];
    for (n, tau) in known {
        assert_eq!(t.tau(n), tau, "tau({n})");
    }
    assert_eq!(t.lambda(1), 1.0);
    assert_eq!(t.weight(), DISCRIMINANT_WEIGHT);
}

#[test]
fn parallel_kernel_agrees() {
    let serial = build_tau_table(5000).unwrap();
    let parallel = build_tau_table_with(5000, TauBuildOptions { parallel: true }).unwrap();
    assert_eq!(serial.tau_values(), parallel.tau_values());
}

#[test]
fn csv_round_trip_and_tamper_detection() {
    let t = build_tau_table(300).unwrap();
    let mut buf = Vec::new();
    write_tau_csv(&t, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("n,tau,lambda\n1,1,1.0000000000000000e0\n2,-24,"));
    let back = read_tau_csv(text.as_bytes(), DISCRIMINANT_WEIGHT).unwrap();
    assert_eq!(back, t);
    let tampered = text.replacen("\n3,252,", "\n3,253,", 1);
    assert!(read_tau_csv(tampered.as_bytes(), DISCRIMINANT_WEIGHT).is_err());
    let reordered = text.replacen("\n2,-24,", "\n7,-24,", 1);
    assert!(read_tau_csv(reordered.as_bytes(), DISCRIMINANT_WEIGHT).is_err());

    let arith = build_arithmetic_tables(300).unwrap();
    let mut buf = Vec::new();
    write_arith_csv(&arith, &mut buf).unwrap();
    assert_eq!(read_arith_csv(buf.as_slice()).unwrap(), arith);
}

#[test]
fn arithmetic_tables() {
    let a = build_arithmetic_tables(1000).unwrap();
    assert_eq!(a.moebius(30), -1);
    assert_eq!(a.moebius(12), 0);
    assert_eq!(a.divisors(360), 24);
    assert!((a.von_mangoldt(729) - 3f64.ln()).abs() < 1e-15);
    assert_eq!(a.von_mangoldt(10), 0.0);
    let mertens: i64 = (1..=1000).map(|n| a.moebius(n) as i64).sum();
    assert_eq!(mertens, 2);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, max_global_rejects: 20_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coprime_multiplicativity(m in 1u64..=141, n in 1u64..=141) {
        prop_assume!(m.gcd(&n) == 1);
        let t = table();
        prop_assert_eq!(t.tau(m) * t.tau(n), t.tau(m * n));
    }

    #[test]
    fn hecke_relation(m in 1u64..=200, n in 1u64..=100) {
        prop_assume!(m * n <= LIMIT);
        prop_assert!(hecke_relation_check(m, n, table()).unwrap());
    }

    #[test]
    fn lambda_bounded_by_divisor_count(n in 1u64..=2000) {
        let a = arith();
        let lambda = table().lambda(n);
        prop_assert!(lambda.abs() <= a.divisors(n) as f64 * (1.0 + 1e-15));
    }
}

//! Exact verification of the properties assumed of Hecke eigenvalues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use serde::Serialize;

use super::{build_arithmetic_tables, ArithmeticTables, TauTable};
use crate::error::{Error, Result};
use crate::summation::KahanSum;

fn squarefree_divisors_with_sign(mut g: u64) -> Vec<(u64, i32)> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= g {
        if g % p == 0 {
            primes.push(p);
            while g % p == 0 {
                g /= p;
            }
        }
        p += 1;
    }
    if g > 1 {
        primes.push(g);
    }
    let mut out = vec![(1u64, 1i32)];
    for p in primes {
        let current = out.clone();
        out.extend(current.into_iter().map(|(d, s)| (d * p, -s)));
    }
    out
}

/// `τ(mn) = Σ_{d | (m,n)} μ(d) d^{κ-1} τ(m/d) τ(n/d)`, checked in exact integers.
pub fn hecke_relation_check(m: u64, n: u64, table: &TauTable) -> Result<bool> {
    table.check_index(m)?;
    table.check_index(n)?;
    let mn = m.checked_mul(n).ok_or(Error::OutOfRange { index: u64::MAX, limit: table.limit() })?;
    table.check_index(mn)?;
    let exponent = table.weight() - 1;
    let mut rhs = BigInt::from(0);
    for (d, sign) in squarefree_divisors_with_sign(m.gcd(&n)) {
        let term = BigInt::from(d).pow(exponent) * table.tau(m / d) * table.tau(n / d);
        if sign > 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    Ok(rhs == BigInt::from(table.tau(mn)))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DeligneReport {
    pub checked: u64,
    /// Indices with `τ(n)^2 > d(n)^2 n^{κ-1}`.
    pub violations: Vec<u64>,
    /// Largest `|λ(n)| / d(n)` seen; at most 1 when there are no violations.
    pub max_ratio: f64,
}

impl DeligneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn deligne_check(table: &TauTable) -> DeligneReport {
    let arith = build_arithmetic_tables(table.limit()).expect("table limit is at least 1");
    deligne_check_with(table, &arith)
}

pub fn deligne_check_with(table: &TauTable, arith: &ArithmeticTables) -> DeligneReport {
    let limit = table.limit().min(arith.limit());
    let exponent = table.weight() - 1;
    let mut report = DeligneReport::default();
    for n in 1..=limit {
        let d = arith.divisors(n) as u64;
        let t = BigInt::from(table.tau(n));
        let bound = BigInt::from(d * d) * BigInt::from(n).pow(exponent);
        if &t * &t > bound {
            report.violations.push(n);
        }
        report.max_ratio = report.max_ratio.max(table.lambda(n).abs() / d as f64);
        report.checked += 1;
    }
    report
}

/// `Σ_{n <= upper} Λ(n) λ(n)`, accumulated in increasing `n`.
pub fn pnt_hecke_sum(upper: u64, table: &TauTable, arith: &ArithmeticTables) -> Result<f64> {
    let limit = table.limit().min(arith.limit());
    if upper > limit {
        return Err(Error::TableUnderflow { limit, required: upper });
    }
    Ok((1..=upper).map(|n| arith.von_mangoldt(n) * table.lambda(n)).collect::<KahanSum>().value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::build_tau_table;

    #[test]
    fn relation_examples() {
        let t = build_tau_table(100).unwrap();
        assert!(hecke_relation_check(2, 3, &t).unwrap());
        assert_eq!(t.tau(6), -6048);
        assert!(hecke_relation_check(2, 2, &t).unwrap());
        assert_eq!(t.tau(4), 576 - 2048);
        for k in 1..=100 {
            assert!(hecke_relation_check(1, k, &t).unwrap());
        }
        assert!(hecke_relation_check(11, 10, &t).is_err());
        assert!(hecke_relation_check(0, 3, &t).is_err());
    }

    #[test]
    fn relation_detects_corruption() {
        let mut values = build_tau_table(12).unwrap().tau_values().to_vec();
        values[5] += 1; // tau(6)
        let bad = TauTable::from_coefficients(12, values).unwrap();
        assert!(!hecke_relation_check(2, 3, &bad).unwrap());
    }

    #[test]
    fn deligne_small() {
        let t = build_tau_table(10_000).unwrap();
        let r = deligne_check(&t);
        assert!(r.passed());
        assert_eq!(r.checked, 10_000);
        assert!(r.max_ratio <= 1.0);
        // n = 1 holds with equality, n = 2 is 576 <= 4 * 2048
        assert_eq!(t.tau(1) * t.tau(1), 1);
        assert!(t.tau(2) * t.tau(2) <= 4 * 2048);
    }

    #[test]
    fn pnt_small() {
        let t = build_tau_table(10).unwrap();
        let a = build_arithmetic_tables(10).unwrap();
        assert_eq!(pnt_hecke_sum(1, &t, &a).unwrap(), 0.0);
        assert!((pnt_hecke_sum(2, &t, &a).unwrap() - (-0.367_596_803_800_705_2)).abs() < 1e-15);
        assert!(pnt_hecke_sum(11, &t, &a).is_err());
    }

    #[test]
    fn squarefree_divisors() {
        let mut d = squarefree_divisors_with_sign(12);
        d.sort();
        assert_eq!(d, vec![(1, 1), (2, -1), (3, -1), (6, 1)]);
    }
}

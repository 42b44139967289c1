//! CSV schema `n,tau,lambda` for eigenvalue tables, and `n,von_mangoldt,moebius,divisors`
//! for the arithmetic sidecar.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::checks::deligne_check_with;
use super::{build_arithmetic_tables, normalize, ArithmeticTables, TauTable};
use crate::error::{Error, Result};

/// `{:.16e}` prints 17 significant digits, enough to round-trip any f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
struct TauRow {
    n: u64,
    tau: String,
    lambda: String,
}

pub fn write_tau_csv<W: Write>(table: &TauTable, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for n in 1..=table.limit() {
        w.serialize(TauRow { n, tau: table.tau(n).to_string(), lambda: format_f64(table.lambda(n)) })?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        f64::MIN_POSITIVE
    } else {
        f64::from_bits(a.to_bits() + 1) - a
    }
}

/// Reads a table in the export schema and validates it: rows are `1..=N` in order,
/// `a(1) = 1`, `λ(n)` agrees with `a(n) n^{-(κ-1)/2}` to one ulp, and
/// `a(n)^2 <= d(n)^2 n^{κ-1}` holds exactly.
pub fn read_tau_csv<R: Read>(reader: R, weight: u32) -> Result<TauTable> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut coefficients = Vec::new();
    let mut lambdas = Vec::new();
    for (i, row) in rdr.deserialize::<TauRow>().enumerate() {
        let row = row?;
        let expected = i as u64 + 1;
        if row.n != expected {
            return Err(Error::Validation { n: row.n, reason: format!("expected row n = {expected}") });
        }
        let tau: i128 = row.tau.trim().parse().map_err(|_| Error::Validation {
            n: row.n,
            reason: format!("tau `{}` is not an integer in 128-bit range", row.tau),
        })?;
        let lambda: f64 = row
            .lambda
            .trim()
            .parse()
            .map_err(|_| Error::Validation { n: row.n, reason: format!("lambda `{}` is not a float", row.lambda) })?;
        coefficients.push(tau);
        lambdas.push(lambda);
    }
    if coefficients.is_empty() {
        return Err(Error::Validation { n: 0, reason: "empty table".into() });
    }
    if coefficients[0] != 1 {
        return Err(Error::Validation { n: 1, reason: "eigenform is not normalised: a(1) != 1".into() });
    }
    let table = TauTable::from_coefficients(weight, coefficients)?;
    for (i, &lambda) in lambdas.iter().enumerate() {
        let n = i as u64 + 1;
        let recomputed = normalize(weight, n, table.tau(n));
        if (lambda - recomputed).abs() > ulp(recomputed) {
            return Err(Error::Validation {
                n,
                reason: format!("lambda {lambda:e} disagrees with tau/n^((k-1)/2) = {recomputed:e}"),
            });
        }
    }
    let arith = build_arithmetic_tables(table.limit())?;
    let deligne = deligne_check_with(&table, &arith);
    if let Some(&n) = deligne.violations.first() {
        return Err(Error::Validation { n, reason: "violates |a(n)| <= d(n) n^((k-1)/2)".into() });
    }
    Ok(table)
}

#[derive(Debug, Serialize, Deserialize)]
struct ArithRow {
    n: u64,
    von_mangoldt: String,
    moebius: i8,
    divisors: u32,
}

pub fn write_arith_csv<W: Write>(tables: &ArithmeticTables, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for n in 1..=tables.limit() {
        w.serialize(ArithRow {
            n,
            von_mangoldt: format_f64(tables.von_mangoldt(n)),
            moebius: tables.moebius(n),
            divisors: tables.divisors(n),
        })?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Reads the sidecar and checks every row against a fresh sieve of the same length.
pub fn read_arith_csv<R: Read>(reader: R) -> Result<ArithmeticTables> {
    let mut rdr = csv::Reader::from_reader(reader);
    let rows: Vec<ArithRow> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
    if rows.is_empty() {
        return Err(Error::Validation { n: 0, reason: "empty table".into() });
    }
    let fresh = build_arithmetic_tables(rows.len() as u64)?;
    for (i, row) in rows.iter().enumerate() {
        let n = i as u64 + 1;
        let lambda: f64 = row
            .von_mangoldt
            .parse()
            .map_err(|_| Error::Validation { n, reason: "von_mangoldt is not a float".into() })?;
        if row.n != n
            || row.moebius != fresh.moebius(n)
            || row.divisors != fresh.divisors(n)
            || lambda != fresh.von_mangoldt(n)
        {
            return Err(Error::Validation { n, reason: "arithmetic row does not match the sieve".into() });
        }
    }
    Ok(fresh)
}

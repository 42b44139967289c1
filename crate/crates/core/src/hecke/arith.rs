//! Linear sieve for the von Mangoldt, Moebius and divisor functions.

use crate::error::{Error, Result};

/// Λ(n), μ(n) and d(n) for `1 <= n <= limit`. Index 0 is a placeholder.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticTables {
    limit: u64,
    von_mangoldt: Vec<f64>,
    moebius: Vec<i8>,
    divisors: Vec<u32>,
    /// `p` when `n = p^k` with `k >= 1`, else 0. Exact companion of `von_mangoldt`.
    prime_power_base: Vec<u32>,
}

impl ArithmeticTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn von_mangoldt(&self, n: u64) -> f64 {
        self.von_mangoldt[n as usize]
    }

    #[inline]
    pub fn moebius(&self, n: u64) -> i8 {
        self.moebius[n as usize]
    }

    #[inline]
    pub fn divisors(&self, n: u64) -> u32 {
        self.divisors[n as usize]
    }

    /// `(p, k)` with `n = p^k`, when `n` is a prime power.
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        let p = self.prime_power_base[n as usize] as u64;
        if p == 0 {
            return None;
        }
        let mut k = 0;
        let mut m = n;
        while m > 1 {
            m /= p;
            k += 1;
        }
        Some((p, k))
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.prime_power_base[n as usize] as u64 == n
    }

    pub fn von_mangoldt_slice(&self) -> &[f64] {
        &self.von_mangoldt
    }

    pub fn moebius_slice(&self) -> &[i8] {
        &self.moebius
    }

    pub fn divisors_slice(&self) -> &[u32] {
        &self.divisors
    }
}

pub fn build_arithmetic_tables(limit: u64) -> Result<ArithmeticTables> {
    if limit == 0 {
        return Err(Error::param("limit", "must be at least 1"));
    }
    if limit > u32::MAX as u64 {
        return Err(Error::param("limit", "sieve limit must fit in 32 bits"));
    }
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes: Vec<u32> = Vec::new();
    // exponent of spf(n) in n, and n with that prime power removed
    let mut exponent = vec![0u32; len];
    let mut cofactor = vec![0u32; len];
    let mut moebius = vec![0i8; len];
    let mut divisors = vec![0u32; len];
    let mut prime_power_base = vec![0u32; len];
    let mut von_mangoldt = vec![0.0f64; len];

    moebius[1] = 1;
    divisors[1] = 1;
    for n in 2..len {
        if spf[n] == 0 {
            spf[n] = n as u32;
            primes.push(n as u32);
        }
        let p = spf[n];
        for &q in &primes {
            if q > p {
                break;
            }
            let m = n * q as usize;
            if m >= len {
                break;
            }
            spf[m] = q;
        }

        let m = n / p as usize;
        if m > 1 && spf[m] == p {
            exponent[n] = exponent[m] + 1;
            cofactor[n] = cofactor[m];
            moebius[n] = 0;
        } else {
            exponent[n] = 1;
            cofactor[n] = m as u32;
            moebius[n] = -moebius[m];
        }
        divisors[n] = divisors[cofactor[n] as usize] * (exponent[n] + 1);
        if cofactor[n] == 1 {
            prime_power_base[n] = p;
            von_mangoldt[n] = (p as f64).ln();
        }
    }

    Ok(ArithmeticTables { limit, von_mangoldt, moebius, divisors, prime_power_base })
}

//! Exact Ramanujan tau values and the normalised Hecke eigenvalues
//! `λ(n) = τ(n) / n^{(κ-1)/2}`.
//!
//! `Δ = q ∏ (1 - q^m)^24`. The product without `q` is the 24th power of
//! Euler's function, whose expansion `Σ (-1)^k q^{k(3k-1)/2}` has only
//! `O(√N)` nonzero terms below `N`, so each of the 24 multiplications is a
//! dense-by-sparse pass with unit coefficients.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Weight of the discriminant form Δ.
pub const DISCRIMINANT_WEIGHT: u32 = 12;

/// Largest limit accepted by [`tau_oracle_naive`]; its cost is quadratic.
pub const NAIVE_ORACLE_CAP: u64 = 5000;

/// Exact Fourier coefficients of a Hecke eigenform and their normalised values.
///
/// Index 0 of the backing vectors is unused so that `tau(n)` reads `tau[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauTable {
    weight: u32,
    tau: Vec<i128>,
    lambda: Vec<f64>,
}

impl TauTable {
    /// Table from exact coefficients `a(1), a(2), ...` of a weight-`weight` eigenform.
    pub fn from_coefficients(weight: u32, coefficients: Vec<i128>) -> Result<Self> {
        if weight < 2 || weight % 2 == 1 {
            return Err(Error::param("weight", "must be an even integer >= 2"));
        }
        if coefficients.is_empty() {
            return Err(Error::param("limit", "must be at least 1"));
        }
        let mut tau = Vec::with_capacity(coefficients.len() + 1);
        tau.push(0);
        tau.extend(coefficients);
        let lambda = (0..tau.len()).map(|n| if n == 0 { 0.0 } else { normalize(weight, n as u64, tau[n]) }).collect();
        Ok(TauTable { weight, tau, lambda })
    }

    pub fn limit(&self) -> u64 {
        (self.tau.len() - 1) as u64
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    #[inline]
    pub fn tau(&self, n: u64) -> i128 {
        self.tau[n as usize]
    }

    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    /// `τ(1), ..., τ(limit)`.
    pub fn tau_values(&self) -> &[i128] {
        &self.tau[1..]
    }

    /// `λ(1), ..., λ(limit)`.
    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda[1..]
    }

    pub(crate) fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit() {
            return Err(Error::OutOfRange { index: n, limit: self.limit() });
        }
        Ok(())
    }

    /// Copy restricted to `1..=limit`.
    pub fn truncated(&self, limit: u64) -> Result<TauTable> {
        self.check_index(limit)?;
        let end = limit as usize + 1;
        Ok(TauTable { weight: self.weight, tau: self.tau[..end].to_vec(), lambda: self.lambda[..end].to_vec() })
    }
}

/// `a(n) / n^{(weight-1)/2}` rounded from a double-double quotient, so the
/// result is within one ulp of the exact value.
pub fn normalize(weight: u32, n: u64, a: i128) -> f64 {
    let half_int = (weight as i32 - 2) / 2;
    let nn = TwoFloat::from(n as f64);
    let denominator = nn.powi(half_int) * nn.sqrt();
    (TwoFloat::from(a) / denominator).hi()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TauBuildOptions {
    /// Split each sparse multiplication into output blocks across the rayon pool.
    /// Produces the same table as the serial path.
    pub parallel: bool,
}

pub fn build_tau_table(limit: u64) -> Result<TauTable> {
    build_tau_table_with(limit, TauBuildOptions::default())
}

pub fn build_tau_table_with(limit: u64, options: TauBuildOptions) -> Result<TauTable> {
    if limit == 0 {
        return Err(Error::param("limit", "must be at least 1"));
    }
    let degree = (limit - 1) as usize;
    let terms = euler_terms(degree);
    let product = match eta24_fixed(degree, &terms, options.parallel) {
        Some(v) => v,
        None => narrow(eta24_bigint(degree, &terms))?,
    };
    TauTable::from_coefficients(DISCRIMINANT_WEIGHT, product)
}

/// Nonzero terms `(exponent, sign)` of `∏ (1 - q^m)` with `0 < exponent <= degree`,
/// sorted by exponent. The constant term 1 is implicit.
fn euler_terms(degree: usize) -> Vec<(usize, bool)> {
    let mut terms = Vec::new();
    for k in 1usize.. {
        let low = k * (3 * k - 1) / 2;
        if low > degree {
            break;
        }
        let negative = k % 2 == 1;
        terms.push((low, negative));
        let high = k * (3 * k + 1) / 2;
        if high <= degree {
            terms.push((high, negative));
        }
    }
    terms.sort_unstable_by_key(|t| t.0);
    terms
}

/// 24 sparse passes in checked `i128`. `None` on any overflow.
fn eta24_fixed(degree: usize, terms: &[(usize, bool)], parallel: bool) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; degree + 1];
    acc[0] = 1;
    for _ in 0..24 {
        if parallel {
            acc = sparse_pass_blocks(&acc, terms)?;
        } else {
            sparse_pass_in_place(&mut acc, terms)?;
        }
    }
    Some(acc)
}

// Descending order: acc[n - e] with e > 0 is still the previous pass's value.
fn sparse_pass_in_place(acc: &mut [i128], terms: &[(usize, bool)]) -> Option<()> {
    for n in (1..acc.len()).rev() {
        let mut value = acc[n];
        for &(e, negative) in terms {
            if e > n {
                break;
            }
            let src = acc[n - e];
            value = if negative { value.checked_sub(src)? } else { value.checked_add(src)? };
        }
        acc[n] = value;
    }
    Some(())
}

const BLOCK: usize = 4096;

fn sparse_pass_blocks(old: &[i128], terms: &[(usize, bool)]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; old.len()];
    let ok = out.par_chunks_mut(BLOCK).enumerate().all(|(block, chunk)| {
        let base = block * BLOCK;
        for (i, slot) in chunk.iter_mut().enumerate() {
            let n = base + i;
            let mut value = old[n];
            for &(e, negative) in terms {
                if e > n {
                    break;
                }
                let src = old[n - e];
                let next = if negative { value.checked_sub(src) } else { value.checked_add(src) };
                match next {
                    Some(v) => value = v,
                    None => return false,
                }
            }
            *slot = value;
        }
        true
    });
    ok.then_some(out)
}

fn eta24_bigint(degree: usize, terms: &[(usize, bool)]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); degree + 1];
    acc[0] = BigInt::from(1);
    for _ in 0..24 {
        for n in (1..=degree).rev() {
            let mut value = acc[n].clone();
            for &(e, negative) in terms {
                if e > n {
                    break;
                }
                if negative {
                    value -= &acc[n - e];
                } else {
                    value += &acc[n - e];
                }
            }
            acc[n] = value;
        }
    }
    acc
}

fn narrow(values: Vec<BigInt>) -> Result<Vec<i128>> {
    values.iter().enumerate().map(|(i, v)| v.to_i128().ok_or(Error::Overflow { n: i as u64 + 1 })).collect()
}

/// `τ(1), ..., τ(limit)` by dense multiplication of `q ∏_{m <= limit} (1 - q^m)^24`,
/// one linear factor at a time, in arbitrary precision.
pub fn tau_oracle_naive(limit: u64) -> Result<Vec<BigInt>> {
    if limit == 0 {
        return Err(Error::param("limit", "must be at least 1"));
    }
    if limit > NAIVE_ORACLE_CAP {
        return Err(Error::param("limit", format!("naive oracle is capped at {NAIVE_ORACLE_CAP}")));
    }
    let degree = (limit - 1) as usize;
    let mut poly = vec![BigInt::zero(); degree + 1];
    poly[0] = BigInt::from(1);
    for m in 1..=degree {
        for _ in 0..24 {
            for i in (m..=degree).rev() {
                let (lo, hi) = poly.split_at_mut(i);
                hi[0] -= &lo[i - m];
            }
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let t = build_tau_table(6).unwrap();
        assert_eq!(t.tau_values(), &[1, -24, 252, -1472, 4830, -6048]);
        assert_eq!(build_tau_table(1).unwrap().tau(1), 1);
        assert_eq!(t.lambda(1), 1.0);
    }

    #[test]
    fn normalised_two() {
        let t = build_tau_table(2).unwrap();
        // -24 * 2^{-11/2}, high-precision reference
        assert!((t.lambda(2) - (-0.530_330_085_889_910_6)).abs() < 1e-15);
    }

    #[test]
    fn naive_oracle_small() {
        assert_eq!(tau_oracle_naive(1).unwrap(), vec![BigInt::from(1)]);
        let naive = tau_oracle_naive(5).unwrap();
        let fast = build_tau_table(5).unwrap();
        for (a, b) in naive.iter().zip(fast.tau_values()) {
            assert_eq!(*a, BigInt::from(*b));
        }
        assert!(tau_oracle_naive(NAIVE_ORACLE_CAP + 1).is_err());
        assert!(tau_oracle_naive(0).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = build_tau_table(20_000).unwrap();
        let parallel = build_tau_table_with(20_000, TauBuildOptions { parallel: true }).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn bigint_path_matches_fixed() {
        let degree = 300;
        let terms = euler_terms(degree);
        let fixed = eta24_fixed(degree, &terms, false).unwrap();
        let big = narrow(eta24_bigint(degree, &terms)).unwrap();
        assert_eq!(fixed, big);
    }

    #[test]
    fn euler_terms_are_pentagonal() {
        let t = euler_terms(40);
        let exps: Vec<usize> = t.iter().map(|x| x.0).collect();
        assert_eq!(exps, vec![1, 2, 5, 7, 12, 15, 22, 26, 35, 40]);
        assert!(t[0].1 && t[1].1 && !t[2].1 && !t[3].1);
    }

    #[test]
    fn narrowing_overflow_is_reported() {
        let huge = BigInt::from(i128::MAX) * 4;
        let err = narrow(vec![BigInt::from(1), huge]).unwrap_err();
        assert!(matches!(err, Error::Overflow { n: 2 }));
    }
}

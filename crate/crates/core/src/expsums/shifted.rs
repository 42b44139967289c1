use num_integer::Integer;
use serde::Serialize;

use super::weights::SmoothWeightSpec;
use super::ENVELOPE_EPSILON;
use crate::error::{Error, Result};
use crate::hecke::TauTable;
use crate::summation::KahanSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShiftSign {
    /// `am - bn = h`
    Minus,
    /// `am + bn = h`
    Plus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftedReport {
    pub value: f64,
    /// Solutions `(m, n)` with `(am, bn)` in the closed support.
    pub terms: usize,
    pub empty: bool,
    /// `P^{5/4} (X+Y)^{1/4} (XY)^{1/4+ε}`.
    pub envelope: f64,
    pub ratio: f64,
}

/// `D(a, b; h) = Σ_{am ∓ bn = h} λ(m) λ(n) g(am, bn)`, summed in `n` order.
pub fn shifted_convolution(
    a: u64,
    b: u64,
    h: i64,
    sign: ShiftSign,
    w: &SmoothWeightSpec,
    table: &TauTable,
) -> Result<ShiftedReport> {
    if a == 0 || b == 0 {
        return Err(Error::param("a, b", "must be positive"));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::param("a, b", format!("gcd({a}, {b}) != 1")));
    }
    if h == 0 {
        return Err(Error::param("h", "must be nonzero"));
    }
    let (x0, x1) = w.x_support();
    let (y0, y1) = w.y_support();
    let m_max = (x1 / a as f64).floor() as u64;
    let n_min = (y0 / b as f64).ceil().max(1.0) as u64;
    let n_max = (y1 / b as f64).floor() as u64;
    if m_max.max(n_max) > table.limit() {
        return Err(Error::TableUnderflow { limit: table.limit(), required: m_max.max(n_max) });
    }
    let mut acc = KahanSum::new();
    let mut terms = 0;
    for n in n_min..=n_max {
        let bn = (b * n) as i128;
        let am = match sign {
            ShiftSign::Minus => h as i128 + bn,
            ShiftSign::Plus => h as i128 - bn,
        };
        if am <= 0 || am % a as i128 != 0 {
            continue;
        }
        let (xf, yf) = (am as f64, bn as f64);
        if xf < x0 || xf > x1 {
            continue;
        }
        let m = (am / a as i128) as u64;
        terms += 1;
        acc.add(table.lambda(m) * table.lambda(n) * w.weight(xf, yf));
    }
    let (x, y) = (w.x_scale, w.y_scale);
    let envelope = w.p.powf(1.25) * (x + y).powf(0.25) * (x * y).powf(0.25 + ENVELOPE_EPSILON);
    let value = acc.value();
    Ok(ShiftedReport { value, terms, empty: terms == 0, envelope, ratio: value.abs() / envelope })
}

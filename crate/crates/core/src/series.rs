//! Truncated power series with exact rational coefficients.
//!
//! The Chern character of the reduced Hopf class is `e^x - 1`, so powers of
//! that series give the Chern character of `eta^k`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, surjections, surjections_row, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(max_deg: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); max_deg + 1],
        }
    }

    /// Builds a series from its leading coefficients; missing ones are zero,
    /// extra ones are dropped.
    pub fn from_coeffs(max_deg: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(max_deg);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `e^x - 1` truncated at `max_deg`.
    pub fn exp_minus_one(max_deg: usize) -> Self {
        let mut s = Self::zero(max_deg);
        let mut fact = BigInt::one();
        for m in 1..=max_deg {
            fact *= m;
            s.coeffs[m] = Rational::new(BigInt::one(), fact.clone());
        }
        s
    }

    pub fn max_deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self^k` truncated at `max_deg`, by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::zero(self.max_deg());
        acc.coeffs[0] = Rational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let deg = self.max_deg().min(rhs.max_deg());
        TruncatedSeries {
            coeffs: (0..=deg)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let deg = self.max_deg().min(rhs.max_deg());
        let mut out = TruncatedSeries::zero(deg);
        for (i, a) in self.coeffs.iter().enumerate().take(deg + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(deg + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.max_deg() + 1)
    }
}

/// `(e^x - 1)^k` truncated at `max_deg`.
pub fn exp_minus_one_pow(k: u32, max_deg: usize) -> TruncatedSeries {
    TruncatedSeries::exp_minus_one(max_deg).pow(k)
}

/// Which formula produces the top Chern-character coefficient of `u xi_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// `[x^{2n-1}] (e^x - 1)^k`.
    #[default]
    Series,
    /// The composition sum
    /// `sum_{r_1+..+r_k = 2n-1, r_i >= 1} (2n-1)!/(r_1!..r_k!) * 1/((2r_1-1)!..(2r_k-1)!)`.
    ///
    /// Kept only to exhibit its disagreement with the series convention.
    Printed,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Series => "series",
            Backend::Printed => "printed",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Backend::Series),
            "printed" => Ok(Backend::Printed),
            other => Err(Error::BadQuery(format!("unknown backend {other:?}"))),
        }
    }
}

/// Top coefficient (degree `2n - 1` in the hyperplane variable) of `ch(u xi_k)` on
/// the triple suspension of the rank-`n` quasi-projective space.
pub fn top_coeff(n: u32, k: u32, backend: Backend) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if k == 0 || k > n {
        return Err(Error::OutOfRange { n, k });
    }
    let m = 2 * n - 1;
    Ok(match backend {
        Backend::Series => Rational::new(surjections(m, k), factorial(m)),
        Backend::Printed => printed_coeffs(n, k)[k as usize].clone(),
    })
}

/// Top coefficients for every `k` in `1..=n` under the given backend; index 0 is unused.
pub fn top_coeffs(n: u32, backend: Backend) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let m = 2 * n - 1;
    Ok(match backend {
        Backend::Series => {
            let fact = factorial(m);
            surjections_row(m, n)
                .into_iter()
                .map(|s| Rational::new(s, fact.clone()))
                .collect()
        }
        Backend::Printed => printed_coeffs(n, n),
    })
}

/// Printed composition sums for all part counts `0..=k_max`.
///
/// The sum over compositions factors as `(2n-1)! [x^{2n-1}] g(x)^k` with
/// `g(x) = sum_{r>=1} x^r / (r! (2r-1)!)`.
fn printed_coeffs(n: u32, k_max: u32) -> Vec<Rational> {
    let m = (2 * n - 1) as usize;
    let mut g = TruncatedSeries::zero(m);
    for r in 1..=m as u32 {
        g.coeffs[r as usize] = Rational::new(BigInt::one(), factorial(r) * factorial(2 * r - 1));
    }
    let fact = Rational::from_integer(factorial(m as u32));
    let mut acc = TruncatedSeries::zero(m);
    acc.coeffs[0] = Rational::one();
    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        if k > 0 {
            acc = &acc * &g;
        }
        out.push(&acc.coeffs[m] * &fact);
    }
    out
}

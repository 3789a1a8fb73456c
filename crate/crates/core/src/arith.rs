//! Exact integer and rational helpers.
//!
//! Everything here works on arbitrary-precision values; nothing in the crate
//! touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Checked division; `Rational`'s own `/` panics on a zero divisor.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Nonnegative generator of the ideal `aZ + bZ`. `gcd(0, 0) = 0`.
pub fn gcd_nonneg(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn lcm_nonneg(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| gcd_nonneg(&acc, v))
}

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exponent `r` with `p^r || a`.
pub fn p_exponent(a: &BigInt, p: u64) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    check_prime(p)?;
    let p = BigInt::from(p);
    let mut rest = a.abs();
    let mut r = 0;
    loop {
        let (q, rem) = rest.div_rem(&p);
        if !rem.is_zero() {
            return Ok(r);
        }
        rest = q;
        r += 1;
    }
}

/// The p-part `p^r` of a nonzero integer, where `p^r` divides `a` and `p^{r+1}` does not.
///
/// This returns the prime power itself, not the exponent; see [`p_exponent`].
pub fn p_part(a: &BigInt, p: u64) -> Result<BigInt> {
    let r = p_exponent(a, p)?;
    Ok(num_traits::pow(BigInt::from(p), r as usize))
}

/// Positive generator of the additive subgroup of Q spanned by `values`.
///
/// Clears denominators by their lcm, takes the gcd of the resulting integers
/// and scales back.
pub fn frac_gcd(values: &[Rational]) -> Result<Rational> {
    if values.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| lcm_nonneg(&acc, v.denom()));
    let nums: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    Ok(Rational::new(gcd_all(&nums), den))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of surjections from an `m`-set onto a `k`-set, by inclusion-exclusion:
/// `sum_{j=0..k} (-1)^j C(k,j) (k-j)^m`.
pub fn surjections(m: u32, k: u32) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    let mut c = BigInt::one();
    for j in 0..=k {
        let term = &c * num_traits::pow(BigInt::from(k - j), m as usize);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        c = c * (k - j) / (j + 1);
    }
    total
}

/// `surjections(m, k)` for every `k` in `0..=k_max`, sharing one table of powers `i^m`.
pub fn surjections_row(m: u32, k_max: u32) -> Vec<BigInt> {
    let k_max = k_max.min(m.max(1));
    let powers: Vec<BigInt> = (0..=k_max)
        .map(|i| num_traits::pow(BigInt::from(i), m as usize))
        .collect();
    (0..=k_max)
        .map(|k| {
            // sum_i (-1)^(k-i) C(k,i) i^m
            let mut total = BigInt::zero();
            let mut c = BigInt::one();
            for i in 0..=k {
                let term = &c * &powers[i as usize];
                if (k - i) % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
                c = c * (k - i) / (i + 1);
            }
            if k > m {
                BigInt::zero()
            } else {
                total
            }
        })
        .collect()
}

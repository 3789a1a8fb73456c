//! The map `Phi: KSp~^{-2}(Sigma^3 Q_n) -> H^{4n+2}(Sigma^3 Q_n) = Z` and the order of
//! the Samelson product `<epsilon, iota_n>` in `Sp(n)`.
//!
//! `Phi(xi) = +-(2n+1)! ch_{4n+2}(u^{-1} c'(xi))`. Only the absolute value matters
//! for subgroups and orders, so the sign is dropped throughout.
//!
//! The image is bracketed from both sides: `Phi(zeta_1)` lies in it (lower
//! bound) and it lies in the span of the images of `c'(zeta_1), u^2 xi_2, ...,
//! u^2 xi_n` (upper bound). When the two agree the order of the target class
//! `Sigma^3 y_{4n-1}` in the cokernel is pinned.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{factorial, frac_gcd, gcd_all, is_prime, p_part, Rational};
use crate::chdata::{phi_generator_tops, zeta1_top};
use crate::error::{Error, Result};
use crate::lattice::{element_order_in_coker, ElementOrder, IntMatrix};
use crate::series::Backend;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiResult {
    pub n: u32,
    /// `Phi(zeta_1)`, always `4n(2n+1)`.
    pub lower_gen: BigInt,
    /// Images of the full generating set, `c'(zeta_1)` first.
    pub upper_gens: Vec<BigInt>,
    /// Generator of the image, set only when the bounds meet.
    pub pinned_order: Option<BigInt>,
    pub backend: Backend,
}

impl PhiResult {
    pub fn upper_gcd(&self) -> BigInt {
        gcd_all(&self.upper_gens)
    }

    pub fn is_pinned(&self) -> bool {
        self.pinned_order.is_some()
    }
}

/// `4n(2n+1)`.
pub fn closed_form_order(n: u32) -> BigInt {
    BigInt::from(4u64 * n as u64 * (2 * n as u64 + 1))
}

fn integral(r: &Rational, n: u32, index: usize) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegralGenerator { n, index })
    }
}

pub fn phi_image(n: u32, backend: Backend) -> Result<PhiResult> {
    let tops = phi_generator_tops(n, backend)?;
    let scale = Rational::from_integer(factorial(2 * n + 1));
    let lower_gen = integral(&(zeta1_top(n) * &scale), n, 0)?;
    let upper_gens = tops
        .iter()
        .enumerate()
        .map(|(i, t)| integral(&(t * &scale), n, i))
        .collect::<Result<Vec<_>>>()?;
    let g = gcd_all(&upper_gens);
    let pinned_order = (g == lower_gen).then_some(g);
    Ok(PhiResult {
        n,
        lower_gen,
        upper_gens,
        pinned_order,
        backend,
    })
}

/// Generator of the image through the rational-gcd route:
/// `(2n+1)! * gcd(ch tops)`.
pub fn image_generator_direct(n: u32, backend: Backend) -> Result<BigInt> {
    let tops = phi_generator_tops(n, backend)?;
    let g = frac_gcd(&tops)? * Rational::from_integer(factorial(2 * n + 1));
    integral(&g, n, 0)
}

/// Order of the target class in the cokernel, from the Smith form of the
/// `1 x n` presentation of the image.
pub fn target_order_lattice(phi: &PhiResult) -> Result<ElementOrder> {
    let presentation = IntMatrix::row_vector(&phi.upper_gens);
    element_order_in_coker(&presentation, &[BigInt::one()])
}

/// Order of `<epsilon, iota_n>`.
///
/// Computed through the lattice engine and the direct gcd, which must agree,
/// then checked against `4n(2n+1)`.
pub fn samelson_order_eps_iota(n: u32) -> Result<BigInt> {
    let phi = phi_image(n, Backend::Series)?;
    let pinned = phi.pinned_order.clone().ok_or_else(|| Error::Unpinned {
        n,
        gcd: phi.upper_gcd(),
        lower: phi.lower_gen.clone(),
    })?;
    let lattice = match target_order_lattice(&phi)? {
        ElementOrder::Finite(m) => m,
        ElementOrder::Infinite => {
            return Err(Error::OracleDisagreement {
                n,
                direct: pinned,
                lattice: BigInt::from(0),
            })
        }
    };
    let direct = image_generator_direct(n, Backend::Series)?;
    if direct != lattice || direct != pinned {
        return Err(Error::OracleDisagreement {
            n,
            direct,
            lattice,
        });
    }
    let closed = closed_form_order(n);
    if lattice != closed {
        return Err(Error::ClosedFormMismatch {
            n,
            computed: lattice,
            closed,
        });
    }
    Ok(lattice)
}

/// `(p-1)^2 + 1 >= 2n`, the range in which `Sp(n)` is retractible at `p`.
pub fn sp_guard(n: u32, p: u64) -> bool {
    let q = p.saturating_sub(1) as u128;
    q * q + 1 >= 2 * n as u128
}

/// p-part of the order of `<epsilon, 1_{Sp(n)}>`, which equals that of
/// `<epsilon, iota_n>` inside the retractible range.
pub fn samelson_p_part_full(n: u32, p: u64) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !sp_guard(n, p) {
        return Err(Error::GuardFailed { n, p });
    }
    p_part(&samelson_order_eps_iota(n)?, p)
}

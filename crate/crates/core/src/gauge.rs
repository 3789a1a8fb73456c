//! Homotopy invariants and p-local classification of the gauge groups
//! `G_{k,n}` of principal `Sp(n)`-bundles over `S^4`, and of `Spin(m)` gauge groups.
//!
//! Every invariant depends on `k` only through `|k|` modulo `B = 4n(2n+1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, frac_gcd, gcd_nonneg, is_prime, p_part, Rational};
use crate::chdata::{ksp_basis, Space};
use crate::error::{Error, Result};
use crate::phi::{closed_form_order, sp_guard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bundle {
    pub n: u32,
    pub k: i64,
}

impl Bundle {
    pub fn new(n: u32, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { n, k })
    }

    fn k_big(&self) -> BigInt {
        BigInt::from(self.k)
    }
}

/// `gcd(k, n(2n+1))` for `n` even and `gcd(k, 4n(2n+1))` for `n` odd.
pub fn sutherland_invariant(b: Bundle) -> BigInt {
    let n = b.n as u64;
    let modulus = if n.is_multiple_of(2) {
        BigInt::from(n * (2 * n + 1))
    } else {
        closed_form_order(b.n)
    };
    gcd_nonneg(&b.k_big(), &modulus)
}

/// `gcd(k, 4n(2n+1))`, a homotopy invariant of `G_{k,n}` for every `n`.
pub fn refined_invariant(b: Bundle) -> BigInt {
    gcd_nonneg(&b.k_big(), &closed_form_order(b.n))
}

fn require_even(n: u32) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        Err(Error::OddRank(n))
    } else {
        Ok(())
    }
}

fn top_coeffs_of(space: Space) -> Vec<Rational> {
    ksp_basis(space)
        .expect("tabulated Q_2 suspension")
        .into_iter()
        .map(|g| g.ch.top())
        .collect()
}

/// Order of `[Sigma^{4n-5} Q_2, Sp(n)] = Z/(2n+1)! gcd(y_7-coefficients of rho_1, rho_2)`
/// for even `n`.
pub fn mapping_group_sp_n(n: u32) -> Result<BigInt> {
    require_even(n)?;
    // KSp^{-2}(Sigma^{4n-5} Q_2) = KSp(Sigma^{4n-3} Q_2), Bott-equivalent to Sigma^5 Q_2 for n even.
    let tops = top_coeffs_of(Space::susp_q2(4 * n - 3));
    let g = frac_gcd(&tops)? * Rational::from_integer(factorial(2 * n + 1));
    debug_assert!(g.is_integer());
    let order = g.to_integer();
    assert_eq!(order, factorial(2 * n + 1) / 3, "rho table out of line with (2n+1)!/3");
    Ok(order)
}

/// Generator of `Im delta_k` in `H^{4n+2}(Sigma^{4n-5} Q_2) = Z`: `|k| (2n-1)! gcd(b)`,
/// where `b` runs over the `y_7`-coefficients of the theta generators.
pub fn im_delta_gen(n: u32, k: i64) -> Result<BigInt> {
    require_even(n)?;
    // KSp(Sigma^{4n-7} Q_2) is Bott-equivalent to Sigma Q_2 for n even.
    let tops = top_coeffs_of(Space::susp_q2(4 * n - 7));
    let g = frac_gcd(&tops)? * Rational::from_integer(factorial(2 * n - 1));
    debug_assert!(g.is_integer());
    Ok(g.to_integer() * BigInt::from(k).abs())
}

/// The group `[Sigma^{4n-8} Q_2, BG_{k,n}]` computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q2Invariant {
    /// `gcd((2n+1)!/3, |k|(2n-1)!/6)`, from the generator tables.
    pub computed: BigInt,
    /// The closed form `gcd(k, 4n(2n+1))`.
    pub claimed: BigInt,
}

impl Q2Invariant {
    pub fn agrees(&self) -> bool {
        self.computed == self.claimed
    }
}

/// Order of `H / (Im Phi + Im delta_k)` with `H = H^{4n+2}(Sigma^{4n-5} Q_2) = Z`.
pub fn q2_mapping_invariant(n: u32, k: i64) -> Result<Q2Invariant> {
    let image_phi = mapping_group_sp_n(n)?;
    let image_delta = im_delta_gen(n, k)?;
    Ok(Q2Invariant {
        computed: gcd_nonneg(&image_phi, &image_delta),
        claimed: refined_invariant(Bundle { n, k }),
    })
}

/// Order of `Im (partial_k)_*` as an index, with the closed form
/// `(2n+1)! / (3 gcd(k, 4n(2n+1)))` alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImPartialOrder {
    pub computed: BigInt,
    pub printed: BigInt,
}

impl ImPartialOrder {
    pub fn agrees(&self) -> bool {
        self.computed == self.printed
    }
}

pub fn im_partial_order(n: u32, k: i64) -> Result<ImPartialOrder> {
    let whole = mapping_group_sp_n(n)?;
    let q2 = q2_mapping_invariant(n, k)?;
    Ok(ImPartialOrder {
        computed: &whole / &q2.computed,
        printed: &whole / &q2.claimed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Equivalent,
    Distinct,
    NotDetermined,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Equivalent => "equivalent",
            Outcome::Distinct => "distinct",
            Outcome::NotDetermined => "not_determined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardCheck {
    pub condition: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub criterion: String,
    /// `nu_p(gcd(k, B))` and `nu_p(gcd(l, B))`; absent when a guard failed first.
    pub invariant_values: Option<(BigInt, BigInt)>,
    pub guards_checked: Vec<GuardCheck>,
}

fn sp_guard_check(n: u32, p: u64) -> GuardCheck {
    let q = p.saturating_sub(1) as u128;
    GuardCheck {
        condition: format!("(p-1)^2+1 = {} >= 2n = {}", q * q + 1, 2 * n as u64),
        passed: sp_guard(n, p),
    }
}

fn local_invariant(n: u32, k: i64, p: u64) -> BigInt {
    p_part(&refined_invariant(Bundle { n, k }), p).expect("gcd with B is nonzero and p is prime")
}

fn decide_with_guards(
    n: u32,
    k: i64,
    l: i64,
    p: u64,
    criterion: String,
    guards: Vec<GuardCheck>,
) -> Verdict {
    if guards.iter().any(|g| !g.passed) {
        return Verdict {
            outcome: Outcome::NotDetermined,
            criterion,
            invariant_values: None,
            guards_checked: guards,
        };
    }
    let a = local_invariant(n, k, p);
    let b = local_invariant(n, l, p);
    Verdict {
        outcome: if a == b {
            Outcome::Equivalent
        } else {
            Outcome::Distinct
        },
        criterion,
        invariant_values: Some((a, b)),
        guards_checked: guards,
    }
}

/// Whether `G_{k,n}` and `G_{l,n}` are p-locally homotopy equivalent.
pub fn decide_local(n: u32, k: i64, l: i64, p: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let criterion = format!("nu_{p}(gcd(k, {})) for Sp({n})", closed_form_order(n));
    Ok(decide_with_guards(n, k, l, p, criterion, vec![sp_guard_check(n, p)]))
}

/// Splits `m = 2n + epsilon` with `epsilon` in `{1, 2}`.
pub fn spin_rank(m: u32) -> Result<(u32, u32)> {
    if m <= 6 {
        return Err(Error::BadDimension(m));
    }
    Ok(if m % 2 == 1 { ((m - 1) / 2, 1) } else { ((m - 2) / 2, 2) })
}

/// Whether `G_k(Spin(m))` and `G_l(Spin(m))` are p-locally homotopy equivalent.
pub fn decide_spin(m: u32, k: i64, l: i64, p: u64) -> Result<Verdict> {
    let (n, _epsilon) = spin_rank(m)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let guards = vec![
        GuardCheck {
            condition: format!("p = {p} is odd"),
            passed: p != 2,
        },
        GuardCheck {
            condition: format!("2n = {} >= 6", 2 * n),
            passed: n >= 3,
        },
        sp_guard_check(n, p),
    ];
    let criterion = format!("nu_{p}(gcd(k, {})) for Spin({m})", closed_form_order(n));
    Ok(decide_with_guards(n, k, l, p, criterion, guards))
}

/// Order of `pi_{4n+1}(G_{k,n})` localized at an odd prime: `nu_p(gcd(k, 4n(2n+1)))`.
pub fn pi_4n1_order(n: u32, k: i64, p: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    Ok(local_invariant(n, k, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LieFamily {
    SU,
    Sp,
    SpinOdd,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl std::str::FromStr for LieFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "su" => LieFamily::SU,
            "sp" => LieFamily::Sp,
            "spinodd" | "spin-odd" | "spin" => LieFamily::SpinOdd,
            "g2" => LieFamily::G2,
            "f4" => LieFamily::F4,
            "e6" => LieFamily::E6,
            "e7" => LieFamily::E7,
            "e8" => LieFamily::E8,
            other => return Err(Error::BadQuery(format!("unknown Lie family {other:?}"))),
        })
    }
}

/// Whether the p-localization of the group is retractible.
///
/// `rank_param` is `n` in `SU(n)`, `Sp(n)` and `Spin(2n+1)` and is ignored for
/// the exceptional groups. `Spin(2n)` and `(G_2, 3)` are not covered.
pub fn retractible(family: LieFamily, rank_param: u32, p: u64) -> bool {
    let q = p.saturating_sub(1) as u128;
    let bound = q * q + 1;
    match family {
        LieFamily::SU => bound >= rank_param as u128,
        LieFamily::Sp | LieFamily::SpinOdd => bound >= 2 * rank_param as u128,
        LieFamily::G2 | LieFamily::F4 | LieFamily::E6 => p >= 5,
        LieFamily::E7 | LieFamily::E8 => p >= 7,
    }
}

/// `|k| mod B`, the representative every invariant depends on.
pub fn reduced_k(n: u32, k: i64) -> BigInt {
    let b = closed_form_order(n);
    let r = BigInt::from(k).abs() % &b;
    if r.is_zero() {
        BigInt::zero()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bundle(n: u32, k: i64) -> Bundle {
        Bundle::new(n, k).unwrap()
    }

    #[test]
    fn sutherland_examples() {
        assert_eq!(sutherland_invariant(bundle(2, 28)), big(2));
        assert_eq!(sutherland_invariant(bundle(1, 0)), big(12));
        assert_eq!(sutherland_invariant(bundle(3, 7)), big(7));
    }

    #[test]
    fn refined_examples() {
        assert_eq!(refined_invariant(bundle(2, 28)), big(4));
        assert_eq!(refined_invariant(bundle(5, 0)), big(220));
        assert_eq!(refined_invariant(bundle(1, 5)), big(1));
        assert_eq!(Bundle::new(0, 1), Err(Error::ZeroRank));
    }

    #[test]
    fn refined_invariant_refines_sutherland() {
        for n in 1..=8u32 {
            let b = i64::try_from(closed_form_order(n)).unwrap();
            for k in 0..=b {
                let r = refined_invariant(bundle(n, k));
                let s = sutherland_invariant(bundle(n, k));
                assert!((&r % &s).is_zero());
                if n % 2 == 1 {
                    assert_eq!(r, s);
                }
            }
        }
    }

    #[test]
    fn mapping_group_examples() {
        assert_eq!(mapping_group_sp_n(2).unwrap(), big(40));
        assert_eq!(mapping_group_sp_n(4).unwrap(), big(120960));
        assert_eq!(mapping_group_sp_n(3), Err(Error::OddRank(3)));
        assert_eq!(mapping_group_sp_n(0), Err(Error::OddRank(0)));
    }

    #[test]
    fn im_delta_examples() {
        assert_eq!(im_delta_gen(2, 1).unwrap(), big(1));
        assert_eq!(im_delta_gen(4, 1).unwrap(), big(840));
        assert_eq!(im_delta_gen(2, 5).unwrap(), big(5));
        assert_eq!(im_delta_gen(2, -5).unwrap(), big(5));
        assert_eq!(im_delta_gen(5, 1), Err(Error::OddRank(5)));
    }

    #[test]
    fn q2_invariant_examples() {
        let q = q2_mapping_invariant(2, 12).unwrap();
        assert_eq!((q.computed.clone(), q.claimed.clone()), (big(4), big(4)));
        assert!(q.agrees());
        assert_eq!(q2_mapping_invariant(2, 0).unwrap().computed, big(40));
        let q = q2_mapping_invariant(4, 1).unwrap();
        assert_eq!((q.computed.clone(), q.claimed.clone()), (big(840), big(1)));
        assert!(!q.agrees());
        assert_eq!(q2_mapping_invariant(3, 1), Err(Error::OddRank(3)));
    }

    #[test]
    fn im_partial_examples() {
        let r = im_partial_order(2, 1).unwrap();
        assert_eq!((r.computed.clone(), r.printed.clone()), (big(40), big(40)));
        assert_eq!(im_partial_order(2, 40).unwrap().computed, big(1));
        let r = im_partial_order(4, 3).unwrap();
        assert_eq!((r.computed.clone(), r.printed.clone()), (big(48), big(40320)));
        assert!(!r.agrees());
        assert_eq!(im_partial_order(2, 0).unwrap().computed, big(1));
    }

    #[test]
    fn im_partial_matches_quotient_of_b() {
        for n in (2..=12).step_by(2) {
            let b = closed_form_order(n);
            for k in 0..=200i64 {
                let expected = &b / refined_invariant(bundle(n, k));
                assert_eq!(im_partial_order(n, k).unwrap().computed, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rank_two_invariant_is_gcd_with_40() {
        for k in -80..=80 {
            assert_eq!(q2_mapping_invariant(2, k).unwrap().computed, gcd_nonneg(&big(k), &big(40)));
        }
    }

    #[test]
    fn mapping_group_is_q2_invariant_at_zero() {
        for n in (2..=40).step_by(2) {
            assert_eq!(mapping_group_sp_n(n).unwrap(), q2_mapping_invariant(n, 0).unwrap().computed);
        }
    }

    #[test]
    fn delta_is_linear_in_k() {
        for n in (2..=20).step_by(2) {
            let one = im_delta_gen(n, 1).unwrap();
            for k in -30..=30i64 {
                assert_eq!(im_delta_gen(n, k).unwrap(), &one * BigInt::from(k).abs());
            }
        }
    }

    #[test]
    fn decide_local_examples() {
        let v = decide_local(2, 5, 10, 5).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent);
        assert_eq!(v.invariant_values, Some((big(5), big(5))));
        let v = decide_local(2, 1, 5, 5).unwrap();
        assert_eq!(v.outcome, Outcome::Distinct);
        assert_eq!(v.invariant_values, Some((big(1), big(5))));
        let v = decide_local(3, 7, 14, 3).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
        assert!(!v.guards_checked[0].passed);
        assert_eq!(decide_local(2, 1, 1, 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn decide_spin_examples() {
        assert_eq!(spin_rank(7).unwrap(), (3, 1));
        assert_eq!(spin_rank(8).unwrap(), (3, 2));
        assert_eq!(spin_rank(9).unwrap(), (4, 1));
        assert_eq!(decide_spin(7, 84, 0, 7).unwrap().outcome, Outcome::Equivalent);
        assert_eq!(decide_spin(8, 1, 3, 3).unwrap().outcome, Outcome::NotDetermined);
        // (3-1)^2+1 = 5 < 8 at n = 4
        assert_eq!(decide_spin(9, 9, 18, 3).unwrap().outcome, Outcome::NotDetermined);
        assert_eq!(decide_spin(9, 9, 18, 5).unwrap().outcome, Outcome::Equivalent);
        assert_eq!(decide_spin(9, 9, 18, 2).unwrap().outcome, Outcome::NotDetermined);
        assert_eq!(decide_spin(9, 1, 3, 5).unwrap().outcome, Outcome::Equivalent);
        assert_eq!(decide_spin(10, 1, 5, 5).unwrap().outcome, Outcome::Equivalent);
        assert_eq!(decide_spin(11, 1, 5, 5).unwrap().outcome, Outcome::Distinct);
        assert_eq!(decide_spin(6, 1, 1, 5), Err(Error::BadDimension(6)));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_4n1_order(2, 20, 5).unwrap(), big(5));
        assert_eq!(pi_4n1_order(2, 3, 5).unwrap(), big(1));
        assert_eq!(pi_4n1_order(4, 48, 3).unwrap(), big(3));
        assert_eq!(pi_4n1_order(4, 48, 2), Err(Error::EvenPrime));
        assert_eq!(pi_4n1_order(4, 48, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn retractible_table() {
        assert!(retractible(LieFamily::Sp, 2, 3));
        assert!(!retractible(LieFamily::Sp, 3, 3));
        assert!(retractible(LieFamily::E8, 0, 7));
        assert!(!retractible(LieFamily::E7, 0, 5));
        assert!(retractible(LieFamily::G2, 0, 5));
        assert!(!retractible(LieFamily::F4, 0, 3));
        assert!(retractible(LieFamily::SU, 5, 3));
        assert!(!retractible(LieFamily::SU, 6, 3));
        assert!(retractible(LieFamily::SpinOdd, 2, 3));
        assert_eq!("E8".parse::<LieFamily>().unwrap(), LieFamily::E8);
    }

    #[test]
    fn reduced_k_examples() {
        assert_eq!(reduced_k(2, 45), big(5));
        assert_eq!(reduced_k(2, -45), big(5));
        assert_eq!(reduced_k(2, 80), big(0));
    }

    proptest! {
        #[test]
        fn decide_local_is_invariant_under_shift_and_sign(n in 1u32..10, k in -500i64..500,
                                                          l in -500i64..500, t in -3i64..3,
                                                          pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let b = i64::try_from(closed_form_order(n)).unwrap();
            let base = decide_local(n, k, l, p).unwrap();
            prop_assert_eq!(&decide_local(n, k + b * t, l, p).unwrap(), &base);
            let neg = decide_local(n, -k, l, p).unwrap();
            prop_assert_eq!(neg.outcome, base.outcome);
        }

        #[test]
        fn q2_invariant_factors_through_gcd(n in (1u32..8).prop_map(|h| 2 * h), k in -2000i64..2000) {
            let q = q2_mapping_invariant(n, k).unwrap();
            let scale = factorial(2 * n - 1) / 6;
            prop_assert_eq!(q.computed, scale * q.claimed);
        }
    }
}

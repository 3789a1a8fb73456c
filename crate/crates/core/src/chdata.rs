//! Named K- and KSp-generators of suspended quasi-projective spaces together
//! with their Chern-character coefficients.
//!
//! Cohomology of `Sigma^s Q_n` is free on `Sigma^s y_{4j-1}` for `1 <= j <= n`, so
//! a Chern character is a vector indexed by `j`. Bott periodicity is handled
//! as bookkeeping on the suspension index and the power of the Bott class `u`;
//! coefficients never change under it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, ratio, Rational};
use crate::error::{Error, Result};
use crate::series::{top_coeffs, Backend};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `Sigma^s Q_n`.
    SuspQn,
    /// `Sigma^s Q_2`; the rank is fixed at 2.
    SuspQ2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub family: Family,
    pub rank: u32,
    pub susp: u32,
}

impl Space {
    pub fn susp_qn(rank: u32, susp: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self {
            family: Family::SuspQn,
            rank,
            susp,
        })
    }

    pub fn susp_q2(susp: u32) -> Self {
        Self {
            family: Family::SuspQ2,
            rank: 2,
            susp,
        }
    }

    /// Degree of the basis class `Sigma^s y_{4j-1}`.
    pub fn basis_degree(&self, j: u32) -> u32 {
        4 * j - 1 + self.susp
    }

    pub fn dimension(&self) -> u32 {
        self.basis_degree(self.rank)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.family {
            Family::SuspQn => format!("Q_{}", self.rank),
            Family::SuspQ2 => "Q_2".to_string(),
        };
        match self.susp {
            0 => f.write_str(&base),
            1 => write!(f, "S{base}"),
            s => write!(f, "S^{s}{base}"),
        }
    }
}

/// Chern character of a class on `space`, as coefficients on `Sigma^s y_{4j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChVector {
    pub space: Space,
    #[serde(with = "coeff_map")]
    pub coeffs: BTreeMap<u32, Rational>,
    /// Power of the Bott class `u` multiplied in.
    pub u_power: i32,
}

impl ChVector {
    pub fn new(space: Space, coeffs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(j, c)| {
                assert!(
                    (1..=space.rank).contains(j),
                    "basis index {j} outside 1..={}",
                    space.rank
                );
                !c.is_zero()
            })
            .collect();
        Self {
            space,
            coeffs,
            u_power: 0,
        }
    }

    pub fn coeff(&self, j: u32) -> Rational {
        self.coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn top(&self) -> Rational {
        self.coeff(self.space.rank)
    }

    /// Multiplies by `u^e`: the class moves `2e` suspensions, coefficients unchanged.
    /// Returns `None` if that would desuspend below zero.
    pub fn times_bott(&self, e: i32) -> Option<Self> {
        let susp = self.space.susp as i64 + 2 * e as i64;
        if susp < 0 {
            return None;
        }
        Some(Self {
            space: Space {
                susp: susp as u32,
                ..self.space
            },
            coeffs: self.coeffs.clone(),
            u_power: self.u_power + e,
        })
    }
}

/// How much of a generator's Chern character is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Known {
    /// Every coefficient is stored; missing indices are zero.
    Full,
    /// Only the stored indices are known.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub ch: ChVector,
    pub known: Known,
}

/// Which group a basis query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    K,
    KSp,
}

pub fn theta1() -> ChVector {
    ChVector::new(Space::susp_q2(1), [(1, ratio(1, 1)), (2, ratio(-1, 6))])
}

pub fn theta2() -> ChVector {
    ChVector::new(Space::susp_q2(1), [(2, ratio(2, 1))])
}

pub fn rho1() -> ChVector {
    ChVector::new(Space::susp_q2(5), [(1, ratio(2, 1)), (2, ratio(1, 3))])
}

pub fn rho2() -> ChVector {
    ChVector::new(Space::susp_q2(5), [(2, ratio(1, 1))])
}

/// Top coefficient of `zeta_1 = q(u^2 xi_1)`; complexifying `q` doubles `xi_1`'s.
pub fn zeta1_top(n: u32) -> Rational {
    Rational::new(BigInt::from(2), factorial(2 * n - 1))
}

/// Leading coefficient `epsilon_i` of `zeta_i`: 1 for `i` even, 2 for `i` odd.
pub fn zeta_leading(i: u32) -> u32 {
    if i.is_multiple_of(2) {
        1
    } else {
        2
    }
}

/// Top coefficient of `xi_k` on `Sigma Q_n` (equivalently of `u xi_k` on `Sigma^3 Q_n`).
pub fn xi_top(n: u32, k: u32, backend: Backend) -> Result<Rational> {
    crate::series::top_coeff(n, k, backend)
}

fn named(name: impl Into<String>, ch: ChVector, known: Known) -> Generator {
    Generator {
        name: name.into(),
        ch,
        known,
    }
}

/// A basis of `K~(space)` or `KSp~(space)` with Chern-character data.
///
/// KSp suspensions are reduced mod 8 and the returned classes live on the
/// reduced space. An empty list means the group vanishes.
pub fn basis(space: Space, theory: Theory) -> Result<Vec<Generator>> {
    let unsupported = || Error::Unsupported(format!("{theory:?} of {space}"));
    match (theory, space.family) {
        (Theory::KSp, Family::SuspQ2) => match space.susp % 8 {
            1 => Ok(vec![
                named("theta1", theta1(), Known::Full),
                named("theta2", theta2(), Known::Full),
            ]),
            5 => Ok(vec![
                named("rho1", rho1(), Known::Full),
                named("rho2", rho2(), Known::Full),
            ]),
            0 | 4 => Ok(Vec::new()),
            _ => Err(unsupported()),
        },
        (Theory::KSp, Family::SuspQn) if space.susp % 8 == 5 => {
            let n = space.rank;
            let sp = Space { susp: 5, ..space };
            Ok((1..=n)
                .map(|i| {
                    let mut coeffs = vec![(i, ratio(zeta_leading(i) as i64, 1))];
                    if i == 1 && n > 1 {
                        coeffs.push((n, zeta1_top(n)));
                    }
                    named(format!("zeta{i}"), ChVector::new(sp, coeffs), Known::Partial)
                })
                .collect())
        }
        (Theory::K, Family::SuspQn) if space.susp == 1 => {
            let n = space.rank;
            let tops = top_coeffs(n, Backend::Series)?;
            Ok((1..=n)
                .map(|k| {
                    let ch = ChVector::new(space, [(n, tops[k as usize].clone())]);
                    named(format!("xi{k}"), ch, Known::Partial)
                })
                .collect())
        }
        _ => Err(unsupported()),
    }
}

pub fn ksp_basis(space: Space) -> Result<Vec<Generator>> {
    basis(space, Theory::KSp)
}

/// Top coefficients of a generating set for `c'(KSp~(Sigma^5 Q_n))`, read on
/// `Sigma^3 Q_n` after dividing by `u`: `c'(zeta_1)` followed by `u^2 xi_k`
/// for `2 <= k <= n`.
pub fn phi_generator_tops(n: u32, backend: Backend) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let tops = top_coeffs(n, backend)?;
    let mut out = Vec::with_capacity(n as usize);
    out.push(zeta1_top(n));
    out.extend(tops.into_iter().skip(2));
    Ok(out)
}

/// The fixed generator tables, for export.
pub fn q2_tables() -> Vec<Generator> {
    let mut out = ksp_basis(Space::susp_q2(1)).expect("tabulated");
    out.extend(ksp_basis(Space::susp_q2(5)).expect("tabulated"));
    out
}

/// JSON export of the tabulated generators, rationals written as `"num/den"`.
pub fn tables_json(n: Option<u32>) -> Result<serde_json::Value> {
    let mut gens = q2_tables();
    if let Some(n) = n {
        gens.extend(ksp_basis(Space::susp_qn(n, 5)?)?);
        gens.extend(basis(Space::susp_qn(n, 1)?, Theory::K)?);
    }
    Ok(serde_json::to_value(gens).expect("generator tables serialize"))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadQuery(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

mod coeff_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<String, String> = m
            .iter()
            .map(|(j, c)| (format!("y{}", 4 * j - 1), format_rational(c)))
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, Rational>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let deg: u32 = k
                    .strip_prefix('y')
                    .and_then(|s| s.parse().ok())
                    .filter(|d| d % 4 == 3)
                    .ok_or_else(|| D::Error::custom(format!("bad basis label {k:?}")))?;
                let c = parse_rational(&v).map_err(D::Error::custom)?;
                Ok(((deg + 1) / 4, c))
            })
            .collect()
    }
}

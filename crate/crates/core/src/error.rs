use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the prime 2 is excluded here; an odd prime is required")]
    EvenPrime,
    #[error("every value is zero; the generated subgroup is trivial")]
    AllZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("k = {k} is out of range 1..={n}")]
    OutOfRange { n: u32, k: u32 },
    #[error("unsupported space: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {index} of the Phi image is not integral for n = {n}")]
    NonIntegralGenerator { n: u32, index: usize },
    #[error("the order of the target class is not pinned for n = {n} (gcd {gcd} vs lower bound {lower})")]
    Unpinned { n: u32, gcd: BigInt, lower: BigInt },
    #[error("order computations disagree for n = {n}: gcd path {direct}, lattice path {lattice}")]
    OracleDisagreement { n: u32, direct: BigInt, lattice: BigInt },
    #[error("computed order {computed} for n = {n} differs from 4n(2n+1) = {closed}")]
    ClosedFormMismatch { n: u32, computed: BigInt, closed: BigInt },
    #[error("guard (p-1)^2+1 >= 2n fails for n = {n}, p = {p}")]
    GuardFailed { n: u32, p: u64 },
    #[error("rank n = {0} must be even and at least 2")]
    OddRank(u32),
    #[error("Spin({0}) is outside the range m >= 7")]
    BadDimension(u32),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("bad query: {0}")]
    BadQuery(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

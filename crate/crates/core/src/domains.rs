//! Irreducible bounded symmetric domains and Hartogs domain specifications.
//!
//! Every irreducible bounded symmetric domain is determined by its rank `r`
//! and characteristic multiplicities `a`, `b`; its complex dimension and
//! genus are then
//!
//! ```text
//! d = r(r-1)/2 * a + r*b + r,        p = (r-1) a + b + 2.
//! ```
//!
//! [`CartanKind`] enumerates the classical and exceptional families with
//! their standard multiplicities, [`hua_polynomial`] builds the degree-`d`
//! monic polynomial whose shifted products drive every expansion downstream,
//! and [`DomainSpec`] describes a Hartogs fibration over a product of such
//! factors, each carrying a weight `mu > 0` and a potential exponent
//! `nu > -1`, with a fiber of dimension `d_0 >= 1`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::poly::{rising_factorial_poly, UniPoly};
use crate::rational::{rat, rising_factorial, Rat};

/// Errors constructing domain parameters or partitions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("rank must be at least one")]
    ZeroRank,
    #[error("type {kind}({n}) needs matrix size at least {min}")]
    DimensionTooSmall { kind: &'static str, n: u32, min: u32 },
    #[error("partition parts must be non-increasing")]
    PartitionNotSorted,
}

/// Rank, multiplicities and the derived dimension and genus of an
/// irreducible bounded symmetric domain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IrreducibleDomainParams {
    rank: u32,
    mult_a: u32,
    mult_b: u32,
    dim: u32,
    genus: u32,
}

impl IrreducibleDomainParams {
    /// Derives dimension and genus from rank and multiplicities.
    pub fn from_multiplicities(rank: u32, mult_a: u32, mult_b: u32) -> Result<Self, DomainError> {
        if rank == 0 {
            return Err(DomainError::ZeroRank);
        }
        let dim = rank * (rank - 1) / 2 * mult_a + rank * mult_b + rank;
        let genus = (rank - 1) * mult_a + mult_b + 2;
        Ok(IrreducibleDomainParams {
            rank,
            mult_a,
            mult_b,
            dim,
            genus,
        })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn mult_a(&self) -> u32 {
        self.mult_a
    }

    pub fn mult_b(&self) -> u32 {
        self.mult_b
    }

    /// Complex dimension `d`.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Genus `p`.
    pub fn genus(&self) -> u32 {
        self.genus
    }
}

/// The Cartan classification of irreducible bounded symmetric domains.
///
/// `TypeI { m, n }` is the matrix ball of complex `m x n` matrices with
/// `I - Z Z^* > 0` (so `ball(d) = TypeI { 1, d }`), `TypeII` the symmetric
/// and `TypeIII` the antisymmetric square matrices under the same condition,
/// `TypeIV` the Lie ball, and `TypeV`, `TypeVI` the two exceptional domains
/// of dimensions 16 and 27.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CartanKind {
    TypeI { m: u32, n: u32 },
    TypeII { n: u32 },
    TypeIII { n: u32 },
    TypeIV { n: u32 },
    TypeV,
    TypeVI,
}

impl CartanKind {
    /// The complex unit ball of dimension `dim`.
    pub fn ball(dim: u32) -> Self {
        CartanKind::TypeI { m: 1, n: dim }
    }

    /// The unit disc.
    pub fn disc() -> Self {
        Self::ball(1)
    }

    /// Rank, multiplicities, dimension and genus for this kind.
    pub fn params(&self) -> Result<IrreducibleDomainParams, DomainError> {
        let (rank, a, b) = match *self {
            CartanKind::TypeI { m, n } => {
                let (m, n) = (m.min(n), m.max(n));
                if m == 0 {
                    return Err(DomainError::ZeroRank);
                }
                (m, 2, n - m)
            }
            CartanKind::TypeII { n } => {
                if n == 0 {
                    return Err(DomainError::ZeroRank);
                }
                (n, 1, 0)
            }
            CartanKind::TypeIII { n } => {
                if n < 2 {
                    return Err(DomainError::DimensionTooSmall {
                        kind: "III",
                        n,
                        min: 2,
                    });
                }
                (n / 2, 4, if n % 2 == 0 { 0 } else { 2 })
            }
            CartanKind::TypeIV { n } => {
                if n < 3 {
                    return Err(DomainError::DimensionTooSmall {
                        kind: "IV",
                        n,
                        min: 3,
                    });
                }
                (2, n - 2, 0)
            }
            CartanKind::TypeV => (2, 6, 4),
            CartanKind::TypeVI => (3, 8, 0),
        };
        IrreducibleDomainParams::from_multiplicities(rank, a, b)
    }
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CartanKind::TypeI { m, n } => write!(f, "I({m},{n})"),
            CartanKind::TypeII { n } => write!(f, "II({n})"),
            CartanKind::TypeIII { n } => write!(f, "III({n})"),
            CartanKind::TypeIV { n } => write!(f, "IV({n})"),
            CartanKind::TypeV => write!(f, "V"),
            CartanKind::TypeVI => write!(f, "VI"),
        }
    }
}

/// Non-increasing sequence of non-negative integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, DomainError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(DomainError::PartitionNotSorted);
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The monic degree-`d` polynomial
/// `chi(s) = prod_{j=1}^{r} (s + 1 + (j-1) a/2)_{1 + b + (r-j) a}`.
pub fn hua_polynomial(params: &IrreducibleDomainParams) -> UniPoly {
    let (r, a, b) = (params.rank(), params.mult_a(), params.mult_b());
    let mut chi = UniPoly::one();
    for j in 1..=r {
        let shift = rat(1) + Rat::new(((j - 1) * a).into(), 2.into());
        let m = 1 + b + (r - j) * a;
        chi = &chi * &rising_factorial_poly(&shift, m);
    }
    chi
}

/// Membership in the Wallach set
/// `W = {0, a/2, ..., (r-1) a/2} union ((r-1) a/2, infinity)`.
pub fn wallach_contains(params: &IrreducibleDomainParams, mu: &Rat) -> bool {
    if mu.is_negative() {
        return false;
    }
    let step = Rat::new(params.mult_a().into(), 2.into());
    let top = &step * rat((params.rank() - 1) as i64);
    if mu > &top {
        return true;
    }
    if step.is_zero() {
        return mu.is_zero();
    }
    let q = mu / &step;
    q.is_integer() && q <= rat((params.rank() - 1) as i64)
}

/// Generalized raising factorial
/// `(s)_lambda = prod_j (s - (j-1) a/2)_{lambda_j}`.
pub fn generalized_pochhammer(s: &Rat, lambda: &Partition, a: &Rat) -> Rat {
    let half_a = a / rat(2);
    let mut acc = Rat::from_integer(1.into());
    for (j, &part) in lambda.parts().iter().enumerate() {
        let base = s - &half_a * rat(j as i64);
        acc *= rising_factorial(&base, part);
    }
    acc
}

/// One irreducible factor of a Hartogs specification, with its weight and
/// potential exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    kind: CartanKind,
    params: IrreducibleDomainParams,
    mu: Rat,
    nu: Rat,
}

impl Factor {
    pub fn new(kind: CartanKind, mu: Rat, nu: Rat) -> Result<Self, DomainError> {
        Ok(Factor {
            kind,
            params: kind.params()?,
            mu,
            nu,
        })
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn params(&self) -> &IrreducibleDomainParams {
        &self.params
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn nu(&self) -> &Rat {
        &self.nu
    }
}

/// A constraint violated by a [`DomainSpec`], with a path naming the field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// A generalized Hartogs fibration: base factors with weights and exponents,
/// and a fiber ball of dimension `d_0`.
///
/// Derived dimensions (`base_dim`, `total_dim`) are always recomputed from
/// the factors, never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DomainSpec {
    factors: Vec<Factor>,
    fiber_dim: u32,
}

impl DomainSpec {
    pub fn new(factors: Vec<Factor>, fiber_dim: u32) -> Self {
        DomainSpec { factors, fiber_dim }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Fiber dimension `d_0`.
    pub fn fiber_dim(&self) -> u32 {
        self.fiber_dim
    }

    /// Base dimension `d = sum_i d_i`.
    pub fn base_dim(&self) -> u32 {
        self.factors.iter().map(|f| f.params().dim()).sum()
    }

    /// Total dimension `n = d + d_0`.
    pub fn total_dim(&self) -> u32 {
        self.base_dim() + self.fiber_dim
    }

    /// All constraint violations, empty when the specification is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.factors.is_empty() {
            out.push(Violation {
                path: "factors".into(),
                message: "at least one base factor is required".into(),
            });
        }
        for (i, f) in self.factors.iter().enumerate() {
            if !f.mu().is_positive() {
                out.push(Violation {
                    path: format!("factors[{i}].mu"),
                    message: format!("weight must be positive, got {}", f.mu()),
                });
            }
            if f.nu() <= &rat(-1) {
                out.push(Violation {
                    path: format!("factors[{i}].nu"),
                    message: format!("exponent must exceed -1, got {}", f.nu()),
                });
            }
        }
        if self.fiber_dim == 0 {
            out.push(Violation {
                path: "fiber_dim".into(),
                message: "fiber dimension must be at least one".into(),
            });
        }
        out
    }
}

/// Least admissible weight: the epsilon expansions below are valid exactly
/// for `alpha` strictly above
/// `max { n, max_i (p_i - 1) / (mu_i (1 + nu_i)) }`.
pub fn alpha_threshold(spec: &DomainSpec) -> Rat {
    let mut best = rat(spec.total_dim() as i64);
    for f in spec.factors() {
        let denom = f.mu() * (rat(1) + f.nu());
        let cand = rat((f.params().genus() - 1) as i64) / denom;
        if cand > best {
            best = cand;
        }
    }
    best
}

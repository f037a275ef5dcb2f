//! Sample points, generic norms, membership and seeded sampling.
//!
//! Numeric evaluation supports specifications whose factors are of type I
//! (including balls, `TypeI { 1, d }`); the generic norm of a factor is then
//! `N(z, w) = det(I - Z W^*)`, which for a ball collapses to
//! `1 - <z, w>`.  Sampling is rejection from polydisc coordinates with a
//! relative membership margin, and every sample index gets its own
//! deterministic substream of the seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domains::{CartanKind, DomainSpec};
use crate::rational::to_f64;

use super::NumericError;

/// Margin used by all rejection sampling here: memberships are required to
/// hold with this relative slack so finite difference stencils stay inside.
pub const SAMPLE_MARGIN: f64 = 1e-3;

/// Coordinates on one base factor: ball coordinates, or a row-major
/// `m x n` matrix for type I.
#[derive(Clone, PartialEq, Debug)]
pub struct FactorPoint {
    pub coords: Vec<Complex64>,
}

/// A point of the full fibration: one [`FactorPoint`] per base factor plus
/// fiber coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct FullPoint {
    pub factors: Vec<FactorPoint>,
    pub fiber: Vec<Complex64>,
}

/// Number of complex coordinates a factor of this kind carries.
pub fn coord_len(kind: CartanKind) -> Result<usize, NumericError> {
    match kind {
        CartanKind::TypeI { m, n } => Ok((m * n) as usize),
        other => Err(NumericError::UnsupportedFactor {
            kind: other.to_string(),
        }),
    }
}

/// Generic norm `N(z1, z2) = det(I - Z1 Z2^*)` of a type I factor.
///
/// Both points must carry `m * n` coordinates in row-major order.
pub fn generic_norm(
    kind: CartanKind,
    z1: &FactorPoint,
    z2: &FactorPoint,
) -> Result<Complex64, NumericError> {
    let CartanKind::TypeI { m, n } = kind else {
        return Err(NumericError::UnsupportedFactor {
            kind: kind.to_string(),
        });
    };
    let (m, n) = (m as usize, n as usize);
    for z in [z1, z2] {
        if z.coords.len() != m * n {
            return Err(NumericError::WrongShape {
                what: "factor coordinates",
                expected: m * n,
                got: z.coords.len(),
            });
        }
    }
    if m == 1 {
        let inner: Complex64 = z1
            .coords
            .iter()
            .zip(&z2.coords)
            .map(|(a, b)| a * b.conj())
            .sum();
        return Ok(Complex64::new(1.0, 0.0) - inner);
    }
    // A = I - Z1 Z2^*, an m x m matrix.
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += z1.coords[i * n + k] * z2.coords[j * n + k].conj();
            }
            *entry = if i == j {
                Complex64::new(1.0, 0.0) - acc
            } else {
                -acc
            };
        }
    }
    Ok(det_in_place(a))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det_in_place(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("nonempty range");
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let (top, bottom) = a.split_at_mut(row);
            let pivot_row = &top[col];
            let target = &mut bottom[0];
            let factor = target[col] / pivot_row[col];
            for (t, p) in target.iter_mut().zip(pivot_row).skip(col) {
                *t -= factor * p;
            }
        }
    }
    det
}

/// Whether `z` lies strictly inside its factor with the given margin:
/// `I - Z Z^* - margin I` stays positive definite (for balls,
/// `|z|^2 < 1 - margin`).
pub fn factor_inside(kind: CartanKind, z: &FactorPoint, margin: f64) -> Result<bool, NumericError> {
    let CartanKind::TypeI { m, n } = kind else {
        return Err(NumericError::UnsupportedFactor {
            kind: kind.to_string(),
        });
    };
    let (m, n) = (m as usize, n as usize);
    if z.coords.len() != m * n {
        return Err(NumericError::WrongShape {
            what: "factor coordinates",
            expected: m * n,
            got: z.coords.len(),
        });
    }
    if m == 1 {
        let norm2: f64 = z.coords.iter().map(|c| c.norm_sqr()).sum();
        return Ok(norm2 < 1.0 - margin);
    }
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += z.coords[i * n + k] * z.coords[j * n + k].conj();
            }
            let diag = if i == j { 1.0 - margin } else { 0.0 };
            *entry = Complex64::new(diag, 0.0) - acc;
        }
    }
    Ok(cholesky_positive_definite(a))
}

/// Cholesky test for positive definiteness of a Hermitian matrix.
fn cholesky_positive_definite(mut a: Vec<Vec<Complex64>>) -> bool {
    let n = a.len();
    for j in 0..n {
        let mut diag = a[j][j].re;
        for c in &a[j][..j] {
            diag -= c.norm_sqr();
        }
        if diag <= 0.0 {
            return false;
        }
        let diag = diag.sqrt();
        a[j][j] = Complex64::new(diag, 0.0);
        for i in j + 1..n {
            let (top, bottom) = a.split_at_mut(i);
            let row_j = &top[j];
            let row_i = &mut bottom[0];
            let mut v = row_i[j];
            for (x, y) in row_i[..j].iter().zip(&row_j[..j]) {
                v -= x * y.conj();
            }
            row_i[j] = v / diag;
        }
    }
    true
}

/// `prod_i N_i(z_i, z_i)^(mu_i)`, the fiber radius bound at a base point.
pub fn base_norm_power(spec: &DomainSpec, point: &FullPoint) -> Result<f64, NumericError> {
    check_shape(spec, point)?;
    let mut acc = 1.0f64;
    for (f, z) in spec.factors().iter().zip(&point.factors) {
        let n = generic_norm(f.kind(), z, z)?.re;
        if n <= 0.0 {
            return Err(NumericError::OutsideDomain);
        }
        acc *= n.powf(to_f64(f.mu()));
    }
    Ok(acc)
}

/// Squared fiber radius in normalized coordinates,
/// `s = |w|^2 / prod_i N_i^(mu_i)`.
pub fn normalized_fiber_radius(spec: &DomainSpec, point: &FullPoint) -> Result<f64, NumericError> {
    let w2: f64 = point.fiber.iter().map(|c| c.norm_sqr()).sum();
    Ok(w2 / base_norm_power(spec, point)?)
}

/// Whether the point lies inside the fibration with a relative margin on
/// every membership inequality.
pub fn is_inside(spec: &DomainSpec, point: &FullPoint, margin: f64) -> Result<bool, NumericError> {
    check_shape(spec, point)?;
    for (f, z) in spec.factors().iter().zip(&point.factors) {
        if !factor_inside(f.kind(), z, margin)? {
            return Ok(false);
        }
    }
    let bound = base_norm_power(spec, point)?;
    let w2: f64 = point.fiber.iter().map(|c| c.norm_sqr()).sum();
    Ok(w2 < (1.0 - margin) * bound)
}

/// Validates the coordinate layout of a point against the specification.
pub fn check_shape(spec: &DomainSpec, point: &FullPoint) -> Result<(), NumericError> {
    if point.factors.len() != spec.factors().len() {
        return Err(NumericError::WrongShape {
            what: "factor count",
            expected: spec.factors().len(),
            got: point.factors.len(),
        });
    }
    for (f, z) in spec.factors().iter().zip(&point.factors) {
        let want = coord_len(f.kind())?;
        if z.coords.len() != want {
            return Err(NumericError::WrongShape {
                what: "factor coordinates",
                expected: want,
                got: z.coords.len(),
            });
        }
    }
    if point.fiber.len() != spec.fiber_dim() as usize {
        return Err(NumericError::WrongShape {
            what: "fiber coordinates",
            expected: spec.fiber_dim() as usize,
            got: point.fiber.len(),
        });
    }
    Ok(())
}

/// Deterministic per-index substream of a seed (splitmix-style mixing).
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn unit_disc(rng: &mut impl Rng) -> Complex64 {
    loop {
        let re = rng.random_range(-1.0..1.0);
        let im = rng.random_range(-1.0..1.0);
        if re * re + im * im < 1.0 {
            return Complex64::new(re, im);
        }
    }
}

/// Draws an interior point by rejection: factor coordinates uniform in the
/// unit polydisc until the factor membership holds, then fiber coordinates
/// uniform in the polydisc of radius `(prod N^mu)^(1/2)` until the fiber
/// membership holds, all with margin [`SAMPLE_MARGIN`].
pub fn sample_point(
    spec: &DomainSpec,
    rng: &mut impl Rng,
    margin: f64,
) -> Result<FullPoint, NumericError> {
    let mut factors = Vec::with_capacity(spec.factors().len());
    for f in spec.factors() {
        let len = coord_len(f.kind())?;
        let z = loop {
            let cand = FactorPoint {
                coords: (0..len).map(|_| unit_disc(rng)).collect(),
            };
            if factor_inside(f.kind(), &cand, margin)? {
                break cand;
            }
        };
        factors.push(z);
    }
    let mut point = FullPoint {
        factors,
        fiber: vec![Complex64::new(0.0, 0.0); spec.fiber_dim() as usize],
    };
    let radius = base_norm_power(spec, &point)?.sqrt();
    loop {
        point.fiber = (0..spec.fiber_dim())
            .map(|_| unit_disc(rng) * radius)
            .collect();
        if is_inside(spec, &point, margin)? {
            return Ok(point);
        }
    }
}

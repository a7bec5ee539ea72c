//! Lattice bases, Gram matrices and a brute-force shortest-vector oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg;
use crate::math;

/// Smallest Gram eigenvalue accepted as linearly independent.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Upper bound on the number of points the brute-force oracle will visit.
pub const MAX_BOX_POINTS: u128 = 100_000_000;

/// Tolerance under which two squared norms count as the same minimum.
pub const MINIMIZER_TOLERANCE: f64 = 1e-9;

/// Basis vectors `b_1..b_n`, each of length `m >= n`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LatticeBasis {
    vectors: Vec<Vec<f64>>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::invalid(
                "basis",
                "at least one basis vector is required",
            ));
        }
        let m = vectors[0].len();
        if m < n {
            return Err(Error::invalid(
                "basis",
                "ambient dimension is smaller than the number of vectors",
            ));
        }
        if let Some(bad) = vectors.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.len(),
            });
        }
        if vectors.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::invalid("basis", "entries must be finite"));
        }
        let basis = LatticeBasis { vectors };
        basis.gram()?;
        Ok(basis)
    }

    /// `{(1, 0), (cos θ, sin θ)}`: two unit vectors separated by `theta`.
    pub fn normalized_2d(theta: f64) -> Result<Self> {
        Self::planar(1.0, 1.0, theta)
    }

    /// `{(len1, 0), len2·(cos θ, sin θ)}`.
    pub fn planar(len1: f64, len2: f64, theta: f64) -> Result<Self> {
        if !(len1 > 0.0 && len2 > 0.0) {
            return Err(Error::invalid("length", "basis lengths must be positive"));
        }
        Self::new(vec![
            vec![len1, 0.0],
            vec![len2 * math::cos(theta), len2 * math::sin(theta)],
        ])
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn gram(&self) -> Result<GramMatrix> {
        gram_matrix(self)
    }

    /// The lattice point `Σ x_i b_i`.
    pub fn point(&self, x: &[i64]) -> Result<Vec<f64>> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        let mut v = vec![0.0; self.ambient_dimension()];
        for (xi, b) in x.iter().zip(&self.vectors) {
            for (vl, bl) in v.iter_mut().zip(b) {
                *vl += *xi as f64 * bl;
            }
        }
        Ok(v)
    }
}

/// Symmetric positive definite matrix of basis inner products.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GramMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl GramMatrix {
    /// Builds a Gram matrix from explicit rows, checking symmetry and
    /// positive definiteness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("gram", "matrix is empty"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..i {
                if math::abs(entries[i * n + j] - entries[j * n + i]) > 1e-12 {
                    return Err(Error::invalid("gram", "matrix is not symmetric"));
                }
            }
        }
        let g = GramMatrix { n, entries };
        g.check_positive_definite()?;
        Ok(g)
    }

    fn check_positive_definite(&self) -> Result<()> {
        let min_eigenvalue = self.min_eigenvalue();
        if !(min_eigenvalue > DEGENERACY_THRESHOLD) {
            return Err(Error::DegenerateBasis { min_eigenvalue });
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::symmetric_eigenvalues(&self.entries, self.n)[0]
    }

    /// `Σ_ij |G_ij|`.
    pub fn abs_sum(&self) -> f64 {
        self.entries.iter().map(|g| math::abs(*g)).sum()
    }

    /// `xᵀ G x` for a real vector, used for operator eigenvalues that may not be integers.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            let row: f64 = self.entries[i * self.n..(i + 1) * self.n]
                .iter()
                .zip(x)
                .map(|(g, v)| g * v)
                .sum();
            acc += x[i] * row;
        }
        acc
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

pub fn gram_matrix(basis: &LatticeBasis) -> Result<GramMatrix> {
    let n = basis.dimension();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let dot: f64 = basis.vectors[i]
                .iter()
                .zip(&basis.vectors[j])
                .map(|(a, b)| a * b)
                .sum();
            entries[i * n + j] = dot;
            entries[j * n + i] = dot;
        }
    }
    let g = GramMatrix { n, entries };
    g.check_positive_definite()?;
    Ok(g)
}

/// Integer coefficients `x` of a lattice point `Σ x_i b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct CoefficientVector(pub Vec<i64>);

impl CoefficientVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Self {
        CoefficientVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Deref for CoefficientVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for CoefficientVector {
    fn from(v: Vec<i64>) -> Self {
        CoefficientVector(v)
    }
}

pub fn norm_squared(x: &[i64], g: &GramMatrix) -> Result<f64> {
    if x.len() != g.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: x.len(),
        });
    }
    let xf: Vec<f64> = x.iter().map(|&c| c as f64).collect();
    Ok(g.quadratic_form(&xf))
}

/// Minimal nonzero squared norm and every coefficient vector attaining it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SvpSolution {
    pub shortest_norm_sq: f64,
    pub minimizers: Vec<CoefficientVector>,
}

impl SvpSolution {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.minimizers.iter().any(|m| m.0 == x)
    }
}

/// Exhaustive search over `x ∈ [-k, k]^n \ {0}`.
pub fn brute_force_svp(basis: &LatticeBasis, k: u32) -> Result<SvpSolution> {
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    let k = i64::from(k);
    shortest_in_box(&basis.gram()?, -k, k)
}

/// Exhaustive search over the box `[lo, hi]^n` without the origin. The box
/// must contain zero and at least one other point.
pub fn shortest_in_box(g: &GramMatrix, lo: i64, hi: i64) -> Result<SvpSolution> {
    if !(lo <= 0 && hi >= 0 && hi - lo >= 1) {
        return Err(Error::invalid(
            "box",
            "must contain the origin and a nonzero point",
        ));
    }
    let n = g.dimension();
    let side = (hi - lo + 1) as u128;
    let mut points: u128 = 1;
    for _ in 0..n {
        points = points.saturating_mul(side);
    }
    if points > MAX_BOX_POINTS {
        return Err(Error::SearchBoxTooLarge {
            points,
            limit: MAX_BOX_POINTS,
        });
    }

    let mut best = f64::INFINITY;
    let mut minimizers: Vec<CoefficientVector> = Vec::new();
    let mut x = vec![lo; n];
    let mut xf = vec![lo as f64; n];
    loop {
        if x.iter().any(|&c| c != 0) {
            let e = g.quadratic_form(&xf);
            if e < best - MINIMIZER_TOLERANCE {
                best = e;
                minimizers.clear();
                minimizers.push(CoefficientVector(x.clone()));
            } else if e <= best + MINIMIZER_TOLERANCE {
                minimizers.push(CoefficientVector(x.clone()));
                if e < best {
                    best = e;
                }
            }
        }
        // odometer increment, first coordinate fastest
        let mut i = 0;
        loop {
            if i == n {
                minimizers.retain(|m| {
                    let xf: Vec<f64> = m.iter().map(|&c| c as f64).collect();
                    g.quadratic_form(&xf) <= best + MINIMIZER_TOLERANCE
                });
                minimizers.sort();
                return Ok(SvpSolution {
                    shortest_norm_sq: best,
                    minimizers,
                });
            }
            if x[i] < hi {
                x[i] += 1;
                xf[i] = x[i] as f64;
                break;
            }
            x[i] = lo;
            xf[i] = lo as f64;
            i += 1;
        }
    }
}

/// First excited energy of the normalized two-dimensional family as a
/// function of the angle between the basis vectors.
pub fn analytic_e1_2d(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::invalid("theta", "must lie in (0, π]"));
    }
    Ok(if theta <= PI / 3.0 {
        2.0 - 2.0 * math::cos(theta)
    } else if theta <= 2.0 * PI / 3.0 {
        1.0
    } else {
        2.0 + 2.0 * math::cos(theta)
    })
}

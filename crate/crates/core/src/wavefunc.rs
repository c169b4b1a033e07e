//! Exact radial eigenfunctions.
//!
//! `u(r) = r^q · exp(−(γ/2)(r/r₀)²) · ₁F₁(−n, 1 + √((l+½)² + γ²); γ(r/r₀)²)`
//!
//! Only the solution regular at the origin is built. The second Kummer branch
//! carries a factor `ρ^(−2√((l+½)²+γ²))` and diverges at ρ = 0, so its
//! coefficient is zero for a bound state.
//!
//! With γ in the hundreds for real molecules `r^q` overflows, so everything is
//! evaluated as `ln|u|` plus a sign and exponentiated after shifting.

use crate::error::{Error, Result};
use crate::quadrature::{simpson, trapezoid};
use crate::spectrum::{
    centrifugal_root, gamma_squared, potential_unchecked, Molecule, QuantumState,
};
use crate::units::ev_to_cm1;

/// `₁F₁(−n, b; z)` as the terminating sum of `n + 1` terms.
pub fn kummer_polynomial(n: u32, b: f64, z: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain {
            quantity: "b",
            value: b,
            requirement: "b > 0",
        });
    }
    Ok(kummer_sum(n, b, z))
}

fn kummer_sum(n: u32, b: f64, z: f64) -> f64 {
    let neg_n = -f64::from(n);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let k = f64::from(k);
        term *= (neg_n + k) * z / ((b + k) * (k + 1.0));
        sum += term;
    }
    sum
}

/// Generalized Laguerre polynomial `L_n^(ν)(z)` by the three-term recurrence.
pub fn laguerre(n: u32, nu: f64, z: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(Error::Domain {
            quantity: "nu",
            value: nu,
            requirement: "nu > -1",
        });
    }
    Ok(laguerre_recurrence(n, nu, z))
}

fn laguerre_recurrence(n: u32, nu: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + nu - z;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + nu - z) * curr - (k + nu) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Generalized binomial `C(n + ν, n) = Γ(n+ν+1)/(Γ(ν+1)·n!)`, the factor
/// relating `L_n^(ν)(z)` to `₁F₁(−n, ν+1; z)`.
pub fn laguerre_kummer_factor(n: u32, nu: f64) -> f64 {
    (1..=n)
        .map(|k| (nu + f64::from(k)) / f64::from(k))
        .product()
}

/// Which polynomial evaluates the `n`-dependent factor. Both give the same
/// normalized function; they differ by a constant absorbed into `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolynomialRoute {
    #[default]
    Kummer,
    Laguerre,
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    q: f64,
    gamma: f64,
    b: f64,
    r0: f64,
    n: u32,
    route: PolynomialRoute,
}

impl Shape {
    fn new(mol: &Molecule, st: QuantumState, route: PolynomialRoute) -> Self {
        let gamma_sq = gamma_squared(mol);
        let root = centrifugal_root(gamma_sq, st.l);
        Self {
            q: 0.5 + root,
            gamma: gamma_sq.sqrt(),
            b: 1.0 + root,
            r0: mol.r0(),
            n: st.n,
            route,
        }
    }

    /// `(ln|u|, sign)`; a zero of the polynomial gives `ln|u| = −∞`.
    fn log_value(&self, r: f64) -> (f64, f64) {
        let rho = r / self.r0;
        let s = self.gamma * rho * rho;
        let poly = match self.route {
            PolynomialRoute::Kummer => kummer_sum(self.n, self.b, s),
            PolynomialRoute::Laguerre => laguerre_recurrence(self.n, self.b - 1.0, s),
        };
        (self.q * r.ln() - 0.5 * s + poly.abs().ln(), poly.signum())
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "r",
            value: r,
            requirement: "r > 0",
        })
    }
}

/// `ln|u(r)|` and the sign of `u(r)` for the unnormalized function.
pub fn log_radial_unnormalized(mol: &Molecule, st: QuantumState, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    Ok(Shape::new(mol, st, PolynomialRoute::Kummer).log_value(r))
}

/// Unnormalized `u(r)`. Underflows to zero (or overflows) far from r₀ when γ
/// is large; use [`log_radial_unnormalized`] there.
pub fn radial_unnormalized(mol: &Molecule, st: QuantumState, r: f64) -> Result<f64> {
    let (log_abs, sign) = log_radial_unnormalized(mol, st, r)?;
    Ok(sign * log_abs.exp())
}

/// A uniform grid `r_min..=r_max` (Å) with an odd number of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub const DEFAULT_POINTS: usize = 20001;

    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        check_radius(r_min)?;
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(Error::Domain {
                quantity: "r_max",
                value: r_max,
                requirement: "r_max > r_min",
            });
        }
        if points < 5 || points.is_multiple_of(2) {
            return Err(Error::Domain {
                quantity: "points",
                value: points as f64,
                requirement: "odd and at least 5",
            });
        }
        Ok(Self {
            r_min,
            r_max,
            points,
        })
    }

    /// Eight packet widths `r₀/√γ` on either side of r₀.
    pub fn default_for(mol: &Molecule) -> Self {
        Self::window(mol, 8.0, Self::DEFAULT_POINTS)
    }

    pub(crate) fn window(mol: &Molecule, widths: f64, points: usize) -> Self {
        let spread = widths / gamma_squared(mol).sqrt().sqrt();
        Self {
            r_min: mol.r0() * (1.0 - spread).max(1e-3),
            r_max: mol.r0() * (1.0 + spread),
            points,
        }
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points - 1) as f64
    }

    pub fn radii(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.r_max
                } else {
                    self.r_min + k as f64 * h
                }
            })
            .collect()
    }
}

/// A normalized radial function `u(r)` sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    pub molecule: Molecule,
    pub state: QuantumState,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `ln N`, where `N·u_unnormalized` has unit norm.
    pub log_norm_constant: f64,
    shape: Shape,
}

/// Largest relative gap between Simpson and trapezoid sums that still counts
/// as a resolved integrand.
const QUADRATURE_TOLERANCE: f64 = 1e-8;
/// Largest `u²` at either grid end relative to the peak.
const TAIL_TOLERANCE: f64 = 1e-12;

pub fn normalize(mol: &Molecule, st: QuantumState, grid: &GridSpec) -> Result<RadialFunction> {
    normalize_with(mol, st, grid, PolynomialRoute::Kummer)
}

pub fn normalize_with(
    mol: &Molecule,
    st: QuantumState,
    grid: &GridSpec,
    route: PolynomialRoute,
) -> Result<RadialFunction> {
    let grid = GridSpec::new(grid.r_min, grid.r_max, grid.points)?;
    let shape = Shape::new(mol, st, route);
    let radii = grid.radii();
    let logs: Vec<(f64, f64)> = radii.iter().map(|&r| shape.log_value(r)).collect();
    let shift = logs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = logs.iter().map(|&(l, s)| s * (l - shift).exp()).collect();

    let h = grid.step();
    let squares: Vec<f64> = shifted.iter().map(|u| u * u).collect();
    let mass = simpson(&squares, h);
    let coarse = trapezoid(&squares, h);
    let gap = ((mass - coarse) / mass).abs();
    if !(gap <= QUADRATURE_TOLERANCE) {
        return Err(Error::Convergence(format!(
            "normalization of {st} on {} points over [{}, {}] Å: Simpson and trapezoid differ by {gap:.3e}",
            grid.points, grid.r_min, grid.r_max
        )));
    }
    let tail = squares[0].max(squares[squares.len() - 1]);
    if !(tail <= TAIL_TOLERANCE) {
        return Err(Error::Convergence(format!(
            "normalization of {st}: grid [{}, {}] Å truncates the wavefunction (edge u² / peak = {tail:.3e})",
            grid.r_min, grid.r_max
        )));
    }

    let scale = mass.sqrt().recip();
    Ok(RadialFunction {
        molecule: mol.clone(),
        state: st,
        grid: radii,
        values: shifted.iter().map(|u| u * scale).collect(),
        log_norm_constant: -shift - 0.5 * mass.ln(),
        shape,
    })
}

impl RadialFunction {
    /// `N`; may overflow for large γ, see `log_norm_constant`.
    pub fn norm_constant(&self) -> f64 {
        self.log_norm_constant.exp()
    }

    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// Normalized `u(r)` at an arbitrary radius.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let (log_abs, sign) = self.shape.log_value(r);
        Ok(sign * (log_abs + self.log_norm_constant).exp())
    }

    /// `∫ u² dr` over the grid.
    pub fn norm(&self) -> f64 {
        let squares: Vec<f64> = self.values.iter().map(|u| u * u).collect();
        simpson(&squares, self.step())
    }

    /// `∫ u·v dr`; both functions must share the grid.
    pub fn overlap(&self, other: &RadialFunction) -> f64 {
        debug_assert_eq!(self.grid.len(), other.grid.len());
        let products: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        simpson(&products, self.step())
    }
}

/// Number of strict sign changes of the samples; exact zeros are skipped.
pub fn count_nodes(rf: &RadialFunction) -> usize {
    sign_changes(&rf.values)
}

pub(crate) fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for &v in values.iter().filter(|v| **v != 0.0) {
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

/// `u''(rᵢ) + [(E − V(rᵢ))/(ħ²/2μ) − l(l+1)/rᵢ²] u(rᵢ)` with a centred
/// second difference, in Å⁻² times the units of `u`.
pub fn radial_equation_residual(rf: &RadialFunction, e: f64, i: usize) -> Result<f64> {
    let len = rf.grid.len();
    if i == 0 || i + 1 >= len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    let h = rf.step();
    let u = &rf.values;
    let second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    let r = rf.grid[i];
    let l = f64::from(rf.state.l);
    let mol = &rf.molecule;
    let k =
        (ev_to_cm1(e) - potential_unchecked(mol, r)) / mol.kinetic_unit() - l * (l + 1.0) / (r * r);
    Ok(second + k * u[i])
}

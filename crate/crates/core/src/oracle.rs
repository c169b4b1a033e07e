//! Numerov shooting eigensolver for `u'' = f(r) u`, used as an independent
//! check on the closed-form spectrum. Nothing here touches the analytic
//! energies or the special polynomials.
//!
//! A single outward sweep is integrated from the inner barrier. Between
//! eigenvalues the trajectory diverges at `r_max` with a definite sign, and
//! each time `E` crosses an eigenvalue a new node enters through the far end.
//! So the eigenvalue `E_n` is the energy at which the node count steps from
//! `n` to `n + 1`.

use crate::error::{Error, Result};
use crate::spectrum::{
    energy_closed_form, gamma_squared, potential_unchecked, HarmonicOscillator, Molecule,
    QuantumState,
};
use crate::units::{cm1_to_ev, ev_to_cm1};

/// A radial problem `−(ħ²/2μ) u'' + [V(r) + (ħ²/2μ) l(l+1)/r²] u = E u`.
pub trait RadialProblem {
    /// ħ²/(2μ) in cm⁻¹·Å².
    fn kinetic_unit(&self) -> f64;

    /// V(r) in cm⁻¹.
    fn potential(&self, r: f64) -> f64;

    fn default_grid(&self) -> RadialGrid;
}

impl RadialProblem for Molecule {
    fn kinetic_unit(&self) -> f64 {
        Molecule::kinetic_unit(self)
    }

    fn potential(&self, r: f64) -> f64 {
        potential_unchecked(self, r)
    }

    /// Ten packet widths `r₀/√γ` on either side of r₀, 40001 points.
    fn default_grid(&self) -> RadialGrid {
        let spread = 10.0 / gamma_squared(self).sqrt().sqrt();
        RadialGrid {
            r_min: self.r0() * (1.0 - spread).max(1e-3),
            r_max: self.r0() * (1.0 + spread),
            n_points: RadialGrid::DEFAULT_POINTS,
        }
    }
}

impl RadialProblem for HarmonicOscillator {
    fn kinetic_unit(&self) -> f64 {
        HarmonicOscillator::kinetic_unit(self)
    }

    fn potential(&self, r: f64) -> f64 {
        self.b_sq * r * r
    }

    /// `[10⁻³ a, 12 a]` with the oscillator length `a = (ħ²/2μ / B²)^¼`.
    fn default_grid(&self) -> RadialGrid {
        let a = (self.kinetic_unit() / self.b_sq).sqrt().sqrt();
        RadialGrid {
            r_min: 1e-3 * a,
            r_max: 12.0 * a,
            n_points: RadialGrid::DEFAULT_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
}

impl RadialGrid {
    pub const DEFAULT_POINTS: usize = 40001;
    pub const MIN_POINTS: usize = 1001;

    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(Error::Domain {
                quantity: "r_min",
                value: r_min,
                requirement: "r_min > 0",
            });
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(Error::Domain {
                quantity: "r_max",
                value: r_max,
                requirement: "r_max > r_min",
            });
        }
        if n_points < Self::MIN_POINTS || n_points.is_multiple_of(2) {
            return Err(Error::Domain {
                quantity: "n_points",
                value: n_points as f64,
                requirement: "odd and at least 1001",
            });
        }
        Ok(Self {
            r_min,
            r_max,
            n_points,
        })
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n_points - 1) as f64
    }

    /// Same interval with the step halved.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    /// u(r_max), in the arbitrary scale left by in-flight rescaling.
    pub endpoint: f64,
    pub nodes: usize,
}

/// Trajectories are divided by their magnitude once they pass this.
const RESCALE_THRESHOLD: f64 = 1e250;
/// Points with `h² f / 12` above this sit deep inside the inner barrier,
/// where the Numerov recurrence loses its meaning; the sweep starts after them.
const MAX_NUMEROV_WEIGHT: f64 = 0.5;
const SEED: f64 = 1e-20;
pub const MAX_BISECTIONS: usize = 200;

/// `E`-independent part of `f(r)`, precomputed once per (problem, l, grid).
struct Sweeper {
    h: f64,
    inv_kinetic: f64,
    start: usize,
    /// `l(l+1)/r² + V(r)/(ħ²/2μ)` on the grid.
    base: Vec<f64>,
    radii: Vec<f64>,
}

impl Sweeper {
    fn new<P: RadialProblem + ?Sized>(problem: &P, l: u32, grid: &RadialGrid) -> Self {
        let h = grid.step();
        let inv_kinetic = problem.kinetic_unit().recip();
        let centrifugal = f64::from(l) * f64::from(l + 1);
        let radii: Vec<f64> = (0..grid.n_points)
            .map(|k| grid.r_min + k as f64 * h)
            .collect();
        let base: Vec<f64> = radii
            .iter()
            .map(|&r| centrifugal / (r * r) + problem.potential(r) * inv_kinetic)
            .collect();
        let limit = 12.0 * MAX_NUMEROV_WEIGHT / (h * h);
        let start = base
            .iter()
            .position(|&w| w < limit)
            .unwrap_or(base.len())
            .min(base.len().saturating_sub(3));
        Self {
            h,
            inv_kinetic,
            start,
            base,
            radii,
        }
    }

    /// `f(r)` expressed in cm⁻¹, i.e. the effective potential `V_eff(r)`.
    fn effective_potential(&self, k: usize) -> f64 {
        self.base[k] / self.inv_kinetic
    }

    fn sweep(&self, e_cm1: f64) -> Sweep {
        let g = self.h * self.h / 12.0;
        let shift = e_cm1 * self.inv_kinetic;
        let i0 = self.start;

        // Local power law u ~ r^q from f ≈ c/r² at the first point.
        let r_start = self.radii[i0];
        let c = (self.base[i0] - shift) * r_start * r_start;
        let q = 0.5 + (0.25 + c.max(0.0)).sqrt();
        let growth = (q * (self.radii[i0 + 1] / r_start).ln()).min(500.0).exp();

        let mut prev = SEED;
        let mut curr = SEED * growth;
        let mut w_prev = 1.0 - g * (self.base[i0] - shift);
        let mut w_curr = 1.0 - g * (self.base[i0 + 1] - shift);
        let mut nodes = 0;
        for k in i0 + 2..self.base.len() {
            let w_next = 1.0 - g * (self.base[k] - shift);
            let next = ((12.0 - 10.0 * w_curr) * curr - w_prev * prev) / w_next;
            if next != 0.0 && curr != 0.0 && next.signum() != curr.signum() {
                nodes += 1;
            }
            prev = curr;
            curr = next;
            w_prev = w_curr;
            w_curr = w_next;
            let size = curr.abs();
            if size > RESCALE_THRESHOLD {
                prev /= size;
                curr /= size;
            }
        }
        Sweep {
            endpoint: curr,
            nodes,
        }
    }
}

/// One outward Numerov sweep at energy `e` (eV).
pub fn numerov_sweep<P: RadialProblem + ?Sized>(
    problem: &P,
    l: u32,
    e: f64,
    grid: &RadialGrid,
) -> Sweep {
    Sweeper::new(problem, l, grid).sweep(ev_to_cm1(e))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotEigenvalue {
    /// eV, same zero as the potential.
    pub energy: f64,
    /// Nodes of the trajectory just below the eigenvalue.
    pub nodes: usize,
    pub bisections: usize,
}

/// Locates the `n`-th eigenvalue for angular momentum `l` to within `tol` (eV).
///
/// The search is blind: the lower end is the minimum of the effective
/// potential over the grid and the upper end grows geometrically until the
/// node count exceeds `n`. The seed pins `u → 0` at the inner end; energies
/// above the effective potential at `r_max` are not confined by the grid, so
/// the search stops there.
pub fn shoot_eigenvalue<P: RadialProblem + ?Sized>(
    problem: &P,
    st: QuantumState,
    grid: &RadialGrid,
    tol: f64,
) -> Result<ShotEigenvalue> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            quantity: "tol",
            value: tol,
            requirement: "tol > 0",
        });
    }
    let failure = |reason: String| Error::SearchFailure {
        n: st.n,
        l: st.l,
        reason,
    };
    let sweeper = Sweeper::new(problem, st.l, grid);
    let last = sweeper.base.len() - 1;
    let floor = (sweeper.start..=last)
        .map(|k| sweeper.effective_potential(k))
        .fold(f64::INFINITY, f64::min);
    let ceiling = sweeper.effective_potential(last);
    if !(ceiling > floor) {
        return Err(failure(format!(
            "grid [{}, {}] Å contains no potential well",
            grid.r_min, grid.r_max
        )));
    }

    let n = st.n as usize;
    let above = |e: f64| sweeper.sweep(e).nodes > n;
    let tol_cm1 = ev_to_cm1(tol);

    let mut lo = floor;
    let mut step = (ceiling - floor) * 1e-6;
    let mut hi = loop {
        let candidate = (lo + step).min(ceiling);
        if above(candidate) {
            break candidate;
        }
        if candidate >= ceiling {
            return Err(failure(format!(
                "node count stays at or below {n} up to the confinement limit {:.6e} eV",
                cm1_to_ev(ceiling)
            )));
        }
        lo = candidate;
        step *= 2.0;
    };

    let mut bisections = 0;
    while hi - lo > tol_cm1 {
        if bisections == MAX_BISECTIONS {
            return Err(Error::Convergence(format!(
                "bisection for {st} stalled at width {:.3e} eV",
                cm1_to_ev(hi - lo)
            )));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        bisections += 1;
    }
    Ok(ShotEigenvalue {
        energy: cm1_to_ev(0.5 * (lo + hi)),
        nodes: sweeper.sweep(lo).nodes,
        bisections,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub molecule: Molecule,
    pub state: QuantumState,
    pub e_closed: f64,
    pub e_numeric: f64,
    pub rel_err: f64,
    pub node_count: usize,
    pub grid: RadialGrid,
}

/// Compares the closed form with the shooting solver on the default grid.
pub fn verify(mol: &Molecule, st: QuantumState) -> Result<VerificationReport> {
    verify_against(mol, mol, st)
}

/// Closed form from `reference`, numerics from `numeric`. Passing two
/// different molecules is how a disagreement is provoked on purpose.
pub fn verify_against(
    reference: &Molecule,
    numeric: &Molecule,
    st: QuantumState,
) -> Result<VerificationReport> {
    let grid = numeric.default_grid();
    verify_on(reference, numeric, st, grid)
}

pub fn verify_on(
    reference: &Molecule,
    numeric: &Molecule,
    st: QuantumState,
    grid: RadialGrid,
) -> Result<VerificationReport> {
    let e_closed = energy_closed_form(reference, st);
    let shot = shoot_eigenvalue(numeric, st, &grid, 1e-8 * e_closed.abs())?;
    Ok(VerificationReport {
        molecule: reference.clone(),
        state: st,
        e_closed,
        e_numeric: shot.energy,
        rel_err: ((shot.energy - e_closed) / e_closed).abs(),
        node_count: shot.nodes,
        grid,
    })
}

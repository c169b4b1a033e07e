//! Closed-form spectrum of the pseudoharmonic potential
//! `V(r) = D₀ (r/r₀ − r₀/r)²` and its mapping onto a 3D harmonic oscillator
//! with a non-integer effective angular momentum.

use std::fmt;

use crate::error::{Error, Result};
use crate::units::{cm1_to_ev, ev_to_cm1, kinetic_scale_unchecked};

/// A diatomic system: dissociation energy `d0` (cm⁻¹), equilibrium
/// separation `r0` (Å) and reduced mass `mu` (amu).
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    name: String,
    d0: f64,
    r0: f64,
    mu: f64,
}

impl Molecule {
    pub fn new(name: impl Into<String>, d0: f64, r0: f64, mu: f64) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidMolecule {
                field: "name",
                message: format!("'{name}' must be nonempty without whitespace"),
            });
        }
        for (field, value) in [("d0", d0), ("r0", r0), ("mu", mu)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidMolecule {
                    field,
                    message: format!("must be positive and finite, got {value}"),
                });
            }
        }
        Ok(Self { name, d0, r0, mu })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d0(&self) -> f64 {
        self.d0
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// ħ²/(2μr₀²) in cm⁻¹.
    pub fn kinetic_scale(&self) -> f64 {
        kinetic_scale_unchecked(self.mu, self.r0)
    }

    /// ħ²/(2μ) in cm⁻¹·Å².
    pub fn kinetic_unit(&self) -> f64 {
        kinetic_scale_unchecked(self.mu, 1.0)
    }

    /// Same molecule with `d0` scaled by `factor`.
    pub fn with_scaled_d0(&self, factor: f64) -> Result<Self> {
        Self::new(self.name.clone(), self.d0 * factor, self.r0, self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
}

impl QuantumState {
    pub const fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// Dimensionless quantities of the reduced radial equation
/// `R'' + [ε² − γ²ρ² − (γ² + l(l+1))/ρ²] R = 0` with `ρ = r/r₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub gamma_sq: f64,
    pub epsilon_sq: f64,
    /// Small-ρ exponent, `R ~ ρ^q`. Always the regular (plus) branch.
    pub q: f64,
    pub l_eff: f64,
}

impl DimensionlessParams {
    /// Parameters at an arbitrary energy `e` (eV).
    pub fn at_energy(mol: &Molecule, l: u32, e: f64) -> Self {
        let gamma_sq = gamma_squared(mol);
        Self {
            gamma_sq,
            epsilon_sq: (ev_to_cm1(e) + 2.0 * mol.d0) / mol.kinetic_scale(),
            q: 0.5 + centrifugal_root(gamma_sq, l),
            l_eff: effective_l(mol, l),
        }
    }

    pub fn for_eigenstate(mol: &Molecule, st: QuantumState) -> Self {
        Self::at_energy(mol, st.l, energy_closed_form(mol, st))
    }

    pub fn gamma(&self) -> f64 {
        self.gamma_sq.sqrt()
    }
}

/// √((l+½)² + γ²), which recurs in every formula below.
pub(crate) fn centrifugal_root(gamma_sq: f64, l: u32) -> f64 {
    let half = f64::from(l) + 0.5;
    (half * half + gamma_sq).sqrt()
}

/// Potential energy in cm⁻¹ at separation `r` (Å).
pub fn potential(mol: &Molecule, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            quantity: "r",
            value: r,
            requirement: "r > 0",
        });
    }
    Ok(potential_unchecked(mol, r))
}

pub(crate) fn potential_unchecked(mol: &Molecule, r: f64) -> f64 {
    let x = r / mol.r0 - mol.r0 / r;
    mol.d0 * x * x
}

/// γ² = 2μD₀r₀²/ħ².
pub fn gamma_squared(mol: &Molecule) -> f64 {
    mol.d0 / mol.kinetic_scale()
}

/// Closed-form eigenvalue in cm⁻¹.
pub fn energy_closed_form_cm1(mol: &Molecule, st: QuantumState) -> f64 {
    let scale = mol.kinetic_scale();
    let gamma_sq = mol.d0 / scale;
    let radial = 2.0 * f64::from(st.n) + 1.0;
    -2.0 * mol.d0 + 2.0 * (mol.d0 * scale).sqrt() * (radial + centrifugal_root(gamma_sq, st.l))
}

/// Closed-form eigenvalue in eV.
pub fn energy_closed_form(mol: &Molecule, st: QuantumState) -> f64 {
    cm1_to_ev(energy_closed_form_cm1(mol, st))
}

/// Effective angular momentum `L` with `L(L+1) = l(l+1) + γ²`.
pub fn effective_l(mol: &Molecule, l: u32) -> f64 {
    effective_l_for(gamma_squared(mol), l)
}

pub(crate) fn effective_l_for(gamma_sq: f64, l: u32) -> f64 {
    centrifugal_root(gamma_sq, l) - 0.5
}

/// The isotropic oscillator `V(r) = B²r²` (B² in cm⁻¹/Å²) for a mass in amu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicOscillator {
    pub b_sq: f64,
    pub mu: f64,
}

impl HarmonicOscillator {
    pub fn new(b_sq: f64, mu: f64) -> Result<Self> {
        if !(b_sq > 0.0 && b_sq.is_finite()) {
            return Err(Error::Domain {
                quantity: "b_sq",
                value: b_sq,
                requirement: "B² > 0",
            });
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Domain {
                quantity: "mu",
                value: mu,
                requirement: "mu > 0",
            });
        }
        Ok(Self { b_sq, mu })
    }

    /// The oscillator part of the molecule's potential, `B² = D₀/r₀²`.
    pub fn from_molecule(mol: &Molecule) -> Self {
        Self {
            b_sq: mol.d0 / (mol.r0 * mol.r0),
            mu: mol.mu,
        }
    }

    pub fn kinetic_unit(&self) -> f64 {
        kinetic_scale_unchecked(self.mu, 1.0)
    }

    /// ħω in cm⁻¹.
    pub fn quantum_cm1(&self) -> f64 {
        2.0 * (self.kinetic_unit() * self.b_sq).sqrt()
    }

    /// `√(ħ²/2μ)·B·(4n + 2L + 3)` in cm⁻¹ for a possibly non-integer `L`.
    pub fn level_cm1(&self, n: u32, big_l: f64) -> f64 {
        (self.kinetic_unit() * self.b_sq).sqrt() * (4.0 * f64::from(n) + 2.0 * big_l + 3.0)
    }

    /// Textbook spectrum `ħω(2n + l + 3/2)` in eV.
    pub fn energy(&self, st: QuantumState) -> f64 {
        cm1_to_ev(self.level_cm1(st.n, f64::from(st.l)))
    }
}

/// The same eigenvalue reached through the oscillator mapping: shift by
/// `−2D₀` and replace `l` with the effective `L`.
pub fn energy_via_oscillator(mol: &Molecule, st: QuantumState) -> f64 {
    let oscillator = HarmonicOscillator::from_molecule(mol);
    let level = oscillator.level_cm1(st.n, effective_l(mol, st.l));
    cm1_to_ev(level - 2.0 * mol.d0)
}

/// Truncation condition of the Kummer series, `a + n` with
/// `a = ½(1 + √((l+½)² + γ²) − ε²/(2γ))`. Zero exactly at eigenvalues.
pub fn quantization_residual(mol: &Molecule, st: QuantumState, e: f64) -> f64 {
    let p = DimensionlessParams::at_energy(mol, st.l, e);
    0.5 * (1.0 + centrifugal_root(p.gamma_sq, st.l) - p.epsilon_sq / (2.0 * p.gamma()))
        + f64::from(st.n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub state: QuantumState,
    pub energy_ev: f64,
}

pub const MAX_TABLE_ROWS: u64 = 1_000_000;

/// All levels with `n ≤ n_max`, `l ≤ l_max`, ordered by `(n, l)`.
pub fn spectrum_table(mol: &Molecule, n_max: u32, l_max: u32) -> Result<Vec<SpectrumRow>> {
    let rows = (u64::from(n_max) + 1) * (u64::from(l_max) + 1);
    if rows > MAX_TABLE_ROWS {
        return Err(Error::TooManyRows {
            rows,
            limit: MAX_TABLE_ROWS,
        });
    }
    Ok((0..=n_max)
        .flat_map(|n| (0..=l_max).map(move |l| QuantumState::new(n, l)))
        .map(|state| SpectrumRow {
            state,
            energy_ev: energy_closed_form(mol, state),
        })
        .collect())
}

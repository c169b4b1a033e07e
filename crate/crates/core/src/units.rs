//! Physical constants and the conversions between spectroscopic and SI units.
//!
//! Energies are carried in cm⁻¹ throughout the crate and only converted to eV
//! at the presentation boundary.

use crate::error::{Error, Result};

/// The five constants everything else is derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsTable {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Unified atomic mass unit, kg.
    pub amu_kg: f64,
    /// Joules per electronvolt.
    pub ev_j: f64,
    /// Joules per wavenumber (h·c with c in cm/s).
    pub cm1_j: f64,
    /// Metres per ångström.
    pub angstrom_m: f64,
}

/// CODATA-2018 values.
pub const CODATA_2018: ConstantsTable = ConstantsTable {
    hbar: 1.054571817e-34,
    amu_kg: 1.660_539_066_60e-27,
    ev_j: 1.602176634e-19,
    cm1_j: 1.986445857e-23,
    angstrom_m: 1e-10,
};

impl ConstantsTable {
    /// `(name, value, unit)` triples in a stable order.
    pub fn entries(&self) -> [(&'static str, f64, &'static str); 5] {
        [
            ("hbar", self.hbar, "J s"),
            ("amu_kg", self.amu_kg, "kg"),
            ("ev_J", self.ev_j, "J/eV"),
            ("cm1_J", self.cm1_j, "J/cm^-1"),
            ("angstrom_m", self.angstrom_m, "m/angstrom"),
        ]
    }

    pub fn cm1_per_ev(&self) -> f64 {
        self.ev_j / self.cm1_j
    }

    pub fn ev_per_cm1(&self) -> f64 {
        self.cm1_j / self.ev_j
    }
}

pub fn cm1_to_ev(x: f64) -> f64 {
    x * CODATA_2018.ev_per_cm1()
}

pub fn ev_to_cm1(x: f64) -> f64 {
    x * CODATA_2018.cm1_per_ev()
}

/// ħ²/(2μr₀²) in cm⁻¹ for a mass in amu and a length in Å.
pub fn kinetic_scale(mu: f64, r0: f64) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain {
            quantity: "mu",
            value: mu,
            requirement: "mu > 0",
        });
    }
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::Domain {
            quantity: "r0",
            value: r0,
            requirement: "r0 > 0",
        });
    }
    Ok(kinetic_scale_unchecked(mu, r0))
}

pub(crate) fn kinetic_scale_unchecked(mu: f64, r0: f64) -> f64 {
    let c = &CODATA_2018;
    let length = r0 * c.angstrom_m;
    c.hbar * c.hbar / (2.0 * mu * c.amu_kg * length * length) / c.cm1_j
}

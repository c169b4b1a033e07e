use proptest::prelude::*;

use pseudoharmonic::moldb::{parse_molecule_file, MoleculeFile};
use pseudoharmonic::spectrum::{
    effective_l, energy_closed_form, energy_via_oscillator, gamma_squared, quantization_residual,
};
use pseudoharmonic::units::{cm1_to_ev, kinetic_scale};
use pseudoharmonic::wavefunc::{kummer_polynomial, laguerre, laguerre_kummer_factor};
use pseudoharmonic::{Molecule, QuantumState};

fn molecule() -> impl Strategy<Value = Molecule> {
    (1e2..2e5_f64, 0.5..3.0_f64, 0.5..40.0_f64)
        .prop_map(|(d0, r0, mu)| Molecule::new("M", d0, r0, mu).unwrap())
}

proptest! {
    #[test]
    fn kinetic_scale_scaling(mu in 1e-3..1e3_f64, r0 in 1e-2..1e2_f64) {
        let unit = kinetic_scale(1.0, 1.0).unwrap();
        let k = kinetic_scale(mu, r0).unwrap();
        prop_assert!(((k * mu * r0 * r0 - unit) / unit).abs() < 1e-12);
    }

    #[test]
    fn wavenumber_conversion_is_linear(a in -1e6..1e6_f64, b in -1e6..1e6_f64) {
        let lhs = cm1_to_ev(a + b);
        let rhs = cm1_to_ev(a) + cm1_to_ev(b);
        prop_assert!((lhs - rhs).abs() <= 1e-14 * (cm1_to_ev(a).abs() + cm1_to_ev(b).abs()).max(1e-300));
    }

    #[test]
    fn routes_agree_and_levels_are_monotone(mol in molecule(), n in 0u32..12, l in 0u32..12) {
        let st = QuantumState::new(n, l);
        let e = energy_closed_form(&mol, st);
        prop_assert!(((energy_via_oscillator(&mol, st) - e) / e).abs() < 1e-10);
        prop_assert!(energy_closed_form(&mol, QuantumState::new(n + 1, l)) > e);
        prop_assert!(energy_closed_form(&mol, QuantumState::new(n, l + 1)) > e);
        prop_assert!(quantization_residual(&mol, st, e).abs() < 1e-9);
    }

    #[test]
    fn effective_l_identity(mol in molecule(), l in 0u32..50) {
        let big_l = effective_l(&mol, l);
        let rhs = f64::from(l * (l + 1)) + gamma_squared(&mol);
        prop_assert!(((big_l * (big_l + 1.0) - rhs) / rhs).abs() < 1e-12);
        prop_assert!(big_l >= f64::from(l));
    }

    #[test]
    fn laguerre_kummer_small_arguments(n in 0u32..15, nu in -0.9..300.0_f64, z in 0.0..2.0_f64) {
        let lag = laguerre(n, nu, z).unwrap();
        let kum = laguerre_kummer_factor(n, nu) * kummer_polynomial(n, nu + 1.0, z).unwrap();
        let magnitude = laguerre_kummer_factor(n, nu) * (1.0 + z).powi(n as i32);
        prop_assert!((lag - kum).abs() <= 1e-11 * magnitude);
    }

    #[test]
    fn molecule_file_round_trip(
        entries in prop::collection::vec(("[A-Za-z][A-Za-z0-9+]{0,5}", 1e-3..1e6_f64, 1e-3..10.0_f64, 1e-3..300.0_f64), 1..6)
    ) {
        let mut seen = std::collections::HashSet::new();
        let molecules: Vec<Molecule> = entries
            .into_iter()
            .filter(|(name, ..)| seen.insert(name.clone()))
            .map(|(name, d0, r0, mu)| Molecule::new(name, d0, r0, mu).unwrap())
            .collect();
        let text = MoleculeFile::from_molecules(&molecules).to_text();
        prop_assert_eq!(parse_molecule_file(&text).unwrap(), molecules);
    }
}

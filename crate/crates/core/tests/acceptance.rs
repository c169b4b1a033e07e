//! Acceptance criteria. Runs as a plain binary so every criterion prints a
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pseudoharmonic::cli::TABLE2_STATES;
use pseudoharmonic::moldb::{self, builtin_file, builtin_table, parse_molecule_file, BUILTIN_TEXT};
use pseudoharmonic::oracle::{shoot_eigenvalue, verify, RadialProblem};
use pseudoharmonic::spectrum::{
    energy_closed_form, energy_via_oscillator, quantization_residual, HarmonicOscillator,
};
use pseudoharmonic::wavefunc::{normalize, radial_equation_residual, GridSpec};
use pseudoharmonic::{Error, Molecule, QuantumState};
use statrs::function::gamma::ln_gamma;

/// Published energies (eV), rows in `TABLE2_STATES` order, columns N2, CO, NO, CH.
const TABLE2_EV: [[f64; 4]; 17] = [
    [0.1091559, 0.1019306, 0.0824883, 0.1686344],
    [0.3273430, 0.3056722, 0.2473592, 0.5050072],
    [0.3278417, 0.3061508, 0.2477817, 0.5085903],
    [0.5455302, 0.5094137, 0.4122301, 0.841380],
    [0.5460288, 0.5098923, 0.4126526, 0.8449631],
    [0.5470260, 0.5108495, 0.4134977, 0.8521246],
    [0.9819045, 0.9168969, 0.7419718, 1.5141255],
    [0.9824031, 0.9173755, 0.7423944, 1.5177087],
    [0.9834003, 0.9183327, 0.7432395, 1.5248701],
    [0.9848961, 0.9197684, 0.7445070, 1.5356002],
    [0.9868903, 0.9216825, 0.7461969, 1.5498843],
    [1.2000916, 1.1206384, 0.9068427, 1.8504983],
    [1.2005902, 1.1211170, 0.9072653, 1.8540815],
    [1.2015875, 1.1220742, 0.9081104, 1.8612429],
    [1.2030832, 1.1235099, 0.9093779, 1.8719729],
    [1.2050774, 1.1254240, 0.9110678, 1.8862571],
    [1.2075699, 1.1278165, 0.9131799, 1.9040761],
];

const TABLE_TOLERANCE_EV: f64 = 2e-4;
const IDENTITY_REL: f64 = 1e-12;
const ORACLE_REL: f64 = 1e-6;
const QUANTIZATION_ABS: f64 = 1e-10;
const NORM_TOL: f64 = 1e-8;
const ORTHOGONALITY_TOL: f64 = 1e-6;
const GAMMA_NORM_REL: f64 = 1e-8;
const CONVERGENCE_RATIO: (f64, f64) = (4.0, 0.5);
const SPACING_REL: f64 = 1e-12;
const N2_SPACING_EV: f64 = 0.2181871;
const N2_SPACING_TOL: f64 = 1e-4;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn table_cells() -> Vec<(Molecule, QuantumState, f64)> {
    let molecules = builtin_table();
    let mut cells = Vec::new();
    for (row, &(n, l)) in TABLE2_STATES.iter().enumerate() {
        for (col, mol) in molecules.iter().enumerate() {
            cells.push((mol.clone(), QuantumState::new(n, l), TABLE2_EV[row][col]));
        }
    }
    cells
}

fn within_budget(start: Instant, budget: Duration) -> (bool, String) {
    let elapsed = start.elapsed();
    (
        elapsed < budget,
        format!(
            "{:.2} s of {:.0} s",
            elapsed.as_secs_f64(),
            budget.as_secs_f64()
        ),
    )
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0_f64, String::new());
    let mut failing = Vec::new();
    for (mol, st, published) in table_cells() {
        let dev = (energy_closed_form(&mol, st) - published).abs();
        if dev > TABLE_TOLERANCE_EV {
            failing.push(format!("{}{}", mol.name(), st));
        }
        if dev > worst.0 {
            worst = (dev, format!("{} {st}", mol.name()));
        }
    }
    let (timely, time) = within_budget(start, Duration::from_secs(1));
    Outcome {
        pass: failing.is_empty() && timely,
        detail: format!(
            "{} cells, max |dE| {:.3e} eV at {}, {} outside {TABLE_TOLERANCE_EV:e} eV, {time}",
            TABLE2_STATES.len() * 4,
            worst.0,
            worst.1,
            failing.len()
        ),
    }
}

fn internal_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for mol in builtin_table() {
        for n in 0..=10 {
            for l in 0..=10 {
                let st = QuantumState::new(n, l);
                let closed = energy_closed_form(&mol, st);
                let mapped = energy_via_oscillator(&mol, st);
                worst = worst.max(((mapped - closed) / closed).abs());
            }
        }
    }
    let (timely, time) = within_budget(start, Duration::from_secs(1));
    Outcome {
        pass: worst <= IDENTITY_REL && timely,
        detail: format!("max relative difference {worst:.3e}, {time}"),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    for (mol, st, _) in table_cells() {
        match verify(&mol, st) {
            Ok(report) => {
                worst = worst.max(report.rel_err);
                if report.rel_err > ORACLE_REL || report.node_count != st.n as usize {
                    problems.push(format!(
                        "{} {st}: rel {:.2e}, nodes {}",
                        mol.name(),
                        report.rel_err,
                        report.node_count
                    ));
                }
            }
            Err(e) => problems.push(format!("{} {st}: {e}", mol.name())),
        }
    }
    let (timely, time) = within_budget(start, Duration::from_secs(60));
    Outcome {
        pass: problems.is_empty() && timely,
        detail: format!("max relative error {worst:.3e}, {time}; {problems:?}"),
    }
}

fn harmonic_limit() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    for mol in builtin_table() {
        let osc = HarmonicOscillator::from_molecule(&mol);
        let grid = osc.default_grid();
        for n in 0..=3 {
            for l in 0..=3 {
                let st = QuantumState::new(n, l);
                let exact = osc.energy(st);
                match shoot_eigenvalue(&osc, st, &grid, 1e-8 * exact) {
                    Ok(shot) => {
                        let rel = ((shot.energy - exact) / exact).abs();
                        worst = worst.max(rel);
                        if rel > ORACLE_REL || shot.nodes != n as usize {
                            problems.push(format!("{} {st}", mol.name()));
                        }
                    }
                    Err(e) => problems.push(format!("{} {st}: {e}", mol.name())),
                }
            }
        }
    }
    let (timely, time) = within_budget(start, Duration::from_secs(10));
    Outcome {
        pass: problems.is_empty() && timely,
        detail: format!("max relative error {worst:.3e} vs ħω(2n+l+3/2), {time}; {problems:?}"),
    }
}

fn quantization_consistency() -> Outcome {
    let mut worst = 0.0_f64;
    let mut no_sign_change = 0;
    for (mol, st, _) in table_cells() {
        let e = energy_closed_form(&mol, st);
        worst = worst.max(quantization_residual(&mol, st, e).abs());
        let delta = 1e-6 * e;
        let below = quantization_residual(&mol, st, e - delta);
        let above = quantization_residual(&mol, st, e + delta);
        if below.signum() == above.signum() {
            no_sign_change += 1;
        }
    }
    Outcome {
        pass: worst <= QUANTIZATION_ABS && no_sign_change == 0,
        detail: format!("max |residual| {worst:.3e}, {no_sign_change} cells without sign change"),
    }
}

fn wavefunction_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let mut worst_norm = 0.0_f64;
    let mut worst_overlap = 0.0_f64;
    let mut worst_gamma = 0.0_f64;
    for mol in builtin_table() {
        let grid = GridSpec::default_for(&mol);
        for l in 0..=2 {
            let funcs: Vec<_> = (0..=4)
                .map(|n| normalize(&mol, QuantumState::new(n, l), &grid).expect("normalizes"))
                .collect();
            for (i, a) in funcs.iter().enumerate() {
                worst_norm = worst_norm.max((a.norm() - 1.0).abs());
                for b in &funcs[i + 1..] {
                    worst_overlap = worst_overlap.max(a.overlap(b).abs());
                }
            }
        }
        let ground = normalize(&mol, QuantumState::new(0, 0), &grid).expect("normalizes");
        let gamma_sq = pseudoharmonic::spectrum::gamma_squared(&mol);
        let (gamma, q, r0) = (gamma_sq.sqrt(), 0.5 + (0.25 + gamma_sq).sqrt(), mol.r0());
        let log_inv_sq = (2.0 * q + 1.0) * r0.ln() - (q + 0.5) * gamma.ln() + ln_gamma(q + 0.5)
            - std::f64::consts::LN_2;
        worst_gamma = worst_gamma.max((ground.log_norm_constant + 0.5 * log_inv_sq).exp_m1().abs());
    }
    pass &= worst_norm <= NORM_TOL
        && worst_overlap <= ORTHOGONALITY_TOL
        && worst_gamma <= GAMMA_NORM_REL;
    notes.push(format!(
        "norm dev {worst_norm:.2e}, max overlap {worst_overlap:.2e}, Gamma-form N dev {worst_gamma:.2e}"
    ));

    for (name, st) in [
        ("N2", QuantumState::new(0, 0)),
        ("CH", QuantumState::new(1, 0)),
    ] {
        let mol = moldb::lookup(name).expect("builtin");
        let window = GridSpec::default_for(&mol);
        let e = energy_closed_form(&mol, st);
        let coarse = GridSpec::new(window.r_min, window.r_max, 2001).expect("grid");
        let fine = GridSpec::new(window.r_min, window.r_max, 4001).expect("grid");
        let rc = normalize(&mol, st, &coarse).expect("normalizes");
        let rf = normalize(&mol, st, &fine).expect("normalizes");
        let i = rc
            .grid
            .iter()
            .position(|&r| r >= mol.r0())
            .expect("r0 inside");
        let ratio = radial_equation_residual(&rc, e, i).expect("interior")
            / radial_equation_residual(&rf, e, 2 * i).expect("interior");
        let ok = (ratio - CONVERGENCE_RATIO.0).abs() <= CONVERGENCE_RATIO.1;
        pass &= ok;
        notes.push(format!("{name} {st} residual ratio {ratio:.3}"));
    }
    Outcome {
        pass,
        detail: notes.join("; "),
    }
}

fn spacing_property() -> Outcome {
    let mut worst = 0.0_f64;
    for mol in builtin_table() {
        for l in 0..=5 {
            let gap = |n| {
                energy_closed_form(&mol, QuantumState::new(n + 1, l))
                    - energy_closed_form(&mol, QuantumState::new(n, l))
            };
            let reference = gap(0);
            for n in 1..=9 {
                worst = worst.max(((gap(n) - reference) / reference).abs());
            }
        }
    }
    let n2 = moldb::lookup("N2").expect("builtin");
    let spacing = energy_closed_form(&n2, QuantumState::new(1, 0))
        - energy_closed_form(&n2, QuantumState::new(0, 0));
    let dev = (spacing - N2_SPACING_EV).abs();
    Outcome {
        pass: worst <= SPACING_REL && dev <= N2_SPACING_TOL,
        detail: format!(
            "max spacing variation {worst:.2e}; N2 spacing {spacing:.7} eV vs {N2_SPACING_EV} (|d| {dev:.2e})"
        ),
    }
}

fn ingestion() -> Outcome {
    let mut notes = Vec::new();
    let text = builtin_file().to_text();
    let byte_exact = text == BUILTIN_TEXT;
    let reparsed = parse_molecule_file(&text)
        .map(|m| m == builtin_table())
        .unwrap_or(false);
    notes.push(format!(
        "byte-exact {byte_exact}, reparsed equal {reparsed}"
    ));

    let n2_line = parse_molecule_file("N2 96288.03528 1.0940 7.00335")
        .map(|m| m == vec![moldb::lookup("N2").expect("builtin")])
        .unwrap_or(false);
    let arity = matches!(
        parse_molecule_file("X 1.0 1.0"),
        Err(ref e @ Error::Parse { line: 1, .. }) if e.to_string().contains("line 1")
    );
    let negative = matches!(
        parse_molecule_file("X -5.0 1.0 1.0"),
        Err(ref e @ Error::Validation { field: "d0", .. }) if e.to_string().contains("d0")
    );
    notes.push(format!(
        "N2 line {n2_line}, arity error {arity}, d0 validation {negative}"
    ));
    Outcome {
        pass: byte_exact && reparsed && n2_line && arity && negative,
        detail: notes.join("; "),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("table reproduction", table_reproduction),
        ("oscillator identity", internal_identity),
        ("oracle equivalence", oracle_equivalence),
        ("harmonic limit", harmonic_limit),
        ("quantization consistency", quantization_consistency),
        ("wavefunction suite", wavefunction_suite),
        ("level spacing", spacing_property),
        ("molecule ingestion", ingestion),
    ];
    let mut failures = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {name}: {}", idx + 1, outcome.detail);
        failures += usize::from(!outcome.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

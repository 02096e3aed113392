//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use entenerg::verify;

fn check(id: u8) {
    let report = verify::run(id).expect("known criterion");
    println!("{report}");
    assert!(report.passed(), "criterion {id} failed:\n{report}");
}

#[test]
fn criterion_1_exact_ansatz_exponents() {
    check(1);
}

#[test]
fn criterion_2_harmonic_ratios() {
    check(2);
}

#[test]
fn criterion_3_discontinuity_suppression() {
    check(3);
}

#[test]
fn criterion_4_oscillator_identities() {
    check(4);
}

#[test]
fn criterion_5_logarithmic_cutoff_dependence() {
    check(5);
}

#[test]
fn criterion_6_chain_initial_correlation() {
    check(6);
}

#[test]
fn criterion_7_partial_revival() {
    check(7);
}

#[test]
fn criterion_8_exact_diagonalization() {
    check(8);
}

#[test]
fn criterion_9_qubit_round_trips() {
    check(9);
}

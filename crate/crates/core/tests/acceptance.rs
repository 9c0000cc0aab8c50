//! End-to-end acceptance run: one test per verification check, each printing
//! a single pass/fail line. Run with `--nocapture` to see the lines for
//! passing checks too; failing checks always display theirs.

use qpol::verify::{self, Check};

fn report(check: Check) {
    let tag = if check.passed { "PASS" } else { "FAIL" };
    println!("[{tag}] {}: {}", check.name, check.detail);
    assert!(check.passed, "[{tag}] {}: {}", check.name, check.detail);
}

#[test]
fn half_turn_reflects_number_states_with_alternating_sign() {
    report(verify::check_reflection());
}

#[test]
fn rotated_middle_state_overlap_is_a_legendre_polynomial() {
    report(verify::check_middle_state_legendre());
}

#[test]
fn a_differential_phase_orthogonalizes_every_odd_state() {
    report(verify::check_odd_phase_orthogonalization());
}

#[test]
fn every_two_photon_state_reaches_unit_degree() {
    report(verify::check_two_photon_unit_degree());
}

#[test]
fn legendre_zeros_give_middle_state_orthogonalization_angles() {
    report(verify::check_middle_state_solutions());
}

#[test]
fn closed_form_two_photon_overlap_matches_the_matrix() {
    report(verify::check_closed_form_overlap());
}

#[test]
fn the_transition_operator_is_a_plane_rotation() {
    report(verify::check_transition_operator());
}

#[test]
fn printed_basis_members_are_reproduced_exactly() {
    report(verify::check_basis_fixtures());
}

#[test]
fn the_balanced_state_maps_onto_the_middle_state_for_every_azimuth() {
    report(verify::check_quarter_turn_fixture());
}

#[test]
fn only_the_maximally_mixed_state_is_unpolarized() {
    report(verify::check_unpolarized_detection());
}

#[test]
fn orbit_labels_are_correct_and_transformation_invariant() {
    report(verify::check_orbit_classification());
}

#[test]
fn the_odd_pairwise_overlap_formula_matches_the_matrix() {
    report(verify::check_odd_pairwise_formula());
}

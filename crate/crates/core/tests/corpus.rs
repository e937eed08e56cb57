use ramislope_core::checks;

#[test]
fn regular_slopes_are_zero_and_upper_jumps() {
    let out = checks::regular_slopes_are_jumps(64);
    assert!(out.passed(), "{out}");
}

#[test]
fn coset_representation_top_slope() {
    let out = checks::coset_slope_is_highest_jump(64);
    assert!(out.passed(), "{out}");
}

#[test]
fn witnesses_match_pushforward() {
    let out = checks::witnesses_agree(64, usize::MAX);
    assert!(out.passed(), "{out}");
    assert!(out.cases >= 20);
}

#[test]
fn certificate_on_every_pair() {
    let out = checks::certificates_hold(64);
    assert!(out.passed(), "{out}");
    assert!(out.cases >= 30);
}

#[test]
fn base_change_invariance() {
    let out = checks::base_change_keeps_jumps(64);
    assert!(out.passed(), "{out}");
}

#[test]
fn integral_upper_jumps() {
    let out = checks::hasse_arf(64);
    assert!(out.passed(), "{out}");
}

#[test]
fn herbrand_transitivity() {
    let out = checks::phi_is_transitive(64);
    assert!(out.passed(), "{out}");
}

#[test]
fn slope_totals_are_degree_times_rank() {
    let out = checks::slope_totals(64);
    assert!(out.passed(), "{out}");
}

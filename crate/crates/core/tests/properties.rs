mod props;

#[test]
fn ring_laws_hold() {
    props::ring_laws_hold();
}

#[test]
fn limits_are_multiplicative() {
    props::limits_are_multiplicative();
}

#[test]
fn kernels_and_determinants() {
    props::kernels_and_determinants();
}

#[test]
fn groebner_agrees_with_gaussian_elimination() {
    props::groebner_agrees_with_gaussian_elimination();
}

#[test]
fn jordan_identity_is_basis_independent() {
    props::jordan_identity_is_basis_independent();
}

#[test]
fn jordan_identity_on_random_vectors() {
    props::jordan_identity_on_random_vectors();
}

#[test]
fn direct_sums() {
    props::direct_sums();
}

#[test]
fn witnesses_survive_target_automorphisms() {
    props::witnesses_survive_target_automorphisms();
}

#[test]
fn witness_invariants() {
    props::witness_invariants();
}

#[test]
fn stable_specs_keep_their_members() {
    props::stable_specs_keep_their_members();
}

use suq2_core::calculus::{braid_check_exact, build_psym, min_poly_check, select_variant, Variant};

#[test]
fn symmetric_variant_braids_symbolically() {
    let sel = select_variant(Some(Variant::Symmetric)).unwrap();
    let out = braid_check_exact(&sel.braiding.sigma);
    assert!(out.pass, "witness {:?}", out.witness);
}

#[test]
fn unbraided_table_variant_fails_with_witness() {
    let sel = select_variant(Some(Variant::Paper)).unwrap();
    let out = braid_check_exact(&sel.braiding.sigma);
    assert!(!out.pass);
    assert!(out.witness.is_some());
}

#[test]
fn minimal_polynomial_and_eigenspaces() {
    let sel = select_variant(None).unwrap();
    let rep = min_poly_check(&sel.braiding);
    assert!(rep.passes(), "{:?}", rep);
}

#[test]
fn psym_is_the_eigenvalue_one_projector() {
    let sel = select_variant(None).unwrap();
    assert_eq!(build_psym(&sel.braiding), sel.braiding.projectors[0]);
}

#[test]
fn perturbed_eigen_table_breaks_the_braid_relation() {
    use suq2_core::calculus::{build_sigma, EigenData};
    use suq2_core::field::FieldElem;
    let mut data = EigenData::load(Variant::Symmetric).unwrap();
    let (i, j) = data
        .ev2
        .iter()
        .enumerate()
        .find_map(|(i, v)| v.iter().position(|x| !x.is_zero()).map(|j| (i, j)))
        .unwrap();
    data.ev2[i][j] = data.ev2[i][j].mul_ref(&FieldElem::from_i64(2));
    match build_sigma(&data) {
        Ok(b) => assert!(!braid_check_exact(&b.sigma).pass),
        Err(e) => panic!("perturbed table rejected before the braid check: {}", e),
    }
}

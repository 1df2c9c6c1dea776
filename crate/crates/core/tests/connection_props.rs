use suq2_core::calculus::{build_psym, select_variant, Sign};
use suq2_core::connection::{
    build_nabla0, example_metric, kernel_trivial, levi_civita, metric_basis, phi_g, torsion, Compat,
};

#[test]
fn nabla0_is_torsionless_for_both_signs() {
    let sel = select_variant(None).unwrap();
    for sign in [Sign::Plus, Sign::Minus] {
        let n0 = build_nabla0(sign, &sel.braiding);
        assert!(torsion(&n0, sign, &sel.braiding).is_zero());
    }
}

#[test]
fn metric_basis_has_ten_invariant_elements() {
    let sel = select_variant(None).unwrap();
    let basis = metric_basis(&sel.braiding);
    assert_eq!(basis.len(), 10);
    for g in &basis {
        g.check_invariant(&sel.braiding).unwrap();
    }
}

#[test]
fn levi_civita_for_example_metric() {
    let sel = select_variant(None).unwrap();
    let p = build_psym(&sel.braiding);
    let g = example_metric(&sel.braiding).unwrap();
    eprintln!("example metric {:?}", g.to_strings());
    g.check_nondegenerate().unwrap();
    let lc = levi_civita(&g, Sign::Plus, &sel.braiding, &p, &sel.data).unwrap();
    assert!(lc.torsion_zero);
    assert!(lc.pi0_zero);
    let phi = phi_g(&g, &p, &sel.data).unwrap();
    assert!(kernel_trivial(&phi));
    let c = Compat::new(&sel.braiding, &p, &sel.data, &g);
    assert!(kernel_trivial(&c.operator()));
}

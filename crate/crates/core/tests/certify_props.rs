use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use suq2_core::calculus::{build_psym, select_variant, Selection};
use suq2_core::certify::{
    certify, psym23_matrix, regenerate_lemmas, root_sets_agree, unknown_label, Certificate, LemmaStatus, Mode,
};
use suq2_core::field::{FieldElem, Point};
use suq2_core::linalg::det;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

struct Fixture {
    sel: Selection,
    cert: Certificate,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let sel = select_variant(None).unwrap();
        let psym = build_psym(&sel.braiding);
        let cert = certify(&sel.braiding, &psym, &sel.data, &[(r(2), r(3)), (r(5), r(7))]).unwrap();
        Fixture { sel, cert }
    })
}

#[test]
fn constraint_system_is_a_multiple_of_psym23() {
    let c = &fixture().cert;
    assert!(c.identity_holds);
    assert!(c.psym23_injective);
    assert!(c.system_kernel_trivial);
}

#[test]
fn psym23_determinant_closed_form() {
    let expected: FieldElem = "q^16*(q^4+1)^4/(q^2+1)^24".parse().unwrap();
    assert_eq!(fixture().cert.psym23_det, expected);
}

#[test]
fn small_subsystems_match_their_closed_forms() {
    let c = &fixture().cert;
    for s in c.subsystems.iter().filter(|s| s.mode == Mode::Exact) {
        assert!(s.pass, "{}: {}", s.label, s.value);
    }
    let unit = c.subsystems.iter().find(|s| s.label == "(3,3,2),(3,4,2)").unwrap();
    assert!(unit.pass && unit.unit.as_ref().is_some_and(|u| u.is_one()));
    let single = c.subsystems.iter().find(|s| s.label == "(4,2,3)").unwrap();
    assert!(single.pass);
}

#[test]
fn exceptional_sets_are_consistent_across_specialisations() {
    let c = &fixture().cert;
    assert_eq!(c.exceptional.len(), 2);
    for set in &c.exceptional {
        assert!(set.control_ok);
        assert!(set.intervals_certified());
    }
    assert!(root_sets_agree(&c.exceptional));
}

#[test]
fn corner_rows_force_single_unknowns() {
    let f = fixture();
    let diff = regenerate_lemmas(&f.cert.system, &f.sel.data).unwrap();
    assert_eq!(diff.len(), 64);
    for (row, unknown) in [("(1,1,1)", "A1_1"), ("(4,4,4)", "A4_4"), ("(2,4,4)", "A8_4")] {
        let d = diff.iter().find(|d| d.row == row).unwrap();
        assert_eq!(d.generated, format!("(q^4 + 2*q^2 + 1)*{} = 0", unknown));
        assert_eq!(d.status, LemmaStatus::Proportional);
    }
}

#[test]
fn row_122_couples_three_unknowns() {
    let f = fixture();
    let cs = &f.cert.system;
    let row = cs.row("1,2,2").unwrap();
    let nonzero: Vec<String> = (0..40).filter(|&c| !cs.m.get(row, c).is_zero()).map(unknown_label).collect();
    assert_eq!(nonzero, ["A3_2", "A5_2", "A10_2"]);
    let a32 = cs.m.get(row, cs.column("A3_2").unwrap());
    let a52 = cs.m.get(row, cs.column("A5_2").unwrap());
    assert_eq!(a32.div_ref(a52).unwrap(), f.sel.data.bind(&FieldElem::t()).unwrap());
    let diff = regenerate_lemmas(cs, &f.sel.data).unwrap();
    assert_eq!(diff.iter().find(|d| d.row == "(1,2,2)").unwrap().status, LemmaStatus::Proportional);
}

#[test]
fn annotated_lemma_rows_are_reported() {
    let f = fixture();
    let diff = regenerate_lemmas(&f.cert.system, &f.sel.data).unwrap();
    let annotated: Vec<_> = diff.iter().filter(|d| !d.notes.is_empty()).collect();
    assert!(!annotated.is_empty());
    for d in diff.iter().filter(|d| d.status == LemmaStatus::Mismatch) {
        assert!(d.transcribed.is_some());
        assert!(!d.differing_unknowns.is_empty());
    }
}

#[test]
fn five_point_evaluation_regression() {
    let f = fixture();
    let start = Instant::now();
    let psym = build_psym(&f.sel.braiding);
    let psym23 = psym23_matrix(&psym, &f.sel.data).unwrap();
    for u in 2..7 {
        let pt = Point::from_u(&r(u), r(2), r(3));
        let numeric = det(&psym23.eval_at(&pt).unwrap());
        assert_eq!(numeric, f.cert.psym23_det.eval_at(&pt).unwrap(), "u = {}", u);
    }
    assert!(start.elapsed() < Duration::from_secs(10), "took {:?}", start.elapsed());
}

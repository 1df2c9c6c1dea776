//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use suq2_core::calculus::{
    braid_check_exact, build_psym, build_sigma, check_decompositions, min_poly_check, select_variant, EigenData,
    Selection, Sign, Variant,
};
use suq2_core::certify::{certify, psym23_matrix, root_sets_agree, Certificate, Mode};
use suq2_core::connection::{
    build_nabla0, compare_nabla0_displays, example_metric, kernel_trivial, levi_civita, phi_g, torsion,
};
use suq2_core::field::Point;
use suq2_core::linalg::det;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let data = EigenData::load(Variant::Symmetric).unwrap();
    let b = build_sigma(&data).unwrap();
    let rep = min_poly_check(&b);
    let elapsed = start.elapsed();
    outcome(
        rep.passes() && elapsed < Duration::from_secs(5),
        format!(
            "annihilates {}, proper factors {:?}, dims {:?}, {:.2?}",
            rep.annihilates, rep.proper_factor_annihilates, rep.eigenspace_dims, elapsed
        ),
    )
}

fn c2(sel: &Selection) -> Outcome {
    let start = Instant::now();
    let out = braid_check_exact(&sel.braiding.sigma);
    let elapsed = start.elapsed();
    outcome(out.pass && elapsed < Duration::from_secs(60), format!("witness {:?}, {:.2?}", out.witness, elapsed))
}

fn c3(sel: &Selection) -> Outcome {
    let eq = build_psym(&sel.braiding) == sel.braiding.projectors[0];
    outcome(eq, "rational formula vs eigenbasis projector")
}

fn c4(sel: &Selection) -> Outcome {
    let mut failing = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for d in compare_nabla0_displays(sign, &sel.braiding, &sel.data).unwrap() {
            if !d.diff.is_empty() {
                failing.push(format!("w{} ({})", d.index, sign));
            }
        }
    }
    for d in check_decompositions(&sel.braiding, &sel.data.t_binding).unwrap() {
        if !d.passes() {
            failing.push(format!("decomposition {}", d.lhs));
        }
    }
    outcome(failing.is_empty(), format!("mismatches: [{}]", failing.join(", ")))
}

fn c5(sel: &Selection) -> Outcome {
    let zero: Vec<bool> =
        [Sign::Plus, Sign::Minus].iter().map(|&s| torsion(&build_nabla0(s, &sel.braiding), s, &sel.braiding).is_zero()).collect();
    outcome(zero.iter().all(|&z| z), format!("torsion zero (plus, minus) = {:?}", zero))
}

fn c6(cert: &Certificate) -> Outcome {
    let checked: Vec<_> = cert.subsystems.iter().filter(|s| matches!(s.mode, Mode::Exact | Mode::Unit)).collect();
    let failing: Vec<&str> = checked.iter().filter(|s| !s.pass).map(|s| s.label.as_str()).collect();
    let units: Vec<String> =
        checked.iter().filter_map(|s| s.unit.as_ref().map(|u| format!("{} unit {}", s.label, u))).collect();
    outcome(
        failing.is_empty(),
        format!("{} of {} match; failing [{}]; {}", checked.len() - failing.len(), checked.len(), failing.join(" "), units.join("; ")),
    )
}

fn c7(cert: &Certificate) -> Outcome {
    outcome(
        cert.identity_holds && cert.system_kernel_trivial,
        format!("identity {}, kernel trivial {}", cert.identity_holds, cert.system_kernel_trivial),
    )
}

fn c8(cert: &Certificate) -> Outcome {
    let octic: Vec<bool> = cert.exceptional.iter().map(|s| s.has_octic_root()).collect();
    let agree = root_sets_agree(&cert.exceptional);
    let certified = cert.exceptional.iter().all(|s| s.intervals_certified());
    let roots: Vec<usize> = cert.exceptional.iter().map(|s| s.roots.len()).collect();
    let candidates: Vec<String> = cert.exceptional.iter().map(|s| s.candidate.to_string()).collect();
    outcome(
        octic.iter().all(|&x| x) && agree && certified,
        format!(
            "octic root found {:?}, root counts {:?}, consistent {}, certified {}, candidates [{}]",
            octic,
            roots,
            agree,
            certified,
            candidates.join("; ")
        ),
    )
}

fn c9(sel: &Selection) -> Outcome {
    let psym = build_psym(&sel.braiding);
    let g = example_metric(&sel.braiding).unwrap();
    let mut ok = true;
    let mut detail = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let lc = levi_civita(&g, sign, &sel.braiding, &psym, &sel.data).unwrap();
        ok &= lc.torsion_zero && lc.pi0_zero;
        detail.push(format!("{}: torsion {} pi0 {}", sign, lc.torsion_zero, lc.pi0_zero));
    }
    let unique = kernel_trivial(&phi_g(&g, &psym, &sel.data).unwrap());
    detail.push(format!("phi_g kernel trivial {}", unique));
    outcome(ok && unique, detail.join(", "))
}

fn c10(sel: &Selection, cert: &Certificate) -> Outcome {
    let dir = std::env::temp_dir().join(format!("suq2-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let out = out.to_str().unwrap();
    let (mut so, mut se) = (Vec::new(), Vec::new());
    let start = Instant::now();
    let v = suq2_cli::run(["suq2", "verify", "--out", out], &mut so, &mut se);
    let c = suq2_cli::run(["suq2", "certify", "--out", out], &mut so, &mut se);
    let end_to_end = start.elapsed();
    std::fs::remove_dir_all(&dir).ok();

    let start = Instant::now();
    let psym23 = psym23_matrix(&build_psym(&sel.braiding), &sel.data).unwrap();
    let mut agree = true;
    for u in 2..7 {
        let pt = Point::from_u(&r(u), r(2), r(3));
        agree &= det(&psym23.eval_at(&pt).unwrap()) == cert.psym23_det.eval_at(&pt).unwrap();
    }
    let evaluation = start.elapsed();
    let completed = [v, c].iter().all(|x| *x == suq2_cli::exit::OK || *x == suq2_cli::exit::PROPERTY);
    outcome(
        completed && agree && end_to_end < Duration::from_secs(600) && evaluation < Duration::from_secs(10),
        format!(
            "verify exit {}, certify exit {}, end-to-end {:.1?}; 5-point evaluation agrees {} in {:.2?}",
            v, c, end_to_end, agree, evaluation
        ),
    )
}

fn main() {
    let sel = select_variant(None).unwrap();
    let psym = build_psym(&sel.braiding);
    let cert = certify(&sel.braiding, &psym, &sel.data, &[(r(2), r(3)), (r(5), r(7))]).unwrap();
    let results = [
        ("1 sigma minimal polynomial and eigenspaces", c1()),
        ("2 braid relation on 64 triples", c2(&sel)),
        ("3 P_sym equals the eigenvalue-1 projector", c3(&sel)),
        ("4 nabla0 displays and decompositions", c4(&sel)),
        ("5 nabla0 torsion for both signs", c5(&sel)),
        ("6 subsystem determinants", c6(&cert)),
        ("7 constraint system identity and kernel", c7(&cert)),
        ("8 exceptional-q octic root", c8(&cert)),
        ("9 Levi-Civita for the example metric", c9(&sel)),
        ("10 runtime", c10(&sel, &cert)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {}: {} ({})", name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

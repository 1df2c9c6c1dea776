//! The property ledger behind `verify` and `certify`.

use suq2_core::calculus::{
    braid_check_exact, build_psym, check_decompositions, min_poly_check, nu_span_matches, Selection,
};
use suq2_core::certify::{certify, regenerate_lemmas, LemmaDiff, Report};
use suq2_core::connection::{
    build_nabla0, compare_nabla0_displays, example_metric, kernel_trivial, levi_civita, metric_basis, phi_g,
    torsion, Compat,
};
use suq2_core::SymMat;

use super::{Failure, RunConfig};

/// A failed eigen-table validation.
#[derive(Debug)]
pub struct DataGateFailure(pub String);

fn select(cfg: &RunConfig) -> Result<Selection, Failure> {
    Ok(suq2_core::calculus::select_variant(cfg.variant)?)
}

fn selection_note(sel: &Selection) -> String {
    if sel.rejected.is_empty() {
        return format!("eigen tables: variant {} in use", sel.data.variant);
    }
    let rejected: Vec<String> = sel
        .rejected
        .iter()
        .map(|(v, w)| match w {
            Some((a, b, c)) => format!("{} (braid fails at w{}w{}w{})", v, a, b, c),
            None => v.to_string(),
        })
        .collect();
    format!("eigen tables: variant {} selected by braid screen, rejected {}", sel.data.variant, rejected.join(", "))
}

/// Eigenvector independence (checked on load), span of ν, braid relation and
/// idempotence of P_sym.
fn data_gate(sel: &Selection, psym: &SymMat) -> Result<(), DataGateFailure> {
    if !nu_span_matches(&sel.data) {
        return Err(DataGateFailure("ν basis does not span the eigenvalue-1 space".into()));
    }
    let braid = braid_check_exact(&sel.braiding.sigma);
    if let Some((a, b, c)) = braid.witness {
        return Err(DataGateFailure(format!(
            "braid relation fails for variant {} at triple w{}w{}w{}",
            sel.data.variant, a, b, c
        )));
    }
    if psym.mul(psym).expect("square") != *psym {
        return Err(DataGateFailure("P_sym is not idempotent".into()));
    }
    Ok(())
}

fn certify_into(
    cfg: &RunConfig,
    sel: &Selection,
    psym: &SymMat,
    report: &mut Report,
) -> Result<Vec<LemmaDiff>, Failure> {
    let cert = certify(&sel.braiding, psym, &sel.data, &cfg.specialisations())?;
    cert.fill_report(report);
    Ok(regenerate_lemmas(&cert.system, &sel.data)?)
}

/// The certificate alone, with the regenerated equations.
pub fn certify_report(cfg: &RunConfig) -> Result<(Report, Vec<LemmaDiff>), Failure> {
    let sel = select(cfg)?;
    let psym = build_psym(&sel.braiding);
    let mut report = Report::new(sel.data.variant.name(), &cfg.sign.to_string());
    report.property(selection_note(&sel), true);
    let diff = certify_into(cfg, &sel, &psym, &mut report)?;
    Ok((report, diff))
}

/// Every property of the calculus, connection and certificate.
pub fn verify_report(cfg: &RunConfig) -> Result<Report, Failure> {
    let sel = select(cfg)?;
    let psym = build_psym(&sel.braiding);
    data_gate(&sel, &psym)?;
    let b = &sel.braiding;
    let sign = cfg.sign;
    let mut report = Report::new(sel.data.variant.name(), &sign.to_string());
    report.property(selection_note(&sel), true);

    let mp = min_poly_check(b);
    report.property("sigma: (x-1)(x+q^2)(x+q^-2) annihilates sigma", mp.annihilates);
    report.property(
        "sigma: no proper factor of the minimal polynomial annihilates sigma",
        mp.proper_factor_annihilates.iter().all(|x| !x),
    );
    report.property(
        format!(
            "sigma: eigenspace dimensions are (10,3,3), found ({},{},{})",
            mp.eigenspace_dims[0], mp.eigenspace_dims[1], mp.eigenspace_dims[2]
        ),
        mp.eigenspace_dims == [10, 3, 3],
    );
    report.property("sigma: braid relation on all 64 basis triples", true);
    report.property("psym: rational formula equals the eigenvalue-1 projector", psym == b.projectors[0]);
    report.property("psym: idempotent", true);

    let n0 = build_nabla0(sign, b);
    report.property(format!("nabla0 ({}): torsion vanishes", sign), torsion(&n0, sign, b).is_zero());
    for d in compare_nabla0_displays(sign, b, &sel.data)? {
        report.property(
            format!("nabla0 ({}): w{} matches its closed-form display", sign, d.index),
            d.diff.is_empty(),
        );
    }
    for d in check_decompositions(b, &sel.data.t_binding)? {
        report.property(format!("decomposition of {} into eigenvectors matches", d.lhs), d.passes());
    }

    let basis = metric_basis(b);
    report.property(format!("metric: {} sigma-invariant basis forms found, 10 expected", basis.len()), basis.len() == 10);
    let g = example_metric(b)?;
    let nondegenerate = g.check_nondegenerate().is_ok();
    let invariant = g.check_invariant(b).is_ok();
    report.property("metric: example metric is nondegenerate and sigma-invariant", nondegenerate && invariant);
    let lc = levi_civita(&g, sign, b, &psym, &sel.data)?;
    report.property(format!("levi-civita ({}): torsion vanishes", sign), lc.torsion_zero);
    report.property(format!("levi-civita ({}): Pi0_g vanishes", sign), lc.pi0_zero);
    let phi = phi_g(&g, &psym, &sel.data)?;
    report.property("levi-civita: phi_g has trivial kernel", kernel_trivial(&phi));
    let op = Compat::new(b, &psym, &sel.data, &g).operator();
    report.property("levi-civita: compatibility operator has trivial kernel", kernel_trivial(&op));

    certify_into(cfg, &sel, &psym, &mut report)?;
    Ok(report)
}

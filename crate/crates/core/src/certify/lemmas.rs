//! The 64 coefficient equations, printed and compared with a transcription.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{unknown_label, CertifyError, ConstraintSystem};
use crate::calculus::EigenData;
use crate::field::{eval_expr, parse_expr, Expr, FieldElem};

const LEMMA_ROWS: &str = include_str!("../../data/lemma_rows.json");

#[derive(Deserialize)]
struct LemmaFile {
    format: String,
    version: u32,
    rows: Vec<LemmaEntry>,
}

#[derive(Deserialize)]
struct LemmaEntry {
    row: String,
    expr: String,
    #[serde(default)]
    notes: Vec<String>,
}

/// Σ coeffs[c]·A_c + constant.
#[derive(Clone, Debug, PartialEq, Default)]
struct Linear {
    coeffs: BTreeMap<usize, FieldElem>,
    constant: FieldElem,
}

impl Linear {
    fn constant(x: FieldElem) -> Self {
        Linear { coeffs: BTreeMap::new(), constant: x }
    }

    fn as_constant(&self) -> Option<&FieldElem> {
        self.coeffs.is_empty().then_some(&self.constant)
    }

    fn add(mut self, o: Linear, sign: i64) -> Self {
        for (c, v) in o.coeffs {
            let v = v.scale_int(sign);
            let e = self.coeffs.entry(c).or_insert_with(FieldElem::zero);
            *e = e.add_ref(&v);
        }
        self.coeffs.retain(|_, v| !v.is_zero());
        self.constant = self.constant.add_ref(&o.constant.scale_int(sign));
        self
    }

    fn scale(mut self, k: &FieldElem) -> Self {
        for v in self.coeffs.values_mut() {
            *v = v.mul_ref(k);
        }
        self.coeffs.retain(|_, v| !v.is_zero());
        self.constant = self.constant.mul_ref(k);
        self
    }
}

fn unknown_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('A')?;
    let (m, n) = rest.split_once('_')?;
    let (m, n): (usize, usize) = (m.parse().ok()?, n.parse().ok()?);
    ((1..=10).contains(&m) && (1..=4).contains(&n)).then(|| (m - 1) * 4 + (n - 1))
}

fn linear(e: &Expr) -> Result<Linear, String> {
    Ok(match e {
        Expr::Ident(name) if name.starts_with('A') => {
            let c = unknown_index(name).ok_or_else(|| format!("unknown '{}'", name))?;
            let mut l = Linear::default();
            l.coeffs.insert(c, FieldElem::from_i64(1));
            l
        }
        Expr::Int(_) | Expr::Ident(_) => Linear::constant(eval_expr(e).map_err(|x| x.to_string())?),
        Expr::Neg(x) => linear(x)?.scale(&FieldElem::from_i64(-1)),
        Expr::Add(a, b) => linear(a)?.add(linear(b)?, 1),
        Expr::Sub(a, b) => linear(a)?.add(linear(b)?, -1),
        Expr::Mul(a, b) => {
            let (x, y) = (linear(a)?, linear(b)?);
            match (x.as_constant(), y.as_constant()) {
                (Some(k), _) => y.scale(k),
                (_, Some(k)) => x.scale(k),
                _ => return Err("product of two unknowns".into()),
            }
        }
        Expr::Div(a, b) => {
            let y = linear(b)?;
            let k = y.as_constant().ok_or("division by an unknown")?;
            let inv = k.invert().map_err(|x| x.to_string())?;
            linear(a)?.scale(&inv)
        }
        Expr::Pow(a, n) => {
            let x = linear(a)?;
            let k = x.as_constant().ok_or("power of an unknown")?;
            Linear::constant(k.pow(*n).map_err(|x| x.to_string())?)
        }
    })
}

fn render(coeffs: &BTreeMap<usize, FieldElem>) -> String {
    if coeffs.is_empty() {
        return "0 = 0".into();
    }
    let terms: Vec<String> = coeffs
        .iter()
        .map(|(c, v)| if v.is_one() { unknown_label(*c) } else { format!("({})*{}", v, unknown_label(*c)) })
        .collect();
    format!("{} = 0", terms.join(" + "))
}

/// How a generated equation relates to its transcription.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaStatus {
    /// Identical coefficients.
    Exact,
    /// Equal after scaling by a nonzero field element.
    Proportional,
    /// Different equations.
    Mismatch,
    /// No transcription for this row.
    Missing,
}

/// One row of the diff.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaDiff {
    pub row: String,
    pub generated: String,
    pub transcribed: Option<String>,
    pub status: LemmaStatus,
    /// Unknowns whose coefficients disagree after scaling.
    pub differing_unknowns: Vec<String>,
    pub notes: Vec<String>,
}

fn compare(gen: &BTreeMap<usize, FieldElem>, lem: &BTreeMap<usize, FieldElem>) -> (LemmaStatus, Vec<String>) {
    if gen == lem {
        return (LemmaStatus::Exact, Vec::new());
    }
    let keys: Vec<usize> = gen.keys().chain(lem.keys()).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    // the row scaling shared by the most unknowns
    let mut ratios: Vec<(FieldElem, usize)> = Vec::new();
    for (c, g) in gen {
        let Some(r) = lem.get(c).and_then(|l| l.div_ref(g).ok()) else { continue };
        match ratios.iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 += 1,
            None => ratios.push((r, 1)),
        }
    }
    let best = ratios.iter().map(|(_, n)| *n).max().unwrap_or(0);
    let ratio = ratios.into_iter().find(|(_, n)| *n == best).map(|(r, _)| r);
    let zero = FieldElem::zero();
    let differing: Vec<String> = keys
        .iter()
        .filter(|c| {
            let g = gen.get(c).unwrap_or(&zero);
            let l = lem.get(c).unwrap_or(&zero);
            match &ratio {
                Some(k) => g.mul_ref(k) != *l,
                None => g != l,
            }
        })
        .map(|&c| unknown_label(c))
        .collect();
    if differing.is_empty() {
        (LemmaStatus::Proportional, differing)
    } else {
        (LemmaStatus::Mismatch, differing)
    }
}

/// All 64 generated equations, each diffed against the transcription.
pub fn regenerate_lemmas(cs: &ConstraintSystem, data: &EigenData) -> Result<Vec<LemmaDiff>, CertifyError> {
    let f: LemmaFile = serde_json::from_str(LEMMA_ROWS).map_err(|e| CertifyError::Data(e.to_string()))?;
    if f.format != "suq2-lemma-rows" || f.version != 1 {
        return Err(CertifyError::Data(format!("unsupported lemma format {} v{}", f.format, f.version)));
    }
    let mut by_row: BTreeMap<usize, &LemmaEntry> = BTreeMap::new();
    for e in &f.rows {
        let r = super::parse_triple(&e.row).ok_or_else(|| CertifyError::Data(format!("bad row '{}'", e.row)))?;
        by_row.insert(r, e);
    }
    (0..64)
        .map(|r| {
            let gen: BTreeMap<usize, FieldElem> =
                (0..40).filter(|&c| !cs.m.get(r, c).is_zero()).map(|c| (c, cs.m.get(r, c).clone())).collect();
            let label = format!("({},{},{})", r / 16 + 1, (r / 4) % 4 + 1, r % 4 + 1);
            let Some(entry) = by_row.get(&r) else {
                return Ok(LemmaDiff {
                    row: label,
                    generated: render(&gen),
                    transcribed: None,
                    status: LemmaStatus::Missing,
                    differing_unknowns: Vec::new(),
                    notes: Vec::new(),
                });
            };
            let expr = parse_expr(&entry.expr)?;
            let lin = linear(&expr).map_err(|e| CertifyError::Data(format!("row {}: {}", entry.row, e)))?;
            let mut lem = BTreeMap::new();
            for (c, v) in lin.coeffs {
                lem.insert(c, data.bind(&v)?);
            }
            lem.retain(|_, v: &mut FieldElem| !v.is_zero());
            let (mut status, differing) = compare(&gen, &lem);
            if !lin.constant.is_zero() {
                status = LemmaStatus::Mismatch;
            }
            Ok(LemmaDiff {
                row: label,
                generated: render(&gen),
                transcribed: Some(render(&lem)),
                status,
                differing_unknowns: differing,
                notes: entry.notes.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        let l = linear(&parse_expr("t * A3_2 + A5_2 - A3_2 * 2 / q").unwrap()).unwrap();
        let t_minus: FieldElem = "t - 2/q".parse().unwrap();
        assert_eq!(l.coeffs[&unknown_index("A3_2").unwrap()], t_minus);
        assert!(l.coeffs[&unknown_index("A5_2").unwrap()].is_one());
        assert!(linear(&parse_expr("A1_1 * A1_2").unwrap()).is_err());
        assert_eq!(unknown_index("A10_4"), Some(39));
        assert_eq!(unknown_index("A11_1"), None);
    }

    #[test]
    fn proportional_rows_are_recognised() {
        let g: BTreeMap<usize, FieldElem> = [(0, FieldElem::q()), (1, FieldElem::from_i64(1))].into();
        let l: BTreeMap<usize, FieldElem> = [(0, FieldElem::q().scale_int(2)), (1, FieldElem::from_i64(2))].into();
        assert_eq!(compare(&g, &l).0, LemmaStatus::Proportional);
        let bad: BTreeMap<usize, FieldElem> = [(0, FieldElem::q()), (2, FieldElem::from_i64(1))].into();
        let (status, diff) = compare(&g, &bad);
        assert_eq!(status, LemmaStatus::Mismatch);
        assert_eq!(diff, vec!["A1_2".to_string(), "A1_3".to_string()]);
    }
}

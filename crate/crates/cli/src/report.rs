//! Rendering of check records, evaluations and measure tables.

use std::fmt::Write as _;

use qladder::families::FamilyId;
use qladder::measures::Measure;
use qladder::verify::CheckResult;
use qladder::Complex64;

use crate::{Failure, Format};

fn csv_failure(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("csv output: {e}"))
}

fn params_inline(r: &CheckResult) -> String {
    r.params.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// JSON is canonical; CSV flattens the parameters into one column.
pub fn render_results(results: &[CheckResult], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(results).map_err(|e| Failure::Usage(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "check_id",
                "equation_ref",
                "params",
                "lhs_re",
                "lhs_im",
                "rhs_re",
                "rhs_im",
                "abs_err",
                "rel_err",
                "tolerance",
                "pass",
                "runtime_ms",
            ])
            .map_err(csv_failure)?;
            for r in results {
                w.write_record([
                    r.check_id.clone(),
                    r.equation_ref.clone(),
                    params_inline(r),
                    r.lhs_re.to_string(),
                    r.lhs_im.to_string(),
                    r.rhs_re.to_string(),
                    r.rhs_im.to_string(),
                    r.abs_err.to_string(),
                    r.rel_err.to_string(),
                    r.tolerance.to_string(),
                    r.pass.to_string(),
                    format!("{:.3}", r.runtime_ms),
                ])
                .map_err(csv_failure)?;
            }
            let bytes = w.into_inner().map_err(csv_failure)?;
            String::from_utf8(bytes).map_err(csv_failure)
        }
        Format::Human => {
            let mut s = String::new();
            for r in results {
                let _ = writeln!(
                    s,
                    "{} {:<40} rel={:<10.3e} tol={:<8.1e} {}  [{}]",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check_id,
                    r.rel_err,
                    r.tolerance,
                    params_inline(r),
                    r.equation_ref
                );
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            let _ = writeln!(s, "{} records, {} passed, {} failed", results.len(), results.len() - failed, failed);
            Ok(s)
        }
    }
}

fn cfmt(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.17e}", z.re)
    } else {
        format!("{:.17e}{:+.17e}i", z.re, z.im)
    }
}

pub fn render_eval(
    family: FamilyId,
    n: usize,
    explicit: Complex64,
    recurrence: Option<Complex64>,
    format: Format,
) -> String {
    let residual = recurrence.map(|r| (r - explicit).norm() / r.norm().max(explicit.norm()).max(f64::MIN_POSITIVE));
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "family": family.name(),
                "n": n,
                "explicit": [explicit.re, explicit.im],
                "recurrence": recurrence.map(|r| [r.re, r.im]),
                "rel_residual": residual,
            });
            format!("{v}\n")
        }
        _ => {
            let mut s = format!("{family} n={n}\nexplicit   {}\n", cfmt(explicit));
            match (recurrence, residual) {
                (Some(r), Some(res)) => {
                    let _ = writeln!(s, "recurrence {}\nrel residual {res:.3e}", cfmt(r));
                }
                _ => s.push_str("recurrence: none (rational family, explicit form only)\n"),
            }
            s
        }
    }
}

pub fn render_measure(mu: &Measure, limit: usize, total: Complex64, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Csv => mu.to_csv(limit),
        Format::Json => {
            let rows: Vec<_> = mu
                .table(limit)
                .into_iter()
                .map(|(loc, v, c)| serde_json::json!({"location": loc, "value": [v.re, v.im], "cumulative": [c.re, c.im]}))
                .collect();
            let v = serde_json::json!({
                "measure": mu.label,
                "total_mass": [total.re, total.im],
                "declared_mass": mu.declared_mass.map(|m| [m.re, m.im]),
                "rows": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).map_err(|e| Failure::Usage(e.to_string()))?)
        }
        Format::Human => {
            let mut s = format!("{}\n{:>24} {:>24} {:>24}\n", mu.label, "location", "value", "cumulative");
            for (loc, v, c) in mu.table(limit) {
                let _ = writeln!(s, "{loc:>24.15e} {:>24} {:>24}", short(v), short(c));
            }
            let _ = writeln!(s, "total mass {}", cfmt(total));
            if let Some(m) = mu.declared_mass {
                let _ = writeln!(s, "declared   {}", cfmt(m));
            }
            s
        }
    })
}

fn short(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15e}", z.re)
    } else {
        format!("{:.6e}{:+.6e}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(cfmt(Complex64::new(3.5, 0.0)), "3.50000000000000000e0");
        assert!(cfmt(Complex64::new(1.0, -2.0)).ends_with('i'));
    }

    #[test]
    fn human_eval_without_recurrence() {
        let s = render_eval(FamilyId::IsmailMassonRational, 2, Complex64::new(1.0, 0.0), None, Format::Human);
        assert!(s.contains("recurrence: none"));
        let s = render_eval(
            FamilyId::ContinuousQHermite,
            2,
            Complex64::new(3.5, 0.0),
            Some(Complex64::new(3.5, 0.0)),
            Format::Json,
        );
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rel_residual"], 0.0);
    }
}

use std::io::{self, Write};

use focal_core::verify::VerifyReport;
use serde::Serialize;

use crate::output::num;

#[derive(Debug, Serialize)]
struct JsonAssertion<'a> {
    name: &'a str,
    residual: f64,
    tol: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    suite: &'a str,
    curve: &'a str,
    assertions: Vec<JsonAssertion<'a>>,
}

/// `{suite, curve, assertions: [{name, residual, tol, pass}]}`.
///
/// Non-finite residuals are not representable in JSON and become `null`.
pub fn to_json(r: &VerifyReport) -> String {
    let body = JsonReport {
        suite: &r.suite,
        curve: &r.curve,
        assertions: r
            .assertions
            .iter()
            .map(|a| JsonAssertion {
                name: &a.name,
                residual: a.residual,
                tol: a.tol,
                pass: a.pass,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
    s.push('\n');
    s
}

pub fn write_table(r: &VerifyReport, w: &mut dyn Write) -> io::Result<()> {
    let width = r.assertions.iter().map(|a| a.name.len()).max().unwrap_or(4).max(4);
    writeln!(w, "suite {} on {}", r.suite, r.curve)?;
    writeln!(w, "{:<width$}  {:>23}  {:>23}  result", "name", "residual", "tol")?;
    for a in &r.assertions {
        writeln!(
            w,
            "{:<width$}  {:>23}  {:>23}  {}",
            a.name,
            num(a.residual),
            num(a.tol),
            if a.pass { "pass" } else { "FAIL" }
        )?;
    }
    let failed = r.assertions.iter().filter(|a| !a.pass).count();
    writeln!(w, "{} assertions, {} failed", r.assertions.len(), failed)
}

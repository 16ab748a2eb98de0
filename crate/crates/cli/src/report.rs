use std::io::Write;

use serde_json::Value;

use tsetlin::gg::{Theorem1Result, Verdict};
use tsetlin::verifier::VerificationReport;

pub struct Outcome {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    pub fn new(ok: bool, json: Value, text: String) -> Self {
        Outcome { ok, json, text }
    }

    pub fn print(&self, as_json: bool) {
        let body = if as_json {
            serde_json::to_string_pretty(&self.json).expect("values serialize")
        } else {
            self.text.trim_end().to_string()
        };
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    }
}

pub fn verification_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "relations: {}\nseed:\n{}radius {}: {} tableaux, {} checks, {} failures\n",
        r.relations, r.seed, r.radius, r.tableaux, r.checks, r.failure_count
    );
    for f in &r.failures {
        s += &format!("  {} at {}: {}\n", f.relation, f.tableau.compact(), f.defect);
    }
    s += if r.passed { "passed" } else { "FAILED" };
    s
}

pub fn theorem1_text(r: &Theorem1Result) -> String {
    let mut s = format!(
        "family {}  top row [{}]\nlp condition: {}\nadmissible: {}\n",
        r.family,
        r.top_row.join(","),
        r.lp_condition,
        r.admissible
    );
    match &r.verdict {
        Verdict::Module { report } => {
            s += &format!("module: verified on {} tableaux ({} checks)", report.tableaux, report.checks)
        }
        Verdict::NotModule { row, witness, defect } => {
            s += &format!("not a module: [e{row},f{row}] - h{row} is nonzero at\n{witness}defect: {defect}")
        }
        Verdict::NotModuleOther { failure } => {
            s += &format!("not a module: {} fails at {}", failure.relation, failure.tableau.compact())
        }
    }
    s
}

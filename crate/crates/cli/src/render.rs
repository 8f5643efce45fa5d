//! Text renderings of the computed values: pretty for terminals, CSV for
//! spreadsheets. JSON comes from the core document builders, except for
//! the bench report which only exists on this side.

use radial_core::{LaurentInH, MomentTable, RadialVector, VerificationReport, VerifyStatus};

use crate::BenchReport;

/// `G^8 = X_8 + 22·X_6 + 202·X_4 + 958·X_2 + 2092·e`
pub fn expansion_pretty(vector: &RadialVector) -> String {
    let mut out = format!("G^{} = ", vector.power());
    let terms: Vec<(usize, String)> = vector
        .live_coefficients()
        .map(|(k, c)| (k, c.to_string()))
        .collect();
    for (position, (k, coefficient)) in terms.iter().rev().enumerate() {
        if position > 0 {
            out.push_str(" + ");
        }
        let basis = if *k == 0 {
            "e".to_string()
        } else {
            format!("X_{k}")
        };
        if coefficient == "1" {
            out.push_str(&basis);
        } else {
            out.push_str(coefficient);
            out.push('\u{b7}');
            out.push_str(&basis);
        }
    }
    out.push('\n');
    out
}

pub fn expansion_csv(vector: &RadialVector) -> String {
    let mut out = String::from("k,coefficient\n");
    for (k, coefficient) in vector.live_coefficients() {
        out.push_str(&k.to_string());
        out.push(',');
        out.push_str(&coefficient.to_string());
        out.push('\n');
    }
    out
}

pub fn moments_pretty(table: &MomentTable) -> String {
    let mut out = String::new();
    for (n, value) in table.rows() {
        out.push_str(&format!("tau(G^{n}) = {value}\n"));
    }
    out
}

/// One pretty line per moment. Symmetric values are grouped as
/// `c·(h^p + h^-p)`; the general fallback lists plain powers.
fn opval_pretty_line(n: usize, value: &LaurentInH) -> String {
    if value.is_zero() {
        return format!("E(G^{n}) = 0\n");
    }
    let mut parts: Vec<String> = Vec::new();
    if value == &value.involution() {
        let mut positives: Vec<i64> = value
            .iter()
            .map(|(exponent, _)| exponent)
            .filter(|exponent| *exponent > 0)
            .collect();
        positives.sort_unstable_by(|a, b| b.cmp(a));
        for exponent in positives {
            let coefficient = value.coefficient(exponent).to_string();
            let pair = format!("(h^{exponent} + h^-{exponent})");
            parts.push(if coefficient == "1" {
                pair
            } else {
                format!("{coefficient}\u{b7}{pair}")
            });
        }
        let printed = value.coefficient(0).to_string();
        if printed != "0" {
            parts.push(if printed == "1" {
                "h^0".to_string()
            } else {
                format!("{printed}\u{b7}h^0")
            });
        }
    } else {
        let mut exponents: Vec<i64> = value.iter().map(|(exponent, _)| exponent).collect();
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        for exponent in exponents {
            let coefficient = value.coefficient(exponent).to_string();
            let base = format!("h^{exponent}");
            parts.push(if coefficient == "1" {
                base
            } else {
                format!("{coefficient}\u{b7}{base}")
            });
        }
    }
    format!("E(G^{n}) = {}\n", parts.join(" + "))
}

pub fn opval_pretty(rows: &[(usize, LaurentInH)]) -> String {
    rows.iter()
        .map(|(n, value)| opval_pretty_line(*n, value))
        .collect()
}

pub fn opval_csv(rows: &[(usize, LaurentInH)]) -> String {
    let mut out = String::from("n,exponent,coefficient\n");
    for (n, value) in rows {
        for (exponent, coefficient) in value.iter() {
            out.push_str(&format!("{n},{exponent},{coefficient}\n"));
        }
    }
    out
}

pub fn opval_json(rows: &[(usize, LaurentInH)], as_array: bool) -> String {
    if !as_array {
        let (n, value) = &rows[0];
        let mut doc = value.to_moment_json(*n);
        doc.push('\n');
        return doc;
    }
    let mut out = String::from("[");
    for (position, (n, value)) in rows.iter().enumerate() {
        if position > 0 {
            out.push(',');
        }
        out.push_str(&value.to_moment_json(*n));
    }
    out.push_str("]\n");
    out
}

pub fn verify_pretty(report: &VerificationReport) -> String {
    let mut out = format!(
        "verify N={}, n = {}..={}\n",
        report.generators, report.range.0, report.range.1
    );
    out.push_str(&format!("methods: {}\n", report.methods.join(", ")));
    let mut matched = 0usize;
    let mut mismatched = 0usize;
    let mut skipped = 0usize;
    for row in &report.rows {
        out.push_str(&format!(
            "  n={:<4} {:<18} {:>6} ms\n",
            row.n,
            row.status.label(),
            row.elapsed_ms
        ));
        match &row.status {
            VerifyStatus::Match => matched += 1,
            VerifyStatus::Mismatch { detail } => {
                mismatched += 1;
                out.push_str(&format!("         detail: {detail}\n"));
            }
            VerifyStatus::SkippedResource => skipped += 1,
        }
    }
    if !report.notes.is_empty() {
        out.push_str("notes:\n");
        for note in &report.notes {
            out.push_str(&format!("  - {note}\n"));
        }
    }
    let verdict = if mismatched == 0 { "ok" } else { "FAILED" };
    out.push_str(&format!(
        "result: {verdict} ({matched} match, {mismatched} mismatch, {skipped} skipped)\n"
    ));
    out
}

pub fn verify_csv(report: &VerificationReport) -> String {
    let mut out = String::from("n,status,ms\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.n,
            row.status.label(),
            row.elapsed_ms
        ));
        if let VerifyStatus::Mismatch { detail } = &row.status {
            out.push_str(&format!("# detail n={}: {detail}\n", row.n));
        }
    }
    for note in &report.notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    out
}

fn push_json_string(out: &mut String, text: &str) {
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

pub fn bench_json(report: &BenchReport) -> String {
    let mut out = String::from("{\"schema\":\"radial.bench.v1\",\"N\":");
    out.push_str(&report.generators.to_string());
    out.push_str(",\"term_limit\":");
    out.push_str(&report.term_limit.to_string());
    out.push_str(",\"recurrence\":[");
    for (position, timing) in report.recurrence.iter().enumerate() {
        if position > 0 {
            out.push(',');
        }
        out.push_str(&format!("{{\"n\":{},\"ms\":{}}}", timing.n, timing.ms));
    }
    out.push_str("],\"brute\":[");
    for (position, timing) in report.brute.iter().enumerate() {
        if position > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"n\":{},\"ms\":{},\"terms\":{},\"predicted\":\"{}\"}}",
            timing.n, timing.ms, timing.terms, timing.predicted
        ));
    }
    out.push_str("],\"notes\":[");
    for (position, note) in report.notes.iter().enumerate() {
        if position > 0 {
            out.push(',');
        }
        push_json_string(&mut out, note);
    }
    out.push_str("]}\n");
    out
}

pub fn bench_csv(report: &BenchReport) -> String {
    let mut out = String::from("section,n,ms,terms,predicted\n");
    for timing in &report.recurrence {
        out.push_str(&format!("recurrence,{},{},,\n", timing.n, timing.ms));
    }
    for timing in &report.brute {
        out.push_str(&format!(
            "brute,{},{},{},{}\n",
            timing.n, timing.ms, timing.terms, timing.predicted
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    out
}

pub fn bench_pretty(report: &BenchReport) -> String {
    let mut out = format!(
        "bench N={} (term limit {})\n",
        report.generators, report.term_limit
    );
    out.push_str("recurrence sweep (all moments up to n):\n");
    for timing in &report.recurrence {
        out.push_str(&format!("  n={:<6} {:>8} ms\n", timing.n, timing.ms));
    }
    if !report.brute.is_empty() {
        out.push_str("brute-force chain:\n");
        for timing in &report.brute {
            out.push_str(&format!(
                "  n={:<6} {:>8} ms   {} terms (predicted {})\n",
                timing.n, timing.ms, timing.terms, timing.predicted
            ));
        }
    }
    if !report.notes.is_empty() {
        out.push_str("notes:\n");
        for note in &report.notes {
            out.push_str(&format!("  - {note}\n"));
        }
    }
    out
}

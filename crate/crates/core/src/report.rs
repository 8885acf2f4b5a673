//! JSON and text renderings of reports.
//!
//! JSON objects use sorted keys and rationals are always written as
//! `"num/den"` strings, so identical inputs give byte-identical output.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::ca_engine::{EquationSystem, WordType};
use crate::jchar::{ratio_string, render_decimal, DesignSummary, WordSpectrum};
use crate::qc64::{PeriodicFamily, SearchHit, TheoryReport};
use crate::verify::VerifyReport;

/// Decimal places used for resolution renderings.
pub const DECIMALS: u32 = 7;

fn count_json(c: u128) -> Value {
    match u64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn labels(ws: &[WordType]) -> Vec<String> {
    ws.iter().map(WordType::label).collect()
}

pub fn rational_json(r: &BigRational) -> Value {
    json!(ratio_string(r))
}

pub fn spectrum_json(spec: &WordSpectrum) -> Value {
    spec.entries()
        .map(|(l, r, c)| json!({"length": l, "rho": r.to_string(), "count": count_json(c)}))
        .collect()
}

fn degenerate_json(spec: &WordSpectrum) -> Value {
    spec.degenerate()
        .map(|(l, r, c)| json!({"length": l, "rho": r.to_string(), "count": count_json(c)}))
        .collect()
}

pub fn summary_json(s: &DesignSummary) -> Value {
    let decimal = s
        .resolution
        .exact()
        .map(|r| json!(render_decimal(r, DECIMALS)))
        .unwrap_or(Value::Null);
    json!({
        "gwlp": s.gwlp.iter().map(ratio_string).collect::<Vec<_>>(),
        "resolution": s.resolution.to_string(),
        "resolution_decimal": decimal,
        "min_length": s.min_length,
        "degenerate": s.degenerate,
    })
}

pub fn report_json(r: &TheoryReport) -> Value {
    let runs = r.runs();
    let runs = match u64::try_from(&runs) {
        Ok(v) => json!(v),
        Err(_) => json!(runs.to_string()),
    };
    let mut out = json!({
        "runs": runs,
        "factors": r.factors(),
        "n": r.n,
        "p": r.p,
        "method": r.method.to_string(),
        "spectrum_source": r.spectrum_source.to_string(),
        "spectrum": spectrum_json(&r.spectrum),
        "degenerate_words": degenerate_json(&r.spectrum),
        "preconditions_met": r.preconditions_met,
        "F": r.frequency.counts(),
    });
    let obj = out.as_object_mut().expect("object");
    if let Value::Object(summary) = summary_json(&r.summary) {
        obj.extend(summary);
    }
    if let (Some(k), Some(a), Some(rhos)) = (&r.k_values, &r.a_values, &r.rhos) {
        let sys = crate::qc64::system(r.p).expect("p <= 3 when K is present");
        obj.insert("K".into(), json!(k));
        obj.insert("A".into(), json!(a));
        obj.insert("K_order".into(), json!(labels(&sys.k_order)));
        obj.insert("A_order".into(), json!(labels(&sys.a_order)));
        obj.insert(
            "rhos".into(),
            json!(rhos.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        );
    }
    out
}

pub fn report_text(r: &TheoryReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "runs={} factors={} n={} p={} method={} source={}",
        r.runs(),
        r.factors(),
        r.n,
        r.p,
        r.method,
        r.spectrum_source
    );
    if let (Some(k), Some(a)) = (&r.k_values, &r.a_values) {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "K=({})", join(k));
        let _ = writeln!(s, "A=({})", join(a));
        let _ = writeln!(s, "preconditions_met={}", r.preconditions_met);
    }
    let _ = writeln!(s, "{:>8} {:>12} {:>24}", "length", "rho", "count");
    for (l, rho, c) in r.spectrum.entries() {
        let _ = writeln!(s, "{:>8} {:>12} {:>24}", l, rho.to_string(), c);
    }
    for (l, rho, c) in r.spectrum.degenerate() {
        let _ = writeln!(s, "{:>8} {:>12} {:>24} (degenerate)", l, rho.to_string(), c);
    }
    let gwlp: Vec<String> = r.summary.gwlp.iter().map(ratio_string).collect();
    let _ = writeln!(s, "gwlp=({})", gwlp.join(","));
    let _ = write!(s, "resolution={}", r.summary.resolution);
    if let Some(x) = r.summary.resolution.exact() {
        let _ = write!(s, " ({})", render_decimal(x, DECIMALS));
    }
    s.push('\n');
    s
}

pub fn system_json(sys: &EquationSystem) -> Value {
    json!({
        "p": sys.p,
        "K_order": labels(&sys.k_order),
        "C": sys.c,
        "constants": sys.constants,
        "A_order": labels(&sys.a_order),
        "B": sys.b,
        "deltas": sys.deltas,
    })
}

/// Matrices laid out one labelled row per line, constants and deltas in the
/// last column.
pub fn system_text(sys: &EquationSystem) -> String {
    let mut s = String::new();
    let width = sys.p;
    let row = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(
        s,
        "C ({} x {})",
        sys.c.len(),
        sys.c.first().map_or(0, Vec::len)
    );
    for (i, w) in sys.k_order.iter().enumerate() {
        let _ = writeln!(
            s,
            "k_{:<width$} | {} | +{}",
            w.label(),
            row(&sys.c[i]),
            sys.constants[i],
            width = width
        );
    }
    let _ = writeln!(
        s,
        "B ({} x {})",
        sys.b.len(),
        sys.b.first().map_or(0, Vec::len)
    );
    for (i, w) in sys.a_order.iter().enumerate() {
        let _ = writeln!(
            s,
            "a_{:<width$} | {} | delta={}",
            w.label(),
            row(&sys.b[i]),
            sys.deltas[i],
            width = width
        );
    }
    s
}

pub fn family_json(f: &PeriodicFamily) -> Value {
    json!({
        "t": f.t,
        "F0": f.f0.counts(),
        "Ft": f.ft.counts(),
        "r0": f.r0,
        "rho0": f.rho0.to_string(),
        "r": f.predicted_r,
        "rho": f.predicted_rho.to_string(),
        "rho_exponent": f.predicted_rho.exponent(),
        "resolution": ratio_string(&f.predicted_resolution),
        "resolution_decimal": render_decimal(&f.predicted_resolution, DECIMALS),
        "K0": f.k0,
        "A0": f.a0,
        "Kt": f.kt,
        "At": f.at,
        "direct_resolution": ratio_string(&f.direct_resolution()),
        "consistent": f.consistent(),
    })
}

pub fn family_text(f: &PeriodicFamily) -> String {
    format!(
        "t={} r0={} rho0={} r={} rho=2^-{} resolution={} ({})\n",
        f.t,
        f.r0,
        f.rho0,
        f.predicted_r,
        f.predicted_rho.exponent(),
        ratio_string(&f.predicted_resolution),
        render_decimal(&f.predicted_resolution, DECIMALS)
    )
}

pub fn search_json(hits: &[SearchHit]) -> Value {
    hits.iter()
        .map(|h| {
            let r = &h.report;
            json!({
                "F": r.frequency.counts(),
                "K": r.k_values,
                "A": r.a_values,
                "gwlp": r.summary.gwlp.iter().map(ratio_string).collect::<Vec<_>>(),
                "resolution": r.summary.resolution.to_string(),
                "degenerate": r.summary.degenerate,
                "spectrum_source": r.spectrum_source.to_string(),
                "witness_V": h.witness.rows_as_ints(),
            })
        })
        .collect()
}

pub fn search_text(hits: &[SearchHit]) -> String {
    let mut s = String::new();
    for (i, h) in hits.iter().enumerate() {
        let rows: Vec<String> = h
            .witness
            .rows()
            .iter()
            .map(|r| crate::z4::label(r))
            .collect();
        let _ = writeln!(
            s,
            "{:>3}. resolution={} V=[{}] source={}{}",
            i + 1,
            h.report.summary.resolution,
            rows.join(","),
            h.report.spectrum_source,
            if h.report.summary.degenerate {
                " degenerate"
            } else {
                ""
            }
        );
    }
    s
}

pub fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "p": r.p,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed(),
            "note": c.note,
            "diffs": c.diffs.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(
            s,
            "[{}] p={} {}",
            if c.passed() { "PASS" } else { "FAIL" },
            r.p,
            c.name
        );
        if let Some(n) = &c.note {
            let _ = writeln!(s, "       note: {}", n);
        }
        for d in &c.diffs {
            let _ = writeln!(s, "       {}", d);
        }
    }
    s
}

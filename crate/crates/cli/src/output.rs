//! Rendering of outcomes as text, JSON or CSV. All three are deterministic:
//! every collection is emitted in the order the library produced it.

use std::fmt::Write as _;
use std::io;

use quasi_core::lab::{CaseCertificate, CheckKind, Subject, VerificationReport};
use serde::Serialize;

use crate::cli::Format;
use crate::run::{EnumerateReport, IterateReport, Outcome};

pub fn render(outcome: &Outcome, format: Format) -> io::Result<String> {
    match format {
        Format::Json => match outcome {
            Outcome::Report(r) => json(r),
            Outcome::Enumerate(r) => json(r),
            Outcome::Iterate(r) => json(r),
        },
        Format::Csv => csv(outcome),
        Format::Text => Ok(match outcome {
            Outcome::Report(r) => report_text(r),
            Outcome::Enumerate(r) => enumerate_text(r),
            Outcome::Iterate(r) => iterate_text(r),
        }),
    }
}

fn json<T: Serialize>(value: &T) -> io::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(outcome: &Outcome) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match outcome {
        Outcome::Report(r) if r.subject == Subject::Theorem => {
            w.write_record(["family", "a", "b", "term", "example", "status", "sup_ratio_sq"])?;
            for d in &r.dispatch {
                w.serialize((
                    d.spec.family().name(),
                    d.spec.a(),
                    d.spec.b(),
                    &d.term,
                    tag(&d.example),
                    tag(&d.status),
                    d.sup_ratio_sq.as_ref().map(|q| q.to_string()).unwrap_or_default(),
                ))?;
            }
        }
        Outcome::Report(r) if r.subject == Subject::Classify => {
            w.write_record(["family", "a", "b", "term", "example"])?;
            w.write_record([
                r.params["family"].to_string(),
                r.params["a"].to_string(),
                r.params["b"].to_string(),
                r.params["term"].to_string(),
                r.classification.as_ref().map(tag).unwrap_or_default(),
            ])?;
        }
        Outcome::Report(r) => {
            w.write_record(["m", "n", "lhs_sq", "rhs_sq", "argmax", "holds"])?;
            for row in &r.rows {
                w.serialize((
                    row.m,
                    row.n,
                    row.lhs_sq.to_string(),
                    row.rhs_sq.to_string(),
                    row.argmax.as_deref().unwrap_or(""),
                    row.holds,
                ))?;
            }
        }
        Outcome::Enumerate(r) => {
            w.write_record(["family", "a", "b", "term", "example"])?;
            for s in &r.specs {
                w.serialize((&s.family, s.a, s.b, &s.term, tag(&s.example)))?;
            }
        }
        Outcome::Iterate(r) => {
            w.write_record(["step", "dist_sq", "apriori_holds"])?;
            for s in &r.step_distances_sq {
                let holds = s.apriori_holds.map(|b| b.to_string()).unwrap_or_default();
                w.serialize((s.step, s.dist_sq.to_string(), holds))?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// The serde name of a unit enum variant, e.g. `EXAMPLE_POW2`.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => panic!("expected a string tag, got {other:?}"),
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{} {}  [{}]", tag(&r.subject), params.join(" "), tag(&r.status));

    if let Some(c) = &r.classification {
        let _ = writeln!(out, "classification: {}", tag(c));
    }
    if let Some(g) = &r.grid {
        let _ = write!(out, "grid: {} pairs, max_exp {}", g.pairs, g.max_exp);
        if g.infinite {
            let _ = write!(out, ", sup ratio^2 = infinite");
        } else if let Some(s) = &g.sup_ratio_sq {
            let _ = write!(out, ", sup ratio^2 = {s}");
        }
        if let Some(v) = &g.min_value_sq {
            let _ = write!(out, ", min value^2 = {v}");
        }
        if let Some(w) = &g.witness {
            let _ = write!(out, " at ({}, {})", w.m, w.n);
        }
        out.push('\n');
    }
    for d in &r.dispatch {
        let sup = d.sup_ratio_sq.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "  {:<20} {:<16} {:<13} sup {:<6} [{}]",
            d.spec.to_string(),
            d.term,
            tag(&d.example),
            sup,
            tag(&d.status)
        );
    }
    for s in &r.fixed_point_scans {
        let _ = writeln!(
            out,
            "fixed points of T on {} up to exponent {}: {}",
            tag(&s.space),
            s.max_exp,
            if s.fixed_points.is_empty() { "none".to_string() } else { format!("{:?}", s.fixed_points) }
        );
    }
    for c in &r.certificates {
        certificate_text(&mut out, c);
    }
    if r.failures.is_empty() {
        let _ = writeln!(out, "failures: none");
    } else {
        let _ = writeln!(out, "failures: {}", r.failures.len());
        for f in &r.failures {
            let at = match (f.m, f.n) {
                (Some(m), Some(n)) => format!(" at ({m}, {n})"),
                _ => String::new(),
            };
            let vals = match (&f.lhs_sq, &f.rhs_sq) {
                (Some(l), Some(r)) => format!(": {l} vs {r}"),
                _ => String::new(),
            };
            let _ = writeln!(out, "  {}{at}{vals}", f.case);
        }
    }
    out
}

fn certificate_text(out: &mut String, c: &CaseCertificate) {
    let verdict = if c.verified { "verified" } else { "NOT VERIFIED" };
    let _ = write!(out, "certificate {}: {}", c.case_id, c.region);
    if let Some(t) = &c.dominating_term {
        let _ = write!(out, ", D* = {t}, q^2 = {}", c.q_sq);
    }
    let _ = writeln!(out, ", tail {} [{verdict}]", tag(&c.tail));
    for b in &c.boundary_checks {
        let rel = match b.kind {
            CheckKind::Pair => format!("{} <= {} * {}", b.lhs_sq, c.q_sq, b.rhs_sq),
            CheckKind::Bound => format!("{} >= {}", b.rhs_sq, b.lhs_sq),
        };
        let _ =
            writeln!(out, "  {}  (m, n) = ({}, {})  {rel}  {}", b.label, b.m, b.n, if b.holds { "ok" } else { "FAIL" });
    }
}

fn enumerate_text(r: &EnumerateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} relaxation terms with a <= {}, b <= {}", r.count, r.a_max, r.b_max);
    for s in &r.specs {
        let _ = writeln!(out, "  {:<6} a={:<3} b={:<3} {:<16} {}", s.family, s.a, s.b, s.term, tag(&s.example));
    }
    out
}

fn iterate_text(r: &IterateReport) -> String {
    let mut out = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{} {}  [{}]", r.subject, params.join(" "), tag(&r.status));
    let point = match (&r.final_point.exponent, &r.final_point.value) {
        (Some(e), _) => format!("{} exponent {e}", tag(&r.final_point.space)),
        (_, Some(v)) => v.to_string(),
        _ => "-".into(),
    };
    let _ = writeln!(out, "verdict {} after {} steps, final point {point}", tag(&r.verdict), r.steps);
    if let Some(f) = &r.fixed_point {
        let _ = writeln!(out, "fixed point of the map: {f}");
    }
    if let Some(q) = &r.apriori_q_sq {
        let _ = writeln!(out, "a-priori bound with q^2 = {q}");
    }
    for s in &r.step_distances_sq {
        let check = match s.apriori_holds {
            Some(true) => "  bound ok",
            Some(false) => "  bound VIOLATED",
            None => "",
        };
        let _ = writeln!(out, "  step {:>3}  d^2 = {}{check}", s.step, s.dist_sq);
    }
    out
}

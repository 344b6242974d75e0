use std::fmt::Write;
use std::time::Duration;

use serde_json::{Map, Value};

use crate::commands::{ParamsOut, Report, TableRow};
use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

pub fn render(report: &Report, format: Format, timing: Option<Duration>) -> String {
    match format {
        Format::Json => json(report, timing),
        Format::Csv => csv(report),
        Format::Text => text(report, timing),
    }
}

/// Rebuilds every object with keys in sorted order, whatever map backs `Value`.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect::<Map<_, _>>())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn json(report: &Report, timing: Option<Duration>) -> String {
    let mut value = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), SCHEMA_VERSION.into());
        if let Some(t) = timing {
            let mut timing = Map::new();
            timing.insert("elapsed_ms".into(), Value::from(t.as_secs_f64() * 1000.0));
            map.insert("timing".into(), Value::Object(timing));
        }
    }
    let mut out = serde_json::to_string_pretty(&sorted(value)).expect("reports serialize");
    out.push('\n');
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn k_cell(row: &TableRow) -> String {
    match (row.kind.as_str(), row.k) {
        ("finite", Some(k)) => k.to_string(),
        ("at_least", Some(k)) => format!(">={k}"),
        _ => format!("error:{}", row.error.as_deref().and_then(|e| e.split(':').next()).unwrap_or("error")),
    }
}

fn params_cells(p: &ParamsOut) -> [String; 3] {
    [p.n.to_string(), opt(&p.k), opt(&p.dmin)]
}

fn csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut rows: Vec<Vec<String>> = Vec::new();
    let header: &[&str] = match report {
        Report::Gen(r) => {
            rows.extend(r.words.iter().enumerate().map(|(i, w)| vec![i.to_string(), w.clone()]));
            &["index", "word"]
        }
        Report::Lindim(r) => {
            let a = r.witness.as_ref().map(|w| w.a);
            rows.push(vec![
                r.spec.p.to_string(),
                r.spec.d.to_string(),
                r.spec.basis.clone(),
                r.cap.to_string(),
                r.result.kind.clone(),
                r.result.k.to_string(),
                opt(&a),
            ]);
            &["p", "d", "basis", "cap", "kind", "k", "witness_a"]
        }
        Report::Analyze(r) => {
            rows.extend(r.profile.iter().map(|(col, n)| vec![col.clone(), n.to_string()]));
            &["column", "count"]
        }
        Report::Check(r) => {
            let mut row = vec![r.family.clone(), r.spec.p.to_string(), r.spec.d.to_string(), r.holds.to_string()];
            row.extend(params_cells(&r.params));
            row.extend(params_cells(&r.expected));
            row.push(r.griesmer.bound.to_string());
            rows.push(row);
            &[
                "family", "p", "d", "holds", "n", "k", "dmin", "expected_n", "expected_k",
                "expected_dmin", "griesmer",
            ]
        }
        Report::Table(r) => {
            rows.extend(
                r.rows
                    .iter()
                    .map(|row| vec![row.basis.clone(), opt(&row.xi), opt(&row.eta), k_cell(row)]),
            );
            &["basis", "xi", "eta", "k"]
        }
    };
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn params_text(p: &ParamsOut) -> String {
    format!(
        "[{}, {}, {}]",
        p.n,
        p.k.map_or("-".to_string(), |k| k.to_string()),
        p.dmin.map_or("-".to_string(), |d| d.to_string())
    )
}

fn text(report: &Report, timing: Option<Duration>) -> String {
    let mut out = String::new();
    match report {
        Report::Gen(r) => {
            let _ = writeln!(
                out,
                "{} code, p={} d={} basis={} k={}",
                r.spec.variant, r.spec.p, r.spec.d, r.spec.basis, opt(&r.spec.k)
            );
            let _ = writeln!(out, "params {} linear={}", params_text(&r.params), r.linear);
            for (i, w) in r.words.iter().enumerate() {
                let _ = writeln!(out, "{i:>6}  {w}");
            }
        }
        Report::Lindim(r) => {
            let k = match r.result.kind.as_str() {
                "finite" => r.result.k.to_string(),
                _ => format!(">= {}", r.result.k),
            };
            let _ = writeln!(out, "p={} d={} basis={}: k = {k}", r.spec.p, r.spec.d, r.spec.basis);
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "first mismatch a={}: w={} w+={}", w.a, w.word, w.word_plus);
            }
        }
        Report::Analyze(r) => {
            let _ = writeln!(
                out,
                "{} code, p={} d={} basis={} k={}",
                r.spec.variant, r.spec.p, r.spec.d, r.spec.basis, opt(&r.spec.k)
            );
            let _ = writeln!(out, "params {} linear={}", params_text(&r.params), r.linear);
            if let Some(g) = &r.griesmer {
                let _ = writeln!(out, "griesmer bound {} gap {}", g.bound, g.gap);
            }
            if let Some(name) = &r.named {
                let _ = writeln!(out, "recognized as {name}");
            }
            for (col, n) in &r.profile {
                let _ = writeln!(out, "cdn({col}) = {n}");
            }
            if let Some(pi) = &r.pi {
                match (&pi.distributed, &pi.error) {
                    (Some(v), _) => {
                        let _ = writeln!(out, "pi-distributed: {v}");
                    }
                    (None, Some(e)) => {
                        let _ = writeln!(out, "pi check: {e}");
                    }
                    _ => {}
                }
            }
            if let Some(w) = &r.weights {
                let terms: Vec<String> = w
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(i, n)| format!("{n}z^{i}"))
                    .collect();
                let _ = writeln!(out, "weights {}", terms.join(" + "));
            }
        }
        Report::Check(r) => {
            let _ = writeln!(out, "{} p={} d={}: holds={}", r.family, r.spec.p, r.spec.d, r.holds);
            let _ = writeln!(
                out,
                "params {} expected {} griesmer {}",
                params_text(&r.params),
                params_text(&r.expected),
                r.griesmer.bound
            );
            for g in &r.generators {
                let _ = writeln!(out, "  {g}");
            }
        }
        Report::Table(r) => {
            let _ = writeln!(out, "{} (p={}, d={}, cap={})", r.name, r.p, r.d, r.cap);
            for row in &r.rows {
                let _ = writeln!(out, "{:<10} {}", row.basis, k_cell(row));
            }
        }
    }
    if let Some(t) = timing {
        let _ = writeln!(out, "time {:.3} ms", t.as_secs_f64() * 1000.0);
    }
    out
}

use serde_json::Value;

use crate::kunz::KunzReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    /// `section,key,value` rows; only scalar results are included.
    Csv,
    Markdown,
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `(section, key, value)` for every scalar entry, in key order.
fn rows(r: &KunzReport) -> Vec<(&'static str, String, String)> {
    let mut out = Vec::new();
    for (k, v) in &r.input {
        let text = scalar(v).unwrap_or_else(|| v.to_string());
        out.push(("input", k.clone(), text));
    }
    for (k, v) in &r.results {
        if let Some(s) = scalar(v) {
            out.push(("results", k.clone(), s));
        }
    }
    for (k, v) in &r.verdicts {
        out.push(("verdicts", k.clone(), v.as_str().to_string()));
    }
    for (k, v) in &r.timings_ms {
        out.push(("timings_ms", k.clone(), v.to_string()));
    }
    out
}

fn csv(r: &KunzReport) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(["section", "key", "value"]).expect("in-memory write");
    for (s, k, v) in rows(r) {
        w.write_record([s, k.as_str(), v.as_str()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(r: &KunzReport) -> String {
    let mut out = format!("schema_version: {}\n", r.schema_version);
    let mut section = "";
    for (s, k, v) in rows(r) {
        if s != section {
            out.push_str(&format!("\n## {s}\n\n| key | value |\n| --- | --- |\n"));
            section = s;
        }
        out.push_str(&format!("| {} | {} |\n", md_cell(&k), md_cell(&v)));
    }
    out
}

pub fn render(r: &KunzReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => r.to_json(),
        OutputFormat::Csv => csv(r),
        OutputFormat::Markdown => markdown(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> KunzReport {
        let mut r = KunzReport::new(false);
        r.input("generators", [4, 5, 7]);
        r.result("count", 19);
        r.result("families", vec![vec![0, 1]]);
        r.result("note", "a,b|c");
        r.verdict("ok", true);
        r
    }

    #[test]
    fn csv_skips_structures_and_quotes() {
        let text = render(&sample(), OutputFormat::Csv);
        assert!(text.starts_with("section,key,value\r\n"));
        assert!(text.contains("input,generators,\"[4,5,7]\"\r\n"));
        assert!(text.contains("results,count,19\r\n"));
        assert!(text.contains("results,note,\"a,b|c\"\r\n"));
        assert!(!text.contains("families"));
        assert!(text.contains("verdicts,ok,verified\r\n"));
    }

    #[test]
    fn markdown_tables() {
        let text = render(&sample(), OutputFormat::Markdown);
        assert!(text.contains("## results"));
        assert!(text.contains("| note | a,b\\|c |"));
    }
}

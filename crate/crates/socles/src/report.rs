//! Structured command results: one claim per report, a status verdict,
//! a machine-readable payload, and human-readable witnesses.

use serde::Serialize;

/// Verdict of a single check or computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// A claimed identity was verified inside its hypotheses.
    Pass,
    /// A claimed identity failed; a witness is attached.
    Fail,
    /// A value was computed without a claim to check, or outside the
    /// range where one applies.
    Computed,
    /// The input violated a precondition.
    Error,
}

/// One unit of command output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub claim: String,
    pub status: Status,
    pub payload: serde_json::Value,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(command: &str, claim: &str, status: Status, payload: serde_json::Value) -> Self {
        Report {
            command: command.to_string(),
            claim: claim.to_string(),
            status,
            payload,
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

fn flatten(prefix: &str, value: &serde_json::Value, out: &mut Vec<String>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        serde_json::Value::Array(items) => {
            let shown: Vec<String> = items
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out.push(format!("{prefix}=[{}]", shown.join(", ")));
        }
        serde_json::Value::String(s) => out.push(format!("{prefix}={s}")),
        other => out.push(format!("{prefix}={other}")),
    }
}

/// Renders reports one per line as `[STATUS] claim key=value ...`,
/// followed by indented witness lines.
pub fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Computed => "COMPUTED",
            Status::Error => "ERROR",
        };
        let mut fields = Vec::new();
        flatten("", &r.payload, &mut fields);
        out.push_str(&format!("[{tag}] {}", r.claim));
        for f in &fields {
            out.push(' ');
            out.push_str(f);
        }
        out.push('\n');
        for w in &r.witnesses {
            out.push_str(&format!("    witness: {w}\n"));
        }
    }
    out
}

/// Renders reports as a pretty-printed JSON array.
pub fn render_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_is_one_line_per_report() {
        let reports = vec![
            Report::new("socle", "oracle and formula agree", Status::Pass, json!({"s": 2})),
            Report::new("verify", "reduction number one", Status::Fail, json!({"s": 1}))
                .with_witnesses(vec!["x*y".into()]),
        ];
        let text = render_text(&reports);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "[PASS] oracle and formula agree s=2");
        assert_eq!(lines[1], "[FAIL] reduction number one s=1");
        assert_eq!(lines[2], "    witness: x*y");
    }

    #[test]
    fn json_rendering_keeps_field_order() {
        let r = Report::new("resolve", "betti numbers", Status::Computed, json!({"betti": [1, 2, 1]}));
        let js = render_json(&[r]);
        let cmd = js.find("\"command\"").unwrap();
        let claim = js.find("\"claim\"").unwrap();
        let status = js.find("\"status\"").unwrap();
        let payload = js.find("\"payload\"").unwrap();
        assert!(cmd < claim && claim < status && status < payload);
        assert!(js.contains("\"COMPUTED\""));
    }

    #[test]
    fn nested_payloads_flatten_with_dotted_keys() {
        let r = Report::new(
            "verify",
            "dimension drop",
            Status::Pass,
            json!({"observed": 3, "predicted": {"rank": 1, "value": 3}}),
        );
        let text = render_text(&[r]);
        assert!(text.contains("predicted.rank=1"));
        assert!(text.contains("predicted.value=3"));
    }
}

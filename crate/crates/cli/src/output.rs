use std::fmt::Write as _;

use serde_json::Value;

/// Pretty JSON, or one `key: value` line per top-level field.
pub fn render(report: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("values serialise");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    match report {
        Value::Object(map) => {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {shown}");
            }
        }
        other => {
            let _ = writeln!(out, "{other}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn plain_lines() {
        let v = json!({"a": 1, "b": "x", "c": [1, 2]});
        assert_eq!(render(&v, false), "a: 1\nb: x\nc: [1,2]\n");
        let back: Value = serde_json::from_str(&render(&v, true)).unwrap();
        assert_eq!(back, v);
    }
}

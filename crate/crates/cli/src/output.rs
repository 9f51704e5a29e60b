use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

/// Render a report. JSON is one pretty-printed document; the human form
/// prints `key: value` lines, except that a report carrying a `words` list
/// prints just the words, one per line.
pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json values serialize") + "\n",
        Format::Human => {
            if let Some(Value::Array(words)) = v.get("words") {
                return words.iter().map(|w| scalar(w) + "\n").collect();
            }
            let mut out = String::new();
            human(v, "", &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn human(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                human(x, &key, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", items.join(" ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                human(x, &format!("{prefix}[{i}]"), out);
            }
        }
        x => out.push_str(&format!("{prefix}: {}\n", scalar(x))),
    }
}

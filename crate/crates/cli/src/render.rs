//! Text output: one `path = value` line per JSON leaf, so the text form carries
//! exactly the information of the JSON form.

use serde_json::Value;

fn walk(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&p, child, out);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                walk(&format!("{prefix}[{i}]"), child, out);
            }
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(prefix);
            out.push_str(" =\n");
            for line in s.lines() {
                out.push_str("    ");
                out.push_str(line);
                out.push('\n');
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

//! Rendering reports as pretty JSON or as flattened `path<TAB>value` lines.

use std::fmt::Write;

use serde_json::Value;

use super::Format;

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::from("path\tvalue\n");
            flatten(report, "", &mut s);
            s
        }
    }
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(v, &join(k), out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let cells: Vec<String> = a.iter().map(scalar).collect();
            writeln!(out, "{path}\t{}", cells.join(",")).expect("string write");
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(v, &join(&i.to_string()), out)),
        other => writeln!(out, "{path}\t{}", scalar(other)).expect("string write"),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_flattens_paths() {
        let v = serde_json::json!({"a": {"b": [1, 2]}, "c": [{"d": "X+1"}], "e": null});
        assert_eq!(render(&v, Format::Tsv), "path\tvalue\na.b\t1,2\nc.0.d\tX+1\ne\tnull\n");
    }
}

//! Plain-text rendering of command output. Arrays of flat records become
//! aligned tables, everything else is printed as indented `key: value` lines.

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, None, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(o) if o.values().all(|x| !x.is_object() && !x.is_array()) && o.len() <= 4 => {
            let parts: Option<Vec<String>> = o.iter().map(|(k, x)| scalar(x).map(|s| format!("{k}={s}"))).collect();
            parts.map(|p| format!("{{{}}}", p.join(", ")))
        }
        _ => None,
    }
}

fn is_record_table(a: &[Value]) -> bool {
    !a.is_empty() && a.iter().all(|r| r.as_object().is_some_and(|o| o.values().all(|x| scalar(x).is_some())))
}

fn table(out: &mut String, rows: &[Value], indent: usize) {
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        // a key first seen in a later row goes after its predecessor there
        let mut at = 0;
        for k in r.as_object().unwrap().keys() {
            match header.iter().position(|h| h == k) {
                Some(i) => at = i + 1,
                None => {
                    header.insert(at, k.clone());
                    at += 1;
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| header.iter().map(|h| r.get(h).and_then(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|c| c[i].chars().count()).chain([header[i].chars().count()]).max().unwrap())
        .collect();
    let line = |vals: &[String]| -> String {
        let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{}{}\n", " ".repeat(indent), padded.join("  ").trim_end())
    };
    out.push_str(&line(&header));
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(&rule));
    for c in &cells {
        out.push_str(&line(c));
    }
}

fn render_into(out: &mut String, key: Option<&str>, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(v) {
        match key {
            Some(k) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => out.push_str(&format!("{pad}{s}\n")),
        }
        return;
    }
    if let Some(k) = key {
        out.push_str(&format!("{pad}{k}:\n"));
    }
    let inner = if key.is_some() { indent + 2 } else { indent };
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                render_into(out, Some(k), x, inner);
            }
        }
        Value::Array(a) if is_record_table(a) => table(out, a, inner),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render_into(out, Some(&format!("[{i}]")), x, inner);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_become_tables() {
        let v = json!({"rows": [{"p": 5, "b2": 7}, {"p": 7, "b2": 5}]});
        assert_eq!(render(&v), "rows:\n  p  b2\n  -  --\n  5  7\n  7  5\n");
    }

    #[test]
    fn nested_values() {
        let v = json!({"a": 1, "b": {"c": [1, 2]}, "d": null});
        assert_eq!(render(&v), "a: 1\nb:\n  c: [1, 2]\nd: -\n");
    }
}

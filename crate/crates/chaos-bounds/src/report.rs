//! Machine-readable run reports.
//!
//! Field order is fixed by construction and every float prints with 17
//! significant digits, so identical configurations render byte-identical
//! documents. JSON is the canonical format; CSV is a flat projection of
//! the rows.

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    FloatList(Vec<f64>),
    TextList(Vec<String>),
    IntList(Vec<i64>),
    Null,
}

pub type Field = (&'static str, Value);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// One run's output: the command, its echoed inputs, and a list of rows.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<Field>,
    pub rows: Vec<Vec<Field>>,
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn escape_json(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn write_json_value(value: &Value, out: &mut String) {
    match value {
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Float(x) if x.is_finite() => out.push_str(&format_float(*x)),
        Value::Float(_) => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Text(s) => escape_json(s, out),
        Value::Null => out.push_str("null"),
        Value::FloatList(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_json_value(&Value::Float(*x), out);
            }
            out.push(']');
        }
        Value::TextList(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                escape_json(x, out);
            }
            out.push(']');
        }
        Value::IntList(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
    }
}

fn write_json_object(fields: &[Field], out: &mut String) {
    out.push('{');
    for (i, (name, value)) in fields.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        escape_json(name, out);
        out.push_str(": ");
        write_json_value(value, out);
    }
    out.push('}');
}

fn csv_cell(value: &Value) -> String {
    let raw = match value {
        Value::Int(i) => i.to_string(),
        Value::Float(x) if x.is_finite() => format_float(*x),
        Value::Float(_) => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => s.clone(),
        Value::Null => String::new(),
        Value::FloatList(xs) => xs
            .iter()
            .map(|x| format_float(*x))
            .collect::<Vec<_>>()
            .join(";"),
        Value::TextList(xs) => xs.join(";"),
        Value::IntList(xs) => xs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";"),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

impl Report {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"command\": ");
        escape_json(self.command, &mut out);
        out.push_str(",\n  \"inputs\": ");
        write_json_object(&self.inputs, &mut out);
        out.push_str(",\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    ");
            write_json_object(row, &mut out);
        }
        if self.rows.is_empty() {
            out.push_str("]\n}\n");
        } else {
            out.push_str("\n  ]\n}\n");
        }
        out
    }

    /// Flat projection of the rows: a `command` column plus the union of
    /// row field names in first-appearance order.
    fn to_csv(&self) -> String {
        let mut columns: Vec<&'static str> = Vec::new();
        for row in &self.rows {
            for (name, _) in row {
                if !columns.contains(name) {
                    columns.push(name);
                }
            }
        }
        let mut out = String::from("command");
        for name in &columns {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(self.command);
            for name in &columns {
                out.push(',');
                if let Some((_, value)) = row.iter().find(|(n, _)| n == name) {
                    out.push_str(&csv_cell(value));
                }
            }
            out.push('\n');
        }
        out
    }
}

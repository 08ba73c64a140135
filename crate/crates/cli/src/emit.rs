//! Bit-stable CSV and JSON emitters.
//!
//! CSV: comma-separated, `#`-prefixed header lines, LF endings, UTF-8;
//! floats carry 17 significant digits (round-trip exact). JSON: a single
//! object `{config, convergence, rows[]}` with rows as field maps in fixed
//! order. Identical configs produce byte-identical files.

use crate::run::{full, Cell, RunOutput};
use std::io::{self, Write};

pub fn write_csv(out: &RunOutput, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "# udw-cavity data file")?;
    for (k, v) in &out.config_echo {
        writeln!(w, "# {k} = {v}")?;
    }
    for (k, v) in &out.convergence {
        writeln!(w, "# convergence: {k}: {v}")?;
    }
    writeln!(w, "{}", out.columns.join(","))?;
    for row in &out.rows {
        let mut first = true;
        for cell in row {
            if !first {
                write!(w, ",")?;
            }
            first = false;
            match cell {
                Cell::Int(v) => write!(w, "{v}")?,
                Cell::Float(v) => write!(w, "{}", full(*v))?,
                Cell::Text(s) => write!(w, "{s}")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_json(out: &RunOutput, w: &mut dyn Write) -> io::Result<()> {
    use serde_json::{json, Map, Number, Value};
    let obj_of = |pairs: &[(String, String)]| {
        let mut m = Map::new();
        for (k, v) in pairs {
            m.insert(k.clone(), Value::String(v.clone()));
        }
        Value::Object(m)
    };
    let rows: Vec<Value> = out
        .rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            for (name, cell) in out.columns.iter().zip(row) {
                let v = match cell {
                    Cell::Int(v) => json!(v),
                    Cell::Float(v) => {
                        // JSON has no NaN; undefined cells become null
                        match Number::from_f64(*v) {
                            Some(n) => Value::Number(n),
                            None => Value::Null,
                        }
                    }
                    Cell::Text(s) => Value::String(s.clone()),
                };
                m.insert((*name).to_string(), v);
            }
            Value::Object(m)
        })
        .collect();
    let doc = json!({
        "config": obj_of(&out.config_echo),
        "convergence": obj_of(&out.convergence),
        "rows": rows,
    });
    let text = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
    w.write_all(text.as_bytes())?;
    w.write_all(b"\n")
}

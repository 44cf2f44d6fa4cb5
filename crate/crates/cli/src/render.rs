use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use polarwd::tables::ExpansionRow;
use polarwd::{CodeSpec, ReductionRow, WeightDistribution};
use serde::Serialize;
use serde_json::json;

use crate::args::{Format, OutputArgs};
use crate::build::Failure;

pub fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print(text);
            Ok(())
        }
    }
}

/// Writes to standard output, ignoring a closed pipe.
pub fn print(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn spectrum(format: Format, code: &CodeSpec, lambda: usize, wd: &WeightDistribution) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("weight,count\n");
            for (w, c) in wd.nonzero() {
                writeln!(s, "{w},{c}").unwrap();
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = wd
                .nonzero()
                .map(|(w, c)| json!({ "w": w, "count": c.to_string() }))
                .collect();
            pretty(&json!({
                "n": code.n(),
                "length": code.len(),
                "k": code.k(),
                "lambda": lambda,
                "spectrum": rows,
            }))
        }
    }
}

pub struct ExpandLine {
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
    /// `(n3, j*, memory)`
    pub optimized: Option<(usize, usize, Option<String>)>,
}

impl ExpandLine {
    pub fn render(&self, format: Format) -> String {
        match (format, &self.optimized) {
            (Format::Csv, None) => format!("k,n1,n2\n{},{},{}\n", self.k, self.n1, self.n2),
            (Format::Csv, Some((n3, j, m))) => format!(
                "k,n1,n2,n3,j,memory\n{},{},{},{n3},{j},{}\n",
                self.k,
                self.n1,
                self.n2,
                m.as_deref().unwrap_or("")
            ),
            (Format::Json, opt) => {
                let mut v = json!({ "k": self.k, "n1": self.n1, "n2": self.n2 });
                if let Some((n3, j, m)) = opt {
                    v["n3"] = json!(n3);
                    v["j"] = json!(j);
                    v["memory"] = json!(m);
                }
                pretty(&v)
            }
        }
    }
}

pub fn expansion_table(format: Format, rows: &[ExpansionRow], optimized: bool) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from(if optimized {
                "k,n1,n2,n3,memory\n"
            } else {
                "k,n1,n2\n"
            });
            for r in rows {
                if optimized {
                    let m = r.memory.as_ref().map(|m| m.trimmed()).unwrap_or_default();
                    writeln!(s, "{},{},{},{},{m}", r.k, r.n1, r.n2, r.n3).unwrap();
                } else {
                    writeln!(s, "{},{},{}", r.k, r.n1, r.n2).unwrap();
                }
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut o = json!({ "k": r.k, "n1": r.n1, "n2": r.n2 });
                    if optimized {
                        o["n3"] = json!(r.n3);
                        o["j"] = json!(r.j);
                        o["memory"] = json!(r.memory.as_ref().map(|m| m.trimmed()));
                    }
                    o
                })
                .collect();
            pretty(&v)
        }
    }
}

pub fn reduction_table(format: Format, rows: &[ReductionRow]) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("k,samples,n1,r1,r2\n");
            for r in rows {
                writeln!(
                    s,
                    "{},{},{},{:.2}%,{:.2}%",
                    r.k,
                    r.samples,
                    r.baseline,
                    100.0 * r.r1(),
                    100.0 * r.r2()
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "samples": r.samples,
                        "n1": r.baseline,
                        "reduced_plain": r.reduced_plain,
                        "reduced_optimized": r.reduced_optimized,
                        "r1": r.r1(),
                        "r2": r.r2(),
                    })
                })
                .collect();
            pretty(&v)
        }
    }
}

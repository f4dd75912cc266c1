//! Rendering of bigraded tables: an ASCII lattice, CSV, JSON, and a sparse
//! list. Every format is a pure function of its input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use equicoh_core::{dimension_table, Bidegree, DimensionTable, FreeModule, Window};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Table,
    #[default]
    Ascii,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub window: Window,
    pub format: Format,
    pub overlay: bool,
}

/// What is being drawn: a bare table, or a module whose generators can be
/// overlaid.
pub enum Renderable<'a> {
    Table(&'a DimensionTable),
    Module(&'a FreeModule),
}

fn resolve(r: &Renderable<'_>, w: Window) -> (DimensionTable, Option<BTreeMap<Bidegree, usize>>) {
    match r {
        Renderable::Table(t) => {
            let t2 =
                DimensionTable::from_fn(w, |d| if t.window().contains(d) { t.get(d) } else { 0 });
            (t2, None)
        }
        Renderable::Module(m) => {
            let mut marks = BTreeMap::new();
            for g in m.generators() {
                *marks.entry(g.degree).or_insert(0) += 1;
            }
            (dimension_table(m, w), Some(marks))
        }
    }
}

pub fn render(r: Renderable<'_>, spec: &RenderSpec) -> String {
    let (table, marks) = resolve(&r, spec.window);
    let marks = if spec.overlay { marks } else { None };
    match spec.format {
        Format::Ascii => ascii(&table, marks.as_ref()),
        Format::Csv => csv_text(&table),
        Format::Json => json(&table, &r),
        Format::Table => sparse(&table, marks.as_ref()),
    }
}

fn ascii(t: &DimensionTable, marks: Option<&BTreeMap<Bidegree, usize>>) -> String {
    let w = t.window();
    let entry = |d: Bidegree| {
        let v = t.get(d);
        let mut s = if v == 0 {
            ".".to_string()
        } else {
            v.to_string()
        };
        if marks.is_some_and(|m| m.contains_key(&d)) {
            s.push('*');
        }
        s
    };
    let mut width = w.p_min.to_string().len().max(w.p_max.to_string().len());
    for d in w.points() {
        width = width.max(entry(d).len());
    }
    let label_w = [
        "q\\p".len(),
        w.q_min.to_string().len(),
        w.q_max.to_string().len(),
    ]
    .into_iter()
    .max()
    .unwrap();
    let body_w = (width + 1) * w.width();

    let mut out = String::new();
    let _ = write!(out, "{:>label_w$} |", "q\\p");
    for p in w.p_min..=w.p_max {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    let _ = writeln!(out, "{}-+{}", "-".repeat(label_w), "-".repeat(body_w));
    for q in (w.q_min..=w.q_max).rev() {
        if q == -1 && w.q_max >= 0 {
            let _ = writeln!(out, "{}=+{}", "=".repeat(label_w), "=".repeat(body_w));
        }
        let _ = write!(out, "{q:>label_w$} |");
        for p in w.p_min..=w.p_max {
            let _ = write!(out, " {:>width$}", entry(Bidegree::new(p, q)));
        }
        out.push('\n');
    }
    out
}

fn csv_text(t: &DimensionTable) -> String {
    let w = t.window();
    let mut wr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec!["q\\p".to_string()];
    header.extend((w.p_min..=w.p_max).map(|p| p.to_string()));
    wr.write_record(&header).expect("in-memory csv");
    for q in (w.q_min..=w.q_max).rev() {
        let mut row = vec![q.to_string()];
        row.extend((w.p_min..=w.p_max).map(|p| t.get(Bidegree::new(p, q)).to_string()));
        wr.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(wr.into_inner().expect("in-memory csv")).expect("ascii csv")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonRow {
    q: i32,
    values: Vec<usize>,
}

#[derive(Serialize)]
struct JsonGenerator {
    label: String,
    p: i32,
    q: i32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonTable {
    schema_version: u32,
    window: Window,
    rows: Vec<JsonRow>,
    generators: Option<Vec<JsonGenerator>>,
}

fn json(t: &DimensionTable, r: &Renderable<'_>) -> String {
    let w = t.window();
    let doc = JsonTable {
        schema_version: SCHEMA_VERSION,
        window: w,
        rows: (w.q_min..=w.q_max)
            .rev()
            .map(|q| JsonRow {
                q,
                values: (w.p_min..=w.p_max)
                    .map(|p| t.get(Bidegree::new(p, q)))
                    .collect(),
            })
            .collect(),
        generators: match r {
            Renderable::Table(_) => None,
            Renderable::Module(m) => Some(
                m.sorted()
                    .generators()
                    .iter()
                    .map(|g| JsonGenerator {
                        label: g.label.clone(),
                        p: g.degree.p,
                        q: g.degree.q,
                    })
                    .collect(),
            ),
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn sparse(t: &DimensionTable, marks: Option<&BTreeMap<Bidegree, usize>>) -> String {
    let mut out = String::from("p\tq\tdim\n");
    for (d, v) in t.nonzero() {
        let _ = write!(out, "{}\t{}\t{}", d.p, d.q, v);
        if let Some(&k) = marks.and_then(|m| m.get(&d)) {
            let _ = write!(out, "\tgenerators={k}");
        }
        out.push('\n');
    }
    out
}

/// `{(0,0),(1,1),…}` in sorted order.
pub fn degree_list(degrees: &[Bidegree]) -> String {
    let mut ds = degrees.to_vec();
    ds.sort();
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

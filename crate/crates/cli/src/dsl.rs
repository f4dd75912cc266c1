//! The `.eqc` cell-complex format.
//!
//! ```text
//! # RP^2 with a twisted 1-cell
//! complex rp2 {
//!   cell e0 (0,0)
//!   cell e1 (1,1)
//!   cell e2 (2,1)
//!   d e2 : e1 = 0
//! }
//! ```
//!
//! A `d` line gives the image of generator `gen` under the connecting map of
//! cell `cell`, as a point-ring coefficient. `gen` is a cell label, possibly
//! followed by primes for generators that moved at an earlier stage; its
//! base cell must precede `cell`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use equicoh_core::attach::CellSpec;
use equicoh_core::{Bidegree, CellComplexSpec, DifferentialSpec, Error, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticCode {
    Syntax,
    Duplicate,
    Ordering,
    Unresolved,
    NoCells,
    BasePoint,
    Expression,
    Attachment,
}

impl DiagnosticCode {
    pub fn code(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E001",
            DiagnosticCode::Duplicate => "E002",
            DiagnosticCode::Ordering => "E003",
            DiagnosticCode::Unresolved => "E004",
            DiagnosticCode::NoCells => "E005",
            DiagnosticCode::BasePoint => "E006",
            DiagnosticCode::Expression => "E007",
            DiagnosticCode::Attachment => "E008",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: error[{}]: {}",
            self.line,
            self.column,
            self.code.code(),
            self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocCell {
    pub label: String,
    pub degree: Bidegree,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocDifferential {
    pub cell: String,
    pub generator: String,
    pub image: RingElement,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: String,
    pub cells: Vec<DocCell>,
    pub differentials: Vec<DocDifferential>,
}

impl ComplexDocument {
    /// A document with zero differentials, cells labelled `e0, e1, …`.
    pub fn from_degrees(name: impl Into<String>, degrees: &[Bidegree]) -> Self {
        ComplexDocument {
            name: name.into(),
            cells: degrees
                .iter()
                .enumerate()
                .map(|(i, &degree)| DocCell {
                    label: format!("e{i}"),
                    degree,
                    line: 0,
                })
                .collect(),
            differentials: Vec::new(),
        }
    }

    pub fn to_spec(&self) -> Result<CellComplexSpec, Error> {
        let mut by_cell: HashMap<&str, DifferentialSpec> = HashMap::new();
        for d in &self.differentials {
            by_cell
                .entry(d.cell.as_str())
                .or_default()
                .set(d.generator.clone(), d.image.clone());
        }
        CellComplexSpec::new(
            self.cells
                .iter()
                .map(|c| CellSpec {
                    label: c.label.clone(),
                    degree: c.degree,
                    differential: by_cell.remove(c.label.as_str()).unwrap_or_default(),
                })
                .collect(),
        )
    }

    /// The source line of a cell, for runtime diagnostics.
    pub fn cell_line(&self, label: &str) -> usize {
        self.cells
            .iter()
            .find(|c| c.label == label)
            .map_or(0, |c| c.line)
    }
}

/// Canonical formatting: two-space indent, each cell followed by its `d`
/// lines sorted by generator.
impl fmt::Display for ComplexDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut by_cell: BTreeMap<&str, Vec<&DocDifferential>> = BTreeMap::new();
        for d in &self.differentials {
            by_cell.entry(d.cell.as_str()).or_default().push(d);
        }
        writeln!(f, "complex {} {{", self.name)?;
        for c in &self.cells {
            writeln!(f, "  cell {} ({},{})", c.label, c.degree.p, c.degree.q)?;
            let mut ds = by_cell.remove(c.label.as_str()).unwrap_or_default();
            ds.sort_by(|x, y| x.generator.cmp(&y.generator));
            for d in ds {
                writeln!(f, "  d {} : {} = {}", d.cell, d.generator, d.image)?;
            }
        }
        writeln!(f, "}}")
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            src,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn error(&self, code: DiagnosticCode, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        let col = self.column();
        if self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphabetic() || self.chars[self.pos] == '_')
        {
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            Ok((self.chars[start..self.pos].iter().collect(), col))
        } else {
            Err(self.error(DiagnosticCode::Syntax, format!("expected {what}")))
        }
    }

    fn primes(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] == '\'' {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expect(&mut self, c: char) -> Result<(), Diagnostic> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(DiagnosticCode::Syntax, format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i32, Diagnostic> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.error(DiagnosticCode::Syntax, "expected an integer")
        })
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let col = self.column();
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        (s.trim_end().to_string(), col)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

enum State {
    Header,
    Open,
    Body,
    Closed,
}

/// Parses a document, collecting every diagnostic before giving up.
pub fn parse_complex(text: &str) -> Result<ComplexDocument, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut state = State::Header;
    let mut name = String::new();
    let mut cells: Vec<DocCell> = Vec::new();
    let mut raw_ds: Vec<(DocDifferential, usize, usize)> = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let src = strip_comment(raw);
        let mut cur = Cursor::new(src, line_no);
        if cur.at_end() {
            continue;
        }
        let result = (|| -> Result<(), Diagnostic> {
            match state {
                State::Header => {
                    let (kw, _) = cur.ident("`complex`")?;
                    if kw != "complex" {
                        return Err(Diagnostic {
                            code: DiagnosticCode::Syntax,
                            line: line_no,
                            column: 1 + src.len() - src.trim_start().len(),
                            message: format!("expected `complex`, found `{kw}`"),
                        });
                    }
                    name = cur.ident("a complex name")?.0;
                    state = State::Open;
                    if cur.at_end() {
                        return Ok(());
                    }
                    cur.expect('{')?;
                    state = State::Body;
                }
                State::Open => {
                    cur.expect('{')?;
                    state = State::Body;
                }
                State::Body => {
                    if cur.chars.get(cur.pos) == Some(&'}') {
                        cur.pos += 1;
                        state = State::Closed;
                    } else {
                        let (kw, col) = cur.ident("`cell`, `d` or `}`")?;
                        match kw.as_str() {
                            "cell" => {
                                let (label, _) = cur.ident("a cell label")?;
                                cur.expect('(')?;
                                let p = cur.int()?;
                                cur.expect(',')?;
                                let q = cur.int()?;
                                cur.expect(')')?;
                                cells.push(DocCell {
                                    label,
                                    degree: Bidegree::new(p, q),
                                    line: line_no,
                                });
                            }
                            "d" => {
                                let (cell, _) = cur.ident("a cell label")?;
                                cur.expect(':')?;
                                let (base, gen_col) = cur.ident("a generator label")?;
                                let generator = base + &cur.primes();
                                cur.expect('=')?;
                                let (expr, expr_col) = cur.rest();
                                if expr.is_empty() {
                                    return Err(cur.error(
                                        DiagnosticCode::Syntax,
                                        "expected an expression after `=`",
                                    ));
                                }
                                let image: RingElement = expr.parse().map_err(|e| match e {
                                    Error::Parse { column, message } => Diagnostic {
                                        code: DiagnosticCode::Expression,
                                        line: line_no,
                                        column: expr_col + column - 1,
                                        message,
                                    },
                                    other => Diagnostic {
                                        code: DiagnosticCode::Expression,
                                        line: line_no,
                                        column: expr_col,
                                        message: other.to_string(),
                                    },
                                })?;
                                raw_ds.push((
                                    DocDifferential {
                                        cell,
                                        generator,
                                        image,
                                        line: line_no,
                                    },
                                    col,
                                    gen_col,
                                ));
                            }
                            other => {
                                return Err(Diagnostic {
                                    code: DiagnosticCode::Syntax,
                                    line: line_no,
                                    column: col,
                                    message: format!(
                                        "expected `cell`, `d` or `}}`, found `{other}`"
                                    ),
                                })
                            }
                        }
                    }
                }
                State::Closed => {
                    return Err(cur.error(DiagnosticCode::Syntax, "unexpected text after `}`"));
                }
            }
            if !cur.at_end() {
                return Err(cur.error(DiagnosticCode::Syntax, "unexpected trailing text"));
            }
            let _ = cur.src;
            Ok(())
        })();
        if let Err(d) = result {
            diags.push(d);
        }
    }
    let header_failed = matches!(state, State::Header) && !diags.is_empty();
    if !matches!(state, State::Closed) && !header_failed {
        diags.push(Diagnostic {
            code: DiagnosticCode::Syntax,
            line: last_line,
            column: 1,
            message: match state {
                State::Header => "expected `complex <name> {`".into(),
                _ => "missing closing `}`".into(),
            },
        });
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    validate(&cells, &raw_ds, &mut diags, last_line);
    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line, d.column));
        return Err(diags);
    }
    Ok(ComplexDocument {
        name,
        cells,
        differentials: raw_ds.into_iter().map(|(d, _, _)| d).collect(),
    })
}

fn validate(
    cells: &[DocCell],
    ds: &[(DocDifferential, usize, usize)],
    diags: &mut Vec<Diagnostic>,
    last_line: usize,
) {
    let at = |line, column, code, message| Diagnostic {
        code,
        line,
        column,
        message,
    };
    let Some(first) = cells.first() else {
        diags.push(at(
            last_line,
            1,
            DiagnosticCode::NoCells,
            "no cells: a complex needs at least the (0,0) base point".into(),
        ));
        return;
    };
    if first.degree != Bidegree::ZERO {
        diags.push(at(
            first.line,
            1,
            DiagnosticCode::BasePoint,
            format!(
                "first cell `{}` is {}, the base point must be (0,0)",
                first.label, first.degree
            ),
        ));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        if index.insert(c.label.as_str(), i).is_some() {
            diags.push(at(
                c.line,
                1,
                DiagnosticCode::Duplicate,
                format!("duplicate cell label `{}`", c.label),
            ));
        }
        if i > 0 && c.degree < cells[i - 1].degree {
            diags.push(at(
                c.line,
                1,
                DiagnosticCode::Ordering,
                format!(
                    "cell `{}` {} comes after `{}` {}; cells must be ordered by p, then q",
                    c.label,
                    c.degree,
                    cells[i - 1].label,
                    cells[i - 1].degree
                ),
            ));
        }
    }
    let mut seen: HashMap<(&str, &str), usize> = HashMap::new();
    for (d, col, gen_col) in ds {
        let Some(&target) = index.get(d.cell.as_str()) else {
            diags.push(at(
                d.line,
                *col + 2,
                DiagnosticCode::Unresolved,
                format!("unknown cell `{}`", d.cell),
            ));
            continue;
        };
        let base = d.generator.trim_end_matches('\'');
        match index.get(base) {
            None => diags.push(at(
                d.line,
                *gen_col,
                DiagnosticCode::Unresolved,
                format!("unknown generator `{}`", d.generator),
            )),
            Some(&source) if source >= target => diags.push(at(
                d.line,
                *gen_col,
                DiagnosticCode::Ordering,
                format!(
                    "generator `{}` is not attached before cell `{}`",
                    d.generator, d.cell
                ),
            )),
            _ => {}
        }
        if let Some(prev) = seen.insert((d.cell.as_str(), d.generator.as_str()), d.line) {
            diags.push(at(
                d.line,
                *col,
                DiagnosticCode::Duplicate,
                format!(
                    "second `d {} : {}` (first on line {prev})",
                    d.cell, d.generator
                ),
            ));
        }
    }
}

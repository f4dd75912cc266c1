//! Attaching Rep(Z/2)-cells one at a time.
//!
//! Attaching a `(p,q)`-cell to `B` gives a cofiber sequence
//! `B -> X -> S^{p,q}` whose connecting map `d: H^{s,t}(B) -> H^{s+1,t}(S^{p,q})`
//! is determined by the images of the generators of `B`. The cohomology of `X`
//! is read off degreewise as `ker d ⊕ coker d` and then recovered as a free
//! module; a table that is not free means the differential was inadmissible.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_module::{
    dimension_table, module_dim, recover_generators, synth_label, DimensionTable, FreeModule,
    Generator, Window,
};
use crate::gf2::BitMatrix;
use crate::point_ring::{basis_dim, element_at, Bidegree, ConeBasisElement, RingElement};

/// Images of source generators under the connecting map, as coefficients of
/// the new cell's generator `ν`. Absent labels map to zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DifferentialSpec {
    images: BTreeMap<String, RingElement>,
}

impl DifferentialSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: impl Into<String>, image: impl Into<RingElement>) -> Self {
        self.set(label, image);
        self
    }

    pub fn set(&mut self, label: impl Into<String>, image: impl Into<RingElement>) {
        let image = image.into();
        let label = label.into();
        if image.is_zero() {
            self.images.remove(&label);
        } else {
            self.images.insert(label, image);
        }
    }

    pub fn get(&self, label: &str) -> Option<&RingElement> {
        self.images.get(label)
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &RingElement)> {
        self.images.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Checks that every image term sits in the bidegree forced by its source:
    /// `deg(c) + deg(ν) = deg(g) + (1,0)`.
    pub fn validate(&self, b: &FreeModule, cell: Bidegree) -> Result<()> {
        for (label, image) in &self.images {
            let g = b
                .get(label)
                .ok_or_else(|| Error::UnknownGenerator(label.clone()))?;
            let expected = required_coefficient_degree(g.degree, cell);
            for t in image.terms() {
                if t.bidegree() != expected {
                    return Err(Error::Inhomogeneous {
                        generator: label.clone(),
                        found: t.bidegree(),
                        expected,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The bidegree a coefficient `c` must have for `d(g) = c·ν`.
pub fn required_coefficient_degree(source: Bidegree, cell: Bidegree) -> Bidegree {
    source + Bidegree::new(1, 0) - cell
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AttachmentCase {
    NoDifferential,
    Kill,
    BottomShift,
    GeneralRamp,
}

impl fmt::Display for AttachmentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// What happened to one generator. `from == None` is a new generator,
/// `to == None` a generator that died.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeChange {
    pub label: String,
    pub from: Option<Bidegree>,
    pub to: Option<Bidegree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentOutcome {
    pub result: FreeModule,
    pub case: AttachmentCase,
    pub report: Vec<DegreeChange>,
}

/// Rank of `d: B_{at} -> (Σ^{cell} M)_{at + (1,0)}`.
pub fn connecting_rank(
    b: &FreeModule,
    cell: Bidegree,
    d: &DifferentialSpec,
    at: Bidegree,
) -> usize {
    let Some(target) = element_at(at + Bidegree::new(1, 0) - cell) else {
        return 0;
    };
    let sources: Vec<RingElement> = b
        .generators()
        .iter()
        .filter_map(|g| {
            let x = element_at(at - g.degree)?;
            Some(RingElement::from(x).mul(d.get(&g.label)?))
        })
        .collect();
    let mut m = BitMatrix::zeros(sources.len(), 1);
    for (i, image) in sources.iter().enumerate() {
        m.set(i, 0, image.contains(target));
    }
    m.rank()
}

/// The dimension table of `X = B ∪ e^{cell}` over `w`.
pub fn cofiber_table(
    b: &FreeModule,
    cell: Bidegree,
    d: &DifferentialSpec,
    w: Window,
) -> DimensionTable {
    DimensionTable::from_fn(w, |at| {
        let left = Bidegree::new(at.p - 1, at.q);
        let kernel = module_dim(b, at) - connecting_rank(b, cell, d, at);
        let cokernel = basis_dim(at - cell) - connecting_rank(b, cell, d, left);
        kernel + cokernel
    })
}

/// Attaches a cell whose generator is labelled `nu`.
pub fn attach_cell(
    b: &FreeModule,
    cell: Bidegree,
    d: &DifferentialSpec,
    w: Window,
) -> Result<AttachmentOutcome> {
    attach_labeled(b, &Generator::new("nu", cell), d, w)
}

pub fn attach_labeled(
    b: &FreeModule,
    cell: &Generator,
    d: &DifferentialSpec,
    w: Window,
) -> Result<AttachmentOutcome> {
    if b.get(&cell.label).is_some() {
        return Err(Error::Argument(format!(
            "cell label `{}` clashes with an existing generator",
            cell.label
        )));
    }
    d.validate(b, cell.degree)?;
    w.require(b.degrees().into_iter().chain([cell.degree]))?;

    let result = if d.is_zero() {
        let mut out = b.clone();
        out.push(cell.clone())?;
        return Ok(AttachmentOutcome {
            result: out,
            case: AttachmentCase::NoDifferential,
            report: vec![DegreeChange {
                label: cell.label.clone(),
                from: None,
                to: Some(cell.degree),
            }],
        });
    } else {
        let table = cofiber_table(b, cell.degree, d, w);
        recover_generators(&table).map_err(|e| Error::FreenessViolated(e.to_string()))?
    };

    let (result, report, moved_sources) = relabel(b, cell, &result.degrees());
    let kill_degree = cell.degree - Bidegree::new(1, 0);
    let case = if result.len() + 1 == b.len() && {
        let mut with_killed = result.degrees();
        with_killed.push(kill_degree);
        with_killed.sort();
        with_killed == b.degrees()
    } {
        AttachmentCase::Kill
    } else if moved_sources == 1 && result.len() == b.len() + 1 {
        AttachmentCase::BottomShift
    } else {
        AttachmentCase::GeneralRamp
    };
    Ok(AttachmentOutcome {
        result,
        case,
        report,
    })
}

/// Assigns labels to recovered degrees: unchanged degrees keep their
/// generator's label, a generator that moved within its column gets a prime,
/// anything left over is synthesized. Returns the module, the change report,
/// and how many generators of `b` did not keep their degree.
fn relabel(
    b: &FreeModule,
    cell: &Generator,
    degrees: &[Bidegree],
) -> (FreeModule, Vec<DegreeChange>, usize) {
    let mut old: Vec<(Generator, bool)> = b
        .sorted()
        .generators()
        .iter()
        .cloned()
        .chain([cell.clone()])
        .map(|g| (g, false))
        .collect();
    let mut remaining: Vec<Option<Bidegree>> = degrees.iter().copied().map(Some).collect();
    let mut out: Vec<Generator> = Vec::new();

    for (g, used) in old.iter_mut() {
        if let Some(slot) = remaining.iter_mut().find(|s| **s == Some(g.degree)) {
            *slot = None;
            *used = true;
            out.push(g.clone());
        }
    }
    let mut report = Vec::new();
    let mut moved_sources = 0;
    let taken = |out: &[Generator], l: &str| out.iter().any(|g| g.label == l);
    for slot in remaining.iter_mut() {
        let Some(d) = *slot else { continue };
        if let Some((g, used)) = old.iter_mut().find(|(g, used)| !*used && g.degree.p == d.p) {
            *used = true;
            let mut label = format!("{}'", g.label);
            while taken(&out, &label) {
                label.push('\'');
            }
            report.push(DegreeChange {
                label: g.label.clone(),
                from: Some(g.degree),
                to: Some(d),
            });
            out.push(Generator::new(label, d));
            *slot = None;
        }
    }
    for (k, slot) in remaining.iter().enumerate() {
        if let Some(d) = *slot {
            let mut label = synth_label(d, k);
            while taken(&out, &label) {
                label.push('\'');
            }
            report.push(DegreeChange {
                label: label.clone(),
                from: None,
                to: Some(d),
            });
            out.push(Generator::new(label, d));
        }
    }
    for (g, used) in &old {
        if !used {
            report.push(DegreeChange {
                label: g.label.clone(),
                from: Some(g.degree),
                to: None,
            });
        }
    }
    for (g, _) in &old[..old.len() - 1] {
        if !out.iter().any(|o| o.label == g.label) {
            moved_sources += 1;
        }
    }
    if out.iter().any(|o| o.label == cell.label) {
        report.insert(
            0,
            DegreeChange {
                label: cell.label.clone(),
                from: None,
                to: Some(cell.degree),
            },
        );
    }
    let module = FreeModule::new(out).expect("labels made unique").sorted();
    (module, report, moved_sources)
}

/// A change of basis `label ↦ label + τ^{tau_power}·pivot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slide {
    pub label: String,
    pub pivot: String,
    pub tau_power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDifferential {
    pub differential: DifferentialSpec,
    pub slides: Vec<Slide>,
}

/// Slides the differential off every generator but the one of minimal weight.
///
/// All nonzero images must be single basis elements of one divisibility
/// family: `ρ^a τ^{b_i}` with `a` fixed, or `θ/(ρ^n τ^{m_i})` with `n` fixed.
pub fn reduce_basis(
    b: &FreeModule,
    cell: Bidegree,
    d: &DifferentialSpec,
) -> Result<ReducedDifferential> {
    d.validate(b, cell)?;
    let mut hits: Vec<(&Generator, ConeBasisElement)> = Vec::new();
    for (label, image) in d.iter() {
        if image.len() != 1 {
            return Err(Error::UnsupportedShape(format!(
                "image of {label} has {} terms",
                image.len()
            )));
        }
        let g = b.get(label).expect("validated");
        hits.push((g, image.terms().next().expect("one term")));
    }
    if hits.len() <= 1 {
        return Ok(ReducedDifferential {
            differential: d.clone(),
            slides: vec![],
        });
    }
    let family = |c: ConeBasisElement| match c {
        ConeBasisElement::Top { rho, .. } => (true, rho),
        ConeBasisElement::Bot { rho, .. } => (false, rho),
    };
    let first = family(hits[0].1);
    if hits.iter().any(|h| family(h.1) != first) {
        return Err(Error::UnsupportedShape(
            "images do not share one divisibility family".into(),
        ));
    }
    hits.sort_by(|x, y| (x.0.degree.q, &x.0.label).cmp(&(y.0.degree.q, &y.0.label)));
    let (pivot, pivot_image) = hits[0];
    let mut out = DifferentialSpec::zero().with(pivot.label.clone(), pivot_image);
    let mut slides = Vec::new();
    for &(g, _) in &hits[1..] {
        slides.push(Slide {
            label: g.label.clone(),
            pivot: pivot.label.clone(),
            tau_power: (g.degree.q - pivot.degree.q) as u32,
        });
        out.set(g.label.clone(), RingElement::zero());
    }
    Ok(ReducedDifferential {
        differential: out,
        slides,
    })
}

/// One cell of a complex together with the differential it receives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub label: String,
    pub degree: Bidegree,
    pub differential: DifferentialSpec,
}

/// An ordered list of cells, attached one at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplexSpec {
    cells: Vec<CellSpec>,
}

impl CellComplexSpec {
    /// Cells must be nondecreasing in `p`, nondecreasing in `q` within a
    /// column, start with the `(0,0)` base point, and carry unique labels.
    pub fn new(cells: Vec<CellSpec>) -> Result<Self> {
        let Some(first) = cells.first() else {
            return Err(Error::Argument("a complex needs at least one cell".into()));
        };
        if first.degree != Bidegree::ZERO {
            return Err(Error::Argument(format!(
                "first cell must be (0,0), got {}",
                first.degree
            )));
        }
        for w in cells.windows(2) {
            if w[1].degree < w[0].degree {
                return Err(Error::Argument(format!(
                    "cell {} {} is attached after {} {}",
                    w[1].label, w[1].degree, w[0].label, w[0].degree
                )));
            }
        }
        let mut labels: Vec<&str> = cells.iter().map(|c| c.label.as_str()).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Argument(format!("duplicate cell label `{}`", w[0])));
        }
        Ok(CellComplexSpec { cells })
    }

    /// A complex with every differential zero.
    pub fn from_degrees(degrees: &[Bidegree]) -> Result<Self> {
        Self::new(
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| CellSpec {
                    label: format!("e{i}"),
                    degree: d,
                    differential: DifferentialSpec::zero(),
                })
                .collect(),
        )
    }

    pub fn cells(&self) -> &[CellSpec] {
        &self.cells
    }

    pub fn degrees(&self) -> Vec<Bidegree> {
        self.cells.iter().map(|c| c.degree).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageLog {
    pub stage: usize,
    pub label: String,
    pub cell: Bidegree,
    pub case: AttachmentCase,
    pub changes: Vec<DegreeChange>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub module: FreeModule,
    pub log: Vec<StageLog>,
}

/// Folds [`attach_labeled`] over the cells of `spec`.
pub fn run_filtration(spec: &CellComplexSpec, w: Window) -> Result<Filtration> {
    let mut module = FreeModule::empty();
    let mut log = Vec::new();
    for (stage, cell) in spec.cells().iter().enumerate() {
        let generator = Generator::new(cell.label.clone(), cell.degree);
        let outcome = attach_labeled(&module, &generator, &cell.differential, w).map_err(|e| {
            Error::Stage {
                stage,
                label: cell.label.clone(),
                source: Box::new(e),
            }
        })?;
        log.push(StageLog {
            stage,
            label: cell.label.clone(),
            cell: cell.degree,
            case: outcome.case,
            changes: outcome.report,
        });
        module = outcome.result;
    }
    Ok(Filtration { module, log })
}

/// The closed form for a single-generator bottom-cone hit
/// `d(ω) = θ/(ρ^n τ^m)·ν` with `ν` in `cell`: the source degree and the two
/// resulting generator degrees.
pub fn bottom_shift_degrees(cell: Bidegree, n: u32, m: u32) -> (Bidegree, [Bidegree; 2]) {
    let (n, m) = (n as i32, m as i32);
    let source = Bidegree::new(cell.p - n - 1, cell.q - n - m - 2);
    let a = Bidegree::new(cell.p - n - 1, cell.q - n - 1);
    let b = Bidegree::new(cell.p, cell.q - m - 1);
    (source, [a, b])
}

/// The dimension table of `B ⊕ Σ^{cell} M` with no differential.
pub fn e1_table(b: &FreeModule, cell: Bidegree, w: Window) -> DimensionTable {
    let mut with_cell = b.clone();
    let label = (0..)
        .map(|k| format!("nu{k}"))
        .find(|l| b.get(l).is_none())
        .expect("some label is free");
    with_cell
        .push(Generator::new(label, cell))
        .expect("label is fresh");
    dimension_table(&with_cell, w)
}

//! Pinning down Grassmannian cohomology by comparing the cellular spectral
//! sequences of different flag symbols.
//!
//! For each flag the E₁ page is fixed by the Schubert cells, but the
//! differentials are not. We search every admissible choice stage by stage,
//! keep the outcomes that have one generator per cell and the right
//! nonequivariant Betti numbers, and intersect across flags.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attach::{attach_cell, DifferentialSpec};
use crate::error::{Error, Result};
use crate::free_module::{singular_betti, FreeModule, Window};
use crate::point_ring::{element_at, Bidegree, ConeBasisElement};
use crate::schubert::{enumerate_cells, FlagSymbol, GrassmannianDesc};

/// Default bound on attachments tried per flag.
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Distinct outcomes, each a sorted generator-degree multiset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CandidateSet {
    candidates: BTreeSet<Vec<Bidegree>>,
}

impl CandidateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mut degrees: Vec<Bidegree>) {
        degrees.sort();
        self.candidates.insert(degrees);
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, degrees: &[Bidegree]) -> bool {
        let mut d = degrees.to_vec();
        d.sort();
        self.candidates.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Bidegree]> {
        self.candidates.iter().map(Vec::as_slice)
    }

    /// Candidates as modules with synthesized labels.
    pub fn modules(&self) -> Vec<FreeModule> {
        self.iter()
            .map(|d| FreeModule::from_degrees(d.iter().copied()))
            .collect()
    }

    pub fn intersection(&self, other: &CandidateSet) -> CandidateSet {
        CandidateSet {
            candidates: self
                .candidates
                .intersection(&other.candidates)
                .cloned()
                .collect(),
        }
    }
}

impl FromIterator<Vec<Bidegree>> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = Vec<Bidegree>>>(iter: I) -> Self {
        let mut s = CandidateSet::new();
        for d in iter {
            s.insert(d);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Verdict {
    Determined { generators: Vec<Bidegree> },
    Ambiguous { candidates: CandidateSet },
    Inconsistent,
}

impl Verdict {
    fn classify(intersection: &CandidateSet) -> Verdict {
        match intersection.len() {
            0 => Verdict::Inconsistent,
            1 => Verdict::Determined {
                generators: intersection.iter().next().expect("one").to_vec(),
            },
            _ => Verdict::Ambiguous {
                candidates: intersection.clone(),
            },
        }
    }

    pub fn determined(&self) -> Option<FreeModule> {
        match self {
            Verdict::Determined { generators } => {
                Some(FreeModule::from_degrees(generators.iter().copied()))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagOutcome {
    pub flag: FlagSymbol,
    pub cells: Vec<Bidegree>,
    pub candidates: CandidateSet,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeductionReport {
    pub n: u32,
    pub p: u32,
    pub q: u32,
    pub window: Window,
    pub per_flag: Vec<FlagOutcome>,
    pub intersection: CandidateSet,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeduceOptions {
    /// Restrict to these flags; all `C(p,q)` flags when `None`.
    pub flags: Option<Vec<FlagSymbol>>,
    /// Defaults to a window fitting every cell of every flag.
    pub window: Option<Window>,
    pub cap: usize,
}

impl Default for DeduceOptions {
    fn default() -> Self {
        DeduceOptions {
            flags: None,
            window: None,
            cap: DEFAULT_SEARCH_CAP,
        }
    }
}

/// All strictly increasing `q`-subsets of `1..=p`.
pub fn enumerate_flag_symbols(p: u32, q: u32) -> Vec<FlagSymbol> {
    (1..=p)
        .combinations(q as usize)
        .map(|phi| FlagSymbol::new(phi, p).expect("combinations are increasing"))
        .collect()
}

/// Candidate nonzero image for a generator at `source` when attaching `cell`:
/// the basis element in the forced bidegree, if it is the unit or lies in the
/// bottom cone. Top-cone hits other than the unit are never admissible.
fn candidate_image(source: Bidegree, cell: Bidegree) -> Option<ConeBasisElement> {
    let e = element_at(source + Bidegree::new(1, 0) - cell)?;
    (e.is_unit() || !e.is_top()).then_some(e)
}

pub fn admissible_outcomes(cells: &[Bidegree], w: Window) -> Result<CandidateSet> {
    admissible_outcomes_capped(cells, w, DEFAULT_SEARCH_CAP).map(|(c, _)| c)
}

/// The search behind [`admissible_outcomes`]; also returns the number of
/// attachments tried.
pub fn admissible_outcomes_capped(
    cells: &[Bidegree],
    w: Window,
    cap: usize,
) -> Result<(CandidateSet, usize)> {
    let mut frontier: BTreeSet<Vec<Bidegree>> = BTreeSet::from([Vec::new()]);
    let mut nodes = 0usize;
    for (stage, &cell) in cells.iter().enumerate() {
        let states: Vec<(FreeModule, Vec<(String, ConeBasisElement)>)> = frontier
            .iter()
            .map(|s| {
                let b = FreeModule::from_degrees(s.iter().copied());
                let options = b
                    .generators()
                    .iter()
                    .filter_map(|g| Some((g.label.clone(), candidate_image(g.degree, cell)?)))
                    .collect();
                (b, options)
            })
            .collect();
        for (_, options) in &states {
            let branches = u32::try_from(options.len())
                .ok()
                .and_then(|k| 1usize.checked_shl(k))
                .ok_or(Error::SearchCap { cap })?;
            nodes = nodes.saturating_add(branches);
        }
        if nodes > cap {
            return Err(Error::SearchCap { cap });
        }
        let per_state: Vec<Result<Vec<Vec<Bidegree>>>> = states
            .par_iter()
            .map(|(b, options)| {
                let mut out = Vec::new();
                for mask in 0..(1usize << options.len()) {
                    let mut d = DifferentialSpec::zero();
                    for (i, (label, e)) in options.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            d.set(label.clone(), *e);
                        }
                    }
                    match attach_cell(b, cell, &d, w) {
                        Ok(o) if o.result.len() > stage => out.push(o.result.degrees()),
                        Ok(_) | Err(Error::FreenessViolated(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
                Ok(out)
            })
            .collect();
        let mut next = BTreeSet::new();
        for r in per_state {
            next.extend(r?);
        }
        frontier = next;
    }
    let betti = cell_betti(cells);
    let candidates = frontier
        .into_iter()
        .filter(|d| {
            d.len() == cells.len()
                && singular_betti(&FreeModule::from_degrees(d.iter().copied())) == betti
        })
        .collect();
    Ok((candidates, nodes))
}

fn cell_betti(cells: &[Bidegree]) -> BTreeMap<i32, usize> {
    cells.iter().map(|c| c.p).counts().into_iter().collect()
}

pub fn deduce(n: u32, p: u32, q: u32, w: Window) -> Result<DeductionReport> {
    deduce_with(
        n,
        p,
        q,
        &DeduceOptions {
            window: Some(w),
            ..DeduceOptions::default()
        },
    )
}

pub fn deduce_with(n: u32, p: u32, q: u32, opts: &DeduceOptions) -> Result<DeductionReport> {
    let flags = match &opts.flags {
        Some(f) if f.is_empty() => return Err(Error::Argument("no flag symbols given".into())),
        Some(f) => f.clone(),
        None => enumerate_flag_symbols(p, q),
    };
    let descs: Vec<GrassmannianDesc> = flags
        .into_iter()
        .map(|f| GrassmannianDesc::new(n, p, q, f))
        .collect::<Result<_>>()?;
    let cell_lists: Vec<Vec<Bidegree>> = descs
        .iter()
        .map(|g| enumerate_cells(g).into_iter().map(|c| c.degree).collect())
        .collect();
    let window = opts
        .window
        .unwrap_or_else(|| Window::fitting(cell_lists.iter().flatten().copied(), 1));
    let per_flag: Vec<FlagOutcome> = descs
        .par_iter()
        .zip(cell_lists.par_iter())
        .map(|(g, cells)| {
            let (candidates, nodes) = admissible_outcomes_capped(cells, window, opts.cap)?;
            Ok(FlagOutcome {
                flag: g.flag.clone(),
                cells: cells.clone(),
                candidates,
                nodes,
            })
        })
        .collect::<Result<_>>()?;
    let intersection = per_flag
        .iter()
        .map(|f| f.candidates.clone())
        .reduce(|a, b| a.intersection(&b))
        .expect("at least one flag");
    let verdict = Verdict::classify(&intersection);
    Ok(DeductionReport {
        n,
        p,
        q,
        window,
        per_flag,
        intersection,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_ring::bideg;
    use crate::schubert::rp_tw_cells;

    fn b(v: &[(i32, i32)]) -> Vec<Bidegree> {
        v.iter().map(|&(p, q)| bideg(p, q)).collect()
    }

    #[test]
    fn flag_enumeration() {
        let f = enumerate_flag_symbols(4, 2);
        let e: Vec<Vec<u32>> = f.iter().map(|f| f.entries().to_vec()).collect();
        assert_eq!(
            e,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(enumerate_flag_symbols(5, 0).len(), 1);
        assert!(enumerate_flag_symbols(5, 3)
            .iter()
            .any(|f| f.entries() == [1, 3, 4]));
    }

    #[test]
    fn rp3_has_no_differentials() {
        let cells = rp_tw_cells(3);
        let c = admissible_outcomes(&cells, Window::fitting(cells.clone(), 1)).unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![cells.as_slice()]);
    }

    #[test]
    fn point_outcome() {
        let cells = b(&[(0, 0)]);
        let c = admissible_outcomes(&cells, Window::fitting(cells.clone(), 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.contains(&cells));
    }

    #[test]
    fn g2r42_phi2_contains_answer() {
        let cells = b(&[(0, 0), (1, 1), (2, 1), (2, 1), (3, 3), (4, 2)]);
        let c = admissible_outcomes(&cells, Window::fitting(cells.clone(), 1)).unwrap();
        assert!(c.contains(&b(&[(0, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2)])));
    }

    #[test]
    fn cap_is_enforced() {
        let err = deduce_with(
            2,
            4,
            2,
            &DeduceOptions {
                cap: 3,
                ..DeduceOptions::default()
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::SearchCap { cap: 3 });
    }
}

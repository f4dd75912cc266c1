//! Equivariant Schubert cells of real Grassmannians `G_n(R^{p,q})`.
//!
//! A flag symbol `φ` picks which steps of the standard flag in `R^{p,q}` are
//! sign representations; a Schubert symbol `σ` picks a cell. The cell of `σ`
//! is a representation disk of bidegree `(a,b)`, where `a` counts free
//! coordinates and `b` counts the twisted ones among them.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point_ring::Bidegree;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SchubertSymbol(Vec<u32>);

impl SchubertSymbol {
    /// `1 ≤ σ_1 < … < σ_n ≤ p`.
    pub fn new(sigma: Vec<u32>, p: u32) -> Result<Self> {
        check_increasing("Schubert symbol", &sigma, p)?;
        Ok(SchubertSymbol(sigma))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FlagSymbol(Vec<u32>);

impl FlagSymbol {
    /// `1 ≤ φ_1 < … < φ_q ≤ p`.
    pub fn new(phi: Vec<u32>, p: u32) -> Result<Self> {
        check_increasing("flag symbol", &phi, p)?;
        Ok(FlagSymbol(phi))
    }

    /// The flag `(2, 4, …, 2q)`.
    pub fn alternating(q: u32, p: u32) -> Result<Self> {
        Self::new((1..=q).map(|i| 2 * i).collect(), p)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

fn check_increasing(what: &str, xs: &[u32], p: u32) -> Result<()> {
    if xs.iter().any(|&x| x == 0 || x > p) {
        return Err(Error::Argument(format!(
            "{what} {xs:?} has an entry outside 1..={p}"
        )));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(format!(
            "{what} {xs:?} is not strictly increasing"
        )));
    }
    Ok(())
}

fn fmt_tuple(xs: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({})", xs.iter().join(","))
}

impl fmt::Display for SchubertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.0, f)
    }
}

impl fmt::Display for FlagSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrassmannianDesc {
    pub n: u32,
    pub p: u32,
    pub q: u32,
    pub flag: FlagSymbol,
}

impl GrassmannianDesc {
    pub fn new(n: u32, p: u32, q: u32, flag: FlagSymbol) -> Result<Self> {
        if n == 0 || n > p {
            return Err(Error::Argument(format!(
                "need 1 <= n <= p, got n={n}, p={p}"
            )));
        }
        if q > p {
            return Err(Error::Argument(format!("need q <= p, got q={q}, p={p}")));
        }
        if flag.len() != q as usize {
            return Err(Error::Argument(format!(
                "flag {flag} has length {}, expected {q}",
                flag.len()
            )));
        }
        if flag.entries().iter().any(|&x| x > p) {
            return Err(Error::Argument(format!("flag {flag} exceeds p={p}")));
        }
        Ok(GrassmannianDesc { n, p, q, flag })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchubertCell {
    pub symbol: SchubertSymbol,
    pub degree: Bidegree,
}

pub fn cell_bidegree(sigma: &SchubertSymbol, phi: &FlagSymbol) -> Bidegree {
    let s = sigma.entries();
    let a: i64 = s
        .iter()
        .enumerate()
        .map(|(i, &x)| x as i64 - (i as i64 + 1))
        .sum();
    let phi_set: BTreeSet<u32> = phi.entries().iter().copied().collect();
    let mut b = 0usize;
    for (i, &si) in s.iter().enumerate() {
        let prefix = &s[..=i];
        b += (1..=si)
            .filter(|j| !prefix.contains(j))
            .filter(|j| phi_set.contains(&si) != phi_set.contains(j))
            .count();
    }
    Bidegree::new(a as i32, b as i32)
}

/// All `C(p,n)` cells, ordered by bidegree and then by symbol.
pub fn enumerate_cells(g: &GrassmannianDesc) -> Vec<SchubertCell> {
    let mut cells: Vec<SchubertCell> = (1..=g.p)
        .combinations(g.n as usize)
        .map(|sigma| {
            let symbol = SchubertSymbol(sigma);
            let degree = cell_bidegree(&symbol, &g.flag);
            SchubertCell { symbol, degree }
        })
        .collect();
    cells.sort_by(|x, y| (x.degree, &x.symbol).cmp(&(y.degree, &y.symbol)));
    cells
}

/// Cells of `P(R^{p,q})` for the flag `(2, 4, …, 2q)`.
pub fn projective_cells(p: u32, q: u32) -> Result<Vec<Bidegree>> {
    if p == 0 {
        return Err(Error::Argument("projective space needs p >= 1".into()));
    }
    if 2 * q > p {
        let (_, flipped) = flip_iso(p, q);
        return Err(Error::Precondition(format!(
            "projective_cells needs q <= p/2; use flip_iso({p},{q}) = ({p},{flipped}) first"
        )));
    }
    let g = GrassmannianDesc::new(1, p, q, FlagSymbol::alternating(q, p)?)?;
    Ok(enumerate_cells(&g).into_iter().map(|c| c.degree).collect())
}

/// Cells of `RP^n_tw = P(R^{n+1, ⌊(n+1)/2⌋})`.
pub fn rp_tw_cells(n: u32) -> Vec<Bidegree> {
    projective_cells(n + 1, n.div_ceil(2)).expect("2⌊(n+1)/2⌋ <= n+1")
}

/// `P(R^{p,q}) ≅ P(R^{p,p-q})`.
pub fn flip_iso(p: u32, q: u32) -> (u32, u32) {
    (p, p - q)
}

/// The flag `V_0 ⊂ … ⊂ V_p` as representations `V_i = R^{i, #{φ_j ≤ i}}`.
pub fn flag_to_representation(phi: &FlagSymbol, p: u32) -> Vec<Bidegree> {
    (0..=p)
        .map(|i| {
            let twisted = phi.entries().iter().filter(|&&x| x <= i).count();
            Bidegree::new(i as i32, twisted as i32)
        })
        .collect()
}

//! The coefficient ring `M = H^{*,*}(pt)` with constant Z/2 coefficients.
//!
//! `M` is supported on two cones in the (p,q) plane. The top cone is the
//! polynomial algebra `F2[rho, tau]` with `rho` in (1,1) and `tau` in (0,1).
//! The bottom cone consists of the classes `theta/(rho^n tau^m)` with `theta`
//! in (0,-2); every lattice point in either cone carries exactly one copy of
//! Z/2.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;

/// An RO(Z/2) grading `(p, q)`: `p` is the topological degree, `q` the weight.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }
}

/// Shorthand for `Bidegree::new`.
pub const fn bideg(p: i32, q: i32) -> Bidegree {
    Bidegree::new(p, q)
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Self) -> Self {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Self) -> Self {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Self {
        Bidegree::new(-self.p, -self.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl From<(i32, i32)> for Bidegree {
    fn from((p, q): (i32, i32)) -> Self {
        Bidegree::new(p, q)
    }
}

/// A basis element of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConeBasisElement {
    /// `rho^rho tau^tau`
    Top { rho: u32, tau: u32 },
    /// `theta / (rho^rho tau^tau)`
    Bot { rho: u32, tau: u32 },
}

use ConeBasisElement::{Bot, Top};

impl ConeBasisElement {
    pub const ONE: ConeBasisElement = Top { rho: 0, tau: 0 };
    pub const RHO: ConeBasisElement = Top { rho: 1, tau: 0 };
    pub const TAU: ConeBasisElement = Top { rho: 0, tau: 1 };
    pub const THETA: ConeBasisElement = Bot { rho: 0, tau: 0 };

    pub fn bidegree(self) -> Bidegree {
        match self {
            Top { rho, tau } => Bidegree::new(rho as i32, (rho + tau) as i32),
            Bot { rho, tau } => Bidegree::new(-(rho as i32), -2 - rho as i32 - tau as i32),
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, Top { .. })
    }

    pub fn is_unit(self) -> bool {
        self == Self::ONE
    }

    /// Product of two basis elements; `None` means the product is zero.
    ///
    /// Top-cone elements divide bottom-cone elements exponentwise. The product
    /// of two bottom-cone elements is zero (square-zero convention, see
    /// [`bot_times_bot`]).
    pub fn mul(self, other: ConeBasisElement) -> Option<ConeBasisElement> {
        match (self, other) {
            (Top { rho: a, tau: b }, Top { rho: c, tau: d }) => Some(Top {
                rho: a + c,
                tau: b + d,
            }),
            (Top { rho: a, tau: b }, Bot { rho: n, tau: m })
            | (Bot { rho: n, tau: m }, Top { rho: a, tau: b }) => (n >= a && m >= b).then(|| Bot {
                rho: n - a,
                tau: m - b,
            }),
            (Bot { .. }, Bot { .. }) => bot_times_bot(self, other),
        }
    }
}

/// The product of two bottom-cone classes. Isolated so the convention can be
/// changed in one place; every product of this kind is taken to be zero.
fn bot_times_bot(_x: ConeBasisElement, _y: ConeBasisElement) -> Option<ConeBasisElement> {
    None
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, e: u32) -> fmt::Result {
    match e {
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

fn write_top(f: &mut fmt::Formatter<'_>, rho: u32, tau: u32) -> fmt::Result {
    match (rho, tau) {
        (0, 0) => write!(f, "1"),
        (r, 0) => write_power(f, "rho", r),
        (0, t) => write_power(f, "tau", t),
        (r, t) => {
            write_power(f, "rho", r)?;
            write!(f, " ")?;
            write_power(f, "tau", t)
        }
    }
}

impl fmt::Display for ConeBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Top { rho, tau } => write_top(f, rho, tau),
            Bot { rho: 0, tau: 0 } => write!(f, "theta"),
            Bot { rho, tau } if rho == 0 || tau == 0 => {
                write!(f, "theta/")?;
                write_top(f, rho, tau)
            }
            Bot { rho, tau } => {
                write!(f, "theta/(")?;
                write_top(f, rho, tau)?;
                write!(f, ")")
            }
        }
    }
}

/// 1 if the bidegree lies in one of the two cones, 0 otherwise.
pub fn basis_dim(d: Bidegree) -> usize {
    usize::from(element_at(d).is_some())
}

/// The unique basis element of `M` in bidegree `d`, if any.
pub fn element_at(d: Bidegree) -> Option<ConeBasisElement> {
    let Bidegree { p, q } = d;
    if p >= 0 && q >= p {
        Some(Top {
            rho: p as u32,
            tau: (q - p) as u32,
        })
    } else if p <= 0 && q <= p - 2 {
        Some(Bot {
            rho: (-p) as u32,
            tau: (p - 2 - q) as u32,
        })
    } else {
        None
    }
}

/// Dimension of `H^{*,*}(Z/2) = F2[t, 1/t]` with `t` in (0,1).
pub fn free_orbit_dim(d: Bidegree) -> usize {
    usize::from(d.p == 0)
}

/// An element of `M`: a finite F2-linear combination of basis elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    terms: BTreeSet<ConeBasisElement>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ConeBasisElement::ONE.into()
    }

    pub fn rho() -> Self {
        ConeBasisElement::RHO.into()
    }

    pub fn tau() -> Self {
        ConeBasisElement::TAU.into()
    }

    pub fn theta() -> Self {
        ConeBasisElement::THETA.into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ConeBasisElement> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, e: ConeBasisElement) -> bool {
        self.terms.contains(&e)
    }

    /// Adds a basis element in place (F2: an existing copy cancels).
    pub fn toggle(&mut self, e: ConeBasisElement) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    /// The common bidegree of all terms, or `None` for zero and for
    /// inhomogeneous elements.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.iter().map(|t| t.bidegree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// F2-bilinear product.
    pub fn mul(&self, other: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for &x in &self.terms {
            for &y in &other.terms {
                if let Some(z) = x.mul(y) {
                    out.toggle(z);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        RingElement {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        }
    }
}

/// Product in `M`.
pub fn multiply(x: &RingElement, y: &RingElement) -> RingElement {
    x.mul(y)
}

impl From<ConeBasisElement> for RingElement {
    fn from(e: ConeBasisElement) -> Self {
        RingElement {
            terms: BTreeSet::from([e]),
        }
    }
}

impl FromIterator<ConeBasisElement> for RingElement {
    fn from_iter<I: IntoIterator<Item = ConeBasisElement>>(iter: I) -> Self {
        let mut out = RingElement::zero();
        for e in iter {
            out.toggle(e);
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Parses `1`, `0`, `rho^2 tau`, `theta/(rho tau^3)`, and sums of those.
    fn from_str(s: &str) -> Result<Self> {
        let terms = expr::parse_terms(s, &[])?;
        Ok(terms.into_iter().filter_map(|t| t.coeff).collect())
    }
}

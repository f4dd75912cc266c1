//! Cohomology rings of twisted projective spaces.
//!
//! `H^{*,*}(RP^∞_tw) = M[a,b]/(a² = ρa + τb)` with `a` in `(1,1)` and `b` in
//! `(2,1)`. The finite `RP^n_tw` is the quotient by the monomials `a^e b^k`
//! of topological degree `e + 2k > n`, and `S^{1,1} = RP^1_tw`.
//! `P(R^{4,1})` needs a third generator `c` in `(3,1)`.
//!
//! An element is an F2-sum of terms `x·g` with `x` a point-ring basis element
//! and `g` a monomial. In normal form every `g` is a module basis monomial of
//! the space.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr;
use crate::point_ring::{Bidegree, ConeBasisElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    S11,
    RPtw(u32),
    RPtwInf,
    P41,
}

impl SpaceId {
    pub fn rp_tw(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("RPtw(n) needs n >= 1".into()));
        }
        Ok(SpaceId::RPtw(n))
    }

    /// Largest topological degree of a nonzero monomial, if bounded.
    fn top_degree(self) -> Option<u32> {
        match self {
            SpaceId::S11 => Some(1),
            SpaceId::RPtw(n) => Some(n),
            SpaceId::RPtwInf => None,
            SpaceId::P41 => Some(3),
        }
    }

    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            SpaceId::P41 => &["a", "b", "c"],
            _ => &["a", "b"],
        }
    }

    /// Degrees of the module basis monomials, up to topological degree
    /// `limit` for the infinite space.
    pub fn basis(self, limit: u32) -> Vec<Monomial> {
        match self {
            SpaceId::P41 => vec![Monomial::ONE, Monomial::A, Monomial::B, Monomial::C],
            _ => {
                let top = self.top_degree().unwrap_or(limit).min(limit);
                (0..=top)
                    .map(|d| Monomial {
                        a: d % 2,
                        b: d / 2,
                        c: 0,
                    })
                    .collect()
            }
        }
    }

    /// Nonequivariant `z^k` vanishes for `k` beyond this.
    fn singular_top(self) -> Option<u32> {
        self.top_degree()
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::S11 => f.write_str("s11"),
            SpaceId::RPtw(n) => write!(f, "rptw{n}"),
            SpaceId::RPtwInf => f.write_str("rpinf"),
            SpaceId::P41 => f.write_str("p41"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = Error;

    /// Accepts `s11`, `rpinf`, `p41`, and `rptw<n>` (or `rp<n>`).
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "s11" => return Ok(SpaceId::S11),
            "rpinf" | "rptwinf" => return Ok(SpaceId::RPtwInf),
            "p41" => return Ok(SpaceId::P41),
            _ => {}
        }
        let digits = lower
            .strip_prefix("rptw")
            .or_else(|| lower.strip_prefix("rp"))
            .ok_or_else(|| Error::Argument(format!("unknown space `{s}`")))?;
        let n = digits
            .parse()
            .map_err(|_| Error::Argument(format!("unknown space `{s}`")))?;
        SpaceId::rp_tw(n)
    }
}

/// `a^a b^b c^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };
    pub const A: Monomial = Monomial { a: 1, b: 0, c: 0 };
    pub const B: Monomial = Monomial { a: 0, b: 1, c: 0 };
    pub const C: Monomial = Monomial { a: 0, b: 0, c: 1 };

    pub fn bidegree(self) -> Bidegree {
        let (a, b, c) = (self.a as i32, self.b as i32, self.c as i32);
        Bidegree::new(a + 2 * b + 3 * c, a + b + c)
    }

    fn topological(self) -> u32 {
        self.a + 2 * self.b + 3 * self.c
    }

    fn is_one(self) -> bool {
        self == Monomial::ONE
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// One term `coeff · monomial`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: ConeBasisElement,
    pub monomial: Monomial,
}

impl Term {
    pub fn bidegree(self) -> Bidegree {
        self.coeff.bidegree() + self.monomial.bidegree()
    }

    fn sort_key(&self) -> (u32, Monomial, ConeBasisElement) {
        (self.monomial.topological(), self.monomial, self.coeff)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_unit(), self.monomial.is_one()) {
            (true, _) => write!(f, "{}", self.monomial),
            (false, true) => write!(f, "{}", self.coeff),
            (false, false) => write!(f, "{} {}", self.coeff, self.monomial),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjRingElement {
    space: SpaceId,
    terms: BTreeSet<Term>,
}

impl ProjRingElement {
    pub fn zero(space: SpaceId) -> Self {
        ProjRingElement {
            space,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(space: SpaceId) -> Self {
        Self::monomial(space, ConeBasisElement::ONE, Monomial::ONE).expect("1 exists everywhere")
    }

    pub fn generator(space: SpaceId, name: &str) -> Result<Self> {
        let m = match name {
            "a" => Monomial::A,
            "b" => Monomial::B,
            "c" => Monomial::C,
            _ => return Err(Error::Argument(format!("unknown generator `{name}`"))),
        };
        Ok(normal_form(&Self::monomial(
            space,
            ConeBasisElement::ONE,
            m,
        )?))
    }

    /// A single raw term, not yet reduced.
    pub fn monomial(space: SpaceId, coeff: ConeBasisElement, m: Monomial) -> Result<Self> {
        Self::raw(space, [Term { coeff, monomial: m }])
    }

    /// Raw terms, toggled into an F2-sum and not reduced. `c` exists only in
    /// `P(R^{4,1})`.
    pub fn raw(space: SpaceId, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut out = Self::zero(space);
        for t in terms {
            if t.monomial.c > 0 && space != SpaceId::P41 {
                return Err(Error::Argument(format!("no generator `c` in {space}")));
            }
            out.toggle(t);
        }
        Ok(out)
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, t: Term) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_space(self, other)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.toggle(t);
        }
        Ok(normal_form(&out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        multiply_ring(self, other)
    }

    /// Parses the term grammar (`rho a + tau b`, `theta/(rho^2 tau) b^3`)
    /// and reduces to normal form.
    pub fn parse(space: SpaceId, src: &str) -> Result<Self> {
        let names = space.generator_names();
        let raw = expr::parse_terms(src, names)?;
        let mut terms = Vec::new();
        for t in raw {
            let Some(coeff) = t.coeff else { continue };
            let e = |i: usize| t.exponents.get(i).copied().unwrap_or(0);
            terms.push(Term {
                coeff,
                monomial: Monomial {
                    a: e(0),
                    b: e(1),
                    c: e(2),
                },
            });
        }
        Ok(normal_form(&Self::raw(space, terms)?))
    }
}

impl fmt::Display for ProjRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(Term::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn same_space(x: &ProjRingElement, y: &ProjRingElement) -> Result<()> {
    if x.space != y.space {
        return Err(Error::Argument(format!(
            "elements live in different spaces ({} and {})",
            x.space, y.space
        )));
    }
    Ok(())
}

/// Product of two basis monomials of `space`, as `(coefficient, basis
/// monomial)` pairs.
fn basis_product(space: SpaceId, x: Monomial, y: Monomial) -> Vec<(ConeBasisElement, Monomial)> {
    use ConeBasisElement as E;
    if space == SpaceId::P41 {
        let m = |a, b, c| Monomial { a, b, c };
        return match (x.topological() + y.topological(), x.is_one() || y.is_one()) {
            (_, true) => vec![(E::ONE, m(x.a + y.a, x.b + y.b, x.c + y.c))],
            // a·a
            (2, false) => vec![(E::RHO, Monomial::A), (E::TAU, Monomial::B)],
            // a·b
            (3, false) => vec![(E::TAU, Monomial::C)],
            // b·b, while a·c vanishes
            (4, false) if x == Monomial::B => vec![(E::RHO, Monomial::C)],
            _ => vec![],
        };
    }
    let fits = |m: &Monomial| space.top_degree().is_none_or(|n| m.topological() <= n);
    let (e, k) = (x.a + y.a, x.b + y.b);
    let terms = if e <= 1 {
        vec![(E::ONE, Monomial { a: e, b: k, c: 0 })]
    } else {
        vec![
            (E::RHO, Monomial { a: 1, b: k, c: 0 }),
            (
                E::TAU,
                Monomial {
                    a: 0,
                    b: k + 1,
                    c: 0,
                },
            ),
        ]
    };
    terms.into_iter().filter(|(_, m)| fits(m)).collect()
}

/// Multiplies a normal-form element by a basis monomial.
fn times_basis(x: &ProjRingElement, g: Monomial) -> ProjRingElement {
    let mut out = ProjRingElement::zero(x.space);
    for t in x.terms() {
        for (c, m) in basis_product(x.space, t.monomial, g) {
            if let Some(coeff) = t.coeff.mul(c) {
                out.toggle(Term { coeff, monomial: m });
            }
        }
    }
    out
}

/// Reduces every term by multiplying its generators in one at a time.
pub fn normal_form(x: &ProjRingElement) -> ProjRingElement {
    let mut out = ProjRingElement::zero(x.space);
    for t in x.terms() {
        let mut acc = ProjRingElement::zero(x.space);
        acc.toggle(Term {
            coeff: t.coeff,
            monomial: Monomial::ONE,
        });
        let m = t.monomial;
        let steps = std::iter::repeat_n(Monomial::A, m.a as usize)
            .chain(std::iter::repeat_n(Monomial::B, m.b as usize))
            .chain(std::iter::repeat_n(Monomial::C, m.c as usize));
        for g in steps {
            acc = times_basis(&acc, g);
        }
        for r in acc.terms() {
            out.toggle(r);
        }
    }
    out
}

pub fn multiply_ring(x: &ProjRingElement, y: &ProjRingElement) -> Result<ProjRingElement> {
    same_space(x, y)?;
    let (x, y) = (normal_form(x), normal_form(y));
    let mut out = ProjRingElement::zero(x.space);
    for s in x.terms() {
        for t in y.terms() {
            let Some(coeff) = s.coeff.mul(t.coeff) else {
                continue;
            };
            for (c, m) in basis_product(x.space, s.monomial, t.monomial) {
                if let Some(coeff) = coeff.mul(c) {
                    out.toggle(Term { coeff, monomial: m });
                }
            }
        }
    }
    Ok(out)
}

/// An element of `F2[z]`, truncated in the singular ring of a space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SingularElement {
    exponents: BTreeSet<u32>,
}

impl SingularElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn z_pow(k: u32) -> Self {
        SingularElement {
            exponents: BTreeSet::from([k]),
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exponents.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    fn toggle(&mut self, k: u32) {
        if !self.exponents.remove(&k) {
            self.exponents.insert(k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for k in other.exponents() {
            out.toggle(k);
        }
        out
    }

    /// Product in `F2[z]/(z^{top+1})`, untruncated when `top` is `None`.
    pub fn mul(&self, other: &Self, top: Option<u32>) -> Self {
        let mut out = Self::zero();
        for i in self.exponents() {
            for j in other.exponents() {
                if top.is_none_or(|t| i + j <= t) {
                    out.toggle(i + j);
                }
            }
        }
        out
    }
}

impl fmt::Display for SingularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&k| match k {
                0 => "1".to_string(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Highest nonvanishing power of `z` in the singular cohomology of `space`.
pub fn singular_top(space: SpaceId) -> Option<u32> {
    space.singular_top()
}

/// `ψ`: kills `ρ` and the bottom cone, sends `τ` to 1, `a ↦ z`, `b ↦ z²`,
/// `c ↦ z³`.
pub fn forgetful(x: &ProjRingElement) -> SingularElement {
    let top = x.space.singular_top();
    let mut out = SingularElement::zero();
    for t in normal_form(x).terms() {
        let survives = matches!(t.coeff, ConeBasisElement::Top { rho: 0, .. });
        let k = t.monomial.topological();
        if survives && top.is_none_or(|n| k <= n) {
            out.toggle(k);
        }
    }
    out
}

/// Whether some standard inclusion `to ⊆ from` is modeled.
pub fn restriction_supported(from: SpaceId, to: SpaceId) -> bool {
    use SpaceId::*;
    let dim = |s: SpaceId| match s {
        S11 => Some(1),
        RPtw(n) => Some(n),
        _ => None,
    };
    match (from, to) {
        _ if from == to => true,
        (RPtwInf, _) => true,
        (RPtw(n), P41) => n >= 4,
        (S11 | RPtw(_), S11 | RPtw(_)) => dim(to) <= dim(from),
        _ => false,
    }
}

/// Restricts along `to ⊆ x.space()`: `a ↦ a`, `b ↦ b`, then normal form in
/// the target.
pub fn restrict(x: &ProjRingElement, to: SpaceId) -> Result<ProjRingElement> {
    if !restriction_supported(x.space, to) {
        return Err(Error::Argument(format!(
            "no supported restriction from {} to {to}",
            x.space
        )));
    }
    if x.space == to {
        return Ok(normal_form(x));
    }
    let terms: Vec<Term> = normal_form(x).terms().collect();
    Ok(normal_form(&ProjRingElement::raw(to, terms)?))
}

//! Bigraded free modules over the point ring and their dimension tables.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point_ring::{basis_dim, Bidegree};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: Bidegree,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: Bidegree) -> Self {
        Generator {
            label: label.into(),
            degree,
        }
    }
}

/// A free module `⊕ Σ^{deg g} M`, one summand per labelled generator.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeModule {
    generators: Vec<Generator>,
}

impl FreeModule {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.label.as_str()) {
                return Err(Error::Argument(format!(
                    "duplicate generator label `{}`",
                    g.label
                )));
            }
        }
        Ok(FreeModule { generators })
    }

    /// Builds a module from bare degrees, labelling generators `g{p}_{q}_{k}`.
    pub fn from_degrees<I, D>(degrees: I) -> Self
    where
        I: IntoIterator<Item = D>,
        D: Into<Bidegree>,
    {
        let mut degrees: Vec<Bidegree> = degrees.into_iter().map(Into::into).collect();
        degrees.sort();
        let mut count: BTreeMap<Bidegree, usize> = BTreeMap::new();
        let generators = degrees
            .into_iter()
            .map(|d| {
                let k = count.entry(d).or_default();
                let g = Generator::new(synth_label(d, *k), d);
                *k += 1;
                g
            })
            .collect();
        FreeModule { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    pub fn push(&mut self, g: Generator) -> Result<()> {
        if self.get(&g.label).is_some() {
            return Err(Error::Argument(format!(
                "duplicate generator label `{}`",
                g.label
            )));
        }
        self.generators.push(g);
        Ok(())
    }

    /// The generator degrees as a sorted multiset.
    pub fn degrees(&self) -> Vec<Bidegree> {
        let mut d: Vec<Bidegree> = self.generators.iter().map(|g| g.degree).collect();
        d.sort();
        d
    }

    /// Generators sorted by degree, then label.
    pub fn sorted(&self) -> FreeModule {
        let mut generators = self.generators.clone();
        generators.sort_by(|a, b| (a.degree, &a.label).cmp(&(b.degree, &b.label)));
        FreeModule { generators }
    }

    /// Same generator degrees, labels ignored.
    pub fn same_degrees(&self, other: &FreeModule) -> bool {
        self.degrees() == other.degrees()
    }

    /// Disjoint union. Fails on a label clash.
    pub fn union(&self, other: &FreeModule) -> Result<FreeModule> {
        let mut out = self.clone();
        for g in &other.generators {
            out.push(g.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.degrees().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn synth_label(d: Bidegree, k: usize) -> String {
    format!("g{}_{}_{}", d.p, d.q, k)
}

/// A finite rectangle of the (p,q) plane, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Window {
    pub p_min: i32,
    pub p_max: i32,
    pub q_min: i32,
    pub q_max: i32,
}

/// Margins a generator must keep from the window edges for its table to be
/// recoverable: two columns on each side, four rows below (bottom-cone apex
/// sits two rows under the generator) and two rows above.
pub const MARGIN_LEFT: i32 = 2;
pub const MARGIN_RIGHT: i32 = 2;
pub const MARGIN_BELOW: i32 = 4;
pub const MARGIN_ABOVE: i32 = 2;

impl Window {
    pub fn new(p_min: i32, p_max: i32, q_min: i32, q_max: i32) -> Result<Self> {
        if p_min > p_max || q_min > q_max {
            return Err(Error::Argument(format!(
                "empty window [{p_min},{p_max}]x[{q_min},{q_max}]"
            )));
        }
        Ok(Window {
            p_min,
            p_max,
            q_min,
            q_max,
        })
    }

    pub fn contains(&self, d: Bidegree) -> bool {
        (self.p_min..=self.p_max).contains(&d.p) && (self.q_min..=self.q_max).contains(&d.q)
    }

    /// All points, columns left to right, each column bottom to top.
    pub fn points(&self) -> impl Iterator<Item = Bidegree> + '_ {
        (self.p_min..=self.p_max)
            .flat_map(move |p| (self.q_min..=self.q_max).map(move |q| Bidegree::new(p, q)))
    }

    pub fn width(&self) -> usize {
        (self.p_max - self.p_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.q_max - self.q_min + 1) as usize
    }

    /// Whether `d` keeps the recovery margins inside this window.
    pub fn admits(&self, d: Bidegree) -> bool {
        d.p - MARGIN_LEFT >= self.p_min
            && d.p + MARGIN_RIGHT <= self.p_max
            && d.q - MARGIN_BELOW >= self.q_min
            && d.q + MARGIN_ABOVE <= self.q_max
    }

    /// Fails with [`Error::WindowTooSmall`] naming the first degree that does
    /// not keep its margins.
    pub fn require(&self, degrees: impl IntoIterator<Item = Bidegree>) -> Result<()> {
        for d in degrees {
            if !self.admits(d) {
                return Err(Error::WindowTooSmall(format!(
                    "generator degree {d} needs margins of {MARGIN_LEFT} left, {MARGIN_RIGHT} right, \
                     {MARGIN_BELOW} below and {MARGIN_ABOVE} above inside {self}"
                )));
            }
        }
        Ok(())
    }

    /// The smallest window admitting every degree in `degrees`, padded by
    /// `slack` on all sides.
    pub fn fitting(degrees: impl IntoIterator<Item = Bidegree>, slack: i32) -> Self {
        let mut it = degrees.into_iter().peekable();
        if it.peek().is_none() {
            return Window {
                p_min: -MARGIN_LEFT - slack,
                p_max: MARGIN_RIGHT + slack,
                q_min: -MARGIN_BELOW - slack,
                q_max: MARGIN_ABOVE + slack,
            };
        }
        let (mut p0, mut p1, mut q0, mut q1) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
        for d in it {
            p0 = p0.min(d.p);
            p1 = p1.max(d.p);
            q0 = q0.min(d.q);
            q1 = q1.max(d.q);
        }
        Window {
            p_min: p0 - MARGIN_LEFT - slack,
            p_max: p1 + MARGIN_RIGHT + slack,
            q_min: q0 - MARGIN_BELOW - slack,
            q_max: q1 + MARGIN_ABOVE + slack,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]x[{},{}]",
            self.p_min, self.p_max, self.q_min, self.q_max
        )
    }
}

/// Dimensions over a window, stored densely column-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionTable {
    window: Window,
    counts: Vec<usize>,
}

impl DimensionTable {
    pub fn zeros(window: Window) -> Self {
        DimensionTable {
            window,
            counts: vec![0; window.width() * window.height()],
        }
    }

    pub fn from_fn(window: Window, f: impl Fn(Bidegree) -> usize) -> Self {
        DimensionTable {
            window,
            counts: window.points().map(f).collect(),
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn index(&self, d: Bidegree) -> Option<usize> {
        self.window.contains(d).then(|| {
            (d.p - self.window.p_min) as usize * self.window.height()
                + (d.q - self.window.q_min) as usize
        })
    }

    /// The count at `d`; zero outside the window.
    pub fn get(&self, d: Bidegree) -> usize {
        self.index(d).map_or(0, |i| self.counts[i])
    }

    /// Panics if `d` lies outside the window.
    pub fn set(&mut self, d: Bidegree, v: usize) {
        let i = self.index(d).expect("bidegree outside window");
        self.counts[i] = v;
    }

    /// Nonzero entries in column-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.window
            .points()
            .zip(&self.counts)
            .filter(|(_, &c)| c > 0)
            .map(|(d, &c)| (d, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.window.points().zip(self.counts.iter().copied())
    }
}

/// `dim M_d = Σ_g basis_dim(d - deg g)`.
pub fn module_dim(m: &FreeModule, d: Bidegree) -> usize {
    m.generators.iter().map(|g| basis_dim(d - g.degree)).sum()
}

pub fn dimension_table(m: &FreeModule, w: Window) -> DimensionTable {
    DimensionTable::from_fn(w, |d| module_dim(m, d))
}

/// One singular class per generator, counted by topological degree.
pub fn singular_betti(m: &FreeModule) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for g in &m.generators {
        *out.entry(g.degree.p).or_default() += 1;
    }
    out
}

/// Recovers the unique free module whose dimension function is `t`.
///
/// For one shifted copy of `M` the difference operator
/// `(Df)(p,q) = f(p,q) - f(p-1,q-1) - f(p,q-1) + f(p-1,q-2)` is `1` at the
/// generator (top cone) and `1` one column to its right (bottom cone), and
/// zero elsewhere. So `Df(p,q) = c(p,q) + c(p-1,q)` for the generator count
/// `c`, which a left-to-right sweep inverts. The result is then verified
/// against the whole table.
pub fn recover_generators(t: &DimensionTable) -> Result<FreeModule> {
    let w = t.window();
    let f = |p: i32, q: i32| t.get(Bidegree::new(p, q)) as i64;
    let mut counts: BTreeMap<Bidegree, i64> = BTreeMap::new();
    let mut prev = vec![0i64; w.height()];
    for p in (w.p_min + 1)..=w.p_max {
        let mut col = vec![0i64; w.height()];
        for q in (w.q_min + 2)..=w.q_max {
            let qi = (q - w.q_min) as usize;
            let diff = f(p, q) - f(p - 1, q - 1) - f(p, q - 1) + f(p - 1, q - 2);
            let c = diff - prev[qi];
            let d = Bidegree::new(p, q);
            if c < 0 {
                return Err(Error::NotFreeTable {
                    at: d,
                    reason: "negative generator count".into(),
                });
            }
            if c > 0 {
                counts.insert(d, c);
            }
            col[qi] = c;
        }
        prev = col;
    }
    for &d in counts.keys() {
        if !w.admits(d) {
            return Err(Error::NotFreeTable {
                at: d,
                reason: format!("generator too close to the edge of {w}; window too small"),
            });
        }
    }
    let module = FreeModule::from_degrees(
        counts
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c as usize)),
    );
    for (d, v) in t.iter() {
        let got = module_dim(&module, d);
        if got != v {
            return Err(Error::NotFreeTable {
                at: d,
                reason: format!("table has {v}, the best free fit has {got}; not a free-module table or window too small"),
            });
        }
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_ring::bideg;
    use proptest::prelude::*;

    fn module(d: &[(i32, i32)]) -> FreeModule {
        FreeModule::from_degrees(d.iter().copied())
    }

    const G2R42: [(i32, i32); 6] = [(0, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2)];

    #[test]
    fn module_dim_examples() {
        assert_eq!(module_dim(&module(&[(0, 0)]), bideg(1, 1)), 1);
        let rp2 = module(&[(0, 0), (1, 1), (2, 1)]);
        // rho^2, rho * a11, tau * a21
        assert_eq!(module_dim(&rp2, bideg(2, 2)), 3);
        let g = module(&G2R42);
        assert_eq!(module_dim(&g, bideg(1, 0)), 0);
        assert_eq!(module_dim(&g, bideg(2, 0)), 1);
    }

    #[test]
    fn empty_module_table_is_zero() {
        let w = Window::new(-3, 3, -3, 3).unwrap();
        assert!(dimension_table(&FreeModule::empty(), w)
            .nonzero()
            .next()
            .is_none());
        assert!(recover_generators(&DimensionTable::zeros(w))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn point_table_matches_cones() {
        let w = Window::new(-2, 2, -4, 4).unwrap();
        let t = dimension_table(&module(&[(0, 0)]), w);
        for (d, v) in t.iter() {
            let top = d.p >= 0 && d.q >= d.p;
            let bottom = d.p <= 0 && d.q <= d.p - 2;
            assert_eq!(v, usize::from(top || bottom), "{d}");
        }
    }

    #[test]
    fn recovers_g2r42() {
        let w = Window::new(-6, 8, -8, 8).unwrap();
        let m = module(&G2R42);
        let r = recover_generators(&dimension_table(&m, w)).unwrap();
        assert_eq!(r.degrees(), m.degrees());
        assert_eq!(r.generators()[3].label, "g2_2_0");
    }

    #[test]
    fn duplicate_labels() {
        let r = FreeModule::new(vec![
            Generator::new("x", bideg(0, 0)),
            Generator::new("x", bideg(1, 1)),
        ]);
        assert!(r.is_err());
        let m = module(&[(2, 1), (2, 1)]);
        assert_eq!(m.generators()[1].label, "g2_1_1");
    }

    #[test]
    fn betti_of_g2r41() {
        let m = module(&[(0, 0), (1, 1), (2, 1), (2, 1), (3, 1), (4, 2)]);
        let b = singular_betti(&m);
        assert_eq!(b, BTreeMap::from([(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)]));
        assert!(singular_betti(&FreeModule::empty()).is_empty());
    }

    #[test]
    fn non_free_table_is_rejected() {
        let w = Window::new(-4, 4, -6, 6).unwrap();
        let mut t = dimension_table(&module(&[(0, 0)]), w);
        t.set(bideg(1, 5), 0);
        let err = recover_generators(&t).unwrap_err();
        assert!(matches!(err, Error::NotFreeTable { .. }), "{err}");
    }

    #[test]
    fn window_too_small_is_rejected() {
        let w = Window::new(-1, 3, -1, 3).unwrap();
        let t = dimension_table(&module(&[(0, 0)]), w);
        assert!(recover_generators(&t).is_err());
    }

    fn multiset() -> impl Strategy<Value = Vec<(i32, i32)>> {
        proptest::collection::vec((0i32..=6, 0i32..=6), 0..=8)
    }

    proptest! {
        #[test]
        fn recovery_round_trip(gens in multiset()) {
            let w = Window::new(-10, 10, -12, 14).unwrap();
            let m = module(&gens);
            let r = recover_generators(&dimension_table(&m, w)).unwrap();
            prop_assert_eq!(r.degrees(), m.degrees());
        }

        // betti(k) = module_dim at (k, Q) once Q is past every generator.
        #[test]
        fn betti_is_column_stable_value(gens in multiset()) {
            let m = module(&gens);
            let top = gens.iter().map(|g| g.1).max().unwrap_or(0) + 1;
            let betti = singular_betti(&m);
            let mut cumulative = 0;
            for k in 0..=6 {
                cumulative += betti.get(&k).copied().unwrap_or(0);
                prop_assert_eq!(module_dim(&m, bideg(k, top + k)), cumulative);
            }
            prop_assert_eq!(betti.values().sum::<usize>(), m.len());
        }

        #[test]
        fn module_dim_is_additive(a in multiset(), b in multiset(), p in -8i32..8, q in -8i32..8) {
            let mut both = a.clone();
            both.extend(&b);
            let d = bideg(p, q);
            prop_assert_eq!(module_dim(&module(&both), d), module_dim(&module(&a), d) + module_dim(&module(&b), d));
        }

        #[test]
        fn top_region_nondecreasing(gens in multiset(), p in 0i32..8) {
            let m = module(&gens);
            let start = gens.iter().map(|g| g.1).max().unwrap_or(0);
            for q in start..start + 8 {
                prop_assert!(module_dim(&m, bideg(p, q)) <= module_dim(&m, bideg(p, q + 1)));
            }
        }
    }
}

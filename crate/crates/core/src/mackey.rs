//! Z/2 Mackey functors over F2 and their axioms.
//!
//! A functor is the data `M(Z/2)` (dimension `dim_top`, carrying the Weyl
//! action `t*`) and `M(e)` (dimension `dim_bot`), with a restriction
//! `i*: M(e) -> M(Z/2)` and a transfer `i_*: M(Z/2) -> M(e)`. Matrices act on
//! column vectors, so a map `V -> W` is stored as a `dim W x dim V` matrix.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyFunctor {
    pub dim_top: usize,
    pub dim_bot: usize,
    pub t_star: BitMatrix,
    pub i_star: BitMatrix,
    pub i_lower: BitMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MackeyAxiom {
    /// `(t*)^2 = id`
    WeylInvolution,
    /// `t* i* = i*`
    RestrictionFixed,
    /// `i_* (t*)^{-1} = i_*`
    TransferInvariant,
    /// `i* i_* = id + t*`
    DoubleCoset,
}

impl fmt::Display for MackeyAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MackeyAxiom::WeylInvolution => "(t*)^2 = id",
            MackeyAxiom::RestrictionFixed => "t* i* = i*",
            MackeyAxiom::TransferInvariant => "i_* (t*)^-1 = i_*",
            MackeyAxiom::DoubleCoset => "i* i_* = id + t*",
        })
    }
}

impl MackeyFunctor {
    /// The constant functor: `t* = id`, `i* = id`, `i_* = 0`.
    pub fn constant_z2() -> Self {
        MackeyFunctor {
            dim_top: 1,
            dim_bot: 1,
            t_star: BitMatrix::identity(1),
            i_star: BitMatrix::identity(1),
            i_lower: BitMatrix::zeros(1, 1),
        }
    }

    pub fn zero() -> Self {
        MackeyFunctor {
            dim_top: 0,
            dim_bot: 0,
            t_star: BitMatrix::zeros(0, 0),
            i_star: BitMatrix::zeros(0, 0),
            i_lower: BitMatrix::zeros(0, 0),
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let expect = [
            ("t*", &self.t_star, (self.dim_top, self.dim_top)),
            ("i*", &self.i_star, (self.dim_top, self.dim_bot)),
            ("i_*", &self.i_lower, (self.dim_bot, self.dim_top)),
        ];
        for (name, m, shape) in expect {
            if m.shape() != shape {
                return Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        Ok(())
    }
}

/// Evaluates the four axioms over F2 and returns the ones that fail.
pub fn check_mackey(m: &MackeyFunctor) -> Result<Vec<MackeyAxiom>> {
    m.check_shapes()?;
    let id = BitMatrix::identity(m.dim_top);
    let t = &m.t_star;
    let t_squared = t.mul(t).expect("shapes checked");
    let mut violations = Vec::new();
    if t_squared != id {
        violations.push(MackeyAxiom::WeylInvolution);
    }
    if t.mul(&m.i_star).expect("shapes checked") != m.i_star {
        violations.push(MackeyAxiom::RestrictionFixed);
    }
    // With t*^2 = id the inverse is t* itself; when t* is not invertible the
    // axiom is read through t* as well, and the involution failure above
    // already flags the functor.
    if m.i_lower.mul(t).expect("shapes checked") != m.i_lower {
        violations.push(MackeyAxiom::TransferInvariant);
    }
    let lhs = m.i_star.mul(&m.i_lower).expect("shapes checked");
    if lhs != id.add(t).expect("shapes checked") {
        violations.push(MackeyAxiom::DoubleCoset);
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_functor_is_valid() {
        assert_eq!(check_mackey(&MackeyFunctor::constant_z2()).unwrap(), vec![]);
        assert_eq!(check_mackey(&MackeyFunctor::zero()).unwrap(), vec![]);
    }

    #[test]
    fn identity_everywhere_fails_double_coset() {
        let m = MackeyFunctor {
            i_lower: BitMatrix::identity(1),
            ..MackeyFunctor::constant_z2()
        };
        assert_eq!(check_mackey(&m).unwrap(), vec![MackeyAxiom::DoubleCoset]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let m = MackeyFunctor {
            i_star: BitMatrix::zeros(2, 1),
            ..MackeyFunctor::constant_z2()
        };
        assert!(matches!(check_mackey(&m), Err(Error::Shape(_))));
    }

    #[test]
    fn free_orbit_functor_is_valid() {
        // M(Z/2) = F2^2 with the swap, M(e) = F2, restriction diagonal, transfer a sum.
        let m = MackeyFunctor {
            dim_top: 2,
            dim_bot: 1,
            t_star: BitMatrix::from_rows(&[[0, 1], [1, 0]]),
            i_star: BitMatrix::from_rows(&[[1], [1]]),
            i_lower: BitMatrix::from_rows(&[[1, 1]]),
        };
        assert_eq!(check_mackey(&m).unwrap(), vec![]);
    }
}

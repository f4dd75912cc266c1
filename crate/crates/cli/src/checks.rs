//! Built-in reproductions run by `equicoh check`.

use equicoh_core::point_ring::ConeBasisElement::{Bot, Top};
use equicoh_core::proj_ring::SingularElement;
use equicoh_core::{
    attach_cell, basis_dim, bideg, cell_bidegree, check_mackey, deduce_with, enumerate_cells,
    forgetful, multiply_ring, rp_tw_cells, Bidegree, DeduceOptions, DifferentialSpec, FlagSymbol,
    FreeModule, GrassmannianDesc, MackeyFunctor, ProjRingElement, RingElement, SchubertSymbol,
    SpaceId, Verdict, Window,
};

pub type CheckResult = Result<(), String>;

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> CheckResult,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "point ring support",
        run: point_ring_support,
    },
    Check {
        name: "theta divisibility",
        run: theta_divisibility,
    },
    Check {
        name: "schubert worked cell",
        run: worked_cell,
    },
    Check {
        name: "twisted projective cells",
        run: rp_tw,
    },
    Check {
        name: "grassmannian E1 pages",
        run: e1_pages,
    },
    Check {
        name: "bottom-cone attachment",
        run: bottom_shift,
    },
    Check {
        name: "deduce G2(R^{4,2})",
        run: deduce_g2_r42,
    },
    Check {
        name: "deduce G2(R^{4,1})",
        run: deduce_g2_r41,
    },
    Check {
        name: "projective ring relations",
        run: ring_relations,
    },
    Check {
        name: "constant Mackey functor",
        run: mackey_constant,
    },
];

pub struct CheckReport {
    pub lines: Vec<String>,
    pub failures: usize,
}

pub fn run_all() -> CheckReport {
    let mut lines = Vec::new();
    let mut failures = 0;
    for c in CHECKS {
        match (c.run)() {
            Ok(()) => lines.push(format!("PASS {}", c.name)),
            Err(why) => {
                failures += 1;
                lines.push(format!("FAIL {}: {why}", c.name));
            }
        }
    }
    lines.push(format!(
        "{}/{} checks passed",
        CHECKS.len() - failures,
        CHECKS.len()
    ));
    CheckReport { lines, failures }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn point_ring_support() -> CheckResult {
    for p in -3..=3 {
        for q in -5..=5 {
            let want = usize::from((q >= p && p >= 0) || (p <= 0 && q <= p - 2));
            expect_eq(&format!("dim at ({p},{q})"), basis_dim(bideg(p, q)), want)?;
        }
    }
    Ok(())
}

fn theta_divisibility() -> CheckResult {
    for n in 0..=6 {
        for m in 0..=6 {
            let top = RingElement::from(Top { rho: n, tau: m });
            let bot = RingElement::from(Bot { rho: n, tau: m });
            expect_eq(&format!("n={n} m={m}"), top.mul(&bot), RingElement::theta())?;
        }
    }
    Ok(())
}

fn worked_cell() -> CheckResult {
    let sigma = SchubertSymbol::new(vec![3, 5], 5).map_err(|e| e.to_string())?;
    let phi = FlagSymbol::new(vec![1, 3, 4], 5).map_err(|e| e.to_string())?;
    expect_eq(
        "sigma=(3,5), phi=(1,3,4)",
        cell_bidegree(&sigma, &phi),
        bideg(5, 3),
    )
}

fn rp_tw() -> CheckResult {
    for n in 0..=12u32 {
        let want: Vec<Bidegree> = (0..=n as i32).map(|k| bideg(k, (k + 1) / 2)).collect();
        expect_eq(&format!("n={n}"), rp_tw_cells(n), want)?;
    }
    Ok(())
}

fn cells_of(n: u32, p: u32, q: u32, flag: &[u32]) -> Result<Vec<Bidegree>, String> {
    let f = FlagSymbol::new(flag.to_vec(), p).map_err(|e| e.to_string())?;
    let g = GrassmannianDesc::new(n, p, q, f).map_err(|e| e.to_string())?;
    Ok(enumerate_cells(&g).into_iter().map(|c| c.degree).collect())
}

fn degs(v: &[(i32, i32)]) -> Vec<Bidegree> {
    v.iter().map(|&(p, q)| bideg(p, q)).collect()
}

/// `(p, q, flag, cells)` for `G_2(R^{p,q})`.
type Page = (u32, u32, &'static [u32], &'static [(i32, i32)]);

fn e1_pages() -> CheckResult {
    let pages: [Page; 4] = [
        (
            4,
            1,
            &[2],
            &[(0, 0), (1, 1), (2, 1), (2, 1), (3, 1), (4, 2)],
        ),
        (
            4,
            2,
            &[2, 3],
            &[(0, 0), (1, 0), (2, 2), (2, 2), (3, 2), (4, 2)],
        ),
        (
            4,
            2,
            &[2, 4],
            &[(0, 0), (1, 1), (2, 1), (2, 1), (3, 3), (4, 2)],
        ),
        (
            4,
            2,
            &[3, 4],
            &[(0, 0), (1, 1), (2, 1), (2, 1), (3, 1), (4, 4)],
        ),
    ];
    for (p, q, flag, want) in pages {
        expect_eq(
            &format!("p={p} q={q} flag={flag:?}"),
            cells_of(2, p, q, flag)?,
            degs(want),
        )?;
    }
    Ok(())
}

fn bottom_shift() -> CheckResult {
    let w = Window::new(-4, 12, -14, 10).map_err(|e| e.to_string())?;
    for n in 0..=2u32 {
        for m in 0..=2u32 {
            let cell = bideg(n as i32 + 3, 2);
            let source = bideg(cell.p - n as i32 - 1, cell.q - (n + m) as i32 - 2);
            let b = FreeModule::from_degrees([source]);
            let label = b.generators()[0].label.clone();
            let d = DifferentialSpec::zero().with(label, Bot { rho: n, tau: m });
            let got = attach_cell(&b, cell, &d, w).map_err(|e| e.to_string())?;
            let mut want = vec![
                bideg(cell.p - n as i32 - 1, cell.q - n as i32 - 1),
                bideg(cell.p, cell.q - m as i32 - 1),
            ];
            want.sort();
            expect_eq(&format!("n={n} m={m}"), got.result.sorted().degrees(), want)?;
        }
    }
    Ok(())
}

fn deduce_determined(n: u32, p: u32, q: u32, want: &[(i32, i32)]) -> CheckResult {
    let report = deduce_with(n, p, q, &DeduceOptions::default()).map_err(|e| e.to_string())?;
    expect_eq(
        &format!("deduce({n},{p},{q})"),
        report.verdict,
        Verdict::Determined {
            generators: degs(want),
        },
    )
}

fn deduce_g2_r42() -> CheckResult {
    deduce_determined(2, 4, 2, &[(0, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2)])
}

fn deduce_g2_r41() -> CheckResult {
    deduce_determined(2, 4, 1, &[(0, 0), (1, 1), (2, 1), (2, 1), (3, 1), (4, 2)])
}

fn ring_relations() -> CheckResult {
    let cases: [(SpaceId, &str, &str, &str); 5] = [
        (SpaceId::RPtwInf, "a", "a", "rho a + tau b"),
        (SpaceId::S11, "a", "a", "rho a"),
        (SpaceId::P41, "a", "b", "tau c"),
        (SpaceId::P41, "b", "c", "0"),
        (SpaceId::P41, "c", "c", "0"),
    ];
    for (space, x, y, want) in cases {
        let parse = |s: &str| ProjRingElement::parse(space, s).map_err(|e| e.to_string());
        let got = multiply_ring(&parse(x)?, &parse(y)?).map_err(|e| e.to_string())?;
        expect_eq(
            &format!("{x} * {y} in {space}"),
            got.to_string(),
            want.to_string(),
        )?;
    }
    let b2 = ProjRingElement::parse(SpaceId::RPtwInf, "b^2").map_err(|e| e.to_string())?;
    expect_eq("psi(b^2)", forgetful(&b2), SingularElement::z_pow(4))
}

fn mackey_constant() -> CheckResult {
    let v = check_mackey(&MackeyFunctor::constant_z2()).map_err(|e| e.to_string())?;
    expect_eq("violations", v, Vec::new())
}

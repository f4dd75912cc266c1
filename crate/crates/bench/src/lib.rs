//! Fixtures shared by the benchmarks.

use equicoh_core::{
    bideg, dimension_table, Bidegree, DifferentialSpec, DimensionTable, FlagSymbol, FreeModule,
    GrassmannianDesc, RingElement, Window,
};

/// `G_4(R^{8,4})` with the alternating flag: 70 cells.
pub fn large_grassmannian() -> GrassmannianDesc {
    GrassmannianDesc::new(4, 8, 4, FlagSymbol::alternating(4, 8).expect("valid flag"))
        .expect("valid Grassmannian")
}

/// A two-generator module and a cell hitting both bottom cones.
pub fn ramp() -> (FreeModule, Bidegree, DifferentialSpec, Window) {
    let b = FreeModule::from_degrees([bideg(-1, -4), bideg(1, -3)]);
    let cell = bideg(3, 2);
    let d = DifferentialSpec::zero()
        .with(
            b.generators()[0].label.clone(),
            "theta/(rho^3 tau)".parse::<RingElement>().unwrap(),
        )
        .with(
            b.generators()[1].label.clone(),
            "theta/(rho tau^2)".parse::<RingElement>().unwrap(),
        );
    let w = Window::fitting(b.degrees().into_iter().chain([cell]), 1);
    (b, cell, d, w)
}

/// The dimension table of an eight-generator module.
pub fn recovery_table() -> DimensionTable {
    let m = FreeModule::from_degrees([
        (0, 0),
        (1, 2),
        (2, 1),
        (2, 2),
        (3, 5),
        (4, 0),
        (5, 3),
        (6, 6),
    ]);
    dimension_table(&m, Window::new(-10, 10, -12, 14).expect("valid window"))
}

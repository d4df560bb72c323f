//! Annihilators of the algebraic line and C1 solutions of the fixtures.

use precur::arith::TruncatedSeries;
use precur::probes::guess_annihilator;
use precur::recurrence::{fixtures, InitialPair, Order2Rec};

fn series(rec: &Order2Rec, s0: i64, s1: i64, order: usize) -> TruncatedSeries {
    TruncatedSeries::new(rec.generate_terms(&InitialPair::ints(s0, s1), order - 1).unwrap())
}

#[test]
fn central_trinomial() {
    let s = series(&fixtures::central_trinomial(), 1, 1, 300);
    let g = guess_annihilator(&s, 4, 4).unwrap().unwrap();
    assert_eq!(g.to_string(), "3*x^2*y^2 + 2*x*y^2 - y^2 + 1");
}

#[test]
fn schroeder_basis_solutions() {
    for (s0, s1) in [(1, 0), (0, 1), (1, 2)] {
        let s = series(&fixtures::large_schroeder(), s0, s1, 300);
        let g = guess_annihilator(&s, 4, 4).unwrap();
        assert!(g.is_some(), "({s0}, {s1})");
    }
}

/// `(1 + 2x + 9x²)^{−5/2}` has minimal polynomial `g⁵y² − 1`, so no
/// annihilator exists below x-degree 10.
#[test]
fn quadratic_power_line_needs_degree_ten() {
    let s = series(&fixtures::quadratic_power_line(), 1, -5, 300);
    assert_eq!(guess_annihilator(&s, 9, 2).unwrap(), None);
    let g = guess_annihilator(&s, 10, 2).unwrap().unwrap();
    assert_eq!((g.deg_x(), g.deg_y()), (10, 2));
    assert_eq!(g.coeff(0, 0), (-1).into());
    assert_eq!(g.coeff(10, 2), 59049.into());
}

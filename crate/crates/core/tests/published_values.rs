//! Values as printed in the source text, checked against the library.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use semiphoton::constants::{DiracParams, PhysicalConstants};
use semiphoton::evolution::{spinning_force, SpinAxis};
use semiphoton::nonlinear::photon_photon_coefficient_compare;
use semiphoton::plane_wave::{build_spinor, specialize_y, Branch, SpinIndex};
use semiphoton::spinor::Bispinor;
use semiphoton::symbolic::{Monomial, Symbol};
use semiphoton::torus::{coupling_constant, magnetic_moment, spin_chain};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn rest_spinor_lower_family() {
    let sol = build_spinor(&Vector3::zeros(), &DiracParams::natural(), Branch::Negative, SpinIndex::Two, 0.0);
    assert_eq!(sol.spinor(), Bispinor::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)));
}

#[test]
fn specialized_patterns() {
    let expect = [
        (Branch::Positive, SpinIndex::One, [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 1.0), c(0.0, 0.0)]),
        (Branch::Positive, SpinIndex::Two, [c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]),
        (Branch::Negative, SpinIndex::One, [c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]),
    ];
    for (branch, index, b) in expect {
        let s = specialize_y(&DiracParams::natural(), branch, index, PI / 2.0);
        assert_eq!(s.published, Bispinor::from_array(b));
        assert!(s.phase_matched_deviation < 1e-14);
        assert!(s.sparsity_exact);
    }
}

#[test]
fn spinning_force_sign_about_ox() {
    let f = spinning_force(1.0, 1.0, 1.0, 1.0, SpinAxis::Ox).unwrap();
    assert!((f.f2 + 1.0 / (4.0 * PI)).abs() < 1e-16);
}

#[test]
fn photon_photon_inner_coefficients() {
    let r = photon_photon_coefficient_compare(&PhysicalConstants::codata2018());
    assert_eq!(r.inner_coefficients, (4, 7));
}

#[test]
fn coupling_rounds_to_printed_value() {
    let r = coupling_constant(&PhysicalConstants::codata2018());
    assert_eq!(format!("{:.3}", r.alpha_q), "0.637");
    assert!((1.0 / r.alpha - 137.036).abs() < 1e-3);
}

#[test]
fn spin_values() {
    let s = spin_chain(&PhysicalConstants::codata2018());
    assert_eq!(s.sigma_p, Monomial::symbol(Symbol::Hbar));
    assert_eq!(s.sigma_s, Monomial::rational(1, 2).with(Symbol::Hbar, 1));
    assert_eq!(s.r_s, s.r_p);
}

#[test]
fn moment_is_half_a_magneton() {
    let k = PhysicalConstants::codata2018();
    let mu = magnetic_moment(&k, k.e).unwrap();
    assert_eq!(mu.bohr_ratio_symbolic, Monomial::rational(1, 2));
    assert!((mu.mu_s_gaussian / mu.bohr_magneton - 0.5).abs() < 1e-15);
}

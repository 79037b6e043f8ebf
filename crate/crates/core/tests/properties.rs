use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use proptest::prelude::*;

use semiphoton::constants::DiracParams;
use semiphoton::evolution::{spinning_force, stress_tensor, SpinAxis};
use semiphoton::nonlinear::{
    em_identity_check, fierz_check, lagrangian_nonlinear, nonlinear_terms, squaring_defect, LocalState,
    NonlinearConfig,
};
use semiphoton::plane_wave::{build_spinor, system_residual, system_scale, FAMILIES};
use semiphoton::spinor::{bilinear, build_alpha_set, from_bispinor, to_bispinor, Bispinor, EMFieldPoint};
use semiphoton::torus::TorusModel;

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn bispinor() -> impl Strategy<Value = Bispinor> {
    [complex(), complex(), complex(), complex()].prop_map(Bispinor::from_array)
}

fn vec3(r: f64) -> impl Strategy<Value = Vector3<f64>> {
    [-r..r, -r..r, -r..r].prop_map(|[x, y, z]| Vector3::new(x, y, z))
}

fn transverse() -> impl Strategy<Value = EMFieldPoint> {
    [-10.0..10.0f64, -10.0..10.0, -10.0..10.0, -10.0..10.0]
        .prop_map(|[ex, ez, hx, hz]| EMFieldPoint::real([ex, 0.0, ez], [hx, 0.0, hz]))
}

proptest! {
    #[test]
    fn fierz_identity(psi in bispinor()) {
        prop_assert!(fierz_check(&psi).relative() < 1e-12);
    }

    #[test]
    fn em_identity(e in vec3(10.0), h in vec3(10.0)) {
        prop_assert!(em_identity_check(&e, &h).relative() < 1e-12);
    }

    #[test]
    fn field_round_trip_is_exact(f in transverse()) {
        prop_assert_eq!(from_bispinor(&to_bispinor(&f).unwrap()), f);
    }

    #[test]
    fn bilinears_are_real(psi in bispinor()) {
        let set = build_alpha_set();
        let scale = psi.norm_sqr();
        for mu in 0..6 {
            prop_assert!(bilinear(&psi, set.alpha(mu)).im.abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn hamiltonian_squares_to_energy(p in vec3(10.0), m in 0.0..5.0f64) {
        let params = DiracParams::natural().with_mass(m);
        let scale = 1.0 + p.norm_squared() + m * m;
        prop_assert!(squaring_defect(&p, &params) <= 1e-14 * scale);
    }

    #[test]
    fn plane_waves_solve_the_system(p in vec3(10.0), phase in 0.0..(2.0 * PI)) {
        let params = DiracParams::natural();
        for (branch, index) in FAMILIES {
            let sol = build_spinor(&p, &params, branch, index, phase);
            prop_assert!(system_residual(&sol, &params) <= 1e-12 * system_scale(&sol, &params));
            prop_assert!(sol.dispersion_defect(&params).abs() < 1e-12);
        }
    }

    #[test]
    fn nonlinear_homogeneity(
        psi in bispinor(), dt in bispinor(), gy in bispinor(), lambda in 0.1..4.0f64,
    ) {
        let params = DiracParams::natural();
        let cfg = NonlinearConfig::for_params(&params);
        let st = LocalState { psi, dpsi_dt: dt, grad: [Bispinor::zero(), gy, Bispinor::zero()] };
        let base = nonlinear_terms(&st, &cfg, &params);
        let scaled = nonlinear_terms(&st.scaled(lambda), &cfg, &params);
        let lin = (scaled.linear - base.linear.scale_real(lambda)).norm();
        let cub = (scaled.cubic - base.cubic.scale_real(lambda.powi(3))).norm();
        prop_assert!(lin <= 1e-12 * lambda * (1.0 + base.linear.norm()));
        prop_assert!(cub <= 1e-12 * lambda.powi(3) * (1.0 + base.cubic.norm()));
    }

    #[test]
    fn quantum_and_field_self_terms_agree(f in transverse()) {
        let params = DiracParams::natural();
        let cfg = NonlinearConfig::for_params(&params);
        let psi = to_bispinor(&f).unwrap();
        let st = LocalState { psi, dpsi_dt: Bispinor::zero(), grad: [Bispinor::zero(); 3] };
        let r = lagrangian_nonlinear(&st, &cfg, &params);
        let d = r.dual_path_residual().unwrap();
        prop_assert!(d < 1e-12 || r.em_self_term.unwrap().abs() < 1e-14 * psi.norm_sqr().powi(2), "{}", d);
    }

    #[test]
    fn stress_tensor_is_symmetric(f in transverse()) {
        let t = stress_tensor(&f).unwrap();
        prop_assert_eq!(t.asymmetry(), 0.0);
        let e = f.e_real();
        let h = f.h_real();
        prop_assert_eq!(t.tau_00, 0.5 * (e.norm_squared() + h.norm_squared()));
    }

    #[test]
    fn static_field_has_no_spinning_force(e in -10.0..10.0f64, h in -10.0..10.0f64) {
        for axis in [SpinAxis::Oz, SpinAxis::Ox] {
            let f = spinning_force(e, h, 0.0, 1.0, axis).unwrap();
            prop_assert_eq!((f.f2, f.f0), (0.0, 0.0));
        }
    }

    #[test]
    fn torus_geometry_chain(r in 1e-14..1e3f64, c in 0.5..3e10f64) {
        let m = TorusModel::with_radius(r, c);
        prop_assert!(m.rotation_defect() < 4e-16);
        prop_assert!(m.wavelength_defect() < 4e-16);
    }
}

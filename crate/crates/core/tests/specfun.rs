use susy_ces::specfun::{
    gamma, gamma_signed, hermite, kummer_1f1, kummer_1f1_derivatives, kummer_1f1_dz, laguerre,
    pochhammer,
};
use susy_ces::Error;

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(1e-300)
}

#[test]
fn kummer_trivial_and_terminating_values() {
    assert_eq!(kummer_1f1(0.0, 0.5, 7.3).unwrap(), 1.0);
    assert_eq!(kummer_1f1(1.2, 0.7, 0.0).unwrap(), 1.0);
    assert!((kummer_1f1(-1.0, 0.5, -4.0).unwrap() - 9.0).abs() < 1e-14);
    assert!((kummer_1f1(-1.0, -2.5, -1.0).unwrap() - 0.6).abs() < 1e-14);
}

#[test]
fn kummer_matches_high_precision_oracle() {
    let cases = [
        (0.3, 1.7, 2.5, 1.937_816_535_028_867_1),
        (0.35, 0.5, -144.0, 0.050_146_754_387_003_462),
        (-0.25, -1.5, -4.0, 0.723_551_196_442_823_94),
        (2.5, 3.5, -30.25, 6.603_326_340_930_021e-4),
        (1.25, 0.5, 10.0, 246_801.558_921_592_6),
    ];
    for (a, b, z, want) in cases {
        let got = kummer_1f1(a, b, z).unwrap();
        assert!(
            close(got, want, 1e-12),
            "1F1({a};{b};{z}) = {got}, want {want}"
        );
    }
}

#[test]
fn kummer_derivative_values() {
    assert_eq!(kummer_1f1_dz(0.0, 0.5, 3.0).unwrap(), 0.0);
    assert!((kummer_1f1_dz(-1.0, 0.5, -4.0).unwrap() + 2.0).abs() < 1e-14);
    for (a, b) in [(0.3, 1.7), (-2.5, 0.25), (4.0, -1.5)] {
        assert!(close(kummer_1f1_dz(a, b, 0.0).unwrap(), a / b, 1e-14));
    }
    // derivatives of a cubic vanish past the third
    let mut out = [0.0; 6];
    kummer_1f1_derivatives(-3.0, 0.5, 1.1, &mut out).unwrap();
    assert!(out[4] == 0.0 && out[5] == 0.0);
    assert!(close(out[3], -3.0 * -2.0 * -1.0 / (0.5 * 1.5 * 2.5), 1e-14));
}

#[test]
fn kummer_pole_is_reported() {
    assert!(matches!(
        kummer_1f1(0.5, -2.0, 1.0),
        Err(Error::Pole { .. })
    ));
    // terminates before reaching the pole
    assert!(kummer_1f1(-1.0, -2.0, 1.0).is_ok());
}

#[test]
fn orthogonal_polynomials() {
    assert_eq!(hermite(0, 1.7), 1.0);
    assert!((hermite(1, 1.7) - 3.4).abs() < 1e-14);
    assert!((hermite(3, 2.0) - 40.0).abs() < 1e-12);
    assert_eq!(laguerre(0, 1.5, 0.3), 1.0);
    for (nu, x) in [(0.0, 0.4), (2.5, 3.0), (-0.5, 1.2)] {
        assert!((laguerre(1, nu, x) - (1.0 + nu - x)).abs() < 1e-14);
    }
    // x²/2 − (ν+2)x + (ν+1)(ν+2)/2 at ν = ½, x = 1
    assert!((laguerre(2, 0.5, 1.0) + 0.125).abs() < 1e-14);
}

#[test]
fn gamma_function_values() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let g = gamma_signed(0.5).unwrap();
    assert_eq!(g.sign, 1);
    assert!((g.log_abs - sqrt_pi.ln()).abs() < 1e-14);
    let g = gamma_signed(-1.5).unwrap();
    assert_eq!(g.sign, 1);
    assert!((g.log_abs - (4.0 * sqrt_pi / 3.0).ln()).abs() < 1e-14);
    let g = gamma_signed(-0.5).unwrap();
    assert_eq!(g.sign, -1);
    assert!((g.log_abs - (2.0 * sqrt_pi).ln()).abs() < 1e-14);
    assert!(close(gamma(0.3).unwrap(), 2.991_568_987_687_590_6, 1e-13));
    assert!(close(gamma(-2.7).unwrap(), -0.931_082_784_838_963_8, 1e-13));
    assert!(close(gamma(7.5).unwrap(), 1_871.254_305_797_788_3, 1e-13));
    assert!(gamma(-3.0).is_err());
}

#[test]
fn pochhammer_values() {
    assert_eq!(pochhammer(0.7, 0), 1.0);
    assert_eq!(pochhammer(2.5, 1), 2.5);
    assert!((pochhammer(1.5, 3) - 13.125).abs() < 1e-14);
}

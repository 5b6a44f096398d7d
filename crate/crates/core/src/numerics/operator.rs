use std::f64::consts::FRAC_1_SQRT_2;

use super::jet::Jet;

/// (coeff_d · f′ + w · f)/√2 on jets.
///
/// With `coeff_d = 1` this is A = (d/dx + W)/√2, with `coeff_d = −1` its
/// adjoint A†. The result keeps a derivative channel, one order shorter than
/// the input, so first-order operators can be stacked without any finite
/// differencing.
pub fn apply_first_order<const N: usize>(coeff_d: f64, w: &Jet<N>, f: &Jet<N>) -> Jet<N> {
    (f.d_dx().scale(coeff_d) + *w * *f).scale(FRAC_1_SQRT_2)
}

use num_complex::Complex64;

use crate::field::FieldPair;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `(q, p) -> (|D|^{-1/2} q, |D|^{1/2} p)`.
pub fn phi1(qp: &FieldPair) -> FieldPair {
    FieldPair::new_unchecked(qp.first.lambda_pow(-0.5), qp.second.lambda_pow(0.5))
}

pub fn phi1_inverse(uv: &FieldPair) -> FieldPair {
    FieldPair::new_unchecked(uv.first.lambda_pow(0.5), uv.second.lambda_pow(-0.5))
}

/// `(f, g) -> ((f + g)/sqrt2, (f - g)/(i sqrt2))`.
pub fn phi2(fg: &FieldPair) -> FieldPair {
    let q = (&fg.first + &fg.second).scale_re(FRAC_1_SQRT_2);
    let p = (&fg.first - &fg.second).scale(Complex64::new(0.0, -FRAC_1_SQRT_2));
    FieldPair::new_unchecked(q, p)
}

pub fn phi2_inverse(qp: &FieldPair) -> FieldPair {
    let ip = qp.second.scale(Complex64::new(0.0, 1.0));
    let f = (&qp.first + &ip).scale_re(FRAC_1_SQRT_2);
    let g = (&qp.first - &ip).scale_re(FRAC_1_SQRT_2);
    FieldPair::new_unchecked(f, g)
}

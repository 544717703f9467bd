//! G1, G4 and G6 from the standard constrained test suite (minimization).

use crate::error::EvalError;

use super::{Evaluation, Model};

/// G1: 13 variables, nine linear inequalities, optimum −15.
pub fn g1(x: &[f64]) -> (f64, Vec<f64>) {
    let s1: f64 = x[..4].iter().sum();
    let s2: f64 = x[..4].iter().map(|v| v * v).sum();
    let s3: f64 = x[4..13].iter().sum();
    let f = 5.0 * s1 - 5.0 * s2 - s3;
    let g = vec![
        2.0 * x[0] + 2.0 * x[1] + x[9] + x[10] - 10.0,
        2.0 * x[0] + 2.0 * x[2] + x[9] + x[11] - 10.0,
        2.0 * x[1] + 2.0 * x[2] + x[10] + x[11] - 10.0,
        -8.0 * x[0] + x[9],
        -8.0 * x[1] + x[10],
        -8.0 * x[2] + x[11],
        -2.0 * x[3] - x[4] + x[9],
        -2.0 * x[5] - x[6] + x[10],
        -2.0 * x[7] - x[8] + x[11],
    ];
    (f, g)
}

/// G4: 5 variables; three two-sided auxiliary bounds expanded to six
/// inequalities. Optimum −30665.539.
pub fn g4(x: &[f64]) -> (f64, Vec<f64>) {
    let (x1, x2, x3, x4, x5) = (x[0], x[1], x[2], x[3], x[4]);
    let f = 5.357_854_7 * x3 * x3 + 0.835_689_1 * x1 * x5 + 37.293_239 * x1 - 40_792.141;
    let u = 85.334_407 + 0.005_685_8 * x2 * x5 + 0.000_626_2 * x1 * x4 - 0.002_205_3 * x3 * x5;
    let v = 80.512_49 + 0.007_131_7 * x2 * x5 + 0.002_995_5 * x1 * x2 + 0.002_181_3 * x3 * x3;
    let w = 9.300_961 + 0.004_702_6 * x3 * x5 + 0.001_254_7 * x1 * x3 + 0.001_908_5 * x3 * x4;
    let g = vec![u - 92.0, -u, v - 110.0, 90.0 - v, w - 25.0, 20.0 - w];
    (f, g)
}

/// G6: 2 variables, two nonlinear inequalities. Optimum −6961.814.
pub fn g6(x: &[f64]) -> (f64, Vec<f64>) {
    let (x1, x2) = (x[0], x[1]);
    let f = (x1 - 10.0).powi(3) + (x2 - 20.0).powi(3);
    let g = vec![
        -(x1 - 5.0).powi(2) - (x2 - 5.0).powi(2) + 100.0,
        (x1 - 6.0).powi(2) + (x2 - 5.0).powi(2) - 82.81,
    ];
    (f, g)
}

macro_rules! gsuite_model {
    ($name:ident, $f:ident) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $name;

        impl Model for $name {
            fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
                let (objective, constraints) = $f(x);
                Ok(Evaluation {
                    objective,
                    constraints,
                })
            }
        }
    };
}

gsuite_model!(G1, g1);
gsuite_model!(G4, g4);
gsuite_model!(G6, g6);

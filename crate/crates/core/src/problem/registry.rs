//! Named problem lookup.

use std::sync::Arc;

use crate::error::ConfigError;

use super::{
    AjmBrittle, AjmDuctile, BoundsMode, Grinding, Model, ProblemSpec, Sense, Usm, Variable, Wjm,
    G1, G4, G6,
};

pub const NAMES: [&str; 8] = ["ajmb", "ajmd", "wjm", "usm", "grinding", "g1", "g4", "g6"];

/// Names of the five machining problems.
pub const AMP_NAMES: [&str; 5] = ["ajmb", "ajmd", "wjm", "usm", "grinding"];

/// Ductile abrasive-jet velocity floor used by [`BoundsMode::PaperCalibrated`].
pub const AJMD_CALIBRATED_VA_MIN: f64 = 1.5e3;

/// Strategy bounds `(k1, k2)` used when a problem has no tabulated pair.
///
/// The inactive G-suite constraints carry slack of order 1–1000, so the
/// lower bound is set far out to keep feasible slack nearly unpenalized.
pub const GSUITE_STRATEGY_BOUNDS: (f64, f64) = (-1000.0, 1.0);

/// Sense, variables, constraint names, model and default strategy bounds.
type Definition = (
    Sense,
    Vec<Variable>,
    Vec<&'static str>,
    Arc<dyn Model>,
    (f64, f64),
);

pub fn get(name: &str, mode: BoundsMode) -> Result<ProblemSpec, ConfigError> {
    let abrasive_jet = |va_min: f64| {
        vec![
            Variable::new("M_a", "kg/s", 1.67e-5, 5e-4),
            Variable::new("r_m", "mm", 0.005, 0.075),
            Variable::new("v_a", "mm/s", va_min, 4e5),
        ]
    };
    let (sense, vars, constraints, model, bounds): Definition = match name {
        "ajmb" => (
            Sense::Maximize,
            abrasive_jet(1.5e5),
            vec!["surface_roughness"],
            Arc::new(AjmBrittle::default()),
            (-10.0, 1.0),
        ),
        "ajmd" => {
            let va_min = match mode {
                BoundsMode::AsWritten => 1.5e5,
                BoundsMode::PaperCalibrated => AJMD_CALIBRATED_VA_MIN,
            };
            (
                Sense::Maximize,
                abrasive_jet(va_min),
                vec!["surface_roughness"],
                Arc::new(AjmDuctile::default()),
                (-1.0, 1.5),
            )
        }
        "wjm" => (
            Sense::Maximize,
            vec![
                Variable::new("P_w", "MPa", 1.0, 400.0),
                Variable::new("d_wn", "mm", 0.05, 0.5),
                Variable::new("f_n", "mm/s", 1.0, 300.0),
                Variable::new("X", "mm", 2.5, 50.0),
            ],
            vec!["power"],
            Arc::new(Wjm::default()),
            (-1.0, 1.0),
        ),
        "usm" => (
            Sense::Maximize,
            vec![
                Variable::new("A_v", "mm", 0.005, 0.1),
                Variable::new("f_v", "Hz", 1e4, 4e4),
                Variable::new("d_m", "mm", 0.007, 0.15),
                Variable::new("C_av", "", 0.05, 0.5),
                Variable::new("F_s", "N", 4.5, 45.0),
            ],
            vec!["surface_roughness"],
            Arc::new(Usm::default()),
            (-10.0, 1.0),
        ),
        "grinding" => (
            Sense::Maximize,
            vec![
                Variable::new("f_r", "m/min", 0.86, 13.4),
                Variable::new("d_c", "um", 5.0, 30.0),
                Variable::new("M", "grit", 120.0, 500.0),
            ],
            vec!["surface_roughness", "flaw_count"],
            Arc::new(Grinding::default()),
            (-100.0, 5.0),
        ),
        "g1" => {
            const G1_NAMES: [&str; 13] = [
                "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11", "x12", "x13",
            ];
            let vars = G1_NAMES
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    let upper = if (9..12).contains(&i) { 100.0 } else { 1.0 };
                    Variable::new(name, "", 0.0, upper)
                })
                .collect();
            (
                Sense::Minimize,
                vars,
                vec!["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9"],
                Arc::new(G1),
                GSUITE_STRATEGY_BOUNDS,
            )
        }
        "g4" => (
            Sense::Minimize,
            vec![
                Variable::new("x1", "", 78.0, 102.0),
                Variable::new("x2", "", 33.0, 45.0),
                Variable::new("x3", "", 27.0, 45.0),
                Variable::new("x4", "", 27.0, 45.0),
                Variable::new("x5", "", 27.0, 45.0),
            ],
            vec!["u_max", "u_min", "v_max", "v_min", "w_max", "w_min"],
            Arc::new(G4),
            GSUITE_STRATEGY_BOUNDS,
        ),
        "g6" => (
            Sense::Minimize,
            vec![
                Variable::new("x1", "", 13.0, 100.0),
                Variable::new("x2", "", 0.0, 100.0),
            ],
            vec!["outer_circle", "inner_circle"],
            Arc::new(G6),
            GSUITE_STRATEGY_BOUNDS,
        ),
        _ => {
            return Err(ConfigError::UnknownProblem {
                name: name.to_string(),
                valid: NAMES.join(", "),
            })
        }
    };
    let mut spec = ProblemSpec::new(name, sense, vars, constraints, model)?
        .with_strategy_bounds(bounds.0, bounds.1);
    spec.bounds_mode = mode;
    Ok(spec)
}

use std::fmt::Write;

use super::registry::{self, NAMES};
use super::{
    AjmBrittleConstants, AjmDuctileConstants, BoundsMode, GrindingConstants, UsmConstants,
    WjmConstants,
};

fn constants(name: &str) -> Vec<(&'static str, f64, &'static str, &'static str)> {
    match name {
        "ajmb" => {
            let c = AjmBrittleConstants::default();
            vec![
                ("eta_a", c.eta_a, "", ""),
                ("rho_a", c.rho_a, "kg/mm^3", ""),
                ("ra_max", c.ra_max, "um", ""),
                ("sigma_fw", c.sigma_fw, "MPa", ""),
            ]
        }
        "ajmd" => {
            let c = AjmDuctileConstants::default();
            vec![
                ("rho_w", c.rho_w, "kg/mm^3", ""),
                ("h_dw", c.h_dw, "MPa", ""),
                ("ra_max", c.ra_max, "um", ""),
                ("rho_a", c.rho_a, "kg/mm^3", ""),
                ("delta_cw", c.delta_cw, "", ""),
                ("zeta", c.zeta, "", ""),
            ]
        }
        "wjm" => {
            let c = WjmConstants::default();
            vec![
                ("p_max", c.p_max, "kW", ""),
                ("sigma_pw", c.sigma_pw, "MPa", ""),
                ("c_fw", c.c_fw, "", ""),
                ("sigma_yw", c.sigma_yw, "MPa", ""),
                ("eta_w", c.eta_w, "kg/(mm^2 s)", ""),
                ("x_i", c.x_i, "mm", ""),
            ]
        }
        "usm" => {
            let c = UsmConstants::default();
            vec![
                ("a_t", c.a_t, "mm^2", ""),
                ("ra_max", c.ra_max, "um", ""),
                ("sigma_fw", c.sigma_fw, "MPa", ""),
                ("k_usm", c.k_usm, "1/mm", ""),
                ("sigma_ft", c.sigma_ft, "MPa", ""),
                ("lambda", c.lambda(), "", "sigma_fw / sigma_ft"),
            ]
        }
        "grinding" => {
            let c = GrindingConstants::default();
            vec![
                ("sr_max", c.sr_max, "um", "roughness limit"),
                ("nd_max", c.nd_max, "", "flaw limit"),
            ]
        }
        _ => Vec::new(),
    }
}

fn constraint_forms(name: &str) -> &'static [&'static str] {
    match name {
        "ajmb" => &["(18.26/ra_max)*sqrt(rho_a/sigma_fw)*r_m*v_a - 1 <= 0"],
        "ajmd" => &["(25.82/ra_max)*sqrt(rho_a/h_dw)*r_m*v_a - 1 <= 0"],
        "wjm" => &["0.777*10^-1.5*d_wn^2*P_w^1.5/p_max - 1 <= 0"],
        "usm" => &["1154.7/(sqrt(a_t*sigma_fw*(1+lambda))*ra_max)*sqrt(F_s*A_v*d_m/C_av) - 1 <= 0"],
        "grinding" => &[
            "0.145*d_c^0.1939*f_r^0.7071*M^-0.2343/sr_max - 1 <= 0",
            "29.67*d_c^0.4167*f_r^0.8333/nd_max - 1 <= 0",
        ],
        "g1" => &[
            "2x1 + 2x2 + x10 + x11 - 10 <= 0",
            "2x1 + 2x3 + x10 + x12 - 10 <= 0",
            "2x2 + 2x3 + x11 + x12 - 10 <= 0",
            "-8x1 + x10 <= 0",
            "-8x2 + x11 <= 0",
            "-8x3 + x12 <= 0",
            "-2x4 - x5 + x10 <= 0",
            "-2x6 - x7 + x11 <= 0",
            "-2x8 - x9 + x12 <= 0",
        ],
        "g4" => &[
            "u - 92 <= 0, u = 85.334407 + 0.0056858 x2 x5 + 0.0006262 x1 x4 - 0.0022053 x3 x5",
            "-u <= 0",
            "v - 110 <= 0, v = 80.51249 + 0.0071317 x2 x5 + 0.0029955 x1 x2 + 0.0021813 x3^2",
            "90 - v <= 0",
            "w - 25 <= 0, w = 9.300961 + 0.0047026 x3 x5 + 0.0012547 x1 x3 + 0.0019085 x3 x4",
            "20 - w <= 0",
        ],
        "g6" => &[
            "-(x1-5)^2 - (x2-5)^2 + 100 <= 0",
            "(x1-6)^2 + (x2-5)^2 - 82.81 <= 0",
        ],
        _ => &[],
    }
}

/// Markdown listing of every registered problem.
pub fn catalog() -> String {
    let mut out =
        String::from("# Problem catalog\n\nAll constraints are canonical: feasible iff g <= 0.\n");
    for name in NAMES {
        let spec = registry::get(name, BoundsMode::AsWritten).expect("registered");
        let calibrated = registry::get(name, BoundsMode::PaperCalibrated).expect("registered");
        let _ = writeln!(out, "\n## {name} ({})\n", spec.sense);
        let _ = writeln!(out, "| variable | unit | as_written | paper_calibrated |");
        let _ = writeln!(out, "|---|---|---|---|");
        for (v, c) in spec.variables.iter().zip(&calibrated.variables) {
            let _ = writeln!(
                out,
                "| {} | {} | [{}, {}] | [{}, {}] |",
                v.name, v.unit, v.lower, v.upper, c.lower, c.upper
            );
        }
        let consts = constants(name);
        if !consts.is_empty() {
            let _ = writeln!(out, "\n| constant | value | unit | note |");
            let _ = writeln!(out, "|---|---|---|---|");
            for (n, v, u, s) in consts {
                let _ = writeln!(out, "| {n} | {v} | {u} | {s} |");
            }
        }
        let _ = writeln!(out, "\nConstraints:");
        for (label, form) in spec.constraint_names.iter().zip(constraint_forms(name)) {
            let _ = writeln!(out, "- {label}: {form}");
        }
        if let Some((k1, k2)) = spec.default_strategy_bounds {
            let _ = writeln!(out, "\nDefault strategy bounds: k1 = {k1}, k2 = {k2}");
        }
    }
    out
}

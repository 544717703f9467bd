//! Advanced machining process models: abrasive jet (brittle and ductile),
//! water jet, ultrasonic machining and grinding. All maximize material
//! removal rate (MRR) subject to surface-quality or power limits.

use crate::error::EvalError;

use super::{Evaluation, Model};

/// Abrasive jet machining of brittle materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AjmBrittleConstants {
    /// Fraction of abrasive particles effectively cutting.
    pub eta_a: f64,
    /// Abrasive density, kg/mm³.
    pub rho_a: f64,
    /// Allowable surface roughness, μm.
    pub ra_max: f64,
    /// Flow stress of the work material, MPa.
    pub sigma_fw: f64,
}

impl Default for AjmBrittleConstants {
    fn default() -> Self {
        Self {
            eta_a: 0.7,
            rho_a: 3.85e-6,
            ra_max: 0.8,
            sigma_fw: 5000.0,
        }
    }
}

impl AjmBrittleConstants {
    /// MRR in mm³/s. Does not depend on the particle radius.
    pub fn mrr(&self, m_a: f64, _r_m: f64, v_a: f64) -> f64 {
        0.0035 * self.eta_a / (self.sigma_fw.powf(0.75) * self.rho_a.powf(0.25))
            * m_a
            * v_a.powf(1.5)
    }

    /// Surface roughness constraint; linear in `r_m * v_a`.
    pub fn roughness(&self, _m_a: f64, r_m: f64, v_a: f64) -> f64 {
        18.26 / self.ra_max * (self.rho_a / self.sigma_fw).sqrt() * r_m * v_a - 1.0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AjmBrittle(pub AjmBrittleConstants);

impl Model for AjmBrittle {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        let c = &self.0;
        Ok(Evaluation {
            objective: c.mrr(x[0], x[1], x[2]),
            constraints: vec![c.roughness(x[0], x[1], x[2])],
        })
    }
}

/// Abrasive jet machining of ductile materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AjmDuctileConstants {
    /// Work material density, kg/mm³.
    pub rho_w: f64,
    /// Dynamic hardness of the work material, MPa.
    pub h_dw: f64,
    /// Allowable surface roughness, μm.
    pub ra_max: f64,
    /// Abrasive density, kg/mm³.
    pub rho_a: f64,
    /// Critical plastic strain (erosion ductility).
    pub delta_cw: f64,
    /// Plastically deformed indentation volume factor.
    pub zeta: f64,
}

impl Default for AjmDuctileConstants {
    fn default() -> Self {
        Self {
            rho_w: 2.7e-6,
            h_dw: 1.15,
            ra_max: 2.0,
            rho_a: 2.48e-6,
            delta_cw: 1.5,
            zeta: 1.6,
        }
    }
}

impl AjmDuctileConstants {
    pub fn mrr(&self, m_a: f64, _r_m: f64, v_a: f64) -> f64 {
        1.0436e-6 * self.zeta * self.rho_w
            / (self.delta_cw.powi(2) * self.h_dw.powf(1.5) * self.rho_a.sqrt())
            * m_a
            * v_a.powi(3)
    }

    pub fn roughness(&self, _m_a: f64, r_m: f64, v_a: f64) -> f64 {
        25.82 / self.ra_max * (self.rho_a / self.h_dw).sqrt() * r_m * v_a - 1.0
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AjmDuctile(pub AjmDuctileConstants);

impl Model for AjmDuctile {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        let c = &self.0;
        Ok(Evaluation {
            objective: c.mrr(x[0], x[1], x[2]),
            constraints: vec![c.roughness(x[0], x[1], x[2])],
        })
    }
}

/// Water jet machining.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WjmConstants {
    /// Allowable power, kW.
    pub p_max: f64,
    /// Compressive yield strength of the work material, MPa.
    pub sigma_pw: f64,
    /// Drag friction coefficient.
    pub c_fw: f64,
    /// Tensile yield strength of the work material, MPa.
    pub sigma_yw: f64,
    /// Damping coefficient, kg·mm⁻²·s⁻¹.
    pub eta_w: f64,
    /// Length of the initial jet region, mm.
    pub x_i: f64,
}

impl Default for WjmConstants {
    fn default() -> Self {
        Self {
            p_max: 50.0,
            sigma_pw: 26.2,
            c_fw: 0.005,
            sigma_yw: 3.9,
            eta_w: 2357.3,
            x_i: 20.0,
        }
    }
}

/// Power constraint coefficient `0.777 * 10^-1.5`.
pub const WJM_POWER_COEFF: f64 = 0.777 * 0.031_622_776_601_683_79;

impl WjmConstants {
    /// Stand-off ratio `K = X_i / X`.
    pub fn kappa(&self, x: f64) -> f64 {
        self.x_i / x
    }

    /// `ψ = 1 - sqrt(1 - σ_pw K / P_w)`; the radicand must be non-negative.
    pub fn psi(&self, p_w: f64, kappa: f64) -> Result<f64, String> {
        let radicand = 1.0 - self.sigma_pw * kappa / p_w;
        if radicand.is_nan() || radicand < 0.0 {
            return Err(format!("negative radicand {radicand} in psi"));
        }
        Ok(1.0 - radicand.sqrt())
    }

    pub fn phi(&self, psi: f64, kappa: f64) -> f64 {
        2.0 / kappa * (0.5 - 0.57 * psi + 0.2 * psi * psi)
    }

    pub fn mrr(&self, p_w: f64, d_wn: f64, f_n: f64, x: f64) -> Result<f64, String> {
        let kappa = self.kappa(x);
        let psi = self.psi(p_w, kappa)?;
        let phi = self.phi(psi, kappa);
        let yield_term = 1.0 - self.sigma_yw / (2.0 * p_w * phi);
        let damping_term = 1.0 - (-2256.76 * self.c_fw * p_w * phi / (self.eta_w * f_n)).exp();
        Ok(0.297 / self.c_fw
            * d_wn.powf(1.5)
            * f_n
            * x.sqrt()
            * psi.powf(2.0 / 3.0)
            * yield_term
            * damping_term)
    }

    pub fn power(&self, p_w: f64, d_wn: f64) -> f64 {
        WJM_POWER_COEFF * d_wn * d_wn * p_w.powf(1.5) / self.p_max - 1.0
    }
}

/// Variables ordered `(P_w, d_wn, f_n, X)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Wjm(pub WjmConstants);

impl Model for Wjm {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        let c = &self.0;
        let objective = c
            .mrr(x[0], x[1], x[2], x[3])
            .map_err(|reason| EvalError::new(x, reason))?;
        Ok(Evaluation {
            objective,
            constraints: vec![c.power(x[0], x[1])],
        })
    }
}

/// Ultrasonic machining.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsmConstants {
    /// Tool cross-section, mm².
    pub a_t: f64,
    /// Allowable surface roughness, μm.
    pub ra_max: f64,
    /// Flow stress of the work material, MPa.
    pub sigma_fw: f64,
    /// Grain-size proportionality constant, mm⁻¹.
    pub k_usm: f64,
    /// Flow stress of the abrasive, MPa.
    pub sigma_ft: f64,
}

impl Default for UsmConstants {
    fn default() -> Self {
        Self {
            a_t: 20.0,
            ra_max: 0.8,
            sigma_fw: 6900.0,
            k_usm: 0.1,
            sigma_ft: 28000.0,
        }
    }
}

impl UsmConstants {
    /// Work-to-abrasive flow stress ratio.
    pub fn lambda(&self) -> f64 {
        self.sigma_fw / self.sigma_ft
    }

    pub fn mrr_prefactor(&self) -> f64 {
        4.963 * self.a_t.powf(0.25) * self.k_usm.powf(0.75)
            / (self.sigma_fw * (1.0 + self.lambda())).powf(0.75)
    }

    pub fn mrr(&self, a_v: f64, f_v: f64, d_m: f64, c_av: f64, f_s: f64) -> f64 {
        self.mrr_prefactor() * c_av.powf(0.25) * f_s.powf(0.75) * a_v.powf(0.75) * d_m * f_v
    }

    /// Surface roughness constraint; independent of `f_v`.
    pub fn roughness(&self, a_v: f64, _f_v: f64, d_m: f64, c_av: f64, f_s: f64) -> f64 {
        1154.7 / ((self.a_t * self.sigma_fw * (1.0 + self.lambda())).sqrt() * self.ra_max)
            * (f_s * a_v * d_m / c_av).sqrt()
            - 1.0
    }
}

/// Variables ordered `(A_v, f_v, d_m, C_av, F_s)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Usm(pub UsmConstants);

impl Model for Usm {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        let c = &self.0;
        Ok(Evaluation {
            objective: c.mrr(x[0], x[1], x[2], x[3], x[4]),
            constraints: vec![c.roughness(x[0], x[1], x[2], x[3], x[4])],
        })
    }
}

/// Surface grinding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrindingConstants {
    /// Surface roughness limit, μm.
    pub sr_max: f64,
    /// Flaw count limit.
    pub nd_max: f64,
}

impl Default for GrindingConstants {
    fn default() -> Self {
        Self {
            sr_max: 0.3,
            nd_max: 7.0,
        }
    }
}

impl GrindingConstants {
    pub fn mrr(&self, f_r: f64, d_c: f64, _grit: f64) -> f64 {
        f_r * d_c
    }

    // 0.7071 is a fitted exponent, not 1/sqrt(2)
    #[allow(clippy::approx_constant)]
    pub fn surface_roughness(&self, f_r: f64, d_c: f64, grit: f64) -> f64 {
        0.145 * d_c.powf(0.1939) * f_r.powf(0.7071) * grit.powf(-0.2343)
    }

    pub fn flaw_count(&self, f_r: f64, d_c: f64) -> f64 {
        29.67 * d_c.powf(0.4167) * f_r.powf(0.8333)
    }

    pub fn sr_constraint(&self, f_r: f64, d_c: f64, grit: f64) -> f64 {
        self.surface_roughness(f_r, d_c, grit) / self.sr_max - 1.0
    }

    pub fn nd_constraint(&self, f_r: f64, d_c: f64) -> f64 {
        self.flaw_count(f_r, d_c) / self.nd_max - 1.0
    }
}

/// Variables ordered `(f_r, d_c, M)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Grinding(pub GrindingConstants);

impl Model for Grinding {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        let c = &self.0;
        Ok(Evaluation {
            objective: c.mrr(x[0], x[1], x[2]),
            constraints: vec![
                c.sr_constraint(x[0], x[1], x[2]),
                c.nd_constraint(x[0], x[1]),
            ],
        })
    }
}

//! The two-term resolution on the projective line, with formal generator
//! `θ = dz/z`: level-1 connections `0` and `t_1 θ`.

use crate::algebra::{int, FormPolynomial};
use crate::error::Result;
use crate::simplicial::{curvature, epsilon, fibre_integrate_form, SimplicialLevelForm};

/// Name of the closed central generator.
pub const THETA: &str = "θ";

/// Term ordering used for the reported signs.
pub const TERM_ORDER: &str = "t^a word dt_S";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenReport {
    pub term_order: &'static str,
    /// Curvatures of the level-1 connections `0` and `t_1 θ`.
    pub curvatures: [FormPolynomial; 2],
    /// Every power `κ^j`, `j ≥ 2`, of either curvature vanishes.
    pub higher_powers_vanish: bool,
    /// `∫_{Δ^1} κ` for each connection.
    pub fibre_integrals: [FormPolynomial; 2],
    /// `1 + Σ_{j≥1} ∫ ε_j κ^j` for each connection.
    pub totals: [FormPolynomial; 2],
    /// `totals[0] - totals[1]`.
    pub alternating_sum: FormPolynomial,
}

impl GreenReport {
    /// The Chern character up to the index-parity convention of the
    /// alternating sum: `±θ`, reported as `θ`.
    pub fn chern_character_magnitude(&self) -> FormPolynomial {
        let sign = self.alternating_sum.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(|| int(1));
        if sign < int(0) {
            self.alternating_sum.neg()
        } else {
            self.alternating_sum.clone()
        }
    }
}

pub fn green_p1_example() -> Result<GreenReport> {
    let theta = FormPolynomial::closed(THETA);
    let connections = [FormPolynomial::zero(), FormPolynomial::t(1).mul(&theta)];
    let curvatures = connections.clone().map(|c| curvature(&c));
    let higher_powers_vanish = curvatures.iter().all(|k| k.mul(k).is_zero());
    let integrate = |f: &FormPolynomial| fibre_integrate_form(&SimplicialLevelForm { p: 1, value: f.clone() });
    let fibre_integrals = [integrate(&curvatures[0])?, integrate(&curvatures[1])?];
    let mut totals = [FormPolynomial::one(), FormPolynomial::one()];
    for (total, kappa) in totals.iter_mut().zip(&curvatures) {
        let mut power = FormPolynomial::one();
        for j in 1..=2 {
            power = power.mul(kappa);
            total.add_assign(&integrate(&power.scale(&int(epsilon(j))))?);
        }
    }
    let alternating_sum = totals[0].sub(&totals[1]);
    Ok(GreenReport { term_order: TERM_ORDER, curvatures, higher_powers_vanish, fibre_integrals, totals, alternating_sum })
}

//! Simplicial Chern–Weil: the barycentric connection on `N_p × Δ^p`, its
//! curvature, traced powers and fibre integration over the simplex.

use std::collections::HashMap;

use num::{BigInt, One};
use rayon::prelude::*;

use crate::algebra::{int, FormPolynomial, Monomial, Rational};
use crate::cech::{CechCochain, LiftTuple};
use crate::error::{Error, Result};
use crate::trace::TracePolynomial;

/// One level `ω_p` of a simplicial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialLevelForm {
    pub p: usize,
    pub value: FormPolynomial,
}

/// One level of a traced simplicial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedLevelForm {
    pub p: usize,
    pub value: TracePolynomial,
}

/// `ω̄_p = Σ_{i=1}^p t_i B_i`.
pub fn barycentric_connection(p: usize) -> SimplicialLevelForm {
    let mut value = FormPolynomial::zero();
    for i in 1..=p as u32 {
        value.add_assign(&FormPolynomial::t(i).mul(&FormPolynomial::omega(i)));
    }
    SimplicialLevelForm { p, value }
}

/// Curvature `dω̄ + ω̄²` of a connection form.
pub fn curvature(connection: &FormPolynomial) -> FormPolynomial {
    connection.differential().add(&connection.mul(connection))
}

/// `κ_p = dω̄_p + ω̄_p ω̄_p`.
pub fn barycentric_curvature(p: usize) -> SimplicialLevelForm {
    SimplicialLevelForm { p, value: curvature(&barycentric_connection(p).value) }
}

/// `ε_k = (-1)^{k(k-1)/2}`.
pub fn epsilon(k: usize) -> i64 {
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `κ^k`, dropping every partial product that can no longer reach `min_dt`
/// simplex directions (each factor of `κ` carries at most one `dt`).
fn pruned_power(kappa: &FormPolynomial, k: usize, min_dt: usize) -> FormPolynomial {
    let mut acc = FormPolynomial::one();
    for done in 1..=k {
        let remaining = k - done;
        acc = acc.mul(kappa).filter(|m| m.dt().len() + remaining >= min_dt);
    }
    acc
}

/// `ε_k tr(κ_p^k)`.
pub fn simplicial_atiyah_power(k: usize, p: usize) -> TracedLevelForm {
    let kappa = barycentric_curvature(p).value;
    let power = kappa.pow(k as u32).scale(&int(epsilon(k)));
    TracedLevelForm { p, value: TracePolynomial::trace(&power) }
}

/// The part of `ε_k tr(κ_p^k)` of type `(2k - p, p)`, which is all that
/// fibre integration sees.
pub fn simplicial_atiyah_power_top(k: usize, p: usize) -> TracedLevelForm {
    let kappa = barycentric_curvature(p).value;
    let power = pruned_power(&kappa, k, p).filter(|m| m.dt().len() == p).scale(&int(epsilon(k)));
    TracedLevelForm { p, value: TracePolynomial::trace(&power) }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `∫_{Δ^p} Π t_i^{a_i} dt_1 … dt_p = Π a_i! / (p + Σ a_i)!`.
pub fn monomial_simplex_integral(p: usize, a: &[u32]) -> Result<Rational> {
    if a.len() != p {
        return Err(Error::ExponentLength { found: a.len(), p });
    }
    let num = a.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    let den = factorial(p as u32 + a.iter().sum::<u32>());
    Ok(Rational::new(num, den))
}

/// Memoized simplex integrals, keyed by level and sorted exponents.
#[derive(Clone, Debug, Default)]
pub struct SimplexIntegralTable {
    cache: HashMap<(usize, Vec<u32>), Rational>,
}

impl SimplexIntegralTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, p: usize, a: &[u32]) -> Result<Rational> {
        if a.len() != p {
            return Err(Error::ExponentLength { found: a.len(), p });
        }
        let mut key = a.to_vec();
        key.sort_unstable();
        if let Some(v) = self.cache.get(&(p, key.clone())) {
            return Ok(v.clone());
        }
        let v = monomial_simplex_integral(p, &key)?;
        self.cache.insert((p, key), v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

/// Integrate one term over `Δ^p`: returns the scalar, or `None` if the term
/// is not of type `(r - p, p)` with `dt`-set exactly `{1..p}`.
fn integrate_term(
    table: &mut SimplexIntegralTable,
    m: &Monomial,
    c: &Rational,
    r: usize,
    p: usize,
) -> Result<Option<Rational>> {
    if m.degree() != r {
        return Err(Error::NotHomogeneous(r));
    }
    let full = m.dt().len() == p && m.dt().iter().enumerate().all(|(i, &j)| j as usize == i + 1);
    if !full {
        return Ok(None);
    }
    let mut a = vec![0u32; p];
    for &(i, e) in m.t_exponents() {
        let i = i as usize;
        if i == 0 || i > p {
            return Err(Error::LetterOutOfRange { index: i as u32, p });
        }
        a[i - 1] = e;
    }
    let orientation = if ((r - p) * p).is_multiple_of(2) { 1 } else { -1 };
    Ok(Some(c * table.get(p, &a)? * int(orientation)))
}

/// Total degree of a form, or `None` for zero.
fn homogeneous_degree<'a>(mut terms: impl Iterator<Item = &'a Monomial>) -> Result<Option<usize>> {
    let Some(first) = terms.next() else { return Ok(None) };
    let r = first.degree();
    if terms.any(|m| m.degree() != r) {
        return Err(Error::NotHomogeneous(r));
    }
    Ok(Some(r))
}

/// Fibre integration of a traced level form of total degree `r` over `Δ^p`,
/// giving a `(p, r - p)` Čech cochain.
pub fn fibre_integrate_level(f: &TracedLevelForm, p: usize) -> Result<CechCochain> {
    let mut table = SimplexIntegralTable::new();
    fibre_integrate_level_with(&mut table, f, p)
}

pub fn fibre_integrate_level_with(
    table: &mut SimplexIntegralTable,
    f: &TracedLevelForm,
    p: usize,
) -> Result<CechCochain> {
    if f.p != p {
        return Err(Error::InvalidBidegree { p: f.p, q: 0, reason: "form lives on a different simplicial level" });
    }
    let Some(r) = homogeneous_degree(f.value.terms().map(|(m, _)| m))? else {
        return Ok(CechCochain::zero(p, 0));
    };
    if r < p {
        return Ok(CechCochain::zero(p, 0));
    }
    let mut value = TracePolynomial::zero();
    for (m, c) in f.value.terms() {
        if let Some(v) = integrate_term(table, m, c, r, p)? {
            value.add_assign(&TracePolynomial::word(v, m.word()));
        }
    }
    CechCochain::new(p, r - p, value)
}

/// Fibre integration of an untraced level form, for forms built from
/// central letters such as `θ`.
pub fn fibre_integrate_form(f: &SimplicialLevelForm) -> Result<FormPolynomial> {
    let p = f.p;
    let Some(r) = homogeneous_degree(f.value.terms().map(|(m, _)| m))? else {
        return Ok(FormPolynomial::zero());
    };
    let mut table = SimplexIntegralTable::new();
    let mut out = FormPolynomial::zero();
    if r < p {
        return Ok(out);
    }
    for (m, c) in f.value.terms() {
        if let Some(v) = integrate_term(&mut table, m, c, r, p)? {
            out.add_assign(&FormPolynomial::word(v, m.word().to_vec()));
        }
    }
    Ok(out)
}

/// The Čech components `∫_{Δ^p} ε_k tr(κ_p^k)` for `p = 1..k`.
pub fn simplicial_atiyah_cochain(k: usize) -> Result<LiftTuple> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let components = (1..=k)
        .into_par_iter()
        .map(|p| fibre_integrate_level(&simplicial_atiyah_power_top(k, p), p))
        .collect::<Result<Vec<_>>>()?;
    LiftTuple::new(k, components)
}

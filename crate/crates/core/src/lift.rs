//! Lifting `tr expat^k` to a closed element of the Čech–de Rham total complex
//! by exact linear algebra.
//!
//! Starting from the cocycle `c_k`, each step solves `δ c_{i-1} = s_i · d c_i`
//! over the basis of cyclic trace monomials of the right bidegree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;
use rayon::prelude::*;

use crate::algebra::{int, Letter, Rational};
use crate::cech::{atiyah_cocycle, cech_delta, CechCochain, LiftTuple};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::trace::{normalize_trace_word, TracePolynomial, TraceWord};

/// Tag naming the total-differential convention `D = δ + (-1)^p d`.
pub const SIGN_CONVENTION: &str = "delta_plus_(-1)^p_d";

/// Largest `k` accepted by default.
pub const DEFAULT_MAX_K: usize = 4;

/// Sign `s_i` in the staircase `δ c_{i-1} = s_i · d c_i`. The
/// `(i, 2k-i+1)` component of `D c` is `δ c_{i-1} + (-1)^i d c_i`.
pub fn staircase_sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Canonical nonzero cyclic classes of length-`q` words in `B_1..B_p`, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct TraceBasis {
    p: usize,
    q: usize,
    elements: Vec<TraceWord>,
    index: HashMap<Vec<Letter>, usize>,
}

impl TraceBasis {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> &[TraceWord] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, word: &[Letter]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Coordinates of a `(p, q)` cochain in this basis.
    pub fn coordinates(&self, c: &CechCochain) -> Result<Vec<Rational>> {
        if (c.p(), c.q()) != (self.p, self.q) {
            return Err(Error::InvalidBidegree { p: c.p(), q: c.q(), reason: "does not match the basis" });
        }
        let mut x = vec![Rational::zero(); self.len()];
        for (m, v) in c.value().terms() {
            let i = self.position(m.word()).expect("canonical word of matching bidegree lies in the basis");
            x[i] = v.clone();
        }
        Ok(x)
    }

    pub fn cochain(&self, x: &[Rational]) -> CechCochain {
        let mut value = TracePolynomial::zero();
        for (w, v) in self.elements.iter().zip(x) {
            value.add_assign(&TracePolynomial::word(v.clone(), w.letters()));
        }
        CechCochain::new(self.p, self.q, value).expect("basis words are in range")
    }
}

/// Enumerate the cyclic trace-monomial basis of bidegree `(p, q)`.
pub fn enumerate_trace_basis(p: usize, q: usize) -> Result<TraceBasis> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidBidegree { p, q, reason: "trace bases need p >= 1 and q >= 1" });
    }
    let mut classes = BTreeSet::new();
    let mut digits = vec![0usize; q];
    loop {
        let word: Vec<Letter> = digits.iter().map(|&d| Letter::Omega(d as u32 + 1)).collect();
        if let Some(st) = normalize_trace_word(&word) {
            classes.insert(st.word);
        }
        // odometer
        let mut pos = q;
        loop {
            if pos == 0 {
                let elements: Vec<TraceWord> = classes.into_iter().collect();
                let index = elements.iter().enumerate().map(|(i, w)| (w.letters().to_vec(), i)).collect();
                return Ok(TraceBasis { p, q, elements, index });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// The Čech differential `(p, q) → (p+1, q)` as an exact matrix in the two
/// trace bases.
#[derive(Clone, Debug)]
pub struct DeltaMatrix {
    pub domain: TraceBasis,
    pub codomain: TraceBasis,
    pub matrix: SparseMatrix,
}

impl DeltaMatrix {
    pub fn build(p: usize, q: usize) -> Result<Self> {
        let domain = enumerate_trace_basis(p, q)?;
        let codomain = enumerate_trace_basis(p + 1, q)?;
        let columns: Vec<BTreeMap<usize, Rational>> = domain
            .elements()
            .par_iter()
            .map(|w| {
                let c = CechCochain::new(p, q, TracePolynomial::word(int(1), w.letters())).expect("basis word");
                let image = cech_delta(&c);
                image
                    .value()
                    .terms()
                    .map(|(m, v)| (codomain.position(m.word()).expect("codomain word"), v.clone()))
                    .collect()
            })
            .collect();
        let matrix = SparseMatrix::new(codomain.len(), columns);
        Ok(DeltaMatrix { domain, codomain, matrix })
    }

    /// `δ` of a domain cochain, computed through the matrix.
    pub fn apply(&self, c: &CechCochain) -> Result<CechCochain> {
        let x = self.domain.coordinates(c)?;
        Ok(self.codomain.cochain(&self.matrix.apply(&x)))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain.len() - self.rank()
    }
}

/// Result of one staircase step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Solved(StepSolution),
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSolution {
    pub cochain: CechCochain,
    pub stats: StepStats,
}

/// Dimensions of one linear solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepStats {
    pub p: usize,
    pub q: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

/// Find `c` of bidegree `(p, q)` with `δ c = target`, free variables zeroed.
pub fn solve_lift_step(target: &CechCochain, p: usize) -> Result<StepOutcome> {
    if target.p() != p + 1 {
        return Err(Error::InvalidBidegree { p: target.p(), q: target.q(), reason: "target must have Čech degree p + 1" });
    }
    let q = target.q();
    let delta = DeltaMatrix::build(p, q)?;
    let b = delta.codomain.coordinates(target)?;
    let outcome = match delta.matrix.solve(&b) {
        None => StepOutcome::Infeasible,
        Some(sol) => StepOutcome::Solved(StepSolution {
            cochain: delta.domain.cochain(&sol.x),
            stats: StepStats {
                p,
                q,
                domain_dim: delta.domain.len(),
                codomain_dim: delta.codomain.len(),
                rank: sol.rank,
                kernel_dim: delta.domain.len() - sol.rank,
            },
        }),
    };
    Ok(outcome)
}

/// A computed lift with the dimensions of every solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub tuple: LiftTuple,
    pub steps: Vec<StepStats>,
}

/// Lift `tr expat^k` to a closed element `(c_1, …, c_k)` of total degree `2k`.
pub fn lift_exponential_atiyah(k: usize) -> Result<Lift> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let mut components = vec![CechCochain::zero(0, 0); k];
    components[k - 1] = atiyah_cocycle(k);
    let mut steps = Vec::new();
    for i in (2..=k).rev() {
        let target = components[i - 1].differential().scale(&int(staircase_sign(i)));
        match solve_lift_step(&target, i - 1)? {
            StepOutcome::Solved(sol) => {
                components[i - 2] = sol.cochain;
                steps.push(sol.stats);
            }
            StepOutcome::Infeasible => return Err(Error::Infeasible { p: i - 1 }),
        }
    }
    debug_assert!(components[0].differential().is_zero());
    Ok(Lift { tuple: LiftTuple::new(k, components)?, steps })
}

/// One equation of the staircase together with its residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub equation: String,
    pub value: CechCochain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub convention: &'static str,
    pub residuals: Vec<Residual>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_zero())
    }
}

/// Check that the tuple is closed under `D = δ + (-1)^p d`: every square of
/// the staircase `δ c_{i-1} = s_i d c_i` commutes, `δ c_k = 0` and `d c_1 = 0`.
pub fn verify_total_closed(t: &LiftTuple) -> ClosureReport {
    let k = t.k();
    let mut residuals = Vec::new();
    residuals.push(Residual { equation: "d c_1 = 0".into(), value: t.component(1).differential() });
    for i in 2..=k {
        let lhs = cech_delta(t.component(i - 1));
        let rhs = t.component(i).differential().scale(&int(staircase_sign(i)));
        let sign = if staircase_sign(i) < 0 { "-" } else { "" };
        residuals.push(Residual { equation: format!("delta c_{} = {sign}d c_{i}", i - 1), value: lhs.sub(&rhs) });
    }
    residuals.push(Residual { equation: format!("delta c_{k} = 0"), value: cech_delta(t.component(k)) });
    ClosureReport { convention: SIGN_CONVENTION, residuals }
}

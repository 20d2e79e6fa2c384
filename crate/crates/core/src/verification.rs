//! Cross-checks between the two constructions: agreement up to
//! skew-symmetrisation, the free-algebra permutation identity behind it, and
//! the leading-coefficient law.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num::{BigInt, One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{int, Letter, Rational};
use crate::cech::{atiyah_cocycle, Alternator, LiftTuple};
use crate::error::{Error, Result};
use crate::lift::lift_exponential_atiyah;
use crate::linalg::SparseMatrix;
use crate::perm::{factorial, signed_permutations};
use crate::simplicial::simplicial_atiyah_cochain;

/// Largest `k` accepted by [`skew_eigenspace_dimension`].
pub const MAX_EIGENSPACE_K: usize = 4;

/// Linear combination of plain words in free variables `x_0, x_1, …`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeWordPolynomial {
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl FreeWordPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(int(1), Vec::new())
    }

    pub fn variable(i: u8) -> Self {
        Self::word(int(1), vec![i])
    }

    pub fn word(coeff: Rational, word: Vec<u8>) -> Self {
        let mut out = Self::zero();
        out.add_term(coeff, word);
        out
    }

    pub fn add_term(&mut self, coeff: Rational, word: Vec<u8>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u8]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, v) in &rhs.terms {
            out.add_term(v.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&int(-1)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, v1) in &self.terms {
            for (w2, v2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(v1 * v2, w);
            }
        }
        out
    }

    /// Rename variables by `x_i ↦ x_{σ(i)}`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(v.clone(), w.iter().map(|&i| sigma[i as usize] as u8).collect());
        }
        out
    }
}

/// `x_a - x_b`.
fn difference(a: usize, b: usize) -> FreeWordPolynomial {
    FreeWordPolynomial::variable(a as u8).sub(&FreeWordPolynomial::variable(b as u8))
}

/// `Σ_η sgn(η) Π_{i=1}^k (x_{η(i)} - x_{η(0)})`.
pub fn identity_lhs(k: usize) -> FreeWordPolynomial {
    alternating_sum(k, |eta, i| difference(eta[i], eta[0]))
}

/// `Σ_η sgn(η) Π_{i=1}^k (x_{η(i)} - x_{η(i-1)})`.
pub fn identity_rhs(k: usize) -> FreeWordPolynomial {
    alternating_sum(k, |eta, i| difference(eta[i], eta[i - 1]))
}

fn alternating_sum(k: usize, factor: impl Fn(&[usize], usize) -> FreeWordPolynomial + Sync) -> FreeWordPolynomial {
    signed_permutations(k + 1)
        .par_iter()
        .map(|(eta, sign)| {
            let product = (1..=k).fold(FreeWordPolynomial::one(), |acc, i| acc.mul(&factor(eta, i)));
            product.scale(&int(*sign))
        })
        .reduce(FreeWordPolynomial::zero, |a, b| a.add(&b))
}

/// Whether `f` changes sign under every transposition of `x_0..x_k`.
pub fn is_alternating(f: &FreeWordPolynomial, k: usize) -> bool {
    transpositions(k + 1).iter().all(|tau| f.permute(tau) == f.scale(&int(-1)))
}

fn transpositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut tau: Vec<usize> = (0..n).collect();
            tau.swap(i, j);
            out.push(tau);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub k: usize,
    pub lhs: FreeWordPolynomial,
    pub rhs: FreeWordPolynomial,
    /// Coefficient of `x_1 x_2 ⋯ x_k` in each side.
    pub unit_coefficients: (Rational, Rational),
    /// The same coefficient in the `η = id` summand alone.
    pub identity_summand_coefficients: (Rational, Rational),
    pub alternating: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn permutation_identity_report(k: usize) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: usize::MAX });
    }
    let (lhs, rhs) = rayon::join(|| identity_lhs(k), || identity_rhs(k));
    let unit: Vec<u8> = (1..=k as u8).collect();
    let unit_coefficients = (lhs.coefficient(&unit), rhs.coefficient(&unit));
    let id: Vec<usize> = (0..=k).collect();
    let summand = |f: &dyn Fn(usize) -> FreeWordPolynomial| {
        (1..=k).fold(FreeWordPolynomial::one(), |acc, i| acc.mul(&f(i))).coefficient(&unit)
    };
    let identity_summand_coefficients =
        (summand(&|i| difference(id[i], id[0])), summand(&|i| difference(id[i], id[i - 1])));
    let alternating = is_alternating(&lhs, k) && is_alternating(&rhs, k);
    Ok(IdentityReport { k, lhs, rhs, unit_coefficients, identity_summand_coefficients, alternating })
}

/// Whether the two alternating sums agree as free polynomials.
pub fn permutation_identity_check(k: usize) -> Result<bool> {
    Ok(permutation_identity_report(k)?.holds())
}

/// Dimension of the joint `(-1)`-eigenspace of all transpositions acting on
/// the span of words of length `k` in `k` distinct variables among `x_0..x_k`.
pub fn skew_eigenspace_dimension(k: usize) -> Result<usize> {
    if k == 0 || k > MAX_EIGENSPACE_K {
        return Err(Error::KOutOfRange { k, max: MAX_EIGENSPACE_K });
    }
    let n = k + 1;
    // each such word is a permutation of 0..=k with its last letter dropped
    let words: Vec<Vec<u8>> =
        signed_permutations(n).into_iter().map(|(p, _)| p[..k].iter().map(|&i| i as u8).collect()).collect();
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let taus = transpositions(n);
    let columns = words
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut col = BTreeMap::new();
            for (t, tau) in taus.iter().enumerate() {
                let image: Vec<u8> = w.iter().map(|&i| tau[i as usize] as u8).collect();
                let row = |i: usize| t * words.len() + i;
                *col.entry(row(j)).or_insert_with(Rational::zero) += int(1);
                *col.entry(row(index[image.as_slice()])).or_insert_with(Rational::zero) += int(1);
            }
            col.retain(|_, v: &mut Rational| !v.is_zero());
            col
        })
        .collect();
    let matrix = SparseMatrix::new(taus.len() * words.len(), columns);
    Ok(words.len() - matrix.rank())
}

/// How one Čech component of the two constructions compares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentAgreement {
    pub p: usize,
    pub on_the_nose: bool,
    pub after_alt: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub k: usize,
    /// `Alt` of the top simplicial component equals `Alt(atiyah_cocycle(k))`.
    pub top: bool,
    pub components: Vec<ComponentAgreement>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.top
    }

    pub fn component(&self, p: usize) -> &ComponentAgreement {
        &self.components[p - 1]
    }
}

/// Compare two tuples of the same `k` component by component.
pub fn compare_tuples(simplicial: &LiftTuple, manual: &LiftTuple) -> Vec<ComponentAgreement> {
    let mut alt = Alternator::new();
    (1..=simplicial.k())
        .map(|p| {
            let (s, m) = (simplicial.component(p), manual.component(p));
            let on_the_nose = s == m;
            let after_alt = on_the_nose || alt.apply(s) == alt.apply(m);
            ComponentAgreement { p, on_the_nose, after_alt }
        })
        .collect()
}

/// Compare the simplicial construction with the linear-algebra lift.
pub fn agreement_check(k: usize) -> Result<AgreementReport> {
    let (simplicial, manual) = rayon::join(|| simplicial_atiyah_cochain(k), || lift_exponential_atiyah(k));
    let (simplicial, manual) = (simplicial?, manual?.tuple);
    let mut alt = Alternator::new();
    let top = alt.apply(simplicial.component(k)) == alt.apply(&atiyah_cocycle(k));
    Ok(AgreementReport { k, top, components: compare_tuples(&simplicial, &manual) })
}

/// `(k-1)! k! / (2k-1)!`.
pub fn leading_coefficient_law(k: usize) -> Rational {
    let f = |n: usize| BigInt::from(factorial(n));
    Rational::new(f(k - 1) * f(k), f(2 * k - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRow {
    pub k: usize,
    pub expected: Rational,
    pub lift: Rational,
    pub simplicial: Rational,
}

impl CoefficientRow {
    pub fn matches(&self) -> bool {
        self.lift.abs() == self.expected && self.simplicial.abs() == self.expected
    }
}

/// Coefficient of `tr(A^{2k-1})` in the Čech-degree-1 component of both
/// constructions, for `k = 1..=k_max`.
pub fn leading_coefficient_check(k_max: usize) -> Result<Vec<CoefficientRow>> {
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let word = vec![Letter::Omega(1); 2 * k - 1];
            let lift = lift_exponential_atiyah(k)?.tuple.component(1).coefficient(&word);
            let simplicial = simplicial_atiyah_cochain(k)?.component(1).coefficient(&word);
            Ok(CoefficientRow { k, expected: leading_coefficient_law(k), lift, simplicial })
        })
        .collect()
}

impl std::fmt::Display for FreeWordPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = w.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(" ");
            if !mag.is_one() || w.is_empty() {
                write!(f, "{mag}")?;
                if !w.is_empty() {
                    write!(f, " ")?;
                }
            }
            write!(f, "{word}")?;
        }
        Ok(())
    }
}

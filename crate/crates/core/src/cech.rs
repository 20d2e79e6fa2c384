//! Čech cochains in generic-entry form.
//!
//! A cochain of bidegree `(p, q)` is recorded by its value at a generic index
//! tuple `(α_0, …, α_p)`, written in the `α_0` trivialisation with
//! `B_i = ω_{α_0 α_i}`. Any other `ω_{α_a α_b}` is re-expressed through the
//! additive cocycle rule `ω_{α_a α_b} = B_b - B_a` (with `B_0 = 0`); the
//! conjugations by transition matrices drop out under the trace. The Čech
//! differential and the skew-symmetrisation then become substitutions.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{int, Letter, Monomial, Rational};
use crate::error::{Error, Result};
use crate::perm::{factorial, signed_permutations};
use crate::trace::TracePolynomial;

/// An element of `Č^p(Ω^q)` given by its trace polynomial in `B_1..B_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCochain {
    p: usize,
    q: usize,
    value: TracePolynomial,
}

impl CechCochain {
    pub fn new(p: usize, q: usize, value: TracePolynomial) -> Result<Self> {
        for (m, _) in value.terms() {
            if !m.is_holomorphic() {
                return Err(Error::NonHolomorphic(format!("{m:?}")));
            }
            if m.word().len() != q {
                return Err(Error::WrongFormDegree { found: m.word().len(), q });
            }
            for letter in m.word() {
                match letter {
                    Letter::Omega(i) if *i >= 1 && (*i as usize) <= p => {}
                    Letter::Omega(i) => return Err(Error::LetterOutOfRange { index: *i, p }),
                    Letter::Closed(name) => return Err(Error::NonHolomorphic(name.to_string())),
                }
            }
        }
        Ok(CechCochain { p, q, value })
    }

    pub fn zero(p: usize, q: usize) -> Self {
        CechCochain { p, q, value: TracePolynomial::zero() }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn value(&self) -> &TracePolynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CechCochain { p: self.p, q: self.q, value: self.value.scale(c) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.p, self.q), (rhs.p, rhs.q), "bidegree mismatch");
        CechCochain { p: self.p, q: self.q, value: self.value.add(&rhs.value) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.p, self.q), (rhs.p, rhs.q), "bidegree mismatch");
        CechCochain { p: self.p, q: self.q, value: self.value.sub(&rhs.value) }
    }

    /// The de Rham differential, landing in `(p, q + 1)`.
    pub fn differential(&self) -> Self {
        CechCochain { p: self.p, q: self.q + 1, value: self.value.differential() }
    }

    /// Coefficient of `tr(word)` in the canonical form.
    pub fn coefficient(&self, word: &[Letter]) -> Rational {
        self.value.coefficient_of_word(word)
    }
}

impl fmt::Display for CechCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn omega(i: usize) -> Letter {
    Letter::Omega(i as u32)
}

/// Image of `B_j` under the `m`-th face map.
fn face_image(m: usize, j: u32) -> Vec<(i64, Letter)> {
    let j = j as usize;
    if m == 0 {
        // ω_{α_1 α_{j+1}} = B_{j+1} - B_1
        vec![(1, omega(j + 1)), (-1, omega(1))]
    } else if j < m {
        vec![(1, omega(j))]
    } else {
        vec![(1, omega(j + 1))]
    }
}

/// The Čech differential `Σ_m (-1)^m (face m)`, landing in `(p + 1, q)`.
pub fn cech_delta(c: &CechCochain) -> CechCochain {
    let mut value = TracePolynomial::zero();
    for m in 0..=c.p + 1 {
        let face = c.value.substitute(|j| face_image(m, j));
        if m % 2 == 0 {
            value.add_assign(&face);
        } else {
            value = value.sub(&face);
        }
    }
    CechCochain { p: c.p + 1, q: c.q, value }
}

/// Image of `B_j = ω_{0 j}` under the reindexing `ω_{ab} ↦ ω_{σ(a)σ(b)}`.
fn permuted_image(sigma: &[usize], j: u32) -> Vec<(i64, Letter)> {
    let a = sigma[0];
    let b = sigma[j as usize];
    let mut out = Vec::with_capacity(2);
    if b != 0 {
        out.push((1, omega(b)));
    }
    if a != 0 {
        out.push((-1, omega(a)));
    }
    out
}

/// Apply the index permutation `σ` to a cochain of Čech degree `p`, without
/// sign.
pub fn reindex(c: &CechCochain, sigma: &[usize]) -> CechCochain {
    assert_eq!(sigma.len(), c.p + 1);
    CechCochain { p: c.p, q: c.q, value: c.value.substitute(|j| permuted_image(sigma, j)) }
}

/// `(1/(p+1)!) Σ_σ sgn(σ) σ·tr(word)` for a single canonical word.
fn alternate_word(p: usize, word: &[Letter]) -> TracePolynomial {
    let norm = Rational::new(1.into(), factorial(p + 1).into());
    let mut acc = TracePolynomial::zero();
    for (sigma, sign) in signed_permutations(p + 1) {
        let mut single = TracePolynomial::zero();
        single.add_raw(int(sign), word, &Monomial::one());
        acc.add_assign(&single.substitute(|j| permuted_image(&sigma, j)));
    }
    acc.scale(&norm)
}

/// Skew-symmetrisation `(1/(p+1)!) Σ_{σ ∈ S_{p+1}} sgn(σ) σ·c`.
pub fn skew_symmetrise(c: &CechCochain) -> CechCochain {
    let parts: Vec<TracePolynomial> = c
        .value
        .terms()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(m, coeff)| alternate_word(c.p, m.word()).scale(coeff))
        .collect();
    let mut value = TracePolynomial::zero();
    for part in &parts {
        value.add_assign(part);
    }
    CechCochain { p: c.p, q: c.q, value }
}

/// Skew-symmetrisation with a per-word cache, for repeated use at a fixed
/// Čech degree.
#[derive(Debug, Default)]
pub struct Alternator {
    cache: HashMap<(usize, Vec<Letter>), TracePolynomial>,
}

impl Alternator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn apply(&mut self, c: &CechCochain) -> CechCochain {
        let mut value = TracePolynomial::zero();
        for (m, coeff) in c.value.terms() {
            let key = (c.p, m.word().to_vec());
            let alt = self.cache.entry(key).or_insert_with(|| alternate_word(c.p, m.word()));
            value.add_assign(&alt.scale(coeff));
        }
        CechCochain { p: c.p, q: c.q, value }
    }
}

/// `tr(∏_{i=1}^k (B_i - B_{i-1}))` with `B_0 = 0`: the Čech representative of
/// the trace of the k-th exponential Atiyah class, as a `(k, k)` cochain.
pub fn atiyah_cocycle(k: usize) -> CechCochain {
    assert!(k >= 1);
    let factors: Vec<Vec<(i64, Letter)>> = (1..=k)
        .map(|i| {
            let mut f = vec![(1, omega(i))];
            if i > 1 {
                f.push((-1, omega(i - 1)));
            }
            f
        })
        .collect();
    let mut value = TracePolynomial::zero();
    let mut acc: Vec<(i64, Vec<Letter>)> = vec![(1, Vec::new())];
    for f in &factors {
        acc = acc
            .iter()
            .flat_map(|(c, w)| {
                f.iter().map(move |(k, l)| {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    (c * k, w2)
                })
            })
            .collect();
    }
    for (c, w) in acc {
        value.add_raw(int(c), &w, &Monomial::one());
    }
    CechCochain { p: k, q: k, value }
}

/// A single-word cochain `coeff · tr(word)`, bidegree inferred from the word.
pub fn word_cochain(p: usize, coeff: Rational, word: &[u32]) -> CechCochain {
    let letters: Vec<Letter> = word.iter().map(|&i| Letter::Omega(i)).collect();
    let value = TracePolynomial::word(coeff, &letters);
    CechCochain::new(p, word.len(), value).expect("letters within range")
}

/// Components `c_1, …, c_k` of a total-degree-`2k` element, `c_i` of bidegree
/// `(i, 2k - i)`. The `(0, 2k)` component and those of Čech degree above `k`
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTuple {
    k: usize,
    components: Vec<CechCochain>,
}

impl LiftTuple {
    pub fn new(k: usize, components: Vec<CechCochain>) -> Result<Self> {
        if k == 0 || components.len() != k {
            return Err(Error::InvalidBidegree { p: components.len(), q: 2 * k, reason: "expected k components" });
        }
        for (n, c) in components.iter().enumerate() {
            let (ep, eq) = (n + 1, 2 * k - n - 1);
            if (c.p(), c.q()) != (ep, eq) {
                return Err(Error::TupleShape { index: n + 1, p: c.p(), q: c.q(), expected_p: ep, expected_q: eq });
            }
        }
        Ok(LiftTuple { k, components })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &[CechCochain] {
        &self.components
    }

    /// `c_p`, the component of Čech degree `p` (`1 ≤ p ≤ k`).
    pub fn component(&self, p: usize) -> &CechCochain {
        &self.components[p - 1]
    }

    pub fn into_components(self) -> Vec<CechCochain> {
        self.components
    }
}

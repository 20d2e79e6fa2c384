//! Signed cyclic trace words and trace polynomials.
//!
//! For matrices of 1-forms, `tr(A_1 A_2 ⋯ A_m) = (-1)^{m-1} tr(A_2 ⋯ A_m A_1)`.
//! A trace word is stored by its lexicographically minimal rotation, with the
//! rotation sign folded into the coefficient. When two rotations reach the
//! minimal word with opposite signs the trace vanishes; in particular
//! `tr(A^{2k}) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{
    expand_word, fmt_rational_coeff, int, normalize_central, render_scalar_part, render_word,
    FormPolynomial, Letter, Monomial, Rational,
};

/// Canonical representative of a cyclic class of words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TraceWord {
    letters: Vec<Letter>,
}

/// A canonical trace word together with the sign relating it to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTrace {
    pub negative: bool,
    pub word: TraceWord,
}

impl SignedTrace {
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl TraceWord {
    /// The unit trace word, standing for the scalar 1.
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Rotate left by one (`A_1 ⋯ A_m ↦ A_2 ⋯ A_m A_1`), without sign.
    pub fn rotated(letters: &[Letter]) -> Vec<Letter> {
        let mut w = letters.to_vec();
        if !w.is_empty() {
            w.rotate_left(1);
        }
        w
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({})", render_word(&self.letters))
    }
}

/// Canonicalize `tr(letters)`. Returns `None` when the trace is identically
/// zero.
///
/// Closed letters are central and are pulled to the end first; the remaining
/// endomorphism-valued part is rotated to its minimal form.
pub fn normalize_trace_word(letters: &[Letter]) -> Option<SignedTrace> {
    let mut word = letters.to_vec();
    let mut negative = normalize_central(&mut word)?;
    let split = word.iter().position(Letter::is_closed).unwrap_or(word.len());
    let m = split;
    if m > 1 {
        let core = &word[..m];
        let mut best = 0usize;
        for r in 1..m {
            if core[r..].iter().chain(&core[..r]).lt(core[best..].iter().chain(&core[..best])) {
                best = r;
            }
        }
        let period = (1..=m)
            .find(|&d| m.is_multiple_of(d) && core[d..].iter().chain(&core[..d]).eq(core.iter()))
            .unwrap_or(m);
        if m.is_multiple_of(2) && period % 2 == 1 {
            return None;
        }
        if m.is_multiple_of(2) && best % 2 == 1 {
            negative = !negative;
        }
        word[..m].rotate_left(best);
    }
    Some(SignedTrace { negative, word: TraceWord { letters: word } })
}

/// Exact combination of `t^a · tr(word) · dt_S`, one trace per term.
///
/// Terms are keyed by a [`Monomial`] whose word is a canonical trace word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TracePolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Apply the trace to every term of a form polynomial.
    pub fn trace(f: &FormPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in f.terms() {
            out.add_raw(c.clone(), m.word(), m);
        }
        out
    }

    /// `coeff · tr(word)` with no scalar part.
    pub fn word(coeff: Rational, word: &[Letter]) -> Self {
        let mut out = Self::zero();
        out.add_raw(coeff, word, &Monomial::one());
        out
    }

    /// Add `coeff · t^a tr(word) dt_S`, where the scalar part is taken from
    /// `shape`.
    pub fn add_raw(&mut self, coeff: Rational, word: &[Letter], shape: &Monomial) {
        if let Some(st) = normalize_trace_word(word) {
            let c = if st.negative { -coeff } else { coeff };
            self.add_term(c, shape.with_word(st.word.letters));
        }
    }

    /// Add a term whose monomial already carries a canonical trace word.
    pub fn add_term(&mut self, coeff: Rational, m: Monomial) {
        use num::Zero;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
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

    /// Coefficient of `tr(word)` (no scalar part), after canonicalizing `word`.
    pub fn coefficient_of_word(&self, word: &[Letter]) -> Rational {
        use num::Zero;
        match normalize_trace_word(word) {
            None => Rational::zero(),
            Some(st) => {
                let m = Monomial::one().with_word(st.word.letters);
                let c = self.terms.get(&m).cloned().unwrap_or_else(Rational::zero);
                if st.negative {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(v * c, m.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }

    /// `d tr(·) = tr(d ·)`, re-canonicalized.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let as_form = FormPolynomial::zero();
            let mut single = as_form;
            single.add_term(c.clone(), m.clone());
            for (dm, dc) in single.differential().terms() {
                out.add_raw(dc.clone(), dm.word(), dm);
            }
        }
        out
    }

    pub fn type_component(&self, x_degree: usize, delta_degree: usize) -> Self {
        TracePolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (x_degree, delta_degree))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute every `B_j` inside the traces by a linear combination of
    /// letters, then re-canonicalize.
    pub fn substitute(&self, image: impl Fn(u32) -> Vec<(i64, Letter)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (k, word) in expand_word(m.word(), &image) {
                out.add_raw(c * int(k), &word, m);
            }
        }
        out
    }
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (t, dt) = render_scalar_part(m);
            let tr = if m.word().is_empty() { String::new() } else { format!("tr({})", render_word(m.word())) };
            let body: Vec<String> = [t, tr, dt].into_iter().filter(|s| !s.is_empty()).collect();
            fmt_rational_coeff(f, c, n == 0, body.is_empty())?;
            f.write_str(&body.join(" "))?;
        }
        Ok(())
    }
}

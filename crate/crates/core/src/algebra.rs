//! Graded non-commutative algebra of endomorphism-valued simplicial forms.
//!
//! Generators:
//!
//! * `B_i` ([`Letter::Omega`]): the connection difference `ω_{α_0 α_i}`, an
//!   endomorphism-valued holomorphic 1-form with `d B_i = -B_i B_i`;
//! * closed central letters ([`Letter::Closed`]): scalar 1-forms such as
//!   `dz/z`, closed and square-zero;
//! * `t_i`: barycentric coordinates of the simplex, degree 0;
//! * `dt_i`: their differentials, degree `(0, 1)`.
//!
//! Every [`Monomial`] is stored in the layout `t^a · word · dt_S`. Products are
//! brought back into this layout with the Koszul sign `-1` for every
//! transposition of two odd factors. The index `0` never occurs: `t_0` and
//! `B_0 = ω_{α_0 α_0} = 0` are eliminated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar. No floating point is used anywhere in the crate.
pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A degree-1 letter of an endomorphism-valued word.
///
/// The derived order (all `Omega` by index, then `Closed` by name) is the
/// order used for canonical rotations and basis listings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Omega(u32),
    Closed(Arc<str>),
}

impl Letter {
    pub fn closed(name: &str) -> Self {
        Letter::Closed(Arc::from(name))
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Letter::Closed(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Omega(i) if (1..=26).contains(i) => {
                write!(f, "{}", char::from(b'A' + (*i as u8) - 1))
            }
            Letter::Omega(i) => write!(f, "B{i}"),
            Letter::Closed(name) => f.write_str(name),
        }
    }
}

/// Generators of the algebra, used to build polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    OmegaBase(u32),
    T(u32),
    Dt(u32),
    AbelianClosed(Arc<str>),
}

impl Generator {
    /// Total degree: 1 for the odd generators, 0 for `t_i`.
    pub fn degree(&self) -> usize {
        match self {
            Generator::T(_) => 0,
            _ => 1,
        }
    }
}

/// `t^a · word · dt_S` without its coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    word: Vec<Letter>,
    t: Vec<(u32, u32)>,
    dt: Vec<u32>,
}

/// Sort `items` by bubble transpositions, returning the parity of the number
/// of swaps, or `None` if two entries coincide.
fn sort_with_sign<T: Ord>(items: &mut [T]) -> Option<bool> {
    let mut odd = false;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            items.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if items.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// Move closed letters to the end of the word (sorted by name) using graded
/// commutativity. Returns the sign parity, or `None` when a closed letter is
/// repeated.
pub(crate) fn normalize_central(word: &mut Vec<Letter>) -> Option<bool> {
    if !word.iter().any(Letter::is_closed) {
        return Some(false);
    }
    let mut odd = false;
    let mut omegas_seen = 0usize;
    let mut omega_part = Vec::with_capacity(word.len());
    let mut closed_part = Vec::new();
    // a closed letter passes every omega letter to its right
    let total_omegas = word.iter().filter(|l| !l.is_closed()).count();
    for letter in word.drain(..) {
        if letter.is_closed() {
            if (total_omegas - omegas_seen) % 2 == 1 {
                odd = !odd;
            }
            closed_part.push(letter);
        } else {
            omegas_seen += 1;
            omega_part.push(letter);
        }
    }
    let sort_odd = sort_with_sign(&mut closed_part)?;
    omega_part.extend(closed_part);
    *word = omega_part;
    Some(odd ^ sort_odd)
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Build a monomial from raw parts, returning its sign in canonical
    /// layout, or `None` if it vanishes.
    pub fn from_parts(
        mut word: Vec<Letter>,
        t: &[(u32, u32)],
        dt: &[u32],
    ) -> Option<(bool, Monomial)> {
        let mut odd = normalize_central(&mut word)?;
        let mut dt = dt.to_vec();
        odd ^= sort_with_sign(&mut dt)?;
        let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
        for &(i, e) in t {
            *exps.entry(i).or_default() += e;
        }
        let t = exps.into_iter().filter(|&(_, e)| e > 0).collect();
        Some((odd, Monomial { word, t, dt }))
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn t_exponents(&self) -> &[(u32, u32)] {
        &self.t
    }

    pub fn dt(&self) -> &[u32] {
        &self.dt
    }

    /// `(X-degree, Δ-degree)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.word.len(), self.dt.len())
    }

    pub fn degree(&self) -> usize {
        self.word.len() + self.dt.len()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.t.is_empty() && self.dt.is_empty()
    }

    pub(crate) fn with_word(&self, word: Vec<Letter>) -> Self {
        Monomial { word, t: self.t.clone(), dt: self.dt.clone() }
    }

    /// Product in canonical layout. Returns `(odd sign, monomial)`.
    pub fn mul(&self, rhs: &Monomial) -> Option<(bool, Monomial)> {
        // rhs.word moves left past self.dt
        let mut odd = (self.dt.len() * rhs.word.len()) % 2 == 1;
        let mut word = Vec::with_capacity(self.word.len() + rhs.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&rhs.word);
        if self.word.iter().chain(&rhs.word).any(Letter::is_closed) {
            odd ^= normalize_central(&mut word)?;
        }
        let mut dt = Vec::with_capacity(self.dt.len() + rhs.dt.len());
        dt.extend_from_slice(&self.dt);
        dt.extend_from_slice(&rhs.dt);
        odd ^= sort_with_sign(&mut dt)?;
        let t = merge_exponents(&self.t, &rhs.t);
        Some((odd, Monomial { word, t, dt }))
    }

    /// `d` of the monomial as a list of `(coefficient, monomial)` pairs.
    fn differential(&self) -> Vec<(Rational, Monomial)> {
        let mut out = Vec::new();
        let word_odd = self.word.len() % 2 == 1;
        // d(t^a) · word · dt_S = Σ a_i t^{a - e_i} (-1)^{|word|} word dt_i dt_S
        for (pos, &(i, e)) in self.t.iter().enumerate() {
            let below = match self.dt.binary_search(&i) {
                Ok(_) => continue,
                Err(ix) => ix,
            };
            let mut t = self.t.clone();
            if e == 1 {
                t.remove(pos);
            } else {
                t[pos].1 -= 1;
            }
            let mut dt = self.dt.clone();
            dt.insert(below, i);
            let odd = word_odd ^ (below % 2 == 1);
            let c = int(if odd { -(e as i64) } else { e as i64 });
            out.push((c, Monomial { word: self.word.clone(), t, dt }));
        }
        for (c, word) in word_differential(&self.word) {
            out.push((c, self.with_word(word)));
        }
        out
    }
}

fn merge_exponents(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `d` of a plain word: `Σ_j (-1)^j w_<j · d(w_j) · w_>j` with `d B = -B B`.
/// Closed letters are annihilated. Output words keep closed letters at the end.
pub(crate) fn word_differential(word: &[Letter]) -> Vec<(Rational, Vec<Letter>)> {
    let mut out = Vec::new();
    for (j, letter) in word.iter().enumerate() {
        if letter.is_closed() {
            continue;
        }
        let mut w = Vec::with_capacity(word.len() + 1);
        w.extend_from_slice(&word[..j]);
        w.push(letter.clone());
        w.push(letter.clone());
        w.extend_from_slice(&word[j + 1..]);
        // -1 from d B = -B^2, times (-1)^j
        out.push((int(if j % 2 == 0 { -1 } else { 1 }), w));
    }
    out
}

/// Finite exact-rational combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl FormPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(c, Monomial::one());
        p
    }

    pub fn generator(g: Generator) -> Self {
        let (word, t, dt) = match g {
            Generator::OmegaBase(i) => (vec![Letter::Omega(i)], vec![], vec![]),
            Generator::AbelianClosed(name) => (vec![Letter::Closed(name)], vec![], vec![]),
            Generator::T(i) => (vec![], vec![(i, 1)], vec![]),
            Generator::Dt(i) => (vec![], vec![], vec![i]),
        };
        let mut p = Self::zero();
        p.add_term(int(1), Monomial { word, t, dt });
        p
    }

    pub fn omega(i: u32) -> Self {
        Self::generator(Generator::OmegaBase(i))
    }

    pub fn t(i: u32) -> Self {
        Self::generator(Generator::T(i))
    }

    pub fn dt(i: u32) -> Self {
        Self::generator(Generator::Dt(i))
    }

    pub fn closed(name: &str) -> Self {
        Self::generator(Generator::AbelianClosed(Arc::from(name)))
    }

    /// A single word `coeff · w` (closed letters are normalized).
    pub fn word(coeff: Rational, word: Vec<Letter>) -> Self {
        let mut p = Self::zero();
        if let Some((odd, m)) = Monomial::from_parts(word, &[], &[]) {
            p.add_term(if odd { -coeff } else { coeff }, m);
        }
        p
    }

    pub fn add_term(&mut self, coeff: Rational, m: Monomial) {
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

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormPolynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
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

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    /// Bilinear product with Koszul signs.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((odd, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(if odd { -c } else { c }, m);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Graded-Leibniz differential: `d B_i = -B_i²`, `d t_i = dt_i`,
    /// `d dt_i = 0`, closed letters are closed.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (dc, dm) in m.differential() {
                out.add_term(c * dc, dm);
            }
        }
        out
    }

    /// The sub-sum of terms of type `(x_degree, delta_degree)`.
    pub fn type_component(&self, x_degree: usize, delta_degree: usize) -> Self {
        self.filter(|m| m.bidegree() == (x_degree, delta_degree))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        FormPolynomial {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Substitute every `B_j` by a linear combination of letters.
    pub fn substitute(&self, image: impl Fn(u32) -> Vec<(i64, Letter)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (k, word) in expand_word(m.word(), &image) {
                if let Some((odd, mm)) = Monomial::from_parts(word, &m.t, &m.dt) {
                    let v = c * int(k);
                    out.add_term(if odd { -v } else { v }, mm);
                }
            }
        }
        out
    }
}

/// Expand a word after substituting each `B_j` by `image(j)`.
pub(crate) fn expand_word(
    word: &[Letter],
    image: &impl Fn(u32) -> Vec<(i64, Letter)>,
) -> Vec<(i64, Vec<Letter>)> {
    let mut acc: Vec<(i64, Vec<Letter>)> = vec![(1, Vec::with_capacity(word.len()))];
    for letter in word {
        let choices = match letter {
            Letter::Omega(j) => image(*j),
            Letter::Closed(_) => vec![(1, letter.clone())],
        };
        if choices.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for (c, w) in &acc {
            for (k, l) in &choices {
                let mut w2 = w.clone();
                w2.push(l.clone());
                next.push((c * k, w2));
            }
        }
        acc = next;
    }
    acc
}

pub(crate) fn fmt_rational_coeff(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool, bare: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if !a.is_one() || bare {
        write!(f, "{a}")?;
        if !bare {
            f.write_str(" ")?;
        }
    }
    Ok(())
}

/// Render a word with consecutive repeats collapsed, e.g. `A^2 B`.
pub fn render_word(word: &[Letter]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(word[i].to_string());
        } else {
            parts.push(format!("{}^{}", word[i], j - i));
        }
        i = j;
    }
    parts.join(" ")
}

pub(crate) fn render_scalar_part(m: &Monomial) -> (String, String) {
    let t = m
        .t
        .iter()
        .map(|&(i, e)| if e == 1 { format!("t{i}") } else { format!("t{i}^{e}") })
        .collect::<Vec<_>>()
        .join(" ");
    let dt = m.dt.iter().map(|i| format!("dt{i}")).collect::<Vec<_>>().join("^");
    (t, dt)
}

impl fmt::Display for FormPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (t, dt) = render_scalar_part(m);
            let body: Vec<String> =
                [t, render_word(&m.word), dt].into_iter().filter(|s| !s.is_empty()).collect();
            fmt_rational_coeff(f, c, n == 0, body.is_empty())?;
            f.write_str(&body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> FormPolynomial {
        FormPolynomial::omega(i)
    }

    #[test]
    fn dt_past_word_letter_flips_sign() {
        // (B1 dt1)(B2 dt2) = -(B1 B2) dt1 dt2
        let lhs = b(1).mul(&FormPolynomial::dt(1)).mul(&b(2).mul(&FormPolynomial::dt(2)));
        let expected = b(1).mul(&b(2)).mul(&FormPolynomial::dt(1)).mul(&FormPolynomial::dt(2)).neg();
        assert_eq!(lhs, expected);
        let (m, _) = lhs.terms().next().unwrap();
        assert_eq!(m.dt(), &[1, 2]);
        assert_eq!(m.word(), &[Letter::Omega(1), Letter::Omega(2)]);
        assert_eq!(lhs.coefficient(m), int(-1));
    }

    #[test]
    fn t_powers_add_and_dt_squares_vanish() {
        let t1 = FormPolynomial::t(1);
        let sq = t1.mul(&t1);
        let (m, c) = sq.terms().next().unwrap();
        assert_eq!(m.t_exponents(), &[(1, 2)]);
        assert_eq!(c, &int(1));
        assert!(FormPolynomial::dt(1).mul(&FormPolynomial::dt(1)).is_zero());
    }

    #[test]
    fn differential_of_generators() {
        assert_eq!(b(1).differential(), b(1).mul(&b(1)).neg());
        assert_eq!(FormPolynomial::t(3).differential(), FormPolynomial::dt(3));
        assert!(FormPolynomial::dt(2).differential().is_zero());
        assert!(FormPolynomial::closed("θ").differential().is_zero());
    }

    #[test]
    fn differential_of_t1_b1() {
        let f = FormPolynomial::t(1).mul(&b(1));
        let expected = FormPolynomial::t(1)
            .mul(&b(1))
            .mul(&b(1))
            .neg()
            .sub(&b(1).mul(&FormPolynomial::dt(1)));
        assert_eq!(f.differential(), expected);
        assert!(f.differential().differential().is_zero());
    }

    #[test]
    fn type_components() {
        let f = FormPolynomial::t(1).mul(&b(1)).mul(&b(1));
        assert_eq!(f.type_component(2, 0), f);
        assert!(f.type_component(1, 1).is_zero());
    }

    #[test]
    fn closed_letters_are_central_and_square_zero() {
        let th = FormPolynomial::closed("θ");
        assert!(th.mul(&th).is_zero());
        // θ B1 = -B1 θ
        assert_eq!(th.mul(&b(1)), b(1).mul(&th).neg());
        // θ dt1 = -dt1 θ in either order
        assert_eq!(th.mul(&FormPolynomial::dt(1)), FormPolynomial::dt(1).mul(&th).neg());
    }

    #[test]
    fn display() {
        let f = FormPolynomial::t(1).mul(&b(1)).mul(&b(1)).neg().sub(&b(1).mul(&FormPolynomial::dt(1)));
        assert_eq!(f.to_string(), "-A dt1 - t1 A^2");
        assert_eq!(FormPolynomial::zero().to_string(), "0");
        assert_eq!(FormPolynomial::constant(rat(1, 3)).to_string(), "1/3");
    }
}

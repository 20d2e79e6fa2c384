use atiyah_core::algebra::{int, FormPolynomial, Letter};
use atiyah_core::simplicial::{barycentric_connection, barycentric_curvature};
use atiyah_core::trace::{normalize_trace_word, TracePolynomial, TraceWord};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![(1u32..=3).prop_map(Letter::Omega), Just(Letter::closed("θ"))]
}

fn omega_letter() -> impl Strategy<Value = Letter> {
    (1u32..=3).prop_map(Letter::Omega)
}

/// One term `c · t^a · word · dt_S`, built only from public products.
fn term() -> impl Strategy<Value = FormPolynomial> {
    (
        -4i64..=4,
        prop::collection::vec((1u32..=3, 0u32..=2), 0..3),
        prop::collection::vec(letter(), 0..4),
        prop::collection::vec(1u32..=3, 0..3),
    )
        .prop_map(|(c, ts, word, dts)| {
            let mut f = FormPolynomial::constant(int(c));
            for (i, e) in ts {
                f = f.mul(&FormPolynomial::t(i).pow(e));
            }
            for l in word {
                let g = match l {
                    Letter::Omega(i) => FormPolynomial::omega(i),
                    Letter::Closed(name) => FormPolynomial::closed(&name),
                };
                f = f.mul(&g);
            }
            for i in dts {
                f = f.mul(&FormPolynomial::dt(i));
            }
            f
        })
}

fn poly() -> impl Strategy<Value = FormPolynomial> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| ts.iter().fold(FormPolynomial::zero(), |a, t| a.add(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn d_squared_is_zero(f in poly()) {
        prop_assert!(f.differential().differential().is_zero());
    }

    #[test]
    fn product_is_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_is_unital(a in poly()) {
        prop_assert_eq!(a.mul(&FormPolynomial::one()), a.clone());
        prop_assert_eq!(FormPolynomial::one().mul(&a), a);
    }

    #[test]
    fn leibniz_rule(a in term(), b in poly()) {
        let (m, _) = match a.terms().next() { Some(t) => t, None => return Ok(()) };
        let sign = if m.degree() % 2 == 0 { 1 } else { -1 };
        let lhs = a.mul(&b).differential();
        let rhs = a.differential().mul(&b).add(&a.mul(&b.differential()).scale(&int(sign)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dt_anticommutes_with_letters(l in omega_letter(), i in 1u32..=3) {
        let Letter::Omega(j) = l else { unreachable!() };
        let (b, dt) = (FormPolynomial::omega(j), FormPolynomial::dt(i));
        prop_assert_eq!(dt.mul(&b), b.mul(&dt).neg());
    }

    #[test]
    fn normalisation_is_idempotent(w in prop::collection::vec(letter(), 0..8)) {
        if let Some(st) = normalize_trace_word(&w) {
            let again = normalize_trace_word(st.word.letters()).expect("canonical words are nonzero");
            prop_assert!(!again.negative);
            prop_assert_eq!(again.word, st.word);
        }
    }

    #[test]
    fn cyclic_law(w in prop::collection::vec(omega_letter(), 1..8)) {
        let mut rotated = w[1..].to_vec();
        rotated.push(w[0].clone());
        let sign = if w.len() % 2 == 0 { 1 } else { -1 };
        let lhs = TracePolynomial::word(int(1), &w).add(&TracePolynomial::word(int(sign), &rotated));
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn even_powers_vanish(i in 1u32..=5, half in 1usize..=5) {
        prop_assert!(normalize_trace_word(&vec![Letter::Omega(i); 2 * half]).is_none());
    }

    #[test]
    fn type_components_sum_back(f in poly()) {
        let mut sum = FormPolynomial::zero();
        for x in 0..=4 {
            for y in 0..=3 {
                sum.add_assign(&f.type_component(x, y));
            }
        }
        prop_assert_eq!(sum, f);
    }
}

#[test]
fn spec_examples_for_trace_words() {
    use Letter::Omega;
    assert!(normalize_trace_word(&vec![Omega(1); 4]).is_none());
    let st = normalize_trace_word(&[Omega(2), Omega(1)]).unwrap();
    assert!(st.negative);
    assert_eq!(st.word.letters(), &[Omega(1), Omega(2)]);
    let st = normalize_trace_word(&[Omega(1), Omega(2), Omega(1), Omega(2)]).unwrap();
    assert!(!st.negative);
    assert_eq!(normalize_trace_word(&[]).unwrap().word, TraceWord::unit());
}

#[test]
fn multiplication_examples() {
    let (b1, b2) = (FormPolynomial::omega(1), FormPolynomial::omega(2));
    let (dt1, dt2) = (FormPolynomial::dt(1), FormPolynomial::dt(2));
    assert_eq!(b1.mul(&dt1).mul(&b2.mul(&dt2)), b1.mul(&b2).mul(&dt1).mul(&dt2).neg());
    assert_eq!(FormPolynomial::t(1).mul(&FormPolynomial::t(1)), FormPolynomial::t(1).pow(2));
    assert!(dt1.mul(&dt1).is_zero());
}

#[test]
fn differential_examples() {
    let b1 = FormPolynomial::omega(1);
    assert_eq!(b1.differential(), b1.mul(&b1).neg());
    let f = FormPolynomial::t(1).mul(&b1);
    let expected = FormPolynomial::t(1).mul(&b1).mul(&b1).neg().sub(&b1.mul(&FormPolynomial::dt(1)));
    assert_eq!(f.differential(), expected);
    assert!(f.differential().differential().is_zero());
}

#[test]
fn type_component_examples() {
    let k1 = barycentric_curvature(1).value;
    assert_eq!(k1.type_component(1, 1), FormPolynomial::omega(1).mul(&FormPolynomial::dt(1)).neg());
    assert!(barycentric_curvature(0).value.type_component(2, 0).is_zero());
    let f = FormPolynomial::t(1).mul(&FormPolynomial::omega(1).pow(2));
    assert_eq!(f.type_component(2, 0), f);
}

#[test]
fn bianchi_identity() {
    for p in 0..=4 {
        let w = barycentric_connection(p).value;
        let k = barycentric_curvature(p).value;
        let lhs = k.differential().add(&w.mul(&k)).sub(&k.mul(&w));
        assert!(lhs.is_zero(), "p = {p}");
    }
}

#[test]
fn curvature_at_level_two_has_the_three_sums() {
    // -Σ B_i dt_i - Σ t_i B_i² + Σ_{i,j} t_j t_i B_j B_i
    let k = barycentric_curvature(2).value;
    let mut expected = FormPolynomial::zero();
    for i in 1..=2u32 {
        let (t, b) = (FormPolynomial::t(i), FormPolynomial::omega(i));
        expected = expected.sub(&b.mul(&FormPolynomial::dt(i))).sub(&t.mul(&b).mul(&b));
        for j in 1..=2u32 {
            let bj = FormPolynomial::omega(j);
            expected = expected.add(&FormPolynomial::t(j).mul(&FormPolynomial::t(i)).mul(&bj).mul(&b));
        }
    }
    assert_eq!(k, expected);
    // two dt terms, two t B² terms, four t t B B terms
    assert_eq!(k.len(), 8);
}

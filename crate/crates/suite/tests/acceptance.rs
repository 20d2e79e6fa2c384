//! One line per acceptance criterion, each driven through the command-line
//! entry point. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use atiyah_cli::json::{form_terms, lift_tuple_from_str, lift_tuple_to_string};
use atiyah_cli::run;
use atiyah_core::expr::trace_expr;
use atiyah_core::lift::DeltaMatrix;
use atiyah_core::reference::{published_lift, RHO, SIMPLICIAL_K3_P2};
use atiyah_core::simplicial::barycentric_connection;
use atiyah_core::{
    barycentric_curvature, cech_delta, enumerate_trace_basis, int, lift_exponential_atiyah, rat, skew_symmetrise,
    Alternator, CechCochain, FormPolynomial, Letter, Rational, TracePolynomial,
};
use serde_json::Value;

type Outcome = Result<String, String>;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("atiyah").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn json_call(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = call(&full);
    if code != 0 {
        return Err(format!("`{}` exited with {code}", args.join(" ")));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?}"))
}

fn cochain(p: usize, q: usize, src: &str) -> CechCochain {
    CechCochain::new(p, q, trace_expr(src).unwrap()).unwrap()
}

fn lift_output(k: usize) -> Result<atiyah_core::LiftTuple, String> {
    let (code, out) = call(&["--format", "json", "lift", "--k", &k.to_string()]);
    ensure(code == 0, format!("lift --k {k} exited with {code}"))?;
    lift_tuple_from_str(&out).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = lift_output(2)?;
    let time = within(start, Duration::from_secs(1))?;
    ensure(t.component(1) == &cochain(1, 3, "1/3 A^3"), "c_1 is not 1/3 tr(A^3)")?;
    ensure(t.component(2) == &cochain(2, 2, "A (B-A)"), "c_2 is not tr(A X)")?;
    Ok(format!("(0, 1/3 tr(A^3), tr(A X), 0, 0) in {time}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let t = lift_output(3)?;
    let time = within(start, Duration::from_secs(5))?;
    ensure(t.component(1) == &cochain(1, 5, "-1/10 A^5"), "c_1 is not -1/10 tr(A^5)")?;
    // ρ(A, X) = -1/4 tr(AXAX) + 1/2 tr(A²X²) - 1/2 tr(A³X) - 1/2 tr(AX³), X = B - A
    let rho = cochain(2, 4, RHO);
    let parts = ["A (B-A) A (B-A)", "A^2 (B-A)^2", "A^3 (B-A)", "A (B-A)^3"];
    let coeffs = [rat(-1, 4), rat(1, 2), rat(-1, 2), rat(-1, 2)];
    let mut assembled = CechCochain::zero(2, 4);
    for (c, src) in coeffs.iter().zip(parts) {
        assembled = assembled.add(&cochain(2, 4, src).scale(c));
    }
    ensure(rho == assembled, "ρ does not expand to the listed coefficients")?;
    ensure(t.component(2) == &rho, "c_2 is not ρ(A, X)")?;
    ensure(t.component(3) == &cochain(3, 3, "A (B-A) (C-B)"), "c_3 is not tr(A X Y)")?;
    Ok(format!("-1/10 tr(A^5), ρ with (-1/4, 1/2, -1/2, -1/2) in {time}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let v = json_call(&["lift", "--k", "4", "--verify"])?;
    let time = within(start, Duration::from_secs(120))?;
    ensure(v["verification"]["closed"] == true, "the computed lift is not closed")?;
    let lift = lift_tuple_from_str(&v["lift"].to_string()).map_err(|e| e.to_string())?;
    ensure(lift.component(1) == &cochain(1, 7, "-1/35 A^7"), "c_1 is not -1/35 tr(A^7)")?;
    let published = &v["published"]["components"];
    ensure(published[0]["equal"] == true, "verify-mode does not confirm -1/35 tr(A^7)")?;
    ensure(published[3]["equal"] == true, "verify-mode does not confirm the (4, 4) component")?;
    if v["published"]["closed"] != true {
        let open: Vec<&str> = v["published"]["open_equations"]
            .as_array()
            .map(|a| a.iter().filter_map(Value::as_str).collect())
            .unwrap_or_default();
        return Err(format!(
            "lift closed and -1/35 tr(A^7) confirmed in {time}, but the verbatim published (3,5) and (2,6) \
             components violate: {}",
            open.join("; ")
        ));
    }
    Ok(format!("closed, -1/35 tr(A^7), published staircase holds in {time}"))
}

/// Polynomials in `t_1..t_p`, keyed by exponent vectors.
type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(|| int(0)) += ca * cb;
        }
    }
    out.retain(|_, v| *v != int(0));
    out
}

/// Integrate over `0 ≤ t_1 ≤ 1 - t_2 - … - t_p`, then `t_2`, and so on.
fn iterated_integral(p: usize, a: &[u32]) -> Rational {
    let mut f = Poly::from([(a.to_vec(), int(1))]);
    for var in 0..p {
        let mut upper = Poly::from([(vec![0; p], int(1))]);
        for j in var + 1..p {
            let mut e = vec![0; p];
            e[j] = 1;
            upper.insert(e, int(-1));
        }
        let mut next = Poly::new();
        for (e, c) in &f {
            let n = e[var] + 1;
            let mut rest = e.clone();
            rest[var] = 0;
            let mut power = Poly::from([(rest, c / int(n as i64))]);
            for _ in 0..n {
                power = poly_mul(&power, &upper);
            }
            for (e2, c2) in power {
                *next.entry(e2).or_insert_with(|| int(0)) += c2;
            }
        }
        next.retain(|_, v| *v != int(0));
        f = next;
    }
    f.get(&vec![0; p]).cloned().unwrap_or_else(|| int(0))
}

fn exponent_vectors(p: usize, total: u32) -> Vec<Vec<u32>> {
    if p == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            exponent_vectors(p - 1, total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn integrate_text(p: usize, a: &[u32]) -> Result<String, String> {
    let list: Vec<String> = a.iter().map(u32::to_string).collect();
    let (code, out) = call(&["integrate", "--p", &p.to_string(), "--exponents", &list.join(",")]);
    ensure(code == 0, format!("integrate {a:?} exited with {code}"))?;
    Ok(out.trim().to_string())
}

fn criterion_4() -> Outcome {
    for (a, expected) in [([1, 0], "1/6"), ([2, 0], "1/12"), ([1, 1], "1/24")] {
        let got = integrate_text(2, &a)?;
        ensure(got == expected, format!("{a:?}: {got} instead of {expected}"))?;
    }
    let mut checked = 0;
    for p in 1..=4 {
        for total in 0..=6 {
            for a in exponent_vectors(p, total) {
                let oracle = iterated_integral(p, &a);
                let got = integrate_text(p, &a)?;
                ensure(got == oracle.to_string(), format!("p = {p}, {a:?}: {got} instead of {oracle}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("1/6, 1/12, 1/24; {checked} exponent vectors match iterated integrals"))
}

fn simplicial_output(k: usize) -> Result<atiyah_core::LiftTuple, String> {
    let (code, out) = call(&["--format", "json", "simplicial", "--k", &k.to_string()]);
    ensure(code == 0, format!("simplicial --k {k} exited with {code}"))?;
    lift_tuple_from_str(&out).map_err(|e| e.to_string())
}

fn criterion_5() -> Outcome {
    let s = simplicial_output(2)?;
    ensure(s.component(1) == &cochain(1, 3, "1/3 A^3"), "c_1 is not 1/3 tr(A^3)")?;
    ensure(s.component(2) == &cochain(2, 2, "A (B-A)"), "c_2 is not tr(ω01 ω12)")?;
    let v = json_call(&["compare", "--k", "2"])?;
    let comps = v["components"].as_array().ok_or("no components")?;
    ensure(v["agrees"] == true && comps.iter().all(|c| c["on_the_nose"] == true), "not equal on the nose")?;
    Ok("(1/3 tr(A^3), tr(ω01 ω12)), equal to the lift on the nose".into())
}

fn criterion_6() -> Outcome {
    let s = simplicial_output(3)?;
    ensure(s.component(1) == &cochain(1, 5, "-1/10 A^5"), "c_1 is not -1/10 tr(A^5)")?;
    // the integral as computed, and the four-coefficient display which adds
    // 1/2 tr(A^2 (B-A)^2), a term with zero alternation
    let raw = cochain(2, 4, "-1/2 A^3 B - 1/2 A B^3 + 1/4 A B A B");
    ensure(s.component(2) == &raw, "c_2 differs from the fibre integral")?;
    let four = cochain(2, 4, SIMPLICIAL_K3_P2);
    ensure(skew_symmetrise(s.component(2)) == skew_symmetrise(&four), "c_2 differs from the four-term form after Alt")?;
    let v = json_call(&["compare", "--k", "3"])?;
    let comps = v["components"].as_array().ok_or("no components")?;
    ensure(v["agrees"] == true && comps.iter().all(|c| c["after_alt"] == true), "no agreement after Alt")?;
    Ok("-1/10 tr(A^5); p = 2 equals the fibre integral exactly and the four-term form after Alt; compare agrees after Alt".into())
}

fn criterion_7() -> Outcome {
    let mut time = String::new();
    for k in 1..=5 {
        let start = Instant::now();
        let v = json_call(&["identity", "--k", &k.to_string()])?;
        ensure(v["holds"] == true, format!("identity fails at k = {k}"))?;
        if k == 5 {
            time = within(start, Duration::from_secs(60))?;
        }
    }
    Ok(format!("holds for k = 1..5; k = 5 in {time}"))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn criterion_8() -> Outcome {
    let v = json_call(&["coeffs", "--max", "4"])?;
    let rows = v["rows"].as_array().ok_or("no rows")?;
    let mut seen = Vec::new();
    for (k, row) in (1u64..=4).zip(rows) {
        let law = rat((factorial(k - 1) * factorial(k)) as i64, factorial(2 * k - 1) as i64);
        let expected = format!("{}/{}", law.numer(), law.denom());
        ensure(row["expected"] == expected.as_str(), format!("k = {k}: law gives {}", row["expected"]))?;
        for side in ["lift", "simplicial"] {
            let s = row[side].as_str().ok_or("missing value")?;
            ensure(s.trim_start_matches('-') == expected, format!("k = {k}: {side} magnitude {s}"))?;
        }
        seen.push(law.to_string());
    }
    ensure(seen == ["1", "1/3", "1/10", "1/35"], format!("magnitudes {seen:?}"))?;
    Ok(format!("magnitudes {}", seen.join(", ")))
}

fn criterion_9() -> Outcome {
    let v = json_call(&["green-example"])?;
    let j = |f: &FormPolynomial| serde_json::to_value(form_terms(f)).unwrap();
    let theta = FormPolynomial::closed("θ");
    let theta_dt = theta.mul(&FormPolynomial::dt(1));
    let zero = FormPolynomial::zero();
    ensure(v["curvatures"][0] == j(&zero), "first curvature is not 0")?;
    let second = &v["curvatures"][1];
    ensure(*second == j(&theta_dt) || *second == j(&theta_dt.neg()), "second curvature is not ±θ dt1")?;
    ensure(v["fibre_integrals"] == Value::Array(vec![j(&zero), j(&theta)]), "fibre integrals are not (0, θ)")?;
    let one = FormPolynomial::one();
    ensure(v["totals"] == Value::Array(vec![j(&one), j(&one.add(&theta))]), "totals are not (1, 1 + θ)")?;
    Ok("curvatures (0, ±θ dt1), fibre integrals (0, θ), totals (1, 1 + θ)".into())
}

/// Every product of at most three of the listed factors.
fn small_forms() -> Vec<FormPolynomial> {
    let gens = [
        FormPolynomial::omega(1),
        FormPolynomial::omega(2),
        FormPolynomial::t(1),
        FormPolynomial::t(2),
        FormPolynomial::dt(1),
        FormPolynomial::dt(2),
        FormPolynomial::closed("θ"),
    ];
    let mut out = vec![FormPolynomial::one()];
    let mut layer = vec![FormPolynomial::one()];
    for _ in 0..3 {
        layer = layer.iter().flat_map(|f| gens.iter().map(move |g| f.mul(g))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn basis_cochains(p: usize, q: usize) -> Vec<CechCochain> {
    enumerate_trace_basis(p, q)
        .unwrap()
        .elements()
        .iter()
        .map(|w| CechCochain::new(p, q, TracePolynomial::word(int(1), w.letters())).unwrap())
        .collect()
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    for f in small_forms() {
        ensure(f.differential().differential().is_zero(), format!("d² ≠ 0 on {f}"))?;
    }
    let mut alt = Alternator::new();
    for p in 1..=3 {
        for q in 1..=5 {
            for c in basis_cochains(p, q) {
                let dc = cech_delta(&c);
                ensure(cech_delta(&dc).is_zero(), format!("δ² ≠ 0 at ({p}, {q})"))?;
                let a = alt.apply(&c);
                ensure(alt.apply(&a) == a, format!("Alt not idempotent at ({p}, {q})"))?;
                ensure(alt.apply(&dc) == cech_delta(&a), format!("Alt∘δ ≠ δ∘Alt at ({p}, {q})"))?;
            }
        }
    }
    for k in 1..=6 {
        ensure(TracePolynomial::word(int(1), &vec![Letter::Omega(1); 2 * k]).is_zero(), format!("tr(A^{})", 2 * k))?;
    }
    for p in 0..=4 {
        let w = barycentric_connection(p).value;
        let kappa = barycentric_curvature(p).value;
        let bianchi = kappa.differential().add(&w.mul(&kappa)).sub(&kappa.mul(&w));
        ensure(bianchi.is_zero(), format!("Bianchi fails at p = {p}"))?;
    }
    ensure(enumerate_trace_basis(2, 4).map_err(|e| e.to_string())?.len() == 4, "basis (2, 4) is not of size 4")?;
    for p in 1..=3 {
        for q in 1..=8 {
            let m = DeltaMatrix::build(p, q).map_err(|e| e.to_string())?;
            for c in basis_cochains(p, q) {
                let image = m.apply(&c).map_err(|e| e.to_string())?;
                ensure(image == cech_delta(&c), format!("δ matrix wrong at ({p}, {q})"))?;
            }
        }
    }
    for k in 1..=4 {
        let lift = lift_exponential_atiyah(k).map_err(|e| e.to_string())?.tuple;
        for t in [lift.clone(), published_lift(k).unwrap()] {
            let s = lift_tuple_to_string(&t);
            ensure(lift_tuple_from_str(&s).map_err(|e| e.to_string())? == t, format!("round trip fails at k = {k}"))?;
        }
    }
    let time = within(start, Duration::from_secs(300))?;
    Ok(format!("d², δ², Alt, Alt∘δ, tr(A^2k), Bianchi, basis count, δ matrix, round trip in {time}"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {n}: PASS {detail}"),
            Err(reason) => {
                failed += 1;
                println!("criterion {n}: FAIL {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! LaTeX rendering, with `\underbrace{…}_{p=i}` labels on tuple components.

use atiyah_core::{LiftTuple, Letter, Monomial, Rational, TracePolynomial};
use num::{One, Signed};

fn letter(l: &Letter) -> String {
    match l {
        Letter::Omega(i) if (1..=26).contains(i) => char::from(b'A' + (*i - 1) as u8).to_string(),
        Letter::Omega(i) => format!("B_{{{i}}}"),
        Letter::Closed(name) if &**name == "θ" => r"\theta".to_string(),
        Letter::Closed(name) => format!(r"\mathrm{{{name}}}"),
    }
}

fn word(w: &[Letter]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let run = w[i..].iter().take_while(|l| **l == w[i]).count();
        parts.push(if run == 1 { letter(&w[i]) } else { format!("{}^{{{run}}}", letter(&w[i])) });
        i += run;
    }
    parts.join(" ")
}

fn magnitude(c: &Rational) -> String {
    let c = c.abs();
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!(r"\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn monomial_body(m: &Monomial, traced: bool) -> String {
    let mut parts = Vec::new();
    for &(i, e) in m.t_exponents() {
        parts.push(if e == 1 { format!("t_{{{i}}}") } else { format!("t_{{{i}}}^{{{e}}}") });
    }
    if !m.word().is_empty() {
        let w = word(m.word());
        parts.push(if traced { format!(r"\operatorname{{tr}}\big({w}\big)") } else { w });
    }
    if !m.dt().is_empty() {
        parts.push(m.dt().iter().map(|i| format!(r"\mathrm{{d}}t_{{{i}}}")).collect::<Vec<_>>().join(r"\,"));
    }
    parts.join(" ")
}

pub fn terms<'a>(it: impl Iterator<Item = (&'a Monomial, &'a Rational)>, traced: bool) -> String {
    let mut out = String::new();
    for (n, (m, c)) in it.enumerate() {
        let body = monomial_body(m, traced);
        let sign = match (n, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sign);
        if !c.abs().is_one() || body.is_empty() {
            out.push_str(&magnitude(c));
            if !body.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn trace_polynomial(f: &TracePolynomial) -> String {
    terms(f.terms(), true)
}

/// `(0, c_1, …, c_k, 0, …, 0)` with each `c_p` labelled by its Čech degree.
pub fn lift_tuple(t: &LiftTuple) -> String {
    let k = t.k();
    let mut parts = vec!["0".to_string()];
    for p in 1..=k {
        parts.push(format!(r"\underbrace{{{}}}_{{p={p}}}", trace_polynomial(t.component(p).value())));
    }
    parts.extend(std::iter::repeat_n("0".to_string(), k));
    format!(r"\left({}\right)", parts.join(r",\ "))
}

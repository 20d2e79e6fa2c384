//! Command-line front end: argument parsing, validation and the three output
//! formats. [`run`] is the whole program; `main` only wires it to the process.

pub mod error;
pub mod json;
pub mod latex;

use std::ffi::OsString;
use std::io::Write;

use atiyah_core::green::green_p1_example;
use atiyah_core::lift::StepStats;
use atiyah_core::reference::published_lift;
use atiyah_core::simplicial::{fibre_integrate_level, simplicial_atiyah_power};
use atiyah_core::verification::{
    agreement_check, leading_coefficient_check, permutation_identity_report, skew_eigenspace_dimension,
    MAX_EIGENSPACE_K,
};
use atiyah_core::{
    cech_delta, enumerate_trace_basis, lift_exponential_atiyah, monomial_simplex_integral, simplicial_atiyah_cochain,
    verify_total_closed, LiftTuple, TracePolynomial, SIGN_CONVENTION,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::CliError;

/// Largest `p^q` the basis listing will enumerate.
const MAX_BASIS_WORDS: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "atiyah", version, about = "Exact Čech–de Rham representatives of exponential Atiyah classes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest k accepted by lift, simplicial, compare and coeffs.
    #[arg(long, env = "ATIYAH_MAX_K", default_value_t = 4, global = true)]
    pub max_k: usize,
    /// Largest k accepted by identity.
    #[arg(long, env = "ATIYAH_IDENTITY_MAX", default_value_t = 5, global = true)]
    pub identity_max: usize,
    /// Allow the longer runs: compare up to max-k instead of 3.
    #[arg(long, env = "ATIYAH_STRETCH", global = true)]
    pub stretch: bool,
    /// Worker threads (default: one per core).
    #[arg(long, env = "ATIYAH_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lift tr expat^k to a closed element of the total complex.
    Lift {
        #[arg(long)]
        k: usize,
        /// Check closedness and compare with the published tuple.
        #[arg(long)]
        verify: bool,
    },
    /// Čech components obtained by fibre integration of ε_k tr κ^k.
    Simplicial {
        #[arg(long)]
        k: usize,
        /// Show one simplicial level and its fibre integral.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Compare the simplicial components with the lift.
    Compare {
        #[arg(long)]
        k: usize,
    },
    /// Check the alternating-sum identity in the free algebra.
    Identity {
        #[arg(long)]
        k: usize,
    },
    /// List the cyclic trace monomial basis of bidegree (p, q).
    Basis {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Integrate t_1^a_1 ⋯ t_p^a_p over the p-simplex.
    Integrate {
        #[arg(long)]
        p: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        exponents: Vec<u32>,
    },
    /// Leading coefficients against (k-1)! k! / (2k-1)!.
    Coeffs {
        #[arg(long)]
        max: usize,
    },
    /// The two-term resolution on the projective line.
    GreenExample,
}

/// A rendered result. `verified` is false when a check came out negative.
struct Output {
    json: Value,
    text: String,
    latex: String,
    verified: bool,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string(&self.json).expect("plain data serializes"),
            Format::Text => self.text.trim_end().to_string(),
            Format::Latex => self.latex.trim_end().to_string(),
        }
    }
}

/// Run the program on `args` (including the binary name). Returns the exit
/// code: 0 on success, 1 when a verification fails, 2 on malformed input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            if let Err(e) = writeln!(out, "{}", output.render(cli.format)) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if output.verified {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn check_range(name: &str, value: usize, max: usize) -> Result<(), CliError> {
    if value == 0 || value > max {
        return Err(CliError::Usage(format!("{name} = {value} is outside the supported range 1..={max}")));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Lift { k, verify } => {
            check_range("k", *k, cli.max_k)?;
            lift(*k, *verify)
        }
        Command::Simplicial { k, level } => {
            check_range("k", *k, cli.max_k)?;
            match level {
                None => simplicial(*k),
                Some(p) if *p <= *k => simplicial_level(*k, *p),
                Some(p) => Err(CliError::Usage(format!("level = {p} is outside 0..={k}"))),
            }
        }
        Command::Compare { k } => {
            let max = if cli.stretch { cli.max_k } else { cli.max_k.min(3) };
            check_range("k", *k, max)?;
            compare(*k)
        }
        Command::Identity { k } => {
            check_range("k", *k, cli.identity_max)?;
            identity(*k)
        }
        Command::Basis { p, q } => {
            check_range("p", *p, usize::MAX)?;
            check_range("q", *q, usize::MAX)?;
            let words = (*p as u64).checked_pow(*q as u32).filter(|&n| n <= MAX_BASIS_WORDS);
            if words.is_none() {
                return Err(CliError::Usage(format!("p^q exceeds {MAX_BASIS_WORDS} words")));
            }
            basis(*p, *q)
        }
        Command::Integrate { p, exponents } => {
            check_range("p", *p, usize::MAX)?;
            integrate(*p, exponents)
        }
        Command::Coeffs { max } => {
            check_range("max", *max, cli.max_k)?;
            coeffs(*max)
        }
        Command::GreenExample => green(),
    }
}

fn tuple_text(t: &LiftTuple) -> String {
    let mut s = format!("k = {}\nsign convention: {SIGN_CONVENTION}\n", t.k());
    for c in t.components() {
        s.push_str(&format!("c_{} ({}, {}): {}\n", c.p(), c.p(), c.q(), c.value()));
    }
    s
}

fn step_json(s: &StepStats) -> Value {
    json!({
        "p": s.p, "q": s.q,
        "domain_dim": s.domain_dim, "codomain_dim": s.codomain_dim,
        "rank": s.rank, "kernel_dim": s.kernel_dim,
    })
}

fn lift(k: usize, verify: bool) -> Result<Output, CliError> {
    let lift = lift_exponential_atiyah(k)?;
    let tuple = &lift.tuple;
    let mut text = tuple_text(tuple);
    let mut latex = latex::lift_tuple(tuple);
    if !verify {
        return Ok(Output { json: serde_json::to_value(json::lift_tuple(tuple)).unwrap(), text, latex, verified: true });
    }
    let report = verify_total_closed(tuple);
    let closed = report.closed();
    text.push_str(&format!("closed: {closed}\n"));
    let mut residuals = Vec::new();
    for r in &report.residuals {
        let zero = r.value.is_zero();
        text.push_str(&format!("  {}: {}\n", r.equation, if zero { "ok".to_string() } else { r.value.to_string() }));
        residuals.push(json!({"equation": r.equation, "zero": zero, "terms": json::trace_terms(r.value.value())}));
    }
    // every component above Čech degree k vanishes by construction
    text.push_str("tDR refinable: true\n");
    for s in &lift.steps {
        text.push_str(&format!(
            "solve p={} q={}: basis {} -> {}, rank {}, kernel {}\n",
            s.p, s.q, s.domain_dim, s.codomain_dim, s.rank, s.kernel_dim
        ));
    }
    let published = published_lift(k).map(|reference| {
        let mut comps = Vec::new();
        for p in 1..=k {
            let diff = tuple.component(p).sub(reference.component(p));
            let equal = diff.is_zero();
            let modulo_kernel = equal || cech_delta(&diff).is_zero();
            let status = match (equal, modulo_kernel) {
                (true, _) => "equal",
                (false, true) => "equal modulo ker delta",
                (false, false) => "differs",
            };
            text.push_str(&format!("published c_{p}: {status}\n"));
            comps.push(json!({"p": p, "equal": equal, "equal_modulo_delta_kernel": modulo_kernel}));
        }
        let rep = verify_total_closed(&reference);
        let open: Vec<&str> =
            rep.residuals.iter().filter(|r| !r.value.is_zero()).map(|r| r.equation.as_str()).collect();
        text.push_str(&format!("published tuple closed: {}\n", rep.closed()));
        if !open.is_empty() {
            text.push_str(&format!("published open equations: {}\n", open.join("; ")));
        }
        json!({"components": comps, "closed": rep.closed(), "open_equations": open})
    });
    latex.push_str(&format!("\n% closed: {closed}, sign convention {SIGN_CONVENTION}"));
    let json = json!({
        "lift": json::lift_tuple(tuple),
        "steps": lift.steps.iter().map(step_json).collect::<Vec<_>>(),
        "verification": {
            "sign_convention": SIGN_CONVENTION,
            "closed": closed,
            "tdr_refinable": true,
            "residuals": residuals,
        },
        "published": published,
    });
    Ok(Output { json, text, latex, verified: closed })
}

fn simplicial(k: usize) -> Result<Output, CliError> {
    let t = simplicial_atiyah_cochain(k)?;
    Ok(Output {
        json: serde_json::to_value(json::lift_tuple(&t)).unwrap(),
        text: tuple_text(&t),
        latex: latex::lift_tuple(&t),
        verified: true,
    })
}

fn simplicial_level(k: usize, p: usize) -> Result<Output, CliError> {
    let form = simplicial_atiyah_power(k, p);
    let integral = fibre_integrate_level(&form, p)?;
    let text = format!("k = {k}, p = {p}\nform: {}\nfibre integral ({}, {}): {}\n", form.value, p, integral.q(), integral.value());
    let latex = format!(
        "{}\n\\int_{{\\Delta^{p}}} = {}",
        latex::terms(form.value.terms(), true),
        latex::trace_polynomial(integral.value())
    );
    let json = json!({
        "k": k, "p": p,
        "form": json::trace_terms(&form.value),
        "integral": json::component(&integral),
    });
    Ok(Output { json, text, latex, verified: true })
}

fn compare(k: usize) -> Result<Output, CliError> {
    let r = agreement_check(k)?;
    let mut text = format!("k = {k}\ntop component agrees after Alt: {}\n", r.top);
    let mut latex = String::new();
    for c in &r.components {
        let status = if c.on_the_nose {
            "equal"
        } else if c.after_alt {
            "equal after Alt"
        } else {
            "differs"
        };
        text.push_str(&format!("c_{}: {status}\n", c.p));
        latex.push_str(&format!("p={}: \\text{{{status}}}\\\\\n", c.p));
    }
    text.push_str(&format!("agrees: {}\n", r.agrees()));
    let json = json!({
        "k": k,
        "top_agrees_after_alt": r.top,
        "components": r.components.iter()
            .map(|c| json!({"p": c.p, "on_the_nose": c.on_the_nose, "after_alt": c.after_alt}))
            .collect::<Vec<_>>(),
        "agrees": r.agrees(),
    });
    Ok(Output { json, text, latex, verified: r.agrees() })
}

fn identity(k: usize) -> Result<Output, CliError> {
    let r = permutation_identity_report(k)?;
    let eigen = if k <= MAX_EIGENSPACE_K { Some(skew_eigenspace_dimension(k)?) } else { None };
    let unit = json::rational(&r.unit_coefficients.0);
    let mut text = format!(
        "k = {k}\nholds: {}\nterms: {}\ncoefficient of x1..x{k}: {} and {} (identity summand {} and {})\nalternating: {}\n",
        r.holds(),
        r.lhs.len(),
        r.unit_coefficients.0,
        r.unit_coefficients.1,
        r.identity_summand_coefficients.0,
        r.identity_summand_coefficients.1,
        r.alternating,
    );
    if let Some(d) = eigen {
        text.push_str(&format!("skew eigenspace dimension: {d}\n"));
    }
    let json = json!({
        "k": k,
        "holds": r.holds(),
        "terms": r.lhs.len(),
        "unit_coefficients": [unit, json::rational(&r.unit_coefficients.1)],
        "identity_summand_coefficients": [
            json::rational(&r.identity_summand_coefficients.0),
            json::rational(&r.identity_summand_coefficients.1),
        ],
        "alternating": r.alternating,
        "skew_eigenspace_dimension": eigen,
    });
    let latex = format!("A = B:\\ \\text{{{}}}", r.holds());
    Ok(Output { json, text, latex, verified: r.holds() })
}

fn basis(p: usize, q: usize) -> Result<Output, CliError> {
    let b = enumerate_trace_basis(p, q)?;
    let mut text = format!("p = {p}, q = {q}: {} elements\n", b.len());
    let mut latex = Vec::new();
    for w in b.elements() {
        text.push_str(&format!("{w}\n"));
        latex.push(latex::trace_polynomial(&TracePolynomial::word(atiyah_core::int(1), w.letters())));
    }
    let words: Vec<Vec<json::LetterJson>> = b
        .elements()
        .iter()
        .map(|w| {
            json::trace_terms(&TracePolynomial::word(atiyah_core::int(1), w.letters()))
                .into_iter()
                .flat_map(|t| t.word)
                .collect()
        })
        .collect();
    let json = json!({"p": p, "q": q, "size": b.len(), "elements": words});
    Ok(Output { json, text, latex: latex.join(",\\ "), verified: true })
}

fn integrate(p: usize, a: &[u32]) -> Result<Output, CliError> {
    let v = monomial_simplex_integral(p, a)?;
    let value = json::rational(&v);
    let latex = format!(
        "\\int_{{\\Delta^{p}}} {} = {}",
        a.iter().enumerate().map(|(i, e)| format!("t_{{{}}}^{{{e}}}", i + 1)).collect::<Vec<_>>().join(" "),
        latex::terms(std::iter::once((&atiyah_core::Monomial::one(), &v)), false)
    );
    Ok(Output { json: json!({"p": p, "exponents": a, "value": value}), text: v.to_string(), latex, verified: true })
}

fn coeffs(max: usize) -> Result<Output, CliError> {
    let rows = leading_coefficient_check(max)?;
    let mut text = "k expected lift simplicial match\n".to_string();
    let mut latex = String::new();
    for r in &rows {
        text.push_str(&format!("{} {} {} {} {}\n", r.k, r.expected, r.lift, r.simplicial, r.matches()));
        latex.push_str(&format!(
            "k={}: {}\\\\\n",
            r.k,
            latex::terms(std::iter::once((&atiyah_core::Monomial::one(), &r.expected)), false)
        ));
    }
    let ok = rows.iter().all(|r| r.matches());
    let json = json!({
        "law": "(k-1)! k! / (2k-1)!",
        "rows": rows.iter().map(|r| json!({
            "k": r.k,
            "expected": json::rational(&r.expected),
            "lift": json::rational(&r.lift),
            "simplicial": json::rational(&r.simplicial),
            "matches": r.matches(),
        })).collect::<Vec<_>>(),
    });
    Ok(Output { json, text, latex, verified: ok })
}

fn green() -> Result<Output, CliError> {
    let r = green_p1_example()?;
    let ch = r.chern_character_magnitude();
    let text = format!(
        "term order: {}\ncurvatures: {}, {}\nhigher powers vanish: {}\nfibre integrals: {}, {}\ntotals: {}, {}\nalternating sum: {}\nchern character (magnitude): {}\n",
        r.term_order,
        r.curvatures[0],
        r.curvatures[1],
        r.higher_powers_vanish,
        r.fibre_integrals[0],
        r.fibre_integrals[1],
        r.totals[0],
        r.totals[1],
        r.alternating_sum,
        ch,
    );
    let l = |f: &atiyah_core::FormPolynomial| latex::terms(f.terms(), false);
    let latex = format!(
        "\\kappa = ({}, {}),\\quad \\int \\kappa = ({}, {}),\\quad \\mathrm{{totals}} = ({}, {}),\\quad \\mathrm{{ch}} = \\pm({})",
        l(&r.curvatures[0]),
        l(&r.curvatures[1]),
        l(&r.fibre_integrals[0]),
        l(&r.fibre_integrals[1]),
        l(&r.totals[0]),
        l(&r.totals[1]),
        l(&ch),
    );
    let json = json!({
        "term_order": r.term_order,
        "curvatures": [json::form_terms(&r.curvatures[0]), json::form_terms(&r.curvatures[1])],
        "higher_powers_vanish": r.higher_powers_vanish,
        "fibre_integrals": [json::form_terms(&r.fibre_integrals[0]), json::form_terms(&r.fibre_integrals[1])],
        "totals": [json::form_terms(&r.totals[0]), json::form_terms(&r.totals[1])],
        "alternating_sum": json::form_terms(&r.alternating_sum),
        "chern_character_magnitude": json::form_terms(&ch),
    });
    Ok(Output { json, text, latex, verified: r.higher_powers_vanish })
}

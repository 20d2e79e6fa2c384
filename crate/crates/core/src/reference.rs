//! Published closed forms, written in the letters `A = B_1, B = B_2, …` with
//! `ω_{ij} = B_j - B_i`.

use crate::algebra::{rat, Rational};
use crate::cech::{CechCochain, LiftTuple};
use crate::expr::trace_expr;

/// `P^{(4,4)}`.
pub const P44: &str = "A (B-A) (C-B) (D-C)";

/// `P^{(3,5)}`.
pub const P35: &str = "13/5 A^5 + 13 A^4 (B-A) + 5 A^3 (B-A)^2 + 5 A^3 (B-A) (C-A) \
    + 3 A^3 (C-A) (B-A) + 4 A^2 (B-A) A (B-A) + 4 A^2 (B-A) A (C-A) \
    + 3 A^2 (B-A)^3 - A^2 (B-A)^2 (C-A) + 5 A^2 (B-A) (C-A)^2 \
    + 5 A^2 (C-A) A (B-A) + 2 A^2 (C-A) (B-A)^2 + A^2 (C-A) (B-A) (C-A) \
    + 3 A^2 (C-A)^2 (B-A) - A (B-A) A (C-A) (B-A) + 5 A (B-A) A (C-A)^2 \
    - 5 A (B-A)^2 (C-A) (B-A) + 5 A (B-A) (C-A) A (C-A) + 5 A (B-A) (C-A)^3 \
    + 4 (A (C-A))^2 (B-A) - 2 A (C-A) (B-A)^3 + 4 A (C-A) (B-A)^2 (C-A) \
    + A ((C-A) (B-A))^2 + 2 A (C-A)^2 (B-A)^2 + A (C-A)^2 (B-A) (C-A) \
    + 3 A (C-A)^3 (B-A)";

/// `P^{(2,6)}`.
pub const P26: &str = "5 A^5 (B-A) - 4 A^4 (B-A)^2 + A^3 (B-A) A (B-A) + A^3 (B-A)^3 \
    - 5 A^2 (B-A) A (B-A)^2 - 4 A^2 (B-A)^2 A (B-A) - 4 A^2 (B-A)^4 \
    + 1/3 (A (B-A))^3 + A (B-A) A (B-A)^3 + A (B-A)^5";

/// `P^{(1,7)}`.
pub const P17: &str = "A^7";

/// `ρ(A, X)` with `X = B - A`.
pub const RHO: &str = "-1/4 A (B-A) A (B-A) + 1/2 A^2 (B-A)^2 - 1/2 A^3 (B-A) - 1/2 A (B-A)^3";

/// The four-term `(2, 4)` component of the simplicial `k = 3` class, in
/// `ω_{01} = A`, `ω_{12} = B - A`.
pub const SIMPLICIAL_K3_P2: &str =
    "-1/4 (A (B-A))^2 - 1/2 A^3 (B-A) - 1/2 A (B-A)^3 + 1/2 A^2 (B-A)^2";

/// The `(3, 3)` component of the simplicial `k = 3` class.
pub const SIMPLICIAL_K3_P3: &str = "1/2 A (B-A) (C-B) - 1/2 A (C-B) (B-A)";

fn cochain(p: usize, q: usize, scale: Rational, src: &str) -> CechCochain {
    let value = trace_expr(src).expect("reference expressions parse").scale(&scale);
    CechCochain::new(p, q, value).expect("reference expressions are well formed")
}

fn tuple(k: usize, parts: &[(Rational, &str)]) -> LiftTuple {
    let components =
        parts.iter().enumerate().map(|(i, (c, src))| cochain(i + 1, 2 * k - i - 1, c.clone(), src)).collect();
    LiftTuple::new(k, components).expect("reference tuples have the right shape")
}

/// The published manual lift of `tr expat^k`, for `k ≤ 4`.
pub fn published_lift(k: usize) -> Option<LiftTuple> {
    let one = || rat(1, 1);
    Some(match k {
        1 => tuple(1, &[(one(), "A")]),
        2 => tuple(2, &[(rat(1, 3), "A^3"), (one(), "A (B-A)")]),
        3 => tuple(3, &[(rat(-1, 10), "A^5"), (one(), RHO), (one(), "A (B-A) (C-B)")]),
        4 => tuple(4, &[(rat(-1, 35), P17), (rat(1, 5), P26), (rat(1, 5), P35), (one(), P44)]),
        _ => return None,
    })
}

/// The published simplicial components, for `k ≤ 3`.
pub fn published_simplicial(k: usize) -> Option<LiftTuple> {
    let one = || rat(1, 1);
    Some(match k {
        1 => tuple(1, &[(one(), "A")]),
        2 => tuple(2, &[(rat(1, 3), "A^3"), (one(), "A (B-A)")]),
        3 => tuple(3, &[(rat(-1, 10), "A^5"), (one(), SIMPLICIAL_K3_P2), (one(), SIMPLICIAL_K3_P3)]),
        _ => return None,
    })
}

//! Holds the `acceptance` test target; run it with
//! `cargo test -p atiyah-suite --test acceptance`.

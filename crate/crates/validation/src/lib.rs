//! Holds the `acceptance` test target; run it with
//! `cargo test -p adiabatic-validation --test acceptance`.

//! Test-only package. The acceptance suite lives in `tests/acceptance.rs`
//! and is run with `cargo test -p jts-validation --test acceptance`.

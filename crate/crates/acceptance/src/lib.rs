//! Test-only package; the criteria live in `tests/acceptance.rs`.

//! Acceptance checks only; see `tests/acceptance.rs`.

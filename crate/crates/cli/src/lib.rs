//! Support code for the `rainbow` binary: the verification battery run by
//! `rainbow verify-suite` and the seeded instance generator it uses.

pub mod random;
pub mod suite;

#![allow(dead_code)]

pub mod quadrature;

/// Prints one acceptance line and reports whether it passed.
pub fn report(label: &str, pass: bool, detail: impl std::fmt::Display) -> bool {
    println!("[{}] {label}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

#![allow(dead_code)]

use bvoperad::exactfield::Field;
use bvoperad::input::{parse_presentation, Presentation};
use bvoperad::{AlgebraPresentation, HopfPresentation};
use serde_json::json;

/// `𝕜[x]/(xᵏ)` with the form reading off the coefficient of `xᵏ⁻¹` in a product.
pub fn truncated_polynomial(field: &str, k: usize) -> String {
    let mul: Vec<_> = (0..k).flat_map(|i| (0..k).filter(move |j| i + j < k).map(move |j| json!([i, j, i + j, "1"]))).collect();
    let form: Vec<Vec<&str>> = (0..k).map(|i| (0..k).map(|j| if i + j == k - 1 { "1" } else { "0" }).collect()).collect();
    let unit: Vec<&str> = (0..k).map(|i| if i == 0 { "1" } else { "0" }).collect();
    json!({"kind": "algebra", "field": field, "dim": k, "mul": mul, "unit": unit, "form": form}).to_string()
}

/// The group algebra of `ℤ/n` with the form reading off the coefficient of 1.
pub fn group_algebra(field: &str, n: usize) -> String {
    let mul: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| json!([i, j, (i + j) % n, "1"]))).collect();
    let form: Vec<Vec<&str>> = (0..n).map(|i| (0..n).map(|j| if (i + j) % n == 0 { "1" } else { "0" }).collect()).collect();
    let unit: Vec<&str> = (0..n).map(|i| if i == 0 { "1" } else { "0" }).collect();
    json!({"kind": "algebra", "field": field, "dim": n, "mul": mul, "unit": unit, "form": form}).to_string()
}

/// The group Hopf algebra of `ℤ/n` with the character `gᵏ ↦ chiᵏ`.
pub fn group_hopf(field: &str, n: usize, chi: &[String]) -> String {
    let mul: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| json!([i, j, (i + j) % n, "1"]))).collect();
    let comul: Vec<_> = (0..n).map(|i| json!([i, i, i, "1"])).collect();
    let unit: Vec<&str> = (0..n).map(|i| if i == 0 { "1" } else { "0" }).collect();
    let antipode: Vec<Vec<&str>> = (0..n).map(|i| (0..n).map(|j| if j == (n - i) % n { "1" } else { "0" }).collect()).collect();
    json!({"kind": "hopf", "field": field, "dim": n, "mul": mul, "unit": unit, "comul": comul,
           "counit": vec!["1"; n], "antipode": antipode, "character": chi})
    .to_string()
}

pub fn algebra<F: Field>(field: F, text: &str) -> AlgebraPresentation<F> {
    let Presentation::Algebra(raw) = parse_presentation(text).unwrap() else { panic!("not an algebra") };
    AlgebraPresentation::from_raw(field, &raw).unwrap()
}

pub fn hopf<F: Field>(field: F, text: &str) -> HopfPresentation<F> {
    let Presentation::Hopf(raw) = parse_presentation(text).unwrap() else { panic!("not a Hopf algebra") };
    HopfPresentation::from_raw(field, &raw).unwrap()
}

pub fn failures(checks: &[bvoperad::Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {:?}", c.name, c.counterexample)).collect()
}

//! Expected results shipped with the scenarios (`data/scenarios.json`).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Catalog {
    pub version: u32,
    pub scenarios: Vec<CatalogEntry>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub default_truncation: u32,
    pub default_value_bound: String,
    pub rings: Vec<RingEntry>,
    #[serde(default)]
    pub extension_map: Vec<String>,
    pub values: Vec<ValueEntry>,
    #[serde(default)]
    pub nu_hat: Vec<NuHatEntry>,
    pub p_beta: String,
    pub implicit: Vec<ImplicitEntry>,
    #[serde(default)]
    pub odd_candidates: Vec<CandidateEntry>,
    #[serde(default)]
    pub candidates: Vec<CandidateEntry>,
    #[serde(default)]
    pub branch_coefficients: Vec<CoefficientEntry>,
    #[serde(default)]
    pub heights: Option<Heights>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct RingEntry {
    pub label: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub curve: bool,
}

/// Elements are polynomial text, or `w:a`, `f:b`, `g:b` for the scenario's
/// approximating elements (`N` stands for the truncation order).
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct ValueEntry {
    pub ring: String,
    pub element: String,
    pub value: String,
    pub basis: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct NuHatEntry {
    pub element: String,
    pub value: String,
    pub basis: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct ImplicitEntry {
    pub ring: String,
    pub level: usize,
    pub generators: Vec<String>,
    pub basis: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct CandidateEntry {
    pub level: usize,
    pub generators: Vec<String>,
    pub alternatives: Vec<Vec<String>>,
    pub basis: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct CoefficientEntry {
    pub index: usize,
    pub value: String,
    pub basis: String,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
pub struct Heights {
    pub source: usize,
    pub target: usize,
}

const DATA: &str = include_str!("../data/scenarios.json");

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(DATA).expect("bundled scenario catalog is valid"))
}

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    catalog().scenarios.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valgroup::GroupElement;

    #[test]
    fn catalog_parses_and_values_are_well_formed() {
        let c = catalog();
        assert_eq!(c.scenarios.len(), 4);
        for e in &c.scenarios {
            GroupElement::parse(&e.default_value_bound).unwrap();
            for v in &e.values {
                GroupElement::parse(&v.value).unwrap();
            }
        }
        assert!(entry("example_4_2").unwrap().rings[0].curve);
    }
}

//! The generalized binomial coefficient `⟨λ, r⟩`: the number of ways to pick
//! `r` cells of the Ferrers diagram of λ with at least one cell in every row.
//!
//! Choosing a nonempty subset of each row independently gives the generating
//! product `Π_i ((1+t)^{λ_i} - 1)`, whose coefficient of `t^r` is `⟨λ, r⟩`.
//! [`gen_binom_bruteforce`] counts subsets literally and serves as the oracle.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partitions::Partition;

/// Default weight limit for the brute-force oracle (`2^16` subsets).
pub const DEFAULT_ORACLE_LIMIT: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenBinomError {
    #[error("partition {partition} has weight {weight}, above the oracle limit {limit}")]
    OracleLimit {
        partition: String,
        weight: u32,
        limit: u32,
    },
}

/// Coefficients `(⟨λ,0⟩, ⟨λ,1⟩, ..., ⟨λ,|λ|⟩)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowGenPoly {
    coeffs: Vec<BigUint>,
}

impl RowGenPoly {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `⟨λ, r⟩`, zero past `|λ|`.
    pub fn coeff(&self, r: usize) -> BigUint {
        self.coeffs.get(r).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Sum of all coefficients, i.e. the generating product at `t = 1`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }
}

/// Row `a` of Pascal's triangle with the `t^0` term removed: `(1+t)^a - 1`.
fn row_factor(a: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); a as usize + 1];
    let mut c = BigUint::one();
    for j in 1..=a {
        c = c * (a - j + 1) / j;
        row[j as usize] = c.clone();
    }
    row
}

pub fn row_gen_poly(lambda: &Partition) -> RowGenPoly {
    let mut acc = vec![BigUint::one()];
    for &a in lambda.parts() {
        let factor = row_factor(a);
        let mut next = vec![BigUint::zero(); acc.len() + factor.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in factor.iter().enumerate().skip(1) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    RowGenPoly { coeffs: acc }
}

pub fn gen_binom(lambda: &Partition, r: usize) -> BigUint {
    if r > lambda.weight() as usize {
        return BigUint::zero();
    }
    row_gen_poly(lambda).coeff(r)
}

/// Cell masks of each row when cells are numbered row by row.
fn row_masks(lambda: &Partition) -> Vec<u64> {
    let mut offset = 0u32;
    lambda
        .parts()
        .iter()
        .map(|&len| {
            let mask = ((1u64 << len) - 1) << offset;
            offset += len;
            mask
        })
        .collect()
}

/// Counts, for every `r`, the `r`-subsets of the cells that meet every row.
pub fn gen_binom_bruteforce_all(lambda: &Partition, limit: u32) -> Result<Vec<u64>, GenBinomError> {
    let weight = lambda.weight();
    if weight > limit || weight >= 63 {
        return Err(GenBinomError::OracleLimit {
            partition: lambda.to_string(),
            weight,
            limit,
        });
    }
    let masks = row_masks(lambda);
    let mut counts = vec![0u64; weight as usize + 1];
    for subset in 0u64..(1u64 << weight) {
        if masks.iter().all(|m| subset & m != 0) {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

pub fn gen_binom_bruteforce(lambda: &Partition, r: usize, limit: u32) -> Result<BigUint, GenBinomError> {
    let counts = gen_binom_bruteforce_all(lambda, limit)?;
    Ok(counts
        .get(r)
        .copied()
        .map(BigUint::from)
        .unwrap_or_else(BigUint::zero))
}

/// Memo table of [`row_gen_poly`] keyed by partition. Fills are idempotent.
#[derive(Debug, Default)]
pub struct GenBinomCache {
    polys: RwLock<HashMap<Partition, Arc<RowGenPoly>>>,
}

impl GenBinomCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, lambda: &Partition) -> Arc<RowGenPoly> {
        if let Some(hit) = self.polys.read().expect("gen-binom cache poisoned").get(lambda) {
            return Arc::clone(hit);
        }
        let fresh = Arc::new(row_gen_poly(lambda));
        let mut polys = self.polys.write().expect("gen-binom cache poisoned");
        Arc::clone(polys.entry(lambda.clone()).or_insert(fresh))
    }

    pub fn gen_binom(&self, lambda: &Partition, r: usize) -> BigUint {
        self.get(lambda).coeff(r)
    }

    pub fn len(&self) -> usize {
        self.polys.read().expect("gen-binom cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

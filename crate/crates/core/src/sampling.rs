//! Seeded random elements for the identity checks. Everything is driven by
//! a caller-supplied ChaCha generator so reports are reproducible.

use num::{BigInt, BigRational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::superalg::{Element, GeneratorTable, Monomial, NormalForm, Parity};
use std::sync::Arc;

/// Shape constraints for sampled elements.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    /// Indices the monomials may use (hbar excluded automatically).
    pub allowed: Vec<usize>,
    pub max_tdeg: i32,
    pub terms: usize,
    pub parity: Option<Parity>,
}

/// A random element honoring the spec; may have fewer terms than requested
/// (duplicates merge, parity filtering discards).
pub fn random_element(
    table: &Arc<GeneratorTable>,
    rng: &mut ChaCha8Rng,
    spec: &SampleSpec,
) -> Element {
    let mut out = Element::zero(table);
    let mut attempts = 0;
    let mut placed = 0;
    while placed < spec.terms && attempts < spec.terms * 20 {
        attempts += 1;
        let Some(m) = random_monomial(table, rng, spec) else {
            continue;
        };
        let c = random_coefficient(rng);
        out.insert_term(m, c);
        placed += 1;
    }
    out
}

fn random_monomial(
    table: &Arc<GeneratorTable>,
    rng: &mut ChaCha8Rng,
    spec: &SampleSpec,
) -> Option<Monomial> {
    let mut budget = spec.max_tdeg;
    let mut factors: Vec<(usize, i32)> = Vec::new();
    for &g in &spec.allowed {
        if budget == 0 {
            break;
        }
        if table.parity(g).is_odd() {
            if rng.gen_bool(0.4) {
                factors.push((g, 1));
                budget -= 1;
            }
        } else {
            let e = rng.gen_range(0..=budget.min(3));
            if e > 0 {
                factors.push((g, e));
                budget -= e;
            }
        }
    }
    match crate::superalg::normalize(table, &factors).ok()? {
        NormalForm::Zero => None,
        NormalForm::Term { monomial, .. } => {
            if let Some(p) = spec.parity {
                if monomial.parity(table) != p {
                    return None;
                }
            }
            Some(monomial)
        }
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let num = loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let den = rng.gen_range(1i64..=2);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Antisymmetric d x d rational matrix with small entries.
pub fn random_antisymmetric(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<BigRational>> {
    let zero = BigRational::from(BigInt::from(0));
    let mut m = vec![vec![zero; d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let v = random_coefficient(rng);
            m[i][j] = v.clone();
            m[j][i] = -v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;
    use rand::SeedableRng;

    #[test]
    fn sampling_is_deterministic() {
        let m = build_model(2, None).unwrap();
        let spec = SampleSpec {
            allowed: (0..m.table().len() - 1).collect(),
            max_tdeg: 4,
            terms: 5,
            parity: None,
        };
        let a = random_element(m.table(), &mut ChaCha8Rng::seed_from_u64(7), &spec);
        let b = random_element(m.table(), &mut ChaCha8Rng::seed_from_u64(7), &spec);
        assert_eq!(a, b);
    }

    #[test]
    fn parity_filter_respected() {
        let m = build_model(2, None).unwrap();
        let spec = SampleSpec {
            allowed: (0..m.table().len() - 1).collect(),
            max_tdeg: 4,
            terms: 8,
            parity: Some(Parity::Odd),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let e = random_element(m.table(), &mut rng, &spec);
            if !e.is_zero() {
                assert_eq!(e.parity(), Some(Parity::Odd));
            }
        }
    }
}

//! Characters of irreducible representations: dimensions, weight
//! multiplicities, tensor products, numeric evaluation on the torus, and the
//! conversion between weight tables and sums of irreducible characters.

mod eval;
mod freudenthal;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

pub use eval::{character_eval, character_eval_f64, weyl_denominator, CharacterMethod, SINGULAR_THRESHOLD};
pub use freudenthal::{freudenthal, multiplicity, weyl_dim};
pub use tensor::tensor_decompose;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Q};
use crate::rootsys::{RootSystem, Weight};

/// Finitely supported map from integral weights to rationals. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightFunction {
    entries: BTreeMap<Weight, Q>,
}

/// Finitely supported map from dominant integral weights to rationals: a
/// linear combination of irreducible characters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharacterCombo {
    entries: BTreeMap<Weight, Q>,
}

macro_rules! sparse_map_impl {
    ($t:ty) => {
        impl $t {
            pub fn new() -> Self {
                Self { entries: BTreeMap::new() }
            }

            pub fn get(&self, w: &Weight) -> Q {
                self.entries.get(w).cloned().unwrap_or_else(Q::zero)
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn iter(&self) -> impl Iterator<Item = (&Weight, &Q)> {
                self.entries.iter()
            }

            pub fn keys(&self) -> impl Iterator<Item = &Weight> {
                self.entries.keys()
            }

            pub(crate) fn add_unchecked(&mut self, w: Weight, value: Q) {
                if value.is_zero() {
                    return;
                }
                let slot = self.entries.entry(w).or_insert_with(Q::zero);
                *slot += value;
                if slot.is_zero() {
                    let key = self.entries.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
                    if let Some(k) = key {
                        self.entries.remove(&k);
                    }
                }
            }

            pub fn scale(&self, factor: &Q) -> Self {
                let mut out = Self::new();
                for (w, v) in &self.entries {
                    out.add_unchecked(w.clone(), v * factor);
                }
                out
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> =
                    self.entries.iter().map(|(w, v)| format!("{w}: {}", fmt_rational(v))).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    };
}

sparse_map_impl!(WeightFunction);
sparse_map_impl!(CharacterCombo);

impl WeightFunction {
    pub fn add(&mut self, w: Weight, value: Q) -> Result<()> {
        if !w.is_integral() {
            return Err(Error::NotIntegral(w.to_string()));
        }
        self.add_unchecked(w, value);
        Ok(())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Weight, Q)>) -> Result<Self> {
        let mut out = Self::new();
        for (w, v) in pairs {
            out.add(w, v)?;
        }
        Ok(out)
    }

    /// Checks invariance under every simple reflection, which generate the Weyl group.
    pub fn check_weyl_invariant(&self, rs: &RootSystem) -> Result<()> {
        for (w, v) in &self.entries {
            for i in 0..rs.rank() {
                let image = rs.reflect(i, w);
                if self.get(&image) != *v {
                    return Err(Error::NotInvariant(format!("{w} vs s{}({w}) = {image}", i + 1)));
                }
            }
        }
        Ok(())
    }
}

impl CharacterCombo {
    pub fn add(&mut self, w: Weight, value: Q) -> Result<()> {
        if !w.is_integral() {
            return Err(Error::NotIntegral(w.to_string()));
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        self.add_unchecked(w, value);
        Ok(())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Weight, Q)>) -> Result<Self> {
        let mut out = Self::new();
        for (w, v) in pairs {
            out.add(w, v)?;
        }
        Ok(out)
    }

    pub fn single(w: Weight, value: Q) -> Result<Self> {
        Self::from_pairs([(w, value)])
    }

    /// Keys ordered by height (a linear refinement of dominance), then lexicographically.
    pub fn canonical_order(&self, rs: &RootSystem) -> Vec<(Weight, Q)> {
        let mut items: Vec<(Q, Weight, Q)> =
            self.entries.iter().map(|(w, v)| (rs.height(w), w.clone(), v.clone())).collect();
        items.sort();
        items.into_iter().map(|(_, w, v)| (w, v)).collect()
    }

    /// A dominance-maximal key: greatest height, ties broken by the largest coordinates.
    pub fn leading(&self, rs: &RootSystem) -> Option<Weight> {
        self.canonical_order(rs).pop().map(|(w, _)| w)
    }

    pub fn all_positive(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }

    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// `sum m_lambda * dim V_lambda`.
    pub fn total_dimension(&self, rs: &RootSystem) -> Q {
        self.entries
            .iter()
            .fold(Q::zero(), |acc, (w, v)| acc + v * Q::from_integer(weyl_dim(rs, w).unwrap().into()))
    }
}

/// Expands `sum m_lambda chi_lambda` into its weight table.
pub fn characters_to_weights(rs: &RootSystem, combo: &CharacterCombo) -> WeightFunction {
    let mut out = WeightFunction::new();
    for (lambda, m) in combo.iter() {
        let table = freudenthal(rs, lambda).expect("combo keys are dominant integral");
        for (mu, mult) in table.iter() {
            out.add_unchecked(mu.clone(), m * mult);
        }
    }
    out
}

/// Inverts [`characters_to_weights`] by peeling off the highest remaining weight.
pub fn weights_to_characters(rs: &RootSystem, w: &WeightFunction) -> Result<CharacterCombo> {
    for key in w.keys() {
        rs.check_rank(key)?;
        if !key.is_integral() {
            return Err(Error::NotIntegral(key.to_string()));
        }
    }
    w.check_weyl_invariant(rs)?;
    let mut remainder = w.clone();
    let mut out = CharacterCombo::new();
    // every step removes the current top weight, so the loop is bounded by the support size
    let mut budget = w.len() + 1;
    while !remainder.is_empty() {
        if budget == 0 {
            return Err(Error::Verification("character peeling did not terminate".into()));
        }
        budget -= 1;
        let top = remainder
            .iter()
            .filter(|(k, _)| k.is_dominant())
            .map(|(k, v)| (rs.height(k), k.clone(), v.clone()))
            .max()
            .map(|(_, k, v)| (k, v))
            .ok_or_else(|| Error::Verification("remainder has no dominant weight".into()))?;
        let (lambda, m) = top;
        let table = freudenthal(rs, &lambda)?;
        for (mu, mult) in table.iter() {
            remainder.add_unchecked(mu.clone(), -(&m * mult));
        }
        out.add(lambda, m)?;
    }
    Ok(out)
}

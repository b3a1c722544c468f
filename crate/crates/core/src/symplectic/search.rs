//! Witness search: find a rational point where a nonzero top-power
//! polynomial does not vanish.
//!
//! Each search method implements [`WitnessSearch`] and is registered by name
//! in a [`StrategyRegistry`]. A [`SearchPlan`] runs strategies in order and
//! always ends with [`Specialize`], which cannot fail on a nonzero polynomial,
//! so the verdict never depends on which strategies were selected.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polynomial::TopPowerPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub trait WitnessSearch: Send + Sync {
    fn name(&self) -> &'static str;

    /// A point where `poly` is nonzero, if this strategy finds one.
    fn search(&self, poly: &TopPowerPolynomial) -> Option<Vec<Scalar>>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
}

/// Integer points in growing max-norm boxes. Within radius `r`, candidates
/// go by support size, then support in lexicographic order, then values in
/// the order 1, −1, 2, −2, …; at least one entry has absolute value `r`.
#[derive(Clone, Debug)]
pub struct BoxScan {
    pub max_radius: i64,
    pub budget: usize,
}

impl Default for BoxScan {
    fn default() -> Self {
        BoxScan {
            max_radius: 3,
            budget: 20_000,
        }
    }
}

impl WitnessSearch for BoxScan {
    fn name(&self) -> &'static str {
        "box-scan"
    }

    fn search(&self, poly: &TopPowerPolynomial) -> Option<Vec<Scalar>> {
        let b = poly.variables();
        let mut tried = 0usize;
        for radius in 1..=self.max_radius {
            let values: Vec<i64> = (1..=radius).flat_map(|v| [v, -v]).collect();
            for support_size in 1..=b {
                for support in (0..b).combinations(support_size) {
                    let choices = std::iter::repeat_n(values.iter(), support_size);
                    for assignment in choices.multi_cartesian_product() {
                        if !assignment.iter().any(|v| v.abs() == radius) {
                            continue;
                        }
                        let mut point = vec![Scalar::zero(); b];
                        for (&i, &&v) in support.iter().zip(&assignment) {
                            point[i] = scalar::int(v);
                        }
                        if !poly.evaluate(&point).is_zero() {
                            return Some(point);
                        }
                        tried += 1;
                        if tried >= self.budget {
                            return None;
                        }
                    }
                }
            }
        }
        None
    }
}

/// Seeded uniform integer points.
#[derive(Clone, Debug)]
pub struct RandomSample {
    pub seed: u64,
    pub attempts: usize,
    pub bound: i64,
}

impl WitnessSearch for RandomSample {
    fn name(&self) -> &'static str {
        "random"
    }

    fn search(&self, poly: &TopPowerPolynomial) -> Option<Vec<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.attempts).find_map(|_| {
            let point: Vec<Scalar> = (0..poly.variables())
                .map(|_| scalar::int(rng.gen_range(-self.bound..=self.bound)))
                .collect();
            (!poly.evaluate(&point).is_zero()).then_some(point)
        })
    }
}

/// Fixes one variable at a time to the first value in 0, 1, −1, 2, −2, …
/// that keeps the polynomial nonzero. A nonzero polynomial of degree `n` in
/// one variable has at most `n` roots, so each step succeeds within `n + 1`
/// values and the final constant is nonzero.
#[derive(Clone, Copy, Debug, Default)]
pub struct Specialize;

impl WitnessSearch for Specialize {
    fn name(&self) -> &'static str {
        "specialize"
    }

    fn search(&self, poly: &TopPowerPolynomial) -> Option<Vec<Scalar>> {
        if poly.is_identically_zero() {
            return None;
        }
        let mut current = poly.clone();
        let mut point = Vec::with_capacity(poly.variables());
        for i in 0..poly.variables() {
            let candidates = std::iter::once(0).chain((1..).flat_map(|v: i64| [v, -v]));
            let (value, next) = candidates
                .take(poly.degree() + 1)
                .map(scalar::int)
                .map(|v| {
                    let next = current.substitute(i, &v);
                    (v, next)
                })
                .find(|(_, next)| !next.is_identically_zero())
                .expect("a nonzero polynomial of degree n has a non-root among n + 1 values");
            point.push(value);
            current = next;
        }
        debug_assert!(!poly.evaluate(&point).is_zero());
        Some(point)
    }
}

type Factory = Box<dyn Fn(&SearchConfig) -> Box<dyn WitnessSearch> + Send + Sync>;

/// Witness strategies by name.
pub struct StrategyRegistry {
    factories: BTreeMap<String, Factory>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// `box-scan`, `random` and `specialize`.
    pub fn with_defaults() -> Self {
        let mut registry = Self::empty();
        registry.register("box-scan", |_| Box::new(BoxScan::default()));
        registry.register("random", |config| {
            Box::new(RandomSample {
                seed: config.seed,
                attempts: 64,
                bound: 10,
            })
        });
        registry.register("specialize", |_| Box::new(Specialize));
        registry
    }

    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(&SearchConfig) -> Box<dyn WitnessSearch> + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn create(&self, name: &str, config: &SearchConfig) -> Result<Box<dyn WitnessSearch>> {
        self.factories
            .get(name)
            .map(|factory| factory(config))
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

pub const DEFAULT_PLAN: [&str; 3] = ["box-scan", "random", "specialize"];

/// An ordered list of strategies ending in [`Specialize`].
pub struct SearchPlan {
    strategies: Vec<Box<dyn WitnessSearch>>,
}

impl SearchPlan {
    pub fn from_names<S: AsRef<str>>(registry: &StrategyRegistry, names: &[S], config: &SearchConfig) -> Result<Self> {
        let mut strategies = names
            .iter()
            .map(|n| registry.create(n.as_ref(), config))
            .collect::<Result<Vec<_>>>()?;
        if strategies.last().map(|s| s.name()) != Some("specialize") {
            strategies.push(Box::new(Specialize));
        }
        Ok(SearchPlan { strategies })
    }

    pub fn default_with(config: &SearchConfig) -> Self {
        Self::from_names(&StrategyRegistry::with_defaults(), &DEFAULT_PLAN, config)
            .expect("default strategies are registered")
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    /// Returns the point and the name of the strategy that found it, or
    /// `None` exactly when the polynomial is identically zero.
    pub fn find(&self, poly: &TopPowerPolynomial) -> Option<(Vec<Scalar>, &'static str)> {
        if poly.is_identically_zero() {
            return None;
        }
        self.strategies
            .iter()
            .find_map(|s| s.search(poly).map(|p| (p, s.name())))
    }
}

impl Default for SearchPlan {
    fn default() -> Self {
        Self::default_with(&SearchConfig::default())
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{sigma_column, sigma_oracle, SigmaError};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A way of computing the full column `sigma_0(n), ..., sigma_n(n)`.
///
/// Every engine must return identical reduced values; they differ only in
/// cost and in how independent they are of one another.
pub trait SigmaEngine: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn column(&self, f: &Polynomial, n: u64) -> Result<Vec<Rational>, SigmaError>;

    fn sigma(&self, f: &Polynomial, n: u64, k: usize) -> Result<Rational, SigmaError> {
        let col = self.column(f, n)?;
        Ok(col.get(k).cloned().unwrap_or_else(Rational::zero))
    }
}

/// Integer numerators over `|f(1) ... f(n)|`, reduced on extraction.
#[derive(Debug, Default, Clone, Copy)]
pub struct SharedDenominatorEngine;

impl SigmaEngine for SharedDenominatorEngine {
    fn name(&self) -> &'static str {
        "shared-denominator"
    }

    fn description(&self) -> &'static str {
        "incremental column over one shared denominator (default)"
    }

    fn column(&self, f: &Polynomial, n: u64) -> Result<Vec<Rational>, SigmaError> {
        Ok(sigma_column(f, n)?.values())
    }

    fn sigma(&self, f: &Polynomial, n: u64, k: usize) -> Result<Rational, SigmaError> {
        Ok(sigma_column(f, n)?.sigma(k))
    }
}

/// Coefficients of `prod_{i <= n} (1 + t/f(i))`, kept reduced after every
/// factor.
#[derive(Debug, Default, Clone, Copy)]
pub struct ProductExpansionEngine;

impl SigmaEngine for ProductExpansionEngine {
    fn name(&self) -> &'static str {
        "product"
    }

    fn description(&self) -> &'static str {
        "expansion of the generating product with reduced rational coefficients"
    }

    fn column(&self, f: &Polynomial, n: u64) -> Result<Vec<Rational>, SigmaError> {
        let mut coeffs = vec![Rational::one()];
        for i in 1..=n {
            let v = f.eval_at(i);
            if v.is_zero() {
                return Err(SigmaError::ZeroValue(i));
            }
            let factor = Rational::new(BigInt::one(), v);
            // multiply by (1 + factor * t)
            let mut next = coeffs.clone();
            next.push(Rational::zero());
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c * &factor;
            }
            coeffs = next;
        }
        Ok(coeffs)
    }
}

/// Literal subset enumeration; limited to small `n`.
#[derive(Debug, Default, Clone, Copy)]
pub struct SubsetEnumerationEngine;

impl SigmaEngine for SubsetEnumerationEngine {
    fn name(&self) -> &'static str {
        "subsets"
    }

    fn description(&self) -> &'static str {
        "sum over every k-subset (n <= 20)"
    }

    fn column(&self, f: &Polynomial, n: u64) -> Result<Vec<Rational>, SigmaError> {
        (0..=n as usize).map(|k| sigma_oracle(f, n, k)).collect()
    }

    fn sigma(&self, f: &Polynomial, n: u64, k: usize) -> Result<Rational, SigmaError> {
        sigma_oracle(f, n, k)
    }
}

/// Engines addressable by name.
pub struct EngineRegistry {
    engines: Vec<Box<dyn SigmaEngine>>,
}

impl EngineRegistry {
    pub fn empty() -> Self {
        Self {
            engines: Vec::new(),
        }
    }

    /// Registers an engine, replacing any engine with the same name.
    pub fn register(&mut self, engine: Box<dyn SigmaEngine>) {
        self.engines.retain(|e| e.name() != engine.name());
        self.engines.push(engine);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SigmaEngine> {
        self.engines
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.engines.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn SigmaEngine> {
        self.engines.iter().map(|e| e.as_ref())
    }

    pub fn default_engine(&self) -> &dyn SigmaEngine {
        self.engines.first().expect("registry is empty").as_ref()
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(SharedDenominatorEngine));
        reg.register(Box::new(ProductExpansionEngine));
        reg.register(Box::new(SubsetEnumerationEngine));
        reg
    }
}

impl fmt::Debug for EngineRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn registry_lookup() {
        let reg = EngineRegistry::default();
        assert_eq!(reg.names(), ["shared-denominator", "product", "subsets"]);
        assert_eq!(reg.default_engine().name(), "shared-denominator");
        assert!(reg.get("product").is_some());
        assert!(reg.get("newton").is_none());
    }

    #[test]
    fn engines_agree_on_small_inputs() {
        let reg = EngineRegistry::default();
        for text in ["x", "x^2+1", "x^2-3", "2x^3 - x + 5"] {
            let f = parse_poly(text).unwrap();
            let reference = reg.get("subsets").unwrap().column(&f, 8).unwrap();
            for engine in reg.iter() {
                assert_eq!(engine.column(&f, 8).unwrap(), reference, "{}", engine.name());
            }
        }
    }

    #[test]
    fn subsets_engine_guards_size() {
        let reg = EngineRegistry::default();
        let f = parse_poly("x").unwrap();
        assert!(matches!(
            reg.get("subsets").unwrap().column(&f, 25),
            Err(SigmaError::Range { .. })
        ));
    }
}

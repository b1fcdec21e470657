//! Elementary symmetric functions of `1/f(1), ..., 1/f(n)`.
//!
//! The main path keeps a column of integer numerators over the shared
//! denominator `D = |f(1) ... f(n)|` and extends it one index at a time with
//! `e_k(n) = e_k(n-1) + e_{k-1}(n-1) / f(n)`. Reduction to lowest terms only
//! happens when a value is extracted.

mod engine;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::rational::{serde_fraction, Rational};

pub use engine::{
    EngineRegistry, ProductExpansionEngine, SharedDenominatorEngine, SigmaEngine,
    SubsetEnumerationEngine,
};

/// Largest prefix length accepted by [`sigma_oracle`].
pub const ORACLE_MAX_N: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error("f({0}) = 0")]
    ZeroValue(u64),
    #[error("n = {n} exceeds the subset-enumeration limit of {limit}")]
    Range { n: u64, limit: u64 },
}

/// `sigma_k(n) = numerators[k] / denominator` for `0 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaColumn {
    n: u64,
    denominator: BigInt,
    numerators: Vec<BigInt>,
    /// Sign of `f(1) ... f(n)`; `denominator` holds the absolute value.
    product_sign: Sign,
    /// Numerators above this index are not tracked.
    max_k: usize,
}

impl SigmaColumn {
    /// The empty prefix: `e_0 = 1`.
    pub fn empty() -> Self {
        Self {
            n: 0,
            denominator: BigInt::one(),
            numerators: vec![BigInt::one()],
            product_sign: Sign::Plus,
            max_k: usize::MAX,
        }
    }

    /// Empty prefix that only tracks `sigma_0 ..= sigma_max_k`; entries above
    /// `max_k` read as zero.
    pub fn truncated(max_k: usize) -> Self {
        Self {
            max_k,
            ..Self::empty()
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn shared_denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn product_sign(&self) -> Sign {
        self.product_sign
    }

    /// Appends `1/value` to the sequence.
    pub fn push(&mut self, value: &BigInt) -> Result<(), SigmaError> {
        if value.is_zero() {
            return Err(SigmaError::ZeroValue(self.n + 1));
        }
        let mag = value.abs();
        let negative = value.is_negative();
        if self.numerators.len() <= self.max_k {
            self.numerators.push(BigInt::zero());
        }
        for k in (1..self.numerators.len()).rev() {
            let (lo, hi) = self.numerators.split_at_mut(k);
            let prev = &lo[k - 1];
            let cur = &mut hi[0];
            *cur *= &mag;
            if negative {
                *cur -= prev;
            } else {
                *cur += prev;
            }
        }
        self.numerators[0] *= &mag;
        self.denominator *= &mag;
        if negative {
            self.product_sign = -self.product_sign;
        }
        self.n += 1;
        Ok(())
    }

    /// Reduced `sigma_k(n)`; zero for `k > n`.
    pub fn sigma(&self, k: usize) -> Rational {
        match self.numerators.get(k) {
            Some(num) => Rational::new(num.clone(), self.denominator.clone()),
            None => Rational::zero(),
        }
    }

    /// Integrality without a gcd: `D | N_k`.
    pub fn is_integer(&self, k: usize) -> bool {
        match self.numerators.get(k) {
            Some(num) => num.is_multiple_of(&self.denominator),
            None => true,
        }
    }

    /// Sign of `sigma_k(n)` (zero for `k > n`).
    pub fn sign(&self, k: usize) -> Sign {
        self.numerators.get(k).map_or(Sign::NoSign, BigInt::sign)
    }

    /// `sigma_0(n), ..., sigma_n(n)` in lowest terms.
    pub fn values(&self) -> Vec<Rational> {
        (0..self.numerators.len()).map(|k| self.sigma(k)).collect()
    }
}

/// Streams columns `n = 1, 2, ...` for a fixed polynomial, retaining only the
/// current column.
#[derive(Debug, Clone)]
pub struct ColumnStream<'a> {
    f: &'a Polynomial,
    column: SigmaColumn,
}

impl<'a> ColumnStream<'a> {
    pub fn new(f: &'a Polynomial) -> Self {
        Self {
            f,
            column: SigmaColumn::empty(),
        }
    }

    pub fn truncated(f: &'a Polynomial, max_k: usize) -> Self {
        Self {
            f,
            column: SigmaColumn::truncated(max_k),
        }
    }

    pub fn advance(&mut self) -> Result<&SigmaColumn, SigmaError> {
        let next = self.column.n() + 1;
        self.column.push(&self.f.eval_at(next))?;
        Ok(&self.column)
    }

    pub fn current(&self) -> &SigmaColumn {
        &self.column
    }

    pub fn into_column(self) -> SigmaColumn {
        self.column
    }
}

pub fn sigma_column(f: &Polynomial, n: u64) -> Result<SigmaColumn, SigmaError> {
    let mut stream = ColumnStream::new(f);
    for _ in 0..n {
        stream.advance()?;
    }
    Ok(stream.into_column())
}

/// One serialized table entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: usize,
    pub n: u64,
    #[serde(with = "serde_fraction")]
    pub value: Rational,
    pub is_integer: bool,
}

/// All `sigma_k(n)` for `1 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTable {
    f: Polynomial,
    n_max: u64,
    // rows[n - 1][k - 1]
    rows: Vec<Vec<Rational>>,
}

impl SigmaTable {
    pub fn poly(&self) -> &Polynomial {
        &self.f
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn get(&self, k: usize, n: u64) -> Option<&Rational> {
        if k == 0 || n == 0 {
            return None;
        }
        self.rows.get(n as usize - 1)?.get(k - 1)
    }

    /// Rows in `(n, k)` lexicographic order.
    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, value)| TableRow {
                k: j + 1,
                n: i as u64 + 1,
                value: value.clone(),
                is_integer: value.is_integer(),
            })
        })
    }
}

pub fn sigma_table(f: &Polynomial, n_max: u64) -> Result<SigmaTable, SigmaError> {
    let mut stream = ColumnStream::new(f);
    let mut rows = Vec::with_capacity(n_max as usize);
    for _ in 0..n_max {
        let column = stream.advance()?;
        rows.push(column.values().split_off(1));
    }
    Ok(SigmaTable {
        f: f.clone(),
        n_max,
        rows,
    })
}

/// `(k, n, value)` for every integral entry, ordered by `n` then `k`.
pub fn integer_hits(table: &SigmaTable) -> Vec<(usize, u64, Rational)> {
    table
        .rows()
        .filter(|r| r.is_integer)
        .map(|r| (r.k, r.n, r.value))
        .collect()
}

/// Direct sum over all `k`-subsets of `{1..n}`. Test oracle only: cost is
/// `C(n, k)`, so `n` is capped at [`ORACLE_MAX_N`].
pub fn sigma_oracle(f: &Polynomial, n: u64, k: usize) -> Result<Rational, SigmaError> {
    if n > ORACLE_MAX_N {
        return Err(SigmaError::Range {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    let values: Vec<BigInt> = (1..=n).map(|i| f.eval_at(i)).collect();
    if let Some(i) = values.iter().position(Zero::is_zero) {
        return Err(SigmaError::ZeroValue(i as u64 + 1));
    }
    let n = n as usize;
    if k > n {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let product: BigInt = idx.iter().map(|&i| &values[i]).product();
        total += Rational::new(BigInt::one(), product);

        // next combination in lexicographic order
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            if idx[pos] < n - k + pos {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

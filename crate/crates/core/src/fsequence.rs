//! F-sequences and the F-factorial arithmetic built on them.
//!
//! An [`FSequence`] is a positive-integer sequence `k ↦ k_F`, indexed from 1.
//! The value at 0 is a separate optional field: most sequences leave it
//! undefined, and computations that need a unique bottom element call
//! [`FSequence::with_bottom`] to set `0_F = 1`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// `k_F = k`.
    Natural,
    /// `1, 1, 2, 3, 5, 8, …`
    Fibonacci,
    /// `k_F = 1 + q + … + q^(k-1)`.
    Gaussian(u64),
    /// `k_F = c` for every `k ≥ 1`.
    Constant(u64),
    /// A finite list `1_F, 2_F, …` supplied by the user.
    Explicit(Vec<BigUint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSequence {
    name: String,
    kind: SequenceKind,
    zeroth: Option<BigUint>,
}

/// Outcome of a bounded admissibility scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub checked_up_to: usize,
    /// The least `(n, k)` (ordered by `n`, then `k`) whose F-nomial is not an integer.
    pub witness: Option<(usize, usize)>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.witness.is_none()
    }
}

impl FSequence {
    pub fn natural() -> Self {
        Self::builtin("natural", SequenceKind::Natural)
    }

    pub fn fibonacci() -> Self {
        Self::builtin("fibonacci", SequenceKind::Fibonacci)
    }

    pub fn gaussian(q: u64) -> Self {
        Self::builtin(&format!("gaussian(q={q})"), SequenceKind::Gaussian(q))
    }

    pub fn constant(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidSequence("constant sequence value must be positive".into()));
        }
        Ok(Self::builtin(&format!("constant({c})"), SequenceKind::Constant(c)))
    }

    pub fn explicit(name: &str, values: Vec<BigUint>) -> Result<Self> {
        if let Some(pos) = values.iter().position(Zero::is_zero) {
            return Err(Error::InvalidSequence(format!("entry {} is zero; entries must be positive", pos + 1)));
        }
        Ok(Self::builtin(name, SequenceKind::Explicit(values)))
    }

    fn builtin(name: &str, kind: SequenceKind) -> Self {
        Self { name: name.to_string(), kind, zeroth: None }
    }

    /// The four built-in families at the parameters used throughout the test suites.
    pub fn reference_set() -> Vec<FSequence> {
        vec![
            Self::natural(),
            Self::fibonacci(),
            Self::gaussian(2),
            Self::constant(2).expect("positive constant"),
        ]
    }

    /// Resolves `natural`, `fibonacci`, `gaussian[:q]` or `constant[:c]`.
    ///
    /// `q` overrides the parameter of `gaussian` when given.
    pub fn from_name(selector: &str, q: Option<u64>) -> Result<Self> {
        let lower = selector.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((n, p)) => {
                let p = p
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidSequence(format!("bad parameter in `{selector}`")))?;
                (n.trim().to_string(), Some(p))
            }
            None => (lower, None),
        };
        match name.as_str() {
            "natural" | "n" => Ok(Self::natural()),
            "fibonacci" | "fib" => Ok(Self::fibonacci()),
            "gaussian" | "q-natural" => Ok(Self::gaussian(q.or(param).unwrap_or(2))),
            "constant" => Self::constant(param.unwrap_or(1)),
            _ => Err(Error::InvalidSequence(format!("unknown sequence `{selector}`"))),
        }
    }

    /// Parses a sequence-definition document: either a JSON array of positive
    /// integers or one integer per line (blank lines and `#` comments ignored).
    pub fn parse_values(text: &str) -> Result<Vec<BigUint>> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            let items = value.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
            return items
                .iter()
                .map(|v| match v {
                    Value::Number(n) => parse_positive(&n.to_string()),
                    Value::String(s) => parse_positive(s),
                    other => Err(Error::Parse(format!("not an integer: {other}"))),
                })
                .collect();
        }
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(parse_positive)
            .collect()
    }

    pub fn from_definition(name: &str, text: &str) -> Result<Self> {
        Self::explicit(name, Self::parse_values(text)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn zeroth(&self) -> Option<&BigUint> {
        self.zeroth.as_ref()
    }

    pub fn with_zeroth(mut self, value: BigUint) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::InvalidSequence("0_F must be positive".into()));
        }
        self.zeroth = Some(value);
        Ok(self)
    }

    /// Sets `0_F = 1` unless a zeroth value is already present.
    pub fn with_bottom(mut self) -> Self {
        if self.zeroth.is_none() {
            self.zeroth = Some(BigUint::one());
        }
        self
    }

    /// Largest index at which the sequence is defined, if finite.
    pub fn defined_up_to(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `k_F`.
    pub fn value(&self, k: usize) -> Result<BigUint> {
        if k == 0 {
            return self.zeroth.clone().ok_or(Error::NoBottomLevel);
        }
        Ok(match &self.kind {
            SequenceKind::Natural => BigUint::from(k),
            SequenceKind::Fibonacci => {
                let (mut a, mut b) = (BigUint::one(), BigUint::one());
                for _ in 1..k {
                    let next = &a + &b;
                    a = std::mem::replace(&mut b, next);
                }
                a
            }
            SequenceKind::Gaussian(q) => {
                let q = BigUint::from(*q);
                let mut sum = BigUint::zero();
                let mut power = BigUint::one();
                for _ in 0..k {
                    sum += &power;
                    power *= &q;
                }
                sum
            }
            SequenceKind::Constant(c) => BigUint::from(*c),
            SequenceKind::Explicit(values) => values
                .get(k - 1)
                .cloned()
                .ok_or_else(|| Error::IndexOutOfRange { name: self.name.clone(), index: k })?,
        })
    }

    /// `k_F` as a machine-sized count, for materializing a level.
    pub fn size(&self, k: usize) -> Result<usize> {
        let v = self.value(k)?;
        v.to_usize().ok_or(Error::LevelTooLarge(v))
    }

    /// `n_F! = 1_F · 2_F · … · n_F`, with `0_F! = 1`.
    pub fn f_factorial(&self, n: usize) -> Result<BigUint> {
        (1..=n).try_fold(BigUint::one(), |acc, k| Ok(acc * self.value(k)?))
    }

    /// `n_F · (n-1)_F · … · (n-k+1)_F`.
    pub fn falling_factorial(&self, n: usize, k: usize) -> Result<BigUint> {
        if k > n {
            return Err(Error::DegreeExceedsIndex { n, k });
        }
        (n - k + 1..=n).try_fold(BigUint::one(), |acc, i| Ok(acc * self.value(i)?))
    }

    /// `f(r_F) · f((r+1)_F) · … · f((r+k-1)_F)`; the empty product is 1.
    pub fn upper_function_factorial<G>(&self, f: G, r: usize, k: usize) -> Result<BigInt>
    where
        G: Fn(&BigInt) -> BigInt,
    {
        (r..r + k).try_fold(BigInt::one(), |acc, i| Ok(acc * f(&BigInt::from(self.value(i)?))))
    }

    /// The F-nomial coefficient `n_F! / (k_F! (n-k)_F!)` as an exact rational.
    pub fn fnomial(&self, n: usize, k: usize) -> Result<BigRational> {
        if k > n {
            return Err(Error::DegreeExceedsIndex { n, k });
        }
        let numer = self.falling_factorial(n, k)?;
        let denom = self.f_factorial(k)?;
        Ok(BigRational::new(numer.into(), denom.into()))
    }

    /// The F-nomial coefficient when it is an integer, `None` otherwise.
    pub fn fnomial_integer(&self, n: usize, k: usize) -> Result<Option<BigUint>> {
        let numer = self.falling_factorial(n, k)?;
        let denom = self.f_factorial(k)?;
        let (quot, rem) = numer.div_rem(&denom);
        Ok(rem.is_zero().then_some(quot))
    }

    /// Brute-force integrality scan of every F-nomial with `0 ≤ k ≤ n ≤ up_to`.
    pub fn is_admissible(&self, up_to: usize) -> Result<Admissibility> {
        for n in 0..=up_to {
            for k in 0..=n {
                if self.fnomial_integer(n, k)?.is_none() {
                    return Ok(Admissibility { checked_up_to: up_to, witness: Some((n, k)) });
                }
            }
        }
        Ok(Admissibility { checked_up_to: up_to, witness: None })
    }

    /// Level sizes `first_F, …, last_F`.
    pub fn sizes(&self, first: usize, last: usize) -> Result<Vec<usize>> {
        (first..=last).map(|k| self.size(k)).collect()
    }
}

impl fmt::Display for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn parse_positive(s: &str) -> Result<BigUint> {
    let v: BigUint = s.trim().parse().map_err(|_| Error::Parse(format!("not a nonnegative integer: `{s}`")))?;
    if v.is_zero() {
        return Err(Error::InvalidSequence("sequence entries must be positive".into()));
    }
    Ok(v)
}

//! Cyclic positions inside a neutral section.
//!
//! A point of the depth-`n` neutral section of `x` is addressed by its cyclic
//! index `k` among the `m^n` co-preimages, written as the fraction `k / m^n`.
//! All arithmetic is exact; `m^n` is computed with overflow checks.

use std::fmt;

use thiserror::Error;

/// Deepest iteration a fraction may address.
pub const MAX_DEPTH: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("index {k} out of range for {m}^{n}")]
    IndexOutOfRange { k: u128, m: u64, n: u32 },
    #[error("covering degree must be at least 1, got {0}")]
    BadBase(u64),
    #[error("depth {0} exceeds the maximum of {MAX_DEPTH}")]
    DepthTooLarge(u32),
    #[error("{m}^{n} overflows 128 bits")]
    Overflow { m: u64, n: u32 },
    #[error("fractions use different covering degrees ({0} and {1})")]
    MixedBase(u64, u64),
    #[error("degenerate triple: two of the arguments denote the same point")]
    DegenerateTriple,
}

/// The pair `{k, m^n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PreimageFraction {
    k: u128,
    m: u64,
    n: u32,
}

fn checked_power(m: u64, n: u32) -> Result<u128, FractionError> {
    (m as u128)
        .checked_pow(n)
        .ok_or(FractionError::Overflow { m, n })
}

impl PreimageFraction {
    pub fn new(k: u128, m: u64, n: u32) -> Result<Self, FractionError> {
        if m < 1 {
            return Err(FractionError::BadBase(m));
        }
        if n > MAX_DEPTH {
            return Err(FractionError::DepthTooLarge(n));
        }
        let den = checked_power(m, n)?;
        if k >= den {
            return Err(FractionError::IndexOutOfRange { k, m, n });
        }
        Ok(Self { k, m, n })
    }

    /// The base point itself, `0/1`.
    pub fn identity(m: u64) -> Result<Self, FractionError> {
        Self::new(0, m, 0)
    }

    pub fn index(&self) -> u128 {
        self.k
    }

    pub fn base(&self) -> u64 {
        self.m
    }

    pub fn depth(&self) -> u32 {
        self.n
    }

    pub fn denominator(&self) -> u128 {
        // validated at construction
        (self.m as u128).pow(self.n)
    }

    pub fn to_f64(&self) -> f64 {
        self.k as f64 / self.denominator() as f64
    }

    /// Numerator after lifting to depth `depth >= self.n`; fits because the
    /// result is below `m^depth`, which the caller has checked.
    fn lifted(&self, depth: u32) -> u128 {
        self.k * (self.m as u128).pow(depth - self.n)
    }

    /// Sum modulo one, at the deeper of the two depths.
    pub fn add_mod_one(&self, other: &Self) -> Result<Self, FractionError> {
        same_base(self, other)?;
        let depth = self.n.max(other.n);
        let den = checked_power(self.m, depth)?;
        let k = (self.lifted(depth) + other.lifted(depth)) % den;
        Self::new(k, self.m, depth)
    }
}

impl fmt::Display for PreimageFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.denominator())
    }
}

fn same_base(a: &PreimageFraction, b: &PreimageFraction) -> Result<(), FractionError> {
    if a.m != b.m {
        return Err(FractionError::MixedBase(a.m, b.m));
    }
    Ok(())
}

/// Exact equality of the denoted numbers (`1/2` equals `2/4`).
pub fn frac_eq(a: &PreimageFraction, b: &PreimageFraction) -> Result<bool, FractionError> {
    same_base(a, b)?;
    let depth = a.n.max(b.n);
    Ok(a.lifted(depth) == b.lifted(depth))
}

/// True when, walking counterclockwise from `a`, `b` is met strictly before `c`.
pub fn cyclic_between(
    a: &PreimageFraction,
    b: &PreimageFraction,
    c: &PreimageFraction,
) -> Result<bool, FractionError> {
    same_base(a, b)?;
    same_base(a, c)?;
    let depth = a.n.max(b.n).max(c.n);
    let den = checked_power(a.m, depth)?;
    let (ka, kb, kc) = (a.lifted(depth), b.lifted(depth), c.lifted(depth));
    if ka == kb || ka == kc || kb == kc {
        return Err(FractionError::DegenerateTriple);
    }
    let offset = |x: u128| (x + den - ka) % den;
    Ok(offset(kb) < offset(kc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(k: u128, m: u64, n: u32) -> PreimageFraction {
        PreimageFraction::new(k, m, n).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(fr(1, 2, 1).to_string(), "1/2");
        assert_eq!(fr(0, 3, 0).to_string(), "0/1");
        assert_eq!(fr(5, 3, 2).to_string(), "5/9");
        assert_eq!(PreimageFraction::identity(7).unwrap(), fr(0, 7, 0));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            PreimageFraction::new(1, 3, 0),
            Err(FractionError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            PreimageFraction::new(9, 3, 2),
            Err(FractionError::IndexOutOfRange { .. })
        ));
        assert_eq!(PreimageFraction::new(0, 0, 1), Err(FractionError::BadBase(0)));
        assert_eq!(
            PreimageFraction::new(0, 2, 65),
            Err(FractionError::DepthTooLarge(65))
        );
        assert!(matches!(
            PreimageFraction::new(0, 5, 64),
            Err(FractionError::Overflow { .. })
        ));
        assert!(PreimageFraction::new(3, 2, 64).is_ok());
    }

    #[test]
    fn equality_across_depths() {
        assert!(frac_eq(&fr(1, 2, 1), &fr(2, 2, 2)).unwrap());
        assert!(frac_eq(&fr(0, 2, 0), &fr(0, 2, 3)).unwrap());
        assert!(!frac_eq(&fr(1, 3, 1), &fr(2, 3, 2)).unwrap());
        assert_eq!(
            frac_eq(&fr(1, 2, 1), &fr(1, 3, 1)),
            Err(FractionError::MixedBase(2, 3))
        );
    }

    #[test]
    fn cyclic_order() {
        let zero = fr(0, 2, 0);
        let quarter = fr(1, 2, 2);
        let half = fr(1, 2, 1);
        let three_quarters = fr(3, 2, 2);
        assert!(cyclic_between(&zero, &quarter, &half).unwrap());
        assert!(cyclic_between(&three_quarters, &zero, &quarter).unwrap());
        assert!(!cyclic_between(&quarter, &zero, &half).unwrap());
        assert_eq!(
            cyclic_between(&zero, &fr(2, 2, 2), &half),
            Err(FractionError::DegenerateTriple)
        );
    }

    #[test]
    fn addition_wraps() {
        let s = fr(3, 2, 2).add_mod_one(&fr(1, 2, 1)).unwrap();
        assert!(frac_eq(&s, &fr(1, 2, 2)).unwrap());
    }
}

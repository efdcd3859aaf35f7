//! Polynomials in the formal central symbol `h` (standing for iħ).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::rational::Rational;

/// `Σ_k c_k h^k`, stored densely by power with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HPoly(SmallVec<[Rational; 2]>);

impl HPoly {
    pub fn zero() -> HPoly {
        HPoly(SmallVec::new())
    }

    pub fn constant(c: Rational) -> HPoly {
        HPoly::monomial(0, c)
    }

    /// `c · h^k`.
    pub fn monomial(k: usize, c: Rational) -> HPoly {
        let mut p = HPoly::zero();
        p.add_term(k, &c);
        p
    }

    pub fn one() -> HPoly {
        HPoly::constant(Rational::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest power present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Nonzero `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn add_term(&mut self, k: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if self.0.len() <= k {
            self.0.resize(k + 1, Rational::ZERO);
        }
        self.0[k] += c;
        if k + 1 == self.0.len() {
            self.trim();
        }
    }

    /// `self += c · h^k · other`.
    pub fn add_scaled(&mut self, other: &HPoly, k: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (j, x) in other.terms() {
            self.add_term(j + k, &(x * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> HPoly {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `h^k`.
    pub fn shift(&self, k: usize) -> HPoly {
        if self.is_zero() {
            return HPoly::zero();
        }
        let mut v: SmallVec<[Rational; 2]> = SmallVec::from_elem(Rational::ZERO, k);
        v.extend(self.0.iter().cloned());
        HPoly(v)
    }

    /// Keeps only the `h^k` component.
    pub fn component(&self, k: usize) -> HPoly {
        HPoly::monomial(k, self.coeff(k))
    }
}

impl From<Rational> for HPoly {
    fn from(c: Rational) -> Self {
        HPoly::constant(c)
    }
}

impl AddAssign<&HPoly> for HPoly {
    fn add_assign(&mut self, rhs: &HPoly) {
        self.add_scaled(rhs, 0, &Rational::ONE);
    }
}

impl SubAssign<&HPoly> for HPoly {
    fn sub_assign(&mut self, rhs: &HPoly) {
        self.add_scaled(rhs, 0, &-Rational::ONE);
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        let mut r = HPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                r.add_term(i + j, &(a * b));
            }
        }
        r
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})h")?,
                _ => write!(f, "({c})h^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn trims_trailing_zeros() {
        let mut p = HPoly::monomial(2, r(3));
        p.add_term(2, &r(-3));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        let mut q = HPoly::constant(r(1));
        q.add_term(1, &r(2));
        q.add_term(1, &r(-2));
        assert_eq!(q, HPoly::one());
    }

    #[test]
    fn product_and_shift() {
        let a = &HPoly::one() + &HPoly::monomial(1, r(1));
        let sq = &a * &a;
        assert_eq!(sq.coeffs(), &[r(1), r(2), r(1)]);
        assert_eq!(a.shift(2).coeffs(), &[r(0), r(0), r(1), r(1)]);
        assert_eq!(sq.low_degree(), Some(0));
        assert_eq!(HPoly::monomial(1, r(5)).low_degree(), Some(1));
    }

    #[test]
    fn serializes_as_array() {
        let p = HPoly::monomial(1, Rational::new(1, 2));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["0/1","1/2"]"#);
    }
}

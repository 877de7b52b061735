//! Dense univariate polynomials over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial with integer coefficients, `coeffs[i]` being the coefficient
/// of `x^i`. The zero polynomial has no coefficients; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `x^n - c`
    pub fn binomial(n: usize, c: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-c);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial("pseudo_rem"))?;
        let lc = d.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let Some(n) = r.degree() else {
            return Ok(r);
        };
        if n < dd {
            return Ok(r);
        }
        let mut steps = n - dd + 1;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            r = r.scale(&lc).sub(&d.scale(&lr).shift(rd - dd));
            steps -= 1;
        }
        let fix = num_traits::pow(lc, steps);
        Ok(r.scale(&fix))
    }

    /// Primitive gcd via the primitive pseudo-remainder sequence. The result
    /// has positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = match (self.degree(), other.degree()) {
            (None, _) => return other.primitive_part(),
            (_, None) => return self.primitive_part(),
            (Some(x), Some(y)) if x >= y => (self.primitive_part(), other.primitive_part()),
            _ => (other.primitive_part(), self.primitive_part()),
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Resultant of two nonzero polynomials as the determinant of their
/// Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let m = p.degree().ok_or(Error::ZeroPolynomial("resultant"))?;
    let n = q.degree().ok_or(Error::ZeroPolynomial("resultant"))?;
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for (r, row) in rows.iter_mut().enumerate().take(n) {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            rows[n + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_det(rows))
}

/// Fraction-free Gaussian elimination; every intermediate division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trims_leading_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn eval_root_of_unity() {
        assert_eq!(IntPoly::binomial(12, 1).eval_i64(1), BigInt::zero());
        assert_eq!(p(&[-3, 1]).eval_i64(3), BigInt::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -3, 1]).to_string(), "x^2 - 3x + 1");
        assert_eq!(p(&[-1, 0, 0, 1]).to_string(), "x^3 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn resultant_shared_root() {
        assert_eq!(
            resultant(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn resultant_constants() {
        // Res(c, q) = c^deg q
        assert_eq!(
            resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(resultant(&p(&[3]), &p(&[5])).unwrap(), BigInt::one());
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(matches!(
            resultant(&IntPoly::zero(), &p(&[1, 1])),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn resultant_twelfth_roots_against_x2_plus_3() {
        // Each root b of x^2 + 3 has b^12 = 729, so the resultant is 728^2.
        let r = resultant(&IntPoly::binomial(12, 1), &p(&[3, 0, 1])).unwrap();
        assert_eq!(r, BigInt::from(529_984));
    }

    #[test]
    fn gcd_examples() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-2, 1, 1]); // (x-1)(x+2)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6])), p(&[1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[5, 0, 2]);
        let r = a.pseudo_rem(&b).unwrap();
        assert!(r.degree().unwrap() < 2);
        // lc(b)^2 * a - r is divisible by b: check at the roots via resultant
        let lhs = a.scale(&BigInt::from(4)).sub(&r);
        assert_eq!(lhs.pseudo_rem(&b).unwrap(), IntPoly::zero());
    }
}

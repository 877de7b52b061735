//! Sparse bivariate polynomials in (x, y) over an arbitrary commutative ring.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Monomial `x^i y^j` keyed as `(i, j)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly<R> {
    terms: BTreeMap<(u32, u32), R>,
}

impl<R> BiPoly<R>
where
    R: Clone + PartialEq + Zero + One + Neg<Output = R>,
    for<'a> &'a R: Add<&'a R, Output = R> + Mul<&'a R, Output = R> + Sub<&'a R, Output = R>,
{
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: R, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), R)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, &c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: &R) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&(i, j)) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, &(a * b));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, a)| (k, c * a)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(R::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &R, y: &R) -> R {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let xp = powers(x, max_i);
        let yp = powers(y, max_j);
        self.terms.iter().fold(R::zero(), |acc, (&(i, j), c)| {
            &acc + &(&(c * &xp[i as usize]) * &yp[j as usize])
        })
    }

    /// Applies `f` to every coefficient, dropping terms that map to zero.
    pub fn map_coeffs<S>(&self, mut f: impl FnMut(&R) -> S) -> BiPoly<S>
    where
        S: Clone + PartialEq + Zero + One + Neg<Output = S>,
        for<'a> &'a S: Add<&'a S, Output = S> + Mul<&'a S, Output = S> + Sub<&'a S, Output = S>,
    {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    /// Fallible variant of [`BiPoly::map_coeffs`].
    pub fn try_map_coeffs<S, E>(
        &self,
        mut f: impl FnMut(&R) -> Result<S, E>,
    ) -> Result<BiPoly<S>, E>
    where
        S: Clone + PartialEq + Zero + One + Neg<Output = S>,
        for<'a> &'a S: Add<&'a S, Output = S> + Mul<&'a S, Output = S> + Sub<&'a S, Output = S>,
    {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&k, c) in &self.terms {
            terms.push((k, f(c)?));
        }
        Ok(BiPoly::from_terms(terms))
    }

    /// First monomial (in key order) where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<(u32, u32)> {
        let diff = self.sub(other);
        diff.terms.keys().next().copied()
    }
}

fn powers<R>(x: &R, n: usize) -> Vec<R>
where
    R: Clone + One,
    for<'a> &'a R: Mul<&'a R, Output = R>,
{
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one());
    for k in 0..n {
        let next = &out[k] * x;
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = BiPoly<BigInt>;

    fn lin(a: i64, b: i64) -> P {
        P::from_terms([((1, 0), BigInt::from(a)), ((0, 1), BigInt::from(b))])
    }

    #[test]
    fn product_of_linear_forms() {
        let p = lin(1, 1).mul(&lin(1, -1));
        assert_eq!(p.coeff(2, 0), BigInt::from(1));
        assert_eq!(p.coeff(1, 1), BigInt::from(0));
        assert_eq!(p.coeff(0, 2), BigInt::from(-1));
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.eval(&BigInt::from(5), &BigInt::from(3)), BigInt::from(16));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = lin(1, 1).sub(&lin(1, 1));
        assert!(p.is_zero());
        assert_eq!(lin(1, 2).first_difference(&lin(1, 3)), Some((0, 1)));
    }

    #[test]
    fn power() {
        let p = lin(1, 1).pow(3);
        assert_eq!(p.coeff(2, 1), BigInt::from(3));
        assert_eq!(P::zero().pow(0), P::constant(BigInt::from(1)));
    }
}

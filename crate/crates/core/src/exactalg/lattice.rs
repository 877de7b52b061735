use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Index in Z^n of the lattice spanned by `rows` (each of length `n`), or 0
/// when the rows do not span a full-rank sublattice. Triangularizes with
/// extended-gcd row operations, so the result is exact.
pub fn lattice_index(rows: &[Vec<BigInt>], n: usize) -> BigInt {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut index = BigInt::one();
    let mut top = 0;
    for col in 0..n {
        // fold every row below `top` into the pivot row of this column
        for i in top + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let (x, y) = (m[top][col].clone(), m[i][col].clone());
            let e = x.extended_gcd(&y);
            let (gx, gy) = (&x / &e.gcd, &y / &e.gcd);
            let (head, tail) = m.split_at_mut(i);
            for (t, r) in head[top][col..].iter_mut().zip(&mut tail[0][col..]) {
                let p = &e.x * &*t + &e.y * &*r;
                let q = &gx * &*r - &gy * &*t;
                *t = p;
                *r = q;
            }
        }
        if top >= m.len() || m[top][col].is_zero() {
            return BigInt::zero();
        }
        index *= m[top][col].abs();
        top += 1;
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_indices() {
        assert_eq!(
            lattice_index(&rows(&[&[2, 0], &[0, 3]]), 2),
            BigInt::from(6)
        );
        assert_eq!(
            lattice_index(&rows(&[&[4, 6], &[6, 9], &[2, 1]]), 2),
            BigInt::from(4)
        );
        assert_eq!(lattice_index(&rows(&[&[1, 2], &[2, 4]]), 2), BigInt::zero());
        assert_eq!(
            lattice_index(&rows(&[&[0, 5], &[3, 7]]), 2),
            BigInt::from(15)
        );
    }
}

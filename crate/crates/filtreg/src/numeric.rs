//! Exact finite differences and binomial-basis interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Successive forward differences of a table.
pub fn forward_diffs(values: &[i64]) -> Vec<i64> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Looks for the smallest `δ` such that the `(δ+1)`-th differences vanish
/// on a terminal window of `max(4, δ+2)` entries. Returns `(δ, c)` where
/// `c` is the stabilized `δ`-th difference, i.e. `δ! ·` (leading
/// coefficient) for a table that is eventually polynomial of degree `δ`.
pub fn stabilized_degree(values: &[i64]) -> Option<(usize, i64)> {
    let mut table = values.to_vec();
    for delta in 0..values.len() {
        let window = 4usize.max(delta + 2);
        let next = forward_diffs(&table);
        if next.len() >= window && next.iter().rev().take(window).all(|&d| d == 0) {
            let c = *table.last().unwrap();
            return Some((delta, c));
        }
        table = next;
        if table.len() < 2 {
            return None;
        }
    }
    None
}

/// `binom(a, k)` for integer `a` (possibly negative) and `k >= 0`.
pub fn binomial(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(a - j);
    }
    let mut den = BigInt::one();
    for j in 1..=k as i64 {
        den *= BigInt::from(j);
    }
    num / den
}

/// Solves for `e_0..e_D` in
/// `P(t) = Σ_i (-1)^i e_i binom(t + D - i, D - i)`
/// from the `D+1` values `P(start), ..., P(start+D)`.
/// Fails (returns `None`) when a solution is non-integral.
pub fn interpolate_binomial(start: i64, values: &[i64]) -> Option<Vec<BigInt>> {
    let dd = values.len().checked_sub(1)?;
    let n = dd + 1;
    // build augmented matrix over exact rationals
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for (j, v) in values.iter().enumerate() {
        let t = start + j as i64;
        let mut row: Vec<BigRational> = (0..n)
            .map(|i| {
                let b = binomial(t + (dd as i64) - (i as i64), (dd - i) as u32);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                BigRational::from_integer(b * BigInt::from(sign))
            })
            .collect();
        row.push(BigRational::from_integer(BigInt::from(*v)));
        mat.push(row);
    }
    // Gaussian elimination
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        let inv = mat[col][col].clone();
        for k in col..=n {
            mat[col][k] = &mat[col][k] / &inv;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let c = mat[r][col].clone();
                for k in col..=n {
                    let s = &c * &mat[col][k];
                    mat[r][k] = &mat[r][k] - s;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for row in mat.iter().take(n) {
        let e = &row[n];
        if !e.is_integer() {
            return None;
        }
        out.push(e.to_integer());
    }
    Some(out)
}

/// Evaluates `P(t) = Σ_i (-1)^i e_i binom(t + D - i, D - i)`.
pub fn eval_binomial_poly(coeffs: &[BigInt], t: i64) -> BigInt {
    let dd = coeffs.len() as i64 - 1;
    let mut acc = BigInt::zero();
    for (i, e) in coeffs.iter().enumerate() {
        let b = binomial(t + dd - i as i64, (dd - i as i64) as u32);
        let term = e * b;
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Checked conversion for report fields.
pub fn bigint_to_i64(v: &BigInt) -> Option<i64> {
    if v.abs() <= BigInt::from(i64::MAX) {
        let (sign, digits) = v.to_u64_digits();
        let mag = digits.first().copied().unwrap_or(0);
        Some(match sign {
            num_bigint::Sign::Minus => -(mag as i64),
            _ => mag as i64,
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilization_detects_degree() {
        // t^2 + 1 from t = 0
        let vals: Vec<i64> = (0..12).map(|t: i64| t * t + 1).collect();
        let (d, c) = stabilized_degree(&vals).unwrap();
        assert_eq!(d, 2);
        assert_eq!(c, 2); // 2! * 1
        let flat: Vec<i64> = std::iter::repeat_n(5, 8).collect();
        assert_eq!(stabilized_degree(&flat).unwrap(), (0, 5));
        let wild: Vec<i64> = (0..6).map(|t: i64| 1 << t).collect();
        assert_eq!(stabilized_degree(&wild), None);
    }

    #[test]
    fn interpolation_recovers_hilbert_samuel_coefficients() {
        // ℓ = binom(t+2, 2): e = (1, 0, 0) with D = 2
        let vals: Vec<i64> = (3..6).map(|t| ((t + 2) * (t + 1)) / 2).collect();
        let e = interpolate_binomial(3, &vals).unwrap();
        assert_eq!(e, vec![1.into(), 0.into(), 0.into()]);
        for t in 0..10 {
            let expect = ((t + 2) * (t + 1)) / 2;
            assert_eq!(eval_binomial_poly(&e, t), BigInt::from(expect));
        }
        // ℓ = 2(t+1): e = (2, 0) with D = 1
        let vals: Vec<i64> = (1..3).map(|t| 2 * (t + 1)).collect();
        let e = interpolate_binomial(1, &vals).unwrap();
        assert_eq!(e, vec![2.into(), 0.into()]);
    }

    #[test]
    fn binomials_with_negative_top() {
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }
}

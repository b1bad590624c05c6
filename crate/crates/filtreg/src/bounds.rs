//! Exact evaluators for every bound formula, in arbitrary-precision
//! integer arithmetic. The exponents `3(d-1)! - 1` overflow fixed width
//! already at `d = 5`, so everything is a `BigInt`. Each evaluator
//! implements its inequality's right-hand side literally, including the
//! asymmetric case splits at `d = 1`, `d = 2` and `d ≥ 3`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::BoundError;

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// `3(d-1)! - 1` as a `u64` exponent.
fn reg_exponent(d: u64) -> u64 {
    3 * factorial(d - 1) - 1
}

fn pow(base: BigInt, exp: u64) -> BigInt {
    base.pow(exp.try_into().expect("exponent fits in u32 at desk scale"))
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `binom(n + d, d)` exactly.
pub fn binom(n: u64, d: u64) -> BigInt {
    let mut num = BigInt::one();
    for j in 1..=d {
        num *= big((n + j) as i64);
    }
    let mut den = BigInt::one();
    for j in 1..=d {
        den *= big(j as i64);
    }
    num / den
}

/// Bound for the regularity of the associated graded module:
/// `D + r - 1` when `d = 1`, `(D + r + 1)^{3(d-1)!-1} - d` when `d ≥ 2`.
pub fn bound_assoc_graded(d: i64, dd: i64, r: i64) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(if d == 1 {
        big(dd + r - 1)
    } else {
        pow(big(dd + r + 1), reg_exponent(d as u64)) - big(d)
    })
}

/// Bounds for the Hilbert coefficients: `e_0 ≤ D`,
/// `|e_1| ≤ (D + r - 1) D`, `|e_i| ≤ (D + r + 1)^{3i!-i+1}` for `i ≥ 2`.
pub fn bound_hilbert_coeff(i: i64, d: i64, dd: i64, r: i64) -> Result<BigInt, BoundError> {
    if i < 0 || i > d {
        return Err(BoundError::IndexOutOfRange(i, d));
    }
    Ok(match i {
        0 => big(dd),
        1 => big(dd + r - 1) * big(dd),
        _ => {
            let exp = 3 * factorial(i as u64) - i as u64 + 1;
            pow(big(dd + r + 1), exp)
        }
    })
}

/// Graded bound via the homological degree:
/// `ℓ(A/I) hdeg(M) + r - 1` when `d = 1`,
/// `[ℓ(A/I)^d hdeg(M) + r + 1]^{3(d-1)!-1} - d` when `d ≥ 2`.
pub fn bound_graded_hdeg(d: i64, l_ai: i64, hdeg: i64, r: i64) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(if d == 1 {
        big(l_ai * hdeg + r - 1)
    } else {
        let base = pow(big(l_ai), d as u64) * big(hdeg) + big(r + 1);
        pow(base, reg_exponent(d as u64)) - big(d)
    })
}

/// Specialization to the associated graded ring of the ambient ring:
/// `ℓ(A/I) - 1` when `d = 1`, `(ℓ(A/I) + 1)^{3(d-1)!-1} - d` when `d ≥ 2`.
pub fn bound_ambient_graded(d: i64, l_ai: i64) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(if d == 1 {
        big(l_ai - 1)
    } else {
        pow(big(l_ai + 1), reg_exponent(d as u64)) - big(d)
    })
}

/// Graded bound via the regularity of the module:
/// `ℓ(A/I) μ(M) (reg M - i(M) + 1)^n + r - 1` when `d = 1`,
/// `[ℓ(A/I)^d (μ(M)(reg M - i(M) + 1)^n)^{2^{(d-1)^2}} + r + 1]^{3(d-1)!-1} - d`
/// when `d ≥ 2`.
pub fn bound_graded_reg_m(
    d: i64,
    l_ai: i64,
    mu_m: i64,
    reg_m: i64,
    i_m: i64,
    n: i64,
    r: i64,
) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    let core = big(mu_m) * pow(big(reg_m - i_m + 1), n as u64);
    Ok(if d == 1 {
        big(l_ai) * core + big(r - 1)
    } else {
        let inner_exp = 1u64 << ((d as u64 - 1) * (d as u64 - 1));
        let base = pow(big(l_ai), d as u64) * pow(core, inner_exp) + big(r + 1);
        pow(base, reg_exponent(d as u64)) - big(d)
    })
}

/// Bound for filtrations of an equigenerated ideal:
/// `ℓ(M/QM) + r + reg M - i(M) - 1` when `d = 1`,
/// `[ℓ(M/QM) + r + reg M - i(M) + (d-1)Δ]^{3(d-1)!-1} - d` when `d ≥ 2`.
pub fn bound_equigenerated(
    d: i64,
    l_mqm: i64,
    r: i64,
    reg_m: i64,
    i_m: i64,
    delta: Option<i64>,
) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(if d == 1 {
        big(l_mqm + r + reg_m - i_m - 1)
    } else {
        let delta = delta.ok_or_else(|| BoundError::MissingArgument("delta".into()))?;
        let base = big(l_mqm + r + reg_m - i_m + (d - 1) * delta);
        pow(base, reg_exponent(d as u64)) - big(d)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberMode {
    A0,
    Reg,
    E0,
    Ei(i64),
}

/// Fiber-cone bounds in terms of `D = D(I, M)` and `r = r(𝔉)`.
pub fn bound_fiber(d: i64, dd: i64, r: i64, mode: FiberMode) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(match mode {
        FiberMode::A0 => {
            if d == 1 {
                big(dd + r)
            } else {
                pow(big(dd + r + 2), reg_exponent(d as u64)) - big(d)
            }
        }
        FiberMode::E0 => big(2) * big(dd) * big(dd + r),
        FiberMode::Ei(i) => {
            if i < 1 || i > d - 1 {
                return Err(BoundError::IndexOutOfRange(i, d));
            }
            let exp = 3 * factorial(i as u64 + 1) - i as u64;
            big(2) * pow(big(dd + r + 2), exp)
        }
        FiberMode::Reg => match d {
            1 => big(2) * big(dd) * big(dd + r) + big(r - 1),
            2 => pow(big(dd + r + 2), 2) + pow(big(dd), 2) - big(3),
            _ => pow(big(dd + r + 2), reg_exponent(d as u64)) - big(d),
        },
    })
}

/// Regularity bound for the classical fiber cone `F_m(I)`:
/// `2D² - 1` when `d = 1`, `2D² + 4D + 1` when `d = 2`,
/// `(D + 2)^{3(d-1)!-1} - d` when `d ≥ 3`.
pub fn bound_fiber_classical(d: i64, dd: i64) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    Ok(match d {
        1 => big(2) * big(dd) * big(dd) - big(1),
        2 => big(2) * big(dd) * big(dd) + big(4 * dd) + big(1),
        _ => pow(big(dd + 2), reg_exponent(d as u64)) - big(d),
    })
}

/// Graded fiber-cone bound in terms of `ℓ(A/I)` and `hdeg(I, M)`.
pub fn bound_fiber_graded(
    d: i64,
    l_ai: i64,
    hdeg_im: i64,
    r: i64,
) -> Result<BigInt, BoundError> {
    if d < 1 {
        return Err(BoundError::InvalidDimension(d));
    }
    let l = big(l_ai);
    let h = big(hdeg_im);
    Ok(match d {
        1 => {
            let lh = &l * &h;
            big(2) * &lh * (&lh + big(r)) + big(r - 1)
        }
        2 => {
            let a = &l * &l * &h + big(r + 2);
            let b = pow(l.clone(), 4) * &h * &h;
            &a * &a + b - big(3)
        }
        _ => {
            let base = pow(l, d as u64) * h + big(r + 2);
            pow(base, reg_exponent(d as u64)) - big(d)
        }
    })
}

/// `binom(n + d, d) · bound`, the Hilbert–Samuel comparison.
pub fn bound_hs_binomial(n: i64, d: i64, bound: i64) -> Result<BigInt, BoundError> {
    if d < 1 || n < 0 {
        return Err(BoundError::InvalidDimension(d.min(n)));
    }
    Ok(binom(n as u64, d as u64) * big(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn assoc_graded_examples() {
        assert_eq!(bound_assoc_graded(1, 2, 0).unwrap(), b(1));
        assert_eq!(bound_assoc_graded(2, 1, 0).unwrap(), b(2));
        assert_eq!(bound_assoc_graded(3, 4, 1).unwrap(), b(7773));
        assert!(bound_assoc_graded(0, 1, 0).is_err());
    }

    #[test]
    fn hilbert_coeff_examples() {
        assert_eq!(bound_hilbert_coeff(0, 2, 2, 0).unwrap(), b(2));
        assert_eq!(bound_hilbert_coeff(1, 2, 2, 0).unwrap(), b(2));
        assert_eq!(bound_hilbert_coeff(2, 2, 1, 0).unwrap(), b(32));
        assert!(bound_hilbert_coeff(3, 2, 1, 0).is_err());
    }

    #[test]
    fn graded_hdeg_examples() {
        assert_eq!(bound_graded_hdeg(1, 2, 1, 0).unwrap(), b(1));
        assert_eq!(bound_graded_hdeg(2, 4, 1, 0).unwrap(), b(287));
        // d = 1 specialization reproduces the ambient corollary
        assert_eq!(
            bound_graded_hdeg(1, 5, 1, 0).unwrap(),
            bound_ambient_graded(1, 5).unwrap()
        );
        assert_eq!(bound_ambient_graded(2, 3).unwrap(), b(14));
    }

    #[test]
    fn graded_reg_m_examples() {
        assert_eq!(bound_graded_reg_m(1, 2, 1, 0, 0, 1, 0).unwrap(), b(1));
        assert_eq!(bound_graded_reg_m(1, 4, 1, 1, 0, 2, 0).unwrap(), b(15));
        assert_eq!(bound_graded_reg_m(2, 1, 1, 0, 0, 2, 0).unwrap(), b(2));
    }

    #[test]
    fn equigenerated_examples() {
        assert_eq!(bound_equigenerated(1, 2, 0, 1, 0, None).unwrap(), b(2));
        assert_eq!(bound_equigenerated(2, 4, 0, 0, 0, Some(2)).unwrap(), b(34));
        assert_eq!(bound_equigenerated(2, 4, 1, 0, 0, Some(2)).unwrap(), b(47));
        assert!(bound_equigenerated(2, 4, 0, 0, 0, None).is_err());
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(bound_fiber(1, 2, 0, FiberMode::Reg).unwrap(), b(7));
        assert_eq!(bound_fiber(2, 1, 0, FiberMode::Reg).unwrap(), b(7));
        assert_eq!(bound_fiber(1, 2, 1, FiberMode::A0).unwrap(), b(3));
        assert_eq!(bound_fiber(1, 2, 0, FiberMode::E0).unwrap(), b(8));
        assert_eq!(bound_fiber(2, 1, 0, FiberMode::Ei(1)).unwrap(), b(2 * 243));
    }

    #[test]
    fn fiber_classical_examples() {
        assert_eq!(bound_fiber_classical(1, 2).unwrap(), b(7));
        assert_eq!(bound_fiber_classical(2, 1).unwrap(), b(7));
        assert_eq!(bound_fiber_classical(3, 1).unwrap(), b(240));
        assert_eq!(bound_fiber_classical(2, 4).unwrap(), b(49));
    }

    #[test]
    fn fiber_graded_examples() {
        assert_eq!(bound_fiber_graded(1, 2, 1, 0).unwrap(), b(7));
        assert_eq!(bound_fiber_graded(2, 1, 1, 0).unwrap(), b(7));
        assert_eq!(bound_fiber_graded(3, 1, 1, 1).unwrap(), b(1021));
    }

    #[test]
    fn hs_binomial_examples() {
        assert_eq!(bound_hs_binomial(0, 2, 4).unwrap(), b(4));
        assert_eq!(bound_hs_binomial(2, 2, 4).unwrap(), b(24));
        assert_eq!(bound_hs_binomial(1, 1, 2).unwrap(), b(4));
    }

    #[test]
    fn classical_fiber_matches_general_for_high_dimension() {
        for d in 3..=5 {
            for dd in 1..=3 {
                assert_eq!(
                    bound_fiber_classical(d, dd).unwrap(),
                    bound_fiber(d, dd, 0, FiberMode::Reg).unwrap()
                );
            }
        }
    }

    #[test]
    fn monotone_in_every_argument() {
        // sweep each argument up by one on a grid and require nondecreasing
        for d in 1..=3i64 {
            for dd in 1..=4 {
                for r in 0..=2 {
                    let base = bound_assoc_graded(d, dd, r).unwrap();
                    assert!(bound_assoc_graded(d, dd + 1, r).unwrap() >= base);
                    assert!(bound_assoc_graded(d, dd, r + 1).unwrap() >= base);
                    let fb = bound_fiber(d, dd, r, FiberMode::Reg).unwrap();
                    assert!(bound_fiber(d, dd + 1, r, FiberMode::Reg).unwrap() >= fb);
                    assert!(bound_fiber(d, dd, r + 1, FiberMode::Reg).unwrap() >= fb);
                    for l in 1..=3 {
                        let gh = bound_graded_hdeg(d, l, dd, r).unwrap();
                        assert!(bound_graded_hdeg(d, l + 1, dd, r).unwrap() >= gh);
                        assert!(bound_graded_hdeg(d, l, dd + 1, r).unwrap() >= gh);
                        let fg = bound_fiber_graded(d, l, dd, r).unwrap();
                        assert!(bound_fiber_graded(d, l + 1, dd, r).unwrap() >= fg);
                        let eq = bound_equigenerated(d, l, r, dd, 0, Some(1)).unwrap();
                        assert!(bound_equigenerated(d, l + 1, r, dd, 0, Some(1)).unwrap() >= eq);
                        assert!(bound_equigenerated(d, l, r, dd + 1, 0, Some(1)).unwrap() >= eq);
                    }
                }
            }
        }
    }

    #[test]
    fn big_exponents_do_not_overflow() {
        // 3·4! - 1 = 71; (10)^71 needs arbitrary precision
        let v = bound_assoc_graded(5, 8, 1).unwrap();
        assert!(v > BigInt::from(u128::MAX));
        assert_eq!(v, BigInt::from(10).pow(71) - 5);
    }
}

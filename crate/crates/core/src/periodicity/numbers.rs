//! Small number-theoretic helpers: residue combinations of cycle lengths and
//! two-coin representations.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("no combination of {lengths:?} is congruent to {target} mod {modulus}")]
    Unsolvable { lengths: Vec<u64>, target: u64, modulus: u64 },
    #[error("{x} and {y} are not coprime positive integers")]
    NotCoprime { x: u64, y: u64 },
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Coefficients `a_i ∈ [0, modulus)` with `Σ a_i·lengths_i ≡ target (mod modulus)`.
///
/// Solvable exactly when `gcd(lengths ∪ {modulus})` divides `target`.
pub fn crt_combine(lengths: &[u64], target: u64, modulus: u64) -> Result<Vec<u64>, NumberError> {
    if modulus == 0 {
        return Err(NumberError::ZeroModulus);
    }
    let r = modulus as i128;
    // invariant: g ≡ Σ coeffs_j · lengths_j (mod r), with g | r
    let mut g = r;
    let mut coeffs: Vec<i128> = Vec::with_capacity(lengths.len());
    for &x in lengths {
        let (ng, s, t) = ext_gcd(g, x as i128 % r);
        for c in coeffs.iter_mut() {
            *c = (*c * s).rem_euclid(r);
        }
        coeffs.push(t.rem_euclid(r));
        g = ng.abs();
    }
    let target_mod = target as i128 % r;
    if target_mod % g != 0 {
        return Err(NumberError::Unsolvable {
            lengths: lengths.to_vec(),
            target,
            modulus,
        });
    }
    let scale = (target_mod / g) % r;
    let result: Vec<u64> = coeffs.iter().map(|&c| ((c * scale).rem_euclid(r)) as u64).collect();
    debug_assert_eq!(
        result
            .iter()
            .zip(lengths)
            .map(|(&a, &x)| (a as i128 * x as i128).rem_euclid(r))
            .sum::<i128>()
            .rem_euclid(r),
        target_mod
    );
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinRepresentation {
    pub x: u64,
    pub y: u64,
    pub n: u64,
    /// Nonnegative `(a, b)` with `a·x + b·y = n`, smallest `b`; `None` if impossible.
    pub coefficients: Option<(u64, u64)>,
}

/// Writes `n = a·x + b·y` with `a, b ≥ 0` for coprime `x, y`. Every `n ≥ (x-1)(y-1)`
/// is representable; below that a search over `b` decides.
pub fn coin_represent(x: u64, y: u64, n: u64) -> Result<CoinRepresentation, NumberError> {
    if x == 0 || y == 0 || x.gcd(&y) != 1 {
        return Err(NumberError::NotCoprime { x, y });
    }
    let coefficients = if n >= (x - 1) * (y - 1) {
        // least b with b ≡ n·y⁻¹ (mod x); representability above the threshold
        // guarantees b·y ≤ n
        let (_, inv, _) = ext_gcd(y as i128, x as i128);
        let b = ((n as i128 % x as i128) * inv).rem_euclid(x as i128) as u64;
        debug_assert!(b * y <= n);
        Some(((n - b * y) / x, b))
    } else {
        (0..=n / y).find(|b| (n - b * y) % x == 0).map(|b| ((n - b * y) / x, b))
    };
    Ok(CoinRepresentation { x, y, n, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(prime_factors(30), vec![2, 3, 5]);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_combine(&[4], 1, 3).unwrap(), vec![1]);
        let a = crt_combine(&[6, 10, 15], 1, 30).unwrap();
        assert_eq!((6 * a[0] + 10 * a[1] + 15 * a[2]) % 30, 1);
        assert!(a.iter().all(|&c| c < 30));
        assert!(matches!(crt_combine(&[4, 6], 1, 2), Err(NumberError::Unsolvable { .. })));
        assert_eq!(crt_combine(&[], 0, 5).unwrap(), Vec::<u64>::new());
        assert!(crt_combine(&[], 1, 5).is_err());
        assert_eq!(crt_combine(&[3], 1, 0), Err(NumberError::ZeroModulus));
    }

    #[test]
    fn crt_matches_exhaustive_search() {
        for r in 1..=12u64 {
            for x1 in 1..=9u64 {
                for x2 in 1..=9u64 {
                    for m in 0..r {
                        let exists = (0..r).any(|a| (0..r).any(|b| (a * x1 + b * x2) % r == m));
                        match crt_combine(&[x1, x2], m, r) {
                            Ok(c) => {
                                assert!(exists);
                                assert_eq!((c[0] * x1 + c[1] * x2) % r, m);
                            }
                            Err(_) => assert!(!exists, "r={r} x=({x1},{x2}) m={m}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coin_examples() {
        assert_eq!(coin_represent(3, 5, 7).unwrap().coefficients, None);
        assert_eq!(coin_represent(3, 5, 8).unwrap().coefficients, Some((1, 1)));
        assert_eq!(coin_represent(1, 7, 12).unwrap().coefficients, Some((12, 0)));
        assert_eq!(coin_represent(0, 7, 12), Err(NumberError::NotCoprime { x: 0, y: 7 }));
        assert!(coin_represent(4, 6, 12).is_err());
    }
}

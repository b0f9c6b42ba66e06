//! Exact residue arithmetic and multiplicative number theory over `Z/n`.
//!
//! Everything here works on `u64` moduli with `u128` intermediates. The
//! Ramanujan sum is evaluated through its multiplicative closed form
//! `c_n(k) = mu(n/d) * phi(n) / phi(n/d)` with `d = gcd(n, k)`, so it is an
//! exact integer; no exponential sums are formed.

use crate::error::{Error, Result};

/// `(x)_n`: the least non-negative representative of `x` modulo `n`.
pub fn least_residue(x: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(residue(i128::from(x), n))
}

#[inline]
pub(crate) fn residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(i128::from(n)) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `gcd(n, k)` after reducing `k` modulo `n`; `gcd(n, 0) = n`.
pub fn gcd_with(n: u64, k: i64) -> u64 {
    gcd(n, residue(i128::from(k), n))
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. `factorize(1)` is empty.
///
/// Trial division by 2, 3 and then `6k +/- 1`; whenever a factor is removed
/// the cofactor is tested for primality so that a large prime cofactor ends
/// the search immediately.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    if n <= 1 {
        return factors;
    }
    for p in [2u64, 3] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut cofactor_checked = false;
    let mut d = 5u64;
    while n > 1 && d.saturating_mul(d) <= n {
        if !cofactor_checked {
            if is_prime(n) {
                break;
            }
            cofactor_checked = true;
        }
        for p in [d, d + 2] {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
                cofactor_checked = false;
            }
        }
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

fn phi_from_factors(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    phi_from_factors(&factorize(n))
}

/// Moebius function.
pub fn moebius(n: u64) -> i8 {
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `n`, in `[1, n-1]`.
pub fn inverse_mod(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n == 1 {
        return Err(Error::NotInvertible { a, n });
    }
    let a_red = residue(i128::from(a), n);
    let (mut old_r, mut r) = (i128::from(a_red), i128::from(n));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(residue(old_s, n))
}

/// An integer modulus `n >= 2` with its factorization and totient cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    n: u64,
    factors: Vec<(u64, u32)>,
    phi: u64,
    coprime_six: bool,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        let factors = factorize(n);
        let phi = phi_from_factors(&factors);
        Ok(Self {
            n,
            phi,
            coprime_six: !n.is_multiple_of(2) && !n.is_multiple_of(3),
            factors,
        })
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    #[inline]
    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn is_coprime_six(&self) -> bool {
        self.coprime_six
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn reduce(&self, x: i64) -> u64 {
        residue(i128::from(x), self.n)
    }

    pub fn is_unit(&self, x: i64) -> bool {
        gcd_with(self.n, x) == 1
    }

    pub fn inverse(&self, a: i64) -> Result<u64> {
        inverse_mod(a, self.n)
    }

    /// Units of `Z/n` in ascending order, `phi(n)` of them.
    pub fn units(&self) -> impl Iterator<Item = Unit<'_>> + '_ {
        (1..self.n)
            .filter(move |&g| gcd(g, self.n) == 1)
            .map(move |value| Unit {
                value,
                modulus: self,
            })
    }

    pub fn unit_values(&self) -> Vec<u64> {
        self.units().map(|u| u.value).collect()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// `c_n(k)` for `k` already reduced into `[0, n)`.
    pub fn ramanujan_residue(&self, r: u64) -> i64 {
        let d = gcd(self.n, r % self.n);
        let mut q = self.n / d;
        let mut sign = 1i64;
        let mut phi_q = 1u64;
        for &(p, _) in &self.factors {
            if !q.is_multiple_of(p) {
                continue;
            }
            q /= p;
            if q.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
            phi_q *= p - 1;
        }
        sign * (self.phi / phi_q) as i64
    }

    /// Ramanujan sum `c_n(k) = sum over units g of e(kg/n)`.
    pub fn ramanujan_sum(&self, k: i64) -> i64 {
        self.ramanujan_residue(self.reduce(k))
    }

    /// `c_n(r)` for every residue `r` in `[0, n)`.
    pub fn ramanujan_table(&self) -> Vec<i64> {
        // c_n(r) depends only on gcd(n, r); evaluate once per divisor.
        let divisors = self.divisors();
        let by_divisor: Vec<i64> = divisors
            .iter()
            .map(|&d| self.ramanujan_residue(d % self.n))
            .collect();
        (0..self.n)
            .map(|r| {
                let d = gcd(self.n, r);
                let i = divisors.binary_search(&d).expect("gcd divides n");
                by_divisor[i]
            })
            .collect()
    }
}

/// Free-function form of [`Modulus::ramanujan_sum`].
pub fn ramanujan_sum(m: &Modulus, k: i64) -> i64 {
    m.ramanujan_sum(k)
}

/// An element of `(Z/n)*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unit<'m> {
    value: u64,
    modulus: &'m Modulus,
}

impl<'m> Unit<'m> {
    pub fn new(value: u64, modulus: &'m Modulus) -> Result<Self> {
        let value = value % modulus.n();
        if gcd(value, modulus.n()) != 1 {
            return Err(Error::NotAUnit {
                value,
                n: modulus.n(),
            });
        }
        Ok(Self { value, modulus })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> &'m Modulus {
        self.modulus
    }

    pub fn inverse(&self) -> Unit<'m> {
        let value = inverse_mod(self.value as i64, self.modulus.n()).expect("units are invertible");
        Unit {
            value,
            modulus: self.modulus,
        }
    }

    /// `(g * x)_n`.
    #[inline]
    pub fn scale(&self, x: u64) -> u64 {
        mul_mod(self.value, x, self.modulus.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn least_residue_examples() {
        assert_eq!(least_residue(7, 5).unwrap(), 2);
        assert_eq!(least_residue(-3, 7).unwrap(), 4);
        assert_eq!(least_residue(10, 5).unwrap(), 0);
        assert!(matches!(least_residue(3, 0), Err(Error::ZeroModulus)));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(91), vec![(7, 1), (13, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(720), vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(factorize(1_000_003), vec![(1_000_003, 1)]);
        assert_eq!(
            factorize(999_999_000_001 * 3),
            vec![(3, 1), (999_999_000_001, 1)]
        );
        assert_eq!(
            factorize(1_000_003 * 999_983),
            vec![(999_983, 1), (1_000_003, 1)]
        );
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..5000u64 {
            let f = factorize(n);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.iter().all(|&(p, e)| e >= 1 && is_prime(p)));
            assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let sieve: Vec<u64> = (2..2000).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        let mr: Vec<u64> = (2..2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        let brute = (1..=1000u64).filter(|&k| gcd(k, 1000) == 1).count() as u64;
        assert_eq!(brute, 400);
        assert_eq!(euler_phi(1000), brute);
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_mod(3, 7).unwrap(), 5);
        assert_eq!(inverse_mod(1, 9).unwrap(), 1);
        let brute = (1..9).find(|&x| (2 * x) % 9 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(inverse_mod(2, 9).unwrap(), brute);
        assert_eq!(inverse_mod(-2, 9).unwrap(), 4);
        assert!(matches!(
            inverse_mod(3, 9),
            Err(Error::NotInvertible { a: 3, n: 9 })
        ));
    }

    #[test]
    fn units_examples() {
        assert_eq!(m(9).unit_values(), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(m(2).unit_values(), vec![1]);
        assert_eq!(m(7).unit_values(), (1..7).collect::<Vec<_>>());
        for n in 2..300 {
            assert_eq!(m(n).units().count() as u64, euler_phi(n));
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(&m(5), 0), 4);
        assert_eq!(ramanujan_sum(&m(6), 2), -1);
        assert_eq!(ramanujan_sum(&m(5), 1), -1);
        assert_eq!(ramanujan_sum(&m(5), -1), -1);
        assert_eq!(ramanujan_sum(&m(12), 6), -4);
    }

    #[test]
    fn ramanujan_table_matches_pointwise() {
        for n in [2u64, 9, 12, 35, 105, 360] {
            let md = m(n);
            let table = md.ramanujan_table();
            for r in 0..n {
                assert_eq!(table[r as usize], md.ramanujan_residue(r));
            }
        }
    }

    #[test]
    fn divisors_sorted_and_complete() {
        let md = m(720);
        let brute: Vec<u64> = (1..=720).filter(|d| 720 % d == 0).collect();
        assert_eq!(md.divisors(), brute);
    }

    #[test]
    fn modulus_rejects_small() {
        assert!(matches!(Modulus::new(1), Err(Error::ModulusTooSmall(1))));
        assert!(m(35).is_coprime_six());
        assert!(!m(15).is_coprime_six());
    }

    #[test]
    fn unit_rejects_non_coprime() {
        let md = m(9);
        assert!(Unit::new(3, &md).is_err());
        let u = Unit::new(2, &md).unwrap();
        assert_eq!(u.inverse().value(), 5);
        assert_eq!(u.scale(7), 5);
    }
}

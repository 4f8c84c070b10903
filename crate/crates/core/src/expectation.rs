//! The smallest-nondivisor function and its exact expectation: for each
//! integer the least prime that does not divide it, the primorial that
//! controls its level sets, partial sums of the series giving the expected
//! value, exact empirical means, and the least modulus usable at each rank.

use crate::error::{Error, Result};
use crate::parallel;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Smallest prime that does not divide `k`.
pub fn smallest_prime_not_dividing(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::Invalid(format!(
            "smallest non-dividing prime is defined for k > 1, got {k}"
        )));
    }
    let mut p = 2u64;
    loop {
        if k % p != 0 {
            return Ok(p);
        }
        p = next_prime(p);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

/// Ascending primes strictly below `bound`, by sieve.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for q in 2..n {
        if !composite[q] {
            primes.push(q as u64);
            let mut m = q * q;
            while m < n {
                composite[m] = true;
                m += q;
            }
        }
    }
    primes
}

/// Product of all primes strictly below `k`, with the empty product at
/// `k = 2` equal to 1.
pub fn primorial(k: u64) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::Invalid(format!(
            "primorial is defined for k >= 2, got {k}"
        )));
    }
    let mut q = BigUint::one();
    for p in primes_below(k) {
        q *= BigUint::from(p);
    }
    Ok(q)
}

/// Natural log of the primorial, the diagnostic that grows linearly in `k`.
pub fn log_primorial(k: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::Invalid(format!(
            "primorial is defined for k >= 2, got {k}"
        )));
    }
    Ok(primes_below(k).iter().map(|&p| (p as f64).ln()).sum())
}

/// Partial sum of the expectation series over primes below a bound.
#[derive(Clone, Debug)]
pub struct ConstantReport {
    pub bound: u64,
    /// Primes the partial sum ranges over.
    pub primes_used: usize,
    pub exact: BigRational,
    /// Term contributed by the largest prime below the bound.
    pub last_term: BigRational,
    /// Twice the term of the next prime, an empirical ceiling on the
    /// omitted tail.
    pub tail_estimate: BigRational,
}

impl ConstantReport {
    pub fn decimal(&self, digits: usize) -> String {
        decimal_string(&self.exact, digits)
    }
}

fn series_term(p: u64) -> BigRational {
    let q = primorial(p).expect("p >= 2");
    BigRational::new(BigInt::from(p - 1), BigInt::from(q))
}

/// Sums (p - 1)/Q(p) over primes p strictly below `bound`, where Q is the
/// primorial. The partial sums increase to the expected value of the
/// smallest-nondivisor function, which is just under 3.
pub fn expectation_constant(bound: u64) -> Result<ConstantReport> {
    let primes = primes_below(bound);
    let mut exact = BigRational::zero();
    let mut last_term = BigRational::zero();
    for &p in &primes {
        last_term = series_term(p);
        exact += &last_term;
    }
    let next = match primes.last() {
        Some(&p) => next_prime(p),
        None => 2,
    };
    let tail_estimate = series_term(next) * BigRational::from_integer(BigInt::from(2));
    Ok(ConstantReport {
        bound,
        primes_used: primes.len(),
        exact,
        last_term,
        tail_estimate,
    })
}

/// Exact mean of the smallest-nondividing prime over `k = 2 ..= x + 1`.
/// The window starts at 2 because the function is undefined at 1; shifting
/// the window does not move the limit.
pub fn empirical_mean(x: u64) -> Result<BigRational> {
    if x < 2 {
        return Err(Error::Invalid(format!(
            "empirical mean needs at least two samples, got x = {x}"
        )));
    }
    let total = parallel::sum_range(2, x + 2, |k| {
        u128::from(smallest_prime_not_dividing(k).expect("k >= 2"))
    });
    Ok(BigRational::new(BigInt::from(total), BigInt::from(x)))
}

/// Least prime `p` coprime to `n - 1` together with `m = p^n (n - 1) + 1`,
/// the smallest rank whose outer automorphism group receives rank `n` through
/// a characteristic congruence cover.
pub fn smallest_modulus(n: u32) -> Result<(u64, BigUint)> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "smallest modulus is defined for n >= 2, got {n}"
        )));
    }
    let k = u64::from(n) - 1;
    let mut p = 2u64;
    while k % p == 0 {
        p = next_prime(p);
    }
    debug_assert_eq!(
        (2..).find(|r| num_integer::gcd(*r, k) == 1),
        Some(p),
        "least coprime residue must be the least non-dividing prime"
    );
    let m = BigUint::from(p).pow(n) * BigUint::from(k) + BigUint::one();
    Ok((p, m))
}

/// Fixed-point decimal rendering of an exact rational, rounded half away
/// from zero at the last digit.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let numer = r.numer().abs().to_biguint().expect("abs is nonnegative");
    let denom = r.denom().abs().to_biguint().expect("denominator nonzero");
    let scale = BigUint::from(10u32).pow(digits as u32);
    let scaled = (&numer * &scale * 2u32 + &denom) / (&denom * 2u32);
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn smallest_nondividing_prime_small_values() {
        assert_eq!(smallest_prime_not_dividing(2).unwrap(), 3);
        assert_eq!(smallest_prime_not_dividing(3).unwrap(), 2);
        assert_eq!(smallest_prime_not_dividing(4).unwrap(), 3);
        assert_eq!(smallest_prime_not_dividing(6).unwrap(), 5);
        assert_eq!(smallest_prime_not_dividing(10).unwrap(), 3);
        assert_eq!(smallest_prime_not_dividing(2310).unwrap(), 13);
        assert!(smallest_prime_not_dividing(1).is_err());
        assert!(smallest_prime_not_dividing(0).is_err());
    }

    #[test]
    fn primorials_multiply_the_primes_below() {
        assert_eq!(primorial(2).unwrap(), BigUint::from(1u32));
        assert_eq!(primorial(3).unwrap(), BigUint::from(2u32));
        assert_eq!(primorial(5).unwrap(), BigUint::from(6u32));
        assert_eq!(primorial(12).unwrap(), BigUint::from(2310u32));
        assert_eq!(primorial(14).unwrap(), BigUint::from(30030u32));
        assert!(primorial(1).is_err());
    }

    /// Independent construction: trial-division primality, term-by-term fold.
    fn constant_oracle(bound: u64) -> BigRational {
        let mut q = BigInt::one();
        let mut sum = BigRational::zero();
        let mut last = 1u64;
        for p in 2..bound {
            if is_prime(p) {
                for r in last..p {
                    if is_prime(r) {
                        q *= BigInt::from(r);
                    }
                }
                last = p;
                sum += BigRational::new(BigInt::from(p - 1), q.clone());
            }
        }
        sum
    }

    #[test]
    fn constant_partial_sums_match_an_independent_fold() {
        let c4 = expectation_constant(4).unwrap();
        assert_eq!(c4.exact, BigRational::from_integer(BigInt::from(2)));
        assert_eq!(c4.primes_used, 2);

        let c50 = expectation_constant(50).unwrap();
        assert_eq!(c50.exact, constant_oracle(50));
        let lo = BigRational::new(BigInt::from(2919), BigInt::from(1000));
        let hi = BigRational::new(BigInt::from(2921), BigInt::from(1000));
        assert!(lo < c50.exact && c50.exact < hi);
        assert_eq!(&c50.decimal(5)[..7], "2.92005");

        let mut prev = BigRational::zero();
        for bound in 2..100 {
            let c = expectation_constant(bound).unwrap().exact;
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn partial_sum_tails_stay_under_the_reported_ceiling() {
        let reference = expectation_constant(500).unwrap().exact;
        for bound in [13, 20, 31, 50] {
            let report = expectation_constant(bound).unwrap();
            let tail = &reference - &report.exact;
            assert!(tail > BigRational::zero());
            assert!(tail < report.tail_estimate, "bound {bound}");
        }
    }

    #[test]
    fn empirical_means_are_exact_rationals() {
        assert_eq!(
            empirical_mean(2).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(2))
        );
        let frozen = [3u64, 2, 3, 2, 5, 2, 3, 2, 3, 2];
        for (k, expect) in (2..).zip(frozen) {
            assert_eq!(smallest_prime_not_dividing(k).unwrap(), expect);
        }
        assert_eq!(
            empirical_mean(10).unwrap(),
            BigRational::new(BigInt::from(27), BigInt::from(10))
        );
        assert!(empirical_mean(1).is_err());
    }

    #[test]
    fn long_run_mean_approaches_the_constant() {
        let mean = empirical_mean(1_000_000).unwrap();
        let c = expectation_constant(100).unwrap().exact;
        let gap = (mean - c).abs();
        assert!(gap < BigRational::new(BigInt::from(1), BigInt::from(100)));
    }

    #[test]
    fn level_sets_are_cut_out_by_primorial_divisibility() {
        let primes = primes_below(30);
        let q: Vec<BigUint> = primes.iter().map(|&p| primorial(p).unwrap()).collect();
        for k in 2..=100_000u64 {
            let expected = primes
                .iter()
                .zip(&q)
                .find(|(&p, q)| {
                    (BigUint::from(k) % *q).is_zero() && k % p != 0
                })
                .map(|(&p, _)| p)
                .unwrap();
            assert_eq!(smallest_prime_not_dividing(k).unwrap(), expected);
        }
    }

    #[test]
    fn nondivisor_of_primorial_lands_in_the_bertrand_interval() {
        for k in [5u64, 7, 11] {
            let q = primorial(k).unwrap().to_u64().unwrap();
            let f = smallest_prime_not_dividing(q).unwrap();
            assert!(k <= f && f < 2 * k, "k = {k}, f(Q(k)) = {f}");
        }
    }

    #[test]
    fn log_primorial_grows_linearly() {
        for k in [50u64, 100, 500, 1000, 5000, 10_000] {
            let ratio = log_primorial(k).unwrap() / k as f64;
            assert!((0.5..=1.5).contains(&ratio), "k = {k}, ratio = {ratio}");
        }
    }

    #[test]
    fn smallest_modulus_handles_parity_and_known_ranks() {
        assert_eq!(smallest_modulus(2).unwrap(), (2, BigUint::from(5u32)));
        assert_eq!(smallest_modulus(3).unwrap(), (3, BigUint::from(55u32)));
        assert_eq!(
            smallest_modulus(7).unwrap(),
            (5, BigUint::from(468_751u32))
        );
        for n in [2u32, 4, 6, 8] {
            let (p, m) = smallest_modulus(n).unwrap();
            assert_eq!(p, 2);
            let expect = BigUint::from(2u32).pow(n) * BigUint::from(n - 1) + BigUint::one();
            assert_eq!(m, expect);
        }
        assert!(smallest_modulus(1).is_err());
        assert!(smallest_modulus(0).is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_away_from_zero() {
        let r = BigRational::new(BigInt::from(5), BigInt::from(2));
        assert_eq!(decimal_string(&r, 0), "3");
        assert_eq!(decimal_string(&r, 2), "2.50");
        let r = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(decimal_string(&r, 4), "-0.3333");
        let r = BigRational::new(BigInt::from(1), BigInt::from(8));
        assert_eq!(decimal_string(&r, 2), "0.13");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn result_is_a_prime_nondivisor(k in 2u64..1_000_000) {
            let p = smallest_prime_not_dividing(k).unwrap();
            prop_assert!(is_prime(p));
            prop_assert!(k % p != 0);
            for q in primes_below(p) {
                prop_assert!(k % q == 0);
            }
        }

        #[test]
        fn mean_matches_a_direct_rational_fold(x in 2u64..500) {
            let mut sum = BigRational::zero();
            for k in 2..=x + 1 {
                let p = smallest_prime_not_dividing(k).unwrap();
                sum += BigRational::from_integer(BigInt::from(p));
            }
            let direct = sum / BigRational::from_integer(BigInt::from(x));
            prop_assert_eq!(empirical_mean(x).unwrap(), direct);
        }
    }
}

//! Prime sieve and least-common-multiple tables.

use num_bigint::BigInt;
use num_traits::One;

/// Primes up to a bound and the running lcm values D_N = lcm(1..N).
pub struct NumberTables {
    primes: Vec<u64>,
    d_values: Vec<BigInt>, // d_values[n] = D_n, index 0 holds D_0 = 1
}

impl NumberTables {
    pub fn build(prime_bound: u64, lcm_bound: u64) -> Self {
        let top = prime_bound.max(lcm_bound).max(1) as usize;
        // least prime factor sieve
        let mut lpf = vec![0u64; top + 1];
        for p in 2..=top {
            if lpf[p] == 0 {
                let mut m = p;
                while m <= top {
                    if lpf[m] == 0 {
                        lpf[m] = p as u64;
                    }
                    m += p;
                }
            }
        }
        let primes = (2..=prime_bound as usize)
            .filter(|&n| lpf[n] == n as u64)
            .map(|n| n as u64)
            .collect();
        // D_N gains a factor p exactly when N is a prime power p^a
        let mut d_values = Vec::with_capacity(lcm_bound as usize + 1);
        d_values.push(BigInt::one());
        let mut cur = BigInt::one();
        for n in 1..=lcm_bound as usize {
            if n >= 2 {
                let p = lpf[n];
                let mut m = n as u64;
                while m % p == 0 {
                    m /= p;
                }
                if m == 1 {
                    cur *= BigInt::from(p);
                }
            }
            d_values.push(cur.clone());
        }
        NumberTables { primes, d_values }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// D_N = lcm(1, ..., N). Panics if N exceeds the built bound.
    pub fn d(&self, n: u64) -> &BigInt {
        &self.d_values[n as usize]
    }

    pub fn lcm_bound(&self) -> u64 {
        self.d_values.len() as u64 - 1
    }

    /// Primes p with p^2 > lo_sq and p <= hi (the Phi_n prime window).
    pub fn primes_in(&self, lo_sq: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied().filter(move |&p| p * p > lo_sq && p <= hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn d_small_values() {
        let t = NumberTables::build(10, 12);
        assert_eq!(t.d(1), &BigInt::from(1));
        assert_eq!(t.d(2), &BigInt::from(2));
        assert_eq!(t.d(6), &BigInt::from(60));
        // D_10 = 2520 (brute-force lcm below)
        assert_eq!(t.d(10), &BigInt::from(2520));
    }

    #[test]
    fn d_matches_brute_force_lcm() {
        let t = NumberTables::build(2, 60);
        let mut acc = BigInt::one();
        for n in 1..=60u64 {
            acc = acc.lcm(&BigInt::from(n));
            assert_eq!(t.d(n), &acc, "N = {n}");
        }
    }

    #[test]
    fn divisibility_invariant() {
        let t = NumberTables::build(2, 50);
        for n in 1..=50u64 {
            for k in 1..=n {
                assert!(t.d(n).is_multiple_of(&BigInt::from(k)));
            }
            if n > 1 {
                assert!(t.d(n).is_multiple_of(t.d(n - 1)));
            }
        }
    }

    #[test]
    fn phi_prime_window_for_toy_collection() {
        // zeta toy at n = 26: window (sqrt(468), 104]; brute-force oracle
        let t = NumberTables::build(200, 1);
        let window: Vec<u64> = t.primes_in(468, 104).collect();
        let brute: Vec<u64> = (2..=104u64)
            .filter(|&n| (2..n).all(|d| n % d != 0))
            .filter(|&p| p * p > 468)
            .collect();
        assert_eq!(window, brute);
        assert_eq!(window.first(), Some(&23));
        assert_eq!(window.last(), Some(&103));
        assert_eq!(window.len(), 19);
    }

    #[test]
    fn primes_list_is_correct() {
        let t = NumberTables::build(100, 1);
        assert_eq!(t.primes().len(), 25);
        assert_eq!(t.primes()[0], 2);
        assert_eq!(*t.primes().last().unwrap(), 97);
    }
}

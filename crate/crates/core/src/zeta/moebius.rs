//! Moebius function and distinct-prime counts by a linear sieve.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    mu: Vec<i8>,
    omega: Vec<u8>,
}

impl MoebiusTable {
    /// Table for `1..=n_max`.
    pub fn new(n_max: usize) -> Self {
        let mut mu = vec![0i8; n_max + 1];
        let mut omega = vec![0u8; n_max + 1];
        let mut composite = vec![false; n_max + 1];
        let mut primes: Vec<usize> = Vec::new();
        if n_max >= 1 {
            mu[1] = 1;
        }
        for i in 2..=n_max {
            if !composite[i] {
                primes.push(i);
                mu[i] = -1;
                omega[i] = 1;
            }
            for &p in &primes {
                let m = i * p;
                if m > n_max {
                    break;
                }
                composite[m] = true;
                if i % p == 0 {
                    mu[m] = 0;
                    omega[m] = omega[i];
                    break;
                }
                mu[m] = -mu[i];
                omega[m] = omega[i] + 1;
            }
        }
        Self { mu, omega }
    }

    pub fn n_max(&self) -> usize {
        self.mu.len().saturating_sub(1)
    }

    /// `mu(n)`; panics outside `1..=n_max`.
    pub fn mu(&self, n: usize) -> i8 {
        assert!(n >= 1 && n <= self.n_max(), "index {n} outside moebius table");
        self.mu[n]
    }

    /// Number of distinct prime factors of `n`.
    pub fn omega(&self, n: usize) -> u8 {
        assert!(n >= 1 && n <= self.n_max(), "index {n} outside moebius table");
        self.omega[n]
    }

    /// `mu(1), ..., mu(n_max)`.
    pub fn values(&self) -> &[i8] {
        if self.mu.is_empty() {
            &[]
        } else {
            &self.mu[1..]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = MoebiusTable::new(30);
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0, -1, 0, -1, 0, 1, 1, -1, 0, 0, 1, 0, 0, -1, -1];
        assert_eq!(t.values(), &want);
        assert_eq!(t.omega(30), 3);
        assert_eq!(t.omega(16), 1);
        assert_eq!(t.omega(1), 0);
    }

    #[test]
    fn divisor_sums_vanish() {
        let n_max = 10_000;
        let t = MoebiusTable::new(n_max);
        let mut sums = vec![0i32; n_max + 1];
        for d in 1..=n_max {
            let m = i32::from(t.mu(d));
            for k in (d..=n_max).step_by(d) {
                sums[k] += m;
            }
        }
        assert_eq!(sums[1], 1);
        assert!(sums[2..].iter().all(|&s| s == 0));
    }
}

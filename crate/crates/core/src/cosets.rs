//! Cyclotomic cosets and exponent arithmetic mod 2^L - 1.
//!
//! The exponents {0, ..., 2^L - 2} are partitioned into cosets
//! {E * 2^i mod 2^L - 1}; all members of a coset share the binary Hamming
//! weight of the leader (the smallest member). The cosets whose members are
//! units mod 2^L - 1 index the phi(2^L - 1)/L equivalence classes of filter
//! generators of length L.

use crate::error::{Error, Result};

/// Smallest L this toolkit supports.
pub const MIN_DEGREE: usize = 2;
/// Largest L: full-period scans and log tables stay desk-scale.
pub const MAX_DEGREE: usize = 24;

pub(crate) fn check_degree(l: usize) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&l) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(l))
    }
}

/// The orbit of an exponent under doubling mod 2^L - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    leader: u64,
    elements: Vec<u64>,
}

impl CyclotomicCoset {
    /// Coset containing `e`, elements listed as leader * 2^i in doubling
    /// order.
    pub fn containing(e: u64, l: usize) -> Self {
        let period = (1u64 << l) - 1;
        let leader = coset_leader(e, l);
        let mut elements = vec![leader];
        let mut x = leader * 2 % period;
        while x != leader {
            elements.push(x);
            x = x * 2 % period;
        }
        CyclotomicCoset { leader, elements }
    }

    pub fn leader(&self) -> u64 {
        self.leader
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Binary Hamming weight shared by every member.
    pub fn weight(&self) -> u32 {
        self.leader.count_ones()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.elements.contains(&e)
    }
}

/// Smallest member of the coset of `e` mod 2^L - 1.
pub fn coset_leader(e: u64, l: usize) -> u64 {
    let period = (1u64 << l) - 1;
    let mut x = e % period;
    let mut min = x;
    for _ in 1..l {
        x = x * 2 % period;
        min = min.min(x);
    }
    min
}

/// All cyclotomic cosets mod 2^L - 1, sorted by leader; includes {0}.
pub fn cyclotomic_cosets(l: usize) -> Result<Vec<CyclotomicCoset>> {
    check_degree(l)?;
    let period = (1u64 << l) - 1;
    let mut seen = vec![false; period as usize];
    let mut out = Vec::new();
    for e in 0..period {
        if seen[e as usize] {
            continue;
        }
        let coset = CyclotomicCoset::containing(e, l);
        for &x in coset.elements() {
            seen[x as usize] = true;
        }
        out.push(coset);
    }
    Ok(out)
}

/// The cosets whose members k satisfy gcd(k, 2^L - 1) = 1; their count is
/// phi(2^L - 1)/L.
pub fn unit_cosets(l: usize) -> Result<Vec<CyclotomicCoset>> {
    let period = (1u64 << l) - 1;
    Ok(cyclotomic_cosets(l)?
        .into_iter()
        .filter(|c| c.leader() != 0 && gcd(c.leader(), period) == 1)
        .collect())
}

/// k' with k * k' == 1 mod 2^L - 1.
pub fn exponent_inverse(k: u64, l: usize) -> Result<u64> {
    check_degree(l)?;
    let period = (1u64 << l) - 1;
    let k = k % period;
    let (g, x, _) = extended_gcd(k as i128, period as i128);
    if g != 1 {
        return Err(Error::NonInvertibleExponent { k, modulus: period });
    }
    Ok(x.rem_euclid(period as i128) as u64)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Distinct prime factors by trial division.
pub(crate) fn distinct_prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient by factoring.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for p in distinct_prime_factors(n) {
        phi -= phi / p;
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaders_for_l5() {
        let leaders: Vec<u64> = cyclotomic_cosets(5).unwrap().iter().map(|c| c.leader()).collect();
        assert_eq!(leaders, vec![0, 1, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn cosets_for_l3() {
        let cosets = cyclotomic_cosets(3).unwrap();
        let sets: Vec<&[u64]> = cosets.iter().map(|c| c.elements()).collect();
        assert_eq!(sets, vec![&[0][..], &[1, 2, 4][..], &[3, 6, 5][..]]);
    }

    #[test]
    fn degenerate_coset_l4() {
        let c = CyclotomicCoset::containing(5, 4);
        assert_eq!(c.elements(), &[5, 10]);
        assert_eq!(c.size(), 2);
        assert_eq!(c.weight(), 2);
    }

    #[test]
    fn doubling_order_from_leader() {
        let c = CyclotomicCoset::containing(9, 5);
        assert_eq!(c.leader(), 5);
        assert_eq!(c.elements(), &[5, 10, 20, 9, 18]);
    }

    #[test]
    fn partition_and_equal_weights() {
        for l in [3, 4, 5, 6, 8] {
            let period = (1u64 << l) - 1;
            let cosets = cyclotomic_cosets(l).unwrap();
            let mut all: Vec<u64> = cosets.iter().flat_map(|c| c.elements().to_vec()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..period).collect::<Vec<_>>());
            for c in &cosets {
                assert!(c.elements().iter().all(|e| e.count_ones() == c.weight()));
                assert_eq!(l % c.size(), 0);
            }
        }
    }

    #[test]
    fn unit_cosets_table_1() {
        let rows: Vec<Vec<u64>> = unit_cosets(4)
            .unwrap()
            .iter()
            .map(|c| {
                let mut v = c.elements().to_vec();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(rows, vec![vec![1, 2, 4, 8], vec![7, 11, 13, 14]]);

        let l6: Vec<u64> = unit_cosets(6).unwrap().iter().map(|c| c.leader()).collect();
        assert_eq!(l6, vec![1, 5, 11, 13, 23, 31]);
        assert!(unit_cosets(6).unwrap().iter().any(|c| c.elements() == [11, 22, 44, 25, 50, 37]));

        // 31 is prime: every nonzero coset of L=5 is a unit coset
        let l5 = unit_cosets(5).unwrap();
        assert_eq!(l5.len(), 6);
        let mut all: Vec<u64> = l5.iter().flat_map(|c| c.elements().to_vec()).collect();
        all.sort_unstable();
        assert_eq!(all, (1..31).collect::<Vec<_>>());
    }

    #[test]
    fn totient_identity() {
        // |unit_cosets(L)| * L = phi(2^L - 1), with phi checked by brute force
        for l in MIN_DEGREE..=16 {
            let period = (1u64 << l) - 1;
            let brute = (1..period).filter(|&i| gcd(i, period) == 1).count() as u64 + u64::from(period == 1);
            assert_eq!(euler_phi(period), brute, "phi(2^{l}-1)");
            assert_eq!(unit_cosets(l).unwrap().len() as u64 * l as u64, euler_phi(period));
        }
    }

    #[test]
    fn exponent_inverses() {
        assert_eq!(exponent_inverse(15, 5).unwrap(), 29);
        assert_eq!(exponent_inverse(1, 7).unwrap(), 1);
        assert_eq!(exponent_inverse(7, 4).unwrap(), 13);
        assert_eq!(7 * 13 % 15, 1);
        assert!(matches!(
            exponent_inverse(3, 4),
            Err(Error::NonInvertibleExponent { k: 3, modulus: 15 })
        ));
    }

    #[test]
    fn degree_range_checked() {
        assert!(matches!(cyclotomic_cosets(1), Err(Error::DegreeOutOfRange(1))));
        assert!(matches!(cyclotomic_cosets(25), Err(Error::DegreeOutOfRange(25))));
    }
}

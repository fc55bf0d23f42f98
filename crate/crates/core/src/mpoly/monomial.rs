use std::cmp::Ordering;

use smallvec::SmallVec;

/// An exponent vector. Ordered by graded reverse lexicographic order:
/// higher total degree first, then the monomial with the smaller exponent
/// in the last differing variable is the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// `x_i^e` in `nvars` variables.
    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn scale_exps(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// increasing grevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(&[]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// `binom(nvars - 1 + d, d)`, the number of monomials of degree `d`.
pub fn count_monomials(nvars: usize, d: u32) -> u64 {
    if nvars == 0 {
        return (d == 0) as u64;
    }
    let (n, k) = (nvars as u64 - 1 + d as u64, d as u64);
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_in_three_variables() {
        let ms = monomials_of_degree(3, 2);
        let names: Vec<Vec<u32>> = ms.iter().rev().map(|m| m.0.to_vec()).collect();
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        assert_eq!(
            names,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn counts() {
        assert_eq!(count_monomials(3, 4), 15);
        assert_eq!(count_monomials(3, 5), 21);
        assert_eq!(count_monomials(4, 3), 20);
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(monomials_of_degree(n, d).len() as u64, count_monomials(n, d));
            }
        }
    }
}

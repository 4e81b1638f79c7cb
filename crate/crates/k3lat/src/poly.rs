//! Exact univariate and bivariate polynomial arithmetic for the blowup
//! simulator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Dense univariate polynomial over Q (in y), lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly1 {
    pub coeffs: Vec<BigRational>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<BigRational>) -> Poly1 {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Poly1 {
        Poly1 { coeffs: vec![] }
    }

    pub fn one() -> Poly1 {
        Poly1 { coeffs: vec![BigRational::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::new(out)
    }

    /// Exact division with remainder.
    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.coeffs[dd].clone();
        if rem.len() <= dd {
            return (Poly1::zero(), Poly1::new(rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for j in 0..=dd {
                let t = &c * &d.coeffs[j];
                rem[i - dd + j] -= t;
            }
        }
        (Poly1::new(quot), Poly1::new(rem))
    }

    pub fn divides(&self, other: &Poly1) -> bool {
        other.divrem(self).1.is_zero()
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        Poly1::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        Poly1::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition: list of (factor, multiplicity) with the
    /// factors monic, squarefree and pairwise coprime; constants dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly1, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.is_constant() {
            return vec![];
        }
        // Yun's algorithm over characteristic zero
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let db = b.derivative();
            let len = c.coeffs.len().max(db.coeffs.len());
            let d = Poly1::new(
                (0..len)
                    .map(|k| {
                        let x = c.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                        let s = db.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                        x - s
                    })
                    .collect(),
            );
            if b.is_constant() {
                break;
            }
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicities plus the rootless remaining factor
    /// (monic).
    pub fn rational_roots(&self) -> (Vec<(BigRational, usize)>, Poly1) {
        assert!(!self.is_zero());
        let mut f = self.monic();
        if f.is_constant() {
            return (vec![], f);
        }
        // strip y^k
        let mut roots: BTreeMap<BigRational, usize> = BTreeMap::new();
        while !f.is_constant() && f.coeffs[0].is_zero() {
            *roots.entry(BigRational::zero()).or_insert(0) += 1;
            f = Poly1::new(f.coeffs[1..].to_vec());
        }
        if !f.is_constant() {
            // integer-scaled coefficients for the rational root theorem
            let mut den = BigInt::one();
            for c in &f.coeffs {
                den = num_integer::lcm(den, c.denom().clone());
            }
            let ints: Vec<BigInt> = f
                .coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect();
            let a0 = ints[0].clone();
            let an = ints.last().unwrap().clone();
            let mut candidates = Vec::new();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    candidates.push(BigRational::new(p.clone(), q.clone()));
                    candidates.push(BigRational::new(-p.clone(), q));
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                while !f.is_constant() && f.eval(&r).is_zero() {
                    let lin = Poly1::new(vec![-r.clone(), BigRational::one()]);
                    f = f.divrem(&lin).0;
                    *roots.entry(r.clone()).or_insert(0) += 1;
                }
            }
        }
        (roots.into_iter().collect(), f.monic())
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    use num_traits::Signed;
    let n = n.abs();
    assert!(!n.is_zero());
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})y^{}", c, i)?;
            first = false;
        }
        Ok(())
    }
}

/// Sparse bivariate polynomial over Q in x and y.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly2 {
    pub terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(i, j, c) in terms {
            if c != 0 {
                p.terms.insert((i, j), BigRational::from_integer(BigInt::from(c)));
            }
        }
        p
    }

    pub fn insert(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity at the origin: minimal total degree of a term.
    pub fn mult_at_origin(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).min().expect("zero polynomial")
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    /// Strict transform in the chart (x, y) -> (x, x y): substitute and
    /// divide by the full power of x. Returns (exceptional multiplicity,
    /// strict polynomial).
    pub fn blowup_chart1(&self) -> (u32, Poly2) {
        let m = self.terms.keys().map(|&(i, j)| i + j).min().expect("zero polynomial");
        let mut p = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            p.insert((i + j - m, j), c.clone());
        }
        (m, p)
    }

    /// Strict transform in the chart (x, y) -> (x y, y).
    pub fn blowup_chart2(&self) -> (u32, Poly2) {
        let m = self.terms.keys().map(|&(i, j)| i + j).min().expect("zero polynomial");
        let mut p = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            p.insert((i, i + j - m), c.clone());
        }
        (m, p)
    }

    /// f(x, y + r)
    pub fn translate_y(&self, r: &BigRational) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            // (y + r)^j expansion
            let mut binom = BigRational::one();
            let mut rpow = BigRational::one();
            for k in (0..=j).rev() {
                // coefficient C(j, k) r^{j-k} for y^k, built from the top
                let coeff = &binom * &rpow * c;
                out.insert((i, k), coeff);
                if k > 0 {
                    binom = binom * BigRational::from_integer(BigInt::from(k))
                        / BigRational::from_integer(BigInt::from(j - k + 1));
                    rpow *= r;
                }
            }
        }
        out
    }

    /// f(0, y) as a univariate polynomial in y.
    pub fn restrict_x0(&self) -> Poly1 {
        let maxj = self.terms.keys().filter(|&&(i, _)| i == 0).map(|&(_, j)| j).max();
        let Some(maxj) = maxj else { return Poly1::zero() };
        let mut coeffs = vec![BigRational::zero(); maxj as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                coeffs[j as usize] = c.clone();
            }
        }
        Poly1::new(coeffs)
    }

    /// f(x, 0) as a univariate polynomial in x.
    pub fn restrict_y0(&self) -> Poly1 {
        let maxi = self.terms.keys().filter(|&&(_, j)| j == 0).map(|&(i, _)| i).max();
        let Some(maxi) = maxi else { return Poly1::zero() };
        let mut coeffs = vec![BigRational::zero(); maxi as usize + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                coeffs[i as usize] = c.clone();
            }
        }
        Poly1::new(coeffs)
    }

    /// ∂f/∂x restricted to x = 0, as a polynomial in y.
    pub fn dx_at_x0(&self) -> Poly1 {
        let maxj = self.terms.keys().filter(|&&(i, _)| i == 1).map(|&(_, j)| j).max();
        let Some(maxj) = maxj else { return Poly1::zero() };
        let mut coeffs = vec![BigRational::zero(); maxj as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i == 1 {
                coeffs[j as usize] = c.clone();
            }
        }
        Poly1::new(coeffs)
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})x^{}y^{}", c, i, j)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn blowup_charts() {
        // x^2 + y^3
        let f = Poly2::from_terms(&[(2, 0, 1), (0, 3, 1)]);
        let (m1, s1) = f.blowup_chart1();
        assert_eq!(m1, 2);
        assert_eq!(s1, Poly2::from_terms(&[(0, 0, 1), (1, 3, 1)]));
        let (m2, s2) = f.blowup_chart2();
        assert_eq!(m2, 2);
        assert_eq!(s2, Poly2::from_terms(&[(2, 0, 1), (0, 1, 1)]));
    }

    #[test]
    fn translate() {
        // (y - 1)^2 shifted by 1 becomes y^2
        let f = Poly2::from_terms(&[(0, 2, 1), (0, 1, -2), (0, 0, 1)]);
        let g = f.translate_y(&rat(1, 1));
        assert_eq!(g, Poly2::from_terms(&[(0, 2, 1)]));
    }

    #[test]
    fn roots_and_squarefree() {
        // y^2 (y - 2) (y^2 + 1)
        let p = Poly1::new(vec![rat(0, 1), rat(0, 1), rat(-2, 1), rat(1, 1)]);
        let q = Poly1::new(vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
        let f = p.mul(&q);
        let (roots, rest) = f.rational_roots();
        assert_eq!(roots, vec![(rat(0, 1), 2), (rat(2, 1), 1)]);
        assert_eq!(rest, q.monic());
        let sq = f.squarefree_decomposition();
        // squarefree parts: (y-2)(y^2+1) with mult 1, y with mult 2
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].1, 1);
        assert_eq!(sq[1].1, 2);
        assert_eq!(sq[1].0, Poly1::new(vec![rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn gcd_divrem() {
        let a = Poly1::new(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]); // y^2 - 1
        let b = Poly1::new(vec![rat(1, 1), rat(1, 1)]); // y + 1
        assert_eq!(a.gcd(&b), b.monic());
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, Poly1::new(vec![rat(-1, 1), rat(1, 1)]));
    }
}

//! Even integral lattices: constructors, pairings, signatures, serialization.

use crate::mat::{IMat, QMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not square or label count mismatches")]
    ShapeMismatch,
    #[error("gram matrix has an odd diagonal entry (lattice not even)")]
    OddDiagonal,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("invalid ADE parameter: {0}")]
    BadAde(String),
    #[error("zero vector has no divisibility")]
    ZeroVector,
}

/// ADE type tag. Negative definite convention: `gram = -cartan`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AdeType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl AdeType {
    pub fn rank(&self) -> usize {
        match self {
            AdeType::A(n) | AdeType::D(n) => *n,
            AdeType::E6 => 6,
            AdeType::E7 => 7,
            AdeType::E8 => 8,
        }
    }

    pub fn parse(s: &str) -> Option<AdeType> {
        let s = s.trim();
        let (head, tail) = s.split_at(1);
        let n: usize = tail.parse().ok()?;
        match head {
            "A" | "a" if n >= 1 => Some(AdeType::A(n)),
            "D" | "d" if n >= 4 => Some(AdeType::D(n)),
            "E" | "e" => match n {
                6 => Some(AdeType::E6),
                7 => Some(AdeType::E7),
                8 => Some(AdeType::E8),
                _ => None,
            },
            _ => None,
        }
    }

    /// Number of roots in the root system.
    pub fn root_count(&self) -> usize {
        match self {
            AdeType::A(n) => n * (n + 1),
            AdeType::D(n) => 2 * n * (n - 1),
            AdeType::E6 => 72,
            AdeType::E7 => 126,
            AdeType::E8 => 240,
        }
    }

    /// Edges of the Dynkin diagram, Bourbaki node numbering (0-based).
    pub fn diagram_edges(&self) -> Vec<(usize, usize)> {
        match self {
            AdeType::A(n) => (1..*n).map(|i| (i - 1, i)).collect(),
            AdeType::D(n) => {
                let n = *n;
                let mut e: Vec<(usize, usize)> = (1..n - 2).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            AdeType::E6 | AdeType::E7 | AdeType::E8 => {
                let n = self.rank();
                // chain 1-3-4-5-...-n, node 2 hangs off node 4 (1-based)
                let mut e = vec![(0, 2)];
                for i in 3..n {
                    e.push((i - 1, i));
                }
                e.push((1, 3));
                e.sort();
                e
            }
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{}", n),
            AdeType::D(n) => write!(f, "D{}", n),
            AdeType::E6 => write!(f, "E6"),
            AdeType::E7 => write!(f, "E7"),
            AdeType::E8 => write!(f, "E8"),
        }
    }
}

/// A finite-rank lattice given by a symmetric integer Gram matrix with
/// labeled basis vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    pub gram: IMat,
    pub labels: Vec<String>,
}

impl Lattice {
    pub fn new(gram: IMat, labels: Vec<String>) -> Result<Lattice, LatticeError> {
        Self::new_with_flags(gram, labels, false, false)
    }

    pub fn new_with_flags(
        gram: IMat,
        labels: Vec<String>,
        permit_odd: bool,
        permit_degenerate: bool,
    ) -> Result<Lattice, LatticeError> {
        if !gram.is_square() || gram.nrows() != labels.len() {
            return Err(LatticeError::ShapeMismatch);
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if !permit_odd {
            let two = BigInt::from(2);
            for i in 0..gram.nrows() {
                if !(&gram[(i, i)] % &two).is_zero() {
                    return Err(LatticeError::OddDiagonal);
                }
            }
        }
        if !permit_degenerate && gram.nrows() > 0 && gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Lattice { gram, labels })
    }

    pub fn from_rows(rows: &[Vec<i64>], labels: &[&str]) -> Lattice {
        Lattice::new(IMat::from_rows(rows), labels.iter().map(|s| s.to_string()).collect())
            .expect("invalid gram")
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    /// Integer pairing v·w through the Gram matrix.
    pub fn pair(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let gv = self.gram.mul_vec(w);
        v.iter().zip(gv.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        self.pair(v, v)
    }

    /// Rational pairing, for dual vectors.
    pub fn qpair(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let g = &self.gram;
        let mut acc = BigRational::zero();
        for i in 0..self.rank() {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if g[(i, j)].is_zero() || w[j].is_zero() {
                    continue;
                }
                acc += &v[i] * BigRational::from_integer(g[(i, j)].clone()) * &w[j];
            }
        }
        acc
    }

    pub fn qnorm(&self, v: &[BigRational]) -> BigRational {
        self.qpair(v, v)
    }

    /// Inertia (p, q) by rational symmetric Gaussian elimination.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut a = self.gram.to_rational();
        let mut pos = 0;
        let mut neg = 0;
        let mut start = 0;
        while start < n {
            // find a nonzero diagonal pivot, manufacturing one if needed
            let mut piv = (start..n).find(|&i| !a[(i, i)].is_zero());
            if piv.is_none() {
                let mut off = None;
                'scan: for i in start..n {
                    for j in i + 1..n {
                        if !a[(i, j)].is_zero() {
                            off = Some((i, j));
                            break 'scan;
                        }
                    }
                }
                match off {
                    Some((i, j)) => {
                        // symmetric row+col addition makes a[(i,i)] = 2 a[(i,j)]
                        for c in 0..n {
                            let t = a[(j, c)].clone();
                            a[(i, c)] += t;
                        }
                        for r in 0..n {
                            let t = a[(r, j)].clone();
                            a[(r, i)] += t;
                        }
                        piv = Some(i);
                    }
                    None => break, // remaining block is zero (degenerate)
                }
            }
            let p = piv.unwrap();
            if p != start {
                for c in 0..n {
                    let t = a[(start, c)].clone();
                    a[(start, c)] = a[(p, c)].clone();
                    a[(p, c)] = t;
                }
                for r in 0..n {
                    let t = a[(r, start)].clone();
                    a[(r, start)] = a[(r, p)].clone();
                    a[(r, p)] = t;
                }
            }
            let d = a[(start, start)].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in start + 1..n {
                if !a[(i, start)].is_zero() {
                    let f = &a[(i, start)] / &d;
                    for c in 0..n {
                        let t = &f * &a[(start, c)];
                        a[(i, c)] -= t;
                    }
                    for r in 0..n {
                        let t = &f * &a[(r, start)];
                        a[(r, i)] -= t;
                    }
                }
            }
            start += 1;
        }
        (pos, neg)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature() == (0, self.rank())
    }

    /// gcd of pairings of `v` against the basis.
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt, LatticeError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(LatticeError::ZeroVector);
        }
        let gv = self.gram.mul_vec(v);
        let mut g = BigInt::zero();
        for x in gv {
            g = num_integer::gcd(g, x);
        }
        Ok(g.abs())
    }

    pub fn rescale(&self, n: i64) -> Lattice {
        assert!(n != 0, "rescale by zero");
        let mut g = self.gram.clone();
        let n = BigInt::from(n);
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let t = &g[(i, j)] * &n;
                g[(i, j)] = t;
            }
        }
        Lattice { gram: g, labels: self.labels.clone() }
    }

    pub fn direct_sum(parts: &[&Lattice]) -> Lattice {
        let rank: usize = parts.iter().map(|l| l.rank()).sum();
        let mut g = IMat::zero(rank, rank);
        let mut labels = Vec::with_capacity(rank);
        let mut off = 0;
        for (pi, l) in parts.iter().enumerate() {
            for i in 0..l.rank() {
                for j in 0..l.rank() {
                    g[(off + i, off + j)] = l.gram[(i, j)].clone();
                }
            }
            for lb in &l.labels {
                let lb = if parts.iter().enumerate().any(|(qi, m)| qi != pi && m.labels.contains(lb))
                {
                    format!("{}.{}", pi, lb)
                } else {
                    lb.clone()
                };
                labels.push(lb);
            }
            off += l.rank();
        }
        Lattice { gram: g, labels }
    }

    /// Gram of the sublattice spanned by the given (column) vectors.
    pub fn sublattice_gram(&self, basis: &IMat) -> IMat {
        let gb = self.gram.mul(basis);
        basis.transpose().mul(&gb)
    }

    pub fn dual_gram(&self) -> QMat {
        self.gram.to_rational().inverse().expect("degenerate lattice")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gram: Vec<Vec<serde_json::Value>> = (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| {
                        let x = &self.gram[(i, j)];
                        match i64::try_from(x) {
                            Ok(v) => serde_json::json!(v),
                            Err(_) => serde_json::json!(x.to_string()),
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "labels": self.labels, "gram": gram })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Lattice, String> {
        let labels: Vec<String> = v
            .get("labels")
            .and_then(|x| x.as_array())
            .ok_or("missing labels")?
            .iter()
            .map(|x| x.as_str().map(|s| s.to_string()).ok_or("label not a string".to_string()))
            .collect::<Result<_, _>>()?;
        let rows = v.get("gram").and_then(|x| x.as_array()).ok_or("missing gram")?;
        let n = rows.len();
        let mut gram = IMat::zero(n, n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or("gram row not an array")?;
            if row.len() != n {
                return Err("gram not square".into());
            }
            for (j, x) in row.iter().enumerate() {
                gram[(i, j)] = match x {
                    serde_json::Value::Number(num) => {
                        BigInt::from(num.as_i64().ok_or("non-integer gram entry")?)
                    }
                    serde_json::Value::String(s) => {
                        s.parse::<BigInt>().map_err(|_| "bad integer string")?
                    }
                    _ => return Err("gram entry must be integer".into()),
                };
            }
        }
        Lattice::new_with_flags(gram, labels, true, false).map_err(|e| e.to_string())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lattice rank {} labels {:?}", self.rank(), self.labels)?;
        write!(f, "{:?}", self.gram)
    }
}

/// Negative definite ADE root lattice, `gram = -cartan`, Bourbaki numbering.
pub fn ade(t: AdeType) -> Lattice {
    let n = t.rank();
    let mut g = IMat::zero(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(-2);
    }
    for (a, b) in t.diagram_edges() {
        g[(a, b)] = BigInt::one();
        g[(b, a)] = BigInt::one();
    }
    let labels = (1..=n).map(|i| format!("{}{}", t, i)).collect();
    Lattice { gram: g, labels }
}

pub fn cartan_matrix(t: AdeType) -> IMat {
    let g = ade(t).gram;
    let n = g.nrows();
    let mut c = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            c[(i, j)] = -g[(i, j)].clone();
        }
    }
    c
}

/// Hyperbolic plane U.
pub fn hyperbolic_u() -> Lattice {
    Lattice::from_rows(&[vec![0, 1], vec![1, 0]], &["e", "f"])
}

/// Rank-one lattice ⟨k⟩, k even.
pub fn rank_one(k: i64) -> Lattice {
    assert!(k != 0 && k % 2 == 0, "rank_one wants a nonzero even integer");
    Lattice::from_rows(&[vec![k]], &["g"])
}

/// The K3 lattice U³⊕E8(−1)², rank 22, signature (3,19), det −1.
pub fn k3() -> Lattice {
    let u = hyperbolic_u();
    let e8 = ade(AdeType::E8);
    let mut l = Lattice::direct_sum(&[&u, &u, &u, &e8, &e8]);
    l.labels = vec![
        "e1", "f1", "e2", "f2", "e3", "f3", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "b1",
        "b2", "b3", "b4", "b5", "b6", "b7", "b8",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn ade_basics() {
        let a1 = ade(AdeType::A(1));
        assert_eq!(a1.det(), BigInt::from(-2));
        assert_eq!(a1.signature(), (0, 1));
        let e8 = ade(AdeType::E8);
        assert_eq!(e8.det(), BigInt::one());
        assert_eq!(e8.signature(), (0, 8));
        let a3 = ade(AdeType::A(3));
        assert_eq!(a3.det().abs(), BigInt::from(4));
        let d4 = ade(AdeType::D(4));
        assert_eq!(d4.det().abs(), BigInt::from(4));
        let e6 = ade(AdeType::E6);
        assert_eq!(e6.det().abs(), BigInt::from(3));
        let e7 = ade(AdeType::E7);
        assert_eq!(e7.det().abs(), BigInt::from(2));
    }

    #[test]
    fn ade_det_matches_an_formula() {
        for n in 1..=9 {
            let a = ade(AdeType::A(n));
            assert_eq!(a.det().abs().to_usize().unwrap(), n + 1);
        }
        for n in 4..=9 {
            let d = ade(AdeType::D(n));
            assert_eq!(d.det().abs().to_usize().unwrap(), 4);
        }
    }

    #[test]
    fn u_and_rescale() {
        let u = hyperbolic_u();
        assert_eq!(u.det(), BigInt::from(-1));
        assert_eq!(u.signature(), (1, 1));
        let u2 = u.rescale(2);
        assert_eq!(u2.det(), BigInt::from(-4));
        assert_eq!(u2.signature(), (1, 1));
    }

    #[test]
    fn k3_invariants() {
        let l = k3();
        assert_eq!(l.rank(), 22);
        assert_eq!(l.signature(), (3, 19));
        assert_eq!(l.det(), BigInt::from(-1));
    }

    #[test]
    fn direct_sum_signature() {
        let m = Lattice::direct_sum(&[
            &hyperbolic_u().rescale(2),
            &hyperbolic_u(),
            &ade(AdeType::D(4)),
            &ade(AdeType::E8),
        ]);
        assert_eq!(m.rank(), 16);
        assert_eq!(m.signature(), (2, 14));
    }

    #[test]
    fn divisibility_examples() {
        let u = hyperbolic_u();
        let e1 = [BigInt::one(), BigInt::zero()];
        assert_eq!(u.divisibility(&e1).unwrap(), BigInt::one());
        let m2 = rank_one(-2);
        assert_eq!(m2.divisibility(&[BigInt::one()]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn rejects_bad_gram() {
        assert!(Lattice::new(IMat::from_rows(&[vec![0, 1], vec![2, 0]]), vec!["a".into(), "b".into()]).is_err());
        assert!(Lattice::new(IMat::from_rows(&[vec![1]]), vec!["a".into()]).is_err());
        assert!(Lattice::new(IMat::from_rows(&[vec![0]]), vec!["a".into()]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let l = ade(AdeType::D(5));
        let j = l.to_json();
        let back = Lattice::from_json(&j).unwrap();
        assert_eq!(l.gram, back.gram);
        assert_eq!(l.labels, back.labels);
    }

    #[test]
    fn signature_basis_invariant() {
        // conjugate D4 gram by a fixed unimodular matrix
        let d4 = ade(AdeType::D(4));
        let t = IMat::from_rows(&[
            vec![1, 2, 0, 1],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 3],
            vec![0, 0, 0, 1],
        ]);
        let g2 = t.transpose().mul(&d4.gram).mul(&t);
        let l2 = Lattice::new(g2, d4.labels.clone()).unwrap();
        assert_eq!(l2.signature(), (0, 4));
    }
}

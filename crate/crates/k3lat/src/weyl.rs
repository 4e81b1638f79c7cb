//! Weyl group machinery: the longest element, the involution -w0, the
//! invariant and anti-invariant sublattices, and fundamental weights.

use crate::lattice::Lattice;
use crate::mat::IMat;
use crate::roots::RootBase;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The longest Weyl element together with the diagram permutation of -w0.
#[derive(Clone, Debug)]
pub struct InvolutionData {
    /// matrix of the isometry -w0 acting on lattice coordinates
    pub matrix: IMat,
    /// matrix of w0 itself
    pub w0: IMat,
    /// index permutation of the simple roots under -w0
    pub permutation: Vec<usize>,
    pub word_len: usize,
}

fn reflect(l: &Lattice, v: &mut [BigRational], r: &[BigInt]) {
    // s_r(x) = x + (x·r) r for a root r with r·r = -2
    let rq: Vec<BigRational> =
        r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let c = l.qpair(v, &rq);
    for (vi, ri) in v.iter_mut().zip(rq.iter()) {
        *vi += &c * ri;
    }
}

fn reflect_int(l: &Lattice, v: &mut [BigInt], r: &[BigInt]) {
    let c = l.pair(v, r);
    for (vi, ri) in v.iter_mut().zip(r.iter()) {
        *vi += &c * ri;
    }
}

/// Fundamental weights of the base: rational vectors with λ_i · r_j = δ_ij.
/// Coefficients over the simple roots are the negated inverse Cartan columns.
pub fn fundamental_weights(l: &Lattice, base: &RootBase) -> Vec<Vec<BigRational>> {
    let n = l.rank();
    let mut weights = vec![vec![BigRational::zero(); n]; base.rank()];
    for (_, idx) in &base.components {
        let k = idx.len();
        let mut cmat = IMat::zero(k, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                cmat[(a, b)] = base.cartan[(i, j)].clone();
            }
        }
        let cinv = cmat.to_rational().inverse().expect("Cartan is invertible");
        for (a, &i) in idx.iter().enumerate() {
            // λ_i = -Σ_k (C^{-1})_{k a} r_{idx[k]}
            for (kk, &rk) in idx.iter().enumerate() {
                let c = -cinv[(kk, a)].clone();
                for t in 0..n {
                    weights[i][t] +=
                        &c * BigRational::from_integer(base.simple_roots[rk][t].clone());
                }
            }
        }
    }
    weights
}

/// Compute w0 by the dominant-to-antidominant reflection walk and return
/// -w0 with its diagram permutation.
pub fn longest_element(l: &Lattice, base: &RootBase) -> InvolutionData {
    let n = l.rank();
    let weights = fundamental_weights(l, base);
    // strictly dominant μ = Σ λ_i (relative to the root span)
    let mut mu = vec![BigRational::zero(); n];
    for w in &weights {
        for t in 0..n {
            mu[t] += &w[t];
        }
    }
    let mut word: Vec<usize> = Vec::new();
    loop {
        let mut progressed = false;
        for (i, r) in base.simple_roots.iter().enumerate() {
            let rq: Vec<BigRational> =
                r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            if l.qpair(&mu, &rq).is_positive() {
                reflect(l, &mut mu, r);
                word.push(i);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    // w0 = s_{word[k]} ... s_{word[0]}; apply to each basis vector
    let mut w0 = IMat::zero(n, n);
    for j in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[j] = BigInt::one();
        for &i in &word {
            reflect_int(l, &mut v, &base.simple_roots[i]);
        }
        for t in 0..n {
            w0[(t, j)] = v[t].clone();
        }
    }
    let mut neg = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            neg[(i, j)] = -w0[(i, j)].clone();
        }
    }
    // diagram permutation of -w0 on the simple roots
    let mut permutation = Vec::with_capacity(base.rank());
    for r in &base.simple_roots {
        let img = neg.mul_vec(r);
        let pos = base
            .simple_roots
            .iter()
            .position(|s| s == &img)
            .expect("-w0 must permute the simple roots");
        permutation.push(pos);
    }
    for (i, &p) in permutation.iter().enumerate() {
        assert_eq!(permutation[p], i, "-w0 diagram action must be an involution");
    }
    InvolutionData { matrix: neg, w0, permutation, word_len: word.len() }
}

/// Check that a matrix is an isometric involution of the lattice.
pub fn is_isometric_involution(l: &Lattice, m: &IMat) -> bool {
    let n = l.rank();
    m.mul(m) == IMat::identity(n) && m.transpose().mul(&l.gram).mul(m) == l.gram
}

/// Kernels of (ι - 1) and (ι + 1) as primitive sublattices with their
/// induced Gram matrices; returns (invariant, anti-invariant), each as the
/// sublattice plus its basis (columns, in ambient coordinates).
pub fn invariant_sublattices(l: &Lattice, iota: &IMat) -> ((Lattice, IMat), (Lattice, IMat)) {
    assert!(is_isometric_involution(l, iota));
    let n = l.rank();
    let id = IMat::identity(n);
    let mut minus = IMat::zero(n, n);
    let mut plus = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            minus[(i, j)] = &iota[(i, j)] - &id[(i, j)];
            plus[(i, j)] = &iota[(i, j)] + &id[(i, j)];
        }
    }
    let b_inv = minus.kernel();
    let b_anti = plus.kernel();
    let make = |b: &IMat, tag: &str| {
        let g = l.sublattice_gram(b);
        let labels = (0..b.ncols()).map(|i| format!("{}{}", tag, i + 1)).collect();
        (
            Lattice::new_with_flags(g, labels, false, false).expect("induced gram"),
            b.clone(),
        )
    };
    (make(&b_inv, "p"), make(&b_anti, "m"))
}

/// Invariant factors (> 1) of L/(L^ι ⊕ L^{-ι}).
pub fn index_of_sum(l: &Lattice, iota: &IMat) -> Vec<BigInt> {
    let ((_, b_inv), (_, b_anti)) = invariant_sublattices(l, iota);
    let n = l.rank();
    assert_eq!(b_inv.ncols() + b_anti.ncols(), n, "involution sublattices must span");
    let mut cols = Vec::new();
    for j in 0..b_inv.ncols() {
        cols.push(b_inv.column(j));
    }
    for j in 0..b_anti.ncols() {
        cols.push(b_anti.column(j));
    }
    let m = IMat::from_columns(n, &cols);
    m.snf().invariant_factors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ade, AdeType};
    use crate::roots::simple_roots;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn weights_are_dual_to_roots() {
        for t in [AdeType::A(3), AdeType::D(5), AdeType::E6] {
            let l = ade(t);
            let base = simple_roots(&l);
            let w = fundamental_weights(&l, &base);
            for i in 0..base.rank() {
                for j in 0..base.rank() {
                    let rq: Vec<BigRational> = base.simple_roots[j]
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect();
                    let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(l.qpair(&w[i], &rq), expect);
                }
            }
        }
    }

    #[test]
    fn a3_middle_weight() {
        let l = ade(AdeType::A(3));
        let base = simple_roots(&l);
        let w = fundamental_weights(&l, &base);
        assert_eq!(w[1], vec![rat(-1, 2), rat(-1, 1), rat(-1, 2)]);
    }

    #[test]
    fn e7_seventh_weight() {
        let l = ade(AdeType::E7);
        let base = simple_roots(&l);
        let w = fundamental_weights(&l, &base);
        let expect: Vec<BigRational> =
            [2, 3, 4, 6, 5, 4, 3].iter().map(|&c| rat(-c, 2)).collect();
        assert_eq!(w[6], expect);
    }

    #[test]
    fn longest_element_permutations() {
        // identity for A1, D4, D6, E7, E8; the unique flip otherwise
        for (t, trivial) in [
            (AdeType::A(1), true),
            (AdeType::A(2), false),
            (AdeType::A(3), false),
            (AdeType::D(4), true),
            (AdeType::D(5), false),
            (AdeType::D(6), true),
            (AdeType::E6, false),
            (AdeType::E7, true),
            (AdeType::E8, true),
        ] {
            let l = ade(t);
            let base = simple_roots(&l);
            let inv = longest_element(&l, &base);
            assert!(is_isometric_involution(&l, &inv.matrix), "{}", t);
            let is_id = inv.permutation.iter().enumerate().all(|(i, &p)| i == p);
            assert_eq!(is_id, trivial, "permutation triviality for {}", t);
        }
    }

    #[test]
    fn a3_flip_swaps_ends() {
        let l = ade(AdeType::A(3));
        let base = simple_roots(&l);
        let inv = longest_element(&l, &base);
        assert_eq!(inv.permutation, vec![2, 1, 0]);
    }

    #[test]
    fn e6_flip() {
        let l = ade(AdeType::E6);
        let base = simple_roots(&l);
        let inv = longest_element(&l, &base);
        assert_eq!(inv.permutation, vec![5, 1, 4, 3, 2, 0]);
    }

    #[test]
    fn w0_negates_positive_system() {
        for t in [AdeType::A(4), AdeType::D(5), AdeType::E6] {
            let l = ade(t);
            let base = simple_roots(&l);
            let inv = longest_element(&l, &base);
            // w0 maps every simple root to minus a simple root
            for r in &base.simple_roots {
                let img = inv.w0.mul_vec(r);
                let neg: Vec<BigInt> = img.iter().map(|x| -x).collect();
                assert!(base.simple_roots.contains(&neg));
            }
        }
    }

    #[test]
    fn a3_invariant_parts() {
        let l = ade(AdeType::A(3));
        let base = simple_roots(&l);
        let inv = longest_element(&l, &base);
        let ((linv, _), (lanti, _)) = invariant_sublattices(&l, &inv.matrix);
        assert_eq!(linv.rank(), 2);
        assert_eq!(lanti.rank(), 1);
        let danti = crate::disc::discriminant_group(&lanti);
        assert_eq!(danti.form.orders, vec![BigInt::from(4)]);
        let dinv = crate::disc::discriminant_group(&linv);
        assert_eq!(dinv.form.orders, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn index_of_sum_small() {
        let a1 = ade(AdeType::A(1));
        let base = simple_roots(&a1);
        let inv = longest_element(&a1, &base);
        assert!(index_of_sum(&a1, &inv.matrix).is_empty());

        let a2 = ade(AdeType::A(2));
        let base = simple_roots(&a2);
        let inv = longest_element(&a2, &base);
        assert_eq!(index_of_sum(&a2, &inv.matrix), vec![BigInt::from(2)]);

        let e6 = ade(AdeType::E6);
        let base = simple_roots(&e6);
        let inv = longest_element(&e6, &base);
        assert_eq!(index_of_sum(&e6, &inv.matrix), vec![BigInt::from(2), BigInt::from(2)]);
    }
}

//! Randomized property tests for the core lattice invariants.

use k3lat::disc::{compare_discriminant_forms, discriminant_group};
use k3lat::lattice::{ade, AdeType, Lattice};
use k3lat::mat::IMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_even_lattice() -> impl Strategy<Value = Lattice> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(1i64..=4, n),
                proptest::collection::vec(-2i64..=2, n * n),
                proptest::collection::vec(proptest::bool::ANY, n),
            )
        })
        .prop_filter_map("nondegenerate even lattice", |(diag, off, signs)| {
            let n = diag.len();
            let mut g = IMat::zero(n, n);
            for i in 0..n {
                let s = if signs[i] { 1 } else { -1 };
                g[(i, i)] = BigInt::from(2 * diag[i] * s);
                for j in 0..i {
                    g[(i, j)] = BigInt::from(off[i * n + j]);
                    g[(j, i)] = BigInt::from(off[i * n + j]);
                }
            }
            let labels = (0..n).map(|i| format!("b{}", i + 1)).collect();
            Lattice::new(g, labels).ok()
        })
}

fn unimodular(n: usize, shears: &[(usize, usize, i64)]) -> IMat {
    let mut t = IMat::identity(n);
    for &(i, j, c) in shears {
        if i % n != j % n {
            let mut s = IMat::identity(n);
            s[(i % n, j % n)] = BigInt::from(c);
            t = t.mul(&s);
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disc_group_order_is_det(l in small_even_lattice()) {
        let d = discriminant_group(&l);
        prop_assert_eq!(d.form.group_order(), l.det().abs());
    }

    #[test]
    fn q_values_are_lift_independent(l in small_even_lattice(),
                                     shift in proptest::collection::vec(-2i64..=2, 4)) {
        let d = discriminant_group(&l);
        for (i, lift) in d.lifts.iter().enumerate() {
            // shift the lift by a lattice vector: q must not change mod 2
            let mut v = lift.clone();
            for (k, x) in v.iter_mut().enumerate() {
                *x += BigRational::from_integer(BigInt::from(shift[k % shift.len()]));
            }
            let q1 = &d.form.q_gen[i];
            let q2 = l.qnorm(&v);
            let diff = q2 - q1;
            let half = diff / BigRational::from_integer(BigInt::from(2));
            prop_assert!(half.is_integer(), "lift dependence at generator {}", i);
        }
    }

    #[test]
    fn signature_is_basis_invariant(l in small_even_lattice(),
                                    shears in proptest::collection::vec(
                                        (0usize..4, 0usize..4, -2i64..=2), 0..6)) {
        let n = l.rank();
        let t = unimodular(n, &shears);
        let g2 = t.transpose().mul(&l.gram).mul(&t);
        let l2 = Lattice::new(g2, l.labels.clone()).unwrap();
        prop_assert_eq!(l.signature(), l2.signature());
        prop_assert_eq!(l.det(), l2.det());
    }

    #[test]
    fn divisibility_divides_norm(l in small_even_lattice(),
                                 coeffs in proptest::collection::vec(-3i64..=3, 4)) {
        let n = l.rank();
        let v: Vec<BigInt> = (0..n).map(|i| BigInt::from(coeffs[i % coeffs.len()])).collect();
        if v.iter().all(|x| x.is_zero()) {
            return Ok(());
        }
        let d = l.divisibility(&v).unwrap();
        let norm = l.norm(&v);
        if !norm.is_zero() {
            prop_assert!((&norm % &d).is_zero(), "div {} does not divide norm {}", d, norm);
        }
    }

    #[test]
    fn form_comparison_is_reflexive(l in small_even_lattice()) {
        let f = discriminant_group(&l).form;
        prop_assert_eq!(compare_discriminant_forms(&f, &f, 5_000), Some(true));
    }

    #[test]
    fn rescale_scales_det(l in small_even_lattice(), k in 1i64..=3) {
        let r = l.rescale(k);
        let mut want = l.det();
        for _ in 0..l.rank() {
            want *= BigInt::from(k);
        }
        prop_assert_eq!(r.det(), want);
    }
}

#[test]
fn form_comparison_symmetric_on_catalog() {
    let types = [AdeType::A(3), AdeType::A(4), AdeType::D(4), AdeType::D(5), AdeType::E6];
    for &s in &types {
        for &t in &types {
            let f1 = discriminant_group(&ade(s)).form;
            let f2 = discriminant_group(&ade(t)).form;
            assert_eq!(
                compare_discriminant_forms(&f1, &f2, 5_000),
                compare_discriminant_forms(&f2, &f1, 5_000),
                "{} vs {}",
                s,
                t
            );
        }
    }
}

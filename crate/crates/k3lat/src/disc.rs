//! Discriminant groups A_L = L∨/L with their Q/2Z-valued quadratic forms,
//! form isomorphism testing, and lattice isomorphism decision.

use crate::lattice::Lattice;
use crate::mat::{IMat, QMat};
use num_bigint::BigInt;
use num_rational::BigRational;
#[cfg(test)]
use num_traits::Signed;
use num_traits::{One, ToPrimitive, Zero};

/// r mod m, normalized to [0, m).
pub fn rat_mod(r: &BigRational, m: u32) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (r / &m).floor();
    r - q * m
}

/// A finite abelian group with generator orders d1 | d2 | ... (all > 1), a
/// quadratic form q with values in Q/2Z and its bilinear form b in Q/Z.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticForm {
    pub orders: Vec<BigInt>,
    pub q_gen: Vec<BigRational>,
    pub b_gen: Vec<Vec<BigRational>>,
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], q_gen: vec![], b_gen: vec![] }
    }

    pub fn group_order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        use num_integer::Integer;
        x.iter().zip(&self.orders).map(|(a, d)| a.mod_floor(d)).collect()
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn is_zero_el(&self, x: &[BigInt]) -> bool {
        x.iter().all(|a| a.is_zero())
    }

    /// Additive order of an element.
    pub fn order_of(&self, x: &[BigInt]) -> BigInt {
        let mut ord = BigInt::one();
        for (a, d) in x.iter().zip(&self.orders) {
            let g = num_integer::gcd(a.clone(), d.clone());
            ord = num_integer::lcm(ord, d / g);
        }
        ord
    }

    /// q(x) mod 2 for x in generator coordinates.
    pub fn q_of(&self, x: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.ngens() {
            if x[i].is_zero() {
                continue;
            }
            let xi = BigRational::from_integer(x[i].clone());
            acc += &xi * &xi * &self.q_gen[i];
            for j in i + 1..self.ngens() {
                if x[j].is_zero() {
                    continue;
                }
                let xj = BigRational::from_integer(x[j].clone());
                acc += BigRational::from_integer(BigInt::from(2)) * xi.clone() * xj * &self.b_gen[i][j];
            }
        }
        rat_mod(&acc, 2)
    }

    /// b(x, y) mod 1.
    pub fn b_of(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.ngens() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.ngens() {
                if y[j].is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(x[i].clone())
                    * BigRational::from_integer(y[j].clone())
                    * &self.b_gen[i][j];
            }
        }
        rat_mod(&acc, 1)
    }

    /// All group elements as coordinate tuples; `None` above the cap.
    pub fn elements(&self, cap: usize) -> Option<Vec<Vec<BigInt>>> {
        let size = self.group_order();
        if size > BigInt::from(cap) {
            return None;
        }
        let size = size.to_usize().unwrap();
        let mut out = Vec::with_capacity(size);
        let mut cur = vec![BigInt::zero(); self.ngens()];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.ngens() {
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = BigInt::zero();
                i += 1;
            }
        }
    }

    /// Same group, q negated mod 2 (the form of the rescale by -1).
    pub fn negate(&self) -> FiniteQuadraticForm {
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            q_gen: self.q_gen.iter().map(|q| rat_mod(&-q, 2)).collect(),
            b_gen: self
                .b_gen
                .iter()
                .map(|row| row.iter().map(|b| rat_mod(&-b, 1)).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orders: Vec<String> = self.orders.iter().map(|d| d.to_string()).collect();
        let q: Vec<serde_json::Value> = (0..self.ngens())
            .map(|i| {
                let mut coords = vec!["0".to_string(); self.ngens()];
                coords[i] = "1".to_string();
                serde_json::json!([coords.join(","), format!("{}/{}", self.q_gen[i].numer(), self.q_gen[i].denom())])
            })
            .collect();
        serde_json::json!({"orders": orders, "q": q})
    }
}

/// Discriminant data of a lattice: the form plus enough change-of-basis
/// information to map any dual vector to its class in A_L.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub form: FiniteQuadraticForm,
    /// generator lifts: dual vectors in lattice coordinates
    pub lifts: Vec<Vec<BigRational>>,
    u: IMat,
    gram: IMat,
    kept: Vec<usize>,
}

impl DiscriminantGroup {
    /// Class in A_L of a dual vector given in lattice coordinates.
    pub fn class_of(&self, v: &[BigRational]) -> Vec<BigInt> {
        let n = self.gram.nrows();
        let mut gv = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += BigRational::from_integer(self.gram[(i, j)].clone()) * &v[j];
            }
            assert!(acc.is_integer(), "vector is not in the dual lattice");
            gv.push(acc.to_integer());
        }
        let ugv = self.u.mul_vec(&gv);
        self.form.reduce(&self.kept.iter().map(|&i| ugv[i].clone()).collect::<Vec<_>>())
    }

    /// A dual-vector lift of a class given in generator coordinates.
    pub fn lift_of(&self, x: &[BigInt]) -> Vec<BigRational> {
        let n = self.gram.nrows();
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in x.iter().enumerate() {
            for k in 0..n {
                v[k] += BigRational::from_integer(c.clone()) * &self.lifts[i][k];
            }
        }
        v
    }
}

/// A_L = L∨/L with its discriminant quadratic form, via the Smith normal
/// form of the Gram matrix.
pub fn discriminant_group(l: &Lattice) -> DiscriminantGroup {
    let n = l.rank();
    let snf = l.gram.snf();
    let ginv = l.dual_gram();
    let uinv_q = snf.uinv.to_rational();
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for i in 0..n {
        let d = snf.d[(i, i)].clone();
        assert!(!d.is_zero());
        if !d.is_one() {
            kept.push(i);
            orders.push(d);
        }
    }
    let mut lifts = Vec::new();
    for &i in &kept {
        let col = uinv_q.column(i);
        lifts.push(ginv.mul_vec(&col));
    }
    let q_gen: Vec<BigRational> = lifts.iter().map(|v| rat_mod(&l.qnorm(v), 2)).collect();
    let k = kept.len();
    let mut b_gen = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            b_gen[i][j] = rat_mod(&l.qpair(&lifts[i], &lifts[j]), 1);
        }
    }
    DiscriminantGroup {
        form: FiniteQuadraticForm { orders, q_gen, b_gen },
        lifts,
        u: snf.u,
        gram: l.gram.clone(),
        kept,
    }
}

/// True iff a q-preserving group isomorphism exists; `None` when either
/// group exceeds the cap.
pub fn compare_discriminant_forms(
    f1: &FiniteQuadraticForm,
    f2: &FiniteQuadraticForm,
    cap: usize,
) -> Option<bool> {
    if f1.group_order() != f2.group_order() {
        return Some(false);
    }
    if f1.orders != f2.orders {
        // invariant factors are isomorphism invariants of the group
        return Some(false);
    }
    let elements = f2.elements(cap)?;
    if f1.group_order() > BigInt::from(cap) {
        return None;
    }
    // backtracking over generator images with order/q/b pruning
    fn rec(
        f1: &FiniteQuadraticForm,
        f2: &FiniteQuadraticForm,
        elements: &[Vec<BigInt>],
        images: &mut Vec<Vec<BigInt>>,
    ) -> bool {
        let i = images.len();
        if i == f1.ngens() {
            // verify bijectivity: the subgroup generated by the images must
            // be everything
            use std::collections::HashSet;
            let mut seen: HashSet<Vec<String>> = HashSet::new();
            let mut frontier = vec![vec![BigInt::zero(); f2.ngens()]];
            seen.insert(frontier[0].iter().map(|x| x.to_string()).collect());
            while let Some(x) = frontier.pop() {
                for im in images.iter() {
                    let y = f2.add(&x, im);
                    let key: Vec<String> = y.iter().map(|v| v.to_string()).collect();
                    if seen.insert(key) {
                        frontier.push(y);
                    }
                }
            }
            return BigInt::from(seen.len()) == f2.group_order();
        }
        'cand: for el in elements {
            if f2.order_of(el) != f1.orders[i] {
                continue;
            }
            if f2.q_of(el) != f1.q_gen[i] {
                continue;
            }
            for (j, im) in images.iter().enumerate() {
                if f2.b_of(im, el) != rat_mod(&f1.b_gen[j][i], 1) {
                    continue 'cand;
                }
            }
            images.push(el.clone());
            if rec(f1, f2, elements, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    let mut images = Vec::new();
    Some(rec(f1, f2, &elements, &mut images))
}

/// Signature plus discriminant form: the genus of an even lattice.
#[derive(Clone, Debug)]
pub struct GenusDescriptor {
    pub sig_plus: usize,
    pub sig_minus: usize,
    pub form: FiniteQuadraticForm,
}

impl GenusDescriptor {
    pub fn of(l: &Lattice) -> GenusDescriptor {
        let (p, q) = l.signature();
        GenusDescriptor { sig_plus: p, sig_minus: q, form: discriminant_group(l).form }
    }

    pub fn matches(&self, other: &GenusDescriptor, cap: usize) -> Option<bool> {
        if self.sig_plus != other.sig_plus || self.sig_minus != other.sig_minus {
            return Some(false);
        }
        compare_discriminant_forms(&self.form, &other.form, cap)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsoResult {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for IsoResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoResult::Yes => write!(f, "yes"),
            IsoResult::No => write!(f, "no"),
            IsoResult::Unknown => write!(f, "unknown"),
        }
    }
}

/// Decide lattice isomorphism: genus comparison, uniqueness of the genus
/// for suitable indefinite lattices, and exhaustive isometry search for
/// small definite ones.
pub fn lattices_isomorphic(l1: &Lattice, l2: &Lattice, cap: usize) -> IsoResult {
    if l1.rank() != l2.rank() {
        return IsoResult::No;
    }
    let g1 = GenusDescriptor::of(l1);
    let g2 = GenusDescriptor::of(l2);
    match g1.matches(&g2, cap) {
        Some(false) => return IsoResult::No,
        Some(true) => {}
        None => return IsoResult::Unknown,
    }
    let rank = l1.rank();
    let l_a = g1.form.ngens();
    let indefinite = g1.sig_plus >= 1 && g1.sig_minus >= 1;
    if indefinite && rank >= l_a + 2 {
        // unique class in the genus
        return IsoResult::Yes;
    }
    let definite = g1.sig_plus == 0 || g1.sig_minus == 0;
    if definite && rank <= 10 {
        return if crate::isometry::definite_isometric(l1, l2) {
            IsoResult::Yes
        } else {
            IsoResult::No
        };
    }
    IsoResult::Unknown
}

/// Genus of the transcendental-side complement of a lattice P primitively
/// embedded in an even unimodular ambient of signature (p, q): signature
/// (p - sig_plus(P), q - sig_minus(P)) and form -q_P.
pub fn complement_genus_in_unimodular(p: &Lattice, amb_plus: usize, amb_minus: usize) -> GenusDescriptor {
    let (sp, sm) = p.signature();
    assert!(sp <= amb_plus && sm <= amb_minus);
    GenusDescriptor {
        sig_plus: amb_plus - sp,
        sig_minus: amb_minus - sm,
        form: discriminant_group(p).form.negate(),
    }
}

#[allow(dead_code)]
fn _unused(_: &QMat) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ade, hyperbolic_u, rank_one, AdeType, Lattice};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn a1_disc() {
        let d = discriminant_group(&ade(AdeType::A(1)));
        assert_eq!(d.form.orders, vec![BigInt::from(2)]);
        // q(g) = -1/2 mod 2 = 3/2
        assert_eq!(d.form.q_gen[0], rat(3, 2));
    }

    #[test]
    fn e8_disc_trivial() {
        let d = discriminant_group(&ade(AdeType::E8));
        assert!(d.form.orders.is_empty());
    }

    #[test]
    fn e6_disc() {
        let d = discriminant_group(&ade(AdeType::E6));
        assert_eq!(d.form.orders, vec![BigInt::from(3)]);
        // negative definite convention: q(g) = -4/3 mod 2 = 2/3
        assert_eq!(d.form.q_gen[0], rat(2, 3));
    }

    #[test]
    fn disc_order_matches_det() {
        for t in [AdeType::A(4), AdeType::A(5), AdeType::D(4), AdeType::D(7), AdeType::E7] {
            let l = ade(t);
            let d = discriminant_group(&l);
            assert_eq!(d.form.group_order(), l.det().abs());
        }
        let u2 = hyperbolic_u().rescale(2);
        assert_eq!(discriminant_group(&u2).form.group_order(), BigInt::from(4));
    }

    #[test]
    fn q_is_lift_independent() {
        let l = ade(AdeType::A(3));
        let d = discriminant_group(&l);
        for (i, lift) in d.lifts.iter().enumerate() {
            // shift the lift by a lattice vector and recompute q
            let mut shifted = lift.clone();
            shifted[0] += BigRational::from_integer(BigInt::from(3));
            shifted[2] -= BigRational::from_integer(BigInt::from(1));
            assert_eq!(rat_mod(&l.qnorm(&shifted), 2), d.form.q_gen[i]);
        }
    }

    #[test]
    fn class_of_roundtrip() {
        let l = ade(AdeType::D(5));
        let d = discriminant_group(&l);
        let els = d.form.elements(100).unwrap();
        for el in els {
            let lift = d.lift_of(&el);
            assert_eq!(d.class_of(&lift), el);
        }
    }

    #[test]
    fn compare_reflexive_and_simple_cases() {
        let a1 = discriminant_group(&ade(AdeType::A(1))).form;
        let m2 = discriminant_group(&rank_one(-2)).form;
        assert_eq!(compare_discriminant_forms(&a1, &m2, 10_000), Some(true));
        let a2 = discriminant_group(&ade(AdeType::A(2))).form;
        assert_eq!(compare_discriminant_forms(&a1, &a2, 10_000), Some(false));
        // ⟨-2⟩ and ⟨2⟩ have the same group but different forms
        let p2 = discriminant_group(&rank_one(2)).form;
        assert_eq!(compare_discriminant_forms(&m2, &p2, 10_000), Some(false));
    }

    #[test]
    fn u_vs_u2() {
        let u = hyperbolic_u();
        let u2 = u.rescale(2);
        assert_eq!(lattices_isomorphic(&u, &u2, 10_000), IsoResult::No);
    }

    #[test]
    fn nikulin_route() {
        // U⊕E8 vs E8⊕U: trivially isomorphic, decided via genus uniqueness
        let a = Lattice::direct_sum(&[&hyperbolic_u(), &ade(AdeType::E8)]);
        let b = Lattice::direct_sum(&[&ade(AdeType::E8), &hyperbolic_u()]);
        assert_eq!(lattices_isomorphic(&a, &b, 10_000), IsoResult::Yes);
    }
}

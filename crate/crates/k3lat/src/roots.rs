//! Root enumeration in negative definite lattices and ADE classification.

use crate::lattice::{ade, AdeType, Lattice};
use crate::mat::{IMat, QMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// floor(sqrt(r)) for a nonnegative rational r.
pub fn floor_sqrt(r: &BigRational) -> BigInt {
    assert!(!r.is_negative());
    let ab = r.numer() * r.denom();
    ab.sqrt().div_floor(r.denom())
}

/// Quadratic-completion data for a positive definite rational form:
/// Q(z) = sum_i d_i (z_i + sum_{j>i} u_ij z_j)^2.
struct Completion {
    d: Vec<BigRational>,
    u: QMat,
}

fn complete_squares(q: &QMat) -> Completion {
    let n = q.nrows();
    let mut a = q.clone();
    let mut d = Vec::with_capacity(n);
    let mut u = QMat::zero(n, n);
    for i in 0..n {
        let di = a[(i, i)].clone();
        assert!(di.is_positive(), "form is not positive definite");
        for j in i + 1..n {
            u[(i, j)] = &a[(i, j)] / &di;
        }
        for k in i + 1..n {
            for l in i + 1..n {
                let t = &a[(i, k)] * &a[(i, l)] / &di;
                a[(k, l)] -= t;
            }
        }
        d.push(di);
    }
    Completion { d, u }
}

/// All vectors z = y + shift with y integral and Q(z) <= bound, Q positive
/// definite. Returns the z coordinates.
pub fn qf_short_vectors(
    q: &QMat,
    shift: &[BigRational],
    bound: &BigRational,
) -> Vec<Vec<BigRational>> {
    let n = q.nrows();
    assert_eq!(shift.len(), n);
    if n == 0 {
        return if bound.is_negative() { vec![] } else { vec![vec![]] };
    }
    let comp = complete_squares(q);
    let mut out = Vec::new();
    let mut z = vec![BigRational::zero(); n];
    rec_enum(&comp, shift, bound, n - 1, &mut z, bound.clone(), &mut out, n);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec_enum(
    comp: &Completion,
    shift: &[BigRational],
    bound: &BigRational,
    level: usize,
    z: &mut Vec<BigRational>,
    remaining: BigRational,
    out: &mut Vec<Vec<BigRational>>,
    n: usize,
) {
    // inner linear part at this level given the already-fixed tail
    let mut lin = BigRational::zero();
    for j in level + 1..n {
        lin += &comp.u[(level, j)] * &z[j];
    }
    // z_level = y + shift_level ranges around center -lin
    let center = -&lin - &shift[level];
    let ratio = &remaining / &comp.d[level];
    let k = floor_sqrt(&ratio) + BigInt::one();
    let c_floor = center.floor().to_integer();
    let lo = &c_floor - &k;
    let hi = &c_floor + &k + BigInt::one();
    let mut y = lo;
    while y <= hi {
        let zl = BigRational::from_integer(y.clone()) + &shift[level];
        let w = &zl + &lin;
        let term = &comp.d[level] * &w * &w;
        if term <= remaining {
            z[level] = zl;
            if level == 0 {
                out.push(z.clone());
            } else {
                let rem = &remaining - &term;
                rec_enum(comp, shift, bound, level - 1, z, rem, out, n);
            }
        }
        y += BigInt::one();
    }
    z[level] = BigRational::zero();
}

fn neg_gram_q(l: &Lattice) -> QMat {
    let n = l.rank();
    let mut q = QMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] = BigRational::from_integer(-l.gram[(i, j)].clone());
        }
    }
    q
}

/// All integral v with v·v = -2 in a negative definite lattice.
pub fn enumerate_roots(l: &Lattice) -> Vec<Vec<BigInt>> {
    assert!(l.is_negative_definite(), "root enumeration wants a negative definite lattice");
    let n = l.rank();
    let q = neg_gram_q(l);
    let shift = vec![BigRational::zero(); n];
    let two = BigRational::from_integer(BigInt::from(2));
    qf_short_vectors(&q, &shift, &two)
        .into_iter()
        .filter(|z| {
            let v: Vec<BigInt> = z.iter().map(|x| x.to_integer()).collect();
            l.norm(&v) == BigInt::from(-2)
        })
        .map(|z| z.iter().map(|x| x.to_integer()).collect())
        .collect()
}

/// Independent second strategy: plain box enumeration with the bound
/// x_i^2 <= 2 (Q^{-1})_ii for Q = -gram.
pub fn enumerate_roots_box(l: &Lattice) -> Vec<Vec<BigInt>> {
    assert!(l.is_negative_definite());
    let n = l.rank();
    let q = neg_gram_q(l);
    let qinv = q.inverse().expect("degenerate");
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let b = BigRational::from_integer(BigInt::from(2)) * &qinv[(i, i)];
            floor_sqrt(&b).to_i64().unwrap()
        })
        .collect();
    // Schur complements S_k onto the first k coordinates: the minimum of
    // Q over all completions of a fixed k-prefix p is p^T S_k p, so any
    // prefix with p^T S_k p > 2 cannot extend to a root.
    let mut schur: Vec<QMat> = Vec::with_capacity(n);
    for k in 1..=n {
        if k == n {
            schur.push(q.clone());
            break;
        }
        let mut q_aa = QMat::zero(k, k);
        let mut q_ab = QMat::zero(k, n - k);
        let mut q_bb = QMat::zero(n - k, n - k);
        for i in 0..n {
            for j in 0..n {
                match (i < k, j < k) {
                    (true, true) => q_aa[(i, j)] = q[(i, j)].clone(),
                    (true, false) => q_ab[(i, j - k)] = q[(i, j)].clone(),
                    (false, false) => q_bb[(i - k, j - k)] = q[(i, j)].clone(),
                    (false, true) => {}
                }
            }
        }
        let bb_inv = q_bb.inverse().expect("positive definite");
        let corr = q_ab.mul(&bb_inv).mul(&q_ab.transpose());
        let mut s = QMat::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                s[(i, j)] = &q_aa[(i, j)] - &corr[(i, j)];
            }
        }
        schur.push(s);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut v = vec![BigInt::zero(); n];
    fn rec(
        l: &Lattice,
        bounds: &[i64],
        schur: &[QMat],
        two: &BigRational,
        i: usize,
        v: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if i == bounds.len() {
            if l.norm(v) == BigInt::from(-2) {
                out.push(v.clone());
            }
            return;
        }
        for x in -bounds[i]..=bounds[i] {
            v[i] = BigInt::from(x);
            let s = &schur[i];
            let mut val = BigRational::zero();
            for a in 0..=i {
                for b in 0..=i {
                    val += &s[(a, b)]
                        * BigRational::from_integer(&v[a] * &v[b]);
                }
            }
            if val <= *two {
                rec(l, bounds, schur, two, i + 1, v, out);
            }
        }
        v[i] = BigInt::zero();
    }
    rec(l, &bounds, &schur, &two, 0, &mut v, &mut out);
    out
}

/// An ordered base of simple roots with its Cartan matrix and the ADE
/// decomposition. Component indices are contiguous and in Bourbaki order.
#[derive(Clone, Debug)]
pub struct RootBase {
    pub simple_roots: Vec<Vec<BigInt>>,
    pub cartan: IMat,
    pub components: Vec<(AdeType, Vec<usize>)>,
}

impl RootBase {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn component_types(&self) -> Vec<AdeType> {
        self.components.iter().map(|(t, _)| *t).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let roots: Vec<Vec<String>> = self
            .simple_roots
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|(t, idx)| serde_json::json!({"type": t.to_string(), "indices": idx}))
            .collect();
        serde_json::json!({"simple_roots": roots, "components": comps})
    }
}

/// Deterministic generic functional used to pick a positive system.
fn functional(v: &[BigInt]) -> BigInt {
    let m = BigInt::from(1_000_003u64);
    let mut acc = BigInt::zero();
    for x in v.iter().rev() {
        acc = acc * &m + x;
    }
    acc
}

/// A base of simple roots chosen by the deterministic functional: positive
/// roots have positive functional value, simple means not a sum of two
/// positives.
pub fn simple_roots(l: &Lattice) -> RootBase {
    let roots = enumerate_roots(l);
    simple_roots_from(l, &roots)
}

pub fn simple_roots_from(l: &Lattice, roots: &[Vec<BigInt>]) -> RootBase {
    use std::collections::HashSet;
    let positives: Vec<&Vec<BigInt>> =
        roots.iter().filter(|r| functional(r).is_positive()).collect();
    let pos_set: HashSet<&[BigInt]> = positives.iter().map(|r| r.as_slice()).collect();
    let mut simples: Vec<Vec<BigInt>> = Vec::new();
    for r in &positives {
        let decomposable = positives.iter().any(|p| {
            if p == r {
                return false;
            }
            let diff: Vec<BigInt> = r.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
            pos_set.contains(diff.as_slice())
        });
        if !decomposable {
            simples.push((*r).clone());
        }
    }
    classify_base(l, simples)
}

/// Classify a set of norm -2 vectors (closed under negation) by building a
/// base and matching each connected component against the ADE catalog.
pub fn classify_root_system(l: &Lattice, roots: &[Vec<BigInt>]) -> RootBase {
    simple_roots_from(l, roots)
}

fn classify_base(l: &Lattice, simples: Vec<Vec<BigInt>>) -> RootBase {
    let k = simples.len();
    // adjacency of the Dynkin graph
    let mut adj = vec![vec![]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && !l.pair(&simples[i], &simples[j]).is_zero() {
                adj[i].push(j);
            }
        }
    }
    for i in 0..k {
        for &j in &adj[i] {
            assert_eq!(l.pair(&simples[i], &simples[j]), BigInt::one(), "non-ADE pairing");
        }
        assert_eq!(l.norm(&simples[i]), BigInt::from(-2));
    }
    // connected components, by smallest contained index
    let mut seen = vec![false; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps.sort();
    // order each component's nodes Bourbaki-style
    let mut ordered: Vec<Vec<BigInt>> = Vec::new();
    let mut components = Vec::new();
    for comp in &comps {
        let (t, order) = bourbaki_order(&adj, comp);
        let start = ordered.len();
        for &node in &order {
            ordered.push(simples[node].clone());
        }
        components.push((t, (start..start + order.len()).collect::<Vec<_>>()));
    }
    let mut cartan = IMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            cartan[(i, j)] = -l.pair(&ordered[i], &ordered[j]);
        }
    }
    // guard: per-component Cartan must match the catalog exactly
    for (t, idx) in &components {
        let cat = ade(*t);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                assert_eq!(cartan[(i, j)], -cat.gram[(a, b)].clone(), "bad component ordering");
            }
        }
    }
    RootBase { simple_roots: ordered, cartan, components }
}

/// Classify a simple graph as a disjoint union of ADE Dynkin diagrams.
/// Returns the components with their nodes in Bourbaki order; panics if
/// the graph is not a disjoint union of ADE diagrams.
pub fn classify_graph(adj: &[Vec<usize>]) -> Vec<(AdeType, Vec<usize>)> {
    let k = adj.len();
    let mut seen = vec![false; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps.sort();
    comps.iter().map(|c| bourbaki_order(adj, c)).collect()
}

fn bourbaki_order(adj: &[Vec<usize>], comp: &[usize]) -> (AdeType, Vec<usize>) {
    let n = comp.len();
    if n == 1 {
        return (AdeType::A(1), comp.to_vec());
    }
    let deg = |v: usize| adj[v].iter().filter(|u| comp.contains(u)).count();
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
    let walk = |from: usize, first: usize| {
        // path from `from` through `first` to a leaf, not turning back
        let mut path = vec![first];
        let mut prev = from;
        let mut cur = first;
        loop {
            let next: Vec<usize> =
                adj[cur].iter().copied().filter(|&u| u != prev && comp.contains(&u)).collect();
            match next.len() {
                0 => return path,
                1 => {
                    prev = cur;
                    cur = next[0];
                    path.push(cur);
                }
                _ => panic!("arm passes through a branch node"),
            }
        }
    };
    match branch.len() {
        0 => {
            // path graph: A_n
            let mut ends: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) == 1).collect();
            ends.sort();
            let start = ends[0];
            let mut order = vec![start];
            order.extend(walk(start, adj[start].iter().copied().find(|u| comp.contains(u)).unwrap()));
            assert_eq!(order.len(), n);
            (AdeType::A(n), order)
        }
        1 => {
            let c = branch[0];
            assert_eq!(deg(c), 3, "degree > 3 node is not ADE");
            let mut arms: Vec<Vec<usize>> = adj[c]
                .iter()
                .copied()
                .filter(|u| comp.contains(u))
                .map(|u| walk(c, u))
                .collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let (l1, l2, l3) = (arms[0].len(), arms[1].len(), arms[2].len());
            if l1 == 1 && l2 == 1 {
                // D_{l3 + 3}: long arm leaf-to-center, then center, then forks
                let t = AdeType::D(l3 + 3);
                let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                order.push(c);
                order.push(arms[0][0]);
                order.push(arms[1][0]);
                assert_eq!(order.len(), n);
                (t, order)
            } else if l1 == 1 && l2 == 2 && (2..=4).contains(&l3) {
                let t = match l3 {
                    2 => AdeType::E6,
                    3 => AdeType::E7,
                    _ => AdeType::E8,
                };
                // nodes: 1 = far end of 2-arm, 2 = the short arm, 3 = near
                // end of 2-arm, 4 = center, 5.. = long arm outward
                let mut order = vec![arms[1][1], arms[0][0], arms[1][0], c];
                order.extend(arms[2].iter().copied());
                assert_eq!(order.len(), n);
                (t, order)
            } else {
                panic!("arm lengths ({},{},{}) are not ADE", l1, l2, l3);
            }
        }
        _ => panic!("more than one branch node is not ADE"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ade, AdeType, Lattice};

    #[test]
    fn root_counts_small() {
        for t in [AdeType::A(1), AdeType::A(2), AdeType::A(3), AdeType::D(4), AdeType::D(5)] {
            let l = ade(t);
            assert_eq!(enumerate_roots(&l).len(), t.root_count(), "count for {}", t);
        }
    }

    #[test]
    fn root_counts_exceptional() {
        assert_eq!(enumerate_roots(&ade(AdeType::E6)).len(), 72);
        assert_eq!(enumerate_roots(&ade(AdeType::E7)).len(), 126);
        assert_eq!(enumerate_roots(&ade(AdeType::E8)).len(), 240);
    }

    #[test]
    fn strategies_agree() {
        for t in [AdeType::A(4), AdeType::D(4), AdeType::E6] {
            let l = ade(t);
            let mut a = enumerate_roots(&l);
            let mut b = enumerate_roots_box(&l);
            a.sort();
            b.sort();
            assert_eq!(a, b, "strategy mismatch for {}", t);
        }
    }

    #[test]
    fn classify_catalog() {
        for t in [
            AdeType::A(1),
            AdeType::A(2),
            AdeType::A(5),
            AdeType::D(4),
            AdeType::D(6),
            AdeType::E6,
            AdeType::E7,
            AdeType::E8,
        ] {
            let base = simple_roots(&ade(t));
            assert_eq!(base.component_types(), vec![t], "classification of {}", t);
        }
    }

    #[test]
    fn classify_direct_sum() {
        let l = Lattice::direct_sum(&[&ade(AdeType::A(3)), &ade(AdeType::A(1)), &ade(AdeType::A(1))]);
        let base = simple_roots(&l);
        assert_eq!(
            base.component_types(),
            vec![AdeType::A(3), AdeType::A(1), AdeType::A(1)]
        );
        assert_eq!(enumerate_roots(&l).len(), 12 + 2 + 2);
    }

    #[test]
    fn shifted_enumeration() {
        // vectors in Z^2 + (1/2,1/2) of norm <= 1/2 under the identity form
        let q = crate::mat::QMat::identity(2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let shift = vec![half.clone(), half.clone()];
        let found = qf_short_vectors(&q, &shift, &half);
        assert_eq!(found.len(), 4); // (±1/2, ±1/2)
    }
}

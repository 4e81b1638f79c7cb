//! Reproducible case studies: branch-count and involution tables for the
//! ADE catalog, the sextic configurations (quintic plus line, quartic plus
//! two bitangents, the cuspidal pair), and the symmetry/orbifold checks.

use crate::ambient::{
    admissible_picard, build_m, eight_divides_filter, z2_independence, AmbientModel, Configuration,
};
use crate::disc::{
    compare_discriminant_forms, complement_genus_in_unimodular, discriminant_group,
    lattices_isomorphic, GenusDescriptor, IsoResult,
};
use crate::lattice::{ade, hyperbolic_u, rank_one, AdeType, Lattice};
use crate::mat::IMat;
use crate::resolution::resolve_ade;
use crate::roots::RootBase;
use crate::weyl::{fundamental_weights, index_of_sum, invariant_sublattices, longest_element};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Candidates,
    Unknown,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Candidates => "candidates",
            CheckStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub claim: String,
    pub status: CheckStatus,
    pub computed: serde_json::Value,
    pub expected: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case_id: String,
    pub checks: Vec<Check>,
}

impl CaseReport {
    /// All checks pass (informational "candidates" entries do not count
    /// against the report).
    pub fn ok(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Candidates))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "case_id": self.case_id,
            "ok": self.ok(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "claim": c.claim,
                "status": c.status.as_str(),
                "computed": c.computed,
                "expected": c.expected,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("[{}] {}\n", if self.ok() { "ok" } else { "FAIL" }, self.case_id);
        for c in &self.checks {
            out.push_str(&format!("  {:<10} {}\n", c.status.as_str(), c.claim));
            if c.status == CheckStatus::Fail {
                out.push_str(&format!("    computed: {}\n    expected: {}\n", c.computed, c.expected));
            }
        }
        out
    }
}

fn check_eq<T: PartialEq + serde::Serialize>(claim: &str, computed: T, expected: T) -> Check {
    let status = if computed == expected { CheckStatus::Pass } else { CheckStatus::Fail };
    Check {
        claim: claim.to_string(),
        status,
        computed: serde_json::to_value(&computed).unwrap(),
        expected: serde_json::to_value(&expected).unwrap(),
    }
}

fn check_flag(claim: &str, ok: bool, computed: serde_json::Value) -> Check {
    Check {
        claim: claim.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        computed,
        expected: serde_json::Value::String("see claim".into()),
    }
}

// ---------------------------------------------------------------------------
// catalog helpers

/// Catalog root base of an ADE lattice: the basis vectors themselves.
fn unit_base(t: AdeType) -> RootBase {
    let l = ade(t);
    let k = l.rank();
    let mut cartan = IMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            cartan[(i, j)] = -l.gram[(i, j)].clone();
        }
    }
    let simple_roots = (0..k)
        .map(|i| {
            let mut v = vec![BigInt::zero(); k];
            v[i] = BigInt::one();
            v
        })
        .collect();
    RootBase { simple_roots, cartan, components: vec![(t, (0..k).collect())] }
}

/// Matrix of -w0 on the catalog basis of one ADE lattice.
pub fn neg_w0_matrix(t: AdeType) -> IMat {
    longest_element(&ade(t), &unit_base(t)).matrix
}

/// The involution 1 ⊕ (-w0 per component) on ⟨H⟩ ⊕ L coordinates.
pub fn involution_on_hl(types: &[AdeType]) -> IMat {
    let n: usize = 1 + types.iter().map(|t| t.rank()).sum::<usize>();
    let mut m = IMat::zero(n, n);
    m[(0, 0)] = BigInt::one();
    let mut off = 1;
    for &t in types {
        let w = neg_w0_matrix(t);
        let k = t.rank();
        for i in 0..k {
            for j in 0..k {
                m[(off + i, off + j)] = w[(i, j)].clone();
            }
        }
        off += k;
    }
    m
}

/// Lift the ⟨H⟩⊕L involution to M coordinates (M must be stable).
pub fn involution_on_m(model: &AmbientModel) -> IMat {
    let iota_hl = involution_on_hl(&model.config.singularities);
    let n = model.m.rank();
    let b = &model.basis_in_hl;
    let binv = b.inverse().expect("basis invertible");
    let prod = binv.mul(&iota_hl.to_rational()).mul(b);
    let mut out = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            assert!(prod[(i, j)].is_integer(), "M is not stable under the involution");
            out[(i, j)] = prod[(i, j)].to_integer();
        }
    }
    out
}

/// Anti-invariant rank r⁻ of -w0 per type.
pub fn r_minus(t: AdeType) -> usize {
    match t {
        AdeType::A(n) => n / 2,
        AdeType::D(n) => {
            if n % 2 == 1 {
                1
            } else {
                0
            }
        }
        AdeType::E6 => 2,
        AdeType::E7 | AdeType::E8 => 0,
    }
}

/// Invariant rank r⁺ of -w0 per type.
pub fn r_plus(t: AdeType) -> usize {
    t.rank() - r_minus(t)
}

fn expected_m_table(t: AdeType) -> usize {
    match t {
        AdeType::A(_) => 0,
        AdeType::D(n) => (n - 2) / 2,
        AdeType::E6 => 1,
        AdeType::E7 => 3,
        AdeType::E8 => 4,
    }
}

/// Stored discriminant-group orders for the anti-invariant part of -w0.
fn expected_anti_orders(t: AdeType) -> Vec<u64> {
    match t {
        AdeType::A(k) => {
            if k % 2 == 1 {
                let n = (k + 1) / 2;
                if n < 2 {
                    vec![]
                } else {
                    let mut v = vec![2u64; n - 2];
                    v.push(2 * n as u64);
                    v
                }
            } else {
                let n = k / 2;
                let mut v = vec![2u64; n - 1];
                v.push(4 * n as u64 + 2);
                v
            }
        }
        AdeType::D(n) => {
            if n % 2 == 1 {
                vec![4]
            } else {
                vec![]
            }
        }
        AdeType::E6 => vec![2, 6],
        AdeType::E7 | AdeType::E8 => vec![],
    }
}

/// Stored discriminant-group orders for the invariant part of -w0.
fn expected_inv_orders(t: AdeType) -> Vec<u64> {
    match t {
        AdeType::A(k) => vec![2; (k + 1) / 2],
        AdeType::D(n) => {
            if n % 2 == 1 {
                vec![2, 2]
            } else {
                vec![2, 2]
            }
        }
        AdeType::E6 => vec![2, 2],
        AdeType::E7 => vec![2],
        AdeType::E8 => vec![],
    }
}

fn catalog_rank_le(max: usize) -> Vec<AdeType> {
    let mut v = Vec::new();
    for n in 1..=max {
        v.push(AdeType::A(n));
    }
    for n in 4..=max {
        v.push(AdeType::D(n));
    }
    if max >= 6 {
        v.push(AdeType::E6);
    }
    if max >= 7 {
        v.push(AdeType::E7);
    }
    if max >= 8 {
        v.push(AdeType::E8);
    }
    v
}

fn disc_orders(l: &Lattice) -> Vec<u64> {
    if l.rank() == 0 {
        return vec![];
    }
    discriminant_group(l)
        .form
        .orders
        .iter()
        .map(|o| {
            use num_traits::ToPrimitive;
            o.to_u64().expect("small order")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// diagram symmetries acting on the discriminant group of ⟨H⟩ ⊕ L

/// Structural model of A_{⟨H⟩⊕L} as a product of per-component cyclic
/// pieces with explicit lifts, suitable for fast symmetry enumeration.
struct AhlForm {
    hl: Lattice,
    types: Vec<AdeType>,
    /// coordinate offset of each component inside hl
    offsets: Vec<usize>,
    /// generator orders, H generator first
    orders: Vec<u32>,
    /// generator index range per component (H generator is index 0)
    gen_range: Vec<(usize, usize)>,
    /// generator lifts in hl coordinates
    lifts: Vec<Vec<BigRational>>,
}

fn comp_gen_data(t: AdeType) -> (Vec<u32>, Vec<Vec<BigRational>>) {
    let l = ade(t);
    let base = unit_base(t);
    let w = fundamental_weights(&l, &base);
    let k = t.rank();
    match t {
        AdeType::A(n) => (vec![n as u32 + 1], vec![w[k - 1].clone()]),
        AdeType::D(n) => {
            if n % 2 == 1 {
                (vec![4], vec![w[k - 1].clone()])
            } else {
                (vec![2, 2], vec![w[k - 2].clone(), w[k - 1].clone()])
            }
        }
        AdeType::E6 => (vec![3], vec![w[0].clone()]),
        AdeType::E7 => (vec![2], vec![w[6].clone()]),
        AdeType::E8 => (vec![], vec![]),
    }
}

impl AhlForm {
    fn new(types: &[AdeType]) -> AhlForm {
        let parts: Vec<Lattice> = types.iter().map(|&t| ade(t)).collect();
        let mut all: Vec<&Lattice> = Vec::new();
        let h = rank_one(2);
        all.push(&h);
        for p in &parts {
            all.push(p);
        }
        let mut hl = Lattice::direct_sum(&all);
        hl.labels[0] = "H".to_string();
        let n = hl.rank();
        let mut offsets = Vec::new();
        let mut orders = vec![2u32];
        let mut gen_range = Vec::new();
        let mut lifts: Vec<Vec<BigRational>> = Vec::new();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut h_lift = vec![BigRational::zero(); n];
        h_lift[0] = half;
        lifts.push(h_lift);
        let mut off = 1;
        for &t in types {
            offsets.push(off);
            let (ord, wl) = comp_gen_data(t);
            let start = orders.len();
            for (o, w) in ord.iter().zip(wl.iter()) {
                orders.push(*o);
                let mut v = vec![BigRational::zero(); n];
                for (i, x) in w.iter().enumerate() {
                    v[off + i] = x.clone();
                }
                lifts.push(v);
            }
            gen_range.push((start, orders.len()));
            off += t.rank();
        }
        // sanity: the product of the orders equals |det hl|
        let mut prod = BigInt::one();
        for &o in &orders {
            prod *= BigInt::from(o);
        }
        assert_eq!(prod, hl.det().abs(), "discriminant order mismatch");
        AhlForm { hl, types: types.to_vec(), offsets, orders, gen_range, lifts }
    }

    /// Class of a dual vector (hl coordinates) as generator coefficients.
    fn class_of(&self, v: &[BigRational]) -> Vec<u32> {
        let mut out = vec![0u32; self.orders.len()];
        // H coefficient: v[0] must be a multiple of 1/2
        let two_v0 = &v[0] * BigRational::from_integer(BigInt::from(2));
        assert!(two_v0.is_integer(), "not in the dual lattice");
        {
            use num_traits::ToPrimitive;
            out[0] = num_integer::Integer::mod_floor(&two_v0.to_integer(), &BigInt::from(2))
                .to_u32()
                .unwrap();
        }
        for (c, &t) in self.types.iter().enumerate() {
            let off = self.offsets[c];
            let k = t.rank();
            let vc: Vec<BigRational> = v[off..off + k].to_vec();
            let (s, e) = self.gen_range[c];
            let coeffs = self.decompose(c, &vc);
            out[s..e].copy_from_slice(&coeffs);
        }
        out
    }

    /// Find coefficients over the component's generators by brute force.
    fn decompose(&self, comp: usize, vc: &[BigRational]) -> Vec<u32> {
        let (s, e) = self.gen_range[comp];
        let off = self.offsets[comp];
        let k = vc.len();
        let ngen = e - s;
        let mut coeffs = vec![0u32; ngen];
        loop {
            // test the current coefficient tuple
            let mut rem = vc.to_vec();
            for (gi, &c) in coeffs.iter().enumerate() {
                let lift = &self.lifts[s + gi];
                for i in 0..k {
                    rem[i] -= BigRational::from_integer(BigInt::from(c)) * &lift[off + i];
                }
            }
            if rem.iter().all(|x| x.is_integer()) {
                return coeffs;
            }
            // odometer step
            let mut gi = 0;
            loop {
                if gi == ngen {
                    panic!("vector not in the dual lattice");
                }
                coeffs[gi] += 1;
                if coeffs[gi] < self.orders[s + gi] {
                    break;
                }
                coeffs[gi] = 0;
                gi += 1;
            }
        }
    }

    fn reduce(&self, x: &mut [u32]) {
        for (xi, &o) in x.iter_mut().zip(self.orders.iter()) {
            *xi %= o;
        }
    }

    fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y.iter())
            .zip(self.orders.iter())
            .map(|((&a, &b), &o)| (a + o - b % o) % o)
            .collect()
    }

    fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y.iter())
            .zip(self.orders.iter())
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect()
    }

    /// All elements of the finite group, odometer order.
    fn all_elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.orders.len()]];
        for (i, &o) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for x in &out {
                for c in 0..o {
                    let mut y = x.clone();
                    y[i] = c;
                    next.push(y);
                }
            }
            out = next;
        }
        out
    }

    /// Fractional pairing b(gen_i, gen_j) of the generators.
    fn pairing_table(&self) -> Vec<Vec<BigRational>> {
        let g = self.lifts.len();
        let mut b = vec![vec![BigRational::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                b[i][j] = self.hl.qpair(&self.lifts[i], &self.lifts[j]);
            }
        }
        b
    }
}

/// Diagram automorphisms of one ADE component, as 0-based node
/// permutations of the catalog ordering.
fn diagram_autos(t: AdeType) -> Vec<Vec<usize>> {
    let k = t.rank();
    let id: Vec<usize> = (0..k).collect();
    match t {
        AdeType::A(n) if n >= 2 => {
            let flip: Vec<usize> = (0..k).rev().collect();
            vec![id, flip]
        }
        AdeType::D(4) => {
            // the symmetric group on the three outer nodes 0, 2, 3
            let mut out = Vec::new();
            let outer = [0usize, 2, 3];
            let perms3: [[usize; 3]; 6] =
                [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for p in perms3 {
                let mut v = id.clone();
                for (a, &b) in outer.iter().zip(p.iter()) {
                    v[*a] = outer[b];
                }
                out.push(v);
            }
            out
        }
        AdeType::D(n) if n >= 5 => {
            let mut flip = id.clone();
            flip.swap(n - 2, n - 1);
            vec![id, flip]
        }
        AdeType::E6 => vec![id, vec![5, 1, 4, 3, 2, 0]],
        _ => vec![id],
    }
}

/// Coefficient matrices of each diagram automorphism on the component's
/// discriminant generators: image of gen j = Σ_k mat[j][k]·gen k.
fn auto_gen_action(t: AdeType) -> Vec<Vec<Vec<u32>>> {
    let (orders, wl) = comp_gen_data(t);
    let k = t.rank();
    // a throwaway single-component form for decomposition
    let form = AhlForm::new(&[t]);
    let mut out = Vec::new();
    for auto in diagram_autos(t) {
        let mut mats = Vec::new();
        for w in &wl {
            let mut img = vec![BigRational::zero(); k];
            for i in 0..k {
                img[auto[i]] = w[i].clone();
            }
            mats.push(form.decompose(0, &img));
        }
        let _ = &orders;
        out.push(mats);
    }
    out
}

#[derive(Clone, Debug)]
pub struct StabilizerDescriptor {
    /// order of the group of diagram symmetries preserving the glue
    pub group_order: u64,
    /// a generating set, as node permutations of the full base of L
    /// (omitted when the ambient symmetry group is large)
    pub generators: Vec<Vec<usize>>,
    /// size of the subgroup acting trivially on the discriminant group
    pub kernel_order: u64,
    pub disc_action_faithful: bool,
}

/// Enumerate the diagram symmetries of L (component permutations of equal
/// types composed with per-component diagram automorphisms) that preserve
/// the glue subgroup of ⟨H⟩⊕L defining an overlattice, and report whether
/// the group acts faithfully on the overlattice's discriminant group.
pub fn stabilizer_action(types: &[AdeType], glue: &[Vec<BigRational>]) -> StabilizerDescriptor {
    let form = AhlForm::new(types);
    let ngen = form.orders.len();
    let ncomp = types.len();

    // glue classes, their subgroup G, and the orthogonal subgroup G⊥
    let glue_classes: Vec<Vec<u32>> = glue.iter().map(|v| form.class_of(v)).collect();
    let mut g_set: HashSet<Vec<u32>> = HashSet::new();
    g_set.insert(vec![0; ngen]);
    for gc in &glue_classes {
        let members: Vec<Vec<u32>> = g_set.iter().cloned().collect();
        for s in members {
            let mut cur = s;
            loop {
                cur = form.add(&cur, gc);
                if !g_set.insert(cur.clone()) {
                    break;
                }
            }
        }
    }
    let btab = form.pairing_table();
    // t_i = Σ_j glue_j b_ij per glue class
    let traces: Vec<Vec<BigRational>> = glue_classes
        .iter()
        .map(|gc| {
            (0..ngen)
                .map(|i| {
                    let mut s = BigRational::zero();
                    for j in 0..ngen {
                        s += BigRational::from_integer(BigInt::from(gc[j])) * &btab[i][j];
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut perp: Vec<Vec<u32>> = Vec::new();
    for x in form.all_elements() {
        let ortho = traces.iter().all(|t| {
            let mut s = BigRational::zero();
            for i in 0..ngen {
                s += BigRational::from_integer(BigInt::from(x[i])) * &t[i];
            }
            s.is_integer()
        });
        if ortho {
            perp.push(x);
        }
    }
    // greedy generating set of G⊥
    let mut span: HashSet<Vec<u32>> = HashSet::new();
    span.insert(vec![0; ngen]);
    let mut perp_gens: Vec<Vec<u32>> = Vec::new();
    for x in &perp {
        if span.contains(x) {
            continue;
        }
        perp_gens.push(x.clone());
        let members: Vec<Vec<u32>> = span.iter().cloned().collect();
        for s in members {
            let mut cur = s;
            loop {
                cur = form.add(&cur, x);
                if !span.insert(cur.clone()) {
                    break;
                }
            }
        }
    }
    assert_eq!(span.len(), perp.len(), "orthogonal subgroup generation");

    // per-type automorphism data
    let type_list: Vec<AdeType> = {
        let mut v = types.to_vec();
        v.sort_by_key(|t| format!("{}", t));
        v.dedup();
        v
    };
    let autos_of = |t: AdeType| -> usize { diagram_autos(t).len() };
    let action_of: Vec<(AdeType, Vec<Vec<Vec<u32>>>)> =
        type_list.iter().map(|&t| (t, auto_gen_action(t))).collect();
    let act = |t: AdeType| -> &Vec<Vec<Vec<u32>>> {
        &action_of.iter().find(|(s, _)| *s == t).unwrap().1
    };

    // blocks of identical components, each permuted freely
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &t) in types.iter().enumerate() {
        if let Some(b) = blocks.iter_mut().find(|b| types[b[0]] == t) {
            b.push(i);
        } else {
            blocks.push(vec![i]);
        }
    }

    // apply σ = (component target map, per-component auto) to a class
    let apply = |target: &[usize], autos: &[usize], x: &[u32]| -> Vec<u32> {
        let mut y = vec![0u32; ngen];
        y[0] = x[0];
        for c in 0..ncomp {
            let t = types[c];
            let (s, e) = form.gen_range[c];
            let (s2, _) = form.gen_range[target[c]];
            let mats = &act(t)[autos[c]];
            for j in 0..(e - s) {
                let xj = x[s + j];
                if xj == 0 {
                    continue;
                }
                for (k, &m) in mats[j].iter().enumerate() {
                    y[s2 + k] += xj * m;
                }
            }
        }
        form.reduce(&mut y);
        y
    };

    let total_symmetry: u64 = blocks
        .iter()
        .map(|b| (1..=b.len() as u64).product::<u64>())
        .product::<u64>()
        * types.iter().map(|&t| autos_of(t) as u64).product::<u64>();
    let collect_perms = total_symmetry <= 20_000;

    let mut group_order = 0u64;
    let mut kernel_order = 0u64;
    let mut allowed_perms: Vec<Vec<usize>> = Vec::new();

    // odometer over per-component autos nested inside block permutations
    let mut block_perms: Vec<Vec<usize>> = blocks.iter().map(|b| (0..b.len()).collect()).collect();
    loop {
        // current component target map
        let mut target = vec![0usize; ncomp];
        for (b, bp) in blocks.iter().zip(block_perms.iter()) {
            for (i, &pi) in bp.iter().enumerate() {
                target[b[i]] = b[pi];
            }
        }
        // iterate all auto choices
        let mut autos = vec![0usize; ncomp];
        'autoloop: loop {
            // glue preservation
            let preserves = glue_classes.iter().all(|gc| g_set.contains(&apply(&target, &autos, gc)));
            if preserves {
                group_order += 1;
                let trivial = perp_gens.iter().all(|x| {
                    let y = apply(&target, &autos, x);
                    g_set.contains(&form.sub(&y, x))
                });
                if trivial {
                    kernel_order += 1;
                }
                if collect_perms {
                    // node permutation of the whole base of L
                    let total_rank: usize = types.iter().map(|t| t.rank()).sum();
                    let mut p = vec![0usize; total_rank];
                    for c in 0..ncomp {
                        let a = &diagram_autos(types[c])[autos[c]];
                        let src = form.offsets[c] - 1;
                        let dst = form.offsets[target[c]] - 1;
                        for i in 0..types[c].rank() {
                            p[src + i] = dst + a[i];
                        }
                    }
                    allowed_perms.push(p);
                }
            }
            // advance autos odometer
            let mut c = 0;
            loop {
                if c == ncomp {
                    break 'autoloop;
                }
                autos[c] += 1;
                if autos[c] < autos_of(types[c]) {
                    break;
                }
                autos[c] = 0;
                c += 1;
            }
        }
        // advance block permutations (lexicographic next_permutation)
        let mut bi = 0;
        loop {
            if bi == block_perms.len() {
                let generators = if collect_perms {
                    generating_subset(&allowed_perms)
                } else {
                    vec![]
                };
                return StabilizerDescriptor {
                    group_order,
                    generators,
                    kernel_order,
                    disc_action_faithful: kernel_order == 1,
                };
            }
            if next_permutation(&mut block_perms[bi]) {
                break;
            }
            bi += 1;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        if n == 1 {
            // reset is the only option
        }
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.sort();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn generating_subset(elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if elements.is_empty() {
        return vec![];
    }
    let n = elements[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut span: HashSet<Vec<usize>> = HashSet::new();
    span.insert(id);
    let mut gens = Vec::new();
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // closure under composition with the new generator set
        loop {
            let members: Vec<Vec<usize>> = span.iter().cloned().collect();
            let mut grew = false;
            for s in &members {
                for g in &gens {
                    let c = compose(s, g);
                    if span.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// orbifold checks for nodal configurations

/// For a nodal (all-A1) configuration with the given glue generators in
/// ⟨H⟩⊕L coordinates: every glue-coset element has either all-integral
/// node coefficients or at least five half-integral ones.
pub fn zero_or_five_check(num_nodes: usize, glue: &[Vec<BigRational>]) -> bool {
    let n = 1 + num_nodes;
    for g in glue {
        assert_eq!(g.len(), n);
    }
    let k = glue.len();
    for mask in 0..(1u32 << k) {
        let mut v = vec![BigRational::zero(); n];
        for (i, g) in glue.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, b) in v.iter_mut().zip(g.iter()) {
                    *a += b;
                }
            }
        }
        let frac = (1..n).filter(|&i| !v[i].is_integer()).count();
        if frac != 0 && frac < 5 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// stored configurations

pub fn config_quintic_5nodes() -> Configuration {
    let json = serde_json::json!({
        "degree": 6,
        "components": [
            { "degree": 5, "incidences": [
                {"sing": 0, "node": 1}, {"sing": 1, "node": 1}, {"sing": 2, "node": 1},
                {"sing": 3, "node": 1}, {"sing": 4, "node": 1} ] },
            { "degree": 1, "incidences": [
                {"sing": 0, "node": 1}, {"sing": 1, "node": 1}, {"sing": 2, "node": 1},
                {"sing": 3, "node": 1}, {"sing": 4, "node": 1} ] }
        ],
        "singularities": [
            {"type": "A1"}, {"type": "A1"}, {"type": "A1"}, {"type": "A1"}, {"type": "A1"}
        ]
    });
    Configuration::from_json(&json).expect("stored configuration")
}

pub fn config_quintic_tacnode() -> Configuration {
    let json = serde_json::json!({
        "degree": 6,
        "components": [
            { "degree": 5, "incidences": [
                {"sing": 0, "node": "middle"}, {"sing": 1, "node": 1},
                {"sing": 2, "node": 1}, {"sing": 3, "node": 1} ] },
            { "degree": 1, "incidences": [
                {"sing": 0, "node": "middle"}, {"sing": 1, "node": 1},
                {"sing": 2, "node": 1}, {"sing": 3, "node": 1} ] }
        ],
        "singularities": [ {"type": "A3"}, {"type": "A1"}, {"type": "A1"}, {"type": "A1"} ]
    });
    Configuration::from_json(&json).expect("stored configuration")
}

pub fn config_quintic_2tacnodes() -> Configuration {
    let json = serde_json::json!({
        "degree": 6,
        "components": [
            { "degree": 5, "incidences": [
                {"sing": 0, "node": "middle"}, {"sing": 1, "node": "middle"},
                {"sing": 2, "node": 1} ] },
            { "degree": 1, "incidences": [
                {"sing": 0, "node": "middle"}, {"sing": 1, "node": "middle"},
                {"sing": 2, "node": 1} ] }
        ],
        "singularities": [ {"type": "A3"}, {"type": "A3"}, {"type": "A1"} ]
    });
    Configuration::from_json(&json).expect("stored configuration")
}

pub fn config_quartic_bitangents() -> Configuration {
    // quartic plus two bitangent lines: the lines are tangent to the
    // quartic at four tacnodes and cross each other in one node
    let json = serde_json::json!({
        "degree": 6,
        "components": [
            { "degree": 4, "incidences": [
                {"sing": 1, "node": "middle"}, {"sing": 2, "node": "middle"},
                {"sing": 3, "node": "middle"}, {"sing": 4, "node": "middle"} ] },
            { "degree": 1, "incidences": [
                {"sing": 0, "node": 1},
                {"sing": 1, "node": "middle"}, {"sing": 2, "node": "middle"} ] },
            { "degree": 1, "incidences": [
                {"sing": 0, "node": 1},
                {"sing": 3, "node": "middle"}, {"sing": 4, "node": "middle"} ] }
        ],
        "singularities": [
            {"type": "A1"}, {"type": "A3"}, {"type": "A3"}, {"type": "A3"}, {"type": "A3"}
        ]
    });
    Configuration::from_json(&json).expect("stored configuration")
}

/// Irreducible nodal sextic with m nodes: no glue classes at all.
pub fn config_nodal(m: usize) -> Configuration {
    let json = serde_json::json!({
        "degree": 6,
        "components": [ { "degree": 6, "incidences": [] } ],
        "singularities": (0..m).map(|_| serde_json::json!({"type": "A1"})).collect::<Vec<_>>()
    });
    Configuration::from_json(&json).expect("stored configuration")
}

// ---------------------------------------------------------------------------
// table cases

pub fn case_table1() -> CaseReport {
    let mut checks = Vec::new();
    let mut types = Vec::new();
    for n in 1..=19 {
        types.push(AdeType::A(n));
    }
    for n in 4..=19 {
        types.push(AdeType::D(n));
    }
    types.extend([AdeType::E6, AdeType::E7, AdeType::E8]);
    let mut computed = Vec::new();
    let mut expected = Vec::new();
    let mut graphs_ok = true;
    for &t in &types {
        let res = resolve_ade(t).expect("resolution in budget");
        computed.push((format!("{}", t), res.m));
        expected.push((format!("{}", t), expected_m_table(t)));
        if res.upstairs.components.len() != 1 || res.upstairs.components[0].0 != t {
            graphs_ok = false;
        }
    }
    checks.push(check_eq(
        "branch-curve counts of the canonical resolutions match the stored table",
        computed,
        expected,
    ));
    checks.push(check_flag(
        "every resolution dual graph is the Dynkin diagram of its type",
        graphs_ok,
        serde_json::json!(graphs_ok),
    ));
    CaseReport { case_id: "table1".into(), checks }
}

fn anti_inv_parts(t: AdeType) -> (Lattice, Lattice) {
    let l = ade(t);
    let iota = neg_w0_matrix(t);
    let ((inv, _), (anti, _)) = invariant_sublattices(&l, &iota);
    (inv, anti)
}

pub fn case_table2() -> CaseReport {
    let mut computed = Vec::new();
    let mut expected = Vec::new();
    for t in catalog_rank_le(19) {
        let (_, anti) = anti_inv_parts(t);
        computed.push((format!("{}", t), anti.rank(), disc_orders(&anti)));
        expected.push((format!("{}", t), r_minus(t), expected_anti_orders(t)));
    }
    let checks = vec![check_eq(
        "anti-invariant parts of -w0: ranks and discriminant groups match the stored table",
        computed,
        expected,
    )];
    CaseReport { case_id: "table2".into(), checks }
}

pub fn case_table3() -> CaseReport {
    let mut computed = Vec::new();
    let mut expected = Vec::new();
    for t in catalog_rank_le(19) {
        let (inv, _) = anti_inv_parts(t);
        computed.push((format!("{}", t), inv.rank(), disc_orders(&inv)));
        expected.push((format!("{}", t), r_plus(t), expected_inv_orders(t)));
    }
    let checks = vec![check_eq(
        "invariant parts of -w0: ranks and discriminant groups match the stored table",
        computed,
        expected,
    )];
    CaseReport { case_id: "table3".into(), checks }
}

pub fn case_lemma55() -> CaseReport {
    let mut computed = Vec::new();
    let mut expected = Vec::new();
    for t in catalog_rank_le(10) {
        let l = ade(t);
        let iota = neg_w0_matrix(t);
        let idx: Vec<u64> = index_of_sum(&l, &iota)
            .iter()
            .map(|x| {
                use num_traits::ToPrimitive;
                x.to_u64().unwrap()
            })
            .collect();
        computed.push((format!("{}", t), idx));
        expected.push((format!("{}", t), vec![2u64; r_minus(t)]));
    }
    let checks = vec![check_eq(
        "L/(L^inv + L^anti) is an elementary 2-group of rank equal to the anti-invariant rank",
        computed,
        expected,
    )];
    CaseReport { case_id: "lemma55".into(), checks }
}

// ---------------------------------------------------------------------------
// configuration pipeline helpers

fn root_divisibility_check(model: &AmbientModel) -> bool {
    // The orthogonal complement of H in the unimodular ambient lattice has
    // discriminant group Z/2, glued to H/2. A root e orthogonal to H
    // therefore has divisibility 2 there exactly when (H+e)/2 lies in the
    // Picard lattice, and divisibility 1 otherwise.
    let n = model.m.rank();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 1..n {
        let mut v = vec![BigRational::zero(); n];
        v[0] = half.clone();
        v[i] = half.clone();
        let coords = model.hl_to_m(&v);
        if coords.iter().all(|c| c.is_integer()) {
            return false;
        }
    }
    true
}

fn index_in_hl(model: &AmbientModel) -> BigInt {
    let ratio = model.hl.det().abs() / model.m.det().abs();
    // |hl : M-glue| squared is the determinant ratio
    let idx = crate::roots::floor_sqrt(&BigRational::from_integer(ratio.clone()));
    assert_eq!(&idx * &idx, ratio, "index must be exact");
    idx
}

fn survivors_of(model: &AmbientModel, cap: usize) -> Vec<BigInt> {
    admissible_picard(model, cap)
        .expect("pipeline in caps")
        .iter()
        .filter(|r| r.passes())
        .map(|r| r.candidate.index.clone())
        .collect()
}

fn iso_check(claim: &str, l1: &Lattice, l2: &Lattice) -> Check {
    let r = lattices_isomorphic(l1, l2, 20_000);
    let ok = matches!(r, IsoResult::Yes);
    Check {
        claim: claim.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        computed: serde_json::json!(format!("{}", r)),
        expected: serde_json::json!("isomorphic"),
    }
}

fn genus_check(claim: &str, p: &Lattice, expected: &Lattice) -> Check {
    let q_genus = complement_genus_in_unimodular(p, 3, 19);
    let e_genus = GenusDescriptor::of(expected);
    let ok = q_genus.matches(&e_genus, 20_000) == Some(true);
    Check {
        claim: claim.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        computed: serde_json::json!({
            "sig": [q_genus.sig_plus, q_genus.sig_minus],
            "disc_order": q_genus.form.group_order().to_string(),
        }),
        expected: serde_json::json!({
            "sig": [e_genus.sig_plus, e_genus.sig_minus],
            "disc_order": e_genus.form.group_order().to_string(),
        }),
    }
}

fn involution_checks(
    model: &AmbientModel,
    expected_inv_orders: Vec<u64>,
    expected_anti_orders: Vec<u64>,
    expected_index: Vec<u64>,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let iota = involution_on_m(model);
    let ((minv, _), (manti, _)) = invariant_sublattices(&model.m, &iota);
    checks.push(check_eq(
        "discriminant group of the invariant part of M",
        disc_orders(&minv),
        expected_inv_orders,
    ));
    let anti_det: BigInt =
        expected_anti_orders.iter().fold(BigInt::one(), |d, &o| d * BigInt::from(o));
    checks.push(check_eq(
        "discriminant group of the anti-invariant part of M",
        disc_orders(&manti),
        expected_anti_orders,
    ));
    let types = &model.config.singularities;
    let r_m: usize = types.iter().map(|&t| r_minus(t)).sum();
    let anti_ok = manti.rank() == r_m && manti.det().abs() == anti_det;
    checks.push(check_flag(
        "the anti-invariant part of M has the anti-invariant rank of L and the stored determinant",
        anti_ok,
        serde_json::json!({"rank": manti.rank(), "det": manti.det().to_string()}),
    ));
    let idx: Vec<u64> = index_of_sum(&model.m, &iota)
        .iter()
        .map(|x| {
            use num_traits::ToPrimitive;
            x.to_u64().unwrap()
        })
        .collect();
    checks.push(check_eq(
        "M over the sum of its invariant and anti-invariant parts matches the stored 2-group",
        idx,
        expected_index,
    ));
    checks
}

fn common_config_checks(model: &AmbientModel) -> Vec<Check> {
    let mut checks = Vec::new();
    let lp = model.config.l_prime() as u32;
    checks.push(check_eq(
        "index of ⟨H⟩⊕L in M is 2^(l'-1)",
        index_in_hl(model).to_string(),
        BigInt::from(2).pow(lp - 1).to_string(),
    ));
    checks.push(check_flag(
        "the component classes are 2-independent modulo ⟨H⟩⊕L",
        z2_independence(model),
        serde_json::json!(z2_independence(model)),
    ));
    let div_ok = root_divisibility_check(model);
    checks.push(check_flag(
        "every root of L has divisibility 1 in the orthogonal complement of H",
        div_ok,
        serde_json::json!(div_ok),
    ));
    checks
}

fn betas_mod_hl(model: &AmbientModel) -> Vec<Vec<BigRational>> {
    // nontrivial glue classes of M over ⟨H⟩⊕L
    model
        .betas
        .iter()
        .filter(|b| b.iter().any(|x| !x.is_integer()))
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// the five configuration cases

pub fn case_quintic_5nodes() -> CaseReport {
    let model = build_m(&config_quintic_5nodes()).expect("stored configuration builds");
    let mut checks = common_config_checks(&model);
    checks.push(check_eq("det M has absolute value 16", model.m.det().abs().to_string(), "16".to_string()));

    let survivors = survivors_of(&model, 20_000);
    checks.push(check_eq(
        "the admissibility filters leave exactly the lattice M itself",
        survivors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        vec!["1".to_string()],
    ));

    let expected_p = Lattice::direct_sum(&[&hyperbolic_u().rescale(2), &ade(AdeType::D(4))]);
    checks.push(iso_check("P is isomorphic to U(2)⊕D4", &model.m, &expected_p));

    let expected_q = Lattice::direct_sum(&[
        &hyperbolic_u().rescale(2),
        &hyperbolic_u(),
        &ade(AdeType::D(4)),
        &ade(AdeType::E8),
    ]);
    checks.push(genus_check(
        "the complement of P in the K3 lattice has the genus of U(2)⊕U⊕D4⊕E8",
        &model.m,
        &expected_q,
    ));

    let glue = betas_mod_hl(&model);
    let stab = stabilizer_action(&model.config.singularities, &glue);
    checks.push(check_eq("stabilizer order (S5 permuting the five nodes)", stab.group_order, 120));
    checks.push(check_flag(
        "the stabilizer acts faithfully on the discriminant group of P",
        stab.disc_action_faithful,
        serde_json::json!(stab.kernel_order),
    ));
    checks.push(check_flag(
        "glue coset coefficients are all integral or at least five are half-integral",
        zero_or_five_check(5, &glue),
        serde_json::json!(true),
    ));
    checks.extend(involution_checks(&model, vec![2, 2, 2, 2], vec![], vec![]));
    CaseReport { case_id: "quintic-5nodes".into(), checks }
}

pub fn case_quintic_tacnode() -> CaseReport {
    let model = build_m(&config_quintic_tacnode()).expect("stored configuration builds");
    let mut checks = common_config_checks(&model);
    checks.push(check_eq(
        "discriminant group of M is (Z/2)^2 x Z/4",
        disc_orders(&model.m),
        vec![2, 2, 4],
    ));
    let survivors = survivors_of(&model, 20_000);
    checks.push(check_eq(
        "the admissibility filters leave exactly the lattice M itself (P = M)",
        survivors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        vec!["1".to_string()],
    ));
    let expected_m = Lattice::direct_sum(&[&hyperbolic_u().rescale(2), &ade(AdeType::D(5))]);
    checks.push(iso_check("M is isomorphic to U(2)⊕D5", &model.m, &expected_m));
    let expected_q = Lattice::direct_sum(&[
        &hyperbolic_u(),
        &hyperbolic_u().rescale(2),
        &ade(AdeType::A(3)),
        &ade(AdeType::E8),
    ]);
    checks.push(genus_check(
        "the complement of P in the K3 lattice has the genus of U⊕U(2)⊕A3⊕E8",
        &model.m,
        &expected_q,
    ));
    let glue = betas_mod_hl(&model);
    let stab = stabilizer_action(&model.config.singularities, &glue);
    checks.push(check_eq("stabilizer order (S2 x S3)", stab.group_order, 12));
    checks.push(check_flag(
        "the stabilizer acts faithfully on the discriminant group of P",
        stab.disc_action_faithful,
        serde_json::json!(stab.kernel_order),
    ));
    checks.extend(involution_checks(&model, vec![2, 2, 2, 2], vec![4], vec![2]));
    CaseReport { case_id: "quintic-tacnode".into(), checks }
}

pub fn case_quintic_2tacnodes() -> CaseReport {
    let model = build_m(&config_quintic_2tacnodes()).expect("stored configuration builds");
    let mut checks = common_config_checks(&model);
    checks.push(check_eq(
        "discriminant group of M is (Z/4)^2",
        disc_orders(&model.m),
        vec![4, 4],
    ));
    let survivors = survivors_of(&model, 20_000);
    checks.push(check_eq(
        "the admissibility filters leave exactly the lattice M itself (P = M)",
        survivors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        vec!["1".to_string()],
    ));
    let expected_m = Lattice::direct_sum(&[
        &rank_one(-4),
        &hyperbolic_u(),
        &ade(AdeType::D(5)),
    ]);
    checks.push(iso_check("M is isomorphic to ⟨-4⟩⊕U⊕D5", &model.m, &expected_m));
    // the same identification through the discriminant form directly
    let f1 = discriminant_group(&model.m).form;
    let f2 = discriminant_group(&expected_m).form;
    checks.push(check_flag(
        "the discriminant form of M matches ⟨-4⟩⊕U⊕D5 exactly",
        compare_discriminant_forms(&f1, &f2, 20_000) == Some(true),
        serde_json::json!(f1.orders.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    ));
    let expected_q = Lattice::direct_sum(&[
        &rank_one(4),
        &ade(AdeType::A(3)),
        &hyperbolic_u(),
        &ade(AdeType::E8),
    ]);
    checks.push(genus_check(
        "the complement of P in the K3 lattice has the genus of ⟨4⟩⊕A3⊕U⊕E8",
        &model.m,
        &expected_q,
    ));
    let glue = betas_mod_hl(&model);
    let stab = stabilizer_action(&model.config.singularities, &glue);
    checks.push(check_eq("stabilizer order (S2 x S2 x swap of the two A3)", stab.group_order, 8));
    checks.push(check_flag(
        "the stabilizer acts faithfully on the discriminant group of P",
        stab.disc_action_faithful,
        serde_json::json!(stab.kernel_order),
    ));
    checks.extend(involution_checks(&model, vec![2, 2, 2, 2], vec![4, 4], vec![2, 2]));
    CaseReport { case_id: "quintic-2tacnodes".into(), checks }
}

pub fn case_quartic_bitangents() -> CaseReport {
    let model = build_m(&config_quartic_bitangents()).expect("stored configuration builds");
    let mut checks = common_config_checks(&model);

    let reports = admissible_picard(&model, 20_000).expect("pipeline in caps");
    let survivors: Vec<String> = reports
        .iter()
        .filter(|r| r.passes())
        .map(|r| r.candidate.index.to_string())
        .collect();
    checks.push(Check {
        claim: "surviving overlattice candidates (whether P = M is open)".into(),
        status: CheckStatus::Candidates,
        computed: serde_json::json!(survivors),
        expected: serde_json::json!("reported, no uniqueness asserted"),
    });

    let (kept, rejected) = eight_divides_filter();
    checks.push(check_flag(
        "isotropy forces the glue pattern (2,2,2,2) and rejects the six mixed patterns",
        kept == vec![[2, 2, 2, 2]] && rejected.len() == 6,
        serde_json::json!({"kept": kept, "rejected": rejected.len()}),
    ));

    let glue = betas_mod_hl(&model);
    let stab = stabilizer_action(&model.config.singularities, &glue);
    checks.push(Check {
        claim: "stabilizer order of the glue-preserving diagram symmetries".into(),
        status: CheckStatus::Candidates,
        computed: serde_json::json!(stab.group_order),
        expected: serde_json::json!("reported"),
    });
    checks.push(check_flag(
        "the stabilizer acts faithfully on the discriminant group of M",
        stab.disc_action_faithful,
        serde_json::json!(stab.kernel_order),
    ));
    checks.extend(involution_checks(&model, vec![2; 6], vec![2, 2, 4, 4], vec![2, 2, 2]));
    CaseReport { case_id: "quartic-bitangents".into(), checks }
}

pub fn case_zariski_pair() -> CaseReport {
    let mut checks = Vec::new();
    // six-cuspidal sextics: L = A2^6, H^2 = 2
    let types = vec![AdeType::A(2); 6];
    let parts: Vec<Lattice> = types.iter().map(|&t| ade(t)).collect();
    let h = rank_one(2);
    let mut all: Vec<&Lattice> = vec![&h];
    all.extend(parts.iter());
    let mut hl = Lattice::direct_sum(&all);
    hl.labels[0] = "H".to_string();
    let n = hl.rank();

    // first type: the Picard lattice is ⟨H⟩ ⊕ L itself
    let p1 = hl.clone();

    // second type: the six cusps lie on a conic; its class
    // H - (1/3) Σ (2 E_i + F_i) joins the Picard lattice
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let mut d1 = vec![BigRational::zero(); n];
    d1[0] = BigRational::one();
    for c in 0..6 {
        d1[1 + 2 * c] = -BigRational::from_integer(BigInt::from(2)) * &third;
        d1[1 + 2 * c + 1] = -third.clone();
    }
    let mut gens: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    gens.push(d1.clone());
    let (p2, _basis2) = crate::ambient::span_lattice(&hl, &gens);
    checks.push(check_eq(
        "the conic class extends ⟨H⟩⊕L by index 3",
        (hl.det().abs() / p2.det().abs()).to_string(),
        "9".to_string(),
    ));
    checks.push(check_flag(
        "the extended lattice is even",
        (0..n).all(|i| (&p2.gram[(i, i)] % BigInt::from(2)).is_zero()),
        serde_json::json!(true),
    ));

    let a2 = ade(AdeType::A(2));
    let u3 = hyperbolic_u().rescale(3);
    let q1_expected =
        Lattice::direct_sum(&[&rank_one(-2), &u3, &u3, &a2, &a2]);
    let q2_expected =
        Lattice::direct_sum(&[&rank_one(-2), &hyperbolic_u(), &u3, &a2, &a2]);
    checks.push(genus_check(
        "the complement for the first type has the genus of ⟨-2⟩⊕U(3)⊕U(3)⊕A2⊕A2",
        &p1,
        &q1_expected,
    ));
    checks.push(genus_check(
        "the complement for the second type has the genus of ⟨-2⟩⊕U⊕U(3)⊕A2⊕A2",
        &p2,
        &q2_expected,
    ));
    for (name, q) in [("first", &q1_expected), ("second", &q2_expected)] {
        let (sp, sm) = q.signature();
        checks.push(check_eq(
            &format!("the {} complement has rank 9 and signature (2,7)", name),
            (q.rank(), sp, sm),
            (9, 2, 7),
        ));
    }
    let iso = lattices_isomorphic(&q1_expected, &q2_expected, 20_000);
    checks.push(check_eq(
        "the two complement lattices are not isomorphic",
        format!("{}", iso),
        "no".to_string(),
    ));

    // stabilizers of the two glue choices, reported for reference
    let stab1 = stabilizer_action(&types, &[]);
    let stab2 = stabilizer_action(&types, &[d1]);
    checks.push(check_eq(
        "first type: all diagram symmetries preserve the trivial glue",
        stab1.group_order,
        46080,
    ));
    checks.push(Check {
        claim: "second type: order of the glue-preserving symmetry group".into(),
        status: CheckStatus::Candidates,
        computed: serde_json::json!(stab2.group_order),
        expected: serde_json::json!("reported"),
    });
    CaseReport { case_id: "zariski-pair".into(), checks }
}

pub fn case_nodal_orbifold() -> CaseReport {
    let mut checks = Vec::new();
    let mut orders_ok = true;
    let mut faithful_ok = true;
    let mut computed = Vec::new();
    for m in 1..=10usize {
        let types = vec![AdeType::A(1); m];
        let stab = stabilizer_action(&types, &[]);
        let fact: u64 = (1..=m as u64).product();
        if stab.group_order != fact {
            orders_ok = false;
        }
        if !stab.disc_action_faithful {
            faithful_ok = false;
        }
        computed.push((m, stab.group_order, stab.disc_action_faithful));
    }
    checks.push(check_flag(
        "irreducible nodal types: the full node symmetry group survives (order m!)",
        orders_ok,
        serde_json::json!(computed),
    ));
    checks.push(check_flag(
        "irreducible nodal types: the action on the discriminant group is faithful for m ≤ 10",
        faithful_ok,
        serde_json::json!(faithful_ok),
    ));

    // the reducible five-node case is faithful as well
    let model = build_m(&config_quintic_5nodes()).expect("stored configuration builds");
    let glue = betas_mod_hl(&model);
    let stab = stabilizer_action(&model.config.singularities, &glue);
    checks.push(check_flag(
        "quintic plus line with five nodes: faithful discriminant action",
        stab.disc_action_faithful && stab.group_order == 120,
        serde_json::json!(stab.group_order),
    ));

    // coset-coefficient pattern checks
    checks.push(check_flag(
        "irreducible nodal: trivial glue passes the 0-or-5 coefficient test",
        zero_or_five_check(8, &[]),
        serde_json::json!(true),
    ));
    checks.push(check_flag(
        "five-node glue passes the 0-or-5 coefficient test",
        zero_or_five_check(5, &glue),
        serde_json::json!(true),
    ));
    // a synthetic coset pattern with three half-integral coefficients fails
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut bad = vec![half.clone(); 4];
    bad.extend(vec![BigRational::zero(); 2]);
    checks.push(check_flag(
        "a synthetic glue with three half-integral node coefficients is rejected",
        !zero_or_five_check(5, &[bad]),
        serde_json::json!(false),
    ));
    CaseReport { case_id: "nodal-orbifold".into(), checks }
}

// ---------------------------------------------------------------------------
// dispatch

pub const ALL_CASE_IDS: [&str; 10] = [
    "table1",
    "table2",
    "table3",
    "lemma55",
    "quintic-5nodes",
    "quintic-tacnode",
    "quintic-2tacnodes",
    "quartic-bitangents",
    "zariski-pair",
    "nodal-orbifold",
];

pub fn run_case(case_id: &str) -> Option<CaseReport> {
    match case_id {
        "table1" => Some(case_table1()),
        "table2" => Some(case_table2()),
        "table3" => Some(case_table3()),
        "lemma55" => Some(case_lemma55()),
        "quintic-5nodes" => Some(case_quintic_5nodes()),
        "quintic-tacnode" => Some(case_quintic_tacnode()),
        "quintic-2tacnodes" => Some(case_quintic_2tacnodes()),
        "quartic-bitangents" => Some(case_quartic_bitangents()),
        "zariski-pair" => Some(case_zariski_pair()),
        "nodal-orbifold" => Some(case_nodal_orbifold()),
        _ => None,
    }
}

/// The three tables and the index lemma in one combined report.
pub fn verify_tables() -> CaseReport {
    let mut checks = Vec::new();
    for id in ["table1", "table2", "table3", "lemma55"] {
        checks.extend(run_case(id).unwrap().checks);
    }
    CaseReport { case_id: "tables".into(), checks }
}

/// Run every case, optionally in parallel (bounded by K3LAT_THREADS),
/// merging the reports in the fixed case order.
pub fn run_all() -> Vec<CaseReport> {
    let threads: usize = std::env::var("K3LAT_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4)
        });
    let ids: Vec<&str> = ALL_CASE_IDS.to_vec();
    let mut reports: Vec<Option<CaseReport>> = vec![None; ids.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<Vec<usize>> = (0..threads)
            .map(|t| (0..ids.len()).filter(|i| i % threads == t).collect())
            .collect();
        let mut handles = Vec::new();
        for chunk in chunks {
            let ids = ids.clone();
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|i| (i, run_case(ids[i]).unwrap()))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            for (i, r) in h.join().expect("worker") {
                reports[i] = Some(r);
            }
        }
    });
    reports.into_iter().map(|r| r.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_pass() {
        assert!(case_table2().ok(), "{}", case_table2().to_text());
        assert!(case_table3().ok(), "{}", case_table3().to_text());
        assert!(case_lemma55().ok(), "{}", case_lemma55().to_text());
    }

    #[test]
    fn table1_passes() {
        let r = case_table1();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn quintic_5nodes_passes() {
        let r = case_quintic_5nodes();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn quintic_tacnode_passes() {
        let r = case_quintic_tacnode();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn quintic_2tacnodes_passes() {
        let r = case_quintic_2tacnodes();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn quartic_bitangents_passes() {
        let r = case_quartic_bitangents();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn zariski_pair_passes() {
        let r = case_zariski_pair();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn nodal_orbifold_passes() {
        let r = case_nodal_orbifold();
        assert!(r.ok(), "{}", r.to_text());
    }

    #[test]
    fn stabilizer_small() {
        // one A2: the diagram flip survives, acting as -1 on Z/3
        let d = stabilizer_action(&[AdeType::A(2)], &[]);
        assert_eq!(d.group_order, 2);
        assert!(d.disc_action_faithful);
        assert_eq!(d.generators.len(), 1);
        assert_eq!(d.generators[0], vec![1, 0]);
    }

    #[test]
    fn zero_or_five_examples() {
        use num_traits::One;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // all five node coefficients half-integral: fine
        let mut g = vec![half.clone()];
        g.extend(vec![half.clone(); 5]);
        assert!(zero_or_five_check(5, &[g]));
        // three half-integral node coefficients: rejected
        let mut g = vec![half.clone()];
        g.extend(vec![half.clone(); 3]);
        g.extend(vec![BigRational::zero(); 2]);
        assert!(!zero_or_five_check(5, &[g]));
    }
}

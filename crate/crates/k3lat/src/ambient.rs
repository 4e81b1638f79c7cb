//! Lattice calculus around a polarized configuration: orthogonal
//! complements, saturations, even overlattices by glue subgroups, and the
//! admissibility filters for candidate Picard lattices.

use crate::disc::discriminant_group;
use crate::lattice::{ade, rank_one, AdeType, Lattice};
use crate::mat::{IMat, QMat};
use crate::roots::{enumerate_roots, qf_short_vectors};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum AmbientError {
    #[error("orthogonal complement is degenerate")]
    Degenerate,
    #[error("saturation input is dependent")]
    Dependent,
    #[error("discriminant group too large (cap {0})")]
    CapExceeded(usize),
    #[error("malformed configuration: {0}")]
    BadConfig(String),
}

/// The primitive sublattice {v : v ⊥ s for all s in S}, with its basis as
/// columns in ambient coordinates.
pub fn orthogonal_complement(
    ambient: &Lattice,
    s: &[Vec<BigInt>],
    permit_degenerate: bool,
) -> Result<(Lattice, IMat), AmbientError> {
    let n = ambient.rank();
    let mut rows = Vec::new();
    for v in s {
        rows.push(ambient.gram.mul_vec(v));
    }
    let a = IMat::from_big_rows(rows);
    let basis = if s.is_empty() { IMat::identity(n) } else { a.kernel() };
    let gram = ambient.sublattice_gram(&basis);
    let labels = (0..basis.ncols()).map(|i| format!("c{}", i + 1)).collect();
    let l = Lattice::new_with_flags(gram, labels, false, permit_degenerate)
        .map_err(|_| AmbientError::Degenerate)?;
    Ok((l, basis))
}

/// The primitive hull span_Q(S) ∩ ambient, with basis columns.
pub fn saturation(ambient: &Lattice, s: &[Vec<BigInt>]) -> Result<(Lattice, IMat), AmbientError> {
    let n = ambient.rank();
    let a = IMat::from_columns(n, s);
    if a.rank() != s.len() {
        return Err(AmbientError::Dependent);
    }
    let snf = a.snf();
    let mut cols = Vec::new();
    for j in 0..s.len() {
        assert!(!snf.d[(j, j)].is_zero());
        cols.push(snf.uinv.column(j));
    }
    let basis = IMat::from_columns(n, &cols);
    let gram = ambient.sublattice_gram(&basis);
    let labels = (0..s.len()).map(|i| format!("t{}", i + 1)).collect();
    let l = Lattice::new_with_flags(gram, labels, true, true).expect("shape");
    Ok((l, basis))
}

/// Lattice generated by rational vectors (which must contain the standard
/// lattice's worth of integrality only after closure); returns the basis as
/// rational columns over the ambient coordinates.
pub fn span_lattice(ambient: &Lattice, gens: &[Vec<BigRational>]) -> (Lattice, QMat) {
    let n = ambient.rank();
    let mut denom = BigInt::one();
    for g in gens {
        for x in g {
            denom = num_integer::lcm(denom, x.denom().clone());
        }
    }
    let mut cols = Vec::new();
    for g in gens {
        cols.push(
            g.iter()
                .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
                .collect::<Vec<BigInt>>(),
        );
    }
    let scaled = IMat::from_columns(n, &cols);
    let ibasis = scaled.column_lattice_basis();
    let r = ibasis.ncols();
    let mut basis = QMat::zero(n, r);
    for i in 0..n {
        for j in 0..r {
            basis[(i, j)] = BigRational::new(ibasis[(i, j)].clone(), denom.clone());
        }
    }
    // induced gram
    let mut gram = IMat::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            let v = basis.column(i);
            let w = basis.column(j);
            let p = ambient.qpair(&v, &w);
            assert!(p.is_integer(), "span is not an integral lattice");
            gram[(i, j)] = p.to_integer();
        }
    }
    let labels = (0..r).map(|i| format!("n{}", i + 1)).collect();
    let l = Lattice::new_with_flags(gram, labels, true, true).expect("shape");
    (l, basis)
}

/// An even overlattice M ⊆ N ⊆ M∨ presented by its glue subgroup of A_M.
#[derive(Clone, Debug)]
pub struct OverlatticeCandidate {
    /// generators of the glue subgroup, in A_M generator coordinates
    pub glue_gens: Vec<Vec<BigInt>>,
    /// all elements of the glue subgroup
    pub glue_elements: Vec<Vec<BigInt>>,
    /// index |N/M|
    pub index: BigInt,
    pub lattice: Lattice,
    /// basis of N as rational columns over M coordinates
    pub basis_in_m: QMat,
}

/// All even overlattices of M, one per isotropic subgroup of A_M.
pub fn even_overlattices(
    m: &Lattice,
    cap: usize,
) -> Result<Vec<OverlatticeCandidate>, AmbientError> {
    let d = discriminant_group(m);
    let elements = d.form.elements(cap).ok_or(AmbientError::CapExceeded(cap))?;
    let isotropic: Vec<&Vec<BigInt>> = elements
        .iter()
        .filter(|el| !d.form.is_zero_el(el) && d.form.q_of(el).is_zero())
        .collect();
    // BFS over isotropic subgroups, deduplicated by their element sets
    use std::collections::{BTreeSet, HashMap};
    type Key = BTreeSet<Vec<BigInt>>;
    let zero = vec![BigInt::zero(); d.form.ngens()];
    let trivial: Key = [zero.clone()].into_iter().collect();
    let mut seen: HashMap<Key, Vec<Vec<BigInt>>> = HashMap::new();
    seen.insert(trivial.clone(), vec![]);
    let mut frontier = vec![(trivial, Vec::<Vec<BigInt>>::new())];
    while let Some((set, gens)) = frontier.pop() {
        for g in &isotropic {
            if set.contains(*g) {
                continue;
            }
            // closure requires b(g, s) ≡ 0 for all s in the subgroup
            if !set.iter().all(|s| d.form.b_of(g, s).is_zero()) {
                continue;
            }
            let mut newset = set.clone();
            let mut add = vec![(*g).clone()];
            while let Some(x) = add.pop() {
                if newset.insert(x.clone()) {
                    let mut next = Vec::new();
                    for s in &newset {
                        next.push(d.form.add(&x, s));
                    }
                    add.extend(next);
                }
            }
            let mut newgens = gens.clone();
            newgens.push((*g).clone());
            if !seen.contains_key(&newset) {
                seen.insert(newset.clone(), newgens.clone());
                frontier.push((newset, newgens));
            }
        }
    }
    let mut out = Vec::new();
    let n = m.rank();
    let mut keys: Vec<(Key, Vec<Vec<BigInt>>)> = seen.into_iter().collect();
    keys.sort();
    for (set, gens) in keys {
        let mut span_gens: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for g in &gens {
            span_gens.push(d.lift_of(g));
        }
        let (lat, basis) = span_lattice(m, &span_gens);
        assert_eq!(lat.rank(), n);
        // evenness is guaranteed by isotropy; double-check
        for i in 0..n {
            assert!((&lat.gram[(i, i)] % BigInt::from(2)).is_zero());
        }
        let index = BigInt::from(set.len());
        out.push(OverlatticeCandidate {
            glue_gens: gens,
            glue_elements: set.into_iter().collect(),
            index,
            lattice: lat,
            basis_in_m: basis,
        });
    }
    out.sort_by_key(|c| (c.index.clone(), format!("{:?}", c.glue_gens)));
    Ok(out)
}

/// Incidence of a curve component with one fundamental weight of one
/// singularity. `node` is a 1-based Bourbaki index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub sing: usize,
    pub node: usize,
}

#[derive(Clone, Debug)]
pub struct ComponentSpec {
    pub degree: u32,
    pub incidences: Vec<Incidence>,
}

/// A curve configuration: component degrees with their incidences to the
/// ADE singularities, plus optional extra rational classes over ⟨H⟩⊕L.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub degree: u32,
    pub components: Vec<ComponentSpec>,
    pub singularities: Vec<AdeType>,
    pub extra_classes: Vec<Vec<BigRational>>,
}

impl Configuration {
    pub fn l_prime(&self) -> usize {
        self.components.len()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Configuration, String> {
        let degree =
            v.get("degree").and_then(|x| x.as_u64()).ok_or("missing degree")? as u32;
        let sing_arr = v.get("singularities").and_then(|x| x.as_array()).ok_or("missing singularities")?;
        let mut singularities = Vec::new();
        for s in sing_arr {
            let t = s.get("type").and_then(|x| x.as_str()).ok_or("singularity type")?;
            singularities.push(AdeType::parse(t).ok_or_else(|| format!("bad ADE type {}", t))?);
        }
        let comp_arr = v.get("components").and_then(|x| x.as_array()).ok_or("missing components")?;
        let mut components = Vec::new();
        for c in comp_arr {
            let d = c.get("degree").and_then(|x| x.as_u64()).ok_or("component degree")? as u32;
            let mut incidences = Vec::new();
            if let Some(incs) = c.get("incidences").and_then(|x| x.as_array()) {
                for inc in incs {
                    let sing =
                        inc.get("sing").and_then(|x| x.as_u64()).ok_or("incidence sing")? as usize;
                    if sing >= singularities.len() {
                        return Err("incidence sing out of range".into());
                    }
                    let rank = singularities[sing].rank();
                    let node = match inc.get("node") {
                        Some(serde_json::Value::String(s)) if s == "middle" => {
                            if rank % 2 == 0 {
                                return Err("middle node needs odd rank".into());
                            }
                            rank / 2 + 1
                        }
                        Some(serde_json::Value::Number(n)) => {
                            n.as_u64().ok_or("incidence node")? as usize
                        }
                        Some(serde_json::Value::String(s)) => {
                            s.parse::<usize>().map_err(|_| "incidence node")?
                        }
                        _ => return Err("incidence node missing".into()),
                    };
                    if node == 0 || node > rank {
                        return Err("incidence node out of range".into());
                    }
                    incidences.push(Incidence { sing, node });
                }
            }
            components.push(ComponentSpec { degree: d, incidences });
        }
        Ok(Configuration { degree, components, singularities, extra_classes: vec![] })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "components": self.components.iter().map(|c| serde_json::json!({
                "degree": c.degree,
                "incidences": c.incidences.iter().map(|i| serde_json::json!({
                    "sing": i.sing, "node": i.node
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "singularities": self.singularities.iter()
                .map(|t| serde_json::json!({"type": t.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// The configuration lattice M = ⟨H⟩⊕L extended by the component classes,
/// with all the bookkeeping needed to move between bases.
pub struct AmbientModel {
    pub config: Configuration,
    /// ⟨H⟩ ⊕ L with H first
    pub hl: Lattice,
    /// L alone
    pub l: Lattice,
    pub m: Lattice,
    /// columns: basis of M in (rational) ⟨H⟩⊕L coordinates
    pub basis_in_hl: QMat,
    /// the component classes β_i in ⟨H⟩⊕L coordinates
    pub betas: Vec<Vec<BigRational>>,
}

impl AmbientModel {
    pub fn h_in_hl(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.hl.rank()];
        v[0] = BigRational::one();
        v
    }

    /// Express an ⟨H⟩⊕L rational vector in M coordinates (integral iff the
    /// vector lies in M).
    pub fn hl_to_m(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.basis_in_hl.solve(v).expect("basis spans")
    }

    pub fn h_in_m(&self) -> Vec<BigInt> {
        let x = self.hl_to_m(&self.h_in_hl());
        x.iter()
            .map(|c| {
                assert!(c.is_integer(), "H must lie in M");
                c.to_integer()
            })
            .collect()
    }
}

/// Fundamental weight vectors of each singularity in L coordinates (offset
/// inside the direct sum), indexed [sing][node-1].
pub fn config_weights(config: &Configuration) -> Vec<Vec<Vec<BigRational>>> {
    let total: usize = config.singularities.iter().map(|t| t.rank()).sum();
    let mut out = Vec::new();
    let mut off = 0;
    for t in &config.singularities {
        let k = t.rank();
        let cinv = crate::lattice::cartan_matrix(*t).to_rational().inverse().unwrap();
        let mut per = Vec::new();
        for node in 0..k {
            let mut w = vec![BigRational::zero(); total];
            for row in 0..k {
                w[off + row] = -cinv[(row, node)].clone();
            }
            per.push(w);
        }
        out.push(per);
        off += k;
    }
    out
}

/// Build M from a configuration: ⟨H⟩⊕L extended by the classes
/// β_i = (d_i·H + Σ weight-contributions)/2 and any extra classes.
pub fn build_m(config: &Configuration) -> Result<AmbientModel, AmbientError> {
    let total_deg: u32 = config.components.iter().map(|c| c.degree).sum();
    if total_deg != config.degree {
        return Err(AmbientError::BadConfig(format!(
            "component degrees sum to {}, expected {}",
            total_deg, config.degree
        )));
    }
    let parts: Vec<Lattice> = config.singularities.iter().map(|t| ade(*t)).collect();
    let refs: Vec<&Lattice> = parts.iter().collect();
    let l = if refs.is_empty() {
        Lattice::new_with_flags(IMat::zero(0, 0), vec![], false, true).unwrap()
    } else {
        Lattice::direct_sum(&refs)
    };
    let h = rank_one(2);
    let mut hl = Lattice::direct_sum(&[&h, &l]);
    hl.labels[0] = "H".to_string();
    let n = hl.rank();
    let weights = config_weights(config);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut betas = Vec::new();
    for comp in &config.components {
        let mut b = vec![BigRational::zero(); n];
        b[0] = &half * BigRational::from_integer(BigInt::from(comp.degree));
        for inc in &comp.incidences {
            let w = &weights[inc.sing][inc.node - 1];
            for (j, x) in w.iter().enumerate() {
                b[1 + j] += x;
            }
        }
        // the class must be integral in M: β·β even, β·H = d_i
        let sq = hl.qnorm(&b);
        if !sq.is_integer() || sq.to_integer().is_odd_int() {
            return Err(AmbientError::BadConfig(format!(
                "component class has self-intersection {}",
                sq
            )));
        }
        betas.push(b);
    }
    let mut gens: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    gens.extend(betas.iter().cloned());
    gens.extend(config.extra_classes.iter().cloned());
    let (m, basis) = span_lattice(&hl, &gens);
    if m.rank() != n {
        return Err(AmbientError::BadConfig("degenerate configuration".into()));
    }
    for i in 0..n {
        if (&m.gram[(i, i)] % BigInt::from(2)).is_one() {
            return Err(AmbientError::BadConfig("configuration lattice is odd".into()));
        }
    }
    Ok(AmbientModel { config: config.clone(), hl, l, m, basis_in_hl: basis, betas })
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}
impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        use num_integer::Integer;
        self.is_odd()
    }
}

/// Result of the admissibility filters on one overlattice candidate.
#[derive(Clone, Debug)]
pub struct FilterReport {
    pub candidate: OverlatticeCandidate,
    pub roots_pass: bool,
    pub isotropic_u_pass: bool,
}

impl FilterReport {
    pub fn passes(&self) -> bool {
        self.roots_pass && self.isotropic_u_pass
    }
}

/// Apply the admissibility filters to every even overlattice of M:
/// (a) evenness (built into the enumeration), (b) no roots orthogonal to H
/// beyond L, (c) no integral u with u² = 0 and u·H = 1.
pub fn admissible_picard(
    model: &AmbientModel,
    cap: usize,
) -> Result<Vec<FilterReport>, AmbientError> {
    let candidates = even_overlattices(&model.m, cap)?;
    let l_root_count = enumerate_roots(&model.l).len();
    let mut out = Vec::new();
    for cand in candidates {
        let n = model.m.rank();
        // N basis over ⟨H⟩⊕L coordinates
        let basis_hl = {
            let mut q = QMat::zero(n, n);
            let b = model.basis_in_hl.mul(&cand.basis_in_m);
            for i in 0..n {
                for j in 0..n {
                    q[(i, j)] = b[(i, j)].clone();
                }
            }
            q
        };
        let h_in_n: Vec<BigInt> = basis_hl
            .solve(&model.h_in_hl())
            .expect("spans")
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "H must lie in every overlattice of M");
                c.to_integer()
            })
            .collect();
        let (comp, comp_basis) = orthogonal_complement(&cand.lattice, &[h_in_n.clone()], false)?;
        let roots_pass = enumerate_roots(&comp).len() == l_root_count;
        let isotropic_u_pass = !has_isotropic_u(&cand.lattice, &h_in_n, &comp, &comp_basis);
        out.push(FilterReport { candidate: cand, roots_pass, isotropic_u_pass });
    }
    Ok(out)
}

/// Is there u in N with u·u = 0 and u·H = 1?
pub fn has_isotropic_u(
    n_lat: &Lattice,
    h_in_n: &[BigInt],
    comp: &Lattice,
    comp_basis: &IMat,
) -> bool {
    let n = n_lat.rank();
    // linear condition a·z = 1 with a_j = e_j · H
    let a = n_lat.gram.mul_vec(h_in_n);
    let mut g = BigInt::zero();
    for x in &a {
        g = num_integer::gcd(g, x.clone());
    }
    if g.abs() != BigInt::one() {
        return false;
    }
    // particular solution z0 of a·z = 1 via the SNF of the 1×n matrix [a]
    let arow = IMat::from_big_rows(vec![a.clone()]);
    let snf = arow.snf();
    // U [a] V = [d, 0, ...] with d = ±gcd = the (0,0) entry
    let d = snf.d[(0, 0)].clone();
    assert!(d.abs().is_one());
    // a · (V e_0) = U^{-1}[d,0..] -> a·(V e_0) = d / U[0][0]... use directly:
    // [a] V = U^{-1} D, so a · (V e_0) = (U^{-1})_{00} d
    let v0 = snf.v.column(0);
    let av0: BigInt = a.iter().zip(&v0).map(|(x, y)| x * y).sum();
    assert!(av0.abs().is_one());
    let z0: Vec<BigInt> = v0.iter().map(|x| x * &av0).collect();
    // u0 = z0 decomposes as H/2 + p with p in the rational span of H⊥
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let hq: Vec<BigRational> =
        h_in_n.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let p: Vec<BigRational> = (0..n)
        .map(|i| BigRational::from_integer(z0[i].clone()) - &half * &hq[i])
        .collect();
    // express p in the complement basis
    let cb = comp_basis.to_rational();
    let p_c = cb.solve(&p).expect("p lies in the complement span");
    // need (p + w)² = -1/2 for some integral w in the complement
    let k = comp.rank();
    let mut q = QMat::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            q[(i, j)] = BigRational::from_integer(-comp.gram[(i, j)].clone());
        }
    }
    let bound = half.clone();
    let sols = qf_short_vectors(&q, &p_c, &bound);
    sols.into_iter().any(|z| {
        let mut acc = BigRational::zero();
        for i in 0..k {
            for j in 0..k {
                acc += &z[i] * BigRational::from_integer(-comp.gram[(i, j)].clone()) * &z[j];
            }
        }
        acc == half
    })
}

/// Any l'-1 of the component classes are Z/2-independent over ⟨H⟩⊕L: every
/// nonempty sum of at most l'-1 distinct β_i has a non-integral coefficient.
pub fn z2_independence(model: &AmbientModel) -> bool {
    let lp = model.betas.len();
    assert!(lp <= 20, "too many components");
    if lp <= 1 {
        return true;
    }
    let n = model.hl.rank();
    for mask in 1u32..(1 << lp) {
        let count = mask.count_ones() as usize;
        if count > lp - 1 {
            continue;
        }
        let mut sum = vec![BigRational::zero(); n];
        for (i, b) in model.betas.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for t in 0..n {
                    sum[t] += &b[t];
                }
            }
        }
        if sum.iter().all(|c| c.is_integer()) {
            return false;
        }
    }
    true
}

/// Classify the residues (a,b,c,d) mod 4 with 8 | a²+b²+c²+d².
/// Returns (kept, rejected): the all-twos class survives, the two-twos
/// patterns correspond to roots orthogonal to H, zero is trivial.
pub fn eight_divides_filter() -> (Vec<[u8; 4]>, Vec<[u8; 4]>) {
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for a in 0u8..4 {
        for b in 0u8..4 {
            for c in 0u8..4 {
                for d in 0u8..4 {
                    let s = (a as u32).pow(2) + (b as u32).pow(2) + (c as u32).pow(2) + (d as u32).pow(2);
                    if s % 8 != 0 {
                        continue;
                    }
                    let tup = [a, b, c, d];
                    let twos = tup.iter().filter(|&&x| x == 2).count();
                    let zeros = tup.iter().filter(|&&x| x == 0).count();
                    if zeros == 4 {
                        continue; // trivial class
                    }
                    if twos == 4 {
                        kept.push(tup);
                    } else if twos == 2 && zeros == 2 {
                        rejected.push(tup);
                    } else {
                        unreachable!("unexpected residue pattern {:?}", tup);
                    }
                }
            }
        }
    }
    (kept, rejected)
}

/// Glue identity |N/M|² · |A_N| = |A_M|, checked exactly.
pub fn glue_identity_holds(m: &Lattice, cand: &OverlatticeCandidate) -> bool {
    let am = discriminant_group(m).form.group_order();
    let an = discriminant_group(&cand.lattice).form.group_order();
    &cand.index * &cand.index * an == am
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{compare_discriminant_forms, discriminant_group};
    use crate::lattice::{hyperbolic_u, k3};

    fn e(n: usize, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        v
    }

    #[test]
    fn complement_of_h_in_k3() {
        let lam = k3();
        // H = e1 + f1
        let mut h = vec![BigInt::zero(); 22];
        h[0] = BigInt::one();
        h[1] = BigInt::one();
        let (c, _) = orthogonal_complement(&lam, &[h], false).unwrap();
        assert_eq!(c.rank(), 21);
        assert_eq!(c.signature(), (2, 19));
        assert_eq!(c.det().abs(), BigInt::from(2));
    }

    #[test]
    fn complement_degenerate_rejected() {
        let u = hyperbolic_u();
        let err = orthogonal_complement(&u, &[e(2, 0)], false);
        assert!(err.is_err());
        let ok = orthogonal_complement(&u, &[e(2, 0)], true);
        assert!(ok.is_ok());
    }

    #[test]
    fn complement_in_a1_a1() {
        let l = Lattice::direct_sum(&[&ade(AdeType::A(1)), &ade(AdeType::A(1))]);
        let (c, _) = orthogonal_complement(&l, &[e(2, 0)], false).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.det(), BigInt::from(-2));
    }

    #[test]
    fn saturation_examples() {
        let u = hyperbolic_u();
        // {2e1} saturates to span(e1)
        let two_e1: Vec<BigInt> = vec![BigInt::from(2), BigInt::zero()];
        let (_, basis) = saturation(&u, &[two_e1]).unwrap();
        assert_eq!(basis.column(0).iter().map(|x| x.clone().abs()).collect::<Vec<_>>(),
                   vec![BigInt::one(), BigInt::zero()]);
        // {e1+f1, e1-f1} saturates to all of U
        let s1: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        let s2: Vec<BigInt> = vec![BigInt::one(), BigInt::from(-1)];
        let (sat, basis) = saturation(&u, &[s1, s2]).unwrap();
        assert_eq!(basis.det().abs(), BigInt::one());
        assert_eq!(sat.det(), BigInt::from(-1));
        // dependent input is an error
        let s3: Vec<BigInt> = vec![BigInt::from(2), BigInt::from(2)];
        let s4: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        assert!(saturation(&u, &[s3, s4]).is_err());
    }

    #[test]
    fn saturation_idempotent() {
        let lam = k3();
        let vs: Vec<Vec<BigInt>> = vec![
            {
                let mut v = e(22, 0);
                v[6] = BigInt::from(2);
                v[7] = BigInt::from(2);
                v
            },
            e(22, 3),
        ];
        let (_, b1) = saturation(&lam, &vs).unwrap();
        let cols: Vec<Vec<BigInt>> = (0..b1.ncols()).map(|j| b1.column(j)).collect();
        let (_, b2) = saturation(&lam, &cols).unwrap();
        // same sublattice: each basis expresses integrally in the other
        let q1 = b1.to_rational();
        for j in 0..b2.ncols() {
            let col: Vec<BigRational> =
                b2.column(j).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let sol = q1.solve(&col).unwrap();
            assert!(sol.iter().all(|c| c.is_integer()));
        }
    }

    #[test]
    fn overlattices_of_a1() {
        let a1 = ade(AdeType::A(1));
        let cands = even_overlattices(&a1, 1000).unwrap();
        assert_eq!(cands.len(), 1);
        assert!(cands[0].glue_gens.is_empty());
    }

    #[test]
    fn overlattices_of_h_plus_a1_5() {
        // ⟨H⟩⊕A1⁵ has exactly one proper even overlattice
        let config = Configuration {
            degree: 6,
            components: vec![
                ComponentSpec {
                    degree: 5,
                    incidences: (0..5).map(|i| Incidence { sing: i, node: 1 }).collect(),
                },
                ComponentSpec {
                    degree: 1,
                    incidences: (0..5).map(|i| Incidence { sing: i, node: 1 }).collect(),
                },
            ],
            singularities: vec![AdeType::A(1); 5],
            extra_classes: vec![],
        };
        let model = build_m(&config).unwrap();
        let cands = even_overlattices(&model.hl, 1000).unwrap();
        // isotropic glues: (H-e_i)/2, (H-Σe)/2, four-subset sums, and the
        // order-4 closures; only (H-Σe)/2 survives the admissibility filters
        let proper: Vec<_> = cands.iter().filter(|c| c.index > BigInt::one()).collect();
        assert_eq!(proper.len(), 16);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let d = discriminant_group(&model.hl);
        let all_glue: Vec<BigRational> =
            std::iter::once(half.clone()).chain(std::iter::repeat(-half).take(5)).collect();
        let cls = d.class_of(&all_glue);
        assert!(proper.iter().any(|c| c.index == BigInt::from(2) && c.glue_elements.contains(&cls)));
        for c in &cands {
            assert!(glue_identity_holds(&model.hl, c));
        }
    }

    #[test]
    fn a3_plus_a1_odd_glue_rejected() {
        // (ε1 - ε3)/2 has square -1: not isotropic, so no overlattice uses it
        let m = Lattice::direct_sum(&[&ade(AdeType::A(3)), &ade(AdeType::A(1))]);
        let d = discriminant_group(&m);
        // the class of (ε1 - ε3)/2
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let v = vec![half.clone(), BigRational::zero(), -half.clone(), BigRational::zero()];
        let cls = d.class_of(&v);
        assert_eq!(crate::disc::rat_mod(&m.qnorm(&v), 2), BigRational::from_integer(BigInt::one()));
        let cands = even_overlattices(&m, 1000).unwrap();
        for c in &cands {
            assert!(!c.glue_elements.contains(&cls));
        }
    }

    #[test]
    fn quintic_five_nodes_pipeline() {
        let config = Configuration {
            degree: 6,
            components: vec![
                ComponentSpec {
                    degree: 5,
                    incidences: (0..5).map(|i| Incidence { sing: i, node: 1 }).collect(),
                },
                ComponentSpec {
                    degree: 1,
                    incidences: (0..5).map(|i| Incidence { sing: i, node: 1 }).collect(),
                },
            ],
            singularities: vec![AdeType::A(1); 5],
            extra_classes: vec![],
        };
        let model = build_m(&config).unwrap();
        // M is the index-2 overlattice of ⟨H⟩⊕A1⁵
        assert_eq!(model.m.det().abs(), BigInt::from(16));
        let reports = admissible_picard(&model, 1000).unwrap();
        let survivors: Vec<_> = reports.iter().filter(|r| r.passes()).collect();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].candidate.index, BigInt::one());
        // the survivor is U(2)⊕D4
        let u2d4 = Lattice::direct_sum(&[&hyperbolic_u().rescale(2), &ade(AdeType::D(4))]);
        assert_eq!(
            crate::disc::lattices_isomorphic(&survivors[0].candidate.lattice, &u2d4, 10_000),
            crate::disc::IsoResult::Yes
        );
        assert!(z2_independence(&model));
    }

    #[test]
    fn eight_divides_patterns() {
        let (kept, rejected) = eight_divides_filter();
        assert_eq!(kept, vec![[2, 2, 2, 2]]);
        assert_eq!(rejected.len(), 6);
        assert!(rejected.contains(&[2, 2, 0, 0]));
    }

    #[test]
    fn negated_forms_differ_when_needed() {
        let a1 = discriminant_group(&ade(AdeType::A(1))).form;
        assert_eq!(compare_discriminant_forms(&a1, &a1.negate(), 100), Some(false));
    }
}

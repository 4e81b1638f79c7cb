//! Symbolic canonical resolution of double-cover surface singularities
//! z^2 = f(x, y) with f an ADE plane-curve germ.
//!
//! The embedded resolution of the branch germ is driven site by site: a
//! site is a point of the current surface given by local factor
//! polynomials together with up to two exceptional curves through it
//! (the coordinate axes x = 0 and y = 0). Non-rational centers are
//! handled as conjugate packets through squarefree factorization over Q,
//! so the whole computation stays exact.
//!
//! Each exceptional curve tracks its coefficient in the total transform
//! of the branch divisor; the parity of that coefficient decides whether
//! the curve joins the branch locus of the double cover. The downstairs
//! configuration is then lifted to the cover: flagged curves halve their
//! self-intersection, curves crossing the branch in two points stay
//! irreducible, and curves disjoint from the branch split into two
//! copies swapped by the deck involution.

use crate::lattice::AdeType;
use crate::poly::{Poly1, Poly2};
use crate::roots::classify_graph;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug)]
pub enum ResolutionError {
    /// blowup budget exhausted
    CapExceeded,
    /// input germ outside the supported range
    BadGerm(String),
}

impl fmt::Display for ResolutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionError::CapExceeded => write!(f, "blowup cap exceeded"),
            ResolutionError::BadGerm(s) => write!(f, "bad germ: {}", s),
        }
    }
}

impl std::error::Error for ResolutionError {}

/// An exceptional curve of the embedded resolution downstairs.
#[derive(Clone, Debug)]
pub struct ExcCurve {
    pub self_int: i64,
    /// coefficient in the total transform of the branch divisor
    pub total_mult: u64,
}

impl ExcCurve {
    pub fn flagged(&self) -> bool {
        self.total_mult % 2 == 1
    }
}

/// The exceptional configuration of the embedded resolution of the
/// branch germ, together with the crossing data of the strict branch
/// transform.
#[derive(Clone, Debug)]
pub struct Downstairs {
    pub curves: Vec<ExcCurve>,
    pub edges: Vec<(usize, usize)>,
    /// per curve: local intersection multiplicities with the strict
    /// transform of the branch curve
    pub branch_points: Vec<Vec<u32>>,
    pub blowups: usize,
}

/// How a downstairs curve behaves under the double cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    /// part of the branch divisor: one curve upstairs, self/2
    Flagged,
    /// meets the branch in two points: one curve upstairs, 2*self
    Inert,
    /// even intersection with the branch everywhere: two swapped copies
    Split,
}

/// The exceptional curves on the double cover.
#[derive(Clone, Debug)]
pub struct Upstairs {
    pub labels: Vec<String>,
    pub self_ints: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// deck involution as a permutation of the nodes
    pub iota: Vec<usize>,
    /// ADE components of the dual graph, nodes in Bourbaki order
    pub components: Vec<(AdeType, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub downstairs: Downstairs,
    pub upstairs: Upstairs,
    /// number of exceptional curves joining the branch divisor
    pub m: usize,
}

struct Site {
    factors: Vec<Poly2>,
    axis_x: Option<usize>,
    axis_y: Option<usize>,
}

struct Builder {
    curves: Vec<ExcCurve>,
    edges: BTreeSet<(usize, usize)>,
    branch_points: Vec<Vec<u32>>,
    blowups: usize,
    cap: usize,
}

fn ord0(p: &Poly1) -> u32 {
    assert!(!p.is_zero());
    p.coeffs.iter().position(|c| !c.is_zero()).unwrap() as u32
}

impl Builder {
    fn flag(&self, i: Option<usize>) -> u32 {
        i.map(|i| self.curves[i].flagged() as u32).unwrap_or(0)
    }

    fn a(&self, i: Option<usize>) -> u64 {
        i.map(|i| self.curves[i].total_mult).unwrap_or(0)
    }

    fn new_curve(&mut self, total_mult: u64) -> Result<usize, ResolutionError> {
        if self.blowups >= self.cap {
            return Err(ResolutionError::CapExceeded);
        }
        self.blowups += 1;
        self.curves.push(ExcCurve { self_int: -1, total_mult });
        self.branch_points.push(Vec::new());
        Ok(self.curves.len() - 1)
    }

    fn edge(&mut self, i: usize, j: usize) {
        assert_ne!(i, j);
        self.edges.insert((i.min(j), i.max(j)));
    }

    fn process(&mut self, site: Site, queue: &mut Vec<Site>) -> Result<(), ResolutionError> {
        let m_f: u32 = site.factors.iter().map(|g| g.mult_at_origin()).sum();
        for g in &site.factors {
            assert!(g.vanishes_at_origin(), "site factor must pass through the center");
        }
        let mu = m_f + self.flag(site.axis_x) + self.flag(site.axis_y);
        if mu <= 1 {
            // stable point: record crossings
            if let (Some(ax), Some(ay)) = (site.axis_x, site.axis_y) {
                assert!(site.factors.is_empty(), "branch through a stable corner");
                self.edge(ax, ay);
                return Ok(());
            }
            for g in &site.factors {
                if let Some(ax) = site.axis_x {
                    self.branch_points[ax].push(ord0(&g.restrict_x0()));
                }
                if let Some(ay) = site.axis_y {
                    self.branch_points[ay].push(ord0(&g.restrict_y0()));
                }
            }
            return Ok(());
        }
        assert!(mu <= 3, "branch multiplicity beyond a triple point");
        // blow up the center
        let a_new = m_f as u64 + self.a(site.axis_x) + self.a(site.axis_y);
        let new = self.new_curve(a_new)?;
        if let Some(ax) = site.axis_x {
            self.curves[ax].self_int -= 1;
        }
        if let Some(ay) = site.axis_y {
            self.curves[ay].self_int -= 1;
        }

        // chart (x, xy): the new curve is x = 0; the strict transform of
        // the old y-axis is y = 0; the old x-axis is invisible here
        let stricts: Vec<(Poly2, Poly1)> = site
            .factors
            .iter()
            .map(|g| {
                let (_, s) = g.blowup_chart1();
                let r = s.restrict_x0();
                assert!(!r.is_zero(), "strict transform contains the exceptional curve");
                (s, r)
            })
            .collect();
        if site.axis_y.is_some() {
            queue.push(Site {
                factors: stricts
                    .iter()
                    .filter(|(s, _)| s.vanishes_at_origin())
                    .map(|(s, _)| s.clone())
                    .collect(),
                axis_x: Some(new),
                axis_y: site.axis_y,
            });
        }
        let mut prod = Poly1::one();
        for (_, r) in &stricts {
            prod = prod.mul(r);
        }
        let (roots, rest) = prod.rational_roots();
        for (r, _) in &roots {
            if r.is_zero() && site.axis_y.is_some() {
                continue; // that point is the corner queued above
            }
            queue.push(Site {
                factors: stricts
                    .iter()
                    .map(|(s, _)| s.translate_y(r))
                    .filter(|s| s.vanishes_at_origin())
                    .collect(),
                axis_x: Some(new),
                axis_y: None,
            });
        }
        if !rest.is_constant() {
            self.packets(new, a_new, &stricts, &rest)?;
        }

        // chart (xy, y): the new curve is y = 0; the strict transform of
        // the old x-axis is x = 0
        let s2: Vec<Poly2> = site
            .factors
            .iter()
            .map(|g| g.blowup_chart2().1)
            .filter(|s| s.vanishes_at_origin())
            .collect();
        if site.axis_x.is_some() || !s2.is_empty() {
            queue.push(Site { factors: s2, axis_x: site.axis_x, axis_y: Some(new) });
        }
        Ok(())
    }

    /// Handle the Galois orbits of non-rational points of the strict
    /// branch on the freshly created exceptional curve.
    fn packets(
        &mut self,
        new: usize,
        a_new: u64,
        stricts: &[(Poly2, Poly1)],
        rest: &Poly1,
    ) -> Result<(), ResolutionError> {
        let flagged = self.curves[new].flagged();
        for (h, k) in rest.squarefree_decomposition() {
            let d = h.degree();
            // how many times h divides each factor's trace on the curve
            let mut owners: Vec<usize> = Vec::new();
            for (i, (_, r)) in stricts.iter().enumerate() {
                let mut r = r.clone();
                loop {
                    let (q, rem) = r.divrem(&h);
                    if !rem.is_zero() {
                        break;
                    }
                    owners.push(i);
                    r = q;
                }
            }
            assert_eq!(owners.len(), k, "trace multiplicity mismatch");
            match k {
                1 => {
                    // a smooth branch piece crossing the curve transversally
                    // in d conjugate points
                    if flagged {
                        for _ in 0..d {
                            let p = self.new_curve(a_new + 1)?;
                            self.edge(new, p);
                            self.branch_points[p].push(1);
                        }
                        self.curves[new].self_int -= d as i64;
                    } else {
                        for _ in 0..d {
                            self.branch_points[new].push(1);
                        }
                    }
                }
                2 => {
                    if owners[0] != owners[1] {
                        // two branch pieces crossing each other on the curve
                        assert!(!flagged, "non-rational triple point of the branch");
                        for _ in 0..d {
                            let p = self.new_curve(a_new + 2)?;
                            self.edge(new, p);
                            self.branch_points[p].push(1);
                            self.branch_points[p].push(1);
                        }
                        self.curves[new].self_int -= d as i64;
                    } else {
                        // one branch piece tangent to the curve; it must be
                        // smooth there
                        let dx = stricts[owners[0]].0.dx_at_x0();
                        assert!(
                            !dx.is_zero() && !h.divides(&dx),
                            "singular branch at a non-rational point"
                        );
                        assert!(!flagged, "non-rational tangency on a branch curve");
                        for _ in 0..d {
                            self.branch_points[new].push(2);
                        }
                    }
                }
                _ => panic!("branch multiplicity beyond a triple point (packet)"),
            }
        }
        Ok(())
    }
}

/// Embedded resolution of the branch germ given by the product of the
/// factor polynomials. `cap` bounds the number of blowups.
pub fn embedded_resolution(
    factors: Vec<Poly2>,
    cap: usize,
) -> Result<Downstairs, ResolutionError> {
    for g in &factors {
        if g.is_zero() {
            return Err(ResolutionError::BadGerm("zero factor".into()));
        }
        if !g.vanishes_at_origin() {
            return Err(ResolutionError::BadGerm("factor misses the origin".into()));
        }
    }
    let mut b = Builder {
        curves: Vec::new(),
        edges: BTreeSet::new(),
        branch_points: Vec::new(),
        blowups: 0,
        cap,
    };
    let mut queue = vec![Site { factors, axis_x: None, axis_y: None }];
    while let Some(site) = queue.pop() {
        b.process(site, &mut queue)?;
    }
    Ok(Downstairs {
        curves: b.curves,
        edges: b.edges.into_iter().collect(),
        branch_points: b.branch_points,
        blowups: b.blowups,
    })
}

/// Lift the exceptional configuration to the double cover and classify
/// the resulting dual graph.
pub fn lift_to_cover(down: &Downstairs) -> Upstairs {
    let n = down.curves.len();
    let mut neighbors = vec![Vec::new(); n];
    for &(i, j) in &down.edges {
        neighbors[i].push(j);
        neighbors[j].push(i);
    }
    let mut kinds = Vec::with_capacity(n);
    for i in 0..n {
        let c = &down.curves[i];
        if c.flagged() {
            assert!(
                down.branch_points[i].is_empty(),
                "strict branch crossing a flagged curve must be resolved"
            );
            kinds.push(LiftKind::Flagged);
        } else {
            let odd = down.branch_points[i].iter().filter(|&&m| m % 2 == 1).count()
                + neighbors[i].iter().filter(|&&j| down.curves[j].flagged()).count();
            match odd {
                0 => kinds.push(LiftKind::Split),
                2 => kinds.push(LiftKind::Inert),
                _ => panic!("curve meets the branch divisor an odd number of times"),
            }
        }
    }

    // nodes upstairs: one per flagged/inert curve, two per split curve
    let mut labels = Vec::new();
    let mut self_ints = Vec::new();
    let mut node_of = vec![(usize::MAX, usize::MAX); n]; // (copy a, copy b)
    for i in 0..n {
        let c = &down.curves[i];
        match kinds[i] {
            LiftKind::Flagged => {
                assert!(c.self_int % 2 == 0, "flagged curve with odd self-intersection");
                node_of[i] = (labels.len(), labels.len());
                labels.push(format!("E{}", i + 1));
                self_ints.push(c.self_int / 2);
            }
            LiftKind::Inert => {
                node_of[i] = (labels.len(), labels.len());
                labels.push(format!("E{}", i + 1));
                self_ints.push(2 * c.self_int);
            }
            LiftKind::Split => {
                let tang: u32 =
                    down.branch_points[i].iter().filter(|&&m| m % 2 == 0).map(|&m| m / 2).sum();
                assert!(tang <= 1, "split copies meeting more than once");
                node_of[i] = (labels.len(), labels.len() + 1);
                labels.push(format!("E{}a", i + 1));
                labels.push(format!("E{}b", i + 1));
                self_ints.push(c.self_int - tang as i64);
                self_ints.push(c.self_int - tang as i64);
            }
        }
    }

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add = |edges: &mut BTreeSet<(usize, usize)>, a: usize, b: usize| {
        assert_ne!(a, b);
        assert!(edges.insert((a.min(b), a.max(b))), "double edge in the dual graph");
    };
    for &(i, j) in &down.edges {
        match (kinds[i], kinds[j]) {
            (LiftKind::Flagged, LiftKind::Flagged) => {
                panic!("two branch curves crossing survived the resolution")
            }
            (LiftKind::Flagged, LiftKind::Inert)
            | (LiftKind::Inert, LiftKind::Flagged)
            | (LiftKind::Inert, LiftKind::Inert) => {
                if kinds[i] == LiftKind::Inert && kinds[j] == LiftKind::Inert {
                    panic!("two inert curves crossing off the branch divisor");
                }
                add(&mut edges, node_of[i].0, node_of[j].0);
            }
            (LiftKind::Flagged, LiftKind::Split) | (LiftKind::Split, LiftKind::Flagged) => {
                panic!("split curve adjacent to a branch curve")
            }
            (LiftKind::Inert, LiftKind::Split) => {
                add(&mut edges, node_of[i].0, node_of[j].0);
                add(&mut edges, node_of[i].0, node_of[j].1);
            }
            (LiftKind::Split, LiftKind::Inert) => {
                add(&mut edges, node_of[j].0, node_of[i].0);
                add(&mut edges, node_of[j].0, node_of[i].1);
            }
            (LiftKind::Split, LiftKind::Split) => {
                add(&mut edges, node_of[i].0, node_of[j].0);
                add(&mut edges, node_of[i].1, node_of[j].1);
            }
        }
    }
    for i in 0..n {
        if kinds[i] == LiftKind::Split {
            let tang: u32 =
                down.branch_points[i].iter().filter(|&&m| m % 2 == 0).map(|&m| m / 2).sum();
            if tang == 1 {
                add(&mut edges, node_of[i].0, node_of[i].1);
            }
        }
    }

    let mut iota: Vec<usize> = (0..labels.len()).collect();
    for i in 0..n {
        if kinds[i] == LiftKind::Split {
            iota[node_of[i].0] = node_of[i].1;
            iota[node_of[i].1] = node_of[i].0;
        }
    }

    for &s in &self_ints {
        assert_eq!(s, -2, "upstairs exceptional curve is not a -2 curve");
    }
    let mut adj = vec![Vec::new(); labels.len()];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let components = classify_graph(&adj);
    Upstairs { labels, self_ints, edges: edges.into_iter().collect(), iota, components }
}

/// Normal-form branch germ for each ADE type.
pub fn ade_germ(t: AdeType) -> Vec<Poly2> {
    match t {
        AdeType::A(n) => vec![Poly2::from_terms(&[(2, 0, 1), (0, n as u32 + 1, 1)])],
        AdeType::D(n) => vec![
            Poly2::from_terms(&[(0, 1, 1)]),
            Poly2::from_terms(&[(2, 0, 1), (0, n as u32 - 2, 1)]),
        ],
        AdeType::E6 => vec![Poly2::from_terms(&[(3, 0, 1), (0, 4, 1)])],
        AdeType::E7 => vec![
            Poly2::from_terms(&[(1, 0, 1)]),
            Poly2::from_terms(&[(2, 0, 1), (0, 3, 1)]),
        ],
        AdeType::E8 => vec![Poly2::from_terms(&[(3, 0, 1), (0, 5, 1)])],
    }
}

/// Resolve the double cover z^2 = f for the ADE normal form of the given
/// type and classify the exceptional configuration on the cover.
pub fn resolve_ade(t: AdeType) -> Result<Resolution, ResolutionError> {
    let cap = 4 * t.rank() + 4;
    let downstairs = embedded_resolution(ade_germ(t), cap)?;
    let upstairs = lift_to_cover(&downstairs);
    let m = downstairs.curves.iter().filter(|c| c.flagged()).count();
    Ok(Resolution { downstairs, upstairs, m })
}

/// Resolve an arbitrary germ given as a list of factor polynomials.
pub fn resolve_germ(factors: Vec<Poly2>, cap: usize) -> Result<Resolution, ResolutionError> {
    let downstairs = embedded_resolution(factors, cap)?;
    let upstairs = lift_to_cover(&downstairs);
    let m = downstairs.curves.iter().filter(|c| c.flagged()).count();
    Ok(Resolution { downstairs, upstairs, m })
}

/// Parse a germ polynomial from a sparse term list "c,i,j;c,i,j;...".
pub fn parse_terms(s: &str) -> Result<Poly2, ResolutionError> {
    let mut p = Poly2::zero();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let nums: Vec<&str> = part.split(',').map(|x| x.trim()).collect();
        if nums.len() != 3 {
            return Err(ResolutionError::BadGerm(format!("bad term '{}'", part)));
        }
        let c: i64 = nums[0]
            .parse()
            .map_err(|_| ResolutionError::BadGerm(format!("bad coefficient '{}'", nums[0])))?;
        let i: u32 = nums[1]
            .parse()
            .map_err(|_| ResolutionError::BadGerm(format!("bad exponent '{}'", nums[1])))?;
        let j: u32 = nums[2]
            .parse()
            .map_err(|_| ResolutionError::BadGerm(format!("bad exponent '{}'", nums[2])))?;
        p.insert((i, j), BigRational::from_integer(c.into()));
    }
    Ok(p)
}

impl Resolution {
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .upstairs
            .labels
            .iter()
            .zip(self.upstairs.self_ints.iter())
            .map(|(l, s)| serde_json::json!({ "label": l, "self": s }))
            .collect();
        let edges: Vec<serde_json::Value> = self
            .upstairs
            .edges
            .iter()
            .map(|&(a, b)| serde_json::json!([a, b]))
            .collect();
        let types: Vec<String> =
            self.upstairs.components.iter().map(|(t, _)| t.to_string()).collect();
        let trivial = self.upstairs.iota.iter().enumerate().all(|(i, &j)| i == j);
        serde_json::json!({
            "dual_graph": { "nodes": nodes, "edges": edges },
            "m": self.m,
            "iota": if trivial { "trivial" } else { "flip" },
            "iota_permutation": self.upstairs.iota,
            "types": types,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph resolution {\n");
        for (i, l) in self.upstairs.labels.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, l));
        }
        for &(a, b) in &self.upstairs.edges {
            out.push_str(&format!("  n{} -- n{};\n", a, b));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ade;
    use crate::roots::simple_roots;
    use crate::weyl::longest_element;

    fn expected_m(t: AdeType) -> usize {
        match t {
            AdeType::A(_) => 0,
            AdeType::D(n) => (n - 2) / 2,
            AdeType::E6 => 1,
            AdeType::E7 => 3,
            AdeType::E8 => 4,
        }
    }

    fn check_type(t: AdeType) {
        let res = resolve_ade(t).expect("resolution in budget");
        assert_eq!(res.upstairs.labels.len(), t.rank(), "node count for {}", t);
        assert_eq!(res.upstairs.components.len(), 1, "connected for {}", t);
        assert_eq!(res.upstairs.components[0].0, t, "dual graph type for {}", t);
        assert_eq!(res.m, expected_m(t), "branch count for {}", t);
        // deck involution acts on the diagram like the Weyl flip
        let order = &res.upstairs.components[0].1;
        let perm: Vec<usize> = order
            .iter()
            .map(|&v| order.iter().position(|&w| w == res.upstairs.iota[v]).unwrap())
            .collect();
        let l = ade(t);
        let base = simple_roots(&l);
        let inv = longest_element(&l, &base);
        assert_eq!(perm, inv.permutation, "deck action vs Weyl flip for {}", t);
    }

    #[test]
    fn small_types() {
        for t in [
            AdeType::A(1),
            AdeType::A(2),
            AdeType::A(3),
            AdeType::A(4),
            AdeType::D(4),
            AdeType::D(5),
            AdeType::D(6),
            AdeType::D(7),
        ] {
            check_type(t);
        }
    }

    #[test]
    fn full_catalog_range() {
        for n in 1..=19 {
            check_type(AdeType::A(n));
        }
        for n in 4..=19 {
            check_type(AdeType::D(n));
        }
    }

    #[test]
    fn exceptional_types() {
        check_type(AdeType::E6);
        check_type(AdeType::E7);
        check_type(AdeType::E8);
    }

    #[test]
    fn a1_details() {
        let res = resolve_ade(AdeType::A(1)).unwrap();
        assert_eq!(res.downstairs.curves.len(), 1);
        assert_eq!(res.downstairs.curves[0].self_int, -1);
        assert_eq!(res.downstairs.branch_points[0], vec![1, 1]);
        assert_eq!(res.upstairs.self_ints, vec![-2]);
        assert!(res.upstairs.edges.is_empty());
    }

    #[test]
    fn d4_details() {
        let res = resolve_ade(AdeType::D(4)).unwrap();
        assert_eq!(res.m, 1);
        let down = &res.downstairs;
        assert_eq!(down.curves.len(), 4);
        let flagged: Vec<usize> =
            (0..4).filter(|&i| down.curves[i].flagged()).collect();
        assert_eq!(flagged, vec![0]);
        assert_eq!(down.curves[0].self_int, -4);
        // central curve meets the three others
        assert_eq!(down.edges, vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn deck_swaps_a2() {
        let res = resolve_ade(AdeType::A(2)).unwrap();
        assert_eq!(res.upstairs.labels.len(), 2);
        assert_eq!(res.upstairs.iota, vec![1, 0]);
        assert_eq!(res.upstairs.edges, vec![(0, 1)]);
    }

    #[test]
    fn parse_germ_terms() {
        let p = parse_terms("1,2,0; 1,0,3").unwrap();
        assert_eq!(p, Poly2::from_terms(&[(2, 0, 1), (0, 3, 1)]));
        assert!(parse_terms("1,2").is_err());
    }
}

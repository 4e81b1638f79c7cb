//! End-to-end acceptance suite. Runs ten numbered criteria in order and
//! prints one pass/fail line for each (visible with --nocapture or on
//! failure), then fails the test if any criterion failed.

use k3lat::ambient::{even_overlattices, glue_identity_holds, saturation};
use k3lat::casebook::{involution_on_hl, neg_w0_matrix, r_minus, r_plus, run_case};
use k3lat::disc::discriminant_group;
use k3lat::lattice::{ade, k3, AdeType, Lattice};
use k3lat::mat::IMat;
use k3lat::resolution::resolve_ade;
use k3lat::roots::{enumerate_roots, enumerate_roots_box, simple_roots_from};
use k3lat::weyl::{index_of_sum, invariant_sublattices, longest_element};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::time::Instant;

struct Outcome {
    label: &'static str,
    ok: bool,
    detail: String,
    seconds: f64,
}

fn run(label: &'static str, budget_s: f64, f: impl FnOnce() -> Result<(), String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let seconds = start.elapsed().as_secs_f64();
    let (ok, detail) = match result {
        Ok(()) if seconds <= budget_s => (true, String::new()),
        Ok(()) => (false, format!("over time budget {}s", budget_s)),
        Err(e) => (false, e),
    };
    Outcome { label, ok, detail, seconds }
}

fn catalog_upto(max: usize) -> Vec<AdeType> {
    let mut v: Vec<AdeType> = (1..=max).map(AdeType::A).collect();
    v.extend((4..=max).map(AdeType::D));
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
    discriminant_group(l).form.orders.iter().map(|o| o.to_u64().unwrap()).collect()
}

fn criterion_1() -> Result<(), String> {
    let mut types: Vec<(AdeType, usize)> = (1..=12).map(|n| (AdeType::A(n), n * (n + 1))).collect();
    types.extend((4..=12).map(|n| (AdeType::D(n), 2 * n * (n - 1))));
    types.extend([(AdeType::E6, 72), (AdeType::E7, 126), (AdeType::E8, 240)]);
    for (t, want) in types {
        let l = ade(t);
        let a = enumerate_roots(&l).len();
        let b = enumerate_roots_box(&l).len();
        if a != want || b != want {
            return Err(format!("{}: counts {} / {} want {}", t, a, b, want));
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let mut expect: Vec<(AdeType, usize)> = (1..=19).map(|n| (AdeType::A(n), 0)).collect();
    expect.extend((4..=19).map(|n| (AdeType::D(n), (n - 2) / 2)));
    expect.extend([(AdeType::E6, 1), (AdeType::E7, 3), (AdeType::E8, 4)]);
    for (t, want) in expect {
        let res = resolve_ade(t).map_err(|e| format!("{}: {:?}", t, e))?;
        if res.m != want {
            return Err(format!("{}: m = {} want {}", t, res.m, want));
        }
        if res.upstairs.components.len() != 1 || res.upstairs.components[0].0 != t {
            return Err(format!("{}: wrong dual graph", t));
        }
    }
    Ok(())
}

fn expected_anti(t: AdeType) -> (usize, Vec<u64>) {
    match t {
        AdeType::A(k) if k % 2 == 1 => {
            let n = (k + 1) / 2;
            let mut o = vec![2u64; n.saturating_sub(2)];
            if n >= 2 {
                o.push(2 * n as u64);
            }
            (n - 1, o)
        }
        AdeType::A(k) => {
            let n = k / 2;
            let mut o = vec![2u64; n - 1];
            o.push(4 * n as u64 + 2);
            (n, o)
        }
        AdeType::D(n) if n % 2 == 1 => (1, vec![4]),
        AdeType::D(_) | AdeType::E7 | AdeType::E8 => (0, vec![]),
        AdeType::E6 => (2, vec![2, 6]),
    }
}

fn expected_inv(t: AdeType) -> (usize, Vec<u64>) {
    match t {
        AdeType::A(k) => ((k + 1) / 2 + k / 2 - expected_anti(t).0, vec![2; (k + 1) / 2]),
        AdeType::D(n) if n % 2 == 1 => (n - 1, vec![2, 2]),
        AdeType::D(n) => (n, vec![2, 2]),
        AdeType::E6 => (4, vec![2, 2]),
        AdeType::E7 => (7, vec![2]),
        AdeType::E8 => (8, vec![]),
    }
}

fn criterion_3() -> Result<(), String> {
    let mut types: Vec<AdeType> = (1..=12).map(AdeType::A).collect();
    types.extend((4..=13).filter(|n| n % 2 == 1).map(AdeType::D));
    types.push(AdeType::E6);
    for t in types {
        let l = ade(t);
        let iota = neg_w0_matrix(t);
        let ((inv, _), (anti, _)) = invariant_sublattices(&l, &iota);
        let (ra, oa) = expected_anti(t);
        let (ri, oi) = expected_inv(t);
        if anti.rank() != ra || disc_orders(&anti) != oa {
            return Err(format!("{} anti: rank {} orders {:?}", t, anti.rank(), disc_orders(&anti)));
        }
        if inv.rank() != ri || disc_orders(&inv) != oi {
            return Err(format!("{} inv: rank {} orders {:?}", t, inv.rank(), disc_orders(&inv)));
        }
        if r_minus(t) != ra || r_plus(t) != ri {
            return Err(format!("{}: rank bookkeeping mismatch", t));
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for t in catalog_upto(10) {
        let l = ade(t);
        let iota = neg_w0_matrix(t);
        let idx: Vec<u64> =
            index_of_sum(&l, &iota).iter().map(|x| x.to_u64().unwrap()).collect();
        if idx != vec![2u64; r_minus(t)] {
            return Err(format!("{}: index factors {:?}", t, idx));
        }
    }
    Ok(())
}

fn case_ok(id: &str) -> Result<(), String> {
    let r = run_case(id).ok_or_else(|| format!("unknown case {}", id))?;
    if r.ok() {
        Ok(())
    } else {
        Err(r.to_text())
    }
}

fn criterion_10() -> Result<(), String> {
    // (a) glue identity on 200 randomized even lattices
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    let mut done = 0;
    while done < 200 {
        let rank = 1 + (next().unsigned_abs() as usize) % 6;
        let mut g = IMat::zero(rank, rank);
        for i in 0..rank {
            for j in 0..=i {
                let v = next() % 5;
                if i == j {
                    let d = 2 * (1 + next() % 3) * if next() % 2 == 0 { 1 } else { -1 };
                    g[(i, i)] = BigInt::from(d);
                } else {
                    g[(i, j)] = BigInt::from(v);
                    g[(j, i)] = BigInt::from(v);
                }
            }
        }
        let labels = (0..rank).map(|i| format!("b{}", i + 1)).collect();
        let Ok(l) = Lattice::new(g, labels) else { continue };
        let det = l.det().abs();
        if det.is_zero() || det > BigInt::from(500) {
            continue;
        }
        let Ok(cands) = even_overlattices(&l, 600) else { continue };
        for c in &cands {
            if !glue_identity_holds(&l, c) {
                return Err(format!("glue identity fails on det {}", l.det()));
            }
        }
        done += 1;
    }

    // (b) reflections are isometries and w0 maps the base to its negative
    for t in catalog_upto(8) {
        let l = ade(t);
        let roots = enumerate_roots(&l);
        let base = simple_roots_from(&l, &roots);
        for r in &base.simple_roots {
            // s_r(x) = x + (x.r) r must preserve the pairing on basis vectors
            let n = l.rank();
            let refl = |x: &Vec<BigInt>| -> Vec<BigInt> {
                let c = l.pair(x, r);
                x.iter().zip(r.iter()).map(|(a, b)| a + &c * b).collect()
            };
            for i in 0..n {
                for j in 0..n {
                    let mut ei = vec![BigInt::zero(); n];
                    ei[i] = BigInt::from(1);
                    let mut ej = vec![BigInt::zero(); n];
                    ej[j] = BigInt::from(1);
                    if l.pair(&refl(&ei), &refl(&ej)) != l.gram[(i, j)] {
                        return Err(format!("{}: reflection is not an isometry", t));
                    }
                }
            }
        }
        let w0 = {
            let inv = longest_element(&l, &base);
            let mut m = inv.matrix.clone();
            // inv.matrix is -w0; negate back
            for i in 0..l.rank() {
                for j in 0..l.rank() {
                    m[(i, j)] = -m[(i, j)].clone();
                }
            }
            m
        };
        for r in &base.simple_roots {
            let img = w0.mul_vec(r);
            let negated: Vec<BigInt> = img.iter().map(|x| -x.clone()).collect();
            if !base.simple_roots.contains(&negated) {
                return Err(format!("{}: w0 does not negate the base", t));
            }
        }
    }

    // (c) saturation idempotence on randomized sublattices of the K3 lattice
    let lam = k3();
    let n = lam.rank();
    for trial in 0..20 {
        let k = 1 + trial % 4;
        let vecs: Vec<Vec<BigInt>> = (0..k)
            .map(|_| (0..n).map(|_| BigInt::from(next() % 3)).collect())
            .collect();
        let Ok((s1, b1)) = saturation(&lam, &vecs) else { continue };
        let cols: Vec<Vec<BigInt>> = (0..b1.ncols()).map(|j| b1.column(j)).collect();
        let (s2, _) = saturation(&lam, &cols).map_err(|e| format!("resaturation: {:?}", e))?;
        if s1.rank() != s2.rank() || s1.det() != s2.det() {
            return Err("saturation is not idempotent".into());
        }
    }

    // involution_on_hl is an isometry of its catalog sum (spot check)
    for t in [AdeType::A(4), AdeType::D(5), AdeType::E6] {
        let types = [t];
        let iota = involution_on_hl(&types);
        let hl = Lattice::direct_sum(&[&k3lat::rank_one(2), &ade(t)]);
        let m = iota.transpose().mul(&hl.gram).mul(&iota);
        for i in 0..hl.rank() {
            for j in 0..hl.rank() {
                if m[(i, j)] != hl.gram[(i, j)] {
                    return Err(format!("{}: hl involution is not an isometry", t));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let outcomes = vec![
        run("criterion 1: root counts by two strategies", 5.0, criterion_1),
        run("criterion 2: resolution branch counts over the full catalog", 10.0, criterion_2),
        run("criterion 3: involution tables (anti/invariant parts)", 10.0, criterion_3),
        run("criterion 4: index of the invariant sum, rank <= 10", 5.0, criterion_4),
        run("criterion 5: quintic with five nodes pipeline", 30.0, || case_ok("quintic-5nodes")),
        run("criterion 6: quintic with a tacnode pipeline", 30.0, || case_ok("quintic-tacnode")),
        run("criterion 7: quintic with two tacnodes pipeline", 30.0, || {
            case_ok("quintic-2tacnodes")
        }),
        run("criterion 8: zariski pair complements", 30.0, || case_ok("zariski-pair")),
        run("criterion 9: nodal stabilizers and coset patterns", 30.0, || {
            case_ok("nodal-orbifold")
        }),
        run("criterion 10: property suites", 60.0, criterion_10),
    ];
    let mut failed = false;
    for o in &outcomes {
        println!(
            "{}: {} ({:.2}s){}",
            o.label,
            if o.ok { "pass" } else { "fail" },
            o.seconds,
            if o.detail.is_empty() { String::new() } else { format!(" - {}", o.detail) }
        );
        if !o.ok {
            failed = true;
        }
    }
    assert!(!failed, "acceptance criteria failed");
}

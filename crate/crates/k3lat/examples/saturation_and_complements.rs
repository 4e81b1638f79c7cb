// Primitive hulls (saturations) and orthogonal complements inside the
// K3 lattice.

use k3lat::ambient::{orthogonal_complement, saturation};
use k3lat::k3;
use num_bigint::BigInt;

fn v(coords: &[i64], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); n];
    for (i, &c) in coords.iter().enumerate() {
        out[i] = BigInt::from(c);
    }
    out
}

fn main() {
    let l = k3();
    let n = l.rank();

    // 2(e1+f1) spans the same saturated sublattice as e1+f1
    let h2 = v(&[2, 2], n);
    let (sat, basis) = saturation(&l, &[h2]).expect("independent");
    println!("saturation of 2(e1+f1): rank {} gram {:?}", sat.rank(), sat.gram[(0, 0)]);
    println!("primitive generator: {:?}", basis.column(0)[..4].to_vec());

    // the complement of H = e1+f1 has rank 21, det -2 and is even
    let h = v(&[1, 1], n);
    let (comp, _) = orthogonal_complement(&l, &[h], false).expect("nondegenerate");
    let (p, q) = comp.signature();
    println!("H-perp: rank {} signature ({},{}) det {}", comp.rank(), p, q, comp.det());

    // complement of a hyperbolic plane: the rest of the direct sum
    let e1 = v(&[1, 0], n);
    let f1 = v(&[0, 1], n);
    let (rest, _) = orthogonal_complement(&l, &[e1, f1], false).expect("nondegenerate");
    let (p, q) = rest.signature();
    println!("U-perp: rank {} signature ({},{}) det {}", rest.rank(), p, q, rest.det());
}

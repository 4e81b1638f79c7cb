// Build the catalog lattices and print their basic invariants.

use k3lat::{ade, hyperbolic_u, k3, rank_one, AdeType, Lattice};

fn show(name: &str, l: &Lattice) {
    let (p, q) = l.signature();
    println!("{:<10} rank {:>2}  signature ({},{:>2})  det {}", name, l.rank(), p, q, l.det());
}

fn main() {
    for t in [AdeType::A(1), AdeType::A(4), AdeType::D(5), AdeType::E6, AdeType::E7, AdeType::E8] {
        show(&t.to_string(), &ade(t));
    }
    show("U", &hyperbolic_u());
    show("U(2)", &hyperbolic_u().rescale(2));
    show("<-4>", &rank_one(-4));

    // the K3 lattice U^3 + E8(-1)^2, with H = e1 + f1 of square 2
    let l = k3();
    show("K3", &l);
    let mut h = vec![num_bigint::BigInt::from(0); l.rank()];
    h[0] = 1.into();
    h[1] = 1.into();
    println!("H = e1+f1 has square {}", l.norm(&h));

    // direct sums stay even and multiply determinants
    let s = Lattice::direct_sum(&[&ade(AdeType::A(3)), &hyperbolic_u(), &ade(AdeType::E8)]);
    show("A3+U+E8", &s);
}

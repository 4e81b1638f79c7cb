// Enumerate roots (vectors of square -2), pick a base of simple roots and
// classify the root system from its Dynkin graph.

use k3lat::roots::{classify_root_system, enumerate_roots, enumerate_roots_box};
use k3lat::{ade, AdeType, Lattice};

fn main() {
    for t in [AdeType::A(5), AdeType::D(6), AdeType::E6, AdeType::E7, AdeType::E8] {
        let l = ade(t);
        let roots = enumerate_roots(&l);
        // the box strategy is an independent second enumeration
        let boxed = enumerate_roots_box(&l);
        assert_eq!(roots.len(), boxed.len());
        let base = classify_root_system(&l, &roots);
        let types: Vec<String> = base.component_types().iter().map(|x| x.to_string()).collect();
        println!("{:<4} {:>4} roots, base of {} simple roots, classified {}",
            t.to_string(), roots.len(), base.rank(), types.join(" + "));
    }

    // a reducible example: the components come back sorted and classified
    let l = Lattice::direct_sum(&[&ade(AdeType::A(2)), &ade(AdeType::D(4)), &ade(AdeType::A(1))]);
    let roots = enumerate_roots(&l);
    let base = classify_root_system(&l, &roots);
    let types: Vec<String> = base.component_types().iter().map(|x| x.to_string()).collect();
    println!("A2+D4+A1: {} roots, components {}", roots.len(), types.join(", "));
}

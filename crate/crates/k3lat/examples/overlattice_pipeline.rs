// The configuration pipeline: build M = <H> + L + component classes for a
// quintic-plus-line sextic with five nodes, enumerate its even overlattices
// and apply the admissibility filters.

use k3lat::ambient::{admissible_picard, build_m, even_overlattices};
use k3lat::casebook::config_quintic_5nodes;
use k3lat::disc::lattices_isomorphic;
use k3lat::{ade, hyperbolic_u, AdeType, Lattice};

fn main() {
    let config = config_quintic_5nodes();
    let model = build_m(&config).expect("valid configuration");
    let (p, q) = model.m.signature();
    println!(
        "M: rank {} signature ({},{}) det {}",
        model.m.rank(),
        p,
        q,
        model.m.det()
    );

    // every even overlattice of M, as isotropic subgroups of A_M
    let cands = even_overlattices(&model.m, 10_000).expect("small discriminant");
    println!("{} even overlattices (including M itself)", cands.len());

    // the admissibility filters: no extra roots orthogonal to H, and no
    // isotropic u with u.H = 1
    let reports = admissible_picard(&model, 10_000).expect("pipeline");
    let survivors: Vec<_> = reports.iter().filter(|r| r.passes()).collect();
    println!("{} candidates pass the filters", survivors.len());
    for r in &survivors {
        println!("  survivor: index {} det {}", r.candidate.index, r.candidate.lattice.det());
    }

    // the unique survivor is M itself, isomorphic to U(2)+D4
    let expected = Lattice::direct_sum(&[&hyperbolic_u().rescale(2), &ade(AdeType::D(4))]);
    println!("P = M isomorphic to U(2)+D4: {}", lattices_isomorphic(&model.m, &expected, 10_000));
}

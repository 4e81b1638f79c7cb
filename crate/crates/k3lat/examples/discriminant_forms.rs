// Discriminant groups and quadratic forms, genus descriptors, and the
// isomorphism decision for indefinite and small definite lattices.

use k3lat::disc::{
    compare_discriminant_forms, complement_genus_in_unimodular, discriminant_group,
    lattices_isomorphic, GenusDescriptor,
};
use k3lat::{ade, hyperbolic_u, rank_one, AdeType, Lattice};

fn main() {
    for t in [AdeType::A(3), AdeType::D(4), AdeType::E6, AdeType::E8] {
        let d = discriminant_group(&ade(t));
        let orders: Vec<String> = d.form.orders.iter().map(|o| o.to_string()).collect();
        let qs: Vec<String> = d.form.q_gen.iter().map(|q| q.to_string()).collect();
        println!("{:<3} A = Z/{:<8} q(gens) = {} mod 2", t.to_string(),
            if orders.is_empty() { "1".into() } else { orders.join(" x Z/") },
            if qs.is_empty() { "-".into() } else { qs.join(", ") });
    }

    // <-4> + U + D5 and <4> + A3 + U have different signatures but related forms
    let m = Lattice::direct_sum(&[&rank_one(-4), &hyperbolic_u(), &ade(AdeType::D(5))]);
    let n = Lattice::direct_sum(&[&rank_one(4), &ade(AdeType::A(3)), &hyperbolic_u()]);
    let fm = discriminant_group(&m).form;
    let fn_ = discriminant_group(&n).form;
    println!("forms of <-4>+U+D5 vs <4>+A3+U isomorphic: {:?}",
        compare_discriminant_forms(&fm, &fn_.negate(), 10_000));

    // genus of the orthogonal complement of a primitive sublattice of the
    // K3 lattice, computed from the sublattice alone
    let p = Lattice::direct_sum(&[&hyperbolic_u().rescale(2), &ade(AdeType::D(4))]);
    let q = complement_genus_in_unimodular(&p, 3, 19);
    println!("complement of U(2)+D4 in the K3 lattice: signature ({},{}), |A| = {}",
        q.sig_plus, q.sig_minus, q.form.group_order());
    let expected = Lattice::direct_sum(&[
        &hyperbolic_u().rescale(2), &hyperbolic_u(), &ade(AdeType::D(4)), &ade(AdeType::E8)]);
    println!("matches U(2)+U+D4+E8: {:?}", q.matches(&GenusDescriptor::of(&expected), 10_000));

    // the isomorphism decision: indefinite via the genus, definite by search
    let a = Lattice::direct_sum(&[&hyperbolic_u(), &ade(AdeType::A(2))]);
    let b = Lattice::direct_sum(&[&ade(AdeType::A(2)), &hyperbolic_u()]);
    println!("U+A2 vs A2+U: {}", lattices_isomorphic(&a, &b, 10_000));
    println!("D4 vs A1^4:   {}", lattices_isomorphic(&ade(AdeType::D(4)),
        &Lattice::direct_sum(&[&ade(AdeType::A(1)); 4]), 10_000));
}

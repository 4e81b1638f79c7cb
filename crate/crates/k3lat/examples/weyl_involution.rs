// The longest Weyl element w0 and the involution -w0: diagram permutation,
// invariant and anti-invariant sublattices, and the index of their sum.

use k3lat::disc::discriminant_group;
use k3lat::roots::{enumerate_roots, simple_roots_from};
use k3lat::weyl::{index_of_sum, invariant_sublattices, longest_element};
use k3lat::{ade, AdeType};

fn main() {
    for t in [AdeType::A(4), AdeType::A(5), AdeType::D(5), AdeType::D(6), AdeType::E6, AdeType::E7] {
        let l = ade(t);
        let roots = enumerate_roots(&l);
        let base = simple_roots_from(&l, &roots);
        let inv = longest_element(&l, &base);
        let iota = inv.matrix; // the isometry -w0
        let ((linv, _), (lanti, _)) = invariant_sublattices(&l, &iota);
        let idx = index_of_sum(&l, &iota);
        let anti_orders: Vec<String> = if lanti.rank() == 0 {
            vec![]
        } else {
            discriminant_group(&lanti).form.orders.iter().map(|o| o.to_string()).collect()
        };
        println!(
            "{:<3} w0 word length {:>3}  diagram perm {:?}",
            t.to_string(),
            inv.word_len,
            inv.permutation
        );
        println!(
            "    invariant rank {}  anti rank {}  A(anti) = [{}]  index factors {:?}",
            linv.rank(),
            lanti.rank(),
            anti_orders.join(","),
            idx
        );
    }
}

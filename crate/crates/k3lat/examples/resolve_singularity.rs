// Symbolic resolution of ADE double-cover germs: blow up the branch curve,
// lift to the double cover, and recover the Dynkin diagram, the number of
// branch curves m, and the deck involution on the exceptional set.

use k3lat::resolution::{parse_terms, resolve_ade, resolve_germ};
use k3lat::AdeType;

fn main() {
    for t in [AdeType::A(3), AdeType::D(7), AdeType::E6, AdeType::E7, AdeType::E8] {
        let res = resolve_ade(t).expect("resolves in budget");
        let types: Vec<String> =
            res.upstairs.components.iter().map(|(s, _)| s.to_string()).collect();
        println!(
            "{:<3} -> {} exceptional (-2)-curves, graph {}, m = {}, iota {}",
            t.to_string(),
            res.upstairs.labels.len(),
            types.join("+"),
            res.m,
            if res.upstairs.iota.iter().enumerate().all(|(i, &j)| i == j) {
                "trivial"
            } else {
                "flip"
            }
        );
        println!("    edges {:?}", res.upstairs.edges);
    }

    // a custom germ: x^2 + y^4 with a transverse line, given as explicit
    // factors c,i,j (coefficient, x-exponent, y-exponent)
    let f = parse_terms("1,2,0;1,0,4").unwrap();
    let res = resolve_germ(vec![f], 40).expect("resolves");
    let types: Vec<String> = res.upstairs.components.iter().map(|(s, _)| s.to_string()).collect();
    println!("x^2+y^4 germ resolves to {}", types.join("+"));
    print!("{}", res.to_dot());
}

// Run the stored verification cases: the catalog tables and one full
// configuration case study.

use k3lat::casebook::{run_case, verify_tables};

fn main() {
    let tables = verify_tables();
    print!("{}", tables.to_text());

    let report = run_case("quintic-tacnode").expect("known case");
    print!("{}", report.to_text());

    // machine-readable form of the same report
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
}

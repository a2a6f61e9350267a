//! The two built-in octahedra: validity, goodness, and the uniqueness-based
//! sufficient criterion.
//!
//! Run with: `cargo run --example octahedra_goodness`

use octacheck::exactalg::Field;
use octacheck::tri::{
    builtin_octahedra, goodness_by_uniqueness, validate_octahedron, SearchPolicy,
};

fn main() {
    let field = Field::fp(5).unwrap();
    let policy = SearchPolicy::default();
    let (o1, o2) = builtin_octahedra(field);

    for (name, o) in [("first", &o1), ("second", &o2)] {
        let rep = validate_octahedron(field, o, &policy).unwrap();
        println!("{name} octahedron:");
        println!("  relation violations: {:?}", rep.relation_violations);
        for (tri, verdict) in &rep.triangle_verdicts {
            println!("  {tri}: {verdict:?}");
        }
        println!("  valid = {}, good = {}", rep.valid, rep.good);

        let uniq = goodness_by_uniqueness(field, o).unwrap();
        println!(
            "  uniqueness criterion: k'={} f[1]={} g={} k={} (all => good, but not conversely)",
            uniq.kp_unique, uniq.shifted_f_unique, uniq.g_unique, uniq.k_unique
        );
    }
}

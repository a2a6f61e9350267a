//! The sound isomorphism search: the two built-in octahedra extend the same
//! composable pair but are certifiedly non-isomorphic over every field.
//!
//! Run with: `cargo run --example non_isomorphism`

use octacheck::exactalg::Field;
use octacheck::tri::{builtin_octahedra, iso_search, SearchPolicy};

fn main() {
    let policy = SearchPolicy::default();
    for field in [
        Field::fp(2).unwrap(),
        Field::fp(3).unwrap(),
        Field::fp(5).unwrap(),
        Field::fp(7).unwrap(),
        Field::Q,
    ] {
        let (o1, o2) = builtin_octahedra(field);
        let rep = iso_search(field, &o1, &o2, &policy).unwrap();
        println!(
            "{:>5}: {:?} ({} equations in {} unknowns, solution dim {:?})",
            field.descriptor(),
            rep.verdict,
            rep.equations,
            rep.unknowns,
            rep.solution_dim
        );
        if let Some(cert) = rep.certificate {
            println!("       certificate: {cert}");
        }

        // the self-search returns the identity witness
        let self_rep = iso_search(field, &o1, &o1, &policy).unwrap();
        println!("       self-search: {:?}", self_rep.verdict);
    }
}

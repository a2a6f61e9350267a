//! Epsilon-deformation of an octahedron: replacing `k, k'` by
//! `(1+eps).k, k'.(1-eps)` carries the first built-in octahedron exactly
//! onto the second.
//!
//! Run with: `cargo run --example deformation`

use octacheck::exactalg::Field;
use octacheck::homcat::HomMatrix;
use octacheck::tri::{builtin_deformation, builtin_octahedra, epsilon_deform};

fn main() {
    let field = Field::Q;
    let (o1, o2) = builtin_octahedra(field);
    let (eps, eps_prime, eps_second) = builtin_deformation(field);

    let deformed = epsilon_deform(field, &o1, &eps, Some(&eps_prime), Some(&eps_second)).unwrap();
    assert_eq!(deformed, o2);
    println!("deforming the first octahedron reproduces the second exactly");

    let zero = HomMatrix::zero(o1.e.clone(), o1.e.clone());
    assert_eq!(epsilon_deform(field, &o1, &zero, None, None).unwrap(), o1);
    println!("the zero deformation is the identity");

    // violating a precondition is reported by name
    let id = HomMatrix::identity(field, &o1.e);
    match epsilon_deform(field, &o1, &id, None, None) {
        Err(e) => println!("eps = id is rejected: {e}"),
        Ok(_) => unreachable!("the identity never squares to zero"),
    }
}

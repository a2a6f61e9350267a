//! Certifying triangles against their mapping cones.
//!
//! Run with: `cargo run --example certify_triangle`

use octacheck::exactalg::Field;
use octacheck::homcat::{HomMatrix, PObject};
use octacheck::tri::{basis_triangle, is_distinguished, SearchPolicy, Triangle, Verdict};

fn main() {
    let field = Field::fp(5).unwrap();
    let policy = SearchPolicy::default();

    // the completed triangle on x^2: P_3 -> P_3
    let t = basis_triangle(field, 3, 3, 2).unwrap();
    let rep = is_distinguished(field, &t, &policy).unwrap();
    println!(
        "x^2: P3 -> P3 extension: {:?} (cone pieces {:?}, solution dim {:?})",
        rep.verdict, rep.cone_pieces, rep.solution_dim
    );
    assert_eq!(rep.verdict, Verdict::CertifiedYes);

    // rotating keeps it distinguished
    let rot = t.rotate(field);
    let rep = is_distinguished(field, &rot, &policy).unwrap();
    println!("rotated: {:?}", rep.verdict);

    // a refutable candidate: truncating the third object to zero
    let p3 = PObject::single(3, 0);
    let bad = Triangle::new(
        t.f.clone(),
        HomMatrix::zero(p3.clone(), PObject::zero()),
        HomMatrix::zero(PObject::zero(), p3.shifted(1)),
    )
    .unwrap();
    let rep = is_distinguished(field, &bad, &policy).unwrap();
    println!("truncated candidate: {:?}", rep.verdict);
    assert_eq!(rep.verdict, Verdict::CertifiedNo);
}

//! Functors out of the presented categories: the two homotopy-category
//! functors defined by the built-in good octahedra, and the retraction
//! between the quiver fragments.
//!
//! Run with: `cargo run --example functors`

use octacheck::exactalg::Field;
use octacheck::scat::{
    beilinson_functors, build_category, check_oct_functor, check_pres_functor,
    compose_pres_functors, functor_from_octahedron, functors_agree_on, identity_functor,
    pres_functors_equal, BuiltinCategory, SArrows,
};
use octacheck::tri::{builtin_octahedra, SearchPolicy};

fn main() {
    let field = Field::fp(5).unwrap();
    let policy = SearchPolicy::default();

    let cat = build_category(field, BuiltinCategory::S).unwrap();
    let ids = SArrows::lookup(&cat);
    let (o1, o2) = builtin_octahedra(field);
    let (f1, _) = functor_from_octahedron(field, &cat, &ids, &o1, &policy).unwrap();
    let (f2, _) = functor_from_octahedron(field, &cat, &ids, &o2, &policy).unwrap();
    println!(
        "octahedron functors verified: {} / {}",
        check_oct_functor(field, &cat, &f1),
        check_oct_functor(field, &cat, &f2)
    );
    println!(
        "agree on the generating fragment (A, B, C, f, g, h): {}",
        functors_agree_on(&f1, &f2, &[ids.a, ids.b, ids.c], &[ids.f, ids.g, ids.h])
    );
    println!(
        "images of k coincide: {}",
        f1.arrow_images[ids.k] == f2.arrow_images[ids.k]
    );

    // the section/retraction between the quiver fragments
    let e = build_category(field, BuiltinCategory::E).unwrap();
    let ep = build_category(field, BuiltinCategory::EPrime).unwrap();
    let (section, retraction) = beilinson_functors(field, &e, &ep);
    println!(
        "section and retraction verified: {} / {}",
        check_pres_functor(field, &e, &ep, &section),
        check_pres_functor(field, &ep, &e, &retraction)
    );
    let roundtrip = compose_pres_functors(field, &retraction, &section);
    println!(
        "retraction . section = identity: {}",
        pres_functors_equal(field, &roundtrip, &identity_functor(&e, field))
    );
}

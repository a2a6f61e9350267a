//! Krull-Schmidt decomposition of a random morphism between formal sums in
//! the octahedron category.
//!
//! Run with: `cargo run --example krull_schmidt`

use rand::SeedableRng;

use octacheck::exactalg::{Field, Scalar};
use octacheck::scat::{
    build_category, decompose_morphism, BuiltinCategory, SArrows, SMorUnknowns, SumObject,
};

fn main() {
    let field = Field::fp(3).unwrap();
    let cat = build_category(field, BuiltinCategory::S).unwrap();
    let ids = SArrows::lookup(&cat);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);

    let src = SumObject::from_mults(vec![((ids.b, 0), 2), ((ids.c, 0), 1), ((ids.d, 0), 1)]);
    let tgt = SumObject::from_mults(vec![((ids.c, 0), 1), ((ids.d, 0), 1), ((ids.e, 0), 2)]);
    let unknowns = SMorUnknowns::new(&cat, &src, &tgt);
    let values: Vec<Scalar> = (0..unknowns.len())
        .map(|_| field.sample(&mut rng))
        .collect();
    let u = unknowns.matrix_from(field, &cat, &values);

    let dec = decompose_morphism(field, &cat, &ids, &u).unwrap();
    println!("decomposed into {} pieces:", dec.pieces.len());
    for (piece, count) in dec.piece_multiset() {
        println!("  {count} x {piece:?}");
    }
    assert!(dec.verify(field, &cat, &ids, &u));
    println!("recomposition through the change of basis equals the input exactly");
}

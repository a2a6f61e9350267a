//! Mapping cones and their Krull-Schmidt normal form over `K[x]`.
//!
//! Run with: `cargo run --example cone_normal_form`

use octacheck::complex::{cone_of, normal_form};
use octacheck::exactalg::Field;
use octacheck::homcat::{hom_basis, realize, HomElement, HomMatrix, PObject, Summand};

fn main() {
    let field = Field::Q;

    // realize x^1: P_3 -> P_3 at the chain level and take its cone
    let s3 = Summand::new(3, 0);
    let x1 = hom_basis(s3, s3)[1];
    let mut u = HomMatrix::zero(PObject::single(3, 0), PObject::single(3, 0));
    u.set_entry(0, 0, HomElement::from_basis(field, &x1, field.one()));
    let chain = realize(field, &u);

    let (cone, _incl, _proj) = cone_of(field, &chain).unwrap();
    println!("cone ranks: {:?}", cone.ranks());

    let nf = normal_form(field, &cone).unwrap();
    println!("pieces: {:?}", nf.summands);

    // the isomorphism is exact in both directions
    use octacheck::complex::ChainMap;
    assert!(ChainMap::compose(field, &nf.iso_from, &nf.iso_to).is_identity(field));
    assert!(ChainMap::compose(field, &nf.iso_to, &nf.iso_from).is_identity(field));
    println!("chain isomorphism verified in both directions");
}

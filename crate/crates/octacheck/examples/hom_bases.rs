//! Hom-space bases between shifted two-term complexes, and a few
//! structure-constant compositions.
//!
//! Run with: `cargo run --example hom_bases`

use octacheck::exactalg::Field;
use octacheck::homcat::{compose_basis, hom_basis, MorKind, Summand};

fn show(src: Summand, tgt: Summand) {
    let basis = hom_basis(src, tgt);
    let names: Vec<String> = basis
        .iter()
        .map(|b| match b.kind {
            MorKind::X => format!("x^{}", b.i),
            MorKind::Y => format!("y^{}", b.i),
        })
        .collect();
    println!(
        "Hom(P{}[{}], P{}[{}]) = < {} >  (dim {})",
        src.n,
        src.shift,
        tgt.n,
        tgt.shift,
        names.join(", "),
        basis.len()
    );
}

fn main() {
    let _field = Field::Q; // bases are field-independent

    show(Summand::new(3, 0), Summand::new(3, 0));
    show(Summand::new(3, 0), Summand::new(2, 1));
    show(Summand::new(2, 0), Summand::new(3, 1));
    show(Summand::new(1, 0), Summand::new(3, 2)); // zero: shift gap 2

    println!();
    let s3 = Summand::new(3, 0);
    let s2s = Summand::new(2, 1);
    let x1 = hom_basis(s3, s3)[1];
    let y3 = hom_basis(s3, s2s)[1];
    println!(
        "x^1 . x^1 = {:?}",
        compose_basis(&x1, &x1).map(|b| (b.kind, b.i))
    );
    println!(
        "y^3 . x^1 = {:?}",
        compose_basis(&y3, &x1).map(|b| (b.kind, b.i))
    );
    let x2 = hom_basis(s3, s3)[2];
    println!(
        "x^2 . x^1 = {:?} (falls out of the truncation)",
        compose_basis(&x2, &x1)
    );
}

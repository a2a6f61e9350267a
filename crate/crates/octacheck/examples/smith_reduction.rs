//! Smith normal form of a polynomial matrix with unimodular transforms.
//!
//! Run with: `cargo run --example smith_reduction`

use octacheck::exactalg::{matrix_smith_reduce, Field, Poly, PolyMatrix};
use octacheck::json::poly_to_string;

fn render(field: Field, m: &PolyMatrix) -> String {
    (0..m.rows)
        .map(|r| {
            let row: Vec<String> = (0..m.cols)
                .map(|c| poly_to_string(field, m.get(r, c)))
                .collect();
            format!("[ {} ]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() {
    let field = Field::Q;
    let x = |d| Poly::x_pow(field, d);

    // the lower differential block of the cone of x^1 on P_3, plus a
    // deliberately out-of-order diagonal
    let m = PolyMatrix::from_rows(vec![vec![x(1), x(2)], vec![x(3).neg(field), Poly::zero()]]);
    println!("input:\n{}\n", render(field, &m));

    let dec = matrix_smith_reduce(field, &m);
    println!("diag:\n{}\n", render(field, &dec.diag));
    println!("left:\n{}\n", render(field, &dec.left));
    println!("right:\n{}\n", render(field, &dec.right));
    println!(
        "invariant factors: {:?}",
        dec.invariant_factors()
            .iter()
            .map(|p| poly_to_string(field, p))
            .collect::<Vec<_>>()
    );

    // left * m * right = diag, verified inside matrix_smith_reduce as well
    assert_eq!(dec.left.mul(field, &m).mul(field, &dec.right), dec.diag);
    println!("factorization verified");
}

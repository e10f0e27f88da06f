//! Exact rational kernels and affine solves.

use operad_deform::linalg::{format_rational, ExactMatrix, ExactScalar};

fn show(v: &[ExactScalar]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() {
    let m = ExactMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, -1]]);
    println!("rank {}", m.rank());
    for k in m.kernel_basis() {
        println!("kernel vector: {}", show(&k));
    }
    let ones = vec![ExactScalar::from_integer(1.into()); 3];
    let b = m.mul_vec(&ones);
    match m.solve_affine(&b) {
        Some(sol) => println!("particular solution of m x = ({}): {}", show(&b), show(&sol.particular)),
        None => println!("inconsistent"),
    }
}

//! The convolution pre-Lie product on maps out of the Lie dual cooperad,
//! checked against the shuffle formula. Also the Maurer–Cartan condition
//! for a bracket with and without the Jacobi identity.

use operad_deform::convolution::{binary_tensor, nr_star, ConvolutionAlgebra, CooperadTag, StructureTensor};
use num_traits::Zero;
use operad_deform::linalg::ExactScalar;

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n.into())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // so(3) as the cross product on K^3
    let cross = StructureTensor::from_fn(3, 2, |o, x| {
        let (i, j) = (x[0], x[1]);
        if i == j || o == i || o == j {
            return int(0);
        }
        int(if (i + 1) % 3 == j { 1 } else { -1 })
    });
    let alg = ConvolutionAlgebra::new(CooperadTag::Lie, 3)?;
    let mu = alg.from_tensor(&cross)?;
    println!("cross product is Maurer–Cartan: {}", alg.is_maurer_cartan(&mu)?);

    let sq = alg.star(&mu, &mu)?;
    println!("μ ⋆ μ (the Jacobiator up to sign) vanishes: {}", sq.is_zero());
    println!("agrees with the shuffle formula: {}", alg.to_tensor(&sq)? == nr_star(&cross, &cross)?);

    // [e0, e1] = e1, [e1, e2] = e0 violates Jacobi
    let bad = binary_tensor(
        3,
        &[
            ((0, 1), vec![int(0), int(1), int(0)]),
            ((1, 0), vec![int(0), int(-1), int(0)]),
            ((1, 2), vec![int(1), int(0), int(0)]),
            ((2, 1), vec![int(-1), int(0), int(0)]),
        ],
    );
    let nu = alg.from_tensor(&bad)?;
    println!("second bracket is Maurer–Cartan: {}", alg.is_maurer_cartan(&nu)?);
    let sq = alg.to_tensor(&alg.bracket(&nu, &nu)?)?;
    for (idx, v) in sq.entries().filter(|(_, v)| !v.is_zero()) {
        println!("  [ν, ν] at (out {}; in {:?}) = {v}", idx[0], &idx[1..]);
    }
    Ok(())
}
